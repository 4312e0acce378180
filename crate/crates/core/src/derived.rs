//! Indecomposable objects of the bounded derived category of a Dynkin quiver.
//!
//! Every indecomposable is a shifted indecomposable module `M[k]`, and
//! indecomposable modules correspond to positive roots. Modules are stored
//! with explicit integer matrices; `Hom` dimensions come from the kernel of
//! the intertwiner system and `Ext¹` from the Euler form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::quiver::{DimVector, Quiver};

/// Index of a positive root (equivalently an indecomposable module) inside a
/// [`DerivedCategory`].
pub type RootId = usize;

const MODULE_ATTEMPTS: u64 = 200;

/// Indecomposable representation: one `dim V_t × dim V_s` matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndecModule {
    pub root: DimVector,
    pub maps: Vec<Vec<Vec<i64>>>,
}

/// The object `M[shift]` for the module with index `root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndecObject {
    pub root: RootId,
    pub shift: i64,
}

impl IndecObject {
    pub fn new(root: RootId, shift: i64) -> Self {
        Self { root, shift }
    }

    pub fn shifted(self, k: i64) -> Self {
        Self { root: self.root, shift: self.shift + k }
    }
}

/// Dimension of the space of quiver morphisms `M -> N`.
pub fn hom_modules(q: &Quiver, m: &IndecModule, n: &IndecModule) -> usize {
    let nv = q.vertex_count();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + (n.root[v] * m.root[v]) as usize;
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return 0;
    }
    // f_v is an (n_v × m_v) matrix; entry (r, c) sits at offset[v] + r*m_v + c.
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.root[v] as usize + c;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let (ms, mt) = (m.root[s] as usize, m.root[t] as usize);
        let (ns, nt) = (n.root[s] as usize, n.root[t] as usize);
        for r in 0..nt {
            for c in 0..ms {
                let mut eq = vec![0i64; unknowns];
                // (N_a f_s - f_t M_a)[r][c] = 0
                for k in 0..ns {
                    eq[var(s, k, c)] += n.maps[a][r][k];
                }
                for k in 0..mt {
                    eq[var(t, r, k)] -= m.maps[a][k][c];
                }
                if eq.iter().any(|&x| x != 0) {
                    rows.push(eq);
                }
            }
        }
    }
    unknowns - linalg::rank(&rows)
}

fn is_thin(root: &[i64]) -> bool {
    root.iter().all(|&x| x <= 1)
}

fn root_seed(root: &[i64], attempt: u64) -> u64 {
    root.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &x| (h ^ x as u64).wrapping_mul(0x0100_0000_01b3))
        ^ attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Builds an indecomposable module of dimension vector `root`.
///
/// Thin roots get identity maps on their (connected) support. Other roots get
/// seeded random integer matrices, retried until the endomorphism algebra is
/// one-dimensional, which for a real root pins down the generic module.
pub fn build_module(q: &Quiver, root: &[i64]) -> Result<IndecModule> {
    if is_thin(root) {
        let maps = q
            .arrows()
            .iter()
            .map(|&(s, t)| {
                if root[s] == 1 && root[t] == 1 {
                    vec![vec![1]]
                } else {
                    vec![vec![0; root[s] as usize]; root[t] as usize]
                }
            })
            .collect();
        return Ok(IndecModule { root: root.to_vec(), maps });
    }
    for attempt in 0..MODULE_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(root_seed(root, attempt));
        let maps = q
            .arrows()
            .iter()
            .map(|&(s, t)| (0..root[t]).map(|_| (0..root[s]).map(|_| rng.gen_range(-2..=2)).collect()).collect())
            .collect();
        let module = IndecModule { root: root.to_vec(), maps };
        if hom_modules(q, &module, &module) == 1 {
            return Ok(module);
        }
    }
    Err(Error::ModuleConstruction(root.to_vec()))
}

/// Indecomposable modules and their `Hom`/`Ext¹` tables for a Dynkin quiver.
#[derive(Debug, Clone)]
pub struct DerivedCategory {
    quiver: Quiver,
    coxeter_number: u32,
    roots: Vec<DimVector>,
    index: BTreeMap<DimVector, RootId>,
    modules: Vec<IndecModule>,
    hom: Vec<Vec<u32>>,
    ext: Vec<Vec<u32>>,
    projective: Vec<RootId>,
    injective: Vec<RootId>,
    coxeter: IntMatrix,
    coxeter_inv: IntMatrix,
    subs: Vec<Vec<DimVector>>,
}

impl DerivedCategory {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        let h = quiver.coxeter_number()?;
        let roots = quiver.positive_roots()?;
        let index: BTreeMap<DimVector, RootId> = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let modules = roots.iter().map(|r| build_module(quiver, r)).collect::<Result<Vec<_>>>()?;
        let k = roots.len();
        let mut hom = vec![vec![0u32; k]; k];
        let mut ext = vec![vec![0u32; k]; k];
        for a in 0..k {
            for b in 0..k {
                let h0 = if a == b { 1 } else { hom_modules(quiver, &modules[a], &modules[b]) };
                let chi = quiver.euler_unchecked(&roots[a], &roots[b]);
                let e1 = h0 as i64 - chi;
                if e1 < 0 {
                    return Err(Error::ModuleConstruction(roots[b].clone()));
                }
                hom[a][b] = h0 as u32;
                ext[a][b] = e1 as u32;
            }
        }
        let n = quiver.vertex_count();
        let lookup = |v: DimVector| index.get(&v).copied().ok_or(Error::NotARoot(v));
        let projective = (0..n).map(|i| lookup(quiver.dim_projective(i))).collect::<Result<_>>()?;
        let injective = (0..n).map(|i| lookup(quiver.dim_injective(i))).collect::<Result<_>>()?;
        let mut cat = Self {
            quiver: quiver.clone(),
            coxeter_number: h,
            roots,
            index,
            modules,
            hom,
            ext,
            projective,
            injective,
            coxeter: quiver.coxeter_matrix(),
            coxeter_inv: quiver.coxeter_inverse(),
            subs: Vec::new(),
        };
        cat.subs = (0..cat.roots.len())
            .map(|r| crate::stability::proper_generic_subs(&cat, &cat.roots[r]))
            .collect::<Result<_>>()?;
        Ok(cat)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }

    pub fn rank(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &[i64] {
        &self.roots[id]
    }

    pub fn root_id(&self, v: &[i64]) -> Option<RootId> {
        self.index.get(v).copied()
    }

    pub fn modules(&self) -> &[IndecModule] {
        &self.modules
    }

    pub fn simple(&self, i: usize) -> RootId {
        self.index[&crate::quiver::unit(self.rank(), i)]
    }

    pub fn projective(&self, i: usize) -> RootId {
        self.projective[i]
    }

    pub fn injective(&self, i: usize) -> RootId {
        self.injective[i]
    }

    /// Dimension vectors of the proper nonzero submodules of `M_r`.
    pub fn submodule_dims(&self, r: RootId) -> &[DimVector] {
        &self.subs[r]
    }

    /// `dim Hom(M_a, M_b)` for modules.
    pub fn hom0(&self, a: RootId, b: RootId) -> u32 {
        self.hom[a][b]
    }

    /// `dim Ext¹(M_a, M_b)` for modules.
    pub fn ext1(&self, a: RootId, b: RootId) -> u32 {
        self.ext[a][b]
    }

    /// `dim Hom(E, F[k])`, reduced to the module case by hereditarity.
    pub fn hom_dim(&self, e: IndecObject, f: IndecObject, k: i64) -> u32 {
        match f.shift + k - e.shift {
            0 => self.hom[e.root][f.root],
            1 => self.ext[e.root][f.root],
            _ => 0,
        }
    }

    /// Signed class `(−1)^k [M]` of `M[k]` in the Grothendieck group.
    pub fn class(&self, x: IndecObject) -> DimVector {
        let sign = if x.shift.rem_euclid(2) == 0 { 1 } else { -1 };
        self.roots[x.root].iter().map(|c| sign * c).collect()
    }

    /// Auslander–Reiten translate: `τP_j = I_j[−1]`, otherwise the Coxeter
    /// image of the root at the same shift.
    pub fn ar_translate(&self, x: IndecObject) -> IndecObject {
        if let Some(j) = self.projective.iter().position(|&p| p == x.root) {
            return IndecObject::new(self.injective[j], x.shift - 1);
        }
        let image = self.coxeter.apply(&self.roots[x.root]);
        IndecObject::new(self.index[&image], x.shift)
    }

    pub fn ar_translate_inv(&self, x: IndecObject) -> IndecObject {
        if let Some(j) = self.injective.iter().position(|&i| i == x.root) {
            return IndecObject::new(self.projective[j], x.shift + 1);
        }
        let image = self.coxeter_inv.apply(&self.roots[x.root]);
        IndecObject::new(self.index[&image], x.shift)
    }

    /// `τ^a` for any integer `a`.
    pub fn ar_power(&self, mut x: IndecObject, a: i64) -> IndecObject {
        for _ in 0..a.unsigned_abs() {
            x = if a > 0 { self.ar_translate(x) } else { self.ar_translate_inv(x) };
        }
        x
    }

    /// Serre functor `S = [1] ∘ τ`.
    pub fn serre(&self, x: IndecObject) -> IndecObject {
        self.ar_translate(x).shifted(1)
    }

    /// Vertex of the `ZQ` chart: `(m, i) ↦ τ^{−m} P_i`.
    pub fn zq_object(&self, m: i64, i: usize) -> IndecObject {
        self.ar_power(IndecObject::new(self.projective[i], 0), -m)
    }

    /// Every module appears as `τ^{−m} P_i` for a unique `(m, i)` with
    /// `m ≥ 0`; returns that chart coordinate.
    pub fn zq_coordinates(&self, root: RootId) -> (i64, usize) {
        let mut x = IndecObject::new(root, 0);
        let mut m = 0;
        loop {
            if x.shift == 0 {
                if let Some(i) = self.projective.iter().position(|&p| p == x.root) {
                    return (m, i);
                }
            }
            x = self.ar_translate(x);
            m += 1;
        }
    }

    /// All module pairs, used by scans over `Ind`.
    pub fn objects_in_heart(&self) -> impl Iterator<Item = IndecObject> + '_ {
        (0..self.roots.len()).map(|r| IndecObject::new(r, 0))
    }
}

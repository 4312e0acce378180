//! Quivers, their Euler form and Coxeter transformation, and positive roots.
//!
//! Vertices are stored 0-based; the human-facing label of vertex `i` is
//! `i + 1`. An arrow `(s, t)` is the direction of the linear map
//! `V_s -> V_t` in a representation.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

/// Class in the Grothendieck lattice `K ≅ Z^n`, one integer per vertex.
pub type DimVector = Vec<i64>;

/// Largest power tried when searching for the order of a Coxeter matrix.
pub const COXETER_ORDER_LIMIT: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl DynkinType {
    pub fn letter(self) -> char {
        match self {
            DynkinType::A => 'A',
            DynkinType::D => 'D',
            DynkinType::E => 'E',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuiverKind {
    Dynkin(DynkinType, usize),
    Kronecker,
    Custom,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    kind: QuiverKind,
}

/// Lattice data of a Dynkin quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerData {
    pub euler_matrix: IntMatrix,
    pub coxeter_matrix: IntMatrix,
    pub coxeter_number: u32,
}

impl Quiver {
    /// Dynkin quiver with the standard vertex labels.
    ///
    /// Every edge `{i, j}` with `i < j` is oriented `j -> i`, so for `A_n`
    /// the simple `S_i` is a submodule of `M_{i,i+1}`.
    pub fn build_dynkin(ty: DynkinType, rank: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = match (ty, rank) {
            (DynkinType::A, n) if n >= 1 => (1..n).map(|i| (i, i + 1)).collect(),
            (DynkinType::D, n) if n >= 4 => {
                let mut e: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                e
            }
            (DynkinType::E, n @ 6..=8) => {
                let mut e = vec![(1, 2), (2, 3), (3, 4), (3, 5)];
                e.extend((5..n).map(|i| (i, i + 1)));
                e
            }
            _ => return Err(Error::UnsupportedRank { kind: ty.letter(), rank }),
        };
        let arrows = edges.into_iter().map(|(i, j)| (j - 1, i - 1)).collect();
        Ok(Self { n: rank, arrows, kind: QuiverKind::Dynkin(ty, rank) })
    }

    /// Kronecker quiver: two arrows from vertex 2 to vertex 1.
    pub fn kronecker() -> Self {
        Self { n: 2, arrows: vec![(1, 0), (1, 0)], kind: QuiverKind::Kronecker }
    }

    /// Arbitrary acyclic quiver on `n` vertices (0-based arrow endpoints).
    pub fn from_arrows(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("quiver needs at least one vertex".into()));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= n || t >= n) {
            return Err(Error::InvalidVertex(s.max(t) + 1));
        }
        let kind = if n == 2 && arrows == [(1, 0), (1, 0)] { QuiverKind::Kronecker } else { QuiverKind::Custom };
        let q = Self { n, arrows, kind };
        if q.topological_order().is_none() {
            return Err(Error::Cyclic);
        }
        Ok(q)
    }

    /// Parses short names such as `A6`, `D4`, `E6` or `Kronecker`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if name.eq_ignore_ascii_case("kronecker") || name.eq_ignore_ascii_case("k2") {
            return Ok(Self::kronecker());
        }
        let mut chars = name.chars();
        let ty = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => DynkinType::A,
            Some('D') => DynkinType::D,
            Some('E') => DynkinType::E,
            _ => return Err(Error::InvalidArgument(format!("unknown quiver name {name:?}"))),
        };
        let rank =
            chars.as_str().parse().map_err(|_| Error::InvalidArgument(format!("unknown quiver name {name:?}")))?;
        Self::build_dynkin(ty, rank)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    /// True for `A_n` with the orientation of [`Quiver::build_dynkin`],
    /// whether built by name or from an identical arrow list.
    pub fn is_standard_type_a(&self) -> bool {
        let n = self.n;
        match self.kind {
            QuiverKind::Dynkin(DynkinType::A, _) => true,
            _ => {
                let mut arrows = self.arrows.clone();
                arrows.sort_unstable();
                arrows == (1..n).map(|j| (j, j - 1)).collect::<Vec<_>>()
            }
        }
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in &self.arrows {
                let w = if s == v {
                    t
                } else if t == v {
                    s
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Adjacency counts: `A[s][t]` is the number of arrows `s -> t`.
    pub fn adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for &(s, t) in &self.arrows {
            a[(s, t)] += 1;
        }
        a
    }

    /// `E = I − A`, so that `⟨a, b⟩ = aᵀ E b`.
    pub fn euler_matrix(&self) -> IntMatrix {
        let mut e = IntMatrix::identity(self.n);
        for &(s, t) in &self.arrows {
            e[(s, t)] -= 1;
        }
        e
    }

    /// `E⁻¹ = I + A + A² + …`; entry `(i, j)` counts paths from `i` to `j`.
    pub fn path_matrix(&self) -> IntMatrix {
        let a = self.adjacency();
        let mut total = IntMatrix::identity(self.n);
        let mut power = IntMatrix::identity(self.n);
        for _ in 1..self.n {
            power = &power * &a;
            for i in 0..self.n {
                for j in 0..self.n {
                    total[(i, j)] += power[(i, j)];
                }
            }
        }
        total
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, got: v.len() })
        }
    }

    /// Euler pairing `⟨a, b⟩ = Σ a_i b_i − Σ_{s->t} a_s b_t`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.euler_unchecked(a, b))
    }

    pub(crate) fn euler_unchecked(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        diag - self.arrows.iter().map(|&(s, t)| a[s] * b[t]).sum::<i64>()
    }

    /// Coxeter transformation `Φ = −E⁻¹Eᵀ`, the class of the AR translate
    /// acting on column vectors.
    pub fn coxeter_matrix(&self) -> IntMatrix {
        (&self.path_matrix() * &self.euler_matrix().transpose()).neg()
    }

    /// `Φ⁻¹ = −E⁻ᵀE`.
    pub fn coxeter_inverse(&self) -> IntMatrix {
        (&self.path_matrix().transpose() * &self.euler_matrix()).neg()
    }

    /// Acyclic, connected and with positive definite Tits form.
    pub fn is_dynkin(&self) -> bool {
        if !self.is_connected() || self.topological_order().is_none() {
            return false;
        }
        let e = self.euler_matrix();
        let sym = &e + &e.transpose();
        (1..=self.n).all(|k| {
            let minor = IntMatrix::from_rows(&(0..k).map(|i| sym.row(i)[..k].to_vec()).collect::<Vec<_>>());
            linalg::determinant(&minor).is_positive()
        })
    }

    /// Multiplicative order of the Coxeter matrix.
    pub fn coxeter_number(&self) -> Result<u32> {
        if !self.is_dynkin() {
            return Err(Error::NotDynkin);
        }
        coxeter_order(&self.coxeter_matrix(), COXETER_ORDER_LIMIT).ok_or(Error::NotDynkin)
    }

    pub fn euler_data(&self) -> Result<EulerData> {
        Ok(EulerData {
            euler_matrix: self.euler_matrix(),
            coxeter_matrix: self.coxeter_matrix(),
            coxeter_number: self.coxeter_number()?,
        })
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> Result<Vec<DimVector>> {
        if !self.is_dynkin() {
            return Err(Error::NotDynkin);
        }
        let mut found: BTreeSet<DimVector> = BTreeSet::new();
        let mut queue: VecDeque<DimVector> = VecDeque::new();
        for i in 0..self.n {
            let e = unit(self.n, i);
            found.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..self.n {
                let mut next = r.clone();
                next[i] += 1;
                if self.euler_unchecked(&next, &next) == 1 && found.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut roots: Vec<DimVector> = found.into_iter().collect();
        roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
        Ok(roots)
    }

    /// Dimension vector of the indecomposable projective at vertex `i`.
    pub fn dim_projective(&self, i: usize) -> DimVector {
        self.path_matrix().row(i).to_vec()
    }

    /// Dimension vector of the indecomposable injective at vertex `i`.
    pub fn dim_injective(&self, i: usize) -> DimVector {
        self.path_matrix().column(i)
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            QuiverKind::Dynkin(t, r) => write!(f, "{}{}", t.letter(), r),
            QuiverKind::Kronecker => f.write_str("Kronecker"),
            QuiverKind::Custom => {
                write!(f, "Quiver({} vertices, arrows ", self.n)?;
                f.debug_list().entries(self.arrows.iter().map(|&(s, t)| (s + 1, t + 1))).finish()?;
                f.write_str(")")
            }
        }
    }
}

pub fn unit(n: usize, i: usize) -> DimVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// Smallest `k ≤ limit` with `m^k = I`, using overflow-checked products.
pub fn coxeter_order(m: &IntMatrix, limit: u32) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=limit {
        if p.is_identity() {
            return Some(k);
        }
        p = p.checked_mul(m)?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dynkin(t: DynkinType, r: usize) -> Quiver {
        Quiver::build_dynkin(t, r).unwrap()
    }

    #[test]
    fn a2_has_one_arrow_from_two_to_one() {
        let q = dynkin(DynkinType::A, 2);
        assert_eq!(q.arrows(), &[(1, 0)]);
        assert_eq!(q.euler_form(&[0, 1], &[1, 0]).unwrap(), -1);
        assert_eq!(q.euler_form(&[1, 0], &[0, 1]).unwrap(), 0);
    }

    #[test]
    fn d4_is_a_star_centred_at_two() {
        let q = dynkin(DynkinType::D, 4);
        let mut deg = [0; 4];
        for &(s, t) in q.arrows() {
            deg[s] += 1;
            deg[t] += 1;
        }
        assert_eq!(deg, [1, 3, 1, 1]);
    }

    #[test]
    fn unsupported_ranks_are_rejected() {
        assert!(matches!(Quiver::build_dynkin(DynkinType::E, 9), Err(Error::UnsupportedRank { kind: 'E', rank: 9 })));
        assert!(Quiver::build_dynkin(DynkinType::D, 3).is_err());
        assert!(Quiver::build_dynkin(DynkinType::A, 0).is_err());
    }

    #[test]
    fn coxeter_numbers_match_table() {
        for n in 1..=8 {
            assert_eq!(dynkin(DynkinType::A, n).coxeter_number().unwrap() as usize, n + 1);
        }
        for n in 4..=8 {
            assert_eq!(dynkin(DynkinType::D, n).coxeter_number().unwrap() as usize, 2 * (n - 1));
        }
        for (n, h) in [(6, 12), (7, 18), (8, 30)] {
            assert_eq!(dynkin(DynkinType::E, n).coxeter_number().unwrap(), h);
        }
    }

    #[test]
    fn root_counts_are_nh_over_two() {
        let cases = [
            (DynkinType::A, 2),
            (DynkinType::A, 5),
            (DynkinType::D, 4),
            (DynkinType::D, 6),
            (DynkinType::E, 6),
            (DynkinType::E, 7),
            (DynkinType::E, 8),
        ];
        for (t, r) in cases {
            let q = dynkin(t, r);
            let h = q.coxeter_number().unwrap() as usize;
            assert_eq!(q.positive_roots().unwrap().len(), r * h / 2, "{q:?}");
        }
        assert_eq!(dynkin(DynkinType::A, 2).positive_roots().unwrap(), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn coxeter_matrix_of_a2() {
        let q = dynkin(DynkinType::A, 2);
        let phi = q.coxeter_matrix();
        assert_eq!(phi, IntMatrix::from_rows(&[vec![-1, 1], vec![-1, 0]]));
        assert_eq!(&phi * &q.coxeter_inverse(), IntMatrix::identity(2));
        // τ S_2 = S_1 on classes.
        assert_eq!(phi.apply(&[0, 1]), vec![1, 0]);
        // τ P_i = I_i[-1].
        for i in 0..2 {
            let neg: Vec<i64> = q.dim_injective(i).iter().map(|x| -x).collect();
            assert_eq!(phi.apply(&q.dim_projective(i)), neg);
        }
    }

    #[test]
    fn kronecker_is_not_dynkin() {
        let k = Quiver::kronecker();
        assert!(!k.is_dynkin());
        assert_eq!(k.coxeter_number(), Err(Error::NotDynkin));
        assert_eq!(coxeter_order(&k.coxeter_matrix(), COXETER_ORDER_LIMIT), None);
        assert_eq!(k.euler_form(&[0, 1], &[1, 0]).unwrap(), -2);
    }

    #[test]
    fn custom_quivers() {
        assert_eq!(Quiver::from_arrows(2, vec![(0, 1), (1, 0)]), Err(Error::Cyclic));
        assert!(matches!(Quiver::from_arrows(2, vec![(0, 2)]), Err(Error::InvalidVertex(3))));
        let q = Quiver::from_arrows(3, vec![(0, 1), (2, 1)]).unwrap();
        assert!(q.is_dynkin());
        assert_eq!(q.coxeter_number().unwrap(), 4);
        assert!(Quiver::from_arrows(2, vec![]).map(|q| !q.is_dynkin()).unwrap());
        assert_eq!(Quiver::from_arrows(2, vec![(1, 0), (1, 0)]).unwrap(), Quiver::kronecker());
    }

    #[test]
    fn names_parse() {
        assert_eq!(Quiver::from_name("A6").unwrap().vertex_count(), 6);
        assert_eq!(Quiver::from_name("kronecker").unwrap().kind(), QuiverKind::Kronecker);
        assert!(Quiver::from_name("F4").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn euler_form_is_bilinear(
                a in proptest::collection::vec(-5i64..5, 6),
                a2 in proptest::collection::vec(-5i64..5, 6),
                b in proptest::collection::vec(-5i64..5, 6),
            ) {
                let q = Quiver::build_dynkin(DynkinType::E, 6).unwrap();
                let sum: Vec<i64> = a.iter().zip(&a2).map(|(x, y)| x + y).collect();
                prop_assert_eq!(
                    q.euler_form(&sum, &b).unwrap(),
                    q.euler_form(&a, &b).unwrap() + q.euler_form(&a2, &b).unwrap()
                );
            }

            #[test]
            fn coxeter_matrix_preserves_euler_form(
                a in proptest::collection::vec(-5i64..5, 5),
                b in proptest::collection::vec(-5i64..5, 5),
            ) {
                let q = Quiver::build_dynkin(DynkinType::D, 5).unwrap();
                let phi = q.coxeter_matrix();
                prop_assert_eq!(
                    q.euler_form(&phi.apply(&a), &phi.apply(&b)).unwrap(),
                    q.euler_form(&a, &b).unwrap()
                );
            }
        }
    }
}

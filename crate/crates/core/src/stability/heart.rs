//! King's criterion on the standard heart and Harder–Narasimhan factors.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{phase_cmp, proper_generic_subs, ChartEntry, HeartCharge};
use crate::derived::DerivedCategory;
use crate::error::{Error, Result};
use crate::quiver::{height, DimVector};

fn check_rank(cat: &DerivedCategory, h: &HeartCharge) -> Result<()> {
    if h.charge().rank() == cat.rank() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: cat.rank(), got: h.charge().rank() })
    }
}

/// Semistable indecomposable modules with their phases in `(0, 1]`.
///
/// `M_d` is semistable iff no submodule has larger phase, and stable iff
/// every proper nonzero submodule has strictly smaller phase.
pub fn semistable_set(cat: &DerivedCategory, h: &HeartCharge) -> Result<Vec<ChartEntry>> {
    check_rank(cat, h)?;
    let mut out = Vec::new();
    for (r, root) in cat.roots().iter().enumerate() {
        let phase = h.phase_of(root);
        let mut semistable = true;
        let mut stable = true;
        for e in cat.submodule_dims(r) {
            match phase_cmp(h.phase_of(e), phase) {
                Ordering::Greater => {
                    semistable = false;
                    break;
                }
                Ordering::Equal => stable = false,
                Ordering::Less => {}
            }
        }
        if semistable {
            out.push(ChartEntry { root: root.clone(), phase, stable });
        }
    }
    Ok(out)
}

/// HN factors of the generic representation of `d`, phases strictly
/// decreasing.
///
/// Each step splits off the subrepresentation of maximal phase, preferring
/// larger total dimension and then the lexicographically smaller vector; the
/// quotient of a generic representation by it is again generic.
pub fn hn_factors(cat: &DerivedCategory, h: &HeartCharge, d: &[i64]) -> Result<Vec<(DimVector, f64)>> {
    check_rank(cat, h)?;
    let mut rest = d.to_vec();
    let mut out: Vec<(DimVector, f64)> = Vec::new();
    while rest.iter().any(|&x| x != 0) {
        let mut candidates = proper_generic_subs(cat, &rest)?;
        candidates.push(rest.clone());
        let mut best: Option<(DimVector, f64)> = None;
        for e in candidates {
            let p = h.phase_of(&e);
            let better = match &best {
                None => true,
                Some((b, bp)) => match phase_cmp(p, *bp) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => match height(&e).cmp(&height(b)) {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => e < *b,
                    },
                },
            };
            if better {
                best = Some((e, p));
            }
        }
        let (e, p) = best.expect("candidate list contains the vector itself");
        for (x, y) in rest.iter_mut().zip(&e) {
            *x -= y;
        }
        out.push((e, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DynkinType, Quiver};
    use crate::stability::aligned_charge;
    use alloc::vec;

    fn a2() -> DerivedCategory {
        DerivedCategory::new(&Quiver::build_dynkin(DynkinType::A, 2).unwrap()).unwrap()
    }

    #[test]
    fn destabilised_m12() {
        let c = a2();
        let h = HeartCharge::from_polar(&[1.0, 1.0], &[0.9, 0.1]).unwrap();
        let ss = semistable_set(&c, &h).unwrap();
        let roots: Vec<_> = ss.iter().map(|e| e.root.clone()).collect();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0]]);
        let hn = hn_factors(&c, &h, &[1, 1]).unwrap();
        assert_eq!(hn.len(), 2);
        assert_eq!(hn[0].0, vec![1, 0]);
        assert!((hn[0].1 - 0.9).abs() < 1e-12);
        assert_eq!(hn[1].0, vec![0, 1]);
        assert!((hn[1].1 - 0.1).abs() < 1e-12);
    }

    #[test]
    fn everything_stable_when_phases_increase() {
        let c = a2();
        let h = HeartCharge::from_polar(&[1.0, 1.0], &[0.1, 0.9]).unwrap();
        let ss = semistable_set(&c, &h).unwrap();
        assert_eq!(ss.len(), 3);
        assert!(ss.iter().all(|e| e.stable));
        assert_eq!(hn_factors(&c, &h, &[1, 1]).unwrap().len(), 1);
    }

    #[test]
    fn aligned_charge_is_semistable_everywhere() {
        let c = DerivedCategory::new(&Quiver::build_dynkin(DynkinType::D, 4).unwrap()).unwrap();
        let ss = semistable_set(&c, &aligned_charge(c.quiver())).unwrap();
        assert_eq!(ss.len(), c.root_count());
        assert!(ss.iter().all(|e| e.phase == 1.0));
        assert_eq!(ss.iter().filter(|e| e.stable).count(), 4);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn hn_phases_decrease_and_classes_add_up(
                phases in proptest::collection::vec(0.01f64..1.0, 4),
                moduli in proptest::collection::vec(0.2f64..3.0, 4),
                root in 0usize..12,
            ) {
                let c = DerivedCategory::new(&Quiver::build_dynkin(DynkinType::D, 4).unwrap()).unwrap();
                let h = HeartCharge::from_polar(&moduli, &phases).unwrap();
                let d = c.root(root).to_vec();
                let hn = hn_factors(&c, &h, &d).unwrap();
                let mut sum = alloc::vec![0; 4];
                for w in hn.windows(2) {
                    prop_assert!(w[0].1 > w[1].1);
                }
                for (e, _) in &hn {
                    for (s, x) in sum.iter_mut().zip(e) {
                        *s += x;
                    }
                }
                prop_assert_eq!(sum, d);
            }
        }
    }
}

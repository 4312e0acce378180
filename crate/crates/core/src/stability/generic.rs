//! Generic representations of a dimension vector in finite type.
//!
//! The generic representation of `f` is the unique rigid one; it decomposes
//! into roots with pairwise vanishing `Ext¹` (the canonical decomposition).
//! A vector `e` is a subdimension vector of the generic representation of `d`
//! exactly when generic `Ext¹(e, d − e)` vanishes.

use alloc::vec;
use alloc::vec::Vec;

use crate::derived::{DerivedCategory, RootId};
use crate::error::{Error, Result};
use crate::quiver::{height, DimVector};

fn search(cat: &DerivedCategory, order: &[RootId], start: usize, rem: &mut [i64], chosen: &mut Vec<RootId>) -> bool {
    if rem.iter().all(|&x| x == 0) {
        return true;
    }
    for (pos, &r) in order.iter().enumerate().skip(start) {
        let root = cat.root(r);
        if root.iter().zip(rem.iter()).any(|(a, b)| a > b) {
            continue;
        }
        if chosen.iter().any(|&c| cat.ext1(c, r) != 0 || cat.ext1(r, c) != 0) {
            continue;
        }
        for (x, a) in rem.iter_mut().zip(root) {
            *x -= a;
        }
        chosen.push(r);
        if search(cat, order, pos, rem, chosen) {
            return true;
        }
        chosen.pop();
        for (x, a) in rem.iter_mut().zip(root) {
            *x += a;
        }
    }
    false
}

fn decomposition_ids(cat: &DerivedCategory, f: &[i64]) -> Result<Vec<RootId>> {
    if f.len() != cat.rank() {
        return Err(Error::DimensionMismatch { expected: cat.rank(), got: f.len() });
    }
    if f.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument("dimension vector has a negative entry".into()));
    }
    let mut order: Vec<RootId> = (0..cat.root_count()).collect();
    order.sort_by_key(|&r| core::cmp::Reverse(height(cat.root(r))));
    let mut rem = f.to_vec();
    let mut chosen = Vec::new();
    if search(cat, &order, 0, &mut rem, &mut chosen) {
        Ok(chosen)
    } else {
        // Cannot happen for a Dynkin quiver: the rigid representation exists.
        Err(Error::NotDynkin)
    }
}

/// Roots (with multiplicity) of the generic representation of `f`.
pub fn canonical_decomposition(cat: &DerivedCategory, f: &[i64]) -> Result<Vec<DimVector>> {
    let mut out: Vec<DimVector> = decomposition_ids(cat, f)?.into_iter().map(|r| cat.root(r).to_vec()).collect();
    out.sort_by(|a, b| height(b).cmp(&height(a)).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `dim Ext¹` between the generic representations of `e` and `f`.
pub fn generic_ext(cat: &DerivedCategory, e: &[i64], f: &[i64]) -> Result<u32> {
    let a = decomposition_ids(cat, e)?;
    let b = decomposition_ids(cat, f)?;
    Ok(a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| cat.ext1(x, y)).sum())
}

/// Whether the generic representation of `d` has a subrepresentation of
/// dimension vector `e`.
pub fn generic_sub(cat: &DerivedCategory, e: &[i64], d: &[i64]) -> Result<bool> {
    if e.len() != d.len() || e.iter().zip(d).any(|(a, b)| *a < 0 || a > b) {
        return Err(Error::NotBelow { e: e.to_vec(), d: d.to_vec() });
    }
    let quotient: Vec<i64> = d.iter().zip(e).map(|(a, b)| a - b).collect();
    Ok(generic_ext(cat, e, &quotient)? == 0)
}

/// All `e` with `0 ≠ e ≠ d` that are generic subdimension vectors of `d`.
pub fn proper_generic_subs(cat: &DerivedCategory, d: &[i64]) -> Result<Vec<DimVector>> {
    let mut out = Vec::new();
    let mut e = vec![0i64; d.len()];
    loop {
        // Odometer over the box 0 ≤ e ≤ d.
        let mut i = 0;
        while i < d.len() {
            if e[i] < d[i] {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == d.len() {
            break;
        }
        if e.as_slice() != d && generic_sub(cat, &e, d)? {
            out.push(e.clone());
        }
    }
    Ok(out)
}

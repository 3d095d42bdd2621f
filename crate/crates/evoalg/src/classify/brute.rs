//! Brute-force isomorphism between small perfect evolution algebras over a
//! finite field.
//!
//! For perfect algebras the natural basis is unique up to permutation and
//! rescaling, so every isomorphism is a basis change u_i = c_i e_{s(i)}.
//! Searching all n! permutations and all (q-1)^n unit rescalings is
//! therefore a complete decision procedure, and the independent oracle the
//! per-family predicates are validated against.

use crate::algebra::{BasisChange, EvolutionAlgebra};
use crate::field::Scalar;
use crate::{Error, Result};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// Searches all n! * (q-1)^n basis changes for a witness carrying `a` onto
/// `b`. Requires a common finite field, equal dimension n <= 4, and both
/// algebras perfect (otherwise the natural basis need not be unique and the
/// search would not be a complete isomorphism test).
pub fn brute_force_isomorphic(
    a: &EvolutionAlgebra,
    b: &EvolutionAlgebra,
) -> Result<Option<BasisChange>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if !a.field().is_finite() {
        return Err(Error::InfiniteField);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let n = a.dim();
    if n > 4 {
        return Err(Error::TooLarge(format!("brute force is limited to n <= 4, got {n}")));
    }
    if !a.is_perfect() || !b.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let units = a.field().units()?;
    let mut counters = vec![0usize; n];
    for perm in permutations(n) {
        counters.iter_mut().for_each(|c| *c = 0);
        loop {
            let scalars: Vec<Scalar> = counters.iter().map(|&c| units[c].clone()).collect();
            let change = BasisChange::new(perm.clone(), scalars)?;
            if &a.change_basis(&change)? == b {
                return Ok(Some(change));
            }
            // Odometer over unit tuples.
            let mut idx = 0;
            loop {
                if idx == n {
                    break;
                }
                counters[idx] += 1;
                if counters[idx] < units.len() {
                    break;
                }
                counters[idx] = 0;
                idx += 1;
            }
            if idx == n {
                break;
            }
        }
    }
    Ok(None)
}

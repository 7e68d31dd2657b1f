//! Brute-force regular-orbit detection.
//!
//! A vector lies in a regular orbit iff no element of prime order fixes it,
//! so it is enough to mark the union of the fixed spaces of prime-order
//! elements and count what is left. Many elements share a fixed space, so the
//! distinct spaces are collected first and each is enumerated once.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::is_prime_u64;
use crate::gflinalg::{fixed_space_unchecked, Fe};
use crate::groupkit::FiniteGroup;

pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitVerdict {
    pub has_regular_orbit: bool,
    /// Coordinates of the least free vector (in the index order of
    /// [`vector_index`]), if any.
    pub witness: Option<Vec<Fe>>,
    #[serde(serialize_with = "as_decimal")]
    pub free_vector_count: u64,
    #[serde(serialize_with = "as_decimal")]
    pub covered_count: u64,
}

fn as_decimal<S: serde::Serializer>(n: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Vectors of `GF(q)^n` are indexed by reading the coordinates as base-`q`
/// digits, coordinate 0 least significant.
pub fn vector_index(v: &[Fe], q: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
}

pub fn index_vector(mut idx: u64, q: u64, n: usize) -> Vec<Fe> {
    (0..n)
        .map(|_| {
            let c = (idx % q) as Fe;
            idx /= q;
            c
        })
        .collect()
}

/// Distinct fixed spaces (as reduced echelon bases) of the prime-order
/// elements; the zero space is left out since it only holds the zero vector.
fn distinct_fixed_spaces(group: &FiniteGroup) -> BTreeSet<Vec<Vec<Fe>>> {
    let module = group.module();
    let elems: Vec<_> = group.elements().iter().zip(group.orders().iter().copied()).collect();
    elems
        .par_iter()
        .filter(|(_, o)| *o > 1 && is_prime_u64(*o))
        .map(|(x, _)| fixed_space_unchecked(&x.matrix(module)).basis)
        .filter(|b| !b.is_empty())
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn covered_bitmap(group: &FiniteGroup, budget: u128) -> Result<(Vec<bool>, u64)> {
    let module = group.module();
    let size = module.size();
    if size > budget {
        return Err(Error::Budget { size, budget });
    }
    let field = &module.field;
    let q = field.size() as u64;
    let n = module.dim;
    let mut covered = vec![false; size as usize];
    let has_prime_order = group.orders().iter().any(|&o| o > 1 && is_prime_u64(o));
    if has_prime_order {
        covered[0] = true;
    }
    for basis in distinct_fixed_spaces(group) {
        let k = basis.len() as u32;
        let points: Vec<u64> = (0..q.pow(k))
            .into_par_iter()
            .map(|coef_idx| {
                let coefs = index_vector(coef_idx, q, k as usize);
                let mut v = vec![0 as Fe; n];
                for (c, b) in coefs.iter().zip(&basis) {
                    if *c == 0 {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = field.add(*vi, field.mul(*c, *bi));
                    }
                }
                vector_index(&v, q)
            })
            .collect();
        for i in points {
            covered[i as usize] = true;
        }
    }
    Ok((covered, q))
}

/// Exact count of vectors fixed by some element of prime order.
pub fn union_fixed_size(group: &FiniteGroup, budget: u128) -> Result<u64> {
    let (covered, _) = covered_bitmap(group, budget)?;
    Ok(covered.iter().filter(|&&c| c).count() as u64)
}

pub fn regular_orbit_scan(group: &FiniteGroup, budget: u128) -> Result<OrbitVerdict> {
    let (covered, q) = covered_bitmap(group, budget)?;
    let covered_count = covered.iter().filter(|&&c| c).count() as u64;
    let free_vector_count = covered.len() as u64 - covered_count;
    let witness = covered
        .iter()
        .position(|&c| !c)
        .map(|i| index_vector(i as u64, q, group.module().dim));
    Ok(OrbitVerdict { has_regular_orbit: free_vector_count > 0, witness, free_vector_count, covered_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::{Field, Mat};
    use crate::groupkit::{semilinear_group, semilinear_scalars, wreath, GroupElement, NamedPermGroup};

    fn mat(p: u64, rows: &[&[i64]]) -> GroupElement {
        Mat::from_ints(&Field::make(p, 1).unwrap(), rows).unwrap().into()
    }

    /// Oracle: a vector is free iff only the identity fixes it.
    fn free_by_stabilizers(group: &FiniteGroup) -> u64 {
        let module = group.module();
        let q = module.field.size() as u64;
        let mats: Vec<Mat> = group.elements().iter().map(|x| x.matrix(module).into_owned()).collect();
        (0..module.size() as u64)
            .filter(|&i| {
                let v = index_vector(i, q, module.dim);
                mats.iter().filter(|m| m.mul_vec(&v) == v).count() == 1
            })
            .count() as u64
    }

    fn check(group: &FiniteGroup) -> OrbitVerdict {
        let v = regular_orbit_scan(group, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.free_vector_count, free_by_stabilizers(group));
        assert_eq!(v.free_vector_count + v.covered_count, group.module().size() as u64);
        assert_eq!(v.free_vector_count % group.order() as u64, 0);
        assert_eq!(union_fixed_size(group, DEFAULT_BUDGET).unwrap(), v.covered_count);
        v
    }

    #[test]
    fn scalar_action_is_free_off_zero() {
        for (r, m) in [(3, 2), (2, 4), (5, 1)] {
            let g = semilinear_scalars(r, m).unwrap();
            let v = check(&g);
            assert!(v.has_regular_orbit);
            assert_eq!(v.free_vector_count, r.pow(m) - 1);
        }
    }

    #[test]
    fn full_semilinear_group_of_nine() {
        let v = check(&semilinear_group(3, 2).unwrap());
        // the Frobenius fixes GF(3), twisted versions fix other lines:
        // every nonzero vector has a nontrivial stabilizer
        assert!(!v.has_regular_orbit);
        assert_eq!(v.covered_count, 9);
    }

    #[test]
    fn order_obstruction() {
        let s3 = FiniteGroup::closure(&[mat(2, &[&[0, 1], &[1, 0]]), mat(2, &[&[0, 1], &[1, 1]])], 10).unwrap();
        assert_eq!(union_fixed_size(&s3, DEFAULT_BUDGET).unwrap(), 4);
        let w = wreath(&s3, &NamedPermGroup::S2.generators(), 1000).unwrap();
        let v = check(&w);
        assert!(!v.has_regular_orbit);
        assert_eq!(v.free_vector_count, 0);
        assert_eq!(v.witness, None);
    }

    #[test]
    fn small_cases() {
        let triv = FiniteGroup::closure(&[mat(3, &[&[1, 0], &[0, 1]])], 1).unwrap();
        assert_eq!(union_fixed_size(&triv, DEFAULT_BUDGET).unwrap(), 0);
        let refl = FiniteGroup::closure(&[mat(3, &[&[-1, 0], &[0, 1]])], 2).unwrap();
        assert_eq!(union_fixed_size(&refl, DEFAULT_BUDGET).unwrap(), 3);
        let v = check(&refl);
        assert_eq!(v.witness, Some(vec![1, 0]));
    }

    #[test]
    fn budget_is_enforced() {
        let refl = FiniteGroup::closure(&[mat(3, &[&[-1, 0], &[0, 1]])], 2).unwrap();
        assert_eq!(union_fixed_size(&refl, 8).unwrap_err(), Error::Budget { size: 9, budget: 8 });
    }

    #[test]
    fn more_generators_never_free_more_vectors() {
        let a = mat(5, &[&[0, 1], &[-1, 0]]);
        let b = mat(5, &[&[2, 0], &[0, 3]]);
        let c = mat(5, &[&[1, 0], &[0, -1]]);
        let mut last = u64::MAX;
        for gens in [vec![a.clone()], vec![a.clone(), b.clone()], vec![a, b, c]] {
            let g = FiniteGroup::closure(&gens, 10_000).unwrap();
            let v = check(&g);
            assert!(v.free_vector_count <= last);
            last = v.free_vector_count;
        }
    }
}

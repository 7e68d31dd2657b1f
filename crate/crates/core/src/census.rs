//! Element censuses: counts of prime-order elements, their fixed-space
//! dimensions, coset counts and good/bad classification.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::is_prime_u64;
use crate::gflinalg::fixed_dim;
use crate::groupkit::{FiniteGroup, GroupElement};

/// Counts for one prime `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeCensus {
    /// Elements of order exactly `p`.
    pub nep: u64,
    /// Subgroups of order `p`, i.e. `nep / (p - 1)`.
    pub sp: u64,
    /// `npc[i]`: order-`p` elements whose fixed space has dimension `i`.
    pub npc: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub order: u64,
    pub dim: usize,
    /// Every prime dividing the group order, ascending.
    pub primes: BTreeMap<u64, PrimeCensus>,
    pub total_nep: u64,
}

impl CensusReport {
    pub fn nep(&self, p: u64) -> u64 {
        self.primes.get(&p).map_or(0, |c| c.nep)
    }

    pub fn sp(&self, p: u64) -> u64 {
        self.primes.get(&p).map_or(0, |c| c.sp)
    }

    pub fn npc(&self, p: u64, i: usize) -> u64 {
        self.primes.get(&p).and_then(|c| c.npc.get(&i)).copied().unwrap_or(0)
    }
}

/// Integers as decimal strings, maps in ascending numeric key order.
struct Dec<T>(T);

impl<T: std::fmt::Display> Serialize for Dec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct NpcMap<'a>(&'a BTreeMap<usize, u64>);

impl Serialize for NpcMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (i, c) in self.0 {
            m.serialize_entry(&i.to_string(), &Dec(c))?;
        }
        m.end()
    }
}

impl Serialize for PrimeCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("nep", &Dec(self.nep))?;
        m.serialize_entry("npc", &NpcMap(&self.npc))?;
        m.serialize_entry("sp", &Dec(self.sp))?;
        m.end()
    }
}

struct PrimeMap<'a>(&'a BTreeMap<u64, PrimeCensus>);

impl Serialize for PrimeMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (p, c) in self.0 {
            m.serialize_entry(&p.to_string(), c)?;
        }
        m.end()
    }
}

impl Serialize for CensusReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("order", &Dec(self.order))?;
        m.serialize_entry("primes", &PrimeMap(&self.primes))?;
        m.serialize_entry("total_nep", &Dec(self.total_nep))?;
        m.end()
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Full census of an enumerated group by scanning every element.
pub fn census(group: &FiniteGroup) -> CensusReport {
    let module = group.module();
    let order = group.order() as u64;
    let mut primes: BTreeMap<u64, PrimeCensus> =
        prime_divisors(order).into_iter().map(|p| (p, PrimeCensus::default())).collect();

    let elems: Vec<(&GroupElement, u64)> =
        group.elements().iter().zip(group.orders().iter().copied()).collect();
    let hits: BTreeMap<(u64, usize), u64> = elems
        .par_iter()
        .filter(|(_, o)| *o > 1 && primes.contains_key(o) && is_prime_u64(*o))
        .fold(BTreeMap::new, |mut acc, (x, o)| {
            let d = fixed_dim(&x.matrix(module));
            *acc.entry((*o, d)).or_insert(0u64) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });

    for ((p, d), c) in hits {
        let pc = primes.get_mut(&p).expect("prime divides the order");
        pc.nep += c;
        pc.npc.insert(d, c);
    }
    for (p, pc) in primes.iter_mut() {
        pc.sp = pc.nep / (p - 1);
    }
    let total_nep = primes.values().map(|c| c.nep).sum();
    CensusReport { order, dim: module.dim, primes, total_nep }
}

fn has_order(x: &GroupElement, p: u64) -> bool {
    !x.is_identity() && x.pow(p).is_identity()
}

/// Number of elements of order `p` in the coset `x H`. `x` must normalize `H`.
pub fn coset_census(x: &GroupElement, h: &FiniteGroup, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if x.module()? != *h.module() {
        return Err(Error::MixedModules);
    }
    if !h.is_normalized_by(x) {
        return Err(Error::NotNormalizing("coset representative"));
    }
    let elems: Vec<&GroupElement> = h.elements().iter().collect();
    Ok(elems.par_iter().filter(|y| has_order(&x.mul(y), p)).count() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Goodness {
    Good,
    Bad,
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct GoodBadTag {
    pub element: GroupElement,
    pub tag: Goodness,
    /// `|C_{E/Z}(x)|`; absent when the tag is not applicable.
    pub centralizer_size: Option<u64>,
}

/// Decides whether the prime-order element `x` is good relative to `Z <= E`:
/// with `C/Z = C_{E/Z}(x)`, `x` is good iff it commutes with all of `C`.
/// Elements that move `Z` are reported as not applicable.
pub fn classify_good_bad(x: &GroupElement, e: &FiniteGroup, z: &FiniteGroup) -> Result<GoodBadTag> {
    if !z.is_subgroup_of(e) {
        return Err(Error::Precondition("Z is not contained in E".into()));
    }
    if !e.is_normalized_by(x) {
        return Err(Error::NotNormalizing("element to classify"));
    }
    let s = x.order(e.order() as u64 * 1_000_000)?;
    if !is_prime_u64(s) {
        return Err(Error::Precondition(format!("element has order {s}, not a prime")));
    }
    let char_p = e.module().field.characteristic() as u64;
    if s == char_p {
        return Err(Error::Precondition(format!(
            "element order {s} equals the field characteristic"
        )));
    }
    if !z.generators().iter().all(|g| x.commutes_with(g)) {
        return Ok(GoodBadTag { element: x.clone(), tag: Goodness::NotApplicable, centralizer_size: None });
    }
    let x_inv = x.inverse();
    let c: Vec<&GroupElement> = e
        .elements()
        .iter()
        .filter(|y| {
            // [y, x] = y^-1 x y x^-1 lies in Z
            z.contains(&y.inverse().mul(x).mul(y).mul(&x_inv))
        })
        .collect();
    let size = (c.len() / z.order()) as u64;
    let good = c.iter().all(|y| x.commutes_with(y));
    Ok(GoodBadTag {
        element: x.clone(),
        tag: if good { Goodness::Good } else { Goodness::Bad },
        centralizer_size: Some(size),
    })
}

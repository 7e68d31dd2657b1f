use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Precondition(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `n` points from cycles written one-based,
    /// e.g. `&[&[1, 2, 3, 4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if pt == 0 || pt > n || next == 0 || next > n {
                    return Err(Error::Precondition(format!("cycle point out of range 1..={n}")));
                }
                images[pt - 1] = next - 1;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }
}

/// All elements of the permutation group generated by `gens`.
pub fn perm_closure(gens: &[Perm]) -> Result<Vec<Perm>> {
    let n = gens
        .first()
        .ok_or_else(|| Error::Precondition("no permutation generators".into()))?
        .degree();
    if gens.iter().any(|g| g.degree() != n) {
        return Err(Error::Dimension("permutations of different degrees".into()));
    }
    let id = Perm::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Named permutation groups used by the wreath-product models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedPermGroup {
    S2,
    S3,
    S4,
    /// The Frobenius group of order 20 on five points.
    F20,
}

impl NamedPermGroup {
    pub fn degree(self) -> usize {
        match self {
            NamedPermGroup::S2 => 2,
            NamedPermGroup::S3 => 3,
            NamedPermGroup::S4 => 4,
            NamedPermGroup::F20 => 5,
        }
    }

    pub fn generators(self) -> Vec<Perm> {
        let n = self.degree();
        let cyc = |cs: &[&[usize]]| Perm::from_cycles(n, cs).expect("valid literal cycles");
        match self {
            NamedPermGroup::S2 => vec![cyc(&[&[1, 2]])],
            NamedPermGroup::S3 => vec![cyc(&[&[1, 2]]), cyc(&[&[1, 2, 3]])],
            NamedPermGroup::S4 => vec![cyc(&[&[1, 2]]), cyc(&[&[1, 2, 3, 4]])],
            NamedPermGroup::F20 => vec![cyc(&[&[1, 2, 3, 4, 5]]), cyc(&[&[2, 3, 5, 4]])],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_group_orders() {
        let order = |g: NamedPermGroup| perm_closure(&g.generators()).unwrap().len();
        assert_eq!(order(NamedPermGroup::S2), 2);
        assert_eq!(order(NamedPermGroup::S3), 6);
        assert_eq!(order(NamedPermGroup::S4), 24);
        assert_eq!(order(NamedPermGroup::F20), 20);
    }

    #[test]
    fn f20_is_sharply_two_transitive() {
        let elems = perm_closure(&NamedPermGroup::F20.generators()).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                if a == b {
                    continue;
                }
                let hits = elems.iter().filter(|p| p.image(0) == a && p.image(1) == b).count();
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn bad_permutations() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_cycles(3, &[&[1, 4]]).is_err());
    }
}

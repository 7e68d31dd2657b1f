//! Wreath products and semilinear groups.

use super::element::{GroupElement, Semilinear};
use super::group::FiniteGroup;
use super::perm::{perm_closure, Perm};
use crate::error::{Error, Result};
use crate::gflinalg::{Field, Mat};

/// `H wr S` realised by block matrices on `F^(d n)`: the base group is `n`
/// diagonal copies of `H`, the top group permutes the blocks.
pub fn wreath(h: &FiniteGroup, s_gens: &[Perm], cap: usize) -> Result<FiniteGroup> {
    let n = s_gens
        .first()
        .ok_or_else(|| Error::Precondition("wreath product needs permutation generators".into()))?
        .degree();
    let s_order = perm_closure(s_gens)?.len();
    let expected = (h.order() as u128).pow(n as u32) * s_order as u128;
    if expected > cap as u128 {
        return Err(Error::ClosureCap(cap));
    }
    let module = h.module();
    let d = module.dim;
    let field = &module.field;
    let block_gens: Vec<Mat> = h
        .generators()
        .iter()
        .map(|g| g.matrix(module).into_owned())
        .filter(|m| !m.is_identity())
        .collect();

    let ident = Mat::identity(field, d);
    let mut gens = Vec::new();
    for b in 0..n {
        for hg in &block_gens {
            let mut m = Mat::identity(field, d * n);
            m.put_block(b, b, hg);
            gens.push(GroupElement::Matrix(m));
        }
    }
    for sigma in s_gens {
        let mut m = Mat::zeros(field, d * n, d * n);
        for j in 0..n {
            m.put_block(sigma.image(j), j, &ident);
        }
        gens.push(GroupElement::Matrix(m));
    }
    if gens.is_empty() {
        gens.push(GroupElement::Matrix(Mat::identity(field, d * n)));
    }
    let g = FiniteGroup::closure(&gens, cap)?;
    if g.order() as u128 != expected {
        return Err(Error::Precondition(format!(
            "wreath product has order {} instead of {expected}",
            g.order()
        )));
    }
    Ok(g)
}

/// The full semilinear group of GF(r^m): `x -> a x^(r^i)`.
pub fn semilinear_group(r: u64, m: u32) -> Result<FiniteGroup> {
    let f = Field::make(r, m)?;
    let zeta = f.primitive_element();
    let mut gens = vec![GroupElement::Semilinear(Semilinear::new(&f, zeta, 0)?)];
    if m > 1 {
        gens.push(GroupElement::Semilinear(Semilinear::new(&f, 1, 1)?));
    }
    FiniteGroup::closure(&gens, (f.size() as usize - 1) * m as usize)
}

/// The scalar subgroup `x -> a x` of GF(r^m).
pub fn semilinear_scalars(r: u64, m: u32) -> Result<FiniteGroup> {
    let f = Field::make(r, m)?;
    let zeta = f.primitive_element();
    FiniteGroup::closure(
        &[GroupElement::Semilinear(Semilinear::new(&f, zeta, 0)?)],
        f.size() as usize - 1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::perm::NamedPermGroup;
    use crate::groupkit::group::normal_test;

    fn s3_f2() -> FiniteGroup {
        let f = Field::make(2, 1).unwrap();
        let a = Mat::from_ints(&f, &[&[0, 1], &[1, 0]]).unwrap();
        let b = Mat::from_ints(&f, &[&[0, 1], &[1, 1]]).unwrap();
        FiniteGroup::closure(&[a.into(), b.into()], 10).unwrap()
    }

    #[test]
    fn wreath_orders() {
        let h = s3_f2();
        let g = wreath(&h, &NamedPermGroup::S2.generators(), 1000).unwrap();
        assert_eq!(g.order(), 72);
        assert_eq!(g.module().dim, 4);
        let g = wreath(&h, &NamedPermGroup::S3.generators(), 10_000).unwrap();
        assert_eq!(g.order(), 1296);
        assert_eq!(
            wreath(&h, &NamedPermGroup::S3.generators(), 1000).unwrap_err(),
            Error::ClosureCap(1000)
        );
    }

    #[test]
    fn wreath_contains_diagonal_copy_and_block_complement() {
        let h = s3_f2();
        let g = wreath(&h, &NamedPermGroup::S2.generators(), 1000).unwrap();
        let f = h.module().field.clone();
        // diagonal copy of H
        for x in h.elements() {
            let xm = x.as_matrix().unwrap();
            let mut diag = Mat::identity(&f, 4);
            diag.put_block(0, 0, xm);
            diag.put_block(1, 1, xm);
            assert!(g.contains(&diag.into()));
        }
        // base group is normal, the block swap lies outside it
        let base_gens: Vec<GroupElement> = g
            .generators()
            .iter()
            .filter(|x| {
                let m = x.as_matrix().unwrap();
                (0..2).all(|i| (2..4).all(|j| m.get(i, j) == 0 && m.get(j, i) == 0))
            })
            .cloned()
            .collect();
        let base = g.subgroup(&base_gens).unwrap();
        assert_eq!(base.order(), 36);
        assert!(normal_test(&g, &base));
        let center = g.center().unwrap();
        assert_eq!(center.order(), 1);
        assert_eq!(g.centralizer(&g.elements().iter().cloned().collect::<Vec<_>>()).unwrap().order(), 1);
    }

    #[test]
    fn semilinear_orders() {
        let g = semilinear_group(3, 2).unwrap();
        assert_eq!(g.order(), 16);
        let g = semilinear_group(7, 1).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g
            .elements()
            .iter()
            .all(|x| x.as_semilinear().unwrap().frobenius_power() == 0));
        // (81 - 1) * 4
        assert_eq!(semilinear_group(3, 4).unwrap().order(), 320);
        assert_eq!(semilinear_scalars(3, 4).unwrap().order(), 80);
        assert!(semilinear_group(2, 21).is_err());
    }
}

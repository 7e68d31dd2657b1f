//! Concrete groups: the wreath-product family, semilinear groups, and
//! normalizers of small extraspecial groups with their layers `Z <= E`,
//! `U = C(E)`, `F = EU`, `A = C(U)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::census::{census, CensusReport};
use crate::error::{Error, Result};
use crate::exactmath::prime_power;
use crate::gflinalg::{Fe, Field, Mat};
use crate::groupkit::{
    normal_test, semilinear_group, semilinear_scalars, wreath, FiniteGroup, GroupElement, NamedPermGroup,
    Semilinear, DEFAULT_CAP,
};

/// Parameters shared by the parametrised models.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ModelParams {
    pub q: Option<u64>,
    pub m: Option<u32>,
}

impl ModelParams {
    pub fn q(q: u64) -> Self {
        ModelParams { q: Some(q), m: None }
    }

    pub fn qm(q: u64, m: u32) -> Self {
        ModelParams { q: Some(q), m: Some(m) }
    }
}

pub struct ModelSpec {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
    pub defaults: ModelParams,
    expected: fn(u64, u32) -> u64,
}

impl ModelSpec {
    pub fn expected_order(&self, params: ModelParams) -> u64 {
        let q = params.q.or(self.defaults.q).unwrap_or(0);
        let m = params.m.or(self.defaults.m).unwrap_or(0);
        (self.expected)(q, m)
    }
}

const NO_PARAMS: ModelParams = ModelParams { q: None, m: None };

pub static REGISTRY: &[ModelSpec] = &[
    ModelSpec { name: "s3_f2", params: "", description: "S3 = GL(2,2) on GF(2)^2", defaults: NO_PARAMS, expected: |_, _| 6 },
    ModelSpec { name: "sl23_f3", params: "", description: "SL(2,3) on GF(3)^2", defaults: NO_PARAMS, expected: |_, _| 24 },
    ModelSpec { name: "s3_wr_s2", params: "", description: "S3 wr S2 on GF(2)^4", defaults: NO_PARAMS, expected: |_, _| 72 },
    ModelSpec { name: "s3_wr_s3", params: "", description: "S3 wr S3 on GF(2)^6", defaults: NO_PARAMS, expected: |_, _| 1296 },
    ModelSpec { name: "s3_wr_s4", params: "", description: "S3 wr S4 on GF(2)^8", defaults: NO_PARAMS, expected: |_, _| 31104 },
    ModelSpec { name: "s3_wr_f20", params: "", description: "S3 wr F20 on GF(2)^10", defaults: NO_PARAMS, expected: |_, _| 155520 },
    ModelSpec { name: "sl23_wr_s2", params: "", description: "SL(2,3) wr S2 on GF(3)^4", defaults: NO_PARAMS, expected: |_, _| 1152 },
    ModelSpec {
        name: "gamma",
        params: "q prime, m",
        description: "semilinear group of GF(q^m) acting on GF(q)^m",
        defaults: ModelParams { q: Some(3), m: Some(2) },
        expected: |q, m| (q.pow(m) - 1) * m as u64,
    },
    ModelSpec {
        name: "gamma0",
        params: "q prime, m",
        description: "multiplicative group of GF(q^m) acting on GF(q)^m",
        defaults: ModelParams { q: Some(3), m: Some(2) },
        expected: |q, m| q.pow(m) - 1,
    },
    ModelSpec {
        name: "q8_normalizer",
        params: "q odd <= 13",
        description: "normalizer of Q8 in GL(2,q)",
        defaults: ModelParams { q: Some(5), m: None },
        expected: |q, _| 24 * (q - 1),
    },
    ModelSpec {
        name: "d8_normalizer",
        params: "q odd <= 13",
        description: "normalizer of D8 in GL(2,q)",
        defaults: ModelParams { q: Some(5), m: None },
        expected: |q, _| 8 * (q - 1),
    },
    ModelSpec {
        name: "e27_normalizer",
        params: "q <= 13, 3 ∤ q",
        description: "normalizer of 3^(1+2) in GL(3,q) (q = 1 mod 3) or GL(6,q) (q = 2 mod 3)",
        defaults: ModelParams { q: Some(7), m: None },
        expected: |q, _| if q % 3 == 1 { 216 * (q - 1) } else { 432 * (q * q - 1) },
    },
    ModelSpec {
        name: "q8_central_z4",
        params: "q = 1 mod 4",
        description: "central product Q8 o Z4 in GL(2,q)",
        defaults: ModelParams { q: Some(5), m: None },
        expected: |_, _| 16,
    },
    ModelSpec {
        name: "q8_tensor_q8",
        params: "q odd <= 5",
        description: "(N(Q8) tensor N(Q8)) with the factor swap, in GL(4,q); E = Q8 tensor Q8",
        defaults: ModelParams { q: Some(3), m: None },
        expected: |q, _| (24 * (q - 1)).pow(2) / (q - 1) * 2,
    },
];

pub fn lookup(name: &str) -> Result<&'static ModelSpec> {
    REGISTRY
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownModel(name.to_string()))
}

/// The normal series of an extraspecial-normalizer model.
#[derive(Clone, Debug)]
pub struct Layers {
    /// `e = sqrt(|E/Z|)`.
    pub e_value: u32,
    pub e: FiniteGroup,
    pub z: FiniteGroup,
    pub u: FiniteGroup,
    pub f: FiniteGroup,
    pub a: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct Model {
    pub name: &'static str,
    pub params: ModelParams,
    pub group: FiniteGroup,
    pub layers: Option<Layers>,
}

fn field_of_order(q: u64) -> Result<Arc<Field>> {
    let (r, k) = prime_power(&BigInt::from(q))
        .ok_or_else(|| Error::ModelParam(format!("q = {q} is not a prime power")))?;
    Field::make(r.to_u64().expect("small prime"), k)
}

fn ints(p: u64, rows: &[&[i64]]) -> GroupElement {
    Mat::from_ints(&Field::make(p, 1).expect("prime"), rows).expect("literal matrix").into()
}

fn s3_f2() -> FiniteGroup {
    FiniteGroup::closure(&[ints(2, &[&[0, 1], &[1, 0]]), ints(2, &[&[0, 1], &[1, 1]])], 6).expect("S3")
}

fn sl23() -> FiniteGroup {
    FiniteGroup::closure(&[ints(3, &[&[1, 1], &[0, 1]]), ints(3, &[&[1, 0], &[1, 1]])], 24).expect("SL(2,3)")
}

/// `J = [[0,1],[-1,0]]` and `K = [[a,b],[b,-a]]` with `a^2 + b^2 = -1`
/// (so `K = diag(i,-i)` when `-1` is a square).
pub fn q8_generators(f: &Arc<Field>) -> Result<[Mat; 2]> {
    let minus1 = f.neg(1);
    let (a, b) = (0..f.size())
        .flat_map(|b| (0..f.size()).map(move |a| (a, b)))
        .find(|&(a, b)| f.add(f.mul(a, a), f.mul(b, b)) == minus1)
        .ok_or_else(|| Error::ModelParam("no solution of a^2 + b^2 = -1".into()))?;
    let j = Mat::from_data(f, 2, 2, vec![0, 1, minus1, 0])?;
    let k = Mat::from_data(f, 2, 2, vec![a, b, b, f.neg(a)])?;
    Ok([j, k])
}

pub fn d8_generators(f: &Arc<Field>) -> Result<[Mat; 2]> {
    let minus1 = f.neg(1);
    Ok([Mat::from_data(f, 2, 2, vec![0, 1, minus1, 0])?, Mat::from_data(f, 2, 2, vec![1, 0, 0, minus1])?])
}

/// `diag(1, w, w^2)` and the cyclic shift, `w` a primitive cube root of 1.
fn e27_generators_gl3(f: &Arc<Field>) -> Result<[Mat; 2]> {
    let w = f
        .element_of_order(3)
        .ok_or_else(|| Error::ModelParam(format!("{f} has no cube root of unity")))?;
    let d = Mat::from_data(f, 3, 3, vec![1, 0, 0, 0, w, 0, 0, 0, f.mul(w, w)])?;
    let p = Mat::from_data(f, 3, 3, vec![0, 0, 1, 1, 0, 0, 0, 1, 0])?;
    Ok([d, p])
}

/// The same two generators over `GF(q^2)`, written over `GF(q)` in the basis
/// `1, t` of each coordinate (6 x 6 matrices).
fn e27_generators_gl6(prime: &Arc<Field>, big: &Arc<Field>) -> Result<[Mat; 2]> {
    let w = big.element_of_order(3).ok_or_else(|| Error::ModelParam("no cube root of unity".into()))?;
    let mult = |a: Fe| -> Result<Mat> { Ok(Semilinear::new(big, a, 0)?.to_matrix(prime)) };
    let mut d = Mat::zeros(prime, 6, 6);
    for (i, a) in [1, w, big.mul(w, w)].into_iter().enumerate() {
        d.put_block(i, i, &mult(a)?);
    }
    let id = Mat::identity(prime, 2);
    let mut p = Mat::zeros(prime, 6, 6);
    for j in 0..3 {
        p.put_block((j + 1) % 3, j, &id);
    }
    Ok([d, p])
}

/// All `g` in `GL(n,q)` normalizing the group `E` generated by `gens`.
///
/// Rather than scanning `GL(n,q)`, every possible image tuple
/// `(x_1, .., x_k)` of the generators is tried and the linear system
/// `g e_j = x_j g` solved; invertible solutions are exactly the normalizer.
pub fn normalizer_in_gl(gens: &[Mat], e: &FiniteGroup) -> Result<Vec<Mat>> {
    let field = gens[0].field().clone();
    let n = gens[0].rows();
    let nn = n * n;
    let orders: Vec<u64> = gens.iter().map(|g| GroupElement::Matrix(g.clone()).order(e.order() as u64 + 1)).collect::<Result<_>>()?;
    let candidates: Vec<Vec<&GroupElement>> = orders
        .iter()
        .map(|&o| e.elements().iter().zip(e.orders()).filter(|(_, &eo)| eo == o).map(|(x, _)| x).collect())
        .collect();
    let mut tuples: Vec<Vec<&GroupElement>> = vec![vec![]];
    for cands in &candidates {
        tuples = tuples
            .into_iter()
            .flat_map(|t| cands.iter().map(move |c| [t.clone(), vec![*c]].concat()))
            .collect();
    }
    let q = field.size() as u64;
    let found: Vec<Vec<Mat>> = tuples
        .par_iter()
        .map(|images| -> Result<Vec<Mat>> {
            // unknown g_{ac} at column a*n + c
            let mut sys = Mat::zeros(&field, gens.len() * nn, nn);
            for (j, (ej, xj)) in gens.iter().zip(images).enumerate() {
                let xj = xj.as_matrix().expect("matrix group");
                for a in 0..n {
                    for b in 0..n {
                        let row = j * nn + a * n + b;
                        for c in 0..n {
                            // (g e_j)_{ab} = sum_c g_{ac} e_j{cb}
                            let col = a * n + c;
                            sys.set(row, col, field.add(sys.get(row, col), ej.get(c, b)));
                            // (x_j g)_{ab} = sum_c x_j{ac} g_{cb}
                            let col = c * n + b;
                            sys.set(row, col, field.sub(sys.get(row, col), xj.get(a, c)));
                        }
                    }
                }
            }
            let kernel = sys.kernel();
            let count = q.checked_pow(kernel.len() as u32).filter(|&c| c <= 1 << 22).ok_or_else(|| {
                Error::Precondition(format!("intertwiner space of dimension {} is too large", kernel.len()))
            })?;
            let mut out = Vec::new();
            for idx in 1..count {
                let mut coefs = Vec::with_capacity(kernel.len());
                let mut rest = idx;
                for _ in 0..kernel.len() {
                    coefs.push((rest % q) as Fe);
                    rest /= q;
                }
                let mut data = vec![0 as Fe; nn];
                for (cf, v) in coefs.iter().zip(&kernel) {
                    if *cf != 0 {
                        for (d, x) in data.iter_mut().zip(v) {
                            *d = field.add(*d, field.mul(*cf, *x));
                        }
                    }
                }
                let g = Mat::from_data(&field, n, n, data)?;
                if g.rank() == n {
                    out.push(g);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let set: BTreeSet<Mat> = found.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// `U = C_G(E)`, `F = EU`, `A = C_G(U)`; checks `Z = Z(E)` and `E` normal.
pub fn layers_of(g: &FiniteGroup, e: FiniteGroup, e_value: u32) -> Result<Layers> {
    if !normal_test(g, &e) {
        return Err(Error::Precondition("E is not normal in the model".into()));
    }
    let z = e.center()?;
    let u = g.centralizer(e.generators())?;
    let f_gens: Vec<GroupElement> = e.generators().iter().chain(u.generators()).cloned().collect();
    let f = g.subgroup(&f_gens)?;
    let a = g.centralizer(u.generators())?;
    Ok(Layers { e_value, e, z, u, f, a })
}

fn normalizer_model(gens: &[Mat], e_value: u32) -> Result<(FiniteGroup, Layers)> {
    let ge: Vec<GroupElement> = gens.iter().cloned().map(Into::into).collect();
    let e = FiniteGroup::closure(&ge, 1000)?;
    let n = normalizer_in_gl(gens, &e)?;
    let module = e.module().clone();
    let group = FiniteGroup::from_closed_set(n.into_iter().map(Into::into).collect(), &module)?;
    let layers = layers_of(&group, e, e_value)?;
    Ok((group, layers))
}

fn odd_q(q: u64, max: u64) -> Result<Arc<Field>> {
    if q.is_multiple_of(2) || q > max {
        return Err(Error::ModelParam(format!("q must be odd and at most {max}, got {q}")));
    }
    field_of_order(q)
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let f = a.field();
    let (n, m) = (a.rows(), b.rows());
    let mut out = Mat::zeros(f, n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            out.put_block(i, j, &b.scale(a.get(i, j)));
        }
    }
    out
}

pub fn make_model(name: &str, params: ModelParams) -> Result<Model> {
    let spec = lookup(name)?;
    let params = ModelParams { q: params.q.or(spec.defaults.q), m: params.m.or(spec.defaults.m) };
    let q = params.q.unwrap_or(0);
    let wr = |h: FiniteGroup, s: NamedPermGroup| wreath(&h, &s.generators(), DEFAULT_CAP);
    let (group, layers) = match spec.name {
        "s3_f2" => (s3_f2(), None),
        "sl23_f3" => (sl23(), None),
        "s3_wr_s2" => (wr(s3_f2(), NamedPermGroup::S2)?, None),
        "s3_wr_s3" => (wr(s3_f2(), NamedPermGroup::S3)?, None),
        "s3_wr_s4" => (wr(s3_f2(), NamedPermGroup::S4)?, None),
        "s3_wr_f20" => (wr(s3_f2(), NamedPermGroup::F20)?, None),
        "sl23_wr_s2" => (wr(sl23(), NamedPermGroup::S2)?, None),
        "gamma" | "gamma0" => {
            let m = params.m.unwrap_or(1);
            if m == 0 || q < 2 || !crate::exactmath::is_prime_u64(q) {
                return Err(Error::ModelParam(format!("gamma needs a prime q and m >= 1, got q={q}, m={m}")));
            }
            let g = if spec.name == "gamma" { semilinear_group(q, m)? } else { semilinear_scalars(q, m)? };
            (g, None)
        }
        "q8_normalizer" => {
            let f = odd_q(q, 13)?;
            let (g, l) = normalizer_model(&q8_generators(&f)?, 2)?;
            (g, Some(l))
        }
        "d8_normalizer" => {
            let f = odd_q(q, 13)?;
            let (g, l) = normalizer_model(&d8_generators(&f)?, 2)?;
            (g, Some(l))
        }
        "e27_normalizer" => {
            if q.is_multiple_of(3) || !(2..=13).contains(&q) {
                return Err(Error::ModelParam(format!("e27_normalizer needs 3 ∤ q <= 13, got {q}")));
            }
            let f = field_of_order(q)?;
            let gens = if q % 3 == 1 {
                e27_generators_gl3(&f)?
            } else {
                let (r, k) = (f.characteristic() as u64, f.degree());
                if k != 1 {
                    return Err(Error::ModelParam(format!("q = {q}: the six-dimensional form needs a prime q")));
                }
                e27_generators_gl6(&f, &Field::make(r, 2)?)?
            };
            let (g, l) = normalizer_model(&gens, 3)?;
            (g, Some(l))
        }
        "q8_central_z4" => {
            if q % 4 != 1 || q > 13 {
                return Err(Error::ModelParam(format!("q8_central_z4 needs q = 1 mod 4, q <= 13, got {q}")));
            }
            let f = field_of_order(q)?;
            let [j, k] = q8_generators(&f)?;
            let i = f.element_of_order(4).expect("q = 1 mod 4");
            let gens: Vec<GroupElement> = vec![j.clone().into(), k.clone().into(), Mat::scalar(&f, 2, i).into()];
            let g = FiniteGroup::closure(&gens, 64)?;
            let e = g.subgroup(&[j.into(), k.into()])?;
            let l = layers_of(&g, e, 2)?;
            (g, Some(l))
        }
        "q8_tensor_q8" => {
            let f = odd_q(q, 5)?;
            let [j, k] = q8_generators(&f)?;
            let e1 = FiniteGroup::closure(&[j.clone().into(), k.clone().into()], 8)?;
            let n1 = normalizer_in_gl(&[j.clone(), k.clone()], &e1)?;
            let n1 = FiniteGroup::from_closed_set(n1.into_iter().map(Into::into).collect(), e1.module())?;
            let id = Mat::identity(&f, 2);
            let mut gens: Vec<GroupElement> = Vec::new();
            for x in n1.generators() {
                let x = x.as_matrix().expect("matrix");
                gens.push(kron(x, &id).into());
                gens.push(kron(&id, x).into());
            }
            // v (x) w -> w (x) v
            let mut swap = Mat::zeros(&f, 4, 4);
            for a in 0..2 {
                for b in 0..2 {
                    swap.set(b * 2 + a, a * 2 + b, 1);
                }
            }
            gens.push(swap.into());
            let g = FiniteGroup::closure(&gens, DEFAULT_CAP)?;
            let e_gens: Vec<GroupElement> =
                vec![kron(&j, &id).into(), kron(&k, &id).into(), kron(&id, &j).into(), kron(&id, &k).into()];
            let e = g.subgroup(&e_gens)?;
            let l = layers_of(&g, e, 4)?;
            (g, Some(l))
        }
        _ => unreachable!("registry and constructor list agree"),
    };
    let expected = spec.expected_order(params);
    if group.order() as u64 != expected {
        return Err(Error::Precondition(format!(
            "{} has order {}, expected {expected}",
            spec.name,
            group.order()
        )));
    }
    Ok(Model { name: spec.name, params, group, layers })
}

/// Per-statistic maxima over a family of subgroups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepMaxima {
    pub order: u64,
    pub nep: std::collections::BTreeMap<u64, u64>,
    pub npc: std::collections::BTreeMap<(u64, usize), u64>,
}

pub struct SweepResult {
    pub subgroups: Vec<(FiniteGroup, CensusReport)>,
    pub maxima: SweepMaxima,
}

/// Every subgroup of `Sp(2,q) = SL(2,q)`, with its census. Subgroups are
/// found by repeatedly adjoining single elements to known subgroups, starting
/// from the trivial one; every subgroup is reached since each is generated by
/// a chain of such steps.
pub fn sp_subgroup_sweep(n: usize, q: u64) -> Result<SweepResult> {
    if n != 2 || !(q == 2 || q == 3) {
        return Err(Error::ModelParam(format!("sweep only covers Sp(2,2) and Sp(2,3), got Sp({n},{q})")));
    }
    let ambient = if q == 2 { s3_f2() } else { sl23() };
    let index = |h: &FiniteGroup| -> Vec<usize> {
        let mut v: Vec<usize> = h.elements().iter().map(|x| ambient.index_of(x).expect("inside")).collect();
        v.sort();
        v
    };
    let trivial = FiniteGroup::trivial(ambient.identity())?;
    let mut seen = BTreeSet::from([index(&trivial)]);
    let mut frontier = vec![trivial.clone()];
    let mut all = vec![trivial];
    while let Some(h) = frontier.pop() {
        for x in ambient.elements() {
            if h.contains(x) {
                continue;
            }
            let gens: Vec<GroupElement> = h.generators().iter().cloned().chain([x.clone()]).collect();
            let k = ambient.subgroup(&gens)?;
            if seen.insert(index(&k)) {
                frontier.push(k.clone());
                all.push(k);
            }
        }
    }
    let mut maxima = SweepMaxima::default();
    let subgroups: Vec<(FiniteGroup, CensusReport)> = all
        .into_iter()
        .map(|h| {
            let c = census(&h);
            (h, c)
        })
        .collect();
    for (_, c) in &subgroups {
        maxima.order = maxima.order.max(c.order);
        for (p, pc) in &c.primes {
            let e = maxima.nep.entry(*p).or_insert(0);
            *e = (*e).max(pc.nep);
            for (i, cnt) in &pc.npc {
                let e = maxima.npc.entry((*p, *i)).or_insert(0);
                *e = (*e).max(*cnt);
            }
        }
    }
    Ok(SweepResult { subgroups, maxima })
}

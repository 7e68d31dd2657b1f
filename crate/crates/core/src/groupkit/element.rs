use std::borrow::Cow;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gflinalg::{Fe, Field, Mat};

/// The vector space a group acts on: `field^dim`.
#[derive(Clone, Debug)]
pub struct Module {
    pub field: Arc<Field>,
    pub dim: usize,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && *self.field == *other.field
    }
}

impl Eq for Module {}

impl Module {
    pub fn new(field: Arc<Field>, dim: usize) -> Self {
        Module { field, dim }
    }

    /// |V| as an exact integer (may be large).
    pub fn size(&self) -> u128 {
        (self.field.size() as u128).saturating_pow(self.dim as u32)
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.field, self.dim)
    }
}

/// The map `x -> a * x^(r^i)` on GF(r^m).
#[derive(Clone)]
pub struct Semilinear {
    field: Arc<Field>,
    a: Fe,
    i: u32,
}

impl PartialEq for Semilinear {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.i == other.i
    }
}

impl Eq for Semilinear {}

impl Hash for Semilinear {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.i.hash(state);
    }
}

impl Ord for Semilinear {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.i, self.a).cmp(&(other.i, other.a))
    }
}

impl PartialOrd for Semilinear {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Semilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, i={})", self.field.format(self.a), self.i)
    }
}

impl Semilinear {
    pub fn new(field: &Arc<Field>, a: Fe, i: u32) -> Result<Self> {
        if a == 0 || a >= field.size() {
            return Err(Error::Precondition(format!("semilinear scalar {a} must be a unit of {field}")));
        }
        Ok(Semilinear { field: field.clone(), a, i: i % field.degree() })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn scalar(&self) -> Fe {
        self.a
    }

    pub fn frobenius_power(&self) -> u32 {
        self.i
    }

    fn frob_pow(&self, x: Fe, i: u32) -> Fe {
        (0..i).fold(x, |y, _| self.field.frobenius(y))
    }

    pub fn apply(&self, x: Fe) -> Fe {
        self.field.mul(self.a, self.frob_pow(x, self.i))
    }

    /// `(a,i) o (b,j) = (a * b^(r^i), i + j mod m)`: apply `other` first.
    pub fn compose(&self, other: &Semilinear) -> Semilinear {
        let m = self.field.degree();
        Semilinear {
            field: self.field.clone(),
            a: self.field.mul(self.a, self.frob_pow(other.a, self.i)),
            i: (self.i + other.i) % m,
        }
    }

    pub fn inverse(&self) -> Semilinear {
        let m = self.field.degree();
        let back = (m - self.i) % m;
        // (c, back) o (a, i) = (c * a^(r^back), 0) = identity
        let c = self.field.inv(self.frob_pow(self.a, back)).expect("unit");
        Semilinear { field: self.field.clone(), a: c, i: back }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1 && self.i == 0
    }

    /// Matrix of the map over the prime field, in the basis `1, t, .., t^(m-1)`.
    pub fn to_matrix(&self, prime: &Arc<Field>) -> Mat {
        let m = self.field.degree() as usize;
        let mut mat = Mat::zeros(prime, m, m);
        let mut basis = 1;
        for j in 0..m {
            let image = self.apply(basis);
            for (row, c) in self.field.coeffs(image).into_iter().enumerate() {
                mat.set(row, j, c);
            }
            basis = self.field.mul(basis, self.field.gen());
        }
        mat
    }
}

/// A group element: an invertible matrix or a semilinear map.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Matrix(Mat),
    Semilinear(Semilinear),
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Matrix(m) => write!(f, "{m:?}"),
            GroupElement::Semilinear(s) => write!(f, "{s:?}"),
        }
    }
}

impl From<Mat> for GroupElement {
    fn from(m: Mat) -> Self {
        GroupElement::Matrix(m)
    }
}

impl From<Semilinear> for GroupElement {
    fn from(s: Semilinear) -> Self {
        GroupElement::Semilinear(s)
    }
}

impl GroupElement {
    /// The module this element acts on.
    pub fn module(&self) -> Result<Module> {
        match self {
            GroupElement::Matrix(m) => {
                if !m.is_square() {
                    return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
                }
                Ok(Module::new(m.field().clone(), m.rows()))
            }
            GroupElement::Semilinear(s) => {
                let f = s.field();
                let prime = Field::make(f.characteristic() as u64, 1)?;
                Ok(Module::new(prime, f.degree() as usize))
            }
        }
    }

    /// Product `self * other` (apply `other` first). Both operands must be of
    /// the same kind; mixing is an internal invariant violation.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => GroupElement::Matrix(a.mul(b)),
            (GroupElement::Semilinear(a), GroupElement::Semilinear(b)) => {
                GroupElement::Semilinear(a.compose(b))
            }
            _ => panic!("product of a matrix and a semilinear map"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Matrix(m) => {
                GroupElement::Matrix(m.inverse().expect("group elements are invertible"))
            }
            GroupElement::Semilinear(s) => GroupElement::Semilinear(s.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Matrix(m) => m.is_identity(),
            GroupElement::Semilinear(s) => s.is_identity(),
        }
    }

    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Matrix(m) => GroupElement::Matrix(Mat::identity(m.field(), m.rows())),
            GroupElement::Semilinear(s) => GroupElement::Semilinear(Semilinear {
                field: s.field.clone(),
                a: 1,
                i: 0,
            }),
        }
    }

    pub fn pow(&self, e: u64) -> GroupElement {
        let mut acc = self.identity_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn order(&self, cap: u64) -> Result<u64> {
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            if n >= cap {
                return Err(Error::OrderCap(cap));
            }
            x = x.mul(self);
            n += 1;
        }
        Ok(n)
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &GroupElement) -> GroupElement {
        self.mul(other).mul(&self.inverse())
    }

    pub fn commutes_with(&self, other: &GroupElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// The linear action on the module, as a matrix over the module's field.
    pub fn matrix(&self, module: &Module) -> Cow<'_, Mat> {
        match self {
            GroupElement::Matrix(m) => Cow::Borrowed(m),
            GroupElement::Semilinear(s) => Cow::Owned(s.to_matrix(&module.field)),
        }
    }

    pub fn as_matrix(&self) -> Option<&Mat> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            GroupElement::Semilinear(_) => None,
        }
    }

    pub fn as_semilinear(&self) -> Option<&Semilinear> {
        match self {
            GroupElement::Semilinear(s) => Some(s),
            GroupElement::Matrix(_) => None,
        }
    }
}

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::is_prime_u64;

/// Maximum number of field elements we are willing to enumerate.
pub const FIELD_BUDGET: u64 = 1 << 20;

/// An element of a [`Field`], encoded as the integer `sum c_i p^i` of its
/// polynomial coefficients (low degree first).
pub type Fe = u32;

/// GF(p^k), with elements stored as coefficient vectors modulo a monic
/// irreducible polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    size: u32,
    /// Monic modulus, `k + 1` coefficients, low degree first.
    modulus: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

impl Field {
    /// Builds GF(p^k) using the lexicographically least monic irreducible
    /// modulus, comparing coefficients low degree first.
    pub fn make(p: u64, k: u32) -> Result<Arc<Field>> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Precondition("field degree must be >= 1".into()));
        }
        let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > FIELD_BUDGET as u128 {
            return Err(Error::FieldTooLarge { p, k });
        }
        let p = p as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, k)
        };
        Ok(Arc::new(Field { p, k, size: size as u32, modulus }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn zero(&self) -> Fe {
        0
    }

    pub fn one(&self) -> Fe {
        1
    }

    /// The class of the polynomial variable `t` (the generator of the
    /// extension). For prime fields this is just 0.
    pub fn gen(&self) -> Fe {
        if self.k == 1 {
            0
        } else {
            self.p
        }
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut a = a;
        (0..self.k)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, cs: &[u32]) -> Result<Fe> {
        if cs.len() > self.k as usize {
            return Err(Error::Precondition(format!(
                "{} coefficients for a degree-{} field",
                cs.len(),
                self.k
            )));
        }
        let mut acc = 0u32;
        for &c in cs.iter().rev() {
            if c >= self.p {
                return Err(Error::Precondition(format!("coefficient {c} >= p = {}", self.p)));
            }
            acc = acc * self.p + c;
        }
        Ok(acc)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Fe;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let p = self.p as u64;
        let k = self.k as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce modulo the monic modulus, top degree down
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mc) in self.modulus[..k].iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * mc as u64) % p;
            }
        }
        let mut acc = 0u32;
        for &c in prod[..k].iter().rev() {
            acc = acc * self.p + c as u32;
        }
        acc
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.pow(a, self.size as u64 - 2))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        let target = self.size as u64 - 1;
        (1..self.size)
            .find(|&a| self.mult_order(a) == Some(target))
            .expect("finite fields have cyclic unit groups")
    }

    /// Some element of multiplicative order exactly `n`, if `n | size - 1`.
    pub fn element_of_order(&self, n: u64) -> Option<Fe> {
        let q1 = self.size as u64 - 1;
        if n == 0 || !q1.is_multiple_of(n) {
            return None;
        }
        Some(self.pow(self.primitive_element(), q1 / n))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size
    }

    pub fn format(&self, a: Fe) -> String {
        if self.k == 1 {
            a.to_string()
        } else {
            let cs: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            format!("({})", cs.join(","))
        }
    }
}

/// Polynomials over GF(p), low degree first, trailing zeros trimmed.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = {
        let l = b[db] as u64;
        let mut acc = 1u64;
        let mut base = l;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc
    };
    while a.len() > db {
        let c = *a.last().unwrap() as u64 * lead_inv % p as u64;
        let shift = a.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let idx = shift + i;
            a[idx] = ((a[idx] as u64 + (p as u64 - c) * bc as u64) % p as u64) as u32;
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(f.to_vec(), &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let mut cs = vec![0u32; k];
    loop {
        let mut f = cs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // lexicographic increment, c_0 most significant
        let mut i = k;
        loop {
            i -= 1;
            cs[i] += 1;
            if cs[i] < p {
                break;
            }
            cs[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = Field::make(2, 1).unwrap();
        assert_eq!(f2.size(), 2);
        let f7 = Field::make(7, 1).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.inv(3), Some(5));
        assert_eq!(f7.neg(0), 0);
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        let f9 = Field::make(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // root search: no element of GF(3) is a root of x^2 + 1
        assert!((0..3u32).all(|x| (x * x + 1) % 3 != 0));
        // t^2 = -1
        let t = f9.gen();
        assert_eq!(f9.mul(t, t), f9.neg(1));
    }

    #[test]
    fn field_errors() {
        assert_eq!(Field::make(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::make(2, 21).unwrap_err(), Error::FieldTooLarge { p: 2, k: 21 });
        assert!(Field::make(2, 20).is_ok());
    }

    #[test]
    fn moduli_are_lexicographically_least() {
        // x^2 + x + 1 over GF(2): the only irreducible quadratic
        assert_eq!(Field::make(2, 2).unwrap().modulus(), &[1, 1, 1]);
        // degree 3 over GF(2): comparing c0, c1, c2 in turn, x^3 + x^2 + 1
        // (1,0,1) precedes x^3 + x + 1 (1,1,0)
        assert_eq!(Field::make(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        // degree 2 over GF(5): nothing lexicographically smaller is irreducible
        let f25 = Field::make(5, 2).unwrap();
        let m = f25.modulus().to_vec();
        assert!(is_irreducible(&m, 5));
        for c0 in 0..5u32 {
            for c1 in 0..5u32 {
                if (c0, c1) < (m[0], m[1]) {
                    assert!(!is_irreducible(&[c0, c1, 1], 5), "{c0} {c1}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_gf8_gf9() {
        for (p, k) in [(2, 3), (3, 2), (2, 4)] {
            let f = Field::make(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [1, f.gen(), f.size() - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_has_order_k_and_fixes_prime_field() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (3, 4), (5, 2), (7, 3), (2, 6)] {
            let f = Field::make(p, k).unwrap();
            let apply = |a: Fe, times: u32| (0..times).fold(a, |x, _| f.frobenius(x));
            let order = (1..=k).find(|&j| f.elements().all(|a| apply(a, j) == a)).unwrap();
            assert_eq!(order, k, "GF({p}^{k})");
            let fixed = f.elements().filter(|&a| f.frobenius(a) == a).count();
            assert_eq!(fixed as u64, p);
        }
    }

    #[test]
    fn element_of_order() {
        let f81 = Field::make(3, 4).unwrap();
        let w = f81.element_of_order(10).unwrap();
        assert_eq!(f81.mult_order(w), Some(10));
        assert!(f81.element_of_order(7).is_none());
    }
}

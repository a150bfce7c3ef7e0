//! Table-backed arithmetic in the finite fields F_q, q = p^d <= 16.
//!
//! Elements are indices `0..q`. Index 0 is the zero element and index 1
//! is the unit. For extension fields an element with index `i` is the
//! polynomial `c_0 + c_1 g + ... + c_{d-1} g^{d-1}` where `i = sum c_k p^k`
//! is the base-p expansion and `g` is a root of the fixed irreducible
//! polynomial listed in [`irreducible_poly`].

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A single field element, an index below the field order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem(pub u8);

/// Binary operations accepted by [`Field::arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldOp {
    Add,
    Mul,
    Sub,
    Div,
}

/// A finite field F_q with q = p^d <= 16, all operations precomputed.
pub struct Field {
    pub p: u8,
    pub d: u8,
    pub q: u8,
    add: [[u8; 16]; 16],
    mul: [[u8; 16]; 16],
    neg: [u8; 16],
    inv: [u8; 16],
    frob: [u8; 16],
}

/// The fixed irreducible polynomial used to build F_{p^d}, as the
/// coefficient vector `(c_0, .., c_d)` of `c_0 + c_1 x + ... + c_d x^d`.
pub fn irreducible_poly(p: u8, d: u8) -> Option<Vec<u8>> {
    match (p, d) {
        (2, 2) => Some(vec![1, 1, 1]),       // x^2 + x + 1
        (2, 3) => Some(vec![1, 1, 0, 1]),    // x^3 + x + 1
        (2, 4) => Some(vec![1, 1, 0, 0, 1]), // x^4 + x + 1
        (3, 2) => Some(vec![1, 0, 1]),       // x^2 + 1
        _ => None,
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).all(|k| n % k != 0)
}

impl Field {
    /// Builds F_{p^d} and exhaustively checks the field axioms on the
    /// resulting tables.
    pub fn new(p: u8, d: u8) -> Result<Arc<Field>> {
        if !is_prime(p as u32) {
            return Err(Error::NotPrime(p as u32));
        }
        let q = (p as u32).checked_pow(d as u32).unwrap_or(u32::MAX);
        if d == 0 || q > 16 {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u8;

        // digits of i in base p, least significant first
        let digits = |i: u8| -> Vec<u8> {
            let mut v = vec![0u8; d as usize];
            let mut i = i;
            for c in v.iter_mut() {
                *c = i % p;
                i /= p;
            }
            v
        };
        let undigits = |v: &[u8]| -> u8 {
            v.iter().rev().fold(0u8, |acc, &c| acc * p + c)
        };

        let mut add = [[0u8; 16]; 16];
        let mut mul = [[0u8; 16]; 16];
        for a in 0..q {
            for b in 0..q {
                let da = digits(a);
                let db = digits(b);
                let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize][b as usize] = undigits(&sum);

                // polynomial product reduced mod the fixed irreducible
                let mut prod = vec![0u16; 2 * d as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + (x as u16) * (y as u16)) % p as u16;
                    }
                }
                if d > 1 {
                    let irr = irreducible_poly(p, d).expect("irreducible polynomial on file");
                    // x^d = -(c_0 + .. + c_{d-1} x^{d-1}) since c_d = 1
                    for k in (d as usize..prod.len()).rev() {
                        let coef = prod[k];
                        if coef == 0 {
                            continue;
                        }
                        prod[k] = 0;
                        for (j, &c) in irr.iter().enumerate().take(d as usize) {
                            let sub = (coef * c as u16) % p as u16;
                            prod[k - d as usize + j] =
                                (prod[k - d as usize + j] + p as u16 - sub) % p as u16;
                        }
                    }
                }
                let red: Vec<u8> = prod[..d as usize].iter().map(|&x| x as u8).collect();
                mul[a as usize][b as usize] = undigits(&red);
            }
        }

        let mut neg = [0u8; 16];
        let mut inv = [0u8; 16];
        for a in 0..q {
            neg[a as usize] = (0..q)
                .find(|&b| add[a as usize][b as usize] == 0)
                .expect("additive inverse exists");
            if a != 0 {
                inv[a as usize] = (0..q)
                    .find(|&b| mul[a as usize][b as usize] == 1)
                    .ok_or(Error::FieldTooLarge(q as u32))?;
            }
        }
        let mut frob = [0u8; 16];
        for a in 0..q {
            let mut acc = 1u8;
            for _ in 0..p {
                acc = mul[acc as usize][a as usize];
            }
            // a^p, computed as 1 * a * .. * a (p factors)
            frob[a as usize] = acc;
        }

        let f = Field { p, d, q, add, mul, neg, inv, frob };
        f.check_axioms()?;
        Ok(Arc::new(f))
    }

    /// Exhaustive verification of the field axioms on the tables.
    pub fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        let bad = |msg: &str| Err(Error::FieldTooLarge(q as u32)).map_err(|_| {
            Error::NonFunctorialData(format!("field axiom failure: {msg}"))
        });
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.mul(a, 0) != 0 {
                return bad("identities");
            }
            if self.add(a, self.neg(a)) != 0 {
                return bad("additive inverse");
            }
            if a != 0 && self.mul(a, self.inv(a)?) != 1 {
                return bad("multiplicative inverse");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return bad("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return bad("additive associativity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return bad("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return bad("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][self.neg[b as usize] as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.q as u32));
        }
        Ok(self.inv[a as usize])
    }
    pub fn div(&self, a: u8, b: u8) -> Result<u8> {
        Ok(self.mul(a, self.inv(b)?))
    }
    /// The Frobenius map a -> a^p.
    #[inline]
    pub fn frobenius(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    /// Public element-level entry point used by the CLI and FFI layers.
    pub fn arith(&self, a: FieldElem, b: FieldElem, op: FieldOp) -> Result<FieldElem> {
        assert!(a.0 < self.q && b.0 < self.q, "element index out of range");
        let r = match op {
            FieldOp::Add => self.add(a.0, b.0),
            FieldOp::Mul => self.mul(a.0, b.0),
            FieldOp::Sub => self.sub(a.0, b.0),
            FieldOp::Div => self.div(a.0, b.0)?,
        };
        Ok(FieldElem(r))
    }

    pub fn elems(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d
    }
}
impl Eq for Field {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_characteristic() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn f3_times_table() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.mul(2, 2), 1);
    }

    #[test]
    fn f4_generator_square() {
        // g = index 2 (the polynomial x); with x^2 + x + 1 = 0 we get
        // g^2 = g + 1 = index 3.
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 1), 3);
    }

    #[test]
    fn division_by_zero_rejected() {
        let f = Field::new(2, 1).unwrap();
        assert!(f.div(1, 0).is_err());
        assert!(matches!(
            f.arith(FieldElem(1), FieldElem(0), FieldOp::Div),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn constructor_guards() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 5), Err(Error::FieldTooLarge(32))));
        assert!(matches!(Field::new(5, 2), Err(Error::FieldTooLarge(25))));
    }

    #[test]
    fn all_supported_fields_pass_axioms() {
        for (p, d) in [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (2, 3), (2, 4), (3, 2)] {
            let f = Field::new(p, d).unwrap();
            assert_eq!(f.q as u32, (p as u32).pow(d as u32));
            f.check_axioms().unwrap();
        }
    }

    #[test]
    fn frobenius_is_automorphism_of_order_d() {
        for (p, d) in [(2, 1), (3, 1), (2, 2), (2, 3), (2, 4), (3, 2)] {
            let f = Field::new(p, d).unwrap();
            for a in f.elems() {
                for b in f.elems() {
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
                let mut x = a;
                for _ in 0..d {
                    x = f.frobenius(x);
                }
                assert_eq!(x, a, "frobenius^d must be the identity");
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f2 = Field::new(2, 1).unwrap();
        for a in f2.elems() {
            assert_eq!(f2.frobenius(a), a);
        }
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.frobenius(2), f4.mul(2, 2)); // g -> g^2
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.frobenius(2), 2); // 2^3 = 8 = 2 mod 3
    }
}

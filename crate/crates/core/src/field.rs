//! Arithmetic over the small finite fields used by the code constructions.
//!
//! Prime fields GF(p) are supported for every prime `p <= 257`; binary
//! extension fields GF(2^m) for `2 <= m <= 8`. Elements are always the
//! canonical integers `0..q`. For GF(2^m) an element encodes the polynomial
//! whose coefficient of `x^i` is bit `i`, reduced modulo the fixed polynomial
//! below:
//!
//! | order | reduction polynomial       | hex   |
//! |-------|----------------------------|-------|
//! | 4     | x^2 + x + 1                | 0x7   |
//! | 8     | x^3 + x + 1                | 0xB   |
//! | 16    | x^4 + x + 1                | 0x13  |
//! | 32    | x^5 + x^2 + 1              | 0x25  |
//! | 64    | x^6 + x + 1                | 0x43  |
//! | 128   | x^7 + x + 1                | 0x83  |
//! | 256   | x^8 + x^4 + x^3 + x^2 + 1  | 0x11D |

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, canonically in `0..q`.
pub type Elem = u16;

const BINARY_POLYNOMIALS: [(u32, u16); 7] = [
    (4, 0x7),
    (8, 0xB),
    (16, 0x13),
    (32, 0x25),
    (64, 0x43),
    (128, 0x83),
    (256, 0x11D),
];

#[derive(Clone)]
pub struct Field {
    q: u32,
    p: u32,
    m: u32,
    poly: Option<u16>,
    mul: Arc<[Elem]>,
    inv: Arc<[Elem]>,
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Carry-less product of two polynomials reduced modulo `poly` of degree `m`.
fn gf2m_mul(mut a: u32, mut b: u32, poly: u32, m: u32) -> u32 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << m) != 0 {
            a ^= poly;
        }
    }
    acc
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        let (p, m, poly) = if is_prime(q) && q <= 257 {
            (q, 1, None)
        } else if let Some(&(_, poly)) = BINARY_POLYNOMIALS.iter().find(|(order, _)| *order == q) {
            (2, q.trailing_zeros(), Some(poly))
        } else {
            return Err(Error::UnsupportedOrder(q));
        };

        let size = q as usize;
        let mut mul = vec![0; size * size];
        for a in 0..q {
            for b in a..q {
                let c = match poly {
                    None => (a * b) % p,
                    Some(poly) => gf2m_mul(a, b, poly as u32, m),
                } as Elem;
                mul[a as usize * size + b as usize] = c;
                mul[b as usize * size + a as usize] = c;
            }
        }
        let mut inv = vec![0; size];
        for a in 1..size {
            inv[a] = (1..size)
                .find(|&b| mul[a * size + b] == 1)
                .expect("nonzero field element without inverse") as Elem;
        }

        Ok(Field {
            q,
            p,
            m,
            poly,
            mul: mul.into(),
            inv: inv.into(),
        })
    }

    pub fn binary() -> Self {
        Field::new(2).expect("GF(2) is always supported")
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Reduction polynomial in bit encoding, `None` for prime fields.
    pub fn reduction_polynomial(&self) -> Option<u16> {
        self.poly
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.m > 1 {
            a ^ b
        } else {
            ((a as u32 + b as u32) % self.p) as Elem
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.m > 1 || a == 0 {
            a
        } else {
            (self.p - a as u32) as Elem
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|b| self.mul(a, b))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_orders() {
        let gf2 = Field::new(2).unwrap();
        assert_eq!((gf2.characteristic(), gf2.degree()), (2, 1));
        assert_eq!(gf2.reduction_polynomial(), None);

        let gf4 = Field::new(4).unwrap();
        assert_eq!((gf4.characteristic(), gf4.degree()), (2, 2));
        assert_eq!(gf4.reduction_polynomial(), Some(0b111));

        assert!(Field::new(257).is_ok());
        assert!(Field::new(256).is_ok());
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 9, 12, 25, 263, 512] {
            assert_eq!(Field::new(q).unwrap_err(), Error::UnsupportedOrder(q));
        }
    }

    #[test]
    fn gf4_multiplication_table() {
        // x * x = x + 1, x * (x + 1) = 1
        let f = Field::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn prime_field_negation() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.neg(3), 4);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.div(3, 5), Some(2));
    }

    fn check_axioms(f: &Field) {
        for a in f.elements() {
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{f:?} inverse of {a}");
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, b), f.add(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn small_field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 11, 13, 16] {
            check_axioms(&Field::new(q).unwrap());
        }
    }

    #[test]
    fn large_field_inverses() {
        for q in [32, 64, 128, 256, 251, 257] {
            let f = Field::new(q).unwrap();
            for a in 1..q as Elem {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}

//! Exact arithmetic in GF(p) for small odd primes and in GF(2^h), h <= 8.
//!
//! Elements are plain integer encodings in `[0, q)`. For characteristic two
//! bit `i` of the encoding is the coefficient of `x^i`, so addition is XOR and
//! multiplication is a carry-less product reduced by the field's modulus.
//! Multiplication and inversion go through tables built once per field.

use std::fmt;

use crate::{Error, Result};

/// Largest odd prime supported for prime fields.
pub const MAX_ODD_PRIME: u32 = 13;

/// Largest extension degree supported over GF(2).
pub const MAX_BINARY_DEGREE: u32 = 8;

/// Reduction polynomials for GF(2^h), indexed by `h`; bit `i` is the
/// coefficient of `x^i`. Entries 0 and 1 are unused.
const BINARY_MODULI: [u32; 9] = [
    0,
    0,
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b1_0011,    // x^4 + x + 1
    0b10_0101,   // x^5 + x^2 + 1
    0b101_1011,  // x^6 + x^4 + x^3 + x + 1
    0b1000_0011, // x^7 + x + 1
    0x11D,       // x^8 + x^4 + x^3 + x^2 + 1
];

/// An element of a finite field, stored as its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw encoding without range checking; see [`Field::element`].
    pub const fn from_encoding(encoding: u16) -> Self {
        FieldElement(encoding)
    }

    pub const fn encoding(self) -> u16 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parameters identifying a supported field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub characteristic: u32,
    pub degree: u32,
    /// Reduction polynomial over GF(2); `None` for prime fields.
    pub modulus: Option<u32>,
    pub order: u32,
}

/// A finite field handle with precomputed multiplication and inverse tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    spec: FieldSpec,
    mul_table: Vec<u16>,
    inv_table: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("spec", &self.spec).finish()
    }
}

impl Field {
    /// Creates GF(p^h). Odd primes up to 13 are supported with `h = 1`;
    /// characteristic two is supported for `1 <= h <= 8`.
    pub fn new(p: u32, h: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if h == 0 {
            return Err(Error::UnsupportedField { p, h });
        }
        let spec = if p == 2 {
            if h > MAX_BINARY_DEGREE {
                return Err(Error::UnsupportedField { p, h });
            }
            let modulus = (h > 1).then(|| BINARY_MODULI[h as usize]);
            FieldSpec {
                characteristic: 2,
                degree: h,
                modulus,
                order: 1 << h,
            }
        } else {
            if h != 1 || p > MAX_ODD_PRIME {
                return Err(Error::UnsupportedField { p, h });
            }
            FieldSpec {
                characteristic: p,
                degree: 1,
                modulus: None,
                order: p,
            }
        };
        Ok(Self::from_spec(spec))
    }

    /// Creates the field of the given order `q`, which must be a supported
    /// prime or a power of two up to 256.
    pub fn with_order(q: u32) -> Result<Self> {
        if q >= 2 && q.is_power_of_two() {
            Field::new(2, q.trailing_zeros())
        } else if is_prime(q) {
            Field::new(q, 1)
        } else {
            Err(Error::InvalidParameter(format!(
                "q = {q} is not a supported prime power"
            )))
        }
    }

    fn from_spec(spec: FieldSpec) -> Self {
        let q = spec.order as usize;
        let mut mul_table = vec![0u16; q * q];
        for a in 0..q {
            for b in a..q {
                let c = match spec.modulus {
                    Some(m) => gf2_mulmod(a as u32, b as u32, m),
                    None if spec.characteristic == 2 => (a & b) as u32,
                    None => ((a * b) % q) as u32,
                } as u16;
                mul_table[a * q + b] = c;
                mul_table[b * q + a] = c;
            }
        }
        let mut inv_table = vec![0u16; q];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul_table[a * q + b] == 1)
                .expect("nonzero elements of a field are invertible");
            inv_table[a] = b as u16;
        }
        Field {
            spec,
            mul_table,
            inv_table,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// The field order q.
    pub fn order(&self) -> u32 {
        self.spec.order
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.spec.degree
    }

    pub fn is_binary(&self) -> bool {
        self.spec.characteristic == 2
    }

    /// Validates an encoding.
    pub fn element(&self, encoding: u32) -> Result<FieldElement> {
        if encoding < self.spec.order {
            Ok(FieldElement(encoding as u16))
        } else {
            Err(Error::InvalidParameter(format!(
                "{encoding} is not an element of GF({})",
                self.spec.order
            )))
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.spec.order as u16).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.is_binary() {
            FieldElement(a.0 ^ b.0)
        } else {
            let p = self.spec.characteristic as u16;
            FieldElement((a.0 + b.0) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.is_binary() || a.0 == 0 {
            a
        } else {
            FieldElement(self.spec.characteristic as u16 - a.0)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_table[a.index() * self.spec.order as usize + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.inv_table[a.index()]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Absolute trace `a + a^2 + ... + a^(2^(h-1))`, returned as 0 or 1.
    pub fn trace(&self, a: FieldElement) -> Result<u8> {
        if !self.is_binary() {
            return Err(Error::OddCharacteristic("absolute trace"));
        }
        let mut acc = FieldElement::ZERO;
        let mut power = a;
        for _ in 0..self.spec.degree {
            acc = self.add(acc, power);
            power = self.square(power);
        }
        debug_assert!(acc.0 <= 1, "trace must land in the prime field");
        Ok(acc.0 as u8)
    }

    /// Elements of absolute trace one, sorted by encoding.
    pub fn trace_one_set(&self) -> Result<Vec<FieldElement>> {
        if !self.is_binary() {
            return Err(Error::OddCharacteristic("trace-one set"));
        }
        let mut out = Vec::with_capacity(self.spec.order as usize / 2);
        for a in self.elements() {
            if self.trace(a)? == 1 {
                out.push(a);
            }
        }
        Ok(out)
    }
}

/// Carry-less product of `a` and `b` reduced modulo `modulus`.
fn gf2_mulmod(a: u32, b: u32, modulus: u32) -> u32 {
    let deg = 31 - modulus.leading_zeros();
    let mut product = 0u32;
    for i in 0..deg {
        if (b >> i) & 1 == 1 {
            product ^= a << i;
        }
    }
    gf2_rem(product, modulus)
}

/// Remainder of polynomial division over GF(2).
fn gf2_rem(mut a: u32, m: u32) -> u32 {
    let deg_m = 31 - m.leading_zeros();
    while a != 0 && 31 - a.leading_zeros() >= deg_m {
        let shift = (31 - a.leading_zeros()) - deg_m;
        a ^= m << shift;
    }
    a
}

/// Irreducibility over GF(2) by trial division against every polynomial of
/// degree between 1 and half the degree of `poly`.
pub fn is_irreducible_gf2(poly: u32) -> bool {
    if poly < 2 {
        return false;
    }
    let deg = 31 - poly.leading_zeros();
    if deg == 0 {
        return false;
    }
    for divisor in 2u32..(1 << (deg / 2 + 1)) {
        let d = 31 - divisor.leading_zeros();
        if d >= 1 && d <= deg / 2 && gf2_rem(poly, divisor) == 0 {
            return false;
        }
    }
    true
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u16) -> FieldElement {
        FieldElement::from_encoding(v)
    }

    fn all_fields() -> Vec<Field> {
        let mut fields: Vec<Field> = (1..=8).map(|h| Field::new(2, h).unwrap()).collect();
        for p in [3, 5, 7, 11, 13] {
            fields.push(Field::new(p, 1).unwrap());
        }
        fields
    }

    #[test]
    fn create_supported_fields() {
        let gf2 = Field::new(2, 1).unwrap();
        assert_eq!(gf2.order(), 2);
        assert_eq!(gf2.spec().modulus, None);

        let gf4 = Field::new(2, 2).unwrap();
        assert_eq!(gf4.order(), 4);
        assert_eq!(gf4.spec().modulus, Some(0b111));

        let gf7 = Field::new(7, 1).unwrap();
        assert_eq!(gf7.order(), 7);
        assert_eq!(gf7.characteristic(), 7);
    }

    #[test]
    fn reject_unsupported_fields() {
        assert!(matches!(Field::new(4, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(Field::new(1, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(Field::new(3, 2), Err(Error::UnsupportedField { .. })));
        assert!(matches!(Field::new(2, 9), Err(Error::UnsupportedField { .. })));
        assert!(matches!(Field::new(17, 1), Err(Error::UnsupportedField { .. })));
        assert!(matches!(Field::new(2, 0), Err(Error::UnsupportedField { .. })));
        assert!(Field::with_order(6).is_err());
        assert_eq!(Field::with_order(16).unwrap().degree(), 4);
        assert_eq!(Field::with_order(11).unwrap().characteristic(), 11);
    }

    #[test]
    fn modulus_table_is_irreducible() {
        for h in 2..=8u32 {
            let m = BINARY_MODULI[h as usize];
            assert_eq!(31 - m.leading_zeros(), h);
            assert!(is_irreducible_gf2(m), "modulus for h={h} is reducible");
        }
        // x^2 + 1 = (x + 1)^2 and x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!is_irreducible_gf2(0b101));
        assert!(!is_irreducible_gf2(0b1_0101));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = Field::new(2, 2).unwrap();
        // w * w = w + 1
        assert_eq!(f.mul(fe(2), fe(2)), fe(3));
        assert_eq!(f.inv(fe(2)).unwrap(), fe(3));
        assert_eq!(f.mul(fe(2), fe(3)), fe(1));
        assert_eq!(f.add(fe(2), fe(3)), fe(1));
        assert_eq!(f.neg(fe(3)), fe(3));
        assert!(matches!(f.inv(fe(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.mul(fe(3), fe(5)), fe(1));
        assert_eq!(f.neg(fe(3)), fe(4));
        assert_eq!(f.sub(fe(2), fe(5)), fe(4));
        assert_eq!(f.inv(fe(3)).unwrap(), fe(5));
    }

    #[test]
    fn multiplicative_identity_and_inverses() {
        for f in all_fields() {
            for a in f.elements() {
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
            }
        }
    }

    #[test]
    fn distributivity_exhaustive_small() {
        for f in all_fields().into_iter().filter(|f| f.order() <= 16) {
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn trace_values() {
        let gf2 = Field::new(2, 1).unwrap();
        assert_eq!(gf2.trace(fe(1)).unwrap(), 1);
        let gf4 = Field::new(2, 2).unwrap();
        assert_eq!(gf4.trace(fe(2)).unwrap(), 1);
        assert_eq!(gf4.trace(fe(1)).unwrap(), 0);
        let gf8 = Field::new(2, 3).unwrap();
        assert_eq!(gf8.trace(fe(1)).unwrap(), 1);
        let gf5 = Field::new(5, 1).unwrap();
        assert!(matches!(gf5.trace(fe(1)), Err(Error::OddCharacteristic(_))));
    }

    #[test]
    fn trace_one_sets() {
        assert_eq!(Field::new(2, 1).unwrap().trace_one_set().unwrap(), vec![fe(1)]);
        assert_eq!(
            Field::new(2, 2).unwrap().trace_one_set().unwrap(),
            vec![fe(2), fe(3)]
        );
        assert_eq!(Field::new(2, 3).unwrap().trace_one_set().unwrap().len(), 4);
        assert!(Field::new(3, 1).unwrap().trace_one_set().is_err());
        for h in 1..=8 {
            let f = Field::new(2, h).unwrap();
            let t = f.trace_one_set().unwrap();
            assert_eq!(t.len() as u32, f.order() / 2);
            assert!(t.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn trace_is_additive_exhaustive() {
        for h in 1..=8 {
            let f = Field::new(2, h).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = f.trace(f.add(a, b)).unwrap();
                    let rhs = f.trace(a).unwrap() ^ f.trace(b).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn frobenius_permutes_trace_one_set() {
        for h in 1..=8 {
            let f = Field::new(2, h).unwrap();
            let t = f.trace_one_set().unwrap();
            let mut squared: Vec<_> = t.iter().map(|&a| f.square(a)).collect();
            squared.sort();
            assert_eq!(squared, t);
        }
    }
}

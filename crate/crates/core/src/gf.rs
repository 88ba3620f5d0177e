//! Arithmetic in prime fields `F_p`.
//!
//! Residues are stored as `u32` in `[0, p)`. Since `p < 2^16`, products of
//! two residues fit in a `u32`, so no wide intermediates are needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Exclusive upper bound on the modulus.
pub const MAX_MODULUS: u32 = 1 << 16;

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// The element with residue `v mod p`.
    pub fn elem(self, v: u64) -> FieldElement {
        FieldElement {
            value: (v % self.p as u64) as u32,
            field: self,
        }
    }

    /// The element congruent to a signed integer.
    pub fn elem_signed(self, v: i64) -> FieldElement {
        self.elem(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn zero(self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    /// Iterates over all elements `0, 1, ..., p-1`.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.p).map(move |v| FieldElement {
            value: v,
            field: self,
        })
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&q| self.pow(g, (order / q) as u64) != 1)
            })
            .expect("multiplicative group of a prime field is cyclic")
    }

    // Raw residue arithmetic, used in the hot loops of the linear algebra.

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// An element of a [`PrimeField`].
///
/// The checked `try_*` methods report a [`Error::FieldMismatch`] when the
/// operands come from different fields; the operator impls panic instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: FieldElement) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        Ok(self.field)
    }

    fn with(self, value: u32) -> FieldElement {
        FieldElement {
            value,
            field: self.field,
        }
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(self.with(f.add(self.value, other.value)))
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(self.with(f.sub(self.value, other.value)))
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(self.with(f.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.try_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn construction_rejects_composites_and_large_moduli() {
        for bad in [0, 1, 4, 9, 15, 65535, 65537, 1 << 20] {
            assert_eq!(PrimeField::new(bad), Err(Error::NotPrime(bad)));
        }
        for good in [2, 3, 5, 7, 13, 65521] {
            assert_eq!(f(good).modulus() as u64, good);
        }
    }

    #[test]
    fn small_examples() {
        let f7 = f(7);
        assert_eq!((f7.elem(3) + f7.elem(5)).value(), 1);
        let f2 = f(2);
        assert_eq!((f2.elem(1) + f2.elem(1)).value(), 0);
        let f5 = f(5);
        assert_eq!((f5.elem(2) * f5.elem(3)).value(), 1);
        assert_eq!((f5.elem(2) - f5.elem(3)).value(), 4);
    }

    #[test]
    fn inverses() {
        assert_eq!(f(7).elem(3).inv().unwrap().value(), 5);
        assert_eq!(f(2).elem(1).inv().unwrap().value(), 1);
        assert_eq!(f(13).elem(2).inv().unwrap().value(), 7);
        assert_eq!(f(13).elem(0).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields() {
        let a = f(5).elem(1);
        let b = f(7).elem(1);
        let err = Error::FieldMismatch { left: 5, right: 7 };
        assert_eq!(a.try_add(b), Err(err.clone()));
        assert_eq!(a.try_sub(b), Err(err.clone()));
        assert_eq!(a.try_mul(b), Err(err));
    }

    #[test]
    fn fermat() {
        for p in [2u64, 3, 5, 7, 13] {
            let field = f(p);
            for a in field.elements().filter(|a| !a.is_zero()) {
                assert_eq!(a.pow(p - 1), field.one(), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn primitive_roots_generate() {
        for p in [2u64, 3, 5, 7, 13, 17, 101] {
            let field = f(p);
            let g = field.primitive_root();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..p - 1 {
                seen.insert(x);
                x = field.mul(x, g);
            }
            assert_eq!(seen.len() as u64, p - 1, "p={p}");
        }
    }

    fn field_and_triple() -> impl Strategy<Value = (PrimeField, u32, u32, u32)> {
        prop::sample::select(vec![2u64, 3, 5, 7, 13, 251, 65521]).prop_flat_map(|p| {
            let p32 = p as u32;
            (Just(f(p)), 0..p32, 0..p32, 0..p32)
        })
    }

    proptest! {
        #[test]
        fn field_axioms((field, a, b, c) in field_and_triple()) {
            let (a, b, c) = (field.elem(a as u64), field.elem(b as u64), field.elem(c as u64));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + (-a), field.zero());
            prop_assert_eq!(a - b + b, a);
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), field.one());
            }
        }
    }
}

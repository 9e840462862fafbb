//! Coefficient fields: the rationals, prime fields and their finite extensions.
//!
//! A [`Field`] is a cheap handle to an immutable [`FieldSpec`]. Elements are
//! plain [`Scalar`] values in canonical form, so structural equality is field
//! equality; every operation takes the field explicitly.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::dense;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime {
        p: u64,
    },
    /// `F_p[t]/(m(t))`; `modulus` is monic of degree `k`, lowest coefficient first.
    Extension {
        p: u64,
        k: u32,
        modulus: Vec<u64>,
    },
}

/// Canonical field element. Rationals are reduced fractions, residues lie in
/// `0..p`, extension elements carry exactly `k` residues (coefficients of
/// `1, t, ..., t^(k-1)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
    Poly(SmallVec<[u64; 4]>),
}

#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, k, .. } => write!(f, "F_{{{p}^{k}}}"),
        }
    }
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldSpec::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !dense::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldSpec::Prime { p })))
    }

    /// Builds `F_p[t]/(modulus)`, checking primality, monicity and irreducibility.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !dense::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        dense::trim(&mut m);
        let k = match dense::degree(&m) {
            Some(k) if k >= 1 => k,
            _ => return Err(Error::InvalidField("modulus must have positive degree".into())),
        };
        if m[k] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !dense::is_irreducible(&m, p) {
            return Err(Error::InvalidField(format!("modulus {m:?} is reducible over F_{p}")));
        }
        if k == 1 {
            return Field::prime(p);
        }
        Ok(Field(Arc::new(FieldSpec::Extension { p, k: k as u32, modulus: m })))
    }

    /// `F_{p^k}` with the first irreducible monic modulus in the order
    /// `t^k + c_{k-1} t^{k-1} + ... + c_0`, enumerating `(c_0, ..., c_{k-1})` in
    /// base `p`. Deterministic, so reports are reproducible.
    pub fn generate_extension(p: u64, k: u32) -> Result<Self> {
        if !dense::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 1 {
            return Field::prime(p);
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let total = (p as u128).checked_pow(k).ok_or(Error::FieldTooLarge)?;
        for idx in 0..total {
            let mut m = Vec::with_capacity(k as usize + 1);
            let mut rest = idx;
            for _ in 0..k {
                m.push((rest % p as u128) as u64);
                rest /= p as u128;
            }
            m.push(1);
            if m[0] != 0 && dense::is_irreducible(&m, p) {
                return Ok(Field(Arc::new(FieldSpec::Extension { p, k, modulus: m })));
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
        }
    }

    /// Degree over the prime field (1 for the rationals).
    pub fn degree(&self) -> u32 {
        match &*self.0 {
            FieldSpec::Extension { k, .. } => *k,
            _ => 1,
        }
    }

    /// Number of elements, `None` for infinite fields or when it overflows.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            FieldSpec::Rationals => None,
            FieldSpec::Prime { p } => Some(*p),
            FieldSpec::Extension { p, k, .. } => p.checked_pow(*k),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(&*self.0, FieldSpec::Rationals)
    }

    pub fn prime_field(&self) -> Field {
        match &*self.0 {
            FieldSpec::Rationals => self.clone(),
            FieldSpec::Prime { .. } => self.clone(),
            FieldSpec::Extension { p, .. } => Field(Arc::new(FieldSpec::Prime { p: *p })),
        }
    }

    pub fn zero(&self) -> Scalar {
        match &*self.0 {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime { .. } => Scalar::Residue(0),
            FieldSpec::Extension { k, .. } => Scalar::Poly(SmallVec::from_elem(0, *k as usize)),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match &*self.0 {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime { p } => Scalar::Residue(v.rem_euclid(*p as i64) as u64),
            FieldSpec::Extension { p, k, .. } => {
                let mut c = SmallVec::from_elem(0, *k as usize);
                c[0] = v.rem_euclid(*p as i64) as u64;
                Scalar::Poly(c)
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match &*self.0 {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime { .. } | FieldSpec::Extension { .. } => {
                let p = BigInt::from(self.characteristic());
                let r = v.mod_floor(&p).to_u64().unwrap();
                self.from_i64(r as i64)
            }
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &*self.0 {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            _ => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d).ok_or(Error::DivisionByZero)?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    /// The class of `t` in an extension field (a field generator over F_p).
    pub fn generator(&self) -> Scalar {
        match &*self.0 {
            FieldSpec::Extension { k, .. } => {
                let mut c = SmallVec::from_elem(0, *k as usize);
                c[1] = 1;
                Scalar::Poly(c)
            }
            _ => self.one(),
        }
    }

    /// Element built from residues of `1, t, t^2, ...`.
    pub fn from_residues(&self, coeffs: &[u64]) -> Scalar {
        match &*self.0 {
            FieldSpec::Rationals => self.from_i64(coeffs.first().copied().unwrap_or(0) as i64),
            FieldSpec::Prime { p } => Scalar::Residue(coeffs.first().copied().unwrap_or(0) % p),
            FieldSpec::Extension { p, k, modulus } => {
                let reduced = dense::rem(&coeffs.iter().map(|c| c % p).collect::<Vec<_>>(), modulus, *p);
                let mut c = SmallVec::from_elem(0, *k as usize);
                for (i, v) in reduced.into_iter().enumerate() {
                    c[i] = v;
                }
                Scalar::Poly(c)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(v) => *v == 0,
            Scalar::Poly(c) => c.iter().all(|&v| v == 0),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue(v) => *v == 1,
            Scalar::Poly(c) => c[0] == 1 && c[1..].iter().all(|&v| v == 0),
        }
    }

    /// True when the element lies in the prime field (always for Q and F_p).
    pub fn is_prime_field_element(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Poly(c) => c[1..].iter().all(|&v| v == 0),
            _ => true,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                let p = self.characteristic();
                Scalar::Residue((x + y) % p)
            }
            (Scalar::Poly(x), Scalar::Poly(y)) => {
                let p = self.characteristic();
                Scalar::Poly(x.iter().zip(y.iter()).map(|(u, v)| (u + v) % p).collect())
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Residue(x) => {
                let p = self.characteristic();
                Scalar::Residue((p - x) % p)
            }
            Scalar::Poly(x) => {
                let p = self.characteristic();
                Scalar::Poly(x.iter().map(|u| (p - u) % p).collect())
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue(dense::mulmod(*x, *y, self.characteristic())),
            (Scalar::Poly(x), Scalar::Poly(y)) => {
                let FieldSpec::Extension { p, modulus, .. } = &*self.0 else {
                    panic!("polynomial scalar outside an extension field")
                };
                let prod = dense::mul(x, y, *p);
                self.from_residues(&dense::rem(&prod, modulus, *p))
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Scalar::Rational(x) => Some(Scalar::Rational(x.recip())),
            Scalar::Residue(x) => dense::invmod(*x, self.characteristic()).map(Scalar::Residue),
            Scalar::Poly(_) => {
                let q = self.order()?;
                Some(self.pow(a, q - 2))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// `a^p`; the identity on Q.
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        match &*self.0 {
            FieldSpec::Rationals => a.clone(),
            FieldSpec::Prime { .. } => a.clone(),
            FieldSpec::Extension { p, .. } => self.pow(a, *p),
        }
    }

    /// The unique `b` with `b^p = a` (perfect fields only).
    pub fn frobenius_inverse(&self, a: &Scalar) -> Scalar {
        match &*self.0 {
            FieldSpec::Extension { p, k, .. } => {
                let mut r = a.clone();
                for _ in 1..*k {
                    r = self.pow(&r, *p);
                }
                r
            }
            _ => a.clone(),
        }
    }

    /// All elements of a finite field, in a fixed order (0 first).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        let q = self.order().ok_or(Error::FieldTooLarge)?;
        Ok((0..q).map(|i| self.element_from_index(i)).collect())
    }

    /// Base-p digits of `i` as residues of `1, t, ...`.
    pub fn element_from_index(&self, mut i: u64) -> Scalar {
        let p = self.characteristic();
        match &*self.0 {
            FieldSpec::Rationals => self.from_i64(i as i64),
            FieldSpec::Prime { .. } => Scalar::Residue(i % p),
            FieldSpec::Extension { k, .. } => {
                let mut c = SmallVec::from_elem(0, *k as usize);
                for slot in c.iter_mut() {
                    *slot = i % p;
                    i /= p;
                }
                Scalar::Poly(c)
            }
        }
    }

    /// Residue of an element of a prime field (or of the prime subfield).
    pub fn residue(&self, a: &Scalar) -> Option<u64> {
        match a {
            Scalar::Residue(v) => Some(*v),
            Scalar::Poly(c) if c[1..].iter().all(|&v| v == 0) => Some(c[0]),
            _ => None,
        }
    }

    /// Checks that `a` is a canonical element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (&*self.0, a) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime { p }, Scalar::Residue(v)) => v < p,
            (FieldSpec::Extension { p, k, .. }, Scalar::Poly(c)) => c.len() == *k as usize && c.iter().all(|v| v < p),
            _ => false,
        }
    }

    /// Minimal modulus over F_p as a residue list (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> Vec<u64> {
        match &*self.0 {
            FieldSpec::Extension { modulus, .. } => modulus.clone(),
            _ => vec![0, 1],
        }
    }

    /// Human-readable form: `3`, `-1/2`, `2*t + 1`.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue(v) => format!("{v}"),
            Scalar::Poly(c) => {
                let mut parts = Vec::new();
                for (i, &v) in c.iter().enumerate().rev() {
                    if v == 0 {
                        continue;
                    }
                    let part = match (i, v) {
                        (0, v) => format!("{v}"),
                        (1, 1) => "t".into(),
                        (1, v) => format!("{v}*t"),
                        (i, 1) => format!("t^{i}"),
                        (i, v) => format!("{v}*t^{i}"),
                    };
                    parts.push(part);
                }
                if parts.is_empty() {
                    "0".into()
                } else if parts.len() == 1 {
                    parts.pop().unwrap()
                } else {
                    format!("({})", parts.join(" + "))
                }
            }
        }
    }

    /// Whether the printed form needs parentheses when used as a product factor.
    pub(crate) fn is_negative_rational(&self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rational(r) if r.is_negative())
    }
}

/// Field embedding `F_q -> F_{q'}` determined by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Field,
    pub target: Field,
    generator_image: Scalar,
}

impl Embedding {
    /// Finds an embedding of `source` into `target` by scanning `target` for a
    /// root of the source modulus.
    pub fn find(source: &Field, target: &Field) -> Result<Self> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::CharacteristicMismatch {
                expected: source.characteristic(),
                found: target.characteristic(),
            });
        }
        if source.degree() == 1 {
            return Ok(Embedding { source: source.clone(), target: target.clone(), generator_image: target.one() });
        }
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::InvalidField(format!("{source} does not embed into {target}")));
        }
        let modulus = source.modulus();
        for x in target.elements()? {
            let mut acc = target.zero();
            for c in modulus.iter().rev() {
                acc = target.add(&target.mul(&acc, &x), &target.from_i64(*c as i64));
            }
            if target.is_zero(&acc) {
                return Ok(Embedding { source: source.clone(), target: target.clone(), generator_image: x });
            }
        }
        Err(Error::InvalidField(format!("{source} does not embed into {target}")))
    }

    pub fn identity(field: &Field) -> Self {
        Embedding { source: field.clone(), target: field.clone(), generator_image: field.generator() }
    }

    pub fn apply(&self, a: &Scalar) -> Scalar {
        if self.source == self.target {
            return a.clone();
        }
        match a {
            Scalar::Residue(v) => self.target.from_i64(*v as i64),
            Scalar::Poly(c) => {
                let mut acc = self.target.zero();
                for &v in c.iter().rev() {
                    acc =
                        self.target.add(&self.target.mul(&acc, &self.generator_image), &self.target.from_i64(v as i64));
                }
                acc
            }
            Scalar::Rational(_) => a.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_arithmetic_f9() {
        // F_9 = F_3[t]/(t^2 + 1)
        let f = Field::extension(3, vec![1, 0, 1]).unwrap();
        let t = f.generator();
        let t2 = f.mul(&t, &t);
        assert_eq!(t2, f.from_i64(-1));
        // t^3 = -t, so t^3 - t = -2t = t.
        let t3 = f.pow(&t, 3);
        assert_eq!(f.sub(&t3, &t), t);
        let inv = f.inv(&t).unwrap();
        assert!(f.is_one(&f.mul(&inv, &t)));
    }

    #[test]
    fn rejects_reducible_modulus_and_composites() {
        assert!(Field::extension(3, vec![2, 0, 1]).is_err());
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert!(Field::extension(4, vec![1, 1, 1]).is_err());
    }

    #[test]
    fn generated_extensions_are_fields() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 3)] {
            let f = Field::generate_extension(p, k).unwrap();
            assert_eq!(f.order(), Some(p.pow(k)));
            let elems = f.elements().unwrap();
            for a in elems.iter().skip(1) {
                assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
            }
        }
    }

    #[test]
    fn frobenius_inverse_roundtrip() {
        let f = Field::generate_extension(5, 2).unwrap();
        for a in f.elements().unwrap() {
            assert_eq!(f.frobenius(&f.frobenius_inverse(&a)), a);
        }
    }

    #[test]
    fn embedding_f9_into_f81() {
        let small = Field::extension(3, vec![1, 0, 1]).unwrap();
        let big = Field::generate_extension(3, 4).unwrap();
        let emb = Embedding::find(&small, &big).unwrap();
        for a in small.elements().unwrap() {
            for b in small.elements().unwrap() {
                assert_eq!(emb.apply(&small.mul(&a, &b)), big.mul(&emb.apply(&a), &emb.apply(&b)));
                assert_eq!(emb.apply(&small.add(&a, &b)), big.add(&emb.apply(&a), &emb.apply(&b)));
            }
        }
    }

    #[test]
    fn ratio_into_prime_field() {
        let f = Field::prime(5).unwrap();
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, Scalar::Residue(3));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }
}

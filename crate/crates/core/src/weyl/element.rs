use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

use crate::arith::dense::{invmod, mulmod};
use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};

/// Exponent key of a normally ordered term `x^alpha d^beta`: `alpha` then `beta`,
/// `2n` entries. Only chart variables may carry negative `alpha` entries.
pub type Exp = SmallVec<[i32; 8]>;

/// The Weyl algebra `A_n` over a field, optionally localized at a monomial
/// `f = x^c` (the chart `f != 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylRing {
    n: usize,
    field: Field,
    chart: Option<Vec<u32>>,
}

impl WeylRing {
    pub fn new(n: usize, field: &Field) -> Arc<Self> {
        Arc::new(WeylRing { n, field: field.clone(), chart: None })
    }

    /// Localization at the monomial with exponent vector `chart`.
    pub fn with_chart(n: usize, field: &Field, chart: Vec<u32>) -> Result<Arc<Self>> {
        if chart.len() != n {
            return Err(Error::ContextMismatch(format!("chart monomial needs {n} exponents")));
        }
        if chart.iter().all(|&e| e == 0) {
            return Ok(Self::new(n, field));
        }
        Ok(Arc::new(WeylRing { n, field: field.clone(), chart: Some(chart) }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn chart(&self) -> Option<&[u32]> {
        self.chart.as_deref()
    }

    /// Whether `x_i` is inverted.
    pub fn is_inverted(&self, i: usize) -> bool {
        self.chart.as_ref().is_some_and(|c| c[i] > 0)
    }

    /// Same ring over another field.
    pub fn with_field(&self, field: &Field) -> Arc<Self> {
        Arc::new(WeylRing { n: self.n, field: field.clone(), chart: self.chart.clone() })
    }

    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        v.extend((1..=self.n).map(|i| format!("d{i}")));
        v
    }
}

/// A differential operator `sum c x^alpha d^beta` in normal order.
#[derive(Clone)]
pub struct WeylElement {
    ring: Arc<WeylRing>,
    terms: BTreeMap<Exp, Scalar>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for WeylElement {}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

/// `C(b, k) * a (a-1) ... (a-k+1)` mapped into `field`.
pub(crate) fn leibniz_coefficient(field: &Field, b: u32, k: u32, a: i64) -> Scalar {
    let p = field.characteristic();
    if p == 0 {
        let mut v = BigInt::one();
        for j in 0..k {
            v *= BigInt::from(b - j);
            v *= BigInt::from(a - j as i64);
        }
        let mut fact = BigInt::one();
        for j in 1..=k {
            fact *= BigInt::from(j);
        }
        return field.from_bigint(&(v / fact));
    }
    if k as u64 >= p {
        return field.zero();
    }
    // Lucas for the binomial, direct product for the falling factorial.
    let mut binom = 1u64;
    let (mut bb, mut kk) = (b as u64, k as u64);
    while kk > 0 || bb > 0 {
        let (bd, kd) = (bb % p, kk % p);
        if kd > bd {
            return field.zero();
        }
        let mut num = 1u64;
        let mut den = 1u64;
        for j in 0..kd {
            num = mulmod(num, bd - j, p);
            den = mulmod(den, j + 1, p);
        }
        binom = mulmod(binom, mulmod(num, invmod(den, p).unwrap(), p), p);
        bb /= p;
        kk /= p;
    }
    let mut ff = 1u64;
    for j in 0..k as i64 {
        ff = mulmod(ff, (a - j).rem_euclid(p as i64) as u64, p);
    }
    field.from_i64(mulmod(binom, ff, p) as i64)
}

impl WeylElement {
    pub fn zero(ring: &Arc<WeylRing>) -> Self {
        WeylElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<WeylRing>, c: Scalar) -> Self {
        let key: Exp = SmallVec::from_elem(0, 2 * ring.n);
        Self::term(ring, key, c)
    }

    pub fn one(ring: &Arc<WeylRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_i64(ring: &Arc<WeylRing>, v: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(v))
    }

    /// `c x^alpha d^beta`; negative `alpha` entries are allowed on chart variables.
    pub fn term(ring: &Arc<WeylRing>, key: Exp, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.field.is_zero(&c) {
            terms.insert(key, c);
        }
        WeylElement { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<WeylRing>, alpha: &[i32], beta: &[i32]) -> Self {
        let mut key: Exp = SmallVec::new();
        key.extend_from_slice(alpha);
        key.extend_from_slice(beta);
        Self::term(ring, key, ring.field.one())
    }

    pub fn x(ring: &Arc<WeylRing>, i: usize) -> Self {
        let mut key: Exp = SmallVec::from_elem(0, 2 * ring.n);
        key[i] = 1;
        Self::term(ring, key, ring.field.one())
    }

    pub fn d(ring: &Arc<WeylRing>, i: usize) -> Self {
        let mut key: Exp = SmallVec::from_elem(0, 2 * ring.n);
        key[ring.n + i] = 1;
        Self::term(ring, key, ring.field.one())
    }

    /// `x_i^e` with `e` possibly negative on a chart variable.
    pub fn x_pow(ring: &Arc<WeylRing>, i: usize, e: i32) -> Result<Self> {
        if e < 0 && !ring.is_inverted(i) {
            return Err(Error::OutOfScope(format!("x{} is not inverted on this chart", i + 1)));
        }
        let mut key: Exp = SmallVec::from_elem(0, 2 * ring.n);
        key[i] = e;
        Ok(Self::term(ring, key, ring.field.one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, Scalar)>>(ring: &Arc<WeylRing>, it: I) -> Self {
        let mut e = Self::zero(ring);
        for (k, c) in it {
            e.add_term(k, &c);
        }
        e
    }

    pub(crate) fn add_term(&mut self, key: Exp, c: &Scalar) {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = f.add(v, c);
                if f.is_zero(&s) {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &Arc<WeylRing> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[i32]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    fn check(&self, other: &WeylElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch(format!(
                "A_{} over {} vs A_{} over {}",
                self.ring.n, self.ring.field, other.ring.n, other.ring.field
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        self.try_add(other).expect("Weyl ring mismatch")
    }

    pub fn neg(&self) -> WeylElement {
        let f = &self.ring.field;
        WeylElement { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, c)| (k.clone(), f.neg(c))).collect() }
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> WeylElement {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        WeylElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), f.mul(v, c))).collect(),
        }
    }

    /// Normally ordered product.
    pub fn try_mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check(other)?;
        let n = self.ring.n;
        let f = &self.ring.field;
        let mut out = Self::zero(&self.ring);
        let mut limits = vec![0u32; n];
        let mut k = vec![0u32; n];
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let c0 = f.mul(ca, cb);
                // d^beta x^gamma expansion, k_i <= beta_i and k_i <= gamma_i when gamma_i >= 0.
                for i in 0..n {
                    let beta = ka[n + i] as u32;
                    let gamma = kb[i];
                    limits[i] = if gamma >= 0 { beta.min(gamma as u32) } else { beta };
                    k[i] = 0;
                }
                loop {
                    let mut c = c0.clone();
                    for i in 0..n {
                        if k[i] > 0 {
                            c = f.mul(&c, &leibniz_coefficient(f, ka[n + i] as u32, k[i], kb[i] as i64));
                        }
                    }
                    if !f.is_zero(&c) {
                        let mut key: Exp = SmallVec::from_elem(0, 2 * n);
                        for i in 0..n {
                            key[i] = ka[i] + kb[i] - k[i] as i32;
                            key[n + i] = ka[n + i] + kb[n + i] - k[i] as i32;
                        }
                        out.add_term(key, &c);
                    }
                    let mut i = 0;
                    while i < n {
                        if k[i] < limits[i] {
                            k[i] += 1;
                            break;
                        }
                        k[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        self.try_mul(other).expect("Weyl ring mismatch")
    }

    pub fn pow(&self, mut e: u64) -> WeylElement {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Formal adjoint: `c x^alpha d^beta -> (-1)^{|beta|} d^beta x^alpha c`.
    pub fn adjoint(&self) -> WeylElement {
        let n = self.ring.n;
        let f = &self.ring.field;
        let mut out = Self::zero(&self.ring);
        for (key, c) in &self.terms {
            let zeros = vec![0i32; n];
            let dpart = Self::monomial(&self.ring, &zeros, &key[n..]);
            let xpart = Self::monomial(&self.ring, &key[..n], &zeros);
            let sign: i32 = key[n..].iter().sum();
            let c = if sign % 2 == 0 { c.clone() } else { f.neg(c) };
            out = out.add(&dpart.mul(&xpart).scale(&c));
        }
        out
    }

    /// Largest `|alpha| + |beta|` over the terms; `None` for zero.
    pub fn bernstein_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.iter().map(|&e| e as i64).sum()).max()
    }

    /// Largest `|beta|`; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        let n = self.ring.n;
        self.terms.keys().map(|k| k[n..].iter().map(|&e| e as u32).sum()).max()
    }

    /// Order-zero element (a function).
    pub fn is_function(&self) -> bool {
        self.order().unwrap_or(0) == 0
    }

    /// `d_i(f)` for a function `f`.
    pub fn partial(&self, i: usize) -> Result<WeylElement> {
        if !self.is_function() {
            return Err(Error::OutOfScope("derivative of an operator of positive order".into()));
        }
        let f = &self.ring.field;
        let mut out = Self::zero(&self.ring);
        for (key, c) in &self.terms {
            if key[i] == 0 {
                continue;
            }
            let mut k = key.clone();
            k[i] -= 1;
            out.add_term(k, &f.mul(c, &f.from_i64(key[i] as i64)));
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient (e.g. Frobenius, a field embedding),
    /// landing in `ring`.
    pub fn map_coefficients(&self, ring: &Arc<WeylRing>, g: impl Fn(&Scalar) -> Scalar) -> WeylElement {
        Self::from_terms(ring, self.terms.iter().map(|(k, c)| (k.clone(), g(c))))
    }

    /// Moves to another ring with the same `n` (e.g. a larger chart).
    pub fn reinterpret(&self, ring: &Arc<WeylRing>) -> Result<WeylElement> {
        if ring.n != self.ring.n || ring.field != self.ring.field {
            return Err(Error::ContextMismatch("reinterpretation needs the same n and field".into()));
        }
        for k in self.terms.keys() {
            for i in 0..ring.n {
                if k[i] < 0 && !ring.is_inverted(i) {
                    return Err(Error::OutOfScope(format!("x{} is not inverted on this chart", i + 1)));
                }
            }
        }
        Ok(WeylElement { ring: ring.clone(), terms: self.terms.clone() })
    }

    /// Terms sorted by descending Bernstein degree, then by exponents.
    pub fn sorted_terms(&self) -> Vec<(&Exp, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: i64 = a.0.iter().map(|&e| e as i64).sum();
            let db: i64 = b.0.iter().map(|&e| e as i64).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// `x1^2*d1 + 3*x1 - 1`.
    pub fn format(&self) -> String {
        self.format_with(&self.ring.names())
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.ring.field;
        let mut out = String::new();
        for (idx, (key, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = f.is_negative_rational(c);
            let mag = if neg { f.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            for (i, &e) in key.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(names[i].clone()),
                    e => parts.push(format!("{}^{}", names[i], e)),
                }
            }
            let mono = parts.join("*");
            if mono.is_empty() {
                out.push_str(&f.format(&mag));
            } else if f.is_one(&mag) {
                out.push_str(&mono);
            } else {
                out.push_str(&f.format(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Whether every coefficient is zero (equivalent to `is_zero`, kept for symmetry
    /// with term-wise predicates).
    pub fn all_coefficients_zero(&self) -> bool {
        self.terms.values().all(|c| self.ring.field.is_zero(c))
    }
}

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Embedding, Field, Monomial, MonomialOrder, Scalar};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over a [`Field`]. Zero coefficients are never
/// stored; the zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| self.terms.cmp(&other.terms))
    }
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, Monomial::one(nvars), c)
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i, 1), field.one())
    }

    pub fn monomial(field: &Field, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m.clone(), c);
        }
        Polynomial { field: field.clone(), nvars: m.nvars(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(field: &Field, nvars: usize, it: I) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if self.is_unit() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// `c * m` when the polynomial has exactly one term.
    pub fn as_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// Panics on mismatched rings; use [`try_add`](Self::try_add) for checked arithmetic.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("polynomial ring mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("polynomial ring mismatch")
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect();
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), self.field.mul(v, c))).collect();
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.mul(mono), self.field.mul(v, c))).collect();
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut result = Polynomial::one(&self.field, self.nvars);
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

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[var]).max()
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading(order) {
            Some((_, c)) => {
                let inv = self.field.inv(c).unwrap();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &f.pow(&point[i], e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Evaluates after mapping coefficients through `emb` (point lives in the target field).
    pub fn eval_embedded(&self, emb: &Embedding, point: &[Scalar]) -> Scalar {
        self.map_field(emb).eval(point)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, &self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        out
    }

    pub fn map_field(&self, emb: &Embedding) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), emb.apply(c)));
        Polynomial::from_terms(&emb.target, self.nvars, terms)
    }

    /// Raises every coefficient to the p-th power.
    pub fn frobenius_coefficients(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.frobenius(c)));
        Polynomial::from_terms(&self.field, self.nvars, terms)
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Monomial::one(nvars);
            for (i, &x) in m.exps().iter().enumerate() {
                e.0[map[i]] += x;
            }
            (e, c.clone())
        });
        Polynomial::from_terms(&self.field, nvars, terms)
    }

    /// Variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// Substitutes `values[i]` (a polynomial in the same ring) for every variable `i`
    /// with `Some` entry.
    pub fn substitute(&self, values: &[Option<Polynomial>]) -> Polynomial {
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let mut keep = Monomial::one(self.nvars);
            let mut factor = Polynomial::constant(&self.field, self.nvars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &values[i] {
                    Some(v) => factor = factor.mul(&v.pow(e as u64)),
                    None => keep.0[i] = e,
                }
            }
            out = out.add(&factor.mul_monomial(&keep, &self.field.one()));
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let order = MonomialOrder::Lex;
        let (lm, lc) = divisor.leading(&order)?;
        let (lm, lc_inv) = (lm.clone(), self.field.inv(lc)?);
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.field, self.nvars);
        while let Some((m, c)) = rem.leading(&order) {
            let q = lm.quotient(m)?;
            let coeff = self.field.mul(c, &lc_inv);
            rem = rem.sub(&divisor.mul_monomial(&q, &coeff));
            quot.add_term(q, &coeff);
        }
        Some(quot)
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Renders with the given variable names, terms in descending degrevlex order.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms(&MonomialOrder::DegRevLex).into_iter().enumerate() {
            let negative = f.is_negative_rational(c);
            let magnitude = if negative { f.neg(c) } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = format_monomial(m, names);
            let coeff = f.format(&magnitude);
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if f.is_one(&magnitude) {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub(crate) fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            e => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Names of the central ring in `2n` variables, indexed `Y1..Yn, X1..Xn`.
pub fn central_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| format!("Y{i}")).collect();
    v.extend((1..=n).map(|i| format!("X{i}")));
    v
}

/// Names `x1..xm`.
pub fn plain_names(prefix: &str, m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("{prefix}{i}")).collect()
}

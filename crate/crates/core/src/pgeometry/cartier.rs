use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};
use crate::weyl::WeylElement;

/// Laurent 1-form `sum c_e x^e dx` in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    field: Field,
    coeffs: BTreeMap<i32, Scalar>,
}

impl OneForm {
    pub fn zero(field: &Field) -> Self {
        OneForm { field: field.clone(), coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Scalar)>>(field: &Field, terms: I) -> Self {
        let mut f = Self::zero(field);
        for (e, c) in terms {
            f.add_term(e, &c);
        }
        f
    }

    /// `g dx` for a function `g` of one variable (powers of `x` may be negative).
    pub fn from_function(g: &WeylElement) -> Result<Self> {
        if g.n() != 1 || !g.is_function() {
            return Err(Error::OutOfScope("1-forms need a function of one variable".into()));
        }
        Ok(Self::from_terms(g.field(), g.terms().map(|(k, c)| (k[0], c.clone()))))
    }

    /// `dh` for a Laurent polynomial `h = sum h_e x^e`.
    pub fn differential(field: &Field, h: &BTreeMap<i32, Scalar>) -> Self {
        Self::from_terms(field, h.iter().map(|(&e, c)| (e - 1, field.mul(c, &field.from_i64(e as i64)))))
    }

    fn add_term(&mut self, e: i32, c: &Scalar) {
        let f = &self.field;
        let v = match self.coeffs.get(&e) {
            Some(old) => f.add(old, c),
            None => c.clone(),
        };
        if f.is_zero(&v) {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, v);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<i32, Scalar> {
        &self.coeffs
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c);
        }
        out
    }

    /// `u * self` for a Laurent polynomial `u`.
    pub fn mul_function(&self, u: &BTreeMap<i32, Scalar>) -> OneForm {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (&a, c) in &self.coeffs {
            for (&b, d) in u {
                out.add_term(a + b, &f.mul(c, d));
            }
        }
        out
    }

    /// `c x^{pm + p - 1} dx -> c^{1/p} X^m dX`; all other terms vanish.
    pub fn cartier(&self) -> Result<OneForm> {
        let p = self.field.characteristic();
        if p == 0 {
            return Err(Error::OutOfScope("the Cartier operator needs positive characteristic".into()));
        }
        let pi = p as i32;
        let mut out = Self::zero(&self.field);
        for (&e, c) in &self.coeffs {
            if (e + 1).rem_euclid(pi) == 0 {
                out.add_term((e + 1) / pi - 1, &self.field.frobenius_inverse(c));
            }
        }
        Ok(out)
    }

    /// `x^2*dx + 2*x^-1*dx`, in the variable `var`.
    pub fn format(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts: Vec<String> = Vec::new();
        for (&e, c) in self.coeffs.iter().rev() {
            let mono = match e {
                0 => format!("d{var}"),
                1 => format!("{var}*d{var}"),
                e => format!("{var}^{e}*d{var}"),
            };
            parts.push(if f.is_one(c) { mono } else { format!("{}*{}", f.format(c), mono) });
        }
        parts.join(" + ")
    }
}

/// Cartier image of the closed 1-form `g dx`.
pub fn cartier_1form(form: &OneForm) -> Result<OneForm> {
    form.cartier()
}

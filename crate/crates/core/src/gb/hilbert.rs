//! Hilbert series of monomial modules and the Hilbert polynomial of the
//! cumulative (affine) Hilbert function.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::engine::{GroebnerBasis, Ring};
use crate::arith::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// A polynomial in one variable with rational coefficients (lowest first),
/// valid as a Hilbert function for arguments `>= l0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
    pub l0: u64,
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        HilbertPolynomial { coeffs: Vec::new(), l0: 0 }
    }

    pub fn from_coefficients(mut coeffs: Vec<BigRational>, l0: u64) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs, l0 }
    }

    pub fn from_integers(coeffs: &[i64], l0: u64) -> Self {
        Self::from_coefficients(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), l0)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> BigRational {
        let x = BigRational::from_integer(t.into());
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// `d! * a_d` for the degree `d` and leading coefficient `a_d`; 0 for the zero polynomial.
    pub fn multiplicity(&self) -> u64 {
        let Some(d) = self.degree() else { return 0 };
        let mut v = self.coeffs[d].clone();
        for k in 2..=d {
            v *= BigRational::from_integer(BigInt::from(k));
        }
        v.to_integer().to_u64().unwrap_or(u64::MAX)
    }

    /// `t -> H(s t)`.
    pub fn scale_argument(&self, s: u64) -> HilbertPolynomial {
        let mut pow = BigRational::one();
        let factor = BigRational::from_integer(BigInt::from(s));
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pow);
            pow *= &factor;
        }
        HilbertPolynomial { coeffs, l0: self.l0.div_ceil(s.max(1)) }
    }

    /// Same polynomial, ignoring the validity threshold.
    pub fn same_polynomial(&self, other: &HilbertPolynomial) -> bool {
        self.coeffs == other.coeffs
    }

    /// `3*t + 1`, `t^2/2 + 3*t/2 + 1`.
    pub fn format(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.into(),
                i => alloc::format!("{var}^{i}"),
            };
            let (num, den) = (a.numer().clone(), a.denom().clone());
            let body = if mono.is_empty() {
                alloc::format!("{num}")
            } else if num.is_one() {
                mono
            } else {
                alloc::format!("{num}*{mono}")
            };
            out.push_str(&body);
            if !den.is_one() {
                out.push_str(&alloc::format!("/{den}"));
            }
        }
        out
    }
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = gens.to_vec();
    v.sort_by_key(|m| m.degree());
    v.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(acc: &mut Vec<i128>, b: &[i128], shift: usize) {
    if acc.len() < b.len() + shift {
        acc.resize(b.len() + shift, 0);
    }
    for (i, &y) in b.iter().enumerate() {
        acc[i + shift] += y;
    }
}

fn trim(v: &mut Vec<i128>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^nvars` of `k[x]/J` for
/// the monomial ideal `J` generated by `gens`.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i128> {
    let gens = minimalize(gens);
    let mut out = numerator_rec(gens, nvars);
    trim(&mut out);
    out
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i128];
        for m in &gens {
            let mut f = vec![0i128; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // Pivot on the variable occurring in most generators.
    let mut counts = vec![0usize; nvars];
    for m in &gens {
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&i| (counts[i], core::cmp::Reverse(i))).unwrap();
    let pivot = Monomial::var(nvars, v, 1);
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut q = m.clone();
            if q.0[v] > 0 {
                q.0[v] -= 1;
            }
            q
        })
        .collect();
    let a = numerator_rec(minimalize(&plus), nvars);
    let b = numerator_rec(minimalize(&colon), nvars);
    let mut out = a;
    poly_add_shifted(&mut out, &b, 1);
    out
}

/// Hilbert polynomial of `l -> #{ (c, m) standard : deg m + shift_c <= l }` for
/// the monomial module with leading terms `leads` in a free module of rank `rank`.
pub fn hilbert_from_leading_terms(
    leads: &[(usize, Monomial)],
    rank: usize,
    shifts: &[u32],
    nvars: usize,
) -> HilbertPolynomial {
    let mut q: Vec<i128> = Vec::new();
    for c in 0..rank {
        let gens: Vec<Monomial> = leads.iter().filter(|(k, _)| *k == c).map(|(_, m)| m.clone()).collect();
        let n = hilbert_numerator(&gens, nvars);
        let s = shifts.get(c).copied().unwrap_or(0) as usize;
        poly_add_shifted(&mut q, &n, s);
    }
    trim(&mut q);
    // Cumulative counts: one extra factor 1/(1-t).
    let mut d = nvars + 1;
    while d > 0 && !q.is_empty() && q.iter().sum::<i128>() == 0 {
        q = divide_one_minus_t(&q);
        d -= 1;
    }
    if q.is_empty() {
        return HilbertPolynomial::zero();
    }
    let deg_q = q.len() - 1;
    if d == 0 {
        return HilbertPolynomial { coeffs: Vec::new(), l0: deg_q as u64 + 1 };
    }
    // sum_i q_i * binom(l - i + d - 1, d - 1)
    let mut coeffs = vec![BigRational::zero(); d];
    for (i, &qi) in q.iter().enumerate() {
        if qi == 0 {
            continue;
        }
        let b = binomial_poly(d as i64 - 1 - i as i64, d - 1);
        for (k, c) in b.into_iter().enumerate() {
            coeffs[k] += c * BigRational::from_integer(BigInt::from(qi));
        }
    }
    let l0 = (deg_q + 1).saturating_sub(d) as u64;
    HilbertPolynomial::from_coefficients(coeffs, l0)
}

fn divide_one_minus_t(q: &[i128]) -> Vec<i128> {
    // q = (1 - t) r  =>  r_0 = q_0, r_k = q_k + r_{k-1}
    let mut r = Vec::with_capacity(q.len().saturating_sub(1));
    let mut acc = 0i128;
    for &c in &q[..q.len() - 1] {
        acc += c;
        r.push(acc);
    }
    trim(&mut r);
    r
}

/// Coefficients of `binom(l + a, r)` as a polynomial in `l`.
fn binomial_poly(a: i64, r: usize) -> Vec<BigRational> {
    let mut p = vec![BigRational::one()];
    let mut fact = BigInt::one();
    for j in 0..r {
        // multiply by (l + a - j)
        let c = BigRational::from_integer(BigInt::from(a - j as i64));
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (k, v) in p.iter().enumerate() {
            next[k] += v * &c;
            next[k + 1] += v.clone();
        }
        p = next;
        fact *= BigInt::from(j as i64 + 1);
    }
    let f = BigRational::from_integer(fact);
    p.into_iter().map(|c| c / &f).collect()
}

/// Hilbert polynomial of the quotient by the submodule with basis `gb` in a free
/// module of rank `rank`, graded by standard degree plus the order's shifts.
pub fn hilbert_polynomial(gb: &GroebnerBasis, rank: usize) -> Result<HilbertPolynomial> {
    if !gb.order().is_degree_compatible(rank) {
        return Err(Error::NotDegreeCompatible);
    }
    Ok(hilbert_from_leading_terms(&gb.leading_terms(), rank, &gb.order().shifts, gb.ring().nvars))
}

/// Dimension and degree of `V(I)` from the Hilbert polynomial of the projective
/// closure; `(-1, 0)` for the unit ideal.
pub fn dimension_and_degree(gb: &GroebnerBasis) -> Result<(i64, u64)> {
    if gb.is_unit_ideal() {
        return Ok((-1, 0));
    }
    let hp = if gb.order().is_degree_compatible(1) {
        hilbert_polynomial(gb, 1)?
    } else {
        let ring: &Ring = gb.ring();
        let g2 = GroebnerBasis::ideal(ring, MonomialOrder::DegRevLex, &gb.polynomials())?;
        hilbert_polynomial(&g2, 1)?
    };
    match hp.degree() {
        Some(d) => Ok((d as i64, hp.multiplicity())),
        None => Ok((-1, 0)),
    }
}

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use smallvec::SmallVec;

use super::element::{Exp, WeylElement, WeylRing};
use crate::arith::{central_names, Monomial, Polynomial};
use crate::error::{Error, Result};

/// Index of `Y_i` in the central ring `F[Y_1..Y_n, X_1..X_n]`.
pub fn central_y(_n: usize, i: usize) -> usize {
    i
}

/// Index of `X_i` in the central ring.
pub fn central_x(n: usize, i: usize) -> usize {
    n + i
}

/// Basis monomial `x^a d^b` with `0 <= a_i, b_i < p`.
pub type BasisKey = (Vec<u32>, Vec<u32>);

/// `P = X^{-shift} * sum_{(a,b)} z_ab(X, Y) x^a d^b`, where `X_i = x_i^p`,
/// `Y_i = d_i^p`. The shift is nonzero only on a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralDecomposition {
    pub p: u64,
    pub n: usize,
    pub x_shift: Vec<u32>,
    pub entries: BTreeMap<BasisKey, Polynomial>,
}

impl CentralDecomposition {
    /// Central iff only the key `(0, 0)` is present.
    pub fn is_central(&self) -> bool {
        self.entries.keys().all(|(a, b)| a.iter().chain(b).all(|&e| e == 0))
    }

    pub fn get(&self, a: &[u32], b: &[u32]) -> Option<&Polynomial> {
        self.entries.get(&(a.to_vec(), b.to_vec()))
    }

    /// `X^shift` as a central polynomial; multiplying entries by it clears denominators.
    pub fn shift_monomial(&self) -> Monomial {
        let mut e = vec![0u32; 2 * self.n];
        for i in 0..self.n {
            e[central_x(self.n, i)] = self.x_shift[i];
        }
        Monomial::from_slice(&e)
    }

    /// Substitutes `X -> x^p`, `Y -> d^p` and multiplies out.
    pub fn reassemble(&self, ring: &Arc<WeylRing>) -> Result<WeylElement> {
        let n = self.n;
        let p = self.p as i32;
        let mut terms: Vec<(Exp, crate::arith::Scalar)> = Vec::new();
        for ((a, b), z) in &self.entries {
            for (m, c) in z.terms() {
                let e = m.exps();
                let mut key: Exp = SmallVec::from_elem(0, 2 * n);
                for i in 0..n {
                    key[i] = p * (e[central_x(n, i)] as i32 - self.x_shift[i] as i32) + a[i] as i32;
                    key[n + i] = p * e[central_y(n, i)] as i32 + b[i] as i32;
                }
                terms.push((key, c.clone()));
            }
        }
        let out = WeylElement::from_terms(ring, terms);
        out.reinterpret(ring)
    }

    pub fn format(&self) -> String {
        let names = central_names(self.n);
        let mut parts = Vec::new();
        for ((a, b), z) in &self.entries {
            parts.push(alloc::format!("({a:?},{b:?}) -> {}", z.format(&names)));
        }
        parts.join("; ")
    }
}

impl WeylElement {
    /// Coordinates over the center `F[x^p, d^p]` in the basis `x^a d^b`.
    pub fn center_decompose(&self, p: u64) -> Result<CentralDecomposition> {
        let field = self.field();
        if field.characteristic() != p {
            return Err(Error::CharacteristicMismatch { expected: p, found: field.characteristic() });
        }
        let n = self.n();
        let pi = p as i32;
        let mut shift = vec![0u32; n];
        for (key, _) in self.terms() {
            for i in 0..n {
                let q = key[i].div_euclid(pi);
                if q < 0 {
                    shift[i] = shift[i].max((-q) as u32);
                }
            }
        }
        let mut entries: BTreeMap<BasisKey, Polynomial> = BTreeMap::new();
        for (key, c) in self.terms() {
            let mut a = vec![0u32; n];
            let mut b = vec![0u32; n];
            let mut e = vec![0u32; 2 * n];
            for i in 0..n {
                a[i] = key[i].rem_euclid(pi) as u32;
                e[central_x(n, i)] = (key[i].div_euclid(pi) + shift[i] as i32) as u32;
                b[i] = key[n + i].rem_euclid(pi) as u32;
                e[central_y(n, i)] = key[n + i].div_euclid(pi) as u32;
            }
            let slot = entries.entry((a, b)).or_insert_with(|| Polynomial::zero(field, 2 * n));
            slot.add_term(Monomial::from_slice(&e), c);
        }
        entries.retain(|_, z| !z.is_zero());
        Ok(CentralDecomposition { p, n, x_shift: shift, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    #[test]
    fn examples() {
        let f2 = Field::prime(2).unwrap();
        let r = WeylRing::new(1, &f2);
        let (x, d) = (WeylElement::x(&r, 0), WeylElement::d(&r, 0));
        let dec = x.mul(&d.pow(2)).center_decompose(2).unwrap();
        assert_eq!(dec.entries.len(), 1);
        assert_eq!(dec.get(&[1], &[0]).unwrap().format(&central_names(1)), "Y1");

        let f3 = Field::prime(3).unwrap();
        let r = WeylRing::new(1, &f3);
        let (x, d) = (WeylElement::x(&r, 0), WeylElement::d(&r, 0));
        let dec = d.pow(3).center_decompose(3).unwrap();
        assert!(dec.is_central());
        assert_eq!(dec.get(&[0], &[0]).unwrap().format(&central_names(1)), "Y1");
        let dec = x.pow(4).center_decompose(3).unwrap();
        assert_eq!(dec.get(&[1], &[0]).unwrap().format(&central_names(1)), "X1");
        assert!(x.center_decompose(5).is_err());
    }

    #[test]
    fn chart_reassembly() {
        let f3 = Field::prime(3).unwrap();
        let r = WeylRing::with_chart(1, &f3, vec![1]).unwrap();
        let e = WeylElement::x_pow(&r, 0, -4).unwrap().mul(&WeylElement::d(&r, 0).pow(4));
        let dec = e.center_decompose(3).unwrap();
        assert_eq!(dec.x_shift, vec![2]);
        assert_eq!(dec.reassemble(&r).unwrap(), e);
    }
}

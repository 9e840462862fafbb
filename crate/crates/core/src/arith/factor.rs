use alloc::vec;
use alloc::vec::Vec;

use super::{Monomial, MonomialOrder, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::gb::poly_gcd;

/// Largest field order scanned by [`univariate_roots`] unless told otherwise.
pub const DEFAULT_SCAN_BUDGET: u64 = 5000;

/// Roots in the coefficient field of a polynomial in at most one variable,
/// found by evaluating at every field element.
pub fn univariate_roots(f: &Polynomial, budget: u64) -> Result<Vec<Scalar>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars = f.variables();
    if vars.len() > 1 {
        return Err(Error::OutOfScope("root scan needs a univariate polynomial".into()));
    }
    let field = f.field();
    let q = field.order().ok_or(Error::FieldTooLarge)?;
    if q > budget {
        return Err(Error::FieldTooLarge);
    }
    let Some(&var) = vars.first() else { return Ok(Vec::new()) };
    let mut point = vec![field.zero(); f.nvars()];
    let mut roots = Vec::new();
    for i in 0..q {
        point[var] = field.element_from_index(i);
        if field.is_zero(&f.eval(&point)) {
            roots.push(point[var].clone());
        }
    }
    Ok(roots)
}

/// Product of the distinct irreducible factors of `f`, made monic for degrevlex.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let order = MonomialOrder::DegRevLex;
    if f.is_unit() {
        return Ok(Polynomial::one(f.field(), f.nvars()));
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        let d = f.derivative(i);
        if !d.is_zero() {
            g = poly_gcd(&g, &d)?;
        }
    }
    let r = f.div_exact(&g).ok_or_else(|| Error::Invariant("gcd does not divide".into()))?;
    if f.field().characteristic() == 0 {
        return Ok(r.monic(&order));
    }
    // What is left after removing the factors of r is a p-th power.
    let mut h = g;
    loop {
        let c = poly_gcd(&h, &r)?;
        if c.is_unit() {
            break;
        }
        h = h.div_exact(&c).ok_or_else(|| Error::Invariant("gcd does not divide".into()))?;
    }
    if h.is_unit() {
        return Ok(r.monic(&order));
    }
    let rest = squarefree_part(&pth_root(&h)?)?;
    Ok(r.mul(&rest).monic(&order))
}

fn pth_root(h: &Polynomial) -> Result<Polynomial> {
    let field = h.field();
    let p = field.characteristic() as u32;
    let mut terms = Vec::new();
    for (m, c) in h.terms() {
        if m.exps().iter().any(|e| e % p != 0) {
            return Err(Error::Invariant("not a p-th power".into()));
        }
        let e: Vec<u32> = m.exps().iter().map(|e| e / p).collect();
        terms.push((Monomial::from_slice(&e), field.frobenius_inverse(c)));
    }
    Ok(Polynomial::from_terms(field, h.nvars(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    #[test]
    fn roots_by_scan() {
        let f3 = Field::prime(3).unwrap();
        let x = Polynomial::var(&f3, 1, 0);
        let one = Polynomial::one(&f3, 1);
        assert!(univariate_roots(&x.pow(2).add(&one), 5000).unwrap().is_empty());
        let r = univariate_roots(&x.pow(2).sub(&one), 5000).unwrap();
        assert_eq!(r, vec![f3.from_i64(1), f3.from_i64(2)]);
        let f5 = Field::prime(5).unwrap();
        let r = univariate_roots(&Polynomial::var(&f5, 1, 0), 5000).unwrap();
        assert_eq!(r, vec![f5.zero()]);
        assert_eq!(univariate_roots(&Polynomial::var(&f5, 1, 0), 4), Err(Error::FieldTooLarge));
    }

    #[test]
    fn squarefree_examples() {
        let f3 = Field::prime(3).unwrap();
        let y = Polynomial::var(&f3, 2, 0);
        let x = Polynomial::var(&f3, 2, 1);
        let line = y.sub(&x.scale(&f3.from_i64(2)));
        assert_eq!(squarefree_part(&line.pow(2)).unwrap(), line);
        assert_eq!(squarefree_part(&x).unwrap(), x);
        // A cube in characteristic 3 has vanishing derivatives.
        assert_eq!(squarefree_part(&line.pow(3).mul(&x)).unwrap(), line.mul(&x).monic(&MonomialOrder::DegRevLex));
        assert_eq!(squarefree_part(&Polynomial::zero(&f3, 2)), Err(Error::ZeroPolynomial));
    }
}

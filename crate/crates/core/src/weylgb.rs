//! Left Gröbner bases in the Weyl algebra and the Bernstein invariants built
//! on them.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::{MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::gb::{hilbert_polynomial, Budget, Column, GroebnerBasis, HilbertPolynomial, Ring, SVec, TermOrder};
use crate::pgeometry::center_presentation_with;
use crate::weyl::{from_polynomial, to_polynomial, ModulePresentation, WeylElement, WeylRing};

/// Reduced left Gröbner basis of a left ideal or submodule of `A_n^rank`.
#[derive(Clone, Debug)]
pub struct WeylGroebnerBasis {
    ring: Arc<WeylRing>,
    rank: usize,
    gb: GroebnerBasis,
}

fn engine_ring(ring: &WeylRing, budget: &Budget) -> Result<Ring> {
    if ring.chart().is_some() {
        return Err(Error::LocalizedModule);
    }
    Ok(Ring::weyl(ring.field(), ring.n()).with_budget(budget.clone()))
}

fn row_to_column(row: &[WeylElement]) -> Result<Column> {
    let mut col = BTreeMap::new();
    for (k, e) in row.iter().enumerate() {
        if !e.is_zero() {
            col.insert(k, to_polynomial(e)?);
        }
    }
    Ok(col)
}

/// Left ideal basis of `gens` under a degree-compatible order on `x^alpha d^beta`.
pub fn weyl_groebner(ring: &Arc<WeylRing>, gens: &[WeylElement], order: MonomialOrder) -> Result<WeylGroebnerBasis> {
    let rows: Vec<Vec<WeylElement>> = gens.iter().map(|g| alloc::vec![g.clone()]).collect();
    let pres = ModulePresentation::new(ring, 1, rows)?;
    weyl_groebner_module(&pres, &TermOrder::new(order), &Budget::unlimited())
}

/// Left submodule basis of the relation rows of `pres`.
pub fn weyl_groebner_module(
    pres: &ModulePresentation,
    order: &TermOrder,
    budget: &Budget,
) -> Result<WeylGroebnerBasis> {
    if !order.mono.is_degree_compatible() {
        return Err(Error::NotDegreeCompatible);
    }
    let ring = engine_ring(&pres.ring, budget)?;
    let cols = pres.relations.iter().map(|r| row_to_column(r)).collect::<Result<Vec<_>>>()?;
    let gb = GroebnerBasis::module(&ring, order, &cols)?;
    Ok(WeylGroebnerBasis { ring: pres.ring.clone(), rank: pres.generators, gb })
}

/// Remainder of `p` modulo the left ideal.
pub fn weyl_normal_form(p: &WeylElement, basis: &WeylGroebnerBasis) -> Result<WeylElement> {
    if p.ring() != &basis.ring {
        return Err(Error::ContextMismatch("operator and basis over different rings".into()));
    }
    let f = to_polynomial(p)?;
    Ok(from_polynomial(&basis.ring, &basis.gb.reduce_poly(&f)))
}

impl WeylGroebnerBasis {
    pub fn ring(&self) -> &Arc<WeylRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The underlying engine basis (commutative exponent encoding, `x` first).
    pub fn inner(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Ideal elements (rank one).
    pub fn elements(&self) -> Vec<WeylElement> {
        self.gb.polynomials().iter().map(|f| from_polynomial(&self.ring, f)).collect()
    }

    /// Basis rows.
    pub fn rows(&self) -> Vec<Vec<WeylElement>> {
        self.gb
            .columns()
            .iter()
            .map(|c| {
                (0..self.rank)
                    .map(|k| match c.get(&k) {
                        Some(f) => from_polynomial(&self.ring, f),
                        None => WeylElement::zero(&self.ring),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        (0..self.rank).all(|k| self.gb.has_unit_in(k))
    }

    pub fn contains(&self, p: &WeylElement) -> Result<bool> {
        Ok(weyl_normal_form(p, self)?.is_zero())
    }

    pub fn satisfies_buchberger_criterion(&self) -> bool {
        self.gb.satisfies_buchberger_criterion()
    }

    pub fn is_reduced(&self) -> bool {
        self.gb.is_reduced()
    }

    /// Hilbert polynomial of `l -> dim Gamma_l M` for the filtration induced by
    /// generators in degree zero; needs a total-degree order.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial> {
        hilbert_polynomial(&self.gb, self.rank)
    }
}

/// Bernstein dimension `d(M)`, multiplicity `e(M)` and Hilbert polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyReport {
    pub n: usize,
    /// `None` for the zero module.
    pub d: Option<i64>,
    pub e: u64,
    pub hilbert: HilbertPolynomial,
    pub holonomic: bool,
}

/// Hilbert polynomial of `M` for the Bernstein filtration with generators in
/// degree zero.
pub fn bernstein_hilbert(pres: &ModulePresentation, budget: &Budget) -> Result<HilbertPolynomial> {
    let gb = weyl_groebner_module(pres, &TermOrder::new(MonomialOrder::DegRevLex), budget)?;
    gb.hilbert_polynomial()
}

pub fn holonomy_invariants(pres: &ModulePresentation) -> Result<HolonomyReport> {
    holonomy_invariants_with(pres, &Budget::unlimited())
}

pub fn holonomy_invariants_with(pres: &ModulePresentation, budget: &Budget) -> Result<HolonomyReport> {
    if pres.is_localized() {
        return Err(Error::LocalizedModule);
    }
    let n = pres.n();
    let hilbert = bernstein_hilbert(pres, budget)?;
    let d = hilbert.degree().map(|d| d as i64);
    let e = hilbert.multiplicity();
    if let Some(d) = d {
        if d < n as i64 {
            return Err(Error::Invariant(alloc::format!("Bernstein inequality fails: d = {d} < n = {n}")));
        }
    }
    Ok(HolonomyReport { n, d, e, holonomic: d.is_none_or(|d| d == n as i64), hilbert })
}

/// Hilbert polynomial of the Rees module of `(F_* M, p Gamma)` over the center,
/// computed by a commutative Gröbner basis on the center presentation with
/// basis vector `x^a d^b` placed in degree `ceil((|a| + |b|) / p)`.
pub fn rees_hilbert_of_center_module(pres: &ModulePresentation, p: u64) -> Result<HilbertPolynomial> {
    rees_hilbert_with(pres, p, crate::pgeometry::DEFAULT_CENTER_LIMIT, &Budget::unlimited())
}

pub fn rees_hilbert_with(
    pres: &ModulePresentation,
    p: u64,
    limit: usize,
    budget: &Budget,
) -> Result<HilbertPolynomial> {
    if pres.is_localized() {
        return Err(Error::LocalizedModule);
    }
    let cp = center_presentation_with(pres, p, limit)?;
    let shifts: Vec<u32> = cp
        .basis
        .iter()
        .map(|(_, (a, b))| {
            let s: u32 = a.iter().chain(b).sum();
            s.div_ceil(p as u32)
        })
        .collect();
    let ring = cp.presentation.ring.clone().with_budget(budget.clone());
    let order = TermOrder::top_shifted(MonomialOrder::DegRevLex, shifts);
    let gb = GroebnerBasis::module(&ring, &order, &cp.presentation.relations)?;
    hilbert_polynomial(&gb, cp.presentation.generators)
}

/// Whether `lead(P Q) = lead(P) lead(Q)` as commutative monomials.
pub fn leading_terms_multiply(p: &WeylElement, q: &WeylElement) -> Result<bool> {
    let order = TermOrder::new(MonomialOrder::DegRevLex);
    let ring = engine_ring(p.ring(), &Budget::unlimited())?;
    let lead = |e: &WeylElement| -> Result<Option<crate::arith::Monomial>> {
        let f: Polynomial = to_polynomial(e)?;
        Ok(SVec::from_poly(&ring, &order, &f).lead().map(|t| t.mono.clone()))
    };
    let (lp, lq, lpq) = (lead(p)?, lead(q)?, lead(&p.mul(q))?);
    Ok(match (lp, lq) {
        (Some(a), Some(b)) => lpq == Some(a.mul(&b)),
        _ => lpq.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    fn a1(field: &Field) -> (Arc<WeylRing>, WeylElement, WeylElement) {
        let r = WeylRing::new(1, field);
        (r.clone(), WeylElement::x(&r, 0), WeylElement::d(&r, 0))
    }

    #[test]
    fn groebner_examples() {
        let (r, x, d) = a1(&Field::rationals());
        let airy = d.pow(2).sub(&x);
        let gb = weyl_groebner(&r, core::slice::from_ref(&airy), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.elements(), alloc::vec![airy]);
        let gb = weyl_groebner(&r, &[d.clone(), x.clone()], MonomialOrder::DegRevLex).unwrap();
        assert!(gb.is_unit());
        let half = Field::rationals().from_ratio(&1.into(), &2.into()).unwrap();
        let kummer = x.mul(&d).sub(&WeylElement::constant(&r, half));
        let gb = weyl_groebner(&r, &[kummer, x.clone()], MonomialOrder::DegRevLex).unwrap();
        assert!(gb.is_unit());
        assert!(weyl_groebner(&r, &[x], MonomialOrder::Lex).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let (r, x, d) = a1(&Field::rationals());
        let gb = weyl_groebner(&r, &[d.pow(2).sub(&x)], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(weyl_normal_form(&d.pow(2), &gb).unwrap(), x);
        let (r2, x2, d2) = a1(&Field::prime(2).unwrap());
        let gb2 = weyl_groebner(&r2, &[d2.pow(2).sub(&x2)], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(weyl_normal_form(&d2.pow(4), &gb2).unwrap(), x2.pow(2));
        let gb = weyl_groebner(&r, &[d], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(weyl_normal_form(&x, &gb).unwrap(), x);
    }

    #[test]
    fn holonomy_examples() {
        let q = Field::rationals();
        let (r, x, d) = a1(&q);
        let rep = holonomy_invariants(&ModulePresentation::cyclic(&r, core::slice::from_ref(&d)).unwrap()).unwrap();
        assert_eq!((rep.d, rep.e, rep.holonomic), (Some(1), 1, true));
        assert_eq!(rep.hilbert.format("t"), "t + 1");
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        let k = x.mul(&d).sub(&WeylElement::constant(&r, half));
        let rep = holonomy_invariants(&ModulePresentation::cyclic(&r, &[k]).unwrap()).unwrap();
        assert_eq!((rep.d, rep.e), (Some(1), 2));
        assert_eq!(rep.hilbert.format("t"), "2*t + 1");
        let rep = holonomy_invariants(&ModulePresentation::free(&r, 1)).unwrap();
        assert_eq!((rep.d, rep.e, rep.holonomic), (Some(2), 1, false));
        let rep = holonomy_invariants(&ModulePresentation::cyclic(&r, &[d.pow(2).sub(&x)]).unwrap()).unwrap();
        assert_eq!((rep.d, rep.e), (Some(1), 2));
        let rep = holonomy_invariants(&ModulePresentation::cyclic(&r, &[WeylElement::one(&r)]).unwrap()).unwrap();
        assert_eq!((rep.d, rep.e, rep.holonomic), (None, 0, true));
        let chart = WeylRing::with_chart(1, &q, alloc::vec![1]).unwrap();
        let m = ModulePresentation::cyclic(&chart, &[WeylElement::d(&chart, 0)]).unwrap();
        assert_eq!(holonomy_invariants(&m), Err(Error::LocalizedModule));
    }

    #[test]
    fn rees_examples() {
        let f3 = Field::prime(3).unwrap();
        let (r, x, d) = a1(&f3);
        let m = ModulePresentation::cyclic(&r, core::slice::from_ref(&d)).unwrap();
        assert_eq!(rees_hilbert_of_center_module(&m, 3).unwrap().format("t"), "3*t + 1");
        let k = x.mul(&d).sub(&WeylElement::one(&r));
        let m = ModulePresentation::cyclic(&r, &[k]).unwrap();
        assert_eq!(rees_hilbert_of_center_module(&m, 3).unwrap().format("t"), "6*t + 1");
        let m = ModulePresentation::cyclic(&r, &[WeylElement::one(&r)]).unwrap();
        assert!(rees_hilbert_of_center_module(&m, 3).unwrap().is_zero());
    }
}

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::points::{sample_smooth_points, SampleOptions, SmoothPoint};
use crate::arith::{Field, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::gb::{dimension_and_degree, GroebnerBasis};
use crate::weyl::{central_x, central_y};

/// `omega = sum dX_i ^ dY_i` on coordinates `(Y_1..Y_n, X_1..X_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticFrame {
    pub n: usize,
}

impl SymplecticFrame {
    pub fn new(n: usize) -> Self {
        SymplecticFrame { n }
    }

    /// `omega(u, v) = sum_i u_{X_i} v_{Y_i} - u_{Y_i} v_{X_i}`.
    pub fn pairing(&self, field: &Field, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let n = self.n;
        let mut acc = field.zero();
        for i in 0..n {
            let (x, y) = (central_x(n, i), central_y(n, i));
            acc = field.add(&acc, &field.sub(&field.mul(&u[x], &v[y]), &field.mul(&u[y], &v[x])));
        }
        acc
    }

    /// Gram matrix of `omega` in the coordinate basis.
    pub fn matrix(&self, field: &Field) -> Vec<Vec<Scalar>> {
        let m = 2 * self.n;
        let basis =
            |k: usize| -> Vec<Scalar> { (0..m).map(|j| if j == k { field.one() } else { field.zero() }).collect() };
        (0..m).map(|a| (0..m).map(|b| self.pairing(field, &basis(a), &basis(b))).collect()).collect()
    }

    /// Whether `omega` vanishes on the span of `tangent`.
    pub fn is_isotropic(&self, field: &Field, tangent: &[Vec<Scalar>]) -> bool {
        tangent
            .iter()
            .enumerate()
            .all(|(a, u)| tangent[a + 1..].iter().all(|v| field.is_zero(&self.pairing(field, u, v))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Lagrangian,
    NotLagrangian,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianVerdict {
    pub status: VerdictStatus,
    pub dim: i64,
    pub dim_ok: bool,
    pub equidim_ok: Option<bool>,
    pub isotropy: Vec<bool>,
    pub points_tested: usize,
    /// Coordinates (formatted) of a point where `omega` does not vanish.
    pub witness: Option<Vec<String>>,
    pub reasons: Vec<String>,
}

/// Smallest number of isotropic smooth points needed for a positive verdict.
pub const MIN_POINTS: usize = 3;

/// Dimension check plus isotropy of the tangent spaces at sampled smooth points.
pub fn lagrangian_verdict(
    ideal: &GroebnerBasis,
    n: usize,
    equidim_hint: Option<bool>,
    opts: &SampleOptions,
) -> Result<LagrangianVerdict> {
    if ideal.ring().nvars != 2 * n {
        return Err(Error::ContextMismatch(format!("ideal in {} variables for n = {n}", ideal.ring().nvars)));
    }
    let (dim, _) = dimension_and_degree(ideal)?;
    let mut v = LagrangianVerdict {
        status: VerdictStatus::Inconclusive,
        dim,
        dim_ok: dim == n as i64,
        equidim_ok: equidim_hint,
        isotropy: Vec::new(),
        points_tested: 0,
        witness: None,
        reasons: Vec::new(),
    };
    if dim < 0 {
        v.reasons.push("empty support".into());
        return Ok(v);
    }
    if !v.dim_ok {
        v.status = VerdictStatus::NotLagrangian;
        v.reasons.push(format!("dimension {dim} differs from {n}"));
        return Ok(v);
    }
    let frame = SymplecticFrame::new(n);
    let points: Vec<SmoothPoint> = sample_smooth_points(ideal, n, opts)?;
    v.points_tested = points.len();
    for pt in &points {
        let ok = frame.is_isotropic(&pt.field, &pt.tangent);
        v.isotropy.push(ok);
        if !ok && v.witness.is_none() {
            v.witness = Some(pt.coords.iter().map(|c| pt.field.format(c)).collect());
        }
    }
    if v.witness.is_some() {
        v.status = VerdictStatus::NotLagrangian;
        v.reasons.push("symplectic form is nonzero on a tangent space".into());
    } else if points.len() < MIN_POINTS {
        v.reasons.push(format!("only {} smooth points found", points.len()));
    } else if equidim_hint == Some(false) {
        // impurity of the module is not a witness against the reduced support
        v.reasons.push("module is not pure".into());
    } else {
        v.status = VerdictStatus::Lagrangian;
    }
    Ok(v)
}

/// `deg` of the projective closure: homogenize a degrevlex basis with a new last
/// variable and read the multiplicity of the graded Hilbert polynomial. `0` for
/// the unit ideal.
pub fn rees_degree(ideal: &GroebnerBasis) -> Result<u64> {
    if ideal.is_unit_ideal() {
        return Ok(0);
    }
    let ring = ideal.ring();
    let nv = ring.nvars;
    let field = &ring.field;
    let base = if ideal.order().mono == crate::arith::MonomialOrder::DegRevLex {
        ideal.clone()
    } else {
        GroebnerBasis::ideal(ring, crate::arith::MonomialOrder::DegRevLex, &ideal.polynomials())?
    };
    let homog: Vec<Polynomial> = base
        .polynomials()
        .iter()
        .map(|f| {
            let d = f.total_degree().unwrap_or(0);
            let terms = f.terms().map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.push((d - m.degree()) as u32);
                (crate::arith::Monomial::from_slice(&e), c.clone())
            });
            Polynomial::from_terms(field, nv + 1, terms)
        })
        .collect();
    let hring = crate::gb::Ring::commutative(field, nv + 1);
    let hgb = GroebnerBasis::ideal(&hring, crate::arith::MonomialOrder::DegRevLex, &homog)?;
    // graded function of the cone = first difference of the cumulative count
    let hp = crate::gb::hilbert_polynomial(&hgb, 1)?;
    Ok(hp.multiplicity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::MonomialOrder;
    use crate::gb::Ring;

    fn ideal(f: &Field, n: usize, polys: impl Fn(&[Polynomial]) -> Vec<Polynomial>) -> GroebnerBasis {
        let nv = 2 * n;
        let v: Vec<Polynomial> = (0..nv).map(|i| Polynomial::var(f, nv, i)).collect();
        GroebnerBasis::ideal(&Ring::commutative(f, nv), MonomialOrder::DegRevLex, &polys(&v)).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let f3 = Field::prime(3).unwrap();
        let opts = SampleOptions::default();
        // (Y1 - X2, Y2 - X1); indices Y1=0, Y2=1, X1=2, X2=3
        let g = ideal(&f3, 2, |v| alloc::vec![v[0].sub(&v[3]), v[1].sub(&v[2])]);
        assert_eq!(lagrangian_verdict(&g, 2, None, &opts).unwrap().status, VerdictStatus::Lagrangian);
        let z = ideal(&f3, 2, |v| alloc::vec![v[0].clone(), v[1].clone()]);
        assert_eq!(lagrangian_verdict(&z, 2, None, &opts).unwrap().status, VerdictStatus::Lagrangian);
        let bad = ideal(&f3, 2, |v| alloc::vec![v[2].clone(), v[0].clone()]);
        let verdict = lagrangian_verdict(&bad, 2, None, &opts).unwrap();
        assert_eq!(verdict.status, VerdictStatus::NotLagrangian);
        assert!(verdict.witness.is_some());
        let whole = ideal(&f3, 1, |_| alloc::vec![]);
        let verdict = lagrangian_verdict(&whole, 1, None, &opts).unwrap();
        assert_eq!((verdict.status, verdict.dim), (VerdictStatus::NotLagrangian, 2));
    }

    #[test]
    fn frame_is_nondegenerate() {
        let f5 = Field::prime(5).unwrap();
        let m = SymplecticFrame::new(2).matrix(&f5);
        assert_eq!(super::super::linalg::rank(&f5, &m), 4);
        for a in 0..4 {
            assert!(f5.is_zero(&m[a][a]));
            for b in 0..4 {
                assert_eq!(m[a][b], f5.neg(&m[b][a]));
            }
        }
    }

    #[test]
    fn rees_degree_examples() {
        let f3 = Field::prime(3).unwrap();
        let line = ideal(&f3, 1, |v| alloc::vec![v[0].sub(&v[1].scale(&f3.from_i64(2)))]);
        assert_eq!(rees_degree(&line).unwrap(), 1);
        let conic = ideal(&f3, 1, |v| alloc::vec![v[0].mul(&v[1]).sub(&Polynomial::constant(&f3, 2, f3.one()))]);
        assert_eq!(rees_degree(&conic).unwrap(), 2);
        let f2 = Field::prime(2).unwrap();
        let airy = ideal(&f2, 1, |v| alloc::vec![v[0].pow(2).add(&v[1])]);
        assert_eq!(rees_degree(&airy).unwrap(), 2);
    }
}

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::linalg::{kernel, rank};
use crate::arith::{
    univariate_roots, Embedding, Field, Monomial, MonomialOrder, Polynomial, Scalar, DEFAULT_SCAN_BUDGET,
};
use crate::error::{Error, Result};
use crate::gb::{poly_gcd, GroebnerBasis, Ring};

/// A smooth point of `V(I)` over a finite extension of the coefficient field,
/// with a basis of the tangent space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothPoint {
    pub field: Field,
    pub coords: Vec<Scalar>,
    pub tangent: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct SampleOptions {
    pub count: usize,
    pub seed: u64,
    /// Largest relative extension degree tried.
    pub max_extension: u32,
    pub scan_budget: u64,
    /// Random fibers tried per field.
    pub attempts: usize,
    /// Points where this monomial vanishes are skipped (chart).
    pub avoid: Option<Monomial>,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            count: 5,
            seed: 0,
            max_extension: 3,
            scan_budget: DEFAULT_SCAN_BUDGET,
            attempts: 24,
            avoid: None,
        }
    }
}

/// Variables `S`, `|S| = size`, with no leading monomial supported inside `S`.
fn independent_set(leads: &[Monomial], nvars: usize, size: usize) -> Option<Vec<usize>> {
    fn go(leads: &[Monomial], nvars: usize, size: usize, start: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == size {
            return true;
        }
        for v in start..nvars {
            cur.push(v);
            let ok = leads.iter().all(|m| !m.support().iter().all(|s| cur.contains(s)));
            if ok && go(leads, nvars, size, v + 1, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    go(leads, nvars, size, 0, &mut cur).then_some(cur)
}

fn random_element(field: &Field, rng: &mut ChaCha8Rng) -> Scalar {
    let q = field.order().unwrap_or(1);
    field.element_from_index(rng.next_u64() % q)
}

struct Solver<'a> {
    field: &'a Field,
    nvars: usize,
    budget: u64,
    limit: usize,
}

impl Solver<'_> {
    fn solve(
        &self,
        polys: &[Polynomial],
        assigned: &mut Vec<Option<Scalar>>,
        rng: &mut ChaCha8Rng,
        out: &mut Vec<Vec<Scalar>>,
    ) -> Result<()> {
        if out.len() >= self.limit {
            return Ok(());
        }
        let Some(v) = (0..self.nvars).rev().find(|&i| assigned[i].is_none()) else {
            if polys.iter().all(|f| f.is_zero()) {
                out.push(assigned.iter().map(|c| c.clone().unwrap()).collect());
            }
            return Ok(());
        };
        let ring = Ring::commutative(self.field, self.nvars);
        let lex = GroebnerBasis::ideal(&ring, MonomialOrder::Lex, polys)?;
        if lex.is_unit_ideal() {
            return Ok(());
        }
        let gens = lex.polynomials();
        let mut uni: Option<Polynomial> = None;
        for g in gens.iter().filter(|g| !g.is_zero() && g.variables().iter().all(|&w| w == v)) {
            uni = Some(match uni {
                None => g.clone(),
                Some(u) => poly_gcd(&u, g)?,
            });
        }
        let values = match uni {
            Some(u) if u.variables().is_empty() => return Ok(()),
            Some(u) => univariate_roots(&u, self.budget)?,
            None => vec![random_element(self.field, rng)],
        };
        for val in values {
            let mut sub = vec![None; self.nvars];
            sub[v] = Some(Polynomial::constant(self.field, self.nvars, val.clone()));
            let next: Vec<Polynomial> = gens.iter().map(|g| g.substitute(&sub)).filter(|g| !g.is_zero()).collect();
            assigned[v] = Some(val);
            self.solve(&next, assigned, rng, out)?;
            assigned[v] = None;
        }
        Ok(())
    }
}

/// Jacobian rank test and tangent space at `pt`.
fn tangent_at(field: &Field, gens: &[Polynomial], pt: &[Scalar], codim: usize) -> Option<Vec<Vec<Scalar>>> {
    let nv = pt.len();
    let jac: Vec<Vec<Scalar>> = gens.iter().map(|g| (0..nv).map(|v| g.derivative(v).eval(pt)).collect()).collect();
    if rank(field, &jac) != codim {
        return None;
    }
    Some(kernel(field, &jac, nv))
}

/// Up to `opts.count` distinct smooth points of `V(I)` where `I` should have
/// dimension `expected_dim`. Tries the coefficient field first, then extensions
/// of relative degree 2, 3, ... up to `opts.max_extension`; returns the best list.
pub fn sample_smooth_points(
    ideal: &GroebnerBasis,
    expected_dim: usize,
    opts: &SampleOptions,
) -> Result<Vec<SmoothPoint>> {
    let base = ideal.ring().field.clone();
    let nv = ideal.ring().nvars;
    if base.characteristic() == 0 {
        return Err(Error::OutOfScope("point sampling needs a finite field".into()));
    }
    if ideal.is_unit_ideal() || expected_dim > nv {
        return Ok(Vec::new());
    }
    let mut best: Vec<SmoothPoint> = Vec::new();
    for ext in 1..=opts.max_extension.max(1) {
        let field = if ext == 1 {
            base.clone()
        } else {
            Field::generate_extension(base.characteristic(), base.degree() * ext)?
        };
        if field.order().is_none_or(|q| q > opts.scan_budget) {
            break;
        }
        let emb = Embedding::find(&base, &field)?;
        let ring = Ring::commutative(&field, nv);
        let polys: Vec<Polynomial> = ideal.polynomials().iter().map(|f| f.map_field(&emb)).collect();
        let gb = GroebnerBasis::ideal(&ring, MonomialOrder::DegRevLex, &polys)?;
        let leads: Vec<Monomial> = gb.leading_terms().into_iter().map(|(_, m)| m).collect();
        let Some(indep) = independent_set(&leads, nv, expected_dim) else { return Ok(Vec::new()) };
        let gens = gb.polynomials();
        let avoid = opts.avoid.as_ref().map(|m| Polynomial::monomial(&field, m.clone(), field.one()));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((ext as u64) << 32));
        let solver = Solver { field: &field, nvars: nv, budget: opts.scan_budget, limit: 16 };
        let mut found: Vec<SmoothPoint> = Vec::new();
        for _ in 0..opts.attempts {
            let mut assigned: Vec<Option<Scalar>> = vec![None; nv];
            let mut sub = vec![None; nv];
            for &v in &indep {
                let c = random_element(&field, &mut rng);
                sub[v] = Some(Polynomial::constant(&field, nv, c.clone()));
                assigned[v] = Some(c);
            }
            let fiber: Vec<Polynomial> = gens.iter().map(|g| g.substitute(&sub)).collect();
            let mut sols = Vec::new();
            solver.solve(&fiber, &mut assigned, &mut rng, &mut sols)?;
            for pt in sols {
                if found.iter().any(|s| s.coords == pt) {
                    continue;
                }
                if avoid.as_ref().is_some_and(|f| field.is_zero(&f.eval(&pt))) {
                    continue;
                }
                if let Some(tangent) = tangent_at(&field, &gens, &pt, nv - expected_dim) {
                    found.push(SmoothPoint { field: field.clone(), coords: pt, tangent });
                    if found.len() >= opts.count {
                        return Ok(found);
                    }
                }
            }
        }
        if found.len() > best.len() {
            best = found;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(f: &Field, nv: usize) -> Vec<Polynomial> {
        (0..nv).map(|i| Polynomial::var(f, nv, i)).collect()
    }

    #[test]
    fn line_in_char_three() {
        let f3 = Field::prime(3).unwrap();
        let v = vars(&f3, 2); // Y, X
        let line = v[0].sub(&v[1].scale(&f3.from_i64(2)));
        let gb = GroebnerBasis::ideal(&Ring::commutative(&f3, 2), MonomialOrder::DegRevLex, &[line]).unwrap();
        let pts = sample_smooth_points(&gb, 1, &SampleOptions { count: 3, ..Default::default() }).unwrap();
        assert_eq!(pts.len(), 3);
        for p in &pts {
            assert_eq!(p.coords[0], f3.mul(&f3.from_i64(2), &p.coords[1]));
            assert_eq!(p.tangent, vec![vec![f3.from_i64(2), f3.one()]]);
        }
    }

    #[test]
    fn airy_curve_needs_an_extension() {
        let f2 = Field::prime(2).unwrap();
        let v = vars(&f2, 2);
        let curve = v[0].pow(2).add(&v[1]);
        let gb = GroebnerBasis::ideal(&Ring::commutative(&f2, 2), MonomialOrder::DegRevLex, &[curve]).unwrap();
        let pts = sample_smooth_points(&gb, 1, &SampleOptions::default()).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts[0].field.degree() > 1);
        for p in &pts {
            // tangent is along Y: kernel of (2Y, 1) = (0, 1)
            assert_eq!(p.tangent.len(), 1);
            assert!(p.field.is_zero(&p.tangent[0][1]));
        }
    }
}

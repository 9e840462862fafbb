use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::lagrangian::rees_degree;
use super::linalg::rank;
use super::points::{sample_smooth_points, SampleOptions};
use crate::arith::{central_names, Embedding, MonomialOrder, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::gb::{dimension_and_degree, poly_gcd, Budget, GroebnerBasis, HilbertPolynomial, Presentation};
use crate::pgeometry::PSupportResult;
use crate::weyl::ModulePresentation;
use crate::weylgb::{bernstein_hilbert, rees_hilbert_with};

/// Why a support component is known to be irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// Lex basis with distinct single-variable leading terms.
    Graph,
    /// `f = a v + b` with `gcd(a, b) = 1`.
    LinearInVariable(usize),
}

/// A linear-in-one-variable witness for an irreducible polynomial, if any.
pub fn linear_certificate(f: &Polynomial) -> Result<Option<usize>> {
    for v in f.variables() {
        if f.degree_in(v) != Some(1) {
            continue;
        }
        let mut a = Polynomial::zero(f.field(), f.nvars());
        let mut b = Polynomial::zero(f.field(), f.nvars());
        for (m, c) in f.terms() {
            if m.exps()[v] == 1 {
                let mut e = m.exps().to_vec();
                e[v] = 0;
                a.add_term(crate::arith::Monomial::from_slice(&e), c);
            } else {
                b.add_term(m.clone(), c);
            }
        }
        if b.is_zero() {
            if a.is_unit() {
                return Ok(Some(v));
            }
            continue;
        }
        if poly_gcd(&a, &b)?.is_unit() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// A support piece on which ranks and degrees are compared.
#[derive(Clone, Debug)]
pub struct Component {
    pub ideal: GroebnerBasis,
    pub generators: Vec<String>,
    pub degree: u64,
    pub certificate: Option<IrreducibilityCertificate>,
}

/// Components usable for per-component checks: the radical, when it is known
/// (principal case or graph form). Empty otherwise.
pub fn support_components(s: &PSupportResult) -> Result<Vec<Component>> {
    if !s.reduced || s.dim < 0 {
        return Ok(Vec::new());
    }
    let polys = s.ideal.polynomials();
    let certificate = if s.prime && polys.len() > 1 {
        Some(IrreducibilityCertificate::Graph)
    } else if polys.len() == 1 {
        if s.prime {
            Some(IrreducibilityCertificate::Graph)
        } else {
            linear_certificate(&polys[0])?.map(IrreducibilityCertificate::LinearInVariable)
        }
    } else {
        return Ok(Vec::new());
    };
    let degree = s.reduced_degree.unwrap_or(dimension_and_degree(&s.ideal)?.1);
    Ok(alloc::vec![Component { ideal: s.ideal.clone(), generators: s.generator_strings(), degree, certificate }])
}

/// Rank estimate with the number of points it was taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankEstimate {
    pub rank: u64,
    pub points: usize,
}

fn fiber_dimension(b: &Presentation, emb: &Embedding, pt: &[Scalar]) -> u64 {
    let field = &emb.target;
    let rows: Vec<Vec<Scalar>> = b
        .relations
        .iter()
        .map(|col| {
            let mut row = alloc::vec![field.zero(); b.generators];
            for (&k, f) in col {
                row[k] = f.eval_embedded(emb, pt);
            }
            row
        })
        .collect();
    (b.generators - rank(field, &rows)) as u64
}

/// Minimum over sampled smooth points `P` of the component of
/// `dim coker(presentation at P)`, summed over blocks with multiplicity.
pub fn generic_rank_estimate(
    parts: &[(Presentation, usize)],
    component: &GroebnerBasis,
    expected_dim: usize,
    opts: &SampleOptions,
) -> Result<RankEstimate> {
    let points = sample_smooth_points(component, expected_dim, opts)?;
    if points.is_empty() {
        return Err(Error::InconclusiveRank);
    }
    let base = component.ring().field.clone();
    let mut embs: BTreeMap<u32, Embedding> = BTreeMap::new();
    let mut best = u64::MAX;
    for pt in &points {
        let emb = match embs.get(&pt.field.degree()) {
            Some(e) => e.clone(),
            None => {
                let e = Embedding::find(&base, &pt.field)?;
                embs.insert(pt.field.degree(), e.clone());
                e
            }
        };
        let r: u64 = parts.iter().map(|(b, m)| *m as u64 * fiber_dimension(b, &emb, &pt.coords)).sum();
        best = best.min(r);
    }
    Ok(RankEstimate { rank: best, points: points.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBound {
    pub generators: Vec<String>,
    pub degree: u64,
    pub certified_irreducible: bool,
    pub rank: Option<u64>,
    pub rank_points: usize,
    pub degree_ok: Option<bool>,
    pub divisible: Option<bool>,
    pub rank_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateBound {
    /// `e p^n`, the multiplicity of the Rees module.
    pub mu_total: Option<u64>,
    /// Multiplicity of the Rees module in characteristic `p`, when supplied.
    pub mu_rees: Option<u64>,
    pub sum_rank_degree: Option<u64>,
    pub ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub p: u64,
    pub n: usize,
    pub e: Option<u64>,
    pub components: Vec<ComponentBound>,
    pub aggregate: AggregateBound,
    /// Scheme degree of the annihilator against its radical (`>=` expected).
    pub rees_degree: u64,
    pub pass: bool,
    /// Bound checks not run because `e` is unknown.
    pub skipped: bool,
    pub potential_counterexample: bool,
}

/// Degree and rank bounds, `p^n`-divisibility of ranks and the aggregate
/// `sum rk deg <= e p^n`. Components without a rank estimate are flagged but do
/// not fail.
pub fn bounds_report(
    e: Option<u64>,
    support: &PSupportResult,
    components: &[Component],
    ranks: &[Option<RankEstimate>],
    mu_rees: Option<u64>,
) -> Result<BoundsReport> {
    let p = support.p;
    let n = support.n;
    let pn = p.checked_pow(n as u32).ok_or_else(|| Error::Invariant("p^n overflows".into()))?;
    let mut out = Vec::new();
    let mut sum = Some(0u64);
    let mut pass = true;
    for (c, r) in components.iter().zip(ranks.iter().chain(core::iter::repeat(&None))) {
        let rank = r.map(|r| r.rank);
        let degree_ok = e.map(|e| c.degree <= e);
        let divisible = rank.map(|r| r % pn == 0);
        let rank_ok = e.zip(rank).map(|(e, r)| r <= e * pn);
        sum = sum.zip(rank).map(|(s, r)| s + r * c.degree);
        pass &= degree_ok != Some(false) && divisible != Some(false) && rank_ok != Some(false);
        out.push(ComponentBound {
            generators: c.generators.clone(),
            degree: c.degree,
            certified_irreducible: c.certificate.is_some(),
            rank,
            rank_points: r.map_or(0, |r| r.points),
            degree_ok,
            divisible,
            rank_ok,
        });
    }
    if components.is_empty() {
        sum = None;
    }
    let mu_total = e.map(|e| e * pn);
    // sum rk deg is bounded by e p^n and by the multiplicity of the Rees module
    let mut ok = mu_total.zip(sum).map(|(mu, s)| s <= mu);
    if let (Some(m), Some(s)) = (mu_rees, sum) {
        ok = Some(ok.unwrap_or(true) && s <= m);
    }
    // without per-component data the support degree still bounds by e
    if components.is_empty() {
        if let Some(e) = e {
            let d = support.reduced_degree.unwrap_or(support.degree);
            if support.reduced_degree.is_some() && d > e {
                ok = Some(false);
            }
        }
    }
    pass &= ok != Some(false);
    let rd = rees_degree(&support.annihilator)?;
    Ok(BoundsReport {
        p,
        n,
        e,
        components: out,
        aggregate: AggregateBound { mu_total, mu_rees, sum_rank_degree: sum, ok },
        rees_degree: rd,
        pass,
        skipped: e.is_none(),
        potential_counterexample: !pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalingCheck {
    Equal { rees: HilbertPolynomial },
    Mismatch { bernstein: HilbertPolynomial, rees: HilbertPolynomial },
}

impl ScalingCheck {
    pub fn is_equal(&self) -> bool {
        matches!(self, ScalingCheck::Equal { .. })
    }

    pub fn rees(&self) -> &HilbertPolynomial {
        match self {
            ScalingCheck::Equal { rees } | ScalingCheck::Mismatch { rees, .. } => rees,
        }
    }
}

/// Compares the Rees Hilbert polynomial of `(F_* M, p Gamma)` with `H_{M,Gamma}(p t)`,
/// the first from the center presentation and a commutative basis, the second
/// from a Weyl basis of `M`.
pub fn hilbert_scaling_check(pres: &ModulePresentation, p: u64, limit: usize, budget: &Budget) -> Result<ScalingCheck> {
    let h = bernstein_hilbert(pres, budget)?;
    let rees = rees_hilbert_with(pres, p, limit, budget)?;
    let scaled = h.scale_argument(p);
    if scaled.same_polynomial(&rees) {
        Ok(ScalingCheck::Equal { rees })
    } else {
        Ok(ScalingCheck::Mismatch { bernstein: scaled, rees })
    }
}

/// Formatted generators of an ideal in central coordinates.
pub fn ideal_strings(ideal: &GroebnerBasis, n: usize) -> Vec<String> {
    let names = central_names(n);
    let mut v: Vec<String> = ideal.polynomials().iter().map(|f| f.format(&names)).collect();
    v.sort();
    v
}

/// Degrevlex basis of the given generators in `2n` central variables.
pub fn central_ideal(field: &crate::arith::Field, n: usize, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    GroebnerBasis::ideal(&crate::gb::Ring::commutative(field, 2 * n), MonomialOrder::DegRevLex, gens)
}

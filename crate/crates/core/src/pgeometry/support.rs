use alloc::vec::Vec;

use super::center::{
    center_presentation_with, connection_center_presentation, CenterPresentation, DEFAULT_CENTER_LIMIT,
};
use super::connection::ConnectionSpec;
use crate::arith::{squarefree_part, Monomial, MonomialOrder, Polynomial};
use crate::error::Result;
use crate::gb::{
    annihilator, blocks, dimension_and_degree, ideal_intersection, prune, saturation, Budget, GroebnerBasis,
    Presentation, Ring,
};
use crate::weyl::ModulePresentation;

/// The p-support `V(ideal)` inside `Spec F_q[Y_1..Y_n, X_1..X_n]` (restricted to
/// the chart `F != 0` when one is set).
#[derive(Clone, Debug)]
pub struct PSupportResult {
    pub p: u64,
    pub n: usize,
    /// Degrevlex basis; the radical when `reduced` is set.
    pub ideal: GroebnerBasis,
    /// Annihilator of `F_* M` (saturated on a chart).
    pub annihilator: GroebnerBasis,
    pub reduced: bool,
    /// The ideal is known to be prime (graph form).
    pub prime: bool,
    pub dim: i64,
    /// Degree of the annihilator (scheme-theoretic).
    pub degree: u64,
    /// Degree of the radical when it was computed.
    pub reduced_degree: Option<u64>,
    pub chart: Option<Monomial>,
    /// Pruned center module whose localization at `chart` is `F_* M`.
    pub module: Presentation,
    /// Distinct connected blocks of `module` with multiplicities.
    pub blocks: Vec<(Presentation, usize)>,
}

/// Support of the cyclic-route center presentation of `pres`.
pub fn p_support(pres: &ModulePresentation, p: u64) -> Result<PSupportResult> {
    p_support_with(pres, p, DEFAULT_CENTER_LIMIT, &Budget::unlimited())
}

pub fn p_support_with(pres: &ModulePresentation, p: u64, limit: usize, budget: &Budget) -> Result<PSupportResult> {
    let cp = center_presentation_with(pres, p, limit)?;
    support_of_center_module(&cp, budget)
}

/// Support through the connection route (`r p^n` generators).
pub fn p_support_connection(c: &ConnectionSpec, p: u64) -> Result<PSupportResult> {
    p_support_connection_with(c, p, DEFAULT_CENTER_LIMIT, &Budget::unlimited())
}

pub fn p_support_connection_with(c: &ConnectionSpec, p: u64, limit: usize, budget: &Budget) -> Result<PSupportResult> {
    let cp = connection_center_presentation(c, p, limit)?;
    support_of_center_module(&cp, budget)
}

/// Annihilator of the pruned center module, saturated at the chart, with the
/// radical taken when it is principal and primality detected for graph-form bases.
pub fn support_of_center_module(cp: &CenterPresentation, budget: &Budget) -> Result<PSupportResult> {
    let ring: Ring = cp.ring().clone().with_budget(budget.clone());
    let mut pres = cp.presentation.clone();
    pres.ring = ring.clone();
    let module = prune(&pres, cp.chart.as_ref());
    let parts = blocks(&module);
    let mut ann: Option<Vec<Polynomial>> = None;
    for (b, _) in &parts {
        let a = annihilator(b)?.polynomials();
        ann = Some(match ann {
            None => a,
            Some(prev) => ideal_intersection(&ring, &prev, &a)?.polynomials(),
        });
    }
    // no generators left: the zero module
    let mut ann = ann.unwrap_or_else(|| alloc::vec![Polynomial::one(&ring.field, ring.nvars)]);
    if let Some(f) = &cp.chart {
        let fp = Polynomial::monomial(&ring.field, f.clone(), ring.field.one());
        ann = saturation(&ring, &ann, &fp)?.polynomials();
    }
    let annihilator = GroebnerBasis::ideal(&ring, MonomialOrder::DegRevLex, &ann)?;
    let (dim, degree) = dimension_and_degree(&annihilator)?;
    let gens = annihilator.polynomials();
    let mut ideal = annihilator.clone();
    let mut reduced = false;
    let mut prime = false;
    let mut reduced_degree = None;
    if annihilator.is_unit_ideal() {
        reduced = true;
    } else if gens.len() == 1 {
        let r = squarefree_part(&gens[0])?;
        ideal = GroebnerBasis::ideal(&ring, MonomialOrder::DegRevLex, &[r])?;
        reduced = true;
        reduced_degree = Some(dimension_and_degree(&ideal)?.1);
        prime = is_graph(&ring, &ideal)?;
    } else if is_graph(&ring, &annihilator)? {
        reduced = true;
        prime = true;
        reduced_degree = Some(degree);
    }
    Ok(PSupportResult {
        p: cp.p,
        n: cp.n,
        ideal,
        annihilator,
        reduced,
        prime,
        dim,
        degree,
        reduced_degree,
        chart: cp.chart.clone(),
        module,
        blocks: parts,
    })
}

/// Whether the lex basis has distinct single variables as leading terms, so the
/// ideal is the graph of a polynomial map (prime, coordinate ring polynomial).
/// Both variable orders are tried, so `X - f(Y)` counts as well as `Y - f(X)`.
pub(crate) fn is_graph(ring: &Ring, ideal: &GroebnerBasis) -> Result<bool> {
    let gens = ideal.polynomials();
    if graph_lex(ring, &gens)? {
        return Ok(true);
    }
    let nv = ring.nvars;
    let rev: Vec<usize> = (0..nv).map(|i| nv - 1 - i).collect();
    let flipped: Vec<_> = gens.iter().map(|g| g.remap(nv, &rev)).collect();
    graph_lex(ring, &flipped)
}

fn graph_lex(ring: &Ring, gens: &[Polynomial]) -> Result<bool> {
    let lex = GroebnerBasis::ideal(ring, MonomialOrder::Lex, gens)?;
    let mut seen = alloc::collections::BTreeSet::new();
    for (_, m) in lex.leading_terms() {
        let s = m.support();
        if s.len() != 1 || m.degree() != 1 || !seen.insert(s[0]) {
            return Ok(false);
        }
    }
    Ok(!lex.is_unit_ideal())
}

impl PSupportResult {
    /// Generators of `ideal`, formatted with `Y_i`, `X_i` names, sorted.
    pub fn generator_strings(&self) -> Vec<alloc::string::String> {
        let names = crate::arith::central_names(self.n);
        let mut v: Vec<_> = self.ideal.polynomials().iter().map(|f| f.format(&names)).collect();
        v.sort();
        v
    }
}

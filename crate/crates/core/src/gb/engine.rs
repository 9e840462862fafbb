//! Buchberger's algorithm for left submodules of free modules over a
//! commutative polynomial ring or a Weyl algebra.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::arith::{Field, Monomial, MonomialOrder, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::weyl::leibniz_coefficient;

/// Sparse column vector over a polynomial ring: component index to entry.
pub type Column = BTreeMap<usize, Polynomial>;

/// How left multiplication by a monomial acts on terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Commutative,
    /// Variables `0..n` are `x_i`, `n..2n` are `d_i`; products are normally ordered.
    Weyl {
        n: usize,
    },
}

/// Limits on a Gröbner computation. Exhaustion surfaces as
/// [`Error::BudgetExhausted`].
#[derive(Clone, Default)]
pub struct Budget {
    pub max_pairs: Option<usize>,
    cancel: Option<Arc<dyn Fn() -> bool + Send + Sync>>,
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget").field("max_pairs", &self.max_pairs).field("cancel", &self.cancel.is_some()).finish()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_pair_limit(mut self, n: usize) -> Self {
        self.max_pairs = Some(n);
        self
    }

    /// Installs a polled cancellation check (e.g. a deadline).
    pub fn with_cancel(mut self, f: Arc<dyn Fn() -> bool + Send + Sync>) -> Self {
        self.cancel = Some(f);
        self
    }

    pub(crate) fn check(&self, pairs: usize) -> Result<()> {
        if self.max_pairs.is_some_and(|m| pairs > m) {
            return Err(Error::BudgetExhausted);
        }
        if pairs.is_multiple_of(16) && self.cancel.as_ref().is_some_and(|f| f()) {
            return Err(Error::BudgetExhausted);
        }
        Ok(())
    }
}

/// Coefficient field, number of variables and multiplication rule.
#[derive(Clone, Debug)]
pub struct Ring {
    pub field: Field,
    pub nvars: usize,
    pub algebra: Algebra,
    pub budget: Budget,
}

impl Ring {
    pub fn commutative(field: &Field, nvars: usize) -> Self {
        Ring { field: field.clone(), nvars, algebra: Algebra::Commutative, budget: Budget::unlimited() }
    }

    /// The Weyl algebra `A_n` seen as words in `2n` commuting symbols.
    pub fn weyl(field: &Field, n: usize) -> Self {
        Ring { field: field.clone(), nvars: 2 * n, algebra: Algebra::Weyl { n }, budget: Budget::unlimited() }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra == Algebra::Commutative
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleOrder {
    /// Term over position: monomial first, then component.
    Top,
    /// Position over term.
    Pot,
}

/// Order on terms `m * e_c`. A lower component index counts as larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    pub module: ModuleOrder,
    /// Degree shifts of the basis vectors; only used by `Top`.
    pub shifts: Vec<u32>,
}

impl TermOrder {
    pub fn new(mono: MonomialOrder) -> Self {
        TermOrder { mono, module: ModuleOrder::Top, shifts: Vec::new() }
    }

    pub fn pot(mono: MonomialOrder) -> Self {
        TermOrder { mono, module: ModuleOrder::Pot, shifts: Vec::new() }
    }

    pub fn top_shifted(mono: MonomialOrder, shifts: Vec<u32>) -> Self {
        TermOrder { mono, module: ModuleOrder::Top, shifts }
    }

    pub fn shift(&self, comp: usize) -> u64 {
        self.shifts.get(comp).copied().unwrap_or(0) as u64
    }

    /// Standard degree of `m * e_comp` including the shift.
    pub fn grade(&self, comp: usize, m: &Monomial) -> u64 {
        m.degree() + self.shift(comp)
    }

    pub fn cmp(&self, c1: usize, m1: &Monomial, c2: usize, m2: &Monomial) -> Ordering {
        match self.module {
            ModuleOrder::Top => {
                let by_grade =
                    if self.shifts.is_empty() { Ordering::Equal } else { self.grade(c1, m1).cmp(&self.grade(c2, m2)) };
                by_grade.then_with(|| self.mono.cmp(m1, m2)).then_with(|| c2.cmp(&c1))
            }
            ModuleOrder::Pot => c2.cmp(&c1).then_with(|| self.mono.cmp(m1, m2)),
        }
    }

    /// Whether leading terms always carry the top (shifted) degree, so that
    /// leading-term modules have the same Hilbert function.
    pub fn is_degree_compatible(&self, rank: usize) -> bool {
        let mono_ok = self.mono.is_degree_compatible();
        match self.module {
            ModuleOrder::Top => mono_ok && (self.shifts.is_empty() || self.mono == MonomialOrder::DegRevLex),
            ModuleOrder::Pot => mono_ok && rank <= 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Module element as a term list sorted ascending under a [`TermOrder`]; the
/// leading term is last.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SVec {
    terms: Vec<Term>,
}

impl SVec {
    pub fn zero() -> Self {
        SVec { terms: Vec::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = Term>>(ring: &Ring, order: &TermOrder, it: I) -> Self {
        let mut acc: BTreeMap<(usize, Monomial), Scalar> = BTreeMap::new();
        let f = &ring.field;
        for t in it {
            match acc.get_mut(&(t.comp, t.mono.clone())) {
                Some(c) => *c = f.add(c, &t.coeff),
                None => {
                    acc.insert((t.comp, t.mono), t.coeff);
                }
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|((comp, mono), coeff)| Term { comp, mono, coeff })
            .collect();
        terms.sort_by(|a, b| order.cmp(a.comp, &a.mono, b.comp, &b.mono));
        SVec { terms }
    }

    pub fn from_poly(ring: &Ring, order: &TermOrder, f: &Polynomial) -> Self {
        Self::from_terms(ring, order, f.terms().map(|(m, c)| Term { comp: 0, mono: m.clone(), coeff: c.clone() }))
    }

    pub fn from_column(ring: &Ring, order: &TermOrder, col: &Column) -> Self {
        let it = col
            .iter()
            .flat_map(|(&comp, f)| f.terms().map(move |(m, c)| Term { comp, mono: m.clone(), coeff: c.clone() }));
        Self::from_terms(ring, order, it)
    }

    pub fn to_column(&self, ring: &Ring) -> Column {
        let mut col = Column::new();
        for t in &self.terms {
            col.entry(t.comp)
                .or_insert_with(|| Polynomial::zero(&ring.field, ring.nvars))
                .add_term(t.mono.clone(), &t.coeff);
        }
        col
    }

    /// Component-0 entry as a polynomial.
    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.comp == 0).map(|t| (t.mono.clone(), t.coeff.clone()));
        Polynomial::from_terms(&ring.field, ring.nvars, terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Components with a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.iter().map(|t| t.comp).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> SVec {
        if field.is_zero(c) {
            return SVec::zero();
        }
        SVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mono: t.mono.clone(), coeff: field.mul(&t.coeff, c) })
                .collect(),
        }
    }

    pub fn monic(&self, field: &Field) -> SVec {
        match self.lead() {
            Some(t) => self.scale(field, &field.inv(&t.coeff).unwrap()),
            None => SVec::zero(),
        }
    }

    /// Largest standard degree (plus shift) among the terms.
    pub fn sugar(&self, order: &TermOrder) -> u64 {
        self.terms.iter().map(|t| order.grade(t.comp, &t.mono)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &SVec, field: &Field, order: &TermOrder) -> SVec {
        merge(&self.terms, &other.terms, field, order, false)
    }

    pub fn sub(&self, other: &SVec, field: &Field, order: &TermOrder) -> SVec {
        merge(&self.terms, &other.terms, field, order, true)
    }

    /// Left product `coeff * mono * self`, normally ordered in the Weyl case.
    pub fn mul_term(&self, ring: &Ring, order: &TermOrder, mono: &Monomial, coeff: &Scalar) -> SVec {
        let f = &ring.field;
        match ring.algebra {
            Algebra::Commutative => SVec {
                terms: self
                    .terms
                    .iter()
                    .map(|t| Term { comp: t.comp, mono: t.mono.mul(mono), coeff: f.mul(&t.coeff, coeff) })
                    .collect(),
            },
            Algebra::Weyl { n } => {
                let d = &mono.exps()[n..];
                if d.iter().all(|&e| e == 0) {
                    return self.mul_term(&Ring::commutative(f, ring.nvars), order, mono, coeff);
                }
                let mut out = Vec::new();
                for t in &self.terms {
                    weyl_term_product(f, n, mono, &t.mono, &f.mul(&t.coeff, coeff), |m, c| {
                        out.push(Term { comp: t.comp, mono: m, coeff: c })
                    });
                }
                SVec::from_terms(ring, order, out)
            }
        }
    }

    /// Pops the leading term.
    pub(crate) fn pop_lead(&mut self) -> Option<Term> {
        self.terms.pop()
    }

    /// Re-sorts under another order.
    pub fn reorder(&self, ring: &Ring, order: &TermOrder) -> SVec {
        SVec::from_terms(ring, order, self.terms.iter().cloned())
    }

    /// Renumbers components through `map` (component `c` goes to `map[c]`).
    pub fn remap_components(&self, ring: &Ring, order: &TermOrder, map: &[usize]) -> SVec {
        SVec::from_terms(
            ring,
            order,
            self.terms.iter().map(|t| Term { comp: map[t.comp], mono: t.mono.clone(), coeff: t.coeff.clone() }),
        )
    }
}

/// Normally ordered expansion of `x^a d^b * x^al d^be` (exponents in `2n`
/// commuting slots), scaled by `coeff`, fed term by term to `emit`.
pub(crate) fn weyl_term_product(
    field: &Field,
    n: usize,
    left: &Monomial,
    right: &Monomial,
    coeff: &Scalar,
    mut emit: impl FnMut(Monomial, Scalar),
) {
    let le = left.exps();
    let re = right.exps();
    // k_i ranges over 0..=min(b_i, alpha_i)
    let limits: Vec<u32> = (0..n).map(|i| le[n + i].min(re[i])).collect();
    let mut k = alloc::vec![0u32; n];
    loop {
        let mut c = coeff.clone();
        for i in 0..n {
            if k[i] > 0 {
                c = field.mul(&c, &leibniz_coefficient(field, le[n + i], k[i], re[i] as i64));
            }
        }
        if !field.is_zero(&c) {
            let mut m = left.mul(right);
            for i in 0..n {
                m.0[i] -= k[i];
                m.0[n + i] -= k[i];
            }
            emit(m, c);
        }
        let mut i = 0;
        while i < n {
            if k[i] < limits[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
}

fn merge(a: &[Term], b: &[Term], field: &Field, order: &TermOrder, negate_b: bool) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |t: &Term| {
        if negate_b {
            Term { comp: t.comp, mono: t.mono.clone(), coeff: field.neg(&t.coeff) }
        } else {
            t.clone()
        }
    };
    while i < a.len() && j < b.len() {
        match order.cmp(a[i].comp, &a[i].mono, b[j].comp, &b[j].mono) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(nb(&b[j]));
                j += 1;
            }
            Ordering::Equal => {
                let c =
                    if negate_b { field.sub(&a[i].coeff, &b[j].coeff) } else { field.add(&a[i].coeff, &b[j].coeff) };
                if !field.is_zero(&c) {
                    out.push(Term { comp: a[i].comp, mono: a[i].mono.clone(), coeff: c });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(nb));
    SVec { terms: out }
}

struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Working state: all elements ever added, the active (minimal) ones by
/// component, and their sugars.
struct Work<'a> {
    ring: &'a Ring,
    order: &'a TermOrder,
    elems: Vec<SVec>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    by_comp: BTreeMap<usize, Vec<usize>>,
}

impl<'a> Work<'a> {
    fn find_reducer(&self, t: &Term) -> Option<usize> {
        let list = self.by_comp.get(&t.comp)?;
        let mut best: Option<usize> = None;
        for &g in list {
            if self.active[g] && self.elems[g].lead().unwrap().mono.divides(&t.mono) {
                match best {
                    Some(b) if self.elems[b].len() <= self.elems[g].len() => {}
                    _ => best = Some(g),
                }
            }
        }
        best
    }

    fn normal_form(&self, v: &SVec) -> SVec {
        nf_with(self.ring, self.order, v, |t| self.find_reducer(t).map(|g| &self.elems[g]))
    }
}

/// Full reduction of `v` against reducers chosen by `pick`.
pub(crate) fn nf_with<'b>(ring: &Ring, order: &TermOrder, v: &SVec, pick: impl Fn(&Term) -> Option<&'b SVec>) -> SVec {
    let f = &ring.field;
    let mut p = v.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(t) = p.pop_lead() {
        match pick(&t) {
            Some(g) => {
                let lg = g.lead().unwrap();
                let q = lg.mono.quotient(&t.mono).unwrap();
                let c = f.div(&t.coeff, &lg.coeff).unwrap();
                let mut tg = g.mul_term(ring, order, &q, &c);
                tg.pop_lead();
                p = p.sub(&tg, f, order);
            }
            None => rem.push(t),
        }
    }
    rem.reverse();
    SVec { terms: rem }
}

fn spoly(ring: &Ring, order: &TermOrder, a: &SVec, b: &SVec, lcm: &Monomial) -> SVec {
    let f = &ring.field;
    let la = a.lead().unwrap();
    let lb = b.lead().unwrap();
    let qa = la.mono.quotient(lcm).unwrap();
    let qb = lb.mono.quotient(lcm).unwrap();
    let ia = f.inv(&la.coeff).unwrap();
    let ib = f.inv(&lb.coeff).unwrap();
    let sa = a.mul_term(ring, order, &qa, &ia);
    let sb = b.mul_term(ring, order, &qb, &ib);
    sa.sub(&sb, f, order)
}

/// Reduced Gröbner basis of the left submodule generated by `input`.
pub(crate) fn buchberger(ring: &Ring, order: &TermOrder, input: Vec<SVec>) -> Result<Vec<SVec>> {
    let product_ok = ring.is_commutative() && input.iter().all(|v| v.terms.iter().all(|t| t.comp == 0));
    let mut w =
        Work { ring, order, elems: Vec::new(), sugar: Vec::new(), active: Vec::new(), by_comp: BTreeMap::new() };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs: Vec<SVec> = input.into_iter().filter(|v| !v.is_zero()).collect();
    inputs.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        order.cmp(x.comp, &x.mono, y.comp, &y.mono)
    });
    for v in inputs {
        let s = v.sugar(order);
        let h = w.normal_form(&v);
        if !h.is_zero() {
            let s = s.max(h.sugar(order));
            insert(&mut w, &mut pairs, h.monic(&ring.field), s, product_ok);
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        ring.budget.check(processed)?;
        let idx = select_pair(&pairs, order);
        let pr = pairs.swap_remove(idx);
        let s = spoly(ring, order, &w.elems[pr.i], &w.elems[pr.j], &pr.lcm);
        let h = w.normal_form(&s);
        if !h.is_zero() {
            insert(&mut w, &mut pairs, h.monic(&ring.field), pr.sugar, product_ok);
        }
    }
    // Interreduce the active set.
    let act: Vec<usize> = (0..w.elems.len()).filter(|&i| w.active[i]).collect();
    let mut out = Vec::with_capacity(act.len());
    for &i in &act {
        let g = &w.elems[i];
        let lead = g.lead().unwrap().clone();
        let mut tail = g.clone();
        tail.pop_lead();
        let reduced = nf_with(ring, order, &tail, |t| {
            let list = w.by_comp.get(&t.comp)?;
            list.iter()
                .copied()
                .find(|&k| k != i && w.active[k] && w.elems[k].lead().unwrap().mono.divides(&t.mono))
                .map(|k| &w.elems[k])
        });
        let mut terms = reduced.terms;
        terms.push(lead);
        out.push(SVec { terms });
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        order.cmp(x.comp, &x.mono, y.comp, &y.mono)
    });
    Ok(out)
}

fn select_pair(pairs: &[Pair], order: &TermOrder) -> usize {
    let mut best = 0;
    for (k, p) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best];
        let c = p.sugar.cmp(&b.sugar).then_with(|| order.cmp(p.comp, &p.lcm, b.comp, &b.lcm));
        let c = c.then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
        if c == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Gebauer–Möller update for a new basis element.
fn insert(w: &mut Work<'_>, pairs: &mut Vec<Pair>, h: SVec, sugar: u64, product_ok: bool) {
    let k = w.elems.len();
    let lh = h.lead().unwrap().clone();
    let comp = lh.comp;
    let order = w.order;
    let grade_h = order.grade(comp, &lh.mono);
    let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
    if let Some(list) = w.by_comp.get(&comp) {
        for &g in list {
            if !w.active[g] {
                continue;
            }
            let lg = &w.elems[g].lead().unwrap().mono;
            cands.push((g, lh.mono.lcm(lg), product_ok && lh.mono.is_coprime(lg)));
        }
    }
    let mut kept: Vec<usize> = Vec::new();
    for idx in 0..cands.len() {
        let (_, ref l, coprime) = cands[idx];
        if coprime {
            kept.push(idx);
            continue;
        }
        let dominated = cands[idx + 1..].iter().any(|c| c.1.divides(l)) || kept.iter().any(|&j| cands[j].1.divides(l));
        if !dominated {
            kept.push(idx);
        }
    }
    pairs.retain(|pr| {
        if pr.comp != comp || !lh.mono.divides(&pr.lcm) {
            return true;
        }
        let li = w.elems[pr.i].lead().unwrap().mono.lcm(&lh.mono);
        let lj = w.elems[pr.j].lead().unwrap().mono.lcm(&lh.mono);
        li == pr.lcm || lj == pr.lcm
    });
    for idx in kept {
        let (g, ref l, coprime) = cands[idx];
        if coprime {
            continue;
        }
        let lg = &w.elems[g].lead().unwrap().mono;
        let sg = w.sugar[g] + (l.degree() - lg.degree());
        let sh = sugar + (l.degree() + order.shift(comp) - grade_h);
        pairs.push(Pair { i: g, j: k, comp, lcm: l.clone(), sugar: sg.max(sh) });
    }
    if let Some(list) = w.by_comp.get(&comp) {
        for &g in list {
            if w.active[g] && lh.mono.divides(&w.elems[g].lead().unwrap().mono) {
                w.active[g] = false;
            }
        }
    }
    w.elems.push(h);
    w.sugar.push(sugar);
    w.active.push(true);
    w.by_comp.entry(comp).or_default().push(k);
}

/// A reduced Gröbner basis together with its ring and term order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    elems: Vec<SVec>,
}

impl GroebnerBasis {
    pub fn compute(ring: &Ring, order: &TermOrder, gens: Vec<SVec>) -> Result<Self> {
        if !ring.is_commutative() && !order.mono.is_degree_compatible() {
            return Err(Error::NotDegreeCompatible);
        }
        let elems = buchberger(ring, order, gens)?;
        Ok(GroebnerBasis { ring: ring.clone(), order: order.clone(), elems })
    }

    /// Basis of the ideal generated by `polys`.
    pub fn ideal(ring: &Ring, order: MonomialOrder, polys: &[Polynomial]) -> Result<Self> {
        let order = TermOrder::new(order);
        let gens = polys.iter().map(|f| SVec::from_poly(ring, &order, f)).collect();
        Self::compute(ring, &order, gens)
    }

    /// Basis of the submodule spanned by `cols`.
    pub fn module(ring: &Ring, order: &TermOrder, cols: &[Column]) -> Result<Self> {
        let gens = cols.iter().map(|c| SVec::from_column(ring, order, c)).collect();
        Self::compute(ring, order, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[SVec] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements as polynomials (ideal case), ascending by leading term.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|v| v.to_poly(&self.ring)).collect()
    }

    pub fn columns(&self) -> Vec<Column> {
        self.elems.iter().map(|v| v.to_column(&self.ring)).collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|v| {
                let t = v.lead().unwrap();
                (t.comp, t.mono.clone())
            })
            .collect()
    }

    fn reducer(&self, t: &Term) -> Option<&SVec> {
        self.elems.iter().find(|g| {
            let l = g.lead().unwrap();
            l.comp == t.comp && l.mono.divides(&t.mono)
        })
    }

    pub fn normal_form(&self, v: &SVec) -> SVec {
        nf_with(&self.ring, &self.order, v, |t| self.reducer(t))
    }

    pub fn reduce_poly(&self, f: &Polynomial) -> Polynomial {
        self.normal_form(&SVec::from_poly(&self.ring, &self.order, f)).to_poly(&self.ring)
    }

    pub fn reduce_column(&self, c: &Column) -> Column {
        self.normal_form(&SVec::from_column(&self.ring, &self.order, c)).to_column(&self.ring)
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.normal_form(&SVec::from_poly(&self.ring, &self.order, f)).is_zero()
    }

    pub fn contains_column(&self, c: &Column) -> bool {
        self.normal_form(&SVec::from_column(&self.ring, &self.order, c)).is_zero()
    }

    /// True when the basis contains a unit in component `comp`.
    pub fn has_unit_in(&self, comp: usize) -> bool {
        self.elems.iter().any(|g| {
            let l = g.lead().unwrap();
            l.comp == comp && l.mono.is_one()
        })
    }

    /// Ideal case: generated by 1.
    pub fn is_unit_ideal(&self) -> bool {
        self.has_unit_in(0)
    }

    /// Every S-pair reduces to zero against the basis.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let f = &self.ring.field;
        for (i, a) in self.elems.iter().enumerate() {
            for b in &self.elems[i + 1..] {
                let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
                if la.comp != lb.comp {
                    continue;
                }
                let l = la.mono.lcm(&lb.mono);
                let s = spoly(&self.ring, &self.order, a, b, &l);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
            // In the Weyl case the leading coefficient must also be consistent with 1.
            if !f.is_one(&a.lead().unwrap().coeff) {
                return false;
            }
        }
        true
    }

    /// Auto-reducedness: no term of any element is divisible by another leading term.
    pub fn is_reduced(&self) -> bool {
        for (i, g) in self.elems.iter().enumerate() {
            for t in g.terms() {
                for (j, h) in self.elems.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let l = h.lead().unwrap();
                    if l.comp == t.comp && l.mono.divides(&t.mono) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

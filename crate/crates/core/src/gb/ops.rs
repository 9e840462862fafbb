//! Ideal and module operations built on the Gröbner engine: gcd, intersection,
//! saturation, syzygies, annihilators and presentation pruning.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::engine::{Column, GroebnerBasis, Ring, SVec, TermOrder};
use crate::arith::{Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};

/// Finitely presented module `R^generators / span(relations)` over a
/// commutative polynomial ring.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring: Ring,
    pub generators: usize,
    pub relations: Vec<Column>,
}

impl Presentation {
    pub fn new(ring: &Ring, generators: usize, relations: Vec<Column>) -> Self {
        let mut p = Presentation { ring: ring.clone(), generators, relations };
        p.relations.retain(|c| c.values().any(|f| !f.is_zero()));
        for c in p.relations.iter_mut() {
            c.retain(|_, f| !f.is_zero());
        }
        p
    }

    /// `R / (polys)`.
    pub fn cyclic(ring: &Ring, polys: &[Polynomial]) -> Self {
        let rels = polys.iter().map(|f| BTreeMap::from([(0usize, f.clone())])).collect();
        Presentation::new(ring, 1, rels)
    }

    pub fn zero(ring: &Ring) -> Self {
        Presentation { ring: ring.clone(), generators: 0, relations: Vec::new() }
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        let mut rels = self.relations.clone();
        for c in &other.relations {
            rels.push(c.iter().map(|(&k, f)| (k + self.generators, f.clone())).collect());
        }
        Presentation::new(&self.ring, self.generators + other.generators, rels)
    }
}

fn extend_ring(ring: &Ring, extra: usize) -> Ring {
    let mut r = ring.clone();
    r.nvars += extra;
    r
}

/// Shifts variables up by `extra`, freeing the first `extra` slots.
fn lift(f: &Polynomial, extra: usize) -> Polynomial {
    let map: Vec<usize> = (0..f.nvars()).map(|i| i + extra).collect();
    f.remap(f.nvars() + extra, &map)
}

/// Inverse of [`lift`] for polynomials free of the first `extra` variables.
fn drop_front(f: &Polynomial, extra: usize) -> Polynomial {
    let n = f.nvars() - extra;
    let terms = f.terms().map(|(m, c)| (Monomial::from_slice(&m.exps()[extra..]), c.clone()));
    Polynomial::from_terms(f.field(), n, terms)
}

/// `I ∩ J` by eliminating a tag variable from `t I + (1 - t) J`.
pub fn ideal_intersection(ring: &Ring, i: &[Polynomial], j: &[Polynomial]) -> Result<GroebnerBasis> {
    let big = extend_ring(ring, 1);
    let n = ring.nvars + 1;
    let t = Polynomial::var(&ring.field, n, 0);
    let one_minus_t = Polynomial::one(&ring.field, n).sub(&t);
    let mut gens: Vec<Polynomial> = i.iter().map(|f| t.mul(&lift(f, 1))).collect();
    gens.extend(j.iter().map(|g| one_minus_t.mul(&lift(g, 1))));
    let gb = GroebnerBasis::ideal(&big, MonomialOrder::Elimination(1), &gens)?;
    let kept: Vec<Polynomial> =
        gb.polynomials().into_iter().filter(|f| f.degree_in(0).unwrap_or(0) == 0).map(|f| drop_front(&f, 1)).collect();
    GroebnerBasis::ideal(ring, MonomialOrder::DegRevLex, &kept)
}

/// `(I : f^∞)` via `I + (1 - T f)` with `T` eliminated.
pub fn saturation(ring: &Ring, i: &[Polynomial], f: &Polynomial) -> Result<GroebnerBasis> {
    let big = extend_ring(ring, 1);
    let n = ring.nvars + 1;
    let t = Polynomial::var(&ring.field, n, 0);
    let mut gens: Vec<Polynomial> = i.iter().map(|g| lift(g, 1)).collect();
    gens.push(Polynomial::one(&ring.field, n).sub(&t.mul(&lift(f, 1))));
    let gb = GroebnerBasis::ideal(&big, MonomialOrder::Elimination(1), &gens)?;
    let kept: Vec<Polynomial> =
        gb.polynomials().into_iter().filter(|g| g.degree_in(0).unwrap_or(0) == 0).map(|g| drop_front(&g, 1)).collect();
    GroebnerBasis::ideal(ring, MonomialOrder::DegRevLex, &kept)
}

/// Greatest common divisor, monic for degrevlex; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let order = MonomialOrder::DegRevLex;
    if a.is_zero() {
        return Ok(b.monic(&order));
    }
    if b.is_zero() {
        return Ok(a.monic(&order));
    }
    if a.is_unit() || b.is_unit() {
        return Ok(Polynomial::one(a.field(), a.nvars()));
    }
    if let (Some((ma, _)), Some((mb, _))) = (a.as_term(), b.as_term()) {
        return Ok(Polynomial::monomial(a.field(), ma.gcd(mb), a.field().one()));
    }
    let ring = Ring::commutative(a.field(), a.nvars());
    let lcm_gb = ideal_intersection(&ring, core::slice::from_ref(a), core::slice::from_ref(b))?;
    let lcm = lcm_gb
        .polynomials()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant("empty intersection of principal ideals".into()))?;
    let g = a.mul(b).div_exact(&lcm).ok_or_else(|| Error::Invariant("lcm does not divide the product".into()))?;
    Ok(g.monic(&order))
}

/// Tagged elimination: basis of `span(vectors) ∩ (tag part)`. Each input is a
/// pair (module part in `R^rank`, tag part in `R^tags`); returns the tag parts
/// of the elements whose module part vanishes.
fn tagged_kernel(ring: &Ring, rank: usize, rows: Vec<(Column, Column)>) -> Result<Vec<Column>> {
    let order = TermOrder::pot(MonomialOrder::DegRevLex);
    let gens: Vec<SVec> = rows
        .into_iter()
        .map(|(m, t)| {
            let mut col = m;
            for (k, f) in t {
                col.insert(rank + k, f);
            }
            SVec::from_column(ring, &order, &col)
        })
        .collect();
    let gb = GroebnerBasis::compute(ring, &order, gens)?;
    let mut out = Vec::new();
    for g in gb.elements() {
        if g.lead().unwrap().comp >= rank {
            let col = g.to_column(ring);
            out.push(col.into_iter().map(|(k, f)| (k - rank, f)).collect());
        }
    }
    Ok(out)
}

/// Generators of the syzygy module of `vectors` (each in `R^rank`), as columns
/// of length `vectors.len()`.
pub fn syzygies(ring: &Ring, rank: usize, vectors: &[Column]) -> Result<Vec<Column>> {
    let rows = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), BTreeMap::from([(i, Polynomial::one(&ring.field, ring.nvars))])))
        .collect();
    let syz = tagged_kernel(ring, rank, rows)?;
    Ok(syz)
}

/// `{ f : f e_j ∈ span(relations) } ∩ within`, where `within` generates an ideal.
fn colon_generator(pres: &Presentation, j: usize, within: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ring = &pres.ring;
    let mut rows: Vec<(Column, Column)> = pres.relations.iter().map(|c| (c.clone(), Column::new())).collect();
    for g in within {
        rows.push((BTreeMap::from([(j, g.clone())]), BTreeMap::from([(0usize, g.clone())])));
    }
    let k = tagged_kernel(ring, pres.generators, rows)?;
    Ok(k.into_iter().filter_map(|mut c| c.remove(&0)).collect())
}

/// Annihilator of the presented module, as the intersection of the colon
/// ideals `(span : e_j)`.
pub fn annihilator(pres: &Presentation) -> Result<GroebnerBasis> {
    let ring = &pres.ring;
    let mut current = vec![Polynomial::one(&ring.field, ring.nvars)];
    for j in 0..pres.generators {
        if current.is_empty() {
            break;
        }
        current = colon_generator(pres, j, &current)?;
    }
    GroebnerBasis::ideal(ring, MonomialOrder::DegRevLex, &current)
}

/// Whether the presented module is zero: every basis vector lies in the
/// relation span.
pub fn is_zero_module(pres: &Presentation) -> Result<bool> {
    if pres.generators == 0 {
        return Ok(true);
    }
    let order = TermOrder::new(MonomialOrder::DegRevLex);
    let gb = GroebnerBasis::module(&pres.ring, &order, &pres.relations)?;
    Ok((0..pres.generators).all(|c| gb.has_unit_in(c)))
}

/// Eliminates generators that occur with an invertible coefficient in some
/// relation. A coefficient is invertible when it is a nonzero constant, or a
/// term supported on the variables of `chart` (a monomial that is inverted).
pub fn prune(pres: &Presentation, chart: Option<&Monomial>) -> Presentation {
    let ring = &pres.ring;
    let field = &ring.field;
    let invertible = |f: &Polynomial| -> bool {
        match f.as_term() {
            Some((m, _)) if m.is_one() => true,
            Some((m, _)) => chart.is_some_and(|c| m.support().iter().all(|&v| c.exps()[v] > 0)),
            None => false,
        }
    };
    let mut rels: Vec<Option<Column>> = pres.relations.iter().cloned().map(Some).collect();
    // generator -> relations that mention it
    let mut occurs: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (r, c) in pres.relations.iter().enumerate() {
        for &g in c.keys() {
            occurs.entry(g).or_default().insert(r);
        }
    }
    let mut alive = vec![true; pres.generators];
    loop {
        // Prefer short relations with a constant pivot.
        let mut choice: Option<(usize, usize, usize, bool)> = None;
        for (r, c) in rels.iter().enumerate() {
            let Some(c) = c else { continue };
            for (&g, f) in c {
                if !invertible(f) {
                    continue;
                }
                let constant = f.is_unit();
                let cost = c.len() * occurs.get(&g).map_or(1, |s| s.len());
                let better = match choice {
                    None => true,
                    Some((_, _, best_cost, best_const)) => {
                        (constant && !best_const) || (constant == best_const && cost < best_cost)
                    }
                };
                if better {
                    choice = Some((r, g, cost, constant));
                }
            }
        }
        let Some((r, g, _, _)) = choice else { break };
        let pivot_row = rels[r].take().unwrap();
        let (pm, pc) = {
            let f = &pivot_row[&g];
            let (m, c) = f.as_term().unwrap();
            (m.clone(), c.clone())
        };
        let users: Vec<usize> =
            occurs.get(&g).map(|s| s.iter().copied().filter(|&u| u != r).collect()).unwrap_or_default();
        for &k in pivot_row.keys() {
            if let Some(s) = occurs.get_mut(&k) {
                s.remove(&r);
            }
        }
        for u in users {
            let Some(row) = rels[u].take() else { continue };
            // row <- pm*pc * row - row[g] * pivot_row  (kills entry g)
            let a = row[&g].clone();
            let scaled_row: Column = row.iter().map(|(&k, f)| (k, f.mul_monomial(&pm, &pc))).collect();
            let mut new_row = scaled_row;
            for (&k, f) in &pivot_row {
                let e = new_row.entry(k).or_insert_with(|| Polynomial::zero(field, ring.nvars));
                *e = e.sub(&a.mul(f));
            }
            new_row.retain(|_, f| !f.is_zero());
            // update occurrence lists
            for &k in row.keys() {
                if let Some(s) = occurs.get_mut(&k) {
                    s.remove(&u);
                }
            }
            for &k in new_row.keys() {
                occurs.entry(k).or_default().insert(u);
            }
            if !new_row.is_empty() {
                rels[u] = Some(make_primitive(new_row, chart));
            }
        }
        alive[g] = false;
        occurs.remove(&g);
    }
    // Renumber surviving generators.
    let mut index = vec![usize::MAX; pres.generators];
    let mut next = 0;
    for g in 0..pres.generators {
        if alive[g] {
            index[g] = next;
            next += 1;
        }
    }
    let mut out: Vec<Column> =
        rels.into_iter().flatten().map(|c| c.into_iter().map(|(k, f)| (index[k], f)).collect()).collect();
    out.sort();
    out.dedup();
    Presentation::new(ring, next, out)
}

/// Makes a column monic and divides out the common monomial factor supported
/// on the inverted chart variables.
fn make_primitive(c: Column, chart: Option<&Monomial>) -> Column {
    let mut g: Option<Monomial> = None;
    for f in c.values() {
        for (m, _) in f.terms() {
            g = Some(match g {
                None => m.clone(),
                Some(x) => x.gcd(m),
            });
        }
    }
    let Some(mut g) = g else { return c };
    for (v, e) in g.0.iter_mut().enumerate() {
        if !chart.is_some_and(|ch| ch.exps()[v] > 0) {
            *e = 0;
        }
    }
    let first = c.values().next().unwrap();
    let field = first.field().clone();
    let lead = first.leading(&MonomialOrder::DegRevLex).map(|(_, c)| c.clone()).unwrap();
    let inv = field.inv(&lead).unwrap();
    if g.is_one() {
        return c.into_iter().map(|(k, f)| (k, f.scale(&inv))).collect();
    }
    c.into_iter()
        .map(|(k, f)| {
            let terms: Vec<_> = f.terms().map(|(m, v)| (g.quotient(m).unwrap(), field.mul(v, &inv))).collect();
            (k, Polynomial::from_terms(&field, f.nvars(), terms))
        })
        .collect()
}

/// Splits a presentation into connected blocks (generators linked through
/// relations) and merges identical blocks, returning each distinct block with
/// its multiplicity.
pub fn blocks(pres: &Presentation) -> Vec<(Presentation, usize)> {
    let n = pres.generators;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for c in &pres.relations {
        let mut keys = c.keys();
        if let Some(&first) = keys.next() {
            for &k in keys {
                let (a, b) = (find(&mut parent, first), find(&mut parent, k));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for g in 0..n {
        let r = find(&mut parent, g);
        members.entry(r).or_default().push(g);
    }
    let mut rel_of: BTreeMap<usize, Vec<&Column>> = BTreeMap::new();
    for c in &pres.relations {
        if let Some(&k) = c.keys().next() {
            let r = find(&mut parent, k);
            rel_of.entry(r).or_default().push(c);
        }
    }
    let mut distinct: Vec<(usize, Vec<Column>, usize)> = Vec::new();
    for (root, gens) in members {
        let local: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut rels: Vec<Column> = rel_of
            .get(&root)
            .map(|v| v.iter().map(|c| c.iter().map(|(k, f)| (local[k], f.clone())).collect()).collect())
            .unwrap_or_default();
        rels.sort();
        match distinct.iter_mut().find(|(g, r, _)| *g == gens.len() && *r == rels) {
            Some(entry) => entry.2 += 1,
            None => distinct.push((gens.len(), rels, 1)),
        }
    }
    distinct.into_iter().map(|(g, r, m)| (Presentation::new(&pres.ring, g, r), m)).collect()
}

/// Two ideals are equal when each basis reduces the other's generators to zero.
pub fn ideals_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.polynomials().iter().all(|f| b.contains_poly(f)) && b.polynomials().iter().all(|f| a.contains_poly(f))
}

pub(crate) fn unit_column(ring: &Ring, k: usize) -> Column {
    BTreeMap::from([(k, Polynomial::one(&ring.field, ring.nvars))])
}

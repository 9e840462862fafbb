use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::connection::{p_curvature_matrices, ConnectionSpec};
use crate::arith::{Field, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::gb::{Column, Presentation, Ring};
use crate::weyl::{central_x, central_y, BasisKey, CentralDecomposition, ModulePresentation, WeylElement, WeylRing};

/// Default cap on the number of generators of a center presentation.
pub const DEFAULT_CENTER_LIMIT: usize = 4096;

/// `F_* M` as a module over the center `F_q[Y, X]`. On a chart the module
/// presented here localizes to `F_* M` after inverting `chart`.
#[derive(Clone, Debug)]
pub struct CenterPresentation {
    pub p: u64,
    pub n: usize,
    pub presentation: Presentation,
    /// Generator `g` is `x^a d^b e_k` for `basis[g] = (k, (a, b))`.
    pub basis: Vec<(usize, BasisKey)>,
    /// `F = f^p` as a central monomial.
    pub chart: Option<Monomial>,
}

impl CenterPresentation {
    pub fn ring(&self) -> &Ring {
        &self.presentation.ring
    }

    pub fn field(&self) -> &Field {
        &self.presentation.ring.field
    }
}

fn digits(mut v: usize, p: usize, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for d in out.iter_mut() {
        *d = (v % p) as u32;
        v /= p;
    }
    out
}

fn index_of(key: &[u32], p: usize) -> usize {
    key.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
}

pub(crate) fn chart_monomial(ring: &WeylRing) -> Option<Monomial> {
    ring.chart().map(|c| {
        let n = ring.n();
        let mut e = vec![0u32; 2 * n];
        for i in 0..n {
            e[central_x(n, i)] = c[i];
        }
        Monomial::from_slice(&e)
    })
}

fn check_char(field: &Field, p: u64) -> Result<()> {
    if field.characteristic() != p {
        return Err(Error::CharacteristicMismatch { expected: p, found: field.characteristic() });
    }
    Ok(())
}

/// Adds `X^{shift_total - dec.shift} * dec` into `col`, generator of `(a,b)` being
/// `offset + index(a,b)`.
fn accumulate(col: &mut Column, dec: &CentralDecomposition, total: &[u32], offset: usize, p: usize, nvars: usize) {
    let n = dec.n;
    let mut e = vec![0u32; nvars];
    for i in 0..n {
        e[central_x(n, i)] = total[i] - dec.x_shift[i];
    }
    let twist = Monomial::from_slice(&e);
    for ((a, b), z) in &dec.entries {
        let mut key = a.clone();
        key.extend_from_slice(b);
        let g = offset + index_of(&key, p);
        let term = z.mul_monomial(&twist, &z.field().one());
        let slot = col.entry(g).or_insert_with(|| Polynomial::zero(z.field(), nvars));
        *slot = slot.add(&term);
    }
}

fn max_shift(decs: &[&CentralDecomposition], n: usize) -> Vec<u32> {
    let mut s = vec![0u32; n];
    for d in decs {
        for i in 0..n {
            s[i] = s[i].max(d.x_shift[i]);
        }
    }
    s
}

/// Presentation of `F_* M` over the center with `s p^{2n}` generators
/// `x^a d^b e_k` and relations `x^a d^b * r` for every relation row `r`.
pub fn center_presentation(pres: &ModulePresentation, p: u64) -> Result<CenterPresentation> {
    center_presentation_with(pres, p, DEFAULT_CENTER_LIMIT)
}

pub fn center_presentation_with(pres: &ModulePresentation, p: u64, limit: usize) -> Result<CenterPresentation> {
    let field = pres.field();
    check_char(field, p)?;
    let n = pres.n();
    let pu = p as usize;
    let block = pu.checked_pow(2 * n as u32).unwrap_or(usize::MAX);
    let generators = block.saturating_mul(pres.generators);
    if generators > limit {
        return Err(Error::PrimeTooLarge { generators, limit });
    }
    let ring = &pres.ring;
    let nvars = 2 * n;
    let units: Vec<(Vec<u32>, WeylElement)> = (0..block)
        .map(|idx| {
            let key = digits(idx, pu, 2 * n);
            let (a, b): (Vec<i32>, Vec<i32>) =
                (key[..n].iter().map(|&v| v as i32).collect(), key[n..].iter().map(|&v| v as i32).collect());
            (key, WeylElement::monomial(ring, &a, &b))
        })
        .collect();
    let mut basis = Vec::with_capacity(generators);
    for k in 0..pres.generators {
        for (key, _) in &units {
            basis.push((k, (key[..n].to_vec(), key[n..].to_vec())));
        }
    }
    let mut relations = Vec::new();
    for row in &pres.relations {
        for (_, u) in &units {
            let decs: Vec<(usize, CentralDecomposition)> = row
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(k, e)| Ok((k, u.mul(e).center_decompose(p)?)))
                .collect::<Result<_>>()?;
            let total = max_shift(&decs.iter().map(|(_, d)| d).collect::<Vec<_>>(), n);
            let mut col: Column = BTreeMap::new();
            for (k, d) in &decs {
                accumulate(&mut col, d, &total, k * block, pu, nvars);
            }
            relations.push(col);
        }
    }
    let cring = Ring::commutative(field, nvars);
    Ok(CenterPresentation {
        p,
        n,
        presentation: Presentation::new(&cring, generators, relations),
        basis,
        chart: chart_monomial(ring),
    })
}

/// Connection route: generators `x^b e_k` over `F_q[X]` (`r p^n` of them) with
/// `Y_i` acting through the p-curvature `psi_i`.
pub fn connection_center_presentation(c: &ConnectionSpec, p: u64, limit: usize) -> Result<CenterPresentation> {
    let ring = c.ring();
    check_char(ring.field(), p)?;
    let n = c.n();
    let r = c.rank();
    let pu = p as usize;
    let block = pu.checked_pow(n as u32).unwrap_or(usize::MAX);
    let generators = block.saturating_mul(r);
    if generators > limit {
        return Err(Error::PrimeTooLarge { generators, limit });
    }
    let psi = p_curvature_matrices(c, p)?;
    let nvars = 2 * n;
    let field = ring.field();
    let mut relations = Vec::new();
    for i in 0..n {
        for k in 0..r {
            for idx in 0..block {
                let b = digits(idx, pu, n);
                let xb = WeylElement::monomial(ring, &b.iter().map(|&v| v as i32).collect::<Vec<_>>(), &vec![0; n]);
                // Y_i (x^b e_k) = sum_l x^b psi_{lk} e_l
                let decs: Vec<(usize, CentralDecomposition)> = (0..r)
                    .filter(|&l| !psi.matrices[i].get(l, k).is_zero())
                    .map(|l| Ok((l, xb.mul(psi.matrices[i].get(l, k)).center_decompose(p)?)))
                    .collect::<Result<_>>()?;
                let total = max_shift(&decs.iter().map(|(_, d)| d).collect::<Vec<_>>(), n);
                let mut col: Column = BTreeMap::new();
                for (l, d) in &decs {
                    // functions only: the d-part of every key is zero
                    let mut neg = d.clone();
                    for z in neg.entries.values_mut() {
                        *z = z.neg();
                    }
                    accumulate_functions(&mut col, &neg, &total, l * block, pu, nvars);
                }
                let mut e = vec![0u32; nvars];
                e[central_y(n, i)] = 1;
                for j in 0..n {
                    e[central_x(n, j)] = total[j];
                }
                let g = k * block + idx;
                let slot = col.entry(g).or_insert_with(|| Polynomial::zero(field, nvars));
                *slot = slot.add(&Polynomial::monomial(field, Monomial::from_slice(&e), field.one()));
                relations.push(col);
            }
        }
    }
    let basis = (0..r).flat_map(|k| (0..block).map(move |idx| (k, (digits(idx, pu, n), vec![0u32; n])))).collect();
    Ok(CenterPresentation {
        p,
        n,
        presentation: Presentation::new(&Ring::commutative(field, nvars), generators, relations),
        basis,
        chart: chart_monomial(ring),
    })
}

fn accumulate_functions(
    col: &mut Column,
    dec: &CentralDecomposition,
    total: &[u32],
    offset: usize,
    p: usize,
    nvars: usize,
) {
    let n = dec.n;
    let mut e = vec![0u32; nvars];
    for i in 0..n {
        e[central_x(n, i)] = total[i] - dec.x_shift[i];
    }
    let twist = Monomial::from_slice(&e);
    for ((a, _), z) in &dec.entries {
        let g = offset + index_of(a, p);
        let term = z.mul_monomial(&twist, &z.field().one());
        let slot = col.entry(g).or_insert_with(|| Polynomial::zero(z.field(), nvars));
        *slot = slot.add(&term);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::annihilator;

    #[test]
    fn sizes() {
        let f2 = Field::prime(2).unwrap();
        let r = WeylRing::new(1, &f2);
        let cp = center_presentation(&ModulePresentation::free(&r, 1), 2).unwrap();
        assert_eq!(cp.presentation.generators, 4);
        assert!(cp.presentation.relations.is_empty());
        let f3 = Field::prime(3).unwrap();
        let r = WeylRing::new(1, &f3);
        let two_x = WeylElement::x(&r, 0).scale(&f3.from_i64(2));
        let m = ModulePresentation::cyclic(&r, &[WeylElement::d(&r, 0).sub(&two_x)]).unwrap();
        let cp = center_presentation(&m, 3).unwrap();
        assert_eq!(cp.presentation.generators, 9);
        let ann = annihilator(&cp.presentation).unwrap();
        assert_eq!(ann.polynomials().len(), 1);
        assert_eq!(ann.polynomials()[0].format(&crate::arith::central_names(1)), "Y1 + X1");
        assert!(matches!(center_presentation_with(&m, 3, 8), Err(Error::PrimeTooLarge { .. })));
    }
}

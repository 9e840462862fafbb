//! Free resolutions by iterated syzygies and `Ext^l(M, R)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::engine::{Column, Ring};
use super::ops::{prune, syzygies, unit_column, Presentation};
use crate::arith::Polynomial;
use crate::error::{Error, Result};

/// `F_0 <- F_1 <- ... <- F_L`; `maps[i]` lists the images in `F_i` of the basis
/// of `F_{i+1}` and `ranks[i]` is the rank of `F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: Ring,
    pub ranks: Vec<usize>,
    pub maps: Vec<Vec<Column>>,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Checks `d_i ∘ d_{i+1} = 0` for every pair of consecutive maps.
    pub fn composes_to_zero(&self) -> bool {
        for w in self.maps.windows(2) {
            let (d, e) = (&w[0], &w[1]);
            for col in e {
                let image = apply(&self.ring, d, col);
                if image.values().any(|f| !f.is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

/// `sum_j col[j] * d[j]`.
fn apply(ring: &Ring, d: &[Column], col: &Column) -> Column {
    let mut out: Column = BTreeMap::new();
    for (&j, c) in col {
        for (&k, f) in &d[j] {
            let e = out.entry(k).or_insert_with(|| Polynomial::zero(&ring.field, ring.nvars));
            *e = e.add(&c.mul(f));
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}

/// Resolution of `coker(relations)` up to `max_len` maps (stops early at a zero
/// syzygy module). Non-minimal: generators are Gröbner bases of the syzygy
/// modules.
pub fn free_resolution(pres: &Presentation, max_len: usize) -> Result<FreeResolution> {
    let ring = pres.ring.clone();
    let mut ranks = alloc::vec![pres.generators];
    let mut maps: Vec<Vec<Column>> = Vec::new();
    let mut current = pres.relations.clone();
    let mut rank = pres.generators;
    while maps.len() < max_len && !current.is_empty() {
        ranks.push(current.len());
        maps.push(current.clone());
        let next = syzygies(&ring, rank, &current)?;
        rank = current.len();
        current = next;
    }
    if maps.len() > ring.nvars + 1 {
        return Err(Error::Invariant("resolution longer than the number of variables".into()));
    }
    Ok(FreeResolution { ring, ranks, maps })
}

/// Presentation of `Ext^l(M, R)` for `M = coker(pres)`.
pub fn ext_module(pres: &Presentation, l: usize) -> Result<Presentation> {
    let res = free_resolution(pres, l + 1)?;
    ext_from_resolution(&res, l)
}

/// `Ext^0(M, R), ..., Ext^max_l(M, R)` from a single resolution.
pub fn ext_modules(pres: &Presentation, max_l: usize) -> Result<Vec<Presentation>> {
    let res = free_resolution(pres, max_l + 1)?;
    (0..=max_l).map(|l| ext_from_resolution(&res, l)).collect()
}

fn ext_from_resolution(res: &FreeResolution, l: usize) -> Result<Presentation> {
    let ring = &res.ring;
    let Some(&r_l) = res.ranks.get(l) else {
        return Ok(Presentation::zero(ring));
    };
    if r_l == 0 {
        return Ok(Presentation::zero(ring));
    }
    // Rows of d_{l+1} and d_l as vectors in R^{r_l}.
    let kernel: Vec<Column> = match res.maps.get(l) {
        Some(d_next) => {
            let rows = transpose(d_next, r_l);
            syzygies(ring, d_next.len(), &rows)?
        }
        None => (0..r_l).map(|k| unit_column(ring, k)).collect(),
    };
    if kernel.is_empty() {
        return Ok(Presentation::zero(ring));
    }
    let image: Vec<Column> = match l.checked_sub(1).and_then(|i| res.maps.get(i)) {
        Some(d_l) => transpose(d_l, res.ranks[l - 1]),
        None => Vec::new(),
    };
    let s = kernel.len();
    let mut all = kernel;
    all.extend(image);
    let syz = syzygies(ring, r_l, &all)?;
    let rels: Vec<Column> =
        syz.into_iter().map(|c| c.into_iter().filter(|(k, _)| *k < s).collect::<Column>()).collect();
    Ok(prune(&Presentation::new(ring, s, rels), None))
}

/// Rows of the matrix whose columns are `cols` (each of length `nrows`), as
/// vectors of length `cols.len()`.
fn transpose(cols: &[Column], nrows: usize) -> Vec<Column> {
    let mut rows: Vec<Column> = (0..nrows).map(|_| BTreeMap::new()).collect();
    for (j, c) in cols.iter().enumerate() {
        for (&i, f) in c {
            rows[i].insert(j, f.clone());
        }
    }
    rows
}

use alloc::sync::Arc;
use alloc::vec::Vec;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::weyl::{Exp, ModulePresentation, WeylElement, WeylRing};

fn lift(e: &WeylElement, target: &Arc<WeylRing>) -> WeylElement {
    let (k, m) = (e.n(), target.n());
    WeylElement::from_terms(
        target,
        e.terms().map(|(key, c)| {
            let mut out: Exp = SmallVec::from_elem(0, 2 * m);
            out[..k].copy_from_slice(&key[..k]);
            out[m..m + k].copy_from_slice(&key[k..]);
            (out, c.clone())
        }),
    )
}

/// Direct image under `A^k -> A^m`, `x -> (x, 0)`: through the right module
/// `M^t[d_{k+1}, ..., d_m]`, whose left version is
/// `A_m^s / (A_m r + A_m x_j e_l : j > k)`.
pub fn direct_image_coordinate_immersion(pres: &ModulePresentation, m: usize) -> Result<ModulePresentation> {
    if pres.is_localized() {
        return Err(Error::OutOfScope("direct images need a presentation without chart".into()));
    }
    let k = pres.n();
    if m < k {
        return Err(Error::OutOfScope("the target must have at least as many coordinates".into()));
    }
    let target = WeylRing::new(m, pres.field());
    let s = pres.generators;
    let mut rows: Vec<Vec<WeylElement>> = Vec::new();
    for row in &pres.relations {
        // transposing twice is the identity on the ambient operators
        let right: Vec<WeylElement> = row.iter().map(|e| lift(&e.adjoint(), &target)).collect();
        rows.push(right.iter().map(|e| e.adjoint()).collect());
    }
    for j in k..m {
        for l in 0..s {
            let mut row: Vec<WeylElement> = (0..s).map(|_| WeylElement::zero(&target)).collect();
            row[l] = WeylElement::x(&target, j).adjoint();
            rows.push(row);
        }
    }
    ModulePresentation::new(&target, s, rows)
}

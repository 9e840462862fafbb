use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use smallvec::SmallVec;

use super::element::{Exp, WeylElement, WeylRing};
use crate::arith::{Field, Monomial, Polynomial};
use crate::error::{Error, Result};

/// Left module `A^generators / sum_j A * relations[j]`; each relation is a row
/// of length `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: Arc<WeylRing>,
    pub generators: usize,
    pub relations: Vec<Vec<WeylElement>>,
}

impl ModulePresentation {
    pub fn new(ring: &Arc<WeylRing>, generators: usize, relations: Vec<Vec<WeylElement>>) -> Result<Self> {
        for row in &relations {
            if row.len() != generators {
                return Err(Error::ContextMismatch(format!(
                    "relation row of length {} for {} generators",
                    row.len(),
                    generators
                )));
            }
            if row.iter().any(|e| e.ring() != ring) {
                return Err(Error::ContextMismatch("relation entries over a different ring".into()));
            }
        }
        let relations = relations.into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
        Ok(ModulePresentation { ring: ring.clone(), generators, relations })
    }

    /// `A / sum A * P`.
    pub fn cyclic(ring: &Arc<WeylRing>, ops: &[WeylElement]) -> Result<Self> {
        Self::new(ring, 1, ops.iter().map(|p| vec![p.clone()]).collect())
    }

    pub fn free(ring: &Arc<WeylRing>, rank: usize) -> Self {
        ModulePresentation { ring: ring.clone(), generators: rank, relations: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn is_localized(&self) -> bool {
        self.ring.chart().is_some()
    }

    /// Same presentation over another field, coefficients mapped by `g`.
    pub fn map_coefficients(&self, field: &Field, g: impl Fn(&crate::arith::Scalar) -> crate::arith::Scalar) -> Self {
        let ring = self.ring.with_field(field);
        let relations =
            self.relations.iter().map(|row| row.iter().map(|e| e.map_coefficients(&ring, &g)).collect()).collect();
        ModulePresentation { ring, generators: self.generators, relations }
    }
}

/// `x^alpha d^beta` as a commutative monomial in `2n` variables (`x` first).
pub(crate) fn to_polynomial(e: &WeylElement) -> Result<Polynomial> {
    let nv = 2 * e.n();
    let mut out = Polynomial::zero(e.field(), nv);
    for (k, c) in e.terms() {
        if k.iter().any(|&v| v < 0) {
            return Err(Error::LocalizedModule);
        }
        let exps: Vec<u32> = k.iter().map(|&v| v as u32).collect();
        out.add_term(Monomial::from_slice(&exps), c);
    }
    Ok(out)
}

pub(crate) fn from_polynomial(ring: &Arc<WeylRing>, f: &Polynomial) -> WeylElement {
    WeylElement::from_terms(
        ring,
        f.terms().map(|(m, c)| {
            let k: Exp = m.exps().iter().map(|&v| v as i32).collect::<SmallVec<_>>();
            (k, c.clone())
        }),
    )
}

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::element::{WeylElement, WeylRing};
use crate::error::{Error, Result};

/// Square matrix over a Weyl algebra, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylMatrix {
    ring: Arc<WeylRing>,
    size: usize,
    entries: Vec<WeylElement>,
}

impl WeylMatrix {
    pub fn zero(ring: &Arc<WeylRing>, size: usize) -> Self {
        WeylMatrix { ring: ring.clone(), size, entries: (0..size * size).map(|_| WeylElement::zero(ring)).collect() }
    }

    pub fn identity(ring: &Arc<WeylRing>, size: usize) -> Self {
        Self::scalar(&WeylElement::one(ring), size)
    }

    /// `e * Id`.
    pub fn scalar(e: &WeylElement, size: usize) -> Self {
        let mut m = Self::zero(e.ring(), size);
        for i in 0..size {
            m.entries[i * size + i] = e.clone();
        }
        m
    }

    pub fn from_rows(ring: &Arc<WeylRing>, rows: Vec<Vec<WeylElement>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::ContextMismatch("matrix is not square".into()));
            }
            for e in row {
                if e.ring() != ring {
                    return Err(Error::ContextMismatch("matrix entries over different rings".into()));
                }
                entries.push(e);
            }
        }
        Ok(WeylMatrix { ring: ring.clone(), size, entries })
    }

    pub fn ring(&self) -> &Arc<WeylRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &WeylElement {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: WeylElement) {
        self.entries[i * self.size + j] = e;
    }

    pub fn entries(&self) -> &[WeylElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check(&self, other: &WeylMatrix) -> Result<()> {
        if self.size != other.size || self.ring != other.ring {
            return Err(Error::ContextMismatch("matrix shapes or rings differ".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &WeylMatrix) -> Result<WeylMatrix> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(WeylMatrix { ring: self.ring.clone(), size: self.size, entries })
    }

    pub fn add(&self, other: &WeylMatrix) -> WeylMatrix {
        self.try_add(other).expect("matrix mismatch")
    }

    pub fn sub(&self, other: &WeylMatrix) -> WeylMatrix {
        let neg = WeylMatrix {
            ring: other.ring.clone(),
            size: other.size,
            entries: other.entries.iter().map(|e| e.neg()).collect(),
        };
        self.add(&neg)
    }

    pub fn try_mul(&self, other: &WeylMatrix) -> Result<WeylMatrix> {
        self.check(other)?;
        let s = self.size;
        let mut out = Self::zero(&self.ring, s);
        for i in 0..s {
            for k in 0..s {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * s + j] = out.entries[i * s + j].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &WeylMatrix) -> WeylMatrix {
        self.try_mul(other).expect("matrix mismatch")
    }

    pub fn pow(&self, mut e: u64) -> WeylMatrix {
        let mut result = Self::identity(&self.ring, self.size);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Every entry has order zero.
    pub fn is_function_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_function())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    #[test]
    fn identity_is_neutral() {
        let r = WeylRing::new(1, &Field::prime(5).unwrap());
        let (x, d) = (WeylElement::x(&r, 0), WeylElement::d(&r, 0));
        let m = WeylMatrix::from_rows(&r, alloc::vec![alloc::vec![x.clone(), d.clone()], alloc::vec![d, x]]).unwrap();
        let id = WeylMatrix::identity(&r, 2);
        assert_eq!(m.mul(&id), m);
        assert_eq!(id.mul(&m), m);
        assert_eq!(m.pow(0), id);
    }
}

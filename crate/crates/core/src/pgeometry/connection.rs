use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::weyl::{ModulePresentation, WeylElement, WeylMatrix, WeylRing};

/// Integrable connection `d + sum A_i dx_i` on the free module of rank `r`.
/// The cyclic basis satisfies `d_i e_k = sum_l (A_i)_{lk} e_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSpec {
    ring: Arc<WeylRing>,
    rank: usize,
    matrices: Vec<WeylMatrix>,
}

impl ConnectionSpec {
    /// Checks shapes, that entries are functions, and integrability.
    pub fn new(ring: &Arc<WeylRing>, rank: usize, matrices: Vec<WeylMatrix>) -> Result<Self> {
        if matrices.len() != ring.n() {
            return Err(Error::ContextMismatch(format!("{} matrices for n = {}", matrices.len(), ring.n())));
        }
        for m in &matrices {
            if m.size() != rank || m.ring() != ring {
                return Err(Error::ContextMismatch("connection matrix has the wrong shape or ring".into()));
            }
            if !m.is_function_matrix() {
                return Err(Error::OutOfScope("connection matrices must be functions".into()));
            }
        }
        let c = ConnectionSpec { ring: ring.clone(), rank, matrices };
        c.check_integrable()?;
        Ok(c)
    }

    /// Rank one: `d + sum a_i dx_i`.
    pub fn rank1(ring: &Arc<WeylRing>, a: &[WeylElement]) -> Result<Self> {
        let ms = a.iter().map(|e| WeylMatrix::scalar(e, 1)).collect();
        Self::new(ring, 1, ms)
    }

    /// `d + dg`.
    pub fn exact(ring: &Arc<WeylRing>, g: &WeylElement) -> Result<Self> {
        let a = (0..ring.n()).map(|i| g.partial(i)).collect::<Result<Vec<_>>>()?;
        Self::rank1(ring, &a)
    }

    pub fn ring(&self) -> &Arc<WeylRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, i: usize) -> &WeylMatrix {
        &self.matrices[i]
    }

    /// `d_i A_j - d_j A_i + [A_i, A_j] = 0`.
    fn check_integrable(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let (ai, aj) = (&self.matrices[i], &self.matrices[j]);
                let curv = partial_matrix(aj, i)?.sub(&partial_matrix(ai, j)?).add(&ai.mul(aj)).sub(&aj.mul(ai));
                if !curv.is_zero() {
                    return Err(Error::NotIntegrable(format!("curvature in directions {} and {}", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    /// `d_i * Id + A_i`.
    pub fn operator(&self, i: usize) -> WeylMatrix {
        WeylMatrix::scalar(&WeylElement::d(&self.ring, i), self.rank).add(&self.matrices[i])
    }

    /// The module `D^r / (d_i e_k - sum_l (A_i)_{lk} e_l)`.
    pub fn module_presentation(&self) -> ModulePresentation {
        let r = self.rank;
        let mut rows = Vec::new();
        for i in 0..self.n() {
            for k in 0..r {
                let mut row: Vec<WeylElement> = (0..r).map(|l| self.matrices[i].get(l, k).neg()).collect();
                row[k] = row[k].add(&WeylElement::d(&self.ring, i));
                rows.push(row);
            }
        }
        ModulePresentation::new(&self.ring, r, rows).expect("rows have the module's shape")
    }

    /// Same connection over another ring (field change), coefficients mapped by `g`.
    pub fn map_coefficients(
        &self,
        ring: &Arc<WeylRing>,
        g: impl Fn(&crate::arith::Scalar) -> crate::arith::Scalar,
    ) -> Result<Self> {
        let ms = self
            .matrices
            .iter()
            .map(|m| {
                let rows = (0..self.rank)
                    .map(|i| (0..self.rank).map(|j| m.get(i, j).map_coefficients(ring, &g)).collect())
                    .collect();
                WeylMatrix::from_rows(ring, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, self.rank, ms)
    }
}

fn partial_matrix(m: &WeylMatrix, i: usize) -> Result<WeylMatrix> {
    let s = m.size();
    let mut out = WeylMatrix::zero(m.ring(), s);
    for a in 0..s {
        for b in 0..s {
            out.set(a, b, m.get(a, b).partial(i)?);
        }
    }
    Ok(out)
}

/// p-curvature matrices `psi_i`, functions in `x` (with chart denominators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData {
    pub p: u64,
    pub rank: usize,
    pub matrices: Vec<WeylMatrix>,
}

impl CurvatureData {
    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(|m| m.is_zero())
    }

    pub fn commute(&self) -> bool {
        let ms = &self.matrices;
        (0..ms.len()).all(|i| (i + 1..ms.len()).all(|j| ms[i].mul(&ms[j]) == ms[j].mul(&ms[i])))
    }
}

fn check_char(ring: &WeylRing, p: u64) -> Result<()> {
    let c = ring.field().characteristic();
    if c != p {
        return Err(Error::CharacteristicMismatch { expected: p, found: c });
    }
    Ok(())
}

/// `psi_i = (d_i + A_i)^p - d_i^p`, expanded in the matrix Weyl algebra.
pub fn p_curvature_matrices(c: &ConnectionSpec, p: u64) -> Result<CurvatureData> {
    check_char(&c.ring, p)?;
    let mut matrices = Vec::with_capacity(c.n());
    for i in 0..c.n() {
        let dp = WeylMatrix::scalar(&WeylElement::d(&c.ring, i).pow(p), c.rank);
        let psi = c.operator(i).pow(p).sub(&dp);
        if !psi.is_function_matrix() {
            return Err(Error::Invariant(format!("p-curvature in direction {} has differential terms", i + 1)));
        }
        matrices.push(psi);
    }
    let data = CurvatureData { p, rank: c.rank, matrices };
    if !data.commute() {
        return Err(Error::Invariant("p-curvatures do not commute".into()));
    }
    Ok(data)
}

/// Rank one closed form `psi_i = a_i^p + d_i^{p-1}(a_i)`.
pub fn p_curvature_rank1(ring: &Arc<WeylRing>, a: &[WeylElement], p: u64) -> Result<CurvatureData> {
    check_char(ring, p)?;
    let n = ring.n();
    if a.len() != n {
        return Err(Error::ContextMismatch(format!("{} coefficients for n = {n}", a.len())));
    }
    for i in 0..n {
        for j in i + 1..n {
            if a[j].partial(i)? != a[i].partial(j)? {
                return Err(Error::NotIntegrable(format!("d{} a{} != d{} a{}", i + 1, j + 1, j + 1, i + 1)));
            }
        }
    }
    let mut matrices = Vec::with_capacity(n);
    for (i, ai) in a.iter().enumerate() {
        let mut der = ai.clone();
        for _ in 0..p - 1 {
            der = der.partial(i)?;
        }
        matrices.push(WeylMatrix::scalar(&ai.pow(p).add(&der), 1));
    }
    Ok(CurvatureData { p, rank: 1, matrices })
}

/// Least `N` with every product of `N` curvature matrices zero; `None` when not
/// nilpotent (commuting nilpotent `r x r` matrices give `N <= n (r - 1) + 1`).
pub fn nilpotency_index(psi: &CurvatureData) -> Option<u32> {
    if psi.is_zero() {
        return Some(1);
    }
    let k = psi.matrices.len();
    let bound = (k * psi.rank.saturating_sub(1) + 1) as u32;
    // products of length N, indices non-decreasing (the matrices commute)
    let mut layer: Vec<(usize, WeylMatrix)> = psi.matrices.iter().cloned().enumerate().collect();
    for len in 2..=bound {
        let mut next = Vec::new();
        for (last, m) in &layer {
            for (j, pj) in psi.matrices.iter().enumerate().skip(*last) {
                let prod = m.mul(pj);
                if !prod.is_zero() {
                    next.push((j, prod));
                }
            }
        }
        if next.is_empty() {
            return Some(len);
        }
        layer = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use alloc::vec;

    #[test]
    fn trivial_connection() {
        let r = WeylRing::new(1, &Field::prime(5).unwrap());
        let c = ConnectionSpec::rank1(&r, &[WeylElement::zero(&r)]).unwrap();
        let psi = p_curvature_matrices(&c, 5).unwrap();
        assert!(psi.is_zero());
        assert_eq!(nilpotency_index(&psi), Some(1));
    }

    #[test]
    fn nilpotent_rank_two() {
        let r = WeylRing::new(1, &Field::prime(2).unwrap());
        let x = WeylElement::x(&r, 0);
        let z = WeylElement::zero(&r);
        let a = WeylMatrix::from_rows(&r, vec![vec![z.clone(), x.pow(3)], vec![z.clone(), z.clone()]]).unwrap();
        let c = ConnectionSpec::new(&r, 2, vec![a]).unwrap();
        let psi = p_curvature_matrices(&c, 2).unwrap();
        let expect = WeylMatrix::from_rows(&r, vec![vec![z.clone(), x.pow(2)], vec![z.clone(), z]]).unwrap();
        assert_eq!(psi.matrices[0], expect);
        assert_eq!(nilpotency_index(&psi), Some(2));
    }

    #[test]
    fn rank_one_examples() {
        let f3 = Field::prime(3).unwrap();
        let r = WeylRing::new(1, &f3);
        let a = WeylElement::x(&r, 0).scale(&f3.from_i64(2));
        let closed = p_curvature_rank1(&r, core::slice::from_ref(&a), 3).unwrap();
        let brute = p_curvature_matrices(&ConnectionSpec::rank1(&r, &[a]).unwrap(), 3).unwrap();
        assert_eq!(closed, brute);
        assert_eq!(closed.matrices[0].get(0, 0).format(), "2*x1^3");
        assert_eq!(nilpotency_index(&closed), None);

        let f9 = Field::generate_extension(3, 2).unwrap();
        let rc = WeylRing::with_chart(1, &f9, vec![1]).unwrap();
        // an element t with t^2 = -1
        let t = f9.elements().unwrap().into_iter().find(|s| f9.mul(s, s) == f9.from_i64(-1)).unwrap();
        let a = WeylElement::x_pow(&rc, 0, -1).unwrap().scale(&t);
        let closed = p_curvature_rank1(&rc, core::slice::from_ref(&a), 3).unwrap();
        let expect = WeylElement::x_pow(&rc, 0, -3).unwrap().scale(&t);
        assert_eq!(closed.matrices[0].get(0, 0), &expect);
        let brute = p_curvature_matrices(&ConnectionSpec::rank1(&rc, &[a]).unwrap(), 3).unwrap();
        assert_eq!(closed, brute);
    }

    #[test]
    fn integrability_is_checked() {
        let r = WeylRing::new(2, &Field::prime(3).unwrap());
        let a = [WeylElement::x(&r, 1), WeylElement::zero(&r)];
        assert!(matches!(ConnectionSpec::rank1(&r, &a), Err(Error::NotIntegrable(_))));
        assert!(matches!(p_curvature_rank1(&r, &a, 3), Err(Error::NotIntegrable(_))));
    }
}

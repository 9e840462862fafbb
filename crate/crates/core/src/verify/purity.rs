use crate::arith::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::gb::{annihilator, blocks, ext_module, ext_modules, is_zero_module, prune, saturation, Presentation};
use crate::pgeometry::CenterPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purity {
    PureOfCodim(usize),
    /// `Ext^l(Ext^l(M, Z), Z) != 0` for this `l` other than the codimension.
    Impure(usize),
    Inconclusive,
}

/// Zero test after localizing at `chart`.
fn vanishes(pres: &Presentation, chart: Option<&Monomial>) -> Result<bool> {
    match chart {
        None => is_zero_module(pres),
        Some(m) => {
            if pres.generators == 0 {
                return Ok(true);
            }
            let ring = &pres.ring;
            let ann = annihilator(pres)?.polynomials();
            let f = Polynomial::monomial(&ring.field, m.clone(), ring.field.one());
            Ok(saturation(ring, &ann, &f)?.is_unit_ideal())
        }
    }
}

/// Purity of codimension `codim` of a module over the polynomial ring in `nvars`
/// variables: `Ext^l(Ext^l(M))` vanishes for every `l != codim`.
pub fn purity_of_module(pres: &Presentation, codim: usize, chart: Option<&Monomial>) -> Result<Purity> {
    let top = pres.ring.nvars;
    let exts = ext_modules(pres, top)?;
    for (l, e) in exts.iter().enumerate() {
        if l == codim || vanishes(e, chart)? {
            continue;
        }
        let ee = ext_module(e, l)?;
        if !vanishes(&ee, chart)? {
            return Ok(Purity::Impure(l));
        }
    }
    // the double Ext at `codim` is the pure part; it must be nonzero for M != 0
    Ok(Purity::PureOfCodim(codim))
}

/// Purity of `F_* M` with codimension `n` in `T^*`, block by block. A budget
/// overrun gives `Inconclusive`.
pub fn purity_test(cp: &CenterPresentation, n: usize) -> Result<Purity> {
    let module = prune(&cp.presentation, cp.chart.as_ref());
    purity_of_blocks(&blocks(&module), n, cp.chart.as_ref())
}

pub fn purity_of_blocks(parts: &[(Presentation, usize)], n: usize, chart: Option<&Monomial>) -> Result<Purity> {
    for (b, _) in parts {
        match purity_of_module(b, n, chart) {
            Ok(Purity::PureOfCodim(_)) => {}
            Ok(other) => return Ok(other),
            Err(Error::BudgetExhausted) => return Ok(Purity::Inconclusive),
            Err(e) => return Err(e),
        }
    }
    Ok(Purity::PureOfCodim(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::gb::Ring;

    fn cyc(ring: &Ring, polys: &[Polynomial]) -> Presentation {
        Presentation::cyclic(ring, polys)
    }

    #[test]
    fn examples_in_the_plane() {
        let f = Field::prime(3).unwrap();
        let ring = Ring::commutative(&f, 2);
        let y = Polynomial::var(&f, 2, 0);
        let x = Polynomial::var(&f, 2, 1);
        let line = cyc(&ring, core::slice::from_ref(&y));
        let point = cyc(&ring, &[x.clone(), y.clone()]);
        assert_eq!(purity_of_module(&line, 1, None).unwrap(), Purity::PureOfCodim(1));
        assert_eq!(purity_of_module(&line.direct_sum(&point), 1, None).unwrap(), Purity::Impure(2));
        assert_eq!(purity_of_module(&point, 1, None).unwrap(), Purity::Impure(2));
        assert_eq!(purity_of_module(&point, 2, None).unwrap(), Purity::PureOfCodim(2));
        // the embedded point disappears on the chart X != 0
        let chart = Monomial::var(2, 1, 1);
        assert_eq!(purity_of_module(&line.direct_sum(&point), 1, Some(&chart)).unwrap(), Purity::PureOfCodim(1));
    }
}

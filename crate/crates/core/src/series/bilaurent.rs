use std::collections::BTreeMap;

use serde::Serialize;

use super::QSeries;
use crate::error::{Error, Result};

/// A finite Laurent polynomial in `z` whose coefficients are truncated
/// series in `q`, all sharing one truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiLaurent {
    terms: BTreeMap<i64, QSeries>,
    trunc: usize,
}

impl BiLaurent {
    pub fn zero(trunc: usize) -> Self {
        BiLaurent { terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(1, 0, 0, trunc)
    }

    /// `coeff * z^z_exp * q^q_exp`.
    pub fn monomial(coeff: i64, z_exp: i64, q_exp: usize, trunc: usize) -> Self {
        let mut out = Self::zero(trunc);
        if coeff != 0 && q_exp <= trunc {
            out.terms.insert(z_exp, QSeries::monomial(coeff, q_exp, trunc));
        }
        out
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient series of `z^k`, if any term is stored there.
    pub fn z_coeff(&self, k: i64) -> Option<&QSeries> {
        self.terms.get(&k)
    }

    pub fn z_exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    fn accumulate(&mut self, k: i64, s: &QSeries) -> Result<()> {
        let slot = self.terms.entry(k).or_insert_with(|| QSeries::zero(self.trunc));
        *slot = slot.add(s)?;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.trunc = self.trunc.min(other.trunc);
        for s in out.terms.values_mut() {
            *s = s.truncate(out.trunc)?;
        }
        for (&k, s) in &other.terms {
            out.accumulate(k, &s.truncate(out.trunc)?)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut neg = other.clone();
        for s in neg.terms.values_mut() {
            *s = s.neg()?;
        }
        self.add(&neg)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(trunc);
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                let k = i.checked_add(j).ok_or(Error::Overflow("bilaurent mul"))?;
                out.accumulate(k, &a.mul(b)?)?;
            }
        }
        Ok(out)
    }
}

/// Outcome of comparing the two sides of the quintuple product identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuintupleReport {
    pub trunc: usize,
    /// Number of `(z, q)` cells compared.
    pub cells: usize,
    pub first_mismatch: Option<CellMismatch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub z_exp: i64,
    pub q_exp: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl QuintupleReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Sum side of the quintuple product:
/// `sum_n q^(3n^2+n) (z^(3n) q^(-3n) - q^(3n+1) z^(-3n-1))`.
pub(crate) fn quintuple_sum_side(trunc: usize) -> Result<BiLaurent> {
    let mut out = BiLaurent::zero(trunc);
    let bound = trunc as i64 + 1;
    for n in -bound..=bound {
        let e1 = 3 * n * n - 2 * n;
        if e1 <= trunc as i64 {
            out = out.add(&BiLaurent::monomial(1, 3 * n, e1 as usize, trunc))?;
        }
        let e2 = 3 * n * n + 4 * n + 1;
        if e2 <= trunc as i64 {
            out = out.add(&BiLaurent::monomial(-1, -3 * n - 1, e2 as usize, trunc))?;
        }
    }
    Ok(out)
}

/// Product side:
/// `(q^2;q^2)(qz;q^2)(q/z;q^2)(z^2;q^4)(q^4/z^2;q^4)`, keeping every factor
/// whose q-exponent is at most `trunc`.
pub(crate) fn quintuple_product_side(trunc: usize) -> Result<BiLaurent> {
    let factor = |z: i64, q: usize| -> Result<BiLaurent> {
        BiLaurent::one(trunc).sub(&BiLaurent::monomial(1, z, q, trunc))
    };
    let mut out = BiLaurent::one(trunc);
    for n in 0..=trunc {
        if 2 * n + 2 <= trunc {
            out = out.mul(&factor(0, 2 * n + 2)?)?;
        }
        if 2 * n < trunc {
            out = out.mul(&factor(1, 2 * n + 1)?)?;
            out = out.mul(&factor(-1, 2 * n + 1)?)?;
        }
        if 4 * n <= trunc {
            out = out.mul(&factor(2, 4 * n)?)?;
        }
        if 4 * n + 4 <= trunc {
            out = out.mul(&factor(-2, 4 * n + 4)?)?;
        }
    }
    Ok(out)
}

/// Expands both sides of the quintuple product identity to `q^trunc` and
/// compares them on every stored `(z, q)` cell.
pub fn quintuple_product_check(trunc: usize) -> Result<QuintupleReport> {
    if trunc == 0 {
        return Err(crate::error::invalid("quintuple product check needs trunc >= 1"));
    }
    let lhs = quintuple_sum_side(trunc)?;
    let rhs = quintuple_product_side(trunc)?;
    let mut zs: Vec<i64> = lhs.z_exponents().chain(rhs.z_exponents()).collect();
    zs.sort_unstable();
    zs.dedup();
    let zero = QSeries::zero(trunc);
    let mut first_mismatch = None;
    for &z in &zs {
        let a = lhs.z_coeff(z).unwrap_or(&zero);
        let b = rhs.z_coeff(z).unwrap_or(&zero);
        if let Some((q_exp, l, r)) = a.first_difference(b) {
            first_mismatch = Some(CellMismatch { z_exp: z, q_exp, lhs: l, rhs: r });
            break;
        }
    }
    Ok(QuintupleReport { trunc, cells: zs.len() * (trunc + 1), first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_case() {
        // To q^1 both sides are 1 - z^2 + (z^3 - z^-1) q.
        let lhs = quintuple_sum_side(1).unwrap();
        let rhs = quintuple_product_side(1).unwrap();
        assert_eq!(lhs, rhs);
        assert!(quintuple_product_check(1).unwrap().passed());
    }

    #[test]
    fn holds_to_q20() {
        let r = quintuple_product_check(20).unwrap();
        assert!(r.passed(), "{:?}", r.first_mismatch);
        assert!(r.cells > 0);
    }

    #[test]
    fn detects_a_broken_side() {
        let lhs = quintuple_sum_side(6).unwrap();
        let rhs = quintuple_product_side(6).unwrap();
        let bumped = rhs.add(&BiLaurent::monomial(1, 3, 5, 6)).unwrap();
        assert_ne!(lhs, bumped);
    }

    #[test]
    fn z_range_is_bounded() {
        let rhs = quintuple_product_side(30).unwrap();
        let max = rhs.z_exponents().map(i64::abs).max().unwrap();
        assert!(max <= 2 + 30);
    }

    #[test]
    fn mul_by_one() {
        let a = BiLaurent::monomial(3, -2, 1, 5).add(&BiLaurent::monomial(1, 1, 0, 5)).unwrap();
        assert_eq!(a.mul(&BiLaurent::one(5)).unwrap(), a);
        assert_eq!(a.sub(&a).unwrap(), BiLaurent::zero(5));
    }
}

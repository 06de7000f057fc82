//! Truncated power series in `q` with exact integer coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^0 ..= q^trunc` densely. Every
//! coefficient operation is overflow-checked and surfaces as
//! [`Error::Overflow`]; nothing wraps. Binary operations on series of
//! different truncation return a result truncated at the smaller order.

mod bilaurent;

pub use bilaurent::{quintuple_product_check, BiLaurent, CellMismatch, QuintupleReport};

use std::fmt;

use crate::error::{invalid, Error, Result};

/// A power series `sum c_n q^n` known exactly for `0 <= n <= trunc`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<i64>,
}

impl QSeries {
    /// The zero series known up to `q^trunc`.
    pub fn zero(trunc: usize) -> Self {
        QSeries { coeffs: vec![0; trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(1, 0, trunc)
    }

    /// `coeff * q^exp`, truncated at `trunc` (vanishes if `exp > trunc`).
    pub fn monomial(coeff: i64, exp: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if exp <= trunc {
            s.coeffs[exp] = coeff;
        }
        s
    }

    /// Builds a series from `coeffs[0..=trunc]`; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("a series needs at least the constant coefficient"));
        }
        Ok(QSeries { coeffs })
    }

    /// Builds a series from sparse `(exponent, coefficient)` terms, summing
    /// repeated exponents and dropping those above `trunc`.
    pub fn from_terms<I>(terms: I, trunc: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut s = Self::zero(trunc);
        for (e, c) in terms {
            if e <= trunc {
                s.coeffs[e] = s.coeffs[e].checked_add(c).ok_or(Error::Overflow("from_terms"))?;
            }
        }
        Ok(s)
    }

    #[inline]
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` beyond the truncation order.
    #[inline]
    pub fn get(&self, n: usize) -> Option<i64> {
        self.coeffs.get(n).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }

    /// Drops every coefficient above `q^trunc`. Raising the order is an error,
    /// since the missing coefficients are unknown.
    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        if trunc > self.trunc() {
            return Err(invalid(format!(
                "cannot extend a series known to q^{} up to q^{}",
                self.trunc(),
                trunc
            )));
        }
        Ok(QSeries { coeffs: self.coeffs[..=trunc].to_vec() })
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        let n = self.trunc().min(other.trunc());
        let coeffs = self.coeffs[..=n]
            .iter()
            .zip(&other.coeffs[..=n])
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(op)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries { coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", i64::checked_sub)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow("scale")))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries { coeffs })
    }

    /// Divides every coefficient by `k`, failing unless each division is exact.
    pub fn div_exact(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(invalid("division of a series by the integer 0"));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c % k != 0 {
                return Err(Error::NotDivisible(format!(
                    "coefficient {c} of q^{n} is not a multiple of {k}"
                )));
            }
            coeffs.push(c / k);
        }
        Ok(QSeries { coeffs })
    }

    /// Cauchy product truncated at the smaller order. Only nonzero
    /// coefficients are visited, so sparse theta factors multiply cheaply.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.trunc().min(other.trunc());
        let lhs: Vec<(usize, i64)> = nonzero_terms(&self.coeffs[..=n]);
        let rhs: Vec<(usize, i64)> = nonzero_terms(&other.coeffs[..=n]);
        let mut out = vec![0i64; n + 1];
        for &(i, a) in &lhs {
            for &(j, b) in &rhs {
                let k = i + j;
                if k > n {
                    break;
                }
                let prod = a.checked_mul(b).ok_or(Error::Overflow("mul"))?;
                out[k] = out[k].checked_add(prod).ok_or(Error::Overflow("mul"))?;
            }
        }
        Ok(QSeries { coeffs: out })
    }

    pub fn pow(&self, mut exp: u32) -> Result<Self> {
        let mut result = Self::one(self.trunc());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / divisor`, computed by the triangular recurrence
    /// `g_n = (a_n - sum_{j>=1} d_j g_{n-j}) / d_0`. Only the quotient's own
    /// coefficients appear as intermediates, so no reciprocal series is formed.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let d0 = divisor.coeffs[0];
        if d0 == 0 {
            return Err(invalid("divisor series has zero constant term"));
        }
        let n = self.trunc().min(divisor.trunc());
        let tail: Vec<(usize, i64)> =
            nonzero_terms(&divisor.coeffs[..=n]).into_iter().filter(|&(j, _)| j > 0).collect();
        let mut g = vec![0i64; n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for &(j, d) in &tail {
                if j > k {
                    break;
                }
                let t = d.checked_mul(g[k - j]).ok_or(Error::Overflow("div"))?;
                acc = acc.checked_sub(t).ok_or(Error::Overflow("div"))?;
            }
            if acc % d0 != 0 {
                return Err(Error::NotDivisible(format!("quotient coefficient of q^{k} is not integral")));
            }
            g[k] = acc / d0;
        }
        Ok(QSeries { coeffs: g })
    }

    /// Multiplies by `q^m`, keeping the truncation order.
    pub fn shift(&self, m: usize) -> Self {
        let n = self.trunc();
        let mut out = vec![0i64; n + 1];
        if m <= n {
            out[m..].copy_from_slice(&self.coeffs[..=n - m]);
        }
        QSeries { coeffs: out }
    }

    /// Substitutes `q -> q^k`. The result is exact up to
    /// `(trunc + 1) * k - 1`, which is then capped at `limit`.
    pub fn dilate(&self, k: usize, limit: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("dilation factor must be at least 1"));
        }
        let exact = (self.trunc() + 1).saturating_mul(k) - 1;
        let n = exact.min(limit);
        let mut out = vec![0i64; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let e = i * k;
            if e > n {
                break;
            }
            out[e] = c;
        }
        Ok(QSeries { coeffs: out })
    }

    /// Substitutes `q -> -q`.
    pub fn alternate(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { -c } else { c }).collect();
        QSeries { coeffs }
    }

    /// The projection `P_{t,r}`: keeps the coefficients at exponents
    /// congruent to `r` mod `t`, zeroing the rest.
    pub fn project(&self, t: usize, r: usize) -> Result<Self> {
        if t == 0 || r >= t {
            return Err(invalid(format!("projection needs 0 <= r < t, got t={t}, r={r}")));
        }
        let coeffs = self.coeffs.iter().enumerate().map(|(i, &c)| if i % t == r { c } else { 0 }).collect();
        Ok(QSeries { coeffs })
    }

    /// First exponent where `self` and `other` differ, comparing up to the
    /// smaller truncation order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, i64, i64)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(i, (&a, &b))| (i, a, b))
    }
}

fn nonzero_terms(coeffs: &[i64]) -> Vec<(usize, i64)> {
    coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

/// The truncated product `prod_{n>=0} (1 - sign * q^(r + n*step))`, i.e. the
/// q-Pochhammer symbol `(sign q^r; q^step)_inf`.
///
/// Factors whose exponent exceeds `trunc` are congruent to 1 and dropped. A
/// factor with exponent 0 contributes the constant `1 - sign`, which must not
/// vanish.
pub fn pochhammer(r: usize, sign: i64, step: usize, trunc: usize) -> Result<QSeries> {
    if sign != 1 && sign != -1 {
        return Err(invalid(format!("pochhammer sign must be +1 or -1, got {sign}")));
    }
    if step == 0 {
        return Err(invalid("pochhammer step must be positive"));
    }
    if r == 0 && sign == 1 {
        return Err(invalid("(1; q)_inf has a vanishing factor"));
    }
    let mut c = vec![0i64; trunc + 1];
    c[0] = 1;
    let mut e = r;
    while e <= trunc {
        if e == 0 {
            for v in c.iter_mut() {
                *v = v.checked_mul(1 - sign).ok_or(Error::Overflow("pochhammer"))?;
            }
        } else {
            for i in (e..=trunc).rev() {
                let t = c[i - e].checked_mul(sign).ok_or(Error::Overflow("pochhammer"))?;
                c[i] = c[i].checked_sub(t).ok_or(Error::Overflow("pochhammer"))?;
            }
        }
        e += step;
    }
    Ok(QSeries { coeffs: c })
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, m) => format!("{m}"),
                (1, 1) => "q".to_string(),
                (1, m) => format!("{m}q"),
                (e, 1) => format!("q^{e}"),
                (e, m) => format!("{m}q^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> QSeries {
        QSeries::from_coeffs(c.to_vec()).unwrap()
    }

    // Pentagonal expansion written out by hand: exponents n(3n-1)/2 for
    // n = 0, 1, -1, 2, -2 are 0, 1, 2, 5, 7.
    fn euler_by_hand(trunc: usize) -> QSeries {
        QSeries::from_terms([(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)], trunc).unwrap()
    }

    #[test]
    fn add_sub_scale() {
        assert_eq!(s(&[1, 1]).add(&s(&[1, -1])).unwrap(), s(&[2, 0]));
        assert_eq!(s(&[1, 0, 1]).scale(3).unwrap(), s(&[3, 0, 3]));
        assert!(s(&[1, 1]).sub(&s(&[1, 1])).unwrap().is_zero());
        assert_eq!(s(&[1, 2, 3]).neg().unwrap(), s(&[-1, -2, -3]));
    }

    #[test]
    fn mixed_truncation_takes_minimum() {
        let r = s(&[1, 1, 1, 1]).add(&s(&[1, 1])).unwrap();
        assert_eq!(r.trunc(), 1);
        let r = s(&[1, 1, 1, 1]).mul(&s(&[1, 1])).unwrap();
        assert_eq!(r, s(&[1, 2]));
    }

    #[test]
    fn geometric_inverse() {
        let geo = s(&[1; 12]);
        let r = s(&[1, -1]).mul(&geo).unwrap();
        assert_eq!(r.trunc(), 1);
        let one_minus_q = QSeries::from_terms([(0, 1), (1, -1)], 11).unwrap();
        assert_eq!(one_minus_q.mul(&geo).unwrap(), QSeries::one(11));
    }

    #[test]
    fn euler_squared_to_q4() {
        // Convolving 1-q-q^2+0q^3+0q^4 with itself by hand.
        let e = euler_by_hand(4);
        assert_eq!(e.mul(&e).unwrap(), s(&[1, -2, -1, 2, 1]));
    }

    #[test]
    fn mul_by_zero() {
        assert!(euler_by_hand(9).mul(&QSeries::zero(9)).unwrap().is_zero());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = s(&[i64::MAX, 1]);
        assert_eq!(big.add(&big), Err(Error::Overflow("add")));
        assert_eq!(big.mul(&big), Err(Error::Overflow("mul")));
        assert_eq!(big.scale(2), Err(Error::Overflow("scale")));
    }

    #[test]
    fn dilate_cases() {
        let d = s(&[1, 1]).dilate(3, 100).unwrap();
        assert_eq!(d.trunc(), 5);
        assert_eq!(d, s(&[1, 0, 0, 1, 0, 0]));
        let e = euler_by_hand(9);
        assert_eq!(e.dilate(1, 9).unwrap(), e);
        assert_eq!(s(&[1, 1]).dilate(4, 2).unwrap(), s(&[1, 0, 0]));
        assert!(s(&[1]).dilate(0, 4).is_err());
    }

    #[test]
    fn alternate_and_project() {
        assert_eq!(s(&[1, 1, 1]).alternate(), s(&[1, -1, 1]));
        assert_eq!(s(&[1, 1, 1, 1]).project(2, 1).unwrap(), s(&[0, 1, 0, 1]));
        assert!(s(&[1, 1]).project(2, 2).is_err());
        assert!(s(&[1, 1]).project(0, 0).is_err());
    }

    #[test]
    fn shift_drops_overflowing_terms() {
        assert_eq!(s(&[1, 2, 3]).shift(1), s(&[0, 1, 2]));
        assert!(s(&[1, 2, 3]).shift(3).is_zero());
    }

    #[test]
    fn division() {
        let e = euler_by_hand(7);
        let e2 = e.mul(&e).unwrap();
        assert_eq!(e2.div(&e).unwrap(), e);
        assert!(s(&[1, 1]).div(&s(&[0, 1])).is_err());
        assert!(matches!(s(&[1, 1]).div(&s(&[2, 1])), Err(Error::NotDivisible(_))));
        assert!(matches!(s(&[2, 3]).div_exact(2), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(1, 1, 1, 7).unwrap(), euler_by_hand(7));
        assert_eq!(pochhammer(2, -1, 2, 4).unwrap(), s(&[1, 0, 1, 0, 1]));
        assert!(pochhammer(0, 1, 1, 4).is_err());
        assert!(pochhammer(1, 2, 1, 4).is_err());
        // (-1; q)_inf = 2 (-q; q)_inf
        let a = pochhammer(0, -1, 1, 10).unwrap();
        let b = pochhammer(1, -1, 1, 10).unwrap().scale(2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pentagonal_pattern() {
        let n = 2000;
        let e = pochhammer(1, 1, 1, n).unwrap();
        let mut expected = vec![0i64; n + 1];
        for k in -40i64..=40 {
            let p = k * (3 * k + 1) / 2;
            if (0..=n as i64).contains(&p) {
                expected[p as usize] = if k % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(e.coeffs(), &expected[..]);
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -2, 0, 3]).to_string(), "1-2q+3q^3 + O(q^4)");
        assert_eq!(QSeries::zero(2).to_string(), "0 + O(q^3)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn series(trunc: usize) -> impl Strategy<Value = QSeries> {
            prop::collection::vec(-1000i64..1000, trunc + 1).prop_map(|c| QSeries::from_coeffs(c).unwrap())
        }

        proptest! {
            #[test]
            fn ring_laws(a in series(24), b in series(24), c in series(24)) {
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn projections_partition(a in series(40), t in 1usize..9) {
                let mut total = QSeries::zero(40);
                for r in 0..t {
                    let p = a.project(t, r).unwrap();
                    prop_assert_eq!(p.project(t, r).unwrap(), p.clone());
                    total = total.add(&p).unwrap();
                }
                prop_assert_eq!(total, a.clone());
                prop_assert_eq!(a.alternate().alternate(), a);
            }

            #[test]
            fn dilation_is_supported_on_multiples(a in series(15), k in 1usize..6) {
                let d = a.dilate(k, 60).unwrap();
                prop_assert_eq!(d.project(k, 0).unwrap(), d);
            }

            #[test]
            fn division_inverts_multiplication(a in series(20), mut d in series(20)) {
                let mut c = d.clone().into_coeffs();
                c[0] = 1;
                d = QSeries::from_coeffs(c).unwrap();
                let prod = a.mul(&d).unwrap();
                prop_assert_eq!(prod.div(&d).unwrap(), a);
            }
        }
    }
}

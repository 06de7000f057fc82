//! Kronecker symbols, factorization, and the closed forms for the number of
//! representations of a square by the class-number-one diagonal forms.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::lattice::TernaryForm;

/// The Kronecker symbol `(a/n)`. Agrees with the Jacobi symbol for odd
/// positive `n` and vanishes whenever `gcd(a, n) > 1`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n as i128;
    let a = a as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        // (a/2) is 1 for a ≡ ±1 (mod 8) and -1 for a ≡ ±3 (mod 8)
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi_odd(a.rem_euclid(n), n)
}

/// Jacobi symbol for odd positive `n` and `0 <= a < n`.
fn jacobi_odd(mut a: i128, mut n: i128) -> i8 {
    let mut result: i8 = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `n = prod p^v` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of `p` in `n` (zero when `p` does not divide `n`).
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors.iter().find(|f| f.0 == p).map_or(0, |f| f.1)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.0)
    }
}

/// Upper end of the supported factorization range.
pub const FACTORIZE_MAX: u64 = i64::MAX as u64;

/// Factors `n` by trial division over a 2-3-5 wheel.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 || n > FACTORIZE_MAX {
        return Err(invalid(format!("factorize needs 1 <= n <= 2^63 - 1, got {n}")));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut v = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            v += 1;
        }
        if v > 0 {
            factors.push((p, v));
        }
    };
    for p in [2, 3, 5] {
        take(p, &mut rest);
    }
    const GAPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= rest {
        take(p, &mut rest);
        p += GAPS[i];
        i = (i + 1) % GAPS.len();
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// `1 + p + ... + p^v`, by summation.
fn geometric_sum(p: u64, v: u32) -> Result<u64> {
    let mut total = 0u64;
    let mut term = 1u64;
    for i in 0..=v {
        total = total.checked_add(term).ok_or(Error::Overflow("geometric sum"))?;
        if i < v {
            term = term.checked_mul(p).ok_or(Error::Overflow("geometric sum"))?;
        }
    }
    Ok(total)
}

/// The local factor `(1 - p^(v+1))/(1 - p) - chi(p) (1 - p^v)/(1 - p)`.
fn local_factor(p: u64, v: u32, chi: i8) -> Result<u64> {
    let full = geometric_sum(p, v)?;
    let short = geometric_sum(p, v - 1)?;
    let value = match chi {
        1 => full - short,
        -1 => full.checked_add(short).ok_or(Error::Overflow("local factor"))?,
        _ => full,
    };
    Ok(value)
}

/// The forms whose square-representation counts have a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HurwitzForm {
    /// `x^2 + y^2 + z^2`
    F111,
    /// `x^2 + y^2 + 2z^2`
    F112,
    /// `x^2 + y^2 + 3z^2`
    F113,
    /// The genus pair `x^2 + 3y^2 + 36z^2` and `3x^2 + 4y^2 + 9z^2`, summed.
    Pair,
}

impl HurwitzForm {
    pub const ALL: [HurwitzForm; 4] =
        [HurwitzForm::F111, HurwitzForm::F112, HurwitzForm::F113, HurwitzForm::Pair];

    /// The lattice forms whose counts are summed.
    pub fn forms(&self) -> Vec<TernaryForm> {
        match self {
            HurwitzForm::F111 => vec![TernaryForm::diagonal(1, 1, 1)],
            HurwitzForm::F112 => vec![TernaryForm::diagonal(1, 1, 2)],
            HurwitzForm::F113 => vec![TernaryForm::diagonal(1, 1, 3)],
            HurwitzForm::Pair => {
                vec![TernaryForm::diagonal(1, 3, 36), TernaryForm::diagonal(3, 4, 9)]
            }
        }
    }

    /// Factor by which the closed form is normalized (6, 4, 4, 2).
    pub fn normalizer(&self) -> u64 {
        match self {
            HurwitzForm::F111 => 6,
            HurwitzForm::F112 | HurwitzForm::F113 => 4,
            HurwitzForm::Pair => 2,
        }
    }
}

impl fmt::Display for HurwitzForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HurwitzForm::F111 => "F111",
            HurwitzForm::F112 => "F112",
            HurwitzForm::F113 => "F113",
            HurwitzForm::Pair => "PAIR",
        };
        f.write_str(s)
    }
}

impl FromStr for HurwitzForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F111" => Ok(HurwitzForm::F111),
            "F112" => Ok(HurwitzForm::F112),
            "F113" => Ok(HurwitzForm::F113),
            "PAIR" | "PAIR_1_3_36_AND_3_4_9" => Ok(HurwitzForm::Pair),
            _ => Err(invalid(format!("unknown Hurwitz form `{s}`"))),
        }
    }
}

/// The normalized closed form (count divided by [`HurwitzForm::normalizer`])
/// for the square `n^2`.
pub fn hurwitz_normalized(id: HurwitzForm, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(invalid("Hurwitz formulas need n >= 1"));
    }
    let fac = factorize(n)?;
    let a = fac.valuation(2);
    let b = fac.valuation(3);
    let (discr, skip3) = match id {
        HurwitzForm::F111 => (-1, false),
        HurwitzForm::F112 => (-2, false),
        HurwitzForm::F113 | HurwitzForm::Pair => (-3, true),
    };
    let mut value: u64 = match id {
        HurwitzForm::F111 => 1,
        HurwitzForm::F112 => {
            if a == 0 {
                1
            } else {
                3
            }
        }
        HurwitzForm::F113 => (1u64 << (a + 1)) - 1,
        HurwitzForm::Pair => {
            let two_part = 3 * (1u64 << a) - 2;
            two_part * if b == 0 { 1 } else { 2 }
        }
    };
    for &(p, v) in fac.factors() {
        if p == 2 || (skip3 && p == 3) {
            continue;
        }
        let chi = kronecker(discr, p as i64);
        value = value.checked_mul(local_factor(p, v, chi)?).ok_or(Error::Overflow("hurwitz product"))?;
    }
    Ok(value)
}

/// Predicted total number of representations of `n^2` (summed over both
/// forms for [`HurwitzForm::Pair`]).
pub fn hurwitz_rep_of_square(id: HurwitzForm, n: u64) -> Result<u64> {
    hurwitz_normalized(id, n)?.checked_mul(id.normalizer()).ok_or(Error::Overflow("hurwitz count"))
}

/// Prime-divisor conditions that decide equality in the square-count
/// inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EqualityKind {
    /// every prime divisor ≡ 1 (mod 4); `n` odd
    MMod4,
    /// every prime divisor ≡ 1 or 3 (mod 8); `n` odd
    EMod8,
    /// every prime divisor ≡ 1 (mod 3); `gcd(n, 3) = 1`
    WMod3,
}

impl fmt::Display for EqualityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EqualityKind::MMod4 => "M_MOD4",
            EqualityKind::EMod8 => "E_MOD8",
            EqualityKind::WMod3 => "W_MOD3",
        };
        f.write_str(s)
    }
}

/// Whether every prime divisor of `n` satisfies `kind`'s congruence; true
/// for `n = 1`.
pub fn equality_class(kind: EqualityKind, n: u64) -> Result<bool> {
    let ok_domain = match kind {
        EqualityKind::MMod4 | EqualityKind::EMod8 => n % 2 == 1,
        EqualityKind::WMod3 => !n.is_multiple_of(3),
    };
    if n == 0 || !ok_domain {
        return Err(invalid(format!("{kind} is not defined for n = {n}")));
    }
    generated_by(kind, n)
}

/// Like [`equality_class`] but without the parity precondition: false when
/// some prime divisor (including 2 or 3) fails the congruence.
pub(crate) fn generated_by(kind: EqualityKind, n: u64) -> Result<bool> {
    let fac = factorize(n)?;
    let ok = fac.primes().all(|p| match kind {
        EqualityKind::MMod4 => p % 4 == 1,
        EqualityKind::EMod8 => p % 8 == 1 || p % 8 == 3,
        EqualityKind::WMod3 => p % 3 == 1,
    });
    Ok(ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum InequalityKind {
    Hc1,
    Hc2,
    Hc3,
    Hc4,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 4] =
        [InequalityKind::Hc1, InequalityKind::Hc2, InequalityKind::Hc3, InequalityKind::Hc4];

    pub fn hurwitz_form(&self) -> HurwitzForm {
        match self {
            InequalityKind::Hc1 => HurwitzForm::F111,
            InequalityKind::Hc2 => HurwitzForm::F112,
            InequalityKind::Hc3 => HurwitzForm::F113,
            InequalityKind::Hc4 => HurwitzForm::Pair,
        }
    }

    /// Hc3 uses the same mod-3 criterion as Hc4.
    pub fn equality_kind(&self) -> EqualityKind {
        match self {
            InequalityKind::Hc1 => EqualityKind::MMod4,
            InequalityKind::Hc2 => EqualityKind::EMod8,
            InequalityKind::Hc3 | InequalityKind::Hc4 => EqualityKind::WMod3,
        }
    }
}

impl FromStr for InequalityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "HC1" => Ok(InequalityKind::Hc1),
            "HC2" => Ok(InequalityKind::Hc2),
            "HC3" => Ok(InequalityKind::Hc3),
            "HC4" => Ok(InequalityKind::Hc4),
            _ => Err(invalid(format!("unknown inequality `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub n: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub equality_predicted: bool,
    pub equality_observed: bool,
}

impl InequalityReport {
    /// `lhs >= rhs` and equality exactly when predicted.
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs && self.equality_observed == self.equality_predicted
    }
}

/// Evaluates one of the four lower bounds `normalized count of n^2 >= n`.
pub fn inequality_report(kind: InequalityKind, n: u64) -> Result<InequalityReport> {
    let equality_predicted = equality_class(kind.equality_kind(), n)?;
    let lhs = hurwitz_normalized(kind.hurwitz_form(), n)?;
    Ok(InequalityReport { kind, n, lhs, rhs: n, equality_predicted, equality_observed: lhs == n })
}

/// `Some(r)` when `n = r^2`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Legendre symbol by Euler's criterion, for an odd prime `p`.
    fn euler_criterion(a: i64, p: i64) -> i8 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        let mut r = 1i128;
        let mut base = a as i128;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as i128;
            }
            base = base * base % p as i128;
            e >>= 1;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-1, 5), 1);
        assert_eq!(kronecker(-1, 7), -1);
        assert_eq!(kronecker(-2, 3), 1);
        assert_eq!(kronecker(-4, 6), 0);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(-5, -1), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        let primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97, 101, 8191];
        for &p in &primes {
            for a in -60..=60 {
                assert_eq!(kronecker(a, p), euler_criterion(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(8191).unwrap().factors(), &[(8191, 1)]);
        assert_eq!(factorize(49).unwrap().factors(), &[(7, 2)]);
        assert_eq!(factorize(999_983 * 1_000_003).unwrap().factors(), &[(999_983, 1), (1_000_003, 1)]);
        assert!(factorize(0).is_err());
        assert!(factorize(u64::MAX).is_err());
    }

    #[test]
    fn factorization_reconstructs() {
        for n in 1..3000u64 {
            let f = factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, v)| p.pow(v)).product();
            assert_eq!(prod, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            for p in f.primes() {
                assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
            }
        }
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz_rep_of_square(HurwitzForm::F111, 5).unwrap(), 30);
        assert_eq!(hurwitz_rep_of_square(HurwitzForm::F112, 3).unwrap(), 12);
        assert_eq!(hurwitz_rep_of_square(HurwitzForm::F113, 2).unwrap(), 12);
        assert_eq!(hurwitz_rep_of_square(HurwitzForm::Pair, 2).unwrap(), 8);
        assert_eq!(hurwitz_rep_of_square(HurwitzForm::F111, 1).unwrap(), 6);
        assert!(hurwitz_rep_of_square(HurwitzForm::F111, 0).is_err());
    }

    #[test]
    fn hurwitz_matches_small_lattice_counts() {
        for id in HurwitzForm::ALL {
            for n in 1..=20u64 {
                let lattice: u64 = id.forms().iter().map(|f| f.rep_count((n * n) as i64).unwrap()).sum();
                assert_eq!(hurwitz_rep_of_square(id, n).unwrap(), lattice, "{id} n={n}");
            }
        }
    }

    #[test]
    fn equality_classes() {
        assert!(equality_class(EqualityKind::MMod4, 25).unwrap());
        assert!(!equality_class(EqualityKind::MMod4, 9).unwrap());
        assert!(equality_class(EqualityKind::EMod8, 33).unwrap());
        assert!(equality_class(EqualityKind::WMod3, 49).unwrap());
        assert!(equality_class(EqualityKind::WMod3, 1).unwrap());
        assert!(equality_class(EqualityKind::MMod4, 4).is_err());
        assert!(equality_class(EqualityKind::WMod3, 9).is_err());
    }

    #[test]
    fn inequality_examples() {
        let r = inequality_report(InequalityKind::Hc1, 5).unwrap();
        assert_eq!((r.lhs, r.rhs, r.equality_observed, r.equality_predicted), (5, 5, true, true));
        let r = inequality_report(InequalityKind::Hc2, 3).unwrap();
        assert_eq!((r.lhs, r.equality_observed), (3, true));
        let r = inequality_report(InequalityKind::Hc1, 3).unwrap();
        assert_eq!((r.lhs, r.equality_observed, r.equality_predicted), (5, false, false));
        assert!(r.holds());
        assert!(inequality_report(InequalityKind::Hc1, 2).is_err());
        assert!(inequality_report(InequalityKind::Hc3, 3).is_err());
    }

    #[test]
    fn normalized_value_is_multiplicative() {
        for kind in InequalityKind::ALL {
            let id = kind.hurwitz_form();
            let valid = |n: u64| match kind {
                InequalityKind::Hc1 | InequalityKind::Hc2 => n % 2 == 1,
                _ => !n.is_multiple_of(6) && !n.is_multiple_of(2) && !n.is_multiple_of(3),
            };
            for m in 1..60u64 {
                for n in 1..60u64 {
                    if !valid(m) || !valid(n) || gcd(m, n) != 1 {
                        continue;
                    }
                    let mn = hurwitz_normalized(id, m * n).unwrap();
                    let prod = hurwitz_normalized(id, m).unwrap() * hurwitz_normalized(id, n).unwrap();
                    assert_eq!(mn, prod, "{kind:?} m={m} n={n}");
                }
            }
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn sqrt_helper() {
        assert_eq!(exact_sqrt(0), Some(0));
        assert_eq!(exact_sqrt(49), Some(7));
        assert_eq!(exact_sqrt(50), None);
    }
}

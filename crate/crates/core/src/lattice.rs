//! Positive binary and ternary quadratic forms and their theta series.
//!
//! Enumeration never uses floating point. For a ternary form the outer
//! variable `z` is bounded by completing the square over the rationals,
//! `z^2 <= N (4ab - f^2) / disc`; for each `z` the remaining binary problem is
//! solved with integer square roots rounded outward, and every candidate
//! point is evaluated exactly before it is counted.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::series::QSeries;

/// The form `a x^2 + b y^2 + c z^2 + d yz + e xz + f xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TernaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

/// The form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Integer interval containing every `t` with `qa t^2 + qb t + qc <= 0`
/// (`qa > 0`). The ends are rounded outward, so callers must still test
/// each candidate exactly.
fn quadratic_window(qa: i128, qb: i128, qc: i128) -> Option<(i64, i64)> {
    debug_assert!(qa > 0);
    let disc = qb * qb - 4 * qa * qc;
    if disc < 0 {
        return None;
    }
    let s = (disc as u128).isqrt() as i128;
    let lo = (-qb - s - 1).div_euclid(2 * qa);
    let hi = -((qb - s - 1).div_euclid(2 * qa));
    Some((lo as i64, hi as i64))
}

/// Visits every integer pair with
/// `v = a x^2 + b xy + c y^2 + d x + e y <= bound`, where `a > 0` and
/// `4ac - b^2 > 0`, passing `(x, y, v)`.
pub(crate) fn for_each_binary_point(
    (a, b, c, d, e): (i64, i64, i64, i64, i64),
    bound: i64,
    mut visit: impl FnMut(i64, i64, i64),
) {
    let (a, b, c, d, e, n) = (a as i128, b as i128, c as i128, d as i128, e as i128, bound as i128);
    let Some((ylo, yhi)) = quadratic_window(4 * a * c - b * b, 4 * a * e - 2 * b * d, -d * d - 4 * a * n)
    else {
        return;
    };
    for y in ylo..=yhi {
        let y = y as i128;
        let lin = b * y + d;
        let rest = c * y * y + e * y;
        let Some((xlo, xhi)) = quadratic_window(a, lin, rest - n) else {
            continue;
        };
        for x in xlo..=xhi {
            let x = x as i128;
            let v = a * x * x + lin * x + rest;
            if v <= n {
                visit(x as i64, y as i64, v as i64);
            }
        }
    }
}

impl TernaryForm {
    pub const fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Self {
        TernaryForm { a, b, c, d, e, f }
    }

    pub const fn diagonal(a: i64, b: i64, c: i64) -> Self {
        Self::new(a, b, c, 0, 0, 0)
    }

    fn wide(&self) -> [i128; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f].map(i128::from)
    }

    /// `4abc + def - ad^2 - be^2 - cf^2`, half the determinant of the
    /// doubled Gram matrix.
    pub fn discriminant(&self) -> i128 {
        let [a, b, c, d, e, f] = self.wide();
        4 * a * b * c + d * e * f - a * d * d - b * e * e - c * f * f
    }

    /// Sylvester's criterion on the doubled Gram matrix.
    pub fn is_positive_definite(&self) -> bool {
        let [a, b, _, _, _, f] = self.wide();
        a > 0 && 4 * a * b - f * f > 0 && self.discriminant() > 0
    }

    pub fn value(&self, x: i64, y: i64, z: i64) -> i64 {
        let [a, b, c, d, e, f] = self.wide();
        let (x, y, z) = (x as i128, y as i128, z as i128);
        (a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y) as i64
    }

    /// The form `Q(s1 x, s2 y, s3 z)`.
    pub fn scaled(&self, [s1, s2, s3]: [i64; 3]) -> TernaryForm {
        TernaryForm::new(
            self.a * s1 * s1,
            self.b * s2 * s2,
            self.c * s3 * s3,
            self.d * s2 * s3,
            self.e * s1 * s3,
            self.f * s1 * s2,
        )
    }

    fn require_positive(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite(self.to_string()))
        }
    }

    /// Exact half-widths of the box enclosing `{Q <= n}`: the largest
    /// `|x|, |y|, |z|` that any point of value at most `n` can have.
    pub fn bounding_box(&self, n: u64) -> Result<[i64; 3]> {
        self.require_positive()?;
        let [a, b, c, d, e, f] = self.wide();
        let disc = self.discriminant();
        let n = n as i128;
        let half = |cofactor: i128| ((n * cofactor / disc) as u128).isqrt() as i64;
        Ok([half(4 * b * c - d * d), half(4 * a * c - e * e), half(4 * a * b - f * f)])
    }

    fn enumerate(&self, n: usize, keep: impl Fn(i64, i64, i64) -> bool + Sync) -> Result<QSeries> {
        self.require_positive()?;
        let zmax = self.bounding_box(n as u64)?[2];
        let TernaryForm { a, b, c, d, e, f } = *self;
        let bound = n as i64;
        let counts = (-zmax..=zmax)
            .into_par_iter()
            .fold(
                || vec![0i64; n + 1],
                |mut acc, z| {
                    let base = c * z * z;
                    for_each_binary_point((a, f, b, e * z, d * z), bound - base, |x, y, v| {
                        if keep(x, y, z) {
                            acc[(v + base) as usize] += 1;
                        }
                    });
                    acc
                },
            )
            .reduce(
                || vec![0i64; n + 1],
                |mut l, r| {
                    l.iter_mut().zip(r).for_each(|(x, y)| *x += y);
                    l
                },
            );
        QSeries::from_coeffs(counts)
    }

    /// `sum q^Q(x,y,z)` over all integer triples, to `q^n`.
    pub fn theta_series(&self, n: usize) -> Result<QSeries> {
        self.enumerate(n, |_, _, _| true)
    }

    /// Number of integer triples with `Q(x, y, z) = n`; zero for negative `n`.
    pub fn rep_count(&self, n: i64) -> Result<u64> {
        self.require_positive()?;
        if n < 0 {
            return Ok(0);
        }
        let s = self.theta_series(n as usize)?;
        Ok(s.coeffs()[n as usize] as u64)
    }

    /// `sum q^Q(s1 x, s2 y, s3 z)` over the triples `(x, y, z)` that satisfy
    /// every congruence in `system`, to `q^n`.
    pub fn restricted_theta(&self, scales: [i64; 3], system: &CongruenceSystem, n: usize) -> Result<QSeries> {
        if scales.contains(&0) {
            return Err(invalid("variable scales must be nonzero"));
        }
        self.scaled(scales).enumerate(n, |x, y, z| system.is_satisfied(x, y, z))
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

impl FromStr for TernaryForm {
    type Err = Error;

    /// Parses `"a,b,c,d,e,f"`, with optional spaces and optional parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<i64> = body
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(s.to_string()))?;
        match parts[..] {
            [a, b, c, d, e, f] => Ok(TernaryForm::new(a, b, c, d, e, f)),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl BinaryForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryForm { a, b, c }
    }

    pub fn is_positive_definite(&self) -> bool {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        a > 0 && 4 * a * c - b * b > 0
    }

    pub fn value(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// `sum q^(a x^2 + b xy + c y^2)` over all integer pairs, to `q^n`.
    pub fn theta_series(&self, n: usize) -> Result<QSeries> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite(self.to_string()));
        }
        let mut counts = vec![0i64; n + 1];
        for_each_binary_point((self.a, self.b, self.c, 0, 0), n as i64, |_, _, v| {
            counts[v as usize] += 1;
        });
        QSeries::from_coeffs(counts)
    }

    /// The form obtained by substituting `(x, y) -> M (x, y)`, i.e.
    /// `x -> m[0][0] x + m[0][1] y` and `y -> m[1][0] x + m[1][1] y`.
    pub fn apply_unimodular(&self, m: [[i64; 2]; 2]) -> Result<BinaryForm> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() != 1 {
            return Err(invalid(format!("substitution matrix has determinant {det}")));
        }
        let [[p, q], [r, s]] = m;
        Ok(BinaryForm::new(
            self.value(p, r),
            2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s,
            self.value(q, s),
        ))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `u x + v y + w z ≡ r (mod m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub coeffs: [i64; 3],
    pub modulus: i64,
    pub residue: i64,
}

impl Congruence {
    pub fn new(coeffs: [i64; 3], modulus: i64, residue: i64) -> Result<Self> {
        if modulus < 1 || !(0..modulus).contains(&residue) {
            return Err(invalid(format!(
                "congruence needs m >= 1 and 0 <= r < m, got m={modulus}, r={residue}"
            )));
        }
        Ok(Congruence { coeffs, modulus, residue })
    }

    /// `var ≡ residue (mod modulus)` for the variable with index `var`.
    pub fn on_var(var: usize, modulus: i64, residue: i64) -> Result<Self> {
        let mut coeffs = [0; 3];
        coeffs[var] = 1;
        Self::new(coeffs, modulus, residue)
    }

    #[inline]
    pub fn is_satisfied(&self, x: i64, y: i64, z: i64) -> bool {
        let [u, v, w] = self.coeffs;
        (u * x + v * y + w * z - self.residue).rem_euclid(self.modulus) == 0
    }
}

/// A conjunction of linear congruences on the lattice variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CongruenceSystem {
    constraints: Vec<Congruence>,
}

impl CongruenceSystem {
    pub fn new(constraints: Vec<Congruence>) -> Self {
        CongruenceSystem { constraints }
    }

    pub fn constraints(&self) -> &[Congruence] {
        &self.constraints
    }

    #[inline]
    pub fn is_satisfied(&self, x: i64, y: i64, z: i64) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x, y, z))
    }
}

/// The congruence-restricted three-square sums used by the analogues of
/// Gauss's theorem, plus Gauss's own odd-squares sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RestrictedPreset {
    /// `x^2 + y^2 + z^2`, `x ≡ 1 (4)`, `y ≡ 2 (8)`, `z ≡ 2 (8)`.
    B10,
    /// `x^2 + y^2 + 2z^2`, `x ≡ 1 (4)`, `y ≡ 4 (16)`, `z ≡ 0 (2)`.
    B20,
    /// `x^2 + 4y^2 + 12z^2`, `x ≡ 3 (12)`, `y ≡ z (6)`, `y + z ≡ 2 (6)`.
    B30,
    /// `x^2 + y^2 + z^2` over odd `x, y, z`.
    OddCubes,
}

impl RestrictedPreset {
    pub const ALL: [RestrictedPreset; 4] =
        [RestrictedPreset::B10, RestrictedPreset::B20, RestrictedPreset::B30, RestrictedPreset::OddCubes];

    pub fn form(&self) -> TernaryForm {
        match self {
            RestrictedPreset::B10 | RestrictedPreset::OddCubes => TernaryForm::diagonal(1, 1, 1),
            RestrictedPreset::B20 => TernaryForm::diagonal(1, 1, 2),
            RestrictedPreset::B30 => TernaryForm::diagonal(1, 4, 12),
        }
    }

    pub fn system(&self) -> CongruenceSystem {
        let c = |v, m, r| Congruence::on_var(v, m, r).expect("preset congruences are well formed");
        let constraints = match self {
            RestrictedPreset::B10 => vec![c(0, 4, 1), c(1, 8, 2), c(2, 8, 2)],
            RestrictedPreset::B20 => vec![c(0, 4, 1), c(1, 16, 4), c(2, 2, 0)],
            RestrictedPreset::B30 => vec![
                c(0, 12, 3),
                Congruence::new([0, 1, -1], 6, 0).expect("well formed"),
                Congruence::new([0, 1, 1], 6, 2).expect("well formed"),
            ],
            RestrictedPreset::OddCubes => vec![c(0, 2, 1), c(1, 2, 1), c(2, 2, 1)],
        };
        CongruenceSystem::new(constraints)
    }

    pub fn theta(&self, n: usize) -> Result<QSeries> {
        self.form().restricted_theta([1, 1, 1], &self.system(), n)
    }
}

impl FromStr for RestrictedPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B10" => Ok(RestrictedPreset::B10),
            "B20" => Ok(RestrictedPreset::B20),
            "B30" => Ok(RestrictedPreset::B30),
            "ODD" | "ODDCUBES" | "ODD-CUBES" | "G0" => Ok(RestrictedPreset::OddCubes),
            _ => Err(invalid(format!("unknown restricted-sum preset `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUM3: TernaryForm = TernaryForm::diagonal(1, 1, 1);
    const JP1: TernaryForm = TernaryForm::new(9, 16, 36, 16, 4, 8);
    const JP2: TernaryForm = TernaryForm::new(9, 17, 32, -8, 8, 6);

    #[test]
    fn discriminants() {
        assert_eq!(SUM3.discriminant(), 4);
        assert_eq!(JP1.discriminant(), 16384);
        assert_eq!(JP2.discriminant(), 16384);
        // The abstract's f = 8 and the section header's f = 16 both miss.
        assert_ne!(TernaryForm::new(9, 17, 32, -8, 8, 8).discriminant(), 16384);
        assert_ne!(TernaryForm::new(9, 17, 32, -8, 8, 16).discriminant(), 16384);
    }

    #[test]
    fn definiteness() {
        assert!(SUM3.is_positive_definite());
        assert!(!TernaryForm::new(1, 1, 1, 0, 0, 4).is_positive_definite());
        assert!(JP2.is_positive_definite());
        assert!(!TernaryForm::diagonal(1, -1, 1).is_positive_definite());
        assert!(matches!(
            TernaryForm::new(1, 1, 1, 0, 0, 4).theta_series(5),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn small_counts() {
        assert_eq!(SUM3.rep_count(3).unwrap(), 8);
        assert_eq!(SUM3.rep_count(7).unwrap(), 0);
        assert_eq!(SUM3.rep_count(-1).unwrap(), 0);
        assert_eq!(TernaryForm::diagonal(1, 1, 2).rep_count(9).unwrap(), 12);
        let t = SUM3.theta_series(4).unwrap();
        assert_eq!(t.coeffs(), &[1, 6, 12, 8, 6]);
    }

    #[test]
    fn parse_literal() {
        assert_eq!("9,17,32,-8,8,6".parse::<TernaryForm>().unwrap(), JP2);
        assert_eq!(" 9, 16 ,36,16,4,8 ".parse::<TernaryForm>().unwrap(), JP1);
        assert_eq!("(1,1,1,0,0,0)".parse::<TernaryForm>().unwrap(), SUM3);
        assert!("1,1,1".parse::<TernaryForm>().is_err());
        assert!("1,1,x,0,0,0".parse::<TernaryForm>().is_err());
        assert_eq!(JP2.to_string().parse::<TernaryForm>().unwrap(), JP2);
    }

    #[test]
    fn binary_forms() {
        let two_squares = BinaryForm::new(1, 0, 1).theta_series(5).unwrap();
        assert_eq!(two_squares.coeffs(), &[1, 4, 4, 0, 4, 8]);
        let f = BinaryForm::new(72, 12, 1);
        assert_eq!(f.apply_unimodular([[0, 1], [-1, -6]]).unwrap(), BinaryForm::new(1, 0, 36));
        let g = BinaryForm::new(72, 60, 13);
        assert_eq!(g.apply_unimodular([[-1, 1], [2, -3]]).unwrap(), BinaryForm::new(4, 0, 9));
        assert_eq!(f.apply_unimodular([[1, 0], [0, 1]]).unwrap(), f);
        assert!(f.apply_unimodular([[2, 0], [0, 1]]).is_err());
        assert!(BinaryForm::new(1, 2, 1).theta_series(3).is_err());
    }

    #[test]
    fn quadratic_window_contains_roots() {
        // t^2 - 4 <= 0 on [-2, 2]
        let (lo, hi) = quadratic_window(1, 0, -4).unwrap();
        assert!(lo <= -2 && hi >= 2 && hi - lo <= 6);
        assert!(quadratic_window(1, 0, 1).is_none());
    }

    #[test]
    fn congruences() {
        assert!(Congruence::new([1, 0, 0], 0, 0).is_err());
        assert!(Congruence::new([1, 0, 0], 4, 4).is_err());
        let c = Congruence::new([0, 1, 1], 6, 2).unwrap();
        assert!(c.is_satisfied(0, 1, 1));
        assert!(c.is_satisfied(0, -3, -1));
        assert!(!c.is_satisfied(0, 1, 0));
    }

    #[test]
    fn b10_small_coefficients() {
        let s = RestrictedPreset::B10.theta(25).unwrap();
        assert_eq!(s.get(9), Some(1));
        assert_eq!(s.get(25), Some(0));
        assert_eq!(RestrictedPreset::B30.theta(49).unwrap().get(49), Some(0));
    }

    #[test]
    fn scaled_form() {
        assert_eq!(TernaryForm::new(1, 1, 1, 1, 1, 1).scaled([1, 2, 3]), TernaryForm::new(1, 4, 9, 6, 3, 2));
        let sys = CongruenceSystem::default();
        let a = SUM3.restricted_theta([1, 2, 1], &sys, 40).unwrap();
        assert_eq!(a, TernaryForm::diagonal(1, 4, 1).theta_series(40).unwrap());
        assert!(SUM3.restricted_theta([0, 1, 1], &sys, 4).is_err());
    }
}

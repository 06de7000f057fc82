//! Named q-series: Euler's product, Ramanujan's theta function and its
//! classical specializations, the Borwein cubic sums, and the
//! character-weighted sums over squares.
//!
//! Each classical series has a sum construction ([`sum_side`]) and a product
//! construction ([`classical`], an eta quotient). The two are built along
//! independent code paths so that the identity registry can compare them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::kronecker;
use crate::error::{invalid, Error, Result};
use crate::lattice::for_each_binary_point;
use crate::series::{pochhammer, QSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ThetaKind {
    /// `E(q) = (q; q)_inf`
    E,
    /// `phi(q) = f(q, q)`
    Phi,
    /// `phi(-q)`
    PhiNeg,
    /// `psi(q) = f(q, q^3)`
    Psi,
    /// `psi(-q)`
    PsiNeg,
    /// `f(q, q^2)`
    F12,
    /// `f(q, q^5)`
    F15,
    /// Borwein `a(q)`
    A,
    /// Borwein `c(q)`
    C,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 9] = [
        ThetaKind::E,
        ThetaKind::Phi,
        ThetaKind::PhiNeg,
        ThetaKind::Psi,
        ThetaKind::PsiNeg,
        ThetaKind::F12,
        ThetaKind::F15,
        ThetaKind::A,
        ThetaKind::C,
    ];
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ThetaKind::E => "E",
            ThetaKind::Phi => "phi",
            ThetaKind::PhiNeg => "phi-neg",
            ThetaKind::Psi => "psi",
            ThetaKind::PsiNeg => "psi-neg",
            ThetaKind::F12 => "f12",
            ThetaKind::F15 => "f15",
            ThetaKind::A => "a",
            ThetaKind::C => "c",
        };
        f.write_str(s)
    }
}

/// Adds `sign * q^(k * e)` for every `e` produced by `exps`, stopping at the
/// first exponent above the truncation. `exps` must be increasing.
fn add_terms(out: &mut [i64], k: usize, terms: impl Iterator<Item = (usize, i64)>) {
    let n = out.len() - 1;
    for (e, sign) in terms {
        let Some(pos) = e.checked_mul(k).filter(|&p| p <= n) else {
            break;
        };
        out[pos] += sign;
    }
}

/// `E(q^k)` from Euler's pentagonal number theorem:
/// `sum_n (-1)^n q^(k n(3n+1)/2)`, `O(sqrt(N))` terms.
pub fn euler_e(k: usize, n: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(invalid("dilation k must be at least 1"));
    }
    let mut c = vec![0i64; n + 1];
    c[0] = 1;
    // exponents j(3j-1)/2 and j(3j+1)/2 for j >= 1 share the sign (-1)^j
    let up = (1usize..).map(|j| (j * (3 * j - 1) / 2, if j % 2 == 1 { -1 } else { 1 }));
    let down = (1usize..).map(|j| (j * (3 * j + 1) / 2, if j % 2 == 1 { -1 } else { 1 }));
    add_terms(&mut c, k, up);
    add_terms(&mut c, k, down);
    QSeries::from_coeffs(c)
}

/// `E(-q^k)`.
pub fn euler_e_neg(k: usize, n: usize) -> Result<QSeries> {
    euler_e(1, n / k)?.alternate().dilate(k, n)
}

/// Ramanujan's `f(a, b) = sum_n a^(n(n+1)/2) b^(n(n-1)/2)` at the monomials
/// `a = sign_a q^r`, `b = sign_b q^s`, to `q^n`.
pub fn theta_f(sign_a: i64, r: usize, sign_b: i64, s: usize, n: usize) -> Result<QSeries> {
    check_sign(sign_a)?;
    check_sign(sign_b)?;
    if r + s == 0 {
        return Err(invalid("f(a, b) needs |ab| < 1, i.e. r + s >= 1"));
    }
    let (r, s) = (r as i128, s as i128);
    let limit = n as i128;
    let mut c = vec![0i64; n + 1];
    // Exponent ((r+s) j^2 + (r-s) j)/2 is nonnegative and convex in j, and
    // increases in both directions away from j = 0.
    for dir in [1i128, -1] {
        let mut j: i128 = if dir == 1 { 0 } else { -1 };
        loop {
            let up = j * (j + 1) / 2;
            let down = j * (j - 1) / 2;
            let e = r * up + s * down;
            if e > limit {
                break;
            }
            let mut sign = 1;
            if sign_a < 0 && up % 2 != 0 {
                sign = -sign;
            }
            if sign_b < 0 && down % 2 != 0 {
                sign = -sign;
            }
            c[e as usize] += sign;
            j += dir;
        }
    }
    QSeries::from_coeffs(c)
}

/// Product side of the Jacobi triple product,
/// `(-a; ab)_inf (-b; ab)_inf (ab; ab)_inf`, at the same monomials as
/// [`theta_f`].
pub fn triple_product(sign_a: i64, r: usize, sign_b: i64, s: usize, n: usize) -> Result<QSeries> {
    check_sign(sign_a)?;
    check_sign(sign_b)?;
    if r + s == 0 {
        return Err(invalid("triple product needs r + s >= 1"));
    }
    if (s == 0 && sign_b == -1) || (r == 0 && sign_a == -1) {
        // a factor (1; ab)_inf kills the whole product
        return Ok(QSeries::zero(n));
    }
    let step = r + s;
    if sign_a == sign_b {
        // Each (-x; Q) is rewritten as (x^2; Q^2) / (x; Q), so the product is
        // a quotient of alternating products whose partial results stay small.
        let mut num = vec![(step, step)];
        let mut den = Vec::new();
        let mut scale = 1;
        for (sign, e) in [(sign_a, r), (sign_b, s)] {
            if sign == -1 {
                num.push((e, step));
            } else if e == 0 {
                // (-1; Q) = 2 (-Q; Q)
                scale *= 2;
                num.push((2 * step, 2 * step));
                den.push((step, step));
            } else {
                num.push((2 * e, 2 * step));
                den.push((e, step));
            }
        }
        let mut out = QSeries::one(n);
        for (e, st) in num {
            out = out.mul(&pochhammer(e, 1, st, n)?)?;
        }
        for (e, st) in den {
            out = out.div(&pochhammer(e, 1, st, n)?)?;
        }
        return out.scale(scale);
    }
    // ab = -q^step, so every factor picks up the sign (-1)^k of its power of ab
    let mut out = QSeries::one(n);
    let mut k = 0usize;
    while k * step <= n {
        let alt = if k.is_multiple_of(2) { 1 } else { -1 };
        for (sign, e) in [(sign_a, r + k * step), (sign_b, s + k * step)] {
            if e <= n {
                out = out.mul(&QSeries::one(n).add(&QSeries::monomial(sign * alt, e, n))?)?;
            }
        }
        let e = (k + 1) * step;
        if e <= n {
            let sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
            out = out.mul(&QSeries::one(n).sub(&QSeries::monomial(sign, e, n))?)?;
        }
        k += 1;
    }
    Ok(out)
}

fn check_sign(sign: i64) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(invalid(format!("sign must be +1 or -1, got {sign}")))
    }
}

/// `prod_m E(q^m)^(e_m)` for `(m, e_m)` in `factors`, to `q^n`.
///
/// All numerator factors are multiplied first; each denominator factor is
/// then removed by exact series division against its sparse pentagonal
/// expansion, which costs `O(N sqrt(N / m))` per factor.
pub fn eta_quotient(factors: &[(usize, i32)], n: usize) -> Result<QSeries> {
    let mut acc = QSeries::one(n);
    for &(m, e) in factors.iter().filter(|f| f.1 > 0) {
        acc = acc.mul(&euler_e(m, n)?.pow(e as u32)?)?;
    }
    for &(m, e) in factors.iter().filter(|f| f.1 < 0) {
        let denom = euler_e(m, n)?;
        for _ in 0..e.unsigned_abs() {
            acc = acc.div(&denom)?;
        }
    }
    Ok(acc)
}

/// Product-side construction of `kind` in the variable `q^k`, to `q^n`.
///
/// The eta quotients are those of the classical table; `a(q)` is built as
/// `phi(q) phi(q^3) + 4q psi(q^2) psi(q^6)` from product-side factors.
pub fn classical(kind: ThetaKind, k: usize, n: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(invalid("dilation k must be at least 1"));
    }
    let m = n / k;
    let base = match kind {
        ThetaKind::E => return euler_e(k, n),
        ThetaKind::Phi => eta_quotient(&[(2, 5), (4, -2), (1, -2)], m)?,
        ThetaKind::PhiNeg => eta_quotient(&[(1, 2), (2, -1)], m)?,
        ThetaKind::Psi => eta_quotient(&[(2, 2), (1, -1)], m)?,
        ThetaKind::PsiNeg => eta_quotient(&[(4, 1), (1, 1), (2, -1)], m)?,
        ThetaKind::F12 => eta_quotient(&[(3, 2), (2, 1), (6, -1), (1, -1)], m)?,
        ThetaKind::F15 => eta_quotient(&[(12, 1), (3, 1), (2, 2), (6, -1), (4, -1), (1, -1)], m)?,
        ThetaKind::A => {
            let first = classical(ThetaKind::Phi, 1, m)?.mul(&classical(ThetaKind::Phi, 3, m)?)?;
            let second =
                classical(ThetaKind::Psi, 2, m)?.mul(&classical(ThetaKind::Psi, 6, m)?)?.shift(1).scale(4)?;
            first.add(&second)?
        }
        ThetaKind::C => eta_quotient(&[(3, 3), (1, -1)], m)?.scale(3)?,
    };
    base.dilate(k, n)
}

/// Sum-side construction of `kind` in the variable `q^k`, to `q^n`.
pub fn sum_side(kind: ThetaKind, k: usize, n: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(invalid("dilation k must be at least 1"));
    }
    let m = n / k;
    let base = match kind {
        ThetaKind::E => theta_f(-1, 1, -1, 2, m)?,
        ThetaKind::Phi => theta_f(1, 1, 1, 1, m)?,
        ThetaKind::PhiNeg => theta_f(-1, 1, -1, 1, m)?,
        ThetaKind::Psi => theta_f(1, 1, 1, 3, m)?,
        ThetaKind::PsiNeg => theta_f(-1, 1, -1, 3, m)?,
        ThetaKind::F12 => theta_f(1, 1, 1, 2, m)?,
        ThetaKind::F15 => theta_f(1, 1, 1, 5, m)?,
        ThetaKind::A => borwein_a(1, m)?,
        ThetaKind::C => borwein_c(1, m)?,
    };
    base.dilate(k, n)
}

/// `phi(q^k)` to `q^n`.
pub fn phi(k: usize, n: usize) -> Result<QSeries> {
    sum_side(ThetaKind::Phi, k, n)
}

/// `phi(-q^k)` to `q^n`.
pub fn phi_neg(k: usize, n: usize) -> Result<QSeries> {
    sum_side(ThetaKind::PhiNeg, k, n)
}

/// `psi(q^k)` to `q^n`.
pub fn psi(k: usize, n: usize) -> Result<QSeries> {
    sum_side(ThetaKind::Psi, k, n)
}

/// `psi(-q^k)` to `q^n`.
pub fn psi_neg(k: usize, n: usize) -> Result<QSeries> {
    sum_side(ThetaKind::PsiNeg, k, n)
}

/// `f(q^r, q^s)` to `q^n`.
pub fn f(r: usize, s: usize, n: usize) -> Result<QSeries> {
    theta_f(1, r, 1, s, n)
}

fn lattice_sum(coeffs: (i64, i64, i64, i64, i64), k: usize, n: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(invalid("dilation k must be at least 1"));
    }
    let m = n / k;
    let mut c = vec![0i64; m + 1];
    let mut negative = false;
    for_each_binary_point(coeffs, m as i64, |_, _, v| {
        if v < 0 {
            negative = true;
        } else {
            c[v as usize] += 1;
        }
    });
    if negative {
        return Err(invalid("lattice sum takes negative values"));
    }
    QSeries::from_coeffs(c)?.dilate(k, n)
}

/// Borwein `a(q^k) = sum_{x,y} q^(k(x^2 + xy + y^2))`.
pub fn borwein_a(k: usize, n: usize) -> Result<QSeries> {
    lattice_sum((1, 1, 1, 0, 0), k, n)
}

/// Borwein `c(q^k) = sum_{x,y} q^(k(x^2 + xy + y^2 + x + y))`.
pub fn borwein_c(k: usize, n: usize) -> Result<QSeries> {
    lattice_sum((1, 1, 1, 1, 1), k, n)
}

/// Weights `w(j)` for the sums `sum_{j>0} w(j) j q^(j^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SquareCharacter {
    /// `(-4/j)`
    Minus4,
    /// `(-2/j)`
    Minus2,
    /// `(-12/j)`
    Minus12,
    /// `(-1)^(j+1) (-3/j)`
    Minus3Alternating,
}

impl SquareCharacter {
    pub fn weight(&self, j: i64) -> i64 {
        let w = match self {
            SquareCharacter::Minus4 => kronecker(-4, j),
            SquareCharacter::Minus2 => kronecker(-2, j),
            SquareCharacter::Minus12 => kronecker(-12, j),
            SquareCharacter::Minus3Alternating => {
                let s = kronecker(-3, j);
                if j % 2 == 0 {
                    -s
                } else {
                    s
                }
            }
        };
        w as i64
    }
}

impl FromStr for SquareCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-4" | "D-4" => Ok(SquareCharacter::Minus4),
            "-2" | "D-2" => Ok(SquareCharacter::Minus2),
            "-12" | "D-12" => Ok(SquareCharacter::Minus12),
            "-3alt" | "D-3ALT" => Ok(SquareCharacter::Minus3Alternating),
            _ => Err(invalid(format!("unknown square character `{s}`"))),
        }
    }
}

/// `sum_{j>0} w(j) j q^(j^2)` to `q^n`.
pub fn char_square_series(ch: SquareCharacter, n: usize) -> Result<QSeries> {
    let terms = (1i64..)
        .map(|j| (j, (j * j) as usize))
        .take_while(|&(_, e)| e <= n)
        .map(|(j, e)| (e, ch.weight(j) * j));
    QSeries::from_terms(terms, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &QSeries) -> Vec<i64> {
        s.coeffs().to_vec()
    }

    #[test]
    fn euler_first_terms() {
        assert_eq!(coeffs(&euler_e(1, 7).unwrap()), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        let e8 = euler_e(8, 200).unwrap();
        assert!(e8.support().all(|e| e % 8 == 0));
        assert_eq!(e8, euler_e(1, 25).unwrap().dilate(8, 200).unwrap());
        assert_eq!(euler_e(1, 500).unwrap(), pochhammer(1, 1, 1, 500).unwrap());
        assert_eq!(euler_e(3, 500).unwrap(), pochhammer(3, 1, 3, 500).unwrap());
    }

    #[test]
    fn theta_f_specializations() {
        let n = 300;
        let squares = QSeries::from_terms((-20i64..=20).map(|j| ((j * j) as usize, 1)), n).unwrap();
        assert_eq!(theta_f(1, 1, 1, 1, n).unwrap(), squares);
        let tri = QSeries::from_terms((0usize..30).map(|j| (j * (j + 1) / 2, 1)), n).unwrap();
        assert_eq!(theta_f(1, 1, 1, 3, n).unwrap(), tri);
        assert_eq!(theta_f(-1, 1, -1, 2, n).unwrap(), euler_e(1, n).unwrap());
        assert!(theta_f(1, 0, 1, 0, n).is_err());
        assert!(theta_f(2, 1, 1, 1, n).is_err());
    }

    #[test]
    fn small_classical_values() {
        assert_eq!(coeffs(&classical(ThetaKind::Phi, 1, 4).unwrap()), vec![1, 2, 0, 0, 2]);
        assert_eq!(coeffs(&classical(ThetaKind::Psi, 1, 6).unwrap()), vec![1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(classical(ThetaKind::F15, 1, 400).unwrap(), f(1, 5, 400).unwrap());
    }

    #[test]
    fn triple_product_matches_sum() {
        for (sa, r, sb, s) in [
            (1, 1, 1, 1),
            (1, 1, 1, 3),
            (-1, 1, -1, 2),
            (1, 3, 1, 15),
            (-1, 2, 1, 5),
            (1, 2, 1, 0),
            (1, 0, 1, 3),
            (-1, 3, 1, 0),
        ] {
            assert_eq!(
                triple_product(sa, r, sb, s, 200).unwrap(),
                theta_f(sa, r, sb, s, 200).unwrap(),
                "f({sa}q^{r}, {sb}q^{s})"
            );
        }
        assert!(triple_product(1, 1, -1, 0, 50).unwrap().is_zero());
        assert!(triple_product(-1, 0, 1, 2, 50).unwrap().is_zero());
        assert!(theta_f(-1, 0, 1, 2, 50).unwrap().is_zero());
        assert!(theta_f(1, 1, -1, 0, 50).unwrap().is_zero());
    }

    #[test]
    fn borwein_small() {
        assert_eq!(coeffs(&borwein_a(1, 3).unwrap()), vec![1, 6, 0, 6]);
        assert_eq!(coeffs(&borwein_c(1, 4).unwrap()), vec![3, 3, 6, 0, 6]);
        assert_eq!(borwein_c(1, 600).unwrap(), classical(ThetaKind::C, 1, 600).unwrap());
    }

    #[test]
    fn square_characters() {
        let s = char_square_series(SquareCharacter::Minus4, 30).unwrap();
        assert_eq!((s.get(1), s.get(9), s.get(25), s.get(4)), (Some(1), Some(-3), Some(5), Some(0)));
        let s = char_square_series(SquareCharacter::Minus2, 49).unwrap();
        assert_eq!(s.get(49), Some(-7));
        let s = char_square_series(SquareCharacter::Minus12, 2000).unwrap();
        for e in s.support() {
            let j = (e as f64).sqrt() as i64;
            assert_eq!(j * j, e as i64);
            assert!(j % 2 != 0 && j % 3 != 0);
        }
    }

    #[test]
    fn sum_and_product_agree() {
        for kind in ThetaKind::ALL {
            for k in [1, 2, 5] {
                assert_eq!(
                    sum_side(kind, k, 400).unwrap(),
                    classical(kind, k, 400).unwrap(),
                    "{kind} at q^{k}"
                );
            }
        }
    }

    #[test]
    fn euler_neg_by_alternation() {
        let lhs = euler_e(1, 300).unwrap().alternate();
        let rhs = eta_quotient(&[(2, 3), (4, -1), (1, -1)], 300).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(euler_e_neg(1, 300).unwrap(), lhs);
    }
}

use super::{IdentityCase, Mismatch};
use crate::error::Result;
use crate::lattice::{Congruence, CongruenceSystem, TernaryForm};
use crate::series::{pochhammer, quintuple_product_check};
use crate::theta::{
    borwein_a as a, borwein_c as c, char_square_series, classical, eta_quotient, euler_e as e,
    euler_e_neg as e_neg, f, phi, phi_neg, psi, psi_neg, sum_side, theta_f, triple_product, SquareCharacter,
    ThetaKind,
};
use crate::QSeries;

const JP1: TernaryForm = TernaryForm::new(9, 16, 36, 16, 4, 8);
const JP2: TernaryForm = TernaryForm::new(9, 17, 32, -8, 8, 6);
/// `(2x+4y+2z)^2 + 32x^2 + 32z^2`, the even-`x` half of JP1.
const JP1_EVEN: TernaryForm = TernaryForm::new(36, 16, 36, 16, 8, 16);

/// Product of the given series.
fn prod(parts: impl IntoIterator<Item = Result<QSeries>>) -> Result<QSeries> {
    let mut parts = parts.into_iter();
    let mut acc = parts.next().expect("at least one factor")?;
    for p in parts {
        acc = acc.mul(&p?)?;
    }
    Ok(acc)
}

/// `coeff * q^shift * prod(parts)`.
fn term(coeff: i64, shift: usize, parts: impl IntoIterator<Item = Result<QSeries>>) -> Result<QSeries> {
    prod(parts)?.shift(shift).scale(coeff)
}

fn chi(ch: SquareCharacter, n: usize) -> Result<QSeries> {
    char_square_series(ch, n)
}

fn restricted(form: TernaryForm, constraints: Vec<Congruence>, n: usize) -> Result<QSeries> {
    form.restricted_theta([1, 1, 1], &CongruenceSystem::new(constraints), n)
}

fn on(var: usize, modulus: i64, residue: i64) -> Congruence {
    Congruence::on_var(var, modulus, residue).expect("well-formed congruence")
}

fn joint(coeffs: [i64; 3], modulus: i64, residue: i64) -> Congruence {
    Congruence::new(coeffs, modulus, residue).expect("well-formed congruence")
}

/// `phi(q)^2 phi(q^3)`
fn phi2_phi3(n: usize) -> Result<QSeries> {
    prod([phi(1, n)?.pow(2), phi(3, n)])
}

/// `E(q)^5 / (f(q,q^2) E(q^2)^2) + 2q psi(q^3) c(q^2) / f(q,q^2)`
fn step1_rhs(n: usize) -> Result<QSeries> {
    let first = eta_quotient(&[(1, 5), (2, -2)], n)?;
    let second = term(2, 1, [psi(3, n), c(2, n)])?;
    first.add(&second)?.div(&f(1, 2, n)?)
}

/// `24q f(q,q^5)^3 phi(q^3)`
fn step2_rhs(n: usize) -> Result<QSeries> {
    term(24, 1, [f(1, 5, n)?.pow(3), phi(3, n)])
}

/// `phi(q^64)^3 + 2q^16 psi(q^128) phi(q^64)^2`
fn jp1_even_aligned(n: usize) -> Result<QSeries> {
    phi(64, n)?.pow(3)?.add(&term(2, 16, [psi(128, n), phi(64, n)?.pow(2)])?)
}

/// `2q^9 psi(q^8) psi(q^32)^2`
fn odd_part(n: usize) -> Result<QSeries> {
    term(2, 9, [psi(8, n), psi(32, n)?.pow(2)])
}

/// Checks `lhs(x,y,z) = rhs(x,y,z)` on every integer point of `[-5, 5]^3`.
fn grid_check(lhs: impl Fn(i64, i64, i64) -> i64, rhs: impl Fn(i64, i64, i64) -> i64) -> Option<Mismatch> {
    let range = -5i64..=5;
    let points =
        range.clone().flat_map(|x| range.clone().flat_map(move |y| (-5i64..=5).map(move |z| (x, y, z))));
    points.enumerate().find_map(|(i, (x, y, z))| {
        let (l, r) = (lhs(x, y, z), rhs(x, y, z));
        (l != r).then_some(Mismatch { degree: i, lhs: l, rhs: r })
    })
}

fn classical_pair(name: &'static str, formula: &'static str, kind: ThetaKind) -> IdentityCase {
    IdentityCase::sides(name, formula, 1000, move |n| sum_side(kind, 1, n), move |n| classical(kind, 1, n))
}

fn jtp(name: &'static str, formula: &'static str, sa: i64, r: usize, sb: i64, s: usize) -> IdentityCase {
    // sparse specializations need a longer expansion to show enough terms
    let default_trunc = if r + s > 10 { 3000 } else { 1000 };
    IdentityCase::sides(
        name,
        formula,
        default_trunc,
        move |n| theta_f(sa, r, sb, s, n),
        move |n| triple_product(sa, r, sb, s, n),
    )
}

pub(super) fn cases() -> Vec<IdentityCase> {
    use IdentityCase as I;
    vec![
        // Euler's product and the triple product
        I::sides("eneg", "E(-q) = E(q^2)^3 / (E(q^4) E(q))", 1000, |n| e_neg(1, n), |n| {
            eta_quotient(&[(2, 3), (4, -1), (1, -1)], n)
        }),
        I::sides("pent", "f(-q,-q^2) = (q;q)_inf", 1000, |n| theta_f(-1, 1, -1, 2, n), |n| pochhammer(1, 1, 1, n)),
        I::sides("jac1", "sum (-4/n) n q^(n^2) = q E(q^8)^3", 3000, |n| chi(SquareCharacter::Minus4, n), |n| {
            Ok(e(8, n)?.pow(3)?.shift(1))
        }),
        I::sides("jac2", "sum (-2/n) n q^(n^2) = q E(-q^8)^3", 3000, |n| chi(SquareCharacter::Minus2, n), |n| {
            Ok(e_neg(8, n)?.pow(3)?.shift(1))
        }),
        classical_pair("phi", "phi(q) = f(q,q) = E(q^2)^5 / (E(q^4)^2 E(q)^2)", ThetaKind::Phi),
        classical_pair("phineg", "phi(-q) = E(q)^2 / E(q^2)", ThetaKind::PhiNeg),
        classical_pair("psi", "psi(q) = f(q,q^3) = E(q^2)^2 / E(q)", ThetaKind::Psi),
        classical_pair("psineg", "psi(-q) = E(q^4) E(q) / E(q^2)", ThetaKind::PsiNeg),
        classical_pair("f12", "f(q,q^2) = E(q^3)^2 E(q^2) / (E(q^6) E(q))", ThetaKind::F12),
        classical_pair("f15", "f(q,q^5) = E(q^12) E(q^3) E(q^2)^2 / (E(q^6) E(q^4) E(q))", ThetaKind::F15),
        jtp("jtp-phi", "f(q,q) = (-q;q^2)^2 (q^2;q^2)", 1, 1, 1, 1),
        jtp("jtp-phineg", "f(-q,-q) = (q;q^2)^2 (q^2;q^2)", -1, 1, -1, 1),
        jtp("jtp-psi", "f(q,q^3) = (-q;q^4)(-q^3;q^4)(q^4;q^4)", 1, 1, 1, 3),
        jtp("jtp-pent", "f(-q,-q^2) = (q;q^3)(q^2;q^3)(q^3;q^3)", -1, 1, -1, 2),
        jtp("jtp-f12", "f(q,q^2) = (-q;q^3)(-q^2;q^3)(q^3;q^3)", 1, 1, 1, 2),
        jtp("jtp-f15", "f(q,q^5) = (-q;q^6)(-q^5;q^6)(q^6;q^6)", 1, 1, 1, 5),
        jtp("jtp-mixed", "f(-q^2,q^5) = (q^2;-q^7)(-q^5;-q^7)(-q^7;-q^7)", -1, 2, 1, 5),
        jtp("jtp-f3-15", "f(q^3,q^15) = (-q^3;q^18)(-q^15;q^18)(q^18;q^18)", 1, 3, 1, 15),
        // theta constants
        I::sides("lucky", "phi(-q^8)^2 psi(q^8) = E(q^8)^3", 3000, |n| prod([phi_neg(8, n)?.pow(2), psi(8, n)]), |n| {
            e(8, n)?.pow(3)
        }),
        I::sides("lucky2", "phi(-q^2) psi(q) = phi(q) psi(-q)", 1000, |n| prod([phi_neg(2, n), psi(1, n)]), |n| {
            prod([phi(1, n), psi_neg(1, n)])
        }),
        I::custom(
            "qpi",
            "sum q^(3n^2+n) (z^(3n) q^(-3n) - q^(3n+1) z^(-3n-1)) = (q^2;q^2)(qz;q^2)(q/z;q^2)(z^2;q^4)(q^4/z^2;q^4)",
            200,
            |n| {
                let report = quintuple_product_check(n)?;
                Ok(report.first_mismatch.map(|m| Mismatch { degree: m.q_exp, lhs: m.lhs, rhs: m.rhs }))
            },
        ),
        I::sides("scqpi", "sum (-12/n) n q^(n^2) = q phi(q^12) E(q^12)^2", 8000, |n| chi(SquareCharacter::Minus12, n), |n| {
            term(1, 1, [phi(12, n), e(12, n)?.pow(2)])
        }),
        I::sides("scqpi-eta", "sum (-12/n) n q^(n^2) = q E(q^24)^5 / E(q^48)^2", 8000, |n| {
            chi(SquareCharacter::Minus12, n)
        }, |n| Ok(eta_quotient(&[(24, 5), (48, -2)], n)?.shift(1))),
        I::sides(
            "scqpi2",
            "sum (-1)^(n+1) (-3/n) n q^(n^2) = q phi(q^3) E(q^12)^2",
            2000,
            |n| chi(SquareCharacter::Minus3Alternating, n),
            |n| term(1, 1, [phi(3, n), e(12, n)?.pow(2)]),
        ),
        I::sides(
            "scqpi2-eta",
            "sum (-1)^(n+1) (-3/n) n q^(n^2) = q E(q^6)^5 / E(q^3)^2",
            2000,
            |n| chi(SquareCharacter::Minus3Alternating, n),
            |n| Ok(eta_quotient(&[(6, 5), (3, -2)], n)?.shift(1)),
        ),
        // dissections
        I::sides("phevod", "phi(q) = phi(q^4) + 2q psi(q^8)", 3000, |n| phi(1, n), |n| {
            phi(4, n)?.add(&term(2, 1, [psi(8, n)])?)
        }),
        I::sides("mod31", "phi(q) = phi(q^9) + 2q f(q^3,q^15)", 3000, |n| phi(1, n), |n| {
            phi(9, n)?.add(&term(2, 1, [f(3, 15, n)])?)
        }),
        I::sides("mod33", "f(q,q^5) = f(q^8,q^16) + q f(q^4,q^20)", 3000, |n| f(1, 5, n), |n| {
            f(8, 16, n)?.add(&term(1, 1, [f(4, 20, n)])?)
        }),
        I::sides("eq-1-17", "phi(q)^2 = phi(q^2)^2 + 4q psi(q^4)^2", 1000, |n| phi(1, n)?.pow(2), |n| {
            phi(2, n)?.pow(2)?.add(&term(4, 1, [psi(4, n)?.pow(2)])?)
        }),
        I::sides("modeqn", "phi(q)^4 - phi(q^3)^4 = 8q f(q,q^5)^3 phi(q^3)", 1000, |n| {
            phi(1, n)?.pow(4)?.sub(&phi(3, n)?.pow(4)?)
        }, |n| term(8, 1, [f(1, 5, n)?.pow(3), phi(3, n)])),
        I::sides("evoddis", "phi(q) phi(q^3) = a(q^4) + 2q psi(q^2) psi(q^6)", 1000, |n| prod([phi(1, n), phi(3, n)]), |n| {
            a(4, n)?.add(&term(2, 1, [psi(2, n), psi(6, n)])?)
        }),
        I::sides("aq1", "a(q) = a(q^4) + 6q psi(q^2) psi(q^6)", 1000, |n| a(1, n), |n| {
            a(4, n)?.add(&term(6, 1, [psi(2, n), psi(6, n)])?)
        }),
        I::sides("aq3", "psi(q) psi(q^3) = psi(q^4) phi(q^6) + q phi(q^2) psi(q^12)", 1000, |n| {
            prod([psi(1, n), psi(3, n)])
        }, |n| prod([psi(4, n), phi(6, n)])?.add(&term(1, 1, [phi(2, n), psi(12, n)])?)),
        I::sides("aq2", "4 phi(q^3) phi(q) a(q^2) - phi(q)^4 = 3 phi(q^3)^4", 1000, |n| {
            term(4, 0, [phi(3, n), phi(1, n), a(2, n)])?.sub(&phi(1, n)?.pow(4)?)
        }, |n| phi(3, n)?.pow(4)?.scale(3)),
        I::sides("cq2", "c(q) = 3 E(q^3)^3 / E(q)", 1000, |n| c(1, n), |n| classical(ThetaKind::C, 1, n)),
        I::sides("borwein-a", "a(q) = phi(q) phi(q^3) + 4q psi(q^2) psi(q^6)", 1000, |n| a(1, n), |n| {
            classical(ThetaKind::A, 1, n)
        }),
        // projections
        I::sides("neq1", "P[2,1] f(q^3,q^15) phi(q^3) = q^3 c(q^12)", 3000, |n| {
            prod([f(3, 15, n), phi(3, n)])?.project(2, 1)
        }, |n| term(1, 3, [c(12, n)])),
        I::sides("neq2", "P[2,1] f(q,q^5) phi(q) = q c(q^4)", 1000, |n| prod([f(1, 5, n), phi(1, n)])?.project(2, 1), |n| {
            term(1, 1, [c(4, n)])
        }),
        I::sides("aq4", "f(q,q^5) phi(q) = q c(q^4) + psi(q^2) f(q^2,q^4)", 1000, |n| prod([f(1, 5, n), phi(1, n)]), |n| {
            term(1, 1, [c(4, n)])?.add(&prod([psi(2, n), f(2, 4, n)])?)
        }),
        I::sides("easy", "P[3,1] phi(q)^2 phi(q^3) = 4q f(q^3,q^15) phi(q^3) phi(q^9)", 1000, |n| {
            phi2_phi3(n)?.project(3, 1)
        }, |n| term(4, 1, [f(3, 15, n), phi(3, n), phi(9, n)])),
        I::sides(
            "hard",
            "P[24,1] phi(q)^2 phi(q^3) = 4q f(q^24,q^48) a(q^48) + 8q^25 psi(q^72) c(q^48)",
            3000,
            |n| phi2_phi3(n)?.project(24, 1),
            |n| term(4, 1, [f(24, 48, n), a(48, n)])?.add(&term(8, 25, [psi(72, n), c(48, n)])?),
        ),
        I::sides(
            "harder",
            "P[24,1] phi(q)^2 phi(q^3) = 4q E(q^24)^5 / E(q^48)^2 + 16q^25 psi(q^72) c(q^48)",
            3000,
            |n| phi2_phi3(n)?.project(24, 1),
            |n| {
                let eta = eta_quotient(&[(24, 5), (48, -2)], n)?.shift(1).scale(4)?;
                eta.add(&term(16, 25, [psi(72, n), c(48, n)])?)
            },
        ),
        I::sides(
            "step1",
            "a(q^2) = E(q)^5 / (f(q,q^2) E(q^2)^2) + 2q psi(q^3) c(q^2) / f(q,q^2)",
            1000,
            |n| a(2, n),
            step1_rhs,
        ),
        I::sides(
            "step2",
            "3 phi(q)^4 - (4 phi(q^3) phi(q) a(q^2) - phi(q)^4) = 24q f(q,q^5)^3 phi(q^3)",
            1000,
            |n| {
                let inner = term(4, 0, [phi(3, n), phi(1, n), a(2, n)])?.sub(&phi(1, n)?.pow(4)?)?;
                phi(1, n)?.pow(4)?.scale(3)?.sub(&inner)
            },
            step2_rhs,
        ),
        I::sides(
            "step2-via-step1",
            "4 phi(q)^4 - 4 phi(q) phi(q^3) [step1 right side at -q] = 24q f(q,q^5)^3 phi(q^3)",
            1000,
            |n| {
                let substituted = step1_rhs(n)?.alternate();
                let cross = term(4, 0, [phi(1, n), phi(3, n), Ok(substituted)])?;
                phi(1, n)?.pow(4)?.scale(4)?.sub(&cross)
            },
            step2_rhs,
        ),
        // three-square analogues of Gauss's theorem
        I::sides("k0", "phi(-q)^2 = phi(q^2)^2 - 4q psi(q^4)^2", 1000, |n| phi_neg(1, n)?.pow(2), |n| {
            phi(2, n)?.pow(2)?.sub(&term(4, 1, [psi(4, n)?.pow(2)])?)
        }),
        I::sides("k1", "phi(q^8)^2 - phi(-q^8)^2 = 8q^8 psi(q^32)^2", 3000, |n| {
            phi(8, n)?.pow(2)?.sub(&phi_neg(8, n)?.pow(2)?)
        }, |n| term(8, 8, [psi(32, n)?.pow(2)])),
        I::sides("k2", "phi(q^8)^2 - 8q^8 psi(q^32)^2 = phi(-q^8)^2", 3000, |n| {
            phi(8, n)?.pow(2)?.sub(&term(8, 8, [psi(32, n)?.pow(2)])?)
        }, |n| phi_neg(8, n)?.pow(2)),
        I::sides("k3", "q phi(q^8)^2 psi(q^8) - q E(q^8)^3 = 8q^9 psi(q^32)^2 psi(q^8)", 3000, |n| {
            term(1, 1, [phi(8, n)?.pow(2), psi(8, n)])?.sub(&e(8, n)?.pow(3)?.shift(1))
        }, |n| term(8, 9, [psi(32, n)?.pow(2), psi(8, n)])),
        I::sides("zzz", "P[4,1] phi(q)^3 / 6 = q phi(q^4)^2 psi(q^8)", 1000, |n| {
            phi(1, n)?.pow(3)?.project(4, 1)?.div_exact(6)
        }, |n| term(1, 1, [phi(4, n)?.pow(2), psi(8, n)])),
        I::sides("g", "P[8,1] phi(q)^3 / 6 = q phi(q^8)^2 psi(q^8)", 1000, |n| {
            phi(1, n)?.pow(3)?.project(8, 1)?.div_exact(6)
        }, |n| term(1, 1, [phi(8, n)?.pow(2), psi(8, n)])),
        I::sides("zzz1", "P[8,5] phi(q)^3 / 24 = q^5 psi(q^16)^2 psi(q^8)", 1000, |n| {
            phi(1, n)?.pow(3)?.project(8, 5)?.div_exact(24)
        }, |n| term(1, 5, [psi(16, n)?.pow(2), psi(8, n)])),
        I::sides("t1", "P[8,1] (phi(q)^3 / 6 - sum (-4/n) n q^(n^2)) = 8q^9 psi(q^32)^2 psi(q^8)", 1000, |n| {
            let cube = phi(1, n)?.pow(3)?.project(8, 1)?.div_exact(6)?;
            cube.sub(&chi(SquareCharacter::Minus4, n)?.project(8, 1)?)
        }, |n| term(8, 9, [psi(32, n)?.pow(2), psi(8, n)])),
        I::sides("c0", "phi(-q) = phi(q^4) - 2q psi(q^8)", 3000, |n| phi_neg(1, n), |n| {
            phi(4, n)?.sub(&term(2, 1, [psi(8, n)])?)
        }),
        I::sides("c1", "phi(-q^2) = phi(q^2) - 4q^2 psi(q^16)", 3000, |n| phi_neg(2, n), |n| {
            phi(2, n)?.sub(&term(4, 2, [psi(16, n)])?)
        }),
        I::sides("c3", "phi(q)^2 psi(-q) = phi(q^2) phi(q) psi(q) - 4q^2 psi(q^16) phi(q) psi(q)", 1000, |n| {
            prod([phi(1, n)?.pow(2), psi_neg(1, n)])
        }, |n| {
            prod([phi(2, n), phi(1, n), psi(1, n)])?.sub(&term(4, 2, [psi(16, n), phi(1, n), psi(1, n)])?)
        }),
        I::sides(
            "c4",
            "q phi(q^8)^2 psi(-q^8) = q phi(q^16) psi(q^8) phi(q^8) - 4q^17 phi(q^8) psi(q^8) psi(q^128)",
            3000,
            |n| term(1, 1, [phi(8, n)?.pow(2), psi_neg(8, n)]),
            |n| {
                term(1, 1, [phi(16, n), psi(8, n), phi(8, n)])?
                    .sub(&term(4, 17, [phi(8, n), psi(8, n), psi(128, n)])?)
            },
        ),
        I::sides("c5", "q phi(q^8)^2 psi(-q^8) = q E(-q^8)^3", 3000, |n| term(1, 1, [phi(8, n)?.pow(2), psi_neg(8, n)]), |n| {
            Ok(e_neg(8, n)?.pow(3)?.shift(1))
        }),
        I::sides(
            "id112",
            "q psi(q^8) phi(q^8) phi(q^16) - q E(-q^8)^3 = 4q^17 phi(q^8) psi(q^8) psi(q^128)",
            3000,
            |n| term(1, 1, [psi(8, n), phi(8, n), phi(16, n)])?.sub(&e_neg(8, n)?.pow(3)?.shift(1)),
            |n| term(4, 17, [phi(8, n), psi(8, n), psi(128, n)]),
        ),
        I::sides("gg", "P[8,1] phi(q)^2 phi(q^2) / 4 = q psi(q^8) phi(q^8) phi(q^16)", 1000, |n| {
            prod([phi(1, n)?.pow(2), phi(2, n)])?.project(8, 1)?.div_exact(4)
        }, |n| term(1, 1, [psi(8, n), phi(8, n), phi(16, n)])),
        I::sides(
            "t2",
            "P[8,1] (phi(q)^2 phi(q^2) / 4 - sum (-2/n) n q^(n^2)) = 4q^17 phi(q^8) psi(q^8) psi(q^128)",
            3000,
            |n| {
                let main = prod([phi(1, n)?.pow(2), phi(2, n)])?.project(8, 1)?.div_exact(4)?;
                main.sub(&chi(SquareCharacter::Minus2, n)?.project(8, 1)?)
            },
            |n| term(4, 17, [phi(8, n), psi(8, n), psi(128, n)]),
        ),
        I::sides(
            "jpeg1",
            "P[24,1] (phi(q)^2 phi(q^3) - 4 sum (-12/n) n q^(n^2)) = 16q^25 psi(q^72) c(q^48)",
            3000,
            |n| {
                let chars = chi(SquareCharacter::Minus12, n)?.scale(4)?;
                phi2_phi3(n)?.sub(&chars)?.project(24, 1)
            },
            |n| term(16, 25, [psi(72, n), c(48, n)]),
        ),
        I::sides(
            "b10-lattice",
            "sum over x=1 (4), y=2 (8), z=2 (8) of q^(x^2+y^2+z^2) = q^9 psi(q^8) psi(q^32)^2",
            3000,
            |n| crate::lattice::RestrictedPreset::B10.theta(n),
            |n| term(1, 9, [psi(8, n), psi(32, n)?.pow(2)]),
        ),
        I::sides(
            "b20-lattice",
            "sum over x=1 (4), y=4 (16), z=0 (2) of q^(x^2+y^2+2z^2) = q^17 phi(q^8) psi(q^8) psi(q^128)",
            3000,
            |n| crate::lattice::RestrictedPreset::B20.theta(n),
            |n| term(1, 17, [phi(8, n), psi(8, n), psi(128, n)]),
        ),
        I::sides(
            "b30-lattice",
            "3 sum over x=3 (12), y=z (6), y+z=2 (6) of q^(x^2+4y^2+12z^2) = q^25 psi(q^72) c(q^48)",
            3000,
            |n| crate::lattice::RestrictedPreset::B30.theta(n)?.scale(3),
            |n| term(1, 25, [psi(72, n), c(48, n)]),
        ),
        I::sides(
            "gauss-odd-cubes",
            "sum over odd x, y, z of q^(x^2+y^2+z^2) = 8q^3 psi(q^8)^3",
            3000,
            |n| crate::lattice::RestrictedPreset::OddCubes.theta(n),
            |n| term(8, 3, [psi(8, n)?.pow(3)]),
        ),
        // genus mates of discriminant 432
        I::sides(
            "eq-4-1",
            "sum q^(72x^2+12xy+y^2) - sum q^(72x^2+60xy+13y^2) = 2q E(q^12)^2",
            1000,
            |n| binary(72, 12, 1, n)?.sub(&binary(72, 60, 13, n)?),
            |n| term(2, 1, [e(12, n)?.pow(2)]),
        ),
        I::sides("eq-4-2", "sum q^(72x^2+12xy+y^2) = phi(q) phi(q^36)", 1000, |n| binary(72, 12, 1, n), |n| {
            prod([phi(1, n), phi(36, n)])
        }),
        I::sides("eq-4-3", "sum q^(72x^2+60xy+13y^2) = phi(q^4) phi(q^9)", 1000, |n| binary(72, 60, 13, n), |n| {
            prod([phi(4, n), phi(9, n)])
        }),
        I::sides(
            "eq-4-4",
            "theta(1,3,36,0,0,0) - theta(3,4,9,0,0,0) = 2q phi(q^3) E(q^12)^2",
            8192,
            |n| {
                let regular = TernaryForm::diagonal(1, 3, 36).theta_series(n)?;
                regular.sub(&TernaryForm::diagonal(3, 4, 9).theta_series(n)?)
            },
            |n| term(2, 1, [phi(3, n), e(12, n)?.pow(2)]),
        ),
        // the two forms of discriminant 16384
        I::custom(
            "identity1",
            "9x^2+16y^2+36z^2+16yz+4xz+8xy = (x+4y+2z)^2 + 8x^2 + 32z^2 on [-5,5]^3",
            1,
            |_| {
                Ok(grid_check(
                    |x, y, z| JP1.value(x, y, z),
                    |x, y, z| (x + 4 * y + 2 * z).pow(2) + 8 * x * x + 32 * z * z,
                ))
            },
        ),
        I::custom(
            "identity1-jp2",
            "9x^2+17y^2+32z^2-8yz+8xz+6xy = (x+3y-4z)^2 + 4(x-y)^2 + 4(x+y+2z)^2 on [-5,5]^3",
            1,
            |_| {
                Ok(grid_check(
                    |x, y, z| JP2.value(x, y, z),
                    |x, y, z| (x + 3 * y - 4 * z).pow(2) + 4 * (x - y).pow(2) + 4 * (x + y + 2 * z).pow(2),
                ))
            },
        ),
        I::sides(
            "identity2-jp1",
            "theta(9,16,36,16,4,8) = phi(q^64)^3 + 2q^16 psi(q^128) phi(q^64)^2 + 8q^36 psi(q^32) psi(q^128)^2 + 2q^9 psi(q^8) psi(q^32)^2",
            8192,
            |n| JP1.theta_series(n),
            |n| {
                jp1_even_aligned(n)?
                    .add(&term(8, 36, [psi(32, n), psi(128, n)?.pow(2)])?)?
                    .add(&odd_part(n)?)
            },
        ),
        I::sides(
            "identity2-jp2",
            "theta(9,17,32,-8,8,6) = phi(q^32)^2 phi(q^256) + 2q^20 psi(q^32) psi(q^64)^2 + 8q^80 psi(q^128) psi(q^256)^2 + 16q^144 psi(q^128) psi(q^512)^2 + 4q^36 psi(q^32) psi(q^128)^2 + 2q^9 psi(q^8) psi(q^32)^2",
            8192,
            |n| JP2.theta_series(n),
            |n| {
                let parts = [
                    prod([phi(32, n)?.pow(2), phi(256, n)]),
                    term(2, 20, [psi(32, n), psi(64, n)?.pow(2)]),
                    term(8, 80, [psi(128, n), psi(256, n)?.pow(2)]),
                    term(16, 144, [psi(128, n), psi(512, n)?.pow(2)]),
                    term(4, 36, [psi(32, n), psi(128, n)?.pow(2)]),
                    odd_part(n),
                ];
                parts.into_iter().try_fold(QSeries::zero(n), |acc, p| acc.add(&p?))
            },
        ),
        I::sides(
            "identity3",
            "theta(9,16,36,16,4,8) = sum q^((2x+4y+2z)^2+8(2x)^2+32z^2) + sum q^((2x+1+4y+2z)^2+8(2x+1)^2+32z^2)",
            1000,
            |n| JP1.theta_series(n),
            |n| JP1_EVEN.theta_series(n)?.add(&restricted(JP1, vec![on(0, 2, 1)], n)?),
        ),
        I::sides(
            "identity4",
            "sum over x=z (2) of q^((2x+4y+2z)^2+32x^2+32z^2) = phi(q^64)^3 + 2q^16 psi(q^128) phi(q^64)^2",
            3000,
            |n| restricted(JP1_EVEN, vec![joint([1, 0, -1], 2, 0)], n),
            jp1_even_aligned,
        ),
        I::sides(
            "identity4-split",
            "sum over x=z (2) of q^((2x+4y+2z)^2+32x^2+32z^2) = sum q^(16y^2+64x^2+64z^2)",
            3000,
            |n| restricted(JP1_EVEN, vec![joint([1, 0, -1], 2, 0)], n),
            |n| TernaryForm::diagonal(64, 16, 64).theta_series(n),
        ),
        I::sides(
            "identity5",
            "sum over x!=z (2) of q^((2x+4y+2z)^2+32x^2+32z^2) = 8q^36 psi(q^32) psi(q^128)^2",
            3000,
            |n| restricted(JP1_EVEN, vec![joint([1, 0, -1], 2, 1)], n),
            |n| term(8, 36, [psi(32, n), psi(128, n)?.pow(2)]),
        ),
        I::sides(
            "identity5-split",
            "sum over x!=z (2) of q^((2x+4y+2z)^2+32x^2+32z^2) = sum over x odd, y=2 (4), z odd of q^(16x^2+y^2+16z^2)",
            3000,
            |n| restricted(JP1_EVEN, vec![joint([1, 0, -1], 2, 1)], n),
            |n| restricted(TernaryForm::diagonal(16, 1, 16), vec![on(0, 2, 1), on(1, 4, 2), on(2, 2, 1)], n),
        ),
        I::sides(
            "identity6",
            "sum q^((2x+4y+2z)^2+32x^2+32z^2) = phi(q^64)^3 + 2q^16 psi(q^128) phi(q^64)^2 + 8q^36 psi(q^32) psi(q^128)^2",
            3000,
            |n| JP1_EVEN.theta_series(n),
            |n| jp1_even_aligned(n)?.add(&term(8, 36, [psi(32, n), psi(128, n)?.pow(2)])?),
        ),
        I::sides(
            "identity7",
            "sum q^((2x+1+4y+2z)^2+8(2x+1)^2+32z^2) = 2q^9 psi(q^8) psi(q^32)^2",
            3000,
            |n| restricted(JP1, vec![on(0, 2, 1)], n),
            odd_part,
        ),
        I::sides(
            "identity7-split",
            "sum q^((2x+1+4y+2z)^2+8(2x+1)^2+32z^2) = sum q^((4y+1)^2+4(4x+1)^2+4(4z+1)^2) + sum q^((4y+3)^2+4(4x+3)^2+4(4z+3)^2)",
            3000,
            |n| restricted(JP1, vec![on(0, 2, 1)], n),
            |n| {
                let form = TernaryForm::diagonal(4, 1, 4);
                let ones = restricted(form, vec![on(0, 4, 1), on(1, 4, 1), on(2, 4, 1)], n)?;
                ones.add(&restricted(form, vec![on(0, 4, 3), on(1, 4, 3), on(2, 4, 3)], n)?)
            },
        ),
    ]
}

fn binary(a: i64, b: i64, c: i64, n: usize) -> Result<QSeries> {
    crate::lattice::BinaryForm::new(a, b, c).theta_series(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_checks_catch_a_wrong_polynomial() {
        let m = grid_check(|x, _, _| x * x, |x, _, _| x * x + (x == 2) as i64).unwrap();
        assert_eq!((m.lhs, m.rhs), (4, 5));
        assert!(grid_check(|x, y, z| x + y + z, |x, y, z| z + y + x).is_none());
    }

    #[test]
    fn step1_right_side_is_integral() {
        assert_eq!(step1_rhs(40).unwrap(), a(2, 40).unwrap());
    }
}

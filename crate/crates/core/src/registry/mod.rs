//! A named catalog of q-series identities, each checked coefficient by
//! coefficient at a chosen truncation order.
//!
//! Most cases compare two builders `N -> QSeries`. A few (the quintuple
//! product in two variables and the polynomial identities behind the lattice
//! decompositions) carry a custom check instead.

mod catalog;

use std::fmt;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::QSeries;

/// Builds one side of an identity to `q^N`.
pub type Builder = Arc<dyn Fn(usize) -> Result<QSeries> + Send + Sync>;

/// A check that is not a plain comparison of two series.
pub type CustomCheck = Arc<dyn Fn(usize) -> Result<Option<Mismatch>> + Send + Sync>;

#[derive(Clone)]
pub enum Check {
    Sides { lhs: Builder, rhs: Builder },
    Custom(CustomCheck),
}

#[derive(Clone)]
pub struct IdentityCase {
    pub name: &'static str,
    /// The identity in plain notation.
    pub formula: &'static str,
    pub default_trunc: usize,
    pub check: Check,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("name", &self.name)
            .field("formula", &self.formula)
            .field("default_trunc", &self.default_trunc)
            .finish_non_exhaustive()
    }
}

impl IdentityCase {
    pub fn sides(
        name: &'static str,
        formula: &'static str,
        default_trunc: usize,
        lhs: impl Fn(usize) -> Result<QSeries> + Send + Sync + 'static,
        rhs: impl Fn(usize) -> Result<QSeries> + Send + Sync + 'static,
    ) -> Self {
        IdentityCase {
            name,
            formula,
            default_trunc,
            check: Check::Sides { lhs: Arc::new(lhs), rhs: Arc::new(rhs) },
        }
    }

    pub fn custom(
        name: &'static str,
        formula: &'static str,
        default_trunc: usize,
        check: impl Fn(usize) -> Result<Option<Mismatch>> + Send + Sync + 'static,
    ) -> Self {
        IdentityCase { name, formula, default_trunc, check: Check::Custom(Arc::new(check)) }
    }

    /// The same case with the right-hand side doubled; it must fail.
    pub fn perturbed(&self) -> Result<Self> {
        let Check::Sides { lhs, rhs } = &self.check else {
            return Err(invalid(format!("`{}` has no right-hand side to perturb", self.name)));
        };
        let rhs = rhs.clone();
        Ok(IdentityCase {
            check: Check::Sides { lhs: lhs.clone(), rhs: Arc::new(move |n| rhs(n)?.scale(2)) },
            ..self.clone()
        })
    }

    /// Builds both sides (for [`Check::Sides`]) truncated to `q^n`.
    pub fn build_sides(&self, n: usize) -> Result<Option<(QSeries, QSeries)>> {
        let Check::Sides { lhs, rhs } = &self.check else {
            return Ok(None);
        };
        let (l, r) = rayon::join(|| lhs(n), || rhs(n));
        let fit = |s: QSeries, side: &str| -> Result<QSeries> {
            if s.trunc() < n {
                return Err(invalid(format!(
                    "{} side of `{}` only reaches q^{} (asked for q^{n})",
                    side,
                    self.name,
                    s.trunc()
                )));
            }
            s.truncate(n)
        };
        Ok(Some((fit(l?, "left")?, fit(r?, "right")?)))
    }

    pub fn verify(&self, n: usize) -> Result<Report> {
        if n == 0 {
            return Err(invalid("truncation order must be at least 1"));
        }
        let start = Instant::now();
        let first_mismatch = match &self.check {
            Check::Sides { .. } => {
                let (l, r) = self.build_sides(n)?.expect("sides case");
                l.first_difference(&r).map(|(degree, lhs, rhs)| Mismatch { degree, lhs, rhs })
            }
            Check::Custom(check) => check(n)?,
        };
        Ok(Report {
            identity: self.name.to_string(),
            trunc: n,
            status: if first_mismatch.is_none() { Status::Pass } else { Status::Fail },
            first_mismatch,
            elapsed: start.elapsed(),
        })
    }
}

/// First coefficient where the two sides differ. For grid checks `degree`
/// is the index of the failing grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub identity: String,
    pub trunc: usize,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Every registered case, sorted by name.
pub fn catalog() -> &'static [IdentityCase] {
    static CATALOG: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut cases = catalog::cases();
        cases.sort_by_key(|c| c.name);
        cases
    })
}

pub fn names() -> impl Iterator<Item = &'static str> {
    catalog().iter().map(|c| c.name)
}

/// Finds a case by name. Underscores and upper case are accepted as
/// spellings of the kebab-case name.
pub fn lookup(name: &str) -> Result<&'static IdentityCase> {
    let cases = catalog();
    let key = name.to_ascii_lowercase().replace('_', "-");
    cases
        .binary_search_by_key(&key.as_str(), |c| c.name)
        .map(|i| &cases[i])
        .map_err(|_| Error::UnknownIdentity(name.to_string()))
}

/// Verifies one identity at truncation `n`.
pub fn verify(name: &str, n: usize) -> Result<Report> {
    lookup(name)?.verify(n)
}

/// Verifies every identity at truncation `n`, in parallel; reports are
/// sorted by name.
pub fn verify_all(n: usize) -> Result<Vec<Report>> {
    catalog().par_iter().map(|c| c.verify(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_kebab_case() {
        let names: Vec<_> = names().collect();
        let mut dedup = names.clone();
        dedup.dedup();
        assert_eq!(names, dedup);
        for n in names {
            assert!(n.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-'), "{n}");
        }
        assert!(catalog().len() >= 55);
    }

    #[test]
    fn lucky_passes() {
        let r = verify("lucky", 500).unwrap();
        assert!(r.passed());
        assert_eq!(r.trunc, 500);
        assert!(r.first_mismatch.is_none());
    }

    #[test]
    fn unknown_name() {
        assert_eq!(verify("no-such", 10).unwrap_err(), Error::UnknownIdentity("no-such".into()));
        assert!(verify("lucky", 0).is_err());
        assert_eq!(verify("identity2_jp1", 200).unwrap().identity, "identity2-jp1");
        assert_eq!(lookup("JAC1").unwrap().name, "jac1");
    }

    #[test]
    fn perturbed_case_fails_at_first_nonzero() {
        let case = lookup("lucky").unwrap().perturbed().unwrap();
        let r = case.verify(100).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.first_mismatch, Some(Mismatch { degree: 0, lhs: 1, rhs: 2 }));
        let case = lookup("jac1").unwrap().perturbed().unwrap();
        let m = case.verify(100).unwrap().first_mismatch.unwrap();
        assert_eq!((m.degree, m.lhs, m.rhs), (1, 1, 2));
    }

    #[test]
    fn default_orders_are_not_vacuous() {
        for case in catalog() {
            if let Some((l, r)) = case.build_sides(case.default_trunc).unwrap() {
                assert!(l.nonzero_count() > 25, "{} lhs", case.name);
                assert!(r.nonzero_count() > 25, "{} rhs", case.name);
            }
        }
    }

    #[test]
    fn all_pass_at_small_order() {
        for r in verify_all(300).unwrap() {
            assert!(r.passed(), "{} {:?}", r.identity, r.first_mismatch);
        }
    }
}

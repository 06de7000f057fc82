//! Naive oracles shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;

use ternary_theta::arith::HurwitzForm;
use ternary_theta::classify::CatalogId;
use ternary_theta::lattice::{CongruenceSystem, TernaryForm};

/// Largest `|x|` over `Q(x, y, z) <= n`, from the inverse Gram matrix, plus
/// a margin. Deliberately independent of the library's own bounds.
fn coordinate_bound(cofactor: i128, disc: i128, n: usize) -> i64 {
    let sq = (n as i128 * cofactor) / disc;
    ((sq as f64).sqrt() as i64) + 2
}

/// Representation counts `r(Q; m)` for `m <= n` by a plain triple loop.
pub fn brute_theta(form: &TernaryForm, n: usize, system: Option<&CongruenceSystem>) -> Vec<i64> {
    let TernaryForm { a, b, c, d, e, f } = *form;
    let disc = form.discriminant();
    let wide = |v: i64| v as i128;
    let bx = coordinate_bound(4 * wide(b) * wide(c) - wide(d) * wide(d), disc, n);
    let by = coordinate_bound(4 * wide(a) * wide(c) - wide(e) * wide(e), disc, n);
    let bz = coordinate_bound(4 * wide(a) * wide(b) - wide(f) * wide(f), disc, n);
    let mut out = vec![0i64; n + 1];
    for x in -bx..=bx {
        for y in -by..=by {
            for z in -bz..=bz {
                let v = form.value(x, y, z);
                if v >= 0 && (v as usize) <= n && system.is_none_or(|s| s.is_satisfied(x, y, z)) {
                    out[v as usize] += 1;
                }
            }
        }
    }
    out
}

/// Every ternary form the library names somewhere, deduplicated.
pub fn catalogued_forms() -> Vec<TernaryForm> {
    let mut forms: Vec<TernaryForm> = CatalogId::ALL.iter().map(CatalogId::form).collect();
    for id in HurwitzForm::ALL {
        forms.extend(id.forms());
    }
    forms.push(TernaryForm::diagonal(1, 4, 12));
    forms.sort_by_key(|f| (f.a, f.b, f.c, f.d, f.e, f.f));
    forms.dedup();
    forms
}

/// Unimodular matrices as products of the generators `T = [[1,1],[0,1]]`,
/// its inverse and `S = [[0,-1],[1,0]]`.
pub fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::collection::vec(0u8..3, 0..12).prop_map(|word| {
        let mut m = [[1i64, 0], [0, 1]];
        for g in word {
            let step = match g {
                0 => [[1, 1], [0, 1]],
                1 => [[1, -1], [0, 1]],
                _ => [[0, -1], [1, 0]],
            };
            m = [
                [m[0][0] * step[0][0] + m[0][1] * step[1][0], m[0][0] * step[0][1] + m[0][1] * step[1][1]],
                [m[1][0] * step[0][0] + m[1][1] * step[1][0], m[1][0] * step[0][1] + m[1][1] * step[1][1]],
            ];
        }
        m
    })
}

//! Helpers shared by the integration tests: fixture loading and
//! independent oracles.

#![allow(dead_code)]

use std::path::PathBuf;

use jdiagram::{parse, Diagram};

pub const FIXTURES: [&str; 3] = ["johansson_s3", "s2xs1", "s333_torus"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.jdg"))
}

pub fn load(name: &str) -> Diagram {
    parse(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors by determinantal divisors: d_k is the gcd of all k x k
/// minors, and the k-th invariant factor is d_k / d_{k-1}.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let w: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    det(&w)
}

/// (free rank, torsion coefficients > 1) of the abelian group presented by
/// the rows of `m`.
pub fn abelian_group(m: &[Vec<i64>]) -> (usize, Vec<i128>) {
    let f = invariant_factors_by_minors(m);
    let cols = m.first().map_or(0, |r| r.len());
    (cols - f.len(), f.into_iter().filter(|&x| x != 1).collect())
}

/// H1 of the Seifert manifold (Oo0 | b; (a_1, b_1), ..., (a_n, b_n)) from
/// the abelianized presentation with generators q_1..q_n, h:
/// a_i q_i + b_i h = 0 and q_1 + ... + q_n = b h. `literal_sign` uses
/// q_1 + ... + q_n - h = 0 instead of the last relation with b = -1, which
/// is the form in which the relations were handed to us.
pub fn seifert_h1(b: i64, fibres: &[(i64, i64)], literal_sign: bool) -> (usize, Vec<i128>) {
    let n = fibres.len();
    let mut rows = Vec::new();
    for (i, &(a, bi)) in fibres.iter().enumerate() {
        let mut r = vec![0; n + 1];
        r[i] = a;
        r[n] = bi;
        rows.push(r);
    }
    let mut last = vec![1; n + 1];
    last[n] = if literal_sign { -1 } else { -b };
    rows.push(last);
    abelian_group(&rows)
}

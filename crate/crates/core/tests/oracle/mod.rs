//! Brute-force reference answers computed straight from the definitions on
//! boolean matrices, sharing no code with the library's decision procedures.
#![allow(dead_code)]

use ump_core::order::{BinaryRelation, Preorder};
use ump_core::universality::Predicate;

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(r: &BinaryRelation) -> Matrix {
    let n = r.len();
    (0..n)
        .map(|a| (0..n).map(|b| r.holds(a, b)).collect())
        .collect()
}

pub fn order(p: &Preorder) -> Matrix {
    matrix(p.relation())
}

pub fn flags(p: &Predicate) -> Vec<bool> {
    (0..p.carrier().len()).map(|i| p.holds(i)).collect()
}

fn all_to(r: &Matrix, v: usize, exclude_self: bool) -> bool {
    (0..r.len()).all(|x| (exclude_self && x == v) || r[x][v])
}

pub fn strict(r: &Matrix, u: usize, exclude_self: bool) -> bool {
    all_to(r, u, exclude_self) && (0..r.len()).all(|v| !all_to(r, v, exclude_self) || v == u)
}

pub fn up_to(r: &Matrix, le: &Matrix, u: usize, exclude_self: bool) -> bool {
    all_to(r, u, exclude_self)
        && (0..r.len()).all(|v| !all_to(r, v, exclude_self) || (le[v][u] && le[u][v]))
}

pub fn ump(q: &Matrix, le: &Matrix, u: usize, dual: bool) -> bool {
    let n = q.len();
    let r: Matrix = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| !q[a][b] || if dual { le[b][a] } else { le[a][b] })
                .collect()
        })
        .collect();
    up_to(&r, le, u, false)
}

/// `P(u)` and every `P`-element lies below `u` (above, when `dual`).
pub fn compact(p: &[bool], le: &Matrix, u: usize, dual: bool) -> bool {
    p[u] && (0..p.len()).all(|x| !p[x] || if dual { le[u][x] } else { le[x][u] })
}

/// Greatest lower bounds of `a` and `b`.
pub fn glbs(le: &Matrix, a: usize, b: usize) -> Vec<usize> {
    let n = le.len();
    let lower: Vec<usize> = (0..n).filter(|&m| le[m][a] && le[m][b]).collect();
    lower
        .iter()
        .copied()
        .filter(|&m| lower.iter().all(|&l| le[l][m]))
        .collect()
}

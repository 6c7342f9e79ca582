//! Writing an element of U as a product of positive affine root letters.
//!
//! Row reduction with operations row_i += c·row_j, where c has nonnegative t-degree
//! above the diagonal and positive t-degree below it. Each operation is left
//! multiplication by a positive letter, so M = L₁⁻¹⋯L_k⁻¹ once L_k⋯L₁M = I.

use crate::error::{Result, TwlError};
use crate::linear::{GroupWord, Letter, Matrix};
use crate::ring::Poly;

/// Leading term of a nonzero polynomial as a unit.
fn lead(p: &Poly) -> crate::ring::Unit {
    let m = p.max_exp().expect("nonzero");
    Poly::monomial(p.ring(), p.coeff(m), m).as_unit().expect("nonzero leading coefficient")
}

fn degree(p: &Poly) -> i64 {
    p.max_exp().expect("nonzero")
}

/// Splits a payload into single-term letters, ascending in t.
pub fn monomial_letters(l: &Letter) -> Vec<Letter> {
    l.payload
        .monomials()
        .into_iter()
        .map(|p| Letter::x(l.root.i, l.root.j, p).expect("valid root"))
        .collect()
}

/// A word of single-term positive letters whose product is `m`.
pub fn u_word(m: &Matrix) -> Result<GroupWord> {
    if !m.in_u() {
        return Err(TwlError::Domain("matrix is not in U".into()));
    }
    let n = m.n();
    let ring = m.ring().clone();
    let mut a = m.clone();
    let mut ops: Vec<Letter> = Vec::new();
    let mut op = |a: &mut Matrix, i: usize, j: usize, c: Poly| {
        a.left_x(i, j, &c);
        ops.push(Letter::x(i, j, c).expect("i != j"));
    };
    for c in 1..=n {
        for i in c + 1..=n {
            while !a.get(i, c).is_zero() {
                let (p, q) = (a.get(c, c).clone(), a.get(i, c).clone());
                if degree(&q) > degree(&p) {
                    let mult = lead(&q).mul(&lead(&p).inv()).neg();
                    op(&mut a, i, c, mult.to_poly());
                } else {
                    let mult = lead(&p).mul(&lead(&q).inv()).neg();
                    op(&mut a, c, i, mult.to_poly());
                }
            }
        }
        if !a.get(c, c).is_one() {
            return Err(TwlError::Internal(format!("pivot ({c},{c}) did not reduce to 1")));
        }
    }
    for j in (2..=n).rev() {
        for i in (1..j).rev() {
            let e = a.get(i, j).clone();
            if !e.is_zero() {
                op(&mut a, i, j, -&e);
            }
        }
    }
    debug_assert!(a.is_identity());
    let letters = ops.iter().flat_map(|l| monomial_letters(&l.inverse())).collect();
    GroupWord::new(&ring, n, letters)
}

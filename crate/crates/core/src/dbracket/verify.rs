//! Residuals of the bracket identities. Every function returns what must
//! vanish; a zero return means the identity holds exactly for the inputs.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{double_bracket, loday_bracket};
use crate::algebra::{casimir_c, hamiltonian_h, AlgebraElement};
use crate::cyclic::{project, CyclicElement};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::scalar::Scalar;
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

fn one() -> AlgebraElement {
    AlgebraElement::one()
}

/// Residuals of `⟨⟨a⊗bc⟩⟩ = ⟨⟨a⊗b⟩⟩(1⊗c) + (b⊗1)⟨⟨a⊗c⟩⟩` and
/// `⟨⟨ab⊗c⟩⟩ = ⟨⟨a⊗c⟩⟩(b⊗1) + (1⊗a)⟨⟨b⊗c⟩⟩`.
pub fn verify_leibniz(
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
) -> (TensorElement, TensorElement) {
    let second = {
        let lhs = double_bracket(a, &(b * c));
        let x = double_bracket(a, b).mul(&TensorElement::tensor(&one(), c));
        let y = TensorElement::tensor(b, &one()).mul(&double_bracket(a, c));
        &(&lhs - &x) - &y
    };
    let first = {
        let lhs = double_bracket(&(a * b), c);
        let x = double_bracket(a, c).mul(&TensorElement::tensor(b, &one()));
        let y = TensorElement::tensor(&one(), a).mul(&double_bracket(b, c));
        &(&lhs - &x) - &y
    };
    (second, first)
}

/// `{a, bc} − {a,b}c − b{a,c}`.
pub fn verify_loday_leibniz(
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
) -> AlgebraElement {
    let lhs = loday_bracket(a, &(b * c));
    &(&lhs - &(&loday_bracket(a, b) * c)) - &(b * &loday_bracket(a, c))
}

/// `{ab, c} − {ba, c}`.
pub fn verify_cyclic_first_arg(
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
) -> AlgebraElement {
    &loday_bracket(&(a * b), c) - &loday_bracket(&(b * a), c)
}

/// `π({a,b} + {b,a})`.
pub fn verify_skew_mod_commutator(a: &AlgebraElement, b: &AlgebraElement) -> CyclicElement {
    project(&(&loday_bracket(a, b) + &loday_bracket(b, a)))
}

/// `π({a,b} − {b,a})`: the plus-sign reading of skew-symmetry, reported
/// alongside the minus-sign one to show which of the two holds.
pub fn verify_symmetric_mod_commutator(a: &AlgebraElement, b: &AlgebraElement) -> CyclicElement {
    project(&(&loday_bracket(a, b) - &loday_bracket(b, a)))
}

/// `{H1,{H2,x}} − {H2,{H1,x}} − {{H1,H2},x}`.
pub fn verify_jacobi(
    h1: &AlgebraElement,
    h2: &AlgebraElement,
    x: &AlgebraElement,
) -> AlgebraElement {
    let a = loday_bracket(h1, &loday_bracket(h2, x));
    let b = loday_bracket(h2, &loday_bracket(h1, x));
    let c = loday_bracket(&loday_bracket(h1, h2), x);
    &(&a - &b) - &c
}

/// `r = uv ⊗ u⁻¹v⁻¹`.
pub fn casimir_r() -> TensorElement {
    use Letter::*;
    TensorElement::pure(Word::reduce(&[U, V]), Word::reduce(&[UInv, VInv]), 1)
}

/// `⟨⟨a⊗c⟩⟩ − ((1⊗a)r − r(a⊗1))` and `{a, c}`.
pub fn verify_right_casimir(a: &AlgebraElement) -> (TensorElement, AlgebraElement) {
    let c = casimir_c();
    let r = casimir_r();
    let expected = &TensorElement::tensor(&one(), a).mul(&r) - &r.mul(&TensorElement::tensor(a, &one()));
    (&double_bracket(a, &c) - &expected, loday_bracket(a, &c))
}

/// `π({hᴺ, hᴹ})`.
pub fn verify_involution(n: u32, m: u32, guard: &Guard) -> Result<CyclicElement> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition(format!(
            "involution degrees must be positive, got ({n}, {m})"
        )));
    }
    guard.check_involution(n, m)?;
    let h = hamiltonian_h();
    let hn = h.pow(n as i64)?;
    guard.check_terms("h^N", hn.len())?;
    let hm = h.pow(m as i64)?;
    guard.check_terms("h^M", hm.len())?;
    guard.check_terms("term pairs of {h^N, h^M}", hn.len().saturating_mul(hm.len()))?;
    Ok(project(&loday_bracket(&hn, &hm)))
}

/// Degree used by the four-letter potential: `deg v = deg u⁻¹ = 1`,
/// `deg u = deg v⁻¹ = −1`.
pub fn letter_degree(l: Letter) -> i64 {
    match l {
        Letter::V | Letter::UInv => 1,
        Letter::U | Letter::VInv => -1,
    }
}

/// `f(x1, x2, x3, x4)`.
pub fn quadruple_potential(x: [Letter; 4]) -> i64 {
    if x[1] == x[3] {
        letter_degree(x[1])
    } else if x[2].is_inverse_of(x[3]) {
        letter_degree(x[2])
    } else {
        0
    }
}

/// The published values of `f` on the sixteen words over `{u, v}`.
pub const QUADRUPLE_TABLE: [(&str, i64); 16] = [
    ("vvuv", 1),
    ("uvvv", 1),
    ("vvvv", 1),
    ("uvuv", 1),
    ("vvuu", 0),
    ("vuuv", 0),
    ("uvvu", 0),
    ("uuvv", 0),
    ("vvvu", 0),
    ("vuvv", 0),
    ("uvuu", 0),
    ("uuuv", 0),
    ("vuuu", -1),
    ("vuvu", -1),
    ("uuuu", -1),
    ("uuvu", -1),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadrupleMismatch {
    pub word: String,
    pub table: i64,
    pub formula: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadrupleReport {
    pub entries: usize,
    pub matches: usize,
    pub mismatches: Vec<QuadrupleMismatch>,
}

pub fn verify_quadruple_potential() -> QuadrupleReport {
    let mut mismatches = Vec::new();
    for (word, expected) in QUADRUPLE_TABLE {
        let letters: Vec<Letter> = word
            .chars()
            .map(|ch| if ch == 'u' { Letter::U } else { Letter::V })
            .collect();
        let got = quadruple_potential([letters[0], letters[1], letters[2], letters[3]]);
        if got != expected {
            mismatches.push(QuadrupleMismatch {
                word: word.to_string(),
                table: expected,
                formula: got,
            });
        }
    }
    QuadrupleReport {
        entries: QUADRUPLE_TABLE.len(),
        matches: QUADRUPLE_TABLE.len() - mismatches.len(),
        mismatches,
    }
}

/// `⟨⟨a⊗b⟩⟩ + ⟨⟨b⊗a⟩⟩°`: strong antisymmetry, which this bracket is not
/// expected to satisfy.
pub fn strong_antisymmetry_residual(a: &AlgebraElement, b: &AlgebraElement) -> TensorElement {
    &double_bracket(a, b) + &double_bracket(b, a).opposite()
}

/// Element of `A⊗A⊗A` as a map from word triples.
pub type TripleTensor = BTreeMap<[Word; 3], Scalar>;

pub fn triple(a: &AlgebraElement, b: &AlgebraElement, c: &AlgebraElement) -> TripleTensor {
    let mut out = TripleTensor::new();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            for (wc, cc) in c.terms() {
                *out.entry([wa.clone(), wb.clone(), wc.clone()]).or_default() += &(&(ca * cb) * cc);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `R_mn`: applies the double bracket to tensor slots `m, n`, writing the
/// left factor of the result into slot `m` and the right one into slot `n`.
pub fn apply_r(t: &TripleTensor, m: usize, n: usize) -> TripleTensor {
    let mut out = TripleTensor::new();
    for (ws, c) in t {
        let db = double_bracket(&AlgebraElement::from(ws[m].clone()), &AlgebraElement::from(ws[n].clone()));
        for ((l, r), d) in db.terms() {
            let mut key = ws.clone();
            key[m] = l.clone();
            key[n] = r.clone();
            *out.entry(key).or_default() += &(c * d);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add_into(dst: &mut TripleTensor, src: TripleTensor) {
    for (k, c) in src {
        *dst.entry(k).or_default() += &c;
    }
}

/// `(R₁₂R₂₃ + R₃₁R₁₂ + R₂₃R₃₁)(a⊗b⊗c)`, the strong Jacobi identity, which
/// this bracket is not expected to satisfy.
pub fn strong_jacobi_residual(a: &AlgebraElement, b: &AlgebraElement, c: &AlgebraElement) -> TripleTensor {
    let t = triple(a, b, c);
    let mut out = TripleTensor::new();
    add_into(&mut out, apply_r(&apply_r(&t, 1, 2), 0, 1));
    add_into(&mut out, apply_r(&apply_r(&t, 0, 1), 2, 0));
    add_into(&mut out, apply_r(&apply_r(&t, 2, 0), 1, 2));
    out.retain(|_, c| !c.is_zero());
    out
}

/// `{c, x}` for the left slot; nonzero in general.
pub fn left_casimir_flow(x: &AlgebraElement) -> AlgebraElement {
    loday_bracket(&casimir_c(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{u, v};
    use crate::parse::{parse_element, parse_tensor};
    use Letter::*;

    fn e(s: &str) -> AlgebraElement {
        parse_element(s).unwrap()
    }

    #[test]
    fn leibniz_examples() {
        let (x, y) = verify_leibniz(&u(), &v(), &v());
        assert!(x.is_zero() && y.is_zero());
        let (x, y) = verify_leibniz(&u(), &one(), &one());
        assert!(x.is_zero() && y.is_zero());
        let (x, y) = verify_leibniz(&hamiltonian_h(), &u(), &v());
        assert!(x.is_zero() && y.is_zero());
    }

    #[test]
    fn cyclic_examples() {
        assert!(verify_cyclic_first_arg(&u(), &v(), &u()).is_zero());
        assert!(verify_cyclic_first_arg(&e("u*v^-1"), &one(), &e("v")).is_zero());
    }

    #[test]
    fn skew_examples() {
        assert!(verify_skew_mod_commutator(&u(), &v()).is_zero());
        let h = hamiltonian_h();
        assert!(verify_skew_mod_commutator(&h, &h).is_zero());
        assert!(!verify_symmetric_mod_commutator(&u(), &v()).is_zero());
    }

    #[test]
    fn jacobi_examples() {
        assert!(verify_jacobi(&u(), &v(), &u()).is_zero());
        assert!(verify_jacobi(&u(), &v(), &one()).is_zero());
        let h = hamiltonian_h();
        assert!(verify_jacobi(&h, &(&h * &h), &u()).is_zero());
    }

    #[test]
    fn right_casimir_examples() {
        let (t, l) = verify_right_casimir(&u());
        assert!(t.is_zero() && l.is_zero());
        assert_eq!(
            double_bracket(&u(), &casimir_c()),
            parse_tensor("u*v (x) v^-1 - u*v*u (x) u^-1*v^-1").unwrap()
        );
        let (t, l) = verify_right_casimir(&one());
        assert!(t.is_zero() && l.is_zero());
        let (t, l) = verify_right_casimir(&hamiltonian_h().pow(3).unwrap());
        assert!(t.is_zero() && l.is_zero());
    }

    #[test]
    fn involution_small() {
        let g = Guard::default();
        for (n, m) in [(1, 1), (1, 2), (2, 3)] {
            assert!(verify_involution(n, m, &g).unwrap().is_zero());
        }
        assert!(matches!(verify_involution(6, 5, &g), Err(Error::Guard(_))));
        assert!(matches!(verify_involution(0, 1, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn potential_values() {
        assert_eq!(quadruple_potential([V, V, U, V]), 1);
        assert_eq!(quadruple_potential([U, U, V, V]), 0);
        assert_eq!(quadruple_potential([U, V, UInv, U]), 1);
        let r = verify_quadruple_potential();
        assert_eq!(r.matches, 16, "{:?}", r.mismatches);
    }

    #[test]
    fn strong_axioms_fail() {
        let res = strong_antisymmetry_residual(&u(), &v());
        assert!(!res.is_zero());
        assert_eq!(-&double_bracket(&v(), &u()).opposite(), parse_tensor("-1 (x) u*v").unwrap());
        let fails = [(u(), v(), u()), (u(), v(), v()), (v(), u(), v())]
            .iter()
            .filter(|(a, b, c)| !strong_jacobi_residual(a, b, c).is_empty())
            .count();
        assert!(fails > 0);
        assert!(strong_jacobi_residual(&u(), &u(), &u()).is_empty());
    }
}

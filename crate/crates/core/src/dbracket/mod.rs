//! The modified double bracket `⟨⟨·,·⟩⟩` on `A ⊗ A`, the multiplication map,
//! the Loday bracket `{a, b} = μ(⟨⟨a⊗b⟩⟩)` and Hamiltonian flows.

mod table;
pub mod verify;

pub use table::{generator_bracket, GeneratorBracketTable, GeneratorEntry};

use crate::algebra::AlgebraElement;
use crate::par::{self, Execution};
use crate::scalar::Scalar;
use crate::tensor::{TensorElement, WordPair};
use crate::word::{Letter, Word};

type TermRef<'a> = (&'a Word, &'a Scalar);

fn term_pairs<'a>(a: &'a AlgebraElement, b: &'a AlgebraElement) -> Vec<(TermRef<'a>, TermRef<'a>)> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ta in a.terms() {
        for tb in b.terms() {
            out.push((ta, tb));
        }
    }
    out
}

/// Calls `f(left, right, sign)` for every contributing pair of positions
/// in the double sum for the monomials `a`, `b`. Works on unreduced letter
/// sequences as well.
fn for_each_monomial_term<F>(a: &[Letter], b: &[Letter], mut f: F)
where
    F: FnMut(&[&[Letter]], &[&[Letter]], i64),
{
    let table = GeneratorBracketTable::get();
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            let Some(e) = table.entry(ai, bj) else { continue };
            let left = [&b[..j], e.left.letters(), &a[i + 1..]];
            let right = [&a[..i], e.right.letters(), &b[j + 1..]];
            f(&left, &right, e.sign);
        }
    }
}

/// `⟨⟨a⊗b⟩⟩` for single words via the explicit double sum.
pub fn double_bracket_monomial(a: &[Letter], b: &[Letter]) -> TensorElement {
    let mut terms = Vec::new();
    for_each_monomial_term(a, b, |l, r, s| {
        terms.push(((Word::concat(l), Word::concat(r)), Scalar::from(s)));
    });
    TensorElement::from_terms(terms)
}

pub fn double_bracket(a: &AlgebraElement, b: &AlgebraElement) -> TensorElement {
    double_bracket_with(a, b, Execution::auto())
}

pub fn double_bracket_with(a: &AlgebraElement, b: &AlgebraElement, exec: Execution) -> TensorElement {
    let pairs = term_pairs(a, b);
    let map = par::accumulate(exec, &pairs, |((wa, ca), (wb, cb)), acc| {
        let c = *ca * *cb;
        let neg = -&c;
        for_each_monomial_term(wa.letters(), wb.letters(), |l, r, s| {
            let key: WordPair = (Word::concat(l), Word::concat(r));
            par::add_term(acc, key, if s > 0 { &c } else { &neg });
        });
    });
    TensorElement::from_map(map)
}

pub fn mu(t: &TensorElement) -> AlgebraElement {
    t.mu()
}

/// `{a, b} = μ(⟨⟨a⊗b⟩⟩)`, computed without materializing the tensor.
pub fn loday_bracket(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    loday_bracket_with(a, b, Execution::auto())
}

pub fn loday_bracket_with(a: &AlgebraElement, b: &AlgebraElement, exec: Execution) -> AlgebraElement {
    let pairs = term_pairs(a, b);
    let map = par::accumulate(exec, &pairs, |((wa, ca), (wb, cb)), acc| {
        let c = *ca * *cb;
        let neg = -&c;
        for_each_monomial_term(wa.letters(), wb.letters(), |l, r, s| {
            let w = Word::concat(&[l[0], l[1], l[2], r[0], r[1], r[2]]);
            par::add_term(acc, w, if s > 0 { &c } else { &neg });
        });
    });
    AlgebraElement::from_map(map)
}

/// `dx/dt = {H, x}` for the flow generated by `H`.
pub fn flow_derivative(h: &AlgebraElement, x: &AlgebraElement) -> AlgebraElement {
    loday_bracket(h, x)
}

pub fn flow_derivative_with(h: &AlgebraElement, x: &AlgebraElement, exec: Execution) -> AlgebraElement {
    loday_bracket_with(h, x, exec)
}

/// `[x, Dx, D²x, …, Dᵒʳᵈᵉʳx]` with `D = {H, ·}`; the formal solution is
/// `x(t) = Σ tⁿ/n! Dⁿx`.
pub fn taylor_flow(h: &AlgebraElement, x: &AlgebraElement, order: usize) -> Vec<AlgebraElement> {
    taylor_flow_with(h, x, order, Execution::auto())
}

pub fn taylor_flow_with(
    h: &AlgebraElement,
    x: &AlgebraElement,
    order: usize,
    exec: Execution,
) -> Vec<AlgebraElement> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(x.clone());
    for n in 0..order {
        let next = loday_bracket_with(h, &out[n], exec);
        out.push(next);
    }
    out
}

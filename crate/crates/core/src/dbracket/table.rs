//! Values of the bracket on pairs of letters.
//!
//! Only the four positive pairs are given; the rest follow from the two
//! Leibniz identities applied to `0 = ⟨⟨x x⁻¹ ⊗ y⟩⟩` and `0 = ⟨⟨x ⊗ y y⁻¹⟩⟩`:
//!
//! ```text
//! ⟨⟨x⁻¹⊗y⟩⟩ = −(1⊗x⁻¹) ⟨⟨x⊗y⟩⟩ (x⁻¹⊗1)
//! ⟨⟨x⊗y⁻¹⟩⟩ = −(y⁻¹⊗1) ⟨⟨x⊗y⟩⟩ (1⊗y⁻¹)
//! ```
//!
//! Same-family pairs vanish: `⟨⟨u⊗u⟩⟩ = 0` propagates to every combination
//! of `u` and `u⁻¹`.

use std::sync::OnceLock;

use crate::algebra::AlgebraElement;
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

/// A single signed pure tensor `sign · left ⊗ right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub left: Word,
    pub right: Word,
    pub sign: i64,
}

impl GeneratorEntry {
    pub fn to_tensor(&self) -> TensorElement {
        TensorElement::pure(self.left.clone(), self.right.clone(), self.sign)
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorBracketTable {
    entries: [[Option<GeneratorEntry>; 4]; 4],
}

fn index(l: Letter) -> usize {
    match l {
        Letter::U => 0,
        Letter::UInv => 1,
        Letter::V => 2,
        Letter::VInv => 3,
    }
}

fn w(ls: &[Letter]) -> AlgebraElement {
    AlgebraElement::from(Word::reduce(ls))
}

fn positive_bracket(x: Letter, y: Letter) -> TensorElement {
    use Letter::*;
    match (x, y) {
        (U, V) => TensorElement::pure(Word::reduce(&[V, U]), Word::one(), -1),
        (V, U) => TensorElement::pure(Word::reduce(&[U, V]), Word::one(), 1),
        _ => TensorElement::zero(),
    }
}

fn derive(x: Letter, y: Letter) -> TensorElement {
    let one = AlgebraElement::one();
    if !x.is_positive() {
        let xi = w(&[x]);
        let base = derive(x.inverse(), y);
        return -&TensorElement::tensor(&one, &xi)
            .mul(&base)
            .mul(&TensorElement::tensor(&xi, &one));
    }
    if !y.is_positive() {
        let yi = w(&[y]);
        let base = derive(x, y.inverse());
        return -&TensorElement::tensor(&yi, &one)
            .mul(&base)
            .mul(&TensorElement::tensor(&one, &yi));
    }
    positive_bracket(x, y)
}

impl GeneratorBracketTable {
    /// Builds all sixteen entries from the positive ones.
    pub fn derive() -> Self {
        let entries = Letter::ALL.map(|x| {
            Letter::ALL.map(|y| {
                let t = derive(x, y);
                let mut it = t.terms();
                match (it.next(), it.next()) {
                    (None, _) => None,
                    (Some(((l, r), c)), None) => Some(GeneratorEntry {
                        left: l.clone(),
                        right: r.clone(),
                        sign: c.as_i64().expect("integer coefficient"),
                    }),
                    _ => unreachable!("letter brackets are pure tensors"),
                }
            })
        });
        GeneratorBracketTable { entries }
    }

    pub fn get() -> &'static Self {
        static TABLE: OnceLock<GeneratorBracketTable> = OnceLock::new();
        TABLE.get_or_init(Self::derive)
    }

    pub fn entry(&self, x: Letter, y: Letter) -> Option<&GeneratorEntry> {
        self.entries[index(x)][index(y)].as_ref()
    }

    pub fn bracket(&self, x: Letter, y: Letter) -> TensorElement {
        self.entry(x, y)
            .map(GeneratorEntry::to_tensor)
            .unwrap_or_default()
    }

    /// All sixteen `(x, y, ⟨⟨x⊗y⟩⟩)` in letter order.
    pub fn iter(&self) -> impl Iterator<Item = (Letter, Letter, TensorElement)> + '_ {
        Letter::ALL
            .into_iter()
            .flat_map(move |x| Letter::ALL.into_iter().map(move |y| (x, y, self.bracket(x, y))))
    }
}

pub fn generator_bracket(x: Letter, y: Letter) -> TensorElement {
    GeneratorBracketTable::get().bracket(x, y)
}

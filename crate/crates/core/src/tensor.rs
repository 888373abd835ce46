//! The tensor square `A ⊗ A` and its two bimodule structures.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{fmt_term_abs, AlgebraElement};
use crate::par::{self, Execution, TermMap};
use crate::scalar::Scalar;
use crate::word::{fmt_letters, Word};

pub type WordPair = (Word, Word);

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorElement {
    terms: BTreeMap<WordPair, Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(left: Word, right: Word, c: impl Into<Scalar>) -> Self {
        Self::from_terms([((left, right), c.into())])
    }

    /// `a ⊗ b` for arbitrary elements.
    pub fn tensor(a: &AlgebraElement, b: &AlgebraElement) -> Self {
        Self::from_terms(a.terms().flat_map(|(wa, ca)| {
            b.terms()
                .map(move |(wb, cb)| ((wa.clone(), wb.clone()), ca * cb))
        }))
    }

    pub fn from_terms<I: IntoIterator<Item = (WordPair, Scalar)>>(iter: I) -> Self {
        let mut terms: BTreeMap<WordPair, Scalar> = BTreeMap::new();
        for (k, c) in iter {
            match terms.get_mut(&k) {
                Some(e) => *e += &c,
                None => {
                    terms.insert(k, c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub(crate) fn from_map(map: TermMap<WordPair>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&WordPair, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> Scalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    fn map_pairs<F: Fn(&Word, &Word) -> WordPair>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|((l, r), c)| (f(l, r), c.clone())))
    }

    /// Multiplication in the algebra `A ⊗ A`: `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|((a, b), x)| {
            other
                .terms
                .iter()
                .map(move |((c, d), y)| ((a.mul(c), b.mul(d)), x * y))
        }))
    }

    /// Outer bimodule: `x ∘₁ (a⊗b) ∘₁ y = xa ⊗ by`.
    pub fn outer_action(&self, x: &AlgebraElement, y: &AlgebraElement) -> Self {
        TensorElement::tensor(x, &AlgebraElement::one())
            .mul(self)
            .mul(&TensorElement::tensor(&AlgebraElement::one(), y))
    }

    /// Inner bimodule: `x ∘₂ (a⊗b) ∘₂ y = ay ⊗ xb`.
    pub fn inner_action(&self, x: &AlgebraElement, y: &AlgebraElement) -> Self {
        TensorElement::tensor(&AlgebraElement::one(), x)
            .mul(self)
            .mul(&TensorElement::tensor(y, &AlgebraElement::one()))
    }

    /// `(a⊗b)° = b⊗a`.
    pub fn opposite(&self) -> Self {
        self.map_pairs(|l, r| (r.clone(), l.clone()))
    }

    /// The multiplication map `μ(a⊗b) = ab`.
    pub fn mu(&self) -> AlgebraElement {
        self.mu_with(Execution::auto())
    }

    pub fn mu_with(&self, exec: Execution) -> AlgebraElement {
        let items: Vec<(&WordPair, &Scalar)> = self.terms.iter().collect();
        AlgebraElement::from_map(par::accumulate(exec, &items, |((l, r), c), acc| {
            par::add_term(acc, l.mul(r), c)
        }))
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        TensorElement::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        TensorElement {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self + &(-rhs)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            match (i == 0, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            fmt_term_abs(c, l.letters(), f)?;
            write!(f, " (x) ")?;
            fmt_letters(r.letters(), f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

//! The group algebra of the free group with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::par::{self, Execution, TermMap};
use crate::scalar::Scalar;
use crate::word::{fmt_letters, Letter, Word};

/// Finite linear combination of reduced words. Zero coefficients are never
/// stored; iteration order is the canonical word order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Word::one())
    }

    pub fn constant(c: impl Into<Scalar>) -> Self {
        Self::monomial(Word::one(), c)
    }

    pub fn letter(l: Letter) -> Self {
        Self::from(Word::letter(l))
    }

    pub fn monomial(w: Word, c: impl Into<Scalar>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    /// Sums duplicate words and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in iter {
            match terms.get_mut(&w) {
                Some(e) => *e += &c,
                None => {
                    terms.insert(w, c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub(crate) fn from_map(map: TermMap<Word>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Word, &Scalar)> + Clone {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
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

    /// The single word of a monomial with coefficient 1, if that is what this is.
    pub fn as_word(&self) -> Option<&Word> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next()?;
        c.is_one().then_some(w)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn mul_with(&self, other: &Self, exec: Execution) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let left: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        let map = par::accumulate(exec, &left, |(wa, ca), acc| {
            for (wb, cb) in &other.terms {
                par::add_term(acc, wa.mul(wb), &(*ca * cb));
            }
        });
        Self::from_map(map)
    }

    /// Non-negative powers only: the algebra has no inverses beyond words.
    /// A negative power of a single word (coefficient 1) is allowed.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return match self.as_word() {
                Some(w) => Ok(Self::from(w.pow(n))),
                None => Err(Error::NotInvertible(n)),
            };
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Applies a word-level map linearly.
    pub fn map_words<F: Fn(&Word) -> Word>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }
}

impl From<Word> for AlgebraElement {
    fn from(w: Word) -> Self {
        Self::monomial(w, Scalar::ONE)
    }
}

impl From<Letter> for AlgebraElement {
    fn from(l: Letter) -> Self {
        Self::letter(l)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            match terms.get_mut(w) {
                Some(e) => {
                    *e += c;
                    if e.is_zero() {
                        terms.remove(w);
                    }
                }
                None => {
                    terms.insert(w.clone(), c.clone());
                }
            }
        }
        AlgebraElement { terms }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.mul_with(rhs, Execution::auto())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

/// Writes `coeff*word` in the expression grammar, without the sign.
pub(crate) fn fmt_term_abs(
    c: &Scalar,
    letters: &[Letter],
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let a = c.abs();
    if letters.is_empty() {
        return write!(f, "{a}");
    }
    if !a.is_one() {
        write!(f, "{a}*")?;
    }
    fmt_letters(letters, f)
}

pub(crate) fn fmt_signed_terms<'a, I>(iter: I, f: &mut fmt::Formatter<'_>) -> fmt::Result
where
    I: Iterator<Item = (&'a [Letter], &'a Scalar)>,
{
    let mut first = true;
    for (letters, c) in iter {
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        fmt_term_abs(c, letters, f)?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_signed_terms(self.terms.iter().map(|(w, c)| (w.letters(), c)), f)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

pub fn u() -> AlgebraElement {
    AlgebraElement::letter(Letter::U)
}

pub fn v() -> AlgebraElement {
    AlgebraElement::letter(Letter::V)
}

pub fn u_inv() -> AlgebraElement {
    AlgebraElement::letter(Letter::UInv)
}

pub fn v_inv() -> AlgebraElement {
    AlgebraElement::letter(Letter::VInv)
}

/// `h = u + v + u⁻¹ + v⁻¹ + u⁻¹v⁻¹`.
pub fn hamiltonian_h() -> AlgebraElement {
    use Letter::*;
    AlgebraElement::from_terms(
        [vec![U], vec![V], vec![UInv], vec![VInv], vec![UInv, VInv]]
            .into_iter()
            .map(|ls| (Word::reduce(&ls), Scalar::ONE)),
    )
}

/// The group commutator `c = uvu⁻¹v⁻¹`.
pub fn casimir_word() -> Word {
    use Letter::*;
    Word::reduce(&[U, V, UInv, VInv])
}

pub fn casimir_c() -> AlgebraElement {
    AlgebraElement::from(casimir_word())
}

pub fn casimir_c_inv() -> AlgebraElement {
    AlgebraElement::from(casimir_word().inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn product_of_sums() {
        let a = &u() + &v();
        let b = &u() - &v();
        let p = &a * &b;
        let expect = AlgebraElement::from_terms([
            (Word::reduce(&[U, U]), Scalar::ONE),
            (Word::reduce(&[U, V]), Scalar::from(-1)),
            (Word::reduce(&[V, U]), Scalar::ONE),
            (Word::reduce(&[V, V]), Scalar::from(-1)),
        ]);
        assert_eq!(p, expect);
    }

    #[test]
    fn unit_law_and_word_inverse() {
        let h = hamiltonian_h();
        assert_eq!(&h * &AlgebraElement::one(), h);
        let uv = AlgebraElement::from(Word::reduce(&[U, V]));
        let vu_inv = AlgebraElement::from(Word::reduce(&[VInv, UInv]));
        assert_eq!(&uv * &vu_inv, AlgebraElement::one());
    }

    #[test]
    fn commutator_examples() {
        assert!(u().commutator(&u()).is_zero());
        let expect = &AlgebraElement::from(Word::reduce(&[U, V]))
            - &AlgebraElement::from(Word::reduce(&[V, U]));
        assert_eq!(u().commutator(&v()), expect);
    }

    #[test]
    fn known_elements() {
        let h = hamiltonian_h();
        assert_eq!(h.len(), 5);
        assert!(h.terms().all(|(_, c)| c.is_one()));
        let c = casimir_c();
        assert_eq!(c.as_word().unwrap().len(), 4);
        assert_eq!(&c * &casimir_c_inv(), AlgebraElement::one());
    }

    #[test]
    fn negative_powers() {
        let h = hamiltonian_h();
        assert!(matches!(h.pow(-1), Err(Error::NotInvertible(-1))));
        assert_eq!(casimir_c().pow(-1).unwrap(), casimir_c_inv());
        assert_eq!(h.pow(0).unwrap(), AlgebraElement::one());
        assert_eq!(h.pow(2).unwrap(), &h * &h);
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = &u() + &v();
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).to_string(), "0");
    }
}

//! The cyclic space `A/[A,A]` and the trace projection onto it.

mod basis;
mod span;

pub use basis::{enumerate_hc_basis, BasisElement, HcFactor};
pub use span::{rank, span_membership, Echelon, Membership};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{fmt_signed_terms, AlgebraElement};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::parse::parse_element;
use crate::scalar::Scalar;
use crate::word::{fmt_letters, Letter, Word};

/// A cyclically reduced word in its least rotation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// A representative word in `A` of this class.
    pub fn to_word(&self) -> Word {
        Word::reduce(&self.0)
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

/// Start index of the lexicographically least rotation, by direct comparison.
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let mut best = 0;
    for cand in 1..n {
        for k in 0..n {
            let a = s[(cand + k) % n];
            let b = s[(best + k) % n];
            if a != b {
                if a < b {
                    best = cand;
                }
                break;
            }
        }
    }
    best
}

/// Canonical representative of the conjugacy class of `w`: strip mutually
/// inverse end letters until cyclically reduced, then take the least rotation.
pub fn cyclic_canonical(w: &Word) -> CyclicWord {
    let s = w.letters();
    let (mut lo, mut hi) = (0, s.len());
    while hi - lo >= 2 && s[lo].is_inverse_of(s[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    let core = &s[lo..hi];
    let r = least_rotation(core);
    let mut out = Vec::with_capacity(core.len());
    out.extend_from_slice(&core[r..]);
    out.extend_from_slice(&core[..r]);
    CyclicWord(out)
}

/// Finite combination of cyclic words, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclicElement {
    terms: BTreeMap<CyclicWord, Scalar>,
}

impl CyclicElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (CyclicWord, Scalar)>>(iter: I) -> Self {
        let mut terms: BTreeMap<CyclicWord, Scalar> = BTreeMap::new();
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

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&CyclicWord, &Scalar)> + Clone {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &CyclicWord) -> Scalar {
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

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(CyclicWord::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Serializes as `{"u*v": "3/2", ...}` in canonical word order.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(w, c)| (w.to_string(), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Keys may be any word text; they are re-canonicalized.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Invalid("cyclic element must be a JSON object".into()))?;
        let mut terms = Vec::with_capacity(obj.len());
        for (k, v) in obj {
            let word = parse_element(k)?;
            let w = word
                .as_word()
                .ok_or_else(|| Error::Invalid(format!("key `{k}` is not a single word")))?;
            let c: Scalar = v
                .as_str()
                .ok_or_else(|| Error::Invalid(format!("value for `{k}` must be a string")))?
                .parse()
                .map_err(|e| Error::Invalid(format!("{e}")))?;
            terms.push((cyclic_canonical(w), c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Add for &CyclicElement {
    type Output = CyclicElement;
    fn add(self, rhs: &CyclicElement) -> CyclicElement {
        CyclicElement::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }
}

impl Neg for &CyclicElement {
    type Output = CyclicElement;
    fn neg(self) -> CyclicElement {
        CyclicElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Sub for &CyclicElement {
    type Output = CyclicElement;
    fn sub(self, rhs: &CyclicElement) -> CyclicElement {
        self + &(-rhs)
    }
}

impl fmt::Display for CyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_signed_terms(self.terms.iter().map(|(w, c)| (w.letters(), c)), f)
    }
}

impl fmt::Debug for CyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicElement({self})")
    }
}

impl serde::Serialize for CyclicElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            m.serialize_entry(&w.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<'de> serde::Deserialize<'de> for CyclicElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        CyclicElement::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// The trace projection `π : A → A/[A,A]`.
pub fn project(e: &AlgebraElement) -> CyclicElement {
    project_with(e, Execution::auto())
}

pub fn project_with(e: &AlgebraElement, exec: Execution) -> CyclicElement {
    let items: Vec<(&Word, &Scalar)> = e.terms().collect();
    let map = par::accumulate(exec, &items, |(w, c), acc| {
        par::add_term(acc, cyclic_canonical(w), c)
    });
    CyclicElement {
        terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

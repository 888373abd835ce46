//! Exact Gaussian elimination over ℚ with cyclic words as coordinates.
//!
//! Rows are kept in echelon form keyed by their pivot, which is always the
//! smallest coordinate (length, then letter order) present in the row.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{CyclicElement, CyclicWord};
use crate::scalar::Scalar;

type Vector = BTreeMap<CyclicWord, Scalar>;
type Combo = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone)]
struct Row {
    vec: Vector,
    /// This row as a combination of the inserted inputs.
    combo: Combo,
}

fn axpy<K: Ord + Clone>(dst: &mut BTreeMap<K, Scalar>, factor: &Scalar, src: &BTreeMap<K, Scalar>) {
    for (k, c) in src {
        let d = factor * c;
        match dst.get_mut(k) {
            Some(e) => {
                *e += &d;
                if e.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(k.clone(), d);
            }
        }
    }
}

/// Incrementally built echelon basis of a subspace of the cyclic space.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<CyclicWord, Row>,
    inputs: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered via [`Echelon::insert`], dependent or not.
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// Eliminates every pivot coordinate from `v`; returns the remainder and
    /// the combination of inputs that was subtracted.
    fn reduce(&self, v: &CyclicElement) -> (Vector, Combo) {
        let mut cur: Vector = v.terms.clone();
        let mut combo = Combo::new();
        let mut from: Option<CyclicWord> = None;
        loop {
            let next = {
                let mut it: Box<dyn Iterator<Item = (&CyclicWord, &Scalar)>> = match &from {
                    Some(k) => Box::new(cur.range(k.clone()..)),
                    None => Box::new(cur.iter()),
                };
                it.find(|(k, _)| self.rows.contains_key(*k))
                    .map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((k, c)) = next else { break };
            let row = &self.rows[&k];
            let factor = &c / &row.vec[&k];
            axpy(&mut cur, &-&factor, &row.vec);
            axpy(&mut combo, &factor, &row.combo);
            debug_assert!(!cur.contains_key(&k));
            from = Some(k);
        }
        (cur, combo)
    }

    /// Adds `v` as input number `inputs()`; returns whether it was independent.
    pub fn insert(&mut self, v: &CyclicElement) -> bool {
        let idx = self.inputs;
        self.inputs += 1;
        let (rem, sub) = self.reduce(v);
        let Some(pivot) = rem.keys().next().cloned() else {
            return false;
        };
        let mut combo = Combo::new();
        combo.insert(idx, Scalar::ONE);
        axpy(&mut combo, &Scalar::from(-1), &sub);
        self.rows.insert(pivot, Row { vec: rem, combo });
        true
    }

    /// Coefficients `x` over the inputs with `Σ xᵢ inputᵢ = target`, if any.
    pub fn solve(&self, target: &CyclicElement) -> Option<Vec<Scalar>> {
        let (rem, combo) = self.reduce(target);
        if !rem.is_empty() {
            return None;
        }
        let mut out = vec![Scalar::ZERO; self.inputs];
        for (i, c) in combo {
            out[i] = c;
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// Present iff `member`: the target as a combination of the basis, in order.
    pub coordinates: Option<Vec<Scalar>>,
}

pub fn span_membership(target: &CyclicElement, basis: &[CyclicElement]) -> Membership {
    let mut ech = Echelon::new();
    for b in basis {
        ech.insert(b);
    }
    let coordinates = ech.solve(target);
    Membership {
        member: coordinates.is_some(),
        coordinates,
    }
}

pub fn rank(vectors: &[CyclicElement]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hamiltonian_h, AlgebraElement};
    use crate::cyclic::project;
    use crate::parse::parse_element;

    fn pe(s: &str) -> CyclicElement {
        project(&parse_element(s).unwrap())
    }

    fn combine(basis: &[CyclicElement], x: &[Scalar]) -> CyclicElement {
        basis
            .iter()
            .zip(x)
            .fold(CyclicElement::zero(), |acc, (b, c)| &acc + &b.scale(c))
    }

    #[test]
    fn target_in_its_own_span() {
        let ph = project(&hamiltonian_h());
        let m = span_membership(&ph, std::slice::from_ref(&ph));
        assert!(m.member);
        assert_eq!(m.coordinates.unwrap(), vec![Scalar::ONE]);
    }

    #[test]
    fn u_not_in_span_of_one_and_h() {
        let basis = [project(&AlgebraElement::one()), project(&hamiltonian_h())];
        let m = span_membership(&pe("u"), &basis);
        assert!(!m.member);
        assert!(m.coordinates.is_none());
    }

    #[test]
    fn dependent_inputs_and_rational_coordinates() {
        let basis = [pe("u + v"), pe("2*u + 2*v"), pe("u - v"), pe("v*u")];
        assert_eq!(rank(&basis), 3);
        let target = pe("3*u + 1/2*u*v");
        let x = span_membership(&target, &basis).coordinates.unwrap();
        assert_eq!(combine(&basis, &x), target);
        assert_eq!(x[3].to_string(), "1/2");
    }

    #[test]
    fn elimination_never_leaves_pivots() {
        let vs = [pe("u*v + u"), pe("u + v^-1"), pe("u*v - v^-1"), pe("1 + u")];
        let mut ech = Echelon::new();
        let independent: Vec<bool> = vs.iter().map(|v| ech.insert(v)).collect();
        assert_eq!(independent, vec![true, true, false, true]);
        assert_eq!(ech.rank(), 3);
        for (pivot, row) in &ech.rows {
            assert_eq!(row.vec.keys().next(), Some(pivot));
        }
    }
}

//! Degree-bounded spanning set of `π(ℚ⟨h, c, c⁻¹⟩)`.

use serde::Serialize;

use super::{project, CyclicElement, Echelon};
use crate::algebra::{casimir_c, casimir_c_inv, hamiltonian_h, AlgebraElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum HcFactor {
    H,
    C,
    CInv,
}

impl HcFactor {
    const ALL: [HcFactor; 3] = [HcFactor::H, HcFactor::C, HcFactor::CInv];

    fn symbol(self) -> &'static str {
        match self {
            HcFactor::H => "h",
            HcFactor::C | HcFactor::CInv => "c",
        }
    }

    fn cancels(self, other: HcFactor) -> bool {
        matches!(
            (self, other),
            (HcFactor::C, HcFactor::CInv) | (HcFactor::CInv, HcFactor::C)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisElement {
    /// Monomial in `h`, `c`, `c⁻¹`, e.g. `h^2*c^-1`; `1` for the empty product.
    pub label: String,
    #[serde(skip)]
    pub factors: Vec<HcFactor>,
    /// Longest cyclic word in `element`.
    pub degree: usize,
    pub element: CyclicElement,
}

fn label(factors: &[HcFactor]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let f = factors[i];
        let mut run = 1;
        while i + run < factors.len() && factors[i + run] == f {
            run += 1;
        }
        let exp = if f == HcFactor::CInv { -(run as i64) } else { run as i64 };
        parts.push(if exp == 1 {
            f.symbol().to_string()
        } else {
            format!("{}^{}", f.symbol(), exp)
        });
        i += run;
    }
    parts.join("*")
}

/// A factor sequence, read cyclically, is skipped unless it is the least of
/// its rotations: rotations have equal images under `π`.
fn is_least_rotation(seq: &[HcFactor]) -> bool {
    (1..seq.len()).all(|k| {
        let rot = seq[k..].iter().chain(&seq[..k]);
        seq.iter().le(rot)
    })
}

/// `π` of every monomial in `h, c, c⁻¹` with at most `max_degree` factors
/// whose projection has no cyclic word longer than `max_degree`, kept only
/// when linearly independent of the ones already accepted. Enumeration is
/// by factor count, then factor order `h < c < c⁻¹`.
pub fn enumerate_hc_basis(max_degree: usize) -> Vec<BasisElement> {
    let gens = [hamiltonian_h(), casimir_c(), casimir_c_inv()];
    let factor_elem = |f: HcFactor| match f {
        HcFactor::H => &gens[0],
        HcFactor::C => &gens[1],
        HcFactor::CInv => &gens[2],
    };

    let mut ech = Echelon::new();
    let mut out = Vec::new();
    // Breadth-first by factor count, carrying the expanded product.
    let mut layer: Vec<(Vec<HcFactor>, AlgebraElement)> = vec![(Vec::new(), AlgebraElement::one())];
    for count in 0..=max_degree {
        let mut next = Vec::new();
        for (seq, prod) in &layer {
            let cyclically_cancels = seq.len() >= 2 && seq[0].cancels(seq[seq.len() - 1]);
            if !cyclically_cancels && is_least_rotation(seq) {
                let element = project(prod);
                let degree = element.max_word_len();
                if degree <= max_degree && ech.insert(&element) {
                    out.push(BasisElement {
                        label: label(seq),
                        factors: seq.clone(),
                        degree,
                        element,
                    });
                }
            }
            if count == max_degree {
                continue;
            }
            for f in HcFactor::ALL {
                if seq.last().is_some_and(|l| l.cancels(f)) {
                    continue;
                }
                let mut s = seq.clone();
                s.push(f);
                next.push((s, prod * factor_elem(f)));
            }
        }
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::rank;

    #[test]
    fn degree_zero_is_the_unit() {
        let b = enumerate_hc_basis(0);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].label, "1");
        assert_eq!(b[0].element, project(&AlgebraElement::one()));
    }

    #[test]
    fn degree_four_contains_generators() {
        let b = enumerate_hc_basis(4);
        let pc = project(&casimir_c());
        let pci = project(&casimir_c_inv());
        let ph = project(&hamiltonian_h());
        for target in [&ph, &pc, &pci] {
            assert!(b.iter().any(|e| &e.element == target), "missing {target}");
        }
    }

    #[test]
    fn powers_of_h_are_independent_within_basis() {
        let b = enumerate_hc_basis(6);
        let find = |l: &str| b.iter().find(|e| e.label == l).map(|e| e.element.clone());
        let hs: Vec<CyclicElement> = ["h", "h^2", "h^3"].iter().map(|l| find(l).unwrap()).collect();
        assert_eq!(rank(&hs), 3);
        assert_eq!(rank(&b.iter().map(|e| e.element.clone()).collect::<Vec<_>>()), b.len());
    }

    #[test]
    fn labels() {
        use HcFactor::*;
        assert_eq!(label(&[H, H, CInv]), "h^2*c^-1");
        assert_eq!(label(&[C, H, C, C]), "c*h*c^2");
        assert!(is_least_rotation(&[H, C, H, CInv]));
        assert!(!is_least_rotation(&[C, H]));
    }
}

//! Matrices over `A[λ, λ⁻¹]` with a central spectral parameter, the Lax pair
//! of the system and the trace-integral experiment.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{hamiltonian_h, AlgebraElement};
use crate::cyclic::{enumerate_hc_basis, project, CyclicElement, Echelon};
use crate::dbracket::flow_derivative_with;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::par::{self, Execution};
use crate::parse::parse_element;
use crate::scalar::Scalar;

/// `Σ λᵏ aₖ` with `aₖ ∈ A`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    coeffs: BTreeMap<i64, AlgebraElement>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(a: AlgebraElement) -> Self {
        Self::monomial(0, a)
    }

    pub fn monomial(exp: i64, a: AlgebraElement) -> Self {
        let mut coeffs = BTreeMap::new();
        if !a.is_zero() {
            coeffs.insert(exp, a);
        }
        Self { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, AlgebraElement)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, a) in iter {
            p.add_assign_at(k, &a);
        }
        p
    }

    fn add_assign_at(&mut self, k: i64, a: &AlgebraElement) {
        let sum = match self.coeffs.get(&k) {
            Some(e) => e + a,
            None => a.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn coeff(&self, k: i64) -> AlgebraElement {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &AlgebraElement)> {
        self.coeffs.iter().map(|(k, a)| (*k, a))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total number of (λ-power, word) terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.values().map(AlgebraElement::len).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in &other.coeffs {
            out.add_assign_at(*k, a);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, -a)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_with(&self, other: &Self, exec: Execution) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_assign_at(i + j, &a.mul_with(b, exec));
            }
        }
        out
    }

    pub fn map_coeffs<F: Fn(&AlgebraElement) -> AlgebraElement>(&self, f: F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(k, a)| (*k, f(a))))
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, a)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({a})")?,
                1 => write!(f, "lambda*({a})")?,
                _ => write!(f, "lambda^{k}*({a})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaPoly({self})")
    }
}

/// Square matrix over `A[λ, λ⁻¹]`, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaxMatrix {
    n: usize,
    entries: Vec<LambdaPoly>,
}

impl LaxMatrix {
    pub fn zero(n: usize) -> Self {
        LaxMatrix {
            n,
            entries: vec![LambdaPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = LambdaPoly::constant(AlgebraElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LambdaPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("rows of a {n}-row matrix must have {n} entries")));
        }
        Ok(LaxMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero-based entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &LambdaPoly {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LambdaPoly::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.entries.iter().map(LambdaPoly::term_count).sum()
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "{0}x{0} and {1}x{1} matrices do not conform",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(LaxMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(LaxMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Execution::auto())
    }

    /// Entries are computed independently, in parallel when enabled.
    pub fn mul_with(&self, other: &Self, exec: Execution) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.n;
        let entries = par::map_range(exec, n * n, |idx| {
            let (i, j) = (idx / n, idx % n);
            (0..n).fold(LambdaPoly::zero(), |acc, k| {
                acc.add(&self.entry(i, k).mul_with(other.entry(k, j), Execution::Sequential))
            })
        });
        Ok(LaxMatrix { n, entries })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> LambdaPoly {
        (0..self.n).fold(LambdaPoly::zero(), |acc, i| acc.add(self.entry(i, i)))
    }

    pub fn map_entries<F: Fn(&LambdaPoly) -> LambdaPoly + Sync>(&self, f: F, exec: Execution) -> Self {
        LaxMatrix {
            n: self.n,
            entries: par::map(exec, &self.entries, |e| f(e)),
        }
    }
}

pub fn mat_mul(a: &LaxMatrix, b: &LaxMatrix) -> Result<LaxMatrix> {
    a.mul(b)
}

pub fn mat_commutator(a: &LaxMatrix, b: &LaxMatrix) -> Result<LaxMatrix> {
    a.commutator(b)
}

pub fn mat_trace(a: &LaxMatrix) -> LambdaPoly {
    a.trace()
}

fn poly(parts: &[(i64, &str)]) -> LambdaPoly {
    LambdaPoly::from_coeffs(
        parts
            .iter()
            .map(|(k, s)| (*k, parse_element(s).expect("built-in entry parses"))),
    )
}

pub fn build_l() -> LaxMatrix {
    LaxMatrix::from_rows(vec![
        vec![
            poly(&[(0, "v^-1 + u")]),
            poly(&[(1, "v"), (0, "v^-1*u^-1 + u^-1 + 1")]),
        ],
        vec![
            poly(&[(0, "v^-1"), (-1, "u")]),
            poly(&[(0, "v + v^-1*u^-1 + u^-1"), (-1, "1")]),
        ],
    ])
    .expect("2x2")
}

pub fn build_m() -> LaxMatrix {
    LaxMatrix::from_rows(vec![
        vec![poly(&[(0, "v^-1 - v + u")]), poly(&[(1, "v")])],
        vec![poly(&[(0, "v^-1")]), poly(&[(0, "u")])],
    ])
    .expect("2x2")
}

/// `d/dt` of every coefficient under the flow of `h`; `λ` is constant.
pub fn mat_flow_derivative(h: &AlgebraElement, x: &LaxMatrix) -> LaxMatrix {
    mat_flow_derivative_with(h, x, Execution::auto())
}

pub fn mat_flow_derivative_with(h: &AlgebraElement, x: &LaxMatrix, exec: Execution) -> LaxMatrix {
    x.map_entries(
        |p| p.map_coeffs(|a| flow_derivative_with(h, a, Execution::Sequential)),
        exec,
    )
}

/// `dL/dt − [L, M]` for the built-in pair.
pub fn lax_residual() -> LaxMatrix {
    let (l, m) = (build_l(), build_m());
    mat_flow_derivative(&hamiltonian_h(), &l)
        .sub(&l.commutator(&m).expect("2x2"))
        .expect("2x2")
}

/// `dL/dt − [M, L]`: the same check with the commutator reversed. Under the
/// flow of `h` this one vanishes, and `lax_residual` equals `2 dL/dt`.
pub fn lax_residual_reversed() -> LaxMatrix {
    let (l, m) = (build_l(), build_m());
    mat_flow_derivative(&hamiltonian_h(), &l)
        .sub(&m.commutator(&l).expect("2x2"))
        .expect("2x2")
}

/// `Tr Lᵏ` as a λ-polynomial over `A`.
pub fn trace_power(k: u32, guard: &Guard) -> Result<LambdaPoly> {
    if k == 0 {
        return Err(Error::Precondition("trace power must be at least 1".into()));
    }
    guard.check_trace_power(k)?;
    let l = build_l();
    let mut acc = l.clone();
    for _ in 1..k {
        acc = acc.mul(&l)?;
        guard.check_terms("Tr L^k intermediate", acc.term_count())?;
    }
    Ok(acc.trace())
}

/// `π` of each λ-coefficient of `Tr Lᵏ`, zero coefficients omitted.
pub fn cyclic_trace_power(k: u32, guard: &Guard) -> Result<BTreeMap<i64, CyclicElement>> {
    let tr = trace_power(k, guard)?;
    Ok(tr
        .coeffs()
        .map(|(e, a)| (e, project(a)))
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanEntry {
    pub k: u32,
    pub lambda_exp: i64,
    pub member: bool,
    /// Basis label to rational coefficient over the basis, nonzero ones only.
    pub coordinates: Option<BTreeMap<String, Scalar>>,
    pub basis_size: usize,
    pub degree_bound: usize,
    /// `π` of the flow derivative of the coefficient vanishes.
    pub conserved: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanReport {
    pub k_max: u32,
    pub degree_bound: usize,
    pub basis: Vec<String>,
    pub entries: Vec<SpanEntry>,
}

impl SpanReport {
    pub fn all_members(&self) -> bool {
        self.entries.iter().all(|e| e.member)
    }

    pub fn all_conserved(&self) -> bool {
        self.entries.iter().all(|e| e.conserved)
    }
}

/// Membership of every λ-coefficient of `π(Tr Lᵏ)`, `k ≤ k_max`, in the span
/// of the `h, c, c⁻¹` basis. Without an explicit bound the longest cyclic
/// word among those coefficients is used.
pub fn span_experiment(k_max: u32, degree_bound: Option<usize>, guard: &Guard) -> Result<SpanReport> {
    let h = hamiltonian_h();
    let mut targets = Vec::new();
    for k in 1..=k_max {
        let tr = trace_power(k, guard)?;
        for (e, a) in tr.coeffs() {
            let c = project(a);
            if c.is_zero() {
                continue;
            }
            let conserved = project(&flow_derivative_with(&h, a, Execution::auto())).is_zero();
            targets.push((k, e, c, conserved));
        }
    }
    let bound = degree_bound.unwrap_or_else(|| {
        targets.iter().map(|(_, _, c, _)| c.max_word_len()).max().unwrap_or(0)
    });
    let basis = enumerate_hc_basis(bound);
    let mut ech = Echelon::new();
    for b in &basis {
        ech.insert(&b.element);
    }
    let entries = targets
        .into_iter()
        .map(|(k, lambda_exp, c, conserved)| {
            let coords = ech.solve(&c).map(|x| {
                basis
                    .iter()
                    .zip(x)
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(b, s)| (b.label.clone(), s))
                    .collect()
            });
            SpanEntry {
                k,
                lambda_exp,
                member: coords.is_some(),
                coordinates: coords,
                basis_size: basis.len(),
                degree_bound: bound,
                conserved,
            }
        })
        .collect();
    Ok(SpanReport {
        k_max,
        degree_bound: bound,
        basis: basis.iter().map(|b| b.label.clone()).collect(),
        entries,
    })
}

//! Seeded property runs over the bracket identities, grouped into suites.
//!
//! Sample `i` of every check draws its inputs from `sample_rng(seed, i)`, so
//! a failing sample can be replayed alone and results do not depend on how
//! samples are scheduled across threads.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{casimir_c, hamiltonian_h, u, v, AlgebraElement};
use crate::cyclic::{project, CyclicElement};
use crate::dbracket::verify::{
    verify_cyclic_first_arg, verify_involution, verify_jacobi, verify_leibniz, verify_loday_leibniz,
    verify_quadruple_potential, verify_right_casimir, verify_skew_mod_commutator, verify_symmetric_mod_commutator,
};
use crate::dbracket::{flow_derivative_with, loday_bracket};
use crate::error::Result;
use crate::guard::Guard;
use crate::lax::{lax_residual, lax_residual_reversed, trace_power, LambdaPoly, LaxMatrix};
use crate::par::{self, Execution};
use crate::parse::parse_element;
use crate::sample::{random_element, random_word, sample_rng};
use crate::tensor::TensorElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Leibniz,
    Cyclic,
    Skew,
    Jacobi,
    Casimir,
    Involution,
    Lax,
    Quadruple,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Leibniz,
        Suite::Cyclic,
        Suite::Skew,
        Suite::Jacobi,
        Suite::Casimir,
        Suite::Involution,
        Suite::Lax,
        Suite::Quadruple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Leibniz => "leibniz",
            Suite::Cyclic => "cyclic",
            Suite::Skew => "skew",
            Suite::Jacobi => "jacobi",
            Suite::Casimir => "casimir",
            Suite::Involution => "involution",
            Suite::Lax => "lax",
            Suite::Quadruple => "quadruple",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub suite: Suite,
    /// Random samples per property check; fixed examples come on top.
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Involution is checked for every `N, M ≥ 1` with `N + M` up to this.
    pub involution_degree: u32,
    /// Trace integrals are checked for `Tr Lᵏ`, `k` up to this.
    pub trace_power: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::All,
            samples: 1000,
            max_len: 5,
            seed: 0,
            involution_degree: 8,
            trace_power: 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    /// Sample index; replay with `sample_rng(seed, index)`. Fixed examples
    /// have no index.
    pub index: Option<usize>,
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub identity: String,
    pub samples: usize,
    pub max_residual_terms: usize,
    pub failures: usize,
    pub passed: bool,
    pub seed: u64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub guard: Guard,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub elapsed_ms: f64,
}

impl VerifyReport {
    pub fn check(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Something that must vanish.
pub trait Residual {
    fn terms(&self) -> usize;
    fn render(&self) -> String;
}

impl Residual for AlgebraElement {
    fn terms(&self) -> usize {
        self.len()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for TensorElement {
    fn terms(&self) -> usize {
        self.len()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for CyclicElement {
    fn terms(&self) -> usize {
        self.len()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<A: Residual, B: Residual> Residual for (A, B) {
    fn terms(&self) -> usize {
        self.0.terms() + self.1.terms()
    }
    fn render(&self) -> String {
        format!("({}, {})", self.0.render(), self.1.render())
    }
}

impl Residual for LaxMatrix {
    fn terms(&self) -> usize {
        self.term_count()
    }
    fn render(&self) -> String {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.entry(i, j).to_string()).collect();
            rows.push(format!("[{}]", row.join(", ")));
        }
        format!("[{}]", rows.join(", "))
    }
}

struct Outcome {
    terms: usize,
    failure: Option<Counterexample>,
}

fn outcome<R: Residual>(index: Option<usize>, inputs: &[AlgebraElement], r: &R) -> Outcome {
    let terms = r.terms();
    let failure = (terms > 0).then(|| Counterexample {
        index,
        inputs: inputs.iter().map(|x| x.to_string()).collect(),
        residual: r.render(),
    });
    Outcome { terms, failure }
}

fn summarize(identity: &str, seed: u64, start: Instant, outcomes: Vec<Outcome>) -> Check {
    let samples = outcomes.len();
    let max_residual_terms = outcomes.iter().map(|o| o.terms).max().unwrap_or(0);
    let failures = outcomes.iter().filter(|o| o.terms > 0).count();
    let counterexample = outcomes.into_iter().find_map(|o| o.failure);
    Check {
        identity: identity.to_string(),
        samples,
        max_residual_terms,
        failures,
        passed: failures == 0,
        seed,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        counterexample,
        notes: Vec::new(),
    }
}

/// Runs `test` on the fixed inputs, then on `cfg.samples` random draws.
fn property<D, T, R>(identity: &str, cfg: &VerifyConfig, exec: Execution, fixed: Vec<Vec<AlgebraElement>>, draw: D, test: T) -> Check
where
    D: Fn(&mut ChaCha8Rng) -> Vec<AlgebraElement> + Sync + Send,
    T: Fn(&[AlgebraElement]) -> R + Sync + Send,
    R: Residual,
{
    let start = Instant::now();
    let mut outcomes: Vec<Outcome> = fixed.iter().map(|x| outcome(None, x, &test(x))).collect();
    outcomes.extend(par::map_range(exec, cfg.samples, |i| {
        let x = draw(&mut sample_rng(cfg.seed, i as u64));
        outcome(Some(i), &x, &test(&x))
    }));
    summarize(identity, cfg.seed, start, outcomes)
}

fn monomials(n: usize, max_len: usize) -> impl Fn(&mut ChaCha8Rng) -> Vec<AlgebraElement> + Sync + Send {
    move |rng| (0..n).map(|_| AlgebraElement::monomial(random_word(rng, max_len), 1)).collect()
}

fn elements(n: usize, max_terms: usize, max_len: usize) -> impl Fn(&mut ChaCha8Rng) -> Vec<AlgebraElement> + Sync + Send {
    move |rng| (0..n).map(|_| random_element(rng, max_terms, max_len)).collect()
}

fn el(s: &str) -> AlgebraElement {
    parse_element(s).expect("built-in expression")
}

fn leibniz(cfg: &VerifyConfig, exec: Execution) -> Vec<Check> {
    let fixed = vec![vec![u(), v(), v()], vec![u(), AlgebraElement::one(), AlgebraElement::one()], vec![hamiltonian_h(), u(), v()]];
    vec![
        property("double_leibniz", cfg, exec, fixed, monomials(3, cfg.max_len), |x| {
            verify_leibniz(&x[0], &x[1], &x[2])
        }),
        property("loday_leibniz", cfg, exec, vec![], elements(3, 3, cfg.max_len), |x| {
            verify_loday_leibniz(&x[0], &x[1], &x[2])
        }),
    ]
}

/// A random monomial and one of its rotations.
fn rotation_pair(max_len: usize) -> impl Fn(&mut ChaCha8Rng) -> Vec<AlgebraElement> + Sync + Send {
    move |rng| {
        use rand::Rng;
        let w = random_word(rng, max_len);
        let k = if w.is_empty() { 0 } else { rng.gen_range(0..w.len()) };
        let l = w.letters();
        let rot: Vec<_> = l[k..].iter().chain(&l[..k]).cloned().collect();
        let x = random_element(rng, 3, max_len);
        vec![
            AlgebraElement::monomial(w.clone(), 1),
            AlgebraElement::monomial(crate::word::Word::reduce(&rot), 1),
            x,
        ]
    }
}

fn cyclic(cfg: &VerifyConfig, exec: Execution) -> Vec<Check> {
    let fixed = vec![vec![u(), v(), u()], vec![hamiltonian_h(), AlgebraElement::one(), u()]];
    vec![
        property("cyclic_first_argument", cfg, exec, fixed, monomials(3, cfg.max_len), |x| {
            verify_cyclic_first_arg(&x[0], &x[1], &x[2])
        }),
        property("flow_rotation_invariance", cfg, exec, vec![], rotation_pair(cfg.max_len), |x| {
            &flow_derivative_with(&x[0], &x[2], Execution::Sequential)
                - &flow_derivative_with(&x[1], &x[2], Execution::Sequential)
        }),
    ]
}

fn skew(cfg: &VerifyConfig, exec: Execution) -> Vec<Check> {
    let fixed = vec![vec![u(), v()], vec![hamiltonian_h(), hamiltonian_h()]];
    let draw = elements(2, 3, cfg.max_len);
    let mut minus = property("skew_mod_commutator", cfg, exec, fixed.clone(), &draw, |x| {
        verify_skew_mod_commutator(&x[0], &x[1])
    });
    let plus = property("symmetric_mod_commutator", cfg, exec, fixed, &draw, |x| {
        verify_symmetric_mod_commutator(&x[0], &x[1])
    });
    minus.notes.push(format!(
        "plus-sign variant pi({{a,b}} - {{b,a}}) = 0 held in {}/{} samples",
        plus.samples - plus.failures,
        plus.samples
    ));
    minus.notes.push(format!(
        "minus-sign variant pi({{a,b}} + {{b,a}}) = 0 held in {}/{} samples",
        minus.samples - minus.failures,
        minus.samples
    ));
    vec![minus]
}

fn jacobi(cfg: &VerifyConfig, exec: Execution) -> Vec<Check> {
    let h = hamiltonian_h();
    let h2 = &h * &h;
    let fixed = vec![vec![u(), v(), u()], vec![h.clone(), h2, u()], vec![h.clone(), v(), AlgebraElement::one()]];
    vec![property("jacobi", cfg, exec, fixed, monomials(3, cfg.max_len), |x| {
        verify_jacobi(&x[0], &x[1], &x[2])
    })]
}

fn casimir(cfg: &VerifyConfig, exec: Execution) -> Vec<Check> {
    let h = hamiltonian_h();
    let h3 = &(&h * &h) * &h;
    let fixed = vec![vec![u()], vec![AlgebraElement::one()], vec![h3]];
    let c = casimir_c();
    let right = property("right_casimir", cfg, exec, fixed, elements(1, 3, cfg.max_len), |x| {
        verify_right_casimir(&x[0])
    });

    let start = Instant::now();
    let expected = el("u*v*u^-1*v^-1*u - u^2*v*u^-1*v^-1");
    let got = loday_bracket(&c, &u());
    let mut left = summarize(
        "left_casimir_counterexample",
        cfg.seed,
        start,
        vec![outcome(None, &[c.clone(), u()], &(&got - &expected))],
    );
    if got.is_zero() {
        left.passed = false;
        left.notes.push("{c,u} vanished; it must not".into());
    }

    let projected = property("casimir_central_in_trace_space", cfg, exec, vec![vec![h]], elements(1, 3, cfg.max_len), |x| {
        (project(&loday_bracket(&x[0], &c)), project(&loday_bracket(&c, &x[0])))
    });
    vec![right, left, projected]
}

fn involution(cfg: &VerifyConfig, guard: &Guard, exec: Execution) -> Result<Vec<Check>> {
    let start = Instant::now();
    let d = cfg.involution_degree;
    guard.check_involution(1, d.saturating_sub(1))?;
    let pairs: Vec<(u32, u32)> = (1..d).flat_map(|n| (1..=d - n).map(move |m| (n, m))).collect();
    let results = par::map(exec, &pairs, |&(n, m)| verify_involution(n, m, guard));
    let mut outcomes = Vec::new();
    for (&(n, m), r) in pairs.iter().zip(results) {
        let mut o = outcome(None, &[], &r?);
        if let Some(ce) = o.failure.as_mut() {
            ce.inputs = vec![format!("h^{n}"), format!("h^{m}")];
        }
        outcomes.push(o);
    }
    let mut check = summarize("involution", cfg.seed, start, outcomes);
    check.notes.push(format!("all N, M >= 1 with N + M <= {d}"));
    Ok(vec![check])
}

/// A random `2 × 2` matrix with entries in `A[λ±¹]`, exponents in `-1..=1`.
fn random_lax(rng: &mut ChaCha8Rng, max_len: usize) -> LaxMatrix {
    use rand::Rng;
    let mut rows = Vec::new();
    for _ in 0..2 {
        let mut row = Vec::new();
        for _ in 0..2 {
            let k = rng.gen_range(1..=2);
            row.push(LambdaPoly::from_coeffs(
                (0..k).map(|_| (rng.gen_range(-1..=1), random_element(rng, 2, max_len))).collect::<Vec<_>>(),
            ));
        }
        rows.push(row);
    }
    LaxMatrix::from_rows(rows).expect("2x2")
}

fn lax(cfg: &VerifyConfig, guard: &Guard, exec: Execution) -> Result<Vec<Check>> {
    let start = Instant::now();
    let residual = lax_residual();
    let mut pair = summarize("lax_pair", cfg.seed, start, vec![outcome(None, &[], &residual)]);
    let reversed = lax_residual_reversed();
    pair.notes.push(format!(
        "dL/dt - [L, M] has {} terms; dL/dt - [M, L] has {} terms",
        residual.term_count(),
        reversed.term_count()
    ));
    if let Some(ce) = pair.counterexample.as_mut() {
        ce.inputs = vec!["L".into(), "M".into()];
    }

    let start = Instant::now();
    let h = hamiltonian_h();
    let mut coeffs = Vec::new();
    for k in 1..=cfg.trace_power {
        for (e, a) in trace_power(k, guard)?.coeffs() {
            coeffs.push((k, e, a.clone()));
        }
    }
    let outcomes = par::map(exec, &coeffs, |(k, e, a)| {
        let r = project(&flow_derivative_with(&h, a, Execution::Sequential));
        let mut o = outcome(None, &[], &r);
        if let Some(ce) = o.failure.as_mut() {
            ce.inputs = vec![format!("Tr L^{k}, lambda^{e} coefficient")];
        }
        o
    });
    let mut integrals = summarize("trace_integrals", cfg.seed, start, outcomes);
    integrals.notes.push(format!("every lambda-coefficient of Tr L^k, k <= {}", cfg.trace_power));

    let start = Instant::now();
    let outcomes = par::map_range(exec, cfg.samples, |i| {
        let mut rng = sample_rng(cfg.seed, i as u64);
        let a = random_lax(&mut rng, cfg.max_len.min(3));
        let b = random_lax(&mut rng, cfg.max_len.min(3));
        let diff = a.mul(&b).expect("2x2").trace().sub(&b.mul(&a).expect("2x2").trace());
        let mut terms = 0;
        let mut render = Vec::new();
        for (e, x) in diff.coeffs() {
            let p = project(x);
            terms += p.len();
            if !p.is_zero() {
                render.push(format!("lambda^{e}: {p}"));
            }
        }
        Outcome {
            terms,
            failure: (terms > 0).then(|| Counterexample {
                index: Some(i),
                inputs: vec![a.render(), b.render()],
                residual: render.join("; "),
            }),
        }
    });
    let cyclicity = summarize("trace_cyclicity", cfg.seed, start, outcomes);
    Ok(vec![pair, integrals, cyclicity])
}

fn quadruple(cfg: &VerifyConfig) -> Vec<Check> {
    let start = Instant::now();
    let r = verify_quadruple_potential();
    let mut check = summarize("quadruple_potential", cfg.seed, start, Vec::new());
    check.samples = r.entries;
    check.failures = r.mismatches.len();
    check.max_residual_terms = r.mismatches.len();
    check.passed = r.mismatches.is_empty();
    check.counterexample = r.mismatches.first().map(|m| Counterexample {
        index: None,
        inputs: vec![m.word.clone()],
        residual: format!("table {} vs formula {}", m.table, m.formula),
    });
    check.notes.push(format!("{}/{} table entries match", r.matches, r.entries));
    vec![check]
}

/// Runs one suite, or all of them in order.
pub fn run_suite(cfg: &VerifyConfig, guard: &Guard, exec: Execution) -> Result<VerifyReport> {
    let start = Instant::now();
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Leibniz => leibniz(cfg, exec),
            Suite::Cyclic => cyclic(cfg, exec),
            Suite::Skew => skew(cfg, exec),
            Suite::Jacobi => jacobi(cfg, exec),
            Suite::Casimir => casimir(cfg, exec),
            Suite::Involution => involution(cfg, guard, exec)?,
            Suite::Lax => lax(cfg, guard, exec)?,
            Suite::Quadruple => quadruple(cfg),
            Suite::All => unreachable!(),
        });
    }
    Ok(VerifyReport {
        config: cfg.clone(),
        guard: guard.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> VerifyConfig {
        VerifyConfig {
            suite,
            samples: 20,
            max_len: 3,
            involution_degree: 4,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for s in [Suite::Leibniz, Suite::Cyclic, Suite::Skew, Suite::Jacobi, Suite::Casimir, Suite::Involution, Suite::Quadruple] {
            let r = run_suite(&small(s), &Guard::default(), Execution::auto()).unwrap();
            assert!(r.passed, "{s}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn skew_reports_both_signs() {
        let r = run_suite(&small(Suite::Skew), &Guard::default(), Execution::auto()).unwrap();
        let c = r.check("skew_mod_commutator").unwrap();
        assert_eq!(c.notes.len(), 2);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let cfg = small(Suite::Jacobi);
        let a = run_suite(&cfg, &Guard::default(), Execution::Parallel).unwrap();
        let b = run_suite(&cfg, &Guard::default(), Execution::Sequential).unwrap();
        assert_eq!(a.checks[0].max_residual_terms, b.checks[0].max_residual_terms);
        assert_eq!(a.checks[0].samples, b.checks[0].samples);
    }

    #[test]
    fn lax_suite_reports_orientation() {
        let r = run_suite(&small(Suite::Lax), &Guard::default(), Execution::auto()).unwrap();
        let pair = r.check("lax_pair").unwrap();
        assert!(!pair.passed);
        assert!(pair.counterexample.is_some());
        assert!(r.check("trace_integrals").unwrap().passed);
        assert!(r.check("trace_cyclicity").unwrap().passed);
    }

    #[test]
    fn guard_propagates() {
        let mut cfg = small(Suite::Involution);
        cfg.involution_degree = 12;
        let err = run_suite(&cfg, &Guard::default(), Execution::auto()).unwrap_err();
        assert!(matches!(err, crate::error::Error::Guard(_)));
    }
}

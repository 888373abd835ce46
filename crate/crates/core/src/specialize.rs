//! Quotients of `A` by `c = 1` (commutative Laurent polynomials with the
//! log-canonical Poisson bracket) and by `c = q` central (the q-Weyl
//! algebra `uv = q·vu`).

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{casimir_c, hamiltonian_h, AlgebraElement};
use crate::dbracket::flow_derivative_with;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::scalar::Scalar;
use crate::word::{Letter, Word};

fn add_at<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    let e = map.entry(k).or_default();
    *e += c;
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Scalar, factors: &[(&str, i64)]) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let parts: Vec<String> = factors
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
        .collect();
    let a = c.abs();
    if parts.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{}", parts.join("*"))
    } else {
        write!(f, "{a}*{}", parts.join("*"))
    }
}

/// `Σ c_{mn} uᵐvⁿ` in commuting variables.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CommutativeLaurent {
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl CommutativeLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Scalar)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            add_at(&mut terms, k, &c);
        }
        terms.retain(|_, c: &mut Scalar| !c.is_zero());
        Self { terms }
    }

    pub fn monomial(m: i64, n: i64, c: impl Into<Scalar>) -> Self {
        Self::from_terms([((m, n), c.into())])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: i64, n: i64) -> Scalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).map(|(k, c)| (*k, c.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(k, c)| (*k, c.clone()))
                .chain(other.terms.iter().map(|(k, c)| (*k, -c))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|((a, b), x)| {
            other
                .terms
                .iter()
                .map(move |((c, d), y)| ((a + c, b + d), x * y))
        }))
    }
}

impl fmt::Display for CommutativeLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((m, n), c)) in self.terms.iter().enumerate() {
            write_term(f, i == 0, c, &[("u", *m), ("v", *n)])?;
        }
        Ok(())
    }
}

impl fmt::Debug for CommutativeLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommutativeLaurent({self})")
    }
}

/// The homomorphism `A → ℚ[u±¹, v±¹]` sending a word to its exponent sums.
pub fn abelianize(e: &AlgebraElement) -> CommutativeLaurent {
    CommutativeLaurent::from_terms(e.terms().map(|(w, c)| (w.exponents(), c.clone())))
}

/// `{f, g} = uv (∂_v f ∂_u g − ∂_u f ∂_v g)`. On monomials
/// `{uᵃvᵇ, uᶜvᵈ} = (bc − ad) uᵃ⁺ᶜvᵇ⁺ᵈ`.
pub fn classical_poisson(f: &CommutativeLaurent, g: &CommutativeLaurent) -> CommutativeLaurent {
    CommutativeLaurent::from_terms(f.terms.iter().flat_map(|((a, b), x)| {
        g.terms.iter().map(move |((c, d), y)| {
            let k = Scalar::from(b * c - a * d);
            ((a + c, b + d), &(x * y) * &k)
        })
    }))
}

/// Laurent polynomial in the central parameter `q`.
pub type QLaurent = BTreeMap<i64, Scalar>;

/// `Σ c_{mn}(q) uᵐvⁿ`, normal ordered with `u` to the left.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QWeylElement {
    terms: BTreeMap<(i64, i64), QLaurent>,
}

impl QWeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// From `(m, n, q-exponent, coefficient)` tuples.
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64, i64), Scalar)>>(iter: I) -> Self {
        let mut terms: BTreeMap<(i64, i64), QLaurent> = BTreeMap::new();
        for ((m, n, k), c) in iter {
            add_at(terms.entry((m, n)).or_default(), k, &c);
        }
        for p in terms.values_mut() {
            p.retain(|_, c| !c.is_zero());
        }
        terms.retain(|_, p| !p.is_empty());
        Self { terms }
    }

    fn flat(&self) -> impl Iterator<Item = ((i64, i64, i64), Scalar)> + '_ {
        self.terms
            .iter()
            .flat_map(|((m, n), p)| p.iter().map(move |(k, c)| ((*m, *n, *k), c.clone())))
    }

    pub fn coeff(&self, m: i64, n: i64) -> QLaurent {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.flat().chain(other.flat()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_terms(self.flat().chain(other.flat().map(|(k, c)| (k, -c))))
    }

    /// `(uᵃvᵇ)(uᶜvᵈ) = q^(−bc) uᵃ⁺ᶜvᵇ⁺ᵈ`.
    pub fn mul(&self, other: &Self) -> Self {
        let rhs: Vec<_> = other.flat().collect();
        Self::from_terms(self.flat().flat_map(|((a, b, k), x)| {
            rhs.iter()
                .map(move |((c, d, l), y)| ((a + c, b + d, k + l - b * c), &x * y))
                .collect::<Vec<_>>()
        }))
    }

    /// Substitutes `q = 1`.
    pub fn at_q_one(&self) -> CommutativeLaurent {
        CommutativeLaurent::from_terms(self.flat().map(|((m, n, _), c)| ((m, n), c)))
    }
}

impl fmt::Display for QWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((m, n, k), c) in self.flat() {
            write_term(f, first, &c, &[("q", k), ("u", m), ("v", n)])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QWeylElement({self})")
    }
}

/// Normal form `q^k uᵐ vⁿ` of a single word.
pub fn word_normal_form(w: &Word) -> (i64, i64, i64) {
    let (mut m, mut n, mut k) = (0i64, 0i64, 0i64);
    for &l in w.letters() {
        match l {
            // uᵐvⁿ · u^±1 = q^(∓n) u^(m±1) vⁿ
            Letter::U => {
                k -= n;
                m += 1;
            }
            Letter::UInv => {
                k += n;
                m -= 1;
            }
            Letter::V => n += 1,
            Letter::VInv => n -= 1,
        }
    }
    (m, n, k)
}

/// The homomorphism `A → A/(c − q)`.
pub fn qweyl_normal_form(e: &AlgebraElement) -> QWeylElement {
    QWeylElement::from_terms(e.terms().map(|(w, c)| (word_normal_form(w), c.clone())))
}

/// Element of `A[q, q⁻¹]`, needed to write ideal elements `p(c − q)s`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct QAlgebraElement {
    coeffs: BTreeMap<i64, AlgebraElement>,
}

impl QAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, AlgebraElement)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, a) in iter {
            let sum = match out.coeffs.get(&k) {
                Some(e) => e + &a,
                None => a,
            };
            if sum.is_zero() {
                out.coeffs.remove(&k);
            } else {
                out.coeffs.insert(k, sum);
            }
        }
        out
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &AlgebraElement)> {
        self.coeffs.iter().map(|(k, a)| (*k, a))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coeffs(self.coeffs().chain(other.coeffs()).map(|(k, a)| (k, a.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_coeffs(self.coeffs().flat_map(|(i, a)| {
            other.coeffs().map(move |(j, b)| (i + j, a * b))
        }))
    }

    /// `c − q`.
    pub fn casimir_minus_q() -> Self {
        Self::from_coeffs([(0, casimir_c()), (1, AlgebraElement::constant(-1))])
    }

    /// `x + p (c − q) s`.
    pub fn perturb(x: &AlgebraElement, p: &AlgebraElement, s: &AlgebraElement) -> Self {
        let ideal = QAlgebraElement::from(p.clone())
            .mul(&Self::casimir_minus_q())
            .mul(&QAlgebraElement::from(s.clone()));
        QAlgebraElement::from(x.clone()).add(&ideal)
    }

    pub fn normal_form(&self) -> QWeylElement {
        QWeylElement::from_terms(self.coeffs().flat_map(|(j, a)| {
            a.terms().map(move |(w, c)| {
                let (m, n, k) = word_normal_form(w);
                ((m, n, k + j), c.clone())
            })
        }))
    }

    /// The flow of `h` extended `q`-linearly.
    pub fn flow(&self, exec: Execution) -> Self {
        let h = hamiltonian_h();
        Self::from_coeffs(self.coeffs().map(|(k, a)| (k, flow_derivative_with(&h, a, exec))))
    }
}

impl From<AlgebraElement> for QAlgebraElement {
    fn from(a: AlgebraElement) -> Self {
        Self::from_coeffs([(0, a)])
    }
}

/// `nf({h, x}) − nf({h, y})` for `x, y` with equal normal forms.
pub fn verify_flow_descends(x: &QAlgebraElement, y: &QAlgebraElement) -> Result<QWeylElement> {
    if x.normal_form() != y.normal_form() {
        return Err(Error::Precondition(
            "inputs differ in the q-Weyl quotient; expected y = x + p(c - q)s".into(),
        ));
    }
    let exec = Execution::auto();
    Ok(x.flow(exec).normal_form().sub(&y.flow(exec).normal_form()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{u, v};
    use crate::dbracket::loday_bracket;
    use crate::parse::parse_element;
    use crate::sample::{random_element, sample_rng};

    fn e(s: &str) -> AlgebraElement {
        parse_element(s).unwrap()
    }

    fn cl(terms: &[((i64, i64), i64)]) -> CommutativeLaurent {
        CommutativeLaurent::from_terms(terms.iter().map(|(k, c)| (*k, Scalar::from(*c))))
    }

    /// Swap-by-swap rewriting with `vu → q⁻¹uv`, `v⁻¹u → q uv⁻¹`, etc.
    fn bubble_oracle(w: &Word) -> (i64, i64, i64) {
        let mut ls: Vec<Letter> = w.letters().to_vec();
        let mut k = 0;
        loop {
            let pos = ls
                .windows(2)
                .position(|p| p[0].base() == Letter::V && p[1].base() == Letter::U);
            let Some(i) = pos else { break };
            let sv = if ls[i] == Letter::V { 1 } else { -1 };
            let su = if ls[i + 1] == Letter::U { 1 } else { -1 };
            k -= sv * su;
            ls.swap(i, i + 1);
        }
        let (m, n) = Word::reduce(&ls).exponents();
        (m, n, k)
    }

    #[test]
    fn abelianization() {
        assert_eq!(abelianize(&casimir_c()), CommutativeLaurent::monomial(0, 0, 1));
        assert_eq!(
            abelianize(&hamiltonian_h()),
            cl(&[((1, 0), 1), ((0, 1), 1), ((-1, 0), 1), ((0, -1), 1), ((-1, -1), 1)])
        );
        assert!(abelianize(&u().commutator(&v())).is_zero());
    }

    #[test]
    fn classical_bracket_values() {
        let (cu, cv) = (abelianize(&u()), abelianize(&v()));
        assert_eq!(classical_poisson(&cv, &cu), cl(&[((1, 1), 1)]));
        let hu = classical_poisson(&abelianize(&hamiltonian_h()), &cu);
        assert_eq!(hu, abelianize(&e("u*v - u*v^-1 - v^-1")));
        let f = abelianize(&e("u^2*v - 3*v^-1 + u"));
        assert!(classical_poisson(&f, &f).is_zero());
    }

    #[test]
    fn commutative_image_of_the_bracket() {
        for i in 0..200 {
            let mut rng = sample_rng(3, i);
            let a = random_element(&mut rng, 3, 4);
            let b = random_element(&mut rng, 3, 4);
            assert_eq!(
                abelianize(&loday_bracket(&a, &b)),
                classical_poisson(&abelianize(&a), &abelianize(&b))
            );
        }
    }

    #[test]
    fn normal_forms() {
        let nf = |s: &str| qweyl_normal_form(&e(s));
        assert_eq!(nf("v*u"), QWeylElement::from_terms([((1, 1, -1), Scalar::ONE)]));
        assert_eq!(nf("u*v*u^-1*v^-1"), QWeylElement::from_terms([((0, 0, 1), Scalar::ONE)]));
        assert_eq!(nf("u^2"), QWeylElement::from_terms([((2, 0, 0), Scalar::ONE)]));
        assert_eq!(nf("v*u").to_string(), "q^-1*u*v");
    }

    #[test]
    fn normal_form_matches_swap_oracle() {
        for i in 0..500 {
            let mut rng = sample_rng(8, i);
            let w = crate::sample::random_word(&mut rng, 8);
            assert_eq!(word_normal_form(&w), bubble_oracle(&w), "{w}");
        }
    }

    #[test]
    fn normal_form_is_multiplicative_and_specializes() {
        for i in 0..200 {
            let mut rng = sample_rng(9, i);
            let x = random_element(&mut rng, 3, 4);
            let y = random_element(&mut rng, 3, 4);
            assert_eq!(
                qweyl_normal_form(&(&x * &y)),
                qweyl_normal_form(&x).mul(&qweyl_normal_form(&y))
            );
            assert_eq!(qweyl_normal_form(&x).at_q_one(), abelianize(&x));
        }
    }

    #[test]
    fn flow_descends_examples() {
        let x = QAlgebraElement::from(u());
        let y = QAlgebraElement::perturb(&u(), &AlgebraElement::zero(), &AlgebraElement::one());
        assert!(verify_flow_descends(&x, &y).unwrap().is_zero());
        let x = QAlgebraElement::from(e("u*v"));
        let y = QAlgebraElement::from_coeffs([(1, e("v*u"))]);
        assert!(verify_flow_descends(&x, &y).unwrap().is_zero());
        let bad = QAlgebraElement::from(v());
        assert!(matches!(verify_flow_descends(&x, &bad), Err(Error::Precondition(_))));
    }
}

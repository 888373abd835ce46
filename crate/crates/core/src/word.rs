//! Reduced words in the free group on `u`, `v`.

use std::cmp::Ordering;
use std::fmt;

/// A generator or inverse generator. The derived order `u < u⁻¹ < v < v⁻¹`
/// is the one used everywhere a canonical order is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    U,
    UInv,
    V,
    VInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::U, Letter::UInv, Letter::V, Letter::VInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::U => Letter::UInv,
            Letter::UInv => Letter::U,
            Letter::V => Letter::VInv,
            Letter::VInv => Letter::V,
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.inverse() == other
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Letter::U | Letter::V)
    }

    /// The generator this letter belongs to (`u` for `u` and `u⁻¹`).
    pub fn base(self) -> Letter {
        match self {
            Letter::U | Letter::UInv => Letter::U,
            Letter::V | Letter::VInv => Letter::V,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Letter::U | Letter::UInv => "u",
            Letter::V | Letter::VInv => "v",
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.symbol())
        } else {
            write!(f, "{}^-1", self.symbol())
        }
    }
}

/// Appends `letters` to a reduced stack, cancelling inverse pairs as they meet.
pub(crate) fn push_reduced(stack: &mut Vec<Letter>, letters: &[Letter]) {
    for &l in letters {
        match stack.last() {
            Some(&top) if top.is_inverse_of(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
}

/// A freely reduced word. The empty word is the group identity.
///
/// Ordering is by length first, then lexicographic in the letter order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// Free reduction to normal form.
    pub fn reduce(letters: &[Letter]) -> Word {
        let mut stack = Vec::with_capacity(letters.len());
        push_reduced(&mut stack, letters);
        Word(stack)
    }

    /// Reduced product of several letter slices.
    pub fn concat(parts: &[&[Letter]]) -> Word {
        let cap = parts.iter().map(|p| p.len()).sum();
        let mut stack = Vec::with_capacity(cap);
        for p in parts {
            push_reduced(&mut stack, p);
        }
        Word(stack)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::concat(&[&self.0, &other.0])
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `w^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Word::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `w` is reduced and additionally its first and last letters do not cancel.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&a), Some(&b)) if self.0.len() > 1 => !a.is_inverse_of(b),
            _ => true,
        }
    }

    /// Net exponents of `u` and `v`.
    pub fn exponents(&self) -> (i64, i64) {
        let mut m = 0;
        let mut n = 0;
        for l in &self.0 {
            match l {
                Letter::U => m += 1,
                Letter::UInv => m -= 1,
                Letter::V => n += 1,
                Letter::VInv => n -= 1,
            }
        }
        (m, n)
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word::letter(l)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Writes letters as `u*v^-1*u^2`, grouping runs of equal letters into powers.
pub(crate) fn fmt_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "1");
    }
    let mut first = true;
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let exp = if l.is_positive() { run as i64 } else { -(run as i64) };
        if exp == 1 {
            write!(f, "{}", l.symbol())?;
        } else {
            write!(f, "{}^{}", l.symbol(), exp)?;
        }
        i += run;
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

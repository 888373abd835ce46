//! Seeded random words and elements for property runs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraElement;
use crate::scalar::Scalar;
use crate::word::{Letter, Word};

/// Independent stream `index` derived from a base seed, so a sample does not
/// depend on how the samples are scheduled.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniformly random letters drawn from `alphabet`, freely reduced by rejection
/// so the result has exactly `len` letters.
pub fn random_word_of_len<R: Rng>(rng: &mut R, len: usize, alphabet: &[Letter]) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = alphabet[rng.gen_range(0..alphabet.len())];
        if letters.last().is_some_and(|p| p.is_inverse_of(l)) {
            continue;
        }
        letters.push(l);
    }
    Word::reduce(&letters)
}

/// Reduced word of length in `0..=max_len` over all four letters.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_word_of_len(rng, len, &Letter::ALL)
}

/// Reduced word of length in `1..=max_len`.
pub fn random_nonempty_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len.max(1));
    random_word_of_len(rng, len, &Letter::ALL)
}

/// Up to `max_terms` words with small nonzero integer coefficients.
pub fn random_element<R: Rng>(rng: &mut R, max_terms: usize, max_len: usize) -> AlgebraElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    AlgebraElement::from_terms((0..n).map(|_| {
        let w = random_word(rng, max_len);
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        (w, Scalar::from(c))
    }))
}

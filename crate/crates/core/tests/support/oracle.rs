//! Naive-scan reference for the phrase index, plus the randomized corpus
//! and query generators used to exercise it.

use pleonit::corpus::is_punct_token;
use pleonit::querygen::{PhraseQuery, Slot};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const VOCAB: &[&str] = &[
    "it", "is", "was", "easy", "hard", "to", "read", "see", "the", "a", "book", "plan", "he",
    "this", "which", "who", "that", "why", "left", "market", "time", "or", "and", "not", "'s",
    "clear", "what", "helps", ",", ".", "--",
];

/// Reference count: scan every sentence for the slot sequence over its
/// punctuation-free lowercased tokens.
pub fn naive_count(sentences: &[String], query: &PhraseQuery) -> u64 {
    let q = &query.slots;
    sentences
        .iter()
        .filter(|line| {
            let words: Vec<String> = line
                .split_whitespace()
                .filter(|t| !is_punct_token(t))
                .map(|t| t.to_lowercase())
                .collect();
            if words.len() < q.len() || q.is_empty() {
                return false;
            }
            (0..=words.len() - q.len()).any(|start| {
                q.iter()
                    .enumerate()
                    .all(|(i, slot)| slot.forms().iter().any(|f| *f == words[start + i]))
            })
        })
        .count() as u64
}

pub fn random_sentence(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| *VOCAB.choose(rng).unwrap())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn random_query(rng: &mut ChaCha8Rng) -> PhraseQuery {
    let len = rng.gen_range(1..=4);
    let slots = (0..len)
        .map(|_| {
            if rng.gen_bool(0.3) {
                let n = rng.gen_range(2..=4);
                Slot::alt(
                    (0..n)
                        .map(|_| VOCAB.choose(rng).unwrap().to_string())
                        .filter(|w| !is_punct_token(w))
                        .chain(std::iter::once("filler".to_string())),
                )
            } else {
                loop {
                    let w = *VOCAB.choose(rng).unwrap();
                    if !is_punct_token(w) {
                        break Slot::word(w);
                    }
                }
            }
        })
        .collect();
    PhraseQuery::new(slots)
}

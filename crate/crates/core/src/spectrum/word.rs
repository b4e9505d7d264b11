use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Reduced word in the free group on generators `1..=k`. Letter `i > 0` is
/// the `i`-th generator and `-i` its inverse.
///
/// Words are ordered by length, then lexicographically with letters ranked
/// `1 < -1 < 2 < -2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<i32>,
}

/// Cancels adjacent inverse pairs until none remain.
pub fn reduce_word(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn rank(letter: i32) -> u32 {
    2 * (letter.unsigned_abs() - 1) + u32::from(letter < 0)
}

impl FreeWord {
    pub fn new(letters: &[i32]) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidInput("letter 0 is not a generator".into()));
        }
        Ok(Self {
            letters: reduce_word(letters),
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-letter word `i` (1-based, negative for an inverse).
    pub fn generator(i: i32) -> Self {
        assert_ne!(i, 0);
        Self { letters: vec![i] }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            letters: reduce_word(&letters),
        }
    }

    /// ASCII rendering: generators `a, b, c, ...`, inverses with a `'`
    /// suffix, e.g. `ab'a`. The empty word renders as `e`. Generators past
    /// `z` render as `g27`, `g28'`, ...
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for &l in &self.letters {
            let i = l.unsigned_abs();
            if i <= 26 {
                s.push(char::from(b'a' + (i - 1) as u8));
            } else {
                s.push_str(&format!("g{i}"));
            }
            if l < 0 {
                s.push('\'');
            }
        }
        s
    }

    /// Inverse of [`FreeWord::render`] for words over `a..z`.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "e" || s.is_empty() {
            return Ok(Self::empty());
        }
        let mut letters = Vec::new();
        for c in s.chars() {
            match c {
                'a'..='z' => letters.push(i32::from(c as u8 - b'a' + 1)),
                '\'' => match letters.last_mut() {
                    Some(l) if *l > 0 => *l = -*l,
                    _ => return Err(Error::InvalidInput(format!("misplaced ' in word {s:?}"))),
                },
                _ => return Err(Error::InvalidInput(format!("bad character {c:?} in word {s:?}"))),
            }
        }
        Self::new(&letters)
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| {
            self.letters
                .iter()
                .map(|&l| rank(l))
                .cmp(other.letters.iter().map(|&l| rank(l)))
        })
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn letters_in_order(k: usize) -> Vec<i32> {
    (1..=k as i32).flat_map(|i| [i, -i]).collect()
}

/// All reduced words of exactly `len` letters over `k` generators, in word
/// order. There are `2k (2k - 1)^(len - 1)` of them.
pub fn words_of_length(k: usize, len: usize) -> Vec<FreeWord> {
    let alphabet = letters_in_order(k);
    let mut layer = vec![Vec::<i32>::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &l in &alphabet {
                if w.last() != Some(&-l) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().map(|letters| FreeWord { letters }).collect()
}

/// Reduced words of length `1..=max_len` in word order.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<FreeWord> {
    (1..=max_len).flat_map(|len| words_of_length(k, len)).collect()
}

pub fn word_count(k: usize, len: usize) -> usize {
    if len == 0 {
        return 1;
    }
    2 * k * (2 * k - 1).pow(len as u32 - 1)
}

//! Non-backtracking words over `{0, ..., d-1}` addressing the vertices of
//! `B_{d,k}`.
//!
//! Words of a fixed length are numbered in lexicographic order. The index is
//! a mixed-radix number: the first letter is a digit in base `d`, and every
//! later letter `x` following `p` is the digit `x` if `x < p` and `x - 1`
//! otherwise, in base `d - 1`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Number of words of length `j`.
pub fn sphere_size(d: usize, j: usize) -> usize {
    if j == 0 {
        1
    } else {
        d * (d - 1).pow(j as u32 - 1)
    }
}

pub(crate) fn word_index(d: usize, w: &[u8]) -> usize {
    let mut idx = 0;
    for (i, &x) in w.iter().enumerate() {
        if i == 0 {
            idx = x as usize;
        } else {
            let p = w[i - 1];
            let digit = if x < p { x } else { x - 1 } as usize;
            idx = idx * (d - 1) + digit;
        }
    }
    idx
}

pub(crate) fn word_at(d: usize, len: usize, mut idx: usize) -> Vec<u8> {
    let mut digits = alloc::vec![0usize; len];
    for i in (1..len).rev() {
        digits[i] = idx % (d - 1);
        idx /= d - 1;
    }
    if len > 0 {
        digits[0] = idx;
    }
    let mut w: Vec<u8> = Vec::with_capacity(len);
    for (i, &g) in digits.iter().enumerate() {
        if i == 0 {
            w.push(g as u8);
        } else {
            let p = w[i - 1] as usize;
            w.push(if g < p { g } else { g + 1 } as u8);
        }
    }
    w
}

/// Moves from vertex `x` along the edge labelled `letter`.
pub(crate) fn step(x: &mut Vec<u8>, letter: u8) {
    if x.last() == Some(&letter) {
        x.pop();
    } else {
        x.push(letter);
    }
}

/// Edge labels along the geodesic from `x` to `y`.
pub(crate) fn path_labels(x: &[u8], y: &[u8]) -> Vec<u8> {
    let c = x.iter().zip(y).take_while(|(a, b)| a == b).count();
    let mut out: Vec<u8> = x[c..].iter().rev().copied().collect();
    out.extend_from_slice(&y[c..]);
    out
}

/// A vertex of a labelled ball, given as the labels of the path from the
/// center. The empty word is the center.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexWord {
    letters: Vec<u8>,
}

impl VertexWord {
    pub fn new(d: usize, letters: &[usize]) -> Result<Self> {
        for (i, &x) in letters.iter().enumerate() {
            if x >= d {
                return Err(Error::Precondition(alloc::format!("letter {x} out of range for degree {d}")));
            }
            if i > 0 && letters[i - 1] == x {
                return Err(Error::Precondition("word backtracks".into()));
            }
        }
        Ok(VertexWord { letters: letters.iter().map(|&x| x as u8).collect() })
    }

    pub fn center() -> Self {
        VertexWord { letters: Vec::new() }
    }

    pub(crate) fn from_bytes(letters: Vec<u8>) -> Self {
        VertexWord { letters }
    }

    pub fn letters(&self) -> Vec<usize> {
        self.letters.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn bytes(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.letters.last().map(|&x| x as usize)
    }

    /// Parses a string of base-36 digits.
    pub fn parse(d: usize, s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| c.to_digit(36).map(|x| x as usize).ok_or_else(|| Error::Precondition(alloc::format!("bad letter {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, &letters)
    }

    /// All words of length `len` in lexicographic order.
    pub fn sphere(d: usize, len: usize) -> Vec<VertexWord> {
        (0..sphere_size(d, len)).map(|i| VertexWord { letters: word_at(d, len, i) }).collect()
    }

    /// Position in the lexicographic order of words of the same length.
    pub fn index(&self, d: usize) -> usize {
        word_index(d, &self.letters)
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().map(|&x| char::from_digit(x as u32, 36).unwrap_or('?')).collect();
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn index_matches_lexicographic_order() {
        for d in 3..6 {
            for len in 0..4 {
                let words: Vec<Vec<u8>> = (0..sphere_size(d, len)).map(|i| word_at(d, len, i)).collect();
                let mut brute: Vec<Vec<u8>> = Vec::new();
                let total = d.pow(len as u32);
                for mut n in 0..total {
                    let mut w = alloc::vec![0u8; len];
                    for slot in w.iter_mut().rev() {
                        *slot = (n % d) as u8;
                        n /= d;
                    }
                    if w.windows(2).all(|p| p[0] != p[1]) {
                        brute.push(w);
                    }
                }
                assert_eq!(words, brute);
                for (i, w) in words.iter().enumerate() {
                    assert_eq!(word_index(d, w), i);
                }
            }
        }
    }

    #[test]
    fn walking_and_paths() {
        let mut x = alloc::vec![0u8, 1];
        step(&mut x, 1);
        assert_eq!(x, [0]);
        step(&mut x, 2);
        assert_eq!(x, [0, 2]);
        assert_eq!(path_labels(&[0, 1], &[0, 2, 1]), [1, 2, 1]);
        assert_eq!(path_labels(&[1], &[2]), [1, 2]);
    }

    #[test]
    fn vertex_word_validation() {
        assert!(VertexWord::new(3, &[0, 0]).is_err());
        assert!(VertexWord::new(3, &[3]).is_err());
        assert_eq!(VertexWord::parse(3, "0120").unwrap().to_string(), "0120");
    }
}

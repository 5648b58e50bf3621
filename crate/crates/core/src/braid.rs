//! Words in the Artin generators of the braid group Br_m, band generators,
//! and an exact word problem via handle reduction.
//!
//! A letter `e > 0` denotes the Artin generator `s_e` (crossing of strands
//! `e` and `e+1`), `e < 0` its inverse. Words compose left to right and the
//! permutation image follows the same convention.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A word in the Artin generators of Br_m.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// The empty word (identity braid) on `strands` strands.
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &e in &letters {
            if e == 0 || e.unsigned_abs() as usize >= strands {
                return Err(Error::LetterOutOfRange { letter: e, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Single Artin generator `s_i^(sign)`.
    pub fn generator(strands: usize, letter: i32) -> Result<Self> {
        BraidWord::new(strands, vec![letter])
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    /// Concatenation `self · other`; both words must live in the same Br_m.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Group inverse: letters reversed with signs flipped.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&e| -e).collect(),
        }
    }

    /// Raises the word to an integer power (negative powers invert first).
    pub fn power(&self, exponent: i32) -> BraidWord {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Conjugate `by · self · by^{-1}`.
    pub fn conjugated_by(&self, by: &BraidWord) -> Result<BraidWord> {
        by.compose(self)?.compose(&by.inverse())
    }

    /// Abelianization: sum of letter signs. Invariant under `equals`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&e| e.signum() as i64).sum()
    }

    /// The underlying permutation: letter `±i` maps to the transposition
    /// `(i, i+1)`, composed left to right.
    pub fn permutation_image(&self) -> Permutation {
        // track where each starting position ends up: applying (i, i+1) after
        // the prefix swaps the two current images
        let mut image: Vec<usize> = (1..=self.strands).collect();
        for &e in &self.letters {
            let i = e.unsigned_abs() as usize;
            for x in image.iter_mut() {
                if *x == i {
                    *x = i + 1;
                } else if *x == i + 1 {
                    *x = i;
                }
            }
        }
        Permutation::from_images(&image).expect("letter action is always a bijection")
    }

    /// Cancels adjacent `s_i s_i^{-1}` pairs until none remain.
    pub fn free_reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            if let Some(&last) = out.last() {
                if last == -e {
                    out.pop();
                    continue;
                }
            }
            out.push(e);
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Dehornoy handle reduction. The result represents the same braid and
    /// contains no handle; it is empty iff the braid is trivial.
    pub fn handle_reduced(&self) -> BraidWord {
        let mut w = self.free_reduced().letters;
        let mut steps = 0usize;
        while let Some((q, p)) = find_handle(&w) {
            steps += 1;
            assert!(
                steps < 50_000_000,
                "handle reduction exceeded the safety cap (word length {})",
                w.len()
            );
            let e = w[q].signum();
            let i = w[q].unsigned_abs() as i32;
            let mut repl: Vec<i32> = Vec::with_capacity((p - q) * 3);
            for &x in &w[q + 1..p] {
                if x.unsigned_abs() as i32 == i + 1 {
                    // s_i^e s_{i+1}^d = (s_{i+1}^{-e} s_i^d s_{i+1}^e) s_i^e
                    repl.push(-e * (i + 1));
                    repl.push(x.signum() * i);
                    repl.push(e * (i + 1));
                } else {
                    repl.push(x);
                }
            }
            w.splice(q..=p, repl);
            w = free_reduce_letters(w);
        }
        BraidWord { strands: self.strands, letters: w }
    }

    /// Whether the word represents the identity braid.
    pub fn is_trivial(&self) -> bool {
        if self.exponent_sum() != 0 {
            return false;
        }
        if !self.permutation_image().is_identity() {
            return false;
        }
        self.handle_reduced().is_empty()
    }

    /// Exact word problem: true iff `self` and `other` represent the same
    /// element of Br_m. Cheap invariants reject early; otherwise
    /// `self · other^{-1}` is handle-reduced.
    pub fn equals(&self, other: &BraidWord) -> Result<bool> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        if self.exponent_sum() != other.exponent_sum() {
            return Ok(false);
        }
        if self.permutation_image() != other.permutation_image() {
            return Ok(false);
        }
        Ok(self.compose(&other.inverse())?.is_trivial())
    }

    /// Parses the braid text format: whitespace-separated signed integers,
    /// with band tokens `b(i,j)^e` allowed, e.g. `"1 -2 b(1,3)^2"`.
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok.starts_with('b') {
                let band = BandGenerator::parse(tok)?;
                letters.extend_from_slice(band.to_word(strands)?.letters());
            } else {
                let e: i32 = tok.parse().map_err(|_| Error::InvalidSpec {
                    what: "braid word",
                    text: text.to_string(),
                })?;
                if e == 0 || e.unsigned_abs() as usize >= strands {
                    return Err(Error::LetterOutOfRange { letter: e, strands });
                }
                letters.push(e);
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Renders as whitespace-separated signed integers.
    pub fn text(&self) -> String {
        self.letters
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Br_{}[{}]", self.strands, self.text())
    }
}

/// Finds the handle with the leftmost closing letter: positions `(q, p)` with
/// `w[q] = -w[p]` and no letter of index <= |w[p]| strictly between.
fn find_handle(w: &[i32]) -> Option<(usize, usize)> {
    for p in 0..w.len() {
        let i = w[p].unsigned_abs();
        for q in (0..p).rev() {
            let j = w[q].unsigned_abs();
            if j < i {
                break;
            }
            if j == i {
                if w[q] == -w[p] {
                    return Some((q, p));
                }
                break;
            }
        }
    }
    None
}

fn free_reduce_letters(letters: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for e in letters {
        if let Some(&last) = out.last() {
            if last == -e {
                out.pop();
                continue;
            }
        }
        out.push(e);
    }
    out
}

/// A band generator on strands `i < j`, raised to a nonzero exponent.
///
/// The canonical expansion conjugates `s_i` by the descending run
/// `s_{j-1} ... s_{i+1}`; `to_prime_word` gives the variant conjugated the
/// other way round, which arises in the cabling identities. Both have
/// permutation image `(i j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandGenerator {
    pub i: usize,
    pub j: usize,
    pub exponent: i32,
}

impl BandGenerator {
    pub fn new(i: usize, j: usize, exponent: i32) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::BadBandIndices { i, j });
        }
        if exponent == 0 {
            return Err(Error::ZeroBandExponent);
        }
        Ok(BandGenerator { i, j, exponent })
    }

    /// Canonical expansion in Br_m:
    /// `(s_{j-1} ... s_{i+1}) s_i^exponent (s_{i+1}^{-1} ... s_{j-1}^{-1})`,
    /// which equals the |exponent|-fold repetition of the single band after
    /// free reduction.
    pub fn to_word(&self, strands: usize) -> Result<BraidWord> {
        if self.j > strands {
            return Err(Error::StrandOutOfRange { index: self.j, strands });
        }
        let mut letters: Vec<i32> = Vec::new();
        for t in ((self.i + 1)..self.j).rev() {
            letters.push(t as i32);
        }
        let sign = self.exponent.signum();
        for _ in 0..self.exponent.unsigned_abs() {
            letters.push(sign * self.i as i32);
        }
        for t in (self.i + 1)..self.j {
            letters.push(-(t as i32));
        }
        BraidWord::new(strands, letters)
    }

    /// The opposite-chirality expansion
    /// `s_i^{-1} ... s_{j-2}^{-1} s_{j-1} s_{j-2} ... s_i` (for exponent 1),
    /// repeated |exponent| times and freely reduced.
    pub fn to_prime_word(&self, strands: usize) -> Result<BraidWord> {
        if self.j > strands {
            return Err(Error::StrandOutOfRange { index: self.j, strands });
        }
        let mut letters: Vec<i32> = Vec::new();
        for t in self.i..(self.j - 1) {
            letters.push(-(t as i32));
        }
        let sign = self.exponent.signum();
        for _ in 0..self.exponent.unsigned_abs() {
            letters.push(sign * (self.j - 1) as i32);
        }
        for t in (self.i..(self.j - 1)).rev() {
            letters.push(t as i32);
        }
        BraidWord::new(strands, letters)
    }

    /// Parses band notation `b(i,j)^e`; the exponent suffix is optional.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec { what: "band generator", text: text.to_string() };
        let rest = text.trim().strip_prefix('b').ok_or_else(bad)?;
        let (pair, exp) = match rest.split_once('^') {
            Some((p, e)) => (p, e.parse::<i32>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let pair = pair
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (i, j) = pair.split_once(',').ok_or_else(bad)?;
        let i = i.trim().parse::<usize>().map_err(|_| bad())?;
        let j = j.trim().parse::<usize>().map_err(|_| bad())?;
        BandGenerator::new(i, j, exp)
    }

    pub fn text(&self) -> String {
        if self.exponent == 1 {
            format!("b({},{})", self.i, self.j)
        } else {
            format!("b({},{})^{}", self.i, self.j, self.exponent)
        }
    }
}

/// The positive permutation braid realizing `perm`: each pair of strands
/// crosses at most once. Built by bubble-sorting the inverse image table with
/// adjacent transpositions recorded as positive letters.
pub fn permutation_braid(perm: &Permutation) -> BraidWord {
    let m = perm.size();
    // target[p] = strand that must end in position p
    let mut current: Vec<usize> = (1..=m).collect();
    let target: Vec<usize> = {
        let inv = perm.inverse();
        (1..=m).map(|p| inv.apply(p)).collect()
    };
    let mut letters = Vec::new();
    // selection sort via adjacent swaps, left to right
    for p in 0..m {
        let pos = current.iter().position(|&s| s == target[p]).unwrap();
        for q in (p..pos).rev() {
            current.swap(q, q + 1);
            letters.push((q + 1) as i32);
        }
    }
    BraidWord { strands: m, letters }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(strands: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(strands, letters.to_vec()).unwrap()
    }

    #[test]
    fn compose_follows_concatenation() {
        assert_eq!(w(2, &[1]).compose(&w(2, &[])).unwrap(), w(2, &[1]));
        let ab = w(2, &[1]).compose(&w(2, &[-1])).unwrap();
        assert_eq!(ab, w(2, &[1, -1]));
        assert!(ab.is_trivial());
        assert_eq!(w(3, &[1]).compose(&w(3, &[2])).unwrap(), w(3, &[1, 2]));
        assert!(w(2, &[1]).compose(&w(3, &[1])).is_err());
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w(2, &[]).inverse(), w(2, &[]));
        assert_eq!(w(3, &[1, 2]).inverse(), w(3, &[-2, -1]));
        assert_eq!(w(4, &[1, -3]).inverse(), w(4, &[3, -1]));
        let a = w(4, &[1, 2, -3, 1]);
        assert!(a.compose(&a.inverse()).unwrap().is_trivial());
    }

    #[test]
    fn band_expansions() {
        let b = BandGenerator::new(1, 2, 1).unwrap();
        assert_eq!(b.to_word(4).unwrap(), w(4, &[1]));
        assert_eq!(b.to_prime_word(2).unwrap(), w(2, &[1]));

        let b = BandGenerator::new(1, 3, 1).unwrap();
        assert_eq!(b.to_word(3).unwrap(), w(3, &[2, 1, -2]));
        assert_eq!(
            b.to_word(3).unwrap().permutation_image(),
            Permutation::transposition(3, 1, 3).unwrap()
        );
        assert_eq!(b.to_prime_word(3).unwrap(), w(3, &[-1, 2, 1]));
        assert_eq!(
            b.to_prime_word(3).unwrap().permutation_image(),
            Permutation::transposition(3, 1, 3).unwrap()
        );

        let b = BandGenerator::new(2, 4, 2).unwrap();
        assert_eq!(b.to_word(4).unwrap(), w(4, &[3, 2, 2, -3]));
        let b = BandGenerator::new(2, 4, 1).unwrap();
        assert_eq!(b.to_prime_word(4).unwrap(), w(4, &[-2, 3, 2]));

        assert!(BandGenerator::new(2, 4, 1).unwrap().to_word(3).is_err());
    }

    #[test]
    fn permutation_image_examples() {
        assert_eq!(
            w(2, &[1]).permutation_image(),
            Permutation::transposition(2, 1, 2).unwrap()
        );
        assert!(w(2, &[1, -1]).permutation_image().is_identity());
        let p = w(3, &[1, 2]).permutation_image();
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.apply(3), 2);
        assert_eq!(p.apply(2), 1);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w(2, &[]).exponent_sum(), 0);
        let b = BandGenerator::new(1, 3, 3).unwrap().to_word(3).unwrap();
        assert_eq!(b.exponent_sum(), 3);
        assert_eq!(w(3, &[1, 2, 1, -2, -1, -2]).exponent_sum(), 0);
    }

    #[test]
    fn word_problem_relations() {
        // braid relation
        assert!(w(3, &[1, 2, 1]).equals(&w(3, &[2, 1, 2])).unwrap());
        // far commutation
        assert!(w(4, &[1, 3]).equals(&w(4, &[3, 1])).unwrap());
        // distinct generators differ
        assert!(!w(3, &[1]).equals(&w(3, &[2])).unwrap());
        // mixed: conjugation identity s1 s2 s1^{-1} = s2^{-1} s1 s2
        assert!(w(3, &[1, 2, -1]).equals(&w(3, &[-2, 1, 2])).unwrap());
        assert!(w(2, &[1]).equals(&w(3, &[1])).is_err());
    }

    #[test]
    fn handle_reduction_fixpoint() {
        let r = w(3, &[1, 2, 1, -2, -1, -2]).handle_reduced();
        assert!(r.is_empty());
        let r = w(4, &[1, 2, -1, 3]).handle_reduced();
        assert_eq!(r.handle_reduced(), r);
        assert!(!r.is_empty());
        assert!(!r.is_trivial());
    }

    #[test]
    fn parse_and_render() {
        let b = BraidWord::parse("1 -2 1", 3).unwrap();
        assert_eq!(b, w(3, &[1, -2, 1]));
        assert_eq!(b.text(), "1 -2 1");
        let b = BraidWord::parse("b(1,3)^2 -1", 3).unwrap();
        assert_eq!(b, w(3, &[2, 1, 1, -2, -1]));
        assert!(BraidWord::parse("0", 3).is_err());
        assert!(BraidWord::parse("3", 3).is_err());
        assert_eq!(BandGenerator::parse("b(2,4)^-1").unwrap(), BandGenerator::new(2, 4, -1).unwrap());
    }

    #[test]
    fn permutation_braid_realizes_permutation() {
        let p = Permutation::parse_cycles("(1 3 2)", 4).unwrap();
        let b = permutation_braid(&p);
        assert_eq!(b.permutation_image(), p);
        // positive braid, each pair crossing at most once
        assert!(b.letters().iter().all(|&e| e > 0));
        assert!(b.len() <= 6);
    }
}

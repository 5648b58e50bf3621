//! Permutations of {1, ..., m} stored as image tables.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation of `{1, ..., size}`. Internally the image table is 0-based;
/// the public interface speaks 1-based points throughout.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation { map: (0..size).collect() }
    }

    /// Build from a 1-based image table: `images[i-1]` is the image of point `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let size = images.len();
        let mut seen = vec![false; size];
        let mut map = Vec::with_capacity(size);
        for &im in images {
            if im == 0 || im > size || seen[im - 1] {
                return Err(Error::NotABijection { size });
            }
            seen[im - 1] = true;
            map.push(im - 1);
        }
        Ok(Permutation { map })
    }

    /// The transposition (a b) in S_size.
    pub fn transposition(size: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > size || b > size || a == b {
            return Err(Error::StrandOutOfRange { index: a.max(b), strands: size });
        }
        let mut p = Permutation::identity(size);
        p.map.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Composition applying `self` first, then `other` (left-to-right).
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::DegreeMismatch { left: self.size(), right: other.size() });
        }
        Ok(Permutation { map: self.map.iter().map(|&i| other.map[i]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Permutation { map }
    }

    /// Points moved by the permutation, 1-based, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Returns `Some((a, b))` with a < b if the permutation is a single transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let sup = self.support();
        match sup.as_slice() {
            [a, b] if self.apply(*a) == *b => Some((*a, *b)),
            _ => None,
        }
    }

    /// The 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&i| i + 1).collect()
    }

    /// Cycle decomposition, fixed points omitted, each cycle starting at its
    /// smallest point, cycles sorted by smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut cur = self.map[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.map[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Renders in cycle notation, e.g. `(1 3)(2 4)`; identity renders as `()`.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }

    /// Parses cycle notation like `(1 2)(3 4)` or a single cycle `(1 2 3)`.
    /// Points not mentioned are fixed; `size` gives the ambient degree.
    pub fn parse_cycles(text: &str, size: usize) -> Result<Permutation> {
        let mut p = Permutation::identity(size);
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "()" {
            return Ok(p);
        }
        let bad = || Error::InvalidSpec { what: "permutation", text: text.to_string() };
        for chunk in trimmed.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('(').ok_or_else(bad)?;
            let pts: Vec<usize> = body
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if pts.iter().any(|&x| x == 0 || x > size) {
                return Err(bad());
            }
            for w in 0..pts.len() {
                let from = pts[w];
                let to = pts[(w + 1) % pts.len()];
                if p.map[from - 1] != from - 1 {
                    return Err(bad());
                }
                p.map[from - 1] = to - 1;
            }
        }
        // composed cycles must still be a bijection
        Permutation::from_images(&p.images())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let s = Permutation::transposition(3, 1, 2).unwrap();
        let t = Permutation::transposition(3, 2, 3).unwrap();
        let st = s.then(&t).unwrap();
        // apply (12) then (23): 1 -> 3, 2 -> 1, 3 -> 2
        assert_eq!(st.apply(1), 3);
        assert_eq!(st.apply(2), 1);
        assert_eq!(st.apply(3), 2);
        assert!(st.then(&st.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cycle_roundtrip() {
        let p = Permutation::parse_cycles("(1 3)(2 4)", 5).unwrap();
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.apply(5), 5);
        assert_eq!(p.cycle_string(), "(1 3)(2 4)");
        let q = Permutation::parse_cycles(&p.cycle_string(), 5).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn transposition_detection() {
        let p = Permutation::transposition(4, 2, 4).unwrap();
        assert_eq!(p.as_transposition(), Some((2, 4)));
        let c = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(c.as_transposition(), None);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1, 3]).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
    }
}

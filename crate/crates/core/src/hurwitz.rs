//! Hurwitz action of braid words on tuples of permutations, stabilizer
//! checks, and finite orbit enumeration.
//!
//! Conventions. The move for a positive letter `+i` is the conjugate-left
//! variant `(.., g_i, g_{i+1}, ..) -> (.., g_i g_{i+1} g_i^{-1}, g_i, ..)`
//! (products composed left to right), `-i` is its inverse. Letters of a word
//! act in reverse order, so the action composes as
//! `act(a·b, t) = act(a, act(b, t))`. This pairing is what makes the braid
//! monodromy of a branched covering stabilize its branching tuple.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

/// An ordered tuple of permutations in S_degree, acted on by Br_len.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzTuple {
    degree: usize,
    entries: Vec<Permutation>,
}

impl HurwitzTuple {
    pub fn new(degree: usize, entries: Vec<Permutation>) -> Result<Self> {
        for e in &entries {
            if e.size() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: e.size() });
            }
        }
        Ok(HurwitzTuple { degree, entries })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    /// Ordered product of the entries, composed left to right. Invariant
    /// under every Hurwitz move.
    pub fn product(&self) -> Permutation {
        let mut p = Permutation::identity(self.degree);
        for e in &self.entries {
            p = p.then(e).expect("degrees agree");
        }
        p
    }

    /// Conjugates every entry by `g` (entry -> g entry g^{-1}).
    pub fn conjugated(&self, g: &Permutation) -> Result<HurwitzTuple> {
        let entries = self
            .entries
            .iter()
            .map(|e| conj(g, e))
            .collect::<Result<Vec<_>>>()?;
        HurwitzTuple::new(self.degree, entries)
    }

    /// Parses the tuple text format: semicolon-separated cycles like
    /// `"(1 2);(2 3);(1 2)"`, degree given out of band.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let entries = text
            .split(';')
            .map(|part| Permutation::parse_cycles(part, degree))
            .collect::<Result<Vec<_>>>()?;
        HurwitzTuple::new(degree, entries)
    }

    pub fn text(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.cycle_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    /// JSON mirror `{"degree":3,"entries":[[2,1,3],...]}` (1-based tables).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "entries": self.entries.iter().map(|e| e.images()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidSpec { what: "hurwitz tuple", text: value.to_string() };
        let degree = value.get("degree").and_then(|v| v.as_u64()).ok_or_else(bad)? as usize;
        let entries = value.get("entries").and_then(|v| v.as_array()).ok_or_else(bad)?;
        let entries = entries
            .iter()
            .map(|row| {
                let images: Vec<usize> = row
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_u64().map(|v| v as usize).ok_or_else(bad))
                    .collect::<Result<_>>()?;
                Permutation::from_images(&images)
            })
            .collect::<Result<Vec<_>>>()?;
        HurwitzTuple::new(degree, entries)
    }
}

impl fmt::Debug for HurwitzTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}<{}>", self.degree, self.text())
    }
}

/// `a b a^{-1}` in left-to-right composition.
fn conj(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.then(b)?.then(&a.inverse())
}

fn apply_move(entries: &mut [Permutation], letter: i32) {
    let i = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        let gi = entries[i].clone();
        let conj = conj(&gi, &entries[i + 1]).expect("degrees agree");
        entries[i] = conj;
        entries[i + 1] = gi;
    } else {
        let gj = entries[i + 1].clone();
        let conj = conj(&gj.inverse(), &entries[i]).expect("degrees agree");
        entries[i] = gj;
        entries[i + 1] = conj;
    }
}

/// Applies the Hurwitz action of `braid` to `tuple`.
pub fn hurwitz_act(braid: &BraidWord, tuple: &HurwitzTuple) -> Result<HurwitzTuple> {
    if braid.strands() != tuple.len() {
        return Err(Error::TupleLengthMismatch { strands: braid.strands(), tuple_len: tuple.len() });
    }
    let mut entries = tuple.entries().to_vec();
    for &letter in braid.letters().iter().rev() {
        apply_move(&mut entries, letter);
    }
    HurwitzTuple::new(tuple.degree(), entries)
}

/// True iff the action of `braid` fixes `tuple` entrywise.
pub fn stabilizes(braid: &BraidWord, tuple: &HurwitzTuple) -> Result<bool> {
    Ok(hurwitz_act(braid, tuple)? == *tuple)
}

/// The length-`n*k` tuple in S_{n+1} repeating `(12),(23),...,(n n+1)`
/// k times: the branching data of the covering at the base point.
pub fn periodic_tuple(n: usize, k: usize) -> HurwitzTuple {
    assert!(n >= 1 && k >= 1, "periodic_tuple needs n, k >= 1");
    let degree = n + 1;
    let entries = (0..n * k)
        .map(|pos| {
            let r = pos % n;
            Permutation::transposition(degree, r + 1, r + 2).expect("indices in range")
        })
        .collect();
    HurwitzTuple::new(degree, entries).expect("uniform degree")
}

/// Result of a breadth-first orbit enumeration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub size: usize,
    /// Members as 1-based image tables, sorted lexicographically.
    pub members: Vec<Vec<Vec<usize>>>,
    /// One edge `(from, generator index i, to)` per member and positive move.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Enumerates the orbit of `tuple` under all Hurwitz moves, erroring out if
/// it grows past `cap` states. Member ordering is lexicographic on the
/// flattened image tables, so reports are deterministic.
pub fn orbit_bfs(tuple: &HurwitzTuple, cap: usize) -> Result<OrbitReport> {
    let m = tuple.len();
    let mut seen: BTreeMap<HurwitzTuple, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(tuple.clone(), 0);
    queue.push_back(tuple.clone());
    while let Some(cur) = queue.pop_front() {
        for i in 1..m {
            for letter in [i as i32, -(i as i32)] {
                let mut entries = cur.entries().to_vec();
                apply_move(&mut entries, letter);
                let next = HurwitzTuple::new(cur.degree(), entries)?;
                if !seen.contains_key(&next) {
                    if seen.len() >= cap {
                        return Err(Error::OrbitCapExceeded { cap });
                    }
                    seen.insert(next.clone(), 0);
                    queue.push_back(next);
                }
            }
        }
    }
    // renumber members in sorted order (BTreeMap iterates sorted by key,
    // and HurwitzTuple orders lexicographically on image tables)
    let members: Vec<HurwitzTuple> = seen.keys().cloned().collect();
    let index: BTreeMap<&HurwitzTuple, usize> =
        members.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = Vec::new();
    for (from_idx, t) in members.iter().enumerate() {
        for i in 1..m {
            let mut entries = t.entries().to_vec();
            apply_move(&mut entries, i as i32);
            let next = HurwitzTuple::new(t.degree(), entries)?;
            edges.push((from_idx, i, index[&next]));
        }
    }
    Ok(OrbitReport {
        size: members.len(),
        members: members
            .iter()
            .map(|t| t.entries().iter().map(|e| e.images()).collect())
            .collect(),
        edges,
    })
}

/// Smallest positive power of `braid` that stabilizes `tuple`, up to `max`.
pub fn minimal_stabilizing_power(
    braid: &BraidWord,
    tuple: &HurwitzTuple,
    max: u32,
) -> Result<Option<u32>> {
    let mut current = tuple.clone();
    for p in 1..=max {
        current = hurwitz_act(braid, &current)?;
        if current == *tuple {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Searches S_degree for a global conjugation sending `a` to `b` entrywise.
/// Brute force over all degree! permutations; intended for small degrees.
pub fn global_conjugation(a: &HurwitzTuple, b: &HurwitzTuple) -> Result<Option<Permutation>> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let degree = a.degree();
    let mut images: Vec<usize> = (1..=degree).collect();
    loop {
        let g = Permutation::from_images(&images)?;
        if a.conjugated(&g)? == *b {
            return Ok(Some(g));
        }
        if !next_permutation(&mut images) {
            return Ok(None);
        }
    }
}

fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

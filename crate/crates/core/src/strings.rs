//! Exact string primitives: overlaps, distances, periods, equivalence,
//! substring-free reduction and path merging.
//!
//! Symbols are opaque bytes. Every function here is pure.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A nonempty finite sequence of byte symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Result<Self> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(symbols))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::new(s.as_bytes())
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Word::new(s.into_bytes())
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        String::from_utf8_lossy(&w.0).into_owned()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", String::from_utf8_lossy(&self.0))
    }
}

/// An indexed, substring-free collection of words. Node ids are `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    words: Vec<Word>,
}

impl Instance {
    /// Builds an instance, rejecting inputs that are empty or not substring-free.
    pub fn new(words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, w) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                if i != j && contains(v, w) {
                    return Err(Error::NotSubstringFree(i));
                }
            }
        }
        Ok(Instance { words })
    }

    /// Parses each string as a word and calls [`Instance::new`].
    pub fn from_strs<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let words = words
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<Word>>>()?;
        Instance::new(words)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, id: usize) -> &Word {
        &self.words[id]
    }

    pub fn total_len(&self) -> usize {
        self.words.iter().map(|w| w.len()).sum()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    /// SHA-256 of the words in id order, each followed by a newline, as hex.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for w in &self.words {
            h.update(w.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}

/// Result of [`reduce_substring_free`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub instance: Instance,
    /// `kept[i]` is the node id of input word `i`, or `None` if it was dropped.
    pub kept: Vec<Option<usize>>,
}

impl Reduction {
    pub fn dropped(&self) -> impl Iterator<Item = usize> + '_ {
        self.kept
            .iter()
            .enumerate()
            .filter_map(|(i, k)| k.is_none().then_some(i))
    }
}

/// Failure function: `fail[i]` is the length of the longest proper border of `p[..=i]`.
pub(crate) fn failure(p: &[u8]) -> Vec<usize> {
    let mut fail = vec![0; p.len()];
    let mut k = 0;
    for i in 1..p.len() {
        while k > 0 && p[i] != p[k] {
            k = fail[k - 1];
        }
        if p[i] == p[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// True iff `needle` occurs in `haystack` as a contiguous substring.
pub fn contains(haystack: &[u8], needle: &[u8]) -> bool {
    find(haystack, needle).is_some()
}

/// First occurrence of `needle` in `haystack` (Knuth–Morris–Pratt).
pub fn find(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    if needle.len() > haystack.len() {
        return None;
    }
    let fail = failure(needle);
    let mut q = 0;
    for (i, &c) in haystack.iter().enumerate() {
        while q > 0 && c != needle[q] {
            q = fail[q - 1];
        }
        if c == needle[q] {
            q += 1;
        }
        if q == needle.len() {
            return Some(i + 1 - q);
        }
    }
    None
}

/// Longest suffix of `s` that is a prefix of `t`.
///
/// With `self_mode` the overlap of a node with itself is meant, and the
/// result is additionally shorter than `s`. Runs the failure automaton of
/// `t` over `s`, so the cost is `O(|s| + |t|)`.
pub fn overlap(s: &[u8], t: &[u8], self_mode: bool) -> usize {
    if self_mode {
        return failure(s).last().copied().unwrap_or(0);
    }
    if s.is_empty() || t.is_empty() {
        return 0;
    }
    let fail = failure(t);
    let mut q = 0;
    for &c in s {
        if q == t.len() {
            q = fail[q - 1];
        }
        while q > 0 && c != t[q] {
            q = fail[q - 1];
        }
        if c == t[q] {
            q += 1;
        }
    }
    q
}

/// Quadratic reference scan for [`overlap`], kept for differential tests.
pub fn overlap_naive(s: &[u8], t: &[u8], self_mode: bool) -> usize {
    let mut max = s.len().min(t.len());
    if self_mode {
        max = max.min(s.len().saturating_sub(1));
    }
    (0..=max).rev().find(|&i| s[s.len() - i..] == t[..i]).unwrap_or(0)
}

/// `|pref(s,t)| = |s| - ov(s,t)`.
pub fn distance(s: &[u8], t: &[u8], self_mode: bool) -> usize {
    s.len() - overlap(s, t, self_mode)
}

/// The unmerged leading part of `s` when maximally merged into `t`.
pub fn pref<'a>(s: &'a [u8], t: &[u8], self_mode: bool) -> &'a [u8] {
    &s[..distance(s, t, self_mode)]
}

/// Smallest periodicity of `w`, equal to `dist(w, w)`.
pub fn period(w: &[u8]) -> usize {
    distance(w, w, true)
}

/// True iff `w` is a prefix of `x^∞` for some `x` of length `a`.
pub fn has_periodicity(w: &[u8], a: usize) -> Result<bool> {
    if a == 0 || a > w.len() {
        return Err(Error::PeriodicityOutOfRange { a, len: w.len() });
    }
    Ok((0..w.len() - a).all(|i| w[i] == w[i + a]))
}

/// True iff `b` is a cyclic rotation of `a`.
pub fn is_rotation(a: &[u8], b: &[u8]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let doubled: Vec<u8> = a.iter().chain(a.iter()).copied().collect();
    contains(&doubled, b)
}

/// Two words are equivalent iff their minimal periods `pref(w,w)` are rotations of each other.
pub fn equivalent(s: &[u8], t: &[u8]) -> bool {
    is_rotation(&s[..period(s)], &t[..period(t)])
}

/// Drops every word strictly contained in another and collapses duplicates
/// to their first occurrence.
pub fn reduce_substring_free(words: Vec<Word>) -> Result<Reduction> {
    if words.is_empty() {
        return Err(Error::EmptyInput);
    }
    let keep: Vec<bool> = (0..words.len())
        .map(|i| {
            !words.iter().enumerate().any(|(j, other)| {
                if i == j {
                    return false;
                }
                if other.as_bytes() == words[i].as_bytes() {
                    j < i
                } else {
                    contains(other, &words[i])
                }
            })
        })
        .collect();
    let mut kept = Vec::with_capacity(words.len());
    let mut retained = Vec::new();
    for (w, k) in words.into_iter().zip(&keep) {
        if *k {
            kept.push(Some(retained.len()));
            retained.push(w);
        } else {
            kept.push(None);
        }
    }
    Ok(Reduction {
        instance: Instance { words: retained },
        kept,
    })
}

fn check_order(m: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; m];
    for &id in order {
        if id >= m {
            return Err(Error::InvalidNode(id));
        }
        if std::mem::replace(&mut seen[id], true) {
            return Err(Error::RepeatedNode(id));
        }
    }
    if order.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

/// `pref(s0,s1) … pref(s_{k-1},s_k) s_k` for the given node order.
pub fn merge_path(instance: &Instance, order: &[usize]) -> Result<Word> {
    check_order(instance.len(), order)?;
    let mut out = Vec::new();
    for pair in order.windows(2) {
        let (s, t) = (instance.word(pair[0]), instance.word(pair[1]));
        out.extend_from_slice(pref(s, t, false));
    }
    out.extend_from_slice(instance.word(*order.last().unwrap()));
    Word::new(out)
}

/// True iff every instance word occurs in `w`.
pub fn is_superstring(w: &[u8], instance: &Instance) -> bool {
    instance.words().iter().all(|s| contains(w, s))
}

/// Prefix of `x^∞` of the given length.
pub fn power_prefix(x: &[u8], len: usize) -> Vec<u8> {
    x.iter().copied().cycle().take(len).collect()
}

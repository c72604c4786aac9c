//! Finite alphabets, words, the edit metric and edit balls.
//!
//! The edit metric counts substitutions, insertions and deletions (no
//! transpositions).  `edit_distance` is a dynamic program with an optional
//! witnessing script; `edit_ball` enumerates metric balls by breadth-first
//! expansion; `edit_ball_bound` is the combinatorial ball-size bound
//! `(2p+2)^m * C(n+m, n)`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An ordered finite set of symbols.  Symbols are referred to by their
/// index; names are only used for parsing and display.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    single_char: bool,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Parameter("alphabet must be nonempty".into()));
        }
        if names.len() > 250 {
            return Err(Error::Parameter("alphabet too large".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(Error::Parameter(format!("duplicate symbol {n:?}")));
            }
        }
        let single_char = names.iter().all(|n| n.chars().count() == 1);
        Ok(Alphabet { names, single_char })
    }

    /// The alphabet `{0, 1, ..., b-1}`.
    pub fn digits(b: usize) -> Arc<Alphabet> {
        Arc::new(Alphabet::new((0..b).map(|i| i.to_string()).collect()).unwrap())
    }

    pub fn binary() -> Arc<Alphabet> {
        Alphabet::digits(2)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, sym: u8) -> &str {
        &self.names[sym as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn single_char(&self) -> bool {
        self.single_char
    }
}

/// A finite word over a fixed alphabet.  The empty word is permitted.
#[derive(Debug, Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    syms: Vec<u8>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syms == other.syms && self.alphabet == other.alphabet
    }
}
impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Alphabet deliberately not hashed; cross-alphabet collisions are
        // resolved by Eq.
        self.syms.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.syms.cmp(&other.syms)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.single_char() {
            for &s in &self.syms {
                write!(f, "{}", self.alphabet.name(s))?;
            }
            Ok(())
        } else {
            let parts: Vec<&str> = self.syms.iter().map(|&s| self.alphabet.name(s)).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl Word {
    pub fn empty(alphabet: Arc<Alphabet>) -> Word {
        Word {
            alphabet,
            syms: Vec::new(),
        }
    }

    pub fn from_syms(alphabet: Arc<Alphabet>, syms: Vec<u8>) -> Result<Word> {
        let size = alphabet.size();
        for &s in &syms {
            if (s as usize) >= size {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as usize,
                    size,
                });
            }
        }
        Ok(Word { alphabet, syms })
    }

    /// Parse the serialized form: concatenated symbol names for
    /// single-character alphabets, comma-separated otherwise.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty(alphabet.clone()));
        }
        let mut syms = Vec::new();
        if alphabet.single_char() {
            for c in text.chars() {
                let s = alphabet
                    .index_of(&c.to_string())
                    .ok_or_else(|| Error::WordParse(text.to_string()))?;
                syms.push(s);
            }
        } else {
            for part in text.split(',') {
                let s = alphabet
                    .index_of(part)
                    .ok_or_else(|| Error::WordParse(text.to_string()))?;
                syms.push(s);
            }
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            syms,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn syms(&self) -> &[u8] {
        &self.syms
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut syms = self.syms.clone();
        syms.extend_from_slice(&other.syms);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            syms,
        })
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            syms: self.syms[start..end].to_vec(),
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.subword(0, len)
    }

    pub fn appended(&self, sym: u8) -> Word {
        let mut syms = self.syms.clone();
        syms.push(sym);
        Word {
            alphabet: self.alphabet.clone(),
            syms,
        }
    }
}

/// One edit applied at a position of the current word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditStep {
    /// Replace the symbol at `pos`.
    Substitute { pos: usize, sym: u8 },
    /// Insert `sym` before index `pos` (`pos == len` appends).
    Insert { pos: usize, sym: u8 },
    /// Remove the symbol at `pos`.
    Delete { pos: usize },
}

/// An ordered list of edits transforming a source word into a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditScript(pub Vec<EditStep>);

impl EditScript {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replay the script on `source`.
    pub fn apply(&self, source: &Word) -> Result<Word> {
        let mut syms = source.syms.clone();
        for step in &self.0 {
            match *step {
                EditStep::Substitute { pos, sym } => {
                    if pos >= syms.len() {
                        return Err(Error::ScriptReplay(format!("substitute at {pos}")));
                    }
                    syms[pos] = sym;
                }
                EditStep::Insert { pos, sym } => {
                    if pos > syms.len() {
                        return Err(Error::ScriptReplay(format!("insert at {pos}")));
                    }
                    syms.insert(pos, sym);
                }
                EditStep::Delete { pos } => {
                    if pos >= syms.len() {
                        return Err(Error::ScriptReplay(format!("delete at {pos}")));
                    }
                    syms.remove(pos);
                }
            }
        }
        Word::from_syms(source.alphabet.clone(), syms)
    }
}

/// Edit distance between two words over the same alphabet.
pub fn edit_distance(u: &Word, v: &Word) -> Result<u32> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    Ok(distance_dp(&u.syms, &v.syms))
}

pub(crate) fn distance_dp(a: &[u8], b: &[u8]) -> u32 {
    let (n, m) = (a.len(), b.len());
    let mut prev: Vec<u32> = (0..=m as u32).collect();
    let mut cur = vec![0u32; m + 1];
    for i in 1..=n {
        cur[0] = i as u32;
        for j in 1..=m {
            let sub = prev[j - 1] + u32::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// Banded edit distance: returns `None` when the distance exceeds `cutoff`.
pub fn edit_distance_capped(u: &Word, v: &Word, cutoff: u32) -> Result<Option<u32>> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let (a, b) = (&u.syms, &v.syms);
    let (n, m) = (a.len(), b.len());
    if (n as i64 - m as i64).unsigned_abs() as u32 > cutoff {
        return Ok(None);
    }
    let big = cutoff + 1;
    let mut prev = vec![big; m + 1];
    let mut cur = vec![big; m + 1];
    for (j, p) in prev.iter_mut().enumerate().take(m + 1) {
        *p = (j as u32).min(big);
    }
    for i in 1..=n {
        let lo = i.saturating_sub(cutoff as usize + 1).max(1);
        let hi = (i + cutoff as usize).min(m);
        cur[0] = (i as u32).min(big);
        if lo > 1 {
            cur[lo - 1] = big;
        }
        let mut row_min = cur[0];
        for j in lo..=hi {
            let sub = prev[j - 1].saturating_add(u32::from(a[i - 1] != b[j - 1]));
            let del = prev[j].saturating_add(1);
            let ins = cur[j - 1].saturating_add(1);
            cur[j] = sub.min(del).min(ins).min(big);
            row_min = row_min.min(cur[j]);
        }
        if hi < m {
            cur[hi + 1] = big;
        }
        if row_min > cutoff {
            return Ok(None);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    if prev[m] > cutoff {
        Ok(None)
    } else {
        Ok(Some(prev[m]))
    }
}

/// Edit distance plus a witnessing script (source `u`, target `v`).
pub fn edit_distance_with_script(u: &Word, v: &Word) -> Result<(u32, EditScript)> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let (a, b) = (&u.syms, &v.syms);
    let (n, m) = (a.len(), b.len());
    let mut dp = vec![vec![0u32; m + 1]; n + 1];
    for (j, cell) in dp[0].iter_mut().enumerate() {
        *cell = j as u32;
    }
    for i in 1..=n {
        dp[i][0] = i as u32;
        for j in 1..=m {
            let sub = dp[i - 1][j - 1] + u32::from(a[i - 1] != b[j - 1]);
            dp[i][j] = sub.min(dp[i - 1][j] + 1).min(dp[i][j - 1] + 1);
        }
    }
    // Walk back from (n, m).  Steps are collected in decreasing source
    // position, so positions stay valid when replayed in order.
    let mut steps = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && dp[i][j] == dp[i - 1][j - 1] + u32::from(a[i - 1] != b[j - 1]) {
            if a[i - 1] != b[j - 1] {
                steps.push(EditStep::Substitute {
                    pos: i - 1,
                    sym: b[j - 1],
                });
            }
            i -= 1;
            j -= 1;
        } else if i > 0 && dp[i][j] == dp[i - 1][j] + 1 {
            steps.push(EditStep::Delete { pos: i - 1 });
            i -= 1;
        } else {
            steps.push(EditStep::Insert {
                pos: i,
                sym: b[j - 1],
            });
            j -= 1;
        }
    }
    let dist = dp[n][m];
    debug_assert_eq!(dist as usize, steps.len());
    Ok((dist, EditScript(steps)))
}

fn single_edits(w: &[u8], p: usize, out: &mut Vec<Vec<u8>>) {
    out.clear();
    let n = w.len();
    for i in 0..n {
        for s in 0..p as u8 {
            if s != w[i] {
                let mut v = w.to_vec();
                v[i] = s;
                out.push(v);
            }
        }
    }
    for i in 0..=n {
        for s in 0..p as u8 {
            let mut v = Vec::with_capacity(n + 1);
            v.extend_from_slice(&w[..i]);
            v.push(s);
            v.extend_from_slice(&w[i..]);
            out.push(v);
        }
    }
    for i in 0..n {
        let mut v = w.to_vec();
        v.remove(i);
        out.push(v);
    }
}

/// All words at edit distance at most `r` from `w`, optionally filtered by a
/// membership predicate.  Enumeration order is (length, lexicographic).
pub fn edit_ball(
    w: &Word,
    r: u32,
    filter: Option<&dyn Fn(&Word) -> bool>,
    max_radius: u32,
) -> Result<Vec<Word>> {
    if r > max_radius {
        return Err(Error::ResourceLimit(format!(
            "edit ball radius {r} exceeds configured maximum {max_radius}"
        )));
    }
    let p = w.alphabet.size();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(w.syms.clone());
    let mut frontier = vec![w.syms.clone()];
    let mut scratch = Vec::new();
    for _ in 0..r {
        let mut next = Vec::new();
        for word in &frontier {
            single_edits(word, p, &mut scratch);
            for v in scratch.drain(..) {
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Word> = Vec::with_capacity(seen.len());
    for syms in seen {
        let word = Word {
            alphabet: w.alphabet.clone(),
            syms,
        };
        if filter.map_or(true, |f| f(&word)) {
            out.push(word);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.syms.cmp(&b.syms)));
    Ok(out)
}

/// Cumulative ball sizes `|B(w, 0)|, ..., |B(w, r)|` over all words (no
/// language filter).  Uses a packed bitset for binary alphabets, which keeps
/// the exhaustive acceptance sweeps fast.
pub fn edit_ball_sizes(w: &Word, r: u32) -> Vec<u64> {
    let p = w.alphabet.size();
    if p == 2 && w.len() + (r as usize) <= 24 {
        return edit_ball_sizes_packed(&w.syms, r);
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(w.syms.clone());
    let mut frontier = vec![w.syms.clone()];
    let mut sizes = vec![1u64];
    let mut scratch = Vec::new();
    for _ in 0..r {
        let mut next = Vec::new();
        for word in &frontier {
            single_edits(word, p, &mut scratch);
            for v in scratch.drain(..) {
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        sizes.push(seen.len() as u64);
        frontier = next;
    }
    sizes
}

// Binary words of length <= 24 packed as (len << 24) | bits.
fn pack(w: &[u8]) -> u32 {
    let mut bits = 0u32;
    for (i, &s) in w.iter().enumerate() {
        bits |= (s as u32) << i;
    }
    ((w.len() as u32) << 24) | bits
}

fn edit_ball_sizes_packed(w: &[u8], r: u32) -> Vec<u64> {
    let mut seen: HashSet<u32> = HashSet::with_capacity(1 << 14);
    seen.insert(pack(w));
    let mut frontier = vec![w.to_vec()];
    let mut sizes = vec![1u64];
    let mut scratch = Vec::new();
    for _ in 0..r {
        let mut next = Vec::new();
        for word in &frontier {
            single_edits(word, 2, &mut scratch);
            for v in scratch.drain(..) {
                if seen.insert(pack(&v)) {
                    next.push(v);
                }
            }
        }
        sizes.push(seen.len() as u64);
        frontier = next;
    }
    sizes
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The ball-size bound `(2p+2)^m * C(n+m, n)` as an exact big integer.
pub fn edit_ball_bound(n: u64, m: u64, p: u64) -> BigUint {
    BigUint::from(2 * p + 2).pow(m as u32) * binomial(n + m, n)
}

/// Natural log of `edit_ball_bound`, for reporting.
pub fn edit_ball_bound_log(n: u64, m: u64, p: u64) -> f64 {
    log_biguint(&edit_ball_bound(n, m, p))
}

/// Natural log of a positive big integer, accurate to f64 precision.
pub fn log_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 52;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::VecDeque;

    fn w(s: &str) -> Word {
        Word::parse(&Alphabet::binary(), s).unwrap()
    }

    /// Independent oracle: breadth-first search over all edit sequences.
    fn bfs_distance(u: &Word, v: &Word) -> u32 {
        let p = u.alphabet().size();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        queue.push_back((u.syms().to_vec(), 0u32));
        seen.insert(u.syms().to_vec());
        let target = v.syms().to_vec();
        let mut scratch = Vec::new();
        while let Some((cur, d)) = queue.pop_front() {
            if cur == target {
                return d;
            }
            single_edits(&cur, p, &mut scratch);
            for nb in scratch.drain(..) {
                // Prune anything that cannot beat the max-length bound.
                if nb.len() > u.len().max(v.len()) + 1 && seen.len() > 200_000 {
                    continue;
                }
                if seen.insert(nb.clone()) {
                    queue.push_back((nb, d + 1));
                }
            }
        }
        unreachable!("edit graph is connected");
    }

    #[test]
    fn distance_basics() {
        assert_eq!(edit_distance(&w("0110"), &w("0110")).unwrap(), 0);
        assert_eq!(edit_distance(&w("00"), &w("01")).unwrap(), 1);
        assert_eq!(edit_distance(&w("0110"), &w("110")).unwrap(), 1);
        assert_eq!(edit_distance(&w(""), &w("101")).unwrap(), 3);
    }

    #[test]
    fn distance_alphabet_mismatch() {
        let a3 = Alphabet::digits(3);
        let u = Word::parse(&a3, "012").unwrap();
        assert!(matches!(
            edit_distance(&u, &w("01")),
            Err(Error::AlphabetMismatch)
        ));
    }

    #[test]
    fn distance_matches_bfs_oracle() {
        let alpha = Alphabet::binary();
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            rng_state >> 33
        };
        for _ in 0..40 {
            let nu = (next() % 7) as usize;
            let nv = (next() % 7) as usize;
            let u = Word::from_syms(alpha.clone(), (0..nu).map(|_| (next() % 2) as u8).collect())
                .unwrap();
            let v = Word::from_syms(alpha.clone(), (0..nv).map(|_| (next() % 2) as u8).collect())
                .unwrap();
            assert_eq!(edit_distance(&u, &v).unwrap(), bfs_distance(&u, &v));
        }
    }

    #[test]
    fn capped_matches_full() {
        let alpha = Alphabet::digits(3);
        let mut state = 1234567u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(99);
            state >> 33
        };
        for _ in 0..200 {
            let nu = (next() % 9) as usize;
            let nv = (next() % 9) as usize;
            let u = Word::from_syms(alpha.clone(), (0..nu).map(|_| (next() % 3) as u8).collect())
                .unwrap();
            let v = Word::from_syms(alpha.clone(), (0..nv).map(|_| (next() % 3) as u8).collect())
                .unwrap();
            let d = edit_distance(&u, &v).unwrap();
            for cutoff in 0..=6 {
                let got = edit_distance_capped(&u, &v, cutoff).unwrap();
                if d <= cutoff {
                    assert_eq!(got, Some(d));
                } else {
                    assert_eq!(got, None);
                }
            }
        }
    }

    #[test]
    fn script_replays() {
        let u = w("010011");
        let v = w("11010");
        let (d, script) = edit_distance_with_script(&u, &v).unwrap();
        assert_eq!(script.len() as u32, d);
        assert_eq!(script.apply(&u).unwrap(), v);
    }

    #[test]
    fn ball_radius_zero() {
        let b = edit_ball(&w("0101"), 0, None, 6).unwrap();
        assert_eq!(b, vec![w("0101")]);
    }

    #[test]
    fn ball_radius_limit() {
        assert!(matches!(
            edit_ball(&w("01"), 7, None, 6),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn ball_matches_dp_census() {
        // Independent oracle: enumerate every candidate of length <= 3 and
        // count those at DP distance <= 1 from "01".
        let alpha = Alphabet::binary();
        let center = w("01");
        let mut count = 0usize;
        for len in 0..=3usize {
            for code in 0..(1usize << len) {
                let syms: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
                let v = Word::from_syms(alpha.clone(), syms).unwrap();
                if edit_distance(&center, &v).unwrap() <= 1 {
                    count += 1;
                }
            }
        }
        let ball = edit_ball(&center, 1, None, 6).unwrap();
        assert_eq!(ball.len(), count);
        for v in &ball {
            assert!(edit_distance(&center, v).unwrap() <= 1);
        }
    }

    #[test]
    fn ball_filter_is_subset() {
        let center = w("0110");
        let all = edit_ball(&center, 2, None, 6).unwrap();
        let no_ones_start = |v: &Word| v.syms().first() != Some(&1);
        let filtered = edit_ball(&center, 2, Some(&no_ones_start), 6).unwrap();
        let all_set: HashSet<_> = all.iter().collect();
        assert!(filtered.iter().all(|v| all_set.contains(v)));
        assert!(filtered.len() < all.len());
    }

    #[test]
    fn ball_sizes_match_enumeration() {
        for s in ["", "0", "0110", "10101"] {
            let word = w(s);
            let sizes = edit_ball_sizes(&word, 2);
            for r in 0..=2u32 {
                let ball = edit_ball(&word, r, None, 6).unwrap();
                assert_eq!(sizes[r as usize], ball.len() as u64, "word {s} r {r}");
            }
        }
    }

    #[test]
    fn bound_formula() {
        assert_eq!(edit_ball_bound(5, 0, 2), BigUint::from(1u32));
        // (2*2+2)^1 * C(4,3) = 6 * 4 = 24
        assert_eq!(edit_ball_bound(3, 1, 2), BigUint::from(24u32));
    }

    #[test]
    fn bound_dominates_ball_small() {
        for s in ["", "01", "0110", "010101"] {
            let word = w(s);
            let sizes = edit_ball_sizes(&word, 3);
            for m in 0..=3u64 {
                let bound = edit_ball_bound(word.len() as u64, m, 2);
                assert!(
                    BigUint::from(sizes[m as usize]) <= bound,
                    "ball {} > bound {bound} for {s}, m={m}",
                    sizes[m as usize]
                );
            }
        }
    }

    #[test]
    fn log_biguint_accuracy() {
        let x = BigUint::from(3u32).pow(200);
        let expect = 200.0 * 3f64.ln();
        assert!((log_biguint(&x) - expect).abs() < 1e-9);
    }

    #[test]
    fn word_roundtrip_multichar() {
        let alpha = Arc::new(Alphabet::new(vec!["aa".into(), "b".into()]).unwrap());
        let word = Word::parse(&alpha, "aa,b,aa").unwrap();
        assert_eq!(word.to_string(), "aa,b,aa");
        assert_eq!(Word::parse(&alpha, &word.to_string()).unwrap(), word);
    }

    proptest! {
        #[test]
        fn metric_axioms(ua in proptest::collection::vec(0u8..2, 0..10),
                         va in proptest::collection::vec(0u8..2, 0..10),
                         xa in proptest::collection::vec(0u8..2, 0..10)) {
            let alpha = Alphabet::binary();
            let u = Word::from_syms(alpha.clone(), ua).unwrap();
            let v = Word::from_syms(alpha.clone(), va).unwrap();
            let x = Word::from_syms(alpha.clone(), xa).unwrap();
            let duv = edit_distance(&u, &v).unwrap();
            let dvu = edit_distance(&v, &u).unwrap();
            prop_assert_eq!(duv, dvu);
            prop_assert_eq!(duv == 0, u == v);
            let dux = edit_distance(&u, &x).unwrap();
            let dxv = edit_distance(&x, &v).unwrap();
            prop_assert!(duv <= dux + dxv);
            // length bounds
            let lo = (u.len() as i64 - v.len() as i64).unsigned_abs() as u32;
            let hi = u.len().max(v.len()) as u32;
            prop_assert!(lo <= duv && duv <= hi);
        }

        #[test]
        fn script_always_replays(ua in proptest::collection::vec(0u8..3, 0..9),
                                 va in proptest::collection::vec(0u8..3, 0..9)) {
            let alpha = Alphabet::digits(3);
            let u = Word::from_syms(alpha.clone(), ua).unwrap();
            let v = Word::from_syms(alpha.clone(), va).unwrap();
            let (d, script) = edit_distance_with_script(&u, &v).unwrap();
            prop_assert_eq!(script.len() as u32, d);
            prop_assert_eq!(script.apply(&u).unwrap(), v);
        }
    }
}

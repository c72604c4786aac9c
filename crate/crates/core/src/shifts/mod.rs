//! Shift-language engines: membership oracles and exact enumeration of the
//! length-n language 𝓛ₙ for the classical one-sided shift families.
//!
//! Every engine exposes a factorial, right-extensible language with
//! 𝓛₀ = {∅}.  The default enumerator is a depth-first search with prefix
//! pruning, which is sound precisely because the languages are factorial.

pub mod beta;
pub mod sgap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};
use std::sync::Arc;

pub use beta::{BetaShift, BetaSpec};
pub use sgap::{SGapShift, SSet};

/// A shift space seen through its language of finite words.
pub trait ShiftLanguage: Send + Sync {
    fn alphabet(&self) -> Arc<Alphabet>;

    /// Membership in 𝓛(X).
    fn contains(&self, w: &Word) -> Result<bool>;

    /// Construction tag and parameters, for reports.
    fn descriptor(&self) -> String;

    /// Exactly 𝓛ₙ, sorted lexicographically.
    fn enumerate(&self, n: usize, budget: &Budget) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        dfs_collect(self, &Word::empty(self.alphabet()), n, false, budget, &mut out)?;
        Ok(out)
    }

    /// All of 𝓛₀ ∪ ⋯ ∪ 𝓛ₙ, sorted by (length, lex).
    fn enumerate_upto(&self, n: usize, budget: &Budget) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        dfs_collect(self, &Word::empty(self.alphabet()), n, true, budget, &mut out)?;
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.syms().cmp(b.syms())));
        Ok(out)
    }

    /// `#𝓛₀, …, #𝓛ₙ` in one pruned sweep.
    fn counts_upto(&self, n: usize, budget: &Budget) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; n + 1];
        let mut total = 0u64;
        dfs_count(
            self,
            &Word::empty(self.alphabet()),
            n,
            budget,
            &mut counts,
            &mut total,
        )?;
        Ok(counts)
    }
}

pub(crate) fn dfs_collect(
    lang: &(impl ShiftLanguage + ?Sized),
    prefix: &Word,
    n: usize,
    keep_all: bool,
    budget: &Budget,
    out: &mut Vec<Word>,
) -> Result<()> {
    if keep_all || prefix.len() == n {
        budget.check_words(out.len() as u64 + 1, "language enumeration")?;
        out.push(prefix.clone());
        if prefix.len() == n {
            return Ok(());
        }
    }
    for a in 0..lang.alphabet().size() as u8 {
        let next = prefix.appended(a);
        if lang.contains(&next)? {
            dfs_collect(lang, &next, n, keep_all, budget, out)?;
        }
    }
    Ok(())
}

pub(crate) fn dfs_count(
    lang: &(impl ShiftLanguage + ?Sized),
    prefix: &Word,
    n: usize,
    budget: &Budget,
    counts: &mut [u64],
    total: &mut u64,
) -> Result<()> {
    *total += 1;
    budget.check_words(*total, "language count")?;
    counts[prefix.len()] += 1;
    if prefix.len() == n {
        return Ok(());
    }
    for a in 0..lang.alphabet().size() as u8 {
        let next = prefix.appended(a);
        if lang.contains(&next)? {
            dfs_count(lang, &next, n, budget, counts, total)?;
        }
    }
    Ok(())
}

/// Enumerate 𝓛ₙ with workers partitioned by first symbol.  Output is
/// identical to `enumerate` for every thread count.
pub fn enumerate_parallel(
    lang: &dyn ShiftLanguage,
    n: usize,
    budget: &Budget,
    threads: usize,
) -> Result<Vec<Word>> {
    if n == 0 {
        return Ok(vec![Word::empty(lang.alphabet())]);
    }
    if threads <= 1 {
        return lang.enumerate(n, budget);
    }
    let p = lang.alphabet().size() as u8;
    let mut results: Vec<Result<Vec<Word>>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for a in 0..p {
            handles.push(scope.spawn(move || -> Result<Vec<Word>> {
                let start = Word::empty(lang.alphabet()).appended(a);
                if !lang.contains(&start)? {
                    return Ok(Vec::new());
                }
                let mut out = Vec::new();
                dfs_collect(lang, &start, n, false, budget, &mut out)?;
                Ok(out)
            }));
        }
        for h in handles {
            results.push(h.join().expect("enumeration worker panicked"));
        }
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    budget.check_words(out.len() as u64, "language enumeration")?;
    Ok(out)
}

/// The full shift on `p` symbols.
pub struct FullShift {
    alphabet: Arc<Alphabet>,
}

impl FullShift {
    pub fn new(p: usize) -> Result<FullShift> {
        if p < 2 {
            return Err(Error::Parameter("full shift needs at least 2 symbols".into()));
        }
        Ok(FullShift {
            alphabet: Alphabet::digits(p),
        })
    }
}

impl ShiftLanguage for FullShift {
    fn alphabet(&self) -> Arc<Alphabet> {
        self.alphabet.clone()
    }

    fn contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(true)
    }

    fn descriptor(&self) -> String {
        format!("full({})", self.alphabet.size())
    }

    fn counts_upto(&self, n: usize, budget: &Budget) -> Result<Vec<u64>> {
        let p = self.alphabet.size() as u64;
        let mut counts = Vec::with_capacity(n + 1);
        let mut c = 1u64;
        for _ in 0..=n {
            budget.check_words(c, "language count")?;
            counts.push(c);
            c = c.saturating_mul(p);
        }
        Ok(counts)
    }
}

/// A shift of finite type given by a finite forbidden-word list.
pub struct SftShift {
    alphabet: Arc<Alphabet>,
    forbidden: Vec<Word>,
}

impl SftShift {
    pub fn new(alphabet: Arc<Alphabet>, forbidden: Vec<Word>) -> Result<SftShift> {
        for f in &forbidden {
            if *f.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if f.is_empty() {
                return Err(Error::Parameter("empty forbidden word".into()));
            }
        }
        Ok(SftShift { alphabet, forbidden })
    }

    /// The golden-mean SFT: binary words without the factor `11`.
    pub fn golden_mean() -> SftShift {
        let a = Alphabet::binary();
        let f = Word::parse(&a, "11").unwrap();
        SftShift::new(a, vec![f]).unwrap()
    }
}

impl ShiftLanguage for SftShift {
    fn alphabet(&self) -> Arc<Alphabet> {
        self.alphabet.clone()
    }

    fn contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let s = w.syms();
        for f in &self.forbidden {
            let k = f.len();
            if k <= s.len() && s.windows(k).any(|win| win == f.syms()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn descriptor(&self) -> String {
        let words: Vec<String> = self.forbidden.iter().map(|f| f.to_string()).collect();
        format!("sft(forbidden=[{}])", words.join(", "))
    }
}

/// A coded system: the language of all factors of finite concatenations of
/// the generators.
pub struct CodedShift {
    alphabet: Arc<Alphabet>,
    generators: Vec<Word>,
}

impl CodedShift {
    pub fn new(alphabet: Arc<Alphabet>, generators: Vec<Word>) -> Result<CodedShift> {
        if generators.is_empty() {
            return Err(Error::Parameter("coded system needs generators".into()));
        }
        for g in &generators {
            if *g.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if g.is_empty() {
                return Err(Error::Parameter("empty generator".into()));
            }
        }
        Ok(CodedShift { alphabet, generators })
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// `w` is a concatenation of generators (including the empty
    /// concatenation).  This is the natural core collection.
    pub fn is_generator_concat(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let s = w.syms();
        let n = s.len();
        let mut boundary = vec![false; n + 1];
        boundary[0] = true;
        for i in 0..n {
            if !boundary[i] {
                continue;
            }
            for g in &self.generators {
                let k = g.len();
                if i + k <= n && &s[i..i + k] == g.syms() {
                    boundary[i + k] = true;
                }
            }
        }
        Ok(boundary[n])
    }
}

impl ShiftLanguage for CodedShift {
    fn alphabet(&self) -> Arc<Alphabet> {
        self.alphabet.clone()
    }

    fn contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let s = w.syms();
        let n = s.len();
        if n == 0 {
            return Ok(true);
        }
        // Case 1: w sits inside a single generator.
        for g in &self.generators {
            let k = g.len();
            if n <= k && g.syms().windows(n).any(|win| win == s) {
                return Ok(true);
            }
        }
        // Case 2: w crosses at least one generator boundary.  boundary[i]
        // means s[..i] parses as (suffix of a generator) followed by whole
        // generators, ending at a boundary.
        let mut boundary = vec![false; n + 1];
        for g in &self.generators {
            for i in 0..=g.len().min(n) {
                if s[..i] == g.syms()[g.len() - i..] {
                    boundary[i] = true;
                }
            }
        }
        for i in 0..=n {
            if !boundary[i] {
                continue;
            }
            // Accept if the remainder is a prefix of some generator.
            for g in &self.generators {
                let k = g.len();
                if n - i <= k && s[i..] == g.syms()[..n - i] {
                    return Ok(true);
                }
                if i + k <= n && s[i..i + k] == *g.syms() {
                    boundary[i + k] = true;
                }
            }
        }
        Ok(false)
    }

    fn descriptor(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("coded(generators=[{}])", gens.join(", "))
    }
}

/// A sliding-block-code local rule of radius `r`, mapping windows of length
/// `2r + 1` over the source alphabet to target symbols.
pub struct BlockCode {
    radius: usize,
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    rule: Vec<u8>,
}

impl BlockCode {
    pub fn new(
        radius: usize,
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        rule: Vec<u8>,
    ) -> Result<BlockCode> {
        let window = 2 * radius + 1;
        let expect = source.size().checked_pow(window as u32).ok_or_else(|| {
            Error::Parameter("block-code window too large".into())
        })?;
        if rule.len() != expect {
            return Err(Error::Parameter(format!(
                "rule table has {} entries, expected {expect}",
                rule.len()
            )));
        }
        if rule.iter().any(|&t| (t as usize) >= target.size()) {
            return Err(Error::Parameter("rule output outside target alphabet".into()));
        }
        Ok(BlockCode {
            radius,
            source,
            target,
            rule,
        })
    }

    /// The identity code of radius 0.
    pub fn identity(alphabet: Arc<Alphabet>) -> BlockCode {
        let rule = (0..alphabet.size() as u8).collect();
        BlockCode::new(0, alphabet.clone(), alphabet, rule).unwrap()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn target_alphabet(&self) -> Arc<Alphabet> {
        self.target.clone()
    }

    fn window_index(&self, window: &[u8]) -> usize {
        let p = self.source.size();
        window.iter().fold(0usize, |acc, &s| acc * p + s as usize)
    }

    pub fn apply_symbol(&self, window: &[u8]) -> u8 {
        self.rule[self.window_index(window)]
    }

    /// The induced word map: length `n + 2r` in, length `n` out.  Words
    /// shorter than the window map to the empty word.
    pub fn apply_word(&self, w: &Word) -> Result<Word> {
        if *w.alphabet() != self.source {
            return Err(Error::AlphabetMismatch);
        }
        let window = 2 * self.radius + 1;
        let syms: Vec<u8> = if w.len() < window {
            Vec::new()
        } else {
            w.syms().windows(window).map(|win| self.apply_symbol(win)).collect()
        };
        Word::from_syms(self.target.clone(), syms)
    }
}

/// The factor shift obtained by pushing a source language through a block
/// code.  Its 𝓛ₙ is the image of the source 𝓛_{n+2r}.
pub struct FactorShift {
    source: Arc<dyn ShiftLanguage>,
    code: BlockCode,
}

impl FactorShift {
    pub fn new(source: Arc<dyn ShiftLanguage>, code: BlockCode) -> Result<FactorShift> {
        if source.alphabet() != code.source {
            return Err(Error::AlphabetMismatch);
        }
        Ok(FactorShift { source, code })
    }

    /// Ψ(𝓛_{n+2r}) computed by exhaustive image.
    pub fn factor_language(&self, n: usize, budget: &Budget) -> Result<Vec<Word>> {
        if n == 0 {
            return Ok(vec![Word::empty(self.code.target.clone())]);
        }
        let pre = self.source.enumerate(n + 2 * self.code.radius, budget)?;
        let mut out: Vec<Word> = pre
            .iter()
            .map(|u| self.code.apply_word(u))
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Depth-first search for a preimage of `w` under Ψ, pruning as soon as
    /// a determined image symbol disagrees.
    fn has_preimage(&self, w: &Word, partial: &Word, nodes: &mut u64, budget: &Budget) -> Result<bool> {
        *nodes += 1;
        budget.check_tuples(*nodes, "factor membership search")?;
        let window = 2 * self.code.radius + 1;
        if partial.len() >= window {
            let idx = partial.len() - window;
            let img = self.code.apply_symbol(&partial.syms()[idx..]);
            if img != w.syms()[idx] {
                return Ok(false);
            }
        }
        if partial.len() == w.len() + 2 * self.code.radius {
            return Ok(true);
        }
        for a in 0..self.code.source.size() as u8 {
            let next = partial.appended(a);
            if self.source.contains(&next)? && self.has_preimage(w, &next, nodes, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl ShiftLanguage for FactorShift {
    fn alphabet(&self) -> Arc<Alphabet> {
        self.code.target.clone()
    }

    fn contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.code.target {
            return Err(Error::AlphabetMismatch);
        }
        if w.is_empty() {
            return Ok(true);
        }
        let mut nodes = 0u64;
        self.has_preimage(
            w,
            &Word::empty(self.source.alphabet()),
            &mut nodes,
            &Budget::default(),
        )
    }

    fn descriptor(&self) -> String {
        format!(
            "factor(source={}, radius={})",
            self.source.descriptor(),
            self.code.radius
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    fn w2(s: &str) -> Word {
        Word::parse(&Alphabet::binary(), s).unwrap()
    }

    #[test]
    fn full_shift_counts() {
        let full = FullShift::new(2).unwrap();
        assert_eq!(full.enumerate(5, &budget()).unwrap().len(), 32);
        assert_eq!(full.counts_upto(6, &budget()).unwrap(), vec![1, 2, 4, 8, 16, 32, 64]);
    }

    #[test]
    fn sft_fibonacci_counts() {
        let sft = SftShift::golden_mean();
        // No-11 words: 1, 2, 3, 5, 8, 13, ...
        assert_eq!(sft.counts_upto(6, &budget()).unwrap(), vec![1, 2, 3, 5, 8, 13, 21]);
        assert!(!sft.contains(&w2("0110")).unwrap());
        assert!(sft.contains(&w2("01010")).unwrap());
    }

    #[test]
    fn enumeration_sorted_and_consistent() {
        let sft = SftShift::golden_mean();
        let words = sft.enumerate(5, &budget()).unwrap();
        for pair in words.windows(2) {
            assert!(pair[0] < pair[1], "not sorted / duplicate");
        }
        for u in &words {
            assert!(sft.contains(u).unwrap());
        }
    }

    #[test]
    fn factorial_and_extensible() {
        let engines: Vec<Box<dyn ShiftLanguage>> = vec![
            Box::new(SftShift::golden_mean()),
            Box::new(
                CodedShift::new(
                    Alphabet::binary(),
                    vec![w2("10"), w2("1100")],
                )
                .unwrap(),
            ),
        ];
        for lang in &engines {
            let words = lang.enumerate_upto(7, &budget()).unwrap();
            for u in &words {
                // every subword is a member
                for i in 0..=u.len() {
                    for j in i..=u.len() {
                        assert!(lang.contains(&u.subword(i, j)).unwrap(), "{} subword", u);
                    }
                }
                // extends on the right
                if u.len() < 7 {
                    let ext = (0..lang.alphabet().size() as u8)
                        .any(|a| lang.contains(&u.appended(a)).unwrap());
                    assert!(ext, "{} does not extend", u);
                }
            }
        }
    }

    #[test]
    fn counts_submultiplicative() {
        let sft = SftShift::golden_mean();
        let c = sft.counts_upto(10, &budget()).unwrap();
        for m in 0..=10usize {
            for n in 0..=(10 - m) {
                assert!(c[m + n] <= c[m] * c[n]);
            }
        }
    }

    #[test]
    fn coded_membership_cases() {
        // generators {10, 1}: concatenations are words of 1s and 10 blocks;
        // the language is all binary words without "00"... no: 10·10 = 1010,
        // internal zeros isolated, so factors never contain "00".
        let coded = CodedShift::new(Alphabet::binary(), vec![w2("10"), w2("1")]).unwrap();
        assert!(coded.contains(&w2("0101")).unwrap());
        assert!(coded.contains(&w2("0")).unwrap());
        assert!(!coded.contains(&w2("00")).unwrap());
        // interior factor of a single long generator
        let long = CodedShift::new(Alphabet::binary(), vec![w2("100010")]).unwrap();
        assert!(long.contains(&w2("000")).unwrap());
        assert!(long.contains(&w2("010100")).unwrap(), "wraps one boundary");
        assert!(!long.contains(&w2("0000")).unwrap());
    }

    #[test]
    fn coded_oracle_brute_force() {
        // Oracle: factors of all concatenations of <= 4 generators.
        let gens = [w2("10"), w2("1100")];
        let coded = CodedShift::new(Alphabet::binary(), gens.to_vec()).unwrap();
        let mut factors: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
        let mut concats: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..4 {
            let mut next = concats.clone();
            for c in &concats {
                for g in &gens {
                    let mut e = c.clone();
                    e.extend_from_slice(g.syms());
                    next.push(e);
                }
            }
            concats = next;
        }
        for c in &concats {
            for i in 0..=c.len() {
                for j in i..=c.len().min(i + 8) {
                    factors.insert(c[i..j].to_vec());
                }
            }
        }
        // Compare on all words of length <= 6 (4 concatenations of the
        // longest generator cover every factor of that length).
        for len in 0..=6usize {
            for code in 0..(1usize << len) {
                let syms: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
                let word = Word::from_syms(Alphabet::binary(), syms.clone()).unwrap();
                assert_eq!(
                    coded.contains(&word).unwrap(),
                    factors.contains(&syms),
                    "word {word}"
                );
            }
        }
    }

    #[test]
    fn generator_concat_membership() {
        let coded = CodedShift::new(Alphabet::binary(), vec![w2("10"), w2("1100")]).unwrap();
        assert!(coded.is_generator_concat(&w2("")).unwrap());
        assert!(coded.is_generator_concat(&w2("101100")).unwrap());
        assert!(!coded.is_generator_concat(&w2("1")).unwrap());
    }

    #[test]
    fn identity_factor_equals_source() {
        let source = Arc::new(SftShift::golden_mean());
        let code = BlockCode::identity(source.alphabet());
        let factor = FactorShift::new(source.clone(), code).unwrap();
        for n in 0..=6 {
            assert_eq!(
                factor.factor_language(n, &budget()).unwrap(),
                source.enumerate(n, &budget()).unwrap()
            );
        }
    }

    #[test]
    fn relabel_code_preserves_counts() {
        let source = Arc::new(SftShift::golden_mean());
        let target = Arc::new(Alphabet::new(vec!["a".into(), "b".into()]).unwrap());
        let code = BlockCode::new(0, source.alphabet(), target, vec![0, 1]).unwrap();
        let factor = FactorShift::new(source.clone(), code).unwrap();
        for n in 0..=7 {
            assert_eq!(
                factor.factor_language(n, &budget()).unwrap().len(),
                source.enumerate(n, &budget()).unwrap().len()
            );
        }
    }

    #[test]
    fn xor_factor_of_full_shift_is_full() {
        let source = Arc::new(FullShift::new(2).unwrap());
        // radius 1, window abc -> a xor c
        let mut rule = vec![0u8; 8];
        for a in 0..2u8 {
            for b in 0..2u8 {
                for c in 0..2u8 {
                    rule[(a as usize) * 4 + (b as usize) * 2 + c as usize] = a ^ c;
                }
            }
        }
        let code = BlockCode::new(1, source.alphabet(), Alphabet::binary(), rule).unwrap();
        let factor = FactorShift::new(source, code).unwrap();
        for n in 0..=8 {
            assert_eq!(factor.factor_language(n, &budget()).unwrap().len(), 1usize << n);
        }
        assert!(factor.contains(&w2("11011")).unwrap());
    }

    #[test]
    fn factor_membership_matches_image() {
        let source = Arc::new(SftShift::golden_mean());
        // radius 1 majority-ish rule: output the middle symbol or-ed with
        // neighbors' and — an arbitrary non-injective rule.
        let mut rule = vec![0u8; 8];
        for a in 0..2u8 {
            for b in 0..2u8 {
                for c in 0..2u8 {
                    rule[(a as usize) * 4 + (b as usize) * 2 + c as usize] = b | (a & c);
                }
            }
        }
        let code = BlockCode::new(1, source.alphabet(), Alphabet::binary(), rule).unwrap();
        let factor = FactorShift::new(source, code).unwrap();
        for n in 1..=7usize {
            let image: std::collections::HashSet<Word> =
                factor.factor_language(n, &budget()).unwrap().into_iter().collect();
            for codeword in 0..(1usize << n) {
                let syms: Vec<u8> = (0..n).map(|i| ((codeword >> i) & 1) as u8).collect();
                let word = Word::from_syms(Alphabet::binary(), syms).unwrap();
                assert_eq!(factor.contains(&word).unwrap(), image.contains(&word));
            }
        }
    }

    #[test]
    fn parallel_enumeration_deterministic() {
        let sft = SftShift::golden_mean();
        let seq = enumerate_parallel(&sft, 9, &budget(), 1).unwrap();
        let par = enumerate_parallel(&sft, 9, &budget(), 8).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq, sft.enumerate(9, &budget()).unwrap());
    }

    #[test]
    fn budget_enforced() {
        let full = FullShift::new(2).unwrap();
        let tiny = Budget {
            max_words: 10,
            ..Budget::default()
        };
        assert!(matches!(
            full.enumerate(6, &tiny),
            Err(Error::ResourceLimit(_))
        ));
    }
}

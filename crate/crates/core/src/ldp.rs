//! Empirical measures at cylinder depth, the weak* pseudo-metric over the
//! cylinder-indicator family, generic-word sets, exact and sampled decay
//! rates against the rate function, the upper-bound condition, and the
//! horseshoe approximation levels.

use std::collections::{HashMap, HashSet};
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use serde::Serialize;

use crate::budget::Budget;
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::shifts::ShiftLanguage;
use crate::thermo::{birkhoff_sum_range, MeasureModel, Potential, PressureEstimate};
use crate::words::{binomial, log_biguint, Alphabet, Word};

/// Block frequencies of a word's depth-k windows.
#[derive(Debug, Clone)]
pub struct EmpiricalStats {
    pub depth: usize,
    /// length of the underlying word
    pub n: usize,
    counts: HashMap<Vec<u8>, u64>,
    /// number of complete windows, n − depth + 1
    pub windows: u64,
}

impl EmpiricalStats {
    pub fn count(&self, block: &[u8]) -> u64 {
        self.counts.get(block).copied().unwrap_or(0)
    }

    /// Exact frequency as (count, windows).
    pub fn freq_exact(&self, block: &[u8]) -> (u64, u64) {
        (self.count(block), self.windows)
    }

    pub fn freq(&self, block: &[u8]) -> f64 {
        self.count(block) as f64 / self.windows as f64
    }
}

/// Window counts of `w` at depth `k`.
pub fn empirical_stats(w: &Word, k: usize) -> Result<EmpiricalStats> {
    if k == 0 {
        return Err(Error::Parameter("depth must be ≥ 1".into()));
    }
    if w.len() < k {
        return Err(Error::Parameter(format!(
            "word of length {} is shorter than depth {k}",
            w.len()
        )));
    }
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    for win in w.syms().windows(k) {
        *counts.entry(win.to_vec()).or_insert(0) += 1;
    }
    Ok(EmpiricalStats {
        depth: k,
        n: w.len(),
        counts,
        windows: (w.len() - k + 1) as u64,
    })
}

/// Exact bracket on ∫φ d𝓔_{|w|}(x) over x ∈ [w]: the empirical integral is
/// the Birkhoff average, so the bracket is the cylinder Birkhoff range
/// divided by |w|.
pub fn with_cylinder_bounds(
    lang: &dyn ShiftLanguage,
    w: &Word,
    phi: &Potential,
) -> Result<(f64, f64)> {
    if w.is_empty() {
        return Err(Error::Parameter("empty word has no empirical measure".into()));
    }
    let (inf, sup) = birkhoff_sum_range(lang, w, phi)?;
    let n = w.len() as f64;
    Ok((inf / n, sup / n))
}

/// Anything that can integrate cylinder indicators: a measure, or a word
/// viewed as its own empirical measure.
pub trait CylinderMass {
    fn alphabet(&self) -> Arc<Alphabet>;
    /// mass of the cylinder [u]
    fn mass(&self, u: &Word) -> Result<f64>;
}

impl CylinderMass for MeasureModel {
    fn alphabet(&self) -> Arc<Alphabet> {
        MeasureModel::alphabet(self)
    }

    fn mass(&self, u: &Word) -> Result<f64> {
        self.cylinder(u)
    }
}

/// A word as a measure: mass of [u] is the frequency of u among the
/// complete windows of the word.
pub struct WordEmpirical {
    pub word: Word,
}

impl CylinderMass for WordEmpirical {
    fn alphabet(&self) -> Arc<Alphabet> {
        self.word.alphabet().clone()
    }

    fn mass(&self, u: &Word) -> Result<f64> {
        if u.len() > self.word.len() {
            return Err(Error::Parameter(format!(
                "cylinder depth {} exceeds word length {}",
                u.len(),
                self.word.len()
            )));
        }
        if u.is_empty() {
            return Ok(1.0);
        }
        let stats = empirical_stats(&self.word, u.len())?;
        Ok(stats.freq(u.syms()))
    }
}

/// Weak* distance truncated at cylinder depth `k_max`: the test family is
/// the cylinder indicators in (depth, lexicographic) order, the i-th term
/// weighted 2^{−(i+1)}.  Returns (truncated value, certified tail bound).
pub fn weakstar_distance(
    a: &dyn CylinderMass,
    b: &dyn CylinderMass,
    k_max: usize,
) -> Result<(f64, f64)> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if k_max == 0 {
        return Err(Error::Parameter("k_max must be ≥ 1".into()));
    }
    let alphabet = a.alphabet();
    let p = alphabet.size();
    let mut value = 0.0f64;
    let mut index = 0u32;
    for depth in 1..=k_max {
        let mut idx = vec![0u8; depth];
        loop {
            let u = Word::from_syms(alphabet.clone(), idx.clone()).unwrap();
            let term = (a.mass(&u)? - b.mass(&u)?).abs();
            value += term / 2f64.powi(index as i32 + 1);
            index += 1;
            let mut pos = depth;
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                if (idx[pos] as usize) + 1 < p {
                    idx[pos] += 1;
                    for slot in idx.iter_mut().skip(pos + 1) {
                        *slot = 0;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    // every omitted term is at most 2^{−(i+1)}, so the tail is ≤ 2^{−N}
    let tail = 2f64.powi(-(index as i32));
    Ok((value, tail))
}

/// Certified upper bound on sup_{x ∈ [w]} D(𝓔_{|w|}(x), ν), truncated at
/// depth k_max: per-cylinder frequency brackets (boundary windows unknown)
/// plus the series tail.
fn certified_sup_distance(
    w: &Word,
    nu: &MeasureModel,
    k_max: usize,
) -> Result<f64> {
    let alphabet = w.alphabet().clone();
    let p = alphabet.size();
    let n = w.len();
    if n == 0 {
        return Err(Error::Parameter("empty word".into()));
    }
    let mut value = 0.0f64;
    let mut index = 0u32;
    for depth in 1..=k_max {
        // occurrences fully inside w; up to depth − 1 boundary windows may
        // also match
        let stats = if n >= depth {
            Some(empirical_stats(w, depth)?)
        } else {
            None
        };
        let slack = (depth - 1).min(n) as f64 / n as f64;
        let mut idx = vec![0u8; depth];
        loop {
            let u = Word::from_syms(alphabet.clone(), idx.clone()).unwrap();
            let inside = stats.as_ref().map(|s| s.count(&idx)).unwrap_or(0) as f64 / n as f64;
            let lo = inside;
            let hi = (inside + slack).min(1.0);
            let target = nu.cylinder(&u)?;
            let worst = (target - lo).abs().max((hi - target).abs());
            value += worst / 2f64.powi(index as i32 + 1);
            index += 1;
            let mut pos = depth;
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                if (idx[pos] as usize) + 1 < p {
                    idx[pos] += 1;
                    for slot in idx.iter_mut().skip(pos + 1) {
                        *slot = 0;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    Ok(value + 2f64.powi(-(index as i32)))
}

/// The generic words 𝓛ₙ^{ν,ζ}: length-n words whose certified cylinder-sup
/// weak* distance to ν is below ζ.  A certified subset of the true set.
pub fn generic_words(
    lang: &dyn ShiftLanguage,
    nu: &MeasureModel,
    zeta: f64,
    n: usize,
    k_max: usize,
    budget: &Budget,
) -> Result<Vec<Word>> {
    if MeasureModel::alphabet(nu) != lang.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut out = Vec::new();
    for w in lang.enumerate(n, budget)? {
        if certified_sup_distance(&w, nu, k_max)? < zeta {
            out.push(w);
        }
    }
    Ok(out)
}

/// A constraint on the empirical integral of a locally constant function.
#[derive(Debug, Clone)]
pub enum Relation {
    AtLeast(f64),
    AtMost(f64),
    /// open interval (lo, hi)
    Open(f64, f64),
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub phi: Potential,
    pub relation: Relation,
}

impl Constraint {
    /// (entirely satisfied, possibly satisfied) for a value bracket.
    fn classify(&self, inf: f64, sup: f64) -> (bool, bool) {
        match self.relation {
            Relation::AtLeast(t) => (inf >= t, sup >= t),
            Relation::AtMost(t) => (sup <= t, inf <= t),
            Relation::Open(lo, hi) => (inf > lo && sup < hi, sup > lo && inf < hi),
        }
    }

    fn satisfied(&self, v: f64) -> bool {
        match self.relation {
            Relation::AtLeast(t) => v >= t,
            Relation::AtMost(t) => v <= t,
            Relation::Open(lo, hi) => v > lo && v < hi,
        }
    }
}

/// A finite-constraint neighborhood in the weak* topology.
#[derive(Debug, Clone)]
pub struct NeighborhoodSpec {
    pub constraints: Vec<Constraint>,
}

impl NeighborhoodSpec {
    pub fn new(constraints: Vec<Constraint>) -> NeighborhoodSpec {
        NeighborhoodSpec { constraints }
    }

    /// The set of all measures.
    pub fn everything() -> NeighborhoodSpec {
        NeighborhoodSpec {
            constraints: Vec::new(),
        }
    }

    pub fn max_window(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| c.phi.window())
            .max()
            .unwrap_or(1)
    }

    /// (cylinder entirely inside U, cylinder intersects U) — the first is
    /// exact, the second may overcount joint constraints and is therefore a
    /// valid upper bracket.
    pub fn classify_cylinder(
        &self,
        lang: &dyn ShiftLanguage,
        w: &Word,
    ) -> Result<(bool, bool)> {
        let mut entire = true;
        let mut intersects = true;
        for c in &self.constraints {
            let (inf, sup) = with_cylinder_bounds(lang, w, &c.phi)?;
            let (e, i) = c.classify(inf, sup);
            entire &= e;
            intersects &= i;
            if !intersects {
                break;
            }
        }
        Ok((entire, intersects))
    }

    /// Exact pointwise test given the empirical integrals of each
    /// constraint's function.
    pub fn point_satisfies(&self, values: &[f64]) -> bool {
        self.constraints
            .iter()
            .zip(values)
            .all(|(c, &v)| c.satisfied(v))
    }

    /// U ⊆ V syntactically: every constraint of V is implied by one of U.
    /// Used only by tests for nesting checks; conservative.
    pub fn is_empty_spec(&self) -> bool {
        self.constraints.is_empty()
    }
}

/// Exact bracket on m(𝓔ₙ⁻¹(U)) from cylinder-level classification.
#[derive(Debug, Clone, Serialize)]
pub struct DecayBracket {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub log_lower: f64,
    pub log_upper: f64,
}

pub fn ldp_decay_exact(
    m: &MeasureModel,
    lang: &dyn ShiftLanguage,
    u: &NeighborhoodSpec,
    n: usize,
    budget: &Budget,
) -> Result<DecayBracket> {
    let words = lang.enumerate(n, budget)?;
    ldp_decay_exact_over(m, lang, u, n, &words)
}

/// Same bracket over a pre-enumerated 𝓛ₙ (callers that enumerate in
/// parallel reuse the word list).
pub fn ldp_decay_exact_over(
    m: &MeasureModel,
    lang: &dyn ShiftLanguage,
    u: &NeighborhoodSpec,
    n: usize,
    words: &[Word],
) -> Result<DecayBracket> {
    if MeasureModel::alphabet(m) != lang.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut lower = 0.0f64;
    let mut upper = 0.0f64;
    for w in words {
        let (entire, intersects) = u.classify_cylinder(lang, w)?;
        if !intersects {
            continue;
        }
        let mass = m.cylinder(w)?;
        upper += mass;
        if entire {
            lower += mass;
        }
    }
    Ok(DecayBracket {
        n,
        lower,
        upper,
        log_lower: lower.ln(),
        log_upper: upper.ln(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampledDecay {
    pub n: usize,
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    /// 95% Wilson interval
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub seed: u64,
}

/// Monte Carlo companion to the exact bracket: i.i.d. draws from m,
/// deterministic given the seed.
pub fn ldp_decay_sampled(
    m: &MeasureModel,
    u: &NeighborhoodSpec,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<SampledDecay> {
    if n == 0 || samples == 0 {
        return Err(Error::Parameter("need n ≥ 1 and samples ≥ 1".into()));
    }
    let k = u.max_window();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut values = vec![0.0f64; u.constraints.len()];
    for _ in 0..samples {
        let x = m.sample_word(n + k - 1, &mut rng)?;
        for (slot, c) in values.iter_mut().zip(&u.constraints) {
            let kc = c.phi.window();
            let mut sum = 0.0;
            for j in 0..n {
                sum += c.phi.eval(&x.syms()[j..j + kc])?;
            }
            *slot = sum / n as f64;
        }
        if u.point_satisfies(&values) {
            hits += 1;
        }
    }
    let s = samples as f64;
    let p_hat = hits as f64 / s;
    let z = 1.959_963_984_540_054f64;
    let denom = 1.0 + z * z / s;
    let center = (p_hat + z * z / (2.0 * s)) / denom;
    let half = z * (p_hat * (1.0 - p_hat) / s + z * z / (4.0 * s * s)).sqrt() / denom;
    Ok(SampledDecay {
        n,
        samples,
        hits,
        estimate: p_hat,
        wilson_low: (center - half).max(0.0),
        wilson_high: (center + half).min(1.0),
        seed,
    })
}

/// Exact log-probability that a Bernoulli(q) binary word of length n has at
/// least k_min ones, with q = q_num/q_den; big-integer arithmetic
/// throughout, so valid at n in the thousands.
pub fn bernoulli_tail_log_prob(n: u64, k_min: u64, q_num: u64, q_den: u64) -> Result<f64> {
    if q_den == 0 || q_num > q_den {
        return Err(Error::Parameter("need 0 ≤ q_num/q_den ≤ 1".into()));
    }
    let a = BigUint::from(q_num);
    let b = BigUint::from(q_den - q_num);
    let mut num = BigUint::zero();
    for j in k_min..=n {
        num += binomial(n, j) * a.pow(j as u32) * b.pow((n - j) as u32);
    }
    if num.is_zero() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(log_biguint(&num) - n as f64 * (q_den as f64).ln())
}

/// q^φ(μ) = h(μ) + ∫φ dμ − P(φ) on invariant measures, −∞ elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RateValue {
    Finite(f64),
    NegInfinite,
}

pub fn rate_function(
    mu: &MeasureModel,
    phi: &Potential,
    p_value: f64,
) -> Result<RateValue> {
    if !mu.is_invariant() {
        return Ok(RateValue::NegInfinite);
    }
    match mu.entropy() {
        Some(h) => Ok(RateValue::Finite(h + mu.integrate(phi)? - p_value)),
        None => Err(Error::Unsupported(
            "no closed-form entropy for this measure".into(),
        )),
    }
}

/// Sweep the Bernoulli(1−q, q) family with q ≥ theta and report the maximal
/// rate — a lower bound for the sup over the constrained measures.
pub fn bernoulli_rate_sweep(
    phi: &Potential,
    p_value: f64,
    theta: f64,
    steps: usize,
) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&theta) || steps == 0 {
        return Err(Error::Parameter("need 0 ≤ theta ≤ 1 and steps ≥ 1".into()));
    }
    let alphabet = phi.alphabet().clone();
    if alphabet.size() != 2 {
        return Err(Error::Unsupported("sweep is over binary Bernoulli".into()));
    }
    let mut best = (theta, f64::NEG_INFINITY);
    for i in 0..=steps {
        let q = theta + (1.0 - theta) * i as f64 / steps as f64;
        let m = MeasureModel::bernoulli(alphabet.clone(), vec![1.0 - q, q])?;
        if let RateValue::Finite(r) = rate_function(&m, phi, p_value)? {
            if r > best.1 {
                best = (q, r);
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Serialize)]
pub struct UpperBoundRow {
    pub n: usize,
    pub max_quantity: f64,
    pub witness: String,
    pub allowance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct UpperBoundReport {
    pub rows: Vec<UpperBoundRow>,
    pub pass: bool,
}

/// Per-n maximum of (1/n)log m([w]) + (1/n)sup Sₙψ over [w] with
/// ψ = P(φ) − φ; for a weak Gibbs measure this is at most (log K′)/n.
pub fn upper_bound_condition(
    m: &MeasureModel,
    lang: &dyn ShiftLanguage,
    phi: &Potential,
    p_value: f64,
    k_prime: f64,
    n_range: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<UpperBoundReport> {
    let mut rows = Vec::new();
    let mut pass = true;
    for n in n_range {
        let mut max_quantity = f64::NEG_INFINITY;
        let mut witness = String::new();
        for w in lang.enumerate(n, budget)? {
            let log_m = m.log_cylinder(&w)?;
            if log_m == f64::NEG_INFINITY {
                continue;
            }
            // sup of Sₙψ = nP − inf Sₙφ
            let (inf_phi, _) = birkhoff_sum_range(lang, &w, phi)?;
            let q = (log_m + n as f64 * p_value - inf_phi) / n as f64;
            if q > max_quantity {
                max_quantity = q;
                witness = w.to_string();
            }
        }
        let allowance = k_prime.ln() / n as f64 + 1e-9;
        let row_pass = max_quantity <= allowance;
        pass &= row_pass;
        rows.push(UpperBoundRow {
            n,
            max_quantity,
            witness,
            allowance,
            pass: row_pass,
        });
    }
    Ok(UpperBoundReport { rows, pass })
}

/// One horseshoe approximation level: the subshift generated by free
/// concatenations of good words of length ≤ n (gap-free decompositions
/// only), with membership decided by boundary dynamic programming.
pub struct HorseshoeLevel {
    pub n: usize,
    pub tau: u32,
    alphabet: Arc<Alphabet>,
    goods: HashSet<Vec<u8>>,
    prefixes: HashSet<Vec<u8>>,
    suffixes: HashSet<Vec<u8>>,
    factors: HashSet<Vec<u8>>,
}

pub fn horseshoe_build(
    decomp: &Decomposition,
    n: usize,
    budget: &Budget,
) -> Result<HorseshoeLevel> {
    if decomp.tau != 0 {
        return Err(Error::Unsupported(
            "horseshoe levels are built for gap-free (τ = 0) decompositions".into(),
        ));
    }
    let lang = decomp.language.as_ref();
    let alphabet = lang.alphabet();
    let mut goods = HashSet::new();
    let mut prefixes = HashSet::new();
    let mut suffixes = HashSet::new();
    let mut factors = HashSet::new();
    prefixes.insert(Vec::new());
    suffixes.insert(Vec::new());
    factors.insert(Vec::new());
    for g in decomp.cores.words_upto(lang, n, budget)? {
        let syms = g.syms();
        if syms.is_empty() {
            continue;
        }
        goods.insert(syms.to_vec());
        for i in 0..syms.len() {
            prefixes.insert(syms[..=i].to_vec());
            suffixes.insert(syms[i..].to_vec());
            for j in i..syms.len() {
                factors.insert(syms[i..=j].to_vec());
            }
        }
    }
    Ok(HorseshoeLevel {
        n,
        tau: decomp.tau,
        alphabet,
        goods,
        prefixes,
        suffixes,
        factors,
    })
}

impl HorseshoeLevel {
    /// w ∈ 𝓛(Xₙ): w is a subword of some concatenation of good words of
    /// length ≤ n.
    pub fn level_contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let syms = w.syms();
        if syms.is_empty() || self.factors.contains(syms) {
            return Ok(true);
        }
        let len = syms.len();
        // reach[i]: position i can be a boundary between good blocks
        let mut reach = vec![false; len + 1];
        reach[0] = true;
        // or the word starts mid-block: a proper suffix of some good word
        for j in 1..=len.min(self.n) {
            if self.suffixes.contains(&syms[..j]) {
                reach[j] = true;
            }
        }
        for i in 0..len {
            if !reach[i] {
                continue;
            }
            for j in (i + 1)..=len.min(i + self.n) {
                if self.goods.contains(&syms[i..j]) {
                    reach[j] = true;
                }
            }
        }
        for i in 0..=len {
            if reach[i] && self.prefixes.contains(&syms[i..]) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The level as a language, for enumeration and entropy estimates.
    pub fn language(self: Arc<Self>) -> HorseshoeLanguage {
        HorseshoeLanguage { level: self }
    }
}

pub struct HorseshoeLanguage {
    level: Arc<HorseshoeLevel>,
}

impl ShiftLanguage for HorseshoeLanguage {
    fn alphabet(&self) -> Arc<Alphabet> {
        self.level.alphabet.clone()
    }

    fn contains(&self, w: &Word) -> Result<bool> {
        self.level.level_contains(w)
    }

    fn descriptor(&self) -> String {
        format!("horseshoe(n={})", self.level.n)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HorseshoeExtendReport {
    pub level: usize,
    pub bound: usize,
    pub holds: bool,
    pub max_left: usize,
    pub max_right: usize,
    pub counterexample: Option<String>,
}

/// Lemma-style extendability: every enumerated word of the level extends to
/// the good core with affixes of length ≤ n + τ on each side.
pub fn check_horseshoe_extendability(
    level: &Arc<HorseshoeLevel>,
    decomp: &Decomposition,
    len_max: usize,
    budget: &Budget,
) -> Result<HorseshoeExtendReport> {
    let lang = decomp.language.as_ref();
    let bound = level.n + level.tau as usize;
    let affixes = lang.enumerate_upto(bound, budget)?;
    let level_lang = HorseshoeLanguage {
        level: level.clone(),
    };
    let mut max_left = 0usize;
    let mut max_right = 0usize;
    for w in level_lang.enumerate_upto(len_max, budget)? {
        let mut found = None;
        'search: for total in 0..=(2 * bound) {
            for u in &affixes {
                if u.len() > total {
                    continue;
                }
                for v in &affixes {
                    if u.len() + v.len() != total {
                        continue;
                    }
                    let glued = u.concat(&w)?.concat(v)?;
                    if decomp.cores.contains(&glued)? {
                        found = Some((u.len(), v.len()));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some((a, b)) => {
                max_left = max_left.max(a);
                max_right = max_right.max(b);
            }
            None => {
                return Ok(HorseshoeExtendReport {
                    level: level.n,
                    bound,
                    holds: false,
                    max_left,
                    max_right,
                    counterexample: Some(w.to_string()),
                });
            }
        }
    }
    Ok(HorseshoeExtendReport {
        level: level.n,
        bound,
        holds: true,
        max_left,
        max_right,
        counterexample: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HorseshoeEntropyRow {
    pub level: usize,
    pub estimate: PressureEstimate,
}

/// Finite-m entropy estimates for a family of levels.
pub fn horseshoe_entropy_trend(
    decomp: &Decomposition,
    levels: &[usize],
    m_range: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<Vec<HorseshoeEntropyRow>> {
    let mut out = Vec::new();
    for &n in levels {
        let level = Arc::new(horseshoe_build(decomp, n, budget)?);
        let lang = level.language();
        let estimate = crate::thermo::entropy(&lang, m_range.clone(), budget)?;
        out.push(HorseshoeEntropyRow {
            level: n,
            estimate,
        });
    }
    Ok(out)
}

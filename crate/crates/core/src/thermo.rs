//! Thermodynamic quantities over word languages: locally constant
//! potentials, Birkhoff sums, partition sums and pressure, Bowen variation,
//! reference measures with cylinder oracles, and the Gibbs-ratio checker.

use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::decomp::Collection;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::shifts::{SGapShift, ShiftLanguage};
use crate::words::{Alphabet, Word};

/// A locally constant potential: a real value for every window of `window`
/// consecutive symbols.
#[derive(Debug, Clone)]
pub struct Potential {
    alphabet: Arc<Alphabet>,
    window: usize,
    table: HashMap<Vec<u8>, f64>,
    norm: f64,
    min: f64,
    max: f64,
}

impl Potential {
    /// Build a potential from an explicit window table.  Keys must all have
    /// length `window`; windows absent from the table are evaluation errors.
    pub fn new(
        alphabet: Arc<Alphabet>,
        window: usize,
        entries: impl IntoIterator<Item = (Word, f64)>,
    ) -> Result<Potential> {
        if window == 0 {
            return Err(Error::Parameter("potential window must be ≥ 1".into()));
        }
        let mut table = HashMap::new();
        for (w, v) in entries {
            if *w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if w.len() != window {
                return Err(Error::Parameter(format!(
                    "table key {w} has length {}, expected {window}",
                    w.len()
                )));
            }
            if !v.is_finite() {
                return Err(Error::Parameter(format!("non-finite value for {w}")));
            }
            table.insert(w.syms().to_vec(), v);
        }
        if table.is_empty() {
            return Err(Error::Parameter("potential table is empty".into()));
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in table.values() {
            min = min.min(v);
            max = max.max(v);
        }
        let norm = min.abs().max(max.abs());
        Ok(Potential {
            alphabet,
            window,
            table,
            norm,
            min,
            max,
        })
    }

    /// Total table over every symbol window, values supplied by a function.
    pub fn from_fn(
        alphabet: Arc<Alphabet>,
        window: usize,
        f: impl Fn(&[u8]) -> f64,
    ) -> Result<Potential> {
        if window == 0 {
            return Err(Error::Parameter("potential window must be ≥ 1".into()));
        }
        let p = alphabet.size();
        let mut entries = Vec::new();
        let mut idx = vec![0u8; window];
        loop {
            let word = Word::from_syms(alphabet.clone(), idx.clone()).unwrap();
            entries.push((word, f(&idx)));
            let mut pos = window;
            loop {
                if pos == 0 {
                    return Potential::new(alphabet, window, entries);
                }
                pos -= 1;
                if (idx[pos] as usize) + 1 < p {
                    idx[pos] += 1;
                    for slot in idx.iter_mut().skip(pos + 1) {
                        *slot = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Window-1 potential from per-symbol values.
    pub fn from_symbol_values(alphabet: Arc<Alphabet>, values: &[f64]) -> Result<Potential> {
        if values.len() != alphabet.size() {
            return Err(Error::Parameter(format!(
                "{} values for alphabet of size {}",
                values.len(),
                alphabet.size()
            )));
        }
        Potential::from_fn(alphabet, 1, |w| values[w[0] as usize])
    }

    pub fn zero(alphabet: Arc<Alphabet>) -> Potential {
        Potential::from_fn(alphabet, 1, |_| 0.0).unwrap()
    }

    pub fn constant(alphabet: Arc<Alphabet>, c: f64) -> Potential {
        Potential::from_fn(alphabet, 1, |_| c).unwrap()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Sup norm ‖φ‖ over the table.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// sup φ − inf φ over the table.
    pub fn range(&self) -> f64 {
        self.max - self.min
    }

    pub fn min_value(&self) -> f64 {
        self.min
    }

    pub fn max_value(&self) -> f64 {
        self.max
    }

    /// Worst-case variation of Sₙφ over a cylinder [w], |w| ≥ window:
    /// only the trailing window−1 terms see past the end of w.
    pub fn bowen_constant(&self) -> f64 {
        (self.window as f64 - 1.0) * 2.0 * self.norm
    }

    pub fn eval(&self, window: &[u8]) -> Result<f64> {
        self.table.get(window).copied().ok_or_else(|| {
            Error::Parameter(format!("potential table has no entry for {window:?}"))
        })
    }

    /// Value on the all-zero window (the fixed point 0^∞).
    pub fn value_at_zero(&self) -> Result<f64> {
        self.eval(&vec![0u8; self.window])
    }
}

/// Exact inf and sup of the Birkhoff sum Sₙφ over the cylinder [w], obtained
/// by enumerating every admissible extension of w by window−1 symbols.
pub fn birkhoff_sum_range(
    lang: &dyn ShiftLanguage,
    w: &Word,
    phi: &Potential,
) -> Result<(f64, f64)> {
    if *w.alphabet() != *phi.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if !lang.contains(w)? {
        return Err(Error::NotInLanguage(w.to_string()));
    }
    let n = w.len();
    if n == 0 {
        return Ok((0.0, 0.0));
    }
    let k = phi.window();
    if k == 1 {
        let mut sum = 0.0;
        for &a in w.syms() {
            sum += phi.eval(&[a])?;
        }
        return Ok((sum, sum));
    }
    // terms fully determined by w
    let mut base = 0.0;
    if n >= k {
        for j in 0..=(n - k) {
            base += phi.eval(&w.syms()[j..j + k])?;
        }
    }
    let mut inf = f64::INFINITY;
    let mut sup = f64::NEG_INFINITY;
    let p = phi.alphabet().size();
    let ext = k - 1;
    let mut idx = vec![0u8; ext];
    loop {
        let mut syms = w.syms().to_vec();
        syms.extend_from_slice(&idx);
        let extended = Word::from_syms(w.alphabet().clone(), syms.clone())?;
        if lang.contains(&extended)? {
            let mut tail = 0.0;
            let first_tail = n.saturating_sub(k - 1);
            for j in first_tail..n {
                tail += phi.eval(&syms[j..j + k])?;
            }
            let total = base + tail;
            inf = inf.min(total);
            sup = sup.max(total);
        }
        let mut pos = ext;
        loop {
            if pos == 0 {
                if inf > sup {
                    return Err(Error::NotInLanguage(format!(
                        "{w} admits no extension by {ext} symbols"
                    )));
                }
                return Ok((inf, sup));
            }
            pos -= 1;
            if (idx[pos] as usize) + 1 < p {
                idx[pos] += 1;
                for slot in idx.iter_mut().skip(pos + 1) {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// log Λ(𝓓, φ) = log Σ_{w ∈ 𝓓} e^{sup Sφ over [w]}, computed by max-shifted
/// compensated summation in the order the words are supplied.
pub fn log_partition_sum(
    lang: &dyn ShiftLanguage,
    words: &[Word],
    phi: &Potential,
) -> Result<f64> {
    if words.is_empty() {
        return Ok(f64::NEG_INFINITY);
    }
    let mut sups = Vec::with_capacity(words.len());
    let mut max = f64::NEG_INFINITY;
    for w in words {
        let (_, sup) = birkhoff_sum_range(lang, w, phi)?;
        max = max.max(sup);
        sups.push(sup);
    }
    // Kahan summation of the shifted exponentials
    let mut sum = 0.0;
    let mut comp = 0.0;
    for s in sups {
        let term = (s - max).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(max + sum.ln())
}

#[derive(Debug, Clone, Serialize)]
pub struct PressurePoint {
    pub n: usize,
    pub log_lambda: f64,
    /// (1/n) log Λₙ
    pub normalized: f64,
}

/// Finite-n pressure data with a difference-quotient estimate.
#[derive(Debug, Clone, Serialize)]
pub struct PressureEstimate {
    pub per_n: Vec<PressurePoint>,
    /// log Λₙ − log Λₙ₋₁ at the two largest n — converges faster than the
    /// normalized sequence, whose bias decays only like 1/n.
    pub ratio_estimate: f64,
    pub exact: Option<f64>,
    pub inconclusive: bool,
}

impl PressureEstimate {
    pub fn with_exact(mut self, value: f64) -> PressureEstimate {
        self.exact = Some(value);
        self
    }

    /// Do the estimate and the attached exact value agree within `tol`?
    pub fn agrees(&self, tol: f64) -> Option<bool> {
        self.exact
            .map(|v| (self.ratio_estimate - v).abs() <= tol)
    }
}

/// Pressure of a word set given by per-length enumeration of `lang`.
pub fn pressure(
    lang: &dyn ShiftLanguage,
    phi: &Potential,
    n_range: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<PressureEstimate> {
    pressure_of(lang, None, phi, n_range, budget)
}

/// Pressure restricted to the words of `within` that also lie in the
/// collection (e.g. Λₙ(𝓖, φ)); `None` uses the whole language.
pub fn pressure_of(
    lang: &dyn ShiftLanguage,
    collection: Option<&Collection>,
    phi: &Potential,
    n_range: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<PressureEstimate> {
    let mut per_n = Vec::new();
    for n in n_range {
        let mut words = lang.enumerate(n, budget)?;
        if let Some(coll) = collection {
            let mut kept = Vec::new();
            for w in words {
                if coll.contains(&w)? {
                    kept.push(w);
                }
            }
            words = kept;
        }
        let log_lambda = log_partition_sum(lang, &words, phi)?;
        per_n.push(PressurePoint {
            n,
            log_lambda,
            normalized: log_lambda / n as f64,
        });
    }
    if per_n.is_empty() {
        return Err(Error::Parameter("empty n range".into()));
    }
    let m = per_n.len();
    let ratio_estimate = if m >= 2 {
        per_n[m - 1].log_lambda - per_n[m - 2].log_lambda
    } else {
        per_n[m - 1].normalized
    };
    let inconclusive = if m >= 3 {
        let prev = per_n[m - 2].log_lambda - per_n[m - 3].log_lambda;
        !(ratio_estimate.is_finite() && (ratio_estimate - prev).abs() <= 0.05)
    } else {
        true
    };
    Ok(PressureEstimate {
        per_n,
        ratio_estimate,
        exact: None,
        inconclusive,
    })
}

/// Entropy = pressure of the zero potential.
pub fn entropy(
    lang: &dyn ShiftLanguage,
    n_range: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<PressureEstimate> {
    pressure(lang, &Potential::zero(lang.alphabet()), n_range, budget)
}

/// Exact spectral pressure of a DFA-presented language for potentials of
/// window ≤ 2: the log Perron root of the weighted transition structure on
/// useful states, via power iteration on A + I (always aperiodic).
pub fn dfa_spectral_log_growth(dfa: &Dfa, phi: Option<&Potential>) -> Result<f64> {
    if let Some(p) = phi {
        if p.window() > 2 {
            return Err(Error::Unsupported(
                "spectral pressure needs potential window ≤ 2".into(),
            ));
        }
    }
    let live = dfa.live_states();
    let p = dfa.alphabet.clone().size();
    let window2 = phi.map(|p| p.window() == 2).unwrap_or(false);
    // node set: live states (window ≤ 1) or (live state, incoming symbol)
    let nodes = if window2 {
        dfa.num_states() * p
    } else {
        dfa.num_states()
    };
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for s in 0..dfa.num_states() {
        if !live[s] {
            continue;
        }
        for a in 0..p {
            let Some(t) = dfa.step(s, a as u8) else {
                continue;
            };
            if !live[t] {
                continue;
            }
            if window2 {
                let phi = phi.unwrap();
                for b in 0..p {
                    // node (s, b): at state s having just read b
                    let weight = phi.eval(&[b as u8, a as u8])?.exp();
                    edges.push((s * p + b, t * p + a, weight));
                }
            } else {
                let weight = match phi {
                    Some(phi) => phi.eval(&[a as u8])?.exp(),
                    None => 1.0,
                };
                edges.push((s, t, weight));
            }
        }
    }
    if edges.is_empty() {
        return Ok(f64::NEG_INFINITY);
    }
    let mut v = vec![1.0f64; nodes];
    let mut lambda = 0.0f64;
    for _ in 0..200_000 {
        let mut next = v.clone(); // the +I part
        for &(from, to, weight) in &edges {
            next[to] += weight * v[from];
        }
        let total: f64 = next.iter().sum();
        let prev = lambda;
        lambda = total / v.iter().sum::<f64>();
        for x in &mut next {
            *x /= total;
        }
        v = next;
        if (lambda - prev).abs() <= 1e-14 * lambda.max(1.0) {
            break;
        }
    }
    if lambda <= 1.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok((lambda - 1.0).ln())
}

/// Root x* > 1 of Σ_{s ∈ S} x^{−(s+1)} = 1, by bisection with a certified
/// geometric tail bound; the S-gap shift has entropy log x*.
pub fn sgap_entropy_root(s: &crate::shifts::SSet, tol: f64) -> Result<f64> {
    s.validate()?;
    // F(x) = Σ_{s∈S} x^{-(s+1)} is strictly decreasing on (1, ∞) with
    // F(1+) ≥ 1 for any nonempty S ... bracket the root in (1, 2].
    let f = |x: f64| -> f64 {
        // truncate once terms plus the geometric tail drop below 1e-15
        let mut sum = 0.0;
        let mut smax = 0u32;
        loop {
            if s.contains(smax) {
                sum += x.powi(-((smax + 1) as i32));
            }
            let tail = x.powi(-((smax + 2) as i32)) / (1.0 - 1.0 / x);
            if tail < 1e-15 || smax > 100_000 {
                break;
            }
            smax += 1;
        }
        sum
    };
    let mut lo = 1.0 + 1e-9;
    let mut hi = 2.0;
    if f(lo) < 1.0 {
        return Err(Error::Parameter(
            "gap set too sparse for a root above 1".into(),
        ));
    }
    while f(hi) > 1.0 {
        hi *= 2.0;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).ln())
}

/// Max over n in range and w ∈ 𝓛ₙ of sup − inf of Sₙφ over [w].
pub fn bowen_variation(
    lang: &dyn ShiftLanguage,
    phi: &Potential,
    n_range: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in n_range {
        for w in lang.enumerate(n, budget)? {
            let (inf, sup) = birkhoff_sum_range(lang, &w, phi)?;
            worst = worst.max(sup - inf);
        }
    }
    Ok(worst)
}

/// A reference measure with an exact (or certified-approximate) cylinder
/// weight oracle.
pub enum MeasureModel {
    Bernoulli {
        alphabet: Arc<Alphabet>,
        weights: Vec<f64>,
    },
    Markov {
        alphabet: Arc<Alphabet>,
        rows: Vec<Vec<f64>>,
        stationary: Vec<f64>,
        /// whether the initial distribution is the stationary one, i.e. the
        /// induced measure is shift-invariant
        invariant: bool,
    },
    /// Perron eigendata of a DFA presentation; the standard computable
    /// surrogate for a measure of maximal entropy.  Approximate.
    GraphPerron {
        dfa: Dfa,
        right: Vec<f64>,
        log_lambda: f64,
    },
}

impl MeasureModel {
    pub fn bernoulli(alphabet: Arc<Alphabet>, weights: Vec<f64>) -> Result<MeasureModel> {
        if weights.len() != alphabet.size() {
            return Err(Error::Parameter("one weight per symbol required".into()));
        }
        if weights.iter().any(|&q| !(0.0..=1.0).contains(&q)) {
            return Err(Error::Parameter("weights must lie in [0, 1]".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter(format!("weights sum to {total}, not 1")));
        }
        Ok(MeasureModel::Bernoulli { alphabet, weights })
    }

    pub fn markov(alphabet: Arc<Alphabet>, rows: Vec<Vec<f64>>) -> Result<MeasureModel> {
        let p = alphabet.size();
        if rows.len() != p || rows.iter().any(|r| r.len() != p) {
            return Err(Error::Parameter("transition matrix must be p × p".into()));
        }
        for row in &rows {
            if row.iter().any(|&q| !(0.0..=1.0).contains(&q)) {
                return Err(Error::Parameter("entries must lie in [0, 1]".into()));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::Parameter("rows must sum to 1".into()));
            }
        }
        // stationary vector by power iteration on πP = π
        let mut pi = vec![1.0 / p as f64; p];
        for _ in 0..100_000 {
            let mut next = vec![0.0; p];
            for i in 0..p {
                for j in 0..p {
                    next[j] += pi[i] * rows[i][j];
                }
            }
            let diff: f64 = next
                .iter()
                .zip(&pi)
                .map(|(a, b)| (a - b).abs())
                .sum();
            pi = next;
            if diff < 1e-16 {
                break;
            }
        }
        Ok(MeasureModel::Markov {
            alphabet,
            rows,
            stationary: pi,
            invariant: true,
        })
    }

    /// A Markov chain started from an arbitrary initial distribution; the
    /// result is shift-invariant only when `initial` is stationary.
    pub fn markov_with_initial(
        alphabet: Arc<Alphabet>,
        rows: Vec<Vec<f64>>,
        initial: Vec<f64>,
    ) -> Result<MeasureModel> {
        let p = alphabet.size();
        let stationary_model = MeasureModel::markov(alphabet.clone(), rows.clone())?;
        if initial.len() != p || initial.iter().any(|&q| !(0.0..=1.0).contains(&q)) {
            return Err(Error::Parameter("bad initial distribution".into()));
        }
        if (initial.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter("initial distribution must sum to 1".into()));
        }
        let MeasureModel::Markov { stationary, .. } = &stationary_model else {
            unreachable!()
        };
        let invariant = initial
            .iter()
            .zip(stationary)
            .all(|(a, b)| (a - b).abs() < 1e-9);
        Ok(MeasureModel::Markov {
            alphabet,
            rows,
            stationary: initial,
            invariant,
        })
    }

    pub fn is_invariant(&self) -> bool {
        match self {
            MeasureModel::Bernoulli { .. } => true,
            MeasureModel::Markov { invariant, .. } => *invariant,
            MeasureModel::GraphPerron { .. } => false,
        }
    }

    /// Build the Perron surrogate for the language of a DFA.
    pub fn graph_perron(dfa: Dfa) -> Result<MeasureModel> {
        let live = dfa.live_states();
        if !live[dfa.start] {
            return Err(Error::Parameter("automaton language is empty".into()));
        }
        let p = dfa.alphabet.clone().size();
        let n = dfa.num_states();
        let mut v = vec![0.0f64; n];
        for (i, &ok) in live.iter().enumerate() {
            if ok {
                v[i] = 1.0;
            }
        }
        let mut lambda = 0.0f64;
        for _ in 0..200_000 {
            let mut next = v.clone(); // A + I
            for s in 0..n {
                if !live[s] {
                    continue;
                }
                for a in 0..p {
                    if let Some(t) = dfa.step(s, a as u8) {
                        if live[t] {
                            next[s] += v[t];
                        }
                    }
                }
            }
            let total: f64 = next.iter().sum();
            let prev = lambda;
            lambda = total / v.iter().sum::<f64>();
            for x in &mut next {
                *x /= total;
            }
            v = next;
            if (lambda - prev).abs() <= 1e-15 * lambda.max(1.0) {
                break;
            }
        }
        if lambda <= 1.0 {
            return Err(Error::Parameter("automaton has no growth".into()));
        }
        Ok(MeasureModel::GraphPerron {
            dfa,
            right: v,
            log_lambda: (lambda - 1.0).ln(),
        })
    }

    pub fn alphabet(&self) -> Arc<Alphabet> {
        match self {
            MeasureModel::Bernoulli { alphabet, .. } => alphabet.clone(),
            MeasureModel::Markov { alphabet, .. } => alphabet.clone(),
            MeasureModel::GraphPerron { dfa, .. } => dfa.alphabet.clone(),
        }
    }

    /// Are cylinder weights exact (vs. certified-approximate)?
    pub fn is_exact(&self) -> bool {
        !matches!(self, MeasureModel::GraphPerron { .. })
    }

    /// ln m[w]; −∞ for null cylinders.
    pub fn log_cylinder(&self, w: &Word) -> Result<f64> {
        if *w.alphabet() != self.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        match self {
            MeasureModel::Bernoulli { weights, .. } => {
                let mut sum = 0.0;
                for &a in w.syms() {
                    let q = weights[a as usize];
                    if q == 0.0 {
                        return Ok(f64::NEG_INFINITY);
                    }
                    sum += q.ln();
                }
                Ok(sum)
            }
            MeasureModel::Markov {
                rows, stationary, ..
            } => {
                let syms = w.syms();
                if syms.is_empty() {
                    return Ok(0.0);
                }
                let mut sum = stationary[syms[0] as usize].ln();
                for pair in syms.windows(2) {
                    let q = rows[pair[0] as usize][pair[1] as usize];
                    if q == 0.0 {
                        return Ok(f64::NEG_INFINITY);
                    }
                    sum += q.ln();
                }
                Ok(sum)
            }
            MeasureModel::GraphPerron {
                dfa,
                right,
                log_lambda,
            } => match dfa.run(w.syms()) {
                None => Ok(f64::NEG_INFINITY),
                Some(state) => {
                    if right[state] == 0.0 || right[dfa.start] == 0.0 {
                        return Ok(f64::NEG_INFINITY);
                    }
                    Ok(right[state].ln() - right[dfa.start].ln()
                        - w.len() as f64 * log_lambda)
                }
            },
        }
    }

    pub fn cylinder(&self, w: &Word) -> Result<f64> {
        Ok(self.log_cylinder(w)?.exp())
    }

    /// Measure-theoretic entropy, when a closed form exists.
    pub fn entropy(&self) -> Option<f64> {
        match self {
            MeasureModel::Bernoulli { weights, .. } => Some(
                weights
                    .iter()
                    .filter(|&&q| q > 0.0)
                    .map(|&q| -q * q.ln())
                    .sum(),
            ),
            MeasureModel::Markov {
                rows, stationary, ..
            } => {
                let mut h = 0.0;
                for (i, row) in rows.iter().enumerate() {
                    for &q in row {
                        if q > 0.0 {
                            h -= stationary[i] * q * q.ln();
                        }
                    }
                }
                Some(h)
            }
            MeasureModel::GraphPerron { .. } => None,
        }
    }

    /// ∫φ dμ via the depth-window cylinder marginals (exact for
    /// Bernoulli/Markov).
    pub fn integrate(&self, phi: &Potential) -> Result<f64> {
        if *phi.alphabet() != self.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let p = self.alphabet().size();
        let k = phi.window();
        let mut total = 0.0;
        let mut idx = vec![0u8; k];
        loop {
            let w = Word::from_syms(self.alphabet(), idx.clone()).unwrap();
            let mass = self.cylinder(&w)?;
            if mass > 0.0 {
                total += mass * phi.eval(&idx)?;
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok(total);
                }
                pos -= 1;
                if (idx[pos] as usize) + 1 < p {
                    idx[pos] += 1;
                    for slot in idx.iter_mut().skip(pos + 1) {
                        *slot = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Draw a length-n word; Bernoulli and Markov only.  Uniform deviates
    /// are built from raw 64-bit draws so results depend only on the RNG
    /// stream, not on floating-point distribution internals.
    pub fn sample_word(&self, n: usize, rng: &mut dyn rand::RngCore) -> Result<Word> {
        let unit = |rng: &mut dyn rand::RngCore| -> f64 {
            (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
        };
        let pick = |dist: &[f64], u: f64| -> u8 {
            let mut acc = 0.0;
            for (i, &q) in dist.iter().enumerate() {
                acc += q;
                if u < acc {
                    return i as u8;
                }
            }
            (dist.len() - 1) as u8
        };
        match self {
            MeasureModel::Bernoulli { alphabet, weights } => {
                let syms: Vec<u8> = (0..n).map(|_| pick(weights, unit(rng))).collect();
                Word::from_syms(alphabet.clone(), syms)
            }
            MeasureModel::Markov {
                alphabet,
                rows,
                stationary,
                ..
            } => {
                let mut syms = Vec::with_capacity(n);
                if n > 0 {
                    let mut cur = pick(stationary, unit(rng));
                    syms.push(cur);
                    for _ in 1..n {
                        cur = pick(&rows[cur as usize], unit(rng));
                        syms.push(cur);
                    }
                }
                Word::from_syms(alphabet.clone(), syms)
            }
            MeasureModel::GraphPerron { .. } => Err(Error::Unsupported(
                "forward sampling needs a Bernoulli or Markov model".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GibbsRow {
    pub n: usize,
    /// min over 𝓖ₙ of m[w] e^{nP − sup Sₙφ}; None when 𝓖ₙ is empty
    pub lower: Option<f64>,
    pub lower_witness: Option<String>,
    /// max over 𝓛ₙ of m[w] e^{nP − inf Sₙφ}
    pub upper: f64,
    pub upper_witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GibbsReport {
    pub pressure_used: f64,
    pub rows: Vec<GibbsRow>,
    /// K: min of the lower ratios across the range
    pub k_lower: f64,
    /// K′: max of the upper ratios across the range
    pub k_upper: f64,
    pub pass: bool,
}

/// Empirical weak-Gibbs constants: the upper bound must hold on every
/// cylinder of 𝓛, the lower bound only on 𝓖.
pub fn gibbs_check(
    m: &MeasureModel,
    phi: &Potential,
    p_value: f64,
    lang: &dyn ShiftLanguage,
    core: &Collection,
    n_range: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<GibbsReport> {
    if m.alphabet() != lang.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut rows = Vec::new();
    let mut k_lower = f64::INFINITY;
    let mut k_upper: f64 = 0.0;
    for n in n_range {
        let mut lower: Option<(f64, String)> = None;
        let mut upper: Option<(f64, String)> = None;
        for w in lang.enumerate(n, budget)? {
            let log_m = m.log_cylinder(&w)?;
            let (inf, sup) = birkhoff_sum_range(lang, &w, phi)?;
            let np = n as f64 * p_value;
            let up = (log_m + np - inf).exp();
            if upper.as_ref().map(|(v, _)| up > *v).unwrap_or(true) {
                upper = Some((up, w.to_string()));
            }
            if core.contains(&w)? {
                let low = (log_m + np - sup).exp();
                if lower.as_ref().map(|(v, _)| low < *v).unwrap_or(true) {
                    lower = Some((low, w.to_string()));
                }
            }
        }
        let (upper, upper_witness) =
            upper.ok_or_else(|| Error::Parameter(format!("no words of length {n}")))?;
        k_upper = k_upper.max(upper);
        if let Some((low, _)) = &lower {
            k_lower = k_lower.min(*low);
        }
        rows.push(GibbsRow {
            n,
            lower: lower.as_ref().map(|(v, _)| *v),
            lower_witness: lower.map(|(_, w)| w),
            upper,
            upper_witness,
        });
    }
    let pass = k_lower > 0.0 && k_lower.is_finite() && k_upper.is_finite() && k_lower <= k_upper;
    Ok(GibbsReport {
        pressure_used: p_value,
        rows,
        k_lower,
        k_upper,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundedRangeReport {
    pub phi_range: f64,
    pub entropy_gap: f64,
    pub holds: bool,
}

/// Strict inequality sup φ − inf φ < h_X − h_C.
pub fn bounded_range_check(phi: &Potential, h_x: f64, h_c: f64) -> BoundedRangeReport {
    let phi_range = phi.range();
    let entropy_gap = h_x - h_c;
    BoundedRangeReport {
        phi_range,
        entropy_gap,
        holds: phi_range < entropy_gap,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountingBound {
    pub k: usize,
    pub n_used: usize,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SGapGapReport {
    pub pressure: PressureEstimate,
    /// per n: max over 𝓛ₙ of (1/n) sup Sₙφ over the cylinder
    pub sup_birkhoff: Vec<(usize, f64)>,
    pub phi_at_zero: f64,
    /// pressure estimate minus the last sup-Birkhoff term
    pub margin: f64,
    pub inconclusive: bool,
    pub counting: CountingBound,
}

/// The pressure-gap diagnostics for an S-gap shift: the pressure strictly
/// exceeds both the maximal Birkhoff averages and φ(0^∞), and the partition
/// sum dominates the factorial counting bound Λ_N ≥ k!·e^{Nφ(0) − kV′}
/// built from k distinct gap sizes.
pub fn sgap_pressure_gap(
    shift: &SGapShift,
    phi: &Potential,
    n_range: RangeInclusive<usize>,
    k: usize,
    budget: &Budget,
) -> Result<SGapGapReport> {
    if k == 0 {
        return Err(Error::Parameter("need at least one gap size".into()));
    }
    let pressure = pressure(shift, phi, n_range.clone(), budget)?;
    let mut sup_birkhoff = Vec::new();
    for n in n_range.clone() {
        let mut best = f64::NEG_INFINITY;
        for w in shift.enumerate(n, budget)? {
            let (_, sup) = birkhoff_sum_range(shift, &w, phi)?;
            best = best.max(sup / n as f64);
        }
        sup_birkhoff.push((n, best));
    }
    let phi_at_zero = phi.value_at_zero()?;
    let last_sup = sup_birkhoff
        .last()
        .map(|&(_, v)| v)
        .unwrap_or(f64::NEG_INFINITY);
    let margin = pressure.ratio_estimate - last_sup.max(phi_at_zero);
    let v_prime = phi.bowen_constant() + phi_at_zero - phi.min_value();
    let n_used = *n_range.end();
    let log_factorial: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
    let log_rhs = log_factorial + n_used as f64 * phi_at_zero - k as f64 * v_prime;
    let log_lhs = pressure
        .per_n
        .last()
        .map(|p| p.log_lambda)
        .unwrap_or(f64::NEG_INFINITY);
    let counting = CountingBound {
        k,
        n_used,
        log_lhs,
        log_rhs,
        holds: log_lhs >= log_rhs - 1e-9,
    };
    Ok(SGapGapReport {
        pressure,
        sup_birkhoff,
        phi_at_zero,
        margin,
        inconclusive: margin <= 1e-3,
        counting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shifts::{FullShift, SSet, SftShift};
    use crate::shifts::beta::BetaShift;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn potential_basics() {
        let ab = Alphabet::binary();
        let phi = Potential::from_symbol_values(ab.clone(), &[0.25, -0.5]).unwrap();
        assert_eq!(phi.window(), 1);
        assert_eq!(phi.norm(), 0.5);
        assert_eq!(phi.range(), 0.75);
        assert_eq!(phi.bowen_constant(), 0.0);
        assert_eq!(phi.eval(&[1]).unwrap(), -0.5);
        let two = Potential::from_fn(ab.clone(), 2, |w| w[0] as f64 - w[1] as f64).unwrap();
        assert_eq!(two.eval(&[1, 0]).unwrap(), 1.0);
        assert_eq!(two.bowen_constant(), 2.0);
        assert!(Potential::from_fn(ab, 0, |_| 0.0).is_err());
    }

    #[test]
    fn birkhoff_range_matches_extension_oracle() {
        // independent oracle: enumerate all length-(n + k − 1) admissible
        // extensions explicitly and take min/max of the plain window sum
        let shift = SftShift::golden_mean();
        let phi =
            Potential::from_fn(shift.alphabet(), 2, |w| 0.3 * w[0] as f64 - 0.7 * w[1] as f64)
                .unwrap();
        for w in shift.enumerate_upto(7, &budget()).unwrap() {
            if w.is_empty() || !shift.contains(&w).unwrap() {
                continue;
            }
            let n = w.len();
            let (inf, sup) = birkhoff_sum_range(&shift, &w, &phi).unwrap();
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for code in 0..2usize {
                let mut syms = w.syms().to_vec();
                syms.push(code as u8);
                let full = Word::from_syms(shift.alphabet(), syms.clone()).unwrap();
                if !shift.contains(&full).unwrap() {
                    continue;
                }
                let s: f64 = (0..n).map(|j| phi.eval(&syms[j..j + 2]).unwrap()).sum();
                lo = lo.min(s);
                hi = hi.max(s);
            }
            assert!((inf - lo).abs() < 1e-12, "{w}");
            assert!((sup - hi).abs() < 1e-12, "{w}");
        }
    }

    #[test]
    fn window_one_has_no_end_effects() {
        let shift = FullShift::new(2).unwrap();
        let phi = Potential::from_symbol_values(shift.alphabet(), &[0.1, 0.9]).unwrap();
        let w = Word::parse(&shift.alphabet(), "0110").unwrap();
        let (inf, sup) = birkhoff_sum_range(&shift, &w, &phi).unwrap();
        assert_eq!(inf, sup);
        assert!((sup - 2.0).abs() < 1e-12);
    }

    #[test]
    fn partition_sum_counts_when_phi_zero() {
        let shift = SftShift::golden_mean();
        let phi = Potential::zero(shift.alphabet());
        for n in 1..=10 {
            let words = shift.enumerate(n, &budget()).unwrap();
            let log = log_partition_sum(&shift, &words, &phi).unwrap();
            assert!((log - (words.len() as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_bernoulli_has_zero_pressure() {
        let shift = FullShift::new(2).unwrap();
        let q = [0.3f64, 0.7];
        let phi = Potential::from_symbol_values(shift.alphabet(), &[q[0].ln(), q[1].ln()]).unwrap();
        for n in 1..=12 {
            let words = shift.enumerate(n, &budget()).unwrap();
            let log = log_partition_sum(&shift, &words, &phi).unwrap();
            assert!(log.abs() < 1e-10, "n={n}: {log}");
        }
    }

    #[test]
    fn golden_beta_partition_matches_transfer_matrix() {
        let beta = BetaShift::golden();
        let phi = Potential::zero(beta.alphabet());
        // independent oracle: the word counts satisfy a_n = F(n+3) − 1 with
        // Fibonacci F(1) = F(2) = 1
        let mut fib = vec![1u64, 1];
        for i in 2..30 {
            let next = fib[i - 1] + fib[i - 2];
            fib.push(next);
        }
        for n in 1..=20usize {
            let words = beta.enumerate(n, &budget()).unwrap();
            let log = log_partition_sum(&beta, &words, &phi).unwrap();
            let count = fib[n + 2] - 1;
            assert_eq!(words.len() as u64, count, "n={n}");
            assert!((log - (count as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn full_shift_pressure_is_exact_log_p() {
        for p in [2usize, 3] {
            let shift = FullShift::new(p).unwrap();
            let est = entropy(&shift, 1..=8, &budget()).unwrap();
            for point in &est.per_n {
                assert!((point.normalized - (p as f64).ln()).abs() < 1e-12);
            }
            assert!((est.ratio_estimate - (p as f64).ln()).abs() < 1e-12);
            assert!(!est.inconclusive);
        }
    }

    #[test]
    fn spectral_growth_matches_closed_forms() {
        // golden-mean SFT entropy = log((1+√5)/2)
        let shift = SGapShift::evens();
        let dfa = shift.language_dfa().unwrap();
        let h = dfa_spectral_log_growth(&dfa, None).unwrap();
        let golden = ((1.0 + 5.0f64.sqrt()) / 2.0).ln();
        assert!((h - golden).abs() < 1e-9, "{h} vs {golden}");
        // the core automaton generates the same growth
        let core = shift.core_dfa().unwrap();
        let hc = dfa_spectral_log_growth(&core, None).unwrap();
        assert!((hc - golden).abs() < 1e-9);
        // weighted: normalized Bernoulli potential on the full shift
        let full = crate::dfa::Dfa::new(
            Alphabet::binary(),
            0,
            vec![true],
            vec![vec![Some(0), Some(0)]],
        )
        .unwrap();
        let phi =
            Potential::from_symbol_values(Alphabet::binary(), &[0.25f64.ln(), 0.75f64.ln()])
                .unwrap();
        let p = dfa_spectral_log_growth(&full, Some(&phi)).unwrap();
        assert!(p.abs() < 1e-10, "normalized pressure {p}");
    }

    #[test]
    fn sgap_root_oracle() {
        // evens: Σ x^{−(2j+1)} = x/(x²−1) = 1 ⟺ x² − x − 1 = 0
        let golden = ((1.0 + 5.0f64.sqrt()) / 2.0).ln();
        let h = sgap_entropy_root(&SSet::Evens, 1e-12).unwrap();
        assert!((h - golden).abs() < 1e-9, "{h}");
        // S = {1}: x^{−2} = 1 has no root above 1... x = 1 exactly; the
        // degenerate case is rejected
        let single = SSet::Explicit([5u32].into_iter().collect());
        // x^{-6} = 1 only at x = 1: too sparse
        assert!(sgap_entropy_root(&single, 1e-10).is_err());
        // finite set {0,1}: 1/x + 1/x² = 1 ⟺ x² − x − 1 = 0 again
        let fib = SSet::Explicit([0u32, 1].into_iter().collect());
        let h2 = sgap_entropy_root(&fib, 1e-12).unwrap();
        assert!((h2 - golden).abs() < 1e-9);
    }

    #[test]
    fn spectral_agrees_with_finite_n_entropy() {
        let shift = SGapShift::evens();
        let est = entropy(&shift, 4..=18, &budget()).unwrap();
        let exact = dfa_spectral_log_growth(&shift.language_dfa().unwrap(), None).unwrap();
        let est = est.with_exact(exact);
        assert_eq!(est.agrees(0.05), Some(true));
    }

    #[test]
    fn bowen_variation_bounds() {
        let shift = FullShift::new(2).unwrap();
        let phi1 = Potential::from_symbol_values(shift.alphabet(), &[1.0, -1.0]).unwrap();
        assert_eq!(bowen_variation(&shift, &phi1, 1..=8, &budget()).unwrap(), 0.0);
        let c = Potential::constant(shift.alphabet(), 3.5);
        assert_eq!(bowen_variation(&shift, &c, 1..=8, &budget()).unwrap(), 0.0);
        // adversarial window-2 table achieves the 2‖φ‖ end-effect bound
        let phi2 = Potential::from_fn(shift.alphabet(), 2, |w| {
            if w[1] == 1 {
                1.0
            } else {
                -1.0
            }
        })
        .unwrap();
        let v = bowen_variation(&shift, &phi2, 1..=10, &budget()).unwrap();
        assert!(v <= 2.0 * phi2.norm() + 1e-12);
        assert!((v - 2.0).abs() < 1e-12, "achieved: {v}");
    }

    #[test]
    fn submultiplicative_partition_sums() {
        let shift = SGapShift::evens();
        let phi = Potential::from_fn(shift.alphabet(), 2, |w| {
            0.2 * w[0] as f64 - 0.4 * w[1] as f64
        })
        .unwrap();
        let logs: Vec<f64> = (1..=12)
            .map(|n| {
                let words = shift.enumerate(n, &budget()).unwrap();
                log_partition_sum(&shift, &words, &phi).unwrap()
            })
            .collect();
        let v = phi.bowen_constant();
        for m in 1..=6usize {
            for n in 1..=6usize {
                assert!(
                    logs[m + n - 1] <= logs[m - 1] + logs[n - 1] + v + 1e-9,
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn bernoulli_measure_and_gibbs_identity() {
        let shift = FullShift::new(2).unwrap();
        let m = MeasureModel::bernoulli(shift.alphabet(), vec![0.25, 0.75]).unwrap();
        assert!(m.is_exact());
        // additivity m[w] = Σ m[wa]
        for w in shift.enumerate_upto(6, &budget()).unwrap() {
            let total: f64 = (0..2u8)
                .map(|a| m.cylinder(&w.appended(a)).unwrap())
                .sum();
            assert!((m.cylinder(&w).unwrap() - total).abs() < 1e-12);
        }
        assert!((m.entropy().unwrap()
            - (0.25f64 * (1.0 / 0.25f64).ln() + 0.75 * (1.0 / 0.75f64).ln()))
        .abs()
            < 1e-12);
        // Gibbs with the log-weight potential: K = K′ = 1 exactly
        let phi =
            Potential::from_symbol_values(shift.alphabet(), &[0.25f64.ln(), 0.75f64.ln()])
                .unwrap();
        let all = Collection::new("all", |_| Ok(true));
        let report = gibbs_check(&m, &phi, 0.0, &shift, &all, 1..=10, &budget()).unwrap();
        assert!(report.pass);
        assert!((report.k_lower - 1.0).abs() < 1e-9, "{}", report.k_lower);
        assert!((report.k_upper - 1.0).abs() < 1e-9, "{}", report.k_upper);
    }

    #[test]
    fn markov_measure_and_gibbs_bounds() {
        let shift = FullShift::new(2).unwrap();
        let rows = vec![vec![0.6, 0.4], vec![0.3, 0.7]];
        let m = MeasureModel::markov(shift.alphabet(), rows.clone()).unwrap();
        let MeasureModel::Markov { stationary, .. } = &m else {
            unreachable!()
        };
        let pi = stationary.clone();
        // stationarity
        for j in 0..2 {
            let got: f64 = (0..2).map(|i| pi[i] * rows[i][j]).sum();
            assert!((got - pi[j]).abs() < 1e-10);
        }
        // additivity
        for w in shift.enumerate_upto(6, &budget()).unwrap() {
            let total: f64 = (0..2u8)
                .map(|a| m.cylinder(&w.appended(a)).unwrap())
                .sum();
            assert!((m.cylinder(&w).unwrap() - total).abs() < 1e-12);
        }
        // Gibbs with window-2 log-transition potential.  The ratio for a
        // cylinder [w] is π_{w₁} / P(wₙ, ·) over the boundary transition, so
        // the closed-form bounds are π_min ≤ K and K′ ≤ π_max / P_min.
        let phi = Potential::from_fn(shift.alphabet(), 2, |w| {
            rows[w[0] as usize][w[1] as usize].ln()
        })
        .unwrap();
        let all = Collection::new("all", |_| Ok(true));
        let report = gibbs_check(&m, &phi, 0.0, &shift, &all, 2..=10, &budget()).unwrap();
        assert!(report.pass);
        let pi_min = pi.iter().cloned().fold(f64::INFINITY, f64::min);
        let pi_max = pi.iter().cloned().fold(0.0f64, f64::max);
        let p_min = rows
            .iter()
            .flatten()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        assert!(report.k_lower >= pi_min - 1e-9);
        assert!(report.k_upper <= pi_max / p_min + 1e-9);
    }

    #[test]
    fn graph_perron_measure_is_stable_gibbs() {
        let shift = SGapShift::evens();
        let m = MeasureModel::graph_perron(shift.language_dfa().unwrap()).unwrap();
        assert!(!m.is_exact());
        // additivity within the certified tolerance
        for w in shift.enumerate_upto(8, &budget()).unwrap() {
            if !shift.contains(&w).unwrap() {
                continue;
            }
            let total: f64 = (0..2u8)
                .filter(|&a| shift.contains(&w.appended(a)).unwrap())
                .map(|a| m.cylinder(&w.appended(a)).unwrap())
                .sum();
            assert!(
                (m.cylinder(&w).unwrap() - total).abs() < 1e-9,
                "additivity at {w}"
            );
        }
        let phi = Potential::zero(shift.alphabet());
        let p = dfa_spectral_log_growth(&shift.language_dfa().unwrap(), None).unwrap();
        let core = Collection::new("core", {
            let s = Arc::new(SGapShift::evens());
            move |w: &Word| s.core_contains(w)
        });
        let report = gibbs_check(&m, &phi, p, &shift, &core, 2..=14, &budget()).unwrap();
        assert!(report.pass, "K={} K'={}", report.k_lower, report.k_upper);
        assert!(report.k_lower > 0.0 && report.k_upper.is_finite());
    }

    #[test]
    fn sampling_is_deterministic_and_plausible() {
        use rand::SeedableRng;
        let shift = FullShift::new(2).unwrap();
        let m = MeasureModel::bernoulli(shift.alphabet(), vec![0.25, 0.75]).unwrap();
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let wa = m.sample_word(4000, &mut a).unwrap();
        let wb = m.sample_word(4000, &mut b).unwrap();
        assert_eq!(wa, wb);
        let ones = wa.syms().iter().filter(|&&s| s == 1).count() as f64 / 4000.0;
        assert!((ones - 0.75).abs() < 0.03, "{ones}");
        let mk = MeasureModel::markov(
            shift.alphabet(),
            vec![vec![0.9, 0.1], vec![0.5, 0.5]],
        )
        .unwrap();
        let w = mk.sample_word(64, &mut a).unwrap();
        assert_eq!(w.len(), 64);
    }

    #[test]
    fn bounded_range_examples() {
        let ab = Alphabet::binary();
        let zero = Potential::zero(ab.clone());
        assert!(bounded_range_check(&zero, 0.4812, 0.0).holds);
        // boundary case: range equal to the gap fails the strict inequality
        let phi = Potential::from_symbol_values(ab.clone(), &[0.0, 0.4812]).unwrap();
        assert!(!bounded_range_check(&phi, 0.4812, 0.0).holds);
        let small = Potential::from_symbol_values(ab, &[0.0, 0.3]).unwrap();
        assert!(bounded_range_check(&small, 0.4812, 0.0).holds);
    }

    #[test]
    fn pressure_gap_reports() {
        let shift = SGapShift::evens();
        // φ ≡ 0: margin equals the entropy
        let zero = Potential::zero(shift.alphabet());
        let report = sgap_pressure_gap(&shift, &zero, 6..=14, 3, &budget()).unwrap();
        assert!(report.margin > 0.2, "margin {}", report.margin);
        assert!(!report.inconclusive);
        assert_eq!(report.phi_at_zero, 0.0);
        assert!(report.counting.holds);
        // small-range window-1 potential keeps a positive margin
        let phi = Potential::from_symbol_values(shift.alphabet(), &[0.0, 0.1]).unwrap();
        let report = sgap_pressure_gap(&shift, &phi, 6..=14, 2, &budget()).unwrap();
        assert!(report.margin > 0.0, "margin {}", report.margin);
    }

    #[test]
    fn core_and_language_pressure_converge() {
        // the good-core partition sums track the full-language ones
        let shift = Arc::new(SGapShift::evens());
        let phi = Potential::from_symbol_values(shift.alphabet(), &[0.0, 0.2]).unwrap();
        let core = Collection::new("core", {
            let s = shift.clone();
            move |w: &Word| s.core_contains(w)
        });
        let lang = pressure(shift.as_ref(), &phi, 6..=16, &budget()).unwrap();
        let good = pressure_of(shift.as_ref(), Some(&core), &phi, 6..=16, &budget()).unwrap();
        let diff_first =
            (lang.per_n[0].normalized - good.per_n[0].normalized).abs();
        let last = lang.per_n.len() - 1;
        let diff_last =
            (lang.per_n[last].normalized - good.per_n[last].normalized).abs();
        assert!(diff_last < diff_first, "{diff_first} → {diff_last}");
        assert!(diff_last < 0.1);
    }
}

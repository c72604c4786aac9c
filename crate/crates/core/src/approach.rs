//! Mistake functions and edit approachability: explicit constructions that
//! carry a language word into the good core within a sublinear number of
//! edits, a brute-force nearest-word oracle, and the deviation bound that
//! converts edit proximity into Birkhoff-average proximity.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::budget::Budget;
use crate::decomp::Collection;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::shifts::beta::BetaShift;
use crate::shifts::{SGapShift, SSet, ShiftLanguage};
use crate::thermo::{birkhoff_sum_range, Potential};
use crate::words::{edit_ball, Word};

/// A nondecreasing sublinear bound g(n) on the edits needed to reach 𝓖.
#[derive(Debug, Clone)]
pub enum MistakeFunction {
    Zero,
    One,
    Const(u64),
    /// ⌈√n⌉
    SqrtCeil,
    /// 2(⌈n/sₙ⌉ + sₙ) with sₙ the smallest element of S at or above √n.
    SGapSelector(SSet),
}

impl MistakeFunction {
    pub fn eval(&self, n: u64) -> Result<u64> {
        match self {
            MistakeFunction::Zero => Ok(0),
            MistakeFunction::One => Ok(1),
            MistakeFunction::Const(c) => Ok(*c),
            MistakeFunction::SqrtCeil => {
                let mut s = 0u64;
                while s * s < n {
                    s += 1;
                }
                Ok(s)
            }
            MistakeFunction::SGapSelector(set) => {
                if n == 0 {
                    return Ok(0);
                }
                let s = set.selector(n)? as u64;
                Ok(2 * (n.div_ceil(s) + s))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MistakeFunction::Zero => "0".into(),
            MistakeFunction::One => "1".into(),
            MistakeFunction::Const(c) => format!("{c}"),
            MistakeFunction::SqrtCeil => "ceil(sqrt(n))".into(),
            MistakeFunction::SGapSelector(set) => {
                format!("2(ceil(n/s_n) + s_n), selector over {}", set.describe())
            }
        }
    }

    /// Check nondecreasing and g(n)/n < threshold at the end of the range.
    pub fn check_shape(&self, n_range: RangeInclusive<u64>, threshold: f64) -> Result<bool> {
        let mut prev = None;
        let mut last = (0u64, 0u64);
        for n in n_range {
            let g = self.eval(n)?;
            if let Some(p) = prev {
                if g < p {
                    return Ok(false);
                }
            }
            prev = Some(g);
            last = (n, g);
        }
        let (n, g) = last;
        Ok(n == 0 || (g as f64 / n as f64) < threshold)
    }
}

/// Carry a β-shift word into the good core by decrementing its last nonzero
/// symbol; all-zero words are already core and map to themselves.
pub fn approach_beta(shift: &BetaShift, w: &Word) -> Result<Word> {
    if !shift.contains(w)? {
        return Err(Error::NotInLanguage(w.to_string()));
    }
    let mut syms = w.syms().to_vec();
    match syms.iter().rposition(|&a| a != 0) {
        None => Ok(w.clone()),
        Some(j) => {
            syms[j] -= 1;
            Word::from_syms(w.alphabet().clone(), syms)
        }
    }
}

/// The S-gap approach: affixes and a same-length rewrite whose
/// concatenation lies in 𝓖.
#[derive(Debug, Clone)]
pub struct SGapApproach {
    pub u: Word,
    pub core: Word,
    pub v: Word,
    /// substitutions + inserted affix symbols actually spent
    pub edits: u64,
    /// the bound 2(⌈n/sₙ⌉ + sₙ) reported alongside
    pub g_bound: u64,
    /// the selector value sₙ used
    pub selector: u32,
}

impl SGapApproach {
    pub fn glued(&self) -> Word {
        self.u.concat(&self.core).unwrap().concat(&self.v).unwrap()
    }
}

/// Replace a leading run 0^k by 0^i (1 0^s)^t with i + t(s+1) = k, 0 ≤ i ≤ s:
/// t substitutions, no length change.
fn rewrite_leading(k: usize, s: usize) -> (Vec<u8>, u64) {
    let t = if k <= s { 0 } else { (k - s).div_ceil(s + 1) };
    let i = k - t * (s + 1);
    let mut out = vec![0u8; i];
    for _ in 0..t {
        out.push(1);
        out.extend(std::iter::repeat(0).take(s));
    }
    (out, t as u64)
}

/// Mirror image: 0^ℓ becomes (0^s 1)^t 0^j.
fn rewrite_trailing(l: usize, s: usize) -> (Vec<u8>, u64) {
    let t = if l <= s { 0 } else { (l - s).div_ceil(s + 1) };
    let j = l - t * (s + 1);
    let mut out = Vec::with_capacity(l);
    for _ in 0..t {
        out.extend(std::iter::repeat(0).take(s));
        out.push(1);
    }
    out.extend(std::iter::repeat(0).take(j));
    (out, t as u64)
}

/// Splice an S-gap word into the good core: thin out the unconstrained
/// boundary runs with 1s spaced sₙ apart, then pad both ends so every run —
/// including the first and last — has length exactly sₙ ∈ S.
pub fn approach_sgap(shift: &SGapShift, w: &Word) -> Result<SGapApproach> {
    if !shift.contains(w)? {
        return Err(Error::NotInLanguage(w.to_string()));
    }
    let n = w.len();
    let empty = Word::empty(w.alphabet().clone());
    if n == 0 {
        return Ok(SGapApproach {
            u: empty.clone(),
            core: empty.clone(),
            v: empty,
            edits: 0,
            g_bound: 0,
            selector: 0,
        });
    }
    let s = shift.gap_set().selector(n as u64)?;
    let su = s as usize;
    let g_bound = 2 * ((n as u64).div_ceil(s as u64) + s as u64);
    let syms = w.syms();
    let first = syms.iter().position(|&a| a == 1);
    let mk = |syms: Vec<u8>| Word::from_syms(w.alphabet().clone(), syms);

    let (core_syms, subs) = match first {
        None => {
            // all zeros: n ≤ s keeps the word, otherwise thin the run
            let (lead, t) = rewrite_leading(n, su);
            (lead, t)
        }
        Some(f) => {
            let l = syms.len() - 1 - syms.iter().rposition(|&a| a == 1).unwrap();
            let (lead, t1) = rewrite_leading(f, su);
            let (trail, t2) = rewrite_trailing(l, su);
            let mut out = lead;
            out.extend_from_slice(&syms[f..n - l]);
            out.extend_from_slice(&trail);
            (out, t1 + t2)
        }
    };
    // pad the boundary runs of the rewrite up to exactly s
    let has_one = core_syms.contains(&1);
    let (u_syms, v_syms) = if has_one {
        let a = core_syms.iter().position(|&x| x == 1).unwrap();
        let b = core_syms.len() - 1 - core_syms.iter().rposition(|&x| x == 1).unwrap();
        let mut v = vec![0u8; su - b];
        v.push(1);
        (vec![0u8; su - a], v)
    } else {
        // a single all-zero run of length ≤ s: close it with one gap of s
        let mut v = vec![0u8; su - core_syms.len()];
        v.push(1);
        (Vec::new(), v)
    };
    let edits = subs + u_syms.len() as u64 + v_syms.len() as u64;
    Ok(SGapApproach {
        u: mk(u_syms)?,
        core: mk(core_syms)?,
        v: mk(v_syms)?,
        edits,
        g_bound,
        selector: s,
    })
}

/// The word of `coll` nearest to `w` in the edit metric, searching radii
/// 0..=r_max; ties resolved by length then lexicographic order.  `Ok(None)`
/// when nothing lies within r_max.
pub fn nearest_in_collection(
    w: &Word,
    coll: &Collection,
    r_max: u32,
) -> Result<Option<(Word, u32)>> {
    for r in 0..=r_max {
        for cand in edit_ball(w, r, None, r_max.max(1))? {
            if coll.contains(&cand)? {
                // anything closer would have surfaced at a smaller radius
                return Ok(Some((cand, r)));
            }
        }
    }
    Ok(None)
}

/// How the nearest-core distance is obtained during verification.
pub enum NearestStrategy<'a> {
    /// Iterative-deepening edit balls against a membership predicate; cost
    /// grows steeply with the radius.
    Ball(&'a Collection),
    /// Exact dynamic program against a core automaton.
    Dfa(&'a Dfa),
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproachRow {
    pub n: usize,
    /// largest nearest-core distance seen at this length; `g + 1` is a
    /// sentinel for "beyond the search radius"
    pub max_observed: u64,
    pub g: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproachReport {
    pub rows: Vec<ApproachRow>,
    pub holds: bool,
    pub counterexample: Option<String>,
}

impl ApproachReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,max_observed_distance,g,pass\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n, row.max_observed, row.g, row.pass
            ));
        }
        out
    }
}

/// Exhaustively certify that every word of length ≤ n_max sits within
/// g(length) edits of the good core.
pub fn verify_edit_approachability(
    lang: &dyn ShiftLanguage,
    strategy: NearestStrategy<'_>,
    g: &MistakeFunction,
    n_max: usize,
    budget: &Budget,
) -> Result<ApproachReport> {
    let mut rows = Vec::new();
    let mut holds = true;
    let mut counterexample = None;
    for n in 0..=n_max {
        let bound = g.eval(n as u64)?;
        let mut max_observed = 0u64;
        let mut pass = true;
        for w in lang.enumerate(n, budget)? {
            let found: Option<u64> = match &strategy {
                NearestStrategy::Ball(coll) => {
                    nearest_in_collection(&w, coll, bound as u32)?.map(|(_, d)| d as u64)
                }
                NearestStrategy::Dfa(dfa) => dfa.nearest_word(&w)?.map(|(d, _)| d as u64),
            };
            let d = found.unwrap_or(bound + 1);
            max_observed = max_observed.max(d);
            if d > bound {
                pass = false;
                holds = false;
                if counterexample.is_none() {
                    counterexample = Some(format!("{w} (length {n}, distance > {bound})"));
                }
            }
        }
        rows.push(ApproachRow {
            n,
            max_observed,
            g: bound,
            pass,
        });
    }
    Ok(ApproachReport {
        rows,
        holds,
        counterexample,
    })
}

/// The explicit deviation bound δₙ: words at edit distance ≤ g(n) have
/// Birkhoff averages within δₙ = 4‖φ‖√(ĝ/n) + ε(√(n/ĝ)) + (ĝ/n)‖φ‖, where
/// ĝ = g(n) + 1.
pub fn birkhoff_deviation_bound(
    n: usize,
    g: &MistakeFunction,
    phi: &Potential,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("deviation bound needs n ≥ 1".into()));
    }
    let ghat = (g.eval(n as u64)? + 1) as f64;
    let ratio = ghat / n as f64;
    let cn = (n as f64 / ghat).sqrt();
    Ok(4.0 * phi.norm() * ratio.sqrt() + epsilon(phi, cn) + ratio * phi.norm())
}

/// ε(z) = sup_{m ≥ z} V(m)/m for the exact variation V(m) of a window-k
/// potential: orbits agreeing on m symbols differ only in the trailing
/// k − 1 Birkhoff terms, so V(m) = min(m, k−1)·2‖φ‖.
fn epsilon(phi: &Potential, z: f64) -> f64 {
    let k = phi.window();
    if k == 1 {
        return 0.0;
    }
    let m = z.ceil().max(1.0);
    if m <= (k - 1) as f64 {
        2.0 * phi.norm()
    } else {
        (k - 1) as f64 * 2.0 * phi.norm() / m
    }
}

/// Empirical companion to the bound: the largest possible difference of
/// Birkhoff averages between cylinder points of words at edit distance ≤ g,
/// one word of length n, the other of any length.  Exhaustive over edit
/// balls — keep g small.
pub fn max_deviation_at_distance(
    lang: &dyn ShiftLanguage,
    phi: &Potential,
    n: usize,
    g: u64,
    budget: &Budget,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("need n ≥ 1".into()));
    }
    let mut worst = 0.0f64;
    for w in lang.enumerate(n, budget)? {
        let (inf_w, sup_w) = birkhoff_sum_range(lang, &w, phi)?;
        let (aw, bw) = (inf_w / n as f64, sup_w / n as f64);
        worst = worst.max(bw - aw);
        if g == 0 {
            continue;
        }
        for v in edit_ball(&w, g as u32, None, (g as u32).max(1))? {
            if v.is_empty() || !lang.contains(&v)? {
                continue;
            }
            let (inf_v, sup_v) = birkhoff_sum_range(lang, &v, phi)?;
            let m = v.len() as f64;
            let dev = (bw - inf_v / m).max(sup_v / m - aw);
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

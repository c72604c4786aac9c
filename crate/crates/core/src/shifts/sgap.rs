//! S-gap shifts: binary words whose internal 0-runs (strictly between two
//! 1s) have lengths in S.  Prefix and suffix runs are unconstrained.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::shifts::ShiftLanguage;
use crate::words::{Alphabet, Word};

/// The allowed gap set S ⊆ ℕ.
#[derive(Debug, Clone)]
pub enum SSet {
    /// {0, 2, 4, …}
    Evens,
    /// {1, 3, 5, …}
    Odds,
    /// {n : n ≡ r (mod m)}
    Residue { m: u32, r: u32 },
    /// {1, 2, 4, 8, …}
    PowersOfTwo,
    /// A finite, explicitly listed set.
    Explicit(BTreeSet<u32>),
}

impl SSet {
    pub fn contains(&self, n: u32) -> bool {
        match self {
            SSet::Evens => n % 2 == 0,
            SSet::Odds => n % 2 == 1,
            SSet::Residue { m, r } => n % m == r % m,
            SSet::PowersOfTwo => n.is_power_of_two(),
            SSet::Explicit(set) => set.contains(&n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SSet::Residue { m, .. } if *m == 0 => {
                Err(Error::Parameter("residue modulus must be positive".into()))
            }
            SSet::Explicit(set) if set.is_empty() => {
                Err(Error::Parameter("explicit gap set must be nonempty".into()))
            }
            _ => Ok(()),
        }
    }

    /// Elements of S up to and including `max`, sorted.
    pub fn enumerate_upto(&self, max: u32) -> Vec<u32> {
        (0..=max).filter(|&n| self.contains(n)).collect()
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, SSet::Explicit(_))
    }

    /// The selector sₙ: the smallest s ∈ S with s ≥ √n.
    pub fn selector(&self, n: u64) -> Result<u32> {
        let mut s = 0u32;
        while (s as u64) * (s as u64) < n {
            s += 1;
        }
        for cand in s..=s.saturating_add(1_000_000) {
            if self.contains(cand) {
                return Ok(cand);
            }
        }
        Err(Error::Parameter(format!(
            "no element of S at or above {s}; S must be infinite for the selector"
        )))
    }

    fn max_explicit(&self) -> Option<u32> {
        match self {
            SSet::Explicit(set) => set.iter().next_back().copied(),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SSet::Evens => "evens".into(),
            SSet::Odds => "odds".into(),
            SSet::Residue { m, r } => format!("residue({r} mod {m})"),
            SSet::PowersOfTwo => "powers-of-two".into(),
            SSet::Explicit(set) => {
                let items: Vec<String> = set.iter().map(|n| n.to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
        }
    }
}

/// The S-gap shift on {0, 1}.
pub struct SGapShift {
    alphabet: Arc<Alphabet>,
    s: SSet,
}

impl SGapShift {
    pub fn new(s: SSet) -> Result<SGapShift> {
        s.validate()?;
        Ok(SGapShift {
            alphabet: Alphabet::binary(),
            s,
        })
    }

    pub fn evens() -> SGapShift {
        SGapShift::new(SSet::Evens).unwrap()
    }

    pub fn gap_set(&self) -> &SSet {
        &self.s
    }

    /// Positions of 1s, as indices.
    fn ones(w: &Word) -> Vec<usize> {
        w.syms()
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| (a == 1).then_some(i))
            .collect()
    }

    /// Membership in 𝓖: w is a concatenation of blocks 0^s1 with s ∈ S
    /// (the empty concatenation included).
    pub fn core_contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if w.is_empty() {
            return Ok(true);
        }
        if *w.syms().last().unwrap() != 1 {
            return Ok(false);
        }
        let mut run = 0u32;
        for &a in w.syms() {
            if a == 0 {
                run += 1;
            } else {
                if !self.s.contains(run) {
                    return Ok(false);
                }
                run = 0;
            }
        }
        Ok(true)
    }

    /// Membership in 𝓒ᵖ: empty, or 0ⁿ1 with n ∉ S.
    pub fn prefix_contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if w.is_empty() {
            return Ok(true);
        }
        let ones = Self::ones(w);
        Ok(ones.len() == 1
            && ones[0] == w.len() - 1
            && !self.s.contains((w.len() - 1) as u32))
    }

    /// Membership in 𝓒ˢ: all-zero words.
    pub fn suffix_contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(w.syms().iter().all(|&a| a == 0))
    }

    /// Finite automaton for 𝓖.  The gap set must be finite or eventually
    /// periodic; a power-of-two gap set has no finite presentation.
    pub fn core_dfa(&self) -> Result<Dfa> {
        match &self.s {
            SSet::PowersOfTwo => Err(Error::Unsupported(
                "powers-of-two gaps admit no finite automaton".into(),
            )),
            SSet::Explicit(set) => {
                let max = self.s.max_explicit().unwrap() as usize;
                // state l = current 0-run length; accepting iff l == 0
                let n = max + 1;
                let mut transitions = Vec::with_capacity(n);
                for l in 0..n {
                    let zero = if l + 1 <= max { Some(l + 1) } else { None };
                    let one = set.contains(&(l as u32)).then_some(0);
                    transitions.push(vec![zero, one]);
                }
                let mut accepting = vec![false; n];
                accepting[0] = true;
                Ok(Dfa::new(self.alphabet.clone(), 0, accepting, transitions).unwrap())
            }
            _ => {
                let (m, r) = self.residue();
                // state 0 = boundary (run 0); state 1..=m = run with residue
                // class c for state c (c in 1..=m encodes residue c mod m).
                let mut transitions = Vec::with_capacity(m + 1);
                // boundary
                transitions.push(vec![Some(1), (r == 0).then_some(0)]);
                for c in 1..=m {
                    let next = if c == m { 1 } else { c + 1 };
                    let class = c % m;
                    transitions.push(vec![Some(next), (class == r).then_some(0)]);
                }
                let mut accepting = vec![false; m + 1];
                accepting[0] = true;
                Ok(Dfa::new(self.alphabet.clone(), 0, accepting, transitions).unwrap())
            }
        }
    }

    /// Finite automaton exact for the slice of 𝓖 in which every 0-run
    /// (including the leading one) has length ≤ `max_gap`.  Useful for
    /// nearest-word queries against infinite aperiodic gap sets, where the
    /// query length bounds the runs any optimal witness can use.
    pub fn core_dfa_truncated(&self, max_gap: u32) -> Dfa {
        let max = max_gap as usize;
        let n = max + 1;
        let mut transitions = Vec::with_capacity(n);
        for l in 0..n {
            let zero = (l + 1 <= max).then_some(l + 1);
            let one = self.s.contains(l as u32).then_some(0);
            transitions.push(vec![zero, one]);
        }
        let mut accepting = vec![false; n];
        accepting[0] = true;
        Dfa::new(self.alphabet.clone(), 0, accepting, transitions).unwrap()
    }

    /// Finite automaton for the full language 𝓛.
    pub fn language_dfa(&self) -> Result<Dfa> {
        match &self.s {
            SSet::PowersOfTwo => Err(Error::Unsupported(
                "powers-of-two gaps admit no finite automaton".into(),
            )),
            SSet::Explicit(set) => {
                let max = self.s.max_explicit().unwrap() as usize;
                // state 0: leading zeros (no 1 yet); state 1: boundary after
                // a 1; state 2+l: internal run of length l+1; last state:
                // overflow run (suffix only)
                let overflow = 2 + max + 1;
                let nstates = overflow + 1;
                let mut transitions = vec![vec![None, None]; nstates];
                transitions[0] = vec![Some(0), Some(1)];
                transitions[1] = vec![Some(2), set.contains(&0).then_some(1)];
                for l in 1..=max {
                    let next = if l + 1 <= max { 2 + l } else { overflow };
                    transitions[2 + l - 1] = vec![Some(next), set.contains(&(l as u32)).then_some(1)];
                }
                transitions[overflow] = vec![Some(overflow), None];
                Ok(Dfa::new(self.alphabet.clone(), 0, vec![true; nstates], transitions).unwrap())
            }
            _ => {
                let (m, r) = self.residue();
                // state 0: leading zeros; state 1: boundary; state 1+c for
                // c in 1..=m: internal run with residue class c mod m
                let nstates = m + 2;
                let mut transitions = vec![vec![None, None]; nstates];
                transitions[0] = vec![Some(0), Some(1)];
                transitions[1] = vec![Some(2), (r == 0).then_some(1)];
                for c in 1..=m {
                    let next = if c == m { 2 } else { 2 + c };
                    transitions[1 + c] = vec![Some(next), (c % m == r).then_some(1)];
                }
                Ok(Dfa::new(self.alphabet.clone(), 0, vec![true; nstates], transitions).unwrap())
            }
        }
    }

    fn residue(&self) -> (usize, usize) {
        match &self.s {
            SSet::Evens => (2, 0),
            SSet::Odds => (2, 1),
            SSet::Residue { m, r } => (*m as usize, (*r % *m) as usize),
            SSet::PowersOfTwo | SSet::Explicit(_) => unreachable!(),
        }
    }
}

impl ShiftLanguage for SGapShift {
    fn alphabet(&self) -> Arc<Alphabet> {
        self.alphabet.clone()
    }

    fn contains(&self, w: &Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let ones = Self::ones(w);
        for pair in ones.windows(2) {
            let gap = (pair[1] - pair[0] - 1) as u32;
            if !self.s.contains(gap) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn descriptor(&self) -> String {
        format!("sgap(S={})", self.s.describe())
    }
}

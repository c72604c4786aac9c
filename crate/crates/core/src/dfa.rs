//! Deterministic finite automata over symbol indices, plus an exact
//! nearest-accepted-word search under the edit metric.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};
use std::sync::Arc;

/// A complete DFA: `transitions[state][symbol]` is the successor state, or
/// `None` for the (implicit) dead state.
#[derive(Debug, Clone)]
pub struct Dfa {
    pub alphabet: Arc<Alphabet>,
    pub start: usize,
    pub accepting: Vec<bool>,
    pub transitions: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    pub fn new(
        alphabet: Arc<Alphabet>,
        start: usize,
        accepting: Vec<bool>,
        transitions: Vec<Vec<Option<usize>>>,
    ) -> Result<Dfa> {
        let n = accepting.len();
        if transitions.len() != n {
            return Err(Error::Parameter("transition table size mismatch".into()));
        }
        for row in &transitions {
            if row.len() != alphabet.size() {
                return Err(Error::Parameter("transition row size mismatch".into()));
            }
            if row.iter().flatten().any(|&s| s >= n) {
                return Err(Error::Parameter("transition target out of range".into()));
            }
        }
        if start >= n {
            return Err(Error::Parameter("start state out of range".into()));
        }
        Ok(Dfa {
            alphabet,
            start,
            accepting,
            transitions,
        })
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn step(&self, state: usize, sym: u8) -> Option<usize> {
        self.transitions[state][sym as usize]
    }

    pub fn run(&self, syms: &[u8]) -> Option<usize> {
        let mut state = self.start;
        for &s in syms {
            state = self.step(state, s)?;
        }
        Some(state)
    }

    pub fn accepts(&self, w: &Word) -> bool {
        matches!(self.run(w.syms()), Some(s) if self.accepting[s])
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, row) in self.transitions.iter().enumerate() {
            for &t in row.iter().flatten() {
                rev[t].push(s);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Exact minimum edit distance from `w` to the accepted language, with a
    /// witness word attaining it.  Returns `None` when the language is empty.
    ///
    /// Dynamic program over (source position, state) with unit costs; inserts
    /// are closed out by a Dijkstra-style relaxation within each position
    /// layer.  The witness is deterministic (smallest symbol / state on
    /// ties), though not necessarily the length-lex least among all
    /// minimizers.
    pub fn nearest_word(&self, w: &Word) -> Result<Option<(u32, Word)>> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let n = w.len();
        let q = self.num_states();
        let live = self.live_states();
        if !live[self.start] {
            return Ok(None);
        }
        const INF: u32 = u32::MAX / 2;
        // dist[i][s]: cheapest way to consume w[..i] and land in state s.
        let mut dist = vec![vec![INF; q]; n + 1];
        // parent[i][s] = (prev_i, prev_s, emitted symbol or NONE)
        const NONE_SYM: u8 = u8::MAX;
        let mut parent: Vec<Vec<Option<(usize, usize, u8)>>> = vec![vec![None; q]; n + 1];
        dist[0][self.start] = 0;

        let p = self.alphabet.size() as u8;
        let relax_inserts = |dist: &mut Vec<Vec<u32>>,
                             parent: &mut Vec<Vec<Option<(usize, usize, u8)>>>,
                             i: usize| {
            // unit-cost closure: plain BFS layered by current distance
            let mut order: Vec<usize> = (0..q).collect();
            loop {
                order.sort_by_key(|&s| dist[i][s]);
                let mut changed = false;
                for &s in &order {
                    let d = dist[i][s];
                    if d >= INF {
                        continue;
                    }
                    for a in 0..p {
                        if let Some(t) = self.transitions[s][a as usize] {
                            if live[t] && d + 1 < dist[i][t] {
                                dist[i][t] = d + 1;
                                parent[i][t] = Some((i, s, a));
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
        };

        relax_inserts(&mut dist, &mut parent, 0);
        for i in 1..=n {
            let c = w.syms()[i - 1];
            for s in 0..q {
                let d = dist[i - 1][s];
                if d >= INF {
                    continue;
                }
                // delete w[i-1]
                if d + 1 < dist[i][s] {
                    dist[i][s] = d + 1;
                    parent[i][s] = Some((i - 1, s, NONE_SYM));
                }
                for a in 0..p {
                    if let Some(t) = self.transitions[s][a as usize] {
                        if !live[t] {
                            continue;
                        }
                        // match or substitute
                        let cost = d + u32::from(a != c);
                        if cost < dist[i][t] {
                            dist[i][t] = cost;
                            parent[i][t] = Some((i - 1, s, a));
                        }
                    }
                }
            }
            relax_inserts(&mut dist, &mut parent, i);
        }

        let mut best: Option<(u32, usize)> = None;
        for s in 0..q {
            if self.accepting[s] && dist[n][s] < INF {
                match best {
                    Some((bd, _)) if bd <= dist[n][s] => {}
                    _ => best = Some((dist[n][s], s)),
                }
            }
        }
        let Some((d, mut state)) = best else {
            return Ok(None);
        };
        // Reconstruct the emitted word.
        let mut i = n;
        let mut out_rev: Vec<u8> = Vec::new();
        while let Some((pi, ps, sym)) = parent[i][state] {
            if sym != NONE_SYM {
                out_rev.push(sym);
            }
            i = pi;
            state = ps;
        }
        debug_assert!(i == 0 && state == self.start);
        out_rev.reverse();
        let witness = Word::from_syms(self.alphabet.clone(), out_rev)?;
        debug_assert!(self.accepts(&witness));
        Ok(Some((d, witness)))
    }

    /// Enumerate accepted words of each length `0..=n_max` in lexicographic
    /// order, pruning dead prefixes.
    pub fn enumerate(&self, n_max: usize, max_words: u64) -> Result<Vec<Word>> {
        let live = self.live_states();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<u8>)> = Vec::new();
        if live[self.start] {
            stack.push((self.start, Vec::new()));
        }
        while let Some((state, syms)) = stack.pop() {
            if self.accepting[state] {
                if out.len() as u64 >= max_words {
                    return Err(Error::ResourceLimit(format!(
                        "DFA enumeration exceeds {max_words} words"
                    )));
                }
                out.push(Word::from_syms(self.alphabet.clone(), syms.clone())?);
            }
            if syms.len() < n_max {
                for a in (0..self.alphabet.size() as u8).rev() {
                    if let Some(t) = self.transitions[state][a as usize] {
                        if live[t] {
                            let mut next = syms.clone();
                            next.push(a);
                            stack.push((t, next));
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.syms().cmp(b.syms())));
        Ok(out)
    }
}

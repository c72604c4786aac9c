//! Serde schemas for scenario files: shifts, gap sets, potentials,
//! measures, budgets, and the experiment list, plus builders that turn a
//! parsed scenario into live objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::approach::MistakeFunction;
use crate::budget::Budget;
use crate::decomp::{
    beta_decomposition, coded_decomposition, full_shift_decomposition, sgap_decomposition,
    Decomposition, SpecKind,
};
use crate::error::{Error, Result};
use crate::shifts::{BetaShift, CodedShift, FullShift, SGapShift, SSet, SftShift, ShiftLanguage};
use crate::thermo::{MeasureModel, Potential};
use crate::words::{Alphabet, Word};

/// Gap-set schema for S-gap shifts.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GapConfig {
    Evens,
    Odds,
    Residue { modulus: u32, residue: u32 },
    PowersOfTwo,
    Explicit { gaps: Vec<u32> },
}

impl GapConfig {
    pub fn build(&self) -> Result<SSet> {
        let s = match self {
            GapConfig::Evens => SSet::Evens,
            GapConfig::Odds => SSet::Odds,
            GapConfig::Residue { modulus, residue } => SSet::Residue {
                m: *modulus,
                r: *residue,
            },
            GapConfig::PowersOfTwo => SSet::PowersOfTwo,
            GapConfig::Explicit { gaps } => SSet::Explicit(gaps.iter().copied().collect()),
        };
        s.validate()?;
        Ok(s)
    }
}

/// Shift schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ShiftConfig {
    Full {
        symbols: usize,
    },
    Sft {
        symbols: usize,
        forbidden: Vec<String>,
    },
    /// Either a named preset ("golden", "tribonacci") or a decimal β with a
    /// certified precision.
    Beta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preset: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decimal: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precision: Option<u32>,
    },
    Sgap {
        gaps: GapConfig,
    },
    Coded {
        symbols: usize,
        generators: Vec<String>,
    },
}

/// A built shift keeps its concrete type so the builtin decomposition and
/// specialized automata stay reachable.
#[derive(Clone)]
pub enum BuiltShift {
    Full(Arc<FullShift>),
    Sft(Arc<SftShift>),
    Beta(Arc<BetaShift>),
    Sgap(Arc<SGapShift>),
    Coded(Arc<CodedShift>),
}

impl BuiltShift {
    pub fn language(&self) -> Arc<dyn ShiftLanguage> {
        match self {
            BuiltShift::Full(s) => s.clone(),
            BuiltShift::Sft(s) => s.clone(),
            BuiltShift::Beta(s) => s.clone(),
            BuiltShift::Sgap(s) => s.clone(),
            BuiltShift::Coded(s) => s.clone(),
        }
    }

    pub fn alphabet(&self) -> Arc<Alphabet> {
        self.language().alphabet()
    }

    /// The builtin 𝓒ᵖ𝓖𝓒ˢ decomposition for this shift kind.
    pub fn decomposition(&self) -> Result<Decomposition> {
        match self {
            BuiltShift::Full(s) => full_shift_decomposition(s.clone()),
            BuiltShift::Beta(s) => beta_decomposition(s.clone()),
            BuiltShift::Sgap(s) => sgap_decomposition(s.clone()),
            BuiltShift::Coded(s) => coded_decomposition(s.clone()),
            BuiltShift::Sft(_) => Err(Error::Unsupported(
                "no builtin decomposition for general finite-type shifts".into(),
            )),
        }
    }
}

impl ShiftConfig {
    pub fn build(&self) -> Result<BuiltShift> {
        match self {
            ShiftConfig::Full { symbols } => {
                Ok(BuiltShift::Full(Arc::new(FullShift::new(*symbols)?)))
            }
            ShiftConfig::Sft { symbols, forbidden } => {
                let alphabet = Alphabet::digits(*symbols);
                let words = forbidden
                    .iter()
                    .map(|t| Word::parse(&alphabet, t))
                    .collect::<Result<Vec<_>>>()?;
                Ok(BuiltShift::Sft(Arc::new(SftShift::new(alphabet, words)?)))
            }
            ShiftConfig::Beta {
                preset,
                decimal,
                precision,
            } => match (preset, decimal) {
                (Some(name), None) => match name.as_str() {
                    "golden" => Ok(BuiltShift::Beta(Arc::new(BetaShift::golden()))),
                    "tribonacci" => Ok(BuiltShift::Beta(Arc::new(BetaShift::tribonacci()))),
                    other => Err(Error::Parameter(format!("unknown beta preset {other:?}"))),
                },
                (None, Some(text)) => {
                    let spec = crate::shifts::BetaSpec::decimal(text, precision.unwrap_or(40))?;
                    Ok(BuiltShift::Beta(Arc::new(BetaShift::new(spec)?)))
                }
                _ => Err(Error::Parameter(
                    "beta shift needs exactly one of `preset` or `decimal`".into(),
                )),
            },
            ShiftConfig::Sgap { gaps } => Ok(BuiltShift::Sgap(Arc::new(SGapShift::new(
                gaps.build()?,
            )?))),
            ShiftConfig::Coded { symbols, generators } => {
                let alphabet = Alphabet::digits(*symbols);
                let words = generators
                    .iter()
                    .map(|t| Word::parse(&alphabet, t))
                    .collect::<Result<Vec<_>>>()?;
                Ok(BuiltShift::Coded(Arc::new(CodedShift::new(
                    alphabet, words,
                )?)))
            }
        }
    }
}

/// Potential schema; table keys are words spelled in the alphabet.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PotentialConfig {
    Zero,
    Constant { value: f64 },
    Symbol { values: Vec<f64> },
    Table {
        window: usize,
        entries: BTreeMap<String, f64>,
    },
}

impl PotentialConfig {
    pub fn build(&self, alphabet: Arc<Alphabet>) -> Result<Potential> {
        match self {
            PotentialConfig::Zero => Ok(Potential::zero(alphabet)),
            PotentialConfig::Constant { value } => Ok(Potential::constant(alphabet, *value)),
            PotentialConfig::Symbol { values } => Potential::from_symbol_values(alphabet, values),
            PotentialConfig::Table { window, entries } => {
                let mut table = Vec::new();
                for (key, &v) in entries {
                    let w = Word::parse(&alphabet, key)?;
                    if w.len() != *window {
                        return Err(Error::Parameter(format!(
                            "table key {key:?} does not have window length {window}"
                        )));
                    }
                    table.push((w, v));
                }
                Potential::new(alphabet, *window, table)
            }
        }
    }
}

/// Measure schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MeasureConfig {
    Bernoulli {
        weights: Vec<f64>,
    },
    Markov {
        rows: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<Vec<f64>>,
    },
}

impl MeasureConfig {
    pub fn build(&self, alphabet: Arc<Alphabet>) -> Result<MeasureModel> {
        match self {
            MeasureConfig::Bernoulli { weights } => {
                MeasureModel::bernoulli(alphabet, weights.clone())
            }
            MeasureConfig::Markov { rows, initial } => match initial {
                None => MeasureModel::markov(alphabet, rows.clone()),
                Some(q) => MeasureModel::markov_with_initial(alphabet, rows.clone(), q.clone()),
            },
        }
    }
}

/// Mistake-function schema for approachability runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MistakeConfig {
    Zero,
    One,
    Const { value: u64 },
    SqrtCeil,
    /// 2(⌈n/sₙ⌉ + sₙ) with sₙ drawn from the scenario's S-gap set.
    Selector,
}

impl MistakeConfig {
    pub fn build(&self, shift: &BuiltShift) -> Result<MistakeFunction> {
        match self {
            MistakeConfig::Zero => Ok(MistakeFunction::Zero),
            MistakeConfig::One => Ok(MistakeFunction::One),
            MistakeConfig::Const { value } => Ok(MistakeFunction::Const(*value)),
            MistakeConfig::SqrtCeil => Ok(MistakeFunction::SqrtCeil),
            MistakeConfig::Selector => match shift {
                BuiltShift::Sgap(s) => Ok(MistakeFunction::SGapSelector(s.gap_set().clone())),
                _ => Err(Error::Parameter(
                    "the selector mistake function requires an s-gap shift".into(),
                )),
            },
        }
    }
}

/// One empirical-measure constraint; exactly one of the bounds must be set.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintConfig {
    pub potential: PotentialConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_least: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_most: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open: Option<(f64, f64)>,
}

impl ConstraintConfig {
    pub fn build(&self, alphabet: Arc<Alphabet>) -> Result<crate::ldp::Constraint> {
        let relation = match (self.at_least, self.at_most, self.open) {
            (Some(t), None, None) => crate::ldp::Relation::AtLeast(t),
            (None, Some(t), None) => crate::ldp::Relation::AtMost(t),
            (None, None, Some((lo, hi))) => crate::ldp::Relation::Open(lo, hi),
            _ => {
                return Err(Error::Parameter(
                    "constraint needs exactly one of at_least / at_most / open".into(),
                ))
            }
        };
        Ok(crate::ldp::Constraint {
            phi: self.potential.build(alphabet)?,
            relation,
        })
    }
}

fn parse_spec_kind(name: &str) -> Result<SpecKind> {
    match name {
        "w" => Ok(SpecKind::W),
        "s" => Ok(SpecKind::S),
        "gcw" => Ok(SpecKind::GcW),
        "zero" => Ok(SpecKind::Zero),
        other => Err(Error::Parameter(format!(
            "unknown specification property {other:?} (use w, s, gcw, zero)"
        ))),
    }
}

/// Experiment schema; `name` becomes the CSV file stem.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentConfig {
    /// Specification property of the builtin good collection.
    SpecCheck {
        name: String,
        property: String,
        tau: u32,
        m_max: usize,
        n_max: usize,
        #[serde(default = "default_true")]
        expect_holds: bool,
    },
    /// Edit approachability of the builtin good collection under a mistake
    /// function.
    Approachability {
        name: String,
        mistake: MistakeConfig,
        n_max: usize,
        #[serde(default = "default_true")]
        expect_holds: bool,
    },
    /// Weak Gibbs constants of the scenario measure for the scenario
    /// potential at pressure `p_value`.
    Gibbs {
        name: String,
        p_value: f64,
        n_min: usize,
        n_max: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_k_min: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_k_prime_max: Option<f64>,
    },
    /// Finite-n pressure of the scenario potential on the full language.
    Pressure {
        name: String,
        n_min: usize,
        n_max: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<f64>,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    /// Exact decay bracket (and optional sampling) of the scenario measure
    /// on the neighborhood cut out by the constraints.
    LdpDecay {
        name: String,
        constraints: Vec<ConstraintConfig>,
        ns: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target_rate: Option<f64>,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    /// Horseshoe levels of the builtin decomposition: per-level entropy,
    /// optional specification and extendability checks.
    Horseshoe {
        name: String,
        levels: Vec<usize>,
        m_min: usize,
        m_max: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spec_n_max: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        extend_len_max: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        entropy_target: Option<f64>,
        #[serde(default = "default_tol")]
        tol: f64,
    },
}

fn default_true() -> bool {
    true
}

fn default_tol() -> f64 {
    0.05
}

impl ExperimentConfig {
    pub fn name(&self) -> &str {
        match self {
            ExperimentConfig::SpecCheck { name, .. }
            | ExperimentConfig::Approachability { name, .. }
            | ExperimentConfig::Gibbs { name, .. }
            | ExperimentConfig::Pressure { name, .. }
            | ExperimentConfig::LdpDecay { name, .. }
            | ExperimentConfig::Horseshoe { name, .. } => name,
        }
    }

    pub fn spec_kind(property: &str) -> Result<SpecKind> {
        parse_spec_kind(property)
    }
}

/// Budget overlay; unset fields keep their defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_words: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edit_radius: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tuples: Option<u64>,
}

impl BudgetConfig {
    pub fn build(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(v) = self.max_words {
            b.max_words = v;
        }
        if let Some(v) = self.max_edit_radius {
            b.max_edit_radius = v;
        }
        if let Some(v) = self.max_tuples {
            b.max_tuples = v;
        }
        b
    }

    /// Apply a `key=value` override string.
    pub fn apply_override(&mut self, text: &str) -> Result<()> {
        let (key, value) = text.split_once('=').ok_or_else(|| {
            Error::Parameter(format!("budget override {text:?} is not key=value"))
        })?;
        let parse_u64 = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| Error::Parameter(format!("bad budget value {v:?}")))
        };
        match key {
            "max_words" => self.max_words = Some(parse_u64(value)?),
            "max_tuples" => self.max_tuples = Some(parse_u64(value)?),
            "max_edit_radius" => {
                self.max_edit_radius = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| Error::Parameter(format!("bad budget value {value:?}")))?,
                )
            }
            other => {
                return Err(Error::Parameter(format!(
                    "unknown budget key {other:?} (use max_words, max_edit_radius, max_tuples)"
                )))
            }
        }
        Ok(())
    }
}

/// A scenario file: one shift, optional potential and measure, a list of
/// experiments.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetConfig>,
    pub shift: ShiftConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureConfig>,
    pub experiments: Vec<ExperimentConfig>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let scenario: Scenario = serde_json::from_str(text)
            .map_err(|e| Error::Parameter(format!("scenario parse error: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Parameter("scenario name must be nonempty".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for e in &self.experiments {
            if e.name().is_empty() {
                return Err(Error::Parameter("experiment name must be nonempty".into()));
            }
            if !seen.insert(e.name().to_string()) {
                return Err(Error::Parameter(format!(
                    "duplicate experiment name {:?}",
                    e.name()
                )));
            }
            if let ExperimentConfig::SpecCheck { property, .. } = e {
                parse_spec_kind(property)?;
            }
        }
        if let Some(b) = &self.budget {
            let built = b.build();
            if built.max_words == 0 || built.max_tuples == 0 {
                return Err(Error::Parameter("budgets must be positive".into()));
            }
        }
        Ok(())
    }
}

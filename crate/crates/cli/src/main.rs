//! Batch front end: parse a scenario file, run its experiments, and write
//! CSV tables plus a JSON summary and manifest.  Exit status is nonzero iff
//! any assertion-grade experiment fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use shiftkit::approach::{verify_edit_approachability, NearestStrategy};
use shiftkit::budget::Budget;
use shiftkit::config::{BuiltShift, ExperimentConfig, Scenario};
use shiftkit::decomp::{check_specification, Collection, SpecKind};
use shiftkit::error::{Error, Result};
use shiftkit::ldp::{
    check_horseshoe_extendability, horseshoe_build, ldp_decay_exact_over, ldp_decay_sampled,
    NeighborhoodSpec,
};
use shiftkit::shifts::{enumerate_parallel, ShiftLanguage};
use shiftkit::thermo::{gibbs_check, log_partition_sum, MeasureModel, Potential};

#[derive(Parser)]
#[command(name = "shiftkit", version, about = "Scenario runner for shift-space experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON scenario file and write its artifacts.
    Run {
        /// Path to the scenario file
        file: PathBuf,
        /// Directory for output artifacts (default: ./out)
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Worker threads for language enumeration; results are identical
        /// for every value
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Override a budget field, e.g. --budget-override max_words=100000
        #[arg(long = "budget-override")]
        budget_override: Vec<String>,
        /// Override the scenario seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the catalog of builtin shifts, decompositions, and measures.
    ListBuiltins,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListBuiltins => {
            println!("{}", serde_json::to_string_pretty(&catalog()).unwrap());
            ExitCode::SUCCESS
        }
        Command::Run {
            file,
            out_dir,
            threads,
            budget_override,
            seed,
        } => match run_scenario(&file, &out_dir, threads, &budget_override, seed) {
            Ok(all_pass) => {
                if all_pass {
                    ExitCode::SUCCESS
                } else {
                    eprintln!("one or more assertions failed");
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}

/// Deterministic catalog; every sample round-trips through the config
/// schema.
fn catalog() -> Value {
    json!({
        "shifts": [
            {"name": "full", "sample": {"kind": "full", "symbols": 2}},
            {"name": "sft", "sample": {"kind": "sft", "symbols": 2, "forbidden": ["11"]}},
            {"name": "beta", "sample": {"kind": "beta", "preset": "golden"},
             "presets": ["golden", "tribonacci"]},
            {"name": "sgap", "sample": {"kind": "sgap", "gaps": {"kind": "evens"}},
             "gap_kinds": ["evens", "odds", "residue", "powers-of-two", "explicit"]},
            {"name": "coded", "sample": {"kind": "coded", "symbols": 2, "generators": ["1", "10"]}},
            {"name": "factor", "sample": null,
             "note": "block-code images are built programmatically, not from scenario files"}
        ],
        "decompositions": ["full", "beta", "sgap", "coded"],
        "measures": [
            {"name": "bernoulli", "sample": {"kind": "bernoulli", "weights": [0.5, 0.5]}},
            {"name": "markov", "sample": {"kind": "markov",
                "rows": [[0.5, 0.5], [1.0, 0.0]]}}
        ]
    })
}

/// Write via a temp file + rename so partial artifacts never appear.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)
        .and_then(|()| fs::rename(&tmp, path))
        .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display())))
}

fn fmt_f(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v:.12e}")
    }
}

struct Outcome {
    csv_name: String,
    csv: String,
    pass: bool,
    details: Value,
}

fn run_scenario(
    file: &Path,
    out_dir: &Path,
    threads: usize,
    overrides: &[String],
    seed_override: Option<u64>,
) -> Result<bool> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", file.display())))?;
    let scenario = Scenario::from_json(&text)?;

    let mut budget_config = scenario.budget.clone().unwrap_or_default();
    for o in overrides {
        budget_config.apply_override(o)?;
    }
    let budget = budget_config.build();
    let seed = seed_override.unwrap_or(scenario.seed);

    let shift = scenario.shift.build()?;
    let lang = shift.language();
    let alphabet = shift.alphabet();
    let phi = match &scenario.potential {
        Some(p) => p.build(alphabet.clone())?,
        None => Potential::zero(alphabet.clone()),
    };
    let measure = scenario
        .measure
        .as_ref()
        .map(|m| m.build(alphabet.clone()))
        .transpose()?;

    let dir = out_dir.join(&scenario.name);
    fs::create_dir_all(&dir)
        .map_err(|e| Error::Parameter(format!("cannot create {}: {e}", dir.display())))?;

    let mut outcomes = Vec::new();
    for experiment in &scenario.experiments {
        let outcome = run_experiment(
            experiment,
            &shift,
            lang.as_ref(),
            &phi,
            measure.as_ref(),
            seed,
            threads,
            &budget,
        )
        .map_err(|e| Error::Parameter(format!("experiment {:?}: {e}", experiment.name())))?;
        outcomes.push(outcome);
    }

    let mut files = Vec::new();
    let mut assertions = Vec::new();
    let mut all_pass = true;
    for o in &outcomes {
        let path = dir.join(&o.csv_name);
        write_atomic(&path, &o.csv)?;
        files.push(o.csv_name.clone());
        assertions.push(json!({"name": o.csv_name.trim_end_matches(".csv"),
                               "pass": o.pass}));
        all_pass &= o.pass;
    }

    let summary = json!({
        "scenario": scenario.name,
        "seed": seed,
        "pass": all_pass,
        "experiments": outcomes.iter().map(|o| json!({
            "name": o.csv_name.trim_end_matches(".csv"),
            "pass": o.pass,
            "details": o.details,
        })).collect::<Vec<_>>(),
    });
    write_atomic(&dir.join("summary.json"), &format!(
        "{}\n",
        serde_json::to_string_pretty(&summary).unwrap()
    ))?;
    files.push("summary.json".to_string());

    let manifest = json!({
        "tool": "shiftkit",
        "version": env!("CARGO_PKG_VERSION"),
        "scenario": scenario.name,
        "seed": seed,
        "budget": {
            "max_words": budget.max_words,
            "max_edit_radius": budget.max_edit_radius,
            "max_tuples": budget.max_tuples,
        },
        "outputs": files,
        "assertions": assertions,
        "pass": all_pass,
    });
    write_atomic(&dir.join("manifest.json"), &format!(
        "{}\n",
        serde_json::to_string_pretty(&manifest).unwrap()
    ))?;

    Ok(all_pass)
}

fn require_measure<'a>(m: Option<&'a MeasureModel>) -> Result<&'a MeasureModel> {
    m.ok_or_else(|| Error::Parameter("this experiment needs a `measure` in the scenario".into()))
}

#[allow(clippy::too_many_arguments)]
fn run_experiment(
    experiment: &ExperimentConfig,
    shift: &BuiltShift,
    lang: &dyn ShiftLanguage,
    phi: &Potential,
    measure: Option<&MeasureModel>,
    seed: u64,
    threads: usize,
    budget: &Budget,
) -> Result<Outcome> {
    match experiment {
        ExperimentConfig::SpecCheck {
            name,
            property,
            tau,
            m_max,
            n_max,
            expect_holds,
        } => {
            let decomp = shift.decomposition()?;
            let kind = ExperimentConfig::spec_kind(property)?;
            let report =
                check_specification(lang, &decomp.cores, kind, *tau, *m_max, *n_max, budget)?;
            let mut csv = String::from("property,tau,m_max,n_max,holds,tuples_tested\n");
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                report.property, report.tau, report.m_max, report.n_max, report.holds,
                report.tuples_tested
            ));
            Ok(Outcome {
                csv_name: format!("{name}.csv"),
                csv,
                pass: report.holds == *expect_holds,
                details: json!({
                    "holds": report.holds,
                    "expected": expect_holds,
                    "counterexample": report.counterexample,
                }),
            })
        }
        ExperimentConfig::Approachability {
            name,
            mistake,
            n_max,
            expect_holds,
        } => {
            let g = mistake.build(shift)?;
            let decomp = shift.decomposition()?;
            // prefer an automaton oracle for S-gap cores; everything else
            // searches edit balls against the good collection
            let report = match shift {
                BuiltShift::Sgap(s) => {
                    let dfa = match s.core_dfa() {
                        Ok(d) => d,
                        Err(_) => {
                            let slack = g.eval(*n_max as u64)?;
                            s.core_dfa_truncated(*n_max as u32 + slack as u32)
                        }
                    };
                    verify_edit_approachability(
                        lang,
                        NearestStrategy::Dfa(&dfa),
                        &g,
                        *n_max,
                        budget,
                    )?
                }
                _ => verify_edit_approachability(
                    lang,
                    NearestStrategy::Ball(&decomp.cores),
                    &g,
                    *n_max,
                    budget,
                )?,
            };
            Ok(Outcome {
                csv_name: format!("{name}.csv"),
                csv: report.to_csv(),
                pass: report.holds == *expect_holds,
                details: json!({
                    "holds": report.holds,
                    "expected": expect_holds,
                    "mistake": format!("{}", g.describe()),
                    "counterexample": report.counterexample,
                }),
            })
        }
        ExperimentConfig::Gibbs {
            name,
            p_value,
            n_min,
            n_max,
            expect_k_min,
            expect_k_prime_max,
        } => {
            let m = require_measure(measure)?;
            let decomp = shift.decomposition()?;
            let report =
                gibbs_check(m, phi, *p_value, lang, &decomp.cores, *n_min..=*n_max, budget)?;
            let mut csv = String::from("n,lower_ratio,upper_ratio\n");
            for row in &report.rows {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    row.n,
                    row.lower.map(fmt_f).unwrap_or_default(),
                    fmt_f(row.upper)
                ));
            }
            let mut pass = report.pass;
            if let Some(k) = expect_k_min {
                pass &= report.k_lower >= *k - 1e-9;
            }
            if let Some(kp) = expect_k_prime_max {
                pass &= report.k_upper <= *kp + 1e-9;
            }
            Ok(Outcome {
                csv_name: format!("{name}.csv"),
                csv,
                pass,
                details: json!({
                    "k_lower": report.k_lower,
                    "k_upper": report.k_upper,
                    "pressure_used": report.pressure_used,
                }),
            })
        }
        ExperimentConfig::Pressure {
            name,
            n_min,
            n_max,
            target,
            tol,
        } => {
            if *n_min == 0 || n_min > n_max {
                return Err(Error::Parameter("need 1 ≤ n_min ≤ n_max".into()));
            }
            let mut csv = String::from("n,log_partition,normalized,ratio\n");
            let mut logs = Vec::new();
            for n in *n_min..=*n_max {
                let words = enumerate_parallel(lang, n, budget, threads)?;
                let log = log_partition_sum(lang, &words, phi)?;
                let ratio = logs
                    .last()
                    .map(|&prev: &f64| log - prev)
                    .unwrap_or(f64::NAN);
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    n,
                    fmt_f(log),
                    fmt_f(log / n as f64),
                    if logs.is_empty() { String::new() } else { fmt_f(ratio) }
                ));
                logs.push(log);
            }
            let estimate = if logs.len() >= 2 {
                logs[logs.len() - 1] - logs[logs.len() - 2]
            } else {
                logs[0]
            };
            let pass = match target {
                Some(t) => (estimate - t).abs() <= *tol,
                None => true,
            };
            Ok(Outcome {
                csv_name: format!("{name}.csv"),
                csv,
                pass,
                details: json!({
                    "ratio_estimate": estimate,
                    "target": target,
                    "tol": tol,
                }),
            })
        }
        ExperimentConfig::LdpDecay {
            name,
            constraints,
            ns,
            samples,
            target_rate,
            tol,
        } => {
            let m = require_measure(measure)?;
            let built: Vec<_> = constraints
                .iter()
                .map(|c| c.build(lang.alphabet()))
                .collect::<Result<_>>()?;
            let u = NeighborhoodSpec::new(built);
            let sampled_header = if samples.is_some() {
                ",sample_estimate,wilson_low,wilson_high"
            } else {
                ""
            };
            let mut csv = format!(
                "n,lower,upper,lower_rate,upper_rate{sampled_header}\n"
            );
            let mut last_rates = (f64::NAN, f64::NAN);
            for &n in ns {
                if n == 0 {
                    return Err(Error::Parameter("decay length must be ≥ 1".into()));
                }
                let words = enumerate_parallel(lang, n, budget, threads)?;
                let bracket = ldp_decay_exact_over(m, lang, &u, n, &words)?;
                let lower_rate = bracket.log_lower / n as f64;
                let upper_rate = bracket.log_upper / n as f64;
                last_rates = (lower_rate, upper_rate);
                csv.push_str(&format!(
                    "{},{},{},{},{}",
                    n,
                    fmt_f(bracket.lower),
                    fmt_f(bracket.upper),
                    fmt_f(lower_rate),
                    fmt_f(upper_rate)
                ));
                if let Some(count) = samples {
                    let s = ldp_decay_sampled(m, &u, n, *count, seed)?;
                    csv.push_str(&format!(
                        ",{},{},{}",
                        fmt_f(s.estimate),
                        fmt_f(s.wilson_low),
                        fmt_f(s.wilson_high)
                    ));
                }
                csv.push('\n');
            }
            let pass = match target_rate {
                Some(t) => {
                    // finite-n sandwich at the largest tested length
                    last_rates.0 >= t - tol && last_rates.1 <= t + tol
                }
                None => true,
            };
            Ok(Outcome {
                csv_name: format!("{name}.csv"),
                csv,
                pass,
                details: json!({
                    "last_lower_rate": last_rates.0,
                    "last_upper_rate": last_rates.1,
                    "target_rate": target_rate,
                    "tol": tol,
                }),
            })
        }
        ExperimentConfig::Horseshoe {
            name,
            levels,
            m_min,
            m_max,
            spec_n_max,
            extend_len_max,
            entropy_target,
            tol,
        } => {
            let decomp = shift.decomposition()?;
            let mut csv = String::from("level,entropy_estimate,spec_holds,extend_holds\n");
            let mut pass = true;
            let mut prev = f64::NEG_INFINITY;
            let mut last = f64::NAN;
            for &n in levels {
                let level =
                    std::sync::Arc::new(horseshoe_build(&decomp, n, budget)?);
                let level_lang = level.clone().language();
                let mut logs = Vec::new();
                for m in *m_min..=*m_max {
                    let words = enumerate_parallel(&level_lang, m, budget, threads)?;
                    logs.push(log_partition_sum(&level_lang, &words, phi)?);
                }
                let estimate = if logs.len() >= 2 {
                    logs[logs.len() - 1] - logs[logs.len() - 2]
                } else {
                    logs[0]
                };
                pass &= estimate >= prev - 1e-9;
                prev = estimate;
                last = estimate;
                let spec_holds = match spec_n_max {
                    Some(n_max) => {
                        let inner = level.clone();
                        let all = Collection::new("level", move |w| inner.level_contains(w));
                        let report = check_specification(
                            &level_lang,
                            &all,
                            SpecKind::W,
                            3 * level.tau + 2 * n as u32,
                            2,
                            *n_max,
                            budget,
                        )?;
                        pass &= report.holds;
                        Some(report.holds)
                    }
                    None => None,
                };
                let extend_holds = match extend_len_max {
                    Some(len_max) => {
                        let report =
                            check_horseshoe_extendability(&level, &decomp, *len_max, budget)?;
                        pass &= report.holds;
                        Some(report.holds)
                    }
                    None => None,
                };
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    n,
                    fmt_f(estimate),
                    spec_holds.map(|b| b.to_string()).unwrap_or_default(),
                    extend_holds.map(|b| b.to_string()).unwrap_or_default()
                ));
            }
            if let Some(t) = entropy_target {
                pass &= (last - t).abs() <= *tol;
            }
            Ok(Outcome {
                csv_name: format!("{name}.csv"),
                csv,
                pass,
                details: json!({
                    "last_estimate": last,
                    "entropy_target": entropy_target,
                    "tol": tol,
                }),
            })
        }
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use causalteam::formula::{expand_sugar, parse_co_with, parse_pco, parse_pco_with, parse_with};
use causalteam::io::{
    model_to_json, parse_json, read_class, read_model, read_sem, sem_to_json, signature_from_json,
};
use causalteam::rational::format_fraction;
use causalteam::rescaling::{canonical, check_definability, psi_formula, DEFAULT_CAP};
use causalteam::sem::{markov_check, multiteam_to_sem, sem_to_multiteam};
use causalteam::suite::run_suite;
use causalteam::transforms::{classify_rung, compile_cneg, normal_form, LeafKind};
use causalteam::{
    intervene, prob, restrict, satisfies_formula, satisfies_traced, CausalMultiteam, Pair, PcoFormula,
    Signature,
};

/// `println!` that stops quietly when the reader has gone away.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser, Debug)]
#[command(name = "causalteam", version, about = "Model checking for probabilistic causal team logic")]
pub struct Cli {
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a model satisfies a formula (exit 0 true, 1 false).
    Check {
        model: PathBuf,
        formula: Option<String>,
        /// Read one formula per line instead; blank lines and `#` comments are skipped.
        #[arg(long, conflicts_with = "formula")]
        file: Option<PathBuf>,
        /// Explain the verdict clause by clause.
        #[arg(long)]
        trace: bool,
    },
    /// Exact probability of an event.
    Prob { model: PathBuf, event: String },
    /// Apply an intervention such as `X=1,Y=0` and print the model.
    Intervene {
        model: PathBuf,
        pairs: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Keep the rows satisfying an event and print the model.
    Restrict {
        model: PathBuf,
        event: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normal form and rung of a formula.
    Nf {
        formula: String,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Fragment and per-leaf rungs of a formula.
    Classify {
        formula: String,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Weak contradictory negation of a formula.
    Cneg {
        formula: String,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Convert a SEM file into a model file.
    FromSem {
        sem: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a model into a SEM file.
    ToSem {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pairwise independence of the exogenous variables (exit 0 holds, 1 violated).
    Markov { model: PathBuf },
    /// Smallest rescaling of a model.
    RescaleCanon {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The formula capturing a finite class up to rescaling.
    Psi { class: PathBuf },
    /// Compare the models of the class formula with the rescaling closure (exit 0 agree, 1 differ).
    DefineCheck {
        class: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Run the property suite (exit 0 all pass, 1 otherwise).
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiplies the number of random cases.
        #[arg(long, default_value_t = 1)]
        scale: usize,
    },
}

/// A signature file is either a bare signature object or any file with a
/// `signature` field.
fn read_signature(path: &Path) -> Result<Signature> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let v = parse_json(&text)?;
    let sig = v.get("signature").unwrap_or(&v);
    Ok(signature_from_json(sig)?)
}

fn parse_statement(text: &str, sig: Option<&Signature>) -> Result<PcoFormula> {
    Ok(match sig {
        Some(s) => parse_pco_with(text, s)?,
        None => parse_pco(text)?,
    })
}

fn parse_pairs(text: &str, sig: &Signature) -> Result<Vec<Pair>> {
    text.split(',')
        .map(|item| {
            let (v, x) = item.split_once('=').ok_or_else(|| anyhow!("`{item}` is not of the form VAR=VALUE"))?;
            let (v, x) = (v.trim(), x.trim());
            sig.pair(v, x).map_err(|e| anyhow!("intervention `{item}`: {e}"))?;
            Ok((v.to_string(), x.to_string()))
        })
        .collect()
}

fn emit_model(value: Value, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&value)?;
    match output {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| anyhow!("{}: {e}", p.display()))?,
        None => out!("{text}"),
    }
    Ok(())
}

fn print_json(v: Value) {
    out!("{v}");
}

fn kind_name(k: LeafKind) -> &'static str {
    match k {
        LeafKind::BareAtom => "probability",
        LeafKind::Rung1 => "conditional probability",
        LeafKind::Rung2 => "do expression",
        LeafKind::Rung3 => "Pearl counterfactual",
    }
}

/// The fragment name and, unless extension atoms remain, the formula with
/// abbreviations expanded.
fn fragment(f: &PcoFormula, sig: Option<&Signature>) -> Result<(&'static str, Option<PcoFormula>)> {
    if f.is_core() {
        return Ok(("core", Some(f.clone())));
    }
    let expanded = expand_sugar(f, sig)?;
    Ok(if expanded.is_core() { ("abbreviation", Some(expanded)) } else { ("extension", None) })
}

fn check_one(m: &CausalMultiteam, text: &str, trace: bool) -> Result<(bool, Option<String>)> {
    let f = parse_with(text, m.signature())?;
    if trace {
        if let Some(p) = f.to_pco() {
            let r = satisfies_traced(m, &p)?;
            return Ok((r.verdict, r.trace.map(|t| t.to_string())));
        }
    }
    let r = satisfies_formula(m, &f)?;
    let note = trace.then(|| "event formula checked row by row\n".to_string());
    Ok((r.verdict, note))
}

pub fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Check { model, formula, file, trace } => {
            let m = read_model(&model)?;
            let lines: Vec<String> = match (formula, file) {
                (Some(f), None) => vec![f],
                (None, Some(p)) => std::fs::read_to_string(&p)
                    .map_err(|e| anyhow!("{}: {e}", p.display()))?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(str::to_string)
                    .collect(),
                _ => bail!("give a formula or --file"),
            };
            let mut all = true;
            let mut results = Vec::new();
            for line in &lines {
                let (v, t) = check_one(&m, line, trace)?;
                all &= v;
                if json {
                    results.push(json!({ "formula": line, "verdict": v, "trace": t }));
                } else {
                    out!("{v}");
                    if let Some(t) = t {
                        out!("{}", t.trim_end());
                    }
                }
            }
            if json {
                print_json(if results.len() == 1 { results.remove(0) } else { json!({ "results": results }) });
            }
            Ok(all)
        }
        Command::Prob { model, event } => {
            let m = read_model(&model)?;
            let alpha = parse_co_with(&event, m.signature())?;
            let p = format_fraction(&prob(&m, &alpha)?);
            if json {
                print_json(json!({ "event": event, "probability": p }));
            } else {
                out!("{p}");
            }
            Ok(true)
        }
        Command::Intervene { model, pairs, output } => {
            let m = read_model(&model)?;
            let p = parse_pairs(&pairs, m.signature())?;
            emit_model(model_to_json(&intervene(&m, &p)?), output.as_deref())?;
            Ok(true)
        }
        Command::Restrict { model, event, output } => {
            let m = read_model(&model)?;
            let alpha = parse_co_with(&event, m.signature())?;
            emit_model(model_to_json(&restrict(&m, &alpha)?), output.as_deref())?;
            Ok(true)
        }
        Command::Nf { formula, sig } => {
            let sig = sig.map(|p| read_signature(&p)).transpose()?;
            let f = parse_statement(&formula, sig.as_ref())?;
            let core = match fragment(&f, sig.as_ref())? {
                (_, Some(core)) => core,
                (_, None) => {
                    let msg = format!("`{formula}` uses extension atoms, which have no normal form");
                    return Err(causalteam::Error::UnsupportedNode(msg).into());
                }
            };
            let nf = normal_form(&core)?;
            let rung = classify_rung(&nf);
            let text = nf.to_formula().to_string();
            if json {
                let leaves: Vec<Value> = nf
                    .leaves()
                    .iter()
                    .map(|l| json!({ "kind": kind_name(l.kind), "rung": l.kind.rung(), "formula": l.formula.to_string() }))
                    .collect();
                print_json(json!({ "normal_form": text, "rung": rung.max_rung, "leaves": leaves }));
            } else {
                out!("{text}");
                out!("rung {}", rung.max_rung);
            }
            Ok(true)
        }
        Command::Classify { formula, sig } => {
            let sig = sig.map(|p| read_signature(&p)).transpose()?;
            let f = parse_statement(&formula, sig.as_ref())?;
            let (frag, core) = fragment(&f, sig.as_ref())?;
            let nf = core.map(|c| normal_form(&c)).transpose()?;
            if json {
                let mut v = json!({ "fragment": frag });
                if let Some(nf) = &nf {
                    let leaves: Vec<Value> = nf
                        .leaves()
                        .iter()
                        .map(|l| json!({ "kind": kind_name(l.kind), "rung": l.kind.rung(), "formula": l.formula.to_string() }))
                        .collect();
                    v["rung"] = json!(classify_rung(nf).max_rung);
                    v["leaves"] = json!(leaves);
                }
                print_json(v);
            } else {
                out!("fragment {frag}");
                match &nf {
                    Some(nf) => {
                        out!("rung {}", classify_rung(nf).max_rung);
                        for l in nf.leaves() {
                            out!("{}\t{}\t{}", l.kind.rung(), kind_name(l.kind), l.formula);
                        }
                    }
                    None => out!("rung undefined (extension atoms have no normal form)"),
                }
            }
            Ok(true)
        }
        Command::Cneg { formula, sig } => {
            let sig = sig.map(|p| read_signature(&p)).transpose()?;
            let f = parse_statement(&formula, sig.as_ref())?;
            let neg = compile_cneg(&f, sig.as_ref())?.to_string();
            if json {
                print_json(json!({ "formula": formula, "negation": neg }));
            } else {
                out!("{neg}");
            }
            Ok(true)
        }
        Command::FromSem { sem, output } => {
            let s = read_sem(&sem)?;
            emit_model(model_to_json(&sem_to_multiteam(&s)?), output.as_deref())?;
            Ok(true)
        }
        Command::ToSem { model, output } => {
            let m = read_model(&model)?;
            emit_model(sem_to_json(&multiteam_to_sem(&m)?), output.as_deref())?;
            Ok(true)
        }
        Command::Markov { model } => {
            let m = read_model(&model)?;
            let r = markov_check(&m)?;
            let pair = |p: &Pair| format!("{}={}", p.0, p.1);
            if json {
                let vs: Vec<Value> = r
                    .violations
                    .iter()
                    .map(|v| {
                        json!({
                            "left": pair(&v.left),
                            "right": pair(&v.right),
                            "joint": format_fraction(&v.joint),
                            "product": format_fraction(&v.product),
                        })
                    })
                    .collect();
                print_json(json!({ "holds": r.holds(), "violations": vs }));
            } else if r.holds() {
                out!("holds");
            } else {
                out!("violated");
                for v in &r.violations {
                    out!(
                        "{} {}\tjoint {}\tproduct {}",
                        pair(&v.left),
                        pair(&v.right),
                        format_fraction(&v.joint),
                        format_fraction(&v.product)
                    );
                }
            }
            Ok(r.holds())
        }
        Command::RescaleCanon { model, output } => {
            let m = read_model(&model)?;
            emit_model(model_to_json(&canonical(&m)), output.as_deref())?;
            Ok(true)
        }
        Command::Psi { class } => {
            let k = read_class(&class)?;
            let psi = psi_formula(&k)?.to_string();
            if json {
                print_json(json!({ "members": k.members().len(), "psi": psi }));
            } else {
                out!("{psi}");
            }
            Ok(true)
        }
        Command::DefineCheck { class, bound, cap } => {
            let k = read_class(&class)?;
            let r = check_definability(&k, bound, cap)?;
            if json {
                let ds: Vec<Value> = r
                    .discrepancies
                    .iter()
                    .map(|d| {
                        json!({ "model": model_to_json(&d.model), "satisfies_psi": d.satisfies_psi, "in_closure": d.in_closure })
                    })
                    .collect();
                print_json(json!({
                    "bound": bound,
                    "models_checked": r.models_checked,
                    "satisfying_psi": r.satisfying,
                    "in_closure": r.expected,
                    "agrees": r.agrees(),
                    "discrepancies": ds,
                }));
            } else {
                out!("bound {bound}");
                out!("models checked {}", r.models_checked);
                out!("satisfying psi {}", r.satisfying);
                out!("in closure or empty {}", r.expected);
                out!("{}", if r.agrees() { "agrees" } else { "differs" });
                for d in &r.discrepancies {
                    out!("discrepancy: psi {}, closure {}", d.satisfies_psi, d.in_closure);
                    out!("{}", d.model.to_string().trim_end());
                }
            }
            Ok(r.agrees())
        }
        Command::Suite { seed, scale } => {
            let r = run_suite(seed, scale)?;
            if json {
                let ps: Vec<Value> = r
                    .properties
                    .iter()
                    .map(|p| {
                        json!({
                            "name": p.name,
                            "passed": p.passed(),
                            "cases": p.cases,
                            "failed": p.failed,
                            "failures": p.failures,
                            "seconds": p.elapsed.as_secs_f64(),
                        })
                    })
                    .collect();
                print_json(json!({ "seed": seed, "passed": r.passed(), "properties": ps }));
            } else {
                out!("seed {seed}");
                for p in &r.properties {
                    out!(
                        "{} {}: {} cases, {} failed ({:.2}s)",
                        if p.passed() { "PASS" } else { "FAIL" },
                        p.name,
                        p.cases,
                        p.failed,
                        p.elapsed.as_secs_f64()
                    );
                    for f in &p.failures {
                        out!("  {f}");
                    }
                }
            }
            Ok(r.passed())
        }
    }
}


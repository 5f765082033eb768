//! Command implementations behind the `syzchain` binary. Each command maps a
//! [`RunConfig`] to a JSON document and a text rendering; the JSON document
//! echoes the config so a report can be regenerated from itself.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chowk::{bezout_h2, c_from_ch, ChernVector, ChowClass};
use crate::curvebundles::{
    butler_kernel_invariants, restriction_bookkeeping, CurveBundleInvariants, RestrictionReport,
};
use crate::error::{Error, Result};
use crate::exact::field::format_rational;
use crate::exact::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::resolver::{
    build_chain, genericity_experiment, uniformity_experiment, Certification, ChainConfig, ChainReport, Mode,
    SampleOutcome, VPolicy,
};
use crate::schemes::{builtin, parse_input, SubschemeData, SubschemeInput};

/// Prime used when neither `--prime` nor `SYZCHAIN_PRIME` is given.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    Resolve {
        #[serde(skip_serializing_if = "Option::is_none")]
        builtin: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        input: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        d: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
        mode: Mode,
        policy: VPolicy,
        hoppe: bool,
    },
    Verify(Suite),
    Butler {
        g: i64,
        r: i64,
        deg: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "suite", rename_all = "lowercase")]
pub enum Suite {
    Whitney {
        trials: usize,
    },
    Genericity {
        r: usize,
        n: usize,
        v: usize,
        trials: usize,
    },
    Bezout {
        m1: i64,
        m2: i64,
    },
    Uniformity {
        d: u32,
        m: u32,
        points: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub prime: u64,
    pub seed: u64,
    pub format: Format,
    pub verbosity: u8,
}

/// What a command produced. `passed` is false when a verification suite
/// found a violated assertion.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

impl CommandOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("reports serialize") + "\n",
            Format::Text => self.text.clone(),
        }
    }
}

/// Machine-readable error document.
pub fn error_json(e: &Error) -> Value {
    json!({
        "error": {
            "code": e.code(),
            "exit_code": e.exit_code(),
            "message": e.to_string(),
            "hint": hint(e),
        }
    })
}

/// What to try next after an error.
pub fn hint(e: &Error) -> Option<String> {
    match e {
        Error::Threshold { minimal_m: Some(m), .. } => Some(format!("rerun with --m {m}")),
        Error::Threshold { .. } => Some("no twist up to the cap works; try another polarization --d".into()),
        Error::Genericity { seed, .. } => Some(format!("rerun with a different --seed (this run used {seed})")),
        Error::Codimension { .. } => Some("pass a subscheme of codimension at least two".into()),
        Error::Budget(_) => Some("use numeric mode or a smaller instance".into()),
        _ => None,
    }
}

pub fn execute(cfg: &RunConfig) -> Result<CommandOutput> {
    let echo = serde_json::to_value(cfg).expect("config serializes");
    let mut out = match &cfg.command {
        Command::Resolve { .. } => resolve(cfg)?,
        Command::Verify(suite) => verify(suite, cfg)?,
        Command::Butler { g, r, deg } => butler(*g, *r, *deg)?,
    };
    if let Value::Object(map) = &mut out.json {
        map.insert("config".into(), echo);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
struct ResolveReport {
    field: String,
    chain: ChainReport,
    restriction: Vec<RestrictionReport>,
}

fn load_input(path: &str) -> Result<SubschemeInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    parse_input(&text)
}

fn resolve(cfg: &RunConfig) -> Result<CommandOutput> {
    let Command::Resolve {
        builtin: name,
        input,
        n,
        d,
        ..
    } = &cfg.command
    else {
        unreachable!()
    };
    let file = match (name, input) {
        (Some(_), Some(_)) => return Err(Error::Input("--builtin and --input are exclusive".into())),
        (None, None) => return Err(Error::Input("one of --builtin or --input is required".into())),
        (_, Some(path)) => Some(load_input(path)?),
        _ => None,
    };
    if let (Some(f), Some(n)) = (&file, n) {
        if f.ambient != *n {
            return Err(Error::Input(format!(
                "--n {n} contradicts ambient: {} in the input file",
                f.ambient
            )));
        }
    }
    let d = d
        .or(file.as_ref().and_then(|f| f.polarization))
        .ok_or_else(|| Error::Input("--d is required unless the input file sets polarization".into()))?;
    match file.as_ref().and_then(|f| f.field) {
        Some(FieldDescriptor::Rational) => resolve_over(Rationals, cfg, name, file.as_ref(), d),
        _ => resolve_over(PrimeField::new(cfg.prime)?, cfg, name, file.as_ref(), d),
    }
}

fn resolve_over<F: Field>(
    field: F,
    cfg: &RunConfig,
    name: &Option<String>,
    file: Option<&SubschemeInput>,
    d: u32,
) -> Result<CommandOutput> {
    let Command::Resolve {
        n,
        m,
        mode,
        policy,
        hoppe,
        input,
        ..
    } = &cfg.command
    else {
        unreachable!()
    };
    let z: SubschemeData<F> = match (name, file) {
        (Some(name), _) => builtin(name, field.clone(), *n)?,
        (None, Some(f)) => f.build(field.clone(), input.as_deref().unwrap_or("input"))?,
        _ => unreachable!(),
    };
    let mut chain_cfg = ChainConfig::new(d)
        .with_policy(*policy)
        .with_mode(*mode)
        .with_seed(cfg.seed)
        .with_hoppe(*hoppe);
    chain_cfg.m = *m;
    let chain = build_chain(&z, &chain_cfg)?;
    let restriction = chain
        .stages
        .iter()
        .filter(|s| s.flags.restriction_injective)
        .map(|s| restriction_bookkeeping(s, &chain.polarization))
        .collect::<Result<Vec<_>>>()?;
    let report = ResolveReport {
        field: field.descriptor().to_string(),
        chain: chain.report(),
        restriction,
    };
    let passed = report.chain.residual_zero && report.chain.stages.iter().all(|s| s.whitney);
    let text = resolve_text(&report);
    Ok(CommandOutput {
        json: serde_json::to_value(&report).expect("report serializes"),
        text,
        passed,
    })
}

fn cert(c: Certification) -> &'static str {
    match c {
        Certification::Certified => "certified",
        Certification::CheckedUncertified => "unchecked",
        Certification::Sampled => "sampled",
        Certification::Assumed => "assumed",
        Certification::Failed => "FAILED",
    }
}

fn resolve_text(r: &ResolveReport) -> String {
    let c = &r.chain;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} in P^{} over {}, H = {}L, g(C) = {}, chain length {}",
        c.label, c.n, r.field, c.d, c.genus, c.length
    );
    let _ = writeln!(
        s,
        "{:>2} {:>3} {:>4} {:>5} {:>5} {:>5}  {:<20} {:<9} {:<10} injective",
        "i", "m", "M_i", "h0", "dimV", "rank", "c(K_i)", "slope", "generates"
    );
    for st in &c.stages {
        let chern = format!("{:?}", st.chern);
        let _ = writeln!(
            s,
            "{:>2} {:>3} {:>4} {:>5} {:>5} {:>5}  {:<20} {:<9} {:<10} {}",
            st.i,
            st.m,
            st.cumulative_twist,
            st.h0,
            st.dim_v,
            st.rank,
            chern,
            st.slope,
            cert(st.flags.generates),
            if st.flags.restriction_injective { "yes" } else { "no" }
        );
        for note in &st.flags.notes {
            let _ = writeln!(s, "   note: {note}");
        }
        if let Some(lf) = &st.flags.locally_free {
            let _ = writeln!(s, "   local freeness: {}", serde_json::to_string(lf).unwrap());
        }
        if let Some(stab) = &st.flags.stability {
            let _ = writeln!(s, "   stability: {}", serde_json::to_string(stab).unwrap());
        }
    }
    let _ = writeln!(
        s,
        "terminal E = K_{}({}L): rank {}, c = {:?}, locally free: {}",
        c.length - 1,
        c.terminal.twist,
        c.terminal.rank,
        c.terminal.chern,
        cert(c.terminal.locally_free)
    );
    for rr in &r.restriction {
        let _ = writeln!(
            s,
            "K_{}|C: rank {}, degree {}, slope {}{}",
            rr.stage,
            rr.restricted.rank,
            rr.restricted.degree,
            format_rational(&rr.restricted.slope),
            match rr.agree {
                Some(true) => ", matches Butler's M_E".to_string(),
                Some(false) => ", DISAGREES with Butler's M_E".to_string(),
                None => format!(" ({})", rr.notes.join("; ")),
            }
        );
    }
    let _ = writeln!(s, "ch(I_Z) = {}", c.ch_ideal);
    let _ = writeln!(s, "alternating character residual: {}", c.residual);
    s
}

fn butler(g: i64, r: i64, deg: i64) -> Result<CommandOutput> {
    let e = CurveBundleInvariants::semistable(g, r, deg)?;
    let m = butler_kernel_invariants(&e)?;
    let text = format!(
        "E:   g = {g}, rank {}, degree {}, slope {}, h0 = {}\nM_E: rank {}, degree {}, slope {}, stable by Butler\n",
        e.rank,
        e.degree,
        format_rational(&e.slope),
        e.h0.unwrap(),
        m.rank,
        m.degree,
        format_rational(&m.slope)
    );
    Ok(CommandOutput {
        json: json!({ "bundle": e, "kernel": m }),
        text,
        passed: true,
    })
}

fn verify(suite: &Suite, cfg: &RunConfig) -> Result<CommandOutput> {
    match *suite {
        Suite::Whitney { trials } => {
            let failures = whitney_suite(trials, cfg.seed);
            let passed = failures.is_empty();
            let text = format!(
                "whitney: {trials} trials, {} failures: {}\n{}",
                failures.len(),
                if passed { "pass" } else { "FAIL" },
                failures.join("\n")
            );
            Ok(CommandOutput {
                json: json!({ "suite": "whitney", "trials": trials, "failures": failures, "passed": passed }),
                text,
                passed,
            })
        }
        Suite::Genericity { r, n, v, trials } => {
            let field = PrimeField::new(cfg.prime)?;
            let mut runs = vec![genericity_experiment(&field, r, n, v, trials, cfg.seed)?];
            let ok = |rep: &crate::resolver::GenericityReport| {
                if rep.hypothesis {
                    rep.failures <= 1
                } else {
                    rep.failures > 0
                }
            };
            if !ok(&runs[0]) && runs[0].hypothesis {
                runs.push(genericity_experiment(
                    &field,
                    r,
                    n,
                    v,
                    trials,
                    cfg.seed.wrapping_add(1),
                )?);
            }
            let last = runs.last().unwrap();
            let passed = ok(last);
            let text = format!(
                "genericity r={r} n={n} v={v}: {} of {trials} trials failed to generate (hypothesis v >= r+n {}; bound {:.4}): {}\n",
                last.failures,
                if last.hypothesis { "holds" } else { "violated" },
                last.expected_failures_bound,
                if passed { "pass" } else { "FAIL" }
            );
            Ok(CommandOutput {
                json: json!({ "suite": "genericity", "runs": runs, "passed": passed }),
                text,
                passed,
            })
        }
        Suite::Bezout { m1, m2 } => {
            let c = bezout_h2(m1, m2)?;
            let text = format!(
                "({}, {}): {}·{} + ({})·{} = 1\n",
                c.a,
                c.b,
                c.a,
                m1 * m1 - 1,
                c.b,
                m2 * m2 - 1
            );
            Ok(CommandOutput {
                json: json!({ "suite": "bezout", "certificate": c, "holds": c.holds(), "passed": c.holds() }),
                text,
                passed: c.holds(),
            })
        }
        Suite::Uniformity { d, m, points } => {
            let rep = uniformity_experiment(PrimeField::new(cfg.prime)?, d, m, points, cfg.seed)?;
            let mut text = String::new();
            for s in &rep.samples {
                match s {
                    SampleOutcome::Built { point, invariants } => {
                        let _ = writeln!(
                            text,
                            "({}): dimV {}, rank {}, c1 {}, c2 {}",
                            point.join(":"),
                            invariants.dim_v,
                            invariants.rank,
                            invariants.c1,
                            invariants.c2
                        );
                    }
                    SampleOutcome::Failed { point, code } => {
                        let _ = writeln!(text, "({}): error {code}", point.join(":"));
                    }
                }
            }
            let _ = writeln!(text, "uniform: {}", if rep.uniform { "pass" } else { "FAIL" });
            Ok(CommandOutput {
                passed: rep.uniform,
                json: json!({ "suite": "uniformity", "report": rep, "passed": rep.uniform }),
                text,
            })
        }
    }
}

fn random_chern(rng: &mut ChaCha8Rng, n: usize) -> ChernVector {
    let rank = rng.gen_range(1..=5);
    let mut c = vec![1];
    c.extend((1..=n).map(|_| rng.gen_range(-6..=6)));
    ChernVector::new(rank, ChowClass::from_ints(n, &c)).expect("integral with c0 = 1")
}

/// Identities between Chern classes and characters on random integral data:
/// Whitney quotients, additivity of `ch`, the `ch → c` inverse, twisting
/// and duals.
pub fn whitney_suite(trials: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for k in 0..trials {
        let n = 2 + k % 3;
        let a = random_chern(&mut rng, n);
        let b = random_chern(&mut rng, n);
        let t = rng.gen_range(-4..=4);
        let sum = a.whitney(&b);
        let mut check = |ok: bool, what: &str| {
            if !ok {
                failures.push(format!("trial {k}: {what} fails for {} and {}", a.format(), b.format()));
            }
        };
        check(sum.quotient_by(&b) == a, "Whitney quotient");
        check(sum.ch() == a.ch().add(&b.ch()), "additivity of ch");
        check(c_from_ch(&a.ch()).as_ref() == Ok(&a), "ch -> c roundtrip");
        check(a.twist(t).ch() == a.ch().mul(&ChowClass::exp_line(n, t)), "twist");
        let dual_ch = a.dual().ch();
        check(
            (0..=n).all(|i| {
                let s = if i % 2 == 0 {
                    a.ch().coeff(i).clone()
                } else {
                    -a.ch().coeff(i).clone()
                };
                dual_ch.coeff(i) == &s
            }),
            "dual",
        );
    }
    failures
}

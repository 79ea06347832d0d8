//! Command-line surface: argument handling, job dispatch and report
//! formatting. `run` is pure apart from reading the job file, so tests can
//! drive it in-process.

pub mod jobfile;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::chow::GradedClass;
use crate::classes::{
    class_report, singular_scheme, verify_conjecture, verify_lemma, verify_remark, verify_theorem, CompleteIntersection,
};
use crate::error::{Error, Result};
use crate::fscheme::{fs_normalize, fscheme_segre};
use crate::poly::{fmt_rational, Field, DEFAULT_PRIME};
use crate::segre::{segre_class, SegreConfig, DEFAULT_SEED};
use jobfile::{parse_jobfile, AnyJob, JobSpec};

#[derive(Parser, Debug)]
#[command(name = "csm-forge", version, about = "Segre, Chern-Fulton, CSM and Milnor classes in P^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Working prime for the randomized counts [default: the ring's prime, else 65521].
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Master seed, decimal or 0x-prefixed hex.
    #[arg(long, global = true, env = "CSM_FORGE_SEED", value_parser = parse_seed)]
    seed: Option<u64>,
    /// Independent seeds that must agree.
    #[arg(long, global = true, default_value_t = 2)]
    trials: usize,
    /// Values of k for `verify lemma` and `verify remark`, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    k_list: Option<Vec<u32>>,
    /// Declaration to operate on [default: the last suitable one].
    #[arg(long, global = true)]
    target: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Segre class s(V, P^n).
    Segre { file: PathBuf },
    /// Chern-Fulton class c(TP^n) s(V, P^n).
    Fulton { file: PathBuf },
    /// CSM class of a complete intersection.
    Csm { file: PathBuf },
    /// Milnor class c_SM - c_F.
    Milnor { file: PathBuf },
    /// Euler characteristic.
    Euler { file: PathBuf },
    /// Segre class of an f-scheme such as "X * J(X)^-1".
    FschemeSegre { file: PathBuf, expr: String },
    /// Run one of the identity checks.
    Verify { check: Check, file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    Theorem,
    Lemma,
    Remark,
    Conjecture,
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else if matches!(e, Error::VerificationFailed(_)) {
        EXIT_MISMATCH
    } else {
        EXIT_INPUT
    }
}

struct Report {
    lines: Vec<String>,
    record: Map<String, Value>,
    ok: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut record = Map::new();
        record.insert("command".into(), json!(command));
        Report {
            lines: Vec::new(),
            record,
            ok: true,
        }
    }

    fn put(&mut self, key: &str, v: Value) {
        self.record.insert(key.into(), v);
    }
}

fn rational_json(q: &num_rational::BigRational) -> Value {
    GradedClass::from_coeffs(0, vec![q.clone()]).to_json()[0].clone()
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let file = match &cli.command {
        Command::Segre { file }
        | Command::Fulton { file }
        | Command::Csm { file }
        | Command::Milnor { file }
        | Command::Euler { file }
        | Command::FschemeSegre { file, .. }
        | Command::Verify { file, .. } => file.clone(),
    };
    let result = parse_jobfile(&file).and_then(|job| match job {
        AnyJob::Rational(j) => execute(&cli, &j, DEFAULT_PRIME),
        AnyJob::Prime(j) => {
            let p = j.ring.field().modulus();
            execute(&cli, &j, p)
        }
    });
    match result {
        Ok(rep) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string(&Value::Object(rep.record)).expect("serializable");
                s.push('\n');
                s
            } else {
                rep.lines.iter().map(|l| format!("{l}\n")).collect()
            };
            Outcome {
                code: if rep.ok { EXIT_OK } else { EXIT_MISMATCH },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {}: {e}\n", file.display()),
        },
    }
}

fn execute<F: Field>(cli: &Cli, job: &JobSpec<F>, ring_prime: u32) -> Result<Report> {
    let cfg = SegreConfig {
        prime: cli.prime.unwrap_or(ring_prime),
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        trials: cli.trials.max(1),
    };
    let (name, mut rep) = match &cli.command {
        Command::Segre { .. } => {
            let name = target(cli, job.default_ideal())?;
            let out = segre_class(&job.ideal(&name)?, &cfg)?;
            let mut rep = Report::new("segre");
            rep.lines.push(format!("s = {}", out.class));
            put_class(&mut rep, "class", &out.class);
            rep.put("projective_degrees", json!(out.degrees.degrees));
            rep.put("trial_seeds", json!(out.seeds));
            (name, rep)
        }
        Command::Fulton { .. } => {
            let name = target(cli, job.default_ideal())?;
            let c = crate::classes::chern_fulton(&job.ideal(&name)?, &cfg)?;
            let mut rep = Report::new("fulton");
            rep.lines.push(format!("c_F = {c}"));
            put_class(&mut rep, "class", &c);
            (name, rep)
        }
        Command::Csm { .. } | Command::Milnor { .. } | Command::Euler { .. } => {
            let name = target(cli, job.default_ci())?;
            let r = class_report(&job.ci(&name)?, &cfg)?;
            let chi = fmt_rational(&r.euler);
            let mut rep;
            match cli.command {
                Command::Csm { .. } => {
                    rep = Report::new("csm");
                    rep.lines.push(format!("c_SM = {}, chi = {chi}", r.csm));
                    put_class(&mut rep, "class", &r.csm);
                    put_class(&mut rep, "fulton", &r.fulton);
                }
                Command::Milnor { .. } => {
                    rep = Report::new("milnor");
                    let integral = r.milnor.integral();
                    rep.lines.push(format!("M = {}, integral = {}", r.milnor, fmt_rational(&integral)));
                    put_class(&mut rep, "class", &r.milnor);
                    rep.put("integral", rational_json(&integral));
                }
                _ => {
                    rep = Report::new("euler");
                    rep.lines.push(format!("chi = {chi}"));
                    rep.put("n", json!(r.csm.ambient_dim()));
                }
            }
            rep.put("chi", rational_json(&r.euler));
            rep.put("method", json!(r.provenance.method));
            (name, rep)
        }
        Command::FschemeSegre { expr, .. } => {
            let factors = parse_fscheme(expr, job)?;
            let u = fs_normalize(factors)?;
            let s = fscheme_segre(&u, &cfg)?;
            let mut rep = Report::new("fscheme-segre");
            rep.lines.push(format!("s = {s}"));
            put_class(&mut rep, "class", &s);
            rep.put("expr", json!(expr));
            (expr.clone(), rep)
        }
        Command::Verify { check, .. } => {
            let name = target(cli, job.default_ci())?;
            let ci = job.ci(&name)?;
            (name, verify(*check, &ci, cli, &cfg)?)
        }
    };
    rep.put("target", json!(name));
    rep.put("prime", json!(cfg.prime));
    rep.put("seed", json!(cfg.seed));
    rep.put("trials", json!(cfg.trials));
    Ok(rep)
}

fn target(cli: &Cli, default: Result<String>) -> Result<String> {
    match &cli.target {
        Some(t) => Ok(t.clone()),
        None => default,
    }
}

fn put_class(rep: &mut Report, key: &str, c: &GradedClass) {
    if !rep.record.contains_key("n") {
        rep.put("n", json!(c.ambient_dim()));
    }
    rep.put(key, c.to_json());
}

fn verify<F: Field>(check: Check, ci: &CompleteIntersection<F>, cli: &Cli, cfg: &SegreConfig) -> Result<Report> {
    match check {
        Check::Theorem => {
            let cmp = verify_theorem(ci, cfg)?;
            let mut rep = Report::new("verify theorem");
            rep.ok = cmp.agrees();
            rep.lines.push(if rep.ok {
                format!("MATCH: {}", cmp.left)
            } else {
                format!("MISMATCH: blowup = {}, oracle = {}, difference = {}", cmp.left, cmp.right, cmp.diff)
            });
            put_class(&mut rep, "blowup", &cmp.left);
            put_class(&mut rep, "oracle", &cmp.right);
            rep.put("match", json!(rep.ok));
            Ok(rep)
        }
        Check::Lemma => {
            let ks = cli.k_list.clone().unwrap_or_else(|| vec![1, 2, 3]);
            let checks = verify_lemma(ci, &ks, cfg)?;
            let mut rep = Report::new("verify lemma");
            let mut rows = Vec::new();
            for ch in &checks {
                let c = &ch.comparison;
                rep.ok &= c.agrees();
                rep.lines.push(if c.agrees() {
                    format!("k = {}: MATCH: {}", ch.k, c.left)
                } else {
                    format!("k = {}: MISMATCH: lhs = {}, rhs = {}", ch.k, c.left, c.right)
                });
                rows.push(json!({"k": ch.k, "lhs": c.left.to_json(), "rhs": c.right.to_json(), "match": c.agrees()}));
            }
            rep.put("n", json!(ci.ambient_dim()));
            rep.put("checks", Value::Array(rows));
            rep.put("match", json!(rep.ok));
            Ok(rep)
        }
        Check::Remark => {
            if ci.codim() != 1 {
                return Err(Error::InvalidCompleteIntersection("remark applies to a single hypersurface".into()));
            }
            let f = &ci.hypersurfaces()[0];
            let ks = cli.k_list.clone().unwrap_or_else(|| vec![2]);
            let mut rep = Report::new("verify remark");
            let mut rows = Vec::new();
            for k in ks {
                let ch = verify_remark(f, k, cfg)?;
                let c = &ch.comparison;
                rep.ok &= c.agrees();
                rep.lines.push(if c.agrees() {
                    format!("k = {k}: MATCH: {}", c.left)
                } else {
                    format!("k = {k}: MISMATCH: power = {}, reduced = {}", c.left, c.right)
                });
                rows.push(json!({"k": k, "power": c.left.to_json(), "reduced": c.right.to_json(), "match": c.agrees()}));
            }
            rep.put("n", json!(ci.ambient_dim()));
            rep.put("checks", Value::Array(rows));
            rep.put("match", json!(rep.ok));
            Ok(rep)
        }
        Check::Conjecture => {
            let r = verify_conjecture(ci, cfg)?;
            let mut rep = Report::new("verify conjecture");
            rep.lines.push(format!("almost smooth presentation: {}", r.almost_smooth));
            rep.lines.push(format!("blowup (thickenings in Z) = {}", r.blowup));
            rep.lines.push(format!("blowup (ambient product) = {}", r.blowup_ambient_product));
            rep.lines.push(format!("inclusion-exclusion = {}", r.oracle));
            rep.lines.push(if r.agrees() { "AGREE".into() } else { "DISAGREE".into() });
            put_class(&mut rep, "blowup", &r.blowup);
            put_class(&mut rep, "blowup_ambient_product", &r.blowup_ambient_product);
            put_class(&mut rep, "oracle", &r.oracle);
            rep.put("almost_smooth", json!(r.almost_smooth));
            rep.put("agree", json!(r.agrees()));
            rep.put("ambient_product_agree", json!(r.ambient_product_agrees()));
            Ok(rep)
        }
    }
}

/// `A * B^-1 * C^2`: declared names with optional integer exponents;
/// `J(X)` is the singular scheme of the complete intersection `X`.
fn parse_fscheme<F: Field>(expr: &str, job: &JobSpec<F>) -> Result<Vec<(crate::groebner::Ideal<F>, i64)>> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in expr.split('*') {
        let start = col + (part.len() - part.trim_start().len());
        col += part.len() + 1;
        let part = part.trim();
        let (name, exp) = match part.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e.trim().parse().map_err(|_| Error::Parse {
                    line: 1,
                    column: start,
                    message: format!("bad exponent in `{part}`"),
                })?;
                (n.trim(), e)
            }
            None => (part, 1),
        };
        let undeclared = |n: &str| Error::Parse {
            line: 1,
            column: start,
            message: format!("undeclared name `{n}`"),
        };
        let ideal = match name.strip_prefix("J(").and_then(|n| n.strip_suffix(')')) {
            Some(inner) => {
                let ci = job.ci(inner.trim()).map_err(|_| undeclared(inner.trim()))?;
                singular_scheme(&ci)?
            }
            None => job.ideal(name).map_err(|_| undeclared(name))?,
        };
        out.push((ideal, exp));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0xC530"), Ok(0xC530));
        assert_eq!(parse_seed("17"), Ok(17));
        assert!(parse_seed("0xZZ").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["csm-forge", "frobnicate"]).code, EXIT_INPUT);
        assert_eq!(run(["csm-forge", "csm", "/nonexistent.ci"]).code, EXIT_INPUT);
        assert_eq!(run(["csm-forge", "--help"]).code, EXIT_OK);
    }
}

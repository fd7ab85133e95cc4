//! Command-line front-end.
//!
//! `run_command` is a pure function from an argument vector to an exit code
//! plus captured output streams, so the whole interface is testable without
//! spawning processes. The binary in `main.rs` is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 domain errors (division by zero, no root,
//! failed certificates, ...), 2 parse and usage errors. With `--json` every
//! invocation, including a failing one, writes a single JSON document to
//! stdout.

use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gencheck::{generation_check, GradedStructure, StructureConstants};
use crate::graded::{chain_compare, gr_ideal, quotient_dims, CertTerm, ContainmentCertificate};
use crate::isoinv::{almost_equal, candidate_c1, invariant_derivative, separation_sweep};
use crate::lambda::LambdaSeq;
use crate::ncpoly::NCPoly;
use crate::ore::{t_word, OrePoly};
use crate::parse::{eval_field, eval_ore, parse_expr, parse_relation_file, parse_word, ExprKind};
use crate::ratfn::RationalFn;
use crate::scalar::PrimeField;
use crate::word::FreeContext;

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "oregrad",
    version,
    about = "Exact arithmetic in twisted polynomial rings over F_p(t0,t1,...) \
             and graded-ideal tables in weighted free algebras"
)]
struct Cli {
    /// Emit a single JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rational functions over F_p: evaluation, derivatives, p-th roots.
    #[command(subcommand)]
    Field(FieldCmd),
    /// The twisted ring K[x; delta]: products, commutators, powers, roots.
    #[command(subcommand)]
    Ore(OreCmd),
    /// Separating invariants of pairs of coefficient sequences.
    #[command(subcommand)]
    Inv(InvCmd),
    /// Graded-ideal tables and filtration dimensions in free algebras.
    #[command(subcommand)]
    Gr(GrCmd),
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Evaluate a field expression to canonical form.
    Eval {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        expr: String,
    },
    /// Differentiate: -k gives the partial derivative in t<k>, --lambda the
    /// sequence-driven derivation (exactly one must be given).
    Diff {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(short = 'k', value_name = "INDEX")]
        k: Option<u32>,
        #[arg(long, value_name = "SPEC")]
        lambda: Option<String>,
        expr: String,
    },
    /// Take the p-th root; fails with a domain error when none exists.
    Pthroot {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        expr: String,
    },
    /// Split a polynomial into p-th-power coefficients times reduced
    /// monomials (all exponents at most p-1).
    Decompose {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        expr: String,
    },
}

#[derive(Subcommand)]
enum OreCmd {
    /// Multiply two twisted polynomials.
    Mul {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        f: String,
        g: String,
    },
    /// Commutator f*g - g*f.
    Commutator {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        f: String,
        g: String,
    },
    /// Raise a twisted polynomial to a natural power.
    Pow {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        f: String,
        n: u32,
    },
    /// Take a p-th root in the twisted ring; fails when none is found.
    Pthroot {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        f: String,
    },
    /// Express t<k> as a word in the generators t0 and x.
    Tword {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        #[arg(short = 'k', value_name = "INDEX")]
        k: usize,
    },
}

#[derive(Subcommand)]
enum InvCmd {
    /// The candidate unit comparing two sequences at slot k.
    C1 {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        #[arg(long, value_name = "SPEC")]
        lambda2: String,
        #[arg(short = 'k', value_name = "INDEX")]
        k: usize,
    },
    /// Its discriminating partial derivative and the separation verdict.
    Dc1 {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        #[arg(long, value_name = "SPEC")]
        lambda2: String,
        #[arg(short = 'k', value_name = "INDEX")]
        k: usize,
    },
    /// Slot-by-slot reports for every k up to a bound.
    Sweep {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        #[arg(long, value_name = "SPEC")]
        lambda2: String,
        #[arg(short = 'K', value_name = "BOUND")]
        bound: usize,
    },
    /// Decide agreement at all but finitely many slots.
    Equiv {
        #[arg(short = 'p', value_name = "PRIME")]
        p: u64,
        #[arg(long, value_name = "SPEC")]
        lambda: String,
        #[arg(long, value_name = "SPEC")]
        lambda2: String,
    },
}

#[derive(Subcommand)]
enum GrCmd {
    /// Leading-form table of the two-sided ideal from a relation file.
    Compute {
        #[arg(long, value_name = "FILE")]
        relations: PathBuf,
        #[arg(short = 'D', value_name = "CUTOFF")]
        cutoff: u32,
        /// Extra degree window searched for cancellations (default: CUTOFF).
        #[arg(short = 's', value_name = "SLACK")]
        slack: Option<u32>,
        /// Include basis rows in the output.
        #[arg(long)]
        basis: bool,
    },
    /// Filtration dimensions of the quotient by the ideal.
    Dims {
        #[arg(long, value_name = "FILE")]
        relations: PathBuf,
        #[arg(short = 'D', value_name = "CUTOFF")]
        cutoff: u32,
        #[arg(short = 's', value_name = "SLACK")]
        slack: Option<u32>,
    },
    /// Compare the tables of two ideals under a containment certificate.
    Compare {
        #[arg(long, value_name = "FILE")]
        relations: PathBuf,
        #[arg(long, value_name = "FILE")]
        relations2: PathBuf,
        #[arg(long, value_name = "FILE")]
        certificate: PathBuf,
        #[arg(short = 'D', value_name = "CUTOFF")]
        cutoff: u32,
        #[arg(short = 's', value_name = "SLACK")]
        slack: Option<u32>,
    },
    /// Check which graded components are generated by degrees up to k.
    Gencheck {
        #[arg(long, value_name = "FILE")]
        structure: PathBuf,
        #[arg(short = 'k', value_name = "BOUND")]
        k: usize,
    },
}

/// Runs one invocation. `argv` includes the program name in position 0,
/// exactly as `std::env::args` provides it.
pub fn run_command<T: AsRef<str>>(argv: &[T]) -> CmdOutput {
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return CmdOutput {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            return render_error(json_mode, &Error::Usage(e.to_string()));
        }
    };
    match dispatch(&cli.cmd) {
        Ok((human, json)) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&json).expect("serializable output");
                s.push('\n');
                s
            } else {
                let mut s = human;
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            };
            CmdOutput { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => render_error(cli.json, &e),
    }
}

fn render_error(json_mode: bool, e: &Error) -> CmdOutput {
    if json_mode {
        let doc = json!({"error": {"code": e.code(), "message": e.to_string()}});
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable error");
        s.push('\n');
        CmdOutput { code: e.exit_code(), stdout: s, stderr: String::new() }
    } else {
        CmdOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn dispatch(cmd: &Cmd) -> Result<(String, Value)> {
    match cmd {
        Cmd::Field(c) => run_field(c),
        Cmd::Ore(c) => run_ore(c),
        Cmd::Inv(c) => run_inv(c),
        Cmd::Gr(c) => run_gr(c),
    }
}

fn field_value(p: u64, expr: &str) -> Result<RationalFn> {
    let field = PrimeField::new(p)?;
    let ast = parse_expr(expr, ExprKind::Field)?;
    eval_field(&ast, field)
}

fn value_doc(v: impl ToString) -> (String, Value) {
    let s = v.to_string();
    let doc = json!({ "value": s });
    (s, doc)
}

fn run_field(cmd: &FieldCmd) -> Result<(String, Value)> {
    match cmd {
        FieldCmd::Eval { p, expr } => Ok(value_doc(field_value(*p, expr)?)),
        FieldCmd::Diff { p, k, lambda, expr } => {
            let value = field_value(*p, expr)?;
            let result = match (k, lambda) {
                (Some(k), None) => value.partial_derivative(*k),
                (None, Some(spec)) => {
                    let field = PrimeField::new(*p)?;
                    LambdaSeq::parse(field, spec)?.delta(&value)
                }
                _ => {
                    return Err(Error::Usage(
                        "pass exactly one of -k <index> or --lambda <spec>".into(),
                    ))
                }
            };
            Ok(value_doc(result))
        }
        FieldCmd::Pthroot { p, expr } => {
            let value = field_value(*p, expr)?;
            let root = value.pth_root().ok_or(Error::NoPthRoot)?;
            Ok(value_doc(root))
        }
        FieldCmd::Decompose { p, expr } => {
            let value = field_value(*p, expr)?;
            if !value.denominator().is_one() {
                return Err(Error::InvalidExpression(
                    "decomposition applies to polynomials, but the value has a \
                     nontrivial denominator"
                        .into(),
                ));
            }
            let parts = value.numerator().frobenius_decompose();
            let human = parts
                .iter()
                .map(|(c, m)| format!("({c}) * ({m})"))
                .collect::<Vec<_>>()
                .join("\n");
            let doc = json!({
                "terms": parts
                    .iter()
                    .map(|(c, m)| json!({"coeff": c.to_string(), "monomial": m.to_string()}))
                    .collect::<Vec<_>>()
            });
            Ok((human, doc))
        }
    }
}

fn ore_value(lambda: &LambdaSeq, expr: &str) -> Result<OrePoly> {
    let ast = parse_expr(expr, ExprKind::Ore)?;
    eval_ore(&ast, lambda)
}

fn lambda_of(p: u64, spec: &str) -> Result<LambdaSeq> {
    LambdaSeq::parse(PrimeField::new(p)?, spec)
}

fn run_ore(cmd: &OreCmd) -> Result<(String, Value)> {
    match cmd {
        OreCmd::Mul { p, lambda, f, g } => {
            let l = lambda_of(*p, lambda)?;
            let prod = ore_value(&l, f)?.checked_mul(&ore_value(&l, g)?)?;
            Ok(value_doc(prod))
        }
        OreCmd::Commutator { p, lambda, f, g } => {
            let l = lambda_of(*p, lambda)?;
            let c = ore_value(&l, f)?.commutator(&ore_value(&l, g)?)?;
            Ok(value_doc(c))
        }
        OreCmd::Pow { p, lambda, f, n } => {
            let l = lambda_of(*p, lambda)?;
            Ok(value_doc(ore_value(&l, f)?.pow(*n)))
        }
        OreCmd::Pthroot { p, lambda, f } => {
            let l = lambda_of(*p, lambda)?;
            let root = ore_value(&l, f)?.pth_root().ok_or(Error::NoPthRoot)?;
            Ok(value_doc(root))
        }
        OreCmd::Tword { p, lambda, k } => {
            let l = lambda_of(*p, lambda)?;
            let expr = t_word(&l, *k);
            let text = expr.to_string();
            let doc = json!({"k": k, "expr": text});
            Ok((text, doc))
        }
    }
}

fn lambda_pair(p: u64, spec1: &str, spec2: &str) -> Result<(LambdaSeq, LambdaSeq)> {
    let field = PrimeField::new(p)?;
    Ok((LambdaSeq::parse(field, spec1)?, LambdaSeq::parse(field, spec2)?))
}

fn run_inv(cmd: &InvCmd) -> Result<(String, Value)> {
    match cmd {
        InvCmd::C1 { p, lambda, lambda2, k } => {
            let (l1, l2) = lambda_pair(*p, lambda, lambda2)?;
            let c1 = candidate_c1(&l1, &l2, *k)?;
            let s = c1.to_string();
            let doc = json!({"k": k, "c1": s});
            Ok((s, doc))
        }
        InvCmd::Dc1 { p, lambda, lambda2, k } => {
            let (l1, l2) = lambda_pair(*p, lambda, lambda2)?;
            let report = invariant_derivative(&l1, &l2, *k)?;
            let s = report.dc1.to_string();
            let doc = json!({"k": report.k, "dc1": s, "separated": report.separated});
            let human = format!("{s}\nseparated: {}", report.separated);
            Ok((human, doc))
        }
        InvCmd::Sweep { p, lambda, lambda2, bound } => {
            let (l1, l2) = lambda_pair(*p, lambda, lambda2)?;
            let reports = separation_sweep(&l1, &l2, *bound)?;
            let human = reports
                .iter()
                .map(|r| {
                    format!(
                        "k={}: c1 = {}, dc1 = {}, separated = {}",
                        r.k, r.c1, r.dc1, r.separated
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let doc = Value::Array(
                reports
                    .iter()
                    .map(|r| {
                        json!({
                            "k": r.k,
                            "c1": r.c1.to_string(),
                            "dc1": r.dc1.to_string(),
                            "separated": r.separated,
                        })
                    })
                    .collect(),
            );
            Ok((human, doc))
        }
        InvCmd::Equiv { p, lambda, lambda2 } => {
            let (l1, l2) = lambda_pair(*p, lambda, lambda2)?;
            let report = almost_equal(&l1, &l2)?;
            let mut human = format!("equal: {}", report.equal);
            if !report.witnesses.is_empty() {
                let list = report
                    .witnesses
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                human.push_str(&format!("\nwitnesses: {list}"));
            }
            let doc = json!({"equal": report.equal, "witnesses": report.witnesses});
            Ok((human, doc))
        }
    }
}

#[derive(Deserialize)]
struct RawCertTerm {
    coeff: u64,
    left: String,
    gen: usize,
    right: String,
}

#[derive(Deserialize)]
struct RawCertificate {
    lines: Vec<Vec<RawCertTerm>>,
}

fn load_relations(path: &PathBuf) -> Result<(FreeContext, Vec<NCPoly>)> {
    parse_relation_file(&fs::read_to_string(path)?)
}

fn load_certificate(path: &PathBuf, ctx: &FreeContext) -> Result<ContainmentCertificate> {
    let raw: RawCertificate = serde_json::from_str(&fs::read_to_string(path)?)
        .map_err(|e| Error::InvalidFile(format!("certificate: {e}")))?;
    let field = ctx.field();
    let mut lines = Vec::with_capacity(raw.lines.len());
    for line in raw.lines {
        let mut terms = Vec::with_capacity(line.len());
        for t in line {
            terms.push(CertTerm {
                coeff: field.from_u64(t.coeff),
                left: parse_word(&t.left, ctx)?,
                gen_index: t.gen,
                right: parse_word(&t.right, ctx)?,
            });
        }
        lines.push(terms);
    }
    Ok(ContainmentCertificate { lines })
}

fn run_gr(cmd: &GrCmd) -> Result<(String, Value)> {
    match cmd {
        GrCmd::Compute { relations, cutoff, slack, basis } => {
            let (ctx, gens) = load_relations(relations)?;
            let slack = slack.unwrap_or(*cutoff);
            let table = gr_ideal(&ctx, &gens, *cutoff, slack)?;
            let dims = quotient_dims(&table);
            let mut human_lines = Vec::new();
            let mut degrees = Vec::new();
            for slice in table.slices() {
                let d = slice.degree as usize;
                let flag = if slice.stabilized { "stabilized" } else { "not stabilized" };
                human_lines.push(format!(
                    "degree {d}: rank {}, dim {}, {flag}",
                    slice.rows.len(),
                    dims.dims[d]
                ));
                let mut entry = json!({
                    "degree": d,
                    "rank": slice.rows.len(),
                    "dim": dims.dims[d],
                    "stabilized": slice.stabilized,
                });
                if *basis {
                    for row in &slice.rows {
                        human_lines.push(format!("  {row}"));
                    }
                    entry["basis"] = Value::Array(
                        slice.rows.iter().map(|r| Value::String(r.to_string())).collect(),
                    );
                }
                degrees.push(entry);
            }
            let doc = json!({"cutoff": cutoff, "slack": slack, "degrees": degrees});
            Ok((human_lines.join("\n"), doc))
        }
        GrCmd::Dims { relations, cutoff, slack } => {
            let (ctx, gens) = load_relations(relations)?;
            let slack = slack.unwrap_or(*cutoff);
            let table = gr_ideal(&ctx, &gens, *cutoff, slack)?;
            let dims = quotient_dims(&table);
            let human = (0..dims.dims.len())
                .map(|d| {
                    let flag = if dims.stabilized[d] { "stabilized" } else { "not stabilized" };
                    format!(
                        "degree {d}: dim {} (words {}, rank {}, {flag})",
                        dims.dims[d], dims.word_counts[d], dims.ranks[d]
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let doc = json!({
                "dims": dims.dims,
                "word_counts": dims.word_counts,
                "ranks": dims.ranks,
                "stabilized": dims.stabilized,
            });
            Ok((human, doc))
        }
        GrCmd::Compare { relations, relations2, certificate, cutoff, slack } => {
            let (ctx1, gens1) = load_relations(relations)?;
            let (ctx2, gens2) = load_relations(relations2)?;
            ctx1.require_same(&ctx2)?;
            let cert = load_certificate(certificate, &ctx1)?;
            let slack = slack.unwrap_or(*cutoff);
            let reports = chain_compare(&ctx1, &gens1, &gens2, &cert, *cutoff, slack)?;
            let human = reports
                .iter()
                .map(|r| {
                    let verdict = if r.contained { "contained" } else { "NOT contained" };
                    let strictness = if r.strict { ", strict" } else { "" };
                    format!(
                        "degree {}: {verdict}{strictness} (rank {} vs {})",
                        r.degree, r.rank_sub, r.rank_super
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let doc = json!({
                "degrees": reports
                    .iter()
                    .map(|r| {
                        json!({
                            "degree": r.degree,
                            "contained": r.contained,
                            "strict": r.strict,
                            "rank_sub": r.rank_sub,
                            "rank_super": r.rank_super,
                        })
                    })
                    .collect::<Vec<_>>()
            });
            Ok((human, doc))
        }
        GrCmd::Gencheck { structure, k } => {
            let raw: StructureConstants =
                serde_json::from_str(&fs::read_to_string(structure)?)
                    .map_err(|e| Error::InvalidFile(format!("structure constants: {e}")))?;
            let validated = GradedStructure::validate(&raw)?;
            let flags = generation_check(&validated, *k);
            let human = flags
                .iter()
                .enumerate()
                .map(|(m, ok)| {
                    format!("degree {m}: {}", if *ok { "generated" } else { "NOT generated" })
                })
                .collect::<Vec<_>>()
                .join("\n");
            let doc = json!({"generated": flags});
            Ok((human, doc))
        }
    }
}

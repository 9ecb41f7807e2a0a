//! The `ncmops` command line.
//!
//! Exit codes: 0 success, 1 no MOPS (or a failed round trip), 2 invalid input,
//! 3 degree bound insufficient, 4 state not faithful, 5 matrix dimension ceiling exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::fock::{extract_fock_data, validate_fock_data, FockData, FockState};
use crate::hankel::{build_frame, check_relation1, frak_h, frame_dimension, hankel_family};
use crate::io;
use crate::mops::{extract_recursion, gram_schmidt, has_mops, Verdict};
use crate::ncpoly::{enumerate_words, word_count};
use crate::oracle::{dense_orthogonalize, DenseFock};
use crate::rational::{parse_rational, Rational};
use crate::state::{check_state, MomentTable, State};

pub const DEFAULT_MAX_DIM: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "ncmops", version, about = "Monic orthogonal polynomials of non-commutative states")]
pub struct Cli {
    /// Largest matrix dimension any command may build
    #[arg(long, global = true, env = "NCMOPS_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,

    /// Write the JSON result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a moment table has a monic orthogonal polynomial system
    Check(TableArgs),
    /// Emit the Gram-Schmidt family and, when orthogonal, its recursion coefficients
    Orthogonalize(TableArgs),
    /// Hankel determinants, determinant-formula polynomials and the Relation-1 verdict
    Hankel(HankelArgs),
    /// Moment table of a Fock state
    Fock(FockArgs),
    /// Fock data reproducing a moment table
    Extract(ExtractArgs),
    /// Fock data -> moments -> extracted data -> moments, compared exactly
    Roundtrip(RoundtripArgs),
    /// Built-in example states
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Moment table JSON file
    pub moments: PathBuf,
    /// Polynomial degree (default: half the table degree)
    #[arg(short = 'n', long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HankelArgs {
    #[command(flatten)]
    pub table: TableArgs,
    /// Directory receiving one CSV file per Hankel frame
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FockArgs {
    /// Fock data JSON file
    pub fock: PathBuf,
    /// Table degree, even and at most 2K+1 (default: 2K)
    #[arg(short = 'n', long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Moment table JSON file
    pub moments: PathBuf,
    /// Fock depth K; needs moments up to degree 2K+1
    #[arg(short = 'K', long)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    /// Fock data JSON file
    pub fock: PathBuf,
    /// Also compare against the dense reference implementations
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Catalan,
    FreeSemicircularD2,
    GaussianDuplicated,
    Jacobi,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub example: Example,
    /// Table degree (even)
    #[arg(short = 'n', long, default_value_t = 4)]
    pub degree: usize,
    /// Depth of emitted Fock data
    #[arg(short = 'K', long, default_value_t = 2)]
    pub depth: usize,
    /// Emit Fock data instead of a moment table
    #[arg(long)]
    pub fock: bool,
    /// Jacobi diagonal a_0,...,a_K
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// Jacobi weights b_1,...,b_K
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<String>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::DegreeExceedsBound { .. } | Error::DepthExceeded { .. } => 3,
            Error::NotFaithful { .. } => 4,
            Error::NotOrthogonal(_) | Error::RecursionViolation(_) => 1,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<(Value, i32), Failure>;

struct Ctx {
    max_dim: usize,
}

impl Ctx {
    fn ceiling(&self, what: &str, dim: usize) -> std::result::Result<(), Failure> {
        if dim > self.max_dim {
            Err(Failure::new(
                5,
                format!("{what} needs a {dim}×{dim} matrix, above the ceiling {}", self.max_dim),
            ))
        } else {
            Ok(())
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn load_state(ctx: &Ctx, path: &Path) -> std::result::Result<MomentTable, Failure> {
    let t = io::table_from_str(&read(path)?)?;
    ctx.ceiling("state validation", word_count(t.d(), t.max_degree() / 2))?;
    check_state(&t).map_err(|v| Failure::new(2, format!("not a state: {v}")))?;
    Ok(t)
}

fn load_fock(ctx: &Ctx, path: &Path) -> std::result::Result<FockData, Failure> {
    let data = io::fock_from_str(&read(path)?)?;
    ctx.ceiling("Fock data validation", word_count(data.d(), data.depth()))?;
    validate_fock_data(&data).map_err(|v| Failure::new(2, format!("invalid Fock data: {v}")))?;
    Ok(data)
}

fn degree_for(t: &MomentTable, degree: Option<usize>) -> std::result::Result<usize, Failure> {
    let n = degree.unwrap_or(t.max_degree() / 2);
    t.check_degree(2 * n)?;
    Ok(n)
}

fn cmd_check(ctx: &Ctx, a: &TableArgs) -> Outcome {
    let t = load_state(ctx, &a.moments)?;
    let n = degree_for(&t, a.degree)?;
    ctx.ceiling("orthogonalization", word_count(t.d(), n))?;
    Ok(match has_mops(&t, n)? {
        Verdict::Holds => (json!({ "has_mops": true }), 0),
        Verdict::Fails(w) => (json!({ "has_mops": false, "witness": io::witness_to_json(&w) }), 1),
    })
}

fn cmd_orthogonalize(ctx: &Ctx, a: &TableArgs) -> Outcome {
    let t = load_state(ctx, &a.moments)?;
    let n = degree_for(&t, a.degree)?;
    ctx.ceiling("orthogonalization", word_count(t.d(), n))?;
    let fam = gram_schmidt(&t, n)?;
    let mut out = Map::new();
    out.insert("degree".into(), json!(n));
    out.insert("family".into(), io::family_to_json(&fam));
    out.insert("norms".into(), io::norms_to_json(&fam));
    match has_mops(&t, n)? {
        Verdict::Holds => {
            let rec = extract_recursion(&t, &fam, n)?;
            out.insert("recursion".into(), io::recursion_to_json(&rec));
        }
        Verdict::Fails(w) => {
            out.insert("recursion".into(), Value::Null);
            out.insert(
                "note".into(),
                json!(format!("no MOPS: ⟨P_{}, P_{}⟩ ≠ 0, coefficients omitted", w.u, w.w)),
            );
            out.insert("witness".into(), io::witness_to_json(&w));
        }
    }
    Ok((Value::Object(out), 0))
}

fn cmd_hankel(ctx: &Ctx, a: &HankelArgs) -> Outcome {
    let t = load_state(ctx, &a.table.moments)?;
    let n = degree_for(&t, a.table.degree)?;
    ctx.ceiling("Hankel frame", frame_dimension(t.d(), n).max(word_count(t.d(), n)))?;
    let fam = hankel_family(&t, n)?;
    let frak: Map<String, Value> = (0..=n + 1)
        .map(|m| Ok((m.to_string(), io::rational_to_json(&frak_h(&t, m)?))))
        .collect::<crate::error::Result<_>>()?;
    let mut hs = Map::new();
    for u in enumerate_words(t.d(), n).into_iter().skip(1) {
        let frame = build_frame(&t, &u)?;
        hs.insert(u.to_key(), io::rational_to_json(&frame.h()));
        if let Some(dir) = &a.csv {
            std::fs::create_dir_all(dir).map_err(|e| Failure::new(2, format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join(format!("frame_{}.csv", u.to_key().replace(',', "-")));
            std::fs::write(&path, io::matrix_to_csv(frame.matrix()))
                .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let relation1 = match check_relation1(&t, n)? {
        Verdict::Holds => json!({ "holds": true }),
        Verdict::Fails(w) => json!({ "holds": false, "witness": io::witness_to_json(&w) }),
    };
    Ok((
        json!({
            "degree": n,
            "frak_h": frak,
            "h": hs,
            "family": io::family_to_json(&fam),
            "relation1": relation1,
        }),
        0,
    ))
}

fn cmd_fock(ctx: &Ctx, a: &FockArgs) -> Outcome {
    let data = load_fock(ctx, &a.fock)?;
    let m = a.degree.unwrap_or(2 * data.depth());
    if m > data.moment_bound() {
        return Err(Error::DegreeExceedsBound {
            degree: m,
            bound: data.moment_bound(),
        }
        .into());
    }
    if !m.is_multiple_of(2) {
        return Err(Failure::new(2, format!("table degree {m} must be even")));
    }
    let state = FockState::new(data);
    Ok((io::table_to_json(&MomentTable::from_state(&state, m)?), 0))
}

fn cmd_extract(ctx: &Ctx, a: &ExtractArgs) -> Outcome {
    let t = load_state(ctx, &a.moments)?;
    t.check_degree(2 * a.depth + 1)?;
    ctx.ceiling("Fock level", word_count(t.d(), a.depth))?;
    let fam = gram_schmidt(&t, a.depth)?;
    let data = extract_fock_data(&t, &fam, a.depth)?;
    Ok((io::fock_to_json(&data), 0))
}

fn cmd_roundtrip(ctx: &Ctx, a: &RoundtripArgs) -> Outcome {
    let data = load_fock(ctx, &a.fock)?;
    let depth = data.depth();
    let original = FockState::new(data.clone());
    let fam = gram_schmidt(&original, depth)?;
    let extracted = extract_fock_data(&original, &fam, depth)?;
    let regenerated = FockState::new(extracted);
    let words = enumerate_words(data.d(), data.moment_bound());
    let mut mismatch = None;
    for w in &words {
        if original.moment(w)? != regenerated.moment(w)? {
            mismatch = Some(w.clone());
            break;
        }
    }
    let mut out = Map::new();
    out.insert("depth".into(), json!(depth));
    out.insert("moments_compared".into(), json!(words.len()));
    out.insert("agree".into(), json!(mismatch.is_none()));
    if let Some(w) = &mismatch {
        out.insert("first_mismatch".into(), io::word_to_json(w));
    }
    let mut ok = mismatch.is_none();
    if a.verify {
        let dense = DenseFock::new(&data);
        let mut dense_ok = true;
        for w in &words {
            if dense.moment(w)? != original.moment(w)? {
                dense_ok = false;
                break;
            }
        }
        let oracle = dense_orthogonalize(&original, depth)?;
        let l2_ok = fam
            .iter()
            .map(|(u, p, _)| original.seminorm_sq(&(oracle.poly(u) - p)))
            .collect::<crate::error::Result<Vec<_>>>()?
            .iter()
            .all(Rational::is_zero);
        out.insert("dense_moments_agree".into(), json!(dense_ok));
        out.insert("dense_orthogonalization_agrees".into(), json!(l2_ok));
        ok &= dense_ok && l2_ok;
    }
    Ok((Value::Object(out), if ok { 0 } else { 1 }))
}

fn parse_list(items: &[String], what: &str) -> std::result::Result<Vec<Rational>, Failure> {
    items
        .iter()
        .map(|s| parse_rational(s).map_err(|e| Failure::new(2, format!("--{what}: {e}"))))
        .collect()
}

fn cmd_gen(ctx: &Ctx, a: &GenArgs) -> Outcome {
    let data = match a.example {
        Example::Catalan => Some(FockData::free(1, a.depth)),
        Example::FreeSemicircularD2 => Some(FockData::free(2, a.depth)),
        Example::Jacobi => {
            let av = parse_list(&a.a, "a")?;
            let bv = parse_list(&a.b, "b")?;
            let j = crate::oracle::JacobiData::new(av, bv)?;
            Some(j.to_fock_data())
        }
        Example::GaussianDuplicated => None,
    };
    if a.fock {
        let data = data.ok_or_else(|| Failure::new(2, "gaussian-duplicated has no Fock representation"))?;
        return Ok((io::fock_to_json(&data), 0));
    }
    if !a.degree.is_multiple_of(2) {
        return Err(Failure::new(2, format!("table degree {} must be even", a.degree)));
    }
    let table = match (a.example, data) {
        (Example::GaussianDuplicated, _) => {
            let d = 2;
            ctx.ceiling("table", word_count(d, a.degree / 2))?;
            // E[X^k] for a standard Gaussian: (k-1)!! for even k, 0 for odd k
            MomentTable::from_fn(d, a.degree, |w| {
                let k = w.len();
                if k % 2 == 1 {
                    Rational::zero()
                } else {
                    Rational::from_integer((1..k).step_by(2).map(num_bigint::BigInt::from).product())
                }
            })?
        }
        (Example::Jacobi, Some(data)) => {
            let state = FockState::new(data);
            MomentTable::from_state(&state, a.degree)?
        }
        (_, Some(data)) => {
            // enough depth for the requested degree
            let d = data.d();
            ctx.ceiling("table", word_count(d, a.degree / 2))?;
            let state = FockState::new(FockData::free(d, a.degree / 2));
            MomentTable::from_state(&state, a.degree)?
        }
        _ => unreachable!("only the Gaussian example lacks Fock data"),
    };
    Ok((io::table_to_json(&table), 0))
}

fn write_line(w: &mut dyn Write, s: &str) {
    // broken pipes are not worth a panic
    let _ = w.write_all(s.as_bytes());
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                write_line(stdout, &text);
            } else {
                write_line(stderr, &text);
            }
            return code;
        }
    };
    if cli.max_dim < 2 {
        write_line(stderr, "error: --max-dim must be at least 2\n");
        return 2;
    }
    let ctx = Ctx { max_dim: cli.max_dim };
    let outcome = match &cli.command {
        Command::Check(a) => cmd_check(&ctx, a),
        Command::Orthogonalize(a) => cmd_orthogonalize(&ctx, a),
        Command::Hankel(a) => cmd_hankel(&ctx, a),
        Command::Fock(a) => cmd_fock(&ctx, a),
        Command::Extract(a) => cmd_extract(&ctx, a),
        Command::Roundtrip(a) => cmd_roundtrip(&ctx, a),
        Command::Gen(a) => cmd_gen(&ctx, a),
    };
    match outcome {
        Ok((value, code)) => {
            let text = io::to_pretty(&value);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        write_line(stderr, &format!("error: cannot write {}: {e}\n", path.display()));
                        return 2;
                    }
                }
                None => write_line(stdout, &text),
            }
            code
        }
        Err(f) => {
            write_line(stderr, &format!("error: {}\n", f.message));
            f.code
        }
    }
}

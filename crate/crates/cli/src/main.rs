//! Command-line interface for projective Reed–Muller subfield subcodes.
//!
//! Subcommands:
//!
//! - `params` — closed-formula parameter summary for one degree: length,
//!   subcode and dual dimensions, the distance lower bound, and whether the
//!   bound beats the Gilbert–Varshamov guarantee. No matrices are built, so
//!   this works for fields far beyond enumeration range.
//! - `table` — full parameter rows over a degree range; minimum distances
//!   are exact when an enumeration fits the budget and certified intervals
//!   otherwise, tagged `exact`/`bound` per column.
//! - `basis` — the explicit trace-polynomial basis of the subfield subcode
//!   (`--side primary`) or of its dual (`--side dual`), printed part by part
//!   (projective dimension 2 only).
//! - `verify` — the oracle/property suite: basis spans against rank oracles,
//!   dimension formulas, part-count bookkeeping, Gröbner-basis checks for
//!   the vanishing ideal, and trace/dual (Delsarte) duality. Exit code 1 if
//!   any check fails.
//! - `export` — generator matrix of the subcode or its dual in the plain
//!   text exchange format.
//!
//! Exit codes: 0 success, 1 verification/runtime failure, 2 usage error.
//! Output is deterministic: rerunning a command reproduces it byte for byte.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prm_core::codes::gv_exceeds;
use prm_core::cyclo::CycloCtx;
use prm_core::field::{prime_power_split, FieldCtx};
use prm_core::ideal::{
    divide, is_standard_monomial, normal_form_monomial, quotient_monomials,
    vanishing_ideal_generators, verify_buchberger, ALL_ORDERS,
};
use prm_core::poly::SparsePoly;
use prm_core::prm::{
    dim_dual, dim_primary, distance_lower_bound_for, projective_length, BasisVariant, PrmError,
    PrmInstance, TraceBasis, DEFAULT_BUDGET,
};
use prm_core::projgeom::{evaluate, evaluates_to_base, projective_points};

/// Print a line to stdout, exiting quietly if the reader closed the pipe
/// (so `prm table | head` ends cleanly instead of panicking).
macro_rules! outln {
    ($($t:tt)*) => {{
        let mut so = std::io::stdout();
        if writeln!(so, $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "prm",
    about = "Projective Reed-Muller subfield subcodes: parameters, tables, trace bases"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Formula-only parameter summary for one degree (no enumeration).
    Params(ParamsArgs),
    /// Parameter-table rows over a degree range.
    Table(TableArgs),
    /// Explicit trace basis of the subcode or its dual (m = 2 only).
    Basis(BasisArgs),
    /// Run the oracle/property suite; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Write a generator matrix in the text exchange format.
    Export(ExportArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Base field size q (a prime power); codewords take values in F_q.
    #[arg(long)]
    q: u64,
    /// Extension degree s; evaluation happens over F_{q^s}.
    #[arg(long)]
    s: u32,
}

#[derive(Args)]
struct ParamsArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Projective dimension (number of homogeneous variables minus one).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Degree of the evaluated forms.
    #[arg(long)]
    d: u32,
    /// Emit a single JSON object instead of the text line.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Projective dimension (number of homogeneous variables minus one).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// First degree of the range (default 1).
    #[arg(long, default_value_t = 1)]
    dmin: u32,
    /// Last degree of the range (default m(q^s - 1), the largest proper one).
    #[arg(long)]
    dmax: Option<u32>,
    /// Enumeration budget in codewords; larger sides get certified bounds.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Emit one JSON object per row instead of text lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Projective dimension; the explicit bases exist for m = 2 only.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Degree of the evaluated forms.
    #[arg(long)]
    d: u32,
    /// Which basis to print: the subcode's or the dual's.
    #[arg(long, value_enum)]
    side: Side,
    /// Primary-side flavor: full inner sums, or only full-degree terms.
    #[arg(long, value_enum, default_value_t = Variant::Standard)]
    variant: Variant,
    /// Emit a single JSON object instead of the text listing.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Projective dimension.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Check a single degree.
    #[arg(long, conflicts_with = "dall", required_unless_present = "dall")]
    d: Option<u32>,
    /// Check every degree from 1 through m(q^s - 1).
    #[arg(long)]
    dall: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Projective dimension.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Degree of the evaluated forms.
    #[arg(long)]
    d: u32,
    /// Which generator matrix to write: the subcode's or the dual's.
    #[arg(long, value_enum)]
    side: Side,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Primary,
    Dual,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Primary => "primary",
            Side::Dual => "dual",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Standard,
    Simplified,
}

/// A command failure, split by exit code: usage problems exit 2, runtime
/// problems exit 1.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<PrmError> for Failure {
    fn from(e: PrmError) -> Self {
        match e {
            PrmError::DegreeOutOfRange { .. } | PrmError::BasisUnsupported { .. } => {
                Failure::Usage(e.to_string())
            }
            PrmError::Codes(inner) => Failure::Runtime(inner.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Params(a) => cmd_params(a),
        Cmd::Table(a) => cmd_table(a),
        Cmd::Basis(a) => cmd_basis(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Export(a) => cmd_export(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Split `--q` into its prime-power form, rejecting non-prime-powers.
fn split_q(q: u64) -> Result<(u64, u32), Failure> {
    prime_power_split(q)
        .ok_or_else(|| Failure::Usage(format!("q = {q} is not a prime power")))
}

/// Build the field tower for commands that need actual arithmetic.
fn field_ctx(args: &FieldArgs) -> Result<FieldCtx, Failure> {
    let (p, e) = split_q(args.q)?;
    FieldCtx::new(p, e, args.s).map_err(|e| Failure::Usage(e.to_string()))
}

/// Degree bounds shared by every subcommand: degree 0 gives only constants
/// and degrees above m(q^s - 1) fill the whole space.
fn check_degree(d: u32, qs: u64, m: usize) -> Result<(), Failure> {
    let max = m as u32 * (qs as u32 - 1);
    if d == 0 || d > max {
        return Err(Failure::Usage(format!(
            "degree {d} is outside [1, {max}] for q^s = {qs}, m = {m}"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ParamsOut {
    q: u64,
    s: u32,
    m: usize,
    d: u32,
    n: u64,
    k: u64,
    k_perp: u64,
    delta_lower_bound: u64,
    gv_exceeds: bool,
}

fn cmd_params(args: ParamsArgs) -> Result<ExitCode, Failure> {
    let (_, _) = split_q(args.field.q)?;
    if args.m != 2 {
        return Err(Failure::Usage(format!(
            "closed dimension formulas are implemented only for m = 2, not m = {}",
            args.m
        )));
    }
    let q = args.field.q;
    let s = args.field.s;
    let qs = q
        .checked_pow(s)
        .filter(|&v| (2..=(1 << 12)).contains(&v))
        .ok_or_else(|| {
            Failure::Usage(format!(
                "q^s = {q}^{s} is outside the supported range [2, 4096] for the orbit tables"
            ))
        })?;
    check_degree(args.d, qs, args.m)?;
    let cy = CycloCtx::new(q, s);
    let n = projective_length(qs, args.m as u32);
    let k = dim_primary(&cy, args.d);
    let k_perp = dim_dual(&cy, args.d);
    assert_eq!(k + k_perp, n, "dimension formulas must split the length");
    let lb = distance_lower_bound_for(qs, args.m as u32, args.d);
    let gv = gv_exceeds(q, n, k, lb);
    let out = ParamsOut {
        q,
        s,
        m: args.m,
        d: args.d,
        n,
        k,
        k_perp,
        delta_lower_bound: lb,
        gv_exceeds: gv,
    };
    if args.json {
        outln!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        let verdict = if gv { "exceeds" } else { "does-not-exceed" };
        outln!("n={n} k={k} k⊥={k_perp} δ≥{lb} gv={verdict}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RowOut {
    d: u32,
    n: usize,
    k: usize,
    delta: String,
    delta_method: &'static str,
    k_perp: usize,
    delta_perp: String,
    delta_perp_method: &'static str,
}

fn method_tag(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "bound"
    }
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, Failure> {
    let f = field_ctx(&args.field)?;
    if args.m < 1 {
        return Err(Failure::Usage("m must be at least 1".into()));
    }
    let inst = PrmInstance::new(f, args.m);
    let dmax = args.dmax.unwrap_or_else(|| inst.max_degree());
    check_degree(args.dmin, inst.field().qs(), args.m)?;
    check_degree(dmax, inst.field().qs(), args.m)?;
    if args.dmin > dmax {
        return Err(Failure::Usage(format!(
            "empty degree range: dmin = {} > dmax = {dmax}",
            args.dmin
        )));
    }
    for d in args.dmin..=dmax {
        let row = inst.table_row(d, args.budget)?;
        let out = RowOut {
            d: row.d,
            n: row.n,
            k: row.k,
            delta: row.delta.to_string(),
            delta_method: method_tag(row.delta.is_exact()),
            k_perp: row.k_perp,
            delta_perp: row.delta_perp.to_string(),
            delta_perp_method: method_tag(row.delta_perp.is_exact()),
        };
        if args.json {
            outln!("{}", serde_json::to_string(&out).expect("serializable"));
        } else {
            outln!(
                "d={} n={} k={} delta={} delta_method={} k_perp={} delta_perp={} delta_perp_method={}",
                out.d,
                out.n,
                out.k,
                out.delta,
                out.delta_method,
                out.k_perp,
                out.delta_perp,
                out.delta_perp_method,
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BasisPartOut {
    name: &'static str,
    count: usize,
    polys: Vec<String>,
}

#[derive(Serialize)]
struct BasisOut {
    q: u64,
    s: u32,
    m: usize,
    d: u32,
    side: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<&'static str>,
    total: usize,
    parts: Vec<BasisPartOut>,
}

fn cmd_basis(args: BasisArgs) -> Result<ExitCode, Failure> {
    if args.m != 2 {
        return Err(Failure::Usage(format!(
            "explicit bases implemented only for m=2 (requested m = {})",
            args.m
        )));
    }
    if args.side == Side::Dual && args.variant == Variant::Simplified {
        return Err(Failure::Usage(
            "--variant simplified applies only to --side primary".into(),
        ));
    }
    let f = field_ctx(&args.field)?;
    let inst = PrmInstance::new(f, 2);
    let basis: TraceBasis = match args.side {
        Side::Primary => {
            let variant = match args.variant {
                Variant::Standard => BasisVariant::Standard,
                Variant::Simplified => BasisVariant::Simplified,
            };
            inst.primary_basis(args.d, variant)?
        }
        Side::Dual => inst.dual_basis(args.d)?,
    };
    let parts: Vec<BasisPartOut> = basis
        .parts
        .iter()
        .map(|p| BasisPartOut {
            name: p.name,
            count: p.polys.len(),
            polys: p.polys.iter().map(|q| q.to_string_with(inst.field())).collect(),
        })
        .collect();
    let out = BasisOut {
        q: args.field.q,
        s: args.field.s,
        m: 2,
        d: args.d,
        side: args.side.name(),
        variant: match (args.side, args.variant) {
            (Side::Primary, Variant::Standard) => Some("standard"),
            (Side::Primary, Variant::Simplified) => Some("simplified"),
            (Side::Dual, _) => None,
        },
        total: basis.total(),
        parts,
    };
    if args.json {
        outln!("{}", serde_json::to_string(&out).expect("serializable"));
        return Ok(ExitCode::SUCCESS);
    }
    let mut header = format!(
        "q={} s={} m=2 d={} side={}",
        out.q, out.s, out.d, out.side
    );
    if let Some(v) = out.variant {
        write!(header, " variant={v}").expect("string write");
    }
    write!(header, " total={} parts:", out.total).expect("string write");
    for p in &out.parts {
        write!(header, " {}={}", p.name, p.count).expect("string write");
    }
    outln!("{header}");
    for p in &out.parts {
        for (i, poly) in p.polys.iter().enumerate() {
            outln!("{}[{i}] = {poly}", p.name);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One verify check: prints its own `ok:`/`FAIL:` line and reports success.
fn check(report: &mut Vec<String>, ok: bool, what: &str) -> bool {
    let line = if ok {
        format!("ok: {what}")
    } else {
        format!("FAIL: {what}")
    };
    outln!("{line}");
    if !ok {
        report.push(what.to_string());
    }
    ok
}

/// Deterministic 64-bit xorshift for the randomized normal-form samples.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    let f = field_ctx(&args.field)?;
    if args.m < 1 {
        return Err(Failure::Usage("m must be at least 1".into()));
    }
    let inst = PrmInstance::new(f, args.m);
    let f = inst.field();
    let qs = f.qs();
    let degrees: Vec<u32> = match (args.dall, args.d) {
        (true, _) => (1..=inst.max_degree()).collect(),
        (false, Some(d)) => {
            check_degree(d, qs, args.m)?;
            vec![d]
        }
        (false, None) => unreachable!("clap requires --d or --dall"),
    };
    let mut failures = Vec::new();

    // Vanishing-ideal block, once per run.
    let gens = vanishing_ideal_generators(f, args.m);
    for order in ALL_ORDERS {
        check(
            &mut failures,
            verify_buchberger(f, &gens, order),
            &format!("all S-polynomials reduce to zero under {order:?}"),
        );
    }
    let standard = quotient_monomials(qs, args.m);
    check(
        &mut failures,
        standard.len() == inst.n() && standard.iter().all(|e| is_standard_monomial(qs, e)),
        &format!(
            "quotient monomial count equals the point count ({})",
            inst.n()
        ),
    );

    // Normal-form equivalence: exhaustive through m = 2, sampled for larger m.
    let maxdeg = 2 * (qs as u32 - 1);
    let points = projective_points(f, args.m);
    let mut nf_checked = 0usize;
    let mut nf_ok = true;
    let try_exps = |exps: &[u32], nf_ok: &mut bool, nf_checked: &mut usize| {
        let mono = SparsePoly::monomial(exps.to_vec(), f.one());
        let nf = normal_form_monomial(f, exps);
        for order in ALL_ORDERS {
            let (_, rem) = divide(f, &mono, &gens, order);
            if rem != nf {
                *nf_ok = false;
            }
        }
        if evaluate(f, &mono, &points) != evaluate(f, &nf, &points) {
            *nf_ok = false;
        }
        *nf_checked += 1;
    };
    if args.m <= 2 {
        let mut exps = vec![0u32; args.m + 1];
        loop {
            if exps.iter().sum::<u32>() <= maxdeg {
                try_exps(&exps, &mut nf_ok, &mut nf_checked);
            }
            let mut i = 0;
            loop {
                if i == exps.len() {
                    break;
                }
                exps[i] += 1;
                if exps[i] <= maxdeg {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == exps.len() {
                break;
            }
        }
    } else {
        let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
        while nf_checked < 500 {
            let exps: Vec<u32> = (0..=args.m)
                .map(|_| (rng.next() % (maxdeg as u64 + 1)) as u32)
                .collect();
            if exps.iter().sum::<u32>() <= maxdeg {
                try_exps(&exps, &mut nf_ok, &mut nf_checked);
            }
        }
    }
    check(
        &mut failures,
        nf_ok,
        &format!("normal form = division remainder = pointwise values ({nf_checked} monomials)"),
    );

    // Per-degree block.
    for &d in &degrees {
        let code = inst.prm_code(d)?;
        let sigma = inst.sigma_code(d)?;
        let sigma_dual = sigma.dual(f);
        check(
            &mut failures,
            code.dual(f).trace_code(f) == sigma_dual,
            &format!("d={d}: componentwise trace of the dual equals the dual of the subcode"),
        );
        if args.m == 2 {
            let cy = inst.cyclo();
            let b = inst.primary_basis(d, BasisVariant::Standard)?;
            let dualb = inst.dual_basis(d)?;
            check(
                &mut failures,
                b.total() == dim_primary(cy, d) as usize
                    && dim_primary(cy, d) as usize == sigma.dim(),
                &format!("d={d}: subcode dimension formula matches the oracle rank"),
            );
            check(
                &mut failures,
                dualb.total() == dim_dual(cy, d) as usize
                    && dim_dual(cy, d) as usize == sigma_dual.dim(),
                &format!("d={d}: dual dimension formula matches the oracle rank"),
            );
            check(
                &mut failures,
                b.total() + dualb.total() == inst.n(),
                &format!("d={d}: basis sizes add up to the length"),
            );
            check(
                &mut failures,
                b.all_polys().all(|p| evaluates_to_base(f, p)),
                &format!("d={d}: every subcode basis member evaluates into F_q"),
            );
            let b_polys: Vec<SparsePoly> = b.all_polys().cloned().collect();
            let dual_polys: Vec<SparsePoly> = dualb.all_polys().cloned().collect();
            check(
                &mut failures,
                inst.span_over_base(&b_polys, "primary-span") == sigma,
                &format!("d={d}: subcode basis spans the subfield subcode"),
            );
            check(
                &mut failures,
                inst.span_over_base(&dual_polys, "dual-span") == sigma_dual,
                &format!("d={d}: dual basis spans the dual code"),
            );
        }
    }

    if failures.is_empty() {
        outln!("verify: all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        outln!("verify: {} check(s) failed", failures.len());
        Ok(ExitCode::from(1))
    }
}

fn cmd_export(args: ExportArgs) -> Result<ExitCode, Failure> {
    let f = field_ctx(&args.field)?;
    if args.m < 1 {
        return Err(Failure::Usage("m must be at least 1".into()));
    }
    let inst = PrmInstance::new(f, args.m);
    let code = match args.side {
        Side::Primary => inst.sigma_code(args.d)?,
        Side::Dual => inst.sigma_dual(args.d)?,
    };
    let text = code.to_text(inst.field());
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display())))?,
        None => {
            if std::io::stdout().write_all(text.as_bytes()).is_err() {
                std::process::exit(0);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

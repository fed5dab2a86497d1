use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubicq_core::engine::claims::{builtin_claims, parse_catalog, run_claims, RunOptions};
use cubicq_core::engine::identities::{identity_catalog, verify_identity, DEFAULT_CHECK_ORDER};
use cubicq_core::engine::{
    builtin_radu, check_characterization_mod4, check_characterization_mod8, estimate_density, parse_radu_file, Report,
    Sampling,
};
use cubicq_core::etaq::{
    min_level, mod3_lift, mod3_lift_hypothesis, prime_power_lift, prime_power_lift_hypothesis, EtaQuotient,
    MOD3_LIFT_LEVEL, PRIME_POWER_LIFT_LEVEL,
};
use cubicq_core::hecke::{cubic_rows, verify_row, verify_row_at_sturm};
use cubicq_core::qfuncs::{genfun, FProduct, PartitionFamily};
use cubicq_core::radu::{radu_verify, RaduFile, RaduOutcome};
use cubicq_core::CoefficientRing;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Depth for the finite Radu check unless `--full` or `--depth` is given.
const RADU_DEFAULT_CAP: usize = 200;

#[derive(Parser)]
#[command(name = "cubicq", version, about = "Check congruences of generalized cubic and overcubic partitions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest n checked per progression (overrides catalog depths)
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Series truncation order
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Coefficient modulus
    #[arg(long = "mod", global = true)]
    modulus: Option<u64>,
    /// Write a JSON report to this path
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,
    /// Seed for randomized parameter sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also run conjectural catalog entries
    #[arg(long, global = true)]
    include_conjectures: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    A,
    Abar,
}

impl Family {
    fn with_c(self, c: u64) -> PartitionFamily {
        match self {
            Family::A => PartitionFamily::cubic(c),
            Family::Abar => PartitionFamily::overcubic(c),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Lift {
    Mod3,
    PrimePower,
}

#[derive(Subcommand)]
enum Command {
    /// Print generating-function coefficients
    Expand {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        c: u64,
    },
    /// Run catalog entries
    Claim {
        /// Entry id (repeatable)
        #[arg(long = "id", required_unless_present_any = ["all", "list"])]
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        /// List entry ids and exit
        #[arg(long)]
        list: bool,
        /// Catalog file instead of the bundled one
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Verify the identity catalog
    Identity {
        /// Only ids containing this substring
        #[arg(long)]
        filter: Option<String>,
    },
    /// Radu finite-bound verification
    Radu {
        /// Instance file; all bundled instances when omitted
        #[arg(long)]
        file: Option<PathBuf>,
        /// Check every n up to the computed bound, however large
        #[arg(long)]
        full: bool,
    },
    /// Modular-form data for an eta-quotient
    Eta {
        /// Level N
        #[arg(long, required_unless_present = "lift")]
        level: Option<u64>,
        /// Quotient as an f-product, e.g. "f1^816/f2^36"
        #[arg(long, required_unless_present = "lift")]
        product: Option<String>,
        /// Sample parameters of a lifted quotient instead
        #[arg(long, value_enum, conflicts_with_all = ["level", "product"])]
        lift: Option<Lift>,
        /// How many lift parameters to sample
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Hecke/Sturm proofs for the cubic rows
    Hecke {
        /// Only the row with this c
        #[arg(long)]
        c: Option<u64>,
    },
    /// Proportion of coefficients divisible by --mod among n ≤ X
    Density {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        x: usize,
        /// Only sample multiples of this stride
        #[arg(long)]
        stride: Option<usize>,
    },
    /// Check the mod 4 / mod 8 residue characterization of ā_c
    Characterize {
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = 5000)]
        n_max: usize,
    },
}

/// A usage or configuration problem (exit 2), as opposed to a failed check (exit 1).
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<bool, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Expand { family, c } => expand(g, *family, *c),
        Command::Claim { ids, all, list, catalog } => claim(g, ids, *all, *list, catalog.as_deref()),
        Command::Identity { filter } => identity(g, filter.as_deref()),
        Command::Radu { file, full } => radu(g, file.as_deref(), *full),
        Command::Eta { level, product, lift, samples } => match lift {
            Some(l) => eta_lift(g, *l, *samples),
            None => eta(g, level.expect("clap requires level"), product.as_deref().expect("clap requires product")),
        },
        Command::Hecke { c } => hecke(g, *c),
        Command::Density { family, c, x, stride } => density(g, *family, *c, *x, *stride),
        Command::Characterize { c, n_max } => characterize(g, *c, *n_max),
    }
}

fn ring(g: &Global) -> Result<CoefficientRing, UsageError> {
    match g.modulus {
        None => Ok(CoefficientRing::ExactInteger),
        Some(m) => Ok(CoefficientRing::modulo(m)?),
    }
}

fn write_json(g: &Global, value: &Value) -> Result<(), UsageError> {
    if let Some(path) = &g.json {
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn expand(g: &Global, family: Family, c: u64) -> Outcome {
    if c < 1 {
        return Err(UsageError("c must be at least 1".into()));
    }
    let f = family.with_c(c);
    let order = g.order.unwrap_or(20);
    let s = genfun(f, ring(g)?, order);
    let coeffs: Vec<String> = s.to_bigints().iter().map(ToString::to_string).collect();
    println!("{}", coeffs.join(", "));
    write_json(g, &json!({ "family": f.label(), "ring": s.ring().to_string(), "coefficients": coeffs }))?;
    Ok(true)
}

fn claim(g: &Global, ids: &[String], all: bool, list: bool, catalog: Option<&Path>) -> Outcome {
    let catalog = match catalog {
        None => builtin_claims(),
        Some(p) => {
            parse_catalog(&std::fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?)?
        }
    };
    if list {
        for c in &catalog {
            println!("{}\t{:?}\t{}", c.id, c.status, c.label);
        }
        return Ok(true);
    }
    let opts =
        RunOptions { include_conjectures: g.include_conjectures, depth: g.depth, ids: (!all).then(|| ids.to_vec()) };
    let results = run_claims(&catalog, &opts)?;
    for r in &results {
        println!("{}", r.summary());
    }
    let report = Report::new(&catalog, results, Vec::new());
    if let Some(path) = &g.json {
        report.write(path)?;
    }
    Ok(report.all_passed())
}

fn identity(g: &Global, filter: Option<&str>) -> Outcome {
    let order = g.order.unwrap_or(DEFAULT_CHECK_ORDER);
    let results: Vec<_> = identity_catalog(order)
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.contains(f)))
        .map(verify_identity)
        .collect();
    if results.is_empty() {
        return Err(UsageError("no identity matches the filter".into()));
    }
    for r in &results {
        println!("{:?} {}", r.kind, r.summary());
    }
    let report = Report::new(&[], Vec::new(), results);
    if let Some(path) = &g.json {
        report.write(path)?;
    }
    Ok(report.all_passed())
}

fn radu(g: &Global, file: Option<&Path>, full: bool) -> Outcome {
    let instances: Vec<(String, RaduFile)> = match file {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?;
            vec![(p.display().to_string(), parse_radu_file(&text)?)]
        }
        None => builtin_radu().into_iter().map(|(k, f)| (k.to_string(), f)).collect(),
    };
    let cap = match (full, g.depth) {
        (true, _) => None,
        (false, d) => Some(d.unwrap_or(RADU_DEFAULT_CAP)),
    };
    let mut ok = true;
    let mut out = Vec::new();
    for (name, f) in instances {
        let inst = f.instance()?;
        let target = f.target()?;
        if full {
            eprintln!("warning: --full expands ∏ f_δ^r_δ to order m·⌊ν⌋; this can take hours for large m");
        }
        let v = radu_verify(&inst, f.u, target.as_ref(), cap)?;
        let p_t: Vec<String> = v.orbit.p_t.iter().map(ToString::to_string).collect();
        println!("{name}");
        println!("  Δ* conditions: {:?}", v.delta_star.conditions);
        println!("  P(t) = {{{}}}", p_t.join(", "));
        println!("  ν = {}, ⌊ν⌋ = {}", v.nu, v.floor_nu);
        for b in &v.bounds {
            println!(
                "  δ = {}: p = {}, p' = {}{}",
                b.delta,
                b.p,
                b.p_prime,
                if b.nonnegative { "" } else { " (negative)" }
            );
        }
        if let Some(agrees) = v.target_agrees {
            println!("  target series {}", if agrees { "matches" } else { "DIFFERS" });
        }
        let verdict = match &v.outcome {
            RaduOutcome::Proved => "proved".to_string(),
            RaduOutcome::Consistent { depth } => format!("consistent to n = {depth} (rerun with --full to reach ⌊ν⌋)"),
            RaduOutcome::RefutedAt { n, t_prime } => {
                ok = false;
                format!("REFUTED: coefficient {} ≢ 0 (mod {})", inst.m as usize * n + *t_prime as usize, v.u)
            }
            RaduOutcome::HypothesisFailed { reasons } => {
                ok = false;
                format!("hypotheses fail: {}", reasons.join("; "))
            }
        };
        println!("  {verdict}");
        out.push(serde_json::to_value(&v)?);
    }
    write_json(g, &Value::Array(out))?;
    Ok(ok)
}

fn eta(g: &Global, level: u64, product: &str) -> Outcome {
    let p: FProduct = product.parse()?;
    let q = EtaQuotient::from_fproduct(level, &p)?;
    let meta = q.meta();
    println!("level {}, weight {}, index {}", meta.level, meta.weight(), meta.index);
    println!("24-conditions {:?}, holomorphic {}", meta.cond24, meta.holomorphic);
    match &meta.character {
        Some(chi) => println!("character ({}/·)", chi.discriminant),
        None => println!("character undefined (non-integral weight)"),
    }
    match meta.sturm_bound {
        Some(b) => println!("Sturm bound {b}"),
        None => println!("Sturm bound undefined"),
    }
    for (d, o) in &meta.cusp_orders {
        println!("  cusp 1/{d}: order {o}");
    }
    write_json(g, &serde_json::to_value(&meta)?)?;
    Ok(true)
}

fn eta_lift(g: &Global, lift: Lift, samples: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut rows = Vec::new();
    let mut ok = true;
    match lift {
        Lift::Mod3 => {
            let space: Vec<(u32, u64, u32)> = (1..=4)
                .flat_map(|a| (1..40).step_by(2).flat_map(move |m| (2..=5).map(move |k| (a, m, k))))
                .filter(|&(a, m, k)| mod3_lift_hypothesis(a, m, k))
                .collect();
            for &(a, m, k) in space.choose_multiple(&mut rng, samples) {
                let e = mod3_lift(a, m, k);
                let level = min_level(&e, 96).ok();
                let hol = EtaQuotient::lenient(MOD3_LIFT_LEVEL, e).is_holomorphic().0;
                ok &= hol;
                println!("alpha={a} m={m} k={k}: minimal level {level:?}, holomorphic at {MOD3_LIFT_LEVEL}: {hol}");
                rows.push(json!({ "alpha": a, "m": m, "k": k, "min_level": level, "holomorphic": hol }));
            }
        }
        Lift::PrimePower => {
            let mut space = Vec::new();
            for p in [5u64, 7, 11, 13] {
                for a in 1..=2 {
                    for k in 1..=3 {
                        for s in [1u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 35, 37, 41, 43] {
                            let t = p.pow(a) * s;
                            if prime_power_lift_hypothesis(p, a, k, t) {
                                space.push((p, a, k, t));
                            }
                        }
                    }
                }
            }
            for &(p, a, k, t) in space.choose_multiple(&mut rng, samples) {
                let e = prime_power_lift(p, a, k, t);
                let level = min_level(&e, 96).ok();
                let hol = EtaQuotient::lenient(PRIME_POWER_LIFT_LEVEL, e).is_holomorphic().0;
                ok &= hol;
                println!(
                    "p={p} a={a} k={k} t={t}: minimal level {level:?}, holomorphic at {PRIME_POWER_LIFT_LEVEL}: {hol}"
                );
                rows.push(json!({ "p": p, "a": a, "k": k, "t": t, "min_level": level, "holomorphic": hol }));
            }
        }
    }
    write_json(g, &json!({ "seed": g.seed, "samples": rows }))?;
    Ok(ok)
}

fn hecke(g: &Global, c: Option<u64>) -> Outcome {
    let rows: Vec<_> = cubic_rows().into_iter().filter(|r| c.is_none_or(|c| r.c == c)).collect();
    if rows.is_empty() {
        return Err(UsageError("no row with that c".into()));
    }
    let mut ok = true;
    let mut out = Vec::new();
    for row in &rows {
        let v = match g.depth {
            Some(d) => verify_row(row, d)?,
            None => verify_row_at_sturm(row)?,
        };
        ok &= v.passed();
        println!(
            "a{}({}n+{}) mod {}: weight {}, Sturm bound {}, checked to {}: {:?}",
            row.c,
            row.p,
            row.b,
            row.p,
            v.weight,
            v.sturm_bound.map_or("-".into(), |b| b.to_string()),
            v.depth,
            v.outcome
        );
        out.push(serde_json::to_value(&v)?);
    }
    write_json(g, &Value::Array(out))?;
    Ok(ok)
}

fn density(g: &Global, family: Family, c: u64, x: usize, stride: Option<usize>) -> Outcome {
    let m = g.modulus.ok_or_else(|| UsageError("density needs --mod".into()))?;
    let sampling = stride.map_or(Sampling::Full, Sampling::Stride);
    let f = family.with_c(c);
    let d = estimate_density(f, m, x, sampling)?;
    println!("{}: {d} of n ≤ {x} have coefficient ≡ 0 (mod {m})", f.label());
    write_json(
        g,
        &json!({ "family": f.label(), "modulus": m, "x": x, "sampling": sampling, "density": d.to_string() }),
    )?;
    Ok(true)
}

fn characterize(g: &Global, c: u64, n_max: usize) -> Outcome {
    let moduli = match g.modulus {
        None => vec![4, 8],
        Some(m @ (4 | 8)) => vec![m],
        Some(m) => return Err(UsageError(format!("characterization exists for moduli 4 and 8, not {m}"))),
    };
    let mut ok = true;
    let mut out = Vec::new();
    for m in moduli {
        let r = if m == 4 { check_characterization_mod4(c, n_max)? } else { check_characterization_mod8(c, n_max)? };
        match &r.first_mismatch {
            None => println!("abar{c} mod {m}: matches for n ≤ {n_max}; classes {:?}", r.class_counts),
            Some(mm) => {
                println!("abar{c} mod {m}: MISMATCH at n = {}: {} vs predicted {}", mm.n, mm.actual, mm.predicted)
            }
        }
        ok &= r.passed();
        out.push(serde_json::to_value(&r)?);
    }
    write_json(g, &Value::Array(out))?;
    Ok(ok)
}

//! Command-line front end: generator sets, braid tracking, Hurwitz checks
//! and the verification pipelines, all reporting JSON on stdout.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 numeric failure.

use braidmono::braid::BraidWord;
use braidmono::error::Error as CoreError;
use braidmono::family::{FamilySpec, PolynomialFamily};
use braidmono::hurwitz::{hurwitz_act, orbit_bfs, stabilizes, HurwitzTuple};
use braidmono::poly::{sylvester_resultant, Poly};
use braidmono::theorems::{
    anbraids_generators, degeneracy_grid_bp, theorem1_generators, theorem2_generators,
    verify_delta_conjugation, verify_pipeline_bp, verify_pipeline_plane, verify_redundancy,
    BandExpansion, GeneratorSet,
};
use braidmono::tracker::{
    geometric_basis_bp, geometric_basis_plane, track_loop_traced, write_trajectory_csv,
    write_trajectory_svg, BasisConfig, LoopPath, TrackConfig,
};
use braidmono::RunConfig;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(
    name = "braidmono",
    about = "Bifurcation braid monodromy toolkit: exact braid computations, Hurwitz actions, \
             discriminant families and numeric braid tracking",
    version
)]
struct Cli {
    /// Plain-text key=value config file (flags override it).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV/SVG artifacts (also BRAIDMONO_OUT_DIR).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Relative residual tolerance of the root finder.
    #[arg(long, global = true)]
    root_tol: Option<f64>,
    /// Pairwise root distance treated as a collision while tracking.
    #[arg(long, global = true)]
    collision_threshold: Option<f64>,
    /// Radius at which radial excursions stop short of a puncture.
    #[arg(long, global = true)]
    radius: Option<f64>,
    /// Rotation of the x-plane before reading off crossings.
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Hurwitz orbit enumeration cap.
    #[arg(long, global = true)]
    orbit_cap: Option<usize>,
    /// Strand cap for exhaustive identity checks.
    #[arg(long, global = true)]
    strand_cap: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExpansionArg {
    /// Conjugate through the strands above: (s_{j-1}..s_{i+1}) s_i (..)^{-1}
    Band,
    /// Conjugate through the strands below: s_i^{-1}..s_{j-2}^{-1} s_{j-1} ..
    Prime,
}

impl From<ExpansionArg> for BandExpansion {
    fn from(e: ExpansionArg) -> Self {
        match e {
            ExpansionArg::Band => BandExpansion::Canonical,
            ExpansionArg::Prime => BandExpansion::Prime,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a generator set of a monodromy group as JSON.
    Gens {
        #[command(subcommand)]
        which: GensCommand,
    },
    /// Track the branch points of a family along a loop and print the braid.
    Track(TrackArgs),
    /// Print the geometric basis loops of a family as JSON.
    Basis {
        #[command(subcommand)]
        which: BasisCommand,
    },
    /// Hurwitz action of braids on tuples of permutations.
    Hurwitz {
        #[command(subcommand)]
        which: HurwitzCommand,
    },
    /// Run a verification pipeline; exit 1 when a verdict fails.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Resultant of two polynomials given as JSON coefficient lists.
    Resultant {
        /// First polynomial, e.g. '{"coeffs":[[-1,0],[0,0],[1,0]]}' or '[-1,0,1]'.
        #[arg(long)]
        f: String,
        /// Second polynomial, same format.
        #[arg(long)]
        g: String,
    },
}

#[derive(Subcommand)]
enum GensCommand {
    /// Band generators of the unfolding monodromy group in Br_{nk}
    /// (exponent 1 for equal residues mod n, 3 for residues sharing a
    /// covering sheet, 2 otherwise).
    #[command(alias = "bp")]
    Thm1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "band")]
        expansion: ExpansionArg,
    },
    /// Generators of the plane-curve monodromy group in Br_{d(d-1)}:
    /// the band table with period d-1 plus the palindrome pure braids.
    #[command(alias = "plane")]
    Thm2 {
        #[arg(long)]
        d: usize,
        /// Cap on clause-iv conjugates kept during deduplication.
        #[arg(long)]
        dedup_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "band")]
        expansion: ExpansionArg,
    },
    /// Generators of the one-variable unfolding case in Br_n:
    /// cubes of adjacent crossings and squared distant bands.
    Anbraids {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "prime")]
        expansion: ExpansionArg,
    },
}

#[derive(Args)]
struct TrackArgs {
    /// Family spec: "bp:n=2,k=3" or "plane:d=3" (a trailing loop tag like
    /// "bp:n=1,k=2,u-loop" is accepted).
    #[arg(long)]
    family: String,
    /// Loop spec: "radial:i" or "u-loop" for bp families, "lasso:j" for
    /// plane families.
    #[arg(long = "loop")]
    loop_spec: Option<String>,
    /// Write the trajectory CSV (s,root_index,re,im) to this path.
    #[arg(long, num_args = 0..=1, default_missing_value = "track.csv")]
    csv: Option<PathBuf>,
    /// Write an SVG plot of the trajectories to this path.
    #[arg(long, num_args = 0..=1, default_missing_value = "track.svg")]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BasisCommand {
    /// Radial loops toward the punctures v^n = 1 plus the loop around u = 0,
    /// based at (u,v) = (1,0).
    Bp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Lassos around the punctures u^d = 1, based at u = 0.
    Plane {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand)]
enum HurwitzCommand {
    /// Apply the Hurwitz action of a braid word to a tuple.
    /// The positive move conjugates the right entry past the left one;
    /// letters act in reverse word order (a right action).
    Act(HurwitzArgs),
    /// Check whether a braid word stabilizes a tuple entrywise.
    Stab(HurwitzArgs),
    /// Enumerate the Hurwitz orbit of a tuple (breadth-first, capped).
    Orbit {
        /// Tuple as semicolon-separated cycles, e.g. "(1 2);(2 3)".
        #[arg(long)]
        tuple: String,
        /// Symmetric group degree; default is the largest point mentioned.
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Args)]
struct HurwitzArgs {
    /// Tuple as semicolon-separated cycles, e.g. "(1 2);(2 3)".
    #[arg(long)]
    tuple: String,
    /// Symmetric group degree; default is the largest point mentioned.
    #[arg(long)]
    degree: Option<usize>,
    /// Braid word as signed integers, e.g. "1 -2 1"; band tokens b(i,j)^e
    /// are accepted.
    #[arg(long)]
    braid: String,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// End-to-end unfolding pipeline: track the geometric basis, compute the
    /// covering tuple, check stabilization, closure, exponent sums and
    /// refinement stability.
    Bp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Plane-curve pipeline: degeneracy locus on a u-grid, tracked lassos,
    /// normalization and comparison against the palindrome generators.
    Plane {
        #[arg(long)]
        d: usize,
    },
    /// Exact braid identities: conjugation by the parallel twists delta and
    /// the redundancy relation, via handle reduction.
    Identities {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "band")]
        expansion: ExpansionArg,
    },
    /// Random check of the branch-locus elimination: the y-discriminant of
    /// y^{n+1} - (n+1)p(x)y + nq(x) is proportional to p^{n+1} - q^n.
    Star {
        #[arg(long)]
        n: usize,
        /// Unused; accepted for interface symmetry.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Grid check of the degeneracy-locus elimination: root collisions of
    /// the branch-point family happen exactly on u^{n+1} = v^n (and u = 0).
    Starstar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match build_config(&cli) {
        Ok(run) => run,
        Err(e) => return fail(&e),
    };
    let result = match &cli.command {
        Command::Gens { which } => cmd_gens(which),
        Command::Track(args) => cmd_track(args, &run),
        Command::Basis { which } => cmd_basis(which, &run),
        Command::Hurwitz { which } => cmd_hurwitz(which, &run),
        Command::Verify { which } => cmd_verify(which, &run),
        Command::Resultant { f, g } => cmd_resultant(f, g),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFICATION),
        Err(e) => fail(&e),
    }
}

fn fail(e: &CoreError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_class(e))
}

fn exit_class(e: &CoreError) -> u8 {
    match e {
        CoreError::RootsDidNotConverge { .. }
        | CoreError::RootCollision { .. }
        | CoreError::MatchingAmbiguous { .. }
        | CoreError::BoundTooSmall { .. }
        | CoreError::LeadingCoeffVanished { .. }
        | CoreError::OrbitCapExceeded { .. } => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig, CoreError> {
    let mut run = RunConfig::default();
    if let Some(path) = &cli.config {
        run.apply_file(path)?;
    }
    if let Ok(dir) = std::env::var("BRAIDMONO_OUT_DIR") {
        run.out_dir = dir;
    }
    if let Some(dir) = &cli.out_dir {
        run.out_dir = dir.display().to_string();
    }
    if let Some(v) = cli.root_tol {
        run.apply_entry("root_tol", &v.to_string())?;
    }
    if let Some(v) = cli.collision_threshold {
        run.apply_entry("collision_threshold", &v.to_string())?;
    }
    if let Some(v) = cli.radius {
        run.apply_entry("excursion_radius", &v.to_string())?;
    }
    if let Some(v) = cli.theta {
        run.apply_entry("rotation_theta", &v.to_string())?;
    }
    if let Some(v) = cli.orbit_cap {
        run.apply_entry("orbit_cap", &v.to_string())?;
    }
    if let Some(v) = cli.strand_cap {
        run.apply_entry("identity_strand_cap", &v.to_string())?;
    }
    if let Some(v) = cli.seed {
        run.apply_entry("seed", &v.to_string())?;
    }
    Ok(run)
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn emit_report<T: serde::Serialize>(report: &T) {
    let value = serde_json::to_value(report).expect("serializable");
    emit(&value);
}

fn cmd_gens(which: &GensCommand) -> Result<bool, CoreError> {
    let (gs, expansion): (GeneratorSet, BandExpansion) = match which {
        GensCommand::Thm1 { n, k, expansion } => {
            require(*n >= 1 && *k >= 1, "thm1 needs n, k >= 1")?;
            (theorem1_generators(*n, *k), (*expansion).into())
        }
        GensCommand::Thm2 { d, dedup_cap, expansion } => {
            require(*d >= 2, "thm2 needs d >= 2")?;
            let cap = dedup_cap.unwrap_or(d * (d - 1));
            (theorem2_generators(*d, cap)?, (*expansion).into())
        }
        GensCommand::Anbraids { n, expansion } => {
            require(*n >= 1, "anbraids needs n >= 1")?;
            (anbraids_generators(*n), (*expansion).into())
        }
    };
    emit(&gs.to_json(expansion));
    Ok(true)
}

fn require(cond: bool, msg: &str) -> Result<(), CoreError> {
    if cond {
        Ok(())
    } else {
        Err(CoreError::InvalidSpec { what: "argument", text: msg.to_string() })
    }
}

fn resolve_loop(spec: FamilySpec, tag: &str, bcfg: &BasisConfig) -> Result<LoopPath, CoreError> {
    let bad = || CoreError::InvalidSpec { what: "loop", text: tag.to_string() };
    match spec {
        FamilySpec::Bp { n, k } => {
            let mut basis = geometric_basis_bp(n, k, bcfg);
            if tag == "u-loop" {
                return Ok(basis.pop().unwrap());
            }
            if let Some(i) = tag.strip_prefix("radial:") {
                let i: usize = i.parse().map_err(|_| bad())?;
                if i >= 1 && i <= n {
                    return Ok(basis.swap_remove(i - 1));
                }
            }
            Err(bad())
        }
        FamilySpec::Plane { d } => {
            if let Some(j) = tag.strip_prefix("lasso:") {
                let j: usize = j.parse().map_err(|_| bad())?;
                if j >= 1 && j <= d {
                    return Ok(geometric_basis_plane(d, bcfg).swap_remove(j - 1));
                }
            }
            Err(bad())
        }
    }
}

fn cmd_track(args: &TrackArgs, run: &RunConfig) -> Result<bool, CoreError> {
    let (spec, tag_from_family) = FamilySpec::parse(&args.family)?;
    let tag = args.loop_spec.clone().or(tag_from_family).ok_or(CoreError::InvalidSpec {
        what: "loop",
        text: "no loop given (use --loop or a family spec tag)".to_string(),
    })?;
    let family: PolynomialFamily = spec.family();
    let bcfg = BasisConfig::from_run(run);
    let path = resolve_loop(spec, &tag, &bcfg)?;
    let cfg = TrackConfig::from_run(run);
    let (tb, trace) = track_loop_traced(&family, &path, &cfg)?;
    if let Some(csv) = &args.csv {
        write_trajectory_csv(&trace, &in_out_dir(run, csv))?;
    }
    if let Some(svg) = &args.svg {
        write_trajectory_svg(&trace, &in_out_dir(run, svg))?;
    }
    emit(&tb.to_json());
    Ok(true)
}

fn in_out_dir(run: &RunConfig, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        Path::new(&run.out_dir).join(path)
    }
}

fn cmd_basis(which: &BasisCommand, run: &RunConfig) -> Result<bool, CoreError> {
    let bcfg = BasisConfig::from_run(run);
    let loops = match which {
        BasisCommand::Bp { n, k } => {
            require(*n >= 1 && *k >= 1, "basis bp needs n, k >= 1")?;
            geometric_basis_bp(*n, *k, &bcfg)
        }
        BasisCommand::Plane { d } => {
            require(*d >= 2, "basis plane needs d >= 2")?;
            geometric_basis_plane(*d, &bcfg)
        }
    };
    emit(&serde_json::Value::Array(loops.iter().map(|l| l.to_json()).collect::<Vec<_>>()));
    Ok(true)
}

fn parse_tuple(text: &str, degree: Option<usize>) -> Result<HurwitzTuple, CoreError> {
    let degree = match degree {
        Some(d) => d,
        None => text
            .split(|c: char| !c.is_ascii_digit())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().unwrap_or(0))
            .max()
            .unwrap_or(1),
    };
    HurwitzTuple::parse(text, degree)
}

fn parse_braid_for(tuple: &HurwitzTuple, text: &str) -> Result<BraidWord, CoreError> {
    BraidWord::parse(text, tuple.len())
}

fn cmd_hurwitz(which: &HurwitzCommand, run: &RunConfig) -> Result<bool, CoreError> {
    match which {
        HurwitzCommand::Act(args) => {
            let tuple = parse_tuple(&args.tuple, args.degree)?;
            let braid = parse_braid_for(&tuple, &args.braid)?;
            let acted = hurwitz_act(&braid, &tuple)?;
            emit(&serde_json::json!({
                "tuple": tuple.text(),
                "braid": braid.text(),
                "result": acted.text(),
                "json": acted.to_json(),
            }));
            Ok(true)
        }
        HurwitzCommand::Stab(args) => {
            let tuple = parse_tuple(&args.tuple, args.degree)?;
            let braid = parse_braid_for(&tuple, &args.braid)?;
            let ok = stabilizes(&braid, &tuple)?;
            emit(&serde_json::json!({
                "tuple": tuple.text(),
                "braid": braid.text(),
                "stabilizes": ok,
            }));
            Ok(true)
        }
        HurwitzCommand::Orbit { tuple, degree } => {
            let tuple = parse_tuple(tuple, *degree)?;
            let report = orbit_bfs(&tuple, run.orbit_cap)?;
            emit_report(&report);
            Ok(true)
        }
    }
}

fn cmd_verify(which: &VerifyCommand, run: &RunConfig) -> Result<bool, CoreError> {
    match which {
        VerifyCommand::Bp { n, k } => {
            require(*n >= 1 && *k >= 1, "verify bp needs n, k >= 1")?;
            let report = verify_pipeline_bp(*n, *k, run)?;
            emit_report(&report);
            Ok(report.passed())
        }
        VerifyCommand::Plane { d } => {
            require(*d >= 2, "verify plane needs d >= 2")?;
            let report = verify_pipeline_plane(*d, run)?;
            emit_report(&report);
            Ok(report.passed())
        }
        VerifyCommand::Identities { n, k, expansion } => {
            require(*n >= 1 && *k >= 1, "verify identities needs n, k >= 1")?;
            let delta =
                verify_delta_conjugation(*n, *k, run.identity_strand_cap, (*expansion).into())?;
            let redundancy =
                verify_redundancy(*n, n * k, run.identity_strand_cap, (*expansion).into())?;
            let pass = delta.passed() && redundancy.passed();
            emit(&serde_json::json!({
                "delta_conjugation": delta,
                "redundancy": redundancy,
                "pass": pass,
            }));
            Ok(pass)
        }
        VerifyCommand::Star { n, k: _, trials } => {
            require(*n >= 1, "verify star needs n >= 1")?;
            let report = star_check(*n, *trials, run.seed)?;
            let pass = report["pass"].as_bool().unwrap_or(false);
            emit(&report);
            Ok(pass)
        }
        VerifyCommand::Starstar { n, k } => {
            require(*n >= 1 && *k >= 1, "verify starstar needs n, k >= 1")?;
            let grid = degeneracy_grid_bp(*n, *k, 1e-6, 1.5, 41, run.multiplicity_threshold)?;
            let pass = grid.fraction >= 0.99;
            emit(&serde_json::json!({
                "case": format!("starstar n={n} k={k}"),
                "grid": grid,
                "pass": pass,
            }));
            Ok(pass)
        }
    }
}

/// Deterministic pseudo-random check of the branch-locus elimination.
fn star_check(n: usize, trials: usize, seed: u64) -> Result<serde_json::Value, CoreError> {
    use braidmono::family::{discriminant_in_x, proportionality_error, Bivariate};
    // small xorshift; keeps the CLI free of RNG dependencies
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let dp = trial % 4;
        let dq = (trial / 4) % 4;
        let p = Poly::from_coeffs(
            (0..=dp).map(|_| num_complex::Complex64::new(next(), next())).collect(),
        );
        let q = Poly::from_coeffs(
            (0..=dq).map(|_| num_complex::Complex64::new(next(), next())).collect(),
        );
        let f = Bivariate::unfolding_shape(n, &p, &q);
        let disc = discriminant_in_x(&f, 3 * (n + 1), false)?;
        let expect = p.pow((n + 1) as u32).sub(&q.pow(n as u32));
        worst = worst.max(proportionality_error(&disc, &expect));
    }
    Ok(serde_json::json!({
        "case": format!("star n={n}"),
        "trials": trials,
        "max_rel_error": worst,
        "pass": worst < 1e-8,
    }))
}

fn parse_poly_arg(text: &str) -> Result<Poly, CoreError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|_| CoreError::InvalidSpec { what: "polynomial", text: text.to_string() })?;
    if value.is_array() {
        Poly::from_json(&serde_json::json!({ "coeffs": value }))
    } else {
        Poly::from_json(&value)
    }
}

fn cmd_resultant(f: &str, g: &str) -> Result<bool, CoreError> {
    let f = parse_poly_arg(f)?;
    let g = parse_poly_arg(g)?;
    let r = sylvester_resultant(&f, &g)?;
    emit(&serde_json::json!({ "resultant": [r.re, r.im] }));
    Ok(true)
}

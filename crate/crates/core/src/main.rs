use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

use tricert::catcoh::{
    build_toda_category, coefficient_map, diagram_functor, h3_toda_quotient, normalized_cohomology,
    truncated_proj_category,
};
use tricert::certify::{describe_cochain, run_certificate, Config, Format};
use tricert::linalg::ZModMatrix;
use tricert::toda::{toda_bracket, TodaInput};
use tricert::triangles::{is_exact, CandidateTriangle};

#[derive(Parser)]
#[command(name = "tricert", version, about = "Exact checks for triangles, Toda brackets and category cohomology over Z/4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the certificate and print its report.
    Certify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
        /// Overrides the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide whether a candidate triangle given as JSON is exact.
    ExactCheck { triangle: PathBuf },
    /// Compute ⟨h, g, f⟩ from three matrix JSON files.
    Toda {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// Cohomology of the Toda category with coefficients pulled back along 2,2,2.
    Cohomology {
        #[arg(value_enum)]
        category: CategoryName,
        #[arg(long, value_enum)]
        coeff: Coeff,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CategoryName {
    Toda,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    /// Hom(φ, φ)
    Hom,
    /// Hom(φ, Z/2 ⊗ φ)
    Hom2,
}

const MAX_DEGREE: usize = 3;

/// Failure of a check (exit 1) or of the input (exit 2).
enum Failure {
    Check,
    Input(String),
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn certify(config: Option<PathBuf>, format: &str, seed: Option<u64>) -> Result<(), Failure> {
    let format: Format = format.parse().map_err(input)?;
    let mut cfg = match config {
        Some(p) => {
            let text = fs::read_to_string(&p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Config::parse(&text).map_err(input)?
        }
        None => Config::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = run_certificate(&cfg);
    print!("{}", report.render(format));
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn exact_check(path: &Path) -> Result<(), Failure> {
    let t: CandidateTriangle = read_json(path)?;
    let w = is_exact(&t);
    println!("{}", w.describe());
    if w.is_exact() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn toda(f: &Path, g: &Path, h: &Path) -> Result<(), Failure> {
    let (f, g, h): (ZModMatrix, ZModMatrix, ZModMatrix) = (read_json(f)?, read_json(g)?, read_json(h)?);
    let diagram = TodaInput::new(f, g, h).map_err(input)?;
    let b = toda_bracket(&diagram).map_err(input)?;
    println!("bracket: {b}");
    println!("representative: {}", b.representative());
    println!("indeterminacy: {}", b.indeterminacy_group());
    println!("zero: {}", b.is_zero());
    Ok(())
}

fn cohomology(coeff: Coeff, degree: usize) -> Result<(), Failure> {
    if degree > MAX_DEGREE {
        return Err(Failure::Input(format!("degree {degree} exceeds {MAX_DEGREE}")));
    }
    let t = build_toda_category();
    let p = truncated_proj_category(4, 1).map_err(input)?;
    let two = ZModMatrix::from_rows(4, &[&[2]]);
    let phi = diagram_functor(&t, &p, [&two, &two, &two]).map_err(input)?;
    let (src, dst, _) = coefficient_map(&p, &[2], &[4], &two).map_err(input)?;
    let (l, name) = match coeff {
        Coeff::Hom => (dst.pullback(&t, &phi), "Hom(φ,φ)"),
        Coeff::Hom2 => (src.pullback(&t, &phi), "Hom(φ, Z/2⊗φ)"),
    };
    let nc = normalized_cohomology(&t, &l, degree).map_err(input)?;
    println!("H^{degree}(Toda, {name}) ≅ {}", nc.full.group());
    println!("invariant factors: {:?}", nc.full.group().factors());
    println!("normalized: {}", nc.normalized.group());
    if degree == 3 {
        let q = h3_toda_quotient(&t, &l).map_err(input)?;
        println!("quotient formula: {}", q.group());
    }
    for (k, g) in nc.normalized.generators().iter().enumerate() {
        println!("generator {}: {}", k + 1, describe_cochain(&t, g));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Certify {
            suite: Suite::All,
            config,
            format,
            seed,
        } => certify(config, &format, seed),
        Command::ExactCheck { triangle } => exact_check(&triangle),
        Command::Toda { f, g, h } => toda(&f, &g, &h),
        Command::Cohomology {
            category: CategoryName::Toda,
            coeff,
            degree,
        } => cohomology(coeff, degree),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

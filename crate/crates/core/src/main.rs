use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use knotbound::blanchfield::{blanchfield_table, pairing_audit};
use knotbound::bounds::{bounds_report, BoundsOptions, SourcedCertificate};
use knotbound::certificate::{verify_certificate_with, Certificate};
use knotbound::orders::{nakanishi_lower_bound, snf_over_fp, DEFAULT_PRIMES};
use knotbound::report::{emit_json, parse_table, run_report, ReportDocument, ReportOptions};
use knotbound::seifert::parse_theta;
use knotbound::{Error, SeifertMatrix};

#[derive(Parser)]
#[command(name = "knotbound", version, about = "Certified bounds on the algebraic unknotting number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Alexander polynomial.
    Alex(KnotArg),
    /// Signature at -1 and Levine-Tristram signatures at exp(2 pi i theta).
    Sig {
        #[command(flatten)]
        knot: KnotArg,
        /// Rational in (0, 1), e.g. 1/4; may be repeated.
        #[arg(long)]
        theta: Vec<String>,
    },
    /// Mod-p lower bound on the number of generators of the Alexander module.
    Nakanishi {
        #[command(flatten)]
        knot: KnotArg,
        #[command(flatten)]
        primes: PrimesArg,
    },
    /// Blanchfield pairing table on the standard generators.
    Blanchfield(KnotArg),
    /// Verify a certificate file.
    Certify {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 10)]
        radius: u32,
    },
    /// Lower and upper bounds for one knot.
    Bounds {
        #[command(flatten)]
        knot: KnotArg,
        /// Certificate files to try; may be repeated.
        #[arg(long)]
        cert: Vec<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Bounds for every knot of a table, as JSON.
    Report {
        table: PathBuf,
        /// Directory holding `<name>.cert` files.
        #[arg(long)]
        certs: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the JSON here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// A knot given inline as a Seifert matrix ("-1, 1; 0, -1") or by name from
/// a table.
#[derive(Args)]
struct KnotArg {
    #[arg(allow_hyphen_values = true, required_unless_present = "name")]
    seifert: Option<String>,
    #[arg(long, requires = "name")]
    table: Option<PathBuf>,
    #[arg(long, requires = "table")]
    name: Option<String>,
}

#[derive(Args)]
struct PrimesArg {
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
    primes: Vec<u64>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    primes: PrimesArg,
    #[arg(long, default_value_t = 2)]
    degree_bound: u32,
    #[arg(long, default_value_t = 2)]
    height_bound: u32,
    #[arg(long, default_value_t = 10)]
    radius: u32,
    /// Only verify supplied certificates.
    #[arg(long)]
    no_search: bool,
}

impl SearchArgs {
    fn options(&self) -> BoundsOptions {
        BoundsOptions {
            primes: self.primes.primes.clone(),
            degree_bound: self.degree_bound,
            height_bound: self.height_bound,
            radius: self.radius,
            search: !self.no_search,
        }
    }
}

impl KnotArg {
    fn resolve(&self) -> Result<(String, SeifertMatrix), Error> {
        if let (Some(table), Some(name)) = (&self.table, &self.name) {
            let rec = parse_table(table)?
                .into_iter()
                .find(|r| &r.name == name)
                .ok_or_else(|| Error::Parse(format!("no knot named {name:?} in {}", table.display())))?;
            return Ok((rec.name, rec.seifert));
        }
        let text = self.seifert.as_deref().unwrap_or_default();
        Ok(("input".to_string(), SeifertMatrix::new(text.parse()?)?))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Alex(k) => {
            let (_, v) = k.resolve()?;
            println!("{}", v.alexander_polynomial()?);
        }
        Command::Sig { knot, theta } => {
            let (_, v) = knot.resolve()?;
            println!("sigma(-1) = {}", v.signature_at_minus_one());
            for th in theta {
                let s = v.levine_tristram_signature(&parse_theta(&th)?)?;
                println!("sigma(theta = {}) = {}", s.theta, s.value);
            }
        }
        Command::Nakanishi { knot, primes } => {
            let (_, v) = knot.resolve()?;
            let p = v.alexander_presentation();
            for &q in &primes.primes {
                let s = snf_over_fp(&p, q)?;
                let factors: Vec<String> = s.invariant_factors.iter().map(|f| f.to_string()).collect();
                println!("p = {q}: generators {} [{}]", s.generator_count(), factors.join(", "));
            }
            println!("nakanishi >= {}", nakanishi_lower_bound(&p, &primes.primes)?);
        }
        Command::Blanchfield(k) => {
            let (_, v) = k.resolve()?;
            let b = blanchfield_table(&v)?;
            println!("delta = {}", b.delta);
            for (i, row) in b.table.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    println!("Bl(e{}, e{}) = {x}", i + 1, j + 1);
                }
            }
            let audit = pairing_audit(&b);
            println!(
                "audit: hermitian {}, delta-annihilated {}, sesquilinear {}",
                audit.hermitian, audit.delta_annihilates, audit.sesquilinear
            );
        }
        Command::Certify { knot, cert, radius } => {
            let (_, v) = knot.resolve()?;
            let c = Certificate::read(&cert)?;
            match verify_certificate_with(&v, &c, radius) {
                Ok(b) => println!(
                    "PASS: u_a <= {} with (n_plus, n_minus) = ({}, {}); predicted target {}",
                    b.n, b.n_plus, b.n_minus, b.predicted_target
                ),
                Err(f) => {
                    println!("FAIL: {f}");
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Bounds { knot, cert, search, json } => {
            let (name, v) = knot.resolve()?;
            let certs = cert
                .iter()
                .map(|p| {
                    Ok(SourcedCertificate {
                        source: format!("file:{}", p.display()),
                        certificate: Certificate::read(p)?,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let r = bounds_report(&name, &v, &certs, &search.options())?;
            println!(
                "{}: {} <= u_a <= {}{} ({})",
                r.name,
                r.lower,
                r.upper,
                if r.upper_certified { "" } else { " (uncertified)" },
                r.status
            );
            for f in &r.failures {
                println!("  rejected {f}");
            }
            if let Some(path) = json {
                emit_json(&ReportDocument::new(vec![r]), &path)?;
            }
        }
        Command::Report { table, certs, threads, search, json } => {
            let records = parse_table(&table)?;
            let opts = ReportOptions { bounds: search.options(), certs_dir: certs, threads };
            let doc = run_report(&records, &opts)?;
            match json {
                Some(path) => {
                    emit_json(&doc, &path)?;
                    for r in &doc.reports {
                        match &r.error {
                            Some(e) => println!("{}: error: {e}", r.name),
                            None => println!("{}: {} <= u_a <= {} ({})", r.name, r.lower, r.upper, r.status),
                        }
                    }
                }
                None => print!("{}", doc.to_json()),
            }
            if doc.has_errors() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

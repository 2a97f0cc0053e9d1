use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rug::{Float, Integer};
use serde_json::json;

use d0q::arith::{parse_rational, parse_real, reported_digits, to_decimal_string, DEFAULT_PREC, MIN_PREC};
use d0q::curve::CurveModel;
use d0q::eisenstein::{HeckeIndex, QExpansion, Twist};
use d0q::families::family_curve;
use d0q::periods::period_lattice;
use d0q::recognize::recognize_rational;
use d0q::verify::{run_all, table_row, verify_instance, verify_row, Summary, VerificationReport, TABLE};
use d0q::Error;

#[derive(Parser)]
#[command(
    name = "d0q",
    version,
    about = "q-averaged 0-logarithms on torsion families of elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    Gk,
    Hk,
    Alpha,
    Cusp0,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwistArg {
    Plain,
    Half,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one table row, at one parameter or at the first few admissible ones
    Verify {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        k: u32,
        /// family parameter, e.g. 3 or -1/2
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify every table row
    VerifyAll {
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print exact q-expansion coefficients, one `n/d<TAB>poly in z` line each
    Expand {
        #[arg(long, value_enum)]
        series: Series,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        ell: Option<i64>,
        #[arg(long, value_enum, default_value_t = TwistArg::Plain)]
        twist: TwistArg,
        #[arg(long)]
        terms: usize,
    },
    /// Real period and normalized lattice of y² + a1xy + a3y = x³ + a2x² + a4x + a6
    Period {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a1: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a2: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a3: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a4: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a6: String,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Recognize a decimal as a rational of bounded height
    Recognize {
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long, default_value = "1000000000000")]
        max_height: String,
        #[arg(long)]
        tol: String,
    },
}

fn check_prec(prec: u32) -> Result<(), Error> {
    if prec < MIN_PREC {
        return Err(Error::InvalidArgument(format!(
            "--prec-bits must be at least {MIN_PREC}"
        )));
    }
    Ok(())
}

fn print_summary(summary: &Summary, format: Format) {
    match format {
        Format::Json => {
            let scans: Vec<_> = summary
                .scans
                .iter()
                .map(|s| {
                    json!({
                        "N": s.n,
                        "k": s.k,
                        "scanned": s.scanned,
                        "found": s.found.as_ref().map(|t| t.to_string()),
                    })
                })
                .collect();
            let doc = json!({
                "table_checksum": summary.checksum,
                "precision": summary.precision,
                "all_match": summary.all_match(),
                "reports": summary.reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
                "case_b_scans": scans,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
        }
        Format::Csv => {
            eprintln!("table checksum {}", summary.checksum);
            println!("{}", VerificationReport::CSV_HEADER);
            for r in &summary.reports {
                println!("{}", r.to_csv());
            }
        }
        Format::Text => {
            println!("table checksum {}", summary.checksum);
            for s in &summary.scans {
                match &s.found {
                    Some(t) => println!(
                        "case-B scan N={} k={}: t={} after {} candidates",
                        s.n, s.k, t, s.scanned
                    ),
                    None => println!("case-B scan N={} k={}: none in {} candidates", s.n, s.k, s.scanned),
                }
            }
            for r in &summary.reports {
                println!("{}", r.to_text());
            }
            let matched = summary.reports.iter().filter(|r| r.matched).count();
            println!(
                "{matched}/{} instances match ({} in case B)",
                summary.reports.len(),
                summary.case_b_count()
            );
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Verify {
            n,
            k,
            param,
            samples,
            prec_bits,
            format,
        } => {
            check_prec(prec_bits)?;
            let row = table_row(n, k)?;
            let (reports, scans) = match param {
                Some(p) => {
                    let t = parse_rational(&p)?;
                    family_curve(n, &t)?;
                    (vec![verify_instance(row, &t, prec_bits)], Vec::new())
                }
                None => {
                    let (reports, scan) = verify_row(n, k, samples, prec_bits)?;
                    (reports, scan.into_iter().collect())
                }
            };
            let summary = Summary {
                reports,
                scans,
                checksum: d0q::verify::table_checksum(),
                precision: prec_bits,
            };
            print_summary(&summary, format);
            Ok(summary.exit_code())
        }
        Command::VerifyAll {
            samples,
            prec_bits,
            format,
        } => {
            check_prec(prec_bits)?;
            let summary = run_all(prec_bits, samples);
            print_summary(&summary, format);
            if let Format::Text = format {
                let rows_ok = TABLE
                    .iter()
                    .filter(|row| {
                        summary
                            .reports
                            .iter()
                            .filter(|r| r.n == row.n && r.k == row.k)
                            .all(|r| r.matched)
                    })
                    .count();
                println!("{rows_ok}/{} rows pass", TABLE.len());
            }
            Ok(summary.exit_code())
        }
        Command::Expand {
            series,
            n,
            k,
            a,
            b,
            ell,
            twist,
            terms,
        } => {
            if terms == 0 {
                return Err(Error::InvalidArgument("--terms must be positive".into()));
            }
            let need_k = || k.ok_or_else(|| Error::InvalidArgument("--k is required for this series".into()));
            let n_max = terms - 1;
            let exp = match series {
                Series::Gk => QExpansion::gk(n, need_k()?, n_max)?,
                Series::Hk => QExpansion::hk(n, need_k()?, n_max)?,
                Series::Alpha => {
                    let (Some(a), Some(b)) = (a, b) else {
                        return Err(Error::InvalidArgument("--a and --b are required for alpha".into()));
                    };
                    QExpansion::alpha(&HeckeIndex::new(n, a, b)?, n_max)
                }
                Series::Cusp0 => {
                    let ell = ell
                        .or(k)
                        .ok_or_else(|| Error::InvalidArgument("--ell is required for cusp0".into()))?;
                    let twist = match twist {
                        TwistArg::Plain => Twist::Plain,
                        TwistArg::Half => Twist::Half,
                    };
                    QExpansion::cusp0(n, ell, twist, n_max)?
                }
            };
            print!("{}", exp.dump());
            Ok(0)
        }
        Command::Period {
            a1,
            a2,
            a3,
            a4,
            a6,
            prec_bits,
            format,
        } => {
            check_prec(prec_bits)?;
            let curve = CurveModel::new(
                parse_rational(&a1)?,
                parse_rational(&a2)?,
                parse_rational(&a3)?,
                parse_rational(&a4)?,
                parse_rational(&a6)?,
            )?;
            let pd = period_lattice(&curve, prec_bits)?;
            let digits = reported_digits(prec_bits);
            let omega = to_decimal_string(&pd.omega_plus, digits);
            let tau_re = to_decimal_string(pd.tau.real(), digits);
            let tau_im = to_decimal_string(pd.tau.imag(), digits);
            let q = to_decimal_string(&pd.q, digits);
            match format {
                Format::Json => {
                    let doc = json!({
                        "omega_plus": omega,
                        "tau": {"re": tau_re, "im": tau_im},
                        "q": q,
                        "components": pd.components,
                        "dual_path_log2": pd.dual_path_log2,
                        "precision": prec_bits,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
                }
                Format::Csv => {
                    println!("omega_plus,tau_re,tau_im,q,components,dual_path_log2,precision");
                    println!(
                        "{omega},{tau_re},{tau_im},{q},{},{:.1},{prec_bits}",
                        pd.components, pd.dual_path_log2
                    );
                }
                Format::Text => {
                    println!("Omega+     {omega}");
                    println!("tau        {tau_re} + {tau_im}*i");
                    println!("q          {q}");
                    println!("components {}", pd.components);
                    println!("AGM vs quadrature gap 2^{:.1}", pd.dual_path_log2);
                }
            }
            Ok(0)
        }
        Command::Recognize { value, max_height, tol } => {
            let max_height: Integer = max_height
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad --max-height {max_height:?}")))?;
            // enough bits for every digit given, plus a margin
            let digits = value.chars().filter(|c| c.is_ascii_digit()).count() as u32;
            let prec = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
            let x: Float = parse_real(&value, prec.max(DEFAULT_PREC))?;
            let tol = parse_real(&tol, 64)?;
            match recognize_rational(&x, &max_height, &tol)? {
                Some(r) => {
                    println!("{}", r.value);
                    println!("residual {}", to_decimal_string(&r.residual, 6));
                    println!("height {}", r.height);
                    Ok(0)
                }
                None => {
                    println!("none");
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

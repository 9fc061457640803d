//! Command-line front end: single Reidemeister numbers, spectrum
//! enumeration, theta classification, the closed-form verification battery,
//! and the formula-vs-oracle cokernel check.
//!
//! Exit codes: 0 success, 2 parse or validation failure, 3 incompatible
//! (N, eps) for the given theta, 4 general theta without --coeff-bound,
//! 5 a spectrum discrepancy was found (everything is still printed).

mod docs;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use reispec_core::verify::{run_verification, Status};
use reispec_core::{
    check_automorphism, classify_theta, clause_for, closed_form, coker_card_formula,
    coker_card_oracle, decide_q_spectrum, enumerate_spectrum, reidemeister_semidirect, EnumBound,
    Error, Matrix, QSpectrumDecision, Ring, SpectrumReport, ThetaCase,
};

const EXIT_PARSE: u8 = 2;
const EXIT_INCOMPATIBLE: u8 = 3;
const EXIT_NEEDS_BOUND: u8 = 4;
const EXIT_DISCREPANCY: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Lines,
}

#[derive(Parser)]
#[command(
    name = "reispec",
    about = "Exact Reidemeister numbers and spectra of Q^n x| Z and Z[1/p]^n x| Z",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reidemeister number of one automorphism (group file + auto file)
    Rnum {
        group: PathBuf,
        auto: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Enumerate the spectrum of a group within bounds
    Spectrum {
        group: PathBuf,
        /// Unit exponent bound t (exponents range over [-t, t])
        #[arg(long, default_value_t = 4)]
        bound: u32,
        /// Drop finite values above this cap
        #[arg(long = "value-cap", default_value_t = 1000)]
        value_cap: u64,
        /// Numerator bound for the general-theta search
        #[arg(long = "coeff-bound")]
        coeff_bound: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Classify theta and report the applicable closed-form clause
    Classify {
        group: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run the whole closed-form reproduction battery
    Verify {
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long = "value-cap", default_value_t = 1000)]
        value_cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Cokernel cardinality of a matrix over Z[1/p]: determinant formula
    /// and Smith-form oracle side by side
    Oracle {
        /// Matrix text, rows separated by `;`, entries by `,`
        matrix: String,
        /// The prime p of Z[1/p]
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Rnum {
            group,
            auto,
            format,
        } => cmd_rnum(&group, &auto, format),
        Command::Spectrum {
            group,
            bound,
            value_cap,
            coeff_bound,
            format,
        } => cmd_spectrum(&group, bound, value_cap, coeff_bound, format),
        Command::Classify { group, format } => cmd_classify(&group, format),
        Command::Verify {
            bound,
            value_cap,
            format,
        } => cmd_verify(bound, value_cap, format),
        Command::Oracle { matrix, p, format } => cmd_oracle(&matrix, p, format),
    };
    ExitCode::from(code)
}

fn read_file(path: &PathBuf) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn load_group(path: &PathBuf) -> Result<reispec_core::GroupDesc, u8> {
    let text = read_file(path)?;
    docs::parse_group(&text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_PARSE
    })
}

fn join_set(set: &BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().take(25).map(u64::to_string).collect();
    if set.len() > 25 {
        format!("[{},+{} more]", items.join(","), set.len() - 25)
    } else {
        format!("[{}]", items.join(","))
    }
}

fn cmd_rnum(group_path: &PathBuf, auto_path: &PathBuf, format: Format) -> u8 {
    let group = match load_group(group_path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let auto_text = match read_file(auto_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let auto = match docs::parse_auto(&auto_text, group.n()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    match check_automorphism(&group, &auto) {
        Ok(true) => {}
        Ok(false) => {
            eprintln!("error: incompatible (N, eps) for this theta");
            return EXIT_INCOMPATIBLE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    }
    let result = reidemeister_semidirect(&group, &auto).expect("validated above");
    match format {
        Format::Human => match &result.parts {
            Some((a, b)) => println!("R = {} (= {} + {})", result.total, a, b),
            None => println!("R = {}", result.total),
        },
        Format::Lines => {
            println!("R {}", result.total);
            if let Some((a, b)) = &result.parts {
                println!("SUMMAND {a}");
                println!("SUMMAND {b}");
            }
        }
    }
    0
}

fn print_spectrum_report(report: &SpectrumReport, format: Format) {
    if format == Format::Human {
        println!(
            "# ring {}, n = {}, theta case {}, clause {}",
            report.ring,
            report.n,
            report.theta_case,
            report
                .clause
                .map(|c| c.to_string())
                .unwrap_or_else(|| "none".into()),
        );
        println!(
            "# bound t = {}, value cap = {}",
            report.bound.exponent, report.bound.value_cap
        );
    }
    for (value, witness) in &report.computed {
        println!("SPEC {value} WITNESS {}", witness.restriction);
    }
    println!("SPEC inf");
    if let Some(clause) = report.clause {
        for cmp in &report.comparisons {
            if cmp.matches {
                println!("CLOSED-FORM {clause} {} MATCH {}", cmp.variant, cmp.display);
            } else {
                println!(
                    "CLOSED-FORM {clause} {} DISCREPANCY extra={} unattained={} {}",
                    cmp.variant,
                    join_set(&cmp.extra_computed),
                    join_set(&cmp.unattained),
                    cmp.display
                );
            }
        }
    }
    for note in &report.notes {
        println!("NOTE {note}");
    }
}

fn cmd_spectrum(
    group_path: &PathBuf,
    bound: u32,
    value_cap: u64,
    coeff_bound: Option<u32>,
    format: Format,
) -> u8 {
    let group = match load_group(group_path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let bounds = EnumBound {
        exponent: bound,
        value_cap,
        coeff_bound,
    };
    let report = match enumerate_spectrum(&group, &bounds) {
        Ok(r) => r,
        Err(Error::GeneralThetaNeedsBound) => {
            eprintln!("error: general theta requires explicit search bound (--coeff-bound)");
            return EXIT_NEEDS_BOUND;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    print_spectrum_report(&report, format);
    if report.has_discrepancy() {
        EXIT_DISCREPANCY
    } else {
        0
    }
}

fn cmd_classify(group_path: &PathBuf, format: Format) -> u8 {
    let group = match load_group(group_path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let case = classify_theta(&group);
    let clause = clause_for(&group);

    if format == Format::Lines {
        println!("CASE {case}");
        match clause {
            Some(c) => println!("CLAUSE {c}"),
            None => println!("CLAUSE none"),
        }
    } else {
        println!("theta case: {case}");
    }

    if *group.ring() == Ring::Rationals {
        let decision = decide_q_spectrum(group.theta()).expect("theta validated invertible");
        let clause_name = clause.map(|c| c.to_string()).unwrap_or_else(|| "none".into());
        match (&decision, format) {
            (QSpectrumDecision::TwoAndInf { witness }, Format::Human) => {
                println!("case {clause_name}, Spec = {{2, inf}}");
                println!("R-infinity: no; witness N = {witness}");
            }
            (QSpectrumDecision::InfOnly(cert), Format::Human) => {
                println!("case {clause_name}, Spec = {{inf}}");
                if cert.centralizer_dim == 0 {
                    println!("R-infinity: yes (centralizer space trivial)");
                } else {
                    println!(
                        "R-infinity: yes (product polynomial identically zero on the \
                         centralizer space, dim {})",
                        cert.centralizer_dim
                    );
                }
            }
            (QSpectrumDecision::TwoAndInf { witness }, Format::Lines) => {
                println!("SPECSET {{2, inf}}");
                println!("VERDICT two-and-inf");
                println!("WITNESS {witness}");
            }
            (QSpectrumDecision::InfOnly(cert), Format::Lines) => {
                println!("SPECSET {{inf}}");
                println!("VERDICT inf-only");
                println!(
                    "CERTIFICATE dim={} grid-points={}",
                    cert.centralizer_dim, cert.grid_points
                );
            }
        }
        return 0;
    }

    match clause.and_then(|c| closed_form(c, group.ring())) {
        Some(catalog) => {
            if format == Format::Human {
                println!("case {}, Spec = {}", catalog.clause, catalog.stated().display);
                for fam in catalog.families.iter().skip(1) {
                    println!("variant {}: Spec = {}", fam.variant, fam.display);
                }
                for note in &catalog.notes {
                    println!("note: {note}");
                }
            } else {
                for fam in &catalog.families {
                    println!("SPECSET {} {}", fam.variant, fam.display);
                }
            }
        }
        None => {
            let message = match case {
                ThetaCase::General | ThetaCase::Identity => {
                    "no closed form; bounded search only (absence is not proof of R-infinity)"
                }
                _ => "no closed form catalogued",
            };
            if format == Format::Human {
                println!("case GENERAL: {message}");
            } else {
                println!("SPECSET none");
            }
        }
    }
    0
}

fn cmd_verify(bound: u32, value_cap: u64, format: Format) -> u8 {
    let report = run_verification(&EnumBound {
        exponent: bound,
        value_cap,
        coeff_bound: None,
    });
    for check in &report.checks {
        match check.status {
            Status::Pass => println!("{} PASS", check.id),
            Status::Discrepancy => println!("{} DISCREPANCY({})", check.id, check.detail),
            Status::Fail => println!("{} FAIL({})", check.id, check.detail),
        }
    }
    if format == Format::Human {
        println!(
            "verify: {} pass, {} discrepancy, {} fail",
            report.passed(),
            report.discrepancies(),
            report.failed()
        );
    }
    if report.failed() == 0 {
        0
    } else {
        1
    }
}

fn cmd_oracle(matrix_text: &str, p: u32, format: Format) -> u8 {
    let matrix: Matrix = match matrix_text.parse() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let ring = match Ring::p_local(p) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let det = match matrix.det() {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let formula = match coker_card_formula(&matrix, &ring) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let oracle = coker_card_oracle(&matrix, p).expect("membership checked by formula");
    let agree = formula == oracle;
    match format {
        Format::Human => {
            println!("det = {det}");
            println!("formula = {formula}");
            println!("oracle = {oracle}");
            println!("{}", if agree { "AGREE" } else { "MISMATCH" });
        }
        Format::Lines => {
            println!("DET {det}");
            println!("FORMULA {formula}");
            println!("ORACLE {oracle}");
            println!("{}", if agree { "AGREE" } else { "MISMATCH" });
        }
    }
    u8::from(!agree)
}

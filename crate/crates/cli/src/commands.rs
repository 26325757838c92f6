use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use whcalc_core::ahss::{build_e2, run_differentials, ChartTarget};
use whcalc_core::steenrod::GradedDims;
use whcalc_core::torsion::{check_hypotheses, max_profile_degree, wh_torsion_profile, Hypotheses};
use whcalc_core::whcohomology::{h_wh_report, PieceBlock};
use whcalc_core::OddPrime;

use crate::document::{Document, Header, Payload, PieceSelection};
use crate::error::CliError;
use crate::render::{emit, Format};
use crate::verify::run_verify;

pub const CAP_VAR: &str = "WHCALC_MAX_DEGREE_CAP";
pub const DEFAULT_CAP: i64 = 512;
pub const DEFAULT_COHOMOLOGY_DEGREE: i64 = 40;

#[derive(Debug, Parser)]
#[command(name = "whcalc", version, about = "p-torsion and mod p cohomology of the smooth Whitehead spectrum")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    JCp,
    SCp,
    SCpbar,
}

impl From<TargetArg> for ChartTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::JCp => ChartTarget::JOfCp,
            TargetArg::SCp => ChartTarget::SOfCp,
            TargetArg::SCpbar => ChartTarget::SOfCpbar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PageArg {
    E2,
    Einf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PieceArg {
    All,
    SigmaC,
    Hp,
    Coker,
    Ker,
    Total,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-torsion orders in pi_*(Wh(*)).
    PiWh {
        #[arg(long)]
        p: u64,
        /// Defaults to the top of the determined range, (2p+1)q-4.
        #[arg(long, allow_negative_numbers = true)]
        max_degree: Option<i64>,
        #[arg(long)]
        assume_regular: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Atiyah-Hirzebruch chart for j_*(CP), pi_*(CP) or pi_*(CPbar_{-1}).
    Ahss {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TargetArg::SCpbar)]
        target: TargetArg,
        #[arg(long, value_enum, default_value_t = PageArg::Einf)]
        page: PageArg,
        /// Defaults to the top of the chart's window.
        #[arg(long, allow_negative_numbers = true)]
        max_degree: Option<i64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graded dimensions of H^*(Wh(*); F_p) by piece.
    Cohomology {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_COHOMOLOGY_DEGREE)]
        max_degree: i64,
        #[arg(long, value_enum, default_value_t = PieceArg::All)]
        piece: PieceArg,
        #[arg(long)]
        assume_regular: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs the oracle cross-checks and prints a pass/fail matrix.
    Verify {
        /// Comma-separated primes; defaults to 3,5,7.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        /// Use larger degree bounds.
        #[arg(long)]
        deep: bool,
    },
}

/// Text for stdout (or the output file) and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub out: Option<PathBuf>,
    pub status: i32,
}

pub fn degree_cap() -> Result<i64, CliError> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::BadCap(v)),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn check_cap(max_degree: i64) -> Result<(), CliError> {
    let cap = degree_cap()?;
    if max_degree > cap {
        return Err(CliError::Cap {
            what: "max-degree",
            value: max_degree,
            cap,
        });
    }
    Ok(())
}

pub fn pi_wh(p: u64, max_degree: Option<i64>, assume_regular: bool) -> Result<Document, CliError> {
    let p = OddPrime::new(p)?;
    let hyp = Hypotheses { assume_regular };
    let assumptions = check_hypotheses(p, hyp)?;
    let max = max_degree.unwrap_or_else(|| max_profile_degree(p));
    check_cap(max)?;
    let profile = wh_torsion_profile(p, max, hyp)?;
    let mut command = format!("pi-wh --p {p} --max-degree {max}");
    if assume_regular {
        command.push_str(" --assume-regular");
    }
    Ok(Document {
        header: Header::new(command, p.get(), assumptions),
        payload: Payload::TorsionProfile(profile),
    })
}

pub fn ahss(p: u64, target: TargetArg, page: PageArg, max_degree: Option<i64>) -> Result<Document, CliError> {
    let p = OddPrime::new(p)?;
    let chart_target = ChartTarget::from(target);
    let max = max_degree.unwrap_or_else(|| chart_target.total_degree_bound(p) - 1);
    check_cap(max)?;
    let e2 = build_e2(p, chart_target, max)?;
    let chart = match page {
        PageArg::E2 => e2,
        PageArg::Einf => run_differentials(&e2)?,
    };
    let command = format!(
        "ahss --p {p} --target {} --page {} --max-degree {max}",
        target.to_possible_value().expect("named").get_name(),
        page.to_possible_value().expect("named").get_name(),
    );
    Ok(Document {
        header: Header::new(command, p.get(), Vec::new()),
        payload: Payload::AhssChart(chart.to_document()),
    })
}

pub fn cohomology(p: u64, max_degree: i64, piece: PieceArg, assume_regular: bool) -> Result<Document, CliError> {
    let p = OddPrime::new(p)?;
    check_cap(max_degree)?;
    let report = h_wh_report(p, max_degree, Hypotheses { assume_regular })?;
    let piece_name = piece.to_possible_value().expect("named").get_name().to_string();
    let mut command = format!("cohomology --p {p} --max-degree {max_degree} --piece {piece_name}");
    if assume_regular {
        command.push_str(" --assume-regular");
    }
    let header = Header::new(command, p.get(), report.assumptions.clone());
    let block = match piece {
        PieceArg::All => {
            return Ok(Document {
                header,
                payload: Payload::Cohomology(report),
            })
        }
        PieceArg::Total => None,
        PieceArg::SigmaC => Some(PieceBlock::SigmaC),
        PieceArg::Hp => Some(PieceBlock::Hp),
        PieceArg::Coker => Some(PieceBlock::Coker),
        PieceArg::Ker => Some(PieceBlock::Ker),
    };
    let (pieces, dims) = match block {
        None => (Vec::new(), report.total.clone()),
        Some(b) => {
            let pieces: Vec<_> = report.block(b).cloned().collect();
            let mut dims = GradedDims::new();
            for x in &pieces {
                dims.add(&x.dims);
            }
            (pieces, dims)
        }
    };
    Ok(Document {
        header,
        payload: Payload::CohomologyPieces(PieceSelection {
            p: p.get(),
            max_degree,
            piece: piece_name,
            pieces,
            dims,
        }),
    })
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let (doc, output) = match cli.command {
        Command::PiWh {
            p,
            max_degree,
            assume_regular,
            output,
        } => (pi_wh(p, max_degree, assume_regular)?, output),
        Command::Ahss {
            p,
            target,
            page,
            max_degree,
            output,
        } => (ahss(p, target, page, max_degree)?, output),
        Command::Cohomology {
            p,
            max_degree,
            piece,
            assume_regular,
            output,
        } => (cohomology(p, max_degree, piece, assume_regular)?, output),
        Command::Verify { p, deep } => {
            let primes = if p.is_empty() { vec![3, 5, 7] } else { p };
            let report = run_verify(&primes, deep)?;
            return Ok(Outcome {
                status: if report.passed() { 0 } else { 1 },
                text: report.to_string(),
                out: None,
            });
        }
    };
    Ok(Outcome {
        text: emit(&doc, output.format)?,
        out: output.out,
        status: 0,
    })
}

//! `gsswit`: classify Gaussian squeezed states, evaluate witnesses and HBT
//! visibilities, regenerate plot data and cross-check against the Fock
//! oracle.

mod figures;
mod oracle;
mod states;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use gsswit_core::interference::classical_inequality_report;
use gsswit_core::transforms::{amplifier_output, is_classical_threshold, AmplifierGains};
use gsswit_core::witness::Verdict;
use gsswit_core::Error as CoreError;

use states::{Angles, Fields, StateSpec};
use table::{Format, Table, Value};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InvalidInput(pub String);

#[derive(Debug, thiserror::Error)]
#[error("oracle disagreement: {0}")]
pub struct OracleDisagreement(pub String);

#[derive(Debug, Parser)]
#[command(name = "gsswit", version, about = "Gaussian squeezed-state classification, HBT visibilities and entanglement witnesses")]
struct Cli {
    /// Also build the truncated Fock density and report deviations from the closed forms.
    #[arg(long, global = true)]
    oracle: bool,
    /// Photon-number cutoff per mode for the Fock oracle.
    #[arg(long, global = true, default_value_t = 40)]
    cutoff: usize,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Read and print angles in radians instead of units of pi.
    #[arg(long, global = true)]
    radians: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Physicality, classicality or separability, purity, witnesses and visibilities of a state.
    Classify {
        /// Write the oracle density to this file (binary dump, needs --oracle).
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(subcommand)]
        state: StateSpec,
    },
    /// Output of a phase-sensitive amplifier with gains G and H acting on vacuum.
    Amplifier {
        #[arg(long)]
        g: f64,
        #[arg(long)]
        h: f64,
    },
    /// W2 for one-mode states, W_HBT for two-mode states.
    Witness {
        #[command(subcommand)]
        state: StateSpec,
    },
    /// HBT fringe visibilities and the classical bounds they are checked against.
    Visibility {
        #[command(subcommand)]
        state: StateSpec,
    },
    /// Data behind one of the plots: 1, 3, 4, 5, 6, 8, 8.1, 10, 11.
    Figure {
        id: String,
        /// Evenly spaced grid points (landmark abscissae are added on top).
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Input squeezing |m| for plot 10.
        #[arg(long)]
        m: Option<f64>,
    },
    /// Closed form vs Fock oracle concordance on random states.
    OracleCheck {
        #[arg(long, default_value_t = 10)]
        states: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        n_max: f64,
        /// Longest normally ordered word compared.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Sweep one parameter of a state and report every analytic quantity.
    Sweep {
        /// Parameter to vary: n, m, mc, p, phase, lambda, lambda1 or lambda2.
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 51)]
        points: usize,
        #[command(subcommand)]
        state: StateSpec,
    },
}

struct Output {
    table: Table,
    format: Format,
    /// Error to report after the table has been written.
    after: Option<anyhow::Error>,
}

impl Output {
    fn new(table: Table, format: Format) -> Self {
        Output {
            table,
            format,
            after: None,
        }
    }
}

fn record(fields: Fields, formula: &str) -> Table {
    Table::record(formula, fields)
}

fn classify(cli: &Cli, state: &StateSpec, dump: Option<&PathBuf>, angles: Angles) -> Result<Output> {
    let mut fields = states::parameter_fields(state, angles);
    fields.extend(states::analytic_fields(state, angles)?);
    let mut after = None;
    if cli.oracle {
        let report = states::oracle_fields(state, angles, cli.cutoff)?;
        if let Some(path) = dump {
            states::write_dump(&report.density, path)?;
        }
        fields.extend(report.fields.iter().cloned());
        after = states::check_oracle(&report).err();
    } else if dump.is_some() {
        bail!(InvalidInput("--dump needs --oracle".into()));
    }
    Ok(Output {
        table: record(fields, "closed-form analysis"),
        format: cli.format.unwrap_or(Format::Text),
        after,
    })
}

fn amplifier(g: f64, h: f64, format: Format) -> Result<Output> {
    let gains = AmplifierGains::new(g, h)?;
    let s = amplifier_output(gains);
    let w2 = gsswit_core::witness::w2_expectation(&s)?.value;
    let fields: Fields = vec![
        ("G".into(), g.into()),
        ("H".into(), h.into()),
        ("n".into(), s.n().into()),
        ("m_abs".into(), s.m_abs().into()),
        ("classicality".into(), format!("{:?}", s.classify()?).to_lowercase().into()),
        ("g2".into(), s.g2()?.into()),
        ("purity".into(), s.purity()?.into()),
        ("W2".into(), w2.into()),
        ("classical_gain_regime".into(), is_classical_threshold(gains).into()),
    ];
    Ok(Output::new(record(fields, "amplifier output on vacuum input"), format))
}

fn witness(cli: &Cli, state: &StateSpec, angles: Angles) -> Result<Output> {
    let built = state.build(angles)?;
    let (kind, w) = state.witness(&built)?;
    let mut fields = states::parameter_fields(state, angles);
    fields.push(("witness".into(), states::witness_name(kind).into()));
    fields.push(("value".into(), w.into()));
    fields.push(("verdict".into(), states::verdict_name(Verdict::from_value(w)).into()));
    let mut after = None;
    if cli.oracle {
        let report = states::oracle_fields(state, angles, cli.cutoff)?;
        let keep = |name: &str| name.contains(states::witness_name(kind)) || name.starts_with("oracle_trace") || name == "oracle_cutoff";
        fields.extend(report.fields.iter().filter(|(k, _)| keep(k)).cloned());
        after = states::check_oracle(&report).err();
    }
    Ok(Output {
        table: record(fields, "witness expectation value; negative certifies nonclassicality or entanglement"),
        format: cli.format.unwrap_or(Format::Text),
        after,
    })
}

fn visibility(state: &StateSpec, angles: Angles, format: Format) -> Result<Output> {
    let (v, context) = state.visibilities(angles)?;
    let mut fields = states::parameter_fields(state, angles);
    fields.extend([
        ("v_minus".into(), v.v_minus.into()),
        ("v_plus".into(), v.v_plus.into()),
        ("v_m".into(), v.v_m.into()),
        (angles.column("phase_offset_plus"), angles.express(v.phase_offset_plus).into()),
    ]);
    if let Some(ctx) = context {
        let report = classical_inequality_report(&v, ctx);
        for b in &report.bounds {
            fields.push((format!("bound[{} in {}, {}]", b.quantity, table::sig12(b.lower), table::sig12(b.upper)), b.satisfied.into()));
        }
        fields.push(("classical_inequalities_hold".into(), report.is_classical().into()));
    }
    Ok(Output::new(
        record(fields, "F = c0 [1 + v_minus cos(phi1-phi2) + v_plus cos(phi1+phi2+offset) + v_m (single-phase terms)]"),
        format,
    ))
}

fn sweep_point(cli: &Cli, spec: &StateSpec, angles: Angles) -> Result<(Fields, bool)> {
    let mut fields = states::analytic_fields(spec, angles)?;
    let mut agrees = true;
    if cli.oracle {
        let report = states::oracle_fields(spec, angles, cli.cutoff)?;
        agrees = report.disagreements.is_empty();
        fields.extend(report.fields);
        fields.push(("oracle_agrees".into(), agrees.into()));
    }
    Ok((fields, agrees))
}

fn sweep(cli: &Cli, param: &str, from: f64, to: f64, points: usize, state: &StateSpec, angles: Angles) -> Result<Output> {
    let mut probe = state.clone();
    if probe.parameter_mut(param).is_none() {
        bail!(InvalidInput(format!("family `{}` has no parameter `{param}`", state.family())));
    }
    if points < 2 || !from.is_finite() || !to.is_finite() {
        bail!(InvalidInput("a sweep needs finite bounds and at least 2 points".into()));
    }
    let xs: Vec<f64> = (0..points).map(|i| from + (to - from) * i as f64 / (points - 1) as f64).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(points);
    let chunk = points.div_ceil(threads);
    let results: Vec<Result<(Fields, bool)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = xs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&x| {
                            let mut spec = state.clone();
                            *spec.parameter_mut(param).expect("checked above") = x;
                            sweep_point(cli, &spec, angles)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    });

    let param_col = if StateSpec::is_angle(param) {
        angles.column(param)
    } else {
        param.to_string()
    };
    let names: Vec<String> = results
        .iter()
        .find_map(|r| r.as_ref().ok())
        .map(|(f, _)| f.iter().map(|(k, _)| k.clone()).collect())
        .unwrap_or_default();
    let mut columns = vec![param_col.as_str(), "status"];
    columns.extend(names.iter().map(String::as_str));
    let mut t = Table::new(format!("sweep of `{param}` for the {} family", state.family()), &columns);
    let mut disagreement = false;
    for (x, r) in xs.iter().zip(results) {
        let mut row = vec![Value::Num(*x)];
        match r {
            Ok((fields, agrees)) => {
                disagreement |= !agrees;
                row.push("ok".into());
                row.extend(fields.into_iter().map(|(_, v)| v));
            }
            Err(e) => {
                row.push(status_of(&e).into());
                row.extend(std::iter::repeat_n(Value::Empty, names.len()));
            }
        }
        t.push(row);
    }
    Ok(Output {
        table: t,
        format: cli.format.unwrap_or(Format::Csv),
        after: disagreement.then(|| OracleDisagreement("at least one sweep point disagrees with the oracle".into()).into()),
    })
}

fn status_of(e: &anyhow::Error) -> &'static str {
    match exit_code(e) {
        3 => "nonphysical",
        2 => "invalid",
        _ => "error",
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<OracleDisagreement>().is_some() {
        return 4;
    }
    if e.downcast_ref::<InvalidInput>().is_some() {
        return 2;
    }
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::Nonphysical(_)) => 3,
        Some(
            CoreError::InvalidParameter { .. }
            | CoreError::ZeroPhotonNumber(_)
            | CoreError::NotPRepresentable { .. }
            | CoreError::UnsupportedPhase(_)
            | CoreError::TruncationUnsafe { .. },
        ) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let angles = Angles { radians: cli.radians };
    if !(2..=60).contains(&cli.cutoff) {
        bail!(InvalidInput(format!("--cutoff must lie in 2..=60, got {}", cli.cutoff)));
    }
    let text = cli.format.unwrap_or(Format::Text);
    match &cli.command {
        Command::Classify { dump, state } => classify(cli, state, dump.as_ref(), angles),
        Command::Amplifier { g, h } => amplifier(*g, *h, text),
        Command::Witness { state } => witness(cli, state, angles),
        Command::Visibility { state } => visibility(state, angles, text),
        Command::Figure { id, points, m } => {
            let opt = figures::FigureOptions {
                points: *points,
                m: *m,
                angles,
            };
            Ok(Output::new(figures::figure(id, opt)?, cli.format.unwrap_or(Format::Csv)))
        }
        Command::OracleCheck {
            states,
            seed,
            n_max,
            max_len,
        } => {
            if !(*n_max > 0.05 && n_max.is_finite()) {
                bail!(InvalidInput(format!("--n-max must exceed 0.05, got {n_max}")));
            }
            let opt = oracle::SuiteOptions {
                states: *states,
                seed: *seed,
                n_max: *n_max,
                max_len: *max_len,
                cutoff: cli.cutoff,
            };
            let (table, pass) = oracle::run(opt)?;
            Ok(Output {
                table,
                format: text,
                after: (!pass).then(|| OracleDisagreement("one or more checks exceeded the tolerance".into()).into()),
            })
        }
        Command::Sweep {
            param,
            from,
            to,
            points,
            state,
        } => sweep(cli, param, *from, *to, *points, state, angles),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            out.table.write(out.format, &mut w)?;
            w.flush()?;
        }
        None => out.table.write(out.format, io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        match out.after {
            Some(e) => Err(e),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

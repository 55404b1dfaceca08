use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qrv_core::catalog::{self, IdentityRecord};
use qrv_core::cert::{self, Certificate};
use qrv_core::kr::JFamily;
use qrv_core::oracle::{oracle_partitions, PartClass};
use qrv_core::recur::{self, HFamily};
use qrv_core::report::{Mismatch, VerificationReport};
use qrv_core::Error;

#[derive(Parser)]
#[command(name = "qrv", version, about = "Exact verification of q-series sum-product identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print every identity id with its status and default order.
    List {
        /// Only ids starting with this prefix.
        #[arg(long, default_value = "")]
        prefix: String,
    },
    /// Check one identity, or the whole catalog.
    Run {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// With --all: only ids starting with this prefix.
        #[arg(long, default_value = "", requires = "all")]
        prefix: String,
        /// Compare below q^order (default: per identity, or $QRV_DEFAULT_ORDER).
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: Option<i64>,
        /// Worker threads (default: one per core).
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: Option<u16>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include elapsed times in text output.
        #[arg(long)]
        timings: bool,
    },
    /// Check a recurrence for h_(c,d,N).
    Recur {
        /// LONG, D0, DM1 or CD32.
        #[arg(long)]
        family: String,
        /// c, an integer or half-integer (`5/2`, `-0.5`).
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = recur::DEFAULT_N_MAX, value_parser = clap::value_parser!(i64).range(0..))]
        nmax: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        qprec: Option<i64>,
    },
    /// Check a telescoping certificate over a (k, M) rectangle.
    Wz {
        /// J10, J11, J12,0 or J12,2.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = cert::DEFAULT_K_MAX, value_parser = clap::value_parser!(i64).range(0..))]
        kmax: i64,
        #[arg(long, default_value_t = cert::DEFAULT_M_MAX, value_parser = clap::value_parser!(i64).range(0..))]
        mmax: i64,
        #[arg(long, default_value_t = cert::DEFAULT_QPREC, value_parser = clap::value_parser!(i64).range(1..))]
        qprec: i64,
    },
    /// Count partitions into parts from congruence classes.
    Oracle {
        /// Comma-separated `r:m[:free|signed|distinct|alt]`.
        #[arg(long)]
        classes: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        limit: i64,
    },
}

/// Usage and parameter errors exit 2; anything else that stops a check
/// counts as a failure.
fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::BadParameter(_) | Error::ParameterMismatch(_) | Error::UnknownIdentity(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn verdict(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_two_c(s: &str) -> Result<i64, Error> {
    let bad = || Error::BadParameter(format!("c must be an integer or half-integer, got {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        return match d.trim() {
            "1" => Ok(2 * n),
            "2" => Ok(n),
            _ => Err(bad()),
        };
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let w: i64 = whole.parse().map_err(|_| bad())?;
        let half = match frac.trim_end_matches('0') {
            "" => 0,
            "5" => 1,
            _ => return Err(bad()),
        };
        return Ok(2 * w + if neg { -half } else { half });
    }
    s.parse::<i64>().map(|c| 2 * c).map_err(|_| bad())
}

fn parse_family(s: &str) -> Result<JFamily, Error> {
    match s.to_ascii_uppercase().replace('_', ",").as_str() {
        "J10" => Ok(JFamily::J10),
        "J11" => Ok(JFamily::J11),
        other => match other.strip_prefix("J12,") {
            Some(a) => JFamily::j12(a.parse().map_err(|_| Error::BadParameter(format!("unknown family {s}")))?),
            None => Err(Error::BadParameter(format!("unknown family {s}"))),
        },
    }
}

fn line(name: &str, m: &Option<Mismatch>) {
    match m {
        None => println!("PASS  {name}"),
        Some(m) => println!("FAIL  {name}  [{m}]"),
    }
}

fn json_array(reports: &[VerificationReport]) -> String {
    let body: Vec<String> = reports.iter().map(VerificationReport::to_json).collect();
    format!("[{}]", body.join(","))
}

fn run(
    id: Option<String>,
    prefix: &str,
    order: Option<i64>,
    format: Format,
    out: Option<PathBuf>,
    timings: bool,
) -> Result<ExitCode, Error> {
    let (reports, json) = match id {
        Some(id) => {
            let r = catalog::run(&id, order)?;
            let json = r.to_json();
            (vec![r], json)
        }
        None => {
            let rs = catalog::run_all(prefix, order)?;
            if rs.is_empty() {
                return Err(Error::UnknownIdentity(format!("{prefix}*")));
            }
            let json = json_array(&rs);
            (rs, json)
        }
    };
    if let Some(path) = out {
        fs::write(&path, format!("{json}\n"))
            .map_err(|e| Error::BadParameter(format!("cannot write {}: {e}", path.display())))?;
    }
    let passed = reports.iter().all(|r| r.passed);
    match format {
        Format::Json => println!("{json}"),
        Format::Text => {
            for r in &reports {
                println!("{}", r.text_line(timings));
            }
            if reports.len() > 1 {
                let failed = reports.iter().filter(|r| !r.passed).count();
                println!("{} checked, {} passed, {failed} failed", reports.len(), reports.len() - failed);
            }
        }
    }
    Ok(verdict(passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::List { prefix } => {
            for r in catalog::catalog().iter().filter(|r| r.id.starts_with(&prefix)) {
                let IdentityRecord { id, status, default_order, description, .. } = r;
                println!("{id:<28} {status:<21} {default_order:>4}  {description}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Run { id, all: _, prefix, order, jobs, format, out, timings } => {
            if let Some(j) = jobs {
                // only fails if a pool already exists, which cannot happen here
                let _ = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global();
            }
            run(id, &prefix, order, format, out, timings)
        }
        Cmd::Recur { family, c, d, nmax, qprec } => (|| {
            let f = HFamily::parse(&family)
                .ok_or_else(|| Error::BadParameter(format!("unknown family {family}; use LONG, D0, DM1 or CD32")))?;
            let two_c = parse_two_c(&c)?;
            let qprec = qprec.unwrap_or((6 * nmax + 20).max(200));
            let m = recur::check_h_recurrence(f, two_c, d, nmax, qprec)?;
            line(&format!("{} 2c={two_c} d={d} N<={nmax} qprec {qprec}", f.name()), &m);
            let mut ok = m.is_none();
            if f != HFamily::Long {
                let s = recur::check_shift_closure(two_c, d, f, nmax, qprec)?;
                line("iterates to the four-term recurrence", &s);
                ok &= s.is_none();
            }
            Ok(verdict(ok))
        })(),
        Cmd::Wz { family, kmax, mmax, qprec } => (|| {
            let c = Certificate::new(parse_family(&family)?)?;
            let label = c.family().label();
            let t = cert::check_telescoping(&c, kmax, mmax, qprec)?;
            line(&format!("{label} telescoping k<={kmax} M<={mmax} qprec {qprec}"), &t);
            let s = cert::check_summed_recurrence(&c, mmax, qprec)?;
            line(&format!("{label} summed over k"), &s);
            let mut tail = None;
            for m in 0..=mmax {
                tail = cert::check_vanishing_tail(&c, m, m + 1..=m + 20, qprec)?;
                if tail.is_some() {
                    break;
                }
            }
            line(&format!("{label} vanishing tail"), &tail);
            Ok(verdict(t.is_none() && s.is_none() && tail.is_none()))
        })(),
        Cmd::Oracle { classes, limit } => (|| {
            let parsed = classes
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(PartClass::parse)
                .collect::<Result<Vec<_>, _>>()?;
            let s = oracle_partitions(&parsed, limit)?;
            let coeffs: Vec<String> = (0..limit).map(|n| s.coeff(n).unwrap_or_default().to_string()).collect();
            println!("{}", coeffs.join(" "));
            Ok(ExitCode::SUCCESS)
        })(),
    };
    result.unwrap_or_else(fail)
}

mod report;
mod verify_all;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use blockcert::isotypy::{self, IsotypyCertificate, IsotypyOptions};
use blockcert::perm::{Group, GroupDef, Limits};
use blockcert::session::{Session, SessionOptions};
use blockcert::Error;

#[derive(Parser)]
#[command(name = "blocktool", version, about = "Exact p-blocks of small permutation groups, with certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Initial p-adic precision in digits of the uniformizer.
    #[arg(long)]
    precision: Option<usize>,
    /// Largest Sylow subgroup order handled by subgroup enumeration.
    #[arg(long, default_value_t = 256)]
    sylow_cap: u64,
    /// Largest defect group order for which fusion is computed.
    #[arg(long, default_value_t = 16)]
    fusion_cap: u64,
    /// Character table cache directory.
    #[arg(long, env = "BLOCKTOOL_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Selects the prime above p among the factors of the cyclotomic polynomial.
    #[arg(long, default_value_t = 0)]
    modulus_seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> SessionOptions {
        SessionOptions {
            limits: Limits {
                sylow_cap: self.sylow_cap,
                fusion_cap: self.fusion_cap,
                ..Limits::default()
            },
            cache_dir: self.cache_dir.clone(),
            precision: self.precision,
            modulus_seed: self.modulus_seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes.
    Classes {
        group: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Character table in the cache/ingestion format.
    Chartable {
        group: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// p-blocks, defects, defect groups and the Galois orbits.
    Blocks {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Isotypy certificate between a block and its n-th Galois conjugate.
    Isotypy {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
        #[arg(long)]
        block: usize,
        #[arg(long, default_value_t = 1)]
        power: u64,
        /// Also require divisibility by |C_H(y)| in the integrality condition.
        #[arg(long)]
        strict: bool,
        /// Repeat the check for every eligible maximal Brauer pair.
        #[arg(long)]
        all_pairs: bool,
        #[command(flatten)]
        common: Common,
    },
    /// F_p-form of the block center by semilinear descent, with the
    /// Brauer-Feit report.
    Fpform {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
        #[arg(long)]
        block: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Every check for every block of every group (and every prime dividing
    /// the order unless -p is given).
    VerifyAll {
        #[arg(required = true)]
        groups: Vec<PathBuf>,
        #[arg(short, long)]
        prime: Option<u64>,
        #[arg(long)]
        strict: bool,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Replays a stored isotypy certificate.
    Recheck {
        group: PathBuf,
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn load_group(path: &Path, limits: &Limits) -> blockcert::Result<Arc<Group>> {
    let def = GroupDef::load(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(def.build(limits)?))
}

fn session(path: &Path, p: u64, common: &Common) -> blockcert::Result<Session> {
    let opts = common.options();
    let g = load_group(path, &opts.limits)?;
    if !blockcert::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if g.order() as u64 % p != 0 {
        eprintln!(
            "warning: {p} does not divide |{}| = {}; every block has defect 0",
            g.name(),
            g.order()
        );
    }
    Session::new(g, p, opts)
}

fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> blockcert::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> blockcert::Result<i32> {
    match cli.command {
        Command::Classes { group, common } => {
            let g = load_group(&group, &common.options().limits)?;
            emit(common.out.as_deref(), &report::wrap("classes", report::classes(&g)))?;
            Ok(0)
        }
        Command::Chartable { group, common } => {
            let opts = common.options();
            let g = load_group(&group, &opts.limits)?;
            let cache = blockcert::chartab::cache::TableCache::new(opts.cache_dir.clone());
            let t = cache.table(&g)?;
            emit(common.out.as_deref(), &report::wrap("chartable", report::chartable(&t)))?;
            Ok(0)
        }
        Command::Blocks { group, prime, common } => {
            let s = session(&group, prime, &common)?;
            emit(common.out.as_deref(), &report::wrap("blocks", report::blocks(&s)?))?;
            Ok(0)
        }
        Command::Isotypy {
            group,
            prime,
            block,
            power,
            strict,
            all_pairs,
            common,
        } => {
            let s = session(&group, prime, &common)?;
            let opts = IsotypyOptions {
                strict,
                all_maximal_pairs: all_pairs,
            };
            let cert = isotypy::verify_isotypy(&s, block, power, opts)?;
            emit(common.out.as_deref(), &report::wrap("isotypy", &cert))?;
            eprintln!("{}", report::isotypy_summary(&cert));
            Ok(cert.verdict.exit_code())
        }
        Command::Fpform {
            group,
            prime,
            block,
            common,
        } => {
            let s = session(&group, prime, &common)?;
            let r = report::fpform(&s, block)?;
            emit(common.out.as_deref(), &report::wrap("fpform", &r))?;
            Ok(0)
        }
        Command::VerifyAll {
            groups,
            prime,
            strict,
            jobs,
            common,
        } => {
            let r = verify_all::run(&groups, prime, strict, jobs, &common)?;
            emit(common.out.as_deref(), &report::wrap("verify-all", &r))?;
            eprintln!("{}", verify_all::summary(&r));
            Ok(r.verdict.exit_code())
        }
        Command::Recheck {
            group,
            certificate,
            common,
        } => {
            let text = std::fs::read_to_string(&certificate)?;
            let wrapped: report::Report<IsotypyCertificate> = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", certificate.display())))?;
            let cert = wrapped.result;
            let s = session(&group, cert.prime, &common)?;
            let r = isotypy::recheck(&s, &cert)?;
            emit(common.out.as_deref(), &report::wrap("recheck", &r))?;
            for m in &r.mismatches {
                eprintln!("mismatch: {m}");
            }
            Ok(r.verdict.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

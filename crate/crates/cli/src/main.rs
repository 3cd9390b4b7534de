use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use grassvar::{Exec, Format, JobSpec, Layers, Mode, SemisimpleSequence, Setting};

/// Equations for varieties of modules with a fixed skeleton.
#[derive(Parser, Debug)]
#[command(name = "grassvar", version)]
struct Cli {
    /// Presentation file.
    #[arg(long)]
    presentation: PathBuf,
    /// skeleta | critical | grass-eqs | big-grass-eqs | schubert-eqs | projective-eqs | oracle | export
    #[arg(long)]
    mode: Mode,
    /// Semisimple sequence, layers separated by `;`, vertices by `,` (e.g. `1;2;1`).
    #[arg(long, conflicts_with = "dimvec")]
    sseq: Option<String>,
    /// Dimension vector, comma separated; enumerates every compatible sequence.
    #[arg(long, value_delimiter = ',')]
    dimvec: Option<Vec<usize>>,
    /// Skeleton file.
    #[arg(long)]
    skeleton: Option<PathBuf>,
    #[arg(long, default_value = "small")]
    setting: Setting,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Gröbner step limit; 0 means unlimited.
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Random points per skeleton in oracle mode.
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Run without the thread pool.
    #[arg(long)]
    sequential: bool,
    /// Output file, or directory when a job produces several files.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut job = JobSpec::new(cli.presentation, cli.mode, cli.out);
    job.layers = match (cli.sseq, cli.dimvec) {
        (Some(s), _) => match SemisimpleSequence::parse(&s) {
            Ok(s) => Some(Layers::Sequence(s)),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        (None, Some(d)) => Some(Layers::DimVec(d)),
        (None, None) => None,
    };
    job.skeleton = cli.skeleton;
    job.setting = cli.setting;
    job.seed = cli.seed;
    if let Some(n) = cli.max_steps {
        job.max_steps = (n > 0).then_some(n);
    }
    job.format = cli.format;
    job.points = cli.points;
    if cli.sequential {
        job.exec = Exec::Sequential;
    }
    match grassvar::job::run(&job) {
        Ok(out) => {
            println!("{}", out.summary);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

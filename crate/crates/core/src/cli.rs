use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use halfspace_depth::augment::DEFAULT_CENTER_MARGIN;
use halfspace_depth::bench::{
    run_accuracy_bench, run_scaling_bench, run_verify, write_accuracy_csv, write_scaling_csv,
    write_verify_csv, BenchGrid, VerifyConfig,
};
use halfspace_depth::engine::{sample_depths, tukey_median_detailed, DepthMode};
use halfspace_depth::io::{
    read_points_csv, read_points_path, write_augmented_csv, write_contours_csv,
    write_level_sets_csv, write_points_csv, write_result_json, ContourRecord, LevelSetRecord,
    Metadata, Payload, ResultDocument,
};
use halfspace_depth::synth::{generate, Distribution, GeneratorSpec};
use halfspace_depth::{
    contour_2d, depth_of_out_of_sample_point, depth_of_sample_point, DataSet, DepthError,
    DepthResult, MedianOptions,
};

pub enum Failure {
    Usage(String),
    Compute(DepthError),
}

impl From<DepthError> for Failure {
    fn from(e: DepthError) -> Self {
        Failure::Compute(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

pub fn is_broken_pipe(err: &DepthError) -> bool {
    let kind = match err {
        DepthError::Io(e) => Some(e.kind()),
        DepthError::Json(e) => e.io_error_kind(),
        DepthError::Csv(e) => match e.kind() {
            csv::ErrorKind::Io(e) => Some(e.kind()),
            _ => None,
        },
        _ => None,
    };
    kind == Some(io::ErrorKind::BrokenPipe)
}

type CliResult<T = ()> = Result<T, Failure>;

#[derive(Parser)]
#[command(
    name = "hdepth",
    version,
    about = "Approximate halfspace depth, depth regions and Tukey median"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deepest depth region and its centroid.
    Median(EngineArgs),
    /// Depth of one point (--point or --index), or of every sample point.
    Depth(DepthArgs),
    /// All nested depth regions with their members.
    Levelsets(EngineArgs),
    /// Convex hull of every depth region (planar data only).
    Contour(EngineArgs),
    /// Write a synthetic sample as CSV.
    Generate(GenerateArgs),
    /// Accuracy or scaling benchmark over a grid of (n, d).
    Bench(BenchArgs),
    /// Compare approximate and exact depths on random instances.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl Output {
    fn open(&self) -> CliResult<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Args)]
struct EngineArgs {
    /// CSV of points, one per row; stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Number of uniform artificial points added as candidates and centers.
    #[arg(long, default_value_t = 0)]
    artificial: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative margin of the box the artificial points are drawn from.
    #[arg(long, default_value_t = 0.1)]
    margin: f64,
    /// Extra ball centers drawn from a wider box; defaults to --artificial.
    #[arg(long)]
    distant: Option<usize>,
    /// Relative margin of the box for the extra centers.
    #[arg(long, default_value_t = DEFAULT_CENTER_MARGIN)]
    center_margin: f64,
    /// Also write sample and artificial points, tagged, to this CSV file.
    #[arg(long)]
    export_candidates: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

impl EngineArgs {
    fn options(&self) -> MedianOptions {
        MedianOptions {
            artificial_count: self.artificial,
            seed: self.seed,
            margin: self.margin,
            distant_centers: self.distant,
            center_margin: self.center_margin,
            start: None,
        }
    }

    fn metadata(&self, command: &str, data: &DataSet, elapsed: f64) -> Metadata {
        let opts = self.options();
        Metadata {
            seed: Some(self.seed),
            n: data.len(),
            d: data.dim(),
            artificial: self.artificial,
            distant_centers: if self.artificial > 0 {
                opts.distant_count()
            } else {
                0
            },
            margin: self.margin,
            elapsed_seconds: Some(elapsed),
            ..Metadata::new(command)
        }
    }
}

#[derive(Args)]
struct DepthArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Comma-separated coordinates of an out-of-sample point.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "index")]
    point: Option<String>,
    /// 0-based index of a sample point.
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_dist, default_value = "normal")]
    dist: Distribution,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inner radius of the ring.
    #[arg(long, default_value_t = 1.0)]
    r1: f64,
    /// Outer radius of the ring.
    #[arg(long, default_value_t = 2.0)]
    r2: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Accuracy,
    Scaling,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "accuracy")]
    kind: BenchKind,
    /// Grid such as "n=1000;d=10,100;reps=10;seed=0".
    #[arg(long, default_value = "n=1000;d=10,100;reps=10;seed=0")]
    grid: String,
    #[arg(long, default_value_t = 0)]
    artificial: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 50)]
    instances: usize,
    #[arg(long, default_value_t = 25)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 1000)]
    artificial: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    distant: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CENTER_MARGIN)]
    center_margin: f64,
    #[command(flatten)]
    out: Output,
}

fn parse_dist(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|e: DepthError| e.to_string())
}

fn load(input: &Option<PathBuf>) -> CliResult<DataSet> {
    match input {
        Some(p) => Ok(read_points_path(p)?),
        None => {
            let stdin = io::stdin();
            if stdin.is_terminal() {
                return Err(Failure::Usage(
                    "no --input given and stdin is a terminal".into(),
                ));
            }
            let mut buf = Vec::new();
            stdin.lock().read_to_end(&mut buf)?;
            if buf.is_empty() {
                return Err(Failure::Usage("no --input given and stdin is empty".into()));
            }
            Ok(read_points_csv(buf.as_slice())?)
        }
    }
}

fn parse_point(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|c| {
            let c = c.trim().replace('\u{2212}', "-");
            c.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Usage(format!("bad coordinate {c:?} in --point")))
        })
        .collect()
}

fn emit_json(out: &Output, doc: &ResultDocument) -> CliResult {
    let mut w = out.open()?;
    write_result_json(doc, &mut w)?;
    Ok(())
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Median(a) => median(a),
        Command::Depth(a) => depth(a),
        Command::Levelsets(a) => levels(a, false),
        Command::Contour(a) => levels(a, true),
        Command::Generate(a) => generate_cmd(a),
        Command::Bench(a) => bench(a),
        Command::Verify(a) => verify(a),
    }
}

fn median(a: EngineArgs) -> CliResult {
    let data = load(&a.input)?;
    let start = Instant::now();
    let run = tukey_median_detailed(&data, &a.options())?;
    let elapsed = start.elapsed().as_secs_f64();
    if let Some(p) = &a.export_candidates {
        write_augmented_csv(&run.candidates, BufWriter::new(File::create(p)?))?;
    }
    if a.out.format == Format::Csv {
        let points = DataSet::new(&run.result.median_points)?;
        write_points_csv(&points, a.out.open()?)?;
        return Ok(());
    }
    let doc = ResultDocument {
        metadata: a.metadata("median", &data, elapsed),
        payload: Payload::Median(run.result),
    };
    emit_json(&a.out, &doc)
}

fn depth(a: DepthArgs) -> CliResult {
    let e = &a.engine;
    let data = load(&e.input)?;
    let point = a.point.as_deref().map(parse_point).transpose()?;
    let start = Instant::now();
    let (_, system) = e.options().prepare(&data)?;
    let results: Vec<DepthResult> = match (point, a.index) {
        (Some(x), _) => vec![depth_of_out_of_sample_point(&data, &system, &x)?],
        (None, Some(i)) => vec![depth_of_sample_point(&data, &system, i)?],
        (None, None) => sample_depths(&data, &system)
            .into_iter()
            .enumerate()
            .map(|(i, depth)| DepthResult {
                point: data.point(i).to_vec(),
                index: Some(i),
                depth,
                exit_ball_size: None,
                mode: DepthMode::SamplePoint,
            })
            .collect(),
    };
    let elapsed = start.elapsed().as_secs_f64();
    if e.out.format == Format::Csv {
        let mut w = csv::Writer::from_writer(e.out.open()?);
        w.write_record(["index", "numerator", "denominator", "depth"])
            .map_err(DepthError::from)?;
        for r in &results {
            w.write_record([
                r.index.map_or(String::new(), |i| i.to_string()),
                r.depth.numerator.to_string(),
                r.depth.denominator.to_string(),
                r.depth.value().to_string(),
            ])
            .map_err(DepthError::from)?;
        }
        w.flush()?;
        return Ok(());
    }
    let payload = if results.len() == 1 && (a.point.is_some() || a.index.is_some()) {
        Payload::Depth(results.into_iter().next().expect("one result"))
    } else {
        Payload::Depths { results }
    };
    let doc = ResultDocument {
        metadata: e.metadata("depth", &data, elapsed),
        payload,
    };
    emit_json(&e.out, &doc)
}

fn levels(a: EngineArgs, contours: bool) -> CliResult {
    let data = load(&a.input)?;
    if contours && data.dim() != 2 {
        return Err(DepthError::UnsupportedDimension {
            supported: "2",
            found: data.dim(),
        }
        .into());
    }
    let start = Instant::now();
    let run = tukey_median_detailed(&data, &a.options())?;
    if let Some(p) = &a.export_candidates {
        write_augmented_csv(&run.candidates, BufWriter::new(File::create(p)?))?;
    }
    let name = if contours { "contour" } else { "levelsets" };
    let payload = if contours {
        let mut records = Vec::new();
        for level in &run.result.levels {
            records.push(ContourRecord {
                depth: level.depth,
                ball_size: level.ball_size,
                vertices: contour_2d(level, &run.candidates)?,
            });
        }
        let elapsed = start.elapsed().as_secs_f64();
        if a.out.format == Format::Csv {
            return Ok(write_contours_csv(&records, a.out.open()?)?);
        }
        (Payload::Contours { contours: records }, elapsed)
    } else {
        let records: Vec<LevelSetRecord> = run
            .result
            .levels
            .iter()
            .map(|l| LevelSetRecord {
                depth: l.depth,
                ball_size: l.ball_size,
                members: l.members.clone(),
                points: l
                    .members
                    .iter()
                    .map(|&i| run.candidates.point(i).to_vec())
                    .collect(),
            })
            .collect();
        let elapsed = start.elapsed().as_secs_f64();
        if a.out.format == Format::Csv {
            return Ok(write_level_sets_csv(&records, data.dim(), a.out.open()?)?);
        }
        (Payload::LevelSets { levels: records }, elapsed)
    };
    let doc = ResultDocument {
        metadata: a.metadata(name, &data, payload.1),
        payload: payload.0,
    };
    emit_json(&a.out, &doc)
}

fn generate_cmd(a: GenerateArgs) -> CliResult {
    let spec = GeneratorSpec {
        kind: a.dist,
        n: a.n,
        d: a.d,
        seed: a.seed,
        radii: (a.r1, a.r2),
    };
    let data = generate(&spec)?;
    let out = Output {
        output: a.output,
        format: Format::Csv,
    };
    write_points_csv(&data, out.open()?)?;
    Ok(())
}

fn bench(a: BenchArgs) -> CliResult {
    let grid: BenchGrid = a
        .grid
        .parse()
        .map_err(|e: DepthError| Failure::Usage(e.to_string()))?;
    let options = MedianOptions {
        artificial_count: a.artificial,
        ..MedianOptions::default()
    };
    let mut meta = Metadata {
        seed: Some(grid.seed),
        artificial: a.artificial,
        ..Metadata::new("bench")
    };
    let start = Instant::now();
    let payload = match a.kind {
        BenchKind::Accuracy => {
            let r = run_accuracy_bench(&grid, &options)?;
            if a.out.format == Format::Csv {
                return Ok(write_accuracy_csv(&r, a.out.open()?)?);
            }
            Payload::Accuracy(r)
        }
        BenchKind::Scaling => {
            let r = run_scaling_bench(&grid, &options)?;
            if a.out.format == Format::Csv {
                return Ok(write_scaling_csv(&r, a.out.open()?)?);
            }
            Payload::Scaling(r)
        }
    };
    meta.elapsed_seconds = Some(start.elapsed().as_secs_f64());
    emit_json(
        &a.out,
        &ResultDocument {
            metadata: meta,
            payload,
        },
    )
}

fn verify(a: VerifyArgs) -> CliResult {
    let config = VerifyConfig {
        instances: a.instances,
        n: a.n,
        d: a.d,
        artificial: a.artificial,
        seed: a.seed,
        distant_centers: a.distant,
        center_margin: a.center_margin,
    };
    let start = Instant::now();
    let r = run_verify(&config)?;
    if a.out.format == Format::Csv {
        return Ok(write_verify_csv(&r, a.out.open()?)?);
    }
    let metadata = Metadata {
        seed: Some(a.seed),
        n: a.n,
        d: a.d,
        artificial: a.artificial,
        elapsed_seconds: Some(start.elapsed().as_secs_f64()),
        ..Metadata::new("verify")
    };
    emit_json(
        &a.out,
        &ResultDocument {
            metadata,
            payload: Payload::Verify(r),
        },
    )
}

//! Command-line front end: argument parsing, configuration and the
//! subcommands that run the pipelines and write their outputs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::clustering::{self, KMEANS_DEFAULT_RESTARTS};
use crate::cycles;
use crate::error::{Error, Result};
use crate::filtration::{self, Filtration};
use crate::ingest::{self, IndicatorDataset, IndicatorId};
use crate::metric::{self, AdjacencyMatrix, DistanceMatrix};
use crate::persistence::{self, Barcode};
use crate::plot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    PointCloud,
    BorderGraph,
}

#[derive(Debug, Parser)]
#[command(name = "devtopo", version, about = "Persistent homology of development indicators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Barcode CSV and SVG for the selected pipeline.
    Barcode(Flags),
    /// Degree-0 clusters at each `--eps`.
    Clusters(Flags),
    /// Degree-1 cycle reports on the border graph.
    Cycles(Flags),
    /// K-means baseline.
    Kmeans(Flags),
    /// Per-indicator statistics of the loaded snapshot.
    Stats(Flags),
}

impl Command {
    pub fn flags(&self) -> &Flags {
        match self {
            Command::Barcode(f)
            | Command::Clusters(f)
            | Command::Cycles(f)
            | Command::Kmeans(f)
            | Command::Stats(f) => f,
        }
    }
}

/// Every flag is optional; unset flags fall back to `--config`, then to the
/// built-in defaults.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct Flags {
    /// TOML file with any of these options.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Comma separated subset of GDP,LE,IM,GNI.
    #[arg(long)]
    pub indicators: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Indicator CSV (`country,indicator,year,value`).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Border CSV (`country_a,country_b`).
    #[arg(long)]
    pub borders: Option<PathBuf>,
    #[arg(long)]
    pub max_filtration: Option<f64>,
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Comma separated slice values.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub attenuate_k: Option<f64>,
    /// Comma separated columns to attenuate; empty string for none.
    #[arg(long)]
    pub attenuate_cols: Option<String>,
    /// Hide degree-1 cycles shorter than this.
    #[arg(long)]
    pub min_persistence: Option<f64>,
    /// Shrink reported loops along internal borders.
    #[arg(long)]
    pub tighten: Option<bool>,
    /// Also write the distance matrix and the filtration listing.
    #[arg(long)]
    pub debug_dump: Option<bool>,
}

impl Flags {
    fn overlay(self, base: Flags) -> Flags {
        Flags {
            config: self.config,
            indicators: self.indicators.or(base.indicators),
            mode: self.mode.or(base.mode),
            data: self.data.or(base.data),
            borders: self.borders.or(base.borders),
            max_filtration: self.max_filtration.or(base.max_filtration),
            max_dim: self.max_dim.or(base.max_dim),
            eps: self.eps.or(base.eps),
            k: self.k.or(base.k),
            restarts: self.restarts.or(base.restarts),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            attenuate_k: self.attenuate_k.or(base.attenuate_k),
            attenuate_cols: self.attenuate_cols.or(base.attenuate_cols),
            min_persistence: self.min_persistence.or(base.min_persistence),
            tighten: self.tighten.or(base.tighten),
            debug_dump: self.debug_dump.or(base.debug_dump),
        }
    }
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub indicators: Vec<IndicatorId>,
    pub data: PathBuf,
    pub borders: Option<PathBuf>,
    pub mode: Mode,
    pub max_filtration: f64,
    pub max_dim: usize,
    pub attenuate_k: f64,
    pub attenuate_cols: Vec<IndicatorId>,
    pub k: usize,
    pub restarts: usize,
    pub seed: u64,
    pub eps: Vec<f64>,
    pub out: PathBuf,
    pub min_persistence: f64,
    pub tighten: bool,
    pub debug_dump: bool,
}

impl RunConfig {
    /// Defaults for everything but the data path.
    pub fn new(data: impl Into<PathBuf>, mode: Mode) -> Self {
        Self {
            indicators: vec![IndicatorId::Gdp, IndicatorId::Le],
            data: data.into(),
            borders: None,
            mode,
            max_filtration: default_max_filtration(mode),
            max_dim: 2,
            attenuate_k: 2.0,
            attenuate_cols: vec![IndicatorId::Gdp, IndicatorId::Gni],
            k: 2,
            restarts: KMEANS_DEFAULT_RESTARTS,
            seed: 0,
            eps: Vec::new(),
            out: PathBuf::from("out"),
            min_persistence: 0.0,
            tighten: true,
            debug_dump: false,
        }
    }

    /// Resolves flags (and an optional config file) with `natural` as the
    /// mode when none is given.
    pub fn from_flags(flags: &Flags, natural: Mode) -> Result<Self> {
        let mut flags = flags.clone();
        if let Some(path) = &flags.config {
            let text = fs::read_to_string(path)?;
            let file: Flags = toml::from_str(&text)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            flags = flags.overlay(file);
        }
        let mode = flags.mode.unwrap_or(natural);
        let data = flags
            .data
            .clone()
            .ok_or_else(|| Error::InvalidArgument("--data is required".into()))?;
        let mut cfg = RunConfig::new(data, mode);
        if let Some(s) = &flags.indicators {
            cfg.indicators = ingest::parse_indicator_list(s)?;
        }
        cfg.borders = flags.borders.clone();
        if let Some(v) = flags.max_filtration {
            cfg.max_filtration = v;
        }
        if let Some(v) = flags.max_dim {
            cfg.max_dim = v;
        }
        if let Some(v) = flags.attenuate_k {
            cfg.attenuate_k = v;
        }
        if let Some(s) = &flags.attenuate_cols {
            cfg.attenuate_cols = if s.trim().is_empty() {
                Vec::new()
            } else {
                ingest::parse_indicator_list(s)?
            };
        }
        if let Some(s) = &flags.eps {
            cfg.eps = parse_eps_list(s)?;
        }
        cfg.k = flags.k.unwrap_or(cfg.k);
        cfg.restarts = flags.restarts.unwrap_or(cfg.restarts);
        cfg.seed = flags.seed.unwrap_or(cfg.seed);
        if let Some(o) = &flags.out {
            cfg.out = o.clone();
        }
        cfg.min_persistence = flags.min_persistence.unwrap_or(cfg.min_persistence);
        cfg.tighten = flags.tighten.unwrap_or(cfg.tighten);
        cfg.debug_dump = flags.debug_dump.unwrap_or(cfg.debug_dump);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::BorderGraph && self.borders.is_none() {
            return Err(Error::InvalidArgument("border-graph mode requires --borders".into()));
        }
        if self.max_filtration.is_nan() || self.max_filtration <= 0.0 {
            return Err(Error::InvalidArgument("--max-filtration must be > 0".into()));
        }
        if let Some(e) = self.eps.iter().find(|&&e| e < 0.0 || e > self.max_filtration) {
            return Err(Error::InvalidArgument(format!(
                "eps {e} outside [0, {}]",
                self.max_filtration
            )));
        }
        Ok(())
    }
}

pub fn default_max_filtration(mode: Mode) -> f64 {
    match mode {
        Mode::PointCloud => metric::POINT_CLOUD_MAX_FILTRATION,
        Mode::BorderGraph => metric::BORDER_GRAPH_MAX_FILTRATION,
    }
}

fn parse_eps_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad eps value `{t}`")))
        })
        .collect()
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_dataset(cfg: &RunConfig) -> Result<IndicatorDataset> {
    let file = fs::File::open(&cfg.data)?;
    ingest::load_dataset(file, &cfg.indicators, cfg.attenuate_k, &cfg.attenuate_cols)
}

/// Everything computed for one run.
pub struct Pipeline {
    pub dataset: IndicatorDataset,
    pub adjacency: Option<AdjacencyMatrix>,
    pub matrix: DistanceMatrix,
    pub filtration: Filtration,
    pub barcode: Barcode,
}

pub fn matrix_for(cfg: &RunConfig, dataset: &IndicatorDataset) -> Result<(DistanceMatrix, Option<AdjacencyMatrix>)> {
    match cfg.mode {
        Mode::PointCloud => Ok((metric::pairwise(dataset), None)),
        Mode::BorderGraph => {
            let path = cfg.borders.as_ref().expect("validated");
            let edges = ingest::parse_borders(fs::File::open(path)?)?;
            let adjacency = metric::border_adjacency(&edges, &dataset.countries)?;
            let matrix = metric::border_distances(&adjacency, dataset, cfg.max_filtration)?;
            Ok((matrix, Some(adjacency)))
        }
    }
}

pub fn run_pipeline(cfg: &RunConfig) -> Result<Pipeline> {
    let dataset = load_dataset(cfg)?;
    let (matrix, adjacency) = matrix_for(cfg, &dataset)?;
    let filtration = filtration::build(&matrix, cfg.max_dim, cfg.max_filtration)?;
    let barcode = persistence::reduce(&filtration);
    Ok(Pipeline {
        dataset,
        adjacency,
        matrix,
        filtration,
        barcode,
    })
}

fn eps_tag(eps: f64) -> String {
    format!("{eps}")
}

/// Writes `barcode.csv` and `barcode.svg`; returns a short report.
pub fn cmd_barcode(cfg: &RunConfig) -> Result<String> {
    let p = run_pipeline(cfg)?;
    write_atomic(&cfg.out.join("barcode.csv"), &p.barcode.to_csv(&p.filtration))?;
    let top = p.barcode.reported_max_dim();
    write_atomic(&cfg.out.join("barcode.svg"), &plot::barcode_svg(&p.barcode, top))?;
    if cfg.debug_dump {
        write_atomic(&cfg.out.join("distances.csv"), &p.matrix.to_csv())?;
        write_atomic(&cfg.out.join("filtration.txt"), &p.filtration.debug_dump())?;
    }
    let mut msg = String::new();
    let _ = writeln!(
        msg,
        "{} countries, {} simplices",
        p.dataset.len(),
        p.filtration.len()
    );
    for k in 0..=top {
        let finite = p.barcode.in_dim(k).filter(|i| !i.is_infinite()).count();
        let infinite = p.barcode.infinite_intervals(k).len();
        let _ = writeln!(msg, "H{k}: {finite} finite, {infinite} infinite");
    }
    if let Some(d) = p.barcode.last_finite_death(0) {
        let _ = writeln!(msg, "last H0 merge at {d:.6}");
    }
    Ok(msg)
}

/// Writes `clusters_<eps>.csv` and `summary_<eps>.csv` for every slice.
pub fn cmd_clusters(cfg: &RunConfig) -> Result<String> {
    if cfg.mode != Mode::PointCloud {
        return Err(Error::InvalidArgument("clusters runs on the point cloud".into()));
    }
    let dataset = load_dataset(cfg)?;
    let matrix = metric::pairwise(&dataset);
    let filt = filtration::build(&matrix, 1, cfg.max_filtration)?;
    let barcode = persistence::reduce(&filt);
    let mut msg = String::new();
    for &eps in &cfg.eps {
        let part = clustering::components_at(&matrix, eps);
        let top = clustering::largest(&part, &dataset, 6);
        let tag = eps_tag(eps);
        write_atomic(&cfg.out.join(format!("clusters_{tag}.csv")), &part.to_csv(&dataset.countries))?;
        write_atomic(
            &cfg.out.join(format!("summary_{tag}.csv")),
            &clustering::summaries_to_csv(&top, &dataset),
        )?;
        let sizes: Vec<String> = top.iter().map(|c| c.size.to_string()).collect();
        let _ = writeln!(
            msg,
            "eps {tag}: {} clusters, largest {} (betti0 {}{})",
            part.len(),
            sizes.join(", "),
            barcode.betti_at(0, eps),
            if clustering::h0_consistency(&barcode, &matrix, eps) { "" } else { ", MISMATCH" }
        );
    }
    Ok(msg)
}

/// Writes `cycles.json` and `cycles.txt`.
pub fn cmd_cycles(cfg: &RunConfig) -> Result<String> {
    if cfg.mode != Mode::BorderGraph {
        return Err(Error::InvalidArgument("cycles runs on the border graph".into()));
    }
    let p = run_pipeline(cfg)?;
    let adjacency = p.adjacency.as_ref().expect("border mode");
    let mut reports = cycles::report_cycles(&p.barcode, &p.filtration, &p.dataset, adjacency, cfg.min_persistence)?;
    if cfg.tighten {
        reports = reports
            .iter()
            .map(|r| cycles::tighten(r, &p.matrix, &p.dataset))
            .collect::<Result<_>>()?;
    }
    write_atomic(&cfg.out.join("cycles.json"), &(serde_json::to_string_pretty(&reports)? + "\n"))?;
    write_atomic(&cfg.out.join("cycles.txt"), &cycles::render_text(&reports))?;
    let finite = reports.iter().filter(|r| !r.is_infinite()).count();
    Ok(format!(
        "{finite} finite cycles, {} infinite\n",
        reports.len() - finite
    ))
}

/// Writes `kmeans_<K>.csv`.
pub fn cmd_kmeans(cfg: &RunConfig) -> Result<String> {
    if cfg.mode != Mode::PointCloud {
        return Err(Error::InvalidArgument("kmeans runs on the point cloud".into()));
    }
    let dataset = load_dataset(cfg)?;
    let r = clustering::kmeans(&dataset, cfg.k, cfg.restarts, cfg.seed)?;
    write_atomic(
        &cfg.out.join(format!("kmeans_{}.csv", cfg.k)),
        &r.partition.to_csv(&dataset.countries),
    )?;
    let sizes: Vec<String> = r.partition.sizes().iter().map(|s| s.to_string()).collect();
    Ok(format!(
        "K={} objective {:.6} sizes {}\n",
        cfg.k,
        r.objective,
        sizes.join(", ")
    ))
}

/// Raw statistics of the unattenuated data with the scaled mean of the
/// processed data; writes `stats.csv` and `dataset.csv`.
pub fn cmd_stats(cfg: &RunConfig) -> Result<String> {
    let obs = ingest::parse_observations(fs::File::open(&cfg.data)?)?;
    let raw = ingest::build_dataset(&ingest::select_latest(&obs), &cfg.indicators)?;
    let scaled = load_dataset(cfg)?;
    let mut stats = ingest::summary(&raw);
    let processed = ingest::summary(&scaled);
    for (row, p) in stats.rows.iter_mut().zip(&processed.rows) {
        row.scaled_mean = p.scaled_mean;
    }
    let csv = stats.to_csv();
    write_atomic(&cfg.out.join("stats.csv"), &csv)?;
    write_atomic(&cfg.out.join("dataset.csv"), &scaled.to_csv())?;
    Ok(format!("{} countries\n{csv}", stats.count))
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<String> {
    let natural = match &cli.command {
        Command::Cycles(_) => Mode::BorderGraph,
        _ => Mode::PointCloud,
    };
    let cfg = RunConfig::from_flags(cli.command.flags(), natural)?;
    match &cli.command {
        Command::Barcode(_) => cmd_barcode(&cfg),
        Command::Clusters(_) => cmd_clusters(&cfg),
        Command::Cycles(_) => cmd_cycles(&cfg),
        Command::Kmeans(_) => cmd_kmeans(&cfg),
        Command::Stats(_) => cmd_stats(&cfg),
    }
}

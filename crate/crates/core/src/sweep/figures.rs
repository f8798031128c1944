use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{evaluate, format_g, optimized_value, EvalConfig, Metric, Strategy};
use crate::epr::{pnes_optimize, PnesKind};
use crate::error::{Error, Result};
use crate::par;

/// Largest truncation in the photon-number entangled state series.
pub const PNES_MAX_N: usize = 8;

const CURVE_S_MIN: f64 = 0.01;
const CURVE_S_MAX: f64 = 1.0;
const CURVE_POINTS: usize = 100;
const SURFACE_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    F1a,
    F1b,
    F2,
    F3a,
    F3b,
    F4,
    F5,
    F6a,
    F6b,
}

impl FigureId {
    pub const ALL: [FigureId; 9] = [
        FigureId::F1a,
        FigureId::F1b,
        FigureId::F2,
        FigureId::F3a,
        FigureId::F3b,
        FigureId::F4,
        FigureId::F5,
        FigureId::F6a,
        FigureId::F6b,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::F1a => "1a",
            FigureId::F1b => "1b",
            FigureId::F2 => "2",
            FigureId::F3a => "3a",
            FigureId::F3b => "3b",
            FigureId::F4 => "4",
            FigureId::F5 => "5",
            FigureId::F6a => "6a",
            FigureId::F6b => "6b",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown figure '{s}'")))
    }
}

/// Grid densities; `None` picks the figure default (100 points in `s` for
/// curves, 101 for surfaces, 101 in `r`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GridSpec {
    pub s_points: Option<usize>,
    pub r_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub s: f64,
    /// `None` where the strategy has no coherent operation.
    pub r: Option<f64>,
    pub strategy: Strategy,
    pub metric: Metric,
    pub value: f64,
}

impl SweepRecord {
    pub const CSV_HEADER: &'static str = "s,r,strategy,metric,value";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            format_g(self.s),
            self.r.map(format_g).unwrap_or_default(),
            self.strategy,
            self.metric,
            format_g(self.value)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PnesRecord {
    pub kind: PnesKind,
    pub n: usize,
    pub value: f64,
}

impl PnesRecord {
    pub const CSV_HEADER: &'static str = "kind,n,value";

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.kind.name(), self.n, format_g(self.value))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FigureData {
    Sweep(Vec<SweepRecord>),
    Pnes(Vec<PnesRecord>),
}

impl FigureData {
    pub fn len(&self) -> usize {
        match self {
            FigureData::Sweep(v) => v.len(),
            FigureData::Pnes(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Header plus one LF-terminated line per record.
    pub fn to_csv(&self) -> String {
        let (header, rows): (&str, Vec<String>) = match self {
            FigureData::Sweep(v) => (
                SweepRecord::CSV_HEADER,
                v.iter().map(SweepRecord::csv_row).collect(),
            ),
            FigureData::Pnes(v) => (
                PnesRecord::CSV_HEADER,
                v.iter().map(PnesRecord::csv_row).collect(),
            ),
        };
        let mut out = String::with_capacity(32 * (rows.len() + 1));
        out.push_str(header);
        out.push('\n');
        for row in rows {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    /// Value at the best `r` (or the only value) at fixed `s`.
    Optimized(Metric, Strategy, f64),
    /// Value at fixed `(s, r)`.
    Point(Metric, Strategy, f64, Option<f64>),
}

impl Task {
    fn run(&self, cfg: &EvalConfig) -> Result<Option<SweepRecord>> {
        let (metric, strategy, s, result) = match *self {
            Task::Optimized(m, k, s) => (m, k, s, optimized_value(m, k, s, cfg)),
            Task::Point(m, k, s, r) => (m, k, s, evaluate(m, k, s, r, cfg).map(|v| (r, v))),
        };
        match result {
            Ok((r, value)) => Ok(Some(SweepRecord {
                s,
                r,
                strategy,
                metric,
                value,
            })),
            Err(Error::ZeroState { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn curve_tasks(metric: Metric, s_values: &[f64]) -> Vec<Task> {
    s_values
        .iter()
        .flat_map(|&s| {
            Strategy::ALL
                .into_iter()
                .map(move |k| Task::Optimized(metric, k, s))
        })
        .collect()
}

fn r_curve_tasks(metric: Metric, strategies: &[Strategy], s: f64, r_values: &[f64]) -> Vec<Task> {
    let mut tasks = Vec::new();
    for &k in strategies {
        if k.has_r() {
            tasks.extend(r_values.iter().map(|&r| Task::Point(metric, k, s, Some(r))));
        } else {
            tasks.push(Task::Point(metric, k, s, None));
        }
    }
    tasks
}

fn surface_tasks(metric: Metric, s_values: &[f64], r_values: &[f64]) -> Vec<Task> {
    s_values
        .iter()
        .flat_map(|&s| {
            r_values
                .iter()
                .map(move |&r| Task::Point(metric, Strategy::CoherentAB, s, Some(r)))
        })
        .collect()
}

fn record_order(a: &SweepRecord, b: &SweepRecord) -> Ordering {
    let r_key = |r: Option<f64>| r.unwrap_or(f64::NEG_INFINITY);
    a.s.total_cmp(&b.s)
        .then(r_key(a.r).total_cmp(&r_key(b.r)))
        .then(a.strategy.cmp(&b.strategy))
        .then(a.metric.cmp(&b.metric))
}

/// Data behind one figure. Points are evaluated independently (in parallel
/// with the `parallel` feature) and emitted sorted by `(s, r, strategy)`;
/// points where the operated state vanishes are left out.
pub fn run_figure_sweep(id: FigureId, grid: &GridSpec, cfg: &EvalConfig) -> Result<FigureData> {
    if grid.s_points == Some(0) || grid.r_points == Some(0) {
        return Err(Error::InvalidParameter(
            "grid sizes must be positive".into(),
        ));
    }
    if id == FigureId::F4 {
        let jobs: Vec<(PnesKind, usize)> = [PnesKind::Diagonal, PnesKind::Ladder]
            .into_iter()
            .flat_map(|k| (0..=PNES_MAX_N).map(move |n| (k, n)))
            .collect();
        let rows = par::map(&jobs, |&(kind, n)| {
            pnes_optimize(kind, n).map(|(_, value)| PnesRecord { kind, n, value })
        });
        return rows
            .into_iter()
            .collect::<Result<Vec<_>>>()
            .map(FigureData::Pnes);
    }

    let curve_s = linspace(
        CURVE_S_MIN,
        CURVE_S_MAX,
        grid.s_points.unwrap_or(CURVE_POINTS),
    );
    let surface_s = linspace(0.0, 1.0, grid.s_points.unwrap_or(SURFACE_POINTS));
    let r_values = linspace(0.0, 1.0, grid.r_points.unwrap_or(SURFACE_POINTS));
    let tasks = match id {
        FigureId::F1a => curve_tasks(Metric::Entropy, &curve_s),
        FigureId::F1b => r_curve_tasks(Metric::Entropy, &Strategy::ALL, 0.1, &r_values),
        FigureId::F2 => surface_tasks(Metric::Epr, &surface_s, &r_values),
        FigureId::F3a => curve_tasks(Metric::Epr, &curve_s),
        FigureId::F3b => [0.01, 0.06]
            .into_iter()
            .flat_map(|s| r_curve_tasks(Metric::Epr, &[Strategy::CoherentAB], s, &r_values))
            .collect(),
        FigureId::F5 => surface_tasks(Metric::Fidelity, &surface_s, &r_values),
        FigureId::F6a => curve_tasks(Metric::Fidelity, &curve_s),
        FigureId::F6b => r_curve_tasks(Metric::Fidelity, &Strategy::ALL, 0.01, &r_values),
        FigureId::F4 => unreachable!(),
    };
    let results = par::map(&tasks, |t| t.run(cfg));
    let mut records = Vec::with_capacity(results.len());
    for r in results {
        if let Some(rec) = r? {
            records.push(rec);
        }
    }
    records.sort_by(record_order);
    Ok(FigureData::Sweep(records))
}

//! CSV output for experiment records and per-pair results.
//!
//! Both files start with one `#` comment line naming the tool version and
//! the command line that produced them. Missing values are empty fields.
//! Averages are printed with six decimals.

use std::io;

use flowroute_core::metrics::{Backups, RouteMetrics};
use flowroute_core::{MetricsRecord, NodeId, PairResult, Route, Weights};

use crate::experiment::PairRow;

pub const RECORD_COLUMNS: [&str; 14] = [
    "topology",
    "n",
    "params",
    "w1",
    "w2",
    "pairs_total",
    "pairs_diff",
    "route_diff_pct",
    "mf_avg_size",
    "mf_avg_deg_sum",
    "mf_avg_backups",
    "dj_avg_size",
    "dj_avg_deg_sum",
    "dj_avg_backups",
];

pub const PAIR_COLUMNS: [&str; 18] = [
    "topology",
    "n",
    "params",
    "w1",
    "w2",
    "src",
    "dst",
    "differs",
    "mf_route",
    "dj_route",
    "mf_size",
    "mf_deg_sum",
    "mf_backups",
    "mf_interior",
    "dj_size",
    "dj_deg_sum",
    "dj_backups",
    "dj_interior",
];

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Field { line: u64, message: String },
}

/// `# <tool> <version> argv: <args...>`
pub fn provenance_line(args: &[String]) -> String {
    format!(
        "# {} {} argv: {}",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION"),
        args.join(" ")
    )
}

fn float(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_default()
}

pub fn write_records<W: io::Write>(mut out: W, provenance: &str, records: &[MetricsRecord]) -> Result<(), ReportError> {
    writeln!(out, "{provenance}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_COLUMNS)?;
    for r in records {
        let mf = r.mf.as_ref();
        let dj = r.dj.as_ref();
        w.write_record([
            r.topology.clone(),
            r.n.to_string(),
            r.params.clone(),
            r.weights.flow.to_string(),
            r.weights.distance.to_string(),
            r.pairs_total.to_string(),
            r.pairs_diff.to_string(),
            format!("{:.6}", r.route_diff_pct),
            float(mf.map(|a| a.size)),
            float(mf.map(|a| a.deg_sum)),
            float(mf.and_then(|a| a.backups)),
            float(dj.map(|a| a.size)),
            float(dj.map(|a| a.deg_sum)),
            float(dj.and_then(|a| a.backups)),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn route_field(r: &Option<Route>) -> String {
    r.as_ref()
        .map(|r| r.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}

fn metric_fields(m: &Option<RouteMetrics>) -> [String; 4] {
    match m {
        None => Default::default(),
        Some(m) => [
            m.size.to_string(),
            m.deg_sum.to_string(),
            m.backups.map(|b| b.total.to_string()).unwrap_or_default(),
            m.backups.map(|b| b.interior.to_string()).unwrap_or_default(),
        ],
    }
}

pub fn write_pairs<W: io::Write>(mut out: W, provenance: &str, rows: &[PairRow]) -> Result<(), ReportError> {
    writeln!(out, "{provenance}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PAIR_COLUMNS)?;
    for row in rows {
        let p = &row.result;
        let mut fields = vec![
            row.topology.clone(),
            row.n.to_string(),
            row.params.clone(),
            row.weights.flow.to_string(),
            row.weights.distance.to_string(),
            p.src.to_string(),
            p.dst.to_string(),
            u8::from(p.differs).to_string(),
            route_field(&p.mf_route),
            route_field(&p.dj_route),
        ];
        fields.extend(metric_fields(&p.mf));
        fields.extend(metric_fields(&p.dj));
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

struct Fields<'a> {
    rec: &'a csv::StringRecord,
    line: u64,
}

impl Fields<'_> {
    fn err(&self, message: String) -> ReportError {
        ReportError::Field {
            line: self.line,
            message,
        }
    }

    fn str(&self, i: usize) -> &str {
        self.rec.get(i).unwrap_or("")
    }

    fn num<T: std::str::FromStr>(&self, i: usize) -> Result<T, ReportError> {
        self.str(i)
            .parse()
            .map_err(|_| self.err(format!("bad {} value {:?}", PAIR_COLUMNS[i], self.str(i))))
    }

    fn opt<T: std::str::FromStr>(&self, i: usize) -> Result<Option<T>, ReportError> {
        if self.str(i).is_empty() {
            Ok(None)
        } else {
            self.num(i).map(Some)
        }
    }

    fn route(&self, i: usize) -> Result<Option<Route>, ReportError> {
        if self.str(i).is_empty() {
            return Ok(None);
        }
        let ids = self
            .str(i)
            .split_whitespace()
            .map(|t| t.parse().map(NodeId))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| self.err(format!("bad route {:?}", self.str(i))))?;
        Ok(Some(Route::new(ids)))
    }

    fn metrics(&self, i: usize) -> Result<Option<RouteMetrics>, ReportError> {
        let Some(size) = self.opt(i)? else {
            return Ok(None);
        };
        let backups = match (self.opt(i + 2)?, self.opt(i + 3)?) {
            (Some(total), Some(interior)) => Some(Backups { total, interior }),
            _ => None,
        };
        Ok(Some(RouteMetrics {
            size,
            deg_sum: self.num(i + 1)?,
            backups,
        }))
    }
}

/// Reads a file written by [`write_pairs`].
pub fn read_pairs<R: io::Read>(input: R) -> Result<Vec<PairRow>, ReportError> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let f = Fields { rec: &rec, line };
        if rec.len() != PAIR_COLUMNS.len() {
            return Err(f.err(format!("expected {} fields, found {}", PAIR_COLUMNS.len(), rec.len())));
        }
        let weights = Weights::new(f.num(3)?, f.num(4)?).map_err(|e| f.err(e.to_string()))?;
        rows.push(PairRow {
            topology: f.str(0).into(),
            n: f.num(1)?,
            params: f.str(2).into(),
            weights,
            result: PairResult {
                src: NodeId(f.num(5)?),
                dst: NodeId(f.num(6)?),
                differs: f.num::<u8>(7)? == 1,
                mf_route: f.route(8)?,
                dj_route: f.route(9)?,
                mf: f.metrics(10)?,
                dj: f.metrics(14)?,
            },
        });
    }
    Ok(rows)
}

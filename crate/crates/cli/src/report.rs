//! Serialized reports.
//!
//! Single solves are JSON documents; sweeps and `--format csv` output are
//! tables with a fixed header. Floats are written in their shortest
//! round-trip form, so re-reading any report recovers every binary64 value.

use serde::{Deserialize, Serialize};

use cryptoeq_core::oracle::GridSpec;
use cryptoeq_core::speculator::{CryptoStats, SpeculatorParams, VarianceMode};
use cryptoeq_core::{
    ConditionsReport, EquilibriumResult, ModelParams, SolverOptions, StackelbergOptions, StackelbergSolution,
    StrategyPoint,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSummary {
    pub size: usize,
    pub min_gain: f64,
    pub centroid: StrategyPoint,
    pub cores: Vec<StrategyPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleNash {
    pub grid: GridSpec,
    pub clusters: Vec<ClusterSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashReport {
    pub params: ModelParams,
    pub options: SolverOptions,
    pub conditions: ConditionsReport,
    pub equilibria: Vec<EquilibriumResult>,
    pub suspected_tangencies: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleNash>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleStackelberg {
    pub grid: GridSpec,
    pub point: StrategyPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StackelbergReport {
    pub params: ModelParams,
    pub options: StackelbergOptions,
    #[serde(rename = "A")]
    pub attractiveness: f64,
    pub solution: StackelbergSolution,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleStackelberg>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionsOutput {
    pub params: ModelParams,
    #[serde(rename = "A")]
    pub attractiveness: f64,
    pub conditions: ConditionsReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PricedPoint {
    pub p: f64,
    pub x: f64,
    pub demand: f64,
    pub price: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceReport {
    pub params: ModelParams,
    pub wealth_total: f64,
    pub units: f64,
    pub nash: Vec<PricedPoint>,
    pub stackelberg: PricedPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeculatorReport {
    pub speculator: SpeculatorParams,
    pub variance_mode: VarianceMode,
    #[serde(rename = "Vm")]
    pub optimal_volatility: f64,
    pub stats: CryptoStats,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ModelParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equilibria: Option<Vec<EquilibriumResult>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stackelberg: Option<StackelbergSolution>,
}

/// One table cell. JSON renders the variants as plain values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Bool(bool),
    Text(String),
    Empty(()),
}

impl Cell {
    pub fn empty() -> Cell {
        Cell::Empty(())
    }

    fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(v) => format!("{v:?}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty(()) => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Cell {
        Cell::Int(n as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Table {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = out.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut table = Table::new(["value", "flag", "note", "gap"]);
        table.push(vec![0.1.into(), true.into(), "a,b".into(), Cell::empty()]);
        table.push(vec![1e-300.into(), false.into(), "ok".into(), 2.0.into()]);
        let csv = table.to_csv().unwrap();
        assert_eq!(csv, "value,flag,note,gap\n0.1,true,\"a,b\",\n1e-300,false,ok,2.0\n");
    }

    #[test]
    fn cells_round_trip_through_json() {
        let mut table = Table::new(["a", "b", "c", "d", "e"]);
        table.push(vec![0.1.into(), true.into(), "x".into(), Cell::empty(), 3usize.into()]);
        table.push(vec![1.0.into(), false.into(), "".into(), Cell::empty(), 0usize.into()]);
        let back: Table = serde_json::from_str(&to_json(&table).unwrap()).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn floats_render_shortest_round_trip() {
        for v in [0.1, 1.0 / 3.0, 0.6843147862105218, f64::MIN_POSITIVE, 1e21] {
            let text = Cell::Num(v).render();
            assert_eq!(text.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{text}");
        }
    }
}

//! Indicator tables: parsing, most-recent-year selection, completeness
//! filtering, outlier attenuation and normative rescaling to `[-1, 1]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats;

/// One of the four development indicators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndicatorId {
    /// GDP per capita (PPP).
    Gdp,
    /// Life expectancy at birth.
    Le,
    /// Infant mortality per 1000 live births.
    Im,
    /// GNI per capita (PPP).
    Gni,
}

impl IndicatorId {
    pub const ALL: [IndicatorId; 4] = [Self::Gdp, Self::Le, Self::Im, Self::Gni];

    /// `+1` when a larger raw value is more favorable, `-1` otherwise.
    pub fn favorability(self) -> f64 {
        match self {
            Self::Im => -1.0,
            _ => 1.0,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Self::Gdp => "GDP",
            Self::Le => "LE",
            Self::Im => "IM",
            Self::Gni => "GNI",
        }
    }
}

impl fmt::Display for IndicatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for IndicatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GDP" => Ok(Self::Gdp),
            "LE" => Ok(Self::Le),
            "IM" => Ok(Self::Im),
            "GNI" => Ok(Self::Gni),
            other => Err(Error::UnknownIndicator(other.to_string())),
        }
    }
}

/// Parses a comma separated indicator list such as `GDP,LE`.
pub fn parse_indicator_list(s: &str) -> Result<Vec<IndicatorId>> {
    let mut out: Vec<IndicatorId> = Vec::new();
    for tok in s.split(',').filter(|t| !t.trim().is_empty()) {
        let id: IndicatorId = tok.parse()?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument("empty indicator list".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorObservation {
    pub country: String,
    pub indicator: IndicatorId,
    pub year: i32,
    pub value: f64,
}

const MIN_YEAR: i32 = 1900;
const MAX_YEAR: i32 = 2100;

/// Reads the long-format indicator CSV (`country,indicator,year,value`).
///
/// Rows with an empty value cell are skipped. Any other malformed row is an
/// error carrying its 1-based line number.
pub fn parse_observations<R: Read>(reader: R) -> Result<Vec<IndicatorObservation>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let header = rdr.headers().map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    let expected = ["country", "indicator", "year", "value"];
    let got: Vec<String> = header.iter().map(|h| h.to_ascii_lowercase()).collect();
    if got.len() != expected.len() || got.iter().zip(expected).any(|(g, e)| g != e) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("malformed header, expected `{}`", expected.join(",")),
        });
    }

    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            msg: e.to_string(),
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let perr = |msg: String| Error::Parse { line, msg };
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        if rec.len() < 3 || rec.len() > 4 {
            return Err(perr(format!("expected 4 fields, found {}", rec.len())));
        }
        let value_cell = rec.get(3).unwrap_or("");
        let country = rec[0].to_ascii_uppercase();
        if country.is_empty() {
            return Err(perr("empty country code".into()));
        }
        let indicator: IndicatorId = rec[1]
            .parse()
            .map_err(|_| perr(format!("unknown indicator `{}`", &rec[1])))?;
        if value_cell.is_empty() {
            continue;
        }
        let year: i32 = rec[2]
            .parse()
            .map_err(|_| perr(format!("non-numeric year `{}`", &rec[2])))?;
        if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
            return Err(perr(format!("year {year} out of range")));
        }
        let value: f64 = value_cell
            .parse()
            .map_err(|_| perr(format!("non-numeric value `{value_cell}`")))?;
        if !value.is_finite() {
            return Err(perr(format!("non-finite value `{value_cell}`")));
        }
        out.push(IndicatorObservation {
            country,
            indicator,
            year,
            value,
        });
    }
    Ok(out)
}

/// Most recent `(value, year)` per `(country, indicator)`.
pub type LatestValues = BTreeMap<(String, IndicatorId), (f64, i32)>;

/// Keeps the observation with the largest year for every (country, indicator);
/// on equal years the later row wins.
pub fn select_latest(observations: &[IndicatorObservation]) -> LatestValues {
    let mut out = LatestValues::new();
    for obs in observations {
        let key = (obs.country.clone(), obs.indicator);
        match out.get(&key) {
            Some(&(_, year)) if year > obs.year => {}
            _ => {
                out.insert(key, (obs.value, obs.year));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorDataset {
    pub countries: Vec<String>,
    pub indicators: Vec<IndicatorId>,
    /// Scaled values, one row per country. Equal to `raw_values` until
    /// [`scale_normative`] runs.
    pub values: Vec<Vec<f64>>,
    pub raw_values: Vec<Vec<f64>>,
    pub years: Vec<Vec<i32>>,
    pub scaled: bool,
    /// Clamp bounds applied to each column by [`attenuate`], computed from
    /// the column as first attenuated.
    pub clamp_bounds: Vec<Option<ClampBounds>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClampBounds {
    pub k: f64,
    pub lo: f64,
    pub hi: f64,
}

impl IndicatorDataset {
    pub fn len(&self) -> usize {
        self.countries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.countries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.indicators.len()
    }

    pub fn index_of(&self, country: &str) -> Option<usize> {
        self.countries
            .binary_search_by(|c| c.as_str().cmp(country))
            .ok()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|r| r[j]).collect()
    }

    pub fn raw_column(&self, j: usize) -> Vec<f64> {
        self.raw_values.iter().map(|r| r[j]).collect()
    }

    /// Mean of the scaled indicators of one country.
    pub fn row_mean(&self, i: usize) -> f64 {
        stats::mean(&self.values[i])
    }

    /// Builds a dataset directly from scaled coordinates. Used for synthetic
    /// point clouds and tests.
    pub fn from_points(
        countries: Vec<String>,
        indicators: Vec<IndicatorId>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if countries.len() != values.len() {
            return Err(Error::InvalidArgument("label/row count mismatch".into()));
        }
        if values.iter().any(|r| r.len() != indicators.len()) {
            return Err(Error::DimensionMismatch {
                expected: indicators.len(),
                found: values
                    .iter()
                    .map(Vec::len)
                    .find(|&l| l != indicators.len())
                    .unwrap_or(0),
            });
        }
        let mut order: Vec<usize> = (0..countries.len()).collect();
        order.sort_by(|&a, &b| countries[a].cmp(&countries[b]));
        let countries: Vec<String> = order.iter().map(|&i| countries[i].clone()).collect();
        if countries.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate country label".into()));
        }
        let values: Vec<Vec<f64>> = order.iter().map(|&i| values[i].clone()).collect();
        let years = vec![vec![0; indicators.len()]; countries.len()];
        Ok(Self {
            clamp_bounds: vec![None; indicators.len()],
            countries,
            indicators,
            raw_values: values.clone(),
            values,
            years,
            scaled: true,
        })
    }

    /// Writes `country,<indicator>...` with six decimals.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("country");
        for id in &self.indicators {
            s.push(',');
            s.push_str(id.code());
        }
        s.push('\n');
        for (c, row) in self.countries.iter().zip(&self.values) {
            s.push_str(c);
            for v in row {
                s.push_str(&format!(",{v:.6}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Assembles the raw dataset for the indicator set, keeping only countries
/// with a value for every indicator. Countries come out sorted by code.
pub fn build_dataset(latest: &LatestValues, indicators: &[IndicatorId]) -> Result<IndicatorDataset> {
    if indicators.is_empty() {
        return Err(Error::InvalidArgument("empty indicator set".into()));
    }
    let mut per_country: BTreeMap<&str, HashMap<IndicatorId, (f64, i32)>> = BTreeMap::new();
    for ((country, id), &vy) in latest {
        per_country.entry(country.as_str()).or_default().insert(*id, vy);
    }

    let mut countries = Vec::new();
    let mut raw_values = Vec::new();
    let mut years = Vec::new();
    for (country, vals) in per_country {
        let row: Option<Vec<(f64, i32)>> = indicators.iter().map(|id| vals.get(id).copied()).collect();
        if let Some(row) = row {
            countries.push(country.to_string());
            raw_values.push(row.iter().map(|&(v, _)| v).collect());
            years.push(row.iter().map(|&(_, y)| y).collect());
        }
    }
    if countries.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(IndicatorDataset {
        countries,
        clamp_bounds: vec![None; indicators.len()],
        indicators: indicators.to_vec(),
        values: raw_values.clone(),
        raw_values,
        years,
        scaled: false,
    })
}

/// Clamp bounds `mu - k*sigma ..= mu + k*sigma` of a column, or `None` for a
/// constant column.
pub fn attenuation_bounds(column: &[f64], k: f64) -> Option<(f64, f64)> {
    let mu = stats::mean(column);
    let sigma = stats::sample_std(column);
    if sigma == 0.0 || !sigma.is_finite() {
        return None;
    }
    Some((mu - k * sigma, mu + k * sigma))
}

/// Clamps the selected raw columns to `mean ± k·sd`, with mean and sample
/// standard deviation taken from the column before clamping.
///
/// The bounds are remembered per column, so attenuating an already
/// attenuated column with the same `k` reuses them and changes nothing.
pub fn attenuate(dataset: &IndicatorDataset, k: f64, columns: &[IndicatorId]) -> Result<IndicatorDataset> {
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::InvalidArgument(format!("attenuation multiplier must be > 0, got {k}")));
    }
    let mut out = dataset.clone();
    for id in columns {
        let j = dataset
            .indicators
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::InvalidArgument(format!("indicator {id} not in dataset")))?;
        let cached = dataset.clamp_bounds[j].filter(|b| b.k == k);
        let bounds = cached.or_else(|| {
            attenuation_bounds(&dataset.raw_column(j), k).map(|(lo, hi)| ClampBounds { k, lo, hi })
        });
        let Some(b @ ClampBounds { lo, hi, .. }) = bounds else {
            continue;
        };
        out.clamp_bounds[j] = Some(b);
        for row in out.raw_values.iter_mut() {
            row[j] = row[j].clamp(lo, hi);
        }
    }
    out.values = out.raw_values.clone();
    out.scaled = false;
    Ok(out)
}

/// Rescales every column to `[-1, 1]`, oriented so that `+1` is the most
/// favorable value. Constant columns become zero.
pub fn scale_normative(dataset: &IndicatorDataset) -> IndicatorDataset {
    let mut out = dataset.clone();
    for (j, id) in dataset.indicators.iter().enumerate() {
        let col = dataset.raw_column(j);
        let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        for (row, &v) in out.values.iter_mut().zip(&col) {
            row[j] = if span > 0.0 {
                let t = 2.0 * (v - lo) / span;
                if id.favorability() > 0.0 {
                    (t - 1.0).clamp(-1.0, 1.0)
                } else {
                    (1.0 - t).clamp(-1.0, 1.0)
                }
            } else {
                0.0
            };
        }
        if span <= 0.0 {
            warn!("indicator {id} is constant; scaled to 0");
        }
    }
    out.scaled = true;
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorStats {
    pub indicator: IndicatorId,
    pub max: f64,
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub std_dev: f64,
    pub scaled_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub count: usize,
    pub rows: Vec<IndicatorStats>,
}

impl SummaryStats {
    pub fn get(&self, id: IndicatorId) -> Option<&IndicatorStats> {
        self.rows.iter().find(|r| r.indicator == id)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("indicator,max,min,median,mean,std_dev,scaled_mean\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                r.indicator, r.max, r.min, r.median, r.mean, r.std_dev, r.scaled_mean
            ));
        }
        s
    }
}

/// Raw statistics come from `raw_values`; the scaled mean from `values`.
///
/// Pass the dataset as loaded (before attenuation) with its scaled values
/// to reproduce the usual table layout.
pub fn summary(dataset: &IndicatorDataset) -> SummaryStats {
    let rows = dataset
        .indicators
        .iter()
        .enumerate()
        .map(|(j, &indicator)| {
            let raw = dataset.raw_column(j);
            IndicatorStats {
                indicator,
                max: raw.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                min: raw.iter().copied().fold(f64::INFINITY, f64::min),
                median: stats::median(&raw),
                mean: stats::mean(&raw),
                std_dev: stats::sample_std(&raw),
                scaled_mean: stats::mean(&dataset.column(j)),
            }
        })
        .collect();
    SummaryStats {
        count: dataset.len(),
        rows,
    }
}

/// Undirected border between two countries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BorderEdge {
    pub a: String,
    pub b: String,
}

/// Reads the border edge list (`country_a,country_b`).
pub fn parse_borders<R: Read>(reader: R) -> Result<Vec<BorderEdge>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers().map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    let got: Vec<String> = header.iter().map(|h| h.to_ascii_lowercase()).collect();
    if got != ["country_a", "country_b"] {
        return Err(Error::Parse {
            line: 1,
            msg: "malformed header, expected `country_a,country_b`".into(),
        });
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            msg: e.to_string(),
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        if rec.len() != 2 || rec[0].is_empty() || rec[1].is_empty() {
            return Err(Error::Parse {
                line,
                msg: "expected two country codes".into(),
            });
        }
        out.push(BorderEdge {
            a: rec[0].to_ascii_uppercase(),
            b: rec[1].to_ascii_uppercase(),
        });
    }
    Ok(out)
}

/// Parse, select, build, attenuate and scale in one go.
pub fn load_dataset<R: Read>(
    reader: R,
    indicators: &[IndicatorId],
    attenuate_k: f64,
    attenuate_cols: &[IndicatorId],
) -> Result<IndicatorDataset> {
    let obs = parse_observations(reader)?;
    let raw = build_dataset(&select_latest(&obs), indicators)?;
    let cols: Vec<IndicatorId> = attenuate_cols
        .iter()
        .copied()
        .filter(|c| indicators.contains(c))
        .collect();
    let att = attenuate(&raw, attenuate_k, &cols)?;
    Ok(scale_normative(&att))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn obs(c: &str, i: IndicatorId, y: i32, v: f64) -> IndicatorObservation {
        IndicatorObservation {
            country: c.into(),
            indicator: i,
            year: y,
            value: v,
        }
    }

    fn single_column(vals: &[f64], id: IndicatorId) -> IndicatorDataset {
        let countries: Vec<String> = (0..vals.len()).map(|i| format!("C{i:03}")).collect();
        IndicatorDataset {
            countries,
            indicators: vec![id],
            values: vals.iter().map(|&v| vec![v]).collect(),
            raw_values: vals.iter().map(|&v| vec![v]).collect(),
            years: vec![vec![2015]; vals.len()],
            scaled: false,
            clamp_bounds: vec![None],
        }
    }

    #[test]
    fn parses_rows_and_skips_empty_values() {
        let csv = "country,indicator,year,value\nAF,GDP,2015,1928.0\nAF,GNI,2011,\n";
        let got = parse_observations(csv.as_bytes()).unwrap();
        assert_eq!(got, vec![obs("AF", IndicatorId::Gdp, 2015, 1928.0)]);
    }

    #[test]
    fn unknown_indicator_names_line() {
        let csv = "country,indicator,year,value\nAF,GDP,2015,1\nAF,XX,2015,5\n";
        let err = parse_observations(csv.as_bytes()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(msg.contains("unknown indicator"), "{msg}");
    }

    #[test]
    fn malformed_header_and_bad_number() {
        assert!(parse_observations("a,b,c,d\n".as_bytes()).is_err());
        let err = parse_observations("country,indicator,year,value\nAF,LE,2015,abc\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn latest_year_wins_and_ties_go_to_last_row() {
        let o = vec![
            obs("AF", IndicatorId::Gni, 2010, 1.0),
            obs("AF", IndicatorId::Gni, 2005, 2.0),
        ];
        let l = select_latest(&o);
        assert_eq!(l[&("AF".to_string(), IndicatorId::Gni)], (1.0, 2010));

        let o = vec![obs("AF", IndicatorId::Le, 2016, 60.0), obs("AF", IndicatorId::Le, 2016, 61.0)];
        assert_eq!(select_latest(&o)[&("AF".to_string(), IndicatorId::Le)], (61.0, 2016));

        let o = vec![obs("BR", IndicatorId::Le, 2016, 75.0)];
        assert_eq!(select_latest(&o).len(), 1);
    }

    #[test]
    fn incomplete_countries_are_dropped() {
        let o = vec![
            obs("FR", IndicatorId::Gdp, 2015, 40000.0),
            obs("FR", IndicatorId::Im, 2015, 3.0),
            obs("SS", IndicatorId::Gdp, 2015, 1500.0),
        ];
        let l = select_latest(&o);
        let d = build_dataset(&l, &[IndicatorId::Gdp, IndicatorId::Im]).unwrap();
        assert_eq!(d.countries, vec!["FR"]);
        let d = build_dataset(&l, &[IndicatorId::Gdp]).unwrap();
        assert_eq!(d.countries, vec!["FR", "SS"]);
        assert!(matches!(build_dataset(&l, &[IndicatorId::Le]), Err(Error::EmptyDataset)));
    }

    #[test]
    fn attenuation_example_column() {
        // mean 25, sample sd 50, upper bound 125: nothing clamps.
        let d = single_column(&[0.0, 0.0, 0.0, 100.0], IndicatorId::Gdp);
        let (lo, hi) = attenuation_bounds(&d.raw_column(0), 2.0).unwrap();
        assert!((lo - -75.0).abs() < 1e-12 && (hi - 125.0).abs() < 1e-12);
        let a = attenuate(&d, 2.0, &[IndicatorId::Gdp]).unwrap();
        assert_eq!(a.raw_values, d.raw_values);

        let c = single_column(&[3.0, 3.0, 3.0], IndicatorId::Gdp);
        assert_eq!(attenuate(&c, 2.0, &[IndicatorId::Gdp]).unwrap().raw_values, c.raw_values);
    }

    #[test]
    fn attenuation_clamps_outlier() {
        let mut vals = vec![1.0; 20];
        vals.push(1000.0);
        let d = single_column(&vals, IndicatorId::Gdp);
        let (_, hi) = attenuation_bounds(&vals, 2.0).unwrap();
        let a = attenuate(&d, 2.0, &[IndicatorId::Gdp]).unwrap();
        assert_eq!(a.raw_values[20][0], hi);
        assert!(hi < 1000.0);
        // value sitting exactly on the bound is unchanged
        let again = attenuate(&a, 2.0, &[IndicatorId::Gdp]).unwrap();
        assert!(again.raw_values.iter().all(|r| r[0] <= hi));
    }

    #[test]
    fn scaling_orients_by_favorability() {
        let le = single_column(&[48.86, 70.0, 84.8], IndicatorId::Le);
        let s = scale_normative(&le);
        assert_eq!(s.values[0][0], -1.0);
        assert_eq!(s.values[2][0], 1.0);

        let im = single_column(&[1.5, 30.0, 96.0], IndicatorId::Im);
        let s = scale_normative(&im);
        assert_eq!(s.values[0][0], 1.0);
        assert_eq!(s.values[2][0], -1.0);

        let c = single_column(&[5.0, 5.0], IndicatorId::Gdp);
        assert_eq!(scale_normative(&c).column(0), vec![0.0, 0.0]);
    }

    #[test]
    fn summary_degenerate_cases() {
        let one = single_column(&[7.0], IndicatorId::Le);
        let s = summary(&one);
        let r = &s.rows[0];
        assert_eq!((r.max, r.min, r.median, r.mean, r.std_dev), (7.0, 7.0, 7.0, 7.0, 0.0));

        let two = single_column(&[0.0, 10.0], IndicatorId::Le);
        let r = summary(&two).rows[0].clone();
        assert_eq!((r.mean, r.median), (5.0, 5.0));
    }

    #[test]
    fn borders_parse() {
        let e = parse_borders("country_a,country_b\nfr,de\nFR,ES\n".as_bytes()).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].a, "FR");
        assert!(parse_borders("x,y\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn attenuate_is_idempotent(vals in prop::collection::vec(-1e4f64..1e4, 2..40), k in 0.5f64..3.0) {
            let d = single_column(&vals, IndicatorId::Gdp);
            let once = attenuate(&d, k, &[IndicatorId::Gdp]).unwrap();
            let twice = attenuate(&once, k, &[IndicatorId::Gdp]).unwrap();
            prop_assert_eq!(once.raw_values, twice.raw_values);
        }

        #[test]
        fn scaling_is_monotone_and_tight(vals in prop::collection::vec(-1e3f64..1e3, 2..30), fav in any::<bool>()) {
            let id = if fav { IndicatorId::Gdp } else { IndicatorId::Im };
            let s = scale_normative(&single_column(&vals, id));
            let col = s.column(0);
            prop_assert!(col.iter().all(|v| (-1.0..=1.0).contains(v)));
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi > lo {
                prop_assert!(col.contains(&-1.0) && col.contains(&1.0));
            }
            for i in 0..vals.len() {
                for j in 0..vals.len() {
                    if vals[i] < vals[j] {
                        if fav { prop_assert!(col[i] <= col[j]); } else { prop_assert!(col[i] >= col[j]); }
                    }
                }
            }
        }
    }
}

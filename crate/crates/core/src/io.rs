//! Sample sets, CSV series output and self-checking spline descriptors.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{FactorKind, SmoothnessOrder};
use crate::grid::{GridSpec, Indicator};
use crate::kernel::Truncation;
use crate::spline::TrigSpline;
use crate::trig_poly::check_values;

pub const DESCRIPTOR_SCHEMA_VERSION: u32 = 1;

/// Agreement required between stored and re-derived descriptor quantities.
pub const DESCRIPTOR_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleFormat {
    Csv,
    Json,
}

impl std::str::FromStr for SampleFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(SampleFormat::Csv),
            "json" => Ok(SampleFormat::Json),
            other => Err(Error::Domain(format!("unknown sample format {other:?}"))),
        }
    }
}

/// Function values at the nodes of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
    grid: GridSpec,
}

impl SampleSet {
    pub fn new(values: Vec<f64>, grid: GridSpec) -> Result<Self> {
        check_values(&values, &grid)?;
        Ok(Self { values, grid })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }
}

/// Grid parameters supplied alongside a sample source. Unset fields are taken
/// from the source (JSON) or defaulted (CSV: `N` = row count, `I` = 0).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GridRequest {
    pub nodes: Option<usize>,
    pub indicator: Option<Indicator>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SamplesJson {
    #[serde(rename = "N")]
    nodes: usize,
    #[serde(rename = "I")]
    indicator: u8,
    values: Vec<f64>,
}

pub fn read_samples<R: Read>(
    reader: R,
    format: SampleFormat,
    request: GridRequest,
) -> Result<SampleSet> {
    match format {
        SampleFormat::Csv => read_samples_csv(reader, request),
        SampleFormat::Json => read_samples_json(reader, request),
    }
}

fn read_samples_json<R: Read>(reader: R, request: GridRequest) -> Result<SampleSet> {
    let raw: SamplesJson = serde_json::from_reader(reader).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let indicator = Indicator::try_from(raw.indicator)?;
    if let Some(n) = request.nodes.filter(|&n| n != raw.nodes) {
        return Err(Error::Input(format!(
            "requested N = {n} but the file declares N = {}",
            raw.nodes
        )));
    }
    if let Some(i) = request.indicator.filter(|&i| i != indicator) {
        return Err(Error::Input(format!(
            "requested I = {i} but the file declares I = {indicator}"
        )));
    }
    let grid = GridSpec::new(raw.nodes, indicator)?;
    SampleSet::new(raw.values, grid)
}

fn parse_number(field: &str, line: usize) -> Result<f64> {
    field.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("not a number: {field:?}"),
    })
}

fn is_header(record: &csv::StringRecord) -> bool {
    let fields: Vec<String> = record.iter().map(|f| f.to_ascii_lowercase()).collect();
    matches!(fields.as_slice(), [v] if v == "value")
        || matches!(fields.as_slice(), [i, v] if i == "index" && v == "value")
}

fn read_samples_csv<R: Read>(reader: R, request: GridRequest) -> Result<SampleSet> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut values = Vec::new();
    let mut index_base: Option<i64> = None;
    for (row, record) in csv.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(row + 1, |p| p.line() as usize);
        if row == 0 && is_header(&record) {
            continue;
        }
        match record.len() {
            1 => values.push(parse_number(&record[0], line)?),
            2 => {
                let index: i64 = record[0].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("not an integer index: {:?}", &record[0]),
                })?;
                let base = *index_base.get_or_insert(index);
                if index != base + values.len() as i64 || !(base == 0 || base == 1) {
                    return Err(Error::Parse {
                        line,
                        message: format!("index {index} out of sequence"),
                    });
                }
                values.push(parse_number(&record[1], line)?);
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 1 or 2 fields, found {other}"),
                })
            }
        }
    }

    let nodes = request.nodes.unwrap_or(values.len());
    if values.is_empty() || values.len() != nodes {
        return Err(Error::Dimension {
            expected: nodes,
            actual: values.len(),
        });
    }
    let grid = GridSpec::new(nodes, request.indicator.unwrap_or(Indicator::Aligned))?;
    SampleSet::new(values, grid)
}

/// `index,value` CSV, 1-based indices, 12 significant digits.
pub fn write_samples<W: Write>(writer: W, samples: &SampleSet) -> Result<()> {
    let rows: Vec<Vec<f64>> = samples
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| vec![(i + 1) as f64, v])
        .collect();
    write_series(writer, &["index", "value"], &rows)
}

/// Renders like C's `%.12g`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        trim_fraction(&format!("{x:.*}", (11 - exp) as usize)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes a header row and one line per row. Rows must be nonempty, match the
/// header width, and ascend in the first column.
pub fn write_series<W: Write, S: AsRef<str>>(
    writer: W,
    labels: &[S],
    rows: &[Vec<f64>],
) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Domain("series is empty".into()));
    }
    if let Some(row) = rows.iter().find(|r| r.len() != labels.len()) {
        return Err(Error::Dimension {
            expected: labels.len(),
            actual: row.len(),
        });
    }
    if rows.windows(2).any(|w| !(w[0][0] < w[1][0])) {
        return Err(Error::Input(
            "series rows must ascend in the first column".into(),
        ));
    }
    let mut csv = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    let to_io = |e: csv::Error| Error::Io(e.into());
    csv.write_record(labels.iter().map(|l| l.as_ref()))
        .map_err(to_io)?;
    for row in rows {
        csv.write_record(row.iter().map(|&x| format_sig12(x)))
            .map_err(to_io)?;
    }
    csv.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridJson {
    #[serde(rename = "N")]
    nodes: usize,
    #[serde(rename = "I")]
    indicator: u8,
}

/// Persisted form of a [`TrigSpline`]: inputs plus derived quantities, which are
/// re-derived and compared on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplineDescriptor {
    pub schema_version: u32,
    grid: GridJson,
    pub kind: FactorKind,
    pub order: u32,
    pub blocks: u64,
    pub tail_bound: f64,
    pub values: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub normalizers: Vec<f64>,
}

impl SplineDescriptor {
    pub fn from_spline(spline: &TrigSpline) -> Self {
        let grid = spline.grid();
        Self {
            schema_version: DESCRIPTOR_SCHEMA_VERSION,
            grid: GridJson {
                nodes: grid.len(),
                indicator: grid.indicator().as_u8(),
            },
            kind: spline.kind(),
            order: spline.order().get(),
            blocks: spline.policy().blocks,
            tail_bound: spline.policy().tail_bound,
            values: spline.values().to_vec(),
            a: spline.coeffs().cosine_coeffs().to_vec(),
            b: spline.coeffs().sine_coeffs().to_vec(),
            normalizers: spline.kernel().normalizers().to_vec(),
        }
    }

    /// Rebuilds the spline from the stored inputs and checks the stored derived values.
    pub fn to_spline(&self) -> Result<TrigSpline> {
        if self.schema_version != DESCRIPTOR_SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema version {}, expected {DESCRIPTOR_SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        let grid = GridSpec::new(self.grid.nodes, Indicator::try_from(self.grid.indicator)?)?;
        let order = SmoothnessOrder::new(self.order)?;
        let spline = TrigSpline::build(
            &self.values,
            grid,
            self.kind,
            order,
            Truncation::Blocks(self.blocks),
        )?;

        let rebuilt = SplineDescriptor::from_spline(&spline);
        compare("a", &self.a, &rebuilt.a)?;
        compare("b", &self.b, &rebuilt.b)?;
        compare("normalizers", &self.normalizers, &rebuilt.normalizers)?;
        compare("tail_bound", &[self.tail_bound], &[rebuilt.tail_bound])?;
        Ok(spline)
    }
}

fn compare(name: &str, stored: &[f64], derived: &[f64]) -> Result<()> {
    if stored.len() != derived.len() {
        return Err(Error::Invariant(format!(
            "{name} has {} entries, expected {}",
            stored.len(),
            derived.len()
        )));
    }
    for (i, (s, d)) in stored.iter().zip(derived).enumerate() {
        if !((s - d).abs() <= DESCRIPTOR_TOLERANCE * d.abs().max(1.0)) {
            return Err(Error::Invariant(format!(
                "{name}[{i}] = {s} does not match re-derived {d}"
            )));
        }
    }
    Ok(())
}

pub fn write_descriptor(spline: &TrigSpline) -> String {
    serde_json::to_string_pretty(&SplineDescriptor::from_spline(spline))
        .expect("descriptor serializes")
}

pub fn read_descriptor(text: &str) -> Result<TrigSpline> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    // check the version before the field layout so old files get a clear message
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v == DESCRIPTOR_SCHEMA_VERSION as u64 => {}
        Some(v) => {
            return Err(Error::Schema(format!(
                "unsupported schema version {v}, expected {DESCRIPTOR_SCHEMA_VERSION}"
            )))
        }
        None => return Err(Error::Schema("missing schema_version".into())),
    }
    let descriptor: SplineDescriptor =
        serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    descriptor.to_spline()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EXAMPLE_VALUES;
    use std::f64::consts::PI;

    fn example_csv() -> String {
        EXAMPLE_VALUES.iter().map(|v| format!("{v}\n")).collect()
    }

    #[test]
    fn reads_one_value_per_line() {
        let s = read_samples(
            example_csv().as_bytes(),
            SampleFormat::Csv,
            GridRequest {
                nodes: Some(9),
                indicator: None,
            },
        )
        .unwrap();
        assert_eq!(s.values(), &EXAMPLE_VALUES);
        assert_eq!(s.grid().len(), 9);
        assert_eq!(s.grid().indicator(), Indicator::Aligned);
    }

    #[test]
    fn reads_indexed_form_with_comments() {
        let text = "# demo\nindex,value\n1, 2\n2,1\n# mid comment\n3,3\n";
        let s = read_samples(text.as_bytes(), SampleFormat::Csv, GridRequest::default()).unwrap();
        assert_eq!(s.values(), &[2.0, 1.0, 3.0]);
        let bad = "1,2\n3,1\n2,3\n";
        assert!(matches!(
            read_samples(bad.as_bytes(), SampleFormat::Csv, GridRequest::default()),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(
            read_samples(
                &b""[..],
                SampleFormat::Csv,
                GridRequest {
                    nodes: Some(9),
                    indicator: None
                }
            ),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            read_samples(&b""[..], SampleFormat::Csv, GridRequest::default()),
            Err(Error::Dimension { .. })
        ));
        let err = read_samples(
            "1\n2\nabc\n".as_bytes(),
            SampleFormat::Csv,
            GridRequest::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("line 3"));
        assert!(matches!(
            read_samples(
                "1\n2\n3\n4\n".as_bytes(),
                SampleFormat::Csv,
                GridRequest {
                    nodes: Some(5),
                    indicator: None
                }
            ),
            Err(Error::Dimension {
                expected: 5,
                actual: 4
            })
        ));
        assert!(matches!(
            read_samples(
                "1\nNaN\n3\n".as_bytes(),
                SampleFormat::Csv,
                GridRequest::default()
            ),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn json_samples() {
        let text = r#"{"N": 3, "I": 1, "values": [1.0, 2.0, 0.5]}"#;
        let s = read_samples(text.as_bytes(), SampleFormat::Json, GridRequest::default()).unwrap();
        assert_eq!(s.grid().indicator(), Indicator::HalfStep);
        assert_eq!(s.values(), &[1.0, 2.0, 0.5]);
        let mismatch = r#"{"N": 5, "I": 0, "values": [1.0, 2.0, 0.5]}"#;
        assert!(matches!(
            read_samples(
                mismatch.as_bytes(),
                SampleFormat::Json,
                GridRequest::default()
            ),
            Err(Error::Dimension { .. })
        ));
        assert!(read_samples(
            text.as_bytes(),
            SampleFormat::Json,
            GridRequest {
                nodes: Some(5),
                indicator: None
            }
        )
        .is_err());
    }

    #[test]
    fn sig12_rendering() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(2.0), "2");
        assert_eq!(format_sig12(-1.5), "-1.5");
        assert_eq!(format_sig12(PI), "3.14159265359");
        assert_eq!(format_sig12(1234567.0), "1234567");
        assert_eq!(format_sig12(1e-7), "1e-07");
        assert_eq!(format_sig12(-2.5e15), "-2.5e+15");
        assert_eq!(format_sig12(0.000123456789012345), "0.000123456789012");
        assert_eq!(format_sig12(0.9999999999999), "1");
    }

    #[test]
    fn series_output() {
        let mut out = Vec::new();
        write_series(&mut out, &["t", "value"], &[vec![0.0, 1.0], vec![PI, 2.0]]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "t,value\n0,1\n3.14159265359,2\n");
        assert_eq!(text.lines().count(), 3);

        assert!(write_series(Vec::new(), &["t"], &[]).is_err());
        assert!(write_series(Vec::new(), &["t", "v"], &[vec![1.0, 0.0], vec![0.5, 0.0]]).is_err());
    }

    #[test]
    fn sample_csv_round_trip() {
        let grid = GridSpec::new(5, Indicator::HalfStep).unwrap();
        let set =
            SampleSet::new(vec![PI, -1.0 / 3.0, 2e-9, 12345.678901234567, 0.0], grid).unwrap();
        let mut first = Vec::new();
        write_samples(&mut first, &set).unwrap();
        let back = read_samples(
            &first[..],
            SampleFormat::Csv,
            GridRequest {
                nodes: None,
                indicator: Some(Indicator::HalfStep),
            },
        )
        .unwrap();
        for (x, y) in back.values().iter().zip(set.values()) {
            assert_eq!(*x, format_sig12(*y).parse::<f64>().unwrap());
        }
        let mut second = Vec::new();
        write_samples(&mut second, &back).unwrap();
        assert_eq!(first, second);
    }
}

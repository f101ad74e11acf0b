//! Readers and writers for UCR-style TSV files and for the uncertain
//! `best:delta` variant of the same layout.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::uncertain::{UncertainDataset, UncertainSeries, UncertainValue};

/// A labeled, rectangular matrix of plain readings.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset {
    pub name: String,
    pub series: Vec<Vec<f64>>,
    pub labels: Vec<String>,
}

impl RawDataset {
    pub fn new(name: impl Into<String>, series: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if series.len() != labels.len() {
            return Err(Error::LabelCountMismatch { series: series.len(), labels: labels.len() });
        }
        let m = series[0].len();
        if m == 0 {
            return Err(Error::EmptySeries);
        }
        if let Some((index, s)) = series.iter().enumerate().find(|(_, s)| s.len() != m) {
            return Err(Error::RaggedDataset { index, expected: m, found: s.len() });
        }
        if labels.iter().any(String::is_empty) {
            return Err(Error::Config("class labels must be non-empty".into()));
        }
        Ok(Self { name: name.into(), series, labels })
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn series_len(&self) -> usize {
        self.series[0].len()
    }

    /// The same readings as zero-uncertainty observations.
    pub fn to_certain(&self) -> Result<UncertainDataset> {
        let series = self.series.iter().map(|s| UncertainSeries::certain(s)).collect::<Result<Vec<_>>>()?;
        UncertainDataset::new(series, self.labels.clone())
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Dataset name from a file path, with a `_TRAIN`/`_TEST` suffix removed.
pub(crate) fn dataset_name(path: &Path) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("dataset");
    stem.strip_suffix("_TRAIN").or_else(|| stem.strip_suffix("_TEST")).unwrap_or(stem).to_string()
}

/// Splits non-empty lines into `(line number, label, fields)`.
fn records<'a>(text: &'a str, origin: &'a str) -> impl Iterator<Item = Result<(usize, String, Vec<&'a str>)>> + 'a {
    text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(move |(i, line)| {
        let line_no = i + 1;
        let mut fields = line.trim_end_matches('\r').split('\t');
        let label = fields.next().unwrap_or_default().trim().to_string();
        if label.is_empty() {
            return Err(Error::ParseLine {
                path: origin.to_string(),
                line: line_no,
                message: "missing class label".into(),
            });
        }
        Ok((line_no, label, fields.collect()))
    })
}

fn number(s: &str, origin: &str, line: usize, column: usize) -> Result<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::ParseValue {
        path: origin.to_string(),
        line,
        column,
        value: s.to_string(),
    })
}

fn check_width(width: &mut Option<usize>, found: usize, origin: &str, line: usize) -> Result<()> {
    match *width {
        None if found == 0 => {
            Err(Error::ParseLine { path: origin.to_string(), line, message: "no values after the label".into() })
        }
        None => {
            *width = Some(found);
            Ok(())
        }
        Some(w) if w != found => Err(Error::ParseLine {
            path: origin.to_string(),
            line,
            message: format!("ragged row: {found} values, expected {w}"),
        }),
        Some(_) => Ok(()),
    }
}

/// Parses UCR TSV text: per line a class label followed by tab-separated readings.
pub fn parse_ucr_tsv(text: &str, name: &str) -> Result<RawDataset> {
    let mut series = Vec::new();
    let mut labels = Vec::new();
    let mut width = None;
    for rec in records(text, name) {
        let (line, label, fields) = rec?;
        check_width(&mut width, fields.len(), name, line)?;
        let values =
            fields.iter().enumerate().map(|(j, f)| number(f, name, line, j + 2)).collect::<Result<Vec<_>>>()?;
        series.push(values);
        labels.push(label);
    }
    if series.is_empty() {
        return Err(Error::Parse { path: name.to_string(), message: "file contains no series".into() });
    }
    RawDataset::new(name, series, labels)
}

pub fn load_ucr_tsv(path: impl AsRef<Path>) -> Result<RawDataset> {
    let path = path.as_ref();
    let text = read(path)?;
    let mut ds = parse_ucr_tsv(&text, &path.display().to_string())?;
    ds.name = dataset_name(path);
    Ok(ds)
}

/// Parses the uncertain layout: label, then `best:delta` pairs, tab-separated.
pub fn parse_uncertain_tsv(text: &str, origin: &str) -> Result<UncertainDataset> {
    let mut series = Vec::new();
    let mut labels = Vec::new();
    let mut width = None;
    for rec in records(text, origin) {
        let (line, label, fields) = rec?;
        check_width(&mut width, fields.len(), origin, line)?;
        let values = fields
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let column = j + 2;
                let (b, d) = f.split_once(':').ok_or_else(|| Error::ParseLine {
                    path: origin.to_string(),
                    line,
                    message: format!("column {column}: expected best:delta, got {f:?}"),
                })?;
                let best = number(b, origin, line, column)?;
                let delta = number(d, origin, line, column)?;
                UncertainValue::new(best, delta).map_err(|e| Error::ParseLine {
                    path: origin.to_string(),
                    line,
                    message: format!("column {column}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        series.push(UncertainSeries::new(values)?);
        labels.push(label);
    }
    if series.is_empty() {
        return Err(Error::Parse { path: origin.to_string(), message: "file contains no series".into() });
    }
    UncertainDataset::new(series, labels)
}

pub fn load_uncertain_tsv(path: impl AsRef<Path>) -> Result<UncertainDataset> {
    let path = path.as_ref();
    parse_uncertain_tsv(&read(path)?, &path.display().to_string())
}

/// Writes the uncertain layout. Numbers use the shortest representation that
/// parses back to the same `f64`.
pub fn write_uncertain_tsv<W: Write>(dataset: &UncertainDataset, mut out: W) -> std::io::Result<()> {
    for (s, label) in dataset.series().iter().zip(dataset.labels()) {
        write!(out, "{label}")?;
        for v in s.values() {
            write!(out, "\t{}:{}", v.best(), v.delta())?;
        }
        writeln!(out)?;
    }
    out.flush()
}

pub fn save_uncertain_tsv(dataset: &UncertainDataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io { path: path.to_path_buf(), source };
    let file = fs::File::create(path).map_err(io_err)?;
    write_uncertain_tsv(dataset, std::io::BufWriter::new(file)).map_err(io_err)
}

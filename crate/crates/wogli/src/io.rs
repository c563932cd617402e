//! File formats: pair files (row JSON and TSV), prediction and score
//! tables, three-class training files, and lexicon files.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use wogli_core::analysis::{AnalysisError, PredictionSet};
use wogli_core::augment::{NliRow, NLI_LABELS};
use wogli_core::lexicon::{load_lexicon, LexiconError};
use wogli_core::record::{HypKind, Label, PairRecord};
use wogli_core::Lexicon;

pub const PAIR_TSV_HEADER: &str = "id\tsubset\tpremise\thypothesis\tlabel\thyp_kind\tpattern";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    RowJson,
    Tsv,
}

impl Format {
    /// `.tsv` means TSV, anything else row JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("tsv") => Format::Tsv,
            _ => Format::RowJson,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {line}: {reason}")]
    Row { line: usize, reason: String },
    #[error("record {id}: field `{field}` contains a tab or line break")]
    ForbiddenCharacter { id: String, field: &'static str },
    #[error("line {line}: {source}")]
    Prediction { line: usize, source: AnalysisError },
    #[error("lexicon {path}: {source}")]
    Lexicon { path: PathBuf, source: LexiconError },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> FormatError + '_ {
    move |source| FormatError::Io { path: path.to_path_buf(), source }
}

fn row_err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Row { line, reason: reason.into() }
}

fn check_text(id: &str, field: &'static str, value: &str) -> Result<(), FormatError> {
    if value.contains(['\t', '\n', '\r']) {
        return Err(FormatError::ForbiddenCharacter { id: id.to_string(), field });
    }
    Ok(())
}

struct Counting<W> {
    inner: W,
    bytes: usize,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Writes records and returns the number of bytes written.
pub fn write_pairs<W: Write>(records: &[PairRecord], format: Format, out: W) -> Result<usize, FormatError> {
    let stdout = Path::new("<output>");
    let mut w = Counting { inner: out, bytes: 0 };
    for r in records {
        for (field, value) in [
            ("id", &r.id),
            ("subset", &r.subset),
            ("premise", &r.premise),
            ("hypothesis", &r.hypothesis),
            ("pattern", &r.pattern),
        ] {
            check_text(&r.id, field, value)?;
        }
    }
    match format {
        Format::RowJson => {
            for r in records {
                serde_json::to_writer(&mut w, r).map_err(|e| FormatError::Json { line: 0, source: e })?;
                w.write_all(b"\n").map_err(io_err(stdout))?;
            }
        }
        Format::Tsv => {
            writeln!(w, "{PAIR_TSV_HEADER}").map_err(io_err(stdout))?;
            for r in records {
                writeln!(
                    w,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.id,
                    r.subset,
                    r.premise,
                    r.hypothesis,
                    r.label.name(),
                    r.hyp_kind.name(),
                    r.pattern
                )
                .map_err(io_err(stdout))?;
            }
        }
    }
    w.flush().map_err(io_err(stdout))?;
    Ok(w.bytes)
}

pub fn read_pairs<R: BufRead>(input: R, format: Format) -> Result<Vec<PairRecord>, FormatError> {
    let source = Path::new("<input>");
    let mut out = Vec::new();
    let mut lines = input.lines().enumerate();
    if format == Format::Tsv {
        match lines.next() {
            Some((_, header)) => {
                if header.map_err(io_err(source))? != PAIR_TSV_HEADER {
                    return Err(row_err(1, "expected pair TSV header"));
                }
            }
            None => return Ok(out),
        }
    }
    for (idx, line) in lines {
        let line = line.map_err(io_err(source))?;
        let lineno = idx + 1;
        match format {
            Format::RowJson => {
                if line.is_empty() {
                    continue;
                }
                let r: PairRecord =
                    serde_json::from_str(&line).map_err(|e| FormatError::Json { line: lineno, source: e })?;
                out.push(r);
            }
            Format::Tsv => {
                let cols: Vec<&str> = line.split('\t').collect();
                let [id, subset, premise, hypothesis, label, kind, pattern] = cols[..] else {
                    return Err(row_err(lineno, format!("expected 7 columns, found {}", cols.len())));
                };
                let label = Label::parse(label).ok_or_else(|| row_err(lineno, format!("unknown label `{label}`")))?;
                let hyp_kind =
                    HypKind::parse(kind).ok_or_else(|| row_err(lineno, format!("unknown hypothesis kind `{kind}`")))?;
                out.push(PairRecord {
                    id: id.into(),
                    subset: subset.into(),
                    premise: premise.into(),
                    hypothesis: hypothesis.into(),
                    label,
                    hyp_kind,
                    pattern: pattern.into(),
                    meta: None,
                });
            }
        }
    }
    Ok(out)
}

pub fn read_pairs_file(path: &Path, format: Option<Format>) -> Result<Vec<PairRecord>, FormatError> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    read_pairs(BufReader::new(file), format.unwrap_or_else(|| Format::from_path(path)))
}

pub fn write_pairs_file(path: &Path, records: &[PairRecord], format: Format) -> Result<usize, FormatError> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    write_pairs(records, format, BufWriter::new(file))
}

/// Splits a tab-separated line, ignoring blank lines and an optional header
/// whose first column equals `header_first`.
fn table_rows<R: BufRead>(
    input: R,
    header_first: &str,
    columns: usize,
) -> Result<Vec<(usize, Vec<String>)>, FormatError> {
    let source = Path::new("<input>");
    let mut rows = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(io_err(source))?;
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let cols: Vec<String> = line.split('\t').map(str::to_string).collect();
        if idx == 0 && cols[0] == header_first {
            continue;
        }
        if cols.len() != columns {
            return Err(row_err(lineno, format!("expected {columns} columns, found {}", cols.len())));
        }
        rows.push((lineno, cols));
    }
    Ok(rows)
}

/// Reads `id<TAB>run_index<TAB>predicted_label` rows. Three-class labels are
/// collapsed to two classes.
pub fn read_predictions<R: BufRead>(input: R, runs: usize) -> Result<PredictionSet, FormatError> {
    let mut set = PredictionSet::new(runs).map_err(|e| FormatError::Prediction { line: 0, source: e })?;
    for (line, cols) in table_rows(input, "id", 3)? {
        let run: usize = cols[1].parse().map_err(|_| row_err(line, format!("bad run index `{}`", cols[1])))?;
        let label = Label::parse(&cols[2]).ok_or_else(|| row_err(line, format!("unknown label `{}`", cols[2])))?;
        set.insert(&cols[0], run, label).map_err(|e| FormatError::Prediction { line, source: e })?;
    }
    set.check_complete().map_err(|e| FormatError::Prediction { line: 0, source: e })?;
    Ok(set)
}

/// Reads `sentence_id<TAB>score` rows.
pub fn read_scores<R: BufRead>(input: R) -> Result<BTreeMap<String, f64>, FormatError> {
    let mut out = BTreeMap::new();
    for (line, mut cols) in table_rows(input, "sentence_id", 2)? {
        let score: f64 = cols[1].parse().map_err(|_| row_err(line, format!("bad score `{}`", cols[1])))?;
        if out.insert(cols.swap_remove(0), score).is_some() {
            return Err(row_err(line, "duplicate sentence id"));
        }
    }
    Ok(out)
}

/// Reads a headerless `premise<TAB>hypothesis<TAB>label` training file.
pub fn read_nli_rows<R: BufRead>(input: R) -> Result<Vec<NliRow>, FormatError> {
    let source = Path::new("<input>");
    let mut rows = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(io_err(source))?;
        let lineno = idx + 1;
        let cols: Vec<&str> = line.split('\t').collect();
        let [premise, hypothesis, label] = cols[..] else {
            return Err(row_err(lineno, format!("expected 3 columns, found {}", cols.len())));
        };
        if !NLI_LABELS.contains(&label) {
            return Err(row_err(lineno, format!("unknown label `{label}`")));
        }
        rows.push(NliRow { premise: premise.into(), hypothesis: hypothesis.into(), label: label.into() });
    }
    Ok(rows)
}

pub fn write_nli_rows<W: Write>(rows: &[NliRow], out: W) -> Result<(), FormatError> {
    let dest = Path::new("<output>");
    let mut w = BufWriter::new(out);
    for r in rows {
        for (field, value) in [("premise", &r.premise), ("hypothesis", &r.hypothesis)] {
            check_text(&r.premise, field, value)?;
        }
        writeln!(w, "{}\t{}\t{}", r.premise, r.hypothesis, r.label).map_err(io_err(dest))?;
    }
    w.flush().map_err(io_err(dest))
}

pub fn load_lexicon_file(path: &Path) -> Result<Lexicon, FormatError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    load_lexicon(&text).map_err(|source| FormatError::Lexicon { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use wogli_core::{GenerationConfig, SetName};

    fn sample() -> Vec<PairRecord> {
        let lex = Lexicon::bundled();
        wogli_core::generator::generate_set(SetName::Wogli, &lex, &GenerationConfig::new(2, 2)).unwrap().records()
    }

    #[test]
    fn row_json_roundtrip_keeps_metadata() {
        let records = sample();
        let mut buf = Vec::new();
        let bytes = write_pairs(&records, Format::RowJson, &mut buf).unwrap();
        assert_eq!(bytes, buf.len());
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), records.len());
        assert_eq!(read_pairs(&buf[..], Format::RowJson).unwrap(), records);
    }

    #[test]
    fn tsv_drops_metadata_only() {
        let records = sample();
        let mut buf = Vec::new();
        write_pairs(&records, Format::Tsv, &mut buf).unwrap();
        let back = read_pairs(&buf[..], Format::Tsv).unwrap();
        let stripped: Vec<_> = records.into_iter().map(|r| PairRecord { meta: None, ..r }).collect();
        assert_eq!(back, stripped);
    }

    #[test]
    fn empty_outputs() {
        let mut buf = Vec::new();
        write_pairs(&[], Format::Tsv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{PAIR_TSV_HEADER}\n"));
        let mut buf = Vec::new();
        assert_eq!(write_pairs(&[], Format::RowJson, &mut buf).unwrap(), 0);
        assert!(read_pairs(&b""[..], Format::Tsv).unwrap().is_empty());
    }

    #[test]
    fn tabs_rejected() {
        let mut r = sample().remove(0);
        r.hypothesis.push('\t');
        let err = write_pairs(&[r], Format::RowJson, Vec::new()).unwrap_err();
        assert!(matches!(err, FormatError::ForbiddenCharacter { field: "hypothesis", .. }));
    }

    #[test]
    fn predictions_collapse() {
        let text = "id\trun_index\tpredicted_label\np1\t0\tcontradiction\np2\t0\tentailment\n";
        let p = read_predictions(text.as_bytes(), 1).unwrap();
        assert_eq!(p.get("p1"), Some(vec![Label::NotEntailed]));
        assert_eq!(p.get("p2"), Some(vec![Label::Entailed]));
        assert!(read_predictions(&b""[..], 1).unwrap().is_empty());
        let err = read_predictions("p1\t1\tneutral\n".as_bytes(), 1).unwrap_err();
        assert!(matches!(err, FormatError::Prediction { line: 1, .. }));
        assert!(matches!(read_predictions("p1\t0\n".as_bytes(), 1), Err(FormatError::Row { line: 1, .. })));
    }

    #[test]
    fn nli_rows() {
        let rows = read_nli_rows("a\tb\tneutral\nc\td\tentailment\n".as_bytes()).unwrap();
        assert_eq!(rows.len(), 2);
        let mut buf = Vec::new();
        write_nli_rows(&rows, &mut buf).unwrap();
        assert_eq!(read_nli_rows(&buf[..]).unwrap(), rows);
        let err = read_nli_rows("a\tb\tneutral\nc\td\tyes\n".as_bytes()).unwrap_err();
        assert!(matches!(err, FormatError::Row { line: 2, .. }));
    }

    #[test]
    fn scores() {
        let s = read_scores("sentence_id\tscore\nx\t-1.5\n".as_bytes()).unwrap();
        assert_eq!(s["x"], -1.5);
        assert!(read_scores("x\tabc\n".as_bytes()).is_err());
    }
}

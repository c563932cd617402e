use proptest::prelude::*;

use wogli::io::{read_pairs, read_predictions, read_scores, write_pairs, Format, FormatError};
use wogli_core::generator::generate_set;
use wogli_core::{GenerationConfig, HypKind, Label, Lexicon, PairRecord, SetName};

fn generated(set: SetName, seed: u64) -> Vec<PairRecord> {
    generate_set(set, &Lexicon::bundled(), &GenerationConfig::new(seed, 2)).unwrap().records()
}

fn roundtrip(records: &[PairRecord], format: Format) -> Vec<PairRecord> {
    let mut buf = Vec::new();
    write_pairs(records, format, &mut buf).unwrap();
    read_pairs(buf.as_slice(), format).unwrap()
}

fn text() -> impl Strategy<Value = String> {
    "[A-Za-zÄÖÜäöüß ,.;:\"'\\\\/{}]{1,40}"
}

fn record() -> impl Strategy<Value = PairRecord> {
    (text(), text(), text(), any::<bool>(), 0usize..5, "[a-z_]{3,20}").prop_map(|(id, premise, hypothesis, e, kind, pattern)| {
        PairRecord {
            id,
            subset: "wogli".into(),
            premise,
            hypothesis,
            label: if e { Label::Entailed } else { Label::NotEntailed },
            hyp_kind: HypKind::ALL[kind],
            pattern,
            meta: None,
        }
    })
}

proptest! {
    #[test]
    fn arbitrary_records_survive_both_formats(records in proptest::collection::vec(record(), 0..20)) {
        prop_assert_eq!(roundtrip(&records, Format::RowJson), records.clone());
        prop_assert_eq!(roundtrip(&records, Format::Tsv), records);
    }

    #[test]
    fn generated_records_keep_metadata_in_row_json(seed in any::<u64>()) {
        for set in SetName::ALL {
            let records = generated(set, seed);
            prop_assert_eq!(roundtrip(&records, Format::RowJson), records);
        }
    }

    #[test]
    fn tsv_drops_only_metadata(seed in any::<u64>()) {
        let records = generated(SetName::Ditransitive, seed);
        let stripped: Vec<_> = records.iter().cloned().map(|mut r| { r.meta = None; r }).collect();
        prop_assert_eq!(roundtrip(&records, Format::Tsv), stripped);
    }
}

#[test]
fn tabs_in_text_are_rejected() {
    let mut r = generated(SetName::Wogli, 1).remove(0);
    r.premise.push('\t');
    let err = write_pairs(&[r], Format::Tsv, Vec::new()).unwrap_err();
    assert!(matches!(err, FormatError::ForbiddenCharacter { .. }), "{err}");
}

#[test]
fn malformed_rows_report_their_line() {
    let input = "id\tsubset\tpremise\thypothesis\tlabel\thyp_kind\tpattern\na\tb\tc\n";
    match read_pairs(input.as_bytes(), Format::Tsv).unwrap_err() {
        FormatError::Row { line, .. } => assert_eq!(line, 2),
        other => panic!("{other}"),
    }
    let json = "{\"id\": 3}\n";
    assert!(matches!(read_pairs(json.as_bytes(), Format::RowJson).unwrap_err(), FormatError::Json { line: 1, .. }));
}

#[test]
fn predictions_must_cover_every_run() {
    let complete = "id\trun\tlabel\nx\t0\tentailment\nx\t1\tneutral\n";
    let preds = read_predictions(complete.as_bytes(), 2).unwrap();
    assert_eq!(preds.get("x").unwrap(), vec![Label::Entailed, Label::NotEntailed]);
    assert!(read_predictions("x\t0\tentailment\n".as_bytes(), 2).is_err());
    assert!(read_predictions("x\t2\tentailment\n".as_bytes(), 2).is_err());
}

#[test]
fn scores_parse_with_and_without_header() {
    let with = read_scores("sentence_id\tpll\na\t-3.5\n".as_bytes()).unwrap();
    let without = read_scores("a\t-3.5\n".as_bytes()).unwrap();
    assert_eq!(with, without);
    assert_eq!(with["a"], -3.5);
    assert!(read_scores("a\tnan-ish\n".as_bytes()).is_err());
}

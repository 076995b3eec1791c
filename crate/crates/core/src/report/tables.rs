use csv::{Terminator, WriterBuilder};

use super::document::ResultDocument;

pub const MEASURES_HEADER: [&str; 10] = [
    "id",
    "tp",
    "fp",
    "fn",
    "tn",
    "tpr",
    "fpr",
    "confidence",
    "wracc_raw",
    "wracc_norm",
];

pub const COVERAGE_HEADER: [&str; 6] = ["example", "class", "rule", "degree", "channel", "color"];

fn writer() -> csv::Writer<Vec<u8>> {
    WriterBuilder::new()
        .delimiter(b',')
        .terminator(Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory csv writer");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

/// One row per rule: `id,tp,fp,fn,tn,tpr,fpr,confidence,wracc_raw,wracc_norm`.
pub fn measures_csv(doc: &ResultDocument) -> String {
    let mut w = writer();
    w.write_record(MEASURES_HEADER).unwrap();
    for r in &doc.rules {
        let c = &r.contingency;
        let m = &r.measures;
        w.write_record([
            r.id.to_string(),
            c.tp.to_string(),
            c.fp.to_string(),
            c.fn_.to_string(),
            c.tn.to_string(),
            m.tpr.to_string(),
            m.fpr.to_string(),
            m.confidence.to_string(),
            m.wracc_raw.to_string(),
            m.wracc_norm.to_string(),
        ])
        .unwrap();
    }
    finish(w)
}

/// One row per covered (example, rule) pair, in example order.
pub fn coverage_csv(doc: &ResultDocument) -> String {
    let mut w = writer();
    w.write_record(COVERAGE_HEADER).unwrap();
    for ex in &doc.coverage {
        for e in &ex.entries {
            w.write_record([
                ex.example.to_string(),
                ex.class.clone().unwrap_or_default(),
                e.rule.to_string(),
                e.degree.to_string(),
                e.channel.as_str().to_string(),
                e.color.clone(),
            ])
            .unwrap();
        }
    }
    finish(w)
}

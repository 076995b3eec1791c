use std::io::{Cursor, Read};
use std::path::PathBuf;

use sdrd_core::report::{measures_csv, write_report_zip, Channel, ZIP_ENTRIES};
use sdrd_core::{
    evaluate_session, export_json, export_report_zip, parse_dataset, parse_rules, pyramid_data, scatter_data,
    AlgorithmRegistry, Dataset, EvaluationResult, ReportOptions, ResultDocument,
};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn session(data: &str, rules: &str) -> EvaluationResult {
    let data: Dataset = parse_dataset(&fixture(data)).unwrap();
    let rules = parse_rules(&fixture(rules), &AlgorithmRegistry::default()).unwrap();
    evaluate_session(data, &rules).unwrap()
}

fn unzip(bytes: &[u8]) -> Vec<(String, Vec<u8>)> {
    let mut archive = zip::ZipArchive::new(Cursor::new(bytes)).unwrap();
    (0..archive.len())
        .map(|i| {
            let mut f = archive.by_index(i).unwrap();
            let mut buf = Vec::new();
            f.read_to_end(&mut buf).unwrap();
            (f.name().to_string(), buf)
        })
        .collect()
}

#[test]
fn json_export_of_sample_session() {
    let result = session("iris_sample.dat", "nmeef_iris.txt");
    let bytes = export_json(&result);
    let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(value["rules"][0]["consequent"], "Iris-setosa");
    assert_eq!(value["algorithm"]["name"], "nmeef");
    assert_eq!(value["algorithm"]["num_labels"], 3);
    assert_eq!(value["rules"][0]["contingency"]["T"], 2);
    assert_eq!(value["rules"][0]["covered"][0]["color"], "blue");
    assert_eq!(value["rules"][0]["covered"][0]["degree"], 0.864406779661);
    assert_eq!(bytes, export_json(&result));
}

#[test]
fn json_keys_are_sorted() {
    let result = session("iris.dat", "apriorisd_iris.txt");
    let text = String::from_utf8(export_json(&result)).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && l.contains(':'))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(
        top,
        [
            "algorithm",
            "coverage",
            "dataset",
            "format",
            "plots",
            "rules",
            "version"
        ]
    );
}

#[test]
fn empty_rule_list_exports_empty_array() {
    let result = session("iris.dat", "apriorisd_iris.txt");
    let mut doc = ResultDocument::from_result(&result);
    doc.rules.clear();
    doc.plots.scatter.points.clear();
    doc.plots.pyramid.rows.clear();
    for ex in &mut doc.coverage {
        ex.entries.clear();
    }
    let value: serde_json::Value = serde_json::from_slice(&doc.to_json_bytes()).unwrap();
    assert_eq!(value["rules"], serde_json::json!([]));

    let files = unzip(&write_report_zip(&doc, &ReportOptions::default()).unwrap());
    assert_eq!(files.len(), 6);
    let measures = String::from_utf8(files[1].1.clone()).unwrap();
    assert_eq!(measures, "id,tp,fp,fn,tn,tpr,fpr,confidence,wracc_raw,wracc_norm\n");
    let html = String::from_utf8(files[0].1.clone()).unwrap();
    assert!(html.contains("<table class=\"rules\">"));
    assert!(!html.contains("<section class=\"rule\""));
}

#[test]
fn zip_has_exactly_the_declared_entries() {
    let result = session("iris.dat", "nmeef_iris.txt");
    let bytes = export_report_zip(&result, &ReportOptions::default()).unwrap();
    let names: Vec<String> = unzip(&bytes).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, ZIP_ENTRIES);
    assert_eq!(bytes, export_report_zip(&result, &ReportOptions::default()).unwrap());

    let stored = export_report_zip(
        &result,
        &ReportOptions {
            title: Some("Stored".into()),
            compress: false,
        },
    )
    .unwrap();
    assert_eq!(unzip(&stored).len(), 6);
}

#[test]
fn measures_csv_rows() {
    let result = session("iris_sample.dat", "nmeef_iris.txt");
    let files = unzip(&export_report_zip(&result, &ReportOptions::default()).unwrap());
    let csv = String::from_utf8(files[1].1.clone()).unwrap();
    assert_eq!(
        csv,
        "id,tp,fp,fn,tn,tpr,fpr,confidence,wracc_raw,wracc_norm\n0,2,0,0,0,1,0,1,0,0.5\n"
    );

    let iris = session("iris.dat", "nmeef_iris.txt");
    let csv = measures_csv(&ResultDocument::from_result(&iris));
    assert_eq!(
        csv.lines().nth(1).unwrap(),
        "0,50,11,0,89,1,0.11,0.819672131148,0.197777777778,0.945"
    );
}

#[test]
fn regenerating_csv_from_json_is_byte_identical() {
    for (data, rules) in [
        ("iris.dat", "nmeef_iris.txt"),
        ("iris.dat", "apriorisd_iris.txt"),
        ("iris_sample.dat", "nmeef_iris.txt"),
    ] {
        let result = session(data, rules);
        let files = unzip(&export_report_zip(&result, &ReportOptions::default()).unwrap());
        let json = &files.iter().find(|(n, _)| n == "result.json").unwrap().1;
        let csv = &files.iter().find(|(n, _)| n == "measures.csv").unwrap().1;
        let doc = ResultDocument::from_json_bytes(json).unwrap();
        assert_eq!(measures_csv(&doc).as_bytes(), csv.as_slice());
        assert_eq!(&doc.to_json_bytes(), json);
    }
}

#[test]
fn coverage_csv_uses_colour_channels() {
    let result = session("iris.dat", "apriorisd_iris.txt");
    let files = unzip(&export_report_zip(&result, &ReportOptions::default()).unwrap());
    let csv = String::from_utf8(files[2].1.clone()).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("example,class,rule,degree,channel,color"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50 + 39 + 34 + 23);
    for row in rows {
        assert!(
            row.ends_with(",correct,blue") || row.ends_with(",incorrect,orange"),
            "{row}"
        );
    }
}

#[test]
fn plot_data_is_total_and_ordered() {
    let result = session("iris.dat", "apriorisd_iris.txt");
    let scatter = scatter_data(&result);
    let pyramid = pyramid_data(&result);
    assert_eq!(scatter.points.len(), 3);
    assert_eq!(pyramid.rows.iter().map(|r| r.rule_id).collect::<Vec<_>>(), [0, 1, 2]);
    for p in &scatter.points {
        assert!((0.0..=100.0).contains(&p.x) && (0.0..=100.0).contains(&p.y));
    }
    assert_eq!((scatter.points[0].x, scatter.points[0].y), (0.0, 100.0));
    assert!(!scatter.points[0].low_quality);
}

#[test]
fn html_report_shows_degrees_only_for_fuzzy_sessions() {
    let fuzzy = session("iris.dat", "nmeef_iris.txt");
    let files = unzip(&export_report_zip(&fuzzy, &ReportOptions::default()).unwrap());
    let html = String::from_utf8(files[0].1.clone()).unwrap();
    assert!(html.contains("<th>Degree</th>"));
    assert!(html.contains("Rule 0 [0.864406779661]"));
    assert!(html.contains("<td class=\"num cell-correct\">50</td>"));
    assert!(html.contains("<td class=\"num cell-incorrect\">11</td>"));
    assert!(html.contains("low-quality-region"));

    let crisp = session("iris.dat", "apriorisd_iris.txt");
    let files = unzip(&export_report_zip(&crisp, &ReportOptions::default()).unwrap());
    let html = String::from_utf8(files[0].1.clone()).unwrap();
    assert!(!html.contains("<th>Degree</th>"));
    assert!(!html.contains("Rule 0 ["));
    assert_eq!(html.matches("<section class=\"rule\"").count(), 3);
}

#[test]
fn channel_colours() {
    assert_eq!(Channel::Correct.color(), "blue");
    assert_eq!(Channel::Incorrect.color(), "orange");
}

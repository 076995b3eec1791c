use std::fmt::Write;

use super::document::{Channel, ResultDocument, RuleDoc};
use super::escape;
use super::plot::ScatterPoint;
use super::svg::{pyramid_svg, rule_scatter_svg, scatter_svg, BLUE, ORANGE};

const STYLE: &str = r#"
body { font-family: sans-serif; margin: 2em; color: #222; }
h1, h2, h3 { font-weight: 600; }
table { border-collapse: collapse; margin: 0.5em 0 1.5em; }
th, td { border: 1px solid #bbb; padding: 0.25em 0.6em; text-align: left; }
th { background: #f0f0f0; }
td.num { text-align: right; font-variant-numeric: tabular-nums; }
.correct { color: BLUE_; }
.incorrect { color: ORANGE_; }
td.cell-correct { background: BLUE_; color: white; }
td.cell-incorrect { background: ORANGE_; color: white; }
.chip { display: inline-block; padding: 0 0.4em; margin: 0 0.2em; border-radius: 0.6em; color: white; }
.chip.correct { background: BLUE_; }
.chip.incorrect { background: ORANGE_; }
.plots { display: flex; gap: 2em; flex-wrap: wrap; align-items: flex-start; }
section.rule { page-break-before: always; break-before: page; }
@media print { a { color: inherit; text-decoration: none; } body { margin: 0.5cm; } }
"#;

fn num(x: f64) -> String {
    x.to_string()
}

fn degree_suffix(fuzzy: bool, degree: f64) -> String {
    if fuzzy {
        format!(" [{degree}]")
    } else {
        String::new()
    }
}

fn rule_row(s: &mut String, r: &RuleDoc) {
    let m = &r.measures;
    writeln!(
        s,
        r##"<tr><td><a href="#rule-{}">{}</a></td><td>{}</td><td>{}</td><td class="num">{}</td><td class="num">{}</td><td class="num">{}</td><td class="num">{}</td><td class="num">{}</td></tr>"##,
        r.id,
        escape(&r.name),
        escape(&r.antecedent.join(" AND ")),
        escape(&r.consequent),
        num(m.confidence),
        num(m.wracc_norm),
        num(m.wracc_raw),
        num(m.tpr),
        num(m.fpr),
    )
    .unwrap();
}

fn overview(s: &mut String, doc: &ResultDocument) {
    let d = &doc.dataset;
    s.push_str("<section id=\"overview\">\n<h2>Overview</h2>\n<table class=\"summary\">\n");
    writeln!(s, "<tr><th>Relation</th><td>{}</td></tr>", escape(&d.relation)).unwrap();
    writeln!(s, "<tr><th>Examples</th><td class=\"num\">{}</td></tr>", d.rows).unwrap();
    writeln!(s, "<tr><th>Target</th><td>{}</td></tr>", escape(&d.target)).unwrap();
    let inputs: Vec<String> = d
        .attributes
        .iter()
        .filter(|a| a.role == "input")
        .map(|a| format!("{} ({})", escape(&a.name), a.kind))
        .collect();
    writeln!(s, "<tr><th>Inputs</th><td>{}</td></tr>", inputs.join(", ")).unwrap();
    writeln!(
        s,
        "<tr><th>Algorithm</th><td>{} ({}{})</td></tr>",
        escape(&doc.algorithm.name),
        doc.algorithm.dialect,
        doc.algorithm
            .num_labels
            .map(|n| format!(", {n} labels"))
            .unwrap_or_default()
    )
    .unwrap();
    writeln!(s, "<tr><th>Rules</th><td class=\"num\">{}</td></tr>", doc.rules.len()).unwrap();
    s.push_str(
        "</table>\n<h3>Class distribution</h3>\n<table class=\"classes\">\n<tr><th>Class</th><th>Examples</th></tr>\n",
    );
    for c in &d.classes {
        writeln!(
            s,
            "<tr><td>{}</td><td class=\"num\">{}</td></tr>",
            escape(&c.name),
            c.count
        )
        .unwrap();
    }
    s.push_str("</table>\n<h3>Rules</h3>\n<table class=\"rules\">\n<tr><th>Rule</th><th>Antecedent</th><th>Consequent</th><th>Conf</th><th>WRAcc (norm.)</th><th>WRAcc</th><th>TPr</th><th>FPr</th></tr>\n");
    for r in &doc.rules {
        rule_row(s, r);
    }
    s.push_str("</table>\n<div class=\"plots\">\n");
    s.push_str(&scatter_svg(&doc.plots.scatter));
    s.push_str(&pyramid_svg(&doc.plots.pyramid));
    s.push_str("</div>\n");

    let fuzzy = doc.is_fuzzy();
    s.push_str("<h3>Coverage by example</h3>\n<table class=\"coverage\">\n<tr><th>Example</th><th>Values</th><th class=\"correct\">Correctly covered by</th><th class=\"incorrect\">Wrongly covered by</th></tr>\n");
    for ex in &doc.coverage {
        let chips = |channel: Channel| {
            ex.entries
                .iter()
                .filter(|e| e.channel == channel)
                .map(|e| {
                    format!(
                        "<span class=\"chip {}\">Rule {}{}</span>",
                        channel.as_str(),
                        e.rule,
                        degree_suffix(fuzzy, e.degree)
                    )
                })
                .collect::<Vec<_>>()
                .join("")
        };
        writeln!(
            s,
            "<tr><td class=\"num\">{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
            ex.example,
            escape(&ex.values.join(", ")),
            chips(Channel::Correct),
            chips(Channel::Incorrect)
        )
        .unwrap();
    }
    s.push_str("</table>\n</section>\n");
}

fn rule_section(s: &mut String, doc: &ResultDocument, r: &RuleDoc) {
    let c = &r.contingency;
    let m = &r.measures;
    writeln!(s, "<section class=\"rule\" id=\"rule-{}\">", r.id).unwrap();
    writeln!(s, "<h2>{}</h2>", escape(&r.name)).unwrap();
    writeln!(
        s,
        "<p class=\"rule-text\">IF {} THEN {}</p>",
        escape(&r.antecedent.join(" AND ")),
        escape(&r.consequent)
    )
    .unwrap();
    s.push_str("<h3>Contingency table</h3>\n<table class=\"contingency\">\n");
    s.push_str(
        "<tr><th></th><th>Positives (class examples)</th><th>Negatives (non-class examples)</th><th></th></tr>\n",
    );
    writeln!(
        s,
        "<tr><th>Covered</th><td class=\"num cell-correct\">{}</td><td class=\"num cell-incorrect\">{}</td><td class=\"num\">{}</td></tr>",
        c.tp,
        c.fp,
        c.tp + c.fp
    )
    .unwrap();
    writeln!(
        s,
        "<tr><th>Not covered</th><td class=\"num\">{}</td><td class=\"num\">{}</td><td class=\"num\">{}</td></tr>",
        c.fn_,
        c.tn,
        c.fn_ + c.tn
    )
    .unwrap();
    writeln!(
        s,
        "<tr><th></th><td class=\"num\">{}</td><td class=\"num\">{}</td><td class=\"num\">{}</td></tr>",
        c.positives, c.negatives, c.total
    )
    .unwrap();
    s.push_str("</table>\n<h3>Quality measures</h3>\n<table class=\"measures\">\n<tr><th>Conf</th><th>WRAcc (norm.)</th><th>WRAcc</th><th>TPr</th><th>FPr</th></tr>\n");
    writeln!(
        s,
        "<tr><td class=\"num\">{}</td><td class=\"num\">{}</td><td class=\"num\">{}</td><td class=\"num\">{}</td><td class=\"num\">{}</td></tr>",
        num(m.confidence),
        num(m.wracc_norm),
        num(m.wracc_raw),
        num(m.tpr),
        num(m.fpr)
    )
    .unwrap();
    s.push_str("</table>\n");

    let point = doc
        .plots
        .scatter
        .points
        .iter()
        .find(|p| p.rule_id == r.id)
        .cloned()
        .unwrap_or(ScatterPoint {
            rule_id: r.id,
            x: m.fpr * 100.0,
            y: m.tpr * 100.0,
            low_quality: m.tpr < m.fpr,
        });
    s.push_str(&rule_scatter_svg(&point));

    let fuzzy = doc.is_fuzzy();
    s.push_str(
        "<h3>Covered examples</h3>\n<table class=\"covered\">\n<tr><th>Example</th><th>Values</th><th>Class</th>",
    );
    if fuzzy {
        s.push_str("<th>Degree</th>");
    }
    s.push_str("<th>Coverage</th></tr>\n");
    for e in &r.covered {
        let ex = doc.coverage.get(e.example).filter(|x| x.example == e.example);
        let values = ex.map(|x| x.values.join(", ")).unwrap_or_default();
        let class = ex.and_then(|x| x.class.clone()).unwrap_or_else(|| "?".into());
        write!(
            s,
            "<tr class=\"{}\"><td class=\"num\">{}</td><td>{}</td><td>{}</td>",
            e.channel.as_str(),
            e.example,
            escape(&values),
            escape(&class)
        )
        .unwrap();
        if fuzzy {
            write!(s, "<td class=\"num\">{}</td>", num(e.degree)).unwrap();
        }
        writeln!(s, "<td>{}</td></tr>", e.channel.as_str()).unwrap();
    }
    s.push_str("</table>\n</section>\n");
}

/// Self-contained HTML document reproducing the overview and every per-rule
/// view. Printing it from a browser yields the PDF report.
pub fn report_html(doc: &ResultDocument, title: &str) -> String {
    let mut s = String::new();
    s.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    writeln!(s, "<title>{}</title>", escape(title)).unwrap();
    s.push_str("<style>");
    s.push_str(&STYLE.replace("BLUE_", BLUE).replace("ORANGE_", ORANGE));
    s.push_str("</style>\n</head>\n<body>\n");
    writeln!(s, "<h1>{}</h1>", escape(title)).unwrap();
    overview(&mut s, doc);
    for r in &doc.rules {
        rule_section(&mut s, doc, r);
    }
    s.push_str("</body>\n</html>\n");
    s
}

use std::collections::HashSet;

use super::{AlgorithmRegistry, Condition, ConditionTest, Dialect, Interval, ParseWarning, Rule, RuleError, RuleSet};
use crate::fuzzy::TriangularLabel;
use crate::scalar::{parse_finite, Scalar};

type Result<T> = std::result::Result<T, RuleError>;

fn bad_condition(line: usize, message: impl Into<String>) -> RuleError {
    RuleError::MalformedCondition {
        line,
        message: message.into(),
    }
}

fn bad_rule(line: usize, message: impl Into<String>) -> RuleError {
    RuleError::MalformedRule {
        line,
        message: message.into(),
    }
}

/// Case-insensitive prefix strip on ASCII keywords.
fn strip_keyword<'a>(line: &'a str, keyword: &str) -> Option<&'a str> {
    let head = line.get(..keyword.len())?;
    head.eq_ignore_ascii_case(keyword).then(|| &line[keyword.len()..])
}

struct RuleBuilder<T> {
    id: usize,
    line: usize,
    antecedent: Vec<Condition<T>>,
    consequent: Option<String>,
}

impl<T: Scalar> RuleBuilder<T> {
    fn finish(self) -> Result<Rule<T>> {
        if self.antecedent.is_empty() {
            return Err(bad_rule(
                self.line,
                format!("rule {} has no antecedent condition", self.id),
            ));
        }
        let consequent = self
            .consequent
            .ok_or_else(|| bad_rule(self.line, format!("rule {} has no consequent", self.id)))?;
        Ok(Rule {
            id: self.id,
            antecedent: self.antecedent,
            consequent,
            display_name: format!("Rule {}", self.id),
            line: self.line,
        })
    }
}

fn parse_triple<T: Scalar>(text: &str, index: usize, line: usize) -> Result<TriangularLabel<T>> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad_condition(line, "expected membership triple '(a b c)' after the label"))?;
    let parts: Vec<&str> = inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(bad_condition(line, "membership triple needs exactly three numbers"));
    };
    let num = |s: &str| parse_finite::<T>(s).ok_or_else(|| bad_condition(line, format!("invalid number '{s}'")));
    let (a, b, c) = (num(a)?, num(b)?, num(c)?);
    TriangularLabel::new(index, a, b, c)
        .ok_or_else(|| bad_condition(line, "triangle vertices must satisfy a <= b <= c and a < c"))
}

fn parse_interval<T: Scalar>(text: &str, line: usize) -> Result<Interval<T>> {
    let text = text.trim();
    let bad = || bad_condition(line, format!("expected interval '[lo, hi]', got '{text}'"));
    let lo_closed = match text.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(bad()),
    };
    let hi_closed = match text.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(bad()),
    };
    if text.len() < 2 {
        return Err(bad());
    }
    let inner = &text[1..text.len() - 1];
    let parts: Vec<&str> = inner.split(',').collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(bad());
    };
    let lo = parse_finite::<T>(lo).ok_or_else(bad)?;
    let hi = parse_finite::<T>(hi).ok_or_else(bad)?;
    if lo > hi {
        return Err(bad_condition(line, "interval lower bound exceeds upper bound"));
    }
    Ok(Interval {
        lo,
        hi,
        lo_closed,
        hi_closed,
    })
}

/// Splits `Label <k> <rest>` into the index and the rest. `None` when the
/// right-hand side is not a label reference.
fn split_label(rhs: &str) -> Option<(&str, &str)> {
    let rest = strip_keyword(rhs, "label")?;
    if !rest.starts_with(char::is_whitespace) {
        return None;
    }
    let rest = rest.trim_start();
    let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
    if end == 0 {
        return None;
    }
    Some((&rest[..end], &rest[end..]))
}

fn parse_condition<T: Scalar>(body: &str, line: usize) -> Result<Condition<T>> {
    let body = body.trim();
    let name_end = body.find(|c: char| c.is_whitespace() || c == '=').unwrap_or(body.len());
    if name_end == 0 {
        return Err(bad_condition(line, "missing attribute name after 'Variable'"));
    }
    let attribute_name = body[..name_end].to_string();
    let rest = body[name_end..].trim_start();

    let test = if let Some(rhs) = rest.strip_prefix('=') {
        let rhs = rhs.trim();
        if let Some((index, tail)) = split_label(rhs) {
            let index: usize = index
                .parse()
                .map_err(|_| bad_condition(line, format!("invalid label index '{index}'")))?;
            ConditionTest::FuzzyLabel(parse_triple(tail, index, line)?)
        } else if rhs.is_empty() {
            return Err(bad_condition(line, format!("missing value for '{attribute_name}'")));
        } else {
            ConditionTest::CategoricalEquals(rhs.to_string())
        }
    } else if let Some(rhs) = strip_keyword(rest, "in").filter(|r| r.starts_with([' ', '\t', '[', '('])) {
        ConditionTest::NumericInterval(parse_interval(rhs, line)?)
    } else {
        return Err(bad_condition(
            line,
            format!("expected '= <value>', '= Label k (a b c)' or 'in [lo, hi]' after '{attribute_name}'"),
        ));
    };

    Ok(Condition {
        attribute_name,
        test,
        line,
    })
}

fn parse_label_count(rest: &str, line: usize) -> Result<usize> {
    let value = rest.trim().trim_start_matches(':').trim();
    let n: usize = value.parse().map_err(|_| RuleError::InvalidLabelCount {
        line,
        message: format!("'{value}' is not a positive integer"),
    })?;
    if n < 2 {
        return Err(RuleError::InvalidLabelCount {
            line,
            message: format!("at least 2 labels are required, got {n}"),
        });
    }
    Ok(n)
}

/// Parses a rule file. The dialect comes from `registry`; an algorithm
/// missing from it is read as fuzzy iff a `Number of labels:` line exists.
pub fn parse_rules<T: Scalar>(text: &str, registry: &AlgorithmRegistry) -> Result<RuleSet<T>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    let algorithm_name = loop {
        match lines.next() {
            Some((_, "")) => continue,
            Some((n, line)) => {
                let name = strip_keyword(line, "@algorithm")
                    .filter(|r| r.starts_with(char::is_whitespace))
                    .map(str::trim)
                    .filter(|r| !r.is_empty())
                    .ok_or(RuleError::MissingAlgorithmHeader { line: n })?;
                break name.to_string();
            }
            None => return Err(RuleError::MissingAlgorithmHeader { line: 1 }),
        }
    };

    let mut num_labels: Option<(usize, usize)> = None;
    let mut rules: Vec<Rule<T>> = Vec::new();
    let mut current: Option<RuleBuilder<T>> = None;
    let mut warnings = Vec::new();
    let mut seen_ids = HashSet::new();

    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = strip_keyword(line, "generated rule") {
            if let Some(done) = current.take() {
                rules.push(done.finish()?);
            }
            let id_text = rest.trim().trim_end_matches(':').trim();
            let id: usize = id_text
                .parse()
                .map_err(|_| bad_rule(n, format!("invalid rule number '{id_text}'")))?;
            if !seen_ids.insert(id) {
                return Err(bad_rule(n, format!("duplicate rule number {id}")));
            }
            current = Some(RuleBuilder {
                id,
                line: n,
                antecedent: Vec::new(),
                consequent: None,
            });
            continue;
        }
        if let Some(rest) = strip_keyword(line, "number of labels") {
            let count = parse_label_count(rest, n)?;
            match num_labels {
                Some((_, prev)) if prev != count => {
                    return Err(RuleError::InvalidLabelCount {
                        line: n,
                        message: format!("conflicting label counts {prev} and {count}"),
                    })
                }
                _ => num_labels = Some((n, count)),
            }
            continue;
        }

        let Some(rule) = current.as_mut() else {
            warnings.push(ParseWarning {
                line: n,
                text: line.to_string(),
            });
            continue;
        };

        let antecedent_marker = strip_keyword(line, "antecedent")
            .map(|r| r.trim().trim_start_matches(':').trim().is_empty())
            .unwrap_or(false);
        if antecedent_marker {
            continue;
        }
        if let Some(body) = strip_keyword(line, "variable").filter(|r| r.starts_with(char::is_whitespace)) {
            let cond = parse_condition::<T>(body, n)?;
            if rule.antecedent.iter().any(|c| c.attribute_name == cond.attribute_name) {
                return Err(bad_condition(
                    n,
                    format!("attribute '{}' tested twice in rule {}", cond.attribute_name, rule.id),
                ));
            }
            rule.antecedent.push(cond);
            continue;
        }
        let consequent = strip_keyword(line, "consecuent").or_else(|| strip_keyword(line, "consequent"));
        if let Some(rest) = consequent.and_then(|r| r.trim_start().strip_prefix(':')) {
            let value = rest.trim();
            if value.is_empty() {
                return Err(bad_rule(n, "empty consequent"));
            }
            if rule.consequent.is_some() {
                return Err(bad_rule(n, format!("rule {} has two consequents", rule.id)));
            }
            rule.consequent = Some(value.to_string());
            continue;
        }
        warnings.push(ParseWarning {
            line: n,
            text: line.to_string(),
        });
    }
    if let Some(done) = current.take() {
        rules.push(done.finish()?);
    }
    if rules.is_empty() {
        return Err(RuleError::EmptyRuleSet);
    }

    let dialect = match (registry.lookup(&algorithm_name), num_labels) {
        (Some(d), _) => d,
        (None, Some(_)) => Dialect::Fuzzy,
        (None, None) => {
            return Err(RuleError::UnknownDialect {
                algorithm: algorithm_name,
            })
        }
    };

    let num_labels = match dialect {
        Dialect::Fuzzy => {
            let Some((_, count)) = num_labels else {
                return Err(RuleError::MissingLabelCount {
                    algorithm: algorithm_name,
                });
            };
            for cond in rules.iter().flat_map(|r| &r.antecedent) {
                if let ConditionTest::FuzzyLabel(l) = &cond.test {
                    if l.label_index >= count {
                        return Err(bad_condition(
                            cond.line,
                            format!("label {} out of range for {count} labels", l.label_index),
                        ));
                    }
                }
            }
            Some(count)
        }
        Dialect::Crisp => {
            if let Some(cond) = rules
                .iter()
                .flat_map(|r| &r.antecedent)
                .find(|c| matches!(c.test, ConditionTest::FuzzyLabel(_)))
            {
                return Err(bad_condition(cond.line, "fuzzy label in a crisp rule file"));
            }
            None
        }
    };

    Ok(RuleSet {
        algorithm_name,
        dialect,
        num_labels,
        rules,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NMEEF_SAMPLE: &str = "@algorithm nmeef
Number of labels: 3
GENERATED RULE 0
    Antecedent
        Variable petalLength = Label 0 \t (-1.95 1.0 3.95)
    Consecuent: Iris-setosa
";

    fn parse(text: &str) -> Result<RuleSet<f64>> {
        parse_rules(text, &AlgorithmRegistry::default())
    }

    #[test]
    fn parses_fuzzy_sample() {
        let rs = parse(NMEEF_SAMPLE).unwrap();
        assert_eq!(rs.algorithm_name, "nmeef");
        assert_eq!(rs.dialect, Dialect::Fuzzy);
        assert_eq!(rs.num_labels, Some(3));
        assert_eq!(rs.rules.len(), 1);
        let rule = &rs.rules[0];
        assert_eq!(rule.id, 0);
        assert_eq!(rule.consequent, "Iris-setosa");
        assert_eq!(rule.display_name, "Rule 0");
        assert_eq!(rule.line, 3);
        assert_eq!(
            rule.antecedent,
            vec![Condition {
                attribute_name: "petalLength".into(),
                test: ConditionTest::FuzzyLabel(TriangularLabel::new(0, -1.95, 1.0, 3.95).unwrap()),
                line: 5,
            }]
        );
        assert!(rs.warnings.is_empty());
    }

    #[test]
    fn parses_crisp_rules() {
        let text = "@algorithm apriorisd
GENERATED RULE 0
    Antecedent
        Variable class' = Iris-setosa
        Variable petalWidth in [0.1, 0.6)
    Consequent: Iris-setosa
GENERATED RULE 7
        Variable sepalLength in (5, 6]
    Consequent: Iris-versicolor
";
        let rs = parse(text).unwrap();
        assert_eq!(rs.dialect, Dialect::Crisp);
        assert_eq!(rs.num_labels, None);
        assert_eq!(rs.rules.len(), 2);
        assert_eq!(rs.rules[0].antecedent[0].attribute_name, "class'");
        assert_eq!(
            rs.rules[0].antecedent[0].test,
            ConditionTest::CategoricalEquals("Iris-setosa".into())
        );
        assert_eq!(
            rs.rules[0].antecedent[1].test,
            ConditionTest::NumericInterval(Interval {
                lo: 0.1,
                hi: 0.6,
                lo_closed: true,
                hi_closed: false
            })
        );
        assert_eq!(rs.rules[1].id, 7);
        assert_eq!(rs.rules[1].to_string(), "IF sepalLength in (5, 6] THEN Iris-versicolor");
    }

    #[test]
    fn empty_rule_set() {
        let err = parse("@algorithm nmeef\nNumber of labels: 3\n").unwrap_err();
        assert_eq!(err, RuleError::EmptyRuleSet);
    }

    #[test]
    fn missing_header() {
        let err = parse("GENERATED RULE 0\n").unwrap_err();
        assert_eq!(err, RuleError::MissingAlgorithmHeader { line: 1 });
        let err = parse("\n\n@algorithm\n").unwrap_err();
        assert_eq!(err, RuleError::MissingAlgorithmHeader { line: 3 });
        assert_eq!(parse("").unwrap_err().kind(), "MissingAlgorithmHeader");
    }

    #[test]
    fn dialect_resolution() {
        let unknown = NMEEF_SAMPLE.replace("nmeef", "mystery");
        assert_eq!(parse(&unknown).unwrap().dialect, Dialect::Fuzzy);

        let no_labels = unknown.replace("Number of labels: 3\n", "");
        assert_eq!(parse(&no_labels).unwrap_err().kind(), "UnknownDialect");

        let mut reg = AlgorithmRegistry::default();
        reg.insert("mystery", Dialect::Crisp);
        let crisp_text = "@algorithm mystery\nGENERATED RULE 0\nVariable x = a\nConsequent: c\n";
        let rs = parse_rules::<f64>(crisp_text, &reg).unwrap();
        assert_eq!(rs.dialect, Dialect::Crisp);
    }

    #[test]
    fn fuzzy_algorithm_needs_label_count() {
        let text = NMEEF_SAMPLE.replace("Number of labels: 3\n", "");
        assert_eq!(parse(&text).unwrap_err().kind(), "MissingLabelCount");
    }

    #[test]
    fn crisp_file_rejects_fuzzy_labels() {
        let text = NMEEF_SAMPLE.replace("nmeef", "sdmap");
        assert_eq!(
            parse(&text).unwrap_err(),
            bad_condition(5, "fuzzy label in a crisp rule file")
        );
    }

    #[test]
    fn malformed_conditions_report_lines() {
        let cases = [
            "Variable petalLength = Label 0 (3.0 1.0 3.95)",
            "Variable petalLength = Label 0 (1.0 1.0)",
            "Variable petalLength = Label 0",
            "Variable petalLength = Label 5 (-1 0 1)",
            "Variable petalLength = Label 0 (a b c)",
            "Variable petalLength",
            "Variable petalLength =",
            "Variable petalLength in [3, 1]",
            "Variable petalLength in [3 1]",
            "Variable petalLength between 1 and 2",
        ];
        for cond in cases {
            let text = NMEEF_SAMPLE.replace("Variable petalLength = Label 0 \t (-1.95 1.0 3.95)", cond);
            let err = parse(&text).unwrap_err();
            assert_eq!(err.kind(), "MalformedCondition", "{cond}");
            assert_eq!(err.line(), Some(5), "{cond}");
        }
    }

    #[test]
    fn duplicate_attribute_in_rule() {
        let text = NMEEF_SAMPLE.replace(
            "    Consecuent",
            "        Variable petalLength = Label 1 (1.0 3.95 6.9)\n    Consecuent",
        );
        let err = parse(&text).unwrap_err();
        assert_eq!(err.kind(), "MalformedCondition");
        assert_eq!(err.line(), Some(6));
    }

    #[test]
    fn malformed_rules() {
        let no_consequent = "@algorithm sdmap\nGENERATED RULE 0\nVariable x = a\n";
        assert_eq!(
            parse(no_consequent).unwrap_err(),
            bad_rule(2, "rule 0 has no consequent")
        );
        let no_antecedent = "@algorithm sdmap\nGENERATED RULE 0\nConsequent: a\n";
        assert_eq!(parse(no_antecedent).unwrap_err().kind(), "MalformedRule");
        let dup = "@algorithm sdmap\nGENERATED RULE 0\nVariable x = a\nConsequent: a\nGENERATED RULE 0\n";
        assert_eq!(parse(dup).unwrap_err().line(), Some(5));
        let bad_id = "@algorithm sdmap\nGENERATED RULE zero\n";
        assert_eq!(parse(bad_id).unwrap_err().kind(), "MalformedRule");
    }

    #[test]
    fn label_count_errors() {
        let text = NMEEF_SAMPLE.replace("Number of labels: 3", "Number of labels: 1");
        assert_eq!(parse(&text).unwrap_err().kind(), "InvalidLabelCount");
        let text = NMEEF_SAMPLE.replace("Number of labels: 3", "Number of labels: three");
        assert_eq!(parse(&text).unwrap_err().line(), Some(2));
    }

    #[test]
    fn unknown_lines_become_warnings() {
        let text = "@algorithm nmeef\nNumber of labels: 3\nExecution time: 2s\nGENERATED RULE 0\n  Antecedent\n  Variable petalLength = Label 0 (-1.95 1.0 3.95)\n  Consecuent: Iris-setosa\n  Support: 0.33\n";
        let rs = parse(text).unwrap();
        assert_eq!(
            rs.warnings,
            vec![
                ParseWarning {
                    line: 3,
                    text: "Execution time: 2s".into()
                },
                ParseWarning {
                    line: 8,
                    text: "Support: 0.33".into()
                },
            ]
        );
    }

    #[test]
    fn whitespace_in_triple_is_flexible() {
        let text = NMEEF_SAMPLE.replace("(-1.95 1.0 3.95)", "(  -1.95\t\t1.0   3.95 )");
        let rs = parse(&text).unwrap();
        assert!(matches!(rs.rules[0].antecedent[0].test, ConditionTest::FuzzyLabel(_)));
    }

    #[test]
    fn rule_ids_preserve_file_order() {
        let text = "@algorithm sdmap\nGENERATED RULE 3\nVariable x = a\nConsequent: a\nGENERATED RULE 1\nVariable x = b\nConsequent: b\n";
        let ids: Vec<usize> = parse(text).unwrap().rules.iter().map(|r| r.id).collect();
        assert_eq!(ids, vec![3, 1]);
    }

    #[test]
    fn parsing_is_deterministic() {
        assert_eq!(parse(NMEEF_SAMPLE).unwrap(), parse(NMEEF_SAMPLE).unwrap());
    }
}

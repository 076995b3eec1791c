use std::collections::HashSet;

use super::{Attribute, AttributeKind, Cell, Dataset, DatasetError, Example, Range, RangeWarning, Role};
use crate::scalar::{parse_finite, Scalar};

type Result<T> = std::result::Result<T, DatasetError>;

fn malformed(line: usize, message: impl Into<String>) -> DatasetError {
    DatasetError::MalformedHeader {
        line,
        message: message.into(),
    }
}

/// Splits `@keyword rest` into a lowercase keyword and the trimmed remainder.
fn split_directive(line: &str) -> (String, &str) {
    let end = line.find(|c: char| c.is_whitespace() || c == '{').unwrap_or(line.len());
    (line[..end].to_ascii_lowercase(), line[end..].trim())
}

/// Reads a possibly quoted attribute name from the front of `text`.
fn take_name(text: &str, line: usize) -> Result<(String, &str)> {
    let text = text.trim_start();
    if let Some(q) = text.chars().next().filter(|c| *c == '\'' || *c == '"') {
        let close = text[1..]
            .find(q)
            .ok_or_else(|| malformed(line, "unterminated quoted attribute name"))?;
        let name = &text[1..1 + close];
        if name.is_empty() {
            return Err(malformed(line, "empty attribute name"));
        }
        return Ok((name.to_string(), &text[close + 2..]));
    }
    let end = text
        .find(|c: char| c.is_whitespace() || c == '{' || c == '[')
        .unwrap_or(text.len());
    if end == 0 {
        return Err(malformed(line, "missing attribute name"));
    }
    Ok((text[..end].to_string(), &text[end..]))
}

fn parse_attribute<T: Scalar>(rest: &str, line: usize) -> Result<Attribute<T>> {
    let (name, tail) = take_name(rest, line)?;
    let tail = tail.trim();

    if let Some(inner) = tail.strip_prefix('{') {
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| malformed(line, format!("attribute '{name}': missing closing '}}'")))?;
        let mut values = Vec::new();
        let mut seen = HashSet::new();
        for v in inner.split(',') {
            let v = v.trim();
            if v.is_empty() {
                return Err(malformed(line, format!("attribute '{name}': empty categorical value")));
            }
            if !seen.insert(v) {
                return Err(malformed(line, format!("attribute '{name}': duplicate value '{v}'")));
            }
            values.push(v.to_string());
        }
        return Ok(Attribute {
            name,
            kind: AttributeKind::Categorical,
            range: None,
            values,
            role: Role::Input,
        });
    }

    let kind_end = tail.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(tail.len());
    let kind = match tail[..kind_end].to_ascii_lowercase().as_str() {
        "real" => AttributeKind::Real,
        "integer" => AttributeKind::Integer,
        "" => return Err(malformed(line, format!("attribute '{name}': missing type"))),
        other => return Err(malformed(line, format!("attribute '{name}': unknown type '{other}'"))),
    };

    let bounds = tail[kind_end..].trim();
    let range = if bounds.is_empty() {
        None
    } else {
        let inner = bounds
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| malformed(line, format!("attribute '{name}': expected range '[min, max]'")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        let [lo, hi] = parts.as_slice() else {
            return Err(malformed(
                line,
                format!("attribute '{name}': range needs exactly two bounds"),
            ));
        };
        let bad = || malformed(line, format!("attribute '{name}': invalid range bound"));
        let min: T = parse_finite(lo).ok_or_else(bad)?;
        let max: T = parse_finite(hi).ok_or_else(bad)?;
        if min > max {
            return Err(malformed(line, format!("attribute '{name}': range min exceeds max")));
        }
        Some(Range { min, max })
    };

    Ok(Attribute {
        name,
        kind,
        range,
        values: Vec::new(),
        role: Role::Input,
    })
}

fn split_names(rest: &str) -> Vec<String> {
    rest.split(',')
        .map(|s| s.trim().trim_matches(|c| c == '\'' || c == '"').to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_cell<T: Scalar>(raw: &str, attr: &Attribute<T>, line: usize) -> Result<Cell<T>> {
    if raw.is_empty() || raw == "?" {
        return Ok(Cell::Missing);
    }
    let violation = || DatasetError::DomainViolation {
        line,
        attribute: attr.name.clone(),
        kind: attr.kind,
        value: raw.to_string(),
    };
    match attr.kind {
        AttributeKind::Categorical => attr.value_index(raw).map(Cell::Category).ok_or_else(violation),
        AttributeKind::Real => parse_finite(raw).map(Cell::Number).ok_or_else(violation),
        AttributeKind::Integer => parse_finite::<T>(raw)
            .filter(|x| x.fract() == T::zero())
            .map(Cell::Number)
            .ok_or_else(violation),
    }
}

/// Parses the full text of one KEEL `.dat` file.
pub fn parse_dataset<T: Scalar>(text: &str) -> Result<Dataset<T>> {
    let mut relation_name: Option<String> = None;
    let mut attributes: Vec<Attribute<T>> = Vec::new();
    let mut inputs: Option<(usize, Vec<String>)> = None;
    let mut outputs: Option<(usize, Vec<String>)> = None;
    let mut data_line: Option<usize> = None;
    let mut examples = Vec::new();
    let mut warnings = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }

        if data_line.is_some() {
            if line.starts_with('@') {
                return Err(malformed(line_no, "directive after @data"));
            }
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != attributes.len() {
                return Err(DatasetError::RowArityMismatch {
                    line: line_no,
                    expected: attributes.len(),
                    found: cells.len(),
                });
            }
            let row = examples.len();
            let mut values = Vec::with_capacity(cells.len());
            for (attr, raw_cell) in attributes.iter().zip(cells) {
                let cell = parse_cell(raw_cell, attr, line_no)?;
                if let (Cell::Number(x), Some(range)) = (cell, attr.range) {
                    if !range.contains(x) {
                        warnings.push(RangeWarning {
                            line: line_no,
                            row,
                            attribute: attr.name.clone(),
                            value: x,
                        });
                    }
                }
                values.push(cell);
            }
            examples.push(Example { index: row, values });
            continue;
        }

        if !line.starts_with('@') {
            return Err(malformed(line_no, format!("unexpected line before @data: '{line}'")));
        }
        let (keyword, rest) = split_directive(line);
        match keyword.as_str() {
            "@relation" => {
                if relation_name.is_some() {
                    return Err(malformed(line_no, "duplicate @relation"));
                }
                relation_name = Some(rest.to_string());
            }
            "@attribute" => {
                let attr = parse_attribute::<T>(rest, line_no)?;
                if attributes.iter().any(|a| a.name == attr.name) {
                    return Err(malformed(line_no, format!("duplicate attribute name '{}'", attr.name)));
                }
                attributes.push(attr);
            }
            "@inputs" => {
                if inputs.is_some() {
                    return Err(malformed(line_no, "duplicate @inputs"));
                }
                inputs = Some((line_no, split_names(rest)));
            }
            "@outputs" => {
                if outputs.is_some() {
                    return Err(malformed(line_no, "duplicate @outputs"));
                }
                outputs = Some((line_no, split_names(rest)));
            }
            "@data" => {
                if !rest.is_empty() {
                    return Err(malformed(line_no, "unexpected text after @data"));
                }
                if attributes.is_empty() {
                    return Err(malformed(line_no, "no @attribute declared before @data"));
                }
                data_line = Some(line_no);
            }
            other => return Err(malformed(line_no, format!("unknown directive '{other}'"))),
        }
    }

    let Some(data_line) = data_line else {
        let last = text.lines().count().max(1);
        return Err(malformed(last, "missing @data section"));
    };

    let target_index = resolve_roles(&mut attributes, inputs, outputs, data_line)?;
    let target = &attributes[target_index];
    if target.kind != AttributeKind::Categorical {
        return Err(DatasetError::NoCategoricalTarget {
            line: data_line,
            attribute: target.name.clone(),
        });
    }

    Ok(Dataset {
        relation_name: relation_name.unwrap_or_default(),
        attributes,
        examples,
        target_index,
        warnings,
    })
}

fn resolve_roles<T: Scalar>(
    attributes: &mut [Attribute<T>],
    inputs: Option<(usize, Vec<String>)>,
    outputs: Option<(usize, Vec<String>)>,
    data_line: usize,
) -> Result<usize> {
    let index_of = |attributes: &[Attribute<T>], name: &str, line: usize| {
        attributes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| malformed(line, format!("unknown attribute '{name}'")))
    };

    let input_idx = match &inputs {
        Some((line, names)) => names
            .iter()
            .map(|n| index_of(attributes, n, *line))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };

    let target = match &outputs {
        Some((line, names)) => match names.as_slice() {
            [only] => index_of(attributes, only, *line)?,
            [] => return Err(malformed(*line, "@outputs lists no attribute")),
            _ => return Err(malformed(*line, "exactly one output attribute is supported")),
        },
        None => match &inputs {
            Some((line, _)) => {
                let rest: Vec<usize> = (0..attributes.len()).filter(|i| !input_idx.contains(i)).collect();
                match rest.as_slice() {
                    [only] => *only,
                    [] => return Err(malformed(*line, "every attribute is an input; no output left")),
                    _ => attributes.len() - 1,
                }
            }
            None => attributes.len() - 1,
        },
    };

    if input_idx.contains(&target) {
        let line = inputs.as_ref().map_or(data_line, |(l, _)| *l);
        return Err(malformed(line, "the output attribute is also listed in @inputs"));
    }
    for (i, attr) in attributes.iter_mut().enumerate() {
        attr.role = if i == target { Role::Output } else { Role::Input };
    }
    Ok(target)
}

/// Parses a training and a test file and concatenates their rows
/// (training rows first). The two schemas must match exactly, including
/// categorical value order.
pub fn parse_dataset_pair<T: Scalar>(train_text: &str, test_text: &str) -> Result<Dataset<T>> {
    let mut train = parse_dataset::<T>(train_text)?;
    train.append(parse_dataset::<T>(test_text)?)?;
    Ok(train)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NMEEF_SAMPLE: &str = "@relation iris
@attribute sepalLength real [4.3, 7.9]
@attribute sepalWidth real [2.0, 4.4]
@attribute petalLength real [1.0, 6.9]
@attribute petalWidth real [0.1, 2.5]
@attribute class {Iris-setosa, Iris-versicolor, Iris-virginica}
@inputs sepalLength, sepalWidth, petalLength, petalWidth
@outputs class
@data
5.1, 3.5, 1.4, 0.2, Iris-setosa
4.9, 3.0, 1.4, 0.2, Iris-setosa
";

    fn header_only() -> String {
        NMEEF_SAMPLE.lines().take(9).collect::<Vec<_>>().join("\n")
    }

    #[test]
    fn parses_the_iris_header() {
        let d = parse_dataset::<f64>(NMEEF_SAMPLE).unwrap();
        assert_eq!(d.relation_name, "iris");
        assert_eq!(d.attributes.len(), 5);
        assert_eq!(d.target_index, 4);
        assert_eq!(d.target().name, "class");
        assert_eq!(d.class_values(), ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]);
        assert_eq!(d.examples.len(), 2);
        assert_eq!(d.examples[0].values[2], Cell::Number(1.4));
        assert_eq!(d.examples[1].index, 1);
        assert_eq!(d.attributes[0].range, Some(Range { min: 4.3, max: 7.9 }));
        assert!(d.warnings.is_empty());
    }

    #[test]
    fn header_only_gives_empty_dataset() {
        let d = parse_dataset::<f64>(&header_only()).unwrap();
        assert!(d.examples.is_empty());
        assert_eq!(d.attributes.len(), 5);
    }

    #[test]
    fn directives_are_case_insensitive_and_comments_skipped() {
        let text =
            "% generated\n@RELATION r\n  @Attribute x REAL [0, 1]  \n@ATTRIBUTE y{a,b}\n@DATA\n% row comment\n0.5,a\n";
        let d = parse_dataset::<f64>(text).unwrap();
        assert_eq!(d.relation_name, "r");
        assert_eq!(d.attributes[1].values, ["a", "b"]);
        assert_eq!(d.examples.len(), 1);
    }

    #[test]
    fn last_attribute_is_target_without_io_directives() {
        let text = "@relation r\n@attribute c {p, q}\n@attribute x real [0, 1]\n@attribute y {a, b}\n@data\n";
        let d = parse_dataset::<f64>(text).unwrap();
        assert_eq!(d.target_index, 2);
        assert_eq!(d.attributes[0].role, Role::Input);
        assert_eq!(d.attributes[2].role, Role::Output);
    }

    #[test]
    fn outputs_may_name_a_non_last_attribute() {
        let text = "@relation r\n@attribute c {p, q}\n@attribute x real\n@outputs c\n@data\np, 3\n";
        let d = parse_dataset::<f64>(text).unwrap();
        assert_eq!(d.target_index, 0);
        assert_eq!(d.attributes[1].range, None);
    }

    #[test]
    fn inputs_alone_determine_the_output() {
        let text = "@relation r\n@attribute c {p, q}\n@attribute x real\n@inputs x\n@data\n";
        let d = parse_dataset::<f64>(text).unwrap();
        assert_eq!(d.target_index, 0);
    }

    #[test]
    fn missing_values() {
        let text = "@relation r\n@attribute x real [0, 1]\n@attribute c {a, b}\n@data\n?, a\n , b\n0.3, ?\n";
        let d = parse_dataset::<f64>(text).unwrap();
        assert!(d.examples[0].values[0].is_missing());
        assert!(d.examples[1].values[0].is_missing());
        assert!(d.examples[2].values[1].is_missing());
        assert_eq!(d.class_of(&d.examples[2]), None);
        assert_eq!(d.class_distribution(), vec![1, 1]);
    }

    #[test]
    fn out_of_range_values_are_flagged_not_rejected() {
        let text = "@relation r\n@attribute x real [0, 1]\n@attribute c {a, b}\n@data\n1.5, a\n0.5, a\n-2, b\n";
        let d = parse_dataset::<f64>(text).unwrap();
        assert_eq!(d.examples.len(), 3);
        assert_eq!(d.warnings.len(), 2);
        assert_eq!(d.warnings[0].line, 5);
        assert_eq!(d.warnings[1].row, 2);
        assert_eq!(d.warnings[1].value, -2.0);
    }

    #[test]
    fn arity_mismatch_reports_line() {
        let text = "@relation r\n@attribute x real\n@attribute c {a, b}\n@data\n1, a\n\n1, a, 3\n";
        let err = parse_dataset::<f64>(text).unwrap_err();
        assert_eq!(
            err,
            DatasetError::RowArityMismatch {
                line: 7,
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn domain_violations() {
        let cases = [
            "@relation r\n@attribute c {a, b}\n@data\nz\n",
            "@relation r\n@attribute x real\n@attribute c {a, b}\n@data\nabc, a\n",
            "@relation r\n@attribute x integer [0, 9]\n@attribute c {a, b}\n@data\n2.5, a\n",
            "@relation r\n@attribute x real\n@attribute c {a, b}\n@data\nNaN, a\n",
        ];
        for text in cases {
            let err = parse_dataset::<f64>(text).unwrap_err();
            assert_eq!(err.kind(), "DomainViolation", "{text}");
            assert_eq!(err.line(), Some(text.lines().count()));
        }
    }

    #[test]
    fn numeric_target_is_rejected() {
        let text = "@relation r\n@attribute c {a, b}\n@attribute y real\n@data\n";
        assert_eq!(parse_dataset::<f64>(text).unwrap_err().kind(), "NoCategoricalTarget");
    }

    #[test]
    fn malformed_headers() {
        let cases = [
            ("@relation r\n@attribute x real\n@attribute x {a}\n@data\n", 3),
            ("@relation r\n@attribute x numeric\n@data\n", 2),
            ("@relation r\n@attribute x real [3, 1]\n@data\n", 2),
            ("@relation r\n@attribute x real [1]\n@data\n", 2),
            ("@relation r\n@attribute c {a, a}\n@data\n", 2),
            ("@relation r\n@attribute c {a, b\n@data\n", 2),
            ("@relation r\n@foo bar\n@data\n", 2),
            ("@relation r\nhello\n", 2),
            ("@relation r\n@attribute c {a}\n@outputs d\n@data\n", 3),
            (
                "@relation r\n@attribute c {a}\n@attribute d {a}\n@outputs c, d\n@data\n",
                4,
            ),
            ("@relation r\n@data\n", 2),
            ("@relation r\n@attribute c {a}\n@data\n@attribute d {b}\n", 4),
        ];
        for (text, line) in cases {
            let err = parse_dataset::<f64>(text).unwrap_err();
            assert_eq!(err.kind(), "MalformedHeader", "{text}");
            assert_eq!(err.line(), Some(line), "{text}");
        }
        let err = parse_dataset::<f64>("@relation r\n@attribute c {a}\n").unwrap_err();
        assert_eq!(err.kind(), "MalformedHeader");
    }

    #[test]
    fn quoted_attribute_names() {
        let text = "@relation r\n@attribute 'petal length' real [0, 9]\n@attribute class {a}\n@data\n1, a\n";
        let d = parse_dataset::<f64>(text).unwrap();
        assert_eq!(d.attributes[0].name, "petal length");
    }

    #[test]
    fn pair_concatenates_train_then_test() {
        let a = format!(
            "{}\n5.0, 3.0, 1.0, 0.2, Iris-setosa\n6.0, 3.0, 4.0, 1.2, Iris-versicolor\n",
            header_only()
        );
        let b = format!(
            "{}\n7.0, 3.0, 6.0, 2.2, Iris-virginica\n7.1, 3.0, 6.1, 2.1, Iris-virginica\n4.5, 3.0, 1.1, 0.1, Iris-setosa\n",
            header_only()
        );
        let d = parse_dataset_pair::<f64>(&a, &b).unwrap();
        assert_eq!(d.examples.len(), 5);
        assert_eq!(d.examples[2].values[0], Cell::Number(7.0));
        assert!(d.examples.iter().enumerate().all(|(i, e)| e.index == i));

        let doubled = parse_dataset_pair::<f64>(NMEEF_SAMPLE, NMEEF_SAMPLE).unwrap();
        assert_eq!(doubled.examples.len(), 4);
    }

    #[test]
    fn pair_rejects_reordered_class_values() {
        let reordered = NMEEF_SAMPLE.replace(
            "{Iris-setosa, Iris-versicolor, Iris-virginica}",
            "{Iris-versicolor, Iris-setosa, Iris-virginica}",
        );
        let err = parse_dataset_pair::<f64>(NMEEF_SAMPLE, &reordered).unwrap_err();
        assert_eq!(err.kind(), "SchemaMismatch");

        let renamed = NMEEF_SAMPLE.replace("sepalWidth", "sepalBreadth");
        assert_eq!(
            parse_dataset_pair::<f64>(NMEEF_SAMPLE, &renamed).unwrap_err().kind(),
            "SchemaMismatch"
        );

        let ranged = NMEEF_SAMPLE.replace("[4.3, 7.9]", "[4.0, 8.0]");
        assert_eq!(
            parse_dataset_pair::<f64>(NMEEF_SAMPLE, &ranged).unwrap_err().kind(),
            "SchemaMismatch"
        );
    }

    #[test]
    fn parsing_is_deterministic() {
        let a = parse_dataset::<f64>(NMEEF_SAMPLE).unwrap();
        let b = parse_dataset::<f64>(NMEEF_SAMPLE).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn works_for_f32() {
        let d = parse_dataset::<f32>(NMEEF_SAMPLE).unwrap();
        assert_eq!(d.examples[0].values[0], Cell::Number(5.1f32));
    }
}

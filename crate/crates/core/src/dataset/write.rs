use std::fmt::Write;

use super::{AttributeKind, Dataset, Role};
use crate::scalar::Scalar;

fn quote_name(name: &str) -> String {
    if name
        .chars()
        .any(|c| c.is_whitespace() || matches!(c, '{' | '[' | ',' | '\'' | '"'))
    {
        format!("'{name}'")
    } else {
        name.to_string()
    }
}

/// Serializes a dataset back to KEEL text. `parse_dataset` on the output
/// yields a dataset with the same content.
pub fn to_keel_text<T: Scalar>(data: &Dataset<T>) -> String {
    let mut out = String::new();
    writeln!(out, "@relation {}", data.relation_name).unwrap();
    for attr in &data.attributes {
        let name = quote_name(&attr.name);
        match attr.kind {
            AttributeKind::Categorical => {
                writeln!(out, "@attribute {name} {{{}}}", attr.values.join(", ")).unwrap();
            }
            kind => {
                write!(out, "@attribute {name} {kind}").unwrap();
                if let Some(r) = attr.range {
                    write!(out, " [{}, {}]", r.min.to_text(), r.max.to_text()).unwrap();
                }
                out.push('\n');
            }
        }
    }
    let names = |role: Role| {
        data.attributes
            .iter()
            .filter(|a| a.role == role)
            .map(|a| quote_name(&a.name))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let inputs = names(Role::Input);
    if !inputs.is_empty() {
        writeln!(out, "@inputs {inputs}").unwrap();
    }
    writeln!(out, "@outputs {}", names(Role::Output)).unwrap();
    out.push_str("@data\n");
    for example in &data.examples {
        out.push_str(&data.display_row(example).join(", "));
        out.push('\n');
    }
    out
}

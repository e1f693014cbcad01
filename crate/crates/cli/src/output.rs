use vanishlab::record::{render, Record};

use crate::Format;

/// Rows and residuals print one per line; other records as indented blocks.
fn text(records: &[Record]) -> String {
    let mut out = String::new();
    let mut previous_inline = false;
    for r in records {
        let inline = matches!(r.kind.as_str(), "row" | "residual");
        if !out.is_empty() && !(inline && previous_inline) {
            out.push('\n');
        }
        if inline {
            let fields: Vec<String> = r.fields.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            out.push_str(&format!("{}  {}\n", r.kind, fields.join("  ")));
        } else {
            out.push_str(&format!("{}\n", r.kind));
            let width = r.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &r.fields {
                out.push_str(&format!("  {k:<width$}  {v}\n"));
            }
        }
        previous_inline = inline;
    }
    out
}

pub fn format(records: &[Record], format: Format) -> String {
    match format {
        Format::Structured => render(records),
        Format::Text => text(records),
    }
}

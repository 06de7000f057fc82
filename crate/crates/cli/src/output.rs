use serde::Serialize;

use crate::{Failure, Format};

/// Renders `rows` as text lines, a JSON array, or CSV with a header row.
pub fn render<T: Serialize>(
    format: Format,
    rows: &[T],
    text: impl Fn(&T) -> String,
) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(rows.iter().map(|r| text(r) + "\n").collect()),
        Format::Json => json(rows),
        Format::Csv => csv(rows),
    }
}

/// CSV cannot hold nested records, so callers flatten rows first.
pub fn csv<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

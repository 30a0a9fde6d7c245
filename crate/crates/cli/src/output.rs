//! Rendering a command result as text, JSON or CSV.

use serde_json::Value;

use crate::config::Format;

/// Everything a command produces, in all three encodings, plus its status.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// False when a requested check failed.
    pub ok: bool,
}

impl Report {
    pub fn new(text: String, json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Report {
            text,
            json,
            header,
            rows,
            ok: true,
        }
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                Ok(s)
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(|e| e.to_string())?;
                for row in &self.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn three_encodings() {
        let r = Report::new(
            "hello".into(),
            json!({"a": 1}),
            vec!["sum", "n"],
            vec![vec!["1,2|5".into(), "3".into()]],
        );
        assert_eq!(r.render(Format::Text).unwrap(), "hello\n");
        assert_eq!(r.render(Format::Json).unwrap(), "{\n  \"a\": 1\n}\n");
        assert_eq!(r.render(Format::Csv).unwrap(), "sum,n\n\"1,2|5\",3\n");
    }
}

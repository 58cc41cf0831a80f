use clap::ValueEnum;
use hermite_deform::Status;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// A rendered command result. `csv` is only present for coefficient tables.
pub struct Output {
    pub json: Value,
    pub pretty: String,
    pub csv: Option<Table>,
    /// Set for verification commands; drives the exit code.
    pub status: Option<Status>,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn data(json: Value, pretty: String) -> Self {
        Output {
            json,
            pretty,
            csv: None,
            status: None,
        }
    }

    pub fn with_csv(mut self, table: Table) -> Self {
        self.csv = Some(table);
        self
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Pretty => {
                let mut s = self.pretty.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                Ok(s)
            }
            Format::Csv => {
                let table = self
                    .csv
                    .as_ref()
                    .ok_or("csv output is only available for coefficient tables; use --format json")?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

/// `re`/`im` JSON parts as CSV cells.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

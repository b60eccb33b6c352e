use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

/// Rows for the csv and table formats. Empty cells are empty strings.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(headers: I) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = S>, S: Into<String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    /// One `field,value` row per top-level entry of a JSON object.
    fn from_object(json: &Value) -> Self {
        let mut t = Table::new(["field", "value"]);
        if let Value::Object(map) = json {
            for (k, v) in map {
                let cell = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                t.push([k.clone(), cell]);
            }
        }
        t
    }
}

/// Result of one subcommand.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
}

impl Report {
    pub fn json(json: Value) -> Self {
        Report { json, table: None }
    }

    pub fn with_table(json: Value, table: Table) -> Self {
        Report {
            json,
            table: Some(table),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => render_csv(&self.table()),
            Format::Table => render_aligned(&self.table()),
        }
    }

    fn table(&self) -> Table {
        self.table
            .clone()
            .unwrap_or_else(|| Table::from_object(&self.json))
    }
}

fn render_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn render_aligned(t: &Table) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&t.headers);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(&rule));
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}

//! Table rendering in markdown, CSV, and JSON.

use clap::ValueEnum;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

pub struct Table {
    name: String,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    pub fn emit(&self, format: Format) {
        match format {
            Format::Md => self.emit_md(),
            Format::Csv => self.emit_csv(),
            Format::Json => self.emit_json(),
        }
    }

    fn emit_md(&self) {
        println!("| {} |", self.headers.join(" | "));
        println!("|{}|", vec!["---"; self.headers.len()].join("|"));
        for row in &self.rows {
            println!("| {} |", row.join(" | "));
        }
        for note in &self.notes {
            println!("> {note}");
        }
    }

    fn emit_csv(&self) {
        let quote = |cell: &str| -> String {
            if cell.contains(',') || cell.contains('"') {
                format!("\"{}\"", cell.replace('"', "\"\""))
            } else {
                cell.to_string()
            }
        };
        println!(
            "{}",
            self.headers.iter().map(|h| quote(h)).collect::<Vec<_>>().join(",")
        );
        for row in &self.rows {
            println!(
                "{}",
                row.iter().map(|c| quote(c)).collect::<Vec<_>>().join(",")
            );
        }
        for note in &self.notes {
            println!("# {note}");
        }
    }

    fn emit_json(&self) {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.clone(), serde_json::Value::String(c.clone())))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let out = serde_json::json!({
            "command": self.name,
            "rows": rows,
            "notes": self.notes,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    }
}

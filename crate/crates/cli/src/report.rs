use std::fmt::Display;

use codelat::zlattice::{IntVector, Lattice};
use sha2::{Digest, Sha256};

/// Line-oriented `key=value` report with matrix blocks.
#[derive(Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.kv("command", command);
        r
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}={value}"));
    }

    pub fn digest(&mut self, key: &str, bytes: &[u8]) {
        self.kv(key, hex::encode(Sha256::digest(bytes)));
    }

    pub fn vector(&mut self, key: &str, v: &IntVector) {
        self.kv(key, v);
    }

    pub fn rows<T: Display>(&mut self, name: &str, rows: impl IntoIterator<Item = T>) {
        self.lines.push(format!("begin {name}"));
        self.lines.extend(rows.into_iter().map(|r| r.to_string()));
        self.lines.push(format!("end {name}"));
    }

    pub fn lattice(&mut self, name: &str, l: &Lattice) {
        self.kv("n", l.dim());
        self.kv("determinant", l.determinant());
        self.rows(
            name,
            l.rows().iter().map(|r| {
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
            }),
        );
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

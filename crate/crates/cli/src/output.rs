// Copyright 2026 The zeno-dfs Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! CSV and plotting-script emission.

use std::path::Path;

use crate::Failure;

/// Shortest decimal text that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// A CSV document: `# key=value` comment lines, a column header and rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.header.push((key.to_string(), value.to_string()));
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = Vec::new();
        for (k, v) in &self.header {
            out.extend_from_slice(format!("# {k}={v}\n").as_bytes());
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Resource(format!("writing {}: {e}", path.display())))
}

/// Path of the plotting script that accompanies `csv`.
pub fn script_path(csv: &Path) -> std::path::PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".gp");
    name.into()
}

/// A gnuplot script plotting column `y` against column 1 of `csv`.
pub fn gnuplot_script(csv: &Path, title: &str, xlabel: &str, ylabel: &str, y: usize) -> String {
    let file = csv.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    format!(
        "# gnuplot {file}.gp\n\
         set datafile separator ','\n\
         set datafile commentschars '#'\n\
         set key autotitle columnhead\n\
         set title '{title}'\n\
         set xlabel '{xlabel}'\n\
         set ylabel '{ylabel}'\n\
         set grid\n\
         plot '{file}' using 1:{y} with lines lw 2\n\
         pause mouse close\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting_round_trips() {
        assert_eq!(num(0.0), "0.0");
        assert_eq!(num(1.0), "1.0");
        assert_eq!(num(0.1), "0.1");
        for x in [1.0 / 3.0, 1e-17, 0.999_999_999_999_999_9, -2.5e300, 5e-324] {
            assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.meta("gate", "cnot").meta("state", "1.0+0.0i,0.0+0.0i");
        t.rows.push(vec![num(0.0), "ok".into()]);
        assert_eq!(t.to_csv(), "# gate=cnot\n# state=1.0+0.0i,0.0+0.0i\na,b\n0.0,ok\n");
    }

    #[test]
    fn script_names_the_csv() {
        let p = Path::new("/tmp/run/curve.csv");
        assert_eq!(script_path(p), Path::new("/tmp/run/curve.csv.gp"));
        let s = gnuplot_script(p, "F", "eps t", "F", 2);
        assert!(s.contains("plot 'curve.csv' using 1:2"));
    }
}

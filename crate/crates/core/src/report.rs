//! Reports with a human-readable body and a flat `key=value` block.

use std::fmt::Write;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub sections: Vec<(String, Vec<String>)>,
    pub machine: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn section(&mut self, title: impl Into<String>) -> &mut Vec<String> {
        self.sections.push((title.into(), Vec::new()));
        &mut self.sections.last_mut().unwrap().1
    }

    /// Records a machine value. Keys are expected to be unique.
    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        let key = key.into();
        debug_assert!(!self.machine.iter().any(|(k, _)| *k == key), "duplicate key {key}");
        self.machine.push((key, value.to_string()));
    }

    pub fn put_list<T: ToString>(&mut self, key: impl Into<String>, values: &[T]) {
        self.put(key, join_list(values));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (title, lines) in &self.sections {
            let _ = writeln!(out, "== {title} ==");
            for l in lines {
                let _ = writeln!(out, "{l}");
            }
            out.push('\n');
        }
        out
    }

    pub fn render_machine(&self) -> String {
        self.machine.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

/// Comma-separated list; the empty list renders as the empty string.
pub fn join_list<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Parses `key=value` lines, splitting on the first `=`.
pub fn parse_machine(text: &str) -> Result<Vec<(String, String)>, String> {
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("not a key=value line: {l}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_block_round_trips() {
        let mut r = Report::new();
        r.put("total_exact", 4);
        r.put_list("exceptions", &[900, 1764]);
        r.put("q", "1/4");
        r.put_list::<u64>("empty", &[]);
        let parsed = parse_machine(&r.render_machine()).unwrap();
        assert_eq!(parsed, r.machine);
        assert_eq!(r.get("exceptions"), Some("900,1764"));
    }

    #[test]
    fn text_has_titled_sections() {
        let mut r = Report::new();
        r.section("scan").push("exceptions: 900".into());
        assert_eq!(r.render_text(), "== scan ==\nexceptions: 900\n\n");
    }
}

//! The summary verdict table and report diffs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::path::Path;

use crate::Failure;

pub const SUMMARY_FILE: &str = "summary.tsv";
/// Third column on lines whose value rests on an uncertified distance.
pub const TRUNCATION_MARK: &str = "truncated";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub value: String,
    pub truncated: bool,
}

/// `key\tvalue[\ttruncated]` lines, sorted by key.
///
/// Keys are grouped by prefix: `verdict.`, `estimate.`, `hull.`, `orbits.`,
/// `fineness.` and `info.`; only `info.` lines are expected to vary with the
/// truncation radius.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub entries: BTreeMap<String, Entry>,
}

impl Summary {
    pub fn set(&mut self, key: impl Into<String>, value: impl ToString, truncated: bool) {
        self.entries.insert(key.into(), Entry { value: value.to_string(), truncated });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, e) in &self.entries {
            let _ = write!(out, "{k}\t{}", e.value);
            if e.truncated {
                let _ = write!(out, "\t{TRUNCATION_MARK}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut s = Summary::default();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            match parts.as_slice() {
                [k, v] => s.set(*k, v, false),
                [k, v, m] if *m == TRUNCATION_MARK => s.set(*k, v, true),
                _ => return Err(Failure::Validation(format!("summary line {}: malformed", i + 1))),
            }
        }
        Ok(s)
    }

    pub fn read(dir: &Path) -> Result<Self, Failure> {
        let path = dir.join(SUMMARY_FILE);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffEntry {
    pub key: String,
    pub left: Option<Entry>,
    pub right: Option<Entry>,
}

impl DiffEntry {
    pub fn to_line(&self) -> String {
        let show = |e: &Option<Entry>| match e {
            None => "-".to_string(),
            Some(e) if e.truncated => format!("{} ({TRUNCATION_MARK})", e.value),
            Some(e) => e.value.clone(),
        };
        format!("{}\t{}\t{}", self.key, show(&self.left), show(&self.right))
    }
}

/// Keys whose values must agree before two bundles are comparable.
const IDENTITY_KEYS: [&str; 2] = ["info.model", "info.n"];

pub fn diff_summaries(a: &Summary, b: &Summary) -> Result<Vec<DiffEntry>, Failure> {
    for key in IDENTITY_KEYS {
        if a.get(key) != b.get(key) {
            return Err(Failure::Validation(format!(
                "bundles are not comparable: {key} is {:?} vs {:?}",
                a.get(key),
                b.get(key)
            )));
        }
    }
    let keys: BTreeSet<&String> = a.entries.keys().chain(b.entries.keys()).collect();
    Ok(keys
        .into_iter()
        .filter(|k| !k.starts_with("info."))
        .filter_map(|k| {
            let (l, r) = (a.entries.get(k), b.entries.get(k));
            (l != r).then(|| DiffEntry { key: k.clone(), left: l.cloned(), right: r.cloned() })
        })
        .collect())
}

/// Compare two report bundles (typically the same config at two radii).
pub fn diff_reports(a: &Path, b: &Path) -> Result<Vec<DiffEntry>, Failure> {
    diff_summaries(&Summary::read(a)?, &Summary::read(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(lines: &str) -> Summary {
        Summary::parse(lines).unwrap()
    }

    #[test]
    fn round_trip() {
        let mut s = Summary::default();
        s.set("verdict.x", true, false);
        s.set("estimate.R", 2, true);
        let text = s.to_text();
        assert_eq!(text, "estimate.R\t2\ttruncated\nverdict.x\ttrue\n");
        assert_eq!(summary(&text), s);
        assert!(Summary::parse("a\tb\tc\n").is_err());
    }

    #[test]
    fn diff_ignores_info_and_checks_identity() {
        let a = summary("info.model\tm\ninfo.n\t3\ninfo.vertices\t10\nestimate.R\t2\nhull.x\t5\n");
        let b = summary("info.model\tm\ninfo.n\t3\ninfo.vertices\t20\nestimate.R\t2\nhull.x\t6\nhull.y\t1\n");
        let d = diff_summaries(&a, &b).unwrap();
        assert_eq!(d.iter().map(|e| e.key.as_str()).collect::<Vec<_>>(), ["hull.x", "hull.y"]);
        assert_eq!(d[1].to_line(), "hull.y\t-\t1");
        let c = summary("info.model\tm\ninfo.n\t4\n");
        assert!(matches!(diff_summaries(&a, &c), Err(Failure::Validation(_))));
    }
}

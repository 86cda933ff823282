//! Line-oriented text format for networks.
//!
//! ```text
//! BHNET 1
//! p=4 gamma=2 n=9
//! L2: 3
//! L1: 3 4 2
//! B2.1: 100
//! B1.1: 011
//! B1.2: 100110
//! B1.3: 1
//! ```
//!
//! Levels and link vectors are listed from the root down; clusters with a
//! single sub-cluster have no `B` line.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{
    bitmap_len, validate_parts, HierarchyShape, LevelLinks, LinkTable, NetworkModel,
};

pub const MAGIC: &str = "BHNET 1";

pub fn serialize(model: &NetworkModel) -> String {
    let shape = model.shape();
    let gamma = shape.gamma();
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    let _ = writeln!(
        out,
        "p={} gamma={} n={}",
        shape.p(),
        gamma,
        shape.node_count()
    );
    for g in (1..=gamma).rev() {
        let _ = write!(out, "L{g}:");
        for c in shape.level(g) {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    for g in (1..=gamma).rev() {
        let level = model.links().level(g);
        for (i, &c) in shape.level(g).iter().enumerate() {
            if c > 1 {
                let _ = writeln!(out, "B{g}.{}: {}", i + 1, level.bitmap_string(i));
            }
        }
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, field: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| parse_err(line, format!("bad value {value:?} for {field}")))
}

pub fn deserialize(text: &str) -> Result<NetworkModel> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| parse_err(0, format!("unexpected end of input, expected {what}")))
    };

    let (no, magic) = next("header")?;
    if magic != MAGIC {
        return Err(parse_err(
            no,
            format!("expected `{MAGIC}`, found {magic:?}"),
        ));
    }

    let (no, params) = next("parameter line")?;
    let fields: Vec<&str> = params.split(' ').collect();
    let [p, gamma, n] = fields.as_slice() else {
        return Err(parse_err(no, "expected `p=<int> gamma=<int> n=<int>`"));
    };
    let field = |raw: &str, key: &str| -> Result<u64> {
        let value = raw
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| parse_err(no, format!("expected `{key}=<int>`, found {raw:?}")))?;
        parse_num(no, key, value)
    };
    let p = u32::try_from(field(p, "p")?).map_err(|_| parse_err(no, "p out of range"))?;
    let gamma = field(gamma, "gamma")? as usize;
    let n = field(n, "n")?;
    if p < 2 {
        return Err(parse_err(no, format!("p = {p} must be at least 2")));
    }

    let mut levels = vec![Vec::new(); gamma];
    for g in (1..=gamma).rev() {
        let (no, line) = next("level line")?;
        let body = line
            .strip_prefix(&format!("L{g}:"))
            .ok_or_else(|| parse_err(no, format!("expected level line `L{g}: ...`")))?;
        let counts = body
            .split_whitespace()
            .map(|c| parse_num::<u32>(no, "count", c))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&c) = counts.iter().find(|&&c| c < 1 || c > p) {
            return Err(parse_err(no, format!("count {c} outside 1..={p}")));
        }
        let expected = if g == gamma {
            1
        } else {
            levels[g].iter().map(|&c: &u32| c as usize).sum()
        };
        if counts.len() != expected {
            return Err(parse_err(
                no,
                format!(
                    "level telescoping: L{g} has {} clusters, expected {expected}",
                    counts.len()
                ),
            ));
        }
        levels[g - 1] = counts;
    }

    let mut link_levels = vec![LevelLinks::new(); gamma];
    for g in (1..=gamma).rev() {
        for (i, &c) in levels[g - 1].iter().enumerate() {
            let k = c as usize;
            if k == 1 {
                link_levels[g - 1].push_bitmap(std::iter::empty());
                continue;
            }
            let tag = format!("B{g}.{}", i + 1);
            let (no, line) = next(&format!("bitmap line {tag}"))?;
            let body = line
                .strip_prefix(&tag)
                .and_then(|r| r.strip_prefix(": "))
                .ok_or_else(|| parse_err(no, format!("expected bitmap line `{tag}: ...`")))?;
            let expected = bitmap_len(k);
            if body.len() != expected || !body.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(parse_err(
                    no,
                    format!(
                        "bitmap at level {g} index {} must be {expected} bits of 0/1, found {body:?}",
                        i + 1
                    ),
                ));
            }
            link_levels[g - 1].push_bitmap(body.bytes().map(|b| b == b'1'));
        }
    }
    if let Some((no, extra)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(no, format!("unexpected trailing line {extra:?}")));
    }

    let shape = HierarchyShape::new(p, levels);
    if shape.node_count() != n {
        return Err(parse_err(
            2,
            format!(
                "header declares n={n} but levels give {}",
                shape.node_count()
            ),
        ));
    }
    let links = LinkTable::new(link_levels);
    let violations = validate_parts(&shape, &links);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    NetworkModel::new(shape, links)
}

pub fn write_file(model: &NetworkModel, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, serialize(model))?;
    Ok(())
}

pub fn read_file(path: impl AsRef<Path>) -> Result<NetworkModel> {
    deserialize(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::sample_network;

    const SAMPLE: &str =
        "BHNET 1\np=4 gamma=2 n=9\nL2: 3\nL1: 3 4 2\nB2.1: 100\nB1.1: 011\nB1.2: 100110\nB1.3: 1\n";

    #[test]
    fn sample_network_text() {
        let text = serialize(&sample_network());
        assert_eq!(text, SAMPLE);
        assert_eq!(deserialize(&text).unwrap(), sample_network());
    }

    #[test]
    fn single_node_round_trip() {
        let m = NetworkModel::single_node(3).unwrap();
        let text = serialize(&m);
        assert_eq!(text, "BHNET 1\np=3 gamma=0 n=1\n");
        assert_eq!(deserialize(&text).unwrap(), m);
    }

    #[test]
    fn count_one_has_no_bitmap_line() {
        let text = "BHNET 1\np=2 gamma=2 n=3\nL2: 2\nL1: 1 2\nB2.1: 1\nB1.2: 0\n";
        let m = deserialize(text).unwrap();
        assert_eq!(serialize(&m), text);
    }

    fn err_line(text: &str) -> (usize, String) {
        match deserialize(text) {
            Err(Error::Parse { line, msg }) => (line, msg),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_input() {
        let (line, msg) = err_line(&SAMPLE.replace("B1.2: 100110", "B1.2: 10011"));
        assert_eq!(line, 7);
        assert!(msg.contains("level 1 index 2"), "{msg}");

        let (line, _) = err_line(&SAMPLE.replace("BHNET 1", "BHNET 2"));
        assert_eq!(line, 1);

        let (line, msg) = err_line(&SAMPLE.replace("L1: 3 4 2", "L1: 3 4"));
        assert_eq!(line, 4);
        assert!(msg.contains("telescoping"));

        let (line, msg) = err_line(&SAMPLE.replace("L1: 3 4 2", "L1: 3 5 1"));
        assert_eq!(line, 4);
        assert!(msg.contains("outside"));

        let (line, msg) = err_line(&SAMPLE.replace("n=9", "n=8"));
        assert_eq!(line, 2);
        assert!(msg.contains("n=8"));

        let (_, msg) =
            err_line("BHNET 1\np=4 gamma=2 n=9\nL2: 3\nL1: 3 4 2\nB2.1: 100\nB1.1: 011\n");
        assert!(msg.contains("B1.2"), "{msg}");

        let (line, _) = err_line(&format!("{SAMPLE}junk\n"));
        assert_eq!(line, 9);

        let (line, _) = err_line(&SAMPLE.replace("B1.1: 011", "B1.1: 0x1"));
        assert_eq!(line, 6);
    }
}

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use metricdim::{graph6, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Graph6,
    Edgelist,
}

fn read_source(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
            Ok(text)
        }
    }
}

/// Exactly one graph from a file or stdin.
pub fn read_graph(format: InputFormat, path: Option<&Path>) -> Result<Graph> {
    let text = read_source(path)?;
    match format {
        InputFormat::Graph6 => {
            let lines: Vec<&str> =
                text.lines().map(|l| l.trim().trim_start_matches(">>graph6<<")).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [one] => graph6::decode(one).context("parsing graph6"),
                [] => bail!("no graph6 line in input"),
                _ => bail!("expected one graph6 line, found {}", lines.len()),
            }
        }
        InputFormat::Edgelist => Graph::parse_edge_list(&text).context("parsing edge list"),
    }
}

/// `"0,3"` or `"0 3"`; the empty string is the empty set.
pub fn parse_landmarks(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad landmark id {t:?}")))
        .collect()
}

/// `"3"`, `"2..5"`, `"2..=5"` (both inclusive) or `"1,3,7"`.
pub fn parse_range(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let b = b.trim_start_matches('=');
        let (a, b): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
        if a > b {
            bail!("empty range {text:?}");
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|t| t.trim().parse::<u32>().with_context(|| format!("bad value {t:?}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..4").unwrap(), [2, 3, 4]);
        assert_eq!(parse_range("2..=4").unwrap(), [2, 3, 4]);
        assert_eq!(parse_range("5").unwrap(), [5]);
        assert_eq!(parse_range("1,3").unwrap(), [1, 3]);
        assert!(parse_range("4..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn landmarks() {
        assert_eq!(parse_landmarks("0,3").unwrap(), [0, 3]);
        assert_eq!(parse_landmarks(" 1 2 ").unwrap(), [1, 2]);
        assert!(parse_landmarks("").unwrap().is_empty());
        assert!(parse_landmarks("a").is_err());
    }
}

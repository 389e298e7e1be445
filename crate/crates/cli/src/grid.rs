//! The `--grid` syntax: `td=LIST;fd=LIST;seeds=SEEDS`, where `LIST` is
//! either comma-separated values or `start:end:step` (inclusive) and
//! `SEEDS` is a count `N` (seeds `0..N`) or a range `a..b`.

use std::ops::Range;

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub td: Vec<f64>,
    pub fd: Vec<f64>,
    pub seeds: Range<u64>,
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    let num =
        |s: &str| -> Result<f64> { s.trim().parse().with_context(|| format!("`{s}` in `{key}` is not a number")) };
    let parts: Vec<&str> = value.split(':').collect();
    let out = match parts[..] {
        [single] => single.split(',').map(num).collect::<Result<Vec<_>>>()?,
        [start, end, step] => {
            let (start, end, step) = (num(start)?, num(end)?, num(step)?);
            if step <= 0.0 || end < start {
                bail!("range `{value}` in `{key}` is empty or has a nonpositive step");
            }
            let count = ((end - start) / step + 1e-9).floor() as usize + 1;
            // Round to kill float drift in the CSV.
            (0..count).map(|i| ((start + i as f64 * step) * 1e6).round() / 1e6).collect()
        }
        _ => bail!("`{value}` in `{key}` is neither a list nor start:end:step"),
    };
    if out.is_empty() || out.iter().any(|x| !x.is_finite() || *x < 0.0) {
        bail!("`{key}` needs nonnegative finite values");
    }
    Ok(out)
}

fn parse_seeds(value: &str) -> Result<Range<u64>> {
    let range = match value.split_once("..") {
        Some((a, b)) => a.trim().parse()?..b.trim().parse()?,
        None => 0..value.trim().parse().with_context(|| format!("bad seed count `{value}`"))?,
    };
    if range.is_empty() {
        bail!("seed range `{value}` is empty");
    }
    Ok(range)
}

impl std::str::FromStr for Grid {
    type Err = anyhow::Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (mut td, mut fd, mut seeds) = (None, None, None);
        for part in spec.split(';').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part.split_once('=').with_context(|| format!("grid entry `{part}` has no `=`"))?;
            match key.trim() {
                "td" => td = Some(parse_list("td", value)?),
                "fd" => fd = Some(parse_list("fd", value)?),
                "seeds" => seeds = Some(parse_seeds(value)?),
                other => bail!("unknown grid key `{other}` (expected td, fd or seeds)"),
            }
        }
        Ok(Grid {
            td: td.context("grid lacks `td`")?,
            fd: fd.context("grid lacks `fd`")?,
            seeds: seeds.unwrap_or(0..1),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        let g: Grid = "td=0.5:3.0:0.5;fd=0.1,1;seeds=3..5".parse().unwrap();
        assert_eq!(g.td, vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0]);
        assert_eq!(g.fd, vec![0.1, 1.0]);
        assert_eq!(g.seeds, 3..5);
        let g: Grid = "fd=0.1:1.0:0.1;td=1".parse().unwrap();
        assert_eq!(g.fd.len(), 10);
        assert_eq!(g.fd[2], 0.3);
        assert_eq!(g.seeds, 0..1);
    }

    #[test]
    fn invalid_grids() {
        for bad in ["td=1", "td=1;fd=x", "td=1;fd=1;seeds=0", "td=2:1:1;fd=1", "td=1;fd=1;k=2", "td=1;fd=-1"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}

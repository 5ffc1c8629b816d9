//! Turning command-line flags into graphs, maps and index ranges.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use functidom::functigraph::{
    constant_map, from_permutation, identity_map, ThreeTranslate, VertexMap,
};
use functidom::graphcore::{build_cycle, build_path, build_star_chain, Graph};
use functidom::theorems::sample_maps;
use functidom::Error;

use crate::CliError;

#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// Graph file in the `n <order>` / `e <i> <j>` text format.
    #[arg(long, value_name = "FILE", group = "base")]
    pub graph: Option<PathBuf>,
    /// Cycle C_n.
    #[arg(long, value_name = "N", group = "base")]
    pub cycle: Option<usize>,
    /// Path P_n.
    #[arg(long, value_name = "N", group = "base")]
    pub path: Option<usize>,
    /// Chain of A stars K_{1,4} with consecutive centers joined.
    #[arg(long = "star-chain", value_name = "A", group = "base")]
    pub star_chain: Option<usize>,
}

impl GraphArgs {
    pub fn build(&self, fallback_cycle: Option<usize>) -> Result<Graph, CliError> {
        if let Some(p) = &self.graph {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            return Ok(Graph::parse_text(&text)?);
        }
        if let Some(n) = self.cycle.or(fallback_cycle) {
            return Ok(build_cycle(n)?);
        }
        if let Some(n) = self.path {
            return Ok(build_path(n)?);
        }
        if let Some(a) = self.star_chain {
            return Ok(build_star_chain(a)?);
        }
        Err(CliError::usage(
            "give a base graph: --graph, --cycle, --path or --star-chain",
        ))
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct MapArgs {
    /// Map file in the `f <n> : t0 t1 ...` text format (0-based targets).
    #[arg(long = "map", value_name = "FILE", group = "mapsrc")]
    pub map_file: Option<PathBuf>,
    /// Three-translate tilde `a,b,c` (1-based), expanded over --k blocks.
    #[arg(long, value_name = "A,B,C", group = "mapsrc")]
    pub tilde: Option<String>,
    /// Identity map.
    #[arg(long = "id", group = "mapsrc")]
    pub identity: bool,
    /// Constant map onto v_T (1-based).
    #[arg(long = "const", value_name = "T", group = "mapsrc")]
    pub constant: Option<usize>,
    /// Permutation given by its 1-based images, e.g. `2,1,3,4`.
    #[arg(long, value_name = "LIST", group = "mapsrc")]
    pub perm: Option<String>,
    /// A uniform random map drawn with --seed.
    #[arg(long = "map-random", group = "mapsrc")]
    pub random: bool,
}

impl MapArgs {
    /// The map on `n` points, or `None` if no map flag was given. `k` is the
    /// block count for --tilde.
    pub fn build(
        &self,
        n: Option<usize>,
        k: Option<usize>,
        seed: u64,
    ) -> Result<Option<VertexMap>, CliError> {
        let need_n = || {
            n.ok_or_else(|| {
                CliError::usage("this map needs the vertex count (--n or a base graph)")
            })
        };
        let map = if let Some(p) = &self.map_file {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            VertexMap::parse_text(&text)?
        } else if let Some(t) = &self.tilde {
            let k = k.ok_or_else(|| CliError::usage("--tilde needs --k"))?;
            ThreeTranslate::parse(t)?.expand(k)?
        } else if self.identity {
            identity_map(need_n()?)?
        } else if let Some(t) = self.constant {
            if t == 0 {
                return Err(CliError::usage("--const takes a 1-based vertex"));
            }
            constant_map(need_n()?, t - 1)?
        } else if let Some(list) = &self.perm {
            from_permutation(&parse_one_based_list(list)?)?
        } else if self.random {
            sample_maps(need_n()?, seed, 1, |_| true).remove(0)
        } else {
            return Ok(None);
        };
        if let Some(n) = n {
            if map.domain_size() != n {
                return Err(Error::InvalidParameter(format!(
                    "map has {} points but the base graph has {n}",
                    map.domain_size()
                ))
                .into());
            }
        }
        Ok(Some(map))
    }
}

fn parse_one_based_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(CliError::usage(format!("bad 1-based entry {t:?} in {s:?}"))),
        })
        .collect()
}

/// Parses `5`, `1..4` (inclusive), or `4,7,10`.
pub fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad number {t:?} in {s:?}"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_range("4,7").unwrap(), vec![4, 7]);
        assert_eq!(parse_range("5").unwrap(), vec![5]);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn maps_from_flags() {
        let args = MapArgs {
            constant: Some(1),
            ..MapArgs::default()
        };
        assert_eq!(
            args.build(Some(3), None, 0).unwrap().unwrap().targets(),
            &[0, 0, 0]
        );
        let args = MapArgs {
            perm: Some("2,1,3".into()),
            ..MapArgs::default()
        };
        assert_eq!(
            args.build(Some(3), None, 0).unwrap().unwrap().targets(),
            &[1, 0, 2]
        );
        let args = MapArgs {
            tilde: Some("2,1,3".into()),
            ..MapArgs::default()
        };
        assert_eq!(
            args.build(Some(6), Some(2), 0).unwrap().unwrap().targets(),
            &[1, 0, 2, 4, 3, 5]
        );
        assert!(args.build(Some(9), Some(2), 0).is_err());
        assert!(MapArgs::default()
            .build(Some(3), None, 0)
            .unwrap()
            .is_none());
    }
}

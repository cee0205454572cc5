//! Where a hypergraph comes from: a file or a named construction.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hypercolor_core::hypergraph::{generate_random_simple, GeneratorConfig};
use hypercolor_core::Hypergraph;

use crate::{rng, Error, Result};

/// Parsed from one of
///
/// * `sunflower:D:K`
/// * `empty:N:K`
/// * `two-edge` (`{0,1,2},{2,3,4}`) or `single-edge` (`{0,1,2}`)
/// * `random:N:K:MAXDEG:SEED`
/// * anything else, taken as a path to an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    File(PathBuf),
    Sunflower { d: usize, k: usize },
    Empty { n: usize, k: usize },
    TwoEdge,
    SingleEdge,
    Random { n: usize, k: usize, max_degree: usize, seed: u64 },
}

impl GraphSource {
    pub fn load(&self) -> Result<Hypergraph> {
        Ok(match self {
            GraphSource::File(path) => return crate::io::read_hypergraph(path),
            GraphSource::Sunflower { d, k } => Hypergraph::sunflower(*d, *k)?,
            GraphSource::Empty { n, k } => Hypergraph::empty(*n, *k)?,
            GraphSource::TwoEdge => Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]])?,
            GraphSource::SingleEdge => Hypergraph::new(3, 3, vec![vec![0, 1, 2]])?,
            GraphSource::Random { n, k, max_degree, seed } => {
                let config = GeneratorConfig::new(*n, *k, *max_degree);
                generate_random_simple(&config, &mut rng::stream(*seed, 0))?
            }
        })
    }
}

fn field<T: FromStr>(spec: &str, parts: &[&str], i: usize) -> Result<T> {
    parts
        .get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Usage(format!("graph spec `{spec}`: field {i} missing or not a number")))
}

impl FromStr for GraphSource {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let arity = |want: usize| -> Result<()> {
            if parts.len() == want {
                Ok(())
            } else {
                Err(Error::Usage(format!("graph spec `{spec}` expects {} fields after `{}`", want - 1, parts[0])))
            }
        };
        Ok(match parts[0] {
            "sunflower" => {
                arity(3)?;
                GraphSource::Sunflower { d: field(spec, &parts, 1)?, k: field(spec, &parts, 2)? }
            }
            "empty" => {
                arity(3)?;
                GraphSource::Empty { n: field(spec, &parts, 1)?, k: field(spec, &parts, 2)? }
            }
            "two-edge" => {
                arity(1)?;
                GraphSource::TwoEdge
            }
            "single-edge" => {
                arity(1)?;
                GraphSource::SingleEdge
            }
            "random" => {
                arity(5)?;
                GraphSource::Random {
                    n: field(spec, &parts, 1)?,
                    k: field(spec, &parts, 2)?,
                    max_degree: field(spec, &parts, 3)?,
                    seed: field(spec, &parts, 4)?,
                }
            }
            _ => GraphSource::File(PathBuf::from(spec)),
        })
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File(p) => write!(f, "{}", p.display()),
            GraphSource::Sunflower { d, k } => write!(f, "sunflower:{d}:{k}"),
            GraphSource::Empty { n, k } => write!(f, "empty:{n}:{k}"),
            GraphSource::TwoEdge => f.write_str("two-edge"),
            GraphSource::SingleEdge => f.write_str("single-edge"),
            GraphSource::Random { n, k, max_degree, seed } => write!(f, "random:{n}:{k}:{max_degree}:{seed}"),
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::hypergraph::{HyperedgeInput, PlainHypergraph, VertexId};

/// Distribution of hyperedge cardinalities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardinalityDist {
    Fixed(usize),
    /// Uniform over `min..=max`.
    Uniform {
        min: usize,
        max: usize,
    },
    /// `P(c) ∝ c^-exponent` over `min..=max`.
    PowerLaw {
        min: usize,
        max: usize,
        exponent: f64,
    },
}

impl CardinalityDist {
    fn bounds(&self) -> (usize, usize) {
        match *self {
            CardinalityDist::Fixed(c) => (c, c),
            CardinalityDist::Uniform { min, max } | CardinalityDist::PowerLaw { min, max, .. } => (min, max),
        }
    }
}

impl fmt::Display for CardinalityDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalityDist::Fixed(c) => write!(f, "fixed:{c}"),
            CardinalityDist::Uniform { min, max } => write!(f, "uniform:{min}:{max}"),
            CardinalityDist::PowerLaw { min, max, exponent } => write!(f, "powerlaw:{min}:{max}:{exponent}"),
        }
    }
}

/// Parses `fixed:C`, `uniform:MIN:MAX` or `powerlaw:MIN:MAX:EXP`.
impl FromStr for CardinalityDist {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::Usage(format!("invalid cardinality distribution {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let int = |i: usize| parts[i].parse::<usize>().map_err(|_| bad());
        match (parts[0], parts.len()) {
            ("fixed", 2) => Ok(CardinalityDist::Fixed(int(1)?)),
            ("uniform", 3) => Ok(CardinalityDist::Uniform { min: int(1)?, max: int(2)? }),
            ("powerlaw", 4) => Ok(CardinalityDist::PowerLaw {
                min: int(1)?,
                max: int(2)?,
                exponent: parts[3].parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub num_vertices: usize,
    pub num_hyperedges: usize,
    pub cardinality: CardinalityDist,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let (min, max) = self.cardinality.bounds();
        let bad = |m: String| Err(HarnessError::Usage(m));
        if min == 0 || min > max {
            return bad(format!("cardinality bounds must satisfy 1 <= min <= max, got {min}..={max}"));
        }
        if max > self.num_vertices {
            return bad(format!("cardinality {max} exceeds vertex count {}", self.num_vertices));
        }
        if let CardinalityDist::PowerLaw { exponent, .. } = self.cardinality {
            if !exponent.is_finite() {
                return bad(format!("power-law exponent must be finite, got {exponent}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedShape {
    pub num_vertices: usize,
    pub num_hyperedges: usize,
    pub bipartite_edges: usize,
    pub max_degree: usize,
    pub max_cardinality: usize,
    /// Vertices that ended up in no hyperedge.
    pub isolated_vertices: usize,
}

/// Random hypergraph over vertices `0..num_vertices`. Members of each
/// hyperedge are drawn uniformly without replacement, so no hyperedge is empty
/// and none repeats a vertex. Every vertex is present, possibly isolated.
pub fn generate(cfg: &GeneratorConfig) -> Result<(PlainHypergraph, GeneratedShape), HarnessError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (min, max) = cfg.cardinality.bounds();
    let power = match cfg.cardinality {
        CardinalityDist::PowerLaw { exponent, .. } => {
            let weights = (min..=max).map(|c| (c as f64).powf(-exponent));
            Some(WeightedIndex::new(weights).map_err(|e| HarnessError::Usage(e.to_string()))?)
        }
        _ => None,
    };
    let inputs: Vec<HyperedgeInput> = (0..cfg.num_hyperedges)
        .map(|_| {
            let card = match &power {
                Some(w) => min + w.sample(&mut rng),
                None => rng.gen_range(min..=max),
            };
            let mut members = sample(&mut rng, cfg.num_vertices, card).into_vec();
            members.sort_unstable();
            HyperedgeInput::new(members.into_iter().map(|m| m as u64))
        })
        .collect();
    let all: BTreeMap<VertexId, ()> = (0..cfg.num_vertices as u64).map(|v| (VertexId(v), ())).collect();
    let (h, _) = PlainHypergraph::build(inputs, Some(all))?;
    let t = h.topology();
    let shape = GeneratedShape {
        num_vertices: h.num_vertices(),
        num_hyperedges: h.num_hyperedges(),
        bipartite_edges: h.num_bipartite_edges(),
        max_degree: h.max_degree(),
        max_cardinality: h.max_cardinality(),
        isolated_vertices: (0..t.num_vertices()).filter(|&i| t.degree_at(i) == 0).count(),
    };
    Ok((h, shape))
}

//! JSON document forms for the file formats the CLI reads and writes.
//!
//! Corteges serialize as lists of vertex-name sequences; a chain file is the
//! ordered list of flipped corteges; an order file is the ranked list of
//! corteges; an assignment file is the set of anti-standard corteges.

use serde::{Deserialize, Serialize};

use crate::colorset::ColorSet;
use crate::cortege::{CortegeId, PathSystem};
use crate::cubillage::Cubillage;
use crate::orders::ConvexOrder;
use crate::zonotope::CyclicConfig;
use crate::{Error, Result};

/// One cortege on the wire: its parts as vertex-name sequences.
pub type CortegeDoc = Vec<Vec<String>>;

/// `{"n":4,"d":2,"cubes":[{"X":[2,3],"T":[1,4]},..]}`, optionally with the
/// moment-curve parameters used to build the configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubillageDoc {
    pub n: usize,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<i64>>,
    pub cubes: Vec<CubeDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubeDoc {
    #[serde(rename = "X")]
    pub x: ColorSet,
    #[serde(rename = "T")]
    pub t: ColorSet,
}

impl CubillageDoc {
    pub fn from_cubillage(q: &Cubillage) -> CubillageDoc {
        CubillageDoc {
            n: q.n(),
            d: q.dim(),
            t: Some(q.config().params().to_vec()),
            cubes: q.cubes().map(|(t, x)| CubeDoc { x, t }).collect(),
        }
    }

    pub fn config(&self) -> Result<CyclicConfig> {
        match &self.t {
            Some(t) => {
                if t.len() != self.n {
                    return Err(Error::InvalidInput(format!(
                        "{} parameters for n = {}",
                        t.len(),
                        self.n
                    )));
                }
                CyclicConfig::veronese(t, self.d)
            }
            None => CyclicConfig::standard(self.n, self.d),
        }
    }

    pub fn cube_list(&self) -> Vec<(ColorSet, ColorSet)> {
        self.cubes.iter().map(|c| (c.t, c.x)).collect()
    }

    pub fn to_cubillage(&self) -> Result<Cubillage> {
        Cubillage::new(self.config()?, self.cube_list())
    }
}

/// Converts ids to wire corteges.
pub fn corteges_to_doc(sys: &PathSystem, k: usize, ids: &[CortegeId]) -> Vec<CortegeDoc> {
    ids.iter()
        .map(|&id| sys.cortege_to_names(&sys.level(k).corteges[id]))
        .collect()
}

/// Parses wire corteges, all of which must live at level `k`.
pub fn corteges_from_doc(sys: &PathSystem, k: usize, docs: &[CortegeDoc]) -> Result<Vec<CortegeId>> {
    docs.iter()
        .map(|doc| {
            let (level, id) = sys.cortege_from_names(doc)?;
            if level != k {
                return Err(Error::InvalidInput(format!(
                    "cortege {doc:?} has {level} parts, expected {k}"
                )));
            }
            Ok(id)
        })
        .collect()
}

/// An order document is the ranked cortege list; build the order back,
/// letting `check_convex` validate it is a permutation.
pub fn order_from_doc(sys: &PathSystem, d: usize, docs: &[CortegeDoc]) -> Result<ConvexOrder> {
    Ok(ConvexOrder {
        d,
        ranking: corteges_from_doc(sys, d - 1, docs)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubillage::Side;
    use crate::digraph::branching_example;
    use crate::Caps;

    #[test]
    fn cubillage_doc_round_trip() {
        let cfg = CyclicConfig::standard(4, 2).unwrap();
        let q = Cubillage::extreme(&cfg, Side::Front).unwrap();
        let doc = CubillageDoc::from_cubillage(&q);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: CubillageDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_cubillage().unwrap(), q);
    }

    #[test]
    fn cortege_doc_round_trip() {
        let sys = PathSystem::new(branching_example(), 2, &Caps::default()).unwrap();
        let ids: Vec<CortegeId> = (0..sys.level(2).count()).collect();
        let docs = corteges_to_doc(&sys, 2, &ids);
        assert_eq!(corteges_from_doc(&sys, 2, &docs).unwrap(), ids);
    }
}

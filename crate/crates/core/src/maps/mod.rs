//! Maps between spaces: coarseness, closeness, resemblance mappings,
//! equivalences, unbounded-displacement witnesses and variation profiles.

mod checks;
mod higson;
mod lemma;
mod pointmap;

pub use checks::{
    asr_map_check, close_check, coarse_check, equivalence_check, identity, image_set, then, CoarseVerdict,
    EquivalenceReport, MapCheckReport, ModulusProfile, PairCheck, Properness,
};
pub use higson::{higson_variation, ValueFn};
pub(crate) use lemma::greedy;
pub use lemma::{defeats_scale, lemma_witness};
pub use pointmap::PointMap;

use crate::spaces::Space;

#[derive(Clone, Debug, PartialEq)]
pub struct MapDescriptor {
    pub map: PointMap,
    pub domain: Space,
    pub codomain: Space,
}

impl MapDescriptor {
    pub fn new(map: PointMap, domain: Space, codomain: Space) -> Self {
        MapDescriptor { map, domain, codomain }
    }
}

//! Scenario files: one command plus its inputs, as JSON. Every object
//! rejects unknown keys.

use serde::Deserialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Alike,
    Bounded,
    CoarseCheck,
    CloseCheck,
    Equivalence,
    Disjoint,
    Normality,
    AxiomsAsr,
    AxiomsProximity,
    Entourage,
    AsdimUpper,
    AsdimLower,
    HigsonProfile,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Alike => "alike",
            Command::Bounded => "bounded",
            Command::CoarseCheck => "coarse-check",
            Command::CloseCheck => "close-check",
            Command::Equivalence => "equivalence",
            Command::Disjoint => "disjoint",
            Command::Normality => "normality",
            Command::AxiomsAsr => "axioms-asr",
            Command::AxiomsProximity => "axioms-proximity",
            Command::Entourage => "entourage",
            Command::AsdimUpper => "asdim-upper",
            Command::AsdimLower => "asdim-lower",
            Command::HigsonProfile => "higson-profile",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub command: Command,
    #[serde(default)]
    pub probe: ProbeDto,
    #[serde(default)]
    pub inputs: Value,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeDto {
    pub radii: Option<Vec<RationalDto>>,
    pub scales: Option<Vec<RationalDto>>,
    pub stability: Option<usize>,
}

/// An integer or a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalDto {
    Int(i64),
    Text(String),
}

/// An integer for points of `Z`, otherwise a coordinate list.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointDto {
    Scalar(i64),
    Coords(Vec<i64>),
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricDto {
    #[default]
    L1,
    Linf,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SpaceDto {
    Integers {},
    Naturals {},
    Lattice {
        dim: usize,
        #[serde(default)]
        metric: MetricDto,
    },
    FreeGroup {
        rank: usize,
    },
    Abelian {
        dim: usize,
        generators: Vec<Vec<i64>>,
    },
    Finite {
        size: usize,
        edges: Vec<(usize, usize, RationalDto)>,
        #[serde(default)]
        basepoint: usize,
    },
    DisjointUnion {
        left: Box<SpaceDto>,
        right: Box<SpaceDto>,
    },
    Subspace {
        parent: Box<SpaceDto>,
        subset: SetDto,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDto {
    /// Missing means unbounded.
    pub lo: Option<RationalDto>,
    pub hi: Option<RationalDto>,
    #[serde(default)]
    pub lo_closed: bool,
    #[serde(default)]
    pub hi_closed: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetDto {
    Empty {},
    Whole {},
    Explicit {
        points: Vec<PointDto>,
    },
    Range {
        lo: Option<i64>,
        hi: Option<i64>,
    },
    Naturals {},
    Evens {},
    Odds {},
    Squares {},
    Progression {
        modulus: i64,
        residues: Vec<i64>,
        min: Option<i64>,
        max: Option<i64>,
    },
    Polynomial {
        coeffs: Vec<i64>,
    },
    Cofinite {
        excluded: Vec<i64>,
    },
    Intervals {
        parts: Vec<IntervalDto>,
    },
    /// Each box is a list of `[lo, hi]` per axis; `null` is unbounded.
    Boxes {
        boxes: Vec<Vec<(Option<i64>, Option<i64>)>>,
    },
    Union {
        parts: Vec<SetDto>,
    },
    Intersection {
        parts: Vec<SetDto>,
    },
    Difference {
        a: Box<SetDto>,
        b: Box<SetDto>,
    },
    Image {
        map: MapDto,
        set: Box<SetDto>,
    },
    Preimage {
        map: MapDto,
        set: Box<SetDto>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MapDto {
    Identity {},
    Scale { k: i64 },
    Translate { by: Vec<i64> },
    Square {},
    FloorDiv { k: i64 },
    IntSqrt {},
    CoordinateProject { axis: usize },
    Constant { point: PointDto },
    Compose { maps: Vec<MapDto> },
    Table { entries: Vec<(PointDto, PointDto)> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDescDto {
    pub map: MapDto,
    pub domain: SpaceDto,
    /// Defaults to the domain.
    pub codomain: Option<SpaceDto>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelDto {
    Metric { space: SpaceDto },
    Ray {},
    DiscreteNaturals {},
    DiscreteFinite {},
    FiniteInfinite {},
    Group { space: SpaceDto },
    Subspace { parent: Box<ModelDto>, subset: SetDto },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum EntourageDto {
    Explicit { pairs: Vec<(PointDto, PointDto)> },
    Diagonal { points: Vec<PointDto> },
    Displacement { space: SpaceDto, bound: RationalDto },
    Graph { map: MapDto, domain: SpaceDto, window: RationalDto },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ValueFnDto {
    Constant { re: RationalDto, im: RationalDto },
    Parity {},
    Reciprocal {},
    Table { entries: Vec<(PointDto, RationalDto, RationalDto)> },
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AsrRelationDto {
    Always {},
    /// `A Δ B` finite; every pair on a finite universe.
    Discrete {},
    EqualSize {},
    /// `A ∩ B ≠ ∅` or both empty.
    Overlap {},
    Subset {},
    HausdorffAtMost {
        space: SpaceDto,
        r: RationalDto,
    },
    Model {
        model: ModelDto,
    },
    /// The related pairs, listed.
    Table {
        pairs: Vec<(Vec<PointDto>, Vec<PointDto>)>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProximityRelationDto {
    Always {},
    Intersection {},
    /// Near unless both sets are empty.
    NotBothEmpty {},
    /// `|A| + |B| >= k`.
    SizeAtLeast {
        k: usize,
    },
    Delta {
        model: ModelDto,
    },
    Table {
        pairs: Vec<(Vec<PointDto>, Vec<PointDto>)>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlikeIn {
    pub model: ModelDto,
    pub a: SetDto,
    pub b: SetDto,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundedIn {
    pub model: ModelDto,
    pub set: SetDto,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoarseIn {
    pub map: MapDescDto,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairOfMapsIn {
    pub f: MapDescDto,
    pub g: MapDescDto,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisjointIn {
    pub space: SpaceDto,
    pub a: SetDto,
    pub b: SetDto,
    pub slope: Option<RationalDto>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalityIn {
    pub space: SpaceDto,
    pub a: SetDto,
    pub b: SetDto,
    /// Defaults to the largest probe radius.
    pub radius: Option<RationalDto>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomsAsrIn {
    pub universe: Vec<PointDto>,
    pub relation: AsrRelationDto,
    #[serde(default)]
    pub mode: Mode,
    pub samples: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomsProximityIn {
    pub universe: Vec<PointDto>,
    pub relation: ProximityRelationDto,
    #[serde(default)]
    pub mode: Mode,
    pub samples: Option<u64>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureDto {
    FiniteImages,
    BoundedFibres,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum EntourageIn {
    AlikeVia {
        space: SpaceDto,
        family: Vec<EntourageDto>,
        a: SetDto,
        b: SetDto,
        radius: Option<RationalDto>,
    },
    InMaximal {
        model: ModelDto,
        entourage: EntourageDto,
        #[serde(default)]
        exhaustive: bool,
    },
    NatStructure {
        structure: StructureDto,
        a: SetDto,
        b: SetDto,
        radius: Option<RationalDto>,
    },
    Compose {
        first: EntourageDto,
        second: EntourageDto,
    },
    Inverse {
        entourage: EntourageDto,
    },
    Image {
        entourage: EntourageDto,
        points: Vec<PointDto>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsdimUpperIn {
    pub space: SpaceDto,
    pub scales: Vec<i64>,
    /// `L = side_factor * r`; 8 when missing.
    pub side_factor: Option<i64>,
    pub window: Option<RationalDto>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsdimLowerIn {
    pub space: SpaceDto,
    /// `[lo, hi]` per axis.
    pub region: Vec<(i64, i64)>,
    pub mesh: i64,
    pub r: i64,
    pub n: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HigsonIn {
    pub space: SpaceDto,
    pub function: ValueFnDto,
    pub entourage: EntourageDto,
    pub radii: Vec<RationalDto>,
    pub horizon: RationalDto,
}

//! JSON schemas for fans, subdivisions, cycles, weights and classes.
//!
//! Serialization is canonical: fans are emitted with rays sorted
//! lexicographically and cones sorted by ray-index set, with every face
//! present. Entry indices refer to that canonical cone order. On input,
//! faces may be omitted; fans are completed and canonicalized on load.
//! Integers are JSON numbers when they fit in an i64 and decimal strings
//! otherwise.

use std::fmt;

use logchow::blowup::Subdivision;
use logchow::chow::{CycleRep, MinkowskiWeight};
use logchow::fan::Fan;
use logchow::lattice::Int;
use logchow::logchow::{LatticePolytope, LogCycleClass, PolytopeClass};
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for SchemaError {}

fn err(msg: impl Into<String>) -> SchemaError {
    SchemaError(msg.into())
}

/// Arbitrary-precision integer bridged to JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(JsonInt(Int::from(v))),
            Raw::Str(s) => s
                .parse::<Int>()
                .map(JsonInt)
                .map_err(|_| D::Error::custom("invalid integer literal")),
        }
    }
}

fn to_json_vec(v: &[Int]) -> Vec<JsonInt> {
    v.iter().map(|x| JsonInt(x.clone())).collect()
}

fn from_json_vec(v: &[JsonInt]) -> Vec<Int> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanJson {
    pub schema_version: u32,
    pub rank: usize,
    pub rays: Vec<Vec<JsonInt>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanJson {
    pub fn from_fan(f: &Fan) -> FanJson {
        FanJson {
            schema_version: SCHEMA_VERSION,
            rank: f.ambient_rank(),
            rays: f.rays().iter().map(|r| to_json_vec(r)).collect(),
            cones: f.cones().to_vec(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan, SchemaError> {
        let rays: Vec<Vec<Int>> = self.rays.iter().map(|r| from_json_vec(r)).collect();
        let mut gens: Vec<Vec<Vec<Int>>> = Vec::new();
        // Keep isolated rays as one-dimensional cones.
        for r in &rays {
            gens.push(vec![r.clone()]);
        }
        for c in &self.cones {
            let mut g = Vec::new();
            for &i in c {
                let r = rays.get(i).ok_or_else(|| err("cone ray index out of range"))?;
                g.push(r.clone());
            }
            gens.push(g);
        }
        Fan::from_cones(self.rank, &gens).map_err(|e| err(format!("invalid fan: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub schema_version: u32,
    pub source: FanJson,
    pub target: FanJson,
    /// Pairs [source cone index, target cone index] in canonical order;
    /// recomputed on load.
    pub cone_map: Vec<(usize, usize)>,
}

impl SubdivisionJson {
    pub fn from_subdivision(s: &Subdivision) -> SubdivisionJson {
        SubdivisionJson {
            schema_version: SCHEMA_VERSION,
            source: FanJson::from_fan(s.source()),
            target: FanJson::from_fan(s.target()),
            cone_map: s.cone_map().iter().enumerate().map(|(i, &t)| (i, t)).collect(),
        }
    }

    pub fn to_subdivision(&self) -> Result<Subdivision, SchemaError> {
        let source = self.source.to_fan()?;
        let target = self.target.to_fan()?;
        Subdivision::between(source, target).map_err(|e| err(format!("invalid subdivision: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycleJson {
    pub schema_version: u32,
    pub fan: FanJson,
    pub kind: String,
    pub dim: usize,
    pub entries: Vec<(usize, JsonInt)>,
}

impl CycleJson {
    pub fn from_cycle(c: &CycleRep) -> CycleJson {
        CycleJson {
            schema_version: SCHEMA_VERSION,
            fan: FanJson::from_fan(c.fan()),
            kind: "cycle".into(),
            dim: c.dim(),
            entries: c.coeffs().iter().map(|(&i, v)| (i, JsonInt(v.clone()))).collect(),
        }
    }

    pub fn to_cycle(&self) -> Result<CycleRep, SchemaError> {
        if self.kind != "cycle" {
            return Err(err("expected kind \"cycle\""));
        }
        let fan = self.fan.to_fan()?;
        CycleRep::new(fan, self.dim, self.entries.iter().map(|(i, v)| (*i, v.0.clone())))
            .map_err(|e| err(format!("invalid cycle: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightJson {
    pub schema_version: u32,
    pub fan: FanJson,
    pub kind: String,
    pub codim: usize,
    pub entries: Vec<(usize, JsonInt)>,
}

impl WeightJson {
    pub fn from_weight(w: &MinkowskiWeight) -> WeightJson {
        WeightJson {
            schema_version: SCHEMA_VERSION,
            fan: FanJson::from_fan(w.fan()),
            kind: "weight".into(),
            codim: w.codim(),
            entries: w.weights().iter().map(|(&i, v)| (i, JsonInt(v.clone()))).collect(),
        }
    }

    pub fn to_weight(&self) -> Result<MinkowskiWeight, SchemaError> {
        if self.kind != "weight" {
            return Err(err("expected kind \"weight\""));
        }
        let fan = self.fan.to_fan()?;
        MinkowskiWeight::new(fan, self.codim, self.entries.iter().map(|(i, v)| (*i, v.0.clone())))
            .map_err(|e| err(format!("invalid weight: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InlineCycleJson {
    pub dim: usize,
    pub entries: Vec<(usize, JsonInt)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InlineWeightJson {
    pub codim: usize,
    pub entries: Vec<(usize, JsonInt)>,
}

/// A log cycle class: its level subdivision bundled with the cycle carried
/// on the level's source fan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogClassJson {
    pub schema_version: u32,
    pub level: SubdivisionJson,
    pub cycle: InlineCycleJson,
}

impl LogClassJson {
    pub fn from_class(c: &LogCycleClass) -> LogClassJson {
        LogClassJson {
            schema_version: SCHEMA_VERSION,
            level: SubdivisionJson::from_subdivision(c.level()),
            cycle: InlineCycleJson {
                dim: c.cycle().dim(),
                entries: c
                    .cycle()
                    .coeffs()
                    .iter()
                    .map(|(&i, v)| (i, JsonInt(v.clone())))
                    .collect(),
            },
        }
    }

    pub fn to_class(&self) -> Result<LogCycleClass, SchemaError> {
        let level = self.level.to_subdivision()?;
        let cycle = CycleRep::new(
            level.source().clone(),
            self.cycle.dim,
            self.cycle.entries.iter().map(|(i, v)| (*i, v.0.clone())),
        )
        .map_err(|e| err(format!("invalid cycle: {e}")))?;
        LogCycleClass::new(level, cycle).map_err(|e| err(format!("invalid class: {e}")))
    }
}

/// A cohomology (weight) class at a level over its base.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightClassJson {
    pub schema_version: u32,
    pub level: SubdivisionJson,
    pub weight: InlineWeightJson,
}

impl WeightClassJson {
    pub fn from_class(c: &PolytopeClass) -> WeightClassJson {
        WeightClassJson {
            schema_version: SCHEMA_VERSION,
            level: SubdivisionJson::from_subdivision(c.level()),
            weight: InlineWeightJson {
                codim: c.weight().codim(),
                entries: c
                    .weight()
                    .weights()
                    .iter()
                    .map(|(&i, v)| (i, JsonInt(v.clone())))
                    .collect(),
            },
        }
    }

    pub fn to_class(&self) -> Result<PolytopeClass, SchemaError> {
        let level = self.level.to_subdivision()?;
        let weight = MinkowskiWeight::new(
            level.source().clone(),
            self.weight.codim,
            self.weight.entries.iter().map(|(i, v)| (*i, v.0.clone())),
        )
        .map_err(|e| err(format!("invalid weight: {e}")))?;
        PolytopeClass::from_weight(level, weight).map_err(|e| err(format!("invalid class: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub schema_version: u32,
    pub rank: usize,
    pub vertices: Vec<Vec<JsonInt>>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &LatticePolytope) -> PolytopeJson {
        PolytopeJson {
            schema_version: SCHEMA_VERSION,
            rank: p.ambient_rank,
            vertices: p.vertices.iter().map(|v| to_json_vec(v)).collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<LatticePolytope, SchemaError> {
        LatticePolytope::new(
            self.rank,
            self.vertices.iter().map(|v| from_json_vec(v)).collect(),
        )
        .map_err(|e| err(format!("invalid polytope: {e}")))
    }
}

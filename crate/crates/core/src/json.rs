//! JSON formats (schema 1) for groups, rings, NIM-reps, near-group solutions
//! and algebra reports.
//!
//! ```text
//! group     {"schema":1, "order":n, "names":[..], "table":[[..]]}
//! ring      {"schema":1, "rank":n, "names":[..], "unit":u, "dual":[..], "coeffs":[[[..]]]}
//! nimrep    {"schema":1, "ring":<ring object or path>, "dim":d, "basis_names":[..], "mats":[[[..]]]}
//! solution  {"schema":1, "group":<group>, "alpha":a, "orbits":[[..]], "C":[[..]]}
//! algebra   {"schema":1, "nimrep":<nimrep>, "base_points":[..], "algebra":{"name":a, ..} | null}
//! ```
//!
//! Lists are wrapped as `{"schema":1, "nimreps":[..]}` or
//! `{"schema":1, "solutions":[..]}`; readers accept either a single object
//! or the wrapper.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{admissible_base_points, algebra_object};
use crate::classify::NearGroupSolution;
use crate::fusion::{ring_from_tensor, FusionError, FusionRing};
use crate::groups::{group_from_table, FiniteGroup, GroupError, Subgroup};
use crate::matrix::Mat;
use crate::nimrep::{verify, NimRep, NimRepError};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u64),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    NimRep(#[from] NimRepError),
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    rank: usize,
    names: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    coeffs: Vec<Vec<Vec<u32>>>,
}

#[derive(Serialize, Deserialize)]
struct NimRepJson {
    ring: Value,
    dim: usize,
    basis_names: Vec<String>,
    mats: Vec<Vec<Vec<u32>>>,
}

#[derive(Serialize, Deserialize)]
struct SolutionJson {
    group: Value,
    alpha: u32,
    orbits: Vec<Vec<usize>>,
    #[serde(rename = "C")]
    c: Vec<Vec<u32>>,
}

fn with_schema(v: impl Serialize) -> Value {
    let mut v = serde_json::to_value(v).expect("plain data serializes");
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn check_schema(v: &Value) -> Result<(), JsonError> {
    match v.get("schema") {
        None => Ok(()),
        Some(s) => match s.as_u64() {
            Some(1) => Ok(()),
            Some(n) => Err(JsonError::Schema(n)),
            None => Err(JsonError::Shape("schema must be an integer".into())),
        },
    }
}

/// The items of a list wrapper `{"<key>": [..]}`, or the value itself.
pub fn items<'a>(v: &'a Value, key: &str) -> Vec<&'a Value> {
    match v.get(key).and_then(Value::as_array) {
        Some(list) => list.iter().collect(),
        None => vec![v],
    }
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    with_schema(GroupJson { order: g.order(), names: g.names().to_vec(), table: g.table_rows() })
}

pub fn group_from_json(v: &Value) -> Result<FiniteGroup, JsonError> {
    check_schema(v)?;
    let g: GroupJson = serde_json::from_value(v.clone())?;
    if g.table.len() != g.order {
        return Err(JsonError::Shape(format!("order {} but {} table rows", g.order, g.table.len())));
    }
    Ok(group_from_table(g.table, g.names)?)
}

pub fn ring_to_json(r: &FusionRing) -> Value {
    with_schema(RingJson {
        rank: r.rank(),
        names: r.names().to_vec(),
        unit: r.unit(),
        dual: r.duals().to_vec(),
        coeffs: r.tensor(),
    })
}

pub fn ring_from_json(v: &Value) -> Result<FusionRing, JsonError> {
    check_schema(v)?;
    let r: RingJson = serde_json::from_value(v.clone())?;
    if r.coeffs.len() != r.rank {
        return Err(JsonError::Shape(format!("rank {} but tensor of size {}", r.rank, r.coeffs.len())));
    }
    Ok(ring_from_tensor(r.names, r.unit, r.dual, r.coeffs)?)
}

pub fn nimrep_to_json(n: &NimRep) -> Value {
    with_schema(NimRepJson {
        ring: ring_to_json(n.ring()),
        dim: n.dim(),
        basis_names: n.basis_names().to_vec(),
        mats: n.mats().iter().map(Mat::rows).collect(),
    })
}

/// `resolve` turns a non-object `ring` field (e.g. a path) into a ring.
pub fn nimrep_from_json_with(
    v: &Value,
    resolve: &dyn Fn(&Value) -> Result<Arc<FusionRing>, JsonError>,
) -> Result<NimRep, JsonError> {
    check_schema(v)?;
    let n: NimRepJson = serde_json::from_value(v.clone())?;
    let ring = if n.ring.is_object() { Arc::new(ring_from_json(&n.ring)?) } else { resolve(&n.ring)? };
    let mats = n
        .mats
        .into_iter()
        .map(|rows| Mat::from_rows(&rows).ok_or_else(|| JsonError::Shape("matrix is not square".into())))
        .collect::<Result<Vec<_>, _>>()?;
    if mats.iter().any(|m| m.dim() != n.dim) {
        return Err(JsonError::Shape(format!("matrices do not have dimension {}", n.dim)));
    }
    Ok(verify(ring, mats, n.basis_names)?)
}

pub fn nimrep_from_json(v: &Value) -> Result<NimRep, JsonError> {
    nimrep_from_json_with(v, &|_| Err(JsonError::Shape("`ring` must be an inline ring object".into())))
}

pub fn nimreps_to_json(list: &[NimRep]) -> Value {
    json!({"schema": SCHEMA, "nimreps": list.iter().map(nimrep_to_json).collect::<Vec<_>>()})
}

pub fn solution_to_json(s: &NearGroupSolution) -> Value {
    with_schema(SolutionJson {
        group: group_to_json(&s.group),
        alpha: s.alpha,
        orbits: s.orbits.iter().map(|h| h.elements().to_vec()).collect(),
        c: s.c.clone(),
    })
}

pub fn solution_from_json(v: &Value) -> Result<NearGroupSolution, JsonError> {
    check_schema(v)?;
    let s: SolutionJson = serde_json::from_value(v.clone())?;
    let group = Arc::new(group_from_json(&s.group)?);
    let orbits = s.orbits.into_iter().map(|h| Subgroup::new(&group, h)).collect::<Result<Vec<_>, _>>()?;
    if s.c.len() != orbits.len() || s.c.iter().any(|r| r.len() != orbits.len()) {
        return Err(JsonError::Shape("C must be p×p for p orbits".into()));
    }
    Ok(NearGroupSolution { alpha: s.alpha, group, orbits, c: s.c })
}

pub fn solutions_to_json(list: &[NearGroupSolution]) -> Value {
    json!({"schema": SCHEMA, "solutions": list.iter().map(solution_to_json).collect::<Vec<_>>()})
}

/// Base points and the algebra object at the least one.
pub fn algebra_report_json(n: &NimRep) -> Value {
    let base_points = admissible_base_points(n);
    let algebra = base_points.first().map(|&m0| {
        let a = algebra_object(n, m0).expect("base point");
        Value::Object(a.terms().into_iter().map(|(name, k)| (name, json!(k))).collect::<Map<_, _>>())
    });
    json!({"schema": SCHEMA, "nimrep": nimrep_to_json(n), "base_points": base_points, "algebra": algebra})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{neargroup_one_orbit, neargroup_to_nimrep};
    use crate::fusion::{group_ring, ising};
    use crate::groups::builtin_group;
    use crate::nimrep::regular_nimrep;

    #[test]
    fn ring_round_trip() {
        let r = ising();
        let v = ring_to_json(&r);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rank"], 3);
        assert_eq!(ring_from_json(&v).unwrap(), r);
    }

    #[test]
    fn nimrep_round_trip() {
        let g = builtin_group("D_3").unwrap();
        let n = regular_nimrep(Arc::new(group_ring(&g)));
        let back = nimrep_from_json(&nimrep_to_json(&n)).unwrap();
        assert_eq!(back, n);
        let list = nimreps_to_json(&[n.clone(), n.clone()]);
        assert_eq!(items(&list, "nimreps").len(), 2);
    }

    #[test]
    fn solution_round_trip() {
        let z3 = builtin_group("Z_3").unwrap();
        for s in neargroup_one_orbit(&z3, 2) {
            let back = solution_from_json(&solution_to_json(&s)).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn rejects_future_schema_and_bad_data() {
        let mut v = ring_to_json(&ising());
        v["schema"] = json!(2);
        assert!(matches!(ring_from_json(&v), Err(JsonError::Schema(2))));
        let mut v = ring_to_json(&ising());
        v["coeffs"][1][1][0] = json!(2);
        assert!(matches!(ring_from_json(&v), Err(JsonError::Fusion(_))));
    }

    #[test]
    fn algebra_report() {
        let z3 = builtin_group("Z_3").unwrap();
        let sol = &neargroup_one_orbit(&z3, 2)[0];
        let n = neargroup_to_nimrep(sol).unwrap();
        let v = algebra_report_json(&n);
        assert!(!v["base_points"].as_array().unwrap().is_empty());
        assert!(v["algebra"].is_object());
    }
}

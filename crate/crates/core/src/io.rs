//! JSON formats for the command line tools.  Exact values (coordinates,
//! weights, offsets) travel as strings `"p/q"` (or `"p"`), with plain JSON
//! integers accepted on input; counts and point indices are JSON numbers,
//! and point indices are one-based in every user-facing document.

use serde_json::{json, Map, Value};

use crate::config::{Cell, PointConfiguration, Subdivision, Weight};
use crate::error::SplitSpanError;
use crate::kernel::{format_rat, parse_rat, rat_int, Int};
use crate::polyhedron::VPolyhedron;
use crate::Rat;

fn bad(msg: impl Into<String>) -> SplitSpanError {
    SplitSpanError::InvalidInput(msg.into())
}

/// One exact number from a JSON value: an integer, or a string `"p/q"`.
pub fn rat_from_value(v: &Value) -> Result<Rat, SplitSpanError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat_int(i))
            } else {
                Err(bad(format!(
                    "number {n} is not an exact integer; write rationals as \"p/q\""
                )))
            }
        }
        Value::String(s) => parse_rat(s),
        other => Err(bad(format!("expected an exact number, found {other}"))),
    }
}

pub fn rat_to_value(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn rats_to_value(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_to_value).collect())
}

pub fn ints_to_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn rat_row(v: &Value, what: &str) -> Result<Vec<Rat>, SplitSpanError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of exact numbers")))?;
    arr.iter().map(rat_from_value).collect()
}

fn rat_rows(v: &Value, what: &str) -> Result<Vec<Vec<Rat>>, SplitSpanError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of coordinate rows")))?;
    arr.iter().map(|row| rat_row(row, what)).collect()
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value, SplitSpanError> {
    v.get(name)
        .ok_or_else(|| bad(format!("missing field `{name}`")))
}

/// A configuration document: `{"points": [[x, y, ...], ...]}`.
pub fn config_from_value(v: &Value) -> Result<PointConfiguration, SplitSpanError> {
    PointConfiguration::new(rat_rows(field(v, "points")?, "points")?)
}

pub fn config_to_value(a: &PointConfiguration) -> Value {
    json!({ "points": a.points().iter().map(|p| rats_to_value(p)).collect::<Vec<_>>() })
}

/// A weight document: `{"weights": [w1, ...]}`, one entry per point.
pub fn weights_from_value(v: &Value, n: usize) -> Result<Weight, SplitSpanError> {
    let w = rat_row(field(v, "weights")?, "weights")?;
    if w.len() != n {
        return Err(bad(format!(
            "weight count {} does not match point count {n}",
            w.len()
        )));
    }
    Ok(w)
}

/// A polytope document: `{"vertices": [[x, y, ...], ...]}`.
pub fn polytope_from_value(v: &Value) -> Result<VPolyhedron, SplitSpanError> {
    let vertices = rat_rows(field(v, "vertices")?, "vertices")?;
    let Some(first) = vertices.first() else {
        return Err(bad("polytope needs at least one vertex"));
    };
    let dim = first.len();
    if vertices.iter().any(|p| p.len() != dim) {
        return Err(bad("polytope vertices have mixed coordinate lengths"));
    }
    Ok(VPolyhedron { dim, vertices, rays: vec![], lineality: vec![] })
}

/// Cells print as sorted one-based index arrays.
pub fn cell_to_value(c: &Cell) -> Value {
    Value::Array(c.iter().map(|&i| json!(i + 1)).collect())
}

pub fn cells_to_value<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> Value {
    Value::Array(cells.into_iter().map(cell_to_value).collect())
}

pub fn subdivision_to_value(s: &Subdivision) -> Value {
    json!({ "maximal_faces": cells_to_value(&s.maximal_faces) })
}

/// A one-based cell from JSON, e.g. `[1, 2, 5, 6, 7]`.
pub fn cell_from_value(v: &Value) -> Result<Cell, SplitSpanError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad("a cell must be an array of one-based point indices"))?;
    let mut out = Cell::new();
    for x in arr {
        let i = x
            .as_u64()
            .filter(|&i| i >= 1)
            .ok_or_else(|| bad(format!("bad point index {x}; indices are one-based")))?;
        out.insert(i as usize - 1);
    }
    Ok(out)
}

/// Deterministic object construction: keys appear in insertion order.
pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::fixtures::{rats, square_with_center};
    use crate::kernel::rat;

    #[test]
    fn rationals_round_trip_through_json() {
        for r in [rat(1, 2), rat(-7, 3), rat(4, 1), rat(0, 5)] {
            assert_eq!(rat_from_value(&rat_to_value(&r)).unwrap(), r);
        }
        assert_eq!(rat_from_value(&json!(-3)).unwrap(), rat(-3, 1));
        assert!(rat_from_value(&json!(0.5)).is_err());
        assert!(rat_from_value(&json!("1/0")).is_err());
        assert!(rat_from_value(&json!([1])).is_err());
    }

    #[test]
    fn config_and_weight_documents() {
        let doc = json!({ "points": [[0, 0], [0, 2], [2, 0], [2, 2], ["1", "1"]] });
        let a = config_from_value(&doc).unwrap();
        assert_eq!(a.points(), square_with_center().points());
        let back = config_to_value(&a);
        assert_eq!(config_from_value(&back).unwrap().points(), a.points());

        let w = weights_from_value(&json!({ "weights": [1, 0, "1/2", 0, -2] }), 5).unwrap();
        assert_eq!(w, vec![rat(1, 1), rat(0, 1), rat(1, 2), rat(0, 1), rat(-2, 1)]);
        assert!(weights_from_value(&json!({ "weights": [1] }), 5).is_err());
        assert!(weights_from_value(&json!({}), 5).is_err());
    }

    #[test]
    fn cells_are_one_based() {
        let c: Cell = [0usize, 1, 4, 5, 6].into_iter().collect();
        assert_eq!(cell_to_value(&c), json!([1, 2, 5, 6, 7]));
        assert_eq!(cell_from_value(&json!([1, 2, 5, 6, 7])).unwrap(), c);
        assert!(cell_from_value(&json!([0])).is_err());
        let s = Subdivision::new(vec![c.clone()]);
        assert_eq!(
            subdivision_to_value(&s),
            json!({ "maximal_faces": [[1, 2, 5, 6, 7]] })
        );
    }

    #[test]
    fn polytope_documents() {
        let doc = json!({ "vertices": [[0, 0], [2, 0], [0, 2]] });
        let p = polytope_from_value(&doc).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.vertices, vec![rats(&[0, 0]), rats(&[2, 0]), rats(&[0, 2])]);
        assert!(polytope_from_value(&json!({ "vertices": [] })).is_err());
        assert!(polytope_from_value(&json!({ "vertices": [[1], [1, 2]] })).is_err());
    }
}

//! JSON codecs for points, group elements, and report envelopes.
//!
//! A configuration point is `{"n", "N", "re", "im"}` with `re`/`im`
//! row-major `(1+n)×N` real arrays; a group element is `{"n",
//! "matrix_re", "matrix_im"}` with `(1+n)×(1+n)` arrays. Numbers are
//! emitted in shortest-roundtrip form, so every finite double survives
//! a write/read cycle bit-for-bit.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::minkowski::{C64, CMat, ConfigPoint, RMat, Tolerance};

/// Row-major nested array of a real matrix.
pub fn rows_json(m: &RMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!(m[(i, j)])).collect()))
            .collect(),
    )
}

/// `{"n", "N", "re", "im"}` for a configuration point.
pub fn config_point_json(z: &ConfigPoint) -> Value {
    json!({
        "n": z.dim_n(),
        "N": z.copies(),
        "re": rows_json(&z.re_matrix()),
        "im": rows_json(&z.im_matrix()),
    })
}

/// `{"n", "matrix_re", "matrix_im"}` for a group element.
pub fn group_element_json(g: &GroupElement) -> Value {
    let re = g.matrix().map(|c| c.re);
    let im = g.matrix().map(|c| c.im);
    json!({
        "n": g.dim_n(),
        "matrix_re": rows_json(&re),
        "matrix_im": rows_json(&im),
    })
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name)
        .ok_or_else(|| Error::InvalidInput(format!("field \"{name}\": missing")))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| Error::InvalidInput(format!("field \"{name}\": expected a nonnegative integer")))
}

/// Row-major real array of the exact shape `rows × cols`.
fn matrix_field(v: &Value, name: &str, rows: usize, cols: usize) -> Result<RMat> {
    let arr = field(v, name)?
        .as_array()
        .ok_or_else(|| Error::InvalidInput(format!("field \"{name}\": expected an array of rows")))?;
    if arr.len() != rows {
        return Err(Error::InvalidInput(format!(
            "field \"{name}\": expected {rows} rows, got {}",
            arr.len()
        )));
    }
    let mut m = RMat::zeros(rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| {
            Error::InvalidInput(format!("field \"{name}\": row {i} is not an array"))
        })?;
        if row.len() != cols {
            return Err(Error::InvalidInput(format!(
                "field \"{name}\": row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, cell) in row.iter().enumerate() {
            let x = cell.as_f64().ok_or_else(|| {
                Error::InvalidInput(format!("field \"{name}\": entry ({i}, {j}) is not a number"))
            })?;
            if !x.is_finite() {
                return Err(Error::NonFinite(format!("field \"{name}\": entry ({i}, {j})")));
            }
            m[(i, j)] = x;
        }
    }
    Ok(m)
}

/// Parse a configuration point, naming the offending field on error.
pub fn parse_config_point(v: &Value) -> Result<ConfigPoint> {
    let n = usize_field(v, "n")?;
    let copies = usize_field(v, "N")?;
    if n == 0 {
        return Err(Error::InvalidInput("field \"n\": must be ≥ 1".into()));
    }
    if copies == 0 {
        return Err(Error::InvalidInput("field \"N\": must be ≥ 1".into()));
    }
    let re = matrix_field(v, "re", 1 + n, copies)?;
    let im = matrix_field(v, "im", 1 + n, copies)?;
    let m = CMat::from_fn(1 + n, copies, |i, j| C64::new(re[(i, j)], im[(i, j)]));
    ConfigPoint::new(m)
}

/// Parse and validate a group element, naming the offending field.
pub fn parse_group_element(v: &Value, tol: Tolerance) -> Result<GroupElement> {
    let n = usize_field(v, "n")?;
    if n == 0 {
        return Err(Error::InvalidInput("field \"n\": must be ≥ 1".into()));
    }
    let re = matrix_field(v, "matrix_re", 1 + n, 1 + n)?;
    let im = matrix_field(v, "matrix_im", 1 + n, 1 + n)?;
    let m = CMat::from_fn(1 + n, 1 + n, |i, j| C64::new(re[(i, j)], im[(i, j)]));
    let g = GroupElement::validate(m, tol);
    if !g.is_valid() {
        return Err(Error::InvalidGroupElement(format!(
            "matrix fails ᵗgJg = J (residual {:.3e}) or det g = 1 (error {:.3e})",
            g.residual(),
            g.det_error()
        )));
    }
    Ok(g)
}

/// Stamp a report body with the run's provenance. The timestamp (epoch
/// seconds) is the only non-deterministic field.
pub fn report_envelope(command: &str, seed: Option<u64>, tol: Tolerance, body: Value) -> Value {
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({
        "command": command,
        "version": crate::VERSION,
        "seed": seed,
        "tol_abs": tol.abs,
        "tol_rel": tol.rel,
        "timestamp": timestamp,
        "report": body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    #[test]
    fn config_point_round_trips_bit_for_bit() {
        let mut rng = sample::rng_for(09_0001);
        for _ in 0..25 {
            let z = sample::sample_complex_point(&mut rng, 3, 2, 5.0);
            let v = config_point_json(&z);
            let back = parse_config_point(&v).unwrap();
            assert_eq!(z.matrix(), back.matrix(), "round trip must be exact");
            let reserialized = config_point_json(&back);
            assert_eq!(
                serde_json::to_string(&v).unwrap(),
                serde_json::to_string(&reserialized).unwrap()
            );
        }
    }

    #[test]
    fn parse_errors_name_the_offending_field() {
        let missing_im = json!({"n": 1, "N": 1, "re": [[0.0], [0.0]]});
        let err = parse_config_point(&missing_im).unwrap_err().to_string();
        assert!(err.contains("\"im\""), "got: {err}");

        let zero_copies = json!({"n": 1, "N": 0, "re": [[],[]], "im": [[],[]]});
        let err = parse_config_point(&zero_copies).unwrap_err().to_string();
        assert!(err.contains("\"N\""), "got: {err}");

        let bad_shape = json!({"n": 1, "N": 2, "re": [[0.0, 0.0]], "im": [[0.0, 0.0]]});
        let err = parse_config_point(&bad_shape).unwrap_err().to_string();
        assert!(err.contains("\"re\""), "got: {err}");

        let non_number = json!({"n": 1, "N": 1, "re": [["x"], [0.0]], "im": [[0.0], [0.0]]});
        let err = parse_config_point(&non_number).unwrap_err().to_string();
        assert!(err.contains("\"re\"") && err.contains("(0, 0)"), "got: {err}");
    }

    #[test]
    fn group_element_round_trip_and_rejection() {
        let g = crate::group::random_group_element(09_0002, 2, 0.4, crate::group::Realness::Complex);
        let v = group_element_json(&g);
        let back = parse_group_element(&v, Tolerance::default()).unwrap();
        assert_eq!(g.matrix(), back.matrix());

        let mut bad = g.matrix().clone();
        bad[(0, 0)] += C64::new(0.5, 0.0);
        let bad_el = json!({
            "n": 2,
            "matrix_re": rows_json(&bad.map(|c| c.re)),
            "matrix_im": rows_json(&bad.map(|c| c.im)),
        });
        assert!(parse_group_element(&bad_el, Tolerance::default()).is_err());
    }
}

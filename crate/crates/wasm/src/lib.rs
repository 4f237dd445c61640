//! Three calculators for the browser page in `www/`. Each returns a JSON
//! string; failures come back as `{"error": "..."}` so the page can show them.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rconf::bott::{bott_cohomology, rho, BottResult};
use rconf::cech::cech_slice;
use rconf::cech::MultiDegree;
use rconf::reconf::{reconf_table, Indexing};
use rconf::weights::Weight;

const MAX_BOTT_N: usize = 12;
const MAX_TABLE_N: usize = 8;
const MAX_TABLE_D: u32 = 20;
const MAX_GRID: i32 = 6;

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Bott's algorithm for `O_F(a)`, `a` given as comma-separated integers.
#[wasm_bindgen]
pub fn bott(weight: &str) -> String {
    wrap((|| {
        let entries = weight
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| format!("not an integer: {t:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.is_empty() || entries.len() > MAX_BOTT_N {
            return Err(format!("weight needs 1 to {MAX_BOTT_N} entries"));
        }
        let n = entries.len();
        let shifted: Vec<i64> = entries.iter().zip(rho(n)).map(|(a, r)| a + r).collect();
        let a = Weight::new(entries);
        let summary = match bott_cohomology(&a) {
            BottResult::Zero => "no cohomology".to_string(),
            BottResult::Cohomology { degree, weight } => {
                format!("H^{degree} = {}(M)", weight.schur_label())
            }
        };
        Ok(json!({ "a_plus_rho": shifted, "result": bott_cohomology(&a), "summary": summary }))
    })())
}

/// Graded `H^0`, `H^1` table for `A^n`; `bundle` selects the bundle grading.
#[wasm_bindgen]
pub fn reconf(n: usize, dmax: u32, bundle: bool) -> String {
    wrap((|| {
        if n > MAX_TABLE_N || dmax > MAX_TABLE_D {
            return Err(format!(
                "the demo handles n <= {MAX_TABLE_N} and dmax <= {MAX_TABLE_D}"
            ));
        }
        let indexing = if bundle {
            Indexing::Bundle
        } else {
            Indexing::Theorem
        };
        let t = reconf_table(n, dmax, indexing).map_err(|e| e.to_string())?;
        serde_json::to_value(&t).map_err(|e| e.to_string())
    })())
}

/// Čech cohomology of `A^2 \ {0}` on the grid `[-bound, bound]^2`: one cell
/// per multidegree with the nonzero `H^i`.
#[wasm_bindgen]
pub fn cech_grid(bound: i32) -> String {
    wrap((|| {
        if !(0..=MAX_GRID).contains(&bound) {
            return Err(format!("bound must be in 0..={MAX_GRID}"));
        }
        let mut rows = Vec::new();
        for b in (-bound..=bound).rev() {
            let mut row = Vec::new();
            for a in -bound..=bound {
                let s = cech_slice(2, &MultiDegree(vec![i64::from(a), i64::from(b)]))
                    .map_err(|e| e.to_string())?;
                let degree = s.cohomology_dims.iter().position(|&h| h > 0);
                row.push(json!({ "m": [a, b], "degree": degree }));
            }
            rows.push(Value::Array(row));
        }
        Ok(json!({ "bound": bound, "rows": rows }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn bott_demo() {
        let v = parse(&bott("0,0,-3,1"));
        assert_eq!(v["summary"], "H^1 = Σ^{0,0,0,-2}(M)");
        assert_eq!(parse(&bott("0,-1,0"))["summary"], "no cohomology");
        assert!(parse(&bott("x"))["error"].is_string());
    }

    #[test]
    fn reconf_demo() {
        let v = parse(&reconf(4, 5, false));
        assert_eq!(v["h0_total"], 15);
        assert_eq!(v["rows"][2]["h1"], 10);
        assert!(parse(&reconf(2, 5, false))["error"].is_string());
    }

    #[test]
    fn cech_demo() {
        let v = parse(&cech_grid(1));
        // top row is b = 1, bottom row b = -1
        assert_eq!(v["rows"][2][0]["m"], json!([-1, -1]));
        assert_eq!(v["rows"][2][0]["degree"], 1);
        assert_eq!(v["rows"][0][2]["degree"], 0);
        assert!(v["rows"][1][0]["degree"].is_null());
    }
}

use serde::Serialize;
use serde_json::{json, Value};

use rconf::bott::{
    bott_cohomology, les_restriction_to_q, rho, sdg_cohomology_on_p, sdg_weight, BottResult,
    GradedCohomology,
};
use rconf::cech::{punctured_affine_table, MAX_N as CECH_MAX_N};
use rconf::killing::{ck_kernel, ck_kernel_dim_formula, so_np2_isomorphism};
use rconf::linalg::same_span;
use rconf::polyspaces::{MonomialBasis, QuadraticForm};
use rconf::reconf::{align, continuity_report, reconf_table, Indexing};
use rconf::weights::{sym_dim, Weight};
use rconf::young_map::symmetrizer::{symmetrizer_y_matrix, young_symmetrizer_oracle};
use rconf::young_map::{kernel_cokernel_dims, plane_harmonicity_test, y_kernel, y_matrix};
use rconf::{Error, Result};

use crate::Index;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `dim S^d ⊗ S^2` the `ydq` command will rank.
const YDQ_LIMIT: usize = 60_000;
/// Largest number of multidegrees the `cech` command will visit.
const CECH_LIMIT: u64 = 2_000_000;

/// One result in every output format. `failed` marks a completed run whose
/// verification found a mismatch.
pub struct Rendered {
    pub json: Value,
    pub tsv: String,
    pub pretty: String,
    pub failed: bool,
}

fn envelope(command: &str, params: Value, result: impl Serialize) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "result": result,
    })
}

fn usage(module: &'static str, message: impl Into<String>) -> Error {
    Error::precondition(module, message)
}

fn fmt_weight(w: &[i64]) -> String {
    format!(
        "({})",
        w.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    )
}

fn graded_tsv(h: &GradedCohomology) -> String {
    let mut s = String::from("i\tdim\trep\n");
    for (i, p) in h.iter() {
        s.push_str(&format!("{i}\t{}\t{}\n", p.dim, p.label()));
    }
    s
}

fn graded_pretty(title: &str, h: &GradedCohomology) -> String {
    let mut s = format!("{title}\n");
    if h.is_zero() {
        s.push_str("  no cohomology\n");
    }
    for (i, p) in h.iter() {
        s.push_str(&format!("  H^{i} = {}  (dim {})\n", p.label(), p.dim));
    }
    s
}

pub fn bott(
    n: Option<usize>,
    d: Option<u32>,
    b: Option<i64>,
    weight: Option<&str>,
) -> Result<Rendered> {
    let a = match weight {
        Some(text) => {
            let entries = text
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| usage("bott", format!("cannot parse weight {text:?}")))?;
            if entries.is_empty() || n.is_some_and(|n| n != entries.len()) {
                return Err(usage("bott", "weight length must match --n"));
            }
            Weight::new(entries)
        }
        None => {
            let n = n.ok_or_else(|| usage("bott", "give --weight or --n with --d and --b"))?;
            sdg_weight(n, d.unwrap_or(0), b.unwrap_or(1))?
        }
    };
    let n = a.n();
    let shifted: Vec<i64> = a.entries().iter().zip(rho(n)).map(|(x, r)| x + r).collect();
    let result = bott_cohomology(&a);
    let (tsv_row, line) = match &result {
        BottResult::Zero => (
            "zero\t\t".to_string(),
            "no cohomology (repeated entry)".to_string(),
        ),
        BottResult::Cohomology { degree, weight } => (
            format!("cohomology\t{degree}\t{}", fmt_weight(weight.entries())),
            format!(
                "H^{degree} = {}(M), all other groups vanish",
                weight.schur_label()
            ),
        ),
    };
    Ok(Rendered {
        json: envelope(
            "bott",
            json!({ "weight": a.entries() }),
            json!({ "a_plus_rho": shifted, "cohomology": result }),
        ),
        tsv: format!(
            "weight\tkind\tdegree\tresult\n{}\t{tsv_row}\n",
            fmt_weight(a.entries())
        ),
        pretty: format!(
            "a = {}\na + rho = {}\n{line}\n",
            fmt_weight(a.entries()),
            fmt_weight(&shifted)
        ),
        failed: false,
    })
}

pub fn sheaf(n: usize, d: u32, b: i64, quadric: bool) -> Result<Rendered> {
    let (h, title) = if quadric {
        if n < 3 {
            return Err(usage("sheaf", "restriction to the quadric needs n >= 3"));
        }
        (
            les_restriction_to_q(n, d)?,
            format!("H^*(Q, S^{d}(G)(1)|_Q), n = {n}, as GL(M) representations in M*"),
        )
    } else {
        (
            sdg_cohomology_on_p(n, d, b)?,
            format!("H^*(P(M), S^{d}(G)({b})), n = {n}, as GL(M) representations in M*"),
        )
    };
    let params = json!({ "n": n, "d": d, "b": if quadric { 1 } else { b }, "quadric": quadric });
    Ok(Rendered {
        json: envelope("sheaf", params, &h),
        tsv: graded_tsv(&h),
        pretty: graded_pretty(&title, &h),
        failed: false,
    })
}

pub fn cech(n: usize, bound: i64, oracle: bool) -> Result<Rendered> {
    if n == 0 || n > CECH_MAX_N {
        return Err(usage("cech", format!("need 1 <= n <= {CECH_MAX_N}")));
    }
    if bound < 0 {
        return Err(usage("cech", "--box must be nonnegative"));
    }
    let visits = (2 * bound as u64 + 1)
        .checked_pow(n as u32)
        .filter(|&v| v <= CECH_LIMIT);
    if visits.is_none() {
        return Err(usage(
            "cech",
            format!("box of {n} dimensions with bound {bound} exceeds {CECH_LIMIT} multidegrees"),
        ));
    }
    // every slice is already compared with the closed form; the oracle adds
    // the Euler characteristic check
    let t = punctured_affine_table(n, bound)?;
    let mut failed = false;
    if oracle {
        failed = t
            .slices
            .iter()
            .any(|s| s.euler_characteristic() != s.cohomology_euler_characteristic());
    }
    let mut pretty =
        format!("Cech cohomology of A^{n} minus 0, multidegrees in [-{bound},{bound}]^{n}\n");
    let header = ["i", "count"].map(String::from);
    let body: Vec<[String; 2]> = t
        .counts
        .iter()
        .enumerate()
        .map(|(i, c)| [format!("H^{i}"), c.to_string()])
        .collect();
    pretty.push_str(&align(&header, &body));
    Ok(Rendered {
        json: envelope(
            "cech",
            json!({ "n": n, "box": bound, "oracle": oracle }),
            json!({ "counts": t.counts, "by_total_degree": t.totals, "slices": t.slices }),
        ),
        tsv: t.to_tsv(),
        pretty,
        failed,
    })
}

pub fn ydq(n: usize, d: u32, oracle: bool, seed: u64) -> Result<Rendered> {
    if n < 1 {
        return Err(usage("young_map", "need n >= 1"));
    }
    let size = sym_dim(n, i64::from(d)).saturating_mul(sym_dim(n, 2));
    if size > YDQ_LIMIT {
        return Err(usage(
            "young_map",
            format!("dim S^{d} x S^2 = {size} exceeds {YDQ_LIMIT}"),
        ));
    }
    let q = QuadraticForm::standard(n);
    let kc = kernel_cokernel_dims(n, d, &q)?;
    let mut checks = serde_json::Map::new();
    let mut failed = false;
    if oracle {
        if n <= 3 && d + 2 <= 5 && d >= 2 {
            let lambda = Weight::padded(&[i64::from(d), 2], n)?;
            let report = young_symmetrizer_oracle(&lambda, n, &q)?;
            let tensor_kernel = symmetrizer_y_matrix(d, &q)?.kernel();
            let agree = report.y_rank == Some(kc.rank)
                && same_span(&tensor_kernel, &y_matrix(d, &q)?.kernel());
            failed |= !agree;
            checks.insert("symmetrizer_agrees".into(), json!(agree));
        }
        if n >= 2 {
            let kernel = y_kernel(d, &q)?;
            let mut all = true;
            for (k, f) in kernel.iter().enumerate() {
                all &= plane_harmonicity_test(f, &q, 8, seed.wrapping_add(k as u64))?;
            }
            failed |= !all;
            checks.insert("kernel_plane_harmonic".into(), json!(all));
        }
    }
    let mut pretty = format!(
        "y_({d},q) for n = {n}: S^{d} (dim {}) -> Sigma^({d},2)\n  rank {}\n  kernel {}\n  cokernel {}\n",
        sym_dim(n, i64::from(d)),
        kc.rank,
        kc.ker,
        kc.coker
    );
    for (k, v) in &checks {
        pretty.push_str(&format!("  check {k}: {v}\n"));
    }
    Ok(Rendered {
        json: envelope(
            "ydq",
            json!({ "n": n, "d": d, "oracle": oracle, "seed": seed }),
            json!({ "ker": kc.ker, "coker": kc.coker, "rank": kc.rank, "checks": checks }),
        ),
        tsv: format!(
            "n\td\trank\tker\tcoker\n{n}\t{d}\t{}\t{}\t{}\n",
            kc.rank, kc.ker, kc.coker
        ),
        pretty,
        failed,
    })
}

pub fn killing(n: usize, dmax: u32, oracle: bool) -> Result<Rendered> {
    if !(2..=8).contains(&n) || dmax > 12 {
        return Err(usage("killing", "need 2 <= n <= 8 and dmax <= 12"));
    }
    let q = QuadraticForm::standard(n);
    let dims: Vec<usize> = (0..=dmax)
        .map(|d| ck_kernel(n, d, &q).map(|k| k.len()))
        .collect::<Result<_>>()?;
    let mut failed = false;
    if oracle {
        failed = dims
            .iter()
            .enumerate()
            .any(|(d, &k)| k != ck_kernel_dim_formula(n, d as u32));
    }
    let iso = if n >= 3 {
        Some(so_np2_isomorphism(n)?)
    } else {
        None
    };
    let mut pretty = format!("Conformal Killing fields of C^{n} by polynomial degree\n");
    let header = ["d", "dim"].map(String::from);
    let body: Vec<[String; 2]> = dims
        .iter()
        .enumerate()
        .map(|(d, k)| [d.to_string(), k.to_string()])
        .collect();
    pretty.push_str(&align(&header, &body));
    match &iso {
        Some(r) => pretty.push_str(&format!(
            "so({}) check: dim {}, {} brackets matched, {} Jacobi violations\n",
            n + 2,
            r.dim,
            r.checked_pairs,
            r.jacobi_violations
        )),
        None => pretty.push_str("n = 2: infinite-dimensional, two fields in every degree\n"),
    }
    let mut tsv = String::from("d\tdim\n");
    for (d, k) in dims.iter().enumerate() {
        tsv.push_str(&format!("{d}\t{k}\n"));
    }
    Ok(Rendered {
        json: envelope(
            "killing",
            json!({ "n": n, "dmax": dmax, "oracle": oracle }),
            json!({ "dims": dims, "isomorphism": iso }),
        ),
        tsv,
        pretty,
        failed,
    })
}

pub fn reconf(n: usize, dmax: u32, index: Index) -> Result<Rendered> {
    if n > 12 || dmax > 60 {
        return Err(usage("reconf", "need n <= 12 and dmax <= 60"));
    }
    let indexing = match index {
        Index::Theorem => Indexing::Theorem,
        Index::Bundle => Indexing::Bundle,
    };
    let t = reconf_table(n, dmax, indexing)?;
    Ok(Rendered {
        json: envelope(
            "reconf",
            json!({ "n": n, "dmax": dmax, "index": indexing }),
            &t,
        ),
        tsv: t.to_tsv(),
        pretty: t.to_pretty(),
        failed: false,
    })
}

pub fn continuity(ns: &[usize], dmax: u32) -> Result<Rendered> {
    if dmax > 30 {
        return Err(usage("reconf", "need dmax <= 30"));
    }
    let r = continuity_report(ns, dmax)?;
    Ok(Rendered {
        json: envelope("continuity", json!({ "n": ns, "dmax": dmax }), &r),
        tsv: r.to_tsv(),
        pretty: r.to_pretty(),
        failed: false,
    })
}

struct Check {
    name: &'static str,
    run: fn(u64) -> Result<bool>,
}

fn check_bott(_: u64) -> Result<bool> {
    for n in 3..=6 {
        for d in 0..=10 {
            let minus = sdg_cohomology_on_p(n, d, -1)?;
            let plus = sdg_cohomology_on_p(n, d, 1)?;
            let expect_minus: Vec<usize> = if d == 0 { vec![] } else { vec![1] };
            let expect_plus: Vec<usize> = match d {
                0 | 1 => vec![0],
                2 => vec![],
                _ => vec![1],
            };
            if minus.degrees().collect::<Vec<_>>() != expect_minus
                || plus.degrees().collect::<Vec<_>>() != expect_plus
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_h0(_: u64) -> Result<bool> {
    for n in 3..=5 {
        let t = reconf_table(n, 4, Indexing::Theorem)?;
        let q = QuadraticForm::standard(n);
        for r in &t.rows {
            if r.h0 as usize != ck_kernel(n, r.d, &q)?.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_injective(_: u64) -> Result<bool> {
    for (n, dmax) in [(3, 5), (4, 5), (5, 3)] {
        for d in 2..=dmax {
            if kernel_cokernel_dims(n, d, &QuadraticForm::standard(n))?.ker != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_n2(_: u64) -> Result<bool> {
    let q = QuadraticForm::standard(2);
    for d in 2..=6 {
        let kc = kernel_cokernel_dims(2, d, &q)?;
        if (kc.ker, kc.coker) != (2, 0) {
            return Ok(false);
        }
    }
    Ok((0..=6).all(|d| ck_kernel(2, d, &q).is_ok_and(|k| k.len() == 2)))
}

fn check_cech(_: u64) -> Result<bool> {
    for n in 1..=4 {
        punctured_affine_table(n, 3)?;
    }
    Ok(true)
}

fn check_so(_: u64) -> Result<bool> {
    for n in 3..=5 {
        if so_np2_isomorphism(n)?.jacobi_violations != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_symmetrizer(_: u64) -> Result<bool> {
    for n in [2, 3] {
        let q = QuadraticForm::standard(n);
        let a = y_matrix(2, &q)?;
        let b = symmetrizer_y_matrix(2, &q)?;
        if a.rank() != b.rank() || !same_span(&a.kernel(), &b.kernel()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_planes(seed: u64) -> Result<bool> {
    let q3 = QuadraticForm::standard(3);
    let q2 = QuadraticForm::standard(2);
    for d in [2, 3] {
        let basis = MonomialBasis::new(3, d);
        for i in 0..basis.len() {
            if plane_harmonicity_test(&basis.basis_poly(i), &q3, 4, seed.wrapping_add(i as u64))? {
                return Ok(false);
            }
        }
        for f in y_kernel(d, &q2)? {
            if !plane_harmonicity_test(&f, &q2, 8, seed)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const CHECKS: [Check; 8] = [
    Check {
        name: "bott table on P(M)",
        run: check_bott,
    },
    Check {
        name: "H^0 matches conformal Killing fields",
        run: check_h0,
    },
    Check {
        name: "y_(d,q) injective for n >= 3",
        run: check_injective,
    },
    Check {
        name: "n = 2 kernel and Killing fields",
        run: check_n2,
    },
    Check {
        name: "Cech closed form",
        run: check_cech,
    },
    Check {
        name: "so(n+2) structure constants",
        run: check_so,
    },
    Check {
        name: "symmetrizer agrees with projector",
        run: check_symmetrizer,
    },
    Check {
        name: "plane harmonicity",
        run: check_planes,
    },
];

pub fn selftest(seed: u64) -> Result<Rendered> {
    let mut results = Vec::new();
    for c in &CHECKS {
        let outcome = match (c.run)(seed) {
            Ok(true) => "pass".to_string(),
            Ok(false) => "fail".to_string(),
            Err(e) => format!("fail: {e}"),
        };
        results.push((c.name, outcome));
    }
    let failed = results.iter().any(|(_, o)| o != "pass");
    let mut tsv = String::from("check\tstatus\n");
    let mut pretty = String::new();
    for (name, o) in &results {
        tsv.push_str(&format!("{name}\t{o}\n"));
        pretty.push_str(&format!(
            "{:<4} {name}\n",
            if o == "pass" { "ok" } else { "FAIL" }
        ));
    }
    let json_results: Vec<Value> = results
        .iter()
        .map(|(n, o)| json!({ "check": n, "status": o }))
        .collect();
    Ok(Rendered {
        json: envelope("selftest", json!({ "seed": seed }), json_results),
        tsv,
        pretty,
        failed,
    })
}

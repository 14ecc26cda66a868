//! Randomized self-checks on generated graphs.

use ceresa_core::ceresa::{basepoint_dependence_check, torsion, Which};
use ceresa_core::fixtures::{random_bridgeless, random_tree};
use ceresa_core::jacobian::binomial;
use ceresa_core::linalg::lattice_rank;
use ceresa_core::morita::compare_morita_ceresa;
use ceresa_core::JacobianData;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::document::GraphDocument;
use crate::error::CliError;

struct Check {
    name: &'static str,
    ok: bool,
}

fn checks(jd: &JacobianData, other: &JacobianData) -> Result<Vec<Check>, CliError> {
    let g = jd.genus();
    let n = jd.graph().vertex_count();
    let mut basepoints = true;
    for a in 0..n {
        for b in 0..n {
            basepoints &= basepoint_dependence_check(jd, a, b)?.holds;
        }
    }
    let wmp = lattice_rank(&jd.lattice_l(1, 0)?) == g && lattice_rank(&jd.lattice_l(2, 1)?) == g * binomial(g, 2);
    let trees = torsion(jd, Which::Unpointed)? == torsion(other, Which::Unpointed)?
        && torsion(jd, Which::Pointed(0))? == torsion(other, Which::Pointed(0))?;
    let mut out = vec![
        Check { name: "basepoint_dependence", ok: basepoints },
        Check { name: "weight_monodromy", ok: wmp },
        Check { name: "tree_independence", ok: trees },
    ];
    if jd.graph().has_integral_lengths() {
        out.push(Check { name: "morita_comparison", ok: compare_morita_ceresa(jd)?.equal });
    }
    Ok(out)
}

/// Runs the checks on `cases` random graphs of genus at most 4. Returns the
/// report and whether everything passed.
pub fn selftest(seed: u64, cases: usize) -> Result<(Value, bool), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = true;
    let mut report = Vec::new();
    for case in 0..cases {
        let genus = rng.gen_range(1..=4);
        let integral = case % 2 == 0;
        let graph = random_bridgeless(&mut rng, genus, integral);
        let jd = JacobianData::new(&graph, &random_tree(&mut rng, &graph));
        let other = JacobianData::new(&graph, &random_tree(&mut rng, &graph));
        let results = checks(&jd, &other)?;
        let passed = results.iter().all(|c| c.ok);
        all &= passed;
        let named: serde_json::Map<String, Value> = results.iter().map(|c| (c.name.to_string(), c.ok.into())).collect();
        report.push(json!({
            "case": case,
            "genus": genus,
            "graph": GraphDocument::from_graph(&graph, None),
            "checks": named,
            "passed": passed,
        }));
    }
    Ok((json!({ "command": "selftest", "seed": seed.to_string(), "cases": report, "passed": all }), all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let (report, ok) = selftest(5, 4).unwrap();
        assert!(ok, "{report}");
        assert_eq!(selftest(5, 4).unwrap().0, report);
    }
}

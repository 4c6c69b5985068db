//! Topological fault tolerance: ∂-density of the system graph after every
//! possible set of `f` processor failures.
//!
//! Distances are recomputed on the damaged graph `G - F`; a fault can
//! lengthen or cut the routes between survivors.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::clique::delta_density;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default cap on the number of fault sets examined.
pub const DEFAULT_FAULT_SET_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaultReport {
    pub delta: usize,
    pub f: usize,
    pub min_density: usize,
    /// Lexicographically first fault set reaching `min_density`.
    pub witness: VertexSet,
    pub examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToleranceCheck {
    pub tolerant: bool,
    /// First fault set (lexicographically) leaving a ∂-density below `p`.
    pub counterexample: Option<VertexSet>,
    pub examined: u64,
}

/// `C(n, k)`, saturating once it passes `u64::MAX`.
fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

fn check_inputs(g: &Graph, delta: usize, f: usize, cap: u64) -> Result<()> {
    if delta < 1 {
        return Err(Error::validation("reachability delta must be at least 1"));
    }
    if f >= g.order() {
        return Err(Error::validation(format!(
            "fault multiplicity {f} must be below the vertex count {}",
            g.order()
        )));
    }
    if binomial(g.order(), f) > cap as u128 {
        return Err(Error::Resource {
            what: "fault-set count",
            cap,
            hint: "; use a smaller f or the early-exit tolerance check".into(),
        });
    }
    Ok(())
}

fn density_without(g: &Graph, faults: &[usize], delta: usize) -> Result<usize> {
    let damaged = g.remove_vertices(&faults.iter().copied().collect())?;
    Ok(delta_density(&damaged, delta)?.size())
}

/// Worst-case ∂-density over all fault sets of size `f`.
pub fn worst_case_density(g: &Graph, delta: usize, f: usize) -> Result<FaultReport> {
    worst_case_density_capped(g, delta, f, DEFAULT_FAULT_SET_CAP)
}

pub fn worst_case_density_capped(g: &Graph, delta: usize, f: usize, cap: u64) -> Result<FaultReport> {
    check_inputs(g, delta, f, cap)?;
    let sets: Vec<Vec<usize>> = g.vertices().combinations(f).collect();
    let densities = sets
        .par_iter()
        .map(|set| density_without(g, set, delta))
        .collect::<Result<Vec<usize>>>()?;
    // first index of the minimum, independent of scheduling
    let (at, &min_density) = densities
        .iter()
        .enumerate()
        .min_by_key(|&(i, d)| (*d, i))
        .expect("at least one fault set");
    Ok(FaultReport {
        delta,
        f,
        min_density,
        witness: sets[at].iter().copied().collect(),
        examined: sets.len() as u64,
    })
}

/// Whether ∂-density stays at least `p` under every fault set of size `f`;
/// stops at the first counterexample in lexicographic order.
pub fn is_fault_tolerant(g: &Graph, delta: usize, p: usize, f: usize) -> Result<ToleranceCheck> {
    is_fault_tolerant_capped(g, delta, p, f, DEFAULT_FAULT_SET_CAP)
}

pub fn is_fault_tolerant_capped(g: &Graph, delta: usize, p: usize, f: usize, cap: u64) -> Result<ToleranceCheck> {
    if p < 1 {
        return Err(Error::validation("processor count p must be at least 1"));
    }
    check_inputs(g, delta, f, cap)?;
    let mut examined = 0;
    for set in g.vertices().combinations(f) {
        examined += 1;
        if density_without(g, &set, delta)? < p {
            return Ok(ToleranceCheck {
                tolerant: false,
                counterexample: Some(set.into_iter().collect()),
                examined,
            });
        }
    }
    Ok(ToleranceCheck {
        tolerant: true,
        counterexample: None,
        examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    #[test]
    fn fixture_single_faults() {
        let r = worst_case_density(&g6(), 1, 1).unwrap();
        assert_eq!((r.min_density, r.examined), (3, 6));
        assert_eq!(r.witness, VertexSet::from([1]));
        let r = worst_case_density(&g6(), 1, 0).unwrap();
        assert_eq!((r.min_density, r.witness.len(), r.examined), (4, 0, 1));
        assert_eq!(worst_case_density(&complete(4), 1, 1).unwrap().min_density, 3);
    }

    #[test]
    fn tolerance_checks() {
        let ok = is_fault_tolerant(&g6(), 1, 3, 1).unwrap();
        assert!(ok.tolerant && ok.counterexample.is_none());
        assert_eq!(ok.examined, 6);
        let bad = is_fault_tolerant(&g6(), 1, 4, 1).unwrap();
        assert!(!bad.tolerant);
        assert_eq!(bad.counterexample, Some(VertexSet::from([1])));
        assert_eq!(bad.examined, 2);
        assert!(is_fault_tolerant(&ring(5), 1, 1, 4).unwrap().tolerant);
    }

    #[test]
    fn input_validation() {
        assert!(worst_case_density(&g6(), 1, 6).is_err());
        assert!(worst_case_density(&g6(), 0, 1).is_err());
        assert!(is_fault_tolerant(&g6(), 1, 0, 1).is_err());
        let err = worst_case_density_capped(&g6(), 1, 2, 10).unwrap_err();
        assert!(err.is_resource() && err.to_string().contains("early-exit"));
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn faults_sever_routes() {
        // removing the hub of a star splits the leaves apart
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = worst_case_density(&star, 2, 1).unwrap();
        assert_eq!((r.min_density, r.witness.clone()), (1, VertexSet::from([0])));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..8).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..20)
                .prop_map(move |pairs| Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn report_properties(g in arb_graph(), delta in 1usize..3) {
            let phi = delta_density(&g, delta).unwrap().size();
            prop_assert_eq!(worst_case_density(&g, delta, 0).unwrap().min_density, phi);
            let mut prev = phi;
            for f in 1..g.order().min(3) {
                let r = worst_case_density(&g, delta, f).unwrap();
                prop_assert!(r.min_density <= prev);
                prop_assert_eq!(r.witness.len(), f);
                prop_assert_eq!(density_without(&g, r.witness.as_slice(), delta).unwrap(), r.min_density);
                for p in 1..=g.order() {
                    prop_assert_eq!(is_fault_tolerant(&g, delta, p, f).unwrap().tolerant, r.min_density >= p);
                }
                prev = r.min_density;
            }
        }
    }
}

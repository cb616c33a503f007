//! Duality identity suites run by `verify all` and the acceptance tests.

use rayon::prelude::*;

use crate::error::Result;
use crate::exactmath::Int;
use crate::hodge::{chi_omega1, e_polynomial, interior_correspondence_check, VertexAssignmentMode};
use crate::nefpart::{decompose, NefPartition};
use crate::polytope::LatticePolytope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name, passed, detail: detail.into() }
    }
}

pub const SUITES: [&str; 8] = [
    "reflexivity",
    "hull-identities",
    "phi-columns",
    "dual-point-count",
    "e-polynomial",
    "chi-duality",
    "interior-correspondence",
    "decompose-order",
];

fn hull_of(polys: &[LatticePolytope], d: usize) -> Result<LatticePolytope> {
    let pts: Vec<Vec<Int>> = polys.iter().flat_map(|p| p.vertices().to_vec()).collect();
    LatticePolytope::from_points(&pts, d)
}

fn reflexivity(np: &NefPartition) -> Result<SuiteResult> {
    let nabla = LatticePolytope::sum_all(&np.nablas, np.d());
    let ok = np.delta.is_reflexive() && nabla.is_reflexive();
    Ok(SuiteResult::new(
        "reflexivity",
        ok,
        format!("delta {}, nabla {}", np.delta.is_reflexive(), nabla.is_reflexive()),
    ))
}

fn hull_identities(np: &NefPartition, dual: &NefPartition) -> Result<SuiteResult> {
    let d = np.d();
    let nabla_star = hull_of(&np.parts, d)?;
    let delta_star = hull_of(&np.nablas, d)?;
    let first = dual.delta.reflexive_dual()? == nabla_star;
    let second = np.delta_star == delta_star;
    let back = dual.dual()?;
    let involution = back.parts == np.parts && back.nablas == np.nablas;
    Ok(SuiteResult::new(
        "hull-identities",
        first && second && involution,
        format!("nabla* = conv(parts) {first}, delta* = conv(nablas) {second}, involution {involution}"),
    ))
}

fn phi_columns(np: &NefPartition) -> SuiteResult {
    let n = np.delta_star.vertices().len();
    let bad: Vec<usize> = (0..n).filter(|&i| np.phi.iter().map(|row| row[i] as u32).sum::<u32>() != 1).collect();
    let entries_ok = np.phi.iter().flatten().all(|&x| x <= 1);
    SuiteResult::new("phi-columns", bad.is_empty() && entries_ok, format!("{n} columns, {} bad", bad.len()))
}

fn dual_point_count(np: &NefPartition) -> SuiteResult {
    let lhs = np.delta_star.num_points() as i64;
    let rhs = np.nablas.iter().map(|n| n.num_points() as i64).sum::<i64>() - np.r() as i64 + 1;
    SuiteResult::new("dual-point-count", lhs == rhs, format!("l(delta*) = {lhs}, sum l(nabla_i) - r + 1 = {rhs}"))
}

fn e_polynomial_suite(np: &NefPartition, dual: &NefPartition) -> Result<SuiteResult> {
    let e = e_polynomial(np)?.coefficients;
    let f = e_polynomial(dual)?.coefficients;
    let mut rev = e.clone();
    rev.reverse();
    let ok = e == f && rev == f && e.iter().all(|&c| c >= 0);
    Ok(SuiteResult::new("e-polynomial", ok, format!("E = {e:?}, dual E = {f:?}")))
}

fn chi_duality(np: &NefPartition, dual: &NefPartition) -> Result<SuiteResult> {
    let (a, b) = rayon::join(
        || chi_omega1(np, VertexAssignmentMode::Canonical),
        || chi_omega1(dual, VertexAssignmentMode::Canonical),
    );
    let (a, b) = (a?.chi_omega1, b?.chi_omega1);
    let sign = if (np.d() - np.r()).is_multiple_of(2) { 1 } else { -1 };
    Ok(SuiteResult::new("chi-duality", a == sign * b, format!("chi = {a}, dual chi = {b}")))
}

fn correspondence(np: &NefPartition, dual: &NefPartition) -> Result<SuiteResult> {
    let (a, b) = rayon::join(|| interior_correspondence_check(np), || interior_correspondence_check(dual));
    let (a, b) = (a?, b?);
    let detail = match a.first().or(b.first()) {
        None => "no violations in either direction".to_string(),
        Some(v) => format!(
            "{} + {} violations; first: statement {} part {} {}",
            a.len(),
            b.len(),
            v.statement,
            v.part,
            v.detail
        ),
    };
    Ok(SuiteResult::new("interior-correspondence", a.is_empty() && b.is_empty(), detail))
}

fn permuted(np: &NefPartition, perm: &[usize]) -> NefPartition {
    NefPartition {
        delta: np.delta.clone(),
        delta_star: np.delta_star.clone(),
        parts: perm.iter().map(|&i| np.parts[i].clone()).collect(),
        phi: perm.iter().map(|&i| np.phi[i].clone()).collect(),
        nablas: perm.iter().map(|&i| np.nablas[i].clone()).collect(),
    }
}

fn decompose_order(np: &NefPartition) -> Result<SuiteResult> {
    let signature = |np: &NefPartition, perm: &[usize]| -> Result<(Vec<Vec<Vec<Int>>>, Int)> {
        let report = decompose(&permuted(np, perm))?;
        let mut comps: Vec<Vec<Vec<Int>>> = report
            .components
            .iter()
            .map(|c| {
                let mut idx: Vec<Vec<Int>> =
                    c.indices.iter().flat_map(|&i| np.parts[perm[i]].vertices().to_vec()).collect();
                idx.sort();
                idx
            })
            .collect();
        comps.sort();
        Ok((comps, report.sublattice_index))
    };
    let r = np.r();
    let identity: Vec<usize> = (0..r).collect();
    let base = signature(np, &identity)?;
    let mut perms = vec![identity.iter().rev().copied().collect::<Vec<_>>()];
    for s in 1..r {
        perms.push((0..r).map(|i| (i + s) % r).collect());
    }
    for perm in &perms {
        if signature(np, perm)? != base {
            return Ok(SuiteResult::new(
                "decompose-order",
                false,
                format!("permutation {perm:?} changes the decomposition"),
            ));
        }
    }
    Ok(SuiteResult::new(
        "decompose-order",
        true,
        format!("{} components, index {} under {} permutations", base.0.len(), base.1, perms.len() + 1),
    ))
}

/// Runs every suite on `np`; results are in the fixed order of [`SUITES`].
pub fn verify_all(np: &NefPartition) -> Result<Vec<SuiteResult>> {
    let dual = np.dual()?;
    let jobs: Vec<usize> = (0..SUITES.len()).collect();
    let results: Vec<Result<SuiteResult>> = jobs
        .par_iter()
        .map(|&k| match k {
            0 => reflexivity(np),
            1 => hull_identities(np, &dual),
            2 => Ok(phi_columns(np)),
            3 => Ok(dual_point_count(np)),
            4 => e_polynomial_suite(np, &dual),
            5 => chi_duality(np, &dual),
            6 => correspondence(np, &dual),
            _ => decompose_order(np),
        })
        .collect();
    results.into_iter().collect()
}

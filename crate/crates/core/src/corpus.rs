//! Generators for the standard example families.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{int, Int};
use crate::polytope::LatticePolytope;

/// Parts `d_j * Lambda` of the degree-`degrees` complete intersection in `P^d`,
/// `d = sum(degrees) - 1`.
///
/// The rays are `e_1, ..., e_d, -(e_1 + ... + e_d)`; part `j` owns the next
/// `d_j` of them. Its vertices are `b` and `b + d_j e_k`, where `b_i = -1` if
/// ray `i` belongs to part `j` and `0` otherwise.
pub fn pd_partition(degrees: &[u32]) -> Result<Vec<LatticePolytope>> {
    if degrees.is_empty() {
        return Err(Error::precondition("at least one degree is required"));
    }
    if let Some(&bad) = degrees.iter().find(|&&g| g < 2) {
        return Err(Error::precondition(format!("degree {bad} is below 2")));
    }
    let total: u32 = degrees.iter().sum();
    let d = (total - 1) as usize;
    let mut parts = Vec::with_capacity(degrees.len());
    let mut next_ray = 0usize;
    for &deg in degrees {
        let owned = next_ray..next_ray + deg as usize;
        next_ray += deg as usize;
        let base: Vec<Int> = (0..d).map(|i| if owned.contains(&i) { int(-1) } else { Int::zero() }).collect();
        let mut pts = vec![base.clone()];
        for k in 0..d {
            let mut p = base.clone();
            p[k] += deg;
            pts.push(p);
        }
        parts.push(LatticePolytope::from_points(&pts, d)?);
    }
    Ok(parts)
}

/// Puts each reflexive factor into its own block of coordinates.
pub fn product(factors: &[LatticePolytope]) -> Result<Vec<LatticePolytope>> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("at least one factor is required".into()));
    }
    if factors.iter().any(|f| !f.is_reflexive()) {
        return Err(Error::NotReflexive);
    }
    let d: usize = factors.iter().map(|f| f.ambient_dim()).sum();
    let mut offset = 0;
    let mut parts = Vec::with_capacity(factors.len());
    for f in factors {
        let pts: Vec<Vec<Int>> = f
            .vertices()
            .iter()
            .map(|v| {
                let mut p = vec![Int::zero(); d];
                p[offset..offset + v.len()].clone_from_slice(v);
                p
            })
            .collect();
        offset += f.ambient_dim();
        parts.push(LatticePolytope::from_points(&pts, d)?);
    }
    Ok(parts)
}

/// The diamond written as a sum of two segments; not a nef-partition.
pub fn diamond_split() -> Vec<LatticePolytope> {
    vec![
        LatticePolytope::from_i64(&[&[-1, 0], &[0, -1]]).expect("segment"),
        LatticePolytope::from_i64(&[&[0, 0], &[1, 1]]).expect("segment"),
    ]
}

/// Two diamonds in `R^4` over the lattice `Z^4 + Z(1/2, 1/2, 1/2, 1/2)`.
///
/// Coordinates are taken in the basis `(1/2, 1/2, 1/2, 1/2), e_2, e_3, e_4`,
/// so a point `p` becomes `(2 p_1, p_2 - p_1, p_3 - p_1, p_4 - p_1)`.
pub fn half_lattice_example() -> Vec<LatticePolytope> {
    let rebase =
        |p: [i64; 4]| -> Vec<Int> { vec![int(2 * p[0]), int(p[1] - p[0]), int(p[2] - p[0]), int(p[3] - p[0])] };
    let first = [[1, 0, 0, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, -1, 0, 0]];
    let second = [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, -1]];
    [first, second]
        .iter()
        .map(|vs| {
            let pts: Vec<Vec<Int>> = vs.iter().map(|&p| rebase(p)).collect();
            LatticePolytope::from_points(&pts, 4).expect("diamond")
        })
        .collect()
}

/// The sixteen reflexive polygons up to lattice equivalence: the ten with at
/// most six boundary points, then the polars of those with fewer than six.
pub fn reflexive_polygons() -> Vec<LatticePolytope> {
    let small: [&[&[i64]]; 10] = [
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[&[1, 0], &[0, 1], &[-1, -1], &[0, -1]],
        &[&[1, 0], &[0, 1], &[-1, -2]],
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1]],
        &[&[-1, -1], &[1, -1], &[0, 1], &[-1, 0]],
        &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
        &[&[-1, -1], &[1, -1], &[-1, 2]],
        &[&[1, 0], &[0, 1], &[-1, 0], &[-1, -1], &[1, -1]],
        &[&[-1, -1], &[1, -1], &[0, 1], &[-1, 1]],
    ];
    let mut out: Vec<LatticePolytope> =
        small.iter().map(|vs| LatticePolytope::from_i64(vs).expect("polygon")).collect();
    let duals: Vec<LatticePolytope> =
        out.iter().filter(|p| p.num_points() < 7).map(|p| p.reflexive_dual().expect("reflexive polygon")).collect();
    out.extend(duals);
    out
}

/// Degree lists `d_1 <= ... <= d_r`, all `>= 2`, summing to `d + 1` for
/// `3 <= d + 1 <= max_sum`.
pub fn pd_degree_lists(max_sum: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for g in min..=remaining {
            cur.push(g);
            rec(remaining - g, g, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 3..=max_sum {
        rec(total, 2, &mut Vec::new(), &mut out);
    }
    out
}

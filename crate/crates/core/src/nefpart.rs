//! Nef-partitions of reflexive polytopes and their duals.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{lattice_index, saturation_basis, Int, IntMatrix, LatticeIndex};
use crate::polytope::{Face, LatticePolytope};

/// A validated nef-partition `delta = parts[0] + ... + parts[r-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefPartition {
    pub delta: LatticePolytope,
    pub parts: Vec<LatticePolytope>,
    pub delta_star: LatticePolytope,
    /// `phi[j][i]` is the support value of part `j` at vertex `i` of `delta_star`.
    pub phi: Vec<Vec<u8>>,
    pub nablas: Vec<LatticePolytope>,
}

fn part_key(p: &LatticePolytope) -> (usize, &[Vec<Int>]) {
    (p.dim(), p.vertices())
}

/// Sorts parts by dimension and vertex list.
pub fn canonical_order(parts: &mut [LatticePolytope]) {
    parts.sort_by(|a, b| part_key(a).cmp(&part_key(b)));
}

fn nabla_of(delta_star: &LatticePolytope, row: &[u8]) -> LatticePolytope {
    let d = delta_star.ambient_dim();
    let mut pts = vec![vec![Int::zero(); d]];
    pts.extend(row.iter().zip(delta_star.vertices()).filter(|(&p, _)| p == 1).map(|(_, e)| e.clone()));
    LatticePolytope::from_points(&pts, d).expect("nonempty")
}

/// Checks the nef condition and assembles the partition. Error indices
/// refer to the input order of `parts` and to the sorted vertices of `delta*`.
pub fn validate(parts: &[LatticePolytope]) -> Result<NefPartition> {
    let first = parts.first().ok_or_else(|| Error::InvalidInput("a nef-partition needs at least one part".into()))?;
    let d = first.ambient_dim();
    if let Some(p) = parts.iter().find(|p| p.ambient_dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: p.ambient_dim() });
    }
    if let Some(j) = parts.iter().position(|p| p.dim() == 0) {
        return Err(Error::InvalidInput(format!("part {j} is a single point")));
    }
    let delta = LatticePolytope::sum_all(parts, d);
    if !delta.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let delta_star = delta.reflexive_dual()?;

    for (j, part) in parts.iter().enumerate() {
        for (i, e) in delta_star.vertices().iter().enumerate() {
            let v = part.support_value(e);
            if !(v.is_zero() || v.is_one()) {
                return Err(Error::NotNef { part: j, vertex: i, value: v.to_string() });
            }
        }
    }

    let mut parts = parts.to_vec();
    canonical_order(&mut parts);
    let phi: Vec<Vec<u8>> = parts
        .iter()
        .map(|p| delta_star.vertices().iter().map(|e| u8::from(p.support_value(e).is_one())).collect())
        .collect();
    for i in 0..delta_star.vertices().len() {
        let s: u32 = phi.iter().map(|row| row[i] as u32).sum();
        if s != 1 {
            return Err(Error::internal(format!("phi column {i} sums to {s}")));
        }
    }
    let nablas = phi.iter().map(|row| nabla_of(&delta_star, row)).collect();
    Ok(NefPartition { delta, parts, delta_star, phi, nablas })
}

impl NefPartition {
    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn d(&self) -> usize {
        self.delta.ambient_dim()
    }

    /// Minkowski sum of the parts indexed by `subset`; empty gives `{0}`.
    pub fn partial_sum(&self, subset: &[usize]) -> LatticePolytope {
        LatticePolytope::sum_all(subset.iter().map(|&j| &self.parts[j]), self.d())
    }

    /// The dual nef-partition `nabla = nabla_1 + ... + nabla_r`.
    pub fn dual(&self) -> Result<NefPartition> {
        let dual =
            validate(&self.nablas).map_err(|e| Error::internal(format!("dual partition failed to validate: {e}")))?;
        let d = self.d();
        let conv_parts = LatticePolytope::from_points(
            &self.parts.iter().flat_map(|p| p.vertices().to_vec()).collect::<Vec<_>>(),
            d,
        )?;
        if dual.delta_star != conv_parts {
            return Err(Error::internal("dual of nabla differs from the hull of the parts"));
        }
        let conv_nablas = LatticePolytope::from_points(
            &self.nablas.iter().flat_map(|p| p.vertices().to_vec()).collect::<Vec<_>>(),
            d,
        )?;
        if self.delta_star != conv_nablas {
            return Err(Error::internal("dual of delta differs from the hull of the nablas"));
        }
        Ok(dual)
    }

    /// `[Delta_1(v), ..., Delta_r(v)]`, the faces of the parts minimizing `<., v>`.
    pub fn faces_at_boundary_point(&self, v: &[Int]) -> Result<Vec<Face>> {
        if v.iter().all(|x| x.is_zero()) || !self.delta_star.contains(v) {
            return Err(Error::NotOnBoundary("expected a nonzero lattice point of delta*".into()));
        }
        let faces: Vec<Face> = self.parts.iter().map(|p| p.face_in_direction(v)).collect();
        let sum = LatticePolytope::sum_all(faces.iter().map(|f| &f.polytope), self.d());
        if sum != self.delta.face_in_direction(v).polytope {
            return Err(Error::internal("face sum differs from the dual face of the minimal face"));
        }
        Ok(faces)
    }

    /// `nabla_i^0` (nonzero lattice points of each `nabla_i`) and `Delta_i^0`
    /// (nonzero lattice points of each `Delta_i`).
    pub fn support_sets(&self) -> (Vec<PointSet>, Vec<PointSet>) {
        let nonzero = |p: &LatticePolytope| -> Vec<Vec<Int>> {
            p.lattice_points().into_iter().filter(|x| x.iter().any(|c| !c.is_zero())).collect()
        };
        (self.nablas.iter().map(nonzero).collect(), self.parts.iter().map(nonzero).collect())
    }

    /// For each boundary point of `delta*`, every part index `i` with the point in `nabla_i`.
    pub fn vertex_owners(&self) -> Vec<(Vec<Int>, Vec<usize>)> {
        let points = self.delta_star.boundary_lattice_points().expect("delta* is reflexive");
        points
            .into_iter()
            .map(|v| {
                let owners = (0..self.r()).filter(|&i| self.nablas[i].contains(&v)).collect();
                (v, owners)
            })
            .collect()
    }
}

fn set_partitions(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, r: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n - i < r - used {
            return;
        }
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=used.min(r - 1) {
            cur.push(b);
            rec(i + 1, n, r, used.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 {
        rec(0, n, r, 0, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn candidate(
    delta: &LatticePolytope,
    delta_star: &LatticePolytope,
    blocks: &[usize],
    r: usize,
) -> Option<NefPartition> {
    let rows: Vec<Vec<u8>> = (0..r).map(|j| blocks.iter().map(|&b| u8::from(b == j)).collect()).collect();
    let nablas: Vec<LatticePolytope> = rows.iter().map(|row| nabla_of(delta_star, row)).collect();
    let nabla = LatticePolytope::sum_all(&nablas, delta.ambient_dim());
    if !nabla.is_reflexive() {
        return None;
    }
    let nabla_star = nabla.reflexive_dual().ok()?;
    let parts: Vec<LatticePolytope> = nablas
        .iter()
        .map(|nj| {
            let mut row: Vec<u8> = Vec::new();
            for u in nabla_star.vertices() {
                row.push(u8::from(nj.support_value(u).is_one()));
            }
            nabla_of(&nabla_star, &row)
        })
        .collect();
    let np = validate(&parts).ok()?;
    if &np.delta != delta {
        return None;
    }
    let mut expected = rows;
    expected.sort();
    let mut got = np.phi.clone();
    got.sort();
    (expected == got).then_some(np)
}

/// All nef-partitions of `delta` into `r` parts, up to permuting the parts.
pub fn enumerate_partitions(delta: &LatticePolytope, r: usize) -> Result<Vec<NefPartition>> {
    if !delta.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let delta_star = delta.reflexive_dual()?;
    let assignments = set_partitions(delta_star.vertices().len(), r);
    let found: Vec<Option<NefPartition>> =
        assignments.par_iter().map(|blocks| candidate(delta, &delta_star, blocks, r)).collect();
    let mut out: Vec<NefPartition> = found.into_iter().flatten().collect();
    out.sort_by(|a, b| a.parts.iter().map(part_key).cmp(b.parts.iter().map(part_key)));
    out.dedup_by(|a, b| a.parts == b.parts);
    Ok(out)
}

/// Lattice points, one per entry.
pub type PointSet = Vec<Vec<Int>>;

/// One irreducible component of a nef-partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub indices: Vec<usize>,
    pub polytope: LatticePolytope,
    /// Basis of `M ∩ span(polytope)`, one vector per row.
    pub lattice_basis: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub components: Vec<Component>,
    pub sublattice_index: Int,
    pub splits_over_z: bool,
}

fn subsets_of_size(items: &[usize], s: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, s, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, s, 0, &mut Vec::new(), &mut out);
    out
}

/// Splits a nef-partition into irreducible components and measures how far
/// their lattices are from spanning `M`.
pub fn decompose(np: &NefPartition) -> Result<DecompositionReport> {
    let d = np.d();
    let origin = vec![Int::zero(); d];
    let mut remaining: Vec<usize> = (0..np.r()).collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    'outer: while !remaining.is_empty() {
        for s in 1..=remaining.len() {
            for subset in subsets_of_size(&remaining, s) {
                if np.partial_sum(&subset).contains_in_relint(&origin) {
                    remaining.retain(|i| !subset.contains(i));
                    groups.push(subset);
                    continue 'outer;
                }
            }
        }
        return Err(Error::internal("remaining parts do not contain 0 in their relative interior"));
    }
    groups.sort();

    let mut components = Vec::with_capacity(groups.len());
    let mut all_rows: Vec<Vec<Int>> = Vec::new();
    for indices in groups {
        let polytope = np.partial_sum(&indices);
        let basis = saturation_basis(&IntMatrix::from_rows(polytope.vertices(), d));
        all_rows.extend(basis.to_rows());
        components.push(Component { indices, polytope, lattice_basis: basis });
    }
    let total: usize = components.iter().map(|c| c.polytope.dim()).sum();
    if total != d {
        return Err(Error::internal(format!("component dimensions sum to {total}, expected {d}")));
    }
    let sublattice_index = match lattice_index(&IntMatrix::from_rows(&all_rows, d)) {
        LatticeIndex::Finite(i) => i,
        LatticeIndex::Infinite => return Err(Error::internal("component lattices do not span M")),
    };
    let splits_over_z = sublattice_index.is_one();
    Ok(DecompositionReport { components, sublattice_index, splits_over_z })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_partition_counts() {
        assert_eq!(set_partitions(6, 2).len(), 31);
        assert_eq!(set_partitions(4, 1).len(), 1);
        assert_eq!(set_partitions(3, 3).len(), 1);
        assert!(set_partitions(2, 3).is_empty());
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_of_size(&[0, 1, 2], 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}

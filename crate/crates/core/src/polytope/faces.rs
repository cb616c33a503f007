use std::collections::BTreeSet;

use num_traits::Zero;

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::exactmath::{dot, Int};

/// A nonempty face of a parent polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into the parent's sorted vertex list.
    pub vertex_indices: Vec<usize>,
    /// The face is the set of parent points minimizing `<., direction>`.
    pub direction: Vec<Int>,
    pub dim: usize,
    /// The face as a polytope in its own right.
    pub polytope: LatticePolytope,
}

impl LatticePolytope {
    fn face_from_indices(&self, idx: Vec<usize>, direction: Vec<Int>) -> Face {
        let pts: Vec<Vec<Int>> = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        let polytope = LatticePolytope::from_points(&pts, self.ambient_dim).expect("face vertices are valid");
        Face { dim: polytope.dim(), vertex_indices: idx, direction, polytope }
    }

    fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| (0..self.vertices.len()).filter(|&i| f.slack(&self.vertices[i]).is_zero()).collect())
            .collect()
    }

    /// The face where `<., y>` is minimal; `y = 0` gives the whole polytope.
    pub fn face_in_direction(&self, y: &[Int]) -> Face {
        let vals: Vec<Int> = self.vertices.iter().map(|v| dot(v, y)).collect();
        let min = vals.iter().min().expect("polytopes are nonempty").clone();
        let idx: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        self.face_from_indices(idx, y.to_vec())
    }

    /// Every nonempty face including the polytope itself, ordered by
    /// dimension and then by vertex indices.
    pub fn faces(&self) -> Vec<Face> {
        let facet_sets = self.facet_vertex_sets();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert((0..self.vertices.len()).collect());
        let mut queue: Vec<Vec<usize>> = Vec::new();
        for s in &facet_sets {
            if seen.insert(s.clone()) {
                queue.push(s.clone());
            }
        }
        while let Some(s) = queue.pop() {
            for f in &facet_sets {
                let t: Vec<usize> = s.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
                if !t.is_empty() && seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|s| {
                let mut dir = vec![Int::zero(); self.ambient_dim];
                for (f, fs) in self.facets.iter().zip(&facet_sets) {
                    if s.iter().all(|i| fs.binary_search(i).is_ok()) {
                        for (a, n) in dir.iter_mut().zip(&f.normal) {
                            *a += n;
                        }
                    }
                }
                self.face_from_indices(s, dir)
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertex_indices).cmp(&(b.dim, &b.vertex_indices)));
        faces
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<Face> {
        self.faces().into_iter().filter(|f| f.dim == k).collect()
    }

    /// For reflexive `self`, the dual face `{y in self* : <x, y> = -1 on face}`
    /// as a face of [`LatticePolytope::reflexive_dual`].
    pub fn dual_face(&self, face: &Face) -> Result<Face> {
        if face.dim >= self.dim || face.vertex_indices.is_empty() {
            return Err(Error::InvalidInput("dual face needs a proper nonempty face".into()));
        }
        let dual = self.reflexive_dual()?;
        Ok(dual.dual_face_in(face))
    }

    /// Dual face of `face` (a face of `self*`) inside `self`, where `self` is
    /// the dual polytope. Skips the reflexivity round trip.
    pub(crate) fn dual_face_in(&self, face: &Face) -> Face {
        let mut dir = vec![Int::zero(); self.ambient_dim];
        for v in face.polytope.vertices() {
            for (a, x) in dir.iter_mut().zip(v) {
                *a += x;
            }
        }
        self.face_in_direction(&dir)
    }

    /// The unique face containing `v` in its relative interior, for a boundary point `v`.
    pub fn minimal_face_containing(&self, v: &[Int]) -> Result<Face> {
        if !self.contains(v) {
            return Err(Error::NotOnBoundary("point lies outside the polytope".into()));
        }
        let tight: Vec<&super::HalfSpace> = self.facets.iter().filter(|f| f.slack(v).is_zero()).collect();
        if tight.is_empty() {
            return Err(Error::NotOnBoundary("point lies in the relative interior".into()));
        }
        let mut dir = vec![Int::zero(); self.ambient_dim];
        for f in &tight {
            for (a, n) in dir.iter_mut().zip(&f.normal) {
                *a += n;
            }
        }
        let face = self.face_in_direction(&dir);
        debug_assert!(face.polytope.contains_in_relint(v));
        Ok(face)
    }
}

impl Face {
    /// Checks that the vertex subset is exactly the argmin set of the direction.
    pub fn is_consistent_with(&self, parent: &LatticePolytope) -> bool {
        let vals: Vec<Int> = parent.vertices().iter().map(|v| dot(v, &self.direction)).collect();
        let Some(min) = vals.iter().min() else {
            return false;
        };
        let argmin: Vec<usize> = (0..vals.len()).filter(|&i| &vals[i] == min).collect();
        argmin == self.vertex_indices
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn diamond() -> LatticePolytope {
        LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).unwrap()
    }

    #[test]
    fn diamond_face_counts() {
        let d = diamond();
        assert_eq!(d.faces_of_dim(0).len(), 4);
        assert_eq!(d.faces_of_dim(1).len(), 4);
        assert_eq!(d.faces_of_dim(2).len(), 1);
        for f in d.faces() {
            assert!(f.is_consistent_with(&d));
        }
    }

    #[test]
    fn diamond_edge_in_direction() {
        let f = diamond().face_in_direction(&[int(1), int(1)]);
        assert_eq!(f.dim, 1);
        assert_eq!(f.polytope.vertices(), &[vec![int(-1), int(0)], vec![int(0), int(-1)]]);
    }

    #[test]
    fn zero_direction_is_whole() {
        let d = diamond();
        let f = d.face_in_direction(&[int(0), int(0)]);
        assert_eq!(f.polytope, d);
    }

    #[test]
    fn minimal_face_of_square() {
        let sq = LatticePolytope::from_i64(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let f = sq.minimal_face_containing(&[int(1), int(0)]).unwrap();
        assert_eq!(f.dim, 1);
        let v = sq.minimal_face_containing(&[int(1), int(1)]).unwrap();
        assert_eq!(v.dim, 0);
        assert!(sq.minimal_face_containing(&[int(0), int(0)]).is_err());
        assert!(sq.minimal_face_containing(&[int(2), int(0)]).is_err());
    }

    #[test]
    fn dual_face_dimensions() {
        let d = diamond();
        for f in d.faces().into_iter().filter(|f| f.dim < 2) {
            let g = d.dual_face(&f).unwrap();
            assert_eq!(f.dim + g.dim, 1);
        }
        assert!(d.dual_face(&d.face_in_direction(&[int(0), int(0)])).is_err());
    }
}

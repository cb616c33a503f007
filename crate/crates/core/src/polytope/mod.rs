//! Lattice polytopes with exact vertex and facet descriptions.
//!
//! A polytope of intrinsic dimension `k` inside `Z^d` is handled through a
//! unimodular chart: an origin vertex `p0` and a basis of the saturated lattice
//! of its affine span. All inequality work (hulls, point enumeration) happens
//! in the `k` local coordinates and is mapped back afterwards.

mod enumerate;
mod faces;
pub(crate) mod hull;
mod minkowski;

pub use minkowski::SummandWitness;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{dot, int, smith_normal_form, Int, IntMatrix, Rational};

pub use faces::Face;

/// `{x : <x, normal> >= -offset}` with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl HalfSpace {
    /// `<x, normal> + offset`, which is zero exactly on the bounding hyperplane.
    pub fn slack(&self, x: &[Int]) -> Int {
        dot(x, &self.normal) + &self.offset
    }
}

#[derive(Clone)]
struct Chart {
    origin: Vec<Int>,
    /// `d x k`; local coordinates are `(x - origin) * to_local`.
    to_local: Vec<Vec<Int>>,
    /// `k` rows of length `d`; `x = origin + c * basis`.
    basis: Vec<Vec<Int>>,
}

impl Chart {
    fn identity(d: usize) -> Self {
        let unit = |i: usize| (0..d).map(|j| int((i == j) as i64)).collect::<Vec<_>>();
        Chart { origin: vec![Int::zero(); d], to_local: (0..d).map(unit).collect(), basis: (0..d).map(unit).collect() }
    }

    fn local(&self, x: &[Int]) -> Vec<Int> {
        let k = self.basis.len();
        let diff: Vec<Int> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        (0..k).map(|j| diff.iter().zip(&self.to_local).fold(Int::zero(), |acc, (x, row)| acc + x * &row[j])).collect()
    }

    fn ambient(&self, c: &[Int]) -> Vec<Int> {
        let mut x = self.origin.clone();
        for (cj, row) in c.iter().zip(&self.basis) {
            if cj.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(row) {
                *xi += cj * bi;
            }
        }
        x
    }
}

/// A convex lattice polytope in `Z^d`, nonempty by construction.
#[derive(Clone)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Int>>,
    facets: Vec<HalfSpace>,
    /// Pairs `(w, c)` with `<x, w> = c` on the affine span.
    equations: Vec<(Vec<Int>, Int)>,
    dim: usize,
    chart: Chart,
    local_facets: Vec<(Vec<Int>, Int)>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "LatticePolytope(dim {}/{}; {})", self.dim, self.ambient_dim, verts.join(" "))
    }
}

fn dedup_sorted(points: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    pts
}

impl LatticePolytope {
    /// Convex hull of a nonempty list of lattice points.
    pub fn from_points(points: &[Vec<Int>], ambient_dim: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("a polytope needs at least one point".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, got: p.len() });
        }
        let pts = dedup_sorted(points);
        let first = Self::build(&pts, ambient_dim);
        if first.dim < ambient_dim && first.vertices.len() < pts.len() {
            // rebuild so that the chart depends on the vertex set alone
            return Ok(Self::build(&first.vertices, ambient_dim));
        }
        Ok(first)
    }

    /// Convenience constructor from small integer coordinates.
    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        let d = points.first().map_or(0, |p| p.len());
        let pts: Vec<Vec<Int>> = points.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect();
        Self::from_points(&pts, d)
    }

    /// The single point `{0}` in `Z^d`.
    pub fn origin(ambient_dim: usize) -> Self {
        Self::build(&[vec![Int::zero(); ambient_dim]], ambient_dim)
    }

    fn build(pts: &[Vec<Int>], d: usize) -> Self {
        let p0 = pts[0].clone();
        let diffs: Vec<Vec<Int>> = pts[1..].iter().map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect()).collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&diffs, d));
        let k = snf.rank();

        let (chart, equations) = if k == d {
            (Chart::identity(d), Vec::new())
        } else {
            let to_local: Vec<Vec<Int>> = (0..d).map(|i| snf.right.row(i)[..k].to_vec()).collect();
            let basis: Vec<Vec<Int>> = (0..k).map(|i| snf.right_inverse.row(i).to_vec()).collect();
            let equations = (k..d)
                .map(|j| {
                    let w = snf.right.column(j);
                    let c = dot(&p0, &w);
                    (w, c)
                })
                .collect();
            (Chart { origin: p0.clone(), to_local, basis }, equations)
        };

        let local: Vec<Vec<Int>> = pts.iter().map(|p| chart.local(p)).collect();
        let h = hull::full_dim_hull(&local, k);
        let vertices: Vec<Vec<Int>> = h.vertices.iter().map(|&i| pts[i].clone()).collect();

        let mut facets: Vec<HalfSpace> = h
            .facets
            .iter()
            .map(|(l, a_loc)| {
                let normal: Vec<Int> = chart
                    .to_local
                    .iter()
                    .map(|row| row.iter().zip(l).fold(Int::zero(), |acc, (w, x)| acc + w * x))
                    .collect();
                let offset = a_loc - dot(&chart.origin, &normal);
                HalfSpace { normal, offset }
            })
            .collect();
        facets.sort();

        LatticePolytope { ambient_dim: d, vertices, facets, equations, dim: k, chart, local_facets: h.facets }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<Int>] {
        &self.vertices
    }

    /// Facet inequalities, relative to the affine span for lower-dimensional polytopes.
    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn span_equations(&self) -> &[(Vec<Int>, Int)] {
        &self.equations
    }

    /// Intrinsic dimension (of the affine span).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn in_span(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|(w, c)| &dot(x, w) == c)
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        x.len() == self.ambient_dim && self.in_span(x) && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// Relative-interior membership.
    pub fn contains_in_relint(&self, x: &[Int]) -> bool {
        x.len() == self.ambient_dim && self.in_span(x) && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    /// `-min <v, y>` over the polytope.
    pub fn support_value(&self, y: &[Int]) -> Int {
        self.vertices.iter().map(|v| -dot(v, y)).max().expect("polytopes are nonempty")
    }

    pub fn scale(&self, factor: &Int) -> Self {
        assert!(factor.is_positive(), "scale factor must be positive");
        let pts: Vec<Vec<Int>> = self.vertices.iter().map(|v| v.iter().map(|x| x * factor).collect()).collect();
        Self::build(&pts, self.ambient_dim)
    }

    pub fn translate(&self, t: &[Int]) -> Self {
        let pts: Vec<Vec<Int>> = self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        Self::build(&dedup_sorted(&pts), self.ambient_dim)
    }

    /// Reflexive: full-dimensional with every facet at lattice distance one from 0.
    pub fn is_reflexive(&self) -> bool {
        self.is_full_dimensional() && !self.facets.is_empty() && self.facets.iter().all(|f| f.offset == int(1))
    }

    /// The polar `{y : <x, y> >= -1 for x in self}`.
    pub fn polar_dual(&self) -> Result<PolarDual> {
        if !self.is_full_dimensional() || self.facets.iter().any(|f| !f.offset.is_positive()) {
            return Err(Error::OriginNotInterior);
        }
        let mut vertices: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .map(|f| f.normal.iter().map(|n| Rational::new(n.clone(), f.offset.clone())).collect())
            .collect();
        vertices.sort();
        let lattice = vertices.iter().all(|v| v.iter().all(|q| q.is_integer()));
        let polytope = if lattice {
            let pts: Vec<Vec<Int>> = vertices.iter().map(|v| v.iter().map(|q| q.to_integer()).collect()).collect();
            Some(Self::from_points(&pts, self.ambient_dim)?)
        } else {
            None
        };
        Ok(PolarDual { vertices, lattice, polytope })
    }

    /// The polar dual of a reflexive polytope as a lattice polytope.
    pub fn reflexive_dual(&self) -> Result<Self> {
        if !self.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        self.polar_dual()?.polytope.ok_or_else(|| Error::internal("polar of a reflexive polytope is not integral"))
    }

    /// Lattice points of a reflexive polytope other than the origin.
    pub fn boundary_lattice_points(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        Ok(self.lattice_points().into_iter().filter(|p| p.iter().any(|x| !x.is_zero())).collect())
    }
}

/// Result of polar dualization; `polytope` is present exactly when `lattice` is.
#[derive(Clone, Debug)]
pub struct PolarDual {
    pub vertices: Vec<Vec<Rational>>,
    pub lattice: bool,
    pub polytope: Option<LatticePolytope>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> LatticePolytope {
        LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).unwrap()
    }

    #[test]
    fn single_point() {
        let p = LatticePolytope::from_i64(&[&[0, 0]]).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.lattice_points().len(), 1);
        assert_eq!(p.interior_lattice_points().len(), 1);
        assert_eq!(p.b(), 1);
    }

    #[test]
    fn diamond_facets() {
        let d = diamond();
        assert_eq!(d.facets().len(), 4);
        assert!(d.facets().iter().all(|f| f.offset == int(1)));
        assert!(d.is_reflexive());
        assert_eq!(d.support_value(&[int(1), int(0)]), int(1));
    }

    #[test]
    fn redundant_points_are_dropped() {
        let p = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 0]]).unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn polar_of_diamond_is_square() {
        let dual = diamond().polar_dual().unwrap();
        assert!(dual.lattice);
        let sq = LatticePolytope::from_i64(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        assert_eq!(dual.polytope.unwrap(), sq);
    }

    #[test]
    fn polar_with_fractional_vertex() {
        let p = LatticePolytope::from_i64(&[&[2, 0], &[-2, 0], &[0, 1], &[0, -1]]).unwrap();
        let dual = p.polar_dual().unwrap();
        assert!(!dual.lattice);
        assert!(!p.is_reflexive());
        let half = Rational::new(int(1), int(2));
        assert!(dual.vertices.iter().any(|v| v.iter().any(|q| q.abs() == half)));
    }

    #[test]
    fn polar_requires_interior_origin() {
        let t = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(t.polar_dual().unwrap_err(), Error::OriginNotInterior);
        assert!(!t.is_reflexive());
    }

    #[test]
    fn lower_dimensional_segment_in_plane() {
        let s = LatticePolytope::from_i64(&[&[-1, -1], &[2, 2], &[0, 0]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.vertices().len(), 2);
        assert_eq!(s.lattice_points().len(), 4);
        assert_eq!(s.interior_lattice_points().len(), 2);
        assert!(s.contains(&[int(1), int(1)]));
        assert!(!s.contains(&[int(1), int(0)]));
    }

    #[test]
    fn diamond_boundary_points() {
        assert_eq!(diamond().boundary_lattice_points().unwrap().len(), 4);
    }
}

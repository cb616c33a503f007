use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LatticePolytope;
use crate::exactmath::{dot, rank_of_rows, Int, Rational};

/// Certificate that `mu * whole = part + complement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandWitness {
    pub mu: Int,
    pub complement: LatticePolytope,
}

impl LatticePolytope {
    pub fn minkowski_sum(&self, other: &LatticePolytope) -> LatticePolytope {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimensions differ");
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<Int>>());
            }
        }
        LatticePolytope::from_points(&pts, self.ambient_dim).expect("sum of nonempty polytopes")
    }

    /// Minkowski sum of a family; the empty family gives `{0}`.
    pub fn sum_all<'a, I>(polys: I, ambient_dim: usize) -> LatticePolytope
    where
        I: IntoIterator<Item = &'a LatticePolytope>,
    {
        polys.into_iter().fold(LatticePolytope::origin(ambient_dim), |acc, p| acc.minkowski_sum(p))
    }

    /// Decides whether `self` is a Minkowski summand of the full-dimensional
    /// `whole`, returning the least `mu` and the complement when it is.
    pub fn minkowski_summand_of(&self, whole: &LatticePolytope) -> Option<SummandWitness> {
        assert!(whole.is_full_dimensional(), "whole must be full-dimensional");
        assert_eq!(self.ambient_dim, whole.ambient_dim, "ambient dimensions differ");
        let d = whole.ambient_dim;

        let tight: Vec<Vec<usize>> = whole
            .vertices
            .iter()
            .map(|v| (0..whole.facets.len()).filter(|&f| whole.facets[f].slack(v).is_zero()).collect())
            .collect();

        // image of each vertex of `whole` under the normal-fan map to `self`
        let mut image: Vec<Vec<Int>> = Vec::with_capacity(whole.vertices.len());
        for t in &tight {
            let mut y = vec![Int::zero(); d];
            for &f in t {
                for (a, n) in y.iter_mut().zip(&whole.facets[f].normal) {
                    *a += n;
                }
            }
            let face = self.face_in_direction(&y);
            if face.vertex_indices.len() != 1 {
                return None;
            }
            let u = self.vertices[face.vertex_indices[0]].clone();
            for &f in t {
                let n = &whole.facets[f].normal;
                if dot(&u, n) != -self.support_value(n) {
                    return None;
                }
            }
            image.push(u);
        }

        let mut mu = Int::one();
        for i in 0..whole.vertices.len() {
            for j in i + 1..whole.vertices.len() {
                let common: Vec<Vec<Int>> =
                    tight[i].iter().filter(|f| tight[j].contains(f)).map(|&f| whole.facets[f].normal.clone()).collect();
                if common.len() + 1 < d || rank_of_rows(&common, d) != d - 1 {
                    continue;
                }
                let edge: Vec<Int> = whole.vertices[i].iter().zip(&whole.vertices[j]).map(|(a, b)| a - b).collect();
                let img: Vec<Int> = image[i].iter().zip(&image[j]).map(|(a, b)| a - b).collect();
                let pivot = edge.iter().position(|x| !x.is_zero()).expect("distinct vertices");
                let lambda = Rational::new(img[pivot].clone(), edge[pivot].clone());
                let parallel = edge
                    .iter()
                    .zip(&img)
                    .all(|(e, g)| Rational::from_integer(g.clone()) == &lambda * Rational::from_integer(e.clone()));
                if !parallel || lambda.is_negative() {
                    return None;
                }
                let need = lambda.numer().div_ceil(lambda.denom());
                if need > mu {
                    mu = need;
                }
            }
        }

        let target_bound = whole.facets.iter().fold(Int::one(), |p, f| p * f.offset.abs().max(Int::one()));
        let limit = &mu + target_bound.min(Int::from(64));
        while mu <= limit {
            let pts: Vec<Vec<Int>> = whole
                .vertices
                .iter()
                .zip(&image)
                .map(|(v, u)| v.iter().zip(u).map(|(x, y)| &mu * x - y).collect())
                .collect();
            let complement = LatticePolytope::from_points(&pts, d).expect("nonempty");
            if self.minkowski_sum(&complement) == whole.scale(&mu) {
                return Some(SummandWitness { mu, complement });
            }
            mu += 1;
        }
        None
    }
}

//! Lattice points by a coordinate scan in the local chart.
//!
//! Coordinates are fixed one at a time. For each facet the largest value the
//! still-free coordinates can contribute over the bounding box is precomputed,
//! which turns every facet into an interval constraint on the current
//! coordinate.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LatticePolytope;
use crate::exactmath::Int;

struct Scan<'a> {
    facets: &'a [(Vec<Int>, Int)],
    lo: Vec<Int>,
    hi: Vec<Int>,
    /// `rest_max[f][t]`: max of sum over j >= t of normal_j * c_j on the box.
    rest_max: Vec<Vec<Int>>,
    /// Required lower bound on `<c, normal>` per facet.
    bound: Vec<Int>,
}

impl Scan<'_> {
    fn run(&self, partial: &mut Vec<Int>, sums: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
        let t = partial.len();
        let k = self.lo.len();
        if t == k {
            out.push(partial.clone());
            return;
        }
        let mut lo = self.lo[t].clone();
        let mut hi = self.hi[t].clone();
        for (f, (normal, _)) in self.facets.iter().enumerate() {
            let coef = &normal[t];
            if coef.is_zero() {
                continue;
            }
            // need coef * c_t >= bound - sums - rest_max[t + 1]
            let need = &self.bound[f] - &sums[f] - &self.rest_max[f][t + 1];
            if coef.is_positive() {
                let l = need.div_ceil(coef);
                if l > lo {
                    lo = l;
                }
            } else {
                let h = need.div_floor(coef);
                if h < hi {
                    hi = h;
                }
            }
        }
        let mut c = lo;
        while c <= hi {
            for (f, (normal, _)) in self.facets.iter().enumerate() {
                sums[f] += &normal[t] * &c;
            }
            partial.push(c.clone());
            self.run(partial, sums, out);
            partial.pop();
            for (f, (normal, _)) in self.facets.iter().enumerate() {
                sums[f] -= &normal[t] * &c;
            }
            c += 1;
        }
    }
}

impl LatticePolytope {
    fn local_points(&self, strict: bool) -> Vec<Vec<Int>> {
        let k = self.dim;
        let local_verts: Vec<Vec<Int>> = self.vertices.iter().map(|v| self.chart.local(v)).collect();
        let lo: Vec<Int> = (0..k).map(|j| local_verts.iter().map(|v| v[j].clone()).min().unwrap()).collect();
        let hi: Vec<Int> = (0..k).map(|j| local_verts.iter().map(|v| v[j].clone()).max().unwrap()).collect();
        let rest_max: Vec<Vec<Int>> = self
            .local_facets
            .iter()
            .map(|(normal, _)| {
                let mut acc = vec![Int::zero(); k + 1];
                for j in (0..k).rev() {
                    let a = &normal[j] * &lo[j];
                    let b = &normal[j] * &hi[j];
                    acc[j] = &acc[j + 1] + a.max(b);
                }
                acc
            })
            .collect();
        let bound: Vec<Int> = self.local_facets.iter().map(|(_, off)| if strict { -off + 1 } else { -off }).collect();
        let scan = Scan { facets: &self.local_facets, lo, hi, rest_max, bound };
        let mut out = Vec::new();
        scan.run(&mut Vec::with_capacity(k), &mut vec![Int::zero(); self.local_facets.len()], &mut out);
        out
    }

    fn ambient_points(&self, strict: bool) -> Vec<Vec<Int>> {
        let mut pts: Vec<Vec<Int>> = self.local_points(strict).iter().map(|c| self.chart.ambient(c)).collect();
        pts.sort();
        pts
    }

    /// All lattice points, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<Vec<Int>> {
        self.ambient_points(false)
    }

    /// Lattice points of the relative interior, lexicographically sorted.
    /// A point is its own relative interior.
    pub fn interior_lattice_points(&self) -> Vec<Vec<Int>> {
        self.ambient_points(true)
    }

    /// `l(P)`.
    pub fn num_points(&self) -> usize {
        self.local_points(false).len()
    }

    /// `l*(P)`.
    pub fn num_interior_points(&self) -> usize {
        self.local_points(true).len()
    }

    /// `b(P) = (-1)^dim l*(P)`.
    pub fn b(&self) -> i64 {
        let l = self.num_interior_points() as i64;
        if self.dim.is_multiple_of(2) {
            l
        } else {
            -l
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn brute(p: &LatticePolytope, r: i64) -> (usize, usize) {
        let d = p.ambient_dim();
        let mut all = 0;
        let mut inner = 0;
        let mut x = vec![-r; d];
        loop {
            let v: Vec<Int> = x.iter().map(|&a| int(a)).collect();
            all += p.contains(&v) as usize;
            inner += p.contains_in_relint(&v) as usize;
            let mut i = 0;
            while i < d && x[i] == r {
                x[i] = -r;
                i += 1;
            }
            if i == d {
                break;
            }
            x[i] += 1;
        }
        (all, inner)
    }

    #[test]
    fn matches_brute_force_on_skew_triangle() {
        let t = LatticePolytope::from_i64(&[&[-3, 1], &[2, -2], &[1, 3]]).unwrap();
        assert_eq!((t.num_points(), t.num_interior_points()), brute(&t, 4));
    }

    #[test]
    fn lower_dimensional_triangle_in_space() {
        let t = LatticePolytope::from_i64(&[&[0, 0, 0], &[2, 0, 2], &[0, 3, 3]]).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!((t.num_points(), t.num_interior_points()), brute(&t, 4));
    }

    #[test]
    fn output_is_sorted() {
        let t = LatticePolytope::from_i64(&[&[-3, 1], &[2, -2], &[1, 3]]).unwrap();
        let pts = t.lattice_points();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}

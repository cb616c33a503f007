//! Facet enumeration by the double description method.
//!
//! Points are homogenized to `(1, p)` and the inequalities of the generated
//! cone are maintained incrementally. Adjacency of two inequalities uses the
//! combinatorial test on their zero sets, which is exact for a minimal
//! inequality list.

use num_traits::{One, Signed, Zero};

use crate::exactmath::{determinant, dot, make_primitive, rank_of_rows, Int, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)] }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn and(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn is_superset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| b & !a == 0)
    }
}

struct Ineq {
    coeffs: Vec<Int>,
    zeros: BitSet,
}

/// Facets `(normal, offset)` meaning `<x, normal> >= -offset`, plus the indices
/// of the input points that are vertices.
pub(crate) struct LocalHull {
    pub facets: Vec<(Vec<Int>, Int)>,
    pub vertices: Vec<usize>,
}

fn homogenize(p: &[Int]) -> Vec<Int> {
    let mut g = Vec::with_capacity(p.len() + 1);
    g.push(Int::one());
    g.extend(p.iter().cloned());
    g
}

/// Hull of distinct points that affinely span Z^k.
pub(crate) fn full_dim_hull(points: &[Vec<Int>], k: usize) -> LocalHull {
    if k == 0 {
        return LocalHull { facets: Vec::new(), vertices: vec![0] };
    }
    let gens: Vec<Vec<Int>> = points.iter().map(|p| homogenize(p)).collect();
    let n = gens.len();

    let mut basis: Vec<usize> = Vec::with_capacity(k + 1);
    let mut basis_rows: Vec<Vec<Int>> = Vec::with_capacity(k + 1);
    for (i, g) in gens.iter().enumerate() {
        basis_rows.push(g.clone());
        if rank_of_rows(&basis_rows, k + 1) == basis_rows.len() {
            basis.push(i);
            if basis.len() == k + 1 {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    assert_eq!(basis.len(), k + 1, "points must affinely span the space");

    // Initial simplex cone: the inequalities are the columns of adj(G).
    let mut ineqs: Vec<Ineq> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut coeffs = Vec::with_capacity(k + 1);
        for m in 0..=k {
            let minor: Vec<Vec<Int>> = (0..=k)
                .filter(|&r| r != j)
                .map(|r| (0..=k).filter(|&c| c != m).map(|c| basis_rows[r][c].clone()).collect())
                .collect();
            let det = determinant(&IntMatrix::from_rows(&minor, k));
            coeffs.push(if (j + m) % 2 == 0 { det } else { -det });
        }
        if dot(&coeffs, &basis_rows[j]).is_negative() {
            coeffs.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        make_primitive(&mut coeffs);
        let mut zeros = BitSet::new(n);
        for (r, &b) in basis.iter().enumerate() {
            if r != j {
                zeros.insert(b);
            }
        }
        ineqs.push(Ineq { coeffs, zeros });
    }

    let mut in_basis = vec![false; n];
    for &b in &basis {
        in_basis[b] = true;
    }

    for t in 0..n {
        if in_basis[t] {
            continue;
        }
        let g = &gens[t];
        let vals: Vec<Int> = ineqs.iter().map(|q| dot(&q.coeffs, g)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (q, v) in ineqs.iter_mut().zip(&vals) {
                if v.is_zero() {
                    q.zeros.insert(t);
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..ineqs.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..ineqs.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut created: Vec<Ineq> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = ineqs[p].zeros.and(&ineqs[q].zeros);
                if common.count() + 1 < k {
                    continue;
                }
                let blocked =
                    ineqs.iter().enumerate().any(|(r, other)| r != p && r != q && other.zeros.is_superset(&common));
                if blocked {
                    continue;
                }
                let mut coeffs: Vec<Int> = ineqs[q]
                    .coeffs
                    .iter()
                    .zip(&ineqs[p].coeffs)
                    .map(|(a_neg, a_pos)| &vals[p] * a_neg - &vals[q] * a_pos)
                    .collect();
                make_primitive(&mut coeffs);
                let mut zeros = common;
                zeros.insert(t);
                created.push(Ineq { coeffs, zeros });
            }
        }

        let mut next: Vec<Ineq> = Vec::with_capacity(ineqs.len() + created.len());
        for (q, v) in ineqs.into_iter().zip(&vals) {
            if v.is_negative() {
                continue;
            }
            let mut q = q;
            if v.is_zero() {
                q.zeros.insert(t);
            }
            next.push(q);
        }
        next.extend(created);
        ineqs = next;
    }

    let mut facets: Vec<(Vec<Int>, Int)> = ineqs
        .into_iter()
        .map(|q| {
            let offset = q.coeffs[0].clone();
            (q.coeffs[1..].to_vec(), offset)
        })
        .collect();
    facets.sort();

    let vertices = (0..n)
        .filter(|&i| {
            let tight: Vec<Vec<Int>> = facets
                .iter()
                .filter(|(nrm, off)| (dot(nrm, &points[i]) + off).is_zero())
                .map(|(nrm, _)| nrm.clone())
                .collect();
            tight.len() >= k && rank_of_rows(&tight, k) == k
        })
        .collect();

    LocalHull { facets, vertices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Int>> {
        v.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn square_with_interior_points() {
        let p = pts(&[&[0, 0], &[0, 1], &[0, 2], &[1, 1], &[2, 0], &[2, 2], &[1, 0]]);
        let h = full_dim_hull(&p, 2);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.vertices, vec![0, 2, 4, 5]);
    }

    #[test]
    fn cube_facets() {
        let mut p = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    p.push(vec![int(x), int(y), int(z)]);
                }
            }
        }
        let h = full_dim_hull(&p, 3);
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.vertices.len(), 8);
    }

    #[test]
    fn segment_in_one_dimension() {
        let p = pts(&[&[-2], &[0], &[3]]);
        let h = full_dim_hull(&p, 1);
        assert_eq!(h.facets, vec![(vec![int(-1)], int(3)), (vec![int(1)], int(2))]);
        assert_eq!(h.vertices, vec![0, 2]);
    }
}

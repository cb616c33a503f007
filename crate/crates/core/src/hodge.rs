//! Hodge-theoretic invariants of nef complete intersections.
//!
//! Index sets `J ⊆ {0, .., r-1}` are bitmasks. Sums over `J` include the empty
//! set unless a function says otherwise; the empty Minkowski sum is `{0}`.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::corpus::pd_partition;
use crate::error::{Error, Result};
use crate::exactmath::Int;
use crate::nefpart::{validate, NefPartition};
use crate::polytope::LatticePolytope;

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn members(mask: u32, r: usize) -> Vec<usize> {
    (0..r).filter(|&j| mask & (1 << j) != 0).collect()
}

fn b_value(dim: usize, lstar: usize) -> i64 {
    sign(dim) * lstar as i64
}

/// Memoized `(dim, l*)` of Minkowski sums. Keys are vertex lists, so equal
/// polytopes reached through different index sets share one enumeration.
#[derive(Default)]
pub struct SumCache {
    by_counts: Mutex<HashMap<Vec<u8>, (usize, usize)>>,
    by_vertices: Mutex<HashMap<Vec<Vec<Int>>, usize>>,
}

impl SumCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lstar(&self, p: &LatticePolytope) -> usize {
        if let Some(&v) = self.by_vertices.lock().expect("cache lock").get(p.vertices()) {
            return v;
        }
        let v = p.num_interior_points();
        self.by_vertices.lock().expect("cache lock").insert(p.vertices().to_vec(), v);
        v
    }

    /// `(dim, l*)` of `sum_j counts[j] * parts[j]`.
    fn parts_stats(&self, np: &NefPartition, counts: &[u8]) -> (usize, usize) {
        if let Some(&v) = self.by_counts.lock().expect("cache lock").get(counts) {
            return v;
        }
        let idx: Vec<usize> =
            counts.iter().enumerate().flat_map(|(j, &c)| std::iter::repeat_n(j, c as usize)).collect();
        let sum = np.partial_sum(&idx);
        let v = (sum.dim(), self.lstar(&sum));
        self.by_counts.lock().expect("cache lock").insert(counts.to_vec(), v);
        v
    }

    /// `(dim, l*)` of `extra + sum_{j in mask} parts[j]`.
    fn mask_stats(&self, np: &NefPartition, mask: u32, extra: Option<usize>) -> (usize, usize) {
        let mut counts = vec![0u8; np.r()];
        for j in members(mask, np.r()) {
            counts[j] += 1;
        }
        if let Some(i) = extra {
            counts[i] += 1;
        }
        self.parts_stats(np, &counts)
    }

    fn sum_stats(&self, polys: &[&LatticePolytope], d: usize) -> (usize, usize) {
        let sum = LatticePolytope::sum_all(polys.iter().copied(), d);
        (sum.dim(), self.lstar(&sum))
    }
}

/// True iff no nonempty subfamily of `n` polytopes has a sum of dimension
/// below `n + k - 1`.
pub fn k_independent(polys: &[LatticePolytope], k: usize) -> bool {
    polys.is_empty() || max_independence(polys) >= k
}

/// Largest `k` for which `polys` are `k`-independent (0 if not even 1-independent).
pub fn max_independence(polys: &[LatticePolytope]) -> usize {
    let r = polys.len();
    if r == 0 {
        return usize::MAX;
    }
    let d = polys[0].ambient_dim();
    (1u32..1 << r)
        .map(|mask| {
            let idx = members(mask, r);
            let dim = LatticePolytope::sum_all(idx.iter().map(|&j| &polys[j]), d).dim() as i64;
            dim - idx.len() as i64 + 1
        })
        .min()
        .unwrap_or(0)
        .max(0) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Empty,
    TwoPoints,
    GenusOneCurve,
    CalabiYau,
    /// Outside the hypotheses of the case analysis: only nonemptiness and
    /// irreducibility are known.
    NonEmpty {
        irreducible: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiStatus {
    pub verdict: Verdict,
    pub max_independence: usize,
    /// `h^q(O_V)` when the case analysis determines it.
    pub h_vector: Option<Vec<i64>>,
}

/// Classifies the generic complete intersection with Newton polytopes `parts`.
pub fn ci_status(parts: &[LatticePolytope]) -> Result<CiStatus> {
    let r = parts.len();
    if r == 0 {
        return Err(Error::InvalidInput("at least one polytope is required".into()));
    }
    let d = parts[0].ambient_dim();
    let max_independence = max_independence(parts);
    let origin = vec![Int::from(0); d];
    let total = LatticePolytope::sum_all(parts, d);
    let lstar = |p: &LatticePolytope| p.num_interior_points();

    let hypotheses = parts.iter().all(|p| p.dim() > 0)
        && total.contains_in_relint(&origin)
        && lstar(&total) == 1
        && (1u32..(1 << r) - 1).all(|mask| {
            let idx = members(mask, r);
            lstar(&LatticePolytope::sum_all(idx.iter().map(|&j| &parts[j]), d)) == 0
        });

    if hypotheses {
        let dim = total.dim();
        let (verdict, h) = if dim + 1 == r {
            (Verdict::Empty, None)
        } else if dim == r {
            (Verdict::TwoPoints, Some(vec![2]))
        } else if dim == r + 1 {
            (Verdict::GenusOneCurve, Some(vec![1, 1]))
        } else if dim >= r + 2 {
            let mut h = vec![0; dim - r + 1];
            h[0] = 1;
            h[dim - r] = 1;
            (Verdict::CalabiYau, Some(h))
        } else {
            (Verdict::Empty, None)
        };
        return Ok(CiStatus { verdict, max_independence, h_vector: h });
    }
    let verdict =
        if max_independence == 0 { Verdict::Empty } else { Verdict::NonEmpty { irreducible: max_independence >= 2 } };
    Ok(CiStatus { verdict, max_independence, h_vector: None })
}

/// Coefficients `c_0, .., c_{d-r}` of `E(Delta, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPolynomial {
    pub coefficients: Vec<i64>,
}

impl EPolynomial {
    pub fn at_minus_one(&self) -> i64 {
        self.coefficients.iter().enumerate().map(|(q, c)| sign(q) * c).sum()
    }
}

pub fn e_polynomial(np: &NefPartition) -> Result<EPolynomial> {
    e_polynomial_with(np, &SumCache::new())
}

fn e_polynomial_with(np: &NefPartition, cache: &SumCache) -> Result<EPolynomial> {
    let (d, r) = (np.d(), np.r());
    if r > d {
        return Err(Error::precondition("more parts than dimensions"));
    }
    let top = d - r;
    let terms: Vec<(usize, usize, usize)> = (0u32..1 << r)
        .into_par_iter()
        .map(|mask| {
            let (dim, l) = cache.mask_stats(np, mask, None);
            (dim, mask.count_ones() as usize, l)
        })
        .collect();
    let mut coefficients = vec![0i64; top + 1];
    for (dim, size, l) in terms {
        if l == 0 {
            continue;
        }
        let q = dim as i64 - size as i64;
        if q < 0 || q as usize > top {
            return Err(Error::internal(format!("E-polynomial term in degree {q}")));
        }
        coefficients[q as usize] += l as i64;
    }
    if top > 0 && (coefficients[0] != 1 || coefficients[top] != 1) {
        return Err(Error::internal(format!("E-polynomial {coefficients:?} has outer coefficients other than 1")));
    }
    Ok(EPolynomial { coefficients })
}

fn check_part(np: &NefPartition, i: usize) -> Result<()> {
    if i >= np.r() {
        return Err(Error::InvalidInput(format!("part index {i} out of range")));
    }
    Ok(())
}

/// `chi(O(-Z_i)) = sum_J (-1)^|J| b(Delta_i + sum_J Delta_j)`, zero-based `i`.
pub fn chi_minus_z(np: &NefPartition, i: usize) -> Result<i64> {
    check_part(np, i)?;
    Ok(chi_minus_z_with(np, i, &SumCache::new()))
}

fn chi_minus_z_with(np: &NefPartition, i: usize, cache: &SumCache) -> i64 {
    (0u32..1 << np.r())
        .into_par_iter()
        .map(|mask| {
            let (dim, l) = cache.mask_stats(np, mask, Some(i));
            sign(mask.count_ones() as usize) * b_value(dim, l)
        })
        .sum()
}

/// `h^{d-r}(O(-Z_i)) = sum_J (-1)^(r-|J|) l*(Delta_i + sum_J Delta_j)` when
/// the parts are big; `chi_minus_z` equals `(-1)^(d-r)` times this.
pub fn h_top_minus_z(np: &NefPartition, i: usize) -> Result<i64> {
    check_part(np, i)?;
    Ok(h_top_minus_z_with(np, i, &SumCache::new()))
}

fn h_top_minus_z_with(np: &NefPartition, i: usize, cache: &SumCache) -> i64 {
    let r = np.r();
    (0u32..1 << r)
        .map(|mask| {
            let (_, l) = cache.mask_stats(np, mask, Some(i));
            sign(r - mask.count_ones() as usize) * l as i64
        })
        .sum()
}

fn slice_terms(np: &NefPartition, v: &[Int], cache: &SumCache) -> Result<Vec<(u32, i64)>> {
    let faces = np.faces_at_boundary_point(v)?;
    let r = np.r();
    Ok((0u32..1 << r)
        .map(|mask| {
            if mask == 0 {
                return (0, 1);
            }
            let polys: Vec<&LatticePolytope> = members(mask, r).into_iter().map(|j| &faces[j].polytope).collect();
            let (dim, l) = cache.sum_stats(&polys, np.d());
            (mask, b_value(dim, l))
        })
        .collect())
}

/// `chi(O_{D(v) ∩ V}) = sum_J (-1)^|J| b(sum_J Delta_j(v))`, the empty `J` giving 1.
pub fn chi_divisor_slice(np: &NefPartition, v: &[Int]) -> Result<i64> {
    let terms = slice_terms(np, v, &SumCache::new())?;
    Ok(terms.iter().map(|(mask, b)| sign(mask.count_ones() as usize) * b).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexAssignmentMode {
    /// Each boundary point of `delta*` is charged to the first `nabla_i` containing it.
    Canonical,
    /// Each boundary point is charged to every `nabla_i` containing it.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiReport {
    pub chi_omega1: i64,
    /// `[d E(-1), -sum_i chi(O(-Z_i)), vertex terms with i ∉ J, vertex terms with i ∈ J]`.
    pub terms: [i64; 4],
    pub mode: VertexAssignmentMode,
}

pub fn chi_omega1(np: &NefPartition, mode: VertexAssignmentMode) -> Result<ChiReport> {
    chi_omega1_with(np, mode, &SumCache::new())
}

fn chi_omega1_with(np: &NefPartition, mode: VertexAssignmentMode, cache: &SumCache) -> Result<ChiReport> {
    let (d, r) = (np.d(), np.r());
    if d < r + 1 {
        return Err(Error::precondition(format!("need d - r >= 1, got d = {d}, r = {r}")));
    }
    let e = e_polynomial_with(np, cache)?;
    let t1 = d as i64 * e.at_minus_one();
    let minus_z: Vec<i64> = (0..r).into_par_iter().map(|i| chi_minus_z_with(np, i, cache)).collect();
    let t2 = -minus_z.iter().sum::<i64>();

    let owners = np.vertex_owners();
    let slices: Vec<Result<Vec<(u32, i64)>>> = owners.par_iter().map(|(v, _)| slice_terms(np, v, cache)).collect();
    let mut slice_total = 0i64;
    let (mut t3, mut t4) = (0i64, 0i64);
    for ((_, own), terms) in owners.iter().zip(slices) {
        let terms = terms?;
        slice_total += terms.iter().map(|(m, b)| sign(m.count_ones() as usize) * b).sum::<i64>();
        let charged: Vec<usize> = match mode {
            VertexAssignmentMode::Canonical => own.first().copied().into_iter().collect(),
            VertexAssignmentMode::Strict => own.clone(),
        };
        if charged.is_empty() {
            return Err(Error::internal("boundary point of delta* lies in no nabla_i"));
        }
        for i in charged {
            for (mask, b) in &terms {
                let term = sign(mask.count_ones() as usize + 1) * b;
                if mask & (1 << i) != 0 {
                    t4 += term;
                } else {
                    t3 += term;
                }
            }
        }
    }
    let chi = t1 - minus_z.iter().sum::<i64>() - slice_total;
    let terms = [t1, t2, t3, t4];
    if terms.iter().sum::<i64>() != chi {
        return Err(Error::internal("regrouped chi terms disagree with the direct sum"));
    }
    Ok(ChiReport { chi_omega1: chi, terms, mode })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaUsed {
    Hypersurface,
    AmplePullback,
    AmpleTerminal,
    PdMirror,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    /// `h^{1,q}` for `q = 0, .., d - r`.
    pub h_one_q: Vec<i64>,
    pub formula: FormulaUsed,
    pub notes: String,
}

impl HodgeReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.h_one_q.iter().enumerate().map(|(q, h)| sign(q) * h).sum()
    }
}

fn check_nonnegative(h: &[i64]) -> Result<()> {
    if let Some((q, v)) = h.iter().enumerate().find(|(_, v)| **v < 0) {
        return Err(Error::internal(format!("negative Hodge number h^(1,{q}) = {v}")));
    }
    Ok(())
}

/// `h^{1,q}` when every part and `delta` are Minkowski summands of each other.
pub fn hodge_one_ample(np: &NefPartition) -> Result<HodgeReport> {
    hodge_one_ample_with(np, &SumCache::new())
}

fn hodge_one_ample_with(np: &NefPartition, cache: &SumCache) -> Result<HodgeReport> {
    let (d, r) = (np.d(), np.r());
    if d < r + 3 {
        return Err(Error::precondition(format!("need d - r >= 3, got d = {d}, r = {r}")));
    }
    for (i, part) in np.parts.iter().enumerate() {
        if !part.is_full_dimensional()
            || part.minkowski_summand_of(&np.delta).is_none()
            || np.delta.minkowski_summand_of(part).is_none()
        {
            return Err(Error::precondition(format!("part {i} and delta are not Minkowski summands of each other")));
        }
    }
    let top = d - r;
    let faces = np.delta_star.faces();

    // l*(Θ) and the bracket over nonempty J for every proper face of delta*
    let data: Vec<(usize, usize, i64)> = faces
        .par_iter()
        .filter(|f| f.dim < d)
        .map(|f| {
            let mut dir = vec![Int::from(0); d];
            for v in f.polytope.vertices() {
                for (a, x) in dir.iter_mut().zip(v) {
                    *a += x;
                }
            }
            let duals: Vec<LatticePolytope> = np.parts.iter().map(|p| p.face_in_direction(&dir).polytope).collect();
            let bracket: i64 = (1u32..1 << r)
                .map(|mask| {
                    let polys: Vec<&LatticePolytope> = members(mask, r).into_iter().map(|j| &duals[j]).collect();
                    sign(r - mask.count_ones() as usize) * cache.sum_stats(&polys, d).1 as i64
                })
                .sum();
            (f.dim, cache.lstar(&f.polytope), bracket)
        })
        .collect();
    let weighted =
        |dim: usize| -> i64 { data.iter().filter(|(k, _, _)| *k == dim).map(|(_, l, b)| *l as i64 * b).sum() };

    let points = np.delta_star.boundary_lattice_points()?;
    let mut low = 0i64;
    for v in &points {
        if np.delta_star.minimal_face_containing(v)?.dim < top {
            low += 1;
        }
    }

    let mut h = vec![0i64; top + 1];
    h[1] = low - d as i64 + weighted(top - 1);
    for (k, hk) in h.iter_mut().enumerate().take(top - 1).skip(2) {
        *hk = weighted(top - k);
    }
    let minus_z: i64 = (0..r).map(|i| h_top_minus_z_with(np, i, cache)).sum();
    let vertex_brackets: i64 = data.iter().filter(|(k, _, _)| *k == 0).map(|(_, _, b)| b).sum();
    h[top - 1] = minus_z - d as i64 - vertex_brackets + weighted(1);
    check_nonnegative(&h)?;
    let chi = chi_omega1_with(np, VertexAssignmentMode::Canonical, cache)?.chi_omega1;
    let alternating: i64 = h.iter().enumerate().map(|(q, v)| sign(q) * v).sum();
    if alternating != chi {
        return Err(Error::internal(format!("alternating sum {alternating} of {h:?} differs from chi = {chi}")));
    }

    let terminal = data.iter().all(|(k, l, _)| *k == 0 || *l == 0);
    Ok(HodgeReport {
        h_one_q: h,
        formula: if terminal { FormulaUsed::AmpleTerminal } else { FormulaUsed::AmplePullback },
        notes: "lattice points on faces of dimension <= d - r - 1 are counted on delta*".into(),
    })
}

/// `h^{q,1}` for a Calabi-Yau hypersurface given by a reflexive `delta`, `d >= 4`.
pub fn hodge_one_hypersurface(delta: &LatticePolytope) -> Result<HodgeReport> {
    if !delta.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let d = delta.ambient_dim();
    if d < 4 {
        return Err(Error::precondition(format!("hypersurface formulas need d >= 4, got {d}")));
    }
    let dual = delta.reflexive_dual()?;
    let cache = SumCache::new();
    // (codim of Θ* in delta*, l*(Θ*), l*(Θ)) for every proper face Θ* of delta*
    let pairs: Vec<(usize, i64, i64)> = dual
        .faces()
        .par_iter()
        .filter(|f| f.dim < d)
        .map(|f| {
            let theta = delta.dual_face_in(f);
            (d - f.dim, cache.lstar(&f.polytope) as i64, cache.lstar(&theta.polytope) as i64)
        })
        .collect();
    let by_codim = |c: usize| pairs.iter().filter(move |(k, _, _)| *k == c);
    let product = |c: usize| -> i64 { by_codim(c).map(|(_, a, b)| a * b).sum() };

    let mut h = vec![0i64; d];
    h[1] = dual.num_points() as i64 - d as i64 - 1 - by_codim(1).map(|(_, a, _)| a).sum::<i64>() + product(2);
    h[d - 2] = delta.num_points() as i64 - d as i64 - 1 - by_codim(d).map(|(_, _, b)| b).sum::<i64>() + product(d - 1);
    for (p, hp) in h.iter_mut().enumerate().take(d - 2).skip(2) {
        *hp = product(p + 1);
    }
    check_nonnegative(&h)?;
    Ok(HodgeReport { h_one_q: h, formula: FormulaUsed::Hypersurface, notes: String::new() })
}

/// Hodge vectors of the degree-`degrees` complete intersection in `P^d` and its mirror.
pub fn pd_mirror_hodge(degrees: &[u32]) -> Result<(HodgeReport, HodgeReport)> {
    let parts = pd_partition(degrees)?;
    let np = validate(&parts)?;
    let (d, r) = (np.d(), np.r());
    if d < r + 3 {
        return Err(Error::precondition(format!("need d - r >= 3, got d = {d}, r = {r}")));
    }
    let cache = SumCache::new();
    let v = hodge_one_ample_with(&np, &cache)?;
    let mut w_h = v.h_one_q.clone();
    w_h.reverse();

    let count: i64 = np.nablas.iter().map(|n| n.num_points() as i64 - 1).sum::<i64>() - d as i64;
    if count != w_h[d - r - 1] {
        return Err(Error::internal(format!(
            "mirror count {count} differs from h^(1,{}) = {}",
            d - r - 1,
            w_h[d - r - 1]
        )));
    }
    let dual = np.dual()?;
    let chi_v = chi_omega1_with(&np, VertexAssignmentMode::Canonical, &cache)?.chi_omega1;
    let chi_w = chi_omega1(&dual, VertexAssignmentMode::Canonical)?.chi_omega1;
    if chi_v != v.euler_characteristic() || chi_w != sign(d - r) * chi_v {
        return Err(Error::internal("Euler characteristics of the mirror pair disagree"));
    }
    let w = HodgeReport {
        h_one_q: w_h,
        formula: FormulaUsed::PdMirror,
        notes: format!("mirror count -d + sum(l(nabla_i) - 1) = {count}"),
    };
    Ok((HodgeReport { formula: FormulaUsed::PdMirror, ..v }, w))
}

/// A failure of one of the interior-point correspondences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1 for the `Delta_i + sum_J` statement, 2 for the face statement.
    pub statement: u8,
    pub part: usize,
    pub subset: Vec<usize>,
    pub point: Option<Vec<Int>>,
    pub detail: String,
}

struct NablaFaces<'a> {
    np: &'a NefPartition,
    cache: Mutex<HashMap<(usize, Vec<usize>), LatticePolytope>>,
    sums: Mutex<HashMap<Vec<Vec<Int>>, LatticePolytope>>,
}

impl<'a> NablaFaces<'a> {
    fn new(np: &'a NefPartition) -> Self {
        Self { np, cache: Mutex::new(HashMap::new()), sums: Mutex::new(HashMap::new()) }
    }

    /// `nabla_j(w)`, the face of `nabla_j` minimizing `<w, .>`.
    fn face(&self, j: usize, w: &[Int]) -> LatticePolytope {
        let nabla = &self.np.nablas[j];
        let vals: Vec<Int> = nabla.vertices().iter().map(|v| crate::exactmath::dot(v, w)).collect();
        let min = vals.iter().min().expect("nonempty").clone();
        let idx: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        let key = (j, idx);
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return p.clone();
        }
        let pts: Vec<Vec<Int>> = key.1.iter().map(|&i| nabla.vertices()[i].clone()).collect();
        let p = LatticePolytope::from_points(&pts, nabla.ambient_dim()).expect("nonempty");
        self.cache.lock().expect("cache lock").insert(key, p.clone());
        p
    }

    fn sum(&self, polys: &[LatticePolytope]) -> LatticePolytope {
        let d = self.np.d();
        let mut key: Vec<Vec<Int>> = Vec::new();
        for p in polys {
            key.extend(p.vertices().iter().cloned());
            key.push(Vec::new());
        }
        if let Some(p) = self.sums.lock().expect("cache lock").get(&key) {
            return p.clone();
        }
        let s = LatticePolytope::sum_all(polys, d);
        self.sums.lock().expect("cache lock").insert(key, s.clone());
        s
    }
}

/// Brute-force check of both interior-point correspondences between a
/// nef-partition and its dual. Returns every violation found.
pub fn interior_correspondence_check(np: &NefPartition) -> Result<Vec<Violation>> {
    let (d, r) = (np.d(), np.r());
    let (nabla_zero, delta_zero) = np.support_sets();
    let faces = NablaFaces::new(np);
    let origin = vec![Int::from(0); d];
    let mut jobs: Vec<(usize, u32, Option<Vec<Int>>)> = Vec::new();
    for (i, points) in nabla_zero.iter().enumerate() {
        for mask in (0u32..1 << r).filter(|m| m & (1 << i) != 0) {
            jobs.push((i, mask, None));
            for v in points {
                jobs.push((i, mask, Some(v.clone())));
            }
        }
    }
    let results: Vec<Vec<Violation>> = jobs
        .par_iter()
        .map(|(i, mask, v)| {
            let (i, mask) = (*i, *mask);
            let subset = members(mask, r);
            let outside: Vec<usize> = (0..r).filter(|j| mask & (1 << j) == 0).collect();
            let mut out = Vec::new();
            let violation = |point: Option<Vec<Int>>, detail: String| Violation {
                statement: if v.is_some() { 2 } else { 1 },
                part: i,
                subset: subset.clone(),
                point,
                detail,
            };
            let (lambda, target, expected_dim) = match v {
                None => {
                    let mut idx = subset.clone();
                    idx.push(i);
                    (np.partial_sum(&idx), origin.clone(), d)
                }
                Some(v) => {
                    let fs: Vec<LatticePolytope> =
                        subset.iter().map(|&j| np.parts[j].face_in_direction(v).polytope).collect();
                    (LatticePolytope::sum_all(&fs, d), v.clone(), d - 1)
                }
            };
            let mut inner: Vec<Vec<Int>> = lambda.interior_lattice_points();
            if v.is_none() {
                inner.retain(|w| w != &origin);
            }
            let mut matched: Vec<Vec<Int>> = Vec::new();
            for w in &delta_zero[i] {
                let mut polys: Vec<LatticePolytope> = outside.iter().map(|&j| faces.face(j, w)).collect();
                if v.is_some() {
                    polys.push(faces.face(i, w));
                }
                let cone = faces.sum(&polys);
                if cone.contains_in_relint(&target) {
                    if lambda.dim() + cone.dim() != expected_dim {
                        out.push(violation(
                            Some(w.clone()),
                            format!("dimensions {} + {} != {}", lambda.dim(), cone.dim(), expected_dim),
                        ));
                    }
                    matched.push(w.clone());
                }
            }
            matched.sort();
            if matched != inner {
                let extra: Vec<&Vec<Int>> = inner.iter().filter(|p| !matched.contains(p)).collect();
                let missing: Vec<&Vec<Int>> = matched.iter().filter(|p| !inner.contains(p)).collect();
                let point = extra.first().or(missing.first()).map(|p| (*p).clone());
                out.push(violation(
                    point,
                    format!("{} interior points unmatched, {} matched points not interior", extra.len(), missing.len()),
                ));
            }
            if let Some(v) = v {
                if let Some(p) = out.first_mut() {
                    p.detail = format!("v = {:?}: {}", v, p.detail);
                }
            }
            out
        })
        .collect();
    Ok(results.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: i64, b: i64) -> LatticePolytope {
        LatticePolytope::from_i64(&[&[a], &[b]]).unwrap()
    }

    #[test]
    fn independence_examples() {
        let e1 = LatticePolytope::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        assert!(!k_independent(&[e1.clone(), e1], 1));
        assert!(!k_independent(&[LatticePolytope::origin(2)], 1));
    }

    #[test]
    fn ci_status_cases() {
        let empty = ci_status(&[seg(-1, 0), seg(0, 1)]).unwrap();
        assert_eq!(empty.verdict, Verdict::Empty);
        let two = ci_status(&[seg(-1, 1)]).unwrap();
        assert_eq!(two.verdict, Verdict::TwoPoints);
        let tri = LatticePolytope::from_i64(&[&[-1, -1], &[2, -1], &[-1, 2]]).unwrap();
        let curve = ci_status(&[tri]).unwrap();
        assert_eq!(curve.verdict, Verdict::GenusOneCurve);
        assert_eq!(curve.h_vector, Some(vec![1, 1]));
    }

    #[test]
    fn members_of_mask() {
        assert_eq!(members(0b101, 3), vec![0, 2]);
    }
}

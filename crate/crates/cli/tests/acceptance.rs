//! One PASS/FAIL line per acceptance criterion. Integer criteria are exact;
//! the only tolerance is the 60 s wall-clock budget per example value.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nefhodge::corpus::{
    diamond_split, half_lattice_example, pd_degree_lists, pd_partition, product, reflexive_polygons,
};
use nefhodge::exactmath::{dot, int};
use nefhodge::hodge::{
    chi_minus_z, chi_omega1, h_top_minus_z, hodge_one_ample, hodge_one_hypersurface, pd_mirror_hodge,
    VertexAssignmentMode,
};
use nefhodge::nefpart::{decompose, enumerate_partitions};
use nefhodge::verify::verify_all;
use nefhodge::{validate, Error, Int, LatticePolytope, NefPartition};
use serde_json::Value;

const TIME_BUDGET: Duration = Duration::from_secs(60);

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn check(&mut self, criterion: u8, label: &str, ok: bool, detail: String) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} [{criterion}] {label}: {detail}");
        if !ok {
            self.failures.push(format!("[{criterion}] {label}"));
        }
    }
}

fn pd(degrees: &[u32]) -> NefPartition {
    validate(&pd_partition(degrees).unwrap()).unwrap()
}

fn criterion_1(g: &mut Gate) {
    for (deg, want) in [(vec![3, 3], 73), (vec![2, 4], 89), (vec![2, 2, 3], 73), (vec![2, 2, 2, 2], 65)] {
        let t = Instant::now();
        let got = hodge_one_ample(&pd(&deg)).map(|r| r.h_one_q[2]);
        let elapsed = t.elapsed();
        g.check(
            1,
            &format!("h^{{2,1}} of {deg:?}"),
            got == Ok(want) && elapsed < TIME_BUDGET,
            format!("got {got:?}, expected {want} exactly, {:.2} s within 60 s", elapsed.as_secs_f64()),
        );
    }
}

fn criterion_2(g: &mut Gate) {
    let np = pd(&[3, 3]);
    let l: Vec<usize> = np.parts.iter().map(|p| p.num_points()).collect();
    let l2: Vec<usize> = np.parts.iter().map(|p| p.scale(&int(2)).num_interior_points()).collect();
    g.check(
        2,
        "(3,3) l(Delta_i) and l*(2 Delta_i)",
        l == [56, 56] && l2 == [1, 1],
        format!("l = {l:?}, l* = {l2:?}, expected [56, 56] and [1, 1]"),
    );

    let np = pd(&[2, 4]);
    let l: Vec<usize> = np.parts.iter().map(|p| p.num_points()).collect();
    let l2 = np.parts[1].scale(&int(2)).num_interior_points();
    g.check(
        2,
        "(2,4) l(Delta_i) and l*(2 Delta_2)",
        l == [21, 126] && l2 == 21,
        format!("l = {l:?}, l*(2 Delta_2) = {l2}, expected [21, 126] and 21"),
    );

    let delta = pd(&[6]).delta;
    let sum: usize = delta.faces_of_dim(4).iter().map(|f| f.polytope.num_interior_points()).sum();
    g.check(2, "sum of l* over facets of 6 Lambda_5", sum == 30, format!("got {sum}, expected 30"));
}

fn criterion_3(g: &mut Gate) {
    let mut cases: Vec<(String, Vec<LatticePolytope>)> = Vec::new();
    for deg in pd_degree_lists(8) {
        cases.push((format!("P^d {deg:?}"), pd_partition(&deg).unwrap()));
    }
    let polys = reflexive_polygons();
    for i in 0..polys.len() {
        for j in i..polys.len() {
            cases.push((format!("polygon product {i}x{j}"), product(&[polys[i].clone(), polys[j].clone()]).unwrap()));
        }
    }
    cases.push(("half-lattice".into(), half_lattice_example()));
    let total = cases.len();
    let mut failed: Vec<String> = Vec::new();
    for (name, parts) in cases {
        match validate(&parts).and_then(|np| verify_all(&np)) {
            Ok(results) => {
                for r in results.iter().filter(|r| !r.passed) {
                    failed.push(format!("{name} {}: {}", r.name, r.detail));
                }
            }
            Err(e) => failed.push(format!("{name}: {e}")),
        }
    }
    g.check(
        3,
        "duality identity suites on the corpus",
        failed.is_empty(),
        format!(
            "{total} partitions, {} violations{}",
            failed.len(),
            failed.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    );
}

/// Face data of a simplicial reflexive pair from lattice points and tight sets only.
fn hypersurface_oracle(delta: &LatticePolytope, dual: &LatticePolytope) -> (i64, i64) {
    let d = delta.ambient_dim() as i64;
    let box_points = |verts: &[Vec<Int>], bounds: &[Vec<Int>]| -> Vec<Vec<Int>> {
        let lo = verts.iter().flatten().min().unwrap().clone();
        let hi = verts.iter().flatten().max().unwrap().clone();
        let mut out = vec![vec![]];
        for _ in 0..delta.ambient_dim() {
            let mut next = Vec::new();
            for p in &out {
                let mut x = lo.clone();
                while x <= hi {
                    let mut q: Vec<Int> = p.clone();
                    q.push(x.clone());
                    next.push(q);
                    x += 1;
                }
            }
            out = next;
        }
        out.retain(|x| bounds.iter().all(|u| dot(x, u) >= int(-1)));
        out
    };
    let tight = |x: &[Int], others: &[Vec<Int>]| -> Vec<usize> {
        (0..others.len()).filter(|&i| dot(x, &others[i]) == int(-1)).collect()
    };
    let dv = delta.vertices().to_vec();
    let sv = dual.vertices().to_vec();
    assert_eq!(sv.len() as i64, d + 1, "oracle assumes delta* is a simplex");
    let delta_pts = box_points(&dv, &sv);
    let dual_pts = box_points(&sv, &dv);
    let delta_tight: Vec<Vec<usize>> = delta_pts.iter().map(|x| tight(x, &sv)).collect();
    let dual_tight: Vec<Vec<usize>> = dual_pts.iter().map(|y| tight(y, &dv)).collect();

    let (mut facet_interior, mut vertex_duals) = (0i64, 0i64);
    let (mut codim2, mut codim_d1) = (0i64, 0i64);
    for mask in 1u32..(1 << sv.len()) - 1 {
        let s: Vec<usize> = (0..sv.len()).filter(|i| mask & (1 << i) != 0).collect();
        let theta: Vec<usize> = (0..dv.len()).filter(|&u| s.iter().all(|&v| dot(&dv[u], &sv[v]) == int(-1))).collect();
        let l_theta = delta_tight.iter().filter(|t| **t == s).count() as i64;
        let l_theta_star = dual_tight.iter().filter(|t| **t == theta).count() as i64;
        let codim = d - (s.len() as i64 - 1);
        match codim {
            1 => facet_interior += l_theta_star,
            2 => codim2 += l_theta_star * l_theta,
            _ => {}
        }
        if codim == d {
            vertex_duals += l_theta;
        }
        if codim == d - 1 {
            codim_d1 += l_theta_star * l_theta;
        }
    }
    let h11 = dual_pts.len() as i64 - d - 1 - facet_interior + codim2;
    let h21 = delta_pts.len() as i64 - d - 1 - vertex_duals + codim_d1;
    (h11, h21)
}

fn criterion_4(g: &mut Gate) {
    let np = pd(&[3, 3]);
    let chi = chi_omega1(&np, VertexAssignmentMode::Canonical).map(|r| r.chi_omega1);
    let h11 = np.delta_star.vertices().len() as i64 - np.d() as i64;
    let h21 = hodge_one_ample(&np).map(|r| r.h_one_q[2]).unwrap_or(i64::MIN);
    g.check(
        4,
        "chi(Omega^1) for (3,3)",
        chi == Ok(72) && chi == Ok(h21 - h11),
        format!("got {chi:?}, expected 72 = -{h11} + {h21}"),
    );

    let quintic = pd(&[5]);
    let report = hodge_one_hypersurface(&quintic.delta).map(|r| (r.h_one_q[1], r.h_one_q[2]));
    let oracle = hypersurface_oracle(&quintic.delta, &quintic.delta_star);
    g.check(
        4,
        "quintic h^{1,1} and h^{2,1}",
        report == Ok((1, 101)) && oracle == (1, 101),
        format!("formula {report:?}, face-by-face oracle {oracle:?}, expected (1, 101)"),
    );

    let minus_z = chi_minus_z(&quintic, 0);
    let top = h_top_minus_z(&quintic, 0);
    g.check(
        4,
        "quintic chi(O(-Z))",
        minus_z == Ok(-125) && top == Ok(125),
        format!("chi = {minus_z:?}, big-nef h^3 = {top:?}, expected -125 = (-1)^3 * 125"),
    );
}

fn criterion_5(g: &mut Gate) {
    let res = validate(&diamond_split());
    let ok = matches!(&res, Err(Error::NotNef { value, .. }) if value != "0" && value != "1");
    let detail = match &res {
        Err(e) => e.to_string(),
        Ok(_) => "validated".into(),
    };
    g.check(5, "diamond split rejected", ok, detail);

    let diamond = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).unwrap();
    let found = enumerate_partitions(&diamond, 2).map(|v| v.len());
    g.check(5, "diamond has no 2-part nef-partition", found == Ok(0), format!("found {found:?}, expected 0"));

    let report = validate(&half_lattice_example()).and_then(|np| decompose(&np));
    let ok = matches!(&report, Ok(r) if r.sublattice_index == int(2) && !r.splits_over_z);
    let detail = match &report {
        Ok(r) => format!("index {}, splits over Z {}", r.sublattice_index, r.splits_over_z),
        Err(e) => e.to_string(),
    };
    g.check(5, "half-lattice example", ok, format!("{detail}, expected index 2 and no split"));
}

fn criterion_6(g: &mut Gate) {
    for (deg, h21) in [(vec![3, 3], 73), (vec![2, 2, 3], 73), (vec![2, 2, 2, 2], 65)] {
        let np = pd(&deg);
        let count = np.nablas.iter().map(|n| n.num_points() as i64 - 1).sum::<i64>() - np.d() as i64;
        let w = pd_mirror_hodge(&deg).map(|(_, w)| w.h_one_q);
        g.check(
            6,
            &format!("mirror of {deg:?}"),
            w == Ok(vec![0, h21, 1, 0]) && count == 1,
            format!("w = {w:?}, expected [0, {h21}, 1, 0]; -d + sum(l(nabla_i) - 1) = {count}, expected 1"),
        );
    }
}

fn run(args: &[&str], threads: &str) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_nefhodge"))
        .args(args)
        .env("NEFHODGE_THREADS", threads)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn results_object(stdout: &[u8]) -> Vec<u8> {
    let v: Value = serde_json::from_slice(stdout).expect("JSON output");
    let inner = v.get("results").cloned().unwrap_or(v);
    serde_json::to_vec(&inner).unwrap()
}

fn criterion_7(g: &mut Gate, dir: &Path) {
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let setup: [(&str, &[&str]); 6] = [
        ("p33.json", &["gen", "pd", "3", "3"]),
        ("p223.json", &["gen", "pd", "2", "2", "3"]),
        ("p5.json", &["gen", "pd", "5"]),
        ("hl.json", &["gen", "halflattice"]),
        ("prod.json", &["gen", "product", "square.json", "square.json"]),
        ("dia.json", &["gen", "diamond"]),
    ];
    std::fs::write(
        dir.join("square.json"),
        r#"{"schemaVersion": "1", "dim": 2, "vertices": [["1","1"],["-1","1"],["1","-1"],["-1","-1"]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("quintic.json"),
        r#"{"schemaVersion": "1", "dim": 4, "vertices": [["-1","-1","-1","-1"],["4","-1","-1","-1"],["-1","4","-1","-1"],["-1","-1","4","-1"],["-1","-1","-1","4"]]}"#,
    )
    .unwrap();
    for (name, args) in setup {
        let args: Vec<String> =
            args.iter().map(|a| if a.ends_with(".json") { path(a) } else { a.to_string() }).collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, stdout) = run(&refs, "1");
        assert_eq!(code, Some(0), "setup {name}");
        std::fs::write(dir.join(name), stdout).unwrap();
    }
    let commands: Vec<Vec<String>> = [
        "gen pd 2 2 2 2",
        "gen product square.json square.json",
        "gen diamond",
        "gen halflattice",
        "poly info quintic.json",
        "poly dual quintic.json",
        "poly points square.json",
        "poly points quintic.json --interior",
        "nef validate p33.json",
        "nef dualize p223.json",
        "nef enumerate square.json --parts 2",
        "nef decompose prod.json",
        "nef decompose hl.json",
        "hodge e p223.json",
        "hodge chi p33.json",
        "hodge chi p223.json --strict-vertex-mode",
        "hodge h1q p223.json",
        "hodge hypersurface quintic.json",
        "hodge pd 3 3",
        "verify all p223.json",
        "verify all hl.json",
    ]
    .iter()
    .map(|c| c.split(' ').map(|a| if a.ends_with(".json") { path(a) } else { a.to_string() }).collect())
    .collect();

    let mut mismatches = Vec::new();
    for cmd in &commands {
        let refs: Vec<&str> = cmd.iter().map(String::as_str).collect();
        let runs: Vec<(Option<i32>, Vec<u8>)> = ["1", "4", "1", "3"].iter().map(|t| run(&refs, t)).collect();
        let first = results_object(&runs[0].1);
        let stable =
            runs.iter().all(|(code, out)| *code == Some(0) && results_object(out) == first && *out == runs[0].1);
        if !stable {
            mismatches.push(cmd[..2].join(" "));
        }
    }
    g.check(
        7,
        "byte-identical results under thread overrides 1, 4, 1, 3",
        mismatches.is_empty(),
        format!("{} commands, unstable: {mismatches:?}", commands.len()),
    );
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().unwrap();
    let mut g = Gate { failures: Vec::new() };
    criterion_1(&mut g);
    criterion_2(&mut g);
    criterion_3(&mut g);
    criterion_4(&mut g);
    criterion_5(&mut g);
    criterion_6(&mut g);
    criterion_7(&mut g, dir.path());
    if g.failures.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {:?}", g.failures);
        ExitCode::FAILURE
    }
}

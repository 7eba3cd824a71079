//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use parity_core::dual::convex_graph_solve;
use parity_core::face::{face_construct, face_feasible, FaceInstance};
use parity_core::generate::{generate_graph, vis_components, Family};
use parity_core::graph::{verify_happy_set, visibility_graph, Instance, PlaneGraph, ValidationOptions};
use parity_core::oracle::{brute_force, brute_force_within, OracleLimits};
use parity_core::path::{adversarial_unhappy_set, is_pseudoconvex, solve_path, tight_hull};
use parity_core::{solve, EdgeSet, Point, SolveOptions, SolverPath};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMITS: OracleLimits = OracleLimits {
    max_vertices: 10,
    max_vis_edges: 40,
    node_budget: 2_000_000_000,
};

struct Outcome {
    pass: bool,
    detail: String,
}

/// Construction checks collected while running criteria 1 to 3.
#[derive(Default)]
struct Constructions {
    checked: usize,
    failures: Vec<String>,
}

impl Constructions {
    fn check(&mut self, inst: &Instance, h: Option<&EdgeSet>, what: &str) {
        self.checked += 1;
        match h {
            None => self.failures.push(format!("{what}: feasible but no happy set")),
            Some(h) => {
                let report = verify_happy_set(inst, h);
                if !report.passed() {
                    self.failures.push(format!("{what}: {:?}", report.failures));
                }
            }
        }
    }
}

fn even_subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

fn opts() -> SolveOptions {
    SolveOptions {
        construct: true,
        seed: 11,
    }
}

fn verdict(mismatches: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if let Some(first) = mismatches.first() {
        detail.push_str(&format!("; first mismatch: {first}"));
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail,
    }
}

fn path_oracle_equivalence(log: &mut Constructions) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut subs = 0;
    let mut bad = Vec::new();
    for i in 0..500u64 {
        let n = rng.gen_range(4..=8);
        let g = generate_graph(Family::Xmonotone, n, 1_000 + i).unwrap();
        for r in even_subsets(n) {
            let inst = Instance::new(g.clone(), r).unwrap();
            let s = solve_path(&inst, &opts()).unwrap();
            let o = brute_force(&inst, &LIMITS).unwrap();
            subs += 1;
            if s.feasible != o.feasible() {
                bad.push(format!("seed {} n {n} R {:?}: solver {} oracle {}", 1_000 + i, inst.unhappy, s.feasible, o.feasible()));
            } else if s.feasible {
                log.check(&inst, s.happy_set.as_ref(), "path");
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut out = verdict(&bad, format!("500 instances, {subs} sub-instances, {} mismatches, {secs:.1}s", bad.len()));
    if secs > 600.0 {
        out.pass = false;
        out.detail.push_str("; over the 10 minute budget");
    }
    out
}

fn convex_oracle_equivalence(log: &mut Constructions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut subs = 0;
    let mut bad = Vec::new();
    for i in 0..200u64 {
        let n = rng.gen_range(3..=9);
        let g = generate_graph(Family::ConvexGraph, n, 2_000 + i).unwrap();
        for r in even_subsets(n) {
            let inst = Instance::new(g.clone(), r).unwrap();
            let s = convex_graph_solve(&inst, &opts()).unwrap();
            let o = brute_force(&inst, &LIMITS).unwrap();
            subs += 1;
            if s.feasible != o.feasible() {
                bad.push(format!("seed {} R {:?}: solver {} oracle {}", 2_000 + i, inst.unhappy, s.feasible, o.feasible()));
            } else if s.feasible {
                log.check(&inst, s.happy_set.as_ref(), "convex graph");
            }
        }
    }
    verdict(&bad, format!("200 instances, {subs} sub-instances, {} mismatches", bad.len()))
}

/// A regular-ish convex polygon on `k` vertices, counter-clockwise.
fn polygon(k: usize) -> Vec<Point> {
    let r = 10_000.0;
    (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * (i as f64 + 0.3 * ((i * 7) % 5) as f64 / 5.0) / k as f64;
            Point::new((r * t.cos()).round() as i64, (r * t.sin()).round() as i64)
        })
        .collect()
}

fn face_closed_forms(log: &mut Constructions) -> Outcome {
    let mut subs = 0;
    let mut bad = Vec::new();
    let mut by_kind = [0usize; 3];
    for k in 3..=9 {
        let pts = polygon(k);
        for g_mask in 0u32..1 << k {
            let sides: Vec<(usize, usize)> = (0..k)
                .filter(|i| g_mask >> i & 1 == 1)
                .map(|i| (i, (i + 1) % k))
                .collect();
            let g = PlaneGraph::new(pts.clone(), sides, ValidationOptions::default()).unwrap();
            let missing = k - g_mask.count_ones() as usize;
            by_kind[missing.min(2)] += 1;
            for r_mask in 0u32..1 << k {
                let inst = Instance::new(g.clone(), (0..k).filter(|v| r_mask >> v & 1 == 1)).unwrap();
                let face = FaceInstance::new(
                    (0..k).collect(),
                    (0..k).map(|v| r_mask >> v & 1 == 1).collect(),
                    (0..k).map(|i| g_mask >> i & 1 == 1).collect(),
                )
                .unwrap();
                let f = face_feasible(&face);
                let o = brute_force(&inst, &LIMITS).unwrap().feasible();
                subs += 1;
                if f != o {
                    bad.push(format!("k {k} sides {g_mask:b} R {r_mask:b}: closed form {f} oracle {o}"));
                } else if f {
                    log.check(&inst, face_construct(&face).as_ref(), "face");
                }
            }
        }
    }
    verdict(
        &bad,
        format!(
            "k = 3..9: {} cycles, {} paths, {} multi-gap boundaries, {subs} sub-instances, {} mismatches",
            by_kind[0],
            by_kind[1],
            by_kind[2],
            bad.len()
        ),
    )
}

fn construction_soundness(log: &Constructions) -> Outcome {
    verdict(
        &log.failures,
        format!("{} happy sets verified, {} failed", log.checked, log.failures.len()),
    )
}

fn universal_happiness() -> Outcome {
    let mut bad = Vec::new();
    // (a) non-pseudoconvex paths
    let mut found = 0;
    let mut seed = 5_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    while found < 100 {
        seed += 1;
        let n = rng.gen_range(4..=8);
        let g = generate_graph(Family::Xmonotone, n, seed).unwrap();
        if is_pseudoconvex(&g).unwrap().pseudoconvex {
            continue;
        }
        found += 1;
        for r in even_subsets(n) {
            let inst = Instance::new(g.clone(), r).unwrap();
            let s = solve_path(&inst, &opts()).unwrap();
            let o = brute_force(&inst, &LIMITS).unwrap();
            let built = s.happy_set.as_ref().is_some_and(|h| verify_happy_set(&inst, h).passed());
            if !s.feasible || !o.feasible() || !built {
                bad.push(format!("(a) seed {seed} R {:?}: solver {} oracle {} built {built}", inst.unhappy, s.feasible, o.feasible()));
            }
        }
    }
    // (b) pseudoconvex paths with the adversarial set
    let mut families = 0;
    for i in 0..100u64 {
        let (family, n) = if i % 2 == 0 {
            (Family::ConvexPath, 4 + (i as usize / 2) % 7)
        } else {
            (Family::Spiral, 5 + (i as usize / 2) % 6)
        };
        let g = generate_graph(family, n, 6_000 + i).unwrap();
        let r = adversarial_unhappy_set(&g).unwrap();
        let inst = Instance::new(g, r).unwrap();
        let s = solve_path(&inst, &opts()).unwrap();
        let o = brute_force(&inst, &LIMITS).unwrap();
        families += 1;
        if s.feasible || o.feasible() || inst.unhappy.len() % 2 == 1 {
            bad.push(format!("(b) {family} n {n} seed {} R {:?}: solver {} oracle {}", 6_000 + i, inst.unhappy, s.feasible, o.feasible()));
        }
    }
    verdict(&bad, format!("(a) 100 non-pseudoconvex paths, (b) {families} pseudoconvex paths, {} failures", bad.len()))
}

fn tight_hull_restriction() -> Outcome {
    let mut bad = Vec::new();
    let mut subs = 0;
    let families = [Family::ConvexPath, Family::Spiral, Family::Zigzag];
    for i in 0..100u64 {
        let family = families[i as usize % 3];
        let n = match family {
            Family::Spiral => 5 + (i as usize) % 4,
            _ => 4 + (i as usize) % 5,
        };
        let g = generate_graph(family, n, 7_000 + i).unwrap();
        let cycle = tight_hull(&g).unwrap();
        for r in even_subsets(n) {
            let inst = Instance::new(g.clone(), r).unwrap();
            let full = brute_force(&inst, &LIMITS).unwrap().feasible();
            let within = brute_force_within(&inst, cycle.order(), &LIMITS).unwrap().feasible();
            subs += 1;
            if full != within {
                bad.push(format!("{family} n {n} seed {} R {:?}: full {full} within {within}", 7_000 + i, inst.unhappy));
            }
        }
    }
    verdict(&bad, format!("100 pseudoconvex paths, {subs} sub-instances, {} mismatches", bad.len()))
}

fn zigzag_negative() -> Outcome {
    let mut bad = Vec::new();
    for i in 0..50u64 {
        let n = 4 + (i as usize) % 7;
        let g = generate_graph(Family::Zigzag, n, 8_000 + i).unwrap();
        assert!(vis_components(&g) >= 2);
        // one vertex from each of the first two components
        let vis = visibility_graph(&g);
        let mut comp: Vec<usize> = (0..n).collect();
        for _ in 0..n {
            for e in vis.iter() {
                let m = comp[e.lo()].min(comp[e.hi()]);
                comp[e.lo()] = m;
                comp[e.hi()] = m;
            }
        }
        let a = 0;
        let b = (0..n).find(|&v| comp[v] != comp[a]).unwrap();
        let inst = Instance::new(g, [a, b]).unwrap();
        let s = solve_path(&inst, &opts()).unwrap();
        let o = brute_force(&inst, &LIMITS).unwrap();
        if s.feasible || o.feasible() {
            bad.push(format!("n {n} seed {} R {{{a},{b}}}: solver {} oracle {}", 8_000 + i, s.feasible, o.feasible()));
        }
    }
    verdict(&bad, format!("50 zigzag instances, {} failures", bad.len()))
}

fn scaling() -> Outcome {
    let sizes = [1_000usize, 10_000, 100_000];
    let mut times = Vec::new();
    for &n in &sizes {
        let g = generate_graph(Family::ConvexPath, n, 9_000 + n as u64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let r = parity_core::generate::random_even_subset(n, &mut rng);
        let inst = Instance::new(g, r).unwrap();
        let mut best = Duration::MAX;
        for _ in 0..5 {
            let t = Instant::now();
            let s = solve_path(&inst, &opts()).unwrap();
            best = best.min(t.elapsed());
            assert!(s.happy_set.is_some() || !s.feasible);
        }
        times.push(best.as_secs_f64());
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let mx = xs.iter().sum::<f64>() / 3.0;
    let my = ys.iter().sum::<f64>() / 3.0;
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
    let pass = (0.8..=1.3).contains(&slope) && times[2] < 2.0;
    Outcome {
        pass,
        detail: format!(
            "times {:.2}ms / {:.2}ms / {:.2}ms, log-log slope {slope:.3}, n=1e5 in {:.3}s",
            times[0] * 1e3,
            times[1] * 1e3,
            times[2] * 1e3,
            times[2]
        ),
    }
}

fn handshake_fast_path() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let families = [Family::Xmonotone, Family::ConvexPath, Family::ConvexGraph, Family::Spiral];
    for i in 0..1000u64 {
        let family = families[i as usize % 4];
        let n = rng.gen_range(5..=1000);
        let g = generate_graph(family, n, 10_000 + i).unwrap();
        let mut r: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        if r.len().is_multiple_of(2) {
            let v = rng.gen_range(0..n);
            if !r.remove(&v) {
                r.insert(v);
            }
        }
        let inst = Instance::new(g, r).unwrap();
        let t = Instant::now();
        let s = solve(&inst, None, &opts()).unwrap();
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        if s.feasible || s.route != SolverPath::Handshake || dt >= Duration::from_millis(1) {
            bad.push(format!("{family} n {n}: feasible {} route {} in {dt:?}", s.feasible, s.route));
        }
    }
    verdict(&bad, format!("1000 odd instances, slowest {slowest:?}, {} failures", bad.len()))
}

struct Report {
    index: usize,
    failed: usize,
}

impl Report {
    fn record(&mut self, name: &str, out: Outcome) {
        self.index += 1;
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {tag}: {name}: {}", self.index, out.detail);
        self.failed += usize::from(!out.pass);
    }
}

fn main() {
    let mut log = Constructions::default();
    let mut r = Report { index: 0, failed: 0 };
    r.record("path oracle equivalence", path_oracle_equivalence(&mut log));
    r.record("convex graph oracle equivalence", convex_oracle_equivalence(&mut log));
    r.record("convex face closed forms", face_closed_forms(&mut log));
    r.record("construction soundness", construction_soundness(&log));
    r.record("universal happiness both ways", universal_happiness());
    r.record("tight hull restriction", tight_hull_restriction());
    r.record("zigzag negative family", zigzag_negative());
    r.record("scaling on convex paths", scaling());
    r.record("handshake fast path", handshake_fast_path());
    if r.failed > 0 {
        println!("{} criterion(s) failed", r.failed);
        std::process::exit(1);
    }
}

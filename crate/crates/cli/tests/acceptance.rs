//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//! Every expected value is an exact integer; only wall-clock budgets are tolerances.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use closure_cohomology::axioms::{random_subset, AxiomReport};
use closure_cohomology::sheaf::{SheafCondition, SheafReport, Stalk};
use closure_cohomology::{
    build_lattice, canonical_cover, cech_cohomology_space, cech_complex_alternating, cech_complex_full, check_sheaf,
    cohomology, is_interior_cover, CohomologyReport, ConstantCoefficients, Cover, FgAbGroup, FiniteClosureSpace,
    Metric, PointSet, PresheafData, Ring, SheafVerdict, DEFAULT_COVER_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;

const CYCLE_BUDGET: Duration = Duration::from_secs(1);
const AXIOM_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const SEED: u64 = 20_240_917;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cech-closure")
}

fn run<T: DeserializeOwned>(args: &[&str]) -> Result<(T, Duration, i32), String> {
    let start = Instant::now();
    let out = Command::new(bin()).args(args).output().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let code = out.status.code().unwrap_or(-1);
    let value = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: {e}; stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((value, elapsed, code))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn cycle_edges(m: usize) -> String {
    (0..m).map(|i| format!("{} {}\n", i, (i + 1) % m)).collect()
}

fn circle(m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            vec![t.cos(), t.sin()]
        })
        .collect()
}

fn z() -> ConstantCoefficients {
    ConstantCoefficients(FgAbGroup::integers())
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    uf[x] = r;
    r
}

fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut uf: Vec<usize> = (0..n).collect();
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        uf[ra] = rb;
    }
    (0..n).filter(|&x| find(&mut uf, x) == x).count()
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn cyclic_graphs(dir: &Path) -> Check {
    let mut times = Vec::new();
    for m in [8, 9, 12] {
        let path = write(dir, &format!("cycle{m}.txt"), &cycle_edges(m));
        let (report, elapsed, code): (CohomologyReport, _, _) = run(&["cohomology", "--graph", &path, "--ring", "Z"])?;
        ensure!(code == 0, "C{m}: exit {code}");
        ensure!(report.bettis()[..3] == [1, 1, 0], "C{m}: betti {:?}", report.bettis());
        ensure!(!report.has_torsion(), "C{m}: torsion present");
        ensure!(report.sheaf_valid_upto == 1, "C{m}: sheaf_valid_upto {}", report.sheaf_valid_upto);
        ensure!(elapsed < CYCLE_BUDGET, "C{m}: {elapsed:?} over {CYCLE_BUDGET:?}");
        times.push(format!("C{m} {:.0?}", elapsed));
    }
    Ok(format!("betti (1,1,0), no torsion; {}", times.join(", ")))
}

fn axiom_report() -> Result<(AxiomReport, Duration), String> {
    let seed = SEED.to_string();
    let (report, elapsed, code): (AxiomReport, _, _) = run(&["axioms", "--seed", &seed, "--spaces", "200", "--max-n", "10"])?;
    ensure!(code == 0, "axioms exit {code}: {:?}", report.violations);
    Ok((report, elapsed))
}

fn closure_axioms(report: &AxiomReport, elapsed: Duration) -> Check {
    ensure!(report.spaces == 200, "{} spaces", report.spaces);
    let groups = ["closure.", "interior.", "duality.", "neighborhood."];
    let counts: Vec<usize> = groups.iter().map(|g| report.count(g)).collect();
    ensure!(counts.iter().all(|&c| c > 0), "missing check families: {counts:?}");
    ensure!(report.violations.is_empty(), "violations: {:?}", report.violations);
    ensure!(elapsed < AXIOM_BUDGET, "{elapsed:?} over {AXIOM_BUDGET:?}");
    Ok(format!("200 spaces, {} closure/interior checks, 0 violations, {elapsed:.0?}", counts.iter().sum::<usize>()))
}

fn basis_axioms(report: &AxiomReport) -> Check {
    let basis = report.count("basis.") + report.count("refines.") + report.count("interior_cover.");
    for key in ["basis.identity", "basis.pullback", "basis.composition", "basis.intersection", "interior_cover.intersection"] {
        ensure!(report.checks.get(key).copied().unwrap_or(0) > 0, "no {key} checks");
    }
    let identity = report.checks["basis.identity"];
    ensure!(basis - identity >= 500, "only {} randomized checks", basis - identity);
    ensure!(report.violations.is_empty(), "violations: {:?}", report.violations);
    Ok(format!("{} randomized i-cover checks plus {identity} identity families, 0 violations", basis - identity))
}

fn random_interior_cover(rng: &mut ChaCha8Rng, space: &FiniteClosureSpace) -> Cover {
    let n = space.n();
    let k = rng.gen_range(1..=4);
    let mut elements: Vec<PointSet> = (0..k).map(|_| random_subset(rng, n, 0.5)).collect();
    for x in 0..n {
        if !elements.iter().any(|e| space.interior(e).contains(x)) {
            let j = rng.gen_range(0..k);
            elements[j].union_with(space.minimal_neighborhood(x).unwrap());
        }
    }
    if k < 4 && rng.gen_bool(0.3) {
        let dup = elements[0].clone();
        elements.push(dup);
    }
    Cover::of_space(space, elements).unwrap()
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let groups = [FgAbGroup::integers(), FgAbGroup::cyclic(2), FgAbGroup::new(1, vec![2]).unwrap()];
    let instances = 60;
    let mut compared = 0;
    for i in 0..instances {
        let n = rng.gen_range(1..=5);
        let density = rng.gen_range(0.0..0.6);
        let rel: Vec<Vec<bool>> = (0..n).map(|y| (0..n).map(|x| x == y || rng.gen_bool(density)).collect()).collect();
        let space = FiniteClosureSpace::from_relation(n, &rel).map_err(|e| e.to_string())?;
        let cover = random_interior_cover(&mut rng, &space);
        ensure!(is_interior_cover(&space, &cover), "instance {i}: not an interior cover");
        let q = rng.gen_range(1..=3);
        let coeffs = ConstantCoefficients(groups[i % groups.len()].clone());
        let full = cech_complex_full(&cover, &coeffs, q).map_err(|e| e.to_string())?;
        let alt = cech_complex_alternating(&cover, &coeffs, q).map_err(|e| e.to_string())?;
        for ring in [Ring::Integers, Ring::PrimeField(2)] {
            let a = cohomology(&full, ring).map_err(|e| e.to_string())?;
            let b = cohomology(&alt, ring).map_err(|e| e.to_string())?;
            ensure!(a.degrees == b.degrees, "instance {i} over {ring}: {:?} vs {:?}", a.degrees, b.degrees);
            compared += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < ORACLE_BUDGET, "{elapsed:?} over {ORACLE_BUDGET:?}");
    Ok(format!("{instances} instances, {compared} ring comparisons, 0 mismatches, {elapsed:.1?}"))
}

fn component_count() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for i in 0..100 {
        let n = rng.gen_range(1..=16);
        let p = rng.gen_range(0.0..0.3);
        let edges = random_edges(&mut rng, n, p);
        let space = FiniteClosureSpace::from_graph(n, &edges).map_err(|e| e.to_string())?;
        let r = cech_cohomology_space(&space, &z(), Ring::Integers, 1).map_err(|e| e.to_string())?;
        let want = components(n, &edges);
        ensure!(r.degrees[0].betti == want, "graph {i}: betti0 {} vs {want} components", r.degrees[0].betti);
    }
    Ok("100 random graphs, betti0 = union-find count".into())
}

fn metric_sweep(dir: &Path) -> Check {
    let pts = circle(12);
    // Build-time pre-verification of the middle case on the full-product complex.
    let mid = FiniteClosureSpace::from_metric(&pts, Metric::Euclidean, 0.6).map_err(|e| e.to_string())?;
    let full = cech_complex_full(&canonical_cover(&mid), &z(), 1).map_err(|e| e.to_string())?;
    let oracle = cohomology(&full, Ring::Integers).map_err(|e| e.to_string())?.bettis();
    ensure!(oracle == [1, 1], "full-product oracle at r=0.6 gives {oracle:?}");

    let csv: String = pts.iter().map(|p| format!("{:?},{:?}\n", p[0], p[1])).collect();
    let path = write(dir, "circle12.csv", &csv);
    for (r, want) in [("0.2", [12, 0]), ("0.6", [1, 1]), ("2.1", [1, 0])] {
        let (report, _, code): (CohomologyReport, _, _) =
            run(&["cohomology", "--points", &path, "--metric", "euclidean", "--r", r, "--q-max", "1"])?;
        ensure!(code == 0, "r={r}: exit {code}");
        ensure!(report.bettis() == want, "r={r}: betti {:?}", report.bettis());
    }
    let (scan, _, code): (Vec<serde_json::Value>, _, _) =
        run(&["scan", "--points", &path, "--metric", "euclidean", "--r-min", "0.2", "--r-max", "2.2", "--steps", "5"])?;
    ensure!(code == 0, "scan exit {code}");
    let b0: Vec<u64> = scan.iter().map(|e| e["degrees"][0]["betti"].as_u64().unwrap_or(0)).collect();
    ensure!(b0.first() == Some(&12) && b0.last() == Some(&1), "scan betti0 {b0:?}");
    ensure!(b0.windows(2).all(|w| w[0] >= w[1]), "scan betti0 not descending: {b0:?}");
    Ok(format!("r=0.2 (12,0), r=0.6 (1,1), r=2.1 (1,0); full-product oracle agrees; scan betti0 {b0:?}"))
}

/// Constant ℤ over every family of lattice elements, including `U` itself:
/// gluing fails exactly when the nonempty members split into two overlap-disjoint blocks.
fn all_covers_oracle(space: &FiniteClosureSpace) -> Result<bool, String> {
    let lattice = build_lattice(space, 64).map_err(|e| e.to_string())?;
    let masks: Vec<u32> = lattice.elements().iter().map(|s| s.iter().fold(0, |m, x| m | 1 << x)).collect();
    let interior = |m: u32| -> u32 {
        let set = PointSet::from_indices(space.n(), (0..space.n()).filter(|b| m >> b & 1 == 1)).unwrap();
        space.interior(&set).iter().fold(0, |acc, x| acc | 1 << x)
    };
    for &u in &masks {
        let below: Vec<u32> = masks.iter().copied().filter(|&m| m & !u == 0 && m != 0).collect();
        for pick in 0u32..(1 << below.len()) {
            let fam: Vec<u32> = (0..below.len()).filter(|&i| pick >> i & 1 == 1).map(|i| below[i]).collect();
            let union = fam.iter().fold(0, |a, m| a | m);
            let iu = fam.iter().fold(0, |a, &m| a | interior(m));
            if union != u || iu != interior(u) || u == 0 {
                continue;
            }
            let mut uf: Vec<usize> = (0..fam.len()).collect();
            for a in 0..fam.len() {
                for b in (a + 1)..fam.len() {
                    if fam[a] & fam[b] != 0 {
                        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                        uf[ra] = rb;
                    }
                }
            }
            if (0..fam.len()).filter(|&x| find(&mut uf, x) == x).count() > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn sheaf_checker(dir: &Path) -> Check {
    let d2 = write(dir, "discrete2.txt", "n=2\n");
    let (r, _, code): (SheafReport, _, _) = run(&["check-sheaf", "--graph", &d2])?;
    ensure!(code == 0 && r.verdict == SheafVerdict::NotSheaf, "discrete pair: {:?} exit {code}", r.verdict);
    let witness = r.failures.iter().find(|f| f.condition == SheafCondition::Gluing).ok_or("no gluing failure")?;
    let cover: Vec<Vec<usize>> = witness.cover.iter().map(|s| s.to_vec()).collect();
    ensure!(cover == [vec![0], vec![1]], "witness {cover:?}");

    // Z on every element, ∅ included, identity restrictions.
    let space = FiniteClosureSpace::from_graph(2, &[]).unwrap();
    let lattice = build_lattice(&space, 16).unwrap();
    let mut p = PresheafData::explicit(vec![FgAbGroup::integers(); lattice.len()]);
    for a in 0..lattice.len() {
        for b in lattice.subelements(a) {
            p.set_restriction(a, b, closure_cohomology::IntMatrix::identity(1));
        }
    }
    let doc = closure_cohomology::ingest::PresheafDocument::from_presheaf(&lattice, &p).map_err(|e| e.to_string())?;
    let pre = write(dir, "nonzero_empty.json", &doc.to_json());
    let (r, _, _): (SheafReport, _, _) = run(&["check-sheaf", "--graph", &d2, "--presheaf", &pre])?;
    let empty = r.failures.iter().find(|f| f.set.is_empty()).ok_or("no failure on the empty set")?;
    ensure!(empty.cover.is_empty() && empty.condition == SheafCondition::Uniqueness, "empty-set failure {empty:?}");

    let k4 = write(dir, "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let (r, _, code): (SheafReport, _, _) = run(&["check-sheaf", "--graph", &k4])?;
    ensure!(code == 0 && r.verdict == SheafVerdict::Sheaf, "K4: {:?}", r.verdict);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut agreed = 0;
    for _ in 0..24 {
        let n = rng.gen_range(1..=4);
        let p = rng.gen_range(0.0..0.8);
        let space = FiniteClosureSpace::from_graph(n, &random_edges(&mut rng, n, p)).unwrap();
        let lattice = build_lattice(&space, 64).unwrap();
        let got = check_sheaf(&space, &lattice, &PresheafData::constant(&lattice, &FgAbGroup::integers()), DEFAULT_COVER_CAP)
            .map_err(|e| e.to_string())?;
        let want = all_covers_oracle(&space)?;
        ensure!((got.verdict == SheafVerdict::Sheaf) == want, "oracle says sheaf={want}, checker {:?}", got.verdict);
        agreed += 1;
    }
    Ok(format!("discrete pair fails gluing on {{{{0}},{{1}}}}; F(∅)≠0 fails on the empty cover; K4 passes; {agreed}/24 oracle agreements"))
}

fn stalks(dir: &Path) -> Check {
    let path = write(dir, "cycle8.txt", &cycle_edges(8));
    let (stalks, _, code): (Vec<Stalk>, _, _) = run(&["stalks", "--graph", &path])?;
    ensure!(code == 0 && stalks.len() == 8, "exit {code}, {} stalks", stalks.len());
    for s in &stalks {
        ensure!(s.stalk == FgAbGroup::free(2), "x={}: stalk {}", s.point, s.stalk);
        ensure!(s.neighborhood_stalk == FgAbGroup::integers() && s.lattice_stalk == FgAbGroup::integers(), "x={}: summands", s.point);
        ensure!(s.neighborhood_set.len() == 3 && s.neighborhood_set.contains(s.point), "x={}: V_x {}", s.point, s.neighborhood_set);
        ensure!(s.lattice_set.len() == 1 && s.lattice_set.contains(s.point), "x={}: m_x {}", s.point, s.lattice_set);
    }
    Ok("F(x) = Z ⊕ Z at all 8 points, F(V_x) = Z and F(m_x) = Z".into())
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let axioms = axiom_report();
    let results: Vec<(u8, &str, Check)> = vec![
        (1, "cyclic graphs", cyclic_graphs(dir.path())),
        (2, "closure axiom suite", axioms.as_ref().map_err(Clone::clone).and_then(|(r, t)| closure_axioms(r, *t))),
        (3, "cover basis suite", axioms.as_ref().map_err(Clone::clone).and_then(|(r, _)| basis_axioms(r))),
        (4, "full-product vs alternating", oracle_equivalence()),
        (5, "component count", component_count()),
        (6, "metric sweep", metric_sweep(dir.path())),
        (7, "sheaf checker", sheaf_checker(dir.path())),
        (8, "stalks", stalks(dir.path())),
    ];
    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS [{id}] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{id}] {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

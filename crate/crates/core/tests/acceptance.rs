//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines always reach standard output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qbmg::bigraph::BiGraph;
use qbmg::formats::{parse_graph, parse_tree, serialize_graph, serialize_tree};
use qbmg::genlab::{
    cross_check, enumerate_bipartite, random_bipartite, random_tree, random_un2qbmg, CrossCheckOptions, EnumConfig,
    Sampler, TreeGenConfig,
};
use qbmg::oracles::{membership_verdicts, DEFAULT_HEREDITARY_CAP};
use qbmg::phylo::PhyloTree;
use qbmg::recognition::{heart_tree, Verdict};
use qbmg::semantics::{
    check_explains, check_least_resolved, directed_qbmg, explain, same_graph_by_name, validate_lrt_structure,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn graph(name: &str) -> BiGraph {
    parse_graph(&fixture(name)).unwrap()
}

fn tree(name: &str) -> PhyloTree {
    parse_tree(&fixture(name)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:.0?}"))
}

/// Tree parameters for the `i`-th random instance: 1 to 24 leaves and
/// mixed shape, truncation and color settings.
fn tree_config(i: u64) -> TreeGenConfig {
    let mut s = Sampler::new(i ^ 0x5eed_0000);
    TreeGenConfig {
        leaf_count: 1 + (i % 24) as usize,
        seed: i,
        internal_bias: s.unit(),
        trunc_self_prob: s.unit() * 0.6,
        color_prob: 0.2 + 0.6 * s.unit(),
    }
}

fn fixture_verdicts() -> Check {
    let start = Instant::now();
    for name in ["p6.graph", "c6.graph", "sunlet4.graph"] {
        let g = graph(name);
        let v = membership_verdicts(&g, DEFAULT_HEREDITARY_CAP).map_err(|e| e.to_string())?;
        ensure(!v.heart_tree && !v.forbidden_free && !v.hereditary, || format!("{name}: {v:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("3 patterns rejected by all three tests in {:.2?}", start.elapsed()))
}

fn small_case_completeness() -> Check {
    let start = Instant::now();
    let corpus = enumerate_bipartite(&EnumConfig::new(5).connected_only()).unwrap();
    let report = cross_check(corpus, &CrossCheckOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.accepted() == report.total(), || format!("{} of {} accepted", report.accepted(), report.total()))?;
    // labeled connected bipartite graphs on 1..=5 vertices: 1 + 1 + 3 + 19 + 195
    ensure(report.total() == 219, || format!("enumerated {} graphs, expected 219", report.total()))?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{} graphs, all accepted, {:.2?}", report.total(), start.elapsed()))
}

fn three_way_equivalence() -> Check {
    let start = Instant::now();
    let corpus = enumerate_bipartite(&EnumConfig::new(7)).unwrap();
    let report = cross_check(corpus, &CrossCheckOptions::default()).map_err(|e| e.to_string())?;
    if let Some(d) = &report.disagreement {
        return Err(format!("disagreement at {}: {:?}\n{}", d.id, d.verdicts, d.graph_text));
    }
    within(start.elapsed(), Duration::from_secs(30 * 60))?;
    Ok(format!(
        "{} graphs, {} accepted, {} rejected, 0 disagreements, {:.2?}",
        report.total(),
        report.accepted(),
        report.rejected(),
        start.elapsed()
    ))
}

fn round_trip_soundness() -> Check {
    let start = Instant::now();
    for i in 0..10_000 {
        let cfg = tree_config(i);
        let t = random_tree(&cfg).unwrap();
        let g = explain(&t).graph;
        let Verdict::Accepted(back) = heart_tree(&g).unwrap() else {
            return Err(format!("seed {i}: explained graph rejected, tree {}", serialize_tree(&t)));
        };
        let again = explain(&back).graph;
        ensure(same_graph_by_name(&again, &g) == Ok(true), || format!("seed {i}: edge sets differ"))?;
        ensure(check_least_resolved(&back, &g) == Ok(true), || format!("seed {i}: not least-resolved"))?;
        let audit = validate_lrt_structure(&back, &g).map_err(|e| e.to_string())?;
        ensure(audit.is_empty(), || format!("seed {i}: audit {audit:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("10000 trees, {:.2?}", start.elapsed()))
}

fn directed_consistency() -> Check {
    for i in 0..10_000 {
        let t = random_tree(&tree_config(i)).unwrap();
        ensure(directed_qbmg(&t).underlying() == explain(&t).graph, || format!("seed {i}"))?;
    }
    Ok("10000 trees".into())
}

fn figure_reproduction() -> Check {
    let cherries = tree("two_cherries.tree");
    let d = directed_qbmg(&cherries);
    let arcs: Vec<(String, String)> = d.arcs().map(|(x, y)| (d.names[x].clone(), d.names[y].clone())).collect();
    let expected_arcs = [("x1", "x2"), ("x3", "x4"), ("x4", "x3")];
    ensure(
        arcs.len() == 3 && expected_arcs.iter().all(|(a, b)| arcs.contains(&(a.to_string(), b.to_string()))),
        || format!("arcs {arcs:?}"),
    )?;
    ensure(check_explains(&cherries, &graph("two_edges.graph")) == Ok(true), || "two cherries".into())?;

    for (t, g) in [
        ("p4.tree", "p4.graph"),
        ("p5.tree", "p5.graph"),
        ("spider5.tree", "spider5.graph"),
        ("c4_pendant.tree", "c4_pendant.graph"),
    ] {
        ensure(check_explains(&tree(t), &graph(g)) == Ok(true), || format!("{t} does not explain {g}"))?;
    }
    // contracting the inner arc of the P4 tree adds the edge x1x4
    let p4 = tree("p4.tree");
    let (v, w) = p4.internal_arcs()[0];
    let contracted = explain(&p4.contract_arc(v, w).unwrap()).graph;
    let (x1, x4) = (contracted.vertex_by_name("x1").unwrap(), contracted.vertex_by_name("x4").unwrap());
    ensure(contracted.has_edge(x1, x4) && contracted.edge_count() == 4, || "P4 contraction".into())?;

    let path = graph("path3.graph");
    let cherry = tree("path3_cherry.tree");
    ensure(check_explains(&cherry, &path) == Ok(true), || "cherry tree explains".into())?;
    ensure(check_least_resolved(&cherry, &path) == Ok(false), || "cherry tree is least-resolved".into())?;
    ensure(check_least_resolved(&tree("path3_star.tree"), &path) == Ok(true), || "star tree".into())?;
    Ok("directed arcs, P4/P5/spider/C4-pendant trees, contraction, least-resolved checks".into())
}

fn random_subset(g: &BiGraph, s: &mut Sampler) -> Vec<usize> {
    let n = g.vertex_count();
    let keep = 1 + s.below(n);
    let mut vs: Vec<usize> = (0..n).collect();
    s.shuffle(&mut vs);
    vs.truncate(keep);
    vs
}

fn component(i: u64, s: &mut Sampler) -> BiGraph {
    loop {
        let cfg = TreeGenConfig { leaf_count: 2 + s.below(20), seed: s.next_u64(), ..tree_config(i) };
        let g = random_un2qbmg(&cfg).unwrap();
        if g.class_sizes().iter().all(|&c| c > 0) {
            return g;
        }
    }
}

fn relabeled_union(parts: &[BiGraph]) -> BiGraph {
    let renamed: Vec<BiGraph> = parts
        .iter()
        .enumerate()
        .map(|(k, g)| g.renamed(g.names().iter().map(|n| format!("c{k}_{n}")).collect()).unwrap())
        .collect();
    BiGraph::disjoint_union(&renamed).unwrap()
}

fn hereditarity_and_union() -> Check {
    let mut s = Sampler::new(7);
    for i in 0..1_000 {
        let g = random_un2qbmg(&TreeGenConfig { leaf_count: 1 + s.below(40), ..tree_config(i) }).unwrap();
        ensure(heart_tree(&g).unwrap().is_accepted(), || format!("graph {i} rejected"))?;
        for _ in 0..10 {
            let vs = random_subset(&g, &mut s);
            let (sub, _) = g.induced_subgraph(&vs).unwrap();
            ensure(heart_tree(&sub).unwrap().is_accepted(), || format!("graph {i}: subgraph {vs:?} rejected"))?;
        }
    }
    let p6 = graph("p6.graph");
    for i in 0..200 {
        let mut parts: Vec<BiGraph> = (0..2 + s.below(3)).map(|_| component(i, &mut s)).collect();
        let u = relabeled_union(&parts);
        ensure(heart_tree(&u).unwrap().is_accepted(), || format!("union {i} rejected"))?;
        let slot = s.below(parts.len());
        parts[slot] = p6.clone();
        let with_p6 = relabeled_union(&parts);
        ensure(!heart_tree(&with_p6).unwrap().is_accepted(), || format!("union {i} with P6 accepted"))?;
    }
    Ok("10000 induced subgraphs accepted, 200 unions accepted, 200 unions with P6 rejected".into())
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn complexity_envelope() -> Check {
    let sizes = [200usize, 400, 800, 1600];
    let mut points = Vec::new();
    for &n in &sizes {
        let cfg =
            TreeGenConfig { leaf_count: n, seed: n as u64, internal_bias: 0.9, trunc_self_prob: 0.3, color_prob: 0.5 };
        let g = random_un2qbmg(&cfg).unwrap();
        let runs: Vec<f64> = (0..5)
            .map(|_| {
                let start = Instant::now();
                let v = heart_tree(&g).unwrap();
                let secs = start.elapsed().as_secs_f64();
                assert!(v.is_accepted());
                secs
            })
            .collect();
        points.push((n as f64, median(runs)));
    }
    let k = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(n, t)| (n.ln(), t.ln())).unzip();
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    let largest = points.last().unwrap().1;
    let table: Vec<String> = points.iter().map(|(n, t)| format!("n={n} {:.1}ms", t * 1e3)).collect();
    ensure(slope <= 3.3, || format!("fitted exponent {slope:.2} ({})", table.join(", ")))?;
    ensure(largest < 30.0, || format!("n=1600 took {largest:.1}s"))?;
    Ok(format!("fitted exponent {slope:.2}; {}", table.join(", ")))
}

fn format_round_trips() -> Check {
    let mut s = Sampler::new(99);
    for i in 0..10_000u64 {
        let g = random_bipartite(1 + s.below(30), s.unit(), i).unwrap();
        ensure(parse_graph(&serialize_graph(&g)).as_ref() == Ok(&g), || format!("graph {i}"))?;
        let t = random_tree(&tree_config(i)).unwrap();
        ensure(parse_tree(&serialize_tree(&t)).as_ref() == Ok(&t), || format!("tree {i}"))?;
    }
    Ok("10000 graphs and 10000 trees".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("fixture verdicts", fixture_verdicts),
        ("small-case completeness", small_case_completeness),
        ("three-way equivalence n<=7", three_way_equivalence),
        ("round-trip soundness", round_trip_soundness),
        ("directed/undirected consistency", directed_consistency),
        ("figure reproduction", figure_reproduction),
        ("hereditarity and union", hereditarity_and_union),
        ("complexity envelope", complexity_envelope),
        ("format round-trips", format_round_trips),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

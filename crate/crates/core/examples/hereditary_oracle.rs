//! The three membership tests side by side.

use qbmg::bigraph::BiGraph;
use qbmg::oracles::{hereditary_heart_check, membership_verdicts, pattern_graph, HeartCheck, DEFAULT_HEREDITARY_CAP};
use qbmg::recognition::PatternId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut graphs: Vec<(String, BiGraph)> =
        PatternId::ALL.iter().map(|&id| (id.to_string(), pattern_graph(id))).collect();
    graphs.push((
        "K3,3".into(),
        BiGraph::from_bits(
            &[0, 0, 0, 1, 1, 1],
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )?,
    ));
    for (label, g) in &graphs {
        let v = membership_verdicts(g, DEFAULT_HEREDITARY_CAP)?;
        println!(
            "{label:8} heart-tree={} forbidden-free={} hereditary={}",
            v.heart_tree, v.forbidden_free, v.hereditary
        );
        if let HeartCheck::Violated(vs) = hereditary_heart_check(g)? {
            let names: Vec<&str> = vs.iter().map(|&v| g.name(v)).collect();
            println!("         smallest heartless set: {}", names.join(" "));
        }
    }
    Ok(())
}

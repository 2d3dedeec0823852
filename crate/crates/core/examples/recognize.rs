//! Recognize a graph file, or a few built-in graphs when no path is given.
//!
//! ```text
//! cargo run --example recognize -- crates/core/fixtures/p5.graph
//! ```

use qbmg::formats::{parse_graph, serialize_tree};
use qbmg::recognition::{heart_tree, Verdict};
use qbmg::BiGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs: Vec<(String, BiGraph)> = match std::env::args().nth(1) {
        Some(path) => vec![(path.clone(), parse_graph(&std::fs::read_to_string(&path)?)?)],
        None => vec![
            ("P5".into(), parse_graph("v a 0\nv b 1\nv c 0\nv d 1\nv e 0\ne a b\ne b c\ne c d\ne d e\n")?),
            ("C4 plus pendant".into(), parse_graph("v a\nv b\nv c\nv d\nv e\ne a b\ne b c\ne c d\ne d a\ne d e\n")?),
            ("P6".into(), parse_graph("v a\nv b\nv c\nv d\nv e\nv f\ne a b\ne b c\ne c d\ne d e\ne e f\n")?),
        ],
    };
    for (label, g) in inputs {
        match heart_tree(&g)? {
            Verdict::Accepted(t) => println!("{label}: accepted, tree {}", serialize_tree(&t)),
            Verdict::Rejected(w) => println!("{label}: rejected, {}", w.describe(g.names())),
        }
    }
    Ok(())
}

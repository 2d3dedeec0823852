//! The directed and undirected graphs explained by a tree.

use qbmg::formats::{parse_tree, serialize_graph};
use qbmg::semantics::{best_matches, directed_qbmg, explain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // x2 keeps its truncation at itself, so it sends no arcs
    let t = parse_tree("((x1[c=0,u=root],x2[c=1,u=self]),(x3[c=0,u=root],x4[c=1,u=root]));")?;

    for x in t.leaves() {
        let names: Vec<&str> = best_matches(&t, x).iter().map(|&y| t.leaf(y).unwrap().name.as_str()).collect();
        println!("best matches of {}: {}", t.leaf(x).unwrap().name, names.join(" "));
    }

    let d = directed_qbmg(&t);
    for (x, y) in d.arcs() {
        println!("arc {} -> {}", d.names[x], d.names[y]);
    }
    print!("{}", serialize_graph(&explain(&t).graph));
    Ok(())
}

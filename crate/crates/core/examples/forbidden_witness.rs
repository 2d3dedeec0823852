//! Turning a rejection into a forbidden induced subgraph.

use qbmg::formats::parse_graph;
use qbmg::oracles::{find_forbidden, refine_witness};
use qbmg::recognition::heart_tree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a 4-cycle with a pendant on every vertex, plus an extra tail
    let g = parse_graph(
        "v a 0\nv b 1\nv c 0\nv d 1\nv pa 1\nv pb 0\nv pc 1\nv pd 0\nv t 1\n\
         e a b\ne b c\ne c d\ne d a\ne a pa\ne b pb\ne c pc\ne d pd\ne pb t\n",
    )?;
    let verdict = heart_tree(&g)?;
    let witness = verdict.witness().expect("graph contains a forbidden pattern");
    println!("recognition: {}", witness.describe(g.names()));
    println!("refined:     {}", refine_witness(&g, witness)?.describe(g.names()));

    let direct = find_forbidden(&g).expect("same answer without recognition");
    let images: Vec<&str> = direct.map.iter().map(|&v| g.name(v)).collect();
    println!("direct search: {} at {}", direct.pattern, images.join(" "));
    Ok(())
}

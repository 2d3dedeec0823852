//! Seeded generators: tree-explained members and random bipartite graphs.

use qbmg::formats::serialize_tree;
use qbmg::genlab::{random_bipartite, random_tree, random_un2qbmg, TreeGenConfig};
use qbmg::recognition::is_un2qbmg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = TreeGenConfig { internal_bias: 0.7, ..TreeGenConfig::new(8, 2024) };
    println!("tree: {}", serialize_tree(&random_tree(&cfg)?));
    let member = random_un2qbmg(&cfg)?;
    println!(
        "explained graph: {} vertices, {} edges, member = {}",
        member.vertex_count(),
        member.edge_count(),
        is_un2qbmg(&member)
    );

    for p in [0.2, 0.5, 0.8] {
        let members = (0..1000).filter(|&seed| is_un2qbmg(&random_bipartite(10, p, seed).unwrap())).count();
        println!("random bipartite n=10 p={p}: {members}/1000 members");
    }
    Ok(())
}

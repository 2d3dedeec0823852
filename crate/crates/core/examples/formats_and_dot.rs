//! Text formats, graph6 import and DOT export.

use qbmg::bigraph::Bipartition;
use qbmg::formats::{export_dot, parse_graph, parse_graph6, parse_tree, serialize_graph, serialize_tree};
use qbmg::recognition::heart_tree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph("# colors inferred\nv p\nv q\nv r\nv s\ne q p\ne q r\ne s r\n")?;
    print!("{}", serialize_graph(&g));

    let t = heart_tree(&g)?.tree().cloned().expect("P4 is a member");
    let text = serialize_tree(&t);
    assert_eq!(parse_tree(&text)?, t);
    println!("{text}");
    print!("{}", export_dot(&t));

    if let Bipartition::Proper(h) = parse_graph6("Cl")? {
        print!("{}", export_dot(&h));
    }
    match parse_tree("((x[c=0,u=self]));") {
        Err(e) => println!("rejected as expected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

//! Least-resolved trees: contraction test, structural audit and unions.

use qbmg::formats::{parse_graph, parse_tree, serialize_tree};
use qbmg::recognition::heart_tree;
use qbmg::semantics::{check_explains, check_least_resolved, union_explainer, validate_lrt_structure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = parse_graph("v x 0\nv y 1\nv z 0\ne x y\ne y z\n")?;
    let cherry = parse_tree("((x[c=0,u=root],y[c=1,u=root]),z[c=0,u=root]);")?;
    let star = parse_tree("(x[c=0,u=root],y[c=1,u=root],z[c=0,u=root]);")?;
    for (label, t) in [("cherry", &cherry), ("star", &star)] {
        println!(
            "{label}: explains={} least_resolved={} audit={:?}",
            check_explains(t, &path)?,
            check_least_resolved(t, &path)?,
            validate_lrt_structure(t, &path)?
        );
    }

    let a = heart_tree(&parse_graph("v a1 0\nv a2 1\nv a3 0\ne a1 a2\ne a2 a3\n")?)?.tree().cloned().unwrap();
    let b = heart_tree(&parse_graph("v b1 1\nv b2 0\ne b1 b2\n")?)?.tree().cloned().unwrap();
    println!("union: {}", serialize_tree(&union_explainer(&[a, b])?));
    Ok(())
}

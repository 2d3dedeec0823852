//! Exhaustive agreement check of the three tests on small graphs.
//!
//! ```text
//! cargo run --release --example cross_check -- 6
//! ```

use qbmg::genlab::{cross_check, enumerate_bipartite, CrossCheckOptions, EnumConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    for connected_only in [true, false] {
        let cfg = EnumConfig { connected_only, ..EnumConfig::new(max_n) };
        let report = cross_check(enumerate_bipartite(&cfg)?, &CrossCheckOptions::default())?;
        println!(
            "n <= {max_n}, connected_only = {connected_only}: {} graphs, {} accepted, {} rejected, agree = {}",
            report.total(),
            report.accepted(),
            report.rejected(),
            report.all_agree()
        );
    }
    let iso = enumerate_bipartite(&EnumConfig::new(max_n).connected_only().iso_classes())?.count();
    println!("connected color-preserving isomorphism classes: {iso}");
    Ok(())
}

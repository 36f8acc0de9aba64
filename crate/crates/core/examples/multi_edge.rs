//! Embeddings of mK_n^3, by splicing copies of a simple set into a base.

use kn3::builder::{build_multi, Choices};
use kn3::{genus_formula, set_to_scheme, trace_faces, HypergraphSpec};

fn main() -> kn3::Result<()> {
    for (n, m) in [(4, 2), (4, 3), (6, 2), (6, 3), (8, 2), (10, 3)] {
        for orientable in [true, false] {
            let set = build_multi(n, m, orientable, &Choices::seeded(1))?;
            let report = trace_faces(&set_to_scheme(&set)?)?;
            let expected = genus_formula(HypergraphSpec::new(n, m)?, orientable)?;
            let kind = if orientable { "genus" } else { "crosscaps" };
            println!("{m}K_{n}^3 {kind}: {} (formula {expected})", report.surface_genus());
        }
    }
    Ok(())
}

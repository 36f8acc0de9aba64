//! Non-orientable minimum embeddings, and the pair (3,5) that keeps them so.

use kn3::builder::{build_even, Choices};
use kn3::circuits::never_strong_pairs;
use kn3::{set_to_scheme, trace_faces};

fn main() -> kn3::Result<()> {
    for n in (6..=16).step_by(2) {
        let set = build_even(n, false, &Choices::seeded(n as u64))?;
        let report = trace_faces(&set_to_scheme(&set)?)?;
        let stuck = never_strong_pairs(&set);
        println!(
            "K_{n}^3: crosscaps {}, orientable {}, (3,5) never strong: {}",
            report.surface_genus(),
            report.orientable,
            stuck.contains(&(3, 5))
        );
    }
    Ok(())
}

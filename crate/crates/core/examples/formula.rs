//! Genus table for small orders: `cargo run --example formula`.

use kn3::levi::euler_genus_lower_bound;
use kn3::{genus_formula, HypergraphSpec};

fn main() -> kn3::Result<()> {
    println!("{:>3} {:>3} {:>8} {:>10} {:>10}", "n", "m", "bound", "genus", "crosscaps");
    for n in (4..=20).step_by(2) {
        for m in 1..=3 {
            let spec = HypergraphSpec::new(n, m)?;
            let g = genus_formula(spec, true)?;
            // K_4^3 is planar, so it has no non-orientable quadrangulation
            let c = genus_formula(spec, false).map_or("-".to_string(), |c| c.to_string());
            println!("{n:>3} {m:>3} {:>8} {g:>10} {c:>10}", euler_genus_lower_bound(spec));
        }
    }
    Ok(())
}

//! Sample inequivalent embedding sets and compare with the counting bounds.

use kn3::census::{count_lower_bound, count_upper_bound, enumerate_variants, exhaustive_classes};

fn main() -> kn3::Result<()> {
    println!("n=4: {} class(es) by exhaustive search", exhaustive_classes(4, 6)?);
    for n in [6, 8, 10] {
        let found = enumerate_variants(n, true, 50, 7)?;
        println!(
            "n={n}: {} classes from {} attempts{}; R_n >= {}, at most {}",
            found.sets.len(),
            found.attempts,
            if found.exhausted { " (budget exhausted)" } else { "" },
            count_lower_bound(n)?,
            count_upper_bound(n)?
        );
    }
    Ok(())
}

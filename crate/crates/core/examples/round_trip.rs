//! Sets and schemes determine each other: set -> scheme -> set is the
//! identity up to rotating circuits, and orientability matches strength.

use kn3::builder::{build_multi, Choices};
use kn3::scheme::is_orientable;
use kn3::{is_embedding_set, scheme_to_set, set_to_scheme};

fn main() -> kn3::Result<()> {
    let mut agree = 0;
    let mut total = 0;
    for seed in 0..40 {
        for (n, m) in [(6, 1), (8, 1), (6, 2)] {
            let orientable = seed % 2 == 0;
            let set = build_multi(n, m, orientable, &Choices::seeded(seed))?;
            let sch = set_to_scheme(&set)?;
            let back = scheme_to_set(&sch)?;
            let strong = is_embedding_set(&set, true).is_valid();
            total += 1;
            if back.equivalent(&set) && is_orientable(&sch) == strong {
                agree += 1;
            }
        }
    }
    println!("{agree}/{total} round trips agree");
    Ok(())
}

//! Relabel a set by a permutation and recover the permutation.

use kn3::builder::{build_even, Choices};
use kn3::census::{canonicalize, relabel, sets_isomorphic, DEFAULT_ISOMORPHISM_BOUND};

fn main() -> kn3::Result<()> {
    let a = build_even(8, true, &Choices::seeded(3))?;
    let sigma = [5, 2, 8, 1, 7, 3, 6, 4];
    let b = relabel(&a, &sigma);
    println!("digests: {} / {}", &canonicalize(&a).digest()[..16], &canonicalize(&b).digest()[..16]);
    match sets_isomorphic(&a, &b, DEFAULT_ISOMORPHISM_BOUND)? {
        Some(found) => println!("isomorphic via {found:?}"),
        None => println!("not isomorphic"),
    }
    let c = build_even(8, true, &Choices::seeded(4))?;
    println!("another seed isomorphic: {}", sets_isomorphic(&a, &c, DEFAULT_ISOMORPHISM_BOUND)?.is_some());
    Ok(())
}

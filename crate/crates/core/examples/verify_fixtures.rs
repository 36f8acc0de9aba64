//! Run the validator over the hand-written sets, including one that is
//! not an embedding set at all.

use kn3::builder::fixtures;
use kn3::{is_embedding_set, set_to_scheme, trace_faces, EmbeddingSet};

fn show(name: &str, set: &EmbeddingSet) -> kn3::Result<()> {
    let report = is_embedding_set(set, false);
    if !report.is_valid() {
        println!("{name}: invalid, failing pairs {:?}", report.failing_pairs());
        return Ok(());
    }
    let strong = is_embedding_set(set, true).is_valid();
    let faces = trace_faces(&set_to_scheme(set)?)?;
    println!(
        "{name}: strong {strong}, orientable {}, surface genus {}",
        faces.orientable,
        faces.surface_genus()
    );
    Ok(())
}

fn main() -> kn3::Result<()> {
    show("planar K_4", &fixtures::planar_k4())?;
    show("strong K_6", &fixtures::strong_k6())?;
    show("non-orientable K_6", &fixtures::nonorientable_k6())?;
    show("non-orientable K_6 (as printed)", &fixtures::nonorientable_k6_as_printed())?;
    show("Klein 2K_4", &fixtures::klein_2k4())?;
    Ok(())
}

//! Strong embedding sets for K_n^3 and the orientable surfaces they trace.

use kn3::builder::{build_even, Choices};
use kn3::format::write_set;
use kn3::{genus_formula, set_to_scheme, trace_faces, HypergraphSpec};

fn main() -> kn3::Result<()> {
    for n in (4..=16).step_by(2) {
        let set = build_even(n, true, &Choices::first())?;
        let report = trace_faces(&set_to_scheme(&set)?)?;
        let expected = genus_formula(HypergraphSpec::complete(n)?, true)?;
        println!(
            "K_{n}^3: {} faces, all quadrilateral: {}, genus {} (formula {expected})",
            report.face_count,
            report.is_quadrilateral(),
            report.surface_genus()
        );
    }
    print!("\n{}", write_set(&build_even(6, true, &Choices::first())?));
    Ok(())
}

//! Face tracing on a rotation system: the scheme of a strong K_6^3 set, and
//! what a single rotation swap does to it.

use kn3::builder::fixtures;
use kn3::format::write_scheme;
use kn3::{set_to_scheme, trace_faces};

fn main() -> kn3::Result<()> {
    let mut sch = set_to_scheme(&fixtures::strong_k6())?;
    let report = trace_faces(&sch)?;
    println!("faces {} {:?}, Euler genus {}", report.face_count, report.histogram(), report.euler_genus);

    let rot = sch.rotation(0).to_vec();
    let mut swapped = rot.clone();
    swapped.swap(0, 1);
    sch.set_rotation(0, swapped)?;
    let report = trace_faces(&sch)?;
    println!("after swapping two edges at point 1: faces {:?}, Euler genus {}", report.histogram(), report.euler_genus);

    sch.set_rotation(0, rot)?;
    print!("\n{}", write_scheme(&sch));
    Ok(())
}

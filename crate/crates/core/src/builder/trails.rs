//! The explicit trails used in one induction step `n -> n+2`, with apex
//! vertices `x = n+1` and `y = n+2`.

use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::levi::Vertex;

fn check_order(n: u32) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n < 4 {
        return Err(Error::InvalidSpec { n, m: 1 });
    }
    Ok(())
}

/// `σ_i` for odd `i`: `2,1,4,3,…,i-1,i-2` followed by `i+2,…,n`.
pub fn build_sigma(i: Vertex, n: u32) -> Result<Vec<Vertex>> {
    check_order(n)?;
    if i.is_multiple_of(2) || i < 1 || i >= n {
        return Err(Error::UnsupportedCase(format!("sigma needs an odd index below {n}, got {i}")));
    }
    let mut out = Vec::with_capacity(n as usize - 2);
    for j in 1..=(i - 1) / 2 {
        out.extend([2 * j, 2 * j - 1]);
    }
    out.extend(i + 2..=n);
    Ok(out)
}

/// The trail `E_i` spliced into `T_i`. For odd `i` it alternates `x, y`
/// between the entries of `σ_i` and closes with `x, y, i+1`; for even `i`
/// the apexes swap roles, `σ_{i-1}` is used and it closes with `y, x, i-1`.
pub fn build_insertion(i: Vertex, n: u32) -> Result<Vec<Vertex>> {
    check_order(n)?;
    if i < 1 || i > n {
        return Err(Error::VertexAbsent(i));
    }
    let (x, y) = (n + 1, n + 2);
    let (first, second, partner) = if i % 2 == 1 { (x, y, i + 1) } else { (y, x, i - 1) };
    let sigma = build_sigma(if i % 2 == 1 { i } else { i - 1 }, n)?;
    let mut out = Vec::with_capacity(2 * sigma.len() + 3);
    for (k, &v) in sigma.iter().enumerate() {
        out.push(if k % 2 == 0 { first } else { second });
        out.push(v);
    }
    out.extend([first, second, partner]);
    Ok(out)
}

/// The new circuits `T_x` (avoiding `x`) and `T_y` (avoiding `y`), each the
/// concatenation of `n/2` subtrails.
pub fn build_apex_circuits(n: u32) -> Result<(Circuit, Circuit)> {
    check_order(n)?;
    let (x, y) = (n + 1, n + 2);
    // subtrails of T_x, all starting at y
    let mut tx = vec![y, 1, n, 2, n - 1, n];
    for i in (3..n - 2).step_by(2) {
        tx.extend([y, i, n, i + 1]);
        for j in 1..=(i - 1) / 2 {
            tx.extend([n + 1 - 2 * j, i - 2 * j, n - 2 * j, i + 1 - 2 * j]);
        }
        tx.extend([n - i, n + 1 - i]);
    }
    tx.push(y);
    tx.extend((1..=n / 2).map(|j| n + 1 - 2 * j));
    tx.push(2);

    // subtrails of T_y, all starting at x
    let mut ty = vec![x, 2, n, n - 1];
    for i in (3..n - 2).step_by(2) {
        ty.extend([x, i + 1, n]);
        for j in 1..=(i - 1) / 2 {
            ty.extend([i - 2 * j, n + 1 - 2 * j, i + 1 - 2 * j, n - 2 * j]);
        }
        ty.push(n - i);
    }
    ty.extend([x, n, n - 3]);
    for j in 1..=(n - 4) / 2 {
        ty.extend([n + 1 - 2 * j, n - 2 * j, n - 2 * j - 3]);
    }
    ty.extend([3, 2, 1]);

    let n2 = n + 2;
    Ok((Circuit::new(x, n2, 1, tx), Circuit::new(y, n2, 1, ty)))
}

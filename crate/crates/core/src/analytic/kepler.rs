use std::f64::consts::TAU;

use crate::roots::newton_bracketed;

/// Solves `E − ε sin E = M` for `ε ∈ [0, 1)` and any real `M`.
///
/// `M` is reduced to `[0, 2π)`, where the root is bracketed by `[0, 2π]`; Newton starts from
/// `M + ε sin M` and hands over to bisection whenever a step leaves the bracket.
pub fn solve_kepler(ecc: f64, m: f64) -> f64 {
    debug_assert!(
        (0.0..1.0).contains(&ecc),
        "eccentricity {ecc} outside [0, 1)"
    );
    if ecc == 0.0 {
        return m;
    }
    let k = (m / TAU).floor();
    let local = m - k * TAU;
    let e = newton_bracketed(
        |e| Ok((e - ecc * e.sin() - local, 1.0 - ecc * e.cos())),
        0.0,
        TAU,
        local + ecc * local.sin(),
    )
    .expect("closure is infallible");
    k * TAU + e
}

/// Kepler equation with a signed eccentricity, `E − ε_s sin E = M`. Negative `ε_s` is mapped
/// onto the standard form by the shift `E ↦ E + π`.
pub(crate) fn solve_kepler_signed(ecc_s: f64, m: f64) -> f64 {
    if ecc_s >= 0.0 {
        solve_kepler(ecc_s, m)
    } else {
        solve_kepler(-ecc_s, m + std::f64::consts::PI) - std::f64::consts::PI
    }
}

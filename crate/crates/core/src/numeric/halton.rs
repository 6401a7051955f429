/// Radical inverse of `index` in `base`, the one-dimensional Halton point.
pub fn halton(mut index: u64, base: u64) -> f64 {
    debug_assert!(base >= 2);
    let mut f = 1.0;
    let mut r = 0.0;
    let b = base as f64;
    while index > 0 {
        f /= b;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// Two-dimensional Halton point (bases 2 and 3) in the unit square.
/// Index 0 maps to the origin, so callers usually start from 1.
pub fn halton_2d(index: u64) -> (f64, f64) {
    (halton(index, 2), halton(index, 3))
}

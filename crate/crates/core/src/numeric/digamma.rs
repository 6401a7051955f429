//! Digamma function and stable digamma differences.
//!
//! Partial sums of reciprocals of an arithmetic progression are differences of
//! digamma values; for large arguments the two values agree to many digits, so
//! the difference is evaluated from the asymptotic series term by term.

use super::{ln, ln_1p, NeumaierSum};

/// `B_{2k} / (2k)` for k = 1..8.
const ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Arguments are shifted up to this value before the asymptotic series is used.
const SERIES_START: f64 = 10.0;

/// Differences spanning at most this many integer steps are summed directly.
const DIRECT_SPAN: f64 = 64.0;

/// ψ(x) for x > 0.
pub fn digamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut shift = 0.0;
    let mut x = x;
    while x < SERIES_START {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut pow = inv2;
    for c in ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    shift + ln(x) - 0.5 / x - series
}

/// ψ(x + d) − ψ(x) for x > 0, d ≥ 0, without cancellation between the two
/// digamma values.
pub fn digamma_diff(x: f64, d: f64) -> f64 {
    debug_assert!(x > 0.0 && d >= 0.0);
    if d == 0.0 {
        return 0.0;
    }
    if d <= DIRECT_SPAN && d == libm::floor(d) {
        let n = d as u64;
        return (0..n)
            .map(|i| 1.0 / (x + i as f64))
            .collect::<NeumaierSum>()
            .value();
    }

    let mut acc = NeumaierSum::new();
    let mut x = x;
    // ψ(y) − ψ(x) = ψ(y+1) − ψ(x+1) + 1/x − 1/y, and 1/x − 1/y = d/(x·y).
    while x < SERIES_START {
        acc.add(d / (x * (x + d)));
        x += 1.0;
    }
    let y = x + d;
    let a = 1.0 / x;
    let b = 1.0 / y;
    let a_minus_b = d / (x * y);
    acc.add(ln_1p(d / x));
    acc.add(0.5 * a_minus_b);

    // a^{2k} − b^{2k} = (a² − b²) · Σ_{i<k} a^{2(k−1−i)} b^{2i}
    let a2 = a * a;
    let b2 = b * b;
    let sq_diff = a_minus_b * (a + b);
    let mut inner = 1.0;
    let mut b_pow = b2;
    for c in ASYMPTOTIC {
        acc.add(c * sq_diff * inner);
        inner = a2 * inner + b_pow;
        b_pow *= b2;
    }
    acc.value()
}

/// Σ_{k=first}^{last} 1/(α + βk) for β > 0 and α + β·first > 0.
pub fn arithmetic_reciprocal_sum(alpha: f64, beta: f64, first: u64, last: u64) -> f64 {
    if last < first {
        return 0.0;
    }
    let offset = alpha / beta;
    let count = (last - first + 1) as f64;
    digamma_diff(first as f64 + offset, count) / beta
}

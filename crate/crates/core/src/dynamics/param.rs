//! Parameter-space utilities: the logarithmic time embedding h, the
//! landmark times t_n, seminorms, and the induced metrics on forcings.
//!
//! Suprema are approximated on fixed uniform sample grids; reported values
//! are therefore lower bounds with documented resolution.

/// Points per axis used by the seminorm sample grids.
const SEMINORM_SAMPLES: usize = 2001;
/// Truncation depth of the metric series; the tail is bounded by 2^-40.
const METRIC_TERMS: u32 = 40;
/// Sample points for the uniform distance over |t| <= 100.
const UNIF_SAMPLES: usize = 20001;
const UNIF_RANGE: f64 = 100.0;

/// h(t) = (t + 1) sin(ln(t + 1)) for t > 0 and 0 otherwise.
pub fn h_eval(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (t + 1.0) * (t + 1.0).ln().sin()
    }
}

/// t_n = e^{2 pi n} - 1: the times where the embedding locally looks like a
/// shifted identity, h(t_n + s) -> s.
pub fn t_n(n: u32) -> f64 {
    (2.0 * std::f64::consts::PI * n as f64).exp() - 1.0
}

/// Worst deviation of h(t_n + s) from s over |s| <= range, sampled.
pub fn shifted_time_sample(n: u32, range: f64, samples: usize) -> f64 {
    let tn = t_n(n);
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let s = -range + 2.0 * range * i as f64 / (samples - 1) as f64;
        worst = worst.max((h_eval(tn + s) - s).abs());
    }
    worst
}

/// Seminorm of g1 - g2: the sampled supremum of the difference over
/// |t| <= n.
pub fn seminorm_delta(n: u32, g1: impl Fn(f64) -> f64, g2: impl Fn(f64) -> f64) -> f64 {
    assert!(n >= 1, "seminorm index must be positive");
    let bound = n as f64;
    let mut sup: f64 = 0.0;
    for i in 0..SEMINORM_SAMPLES {
        let t = -bound + 2.0 * bound * i as f64 / (SEMINORM_SAMPLES - 1) as f64;
        sup = sup.max((g1(t) - g2(t)).abs());
    }
    sup
}

/// Metric d(g1, g2) = sum_n 2^-n delta_n/(1 + delta_n), truncated at
/// 40 terms.
pub fn metric_d(g1: impl Fn(f64) -> f64 + Copy, g2: impl Fn(f64) -> f64 + Copy) -> f64 {
    let mut acc = 0.0;
    for n in 1..=METRIC_TERMS {
        let d = seminorm_delta(n, g1, g2);
        acc += 2f64.powi(-(n as i32)) * d / (1.0 + d);
    }
    acc
}

/// Sampled uniform distance over |t| <= 100; a lower bound for the true
/// supremum.
pub fn metric_d_unif(g1: impl Fn(f64) -> f64, g2: impl Fn(f64) -> f64) -> f64 {
    let mut sup: f64 = 0.0;
    for i in 0..UNIF_SAMPLES {
        let t = -UNIF_RANGE + 2.0 * UNIF_RANGE * i as f64 / (UNIF_SAMPLES - 1) as f64;
        sup = sup.max((g1(t) - g2(t)).abs());
    }
    sup
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_vanishes_for_nonpositive_times() {
        for t in [-5.0, -0.001, 0.0] {
            assert_eq!(h_eval(t), 0.0);
        }
    }

    #[test]
    fn h_vanishes_at_landmark_times() {
        // the exact value is 0; floating-point noise scales with t_n
        for n in 1..=4 {
            assert!(h_eval(t_n(n)).abs() < 1e-3, "n={n}");
        }
        assert!(h_eval(t_n(1)).abs() < 1e-9);
    }

    #[test]
    fn h_looks_like_shifted_identity_near_t_n() {
        for n in [2, 3, 4] {
            let worst = shifted_time_sample(n, 10.0, 2001);
            assert!(worst <= 1e-3, "n={n}, worst={worst}");
        }
    }

    #[test]
    fn seminorm_examples() {
        assert_eq!(seminorm_delta(3, |t| t.cos(), |t| t.cos()), 0.0);
        for n in 1..=5 {
            let d = seminorm_delta(n, |_| 1.0, |_| 0.0);
            assert_eq!(d, 1.0);
        }
        let d = seminorm_delta(1, |t| t.sin(), |_| 0.0);
        assert!((d - 1f64.sin()).abs() < 1e-4);
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric_d(|t| t.sin(), |t| t.sin()), 0.0);
        // constant offset 1: every seminorm is 1, so the sum is
        // (1/2) * (1 - 2^-40)
        let d = metric_d(|_| 1.0, |_| 0.0);
        assert!((d - 0.5).abs() < 2f64.powi(-40));
        // symmetry on a sample pair
        let a = metric_d(|t| (0.3 * t).sin(), |t| 0.2 * t.cos());
        let b = metric_d(|t| 0.2 * t.cos(), |t| (0.3 * t).sin());
        assert_eq!(a, b);
    }

    #[test]
    fn metric_is_bounded_by_one() {
        let d = metric_d(|_| 1e12, |_| -1e12);
        assert!(d < 1.0);
    }

    #[test]
    fn unif_examples() {
        assert_eq!(metric_d_unif(|t| t.cos(), |t| t.cos()), 0.0);
        assert_eq!(metric_d_unif(|_| 2.5, |_| 0.0), 2.5);
        let eps = 0.05;
        let d = metric_d_unif(|t| eps * t.sin(), |_| 0.0);
        assert!((d - eps).abs() < 1e-4);
    }
}

/// Levin u-transform of the series Σ terms, returning (estimate, error estimate).
///
/// The estimate is taken at the order where successive transforms agree best.
pub fn levin_u(terms: &[f64]) -> (f64, f64) {
    let n = terms.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mut partial = Vec::with_capacity(n);
    let mut s = 0.0;
    for &t in terms {
        s += t;
        partial.push(s);
    }
    if terms.iter().skip(1).any(|t| *t == 0.0) {
        return (s, terms[n - 1].abs());
    }
    let beta = 1.0;
    let mut best = (s, f64::INFINITY);
    let mut prev: Option<f64> = None;
    let kmax = n.min(60);
    for k in 1..kmax {
        let mut num = 0.0;
        let mut den = 0.0;
        let mut binom = 1.0;
        for j in 0..=k {
            let omega = (j as f64 + beta) * terms[j];
            let ratio = ((j as f64 + beta) / (k as f64 + beta)).powi(k as i32 - 1);
            let w = binom * ratio / omega;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            num += sign * w * partial[j];
            den += sign * w;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        let est = num / den;
        if let Some(p) = prev {
            let diff = (est - p).abs();
            if diff < best.1 && est.is_finite() {
                best = (est, diff);
            }
        }
        prev = Some(est);
    }
    best
}

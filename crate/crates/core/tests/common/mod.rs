//! Shared helpers for integration tests: a self-contained RNG, an adaptive
//! Simpson rule kept independent of the library's Gauss-Kronrod engine, and
//! random orthogonal/spectrum generators.

#![allow(dead_code)]

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(GOLDEN);
        mix64(self.0)
    }

    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Log-uniform over `[lo, hi]`, both positive.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (self.range(lo.ln(), hi.ln())).exp()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }

    /// Random spectrum values, log-uniform in `[1e-2, 1e2]`.
    pub fn spectrum_values(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.log_uniform(1e-2, 1e2)).collect()
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson with Richardson correction; the independent 1-D oracle.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60)
}

/// Mean of `log |x_1|` on the circle: `(2/pi) * int_0^{pi/2} log(sin t) dt`,
/// with the log singularity at 0 split off analytically.
pub fn circle_mean_log_coordinate() -> f64 {
    let a = 0.1f64;
    // int_0^a log t dt
    let singular = a * (a.ln() - 1.0);
    // log(sin t / t) extends smoothly by 0 at t = 0
    let smooth_head = adaptive_simpson(
        &|t: f64| if t == 0.0 { 0.0 } else { (t.sin() / t).ln() },
        0.0,
        a,
        1e-14,
    );
    let tail = adaptive_simpson(
        &|t: f64| t.sin().ln(),
        a,
        core::f64::consts::FRAC_PI_2,
        1e-14,
    );
    (2.0 / core::f64::consts::PI) * (singular + smooth_head + tail)
}

/// Mean of `log ||diag(a, b) u||` over the unit circle by periodic trapezoid
/// (spectrally accurate for smooth periodic integrands).
pub fn circle_mean_log_norm(a: f64, b: f64) -> f64 {
    let n = 1 << 14;
    let mut sum = 0.0;
    for j in 0..n {
        let theta = 2.0 * core::f64::consts::PI * j as f64 / n as f64;
        let (c, s) = (theta.cos(), theta.sin());
        sum += 0.5 * (a * a * c * c + b * b * s * s).ln();
    }
    sum / n as f64
}

/// `int_0^inf log(r) r^{n-1} e^{-r^2/2} dr` by series near 0 plus adaptive
/// Simpson on the smooth part, to roughly `1e-12` relative accuracy.
///
/// The smooth part is integrated with the peak magnitude of
/// `r^{n-1} e^{-r^2/2}` scaled out (it reaches ~1e43 by `n = 64`, where an
/// absolute Simpson tolerance would be meaningless), then rescaled.
pub fn radial_log_moment_oracle(n: usize) -> f64 {
    let a = 0.5f64;
    // expand e^{-r^2/2}; int_0^a log(r) r^{n-1+2j} dr has a closed form
    let mut head = 0.0;
    let mut coeff = 1.0f64; // (-1/2)^j / j!
    for j in 0..24 {
        let p = (n + 2 * j) as f64;
        head += coeff * a.powf(p) * (p * a.ln() - 1.0) / (p * p);
        coeff *= -0.5 / (j + 1) as f64;
    }
    // log of the envelope's maximum, attained at r = sqrt(n - 1)
    let peak = if n > 1 {
        let r2 = (n - 1) as f64;
        0.5 * r2 * (r2.ln() - 1.0)
    } else {
        0.0
    };
    let nm1 = n as f64 - 1.0;
    let scaled = |r: f64| r.ln() * (nm1 * r.ln() - 0.5 * r * r - peak).exp();
    // integrate over a ladder of short intervals (with the envelope's maximum
    // inserted) so no bump can slip between coarse probe points
    let mut points = vec![
        0.5, 1.0, 1.5, 2.0, 3.0, 4.5, 7.0, 10.0, 15.0, 22.0, 33.0, 45.0,
    ];
    points.push(nm1.max(1.0).sqrt());
    points.retain(|&p| p >= a);
    points.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
    points.dedup();
    let mut tail = 0.0;
    for w in points.windows(2) {
        tail += adaptive_simpson(&scaled, w[0], w[1], 1e-14);
    }
    head + tail * peak.exp()
}

/// Row-major product of two square matrices.
pub fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Random orthogonal matrix as a product of `3 n^2` random plane rotations.
pub fn random_orthogonal(n: usize, rng: &mut TestRng) -> Vec<f64> {
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    if n == 1 {
        if rng.uniform() < 0.5 {
            q[0] = -1.0;
        }
        return q;
    }
    for _ in 0..3 * n * n {
        let i = rng.usize_in(0, n - 2);
        let j = rng.usize_in(i + 1, n - 1);
        let theta = rng.range(0.0, 2.0 * core::f64::consts::PI);
        let (c, s) = (theta.cos(), theta.sin());
        for col in 0..n {
            let x = q[i * n + col];
            let y = q[j * n + col];
            q[i * n + col] = c * x - s * y;
            q[j * n + col] = s * x + c * y;
        }
    }
    q
}

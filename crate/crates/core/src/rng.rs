//! Counter-based sample streams for reproducible Monte Carlo.
//!
//! Every draw is a pure function of `(seed, sample_index, position)`, so
//! sample vectors are identical whether indices are visited serially, in
//! parallel, or out of order.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// splitmix64 finalizer
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) struct SampleStream {
    base: u64,
    counter: u64,
}

impl SampleStream {
    pub fn new(seed: u64, sample_index: u64) -> Self {
        let base = mix64(
            mix64(seed.wrapping_add(GOLDEN))
                ^ sample_index.wrapping_mul(GOLDEN).wrapping_add(STREAM_SALT),
        );
        Self { base, counter: 0 }
    }

    fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.base.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform in the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Box-Muller pair of standard normals.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u = self.uniform();
        let v = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u));
        let theta = 2.0 * core::f64::consts::PI * v;
        (r * libm::cos(theta), r * libm::sin(theta))
    }
}

/// Fills `buf` with standard normal draws determined by `(seed, sample_index)`.
///
/// Redraws from the continuation of the same stream in the measure-zero event
/// that every coordinate comes out exactly zero.
pub(crate) fn fill_gaussian(buf: &mut [f64], seed: u64, sample_index: u64) {
    let mut stream = SampleStream::new(seed, sample_index);
    loop {
        let mut i = 0;
        while i + 1 < buf.len() {
            let (a, b) = stream.normal_pair();
            buf[i] = a;
            buf[i + 1] = b;
            i += 2;
        }
        if i < buf.len() {
            buf[i] = stream.normal_pair().0;
        }
        if buf.iter().any(|&x| x != 0.0) {
            return;
        }
    }
}

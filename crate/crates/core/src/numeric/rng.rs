use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{NumericError, Rat, Vec3};

/// Exponent of the dyadic grid used for random rationals.
pub const DYADIC_BITS: u32 = 30;
const DYADIC_DEN: i64 = 1 << DYADIC_BITS;

/// Deterministic, platform-independent random stream.
///
/// Backed by ChaCha8 with its native 64-bit stream selector, so
/// `(seed, stream_id)` pairs are independent and replay bit-for-bit.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    counter: u64,
    inner: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> RngStream {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            counter: 0,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Number of 64-bit words drawn so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// An independent stream keyed by `index`, used to give each trial of a
    /// randomized check its own reproducible stream.
    pub fn substream(&self, index: u64) -> RngStream {
        RngStream::new(self.seed, splitmix64(splitmix64(self.stream_id) ^ index))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        self.inner.next_u64()
    }

    /// Uniform integer in `0..n` (rejection sampling, no modulo bias).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform element of `{0, 1/2^30, ..., 1}`.
    pub fn dyadic_unit(&mut self) -> Rat {
        let k = self.below(DYADIC_DEN as u64 + 1) as i64;
        Rat::new(k, DYADIC_DEN).expect("non-zero denominator")
    }
}

/// Uniform point on the dyadic grid of the box `[lo, hi]`.
pub fn sample_point(lo: &Vec3, hi: &Vec3, rng: &mut RngStream) -> Result<Vec3, NumericError> {
    if lo.x > hi.x || lo.y > hi.y || lo.z > hi.z {
        return Err(NumericError::EmptyBox);
    }
    let mut coord = |l: &Rat, h: &Rat| l + (h - l) * rng.dyadic_unit();
    let x = coord(&lo.x, &hi.x);
    let y = coord(&lo.y, &hi.y);
    let z = coord(&lo.z, &hi.z);
    Ok(Vec3::new(x, y, z))
}

//! Counter-based random streams.
//!
//! Every ensemble member `i` draws from its own ChaCha8 stream keyed by the
//! run seed and selected by `i`, so results do not depend on how the work is
//! split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator used by every sampler in the crate.
pub type Stream = ChaCha8Rng;

/// Stream `index` of the family keyed by `seed`.
pub fn derive_stream(seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform draw on `[0, 1)`.
#[inline]
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

/// Exponential waiting time by inversion, `-ln(1 - u) / rate`.
///
/// A zero rate gives an infinite waiting time.
#[inline]
pub fn exponential<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    let u = uniform(rng);
    -(-u).ln_1p() / rate
}

#[cfg(test)]
pub(crate) mod scripted {
    use rand::RngCore;

    /// Replays a fixed list of uniforms (as produced by `Rng::random::<f64>`).
    pub struct ScriptedRng {
        values: Vec<u64>,
        pos: usize,
    }

    impl ScriptedRng {
        pub fn from_uniforms(us: &[f64]) -> Self {
            let values = us
                .iter()
                .map(|&u| {
                    assert!((0.0..1.0).contains(&u));
                    ((u * (1u64 << 53) as f64) as u64) << 11
                })
                .collect();
            Self { values, pos: 0 }
        }
    }

    impl RngCore for ScriptedRng {
        fn next_u32(&mut self) -> u32 {
            (self.next_u64() >> 32) as u32
        }

        fn next_u64(&mut self) -> u64 {
            let v = self.values[self.pos % self.values.len()];
            self.pos += 1;
            v
        }

        fn fill_bytes(&mut self, dst: &mut [u8]) {
            for chunk in dst.chunks_mut(8) {
                let v = self.next_u64().to_le_bytes();
                chunk.copy_from_slice(&v[..chunk.len()]);
            }
        }
    }
}

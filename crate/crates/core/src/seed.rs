//! Deterministic RNG streams derived from a master seed and a stable label.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Derives independent, reproducible RNG streams from one master seed.
///
/// Streams are keyed by a label (`"warmup"`, `"fit"`, ...) and an optional
/// index, so adding a consumer in one component never shifts the draws seen
/// by another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStreams {
    master: u64,
}

impl SeedStreams {
    pub fn new(master: u64) -> Self {
        SeedStreams { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    pub fn stream(&self, label: &str) -> StreamRng {
        self.indexed(label, 0)
    }

    pub fn indexed(&self, label: &str, index: u64) -> StreamRng {
        ChaCha8Rng::seed_from_u64(self.derive(label, index))
    }

    /// Child seed for `label`/`index`.
    pub fn derive(&self, label: &str, index: u64) -> u64 {
        // FNV-1a over the label, then splitmix finalization of the mix.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        splitmix(splitmix(self.master ^ h).wrapping_add(index))
    }

    /// Sub-streams for a labelled component.
    pub fn child(&self, label: &str) -> SeedStreams {
        SeedStreams::new(self.derive(label, u64::MAX))
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

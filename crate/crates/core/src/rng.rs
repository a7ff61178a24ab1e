//! Keyed random streams.
//!
//! Every replicate draws from its own generator derived from
//! (master seed, purpose tag, replicate index), so results do not depend on
//! how replicates are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name of the generator family, recorded in run metadata.
pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.9); key = splitmix64(seed ^ fnv1a64(tag)), stream = replicate index";

pub type StreamRng = ChaCha8Rng;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Generator for replicate `index` of the stream family `tag`.
pub fn stream(seed: u64, tag: &str, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ fnv1a64(tag.as_bytes())));
    rng.set_stream(index);
    rng
}

pub fn null_tag(n: usize) -> String {
    format!("null/n={n}")
}

pub fn power_tag(submodel: &str, case_index: usize, n: usize) -> String {
    format!("power/{submodel}/{case_index}/{n}")
}

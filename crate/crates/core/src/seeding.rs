//! Deterministic seed derivation for independent random streams.
//!
//! Sweeps and shot loops need one independent generator per item, with
//! results identical whether items run sequentially or are partitioned
//! across tasks. Derived seed for item `i` of a run with base seed `s` is
//! `splitmix64(s XOR i)`; splitmix64 is a bijection, so within a run all
//! derived seeds are distinct.

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the `index`-th independent stream of a run seeded with `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ index)
}

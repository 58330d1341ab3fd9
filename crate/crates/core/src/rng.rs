use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded generator for an independent sub-stream of a run.
pub(crate) fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

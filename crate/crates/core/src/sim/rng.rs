use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// What a random stream is used for. Streams with different purposes never share state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Purpose {
    Schedule,
    Placement,
    FoodSetup,
    Motor,
    Rotation,
}

impl Purpose {
    fn tag(self) -> u64 {
        match self {
            Purpose::Schedule => 0x5343_4845_4455_4c45,
            Purpose::Placement => 0x504c_4143_454d_4e54,
            Purpose::FoodSetup => 0x464f_4f44_5345_5455,
            Purpose::Motor => 0x4d4f_544f_5200_0000,
            Purpose::Rotation => 0x524f_5441_5445_0000,
        }
    }
}

/// Master seed from which every per-agent, per-purpose stream is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeededRng {
    pub master_seed: u64,
}

/// Agent id used for streams that belong to the world rather than an agent.
pub const WORLD_STREAM: u64 = u64::MAX;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SeededRng {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    /// Seed for the stream keyed by `(master_seed, agent_id, purpose)`.
    pub fn stream_seed(&self, agent_id: u64, purpose: Purpose) -> u64 {
        let a = splitmix64(self.master_seed);
        let b = splitmix64(a ^ agent_id);
        splitmix64(b ^ purpose.tag())
    }

    pub fn stream(&self, agent_id: u64, purpose: Purpose) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.stream_seed(agent_id, purpose))
    }

    pub fn world_stream(&self, purpose: Purpose) -> ChaCha8Rng {
        self.stream(WORLD_STREAM, purpose)
    }
}

use serde::Serialize;

/// How a round's arm was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Phase I of Explore-Then-UCB: arm drawn uniformly at random.
    Uniform,
    /// UCB1's initial sweep: arm `t - 1` in round `t`.
    RoundRobin,
    /// Phase II: smallest-index argmax of the confidence index.
    Index,
}

/// Kind of exploration prefix a run used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exploration {
    Uniform,
    RoundRobin,
}

impl Exploration {
    pub fn phase(self) -> Phase {
        match self {
            Exploration::Uniform => Phase::Uniform,
            Exploration::RoundRobin => Phase::RoundRobin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Round {
    /// 1-based round index.
    pub t: u64,
    pub arm: usize,
    pub reward: f64,
    pub true_mean: f64,
    pub phase: Phase,
}

/// Full per-round record of one policy run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunTrace {
    pub horizon: u64,
    pub explore_period: u64,
    pub exploration: Exploration,
    pub rounds: Vec<Round>,
    pub final_counts: Vec<u64>,
    /// RNG words consumed by the run (arm selection and reward draws).
    pub rng_words: u64,
}

impl RunTrace {
    pub fn k(&self) -> usize {
        self.final_counts.len()
    }

    /// Per-arm pull counts recomputed from the rounds.
    pub fn recount(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.k()];
        for round in &self.rounds {
            counts[round.arm] += 1;
        }
        counts
    }

    pub fn true_means(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.rounds.iter().map(|r| r.true_mean)
    }

    pub fn rewards(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.rounds.iter().map(|r| r.reward)
    }

    /// Whether every round up to the exploration period carries the exploration
    /// tag and every later round the index tag.
    pub fn phases_consistent(&self) -> bool {
        let explore = self.exploration.phase();
        self.rounds.iter().all(|r| {
            if r.t <= self.explore_period {
                r.phase == explore
            } else {
                r.phase == Phase::Index
            }
        })
    }

    /// Per-arm pull counts over the first `rounds` rounds.
    pub fn counts_after(&self, rounds: u64) -> Vec<u64> {
        let mut counts = vec![0u64; self.k()];
        for round in self.rounds.iter().take(rounds as usize) {
            counts[round.arm] += 1;
        }
        counts
    }
}

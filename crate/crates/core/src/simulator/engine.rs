//! Event loop of a single trial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::simulator::config::{Horizon, LatticeConfig};

/// Per-trial random stream: ChaCha8 keyed by the run seed, with the trial
/// index as stream number. Streams never overlap, and a trial's draws do not
/// depend on which thread runs it.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One particle settling on the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deposition {
    pub time: f64,
    pub position: i64,
    pub height: u32,
    /// Tallest of the own and neighbouring column tops just before landing.
    pub neighborhood_top: u32,
}

/// Receives each deposition as it happens.
pub trait Observer {
    fn deposit(&mut self, event: &Deposition);
}

impl<F: FnMut(&Deposition)> Observer for F {
    fn deposit(&mut self, event: &Deposition) {
        self(event)
    }
}

/// Lattice after a trial.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    half_width: i64,
    // Index 0 and the last index are the ghost columns.
    tops: Vec<u32>,
    columns: Option<Vec<Vec<u32>>>,
    clock: f64,
    deposits: u64,
}

impl SimState {
    fn empty(config: &LatticeConfig, record: bool) -> Self {
        let width = config.width();
        SimState {
            half_width: config.half_width(),
            tops: vec![0; width + 2],
            columns: record.then(|| vec![Vec::new(); width]),
            clock: 0.0,
            deposits: 0,
        }
    }

    fn index(&self, x: i64) -> Option<usize> {
        let i = x + self.half_width + 1;
        (0..self.tops.len() as i64)
            .contains(&i)
            .then_some(i as usize)
    }

    /// Highest occupied layer of column `x` (0 when empty). Ghost columns
    /// report 0; positions further out report `None`.
    pub fn column_top(&self, x: i64) -> Option<u32> {
        self.index(x).map(|i| self.tops[i])
    }

    /// Column tops from the left ghost to the right ghost.
    pub fn tops(&self) -> &[u32] {
        &self.tops
    }

    /// Heights in column `x` in deposition order, when the trial recorded them.
    pub fn column(&self, x: i64) -> Option<&[u32]> {
        let i = self.index(x)?;
        let columns = self.columns.as_ref()?;
        i.checked_sub(1)
            .and_then(|c| columns.get(c))
            .map(Vec::as_slice)
    }

    /// Whether `(x, layer)` holds a particle. `None` if occupancy was not recorded.
    pub fn is_occupied(&self, x: i64, layer: u32) -> Option<bool> {
        match self.index(x) {
            Some(i) if i == 0 || i == self.tops.len() - 1 => Some(false),
            Some(_) => self.column(x).map(|c| c.binary_search(&layer).is_ok()),
            None => Some(false),
        }
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn deposits(&self) -> u64 {
        self.deposits
    }

    /// Minimum top over the active columns among `x - 1, x, x + 1`.
    pub fn neighborhood_min_top(&self, x: i64) -> u32 {
        let last = self.tops.len() - 1;
        let i = self.index(x).expect("active position");
        (i - 1..=i + 1)
            .filter(|&j| j != 0 && j != last)
            .map(|j| self.tops[j])
            .min()
            .expect("x is active")
    }

    /// Whether site `(x, layer)` can no longer change: every active column in
    /// its neighbourhood has reached `layer`.
    pub fn is_frozen(&self, x: i64, layer: u32) -> bool {
        self.neighborhood_min_top(x) >= layer
    }

    /// Checks ghost emptiness, strictly increasing columns and the absence of
    /// same-layer horizontal neighbours. Needs recorded occupancy.
    pub fn check_invariants(&self) -> Result<()> {
        let last = self.tops.len() - 1;
        if self.tops[0] != 0 || self.tops[last] != 0 {
            return Err(Error::Invariant("ghost column holds a particle".into()));
        }
        let columns = self
            .columns
            .as_ref()
            .ok_or_else(|| Error::Invariant("occupancy was not recorded".into()))?;
        for (c, heights) in columns.iter().enumerate() {
            if heights.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invariant(format!("column {c} is not increasing")));
            }
            if heights.last().copied().unwrap_or(0) != self.tops[c + 1] {
                return Err(Error::Invariant(format!("column {c} top is stale")));
            }
        }
        for (c, pair) in columns.windows(2).enumerate() {
            let (left, right) = (&pair[0], &pair[1]);
            if let Some(h) = left.iter().find(|h| right.binary_search(h).is_ok()) {
                return Err(Error::Invariant(format!(
                    "columns {c} and {} both occupied at layer {h}",
                    c + 1
                )));
            }
        }
        Ok(())
    }
}

/// Runs one trial, reporting every deposition to `observer`.
///
/// Arrivals are drawn from the merged process: exponential gaps with rate
/// `width` and a uniform position per event, which is the same law as
/// independent rate-one streams per position.
pub fn simulate<R, O>(config: &LatticeConfig, rng: &mut R, observer: &mut O) -> SimState
where
    R: Rng + ?Sized,
    O: Observer + ?Sized,
{
    run(config, rng, observer, false)
}

/// Runs one trial and records full occupancy.
pub fn run_trial<R: Rng + ?Sized>(config: &LatticeConfig, rng: &mut R) -> SimState {
    run(config, rng, &mut |_: &Deposition| {}, true)
}

fn run<R, O>(config: &LatticeConfig, rng: &mut R, observer: &mut O, record: bool) -> SimState
where
    R: Rng + ?Sized,
    O: Observer + ?Sized,
{
    let width = config.width();
    let rate = width as f64;
    let half = config.half_width();
    let mut state = SimState::empty(config, record);

    loop {
        if let Horizon::Particles(cap) = config.horizon() {
            if state.deposits >= cap {
                break;
            }
        }
        let gap: f64 = rng.sample(Exp1);
        let time = state.clock + gap / rate;
        if let Horizon::Time(limit) = config.horizon() {
            if time > limit {
                state.clock = limit;
                break;
            }
        }
        state.clock = time;

        let column = rng.random_range(0..width);
        let i = column + 1;
        let neighborhood_top = state.tops[i - 1].max(state.tops[i]).max(state.tops[i + 1]);
        let height = neighborhood_top + 1;
        state.tops[i] = height;
        state.deposits += 1;
        if let Some(columns) = state.columns.as_mut() {
            columns[column].push(height);
        }
        observer.deposit(&Deposition {
            time,
            position: column as i64 - half,
            height,
            neighborhood_top,
        });
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::config::DEFAULT_SEED;

    fn three_site_particles(n: u64) -> LatticeConfig {
        LatticeConfig::new(3, Horizon::Particles(n), DEFAULT_SEED).unwrap()
    }

    #[test]
    fn single_particle_lands_on_the_floor() {
        for seed in 0..20 {
            let state = run_trial(&three_site_particles(1), &mut trial_rng(seed, 0));
            assert_eq!(state.deposits(), 1);
            let tops: Vec<u32> = state.tops().to_vec();
            assert_eq!(tops.iter().sum::<u32>(), 1);
            assert_eq!(tops[0], 0);
            assert_eq!(tops[4], 0);
        }
    }

    // Finds a trial whose first two arrivals hit the requested positions.
    fn first_two(want: (i64, i64)) -> Vec<Deposition> {
        let config = three_site_particles(2);
        for trial in 0..1000 {
            let mut events = Vec::new();
            simulate(&config, &mut trial_rng(7, trial), &mut |e: &Deposition| {
                events.push(*e)
            });
            if (events[0].position, events[1].position) == want {
                return events;
            }
        }
        panic!("no trial produced {want:?}");
    }

    #[test]
    fn neighbouring_arrivals_stack() {
        let events = first_two((0, 1));
        assert_eq!(events[0].height, 1);
        assert_eq!(events[1].height, 2);
    }

    #[test]
    fn distance_two_arrivals_do_not_interact() {
        let events = first_two((-1, 1));
        assert_eq!(events[0].height, 1);
        assert_eq!(events[1].height, 1);
    }

    #[test]
    fn same_seed_same_state() {
        let config = LatticeConfig::new(5, Horizon::Time(40.0), 3).unwrap();
        let a = run_trial(&config, &mut trial_rng(3, 11));
        let b = run_trial(&config, &mut trial_rng(3, 11));
        assert_eq!(a, b);
        let c = run_trial(&config, &mut trial_rng(3, 12));
        assert_ne!(a, c);
    }

    #[test]
    fn recorded_state_satisfies_invariants() {
        for width in [3, 5, 9] {
            let config = LatticeConfig::new(width, Horizon::Time(50.0), 1).unwrap();
            for trial in 0..200 {
                let state = run_trial(&config, &mut trial_rng(1, trial));
                state.check_invariants().unwrap();
                assert!(state.clock() == 50.0);
            }
        }
    }

    #[test]
    fn observer_sees_screening_rule() {
        let config = LatticeConfig::new(5, Horizon::Particles(500), 9).unwrap();
        let mut tops = [0u32; 7];
        let mut check = |e: &Deposition| {
            let i = (e.position + 3) as usize;
            let pre = tops[i - 1].max(tops[i]).max(tops[i + 1]);
            assert_eq!(e.neighborhood_top, pre);
            assert_eq!(e.height, pre + 1);
            tops[i] = e.height;
        };
        let state = simulate(&config, &mut trial_rng(9, 0), &mut check);
        assert_eq!(state.tops(), &tops);
        assert_eq!(state.deposits(), 500);
        assert_eq!(state.is_occupied(0, 1), None);
    }

    #[test]
    fn occupancy_queries() {
        let config = three_site_particles(50);
        let state = run_trial(&config, &mut trial_rng(0, 0));
        let column = state.column(0).unwrap();
        for &h in column {
            assert_eq!(state.is_occupied(0, h), Some(true));
        }
        assert_eq!(state.is_occupied(-2, 1), Some(false));
        assert_eq!(state.is_occupied(5, 1), Some(false));
        assert_eq!(state.column_top(2), Some(0));
        assert_eq!(state.column_top(3), None);
        assert_eq!(state.column(2), None);
    }

    #[test]
    fn frozen_means_neighbourhood_reached_layer() {
        let config = three_site_particles(300);
        let state = run_trial(&config, &mut trial_rng(4, 4));
        let low = state.neighborhood_min_top(0);
        assert!(state.is_frozen(0, low));
        assert!(!state.is_frozen(0, low + 1));
        // Border neighbourhoods skip the ghost column.
        let border = state
            .column_top(1)
            .unwrap()
            .min(state.column_top(0).unwrap());
        assert_eq!(state.neighborhood_min_top(1), border);
    }

    #[test]
    fn invariant_checker_catches_corruption() {
        let config = three_site_particles(20);
        let mut state = run_trial(&config, &mut trial_rng(2, 2));
        state.tops[0] = 1;
        assert!(state.check_invariants().is_err());

        let mut state = run_trial(&config, &mut trial_rng(2, 2));
        let columns = state.columns.as_mut().unwrap();
        let h = columns[0][0];
        columns[1].insert(0, h);
        columns[1].sort_unstable();
        columns[1].dedup();
        assert!(state.check_invariants().is_err());
    }
}

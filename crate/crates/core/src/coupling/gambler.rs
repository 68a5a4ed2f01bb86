//! Branching "gambler's game": each active game finishes in a step with
//! probability `p`; a finished game is lost with probability `α / l` and then
//! spawns `l` new games, so the expected number spawned per game is `α`.
//! `N(t)` is the number of games active after `t` steps, starting from one.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::replicate_rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GamblerParams {
    pub p: f64,
    /// Games spawned by a loss.
    pub loss_l: u64,
    pub alpha: f64,
    pub d2: u64,
    pub t_max: u64,
    pub replicates: u64,
}

impl GamblerParams {
    /// Two-point loss law with `loss_l = d2`.
    pub fn new(p: f64, alpha: f64, d2: u64, t_max: u64, replicates: u64) -> Result<Self> {
        let gp = Self {
            p,
            loss_l: d2,
            alpha,
            d2,
            t_max,
            replicates,
        };
        gp.validate()?;
        Ok(gp)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::param(format!("p = {} must lie in (0, 1]", self.p)));
        }
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(Error::param(format!("alpha = {} must lie in [0, 1)", self.alpha)));
        }
        if self.loss_l == 0 || self.loss_l > self.d2 {
            return Err(Error::param(format!(
                "loss size {} must lie in 1..={}",
                self.loss_l, self.d2
            )));
        }
        if self.replicates == 0 {
            return Err(Error::param("replicates must be positive"));
        }
        Ok(())
    }

    pub fn loss_probability(&self) -> f64 {
        self.alpha / self.loss_l as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GamblerTrace {
    pub replicates: u64,
    /// `mean_active[t]` estimates `E[N(t)]` for `t = 0..=t_max`.
    pub mean_active: Vec<f64>,
    pub se: Vec<f64>,
}

fn play<R: Rng>(gp: &GamblerParams, rng: &mut R) -> Vec<u64> {
    let loss_p = gp.loss_probability();
    let mut active: u64 = 1;
    let mut path = Vec::with_capacity(gp.t_max as usize + 1);
    path.push(active);
    for _ in 0..gp.t_max {
        if active > 0 {
            let finished = Binomial::new(active, gp.p).expect("valid p").sample(rng);
            let lost = if finished > 0 && loss_p > 0.0 {
                Binomial::new(finished, loss_p).expect("valid p").sample(rng)
            } else {
                0
            };
            active = active - finished + lost.saturating_mul(gp.loss_l);
        }
        path.push(active);
    }
    path
}

/// Simulates the game over `gp.replicates` independent replicates.
///
/// Sums are accumulated in integers, so the result does not depend on how
/// replicates are scheduled across threads.
pub fn gambler_game(gp: &GamblerParams, seed: u64) -> Result<GamblerTrace> {
    gp.validate()?;
    let len = gp.t_max as usize + 1;
    let (sum, sumsq) = (0..gp.replicates)
        .into_par_iter()
        .fold(
            || (vec![0u128; len], vec![0u128; len]),
            |(mut s, mut s2), i| {
                let path = play(gp, &mut replicate_rng(seed, i));
                for (t, &n) in path.iter().enumerate() {
                    s[t] += n as u128;
                    s2[t] += (n as u128) * (n as u128);
                }
                (s, s2)
            },
        )
        .reduce(
            || (vec![0u128; len], vec![0u128; len]),
            |(mut a, mut a2), (b, b2)| {
                for t in 0..len {
                    a[t] += b[t];
                    a2[t] += b2[t];
                }
                (a, a2)
            },
        );
    let k = gp.replicates as f64;
    let mean_active: Vec<f64> = sum.iter().map(|&s| s as f64 / k).collect();
    let se = sumsq
        .iter()
        .zip(&mean_active)
        .map(|(&s2, &m)| {
            if gp.replicates < 2 {
                return 0.0;
            }
            let var = ((s2 as f64 - k * m * m) / (k - 1.0)).max(0.0);
            (var / k).sqrt()
        })
        .collect();
    Ok(GamblerTrace {
        replicates: gp.replicates,
        mean_active,
        se,
    })
}

use clap::ValueEnum;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use hyperglauber::analytics::{
    beta_star, colouring_path_bound, edge_process_closed_exact, edge_process_closed_table,
    edge_process_solve, indset_alpha_bound, indset_mixing_bound, stopping_time_horizon,
    stopping_time_report, success_integral,
    threshold::{EXACT_A, EXACT_B, LITERAL_A, LITERAL_B},
    BoundVariant, RootMethod,
};
use hyperglauber::chains::{initial_state, run_chain, ChainParams, ChainState};
use hyperglauber::coupling::{
    adjacent_pair, coalescence_time, default_t_max, gambler_game, one_step_drift_exact,
    stopping_experiment, Coalescence, GamblerParams, WPolicy,
};
use hyperglauber::exact::{
    blowup_identity_check, count_colourings, count_independent_sets, edge_cover_count,
    parse_rational, stationary_tv, weak_edge_colouring_count, CountMode, TvConfig,
};
use hyperglauber::hypergraph::{
    gen_blowup, gen_frozen, gen_random_uniform, parse_hypergraph, serialize_hypergraph,
};
use hyperglauber::rng::{replicate_rng, seeded_rng};
use hyperglauber::{Graph, Hypergraph};

use crate::args::*;
use crate::error::CliError;
use crate::output::{read_input, Report, Table};

type Out = Result<Report, CliError>;

fn load(path: &std::path::Path) -> Result<Hypergraph, CliError> {
    Ok(parse_hypergraph(&read_input(path)?)?)
}

fn load_graph(path: &std::path::Path) -> Result<Graph, CliError> {
    Ok(Graph::new(load(path)?)?)
}

fn params(c: &ChainArgs) -> Result<ChainParams, CliError> {
    Ok(match c.kind {
        Kind::Indset => ChainParams::independent_set(c.lambda)?,
        Kind::Colouring => {
            let q = c.q.ok_or_else(|| CliError::usage("--q is required for --kind colouring"))?;
            ChainParams::colouring(q)?
        }
    })
}

fn policy(p: &PolicyArgs) -> Result<WPolicy, CliError> {
    Ok(match p.policy {
        Policy::RandomMaxDegree => WPolicy::RandomMaxDegree,
        Policy::Uniform => WPolicy::Uniform,
        Policy::Adversarial => WPolicy::Adversarial,
        Policy::Fixed => WPolicy::Fixed(
            p.w.ok_or_else(|| CliError::usage("--w is required for --policy fixed"))?,
        ),
    })
}

fn need<T: Copy>(v: Option<T>, flag: &str, variant: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--{flag} is required for --variant {variant}")))
}

fn state_json(s: &ChainState) -> Value {
    serde_json::to_value(s).expect("states serialize")
}

/// Hypergraph text goes to the output; the validation summary to stderr.
pub fn gen(cmd: &GenCommand) -> Out {
    let h = match cmd {
        GenCommand::Frozen { q, m } => gen_frozen(*q, *m)?,
        GenCommand::Random {
            n,
            m,
            delta,
            edges,
            seed,
        } => {
            let (h, report) = gen_random_uniform(*n, *m, *delta, *edges, *seed)?;
            eprintln!("{}", json!({ "generator": report }));
            h
        }
        GenCommand::Blowup { graph, m } => {
            let (h, k) = gen_blowup(&load_graph(graph)?, *m)?;
            eprintln!("{}", json!({ "block_size": k }));
            h
        }
    };
    eprintln!("{}", json!({ "validation": h.validate() }));
    Ok(Report::Text(serialize_hypergraph(&h)))
}

pub fn couple(a: &CoupleArgs) -> Out {
    let h = load(&a.input)?;
    let params = params(&a.chain)?;
    let run = stopping_experiment(&h, &params, policy(&a.policy)?, a.replicates, a.seed, a.t_max)?;
    // The drift bound applies to independent sets; it is evaluated at the
    // smallest edge size and the maximum degree of the instance.
    let alpha_bound = match (params, h.min_edge_size()) {
        (ChainParams::IndependentSet { lambda }, Some(m)) => {
            Some(indset_alpha_bound(m, lambda, h.max_degree())?)
        }
        _ => None,
    };
    let mut table = Table::new(&["replicate", "w", "t", "distance", "censored"]);
    for o in &run.outcomes {
        table.push(vec![
            json!(o.replicate),
            json!(o.w),
            json!(o.t),
            json!(o.distance),
            json!(o.censored),
        ]);
    }
    Report::data(
        &json!({
            "instance": h.validate(),
            "policy": run.policy,
            "stats": run.stats,
            "alpha_bound": alpha_bound,
            "alpha_below_one_99": run.stats.alpha_upper_99 < 1.0,
        }),
        Some(table),
    )
}

fn lambda_f64(text: &str) -> Result<f64, CliError> {
    let value = match text.split_once('/') {
        Some((n, d)) => n.trim().parse::<f64>().ok().zip(d.trim().parse::<f64>().ok()).map(|(n, d)| n / d),
        None => text.trim().parse::<f64>().ok(),
    };
    value.ok_or_else(|| CliError::usage(format!("not a number: {text:?}")))
}

pub fn bounds(cmd: &BoundsCommand) -> Out {
    match cmd {
        BoundsCommand::EdgeProcess { m, lambda, exact } => {
            let mut results = Vec::new();
            let mut table = Table::new(&["m", "lambda", "k", "p_solve", "p_closed", "p_exact"]);
            for &mm in m {
                for text in lambda {
                    let lam = lambda_f64(text)?;
                    let solved = edge_process_solve(mm, lam)?;
                    let closed = edge_process_closed_table(mm, lam)?;
                    let exact_values = if *exact {
                        let r = parse_rational(text)?;
                        Some(
                            (1..mm)
                                .map(|k| Ok(edge_process_closed_exact(mm, &r, k)?.to_string()))
                                .collect::<Result<Vec<_>, CliError>>()?,
                        )
                    } else {
                        None
                    };
                    for k in 1..mm {
                        table.push(vec![
                            json!(mm),
                            json!(text),
                            json!(k),
                            json!(solved.get(k)),
                            json!(closed.get(k)),
                            exact_values.as_ref().map_or(Value::Null, |e| json!(e[k - 1])),
                        ]);
                    }
                    results.push(json!({
                        "m": mm,
                        "lambda": text,
                        "p_solve": solved.p,
                        "p_closed": closed.p,
                        "p_exact": exact_values,
                    }));
                }
            }
            Report::data(&results, Some(table))
        }
        BoundsCommand::Alpha { m, lambda, delta } => {
            let mut rows = Vec::new();
            let mut table =
                Table::new(&["m", "lambda", "delta", "p1", "alpha", "rapid_mixing", "threshold_m"]);
            for &mm in m {
                for &lam in lambda {
                    for &d in delta {
                        let a = indset_alpha_bound(mm, lam, d)?;
                        let threshold = 2.0 * lam * d as f64 + 1.0;
                        table.push(vec![
                            json!(mm),
                            json!(lam),
                            json!(d),
                            json!(a.p1),
                            json!(a.alpha),
                            json!(a.rapid_mixing),
                            json!(threshold),
                        ]);
                        rows.push(json!({ "bound": a, "threshold_m": threshold }));
                    }
                }
            }
            Report::data(&rows, Some(table))
        }
        BoundsCommand::Tau(t) => {
            let value = t.variant.to_possible_value().expect("no skipped variants");
            let name = value.get_name();
            let report = match t.variant {
                Variant::StoppingTime => stopping_time_report(
                    need(t.p, "p", name)?,
                    need(t.alpha, "alpha", name)?,
                    need(t.d1, "d1", name)?,
                    need(t.d2, "d2", name)?,
                    t.eps,
                )?,
                Variant::Indset | Variant::IndsetLinear | Variant::IndsetAtM => {
                    let lambda = need(t.lambda, "lambda", name)?;
                    let delta = need(t.delta, "delta", name)?;
                    // Without --m, evaluate at the threshold edge size.
                    let m = t
                        .m
                        .unwrap_or_else(|| (2.0 * lambda * delta as f64).ceil() as usize + 1);
                    let variant = match t.variant {
                        Variant::Indset => BoundVariant::Indset,
                        Variant::IndsetLinear => BoundVariant::IndsetLinear,
                        _ => BoundVariant::IndsetAtM,
                    };
                    indset_mixing_bound(need(t.n, "n", name)?, lambda, delta, m, t.eps, variant)?
                }
                Variant::Colouring => colouring_path_bound(
                    need(t.n, "n", name)?,
                    need(t.q, "q", name)?,
                    need(t.delta, "delta", name)?,
                    need(t.m, "m", name)?,
                    t.eps,
                )?,
            };
            Report::data(&report, None)
        }
        BoundsCommand::BetaStar { method } => {
            let methods: &[RootMethod] = match method {
                MethodArg::Integral => &[RootMethod::Integral],
                MethodArg::Series => &[RootMethod::Series],
                MethodArg::Both => &[RootMethod::Integral, RootMethod::Series],
            };
            let reports = methods
                .iter()
                .map(|&m| beta_star(m))
                .collect::<Result<Vec<_>, _>>()?;
            let mut table = Table::new(&["method", "beta_star", "q_factor", "residual"]);
            for r in &reports {
                table.push(vec![json!(r.method), json!(r.beta_star), json!(r.q_factor), json!(r.residual)]);
            }
            Report::data(&reports, Some(table))
        }
        BoundsCommand::Integral { a, b, upper } => {
            let sets: Vec<(&str, f64, f64)> = match (a, b) {
                (Some(a), Some(b)) => vec![("given", *a, *b)],
                _ => vec![("rounded", LITERAL_A, LITERAL_B), ("unrounded", EXACT_A, EXACT_B)],
            };
            let mut table = Table::new(&["constants", "a", "b", "upper", "value"]);
            let mut rows = Vec::new();
            for (label, a, b) in sets {
                let value = success_integral(a, b, *upper)?;
                table.push(vec![json!(label), json!(a), json!(b), json!(upper), json!(value)]);
                rows.push(json!({"constants": label, "a": a, "b": b, "upper": upper, "value": value}));
            }
            Report::data(&rows, Some(table))
        }
    }
}

fn modes(m: ModeArg) -> &'static [CountMode] {
    match m {
        ModeArg::Formula => &[CountMode::Formula],
        ModeArg::Brute => &[CountMode::Brute],
        ModeArg::Both => &[CountMode::Formula, CountMode::Brute],
    }
}

pub fn count(cmd: &CountCommand) -> Out {
    match cmd {
        CountCommand::Indsets { input, lambda } => {
            let h = load(input)?;
            let profile = count_independent_sets(&h)?;
            let exact = profile.partition_exact(&parse_rational(lambda)?);
            let mut table = Table::new(&["size", "count"]);
            for (i, c) in profile.counts.iter().enumerate() {
                table.push(vec![json!(i), json!(c)]);
            }
            Report::data(
                &json!({
                    "profile": profile,
                    "lambda": lambda,
                    "partition": exact.to_string(),
                    "partition_float": profile.partition(lambda_f64(lambda)?),
                }),
                Some(table),
            )
        }
        CountCommand::Colourings { input, q } => {
            let h = load(input)?;
            Report::data(&json!({"q": q, "count": count_colourings(&h, *q)?}), None)
        }
        CountCommand::BlowupIdentity { graph, m } => {
            Report::data(&blowup_identity_check(&load_graph(graph)?, *m)?, None)
        }
        CountCommand::EdgeCovers { m, mode } => {
            let results = modes(*mode)
                .iter()
                .map(|&md| edge_cover_count(*m, md))
                .collect::<Result<Vec<_>, _>>()?;
            let agree = results.windows(2).all(|w| {
                w[0].covers == w[1].covers && w[0].fixed_uncovered == w[1].fixed_uncovered
            });
            let mut table = Table::new(&["m", "mode", "covers", "fixed_uncovered"]);
            for r in &results {
                table.push(vec![
                    json!(r.m),
                    json!(r.mode),
                    json!(r.covers.to_string()),
                    json!(r.fixed_uncovered.to_string()),
                ]);
            }
            Report::data(&json!({"counts": results, "agree": agree}), Some(table))
        }
        CountCommand::WeakColourings { m, q, mode } => {
            let results = modes(*mode)
                .iter()
                .map(|&md| weak_edge_colouring_count(*m, *q, md))
                .collect::<Result<Vec<_>, _>>()?;
            let agree = results.windows(2).all(|w| {
                w[0].weak == w[1].weak && w[0].fixed_monochromatic == w[1].fixed_monochromatic
            });
            let mut table = Table::new(&["m", "q", "mode", "weak", "fixed_monochromatic"]);
            for r in &results {
                table.push(vec![
                    json!(r.m),
                    json!(r.q),
                    json!(r.mode),
                    json!(r.weak.to_string()),
                    json!(r.fixed_monochromatic.to_string()),
                ]);
            }
            Report::data(&json!({"counts": results, "agree": agree}), Some(table))
        }
    }
}

pub fn tv(a: &TvArgs) -> Out {
    let h = load(&a.input)?;
    let cfg = TvConfig {
        burn_in: a.burn_in,
        samples: a.samples,
        stride: a.stride,
        seed: a.seed,
    };
    let report = stationary_tv(&h, &params(&a.chain)?, cfg)?;
    let table = report.states.as_ref().map(|states| {
        let mut t = Table::new(&["state", "exact", "empirical"]);
        for s in states {
            t.push(vec![json!(state_json(&s.state).to_string()), json!(s.exact), json!(s.empirical)]);
        }
        t
    });
    Report::data(&report, table)
}

pub fn sample(a: &SampleArgs) -> Out {
    let h = load(&a.input)?;
    let params = params(&a.chain)?;
    let x0 = initial_state(&h, &params)?;
    let traj = run_chain(&h, &params, x0, a.t, a.stride, a.seed)?;
    let feasible = traj.final_state.is_feasible(&h, &params);
    let mut table = Table::new(&["index", "state"]);
    let recorded = traj
        .samples
        .clone()
        .unwrap_or_else(|| vec![traj.final_state.clone()]);
    for (i, s) in recorded.iter().enumerate() {
        table.push(vec![json!(i), json!(state_json(s).to_string())]);
    }
    Report::data(&json!({"trajectory": traj, "feasible": feasible}), Some(table))
}

pub fn gambler(a: &GamblerArgs) -> Out {
    let t_max = match (a.t_max, a.d1, a.eps) {
        (Some(t), _, _) => t,
        (None, Some(d1), Some(eps)) => stopping_time_horizon(a.p, a.alpha, d1, a.d2 as f64, eps)?,
        _ => return Err(CliError::usage("give --t-max, or --d1 and --eps")),
    };
    let gp = GamblerParams::new(a.p, a.alpha, a.d2, t_max, a.replicates)?;
    let trace = gambler_game(&gp, a.seed)?;
    let end = t_max as usize;
    let threshold = a.d1.zip(a.eps).map(|(d1, eps)| eps / d1);
    let mut table = Table::new(&["t", "mean_active", "se"]);
    for (t, (m, s)) in trace.mean_active.iter().zip(&trace.se).enumerate() {
        table.push(vec![json!(t), json!(m), json!(s)]);
    }
    Report::data(
        &json!({
            "params": gp,
            "horizon": t_max,
            "mean_at_horizon": trace.mean_active[end],
            "se_at_horizon": trace.se[end],
            "threshold": threshold,
            "below_threshold": threshold.map(|th| trace.mean_active[end] < th + 3.0 * trace.se[end]),
            "trace": trace,
        }),
        Some(table),
    )
}

#[derive(Serialize)]
struct CoalesceOutcome {
    replicate: u64,
    initial_distance: usize,
    #[serde(flatten)]
    outcome: Coalescence,
}

/// Each replicate couples the default start state with a state reached
/// from it by `10·n·max(Δ,1)` independent chain steps.
pub fn coalesce(a: &CoalesceArgs) -> Out {
    let h = load(&a.input)?;
    let params = params(&a.chain)?;
    let x0 = initial_state(&h, &params)?;
    let t_max = a.t_max.unwrap_or_else(|| default_t_max(&h));
    let burn = 10 * h.n() as u64 * h.max_degree().max(1) as u64;
    let outcomes = (0..a.replicates)
        .into_par_iter()
        .map(|i| -> Result<CoalesceOutcome, CliError> {
            let mut rng = replicate_rng(a.seed, i);
            let y0 = run_chain(&h, &params, x0.clone(), burn, None, rng.random())?.final_state;
            let initial_distance = x0.hamming(&y0)?;
            let outcome = coalescence_time(&h, &params, x0.clone(), y0, t_max, rng.random())?;
            Ok(CoalesceOutcome {
                replicate: i,
                initial_distance,
                outcome,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut times: Vec<u64> = outcomes.iter().filter_map(|o| o.outcome.time()).collect();
    times.sort_unstable();
    let mean = (!times.is_empty()).then(|| times.iter().sum::<u64>() as f64 / times.len() as f64);
    let mut table = Table::new(&["replicate", "initial_distance", "t", "timed_out"]);
    for o in &outcomes {
        table.push(vec![
            json!(o.replicate),
            json!(o.initial_distance),
            json!(o.outcome.time()),
            json!(o.outcome.time().is_none()),
        ]);
    }
    Report::data(
        &json!({
            "replicates": a.replicates,
            "t_max": t_max,
            "coalesced": times.len(),
            "timed_out": outcomes.len() - times.len(),
            "mean_t": mean,
            "median_t": times.get(times.len() / 2),
            "max_t": times.last(),
        }),
        Some(table),
    )
}

pub fn drift(a: &DriftArgs) -> Out {
    let h = load(&a.input)?;
    let params = params(&a.chain)?;
    let pol = policy(&a.policy)?;
    let mut rng = seeded_rng(a.seed);
    // Exact bound 1 - 1/(nq) for colourings.
    let bound = match params {
        ChainParams::Colouring { q } => {
            let nq = h.n() as u64 * q as u64;
            Some((nq - 1, nq))
        }
        _ => None,
    };
    let mut table = Table::new(&["pair", "w", "expected", "exact"]);
    let (mut sum, mut max, mut violations) = (0.0, f64::NEG_INFINITY, 0u64);
    for i in 0..a.pairs {
        let (x, y, w) = adjacent_pair(&h, &params, pol, &mut rng)?;
        let r = one_step_drift_exact(&h, &x, &y, &params)?;
        if let (Some(exact), Some((num, den))) = (r.exact, bound) {
            // exact > num/den, compared in integers.
            if (*exact.numer() as u128) * den as u128 > num as u128 * *exact.denom() as u128 {
                violations += 1;
            }
        }
        sum += r.expected;
        max = max.max(r.expected);
        table.push(vec![json!(i), json!(w), json!(r.expected), json!(r.exact.map(|e| e.to_string()))]);
    }
    Report::data(
        &json!({
            "pairs": a.pairs,
            "mean_drift": sum / a.pairs as f64,
            "max_drift": max,
            "bound": bound.map(|(n, d)| format!("{n}/{d}")),
            "violations": bound.map(|_| violations),
        }),
        Some(table),
    )
}

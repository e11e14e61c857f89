//! Acceptance criteria. Runs with its own harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any fails.
//!
//! `cargo test -p ffca-core --test acceptance`

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ffca_core::engine::{
    sample_direction, seeded_rng, step, RunOptions, Simulation, SimulationState, DEFAULT_SNAPSHOT_STEPS,
};
use ffca_core::floorfield::{compute_sff, PathLength};
use ffca_core::metrics::{export_snapshots, EvacTime, SimulationResult};
use ffca_core::perception::{density, kernel_phi, raw_density};
use ffca_core::scenario::{parse_map, Cell, Direction, Occupancy, ParamKey, Scenario};
use ffca_core::transition::{direction_weights, transition_distribution, Landscape};
use rand::Rng;
use statrs::distribution::{Binomial, DiscreteCDF};

use common::*;

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------------------
// 1. SFF oracle equivalence
// ---------------------------------------------------------------------------

fn sff_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    let mut mismatches = Vec::new();
    for i in 0..100 {
        let exits = rng.random_range(1..=3);
        let grid = random_grid(&mut rng, 20, 20, 0.2, exits, false);
        let field = compute_sff(&grid);
        let oracle = sff_oracle(&grid);
        for (idx, (got, want)) in field.values().into_iter().zip(oracle).enumerate() {
            if got.is_infinite() != want.is_infinite() {
                mismatches.push(format!("grid {i} cell {idx}: {got} vs {want}"));
            } else if got.is_finite() {
                worst = worst.max((got - want).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && worst <= 1e-9 && elapsed < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "100 grids 20x20, max |diff| = {worst:.2e} (tol 1e-9), infinity mismatches = {}, {:.2}s (limit 10s){}",
            mismatches.len(),
            elapsed.as_secs_f64(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

// ---------------------------------------------------------------------------
// 2. Distribution correctness by Monte-Carlo
// ---------------------------------------------------------------------------

const HAND_MAPS: [&str; 10] = [
    // open room, exit above
    "#####E#####\n#.........#\n#.........#\n#....P....#\n#.........#\n#.........#\n###########",
    // corridor
    "############\nE.....P....#\n############",
    // crowd between agent and exit
    "#####E#####\n#....P....#\n#....P....#\n#....P....#\n#.........#\n###########",
    // pillar ahead
    "#####E#####\n#.........#\n#....#....#\n#.........#\n#....P....#\n###########",
    // corner next to exit
    "E########\n.P......#\n........#\n#########",
    // junction with crowded side branch
    "#####E#####\n#####.#####\nPPPP.P.....\n#####.#####\n###########",
    // agent surrounded on three sides
    "###E###\n#..P..#\n#.PPP.#\n#.....#\n#######",
    // two exits, agent in between
    "E.........E\n#....P....#\n###########",
    // dead end pocket
    "#######\n#.....E\n#.###.#\n#.#P#.#\n#######",
    // wide exit
    "###EEEEE###\n#.........#\n#.P.P.P.P.#\n#.........#\n###########",
];

fn hand_fixtures() -> Vec<Fixture> {
    let param_sets = [
        params(4.0, 6.0, 4.0, 10, 0.0),
        params(4.0, 18.0, 4.0, 10, 0.0),
        params(0.0, 0.0, 0.0, 10, 0.0),
        params(1.0, 2.0, 1.0, 3, 0.0),
        params(10.0, 10.0, 10.0, 5, 0.0),
    ];
    let mut out = Vec::new();
    for map in HAND_MAPS {
        let (grid, agents) = parse_map(map).unwrap();
        for p in param_sets {
            let land = Landscape::new(grid.clone(), p.r);
            out.push(Fixture {
                occupancy: Occupancy::from_cells(&land.grid, agents.iter().copied()),
                land,
                cell: agents[0],
                params: p,
            });
        }
    }
    out
}

fn distribution_monte_carlo() -> Outcome {
    const DRAWS: u64 = 100_000;
    let start = Instant::now();
    let mut fixtures = hand_fixtures();
    let mut gen = rng(2);
    fixtures.extend((0..500).map(|_| random_fixture(&mut gen, 20.0)));

    let mut checks = 0;
    let mut failures = Vec::new();
    let mut worst_z = 0.0f64;
    let mut expected_exceedances = 0.0;
    for (i, f) in fixtures.iter().enumerate() {
        let dist = transition_distribution(&f.land, &f.occupancy, f.cell, &f.params);
        if dist.norm_zero {
            continue;
        }
        let mut counts = [0u64; 4];
        let mut draw_rng = seeded_rng(1000 + i as u64, 2);
        for _ in 0..DRAWS {
            let d = sample_direction(&dist.p, &mut draw_rng).expect("non-degenerate");
            counts[d.index()] += 1;
        }
        for d in Direction::ALL {
            let p = dist.p[d.index()];
            let freq = counts[d.index()] as f64 / DRAWS as f64;
            let sigma = (p * (1.0 - p) / DRAWS as f64).sqrt();
            checks += 1;
            expected_exceedances += exceedance_probability(DRAWS, p);
            let ok = if sigma == 0.0 {
                freq == p
            } else {
                let z = (freq - p).abs() / sigma;
                worst_z = worst_z.max(z);
                z <= 3.0
            };
            if !ok {
                failures.push(format!("fixture {i} {}: p={p:.3e} count={}", d.name(), counts[d.index()]));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "{} fixtures x {DRAWS} draws, {checks} direction checks, {} outside 3 sigma (max z = {worst_z:.2}; exact binomial expects {expected_exceedances:.2}), {:.1}s (limit 60s){}",
            fixtures.len(),
            failures.len(),
            elapsed.as_secs_f64(),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    )
}

/// Exact probability that a Binomial(n, p) count lands more than three
/// standard deviations from its mean.
fn exceedance_probability(n: u64, p: f64) -> f64 {
    let sd = (n as f64 * p * (1.0 - p)).sqrt();
    if sd == 0.0 {
        return 0.0;
    }
    let mean = n as f64 * p;
    let binom = Binomial::new(p, n).expect("valid binomial");
    let hi = (mean + 3.0 * sd).floor() as u64;
    let lo = (mean - 3.0 * sd).ceil();
    let below = if lo >= 1.0 { binom.cdf(lo as u64 - 1) } else { 0.0 };
    (1.0 - binom.cdf(hi) + below).max(0.0)
}

// ---------------------------------------------------------------------------
// 3. Normalization and zeros only at walls
// ---------------------------------------------------------------------------

fn normalization_and_wall_zeros() -> Outcome {
    let mut gen = rng(3);
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let mut normalized = 0;
    for i in 0..10_000 {
        let k_max = if i % 10 == 0 { 100.0 } else { 20.0 };
        let f = random_fixture(&mut gen, k_max);
        let w = direction_weights(&f.land, &f.occupancy, f.cell, &f.params);
        if w.p_tilde.iter().any(|x| !x.is_finite()) {
            bad.push(format!("fixture {i}: non-finite weight {:?}", w.p_tilde));
        }
        let dist = transition_distribution(&f.land, &f.occupancy, f.cell, &f.params);
        if !dist.norm_zero {
            normalized += 1;
            worst = worst.max((dist.p.iter().sum::<f64>() - 1.0).abs());
        }
        for d in Direction::ALL {
            let wall = f.land.grid.neighbor(f.cell, d).is_none_or(|n| f.land.grid.is_wall(n));
            if (dist.p[d.index()] == 0.0) != wall {
                bad.push(format!("fixture {i} {}: p={} wall={wall}", d.name(), dist.p[d.index()]));
            }
        }
    }
    let pass = bad.is_empty() && worst <= 1e-12;
    outcome(
        pass,
        format!(
            "10000 states ({normalized} with Norm>0), max |sum p - 1| = {worst:.2e} (tol 1e-12), zero/wall mismatches = {}{}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

// ---------------------------------------------------------------------------
// 4. Kernel and density values
// ---------------------------------------------------------------------------

fn kernel_values() -> Outcome {
    let mut notes = Vec::new();
    let phi0 = kernel_phi(0.0);
    let ok_phi0 = (phi0 - 1.49886).abs() <= 1e-5;
    notes.push(format!("phi(0) = {phi0:.6}"));
    let ok_edge = kernel_phi(5f64.sqrt()) == 0.0;
    notes.push(format!("phi(sqrt5) = {}", kernel_phi(5f64.sqrt())));
    let ok_even = (0..=400).all(|i| {
        let z = i as f64 * 0.01;
        kernel_phi(z) == kernel_phi(-z)
    });

    // raw density of fully occupied rays through the library vs the oracle
    let mut row = "E".to_string();
    row.push_str(&".".repeat(12));
    let (grid, _) = parse_map(&row).unwrap();
    let full = Occupancy::from_cells(&grid, (1..13).map(|c| Cell::new(0, c)));
    let raw1 = raw_density(&full, Cell::new(0, 0), Direction::Right, 1);
    let raw10 = raw_density(&full, Cell::new(0, 0), Direction::Right, 10);
    let ok_raw1 = (raw1 - density_oracle(&[true])).abs() < 1e-12 && (raw1 - 1.12414).abs() < 1e-5;
    let ok_raw10 = (raw10 - density_oracle(&[true; 10])).abs() < 1e-12 && (raw10 - 1.0219479545).abs() < 1e-9;
    notes.push(format!("raw D(r*=1) = {raw1:.6}, raw D(r*=10) = {raw10:.6}"));

    // exhaustive occupancy patterns for every ray length up to 12
    let mut ok_bounds = true;
    let mut ok_oracle = true;
    for r_star in 1..=12u32 {
        for mask in 0u32..(1 << r_star) {
            let pattern: Vec<bool> = (0..r_star).map(|m| mask & (1 << m) != 0).collect();
            let occ = Occupancy::from_cells(
                &grid,
                pattern.iter().enumerate().filter(|(_, &o)| o).map(|(m, _)| Cell::new(0, m + 1)),
            );
            let d = density(&occ, Cell::new(0, 0), Direction::Right, r_star);
            ok_bounds &= (0.0..=1.0).contains(&d);
            let raw = raw_density(&occ, Cell::new(0, 0), Direction::Right, r_star);
            ok_oracle &= (raw - density_oracle(&pattern)).abs() < 1e-12;
        }
    }
    notes.push(format!("clamped D in [0,1] for all 2^r* patterns, r* <= 12: {ok_bounds}"));
    let pass = ok_phi0 && ok_edge && ok_even && ok_raw1 && ok_raw10 && ok_bounds && ok_oracle;
    outcome(pass, notes.join(", "))
}

// ---------------------------------------------------------------------------
// 5. Engine conservation and determinism
// ---------------------------------------------------------------------------

fn random_scenario(gen: &mut ffca_core::engine::SimRng, seed: u64) -> Scenario {
    loop {
        let h = gen.random_range(6..=16);
        let w = gen.random_range(6..=16);
        let exits = gen.random_range(1..=3);
        let grid = random_grid(gen, h, w, 0.15, exits, true);
        let field = compute_sff(&grid);
        let cells: Vec<Cell> = grid
            .cells()
            .filter(|&c| field.is_finite(c) && !grid.is_exit(c))
            .collect();
        if cells.is_empty() {
            continue;
        }
        let fill = gen.random_range(0.1..0.6);
        let agents: Vec<Cell> = cells.into_iter().filter(|_| gen.random_bool(fill)).collect();
        let mut params = random_params(gen, 20.0, 10);
        params.seed = seed;
        params.max_steps = 400;
        return Scenario {
            grid,
            initial_agents: agents,
            params,
        };
    }
}

fn check_run(s: &Scenario) -> Result<Vec<usize>, String> {
    let mut sim = Simulation::new(s).map_err(|e| e.to_string())?;
    let mut curve = vec![sim.state().remaining()];
    while !sim.is_finished() {
        let before: Vec<_> = sim.state().agents.clone();
        let report = sim.step();
        let st = sim.state();
        if st.remaining() + report.removed != before.len() {
            return Err(format!("step {}: count changed by other than removals", st.step));
        }
        if st.occupancy.count() != st.remaining() {
            return Err(format!("step {}: occupancy sum != live agents", st.step));
        }
        let distinct: BTreeSet<Cell> = st.agents.iter().map(|a| a.cell).collect();
        if distinct.len() != st.remaining() || st.agents.iter().any(|a| !st.occupancy.get(a.cell)) {
            return Err(format!("step {}: overlapping agents", st.step));
        }
        for a in &before {
            let after = st.agents.iter().find(|b| b.id == a.id);
            match after {
                Some(b) => {
                    let d = a.cell.row.abs_diff(b.cell.row) + a.cell.col.abs_diff(b.cell.col);
                    if d > 1 {
                        return Err(format!("step {}: agent {} jumped {d} cells", st.step, a.id));
                    }
                }
                None => {
                    let grid = &sim.landscape().grid;
                    let near_exit = grid.is_exit(a.cell)
                        || Direction::ALL.iter().any(|&d| grid.neighbor(a.cell, d).is_some_and(|n| grid.is_exit(n)));
                    if !near_exit {
                        return Err(format!("step {}: agent {} vanished away from exits", st.step, a.id));
                    }
                }
            }
        }
        curve.push(st.remaining());
    }
    if curve.windows(2).any(|w| w[1] > w[0]) {
        return Err("agent count increased".into());
    }
    Ok(curve)
}

fn engine_conservation_determinism() -> Outcome {
    let mut gen = rng(5);
    let mut errors = Vec::new();
    let mut steps = 0;
    let mut differing_seeds = 0;
    for i in 0..100u64 {
        let s = random_scenario(&mut gen, 7000 + i);
        match (check_run(&s), check_run(&s)) {
            (Ok(a), Ok(b)) => {
                steps += a.len() - 1;
                if a != b {
                    errors.push(format!("scenario {i}: equal seeds gave different curves"));
                }
                let full_a = ffca_core::run(&s).unwrap();
                let full_b = ffca_core::run(&s).unwrap();
                if full_a != full_b {
                    errors.push(format!("scenario {i}: equal seeds gave different results"));
                }
                let mut other = s.clone();
                other.params.seed += 1_000_000;
                if ffca_core::run(&other).unwrap().evac_curve != full_a.evac_curve {
                    differing_seeds += 1;
                }
            }
            (Err(e), _) | (_, Err(e)) => errors.push(format!("scenario {i}: {e}")),
        }
    }
    outcome(
        errors.is_empty(),
        format!(
            "100 random scenarios, {steps} steps checked, {} violations, {differing_seeds}/100 changed with a different seed{}",
            errors.len(),
            errors.first().map(|e| format!("; first: {e}")).unwrap_or_default()
        ),
    )
}

// ---------------------------------------------------------------------------
// 6. Conflict semantics
// ---------------------------------------------------------------------------

const BOTTLENECK: &str = "##E##\n#P.P#\n#####";

fn bottleneck(mu: f64) -> (Landscape, Vec<Cell>, ffca_core::ModelParams) {
    let (grid, agents) = parse_map(BOTTLENECK).unwrap();
    let mut p = params(4.0, 6.0, 4.0, 10, mu);
    p.max_steps = 1000;
    (Landscape::new(grid, p.r), agents, p)
}

fn conflict_semantics() -> Outcome {
    let (land, agents, p) = bottleneck(1.0);
    let mut state = SimulationState::new(&land.grid, &agents, 17);
    let mut frozen = true;
    for _ in 0..1000 {
        let r = step(&mut state, &land, &p);
        frozen &= r.moved == 0 && r.conflicts == 1 && r.blocked == 1;
    }
    frozen &= state.agents.iter().map(|a| a.cell).collect::<Vec<_>>() == agents;

    let (land, agents, p) = bottleneck(0.0);
    const TRIALS: u64 = 100_000;
    let fresh = SimulationState::new(&land.grid, &agents, 23);
    let mut rng = fresh.rng.clone();
    let mut left_wins = 0u64;
    let mut always_one = true;
    for _ in 0..TRIALS {
        let mut s = fresh.clone();
        s.rng = rng;
        let r = step(&mut s, &land, &p);
        always_one &= r.moved == 1 && r.conflicts == 1 && r.blocked == 0;
        if s.agents[0].cell != agents[0] {
            left_wins += 1;
        }
        rng = s.rng;
    }
    let freq = left_wins as f64 / TRIALS as f64;
    let sigma = (0.25 / TRIALS as f64).sqrt();
    let fair = (freq - 0.5).abs() <= 3.0 * sigma;
    outcome(
        frozen && always_one && fair,
        format!(
            "mu=1: frozen for 1000 steps = {frozen}; mu=0: exactly one mover in every trial = {always_one}, left winner freq = {freq:.5} (0.5 +/- {:.5})",
            3.0 * sigma
        ),
    )
}

// ---------------------------------------------------------------------------
// 7. Free-flow speed
// ---------------------------------------------------------------------------

fn free_flow_speed() -> Outcome {
    let mut row = "E".to_string();
    row.push_str(&".".repeat(29));
    row.push_str("P#");
    let map = format!("{0}\n{row}\n{0}", "#".repeat(32));
    let (grid, agents) = parse_map(&map).unwrap();
    let field = compute_sff(&grid);
    let start_distance = field.get(agents[0]);
    let mut total = 0u64;
    let mut incomplete = 0;
    for seed in 1..=100 {
        let mut p = params(4.0, 4.0, 4.0, 10, 0.0);
        p.seed = seed;
        let s = Scenario {
            grid: grid.clone(),
            initial_agents: agents.clone(),
            params: p,
        };
        match ffca_core::run(&s).unwrap().evac_time {
            EvacTime::Complete(t) => total += t,
            EvacTime::Incomplete => incomplete += 1,
        }
    }
    let mean = total as f64 / 100.0;
    outcome(
        incomplete == 0 && (30.0..=31.5).contains(&mean),
        format!("corridor length {start_distance}, mean evacuation time over 100 seeds = {mean:.2} steps (required [30, 31.5])"),
    )
}

// ---------------------------------------------------------------------------
// 8. Room experiment: 300 pedestrians, k_P = 6 vs 18
// ---------------------------------------------------------------------------

fn room_experiment() -> Outcome {
    let start = Instant::now();
    let base = load_scenario("room_37x33.txt");
    let out_root = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("room_experiment");
    let jobs: Vec<(f64, u64)> = [6.0, 18.0]
        .into_iter()
        .flat_map(|k| (1..=20).map(move |s| (k, s)))
        .collect();
    let options = RunOptions {
        snapshot_steps: DEFAULT_SNAPSHOT_STEPS.into_iter().collect(),
        distributions_at: None,
    };
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let results: Vec<(f64, SimulationResult)> = std::thread::scope(|scope| {
        let chunks: Vec<_> = jobs
            .chunks(jobs.len().div_ceil(threads))
            .map(|chunk| {
                let base = &base;
                let options = &options;
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&(k_p, seed)| {
                            let mut s = base.clone();
                            s.params.set(ParamKey::KP, &k_p.to_string()).unwrap();
                            s.params.seed = seed;
                            s.params.max_steps = 3000;
                            (k_p, ffca_core::run_with(&s, options).unwrap())
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        chunks.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    let elapsed = start.elapsed();

    let mut all_complete = true;
    let mut snapshots_ok = true;
    let mut summary = Vec::new();
    for k_p in [6.0, 18.0] {
        let runs: Vec<&SimulationResult> = results.iter().filter(|(k, _)| *k == k_p).map(|(_, r)| r).collect();
        let complete: Vec<u64> = runs.iter().filter_map(|r| r.evac_time.steps()).collect();
        all_complete &= complete.len() == runs.len();
        let spreads: Vec<f64> = runs.iter().filter_map(|r| r.spread_at(65)).collect();
        let spread = spreads.iter().sum::<f64>() / spreads.len() as f64;
        let mean_t = complete.iter().sum::<u64>() as f64 / complete.len().max(1) as f64;
        for r in &runs {
            let dir = out_root.join(format!("kP{k_p}_s{}", r.seed));
            std::fs::create_dir_all(&dir).unwrap();
            let written = export_snapshots(r, &base.grid, &dir).unwrap();
            snapshots_ok &= r.snapshots.iter().map(|s| s.step).eq(DEFAULT_SNAPSHOT_STEPS
                .into_iter()
                .filter(|&t| r.evac_time.steps().is_none_or(|e| t <= e)));
            snapshots_ok &= written.iter().all(|p| p.exists());
        }
        summary.push((k_p, complete.len(), mean_t, spread));
    }
    let wider = summary[1].3 > summary[0].3;
    let fast = elapsed < Duration::from_secs(120);
    outcome(
        all_complete && wider && snapshots_ok && fast,
        format!(
            "{}; spread@65 larger for k_P=18: {wider}; snapshots in {}; {:.1}s (limit 120s)",
            summary
                .iter()
                .map(|(k, n, t, s)| format!("k_P={k}: {n}/20 complete, mean evac {t:.1} steps, mean spread@65 {s:.3}"))
                .collect::<Vec<_>>()
                .join("; "),
            out_root.display(),
            elapsed.as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// 9. ΔS shift invariance
// ---------------------------------------------------------------------------

fn shift_invariance() -> Outcome {
    let mut gen = rng(9);
    let offsets = [
        PathLength::new(1, 0),
        PathLength::new(7, 3),
        PathLength::new(0, 1000),
        PathLength::new(1_000_000, 12_345),
    ];
    let mut checked = 0;
    let mut differing = 0;
    for i in 0..2000 {
        let f = random_fixture(&mut gen, 20.0);
        let base = transition_distribution(&f.land, &f.occupancy, f.cell, &f.params);
        let offset = offsets[i % offsets.len()];
        let shifted = Landscape::with_field(f.land.grid.clone(), f.land.field.shifted(offset), f.params.r);
        let moved = transition_distribution(&shifted, &f.occupancy, f.cell, &f.params);
        checked += 1;
        let same = base.norm_zero == moved.norm_zero
            && base.p.iter().zip(moved.p).all(|(a, b)| a.to_bits() == b.to_bits());
        if !same {
            differing += 1;
        }
    }
    outcome(
        differing == 0,
        format!("{checked} fixtures with S shifted by a + b*sqrt(2): {differing} distributions differ bitwise"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "SFF oracle equivalence", sff_oracle_equivalence),
        (2, "distribution Monte-Carlo", distribution_monte_carlo),
        (3, "normalization, zeros only at walls", normalization_and_wall_zeros),
        (4, "kernel and density values", kernel_values),
        (5, "engine conservation and determinism", engine_conservation_determinism),
        (6, "conflict semantics", conflict_semantics),
        (7, "free-flow speed", free_flow_speed),
        (8, "room experiment k_P=6 vs 18", room_experiment),
        (9, "delta-S shift invariance", shift_invariance),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (n, name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || n.to_string() == *f) {
            continue;
        }
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {n} [{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    }
}

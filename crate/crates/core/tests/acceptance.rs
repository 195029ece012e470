//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p dagiso --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_statements, random_dag, random_partial_orientation, set, st, v};
use dagiso::oracle::{self, IsomorphismOracle};
use dagiso::{
    close_semigraphoid, d_separated, d_separated_naive, decide, full_model, phase1, phase2,
    ClosureConfig, Dag, DependencyModel, DsepQuery, FailureReason, Graph, Pdag, Phase,
    Phase2Mode, Statement, VarId, VarSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pair_model(n: usize, pairs: &[(usize, usize)]) -> DependencyModel {
    DependencyModel::explicit(n, pairs.iter().map(|&(a, b)| st(&[a], &[b], &[]))).unwrap()
}

/// 1. The small worked models give the expected verdicts, in under a second.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    let crossed = decide(&pair_model(4, &[(0, 2), (0, 3), (1, 3)]));
    let f = crossed.failure().ok_or("crossed colliders produced a witness")?;
    check(f.phase == Phase::One, format!("crossed colliders failed in {:?}", f.phase))?;

    let pairwise = decide(&pair_model(3, &[(0, 1), (0, 2), (1, 2)]));
    let f = pairwise.failure().ok_or("pairwise-only model produced a witness")?;
    check(f.phase == Phase::Three, format!("pairwise-only model failed in {:?}", f.phase))?;

    let cycle = Pdag::new(
        4,
        &[],
        &[(v(0), v(1)), (v(1), v(2)), (v(2), v(3)), (v(3), v(0))],
    )
    .unwrap();
    for mode in [Phase2Mode::Backtrack, Phase2Mode::FailFast] {
        let f = phase2(&cycle, mode).err().ok_or(format!("4-cycle extended in {mode:?}"))?;
        check(
            f.phase == Phase::Two && matches!(f.reason, FailureReason::NoExtension { .. }),
            format!("4-cycle gave {f:?}"),
        )?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("crossed colliders -> phase 1, pairwise-only -> phase 3, 4-cycle -> phase 2 ({elapsed:?})"))
}

/// 2. Every DAG on 3 and 4 nodes is recovered up to equivalence.
fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut total = 0;
    for n in [3, 4] {
        for d in oracle::enumerate_dags(n).unwrap().iter() {
            let m = full_model(d).unwrap();
            let decision = decide(&m);
            let w = decision
                .witness()
                .ok_or_else(|| format!("no witness for {d:?}: {:?}", decision.failure()))?;
            check(w.is_equivalent(d).unwrap(), format!("witness {w:?} not equivalent to {d:?}"))?;
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    check(total == 25 + 543, format!("checked {total} dags"))?;
    check(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("{total} dags recovered ({elapsed:?})"))
}

/// 3. Single-statement mutations of DAG models: decide agrees with brute force.
fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    let mut positives = 0;
    for n in [2, 3, 4] {
        let brute = IsomorphismOracle::new(n).unwrap();
        let universe = all_statements(n);
        let dags = oracle::enumerate_dags(n).unwrap();
        // exhaustive below four nodes, sampled at four
        let per_dag = if n < 4 { usize::MAX } else { 2 };
        for d in dags.iter() {
            let full = full_model(d).unwrap();
            let mut mutations: Vec<DependencyModel> = Vec::new();
            for s in &universe {
                let mut stmts = full.statements().clone();
                if !stmts.remove(s) {
                    stmts.insert(*s);
                }
                mutations.push(DependencyModel::explicit(n, stmts).unwrap());
            }
            let picks: Vec<usize> = if per_dag == usize::MAX {
                (0..mutations.len()).collect()
            } else {
                (0..per_dag).map(|_| rng.gen_range(0..mutations.len())).collect()
            };
            for i in picks {
                let m = &mutations[i];
                let expected = brute.find(m).unwrap().is_some();
                let got = decide(m).is_witness();
                check(
                    expected == got,
                    format!("verdict {got} vs oracle {expected} on {:?}", m.statements()),
                )?;
                positives += usize::from(expected);
                checked += 1;
            }
        }
    }
    check(checked >= 200, format!("only {checked} mutations"))?;
    Ok(format!("{checked} mutated models agree ({positives} dag-isomorphic)"))
}

fn singleton_queries(n: usize) -> Vec<DsepQuery> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let rest = VarSet::full(n).without(v(a)).without(v(b));
            for z in rest.subsets() {
                out.push(DsepQuery::new(set(&[a]), set(&[b]), z).unwrap());
            }
        }
    }
    out
}

/// 4. d-separation engine equals path enumeration.
fn criterion_4() -> Verdict {
    let mut exhaustive = 0;
    for n in 1..=4 {
        let queries = singleton_queries(n);
        for d in oracle::enumerate_dags(n).unwrap().iter() {
            for q in &queries {
                let fast = d_separated(d, q).unwrap();
                let slow = d_separated_naive(d, q).unwrap();
                check(fast == slow, format!("{d:?} {q:?}: engine {fast}, oracle {slow}"))?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut random = 0;
    while random < 12_000 {
        let n = rng.gen_range(5..=7);
        let density = rng.gen_range(0.2..0.6);
        let d = random_dag(&mut rng, n, density);
        for _ in 0..12 {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let z: VarSet = (0..n)
                .filter(|&i| i != a && i != b && rng.gen_bool(0.3))
                .map(VarId::new)
                .collect();
            let q = DsepQuery::new(set(&[a]), set(&[b]), z).unwrap();
            let fast = d_separated(&d, &q).unwrap();
            let slow = d_separated_naive(&d, &q).unwrap();
            check(fast == slow, format!("{d:?} {q:?}: engine {fast}, oracle {slow}"))?;
            random += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive + {random} random queries, 0 disagreements"))
}

/// 5. Equivalence-class and DAG counts.
fn criterion_5() -> Verdict {
    let expected_classes = [(2, 2), (3, 11), (4, 185)];
    let mut parts = Vec::new();
    for (n, classes) in expected_classes {
        let dags = oracle::enumerate_dags(n).unwrap().len();
        let recurrence = oracle::labeled_dag_count(n) as usize;
        check(dags == recurrence, format!("n={n}: {dags} dags, recurrence {recurrence}"))?;
        let got = oracle::equivalence_classes(n).unwrap().len();
        check(got == classes, format!("n={n}: {got} classes, expected {classes}"))?;
        parts.push(format!("n={n}: {dags} dags / {got} classes"));
    }
    Ok(parts.join(", "))
}

/// 6. Backtracking and fail-fast phase 2 agree, and both match the
///    brute-force extension oracle.
fn criterion_6() -> Verdict {
    let mut patterns: Vec<(Pdag, Option<Dag>)> = Vec::new();
    for n in [3, 4] {
        for d in oracle::enumerate_dags(n).unwrap().iter() {
            let (g, _) = phase1(&full_model(d).unwrap()).map_err(|f| format!("{f:?}"))?;
            patterns.push((g, Some(d.clone())));
        }
    }
    let derived = patterns.len();

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut random = 0;
    let mut unextendible = 0;
    while random < 1_000 {
        let (g, d) = &patterns[rng.gen_range(0..derived)];
        let along = if rng.gen_bool(0.5) { d.as_ref() } else { None };
        let p = rng.gen_range(0.2..0.8);
        if let Some(h) = random_partial_orientation(&mut rng, g, along, p) {
            patterns.push((h, None));
            random += 1;
        }
    }
    // larger random skeletons with random orientations
    while random < 1_500 {
        let n = rng.gen_range(5..=6);
        let skeleton = random_dag(&mut rng, n, 0.5);
        let undirected = Pdag::new(
            n,
            &[],
            &skeleton.directed_edges(),
        )
        .unwrap();
        if let Some(h) = random_partial_orientation(&mut rng, &undirected, None, 0.4) {
            patterns.push((h, None));
            random += 1;
        }
    }

    for (g, _) in &patterns {
        let back = phase2(g, Phase2Mode::Backtrack);
        let fast = phase2(g, Phase2Mode::FailFast);
        let truth = !oracle::extensions(g).unwrap().is_empty();
        unextendible += usize::from(!truth);
        check(
            back.is_ok() == fast.is_ok(),
            format!(
                "mode disagreement: backtrack {} / fail-fast {} on pdag directed={:?} undirected={:?}",
                back.is_ok(),
                fast.is_ok(),
                g.directed_edges(),
                g.undirected_edges()
            ),
        )?;
        check(
            back.is_ok() == truth,
            format!("backtrack {} but oracle {truth} on {g:?}", back.is_ok()),
        )?;
        if let Ok(d) = back {
            check(
                d.skeleton() == g.skeleton() && d.vee_structures() == g.vee_structures(),
                format!("{d:?} is not an extension of {g:?}"),
            )?;
        }
    }
    Ok(format!(
        "{derived} derived + {random} random pdags agree ({unextendible} unextendible)"
    ))
}

/// 7. Closure engine properties.
fn criterion_7() -> Verdict {
    let cfg = ClosureConfig::default();
    let mut dags = 0;
    for n in 1..=4 {
        for d in oracle::enumerate_dags(n).unwrap().iter() {
            let full = full_model(d).unwrap();
            let closed = close_semigraphoid(full.statements().iter().copied(), n, cfg).unwrap();
            check(
                closed.statements() == full.statements(),
                format!("closure grew the model of {d:?}"),
            )?;
            dags += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pools: BTreeMap<usize, Vec<Statement>> = (3..=5).map(|n| (n, all_statements(n))).collect();
    let mut pairs_checked = 0;
    for _ in 0..100 {
        let n = rng.gen_range(3..=5);
        let pool = &pools[&n];
        let k = rng.gen_range(1..=4);
        let basis: Vec<Statement> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        let extra = pool[rng.gen_range(0..pool.len())];
        let closed = close_semigraphoid(basis.iter().copied(), n, cfg).unwrap();
        let again = close_semigraphoid(closed.statements().iter().copied(), n, cfg).unwrap();
        check(again.statements() == closed.statements(), format!("not idempotent on {basis:?}"))?;
        let bigger = close_semigraphoid(basis.iter().copied().chain([extra]), n, cfg).unwrap();
        check(
            closed.statements().is_subset(bigger.statements()),
            format!("not monotone on {basis:?} + {extra:?}"),
        )?;
        for m in [&closed, &bigger] {
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let fast = m.has_separator(v(a), v(b));
                    let scan = m.has_separator_exhaustive(v(a), v(b));
                    check(
                        fast.is_some() == scan.is_some(),
                        format!("fast path {fast:?} vs scan {scan:?} for ({a},{b}) on {basis:?}"),
                    )?;
                    if let Some(s) = fast {
                        check(
                            m.contains(&st(&[a], &[b], &[])).is_ok()
                                && m.statements().contains(&Statement::new(set(&[a]), set(&[b]), s).unwrap()),
                            format!("fast-path separator {s:?} not in closure"),
                        )?;
                    }
                    pairs_checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{dags} dag models closed; 100 random bases idempotent+monotone; {pairs_checked} fast-path pairs agree"
    ))
}

/// 8. Phase 1 time grows at most quasi-linearly in |M| at fixed |U|.
fn criterion_8() -> Verdict {
    const VARS: usize = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pool: Vec<Statement> = Vec::new();
    for a in 0..VARS {
        for b in a + 1..VARS {
            let rest = VarSet::full(VARS).without(v(a)).without(v(b));
            for z in rest.subsets() {
                pool.push(Statement::new(set(&[a]), set(&[b]), z).unwrap());
            }
        }
    }
    let mut timings = Vec::new();
    for (size, reps) in [(100usize, 400), (1_000, 60), (10_000, 12)] {
        let picked: Vec<Statement> = (0..size).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        let m = DependencyModel::explicit(VARS, picked).unwrap();
        let mut samples: Vec<Duration> = (0..reps)
            .map(|_| {
                let t = Instant::now();
                let out = phase1(&m);
                std::hint::black_box(&out);
                t.elapsed()
            })
            .collect();
        samples.sort();
        timings.push((m.len(), samples[reps / 2]));
    }
    let per_stmt: Vec<f64> = timings
        .iter()
        .map(|&(m, t)| t.as_secs_f64() / (m as f64 * (m as f64).log2()))
        .collect();
    let monotone = timings.windows(2).all(|w| w[0].1 <= w[1].1);
    let report = timings
        .iter()
        .map(|(m, t)| format!("|M|={m}: {t:?}"))
        .collect::<Vec<_>>()
        .join(", ");
    check(monotone, format!("non-monotone: {report}"))?;
    // normalized cost at the largest size may not exceed 4x the smallest
    check(
        per_stmt[2] <= 4.0 * per_stmt[0],
        format!("super-quasi-linear growth: {report}"),
    )?;
    Ok(report)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked examples", criterion_1),
        ("end-to-end recovery of all 3/4-node dags", criterion_2),
        ("mutated models vs brute force", criterion_3),
        ("d-separation engine vs path oracle", criterion_4),
        ("dag and equivalence-class counts", criterion_5),
        ("backtrack/fail-fast agreement", criterion_6),
        ("closure engine", criterion_7),
        ("phase 1 scaling", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

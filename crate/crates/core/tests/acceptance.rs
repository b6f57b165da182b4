//! Acceptance criteria 1-10. Every check is exact; the only pinned tolerance
//! is the wall-clock budget of each criterion.
//!
//! Runs without the libtest harness so the per-criterion lines always print:
//! `cargo test -p narayana-core --test acceptance`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use narayana_core::dyck::{
    distribution, enumerate, joint_q, random_path, CoStatistic, DyckPath, RankSubset, ReferenceOrder, Statistic,
};
use narayana_core::posets::{flag_h, j2xn, FlagVectors};
use narayana_core::qpoly::{q_narayana_closed, QPoly};
use narayana_core::shelling::{
    check_preshelling, flag_h_from_partition, is_shelling, omega_n, partition_intervals, random_linear_extension,
    random_order, restriction, s_map, sigma_stat, DyckComplex, FacetOrder,
};
use narayana_core::tableaux::{dyck_to_ssyt, for_each_ssyt, q_narayana_schur_with, ssyt_to_dyck, Partition, SchurRoute, Ssyt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-criterion wall-clock budgets in seconds.
const BUDGETS: [u64; 10] = [60, 30, 120, 30, 30, 120, 60, 60, 60, 1];
/// Random reference paths per semilength in criterion 3.
const RANDOM_REFERENCES: u64 = 25;
/// Random linear extensions per semilength in criterion 7.
const EXTENSIONS: usize = 10;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn path(s: &str) -> DyckPath {
    s.parse().expect("valid path")
}

/// `N(n, k)` from Pascal's triangle.
fn narayana_row(n: usize) -> Vec<u64> {
    let mut pascal = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &pascal[i - 1];
        let mut row = vec![1u64; i + 1];
        for j in 1..i {
            row[j] = prev[j - 1] + prev[j];
        }
        pascal.push(row);
    }
    let c = |a: usize, b: usize| if b > a { 0 } else { pascal[a][b] };
    (0..n).map(|k| c(n, k) * c(n, k + 1) / n as u64).collect()
}

/// Ideals of `2 × n` as pairs `(a, b)`, `a ≥ b`: `a` cells of the first
/// chain, `b` of the second. Rank is `a + b`.
fn brute_flag_h(n: usize) -> BTreeMap<u64, i128> {
    let top = 2 * n;
    let mut by_rank: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top + 1];
    for a in 0..=n {
        for b in 0..=a {
            by_rank[a + b].push((a, b));
        }
    }
    let interior = top - 1;
    let alpha = |mask: u64| -> i128 {
        let mut layer: Vec<((usize, usize), i128)> = vec![((0, 0), 1)];
        let ranks = (1..top).filter(|r| mask >> (r - 1) & 1 == 1).chain([top]);
        for r in ranks {
            layer = by_rank[r]
                .iter()
                .map(|&(a, b)| {
                    let ways = layer
                        .iter()
                        .filter(|&&((x, y), _)| x <= a && y <= b)
                        .map(|&(_, c)| c)
                        .sum();
                    ((a, b), ways)
                })
                .collect();
        }
        layer.iter().map(|&(_, c)| c).sum()
    };
    let alphas: Vec<i128> = (0..1u64 << interior).map(alpha).collect();
    let mut out = BTreeMap::new();
    for s in 0..1u64 << interior {
        let mut beta = 0i128;
        let mut t = s;
        loop {
            let sign = if (s & !t).count_ones() % 2 == 0 { 1 } else { -1 };
            beta += sign * alphas[t as usize];
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        out.insert(s << 1, beta);
    }
    out
}

/// `D_W(w)` straight from the labelled-letter definition.
fn brute_descent_wrt(w: &str, reference: &str) -> u64 {
    let labels = |s: &str| -> Vec<(char, usize)> {
        let (mut v, mut h) = (0, 0);
        s.chars()
            .map(|c| {
                let counter = if c == 'v' { &mut v } else { &mut h };
                *counter += 1;
                (c, *counter)
            })
            .collect()
    };
    let order = labels(reference);
    let pos = |l: &(char, usize)| order.iter().position(|x| x == l).unwrap();
    let word = labels(w);
    (1..word.len())
        .filter(|&i| pos(&word[i]) < pos(&word[i - 1]))
        .fold(0u64, |m, i| m | 1 << i)
}

fn criterion_1() -> Outcome {
    let stats = [Statistic::Des, Statistic::Hp, Statistic::Ea, Statistic::Lnfs];
    for n in 1..=10 {
        let row = narayana_row(n);
        for stat in &stats {
            let dist = distribution(n, stat).map_err(|e| e.to_string())?;
            let got: Vec<u64> = (0..n).map(|k| dist.get(&k).copied().unwrap_or(0)).collect();
            ensure(got == row && dist.keys().all(|&k| k < n), || {
                format!("n={n} {}: {dist:?} vs {row:?}", stat.name())
            })?;
        }
    }
    Ok("des, hp, ea, lnfs have Narayana rows for n = 1..10".into())
}

fn criterion_2() -> Outcome {
    for n in 1..=8 {
        let joint = joint_q(n, &Statistic::Des, &CoStatistic::Maj).map_err(|e| e.to_string())?;
        for k in 0..n {
            let closed = q_narayana_closed(n, k).map_err(|e| e.to_string())?;
            let ssyt = q_narayana_schur_with(n, k, SchurRoute::Ssyt).map_err(|e| e.to_string())?;
            let hook = q_narayana_schur_with(n, k, SchurRoute::Hook).map_err(|e| e.to_string())?;
            let enumerated = joint.get(&k).cloned().unwrap_or_else(QPoly::zero);
            ensure(enumerated == closed && closed == ssyt && ssyt == hook, || {
                format!("n={n} k={k}: enum {enumerated}, closed {closed}, ssyt {ssyt}, hook {hook}")
            })?;
        }
    }
    let spot = q_narayana_closed(3, 1).map_err(|e| e.to_string())?;
    ensure(spot == QPoly::from_coeffs([0, 0, 1, 1, 1]), || format!("N_q(3,1) = {spot}"))?;
    Ok(format!("enumeration = closed = schur(ssyt) = schur(hook) for n <= 8; N_q(3,1) = {spot}"))
}

fn criterion_3() -> Outcome {
    let mut references = 0;
    for n in 1..=6 {
        let oracle = brute_flag_h(n);
        let lattice = j2xn(n).map_err(|e| e.to_string())?;
        let flags = FlagVectors::compute(lattice.lattice()).map_err(|e| e.to_string())?;
        for (s, beta) in flags.beta_entries() {
            ensure(oracle.get(&s.bits()) == Some(&beta), || format!("n={n} S={s}: flag_h {beta}"))?;
        }
        let paths = enumerate(n);
        let refs: Vec<DyckPath> = if n <= 4 {
            paths.clone()
        } else {
            (0..RANDOM_REFERENCES).map(|i| random_path(n, SEED + i)).collect()
        };
        for w_ref in &refs {
            let order = ReferenceOrder::new(w_ref);
            let mut counts: BTreeMap<u64, i128> = BTreeMap::new();
            for w in &paths {
                let d = order.descent_set(w).map_err(|e| e.to_string())?;
                let brute = brute_descent_wrt(&w.to_string(), &w_ref.to_string());
                ensure(d.bits() == brute, || format!("D_{w_ref}({w}) = {d}"))?;
                *counts.entry(d.bits()).or_default() += 1;
            }
            for (&s, &beta) in &oracle {
                let got = counts.get(&s).copied().unwrap_or(0);
                ensure(got == beta, || format!("n={n} W={w_ref} S={s:#b}: {got} paths vs flag_h {beta}"))?;
            }
            references += 1;
        }
    }
    Ok(format!("flag_h(J(2xn), S) = #{{w : D_W(w) = S}} for {references} references, n <= 6"))
}

fn criterion_4() -> Outcome {
    for n in 1..=5 {
        let oracle = brute_flag_h(n);
        let mut counts: BTreeMap<u64, i128> = BTreeMap::new();
        for k in 0..n {
            for_each_ssyt(&Partition::two_column(k), n - 1, |rows| {
                let bits = rows.iter().map(|r| r.iter().sum::<usize>()).fold(0u64, |m, s| m | 1 << s);
                *counts.entry(bits).or_default() += 1;
            });
        }
        for (&s, &beta) in &oracle {
            let got = counts.get(&s).copied().unwrap_or(0);
            ensure(got == beta, || format!("n={n} S={s:#b}: {got} tableaux vs flag_h {beta}"))?;
        }
        ensure(counts.keys().all(|s| oracle.contains_key(s)), || format!("n={n}: row sums outside [2n-1]"))?;
    }
    for n in 1..=7 {
        for w in enumerate(n) {
            let t = dyck_to_ssyt(&w);
            let back = ssyt_to_dyck(&t, n).map_err(|e| e.to_string())?;
            ensure(back == w, || format!("{w} -> {t} -> {back}"))?;
        }
    }
    Ok("flag_h = #SSYT by row sums for n <= 5; bijection round-trips for n <= 7".into())
}

fn criterion_5() -> Outcome {
    for n in 1..=8 {
        let joint = joint_q(n, &Statistic::Lnfs, &CoStatistic::MajL).map_err(|e| e.to_string())?;
        for k in 0..n {
            let closed = q_narayana_closed(n, k).map_err(|e| e.to_string())?;
            let got = joint.get(&k).cloned().unwrap_or_else(QPoly::zero);
            ensure(got == closed, || format!("n={n} k={k}: {got} vs {closed}"))?;
        }
    }
    Ok("(lnfs, MAJ_l) is q-Narayana for n <= 8".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut instances = 0;
    for n in 1..=5 {
        let dc = DyckComplex::new(n).map_err(|e| e.to_string())?;
        let omega = omega_n(n).map_err(|e| e.to_string())?;
        let rep = check_preshelling(dc.complex(), &omega).map_err(|e| e.to_string())?;
        ensure(rep.is_preshelling(), || format!("Omega_{n}: {:?}", rep.verdicts()))?;
    }
    for n in 3..=5 {
        let dc = DyckComplex::new(n).map_err(|e| e.to_string())?;
        let m = dc.complex().num_facets();
        let omega = omega_n(n).map_err(|e| e.to_string())?;
        let mut broken = vec![FacetOrder::empty(m), omega.reversed()];
        for density in [0.05, 0.2, 0.5, 0.9] {
            broken.push(random_order(m, density, &mut rng));
        }
        let mut failing = 0;
        for order in &broken {
            let rep = check_preshelling(dc.complex(), order).map_err(|e| e.to_string())?;
            ensure(rep.consistent(), || format!("n={n}: verdicts disagree {:?}", rep.verdicts()))?;
            failing += usize::from(!rep.is_preshelling());
            instances += 1;
        }
        ensure(failing >= 2, || format!("n={n}: corpus contains only {failing} non-pre-shellings"))?;
    }
    Ok(format!("Omega_n pre-shelling for n <= 5; verdicts agree on {instances} corpus orders"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=5 {
        let dc = DyckComplex::new(n).map_err(|e| e.to_string())?;
        let omega = omega_n(n).map_err(|e| e.to_string())?;
        let base: Vec<_> = (0..dc.complex().num_facets()).map(|f| restriction(dc.complex(), &omega, f)).collect();
        for _ in 0..EXTENSIONS {
            let ext = random_linear_extension(&omega, &mut rng);
            ensure((1..ext.len()).all(|j| ext[..j].iter().all(|&a| !omega.lt(ext[j], a))), || {
                format!("n={n}: {ext:?} is not a linear extension")
            })?;
            let check = is_shelling(dc.complex(), &ext).map_err(|e| e.to_string())?;
            ensure(check.is_shelling, || format!("n={n}: {ext:?} fails at {:?}", check.violation))?;
            let total = FacetOrder::total(&ext).map_err(|e| e.to_string())?;
            let p = partition_intervals(dc.complex(), &total);
            ensure(p.restrictions == base, || format!("n={n}: restrictions differ for {ext:?}"))?;
        }
    }
    Ok(format!("{EXTENSIONS} linear extensions of Omega_n per n <= 5 are shellings with equal restrictions"))
}

fn criterion_8() -> Outcome {
    for n in 1..=5 {
        let oracle = brute_flag_h(n);
        let dc = DyckComplex::new(n).map_err(|e| e.to_string())?;
        let omega = omega_n(n).map_err(|e| e.to_string())?;
        let p = partition_intervals(dc.complex(), &omega);
        let from_partition = flag_h_from_partition(dc.order_complex(), &p);
        let mut ls: BTreeMap<u64, i128> = BTreeMap::new();
        for w in enumerate(n) {
            *ls.entry(w.ls_set().bits()).or_default() += 1;
        }
        for (&s, &beta) in &oracle {
            let set = RankSubset::from_bits(s);
            let part = from_partition.get(&set).copied().unwrap_or(0) as i128;
            let ie = flag_h(dc.lattice().lattice(), &set).map_err(|e| e.to_string())?;
            let by_ls = ls.get(&s).copied().unwrap_or(0);
            ensure(part == beta && ie == beta && by_ls == beta, || {
                format!("n={n} S={set}: partition {part}, inclusion-exclusion {ie}, LS {by_ls}, oracle {beta}")
            })?;
        }
    }
    Ok("partition flag h = inclusion-exclusion flag h = LS counts for n <= 5".into())
}

fn criterion_9() -> Outcome {
    let mut moves = 0u64;
    for n in 1..=7 {
        for w in enumerate(n) {
            for i in 1..=2 * n - 2 {
                let u = s_map(&w, i).map_err(|e| e.to_string())?;
                if u != w {
                    ensure(sigma_stat(&u) < sigma_stat(&w), || format!("s_{i}({w}) = {u}"))?;
                    moves += 1;
                }
            }
        }
    }
    Ok(format!("(da, MAJ) strictly decreases on all {moves} nontrivial s_i moves, n <= 7"))
}

fn criterion_10() -> Outcome {
    let d = ReferenceOrder::new(&path("vvhvhh")).descent_set(&path("vhvvhh")).map_err(|e| e.to_string())?;
    ensure(d.to_string() == "{2}", || format!("D_W(w) = {d}"))?;

    let t = Ssyt::new(vec![vec![1, 2], vec![3, 5], vec![5, 6]]).map_err(|e| e.to_string())?;
    let w = ssyt_to_dyck(&t, 7).map_err(|e| e.to_string())?;
    ensure(w.to_string() == "vvhvvvhhvhhvhh", || format!("tableau maps to {w}"))?;
    ensure(w.descent_set().to_string() == "{3, 8, 11}", || format!("descents {}", w.descent_set()))?;

    let omega = omega_n(4).map_err(|e| e.to_string())?;
    let mins = omega.minimal_elements();
    let paths = enumerate(4);
    ensure(omega.len() == 14 && mins.len() == 1, || format!("{} elements, minima {mins:?}", omega.len()))?;
    ensure(paths[mins[0]].to_string() == "vhvhvhvh", || format!("minimum {}", paths[mins[0]]))?;
    Ok("D_W example {2}; n=7 tableau -> vvhvvvhhvhhvhh with descents {3, 8, 11}; Omega_4 has 14 elements, minimum vhvhvhvh".into())
}

fn main() -> std::process::ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failures = Vec::new();
    for (i, run) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(BUDGETS[i]);
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; over budget")),
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(msg) => ("PASS", msg),
            Err(msg) => ("FAIL", msg),
        };
        println!(
            "[{tag}] criterion {}: {msg} ({:.3}s of {}s)",
            i + 1,
            elapsed.as_secs_f64(),
            BUDGETS[i]
        );
        if outcome.is_err() {
            failures.push(i + 1);
        }
    }
    if failures.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failures:?}");
        std::process::ExitCode::FAILURE
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime
//! against the budget. Exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclewalk::bounds::{
    asymptotic_pmf_k1, asymptotic_pmf_k1_closed, dim_sum_bound, ds_upper_bound, moment_k1, stirling_identity_checks,
    tensor_coeff, tensor_coeff_max_r, tensor_multiplicity_bruteforce, tensor_route_max_r, tensor_route_moment,
    theorem1_lower_closed, theorem1_lower_from_pmf, theorem_envelopes, truncated_bell, integral_identity_exact,
    bell,
};
use cyclewalk::characters::{
    character_table, mn_character, r_upper_bound, rim_move, rim_move_delta, transposition_normalized,
};
use cyclewalk::numeric::{factorial, ratio, Limits};
use cyclewalk::partitions::{
    dimension, dominance, enumerate_partitions, rim_hook_removals, syt_count_bruteforce, Dominance,
};
use cyclewalk::walk::{
    coset_measure, fixed_point_moment, simulate, stationary_measure, steps_for_c, tv, DirectEngine, FourierEngine,
    SimOptions, DEFAULT_SEED,
};
use cyclewalk::{ClassMeasure, Parity, Partition, Scalar, WalkSpec};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn hook(first: usize, rest: &[usize], ones: usize) -> Partition {
    let mut parts = vec![first];
    parts.extend_from_slice(rest);
    parts.extend(std::iter::repeat_n(1, ones));
    p(&parts)
}

fn max_gap<T: Scalar>(a: &ClassMeasure<T>, b: &ClassMeasure<T>) -> T {
    let mut worst = T::zero();
    for c in a.probs().keys().chain(b.probs().keys()) {
        let d = (a.prob(c) - b.prob(c)).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

fn ac1_engine_equivalence() -> Result<String, String> {
    let limits = Limits::default();
    let mut cases = 0;
    let mut worst_float: f64 = 0.0;
    for n in 4..=8 {
        for k in 1..=3 {
            let mut dq = DirectEngine::<BigRational>::new(n, k, &limits).map_err(|e| e.to_string())?;
            let fq = FourierEngine::<BigRational>::new(n, k, &limits).map_err(|e| e.to_string())?;
            let mut df = DirectEngine::<f64>::new(n, k, &limits).map_err(|e| e.to_string())?;
            let ff = FourierEngine::<f64>::new(n, k, &limits).map_err(|e| e.to_string())?;
            for t in 0..=15 {
                let a = dq.measure();
                let b = fq.measure_at(t).map_err(|e| e.to_string())?;
                ensure!(a == b, "rational engines differ at n={n} k={k} t={t}");
                let gap = max_gap(&df.measure(), &ff.measure_at(t).map_err(|e| e.to_string())?);
                ensure!(gap <= 1e-10, "float engines differ by {gap:e} at n={n} k={k} t={t}");
                worst_float = worst_float.max(gap);
                dq.step();
                df.step();
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, rational identical, float max gap {worst_float:.1e}"))
}

fn ac2_golden_tv() -> Result<String, String> {
    let limits = Limits::default();
    let mut values = Vec::new();
    for (t, expected) in [(0, ratio(1, 3)), (1, ratio(0, 1))] {
        let spec = WalkSpec::new(4, 1, t).unwrap();
        let m = cyclewalk::walk::evolve_direct::<BigRational>(&spec, &limits).map_err(|e| e.to_string())?;
        let u = stationary_measure::<BigRational>(4, spec.total_steps(), 1).map_err(|e| e.to_string())?;
        let d = tv(&m, &u).map_err(|e| e.to_string())?;
        ensure!(d == expected, "tv(mu_{0}, U_{0}) = {1}, expected {2}", t + 1, d.format(), expected.format());
        values.push(d.format());
    }
    Ok(format!("tv(mu_1,U_1) = {}, tv(mu_2,U_2) = {}", values[0], values[1]))
}

fn ac3_characters() -> Result<String, String> {
    let limits = Limits::default();
    // orthogonality, degrees
    for n in 1..=12 {
        let table = character_table(n, &limits).map_err(|e| e.to_string())?;
        let order = BigInt::from(factorial(n));
        let sizes: Vec<BigInt> = table.classes.iter().map(|c| BigInt::from(c.class_size())).collect();
        let m = table.irreps.len();
        for i in 0..m {
            for j in i..m {
                let s: BigInt = (0..m)
                    .map(|c| &sizes[c] * &table.values[i][c] * &table.values[j][c])
                    .sum();
                let expected = if i == j { order.clone() } else { BigInt::zero() };
                ensure!(s == expected, "row orthogonality fails at n={n}");
            }
        }
        for a in 0..m {
            for b in a..m {
                let s: BigInt = (0..m).map(|i| &table.values[i][a] * &table.values[i][b]).sum();
                let expected = if a == b { &order / &sizes[a] } else { BigInt::zero() };
                ensure!(s == expected, "column orthogonality fails at n={n}");
            }
        }
        let dims: num_bigint::BigUint = table.irreps.iter().map(|l| {
            let d = dimension(l);
            &d * &d
        }).sum();
        ensure!(dims == factorial(n), "sum of squared degrees != n! at n={n}");
        let id = table.class_index(&Partition::column(n)).unwrap();
        for (l, row) in table.irreps.iter().zip(&table.values) {
            ensure!(row[id] == BigInt::from(dimension(l)), "degree column disagrees with hook formula at ({l})");
        }
    }
    for n in 1..=8 {
        for l in enumerate_partitions(n) {
            let brute = syt_count_bruteforce(&l, &limits).map_err(|e| e.to_string())?;
            ensure!(num_bigint::BigUint::from(brute) == dimension(&l), "SYT count differs at ({l})");
        }
    }

    // characters at (n-k, 1^k), n = 12
    let n = 12;
    let mut swapped = 0;
    for k in 2..=6i64 {
        let mu = Partition::cycle_type(n, k as usize);
        let chi = |l: Partition| mn_character(&l, &mu).map_err(|e| e.to_string());
        let two_two = chi(hook(n - 2, &[2], 0))?;
        let two_one_one = chi(hook(n - 2, &[], 2))?;
        ensure!(chi(p(&[n]))? == BigInt::from(1), "trivial character at k={k}");
        ensure!(chi(hook(n - 1, &[], 1))? == BigInt::from(k - 1), "(n-1,1) at k={k}");
        ensure!(two_two == BigInt::from(k * (k - 3) / 2), "(n-2,2) at k={k}: {two_two}");
        ensure!(two_one_one == BigInt::from((k - 1) * (k - 2) / 2), "(n-2,1,1) at k={k}: {two_one_one}");
        if k >= 4 {
            // the printed k >= 4 entries, 1 + k(k-3)/2 and 2 + (k+1)(k-4)/2,
            // are these two values attached to the opposite shapes
            let printed_22 = BigInt::from(1 + k * (k - 3) / 2);
            let printed_211 = BigInt::from(2 + (k + 1) * (k - 4) / 2);
            ensure!(printed_22 == two_one_one && printed_211 == two_two, "printed k>=4 table at k={k}");
            swapped += 1;
        }
    }

    // normalized transposition characters
    let mut shapes_checked = 0;
    for n in 6..=40usize {
        let tr = Partition::transposition(n);
        let r_mn = |l: &Partition| -> Result<BigRational, String> {
            let chi = mn_character(l, &tr).map_err(|e| e.to_string())?;
            Ok(BigRational::new(chi, BigInt::from(dimension(l))))
        };
        let ni = n as i64;
        let mut expected = vec![
            (p(&[n]), ratio(1, 1)),
            (hook(n - 1, &[], 1), ratio(ni - 3, ni - 1)),
            (hook(n - 2, &[2], 0), ratio(ni - 4, ni)),
            (hook(n - 2, &[], 2), ratio(ni - 5, ni - 1)),
            (hook(n - 3, &[3], 0), ratio((ni - 3) * (ni - 4), ni * (ni - 1))),
        ];
        for i in 1..=n - 4 {
            if n - 2 - i >= 2 {
                expected.push((hook(n - 2 - i, &[2], i), ratio(ni - 4 - 2 * i as i64, ni)));
            }
        }
        for (l, want) in expected {
            let got = r_mn(&l)?;
            ensure!(got == want, "r({l}) = {got}, closed form {want}");
            ensure!(transposition_normalized(&l).unwrap() == want, "row-sum r({l}) disagrees");
            shapes_checked += 1;
        }
    }
    Ok(format!(
        "orthogonality and degrees n<=12, SYT n<=8, n=12 table k=2..6 (k>=4 printed entries attach to swapped shapes in {swapped} cases), {shapes_checked} closed-form r values n<=40"
    ))
}

fn ac4_moments() -> Result<String, String> {
    let limits = Limits::default();
    let mut route_cases = 0;
    for n in 6..=8 {
        for k in 1..=2 {
            let mut engine = DirectEngine::<BigRational>::new(n, k, &limits).map_err(|e| e.to_string())?;
            for t in 0..=10 {
                let m = engine.measure();
                for r in 0..=tensor_route_max_r(n) {
                    let tensor = tensor_route_moment(n, k, t, r).map_err(|e| e.to_string())?;
                    let direct = fixed_point_moment(&m, r as u32);
                    ensure!(tensor == direct, "n={n} k={k} t={t} r={r}: {tensor} vs {direct}");
                    route_cases += 1;
                }
                engine.step();
            }
        }
    }
    let mut coset_cases = 0;
    let mut literal_bell = 0;
    for n in 3..=8 {
        let sign_shape = Partition::column(n);
        for parity in [Parity::Even, Parity::Odd] {
            let u = coset_measure::<BigRational>(n, parity);
            let s = BigInt::from(parity.sign().unwrap());
            for r in 1..=6usize {
                let lhs = fixed_point_moment(&u, r as u32);
                let a_sign = if r <= tensor_coeff_max_r(&sign_shape) {
                    tensor_coeff(&sign_shape, r).map_err(|e| e.to_string())?
                } else {
                    tensor_multiplicity_bruteforce(&sign_shape, r as u32, &limits).map_err(|e| e.to_string())?
                };
                let a_sign = BigInt::from(a_sign);
                let a_triv = BigInt::from(truncated_bell(r, n));
                ensure!(
                    lhs == BigRational::from_integer(&a_triv + &s * &a_sign),
                    "coset identity fails at n={n} r={r} s={s}"
                );
                if r < n {
                    let b = BigInt::from(bell(r));
                    ensure!(lhs == BigRational::from_integer(&b + &s * &a_sign), "Bell form fails at n={n} r={r}");
                    literal_bell += 1;
                }
                coset_cases += 1;
            }
        }
    }
    Ok(format!(
        "{route_cases} tensor-route moments exact; coset identity exact in {coset_cases} cases ({literal_bell} with r < n in the literal Bell form, truncated Bell beyond)"
    ))
}

fn sim(n: usize, k: usize, c: f64) -> Result<cyclewalk::walk::SimulationResult, String> {
    let spec = WalkSpec::from_c(n, k, c).map_err(|e| e.to_string())?;
    let opts = SimOptions {
        samples: 1_000_000,
        shards: 8,
        seed: DEFAULT_SEED,
        track_classes: false,
    };
    simulate(&spec, &opts).map_err(|e| e.to_string())
}

fn ac5_k1_distribution() -> Result<String, String> {
    let c = 0.5;
    let res = sim(400, 1, c)?;
    let (m1, se1) = res.moment(1);
    ensure!((m1 - 1.0).abs() <= 3.0 * se1, "E[chi] = {m1} (se {se1})");
    let target2 = moment_k1(2, c).unwrap();
    let (m2, se2) = res.moment(2);
    ensure!((m2 - target2).abs() <= 3.0 * se2, "E[chi^2] = {m2} vs {target2} (se {se2})");
    let x = (-2.0 * c).exp();
    let closed = (x - 1.0).exp() * (1.0 - x);
    let (p0, se0) = res.fixed_point_probability(0);
    ensure!((p0 - closed).abs() <= (3.0 * se0).max(0.01), "P(fp=0) = {p0} vs {closed} (se {se0})");
    Ok(format!(
        "E[chi]={m1:.5}+-{se1:.5}, E[chi^2]={m2:.5} vs {target2:.5}+-{se2:.5}, P(fp=0)={p0:.5} vs {closed:.5}"
    ))
}

fn ac6_k2_third_moment() -> Result<String, String> {
    let c: f64 = 0.5;
    let res = sim(400, 2, c)?;
    ensure!(res.spec.t == 339, "t = {} (expected 339)", res.spec.t);
    let x = (-2.0 * c).exp();
    let target = 5.0 + 5.0 * x - 1.5 * x * x - 0.125 * x * x * x;
    let (m3, se3) = res.moment(3);
    ensure!((m3 - target).abs() <= 3.0 * se3, "E[chi^3] = {m3} vs {target} (se {se3})");
    Ok(format!("t=339, E[chi^3]={m3:.5} vs {target:.5}, se {se3:.5}"))
}

fn ac7_upper_envelope() -> Result<String, String> {
    let n = 2000;
    let mut worst: f64 = 0.0;
    let mut cases = Vec::new();
    for k in 2..=4 {
        for c in [0.25, 0.5, 1.0] {
            cases.push((k, c));
        }
    }
    cases.push((1, 0.5));
    cases.push((1, 1.0));
    for (k, c) in cases {
        let b = ds_upper_bound(n, k, steps_for_c(n, k, c), &Limits::default()).map_err(|e| e.to_string())?;
        let (_, hi) = theorem_envelopes(k, c).unwrap();
        let ratio = b.value / hi;
        ensure!(ratio <= 1.05, "k={k} c={c}: bound {} vs envelope {hi} (ratio {ratio:.4})", b.value);
        worst = worst.max(ratio);
    }
    Ok(format!("11 cases at n=2000, largest bound/envelope ratio {worst:.4}"))
}

fn ac8_bound_dominance() -> Result<String, String> {
    let limits = Limits::default();
    let n = 8;
    let mut min_slack = f64::INFINITY;
    for k in 1..=3 {
        let mut engine = DirectEngine::<BigRational>::new(n, k, &limits).map_err(|e| e.to_string())?;
        for t in 0..=30 {
            let u = stationary_measure::<BigRational>(n, t + 1, k).map_err(|e| e.to_string())?;
            let d = tv(&engine.measure(), &u).map_err(|e| e.to_string())?.as_f64();
            let b = ds_upper_bound(n, k, t, &limits).map_err(|e| e.to_string())?.value;
            ensure!(d <= b + 1e-9, "k={k} t={t}: tv {d} > bound {b}");
            min_slack = min_slack.min(b - d);
            engine.step();
        }
    }
    Ok(format!("93 cases, smallest slack {min_slack:.3e}"))
}

fn ac9_lemmas() -> Result<String, String> {
    let mut count = [0usize; 6];
    for n in 2..=12 {
        for l in enumerate_partitions(n) {
            let r = transposition_normalized(&l).unwrap();
            ensure!(r_upper_bound(&l).unwrap() >= r, "upper bound on r fails at ({l})");
            count[0] += 1;
        }
    }
    for n in 2..=10 {
        let parts = enumerate_partitions(n);
        let rs: Vec<BigRational> = parts.iter().map(|l| transposition_normalized(l).unwrap()).collect();
        for (i, a) in parts.iter().enumerate() {
            for (j, b) in parts.iter().enumerate() {
                if dominance(a, b).unwrap() == Dominance::Dominates {
                    ensure!(rs[i] >= rs[j], "dominance monotonicity fails for ({a}) over ({b})");
                    count[1] += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let tables: Vec<Vec<Partition>> = (0..=30).map(enumerate_partitions).collect();
    while count[2] < 1000 {
        let n = rng.random_range(2..=30);
        let l = &tables[n][rng.random_range(0..tables[n].len())];
        let k = rng.random_range(1..=l.len());
        let row_l = rng.random_range(k + 1..=l.len() + 1);
        let Ok(moved) = rim_move(l, k, row_l) else { continue };
        let ni = n as i64;
        let closed = ratio(
            2 * (l.part(k - 1) as i64 - l.part(row_l - 1) as i64 + (row_l - k) as i64 - 1),
            ni * (ni - 1),
        );
        let direct = transposition_normalized(l).unwrap() - transposition_normalized(&moved).unwrap();
        ensure!(closed == direct, "box move ({l}) rows {k}->{row_l}: {closed} vs {direct}");
        ensure!(rim_move_delta(l, k, row_l).unwrap() == closed, "library box-move delta at ({l})");
        count[2] += 1;
    }
    for n in 1..=12 {
        for first in 1..=n {
            let (lhs, rhs) = dim_sum_bound(n, first).unwrap();
            ensure!(lhs <= rhs, "dimension-sum bound fails at n={n} first row {first}");
            count[3] += 1;
        }
    }
    for n in 1..=14 {
        for l in enumerate_partitions(n) {
            for m in n / 2 + 1..=n {
                ensure!(rim_hook_removals(&l, m).len() <= 1, "two {m}-rim hooks in ({l})");
                count[4] += 1;
            }
        }
    }
    let report = stirling_identity_checks(12, &[-2.0, 0.3, 1.0, 1.7]);
    ensure!(report.passed, "identity checks: {report:?}");
    for n in 0..=12 {
        for x in [ratio(-2, 1), ratio(3, 10), ratio(1, 1), ratio(17, 10), ratio(0, 1)] {
            let (l, r) = integral_identity_exact(n, &x);
            ensure!(l == r, "integral identity not exact at n={n} x={x}");
        }
    }
    count[5] = report.power_sum_cases + report.integral_cases;
    Ok(format!(
        "r bound {} shapes, dominance {} pairs, box moves {}, dimension sums {}, unique rim hooks {} cases, identities {} cases (max err {:.1e})",
        count[0], count[1], count[2], count[3], count[4], count[5], report.integral_max_error
    ))
}

fn ac10_pmf_consistency() -> Result<String, String> {
    let mut worst_moment: f64 = 0.0;
    for c in [0.1, 0.5, 1.0, 2.0] {
        let pmf: Vec<f64> = (0..=60).map(|j| asymptotic_pmf_k1(j, c, None).unwrap().value).collect();
        let total: f64 = pmf.iter().sum();
        ensure!((total - 1.0).abs() <= 1e-10, "c={c}: pmf sums to {total}");
        for (j, q) in pmf.iter().enumerate().take(30) {
            let closed = asymptotic_pmf_k1_closed(j, c).unwrap();
            ensure!((q - closed).abs() <= 1e-12, "c={c} j={j}: series {q} vs closed {closed}");
        }
        for r in 1..=5 {
            let m: f64 = pmf.iter().enumerate().map(|(j, q)| (j as f64).powi(r as i32) * q).sum();
            let target = moment_k1(r, c).unwrap();
            let err = (m - target).abs();
            ensure!(err <= 1e-8, "c={c} r={r}: {m} vs {target}");
            worst_moment = worst_moment.max(err);
        }
    }
    let mut worst_lower: f64 = 0.0;
    for i in 1..=40 {
        let c = 0.05 * i as f64;
        let err = (theorem1_lower_from_pmf(c).unwrap() - theorem1_lower_closed(c).unwrap()).abs();
        ensure!(err <= 1e-12, "c={c}: lower bound from pmf off by {err:e}");
        worst_lower = worst_lower.max(err);
    }
    Ok(format!("moment error <= {worst_moment:.1e}, lower-bound error <= {worst_lower:.1e} on 40 values of c"))
}

fn ac11_determinism() -> Result<String, String> {
    let args = [
        "simulate", "--n", "400", "--k", "2", "--c", "0.5", "--samples", "200000", "--shards", "8", "--seed", "12345",
    ];
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_cyclewalk"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.success(), "simulate failed: {}", String::from_utf8_lossy(&out.stderr));
        Ok(out.stdout)
    };
    let a = run()?;
    let b = run()?;
    ensure!(a == b, "two runs differ");
    ensure!(!a.is_empty(), "empty output");
    Ok(format!("two runs byte-identical ({} bytes)", a.len()))
}

fn main() {
    let checks: [(&str, &str, Check, u64); 11] = [
        ("AC1", "engine equivalence", ac1_engine_equivalence, 120),
        ("AC2", "exact TV golden values", ac2_golden_tv, 1),
        ("AC3", "character engine", ac3_characters, 180),
        ("AC4", "moment machinery", ac4_moments, 120),
        ("AC5", "k=1 limiting distribution", ac5_k1_distribution, 300),
        ("AC6", "k=2 third moment", ac6_k2_third_moment, 300),
        ("AC7", "upper-bound envelope", ac7_upper_envelope, 120),
        ("AC8", "bound dominance", ac8_bound_dominance, 60),
        ("AC9", "lemma property suites", ac9_lemmas, 180),
        ("AC10", "limiting pmf self-consistency", ac10_pmf_consistency, 30),
        ("AC11", "simulation determinism", ac11_determinism, 60),
    ];
    let mut failed = 0;
    for (id, name, check, budget) in checks {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(budget) => {
                Err(format!("over the {budget} s budget; {detail}"))
            }
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {name} ({secs:.2} s of {budget} s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name} ({secs:.2} s of {budget} s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 11 criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}


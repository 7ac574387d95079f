//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every check compares the library against
//! an oracle computed independently in this file.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use corrset_core::rational::ratio;
use corrset_core::{
    build_schedule, correlation, cylinder_measure, empirical_measure, generic_stream, intersection_density,
    periodic_approximant, r3_set, read_prefix_file, transfer_experiment, Approximant, Cylinder, EmpiricalMode,
    FiniteMps, MarkovChain, Rational, RotationCoding, ShiftMeasure, ShiftSet, Word,
};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn word(s: &str) -> Word {
    s.parse().expect("word literal")
}

fn cyclic_system(m: usize, set: &[usize]) -> ShiftMeasure {
    let perm = (0..m).map(|x| (x + 1) % m).collect();
    ShiftMeasure::FiniteMps(FiniteMps::new(vec![ratio(1, m as u64); m], perm, set).unwrap())
}

/// The six measures every criterion is run against.
fn test_measures() -> Vec<(&'static str, ShiftMeasure)> {
    let markov = MarkovChain::new(
        vec![vec![ratio(2, 3), ratio(1, 3)], vec![ratio(1, 4), ratio(3, 4)]],
        vec![ratio(3, 7), ratio(4, 7)],
        vec![false, true],
    )
    .unwrap();
    vec![
        ("bernoulli(1/2)", ShiftMeasure::bernoulli(ratio(1, 2)).unwrap()),
        ("bernoulli(1/3)", ShiftMeasure::bernoulli(ratio(1, 3)).unwrap()),
        ("markov", ShiftMeasure::Markov(markov)),
        ("orbit 110", ShiftMeasure::periodic(word("110")).unwrap()),
        ("Z/6 {0,1,2}", cyclic_system(6, &[0, 1, 2])),
        (
            "mixture 01|0",
            ShiftMeasure::mixture(vec![
                (ratio(1, 2), ShiftMeasure::periodic(word("01")).unwrap()),
                (ratio(1, 2), ShiftMeasure::periodic(word("0")).unwrap()),
            ])
            .unwrap(),
        ),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- 1

fn random_system(rng: &mut ChaCha8Rng, m: usize) -> (Vec<Rational>, Vec<usize>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let mut cycle_of = vec![usize::MAX; m];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..m {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while cycle_of[x] == usize::MAX {
            cycle_of[x] = cycles.len();
            c.push(x);
            x = perm[x];
        }
        cycles.push(c);
    }
    let mass: Vec<u64> = cycles.iter().map(|_| rng.gen_range(1..=6)).collect();
    let total: u64 = mass.iter().sum();
    let weights = (0..m)
        .map(|x| {
            let c = cycle_of[x];
            ratio(mass[c], total * cycles[c].len() as u64)
        })
        .collect();
    let set = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
    (weights, perm, set)
}

fn criterion_exact_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let cylinders: Vec<Cylinder> = Cylinder::all_of_order(6).collect();
    let mut systems = 0;
    for m in 1..=12 {
        for _ in 0..8 {
            let (weights, perm, set) = random_system(&mut rng, m);
            let mps = FiniteMps::new(weights.clone(), perm.clone(), &set).map_err(|e| e.to_string())?;
            let nu = ShiftMeasure::FiniteMps(mps);
            let member: Vec<bool> = (0..m).map(|x| set.contains(&x)).collect();
            // orbit[x][n] = 1_A(π^n x)
            let orbit: Vec<Vec<bool>> = (0..m)
                .map(|x| {
                    let mut y = x;
                    (0..6)
                        .map(|_| {
                            let b = member[y];
                            y = perm[y];
                            b
                        })
                        .collect()
                })
                .collect();
            for c in &cylinders {
                let brute: Rational = (0..m)
                    .filter(|&x| c.constraints().iter().all(|&(n, b)| orbit[x][n] == b))
                    .map(|x| weights[x].clone())
                    .sum();
                let got = cylinder_measure(&nu, c).map_err(|e| e.to_string())?;
                ensure(got == brute, || format!("m={m} perm={perm:?} set={set:?} {c}: {got} vs {brute}"))?;
            }
            systems += 1;
        }
    }
    Ok(format!("{systems} systems x {} cylinders", cylinders.len()))
}

// ---------------------------------------------------------------- 2

fn criterion_axioms() -> Check {
    let mut measures = test_measures();
    let three_state = MarkovChain::new(
        vec![
            vec![ratio(1, 2), ratio(1, 2), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 3), ratio(2, 3)],
            vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)],
        ],
        vec![ratio(4, 9), ratio(3, 9), ratio(2, 9)],
        vec![true, false, true],
    )
    .map_err(|e| e.to_string())?;
    measures.push(("markov 3-state", ShiftMeasure::Markov(three_state)));
    let rot = RotationCoding::parse("sqrt(2)-1", ratio(0, 1), ratio(1, 2), 50).map_err(|e| e.to_string())?;
    measures.push(("rotation sqrt2-1", ShiftMeasure::Rotation(rot)));

    let tol = ratio(1, 1_000_000_000_000u64);
    let mut worst_rotation = Rational::zero();
    for (name, nu) in &measures {
        let exact = !matches!(nu, ShiftMeasure::Rotation(_));
        let mut check = |a: &Rational, b: &Rational, what: &str| -> Result<(), String> {
            let d = (a - b).abs();
            if !exact && d > worst_rotation {
                worst_rotation = d.clone();
            }
            let ok = if exact { d.is_zero() } else { d < tol };
            ensure(ok, || format!("{name}: {what}: {a} vs {b}"))
        };
        let eval = |c: &Cylinder| cylinder_measure(nu, c).map_err(|e| format!("{name}: {e}"));
        let one = ratio(1, 1);
        check(&eval(&Cylinder::full())?, &one, "full cylinder")?;
        let total: Rational = Cylinder::blocks_of_order(6).map(|c| eval(&c)).sum::<Result<Rational, String>>()?;
        check(&total, &one, "blocks of order 6")?;
        for c in Cylinder::all_of_order(6) {
            let v = eval(&c)?;
            check(&eval(&c.shifted(1))?, &v, &format!("shift of {c}"))?;
            for m in 0..=6 {
                if c.constraints().iter().any(|&(n, _)| n == m) {
                    continue;
                }
                let (Some(c0), Some(c1)) = (c.with(m, false), c.with(m, true)) else {
                    return Err(format!("{name}: cannot refine {c} at {m}"));
                };
                check(&(eval(&c0)? + eval(&c1)?), &v, &format!("refinement of {c} at {m}"))?;
            }
        }
    }
    Ok(format!(
        "{} measures, 3^6 cylinders, rotation max error {:e}",
        measures.len(),
        worst_rotation.to_f64().unwrap_or(f64::NAN)
    ))
}

// ---------------------------------------------------------------- 3 and 4

const ORDERS: [(usize, u64); 3] = [(2, 4), (3, 10), (4, 20)];

fn approximants() -> Result<Vec<(String, ShiftMeasure, Approximant)>, String> {
    let mut out = Vec::new();
    for (name, nu) in test_measures() {
        for &(k, den) in &ORDERS {
            let a = periodic_approximant(&nu, k, &ratio(1, den)).map_err(|e| format!("{name} k={k}: {e}"))?;
            out.push((format!("{name} k={k}"), nu.clone(), a));
        }
    }
    Ok(out)
}

fn criterion_certificates(all: &[(String, ShiftMeasure, Approximant)]) -> Check {
    let mut worst = 0.0f64;
    for (name, nu, a) in all {
        let bound = &a.epsilon * ratio(4, 5);
        let mut brute = Rational::zero();
        for c in Cylinder::all_of_order(a.k) {
            let d = (empirical_measure(&a.x, &c, EmpiricalMode::Cyclic).map_err(|e| e.to_string())?
                - cylinder_measure(nu, &c).map_err(|e| e.to_string())?)
            .abs();
            if d > brute {
                brute = d;
            }
        }
        ensure(brute < bound, || format!("{name}: recounted deviation {brute} ≥ {bound}"))?;
        ensure(a.certificate < bound, || format!("{name}: certificate {} ≥ {bound}", a.certificate))?;
        if a.certificate_exact {
            ensure(a.certificate == brute, || format!("{name}: certificate {} but recount {brute}", a.certificate))?;
        } else {
            ensure(a.certificate >= brute, || format!("{name}: certificate below recount"))?;
        }
        worst = worst.max((brute / &a.epsilon).to_f64().unwrap_or(f64::NAN));
    }
    Ok(format!("{} approximants, worst deviation {worst:.3}·eps", all.len()))
}

/// `y` agrees with `x^∞` on `[0, R)` and continues with an arbitrary suffix.
#[derive(Clone, Copy, Debug)]
enum Suffix {
    Zeros,
    Ones,
    Complement,
}

fn criterion_threshold(all: &[(String, ShiftMeasure, Approximant)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut samples = 0u64;
    let mut worst = 0.0f64;
    for (name, _, a) in all {
        let (k, p, x) = (a.k, a.period(), &a.x);
        let code_at = |bit: &dyn Fn(usize) -> bool, i: usize| (0..k).fold(0usize, |acc, m| acc | (bit(i + m) as usize) << m);
        let periodic = |i: usize| x.get(i % p);
        let residues: Vec<usize> = (0..p).map(|o| code_at(&periodic, o)).collect();
        let mut cyc = vec![0i128; 1 << k];
        for &c in &residues {
            cyc[c] += 1;
        }
        let cylinders: Vec<Vec<(usize, bool)>> =
            Cylinder::all_of_order(k).map(|c| c.constraints().to_vec()).collect();
        let matching: Vec<Vec<usize>> = cylinders
            .iter()
            .map(|cons| (0..1usize << k).filter(|&b| cons.iter().all(|&(m, v)| ((b >> m) & 1 == 1) == v)).collect())
            .collect();
        let en = a.epsilon.numer().to_i128().unwrap();
        let ed = a.epsilon.denom().to_i128().unwrap();
        let r0 = a.r0 as usize;
        ensure(r0 >= k, || format!("{name}: R0 = {r0} below k"))?;
        for _ in 0..100 {
            let r = rng.gen_range(r0..=3 * r0);
            for suffix in [Suffix::Zeros, Suffix::Ones, Suffix::Complement] {
                let y = |i: usize| {
                    if i < r {
                        x.get(i % p)
                    } else {
                        match suffix {
                            Suffix::Zeros => false,
                            Suffix::Ones => true,
                            Suffix::Complement => !x.get(i % p),
                        }
                    }
                };
                // windows [0, R−k] lie inside the periodic part
                let full = r - k + 1;
                let (q, rem) = (full / p, full % p);
                let mut cnt: Vec<i128> = cyc.iter().map(|&c| c * q as i128).collect();
                for &c in &residues[..rem] {
                    cnt[c] += 1;
                }
                for i in full..r {
                    cnt[code_at(&y, i)] += 1;
                }
                // |Σ_b (cnt_b·p − cyc_b·R)| / (R·p) < ε/5
                let diff: Vec<i128> = (0..1 << k).map(|b| cnt[b] * p as i128 - cyc[b] * r as i128).collect();
                let scale = r as i128 * p as i128;
                for (cons, blocks) in cylinders.iter().zip(&matching) {
                    let s: i128 = blocks.iter().map(|&b| diff[b]).sum();
                    ensure(5 * ed * s.abs() < en * scale, || {
                        format!("{name}: R={r} {suffix:?} cylinder {cons:?}: deviation {s}/{scale}")
                    })?;
                    worst = worst.max(s.abs() as f64 / scale as f64 * ed as f64 / en as f64);
                }
                samples += 1;
            }
        }
    }
    Ok(format!("{samples} (R, suffix) samples, worst deviation {worst:.3}·eps"))
}

// ---------------------------------------------------------------- 5

fn criterion_schedule() -> Check {
    const STAGES: usize = 20;
    let results: Vec<Result<String, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = test_measures()
            .into_iter()
            .map(|(name, nu)| {
                scope.spawn(move || -> Result<String, String> {
                    let sch = build_schedule(&nu, STAGES).map_err(|e| format!("{name}: {e}"))?;
                    sch.verify().map_err(|e| format!("{name}: {e}"))?;
                    let st = sch.stages();
                    ensure(st.len() == STAGES, || format!("{name}: {} stages", st.len()))?;
                    let mut s = 0u128;
                    for (i, stage) in st.iter().enumerate() {
                        let j = (i + 1) as u128;
                        let r_next = st.get(i + 1).map_or(sch.lookahead().r0, |n| n.r);
                        s += stage.l;
                        ensure(stage.s == s, || format!("{name}: S_{j} mismatch"))?;
                        ensure(stage.l >= stage.r, || format!("{name}: L_{j} < R_{j}"))?;
                        ensure(j * r_next < stage.l, || format!("{name}: R_{{j+1}}/L_{j} ≥ 1/{j}"))?;
                        ensure(j * stage.l > (j - 1) * stage.s, || format!("{name}: L_{j}/S_{j} ≤ 1 − 1/{j}"))?;
                        ensure(stage.k == i + 1 && stage.eps == ratio(1, j as u64), || {
                            format!("{name}: stage {j} has k={} eps={}", stage.k, stage.eps)
                        })?;
                        ensure(stage.approximant.certificate < &stage.eps * ratio(4, 5), || {
                            format!("{name}: stage {j} certificate")
                        })?;
                    }
                    Ok(format!("{name} S_20={:.2e}", s as f64))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("thread panicked".into()))).collect()
    });
    let mut notes = Vec::new();
    for r in results {
        notes.push(r?);
    }
    Ok(notes.join(", "))
}

// ---------------------------------------------------------------- 6

fn criterion_convergence() -> Check {
    const LAST: usize = 15;
    let tuples: Vec<Vec<usize>> = (1u32..1 << 6)
        .filter(|m| m.count_ones() <= 3)
        .map(|m| (0..6).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    ensure(tuples.len() == 41, || format!("{} tuples", tuples.len()))?;
    let results: Vec<Result<String, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = test_measures()
            .into_iter()
            .map(|(name, nu)| {
                let tuples = &tuples;
                scope.spawn(move || -> Result<String, String> {
                    let err = |e: corrset_core::Error| format!("{name}: {e}");
                    let mut stream = generic_stream(&nu).map_err(err)?;
                    stream.ensure_stages(LAST + 1).map_err(err)?;
                    let bounds: Vec<u128> = stream.schedule().stages().iter().map(|s| s.s).collect();
                    // materialized cross-check on the early boundaries
                    let small = bounds.iter().take_while(|&&s| s <= 2_000_000).count().min(LAST);
                    let prefix = stream.prefix((bounds[small - 1] + 5) as u64).map_err(err)?;
                    let exact: Vec<Rational> =
                        tuples.iter().map(|t| correlation(&nu, t)).collect::<Result<_, _>>().map_err(err)?;
                    let mut errs = vec![vec![0.0f64; LAST + 1]; tuples.len()];
                    let mut worst_ratio = 0.0f64;
                    for j in 1..=LAST {
                        let n = bounds[j - 1];
                        for (ti, t) in tuples.iter().enumerate() {
                            let emp = stream.intersection_density(t, n).map_err(err)?;
                            if j <= small {
                                let direct = intersection_density(&prefix, t, n as usize).map_err(err)?;
                                ensure(emp == direct, || format!("{name}: stream count differs at N=S_{j} {t:?}"))?;
                            }
                            let e = (&emp - &exact[ti]).abs();
                            let limit = ratio(10, j as u64);
                            ensure(e <= limit, || format!("{name}: N=S_{j} {t:?} error {e} > 10/{j}"))?;
                            let ef = e.to_f64().unwrap_or(f64::NAN);
                            errs[ti][j] = ef;
                            worst_ratio = worst_ratio.max(ef * j as f64 / 10.0);
                        }
                    }
                    let mut worst15 = 0.0f64;
                    for (ti, t) in tuples.iter().enumerate() {
                        let (e3, e15) = (errs[ti][3], errs[ti][LAST]);
                        ensure(e15 <= e3, || format!("{name}: {t:?} error {e15:.3e} at S_15 > {e3:.3e} at S_3"))?;
                        worst15 = worst15.max(e15);
                    }
                    Ok(format!("{name} max err@S15 {worst15:.1e} (S15={:.1e}, worst/bound {worst_ratio:.3})", bounds[LAST - 1] as f64))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("thread panicked".into()))).collect()
    });
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(n) => notes.push(n),
            Err(e) => failures.push(e),
        }
    }
    if failures.is_empty() {
        Ok(format!("41 tuples; {}", notes.join("; ")))
    } else {
        Err(failures.join("; "))
    }
}

// ---------------------------------------------------------------- 7

fn criterion_transfer() -> Check {
    let n = 100_000u128;
    let orbit = ShiftMeasure::periodic(word("01")).unwrap();
    let rep = transfer_experiment(&orbit, &ShiftSet::odds(), &ratio(1, 8), 99, n).map_err(|e| e.to_string())?;
    ensure(rep.measure_witness.is_none() && rep.set_witness.is_none(), || {
        format!("orbit 01 / odds: witnesses {:?} {:?}", rep.measure_witness, rep.set_witness)
    })?;
    let b = ShiftMeasure::bernoulli(ratio(1, 2)).unwrap();
    let rep2 = transfer_experiment(&b, &ShiftSet::Squares, &ratio(1, 8), 99, n).map_err(|e| e.to_string())?;
    ensure(rep2.measure_witness == Some(1) && rep2.set_witness == Some(1), || {
        format!("bernoulli / squares: witnesses {:?} {:?}", rep2.measure_witness, rep2.set_witness)
    })?;
    Ok(format!(
        "N={n}: odds none/none (max gap {:.1e}), squares 1/1 (max gap {:.1e})",
        rep.max_gap.to_f64().unwrap_or(f64::NAN),
        rep2.max_gap.to_f64().unwrap_or(f64::NAN)
    ))
}

// ---------------------------------------------------------------- 8

fn criterion_r3() -> Check {
    let b = ShiftMeasure::bernoulli(ratio(1, 2)).unwrap();
    let got = r3_set(&b, &ratio(1, 100), 10).map_err(|e| e.to_string())?;
    ensure(got == (1..=10).collect::<Vec<u64>>(), || format!("bernoulli: {got:?}"))?;
    let orbit = ShiftMeasure::periodic(word("01")).unwrap();
    let got = r3_set(&orbit, &ratio(1, 16), 8).map_err(|e| e.to_string())?;
    ensure(got == vec![2, 4, 6, 8], || format!("orbit 01: {got:?}"))?;
    let z3 = cyclic_system(3, &[0]);
    let got = r3_set(&z3, &ratio(1, 100), 9).map_err(|e| e.to_string())?;
    ensure(got == vec![3, 6, 9], || format!("Z/3: {got:?}"))?;
    Ok("three examples".into())
}

// ---------------------------------------------------------------- 9

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_corrset")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("corrset {args:?} failed: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn criterion_cli() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let measure = r#"{"type": "markov", "transition": [["2/3","1/3"],["1/4","3/4"]], "stationary": ["3/7","4/7"], "labels": [0,1]}"#;
    let syn = d.join("synthesize.json");
    fs::write(&syn, format!(r#"{{"command": "synthesize", "measure": {measure}, "stages": 5}}"#))
        .map_err(|e| e.to_string())?;
    let (a, b) = (d.join("a"), d.join("b"));
    for out in [&a, &b] {
        run_cli(&["synthesize", "--config", syn.to_str().unwrap(), "--out", out.to_str().unwrap()])?;
    }
    for f in ["prefix.bin", "manifest.json"] {
        ensure(read(&a.join(f))? == read(&b.join(f))?, || format!("{f} differs between runs"))?;
    }
    let prefix = read_prefix_file(&a.join("prefix.bin")).map_err(|e| e.to_string())?;
    let len = prefix.len() as u128;
    let grid = [1_000u128, 10_000, len / 2, len - 5];
    let shifts = [vec![0usize], vec![0, 1], vec![0, 2, 5], vec![1, 3]];
    let grid_json = serde_json::to_string(&grid).unwrap();
    let shifts_json = serde_json::to_string(&shifts).unwrap();
    let file_cfg = d.join("verify_file.json");
    let mem_cfg = d.join("verify_memory.json");
    fs::write(
        &file_cfg,
        format!(r#"{{"measure": {measure}, "N_grid": {grid_json}, "shifts": {shifts_json}, "prefix_path": "a/prefix.bin"}}"#),
    )
    .map_err(|e| e.to_string())?;
    fs::write(&mem_cfg, format!(r#"{{"measure": {measure}, "N_grid": {grid_json}, "shifts": {shifts_json}}}"#))
        .map_err(|e| e.to_string())?;
    let (vf, vm) = (d.join("vf"), d.join("vm"));
    run_cli(&["verify", "--config", file_cfg.to_str().unwrap(), "--out", vf.to_str().unwrap(), "--format", "json"])?;
    run_cli(&["verify", "--config", mem_cfg.to_str().unwrap(), "--out", vm.to_str().unwrap(), "--format", "json"])?;
    let from_file = read(&vf.join("report.json"))?;
    ensure(from_file == read(&vm.join("report.json"))?, || "verify from file differs from in-memory verify".into())?;

    // and both equal the library's stream
    let report: serde_json::Value = serde_json::from_slice(&from_file).map_err(|e| e.to_string())?;
    let rows = report.as_array().or_else(|| report["rows"].as_array()).ok_or("report has no rows")?;
    ensure(rows.len() == grid.len() * shifts.len(), || format!("{} report rows", rows.len()))?;
    let nu = ShiftMeasure::Markov(
        MarkovChain::new(
            vec![vec![ratio(2, 3), ratio(1, 3)], vec![ratio(1, 4), ratio(3, 4)]],
            vec![ratio(3, 7), ratio(4, 7)],
            vec![false, true],
        )
        .unwrap(),
    );
    let mut stream = generic_stream(&nu).map_err(|e| e.to_string())?;
    for row in rows {
        let n: u128 = row["N"].as_u64().map(u128::from).or_else(|| row["N"].as_str().and_then(|s| s.parse().ok())).ok_or("bad N")?;
        let t: Vec<usize> = serde_json::from_value(row["shifts"].clone()).map_err(|e| e.to_string())?;
        let want = stream.intersection_density(&t, n).map_err(|e| e.to_string())?;
        let direct = intersection_density(&prefix, &t, n as usize).map_err(|e| e.to_string())?;
        ensure(want == direct, || format!("stream and file disagree at N={n} {t:?}"))?;
        let got = row["empirical"].as_str().ok_or("empirical is not a string")?;
        ensure(got == corrset_core::rational::format_rational(&want), || {
            format!("N={n} {t:?}: report {got}, library {want}")
        })?;
    }
    Ok(format!("prefix of {len} bits, {} report rows", rows.len()))
}

// ----------------------------------------------------------------

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, title: &str, res: Check, took: Duration| {
        let secs = took.as_secs_f64();
        match res {
            Ok(note) => println!("PASS {id} {title} [{secs:.2}s] {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {title} [{secs:.2}s] {why}");
            }
        }
    };
    let timed = |f: &dyn Fn() -> Check| {
        let t = Instant::now();
        let r = f();
        (r, t.elapsed())
    };

    let (r, t) = timed(&criterion_exact_oracle);
    report(1, "finite systems match brute-force enumeration", r, t);
    let (r, t) = timed(&criterion_axioms);
    report(2, "measure axioms on order-6 cylinders", r, t);

    let t0 = Instant::now();
    let built = approximants();
    let build_time = t0.elapsed();
    match built {
        Ok(all) => {
            let (r, t) = timed(&|| criterion_certificates(&all));
            report(3, "approximant certificates below 4eps/5", r, t + build_time);
            let (r, t) = timed(&|| criterion_threshold(&all));
            report(4, "re-entry threshold with adversarial suffixes", r, t);
        }
        Err(e) => {
            report(3, "approximant certificates below 4eps/5", Err(e.clone()), build_time);
            report(4, "re-entry threshold with adversarial suffixes", Err(e), Duration::ZERO);
        }
    }

    let (r, t) = timed(&criterion_schedule);
    report(5, "schedule conditions over 20 stages", r, t);
    let (r, t) = timed(&criterion_convergence);
    report(6, "intersection densities at stage boundaries 1..15", r, t);
    let (r, t) = timed(&criterion_transfer);
    report(7, "transfer experiment witnesses", r, t);
    let (r, t) = timed(&criterion_r3);
    report(8, "triple-return sets", r, t);
    let (r, t) = timed(&criterion_cli);
    report(9, "CLI round trip is deterministic", r, t);

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

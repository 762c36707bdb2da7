use std::process::ExitCode;
use std::time::{Duration, Instant};

use nlbox_core::boxes::{self, equivalent, CorrBox};
use nlbox_core::crypto;
use nlbox_core::distcomp::{self, BoolFn, PartyBox};
use nlbox_core::games::{self, SolverConfig, XorGame};
use nlbox_core::lp::Feasibility;
use nlbox_core::multigen::{self, GenBox, TriBox};
use nlbox_core::polytope::{self, VertexSet};
use nlbox_core::rat::{int, rat};
use nlbox_core::sample;
use nlbox_core::wiring::{self, search};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let mut fails = Vec::new();
    if boxes::pr().chsh() != int(4) {
        fails.push("chsh(PR)".to_string());
    }
    if boxes::anti_pr().chsh() != int(4) {
        fails.push("chsh(antiPR)".to_string());
    }
    for e in [rat(1, 8), rat(1, 4), rat(1, 2), rat(3, 4)] {
        let c = boxes::correlated_nonlocal(&e).unwrap().chsh();
        if c != int(2) * (&e + int(1)) {
            fails.push(format!("P^C_{e}: {c}"));
        }
    }
    for k in 0..=8 {
        let e = rat(k, 8);
        let c = boxes::isotropic(&e).unwrap().chsh();
        if c != (int(8) * &e - int(4)).abs() {
            fails.push(format!("P_{e}: {c}"));
        }
    }
    outcome(fails.is_empty(), if fails.is_empty() { "all exact".into() } else { fails.join(", ") })
}

fn criterion_2() -> Outcome {
    let ns = polytope::ns_dimension();
    let tri = multigen::tri_dimension();
    let set = VertexSet::bipartite();
    let all: Vec<CorrBox> = set.local().iter().chain(set.nonlocal()).cloned().collect();
    let all_ns = all.iter().all(CorrBox::is_nonsignalling);
    let redundant = (0..all.len()).filter(|&i| set.is_redundant(i).is_feasible()).count();
    let within = |vs: &[CorrBox]| vs.iter().all(|v| equivalent(&vs[0], v).is_some());
    let cross = set
        .local()
        .iter()
        .any(|l| set.nonlocal().iter().any(|n| equivalent(l, n).is_some()));
    let ok = ns == 8
        && tri == 26
        && all.len() == 24
        && all_ns
        && redundant == 0
        && within(set.local())
        && within(set.nonlocal())
        && !cross;
    outcome(
        ok,
        format!(
            "ns_dim={ns} tri_dim={tri} vertices={} redundant={redundant} cross_equivalent={cross}",
            all.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let two = int(2);
    let (mut local, mut disagreements) = (0, 0);
    for _ in 0..1000 {
        let b = sample::random_box(&mut rng);
        let lp = polytope::local_membership(&b).unwrap().is_feasible();
        if lp {
            local += 1;
        }
        if lp != (b.chsh() <= two) {
            disagreements += 1;
        }
    }
    outcome(disagreements == 0, format!("boxes=1000 local={local} disagreements={disagreements}"))
}

fn criterion_4() -> Outcome {
    let pr_rejected = !polytope::quantum_arcsin_test(&boxes::pr(), 1e-9).unwrap().pass;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let t = polytope::arcsin_test_correlators([s, s, s, -s], 1e-9);
    let gap = t.arcsin_sums.iter().map(|v| (v.abs() - std::f64::consts::PI).abs()).fold(f64::INFINITY, f64::min);
    let tsirelson_ok = t.pass && gap <= 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut samples: Vec<CorrBox> = (0..1000).map(|_| sample::random_box(&mut rng)).collect();
    samples.extend((0..=64).map(|k| boxes::isotropic(&rat(k, 64)).unwrap()));
    samples.extend((0..=64).map(|k| boxes::correlated_nonlocal(&rat(k, 64)).unwrap()));
    let mut passing = 0;
    let violations = samples
        .iter()
        .filter(|b| {
            let pass = polytope::quantum_arcsin_test(b, 1e-9).unwrap().pass;
            passing += usize::from(pass);
            pass && !polytope::tsirelson_test(b)
        })
        .count();
    outcome(
        pr_rejected && tsirelson_ok && violations == 0,
        format!(
            "pr_rejected={pr_rejected} tsirelson_gap={gap:.2e} sampled={} arcsin_pass={passing} violations={violations}",
            samples.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut fails = Vec::new();
    for n in 1..=5 {
        let w = wiring::fww(n);
        for e in [rat(1, 8), rat(1, 4), rat(1, 2)] {
            let b = boxes::correlated_nonlocal(&e).unwrap();
            let out = wiring::compose(&w, &vec![b; n]).unwrap().chsh();
            if out != wiring::fww_formula(&e, n) {
                fails.push(format!("fww n={n} eps={e}"));
            }
        }
    }
    let bs = wiring::bs2();
    for e in [rat(1, 8), rat(1, 4), rat(1, 2), rat(3, 4)] {
        let b = boxes::correlated_nonlocal(&e).unwrap();
        let out = wiring::compose(&bs, &[b.clone(), b]).unwrap();
        if out.chsh() != wiring::bs_formula(&e) {
            fails.push(format!("bs eps={e}"));
        }
        if wiring::correlated_parameter(&out).is_none() {
            fails.push(format!("bs closure eps={e}"));
        }
    }
    let steps = wiring::iterate_bs(&rat(1, 10), 12).unwrap();
    let bcc2 = distcomp::bcc_squared();
    let crossed = steps.iter().position(|s| &s.chsh * &s.chsh > bcc2);
    if crossed.is_none() {
        fails.push("bs iteration never crossed B_cc".into());
    }
    if distcomp::bcc_constant().squared != bcc2 {
        fails.push("B_cc^2 != 32/3".into());
    }
    let detail = match (&crossed, fails.is_empty()) {
        (Some(i), true) => format!("fww 15/15, bs 4/4, closure 4/4, B_cc crossed at step {i}"),
        _ => fails.join(", "),
    };
    outcome(fails.is_empty(), detail)
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for e in [rat(5, 8), rat(3, 4), rat(7, 8)] {
        let b = boxes::isotropic(&e).unwrap();
        let best = search::max_chsh_over_wirings(&b).unwrap().chsh;
        let expected = b.chsh();
        ok &= best == expected;
        parts.push(format!("P_{e}: max={best} chsh={expected}"));
    }
    let c = boxes::correlated_nonlocal(&rat(1, 4)).unwrap();
    let best = search::max_chsh_over_wirings(&c).unwrap().chsh;
    ok &= best > rat(5, 2);
    parts.push(format!("P^C_1/4: max={best} (> 5/2)"));
    outcome(ok, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let cfg = SolverConfig { seed: 7, ..SolverConfig::default() };
    let chsh = XorGame::chsh();
    let wc = games::classical_value(&chsh.to_game()).unwrap();
    let wq = games::xor_quantum_value(&chsh, &cfg).unwrap();
    let target = (2.0 + std::f64::consts::SQRT_2) / 4.0;
    let ratio = games::grothendieck_ratio_with(&chsh, wq).unwrap();
    let mut ok = wc == rat(3, 4) && (wq - target).abs() <= 1e-6 && (ratio - std::f64::consts::SQRT_2).abs() <= 1e-5;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut max_ratio, mut thm8_fail, mut degenerate) = (0.0f64, 0, 0);
    for _ in 0..200 {
        let g = games::random_xor_game(&mut rng, 4);
        let q = games::xor_quantum_value(&g, &cfg).unwrap();
        if !games::thm8_check_with(&g, q).unwrap().holds {
            thm8_fail += 1;
        }
        match games::grothendieck_ratio_with(&g, q) {
            Ok(r) => max_ratio = max_ratio.max(r),
            Err(_) => degenerate += 1,
        }
    }
    ok &= max_ratio <= 1.7823 && thm8_fail == 0;

    let and = games::nlc_game(&[false, false, false, true]).unwrap();
    let nc = games::classical_value(&and.to_game()).unwrap();
    let nq = games::xor_quantum_value(&and, &cfg).unwrap();
    let nlc_ok = (nlbox_core::rat::to_f64(&nc) - nq).abs() <= 1e-5 && nc < int(1);
    ok &= nlc_ok;
    outcome(
        ok,
        format!(
            "omega_C={wc} omega_Q={wq:.9} ratio={ratio:.7}; random: max_ratio={max_ratio:.5} thm8_failures={thm8_fail} degenerate={degenerate}; NLC(AND): omega_C={nc} omega_Q={nq:.7}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut bad_22 = 0;
    for t in 0u32..65536 {
        let f = BoolFn::from_fn(vec![2, 2], |i| t >> i & 1 == 1).unwrap();
        if !distcomp::van_dam_check_all(&f).unwrap() {
            bad_22 += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad_33 = 0;
    for _ in 0..200 {
        let bits: u64 = rng.gen();
        let f = BoolFn::bipartite_from_bits(3, &[bits]).unwrap();
        if !distcomp::van_dam_check_all(&f).unwrap() {
            bad_33 += 1;
        }
    }
    outcome(
        bad_22 == 0 && bad_33 == 0,
        format!("(2,2): 65536 functions, failures={bad_22}; (3,3): 200 functions, failures={bad_33}"),
    )
}

fn criterion_9() -> Outcome {
    let f1 = BoolFn::from_fn(vec![1, 1, 1], |i| i == 7).unwrap();
    let f2 = BoolFn::from_fn(vec![1, 1, 1], |i| (i & 1 == 1) ^ (i >> 1 == 3)).unwrap();
    let r: Vec<bool> = [f1, f2]
        .iter()
        .map(|f| distcomp::bp_simulate(f).unwrap() == PartyBox::parity_target(f))
        .collect();
    outcome(r.iter().all(|&b| b), format!("x1x2x3={} x1+x2x3={}", r[0], r[1]))
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    let mut correct = true;
    for x0 in 0..2 {
        for x1 in 0..2 {
            for c in 0..2 {
                correct &= crypto::ot_correctness(x0, x1, c) == int(1);
            }
        }
    }
    let privacy = crypto::ot_privacy_report();
    let red = crypto::ot_reduction_attack();
    ok &= correct && privacy.sender_leak == int(0) && privacy.receiver_leak == int(0) && red.cheating == int(1);
    let mut honest = true;
    let mut lines = Vec::new();
    for n in 1..=2 {
        for k in 1..=2 {
            for c in 0..2 {
                honest &= crypto::bc_honest_accept_probability(c, n, k).unwrap() == int(1);
            }
            let h = crypto::bc_hiding_advantage(n, k).unwrap();
            let href = crypto::hiding_reference(n, k);
            ok &= h <= href;
            lines.push(format!("hiding({n},{k})={h}<={href}"));
        }
    }
    ok &= honest;
    let mut binding = Vec::new();
    for n in 1..=2 {
        let b1 = crypto::bc_binding_advantage(n, 1).unwrap();
        let b2 = crypto::bc_binding_advantage(n, 2).unwrap();
        ok &= b2 <= b1;
        binding.push(format!("binding(n={n})=[{b1},{b2}]"));
    }
    outcome(
        ok,
        format!(
            "ot_correct={correct} leaks={}/{} reduction={} bc_honest={honest}; {}; {}",
            privacy.sender_leak,
            privacy.receiver_leak,
            red.cheating,
            lines.join(" "),
            binding.join(" ")
        ),
    )
}

fn criterion_11() -> Outcome {
    let v2 = multigen::d_output_vertex(2, 2, 2).unwrap();
    let v3 = multigen::d_output_vertex(3, 3, 3).unwrap();
    let pr_ok = v2 == GenBox::from_corr(&boxes::pr());
    let c = multigen::compose_coprime(&v2, &v3).unwrap();
    let round = c == multigen::d_output_vertex(6, 6, 6).unwrap()
        && multigen::project_mod(&c, 2).unwrap() == v2
        && multigen::project_mod(&c, 3).unwrap() == v3;
    let parity = TriBox::parity_xyz();
    let parity_ok = multigen::tri_nonsignalling(&parity).holds() && multigen::tri_two_way_local(&parity).is_none();
    let prc = TriBox::pr_and_fixed();
    let prc_ok = multigen::tri_two_way_local(&prc).is_some()
        && matches!(multigen::tri_local_membership(&prc), Feasibility::Infeasible(_));
    outcome(
        pr_ok && round && parity_ok && prc_ok,
        format!("k2_is_pr={pr_ok} crt_roundtrip={round} parity_xyz={parity_ok} pr_tensor_det={prc_ok}"),
    )
}

type Criterion = (u32, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(30)),
        (3, criterion_3, Duration::from_secs(300)),
        (4, criterion_4, Duration::from_secs(60)),
        (5, criterion_5, Duration::from_secs(60)),
        (6, criterion_6, Duration::from_secs(1800)),
        (7, criterion_7, Duration::from_secs(600)),
        (8, criterion_8, Duration::from_secs(600)),
        (9, criterion_9, Duration::from_secs(60)),
        (10, criterion_10, Duration::from_secs(1200)),
        (11, criterion_11, Duration::from_secs(120)),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, run, budget) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let ok = o.ok && elapsed <= budget;
        failed += usize::from(!ok);
        println!(
            "criterion {id:>2}: {} [{:.2}s / {}s] {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}

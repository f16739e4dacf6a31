//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Runs without the libtest harness so the lines always print.

mod common;

use std::process::ExitCode;

use puresplit::filtration::{
    analyze, minimal_integral_multiple, north_fork_degrees, predict_quotient_betti,
    AnalysisOptions, Verdict,
};
use puresplit::fixtures::{self, parse};
use puresplit::monotonicity::sweep_verify;
use puresplit::rational::{frac, int};
use puresplit::semigroup::{
    diagram_to_triplet, enumerate_members, generators, is_admissible, is_admissible_closed_form,
    is_in_bmod, triplet_to_diagram, MembershipResult, Triplet,
};
use puresplit::sparse::{literal_p3_diagram, obstruction_profile, sparse_ray};
use puresplit::{
    bs_decompose, bs_decompose_in, smallest_integral_point, BettiDiagram, Degree, DegreeSequence,
    Units,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn seq(s: &str) -> DegreeSequence {
    s.parse().unwrap()
}

fn values(d: &BettiDiagram) -> Vec<String> {
    d.entries().map(|(_, v)| v.to_string()).collect()
}

fn pure_table() -> Outcome {
    let cases = [
        ("(0,1,2,5)", ["6", "15", "10", "1"]),
        ("(0,2,3,5)", ["1", "5", "5", "1"]),
        ("(0,3,4,5)", ["1", "10", "15", "6"]),
        ("(0,1,2,4)", ["3", "8", "6", "1"]),
    ];
    for (d, want) in cases {
        let got = values(&smallest_integral_point(&seq(d)).map_err(|e| e.to_string())?);
        ensure!(got == want, "pi~{d} = {got:?}, expected {want:?}");
    }
    Ok(())
}

fn decomposition() -> Outcome {
    let chain = bs_decompose(&parse(fixtures::THREE_STEP)).map_err(|e| e.to_string())?;
    let want = [
        (frac(1, 5), "(0,1,2,5)"),
        (frac(3, 5), "(0,2,3,5)"),
        (frac(1, 5), "(0,3,4,5)"),
    ];
    ensure!(
        chain.len() == 3,
        "three-step diagram gave {} steps",
        chain.len()
    );
    for (s, (c, d)) in chain.steps.iter().zip(&want) {
        ensure!(
            s.coefficient == *c && s.sequence == seq(d),
            "step {} * {}",
            s.coefficient,
            s.sequence
        );
    }

    let chain = bs_decompose(&parse(fixtures::BRANCHING)).map_err(|e| e.to_string())?;
    let want = [
        (1, "(0,2,3,4,5,8)"),
        (2, "(0,2,3,5,6,8)"),
        (1, "(0,3,4,5,6,8)"),
        (1, "(0,3,4,6,7,8)"),
    ];
    ensure!(
        chain.len() == 4,
        "branching diagram gave {} steps",
        chain.len()
    );
    for (s, (c, d)) in chain.steps.iter().zip(&want) {
        ensure!(
            s.coefficient == int(*c) && s.sequence == seq(d),
            "step {} * {}",
            s.coefficient,
            s.sequence
        );
    }
    Ok(())
}

fn obstruction() -> Outcome {
    let opts = AnalysisOptions::default();
    let d = parse(fixtures::THREE_STEP);
    let report = analyze(&d, opts).map_err(|e| e.to_string())?;
    match &report.verdict {
        Verdict::ObstructionFound { step: 0, witness } => {
            let got = values(witness);
            ensure!(got == ["6/5", "3", "2", "1/5"], "witness {got:?}");
            ensure!(witness.get(3, 5) == frac(1, 5), "witness misplaced");
        }
        other => return Err(format!("three-step verdict {other:?}")),
    }
    let m = minimal_integral_multiple(&d, opts).map_err(|e| e.to_string())?;
    ensure!(m == 5.into(), "minimal multiple {m}");

    let v = analyze(&parse(fixtures::THREE_STEP_TIMES_FIVE), opts)
        .map_err(|e| e.to_string())?
        .verdict;
    ensure!(v == Verdict::CleanFiltrationCertified, "5D verdict {v:?}");
    let v = analyze(&parse(fixtures::SPLIT_SUM), opts)
        .map_err(|e| e.to_string())?
        .verdict;
    ensure!(v == Verdict::DirectSumCertified, "split-sum verdict {v:?}");
    Ok(())
}

fn north_fork() -> Outcome {
    let five_d = parse(fixtures::THREE_STEP_TIMES_FIVE);
    let f = north_fork_degrees(&five_d).map_err(|e| e.to_string())?;
    let want: Vec<Degree> = [1, 2, 3, 5].map(Degree::Finite).to_vec();
    ensure!(f == want, "cutoffs {f:?}");
    let q =
        predict_quotient_betti(&five_d, AnalysisOptions::default()).map_err(|e| e.to_string())?;
    let mut want = smallest_integral_point(&seq("(0,1,2,5)")).unwrap();
    want.set(0, 0, want.get(0, 0) + int(4));
    ensure!(q == want, "quotient\n{q}");
    ensure!(
        q == parse(fixtures::THREE_STEP_TIMES_FIVE_QUOTIENT),
        "quotient text"
    );
    Ok(())
}

fn monotonicity_sweep() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        let report = sweep_verify(8, n, None);
        ensure!(report.passed(), "{report}");
        total += report.pairs_checked;
    }
    ensure!(total > 0, "no pairs checked");
    println!("    {total} pairs checked, no counterexamples");
    Ok(())
}

/// The displayed generator matrices, paired with their triplets.
const GENERATOR_MATRICES: [((u32, u32, u32), &str); 10] = [
    ((6, 0, 0), "3 8 6 -\n- - - 1\n"),
    ((0, 0, 6), "1 - - -\n- 6 8 3\n"),
    ((1, 2, 1), "1 2 1 -\n- 1 2 1\n"),
    ((0, 3, 3), "1 1 - -\n- 3 5 2\n"),
    ((3, 3, 0), "2 5 3 -\n- - 1 1\n"),
    ((1, 8, 1), "2 4 1 -\n- 1 4 2\n"),
    ((3, 9, 0), "2 7 3 -\n- - 3 2\n"),
    ((0, 9, 3), "2 3 - -\n- 3 7 3\n"),
    ((0, 12, 0), "2 4 - -\n- - 4 2\n"),
    ((0, 18, 0), "3 6 - -\n- - 6 3\n"),
];

fn semigroup() -> Outcome {
    // every sub-check runs; failures are collected
    let mut failures = Vec::new();
    let gens = generators();
    if gens.len() != 10 {
        failures.push(format!("{} generators", gens.len()));
    }
    for ((r, s, t), want) in GENERATOR_MATRICES {
        let g = Triplet::new(r, s, t);
        match gens.iter().find(|(h, _)| *h == g) {
            None => failures.push(format!("{g} is not a generator")),
            Some((_, d)) => {
                let got = d.to_text().map_err(|e| e.to_string())?;
                if got != want {
                    failures.push(format!("generator {g} is {got:?}, displayed {want:?}"));
                }
            }
        }
    }

    for (r, s, t) in [(0, 6, 0), (5, 1, 2), (4, 2, 4), (5, 4, 5)] {
        match is_in_bmod(Triplet::new(r, s, t)) {
            Ok(res) if !res.is_member() => {}
            other => failures.push(format!("({r},{s},{t}) not rejected: {other:?}")),
        }
    }
    for (r, s, t) in [(6, 0, 0), (1, 2, 1), (2, 4, 2)] {
        let q = Triplet::new(r, s, t);
        match is_in_bmod(q) {
            Ok(MembershipResult::Member { decomposition }) => {
                let sum = decomposition
                    .iter()
                    .fold(Triplet::new(0, 0, 0), |a, g| a + *g);
                if sum != q {
                    failures.push(format!("{q} decomposes to {sum}"));
                }
            }
            other => failures.push(format!("{q} not accepted: {other:?}")),
        }
    }

    let report = enumerate_members(30);
    if report.agrees() {
        println!(
            "    {} admissible triplets up to sum 30, classifier and search agree",
            report.triplets.len()
        );
    } else {
        failures.push(report.to_string());
    }

    let mut congruence_ok = true;
    for r in 0..=60 {
        for s in 0..=60 - r {
            for t in 0..=60 - r - s {
                let q = Triplet::new(r, s, t);
                if congruence_ok && is_admissible(q) != is_admissible_closed_form(q) {
                    failures.push(format!("congruences disagree with integrality at {q}"));
                    congruence_ok = false;
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn sparse_rays() -> Outcome {
    let c5 = sparse_ray(5).map_err(|e| e.to_string())?;
    ensure!(c5.alpha == Some(3), "alpha(5) = {:?}", c5.alpha);
    ensure!(
        c5.obstruction_multiple == 5,
        "multiple(5) = {}",
        c5.obstruction_multiple
    );
    ensure!(
        c5.diagram == parse(fixtures::THREE_STEP),
        "p=5 diagram\n{}",
        c5.diagram
    );

    let c2 = sparse_ray(2).map_err(|e| e.to_string())?;
    ensure!(
        c2.diagram.is_integral() && c2.obstruction_multiple == 2,
        "p=2: {c2}"
    );

    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
        let c = sparse_ray(p).map_err(|e| e.to_string())?;
        let profile = obstruction_profile(&c.diagram, p).map_err(|e| e.to_string())?;
        let (below, at_p) = profile.split_at(p as usize - 1);
        ensure!(
            below.iter().all(|&b| b),
            "p={p}: some c < p has no obstruction"
        );
        ensure!(!at_p[0], "p={p}: c = p still obstructed");
        let first = analyze(
            &c.diagram.scaled(&int(p as i64)),
            AnalysisOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            first.first_step_integral,
            "p={p}: first step of pD non-integral"
        );
    }

    let literal = literal_p3_diagram();
    ensure!(
        literal.get(0, 0) == frac(8, 3),
        "literal p=3 beta00 = {}",
        literal.get(0, 0)
    );
    let c3 = sparse_ray(3).map_err(|e| e.to_string())?;
    ensure!(
        c3.literal_failure
            .as_deref()
            .is_some_and(|n| n.contains("8/3")),
        "p=3 failure not reported"
    );
    ensure!(
        c3.diagram.is_integral() && c3.obstruction_multiple == 3,
        "p=3 repair: {c3}"
    );
    println!("    p=3 repaired to:\n{}", indent(&c3.diagram.to_string()));
    Ok(())
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| format!("      {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..1000 {
        let (n, chain) = common::random_chain(&mut rng, 5, 10, 4);
        let d = common::diagram_of(n, &chain);
        let got = bs_decompose_in(&d, Units::Pi).map_err(|e| format!("member {k}: {e}"))?;
        ensure!(got == chain, "member {k}: decomposition differs\n{d}");
        ensure!(
            got.reconstruct(n) == d,
            "member {k}: reconstruction differs"
        );
        let again = bs_decompose_in(&got.reconstruct(n), Units::Pi).map_err(|e| e.to_string())?;
        ensure!(again == got, "member {k}: re-decomposition differs");

        let text = d.to_text().map_err(|e| e.to_string())?;
        let back = BettiDiagram::parse_text(&text, Some(n)).map_err(|e| e.to_string())?;
        ensure!(
            back == d && back.to_text().unwrap() == text,
            "member {k}: text round trip"
        );
        let json = BettiDiagram::parse_json(&d.to_json()).map_err(|e| e.to_string())?;
        ensure!(json == d, "member {k}: json round trip");
    }

    for r in 0..=30 {
        for s in 0..=30 - r {
            for t in 0..=30 - r - s {
                let q = Triplet::new(r, s, t);
                if is_admissible(q) {
                    let back =
                        diagram_to_triplet(&triplet_to_diagram(q)).map_err(|e| e.to_string())?;
                    ensure!(back == q, "triplet round trip {q} -> {back}");
                }
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("pure-diagram table", pure_table),
        ("decomposition", decomposition),
        ("obstruction", obstruction),
        ("north fork and quotient", north_fork),
        ("monotonicity sweep", monotonicity_sweep),
        ("semigroup", semigroup),
        ("sparse rays", sparse_rays),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

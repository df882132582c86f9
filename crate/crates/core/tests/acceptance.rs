//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every comparison is exact integer or
//! set equality (tolerance 0).

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rr_core::oracle::{self, OracleInstance};
use rr_core::qh;
use rr_core::rr::{self, Filtration};
use rr_core::{NormalizedIdeal, NumericalSemigroup};

const CORPUS_SEED: u64 = 20_240_611;
const CORPUS_SIZE: usize = 240;
const ORACLE_SEED: u64 = 1;
const ORACLE_COUNT: usize = 100;

struct Outcome {
    failures: Vec<String>,
    facts: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            facts: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.facts.push(what);
        } else {
            self.failures.push(what);
        }
    }
}

fn semigroup(gens: &[i64]) -> Arc<NumericalSemigroup> {
    Arc::new(NumericalSemigroup::new(gens).expect("valid semigroup"))
}

fn ideal(s: &Arc<NumericalSemigroup>, gens: &[i64]) -> NormalizedIdeal {
    NormalizedIdeal::from_generators(s, gens).expect("valid ideal")
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Case {
    instance: OracleInstance,
    semigroup: Arc<NumericalSemigroup>,
    ideal: NormalizedIdeal,
    module: NormalizedIdeal,
}

fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let instance = oracle::random_instance(&mut rng);
            let s = semigroup(&instance.semigroup);
            let i = ideal(&s, &instance.ideal);
            let m = instance.module.build(&s).expect("valid module");
            Case {
                instance,
                semigroup: s,
                ideal: i,
                module: m,
            }
        })
        .collect()
}

fn hilbert_functions() -> Outcome {
    let mut out = Outcome::new();
    let h1 = qh::hilbert_fn_mod_x(&semigroup(&[11, 17, 18])).unwrap();
    out.check(h1 == [1, 2, 3, 3, 2], format!("<11,17,18> -> {h1:?}"));
    let h2 = qh::hilbert_fn_mod_x(&semigroup(&[5, 6, 13])).unwrap();
    out.check(h2 == [1, 2, 2], format!("<5,6,13> -> {h2:?}"));
    out
}

fn reduction_number() -> Outcome {
    let mut out = Outcome::new();
    let s = semigroup(&[5, 6, 13]);
    let red = rr::reduction_index(&NormalizedIdeal::maximal(&s)).unwrap();
    out.check(
        (red.v_min, red.r_x) == (5, 4),
        format!("(v_min, r_x) = ({}, {})", red.v_min, red.r_x),
    );
    out
}

fn colon_reproductions() -> Outcome {
    let mut out = Outcome::new();
    let s = semigroup(&[5, 6, 13]);
    let m = NormalizedIdeal::maximal(&s);
    let k = NormalizedIdeal::canonical(&s);
    let r2 = rr::rr_ideal(&m, 2, &k).unwrap();
    out.check(
        r2 == ideal(&s, &[10, 11, 12, 13]),
        format!("r(m^2,K) = {r2}"),
    );
    let r3 = rr::rr_ideal(&m, 3, &k).unwrap();
    out.check(
        r3 == ideal(&s, &[15, 16, 17, 18, 19]),
        format!("r(m^3,K) = {r3}"),
    );
    let gens = r3.minimal_generators();
    out.check(
        gens == [15, 16, 17, 18, 19],
        format!("minimal generators {gens:?}"),
    );
    let bad: Vec<u32> = (4..=10)
        .filter(|&i| rr::rr_ideal(&m, i, &k).unwrap() != m.power(i))
        .collect();
    out.check(
        bad.is_empty(),
        format!("r(m^i,K) = m^i for 4..=10, exceptions {bad:?}"),
    );
    out
}

fn reproduction_11_17_18() -> Outcome {
    let mut out = Outcome::new();
    let s = semigroup(&[11, 17, 18]);
    let m = NormalizedIdeal::maximal(&s);
    let k = NormalizedIdeal::canonical(&s);
    let r6 = rr::rr_ideal(&m, 6, &k).unwrap();
    let expected_rr = ideal(&s, &[66, 72, 73, 78, 79, 80, 82, 85, 86, 87, 88, 92]);
    out.check(
        r6 == expected_rr,
        format!("r(m^6,K) = {:?}", r6.minimal_generators()),
    );
    let m6 = m.power(6);
    let expected_m6 = ideal(&s, &[66, 72, 73, 78, 79, 80, 85, 86, 87, 92, 93, 99]);
    out.check(
        m6 == expected_m6,
        format!("m^6 = {:?}", m6.minimal_generators()),
    );
    out.check(
        r6.contains(82) && !m6.contains(82),
        format!(
            "82 in r(m^6,K): {}, 82 in m^6: {}",
            r6.contains(82),
            m6.contains(82)
        ),
    );
    // The ideal (x, y) plays the role of I; K is the canonical ideal.
    let i = ideal(&s, &[11, 17]);
    let ki = k.product(&i).unwrap();
    let numerator = ki.product(&i).unwrap();
    let unit = NormalizedIdeal::unit(&s);
    let colon = numerator.colon_in(&ki, &unit).unwrap();
    out.check(
        colon == ideal(&s, &[11, 17, 54]),
        format!("(I^2K : IK) = {:?}", colon.minimal_generators()),
    );
    out
}

fn verdicts(cases: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let v = qh::verdict(&semigroup(&[11, 17, 18]), None).unwrap();
    out.check(
        v.quasi_hilbert && v.depth_positive,
        format!(
            "<11,17,18>: quasi_hilbert={} depth_positive={}",
            v.quasi_hilbert, v.depth_positive
        ),
    );
    let v = qh::verdict(&semigroup(&[5, 6, 13]), Some(6)).unwrap();
    out.check(
        !v.quasi_hilbert && !v.depth_positive && v.e_series_power == [0, 1, 1, 0, 0, 0],
        format!(
            "<5,6,13>: quasi_hilbert={} depth_positive={} e_series_power={:?}",
            v.quasi_hilbert, v.depth_positive, v.e_series_power
        ),
    );
    let mut symmetric: Vec<Arc<NumericalSemigroup>> = [
        &[2i64, 3][..],
        &[3, 5],
        &[4, 5, 6],
        &[5, 6, 7, 8],
        &[6, 7, 8],
        &[8, 9, 10, 12],
    ]
    .iter()
    .map(|g| semigroup(g))
    .collect();
    symmetric.extend(
        cases
            .iter()
            .map(|c| c.semigroup.clone())
            .filter(|s| s.is_symmetric()),
    );
    let bad = symmetric
        .iter()
        .filter(|s| {
            let v = qh::verdict(s, None).unwrap();
            !s.is_symmetric() || v.quasi_hilbert || !v.gorenstein
        })
        .count();
    out.check(
        bad == 0,
        format!("{} symmetric semigroups, {bad} violations", symmetric.len()),
    );
    out
}

fn index_inequalities(cases: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let mut violations = Vec::new();
    for c in cases {
        let f = Filtration::new(&c.ideal, &c.module).unwrap();
        let t = c.instance.t;
        let idx = f.indices(t).unwrap();
        let next = f.indices(t + 1).unwrap();
        let ok = idx.s <= idx.rho
            && idx.rho <= idx.s_star.saturating_sub(t)
            && idx.s_star <= idx.r_x
            && idx.rho <= next.rho + 1;
        if !ok {
            violations.push(format!("{:?} {idx:?}", c.instance));
        }
    }
    out.check(
        violations.is_empty(),
        format!(
            "{} instances, {} violations {:?}",
            cases.len(),
            violations.len(),
            violations.first()
        ),
    );
    out
}

fn structural_invariants(cases: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let mut counts: Vec<(&str, usize)> = Vec::new();
    let mut tally = |name: &'static str, ok: bool| match counts.iter_mut().find(|(n, _)| *n == name)
    {
        Some(entry) => entry.1 += usize::from(!ok),
        None => counts.push((name, usize::from(!ok))),
    };
    for c in cases {
        let s = &c.semigroup;
        let t = c.instance.t;
        let f = Filtration::new(&c.ideal, &c.module).unwrap();
        let unit = NormalizedIdeal::unit(s);
        let m = NormalizedIdeal::maximal(s);
        let k = NormalizedIdeal::canonical(s);
        let red = f.reduction();

        let power = c.ideal.power(t);
        let closure = rr::rr_closure(&c.ideal, t).unwrap();
        let r = f.rr_ideal(t).unwrap();
        tally(
            "sandwich",
            power.is_subset_of(&closure)
                && closure.is_subset_of(&r)
                && r.is_subset_of(&c.ideal.integral_closure_power(t)),
        );
        tally("r(m,K)=m", rr::rr_ideal(&m, 1, &k).unwrap() == m);
        tally(
            "0 not in r(m^t,K)",
            !rr::rr_ideal(&m, t, &k).unwrap().contains(0),
        );
        let shift_ok = [-7i64, 3, 19]
            .iter()
            .all(|&sh| rr::rr_ideal(&c.ideal, t, &c.module.shift(sh)).unwrap() == r);
        tally("shift invariance", shift_ok);
        tally(
            "principal collapse",
            rr::rr_ideal(&c.ideal, t, &unit.shift(c.module.min())).unwrap() == closure,
        );
        if s.is_symmetric() {
            tally(
                "Gorenstein collapse",
                rr::rr_ideal(&c.ideal, t, &k).unwrap() == closure,
            );
        }
        let mult_ok = (1..=2).all(|b| {
            let lhs = r.product(&f.rr_ideal(b).unwrap()).unwrap();
            lhs.is_subset_of(&f.rr_ideal(t + b).unwrap())
        });
        tally("multiplicativity", mult_ok);
        let stable_ok = (red.r_x.max(1)..red.r_x.max(1) + 3)
            .all(|n| f.rr_ideal(n + 1).unwrap() == f.rr_ideal(n).unwrap().shift(red.v_min));
        tally("stability shift for n >= r_x", stable_ok);
        // Above the conductor the Z-colon at level n lies inside S.
        let from = red
            .r_x
            .max(1)
            .max(((s.conductor() + red.v_min - 1) / red.v_min) as u32);
        let past_conductor = (from..from + 3)
            .all(|n| f.rr_ideal(n + 1).unwrap() == f.rr_ideal(n).unwrap().shift(red.v_min));
        tally(
            "stability shift for n >= max(r_x, c/v) [informative]",
            past_conductor,
        );
        let dual = |e: &NormalizedIdeal| k.colon_z(&k.colon_z(e).unwrap()).unwrap() == *e;
        tally(
            "canonical duality",
            dual(&c.ideal) && dual(&c.module) && dual(&r),
        );
    }
    for (name, bad) in &counts {
        out.check(*bad == 0, format!("{name}: {bad} violations"));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut out = Outcome::new();
    let reports = oracle::compare_suite(ORACLE_SEED, ORACLE_COUNT).unwrap();
    let disagree = reports.iter().filter(|r| !r.agree).count();
    let thin = reports.iter().filter(|r| !r.margin_ok).count();
    let mut bounds: Vec<i64> = reports.iter().map(|r| r.bound).collect();
    bounds.sort_unstable();
    bounds.dedup();
    out.check(
        disagree == 0 && thin == 0,
        format!(
            "{ORACLE_COUNT} instances, {} reports, {disagree} disagreements, {thin} thin margins",
            reports.len()
        ),
    );
    out.check(
        reports.iter().any(|r| bounds.contains(&(2 * r.bound))),
        "reports at both B and 2B",
    );
    out
}

fn eventual_behavior(cases: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let mut semigroups: Vec<Arc<NumericalSemigroup>> =
        [&[5i64, 6, 13][..], &[11, 17, 18], &[4, 7, 13], &[3, 8]]
            .iter()
            .map(|g| semigroup(g))
            .collect();
    semigroups.extend(cases.iter().map(|c| c.semigroup.clone()));
    let mut bad = Vec::new();
    for s in &semigroups {
        let w = qh::stable_window(s).unwrap();
        let n_max = w.n_star.max(1) + 5;
        let series = qh::e_series(s, n_max).unwrap();
        let size = w.window.len() as u64;
        if !(w.n_star.max(1)..=n_max).all(|n| series.tilde[(n - 1) as usize] == size) {
            bad.push(s.to_string());
        }
    }
    out.check(
        bad.is_empty(),
        format!(
            "{} semigroups, non-constant tails {:?}",
            semigroups.len(),
            bad
        ),
    );
    out
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cases = corpus();
    let criteria: Vec<Criterion> = vec![
        ("hilbert functions mod x", Box::new(hilbert_functions)),
        (
            "reduction number of m over <5,6,13>",
            Box::new(reduction_number),
        ),
        (
            "colon reproductions over <5,6,13>",
            Box::new(colon_reproductions),
        ),
        ("<11,17,18> reproduction", Box::new(reproduction_11_17_18)),
        ("verdicts", Box::new(|| verdicts(&cases))),
        (
            "index inequalities",
            Box::new(|| index_inequalities(&cases)),
        ),
        (
            "structural invariants",
            Box::new(|| structural_invariants(&cases)),
        ),
        (
            "oracle equivalence at B and 2B",
            Box::new(oracle_equivalence),
        ),
        (
            "certified eventual behavior",
            Box::new(|| eventual_behavior(&cases)),
        ),
    ];
    let mut failed = 0;
    for (number, (name, run)) in criteria.iter().enumerate() {
        let begun = Instant::now();
        let outcome = run();
        let status = if outcome.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {} [{name}]: {status} (tolerance: exact, {:.2}s)",
            number + 1,
            begun.elapsed().as_secs_f64()
        );
        for f in &outcome.failures {
            println!("    failed: {f}");
        }
        for f in &outcome.facts {
            println!("    ok: {f}");
        }
        failed += usize::from(!outcome.failures.is_empty());
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

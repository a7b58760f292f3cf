//! Acceptance suite: one PASS/FAIL line per criterion, each under its time
//! limit. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use netrel::catalog::{self, GRAPH_NAMES};
use netrel::chains::{
    decompose, elementary_symmetric, enlarge, fair_maximum, fair_tuple, mu_k_induced,
    mu_k_induced_by_type, mu_k_via_chain_formula, spectrum_via_chain_formula,
};
use netrel::combinatorics::binomial;
use netrel::cuts::{
    classify_cut, cut_spectrum, cut_type_census, mu_k_bruteforce, spanning_tree_count, CutKind,
};
use netrel::graph::are_isomorphic;
use netrel::reliability::{
    compare_near_one, compare_near_zero, evaluate, evaluate_bernstein, find_crossings,
    monte_carlo_reliability, polynomial_from_spectrum, witness_near_one, witness_near_zero,
    Verdict,
};
use netrel::verify::forms;
use netrel::{Budget, EdgeSet, MultiGraph};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

const BUDGET: Budget = Budget::DEFAULT;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn wagner_census() -> Outcome {
    let w = catalog::graph("W").map_err(err)?.graph;
    let c = cut_type_census(&w, 5, BUDGET).map_err(err)?;
    let p3 = c.nontrivial.get("P3").copied().unwrap_or(0);
    let c4 = c.nontrivial.get("C4").copied().unwrap_or(0);
    ensure!(
        (c.total, c.vertex, c.edge, p3, c4) == (400, 276, 84, 24, 16),
        "census {:?}",
        c
    );
    ensure!(
        c.nontrivial.len() == 2,
        "unexpected nontrivial kinds {:?}",
        c.nontrivial
    );
    let t = spanning_tree_count(&w);
    ensure!(t == big(392), "t(W) = {t}");
    ensure!(binomial(12, 5) - &t == big(400), "C(12,5) - t(W) != 400");
    Ok("mu5(W) = 400 = 276 V + 84 E + 24 P3 + 16 C4; t(W) = 392".into())
}

fn cubic8() -> Outcome {
    let gens = catalog::cubic_graphs(8).map_err(err)?;
    ensure!(gens.len() == 5, "{} cubic graphs on 8 vertices", gens.len());
    for (i, a) in gens.iter().enumerate() {
        ensure!(
            a.is_connected() && a.is_simple() && a.is_cubic(),
            "graph {i} malformed"
        );
        for b in &gens[i + 1..] {
            ensure!(
                !are_isomorphic(a, b).map_err(err)?,
                "duplicate isomorphism class"
            );
        }
    }
    let w = catalog::graph("W").map_err(err)?.graph;
    let q = catalog::graph("Q").map_err(err)?.graph;
    let mut min = Vec::new();
    for g in &gens {
        if mu_k_bruteforce(g, 3, BUDGET).map_err(err)? == big(8) {
            min.push(g);
        }
    }
    ensure!(min.len() == 2, "{} graphs attain mu3 = 8", min.len());
    let is = |g: &MultiGraph, h: &MultiGraph| are_isomorphic(g, h).unwrap_or(false);
    ensure!(
        min.iter().any(|g| is(g, &w)) && min.iter().any(|g| is(g, &q)),
        "the mu3 = 8 graphs are not W and Q"
    );
    for (name, labels) in [
        ("G1", ["23", "78", "15"]),
        ("G2", ["23", "78", "14"]),
        ("G3", ["23", "78", "13"]),
    ] {
        let g = catalog::graph(name).map_err(err)?.graph;
        let f = EdgeSet::from_labels(&g, &labels).map_err(err)?;
        ensure!(
            g.is_edge_cut(&f).map_err(err)?,
            "{} is not a cut of {name}",
            f.display(&g)
        );
        let kind = classify_cut(&g, &f).map_err(err)?.kind;
        ensure!(
            kind != CutKind::VertexSeparating,
            "{name}: named cut is a vertex star"
        );
    }
    Ok("5 classes; mu3 = 8 exactly for W and Q; extra 3-cuts of G1, G2, G3 confirmed".into())
}

fn matching_orbits() -> Outcome {
    let mut summary = Vec::new();
    for (host, reps) in [("W", &["M1", "M2", "M3"][..]), ("Q", &["M4", "M5"][..])] {
        let entry = catalog::graph(host).map_err(err)?;
        let all = catalog::perfect_matchings(&entry.graph).map_err(err)?;
        let orbits = catalog::orbits(&entry.graph, &all).map_err(err)?;
        ensure!(
            orbits.len() == reps.len(),
            "{host}: {} orbits",
            orbits.len()
        );
        let mut hit: Vec<usize> = reps
            .iter()
            .filter_map(|r| orbits.iter().position(|o| o.contains(&entry.edge_sets[*r])))
            .collect();
        hit.sort_unstable();
        hit.dedup();
        ensure!(
            hit.len() == reps.len(),
            "{host}: representatives share an orbit"
        );
        summary.push(format!(
            "{host}: {} matchings in {} orbits",
            all.len(),
            orbits.len()
        ));
    }
    Ok(summary.join("; "))
}

fn mu4_formulas() -> Outcome {
    let mut notes = Vec::new();
    for s in [1u64, 2] {
        let m = 12 * s as usize + 8;
        let subsets = binomial(m, 4);
        ensure!(
            subsets == big(if s == 1 { 4845 } else { 35960 }),
            "C({m},4) = {subsets}"
        );
        let mut totals = Vec::new();
        for (name, spec) in catalog::min_mu3_candidates(s as usize).map_err(err)? {
            let g = enlarge(&spec).map_err(err)?;
            let d = decompose(&g).map_err(err)?;
            let c = mu_k_induced_by_type(&d, 4, BUDGET).map_err(err)?;
            ensure!(
                BigInt::from(c.vertex.clone()) == forms::mu4_vertex(s),
                "{name}: V = {}",
                c.vertex
            );
            ensure!(
                BigInt::from(c.edge.clone()) == forms::mu4_edge(s),
                "{name}: E = {}",
                c.edge
            );
            ensure!(
                c.total() == mu_k_induced(&d, 4, BUDGET).map_err(err)?,
                "{name}: census total"
            );
            if name.starts_with("W^M1") {
                let n = BigInt::from(c.nontrivial_total());
                ensure!(n == forms::mu4_nontrivial_m1(s), "{name}: N = {n}");
                if s == 1 {
                    ensure!(
                        (c.vertex.clone(), c.edge.clone(), c.nontrivial_total())
                            == (big(480), big(96), big(17)),
                        "W^M1_1 census"
                    );
                }
            }
            let via = mu_k_via_chain_formula(&d, 4, BUDGET).map_err(err)?;
            let brute = mu_k_bruteforce(&g, 4, BUDGET).map_err(err)?;
            ensure!(
                via == brute,
                "{name}: chain formula {via} vs brute force {brute}"
            );
            totals.push((brute, name));
        }
        totals.sort();
        ensure!(
            totals[0].1.starts_with("W^M1") && totals[0].0 < totals[1].0,
            "s = {s}: W^M1 is not the unique mu4 minimiser"
        );
        notes.push(format!("s={s}: mu4(W^M1) = {}", totals[0].0));
    }
    Ok(notes.join("; "))
}

fn mu5_formulas() -> Outcome {
    let mut gaps = Vec::new();
    for s in [1u64, 2, 3] {
        let mut induced = Vec::new();
        for (y, family, total) in [
            ("M1", forms::MU5_M1, forms::MU5_TOTAL_M1),
            ("X", forms::MU5_X, forms::MU5_TOTAL_X),
        ] {
            let g =
                enlarge(&catalog::enlargement("W", y, s as usize).map_err(err)?).map_err(err)?;
            let d = decompose(&g).map_err(err)?;
            let c = mu_k_induced_by_type(&d, 5, BUDGET).map_err(err)?;
            for (kind, coeffs, value) in [
                ("V", family.vertex, c.vertex.clone()),
                ("E", family.edge, c.edge.clone()),
                ("P3", family.p3, c.nontrivial_of("P3")),
                ("C4", family.c4, c.nontrivial_of("C4")),
            ] {
                ensure!(
                    forms::eval(&coeffs, s) == BigInt::from(value.clone()),
                    "W^{y}_{s} {kind}: formula {} vs census {value}",
                    forms::eval(&coeffs, s)
                );
            }
            ensure!(
                c.nontrivial.len() <= 2,
                "W^{y}_{s}: kinds {:?}",
                c.nontrivial.keys()
            );
            let two_way = mu_k_induced(&d, 5, BUDGET).map_err(err)?;
            ensure!(c.total() == two_way, "W^{y}_{s}: census vs two-way count");
            ensure!(
                forms::eval(&total, s) == BigInt::from(two_way.clone()),
                "W^{y}_{s}: total"
            );
            if s == 1 {
                let brute = mu_k_bruteforce(&g, 5, BUDGET).map_err(err)?;
                let via = mu_k_via_chain_formula(&d, 5, BUDGET).map_err(err)?;
                let frozen = big(if y == "M1" { 10704 } else { 10666 });
                ensure!(
                    brute == frozen && via == frozen,
                    "W^{y}_1: brute {brute}, chains {via}"
                );
            }
            induced.push(BigInt::from(two_way));
        }
        let gap = &induced[0] - &induced[1];
        ensure!(gap == forms::eval(&forms::MU5_GAP, s), "s = {s}: gap {gap}");
        gaps.push(gap.to_string());
    }
    ensure!(gaps == ["38", "201", "572"], "gaps {gaps:?}");
    for s in 1..=100u64 {
        let m1 = forms::eval(&forms::MU5_TOTAL_M1, s);
        let x = forms::eval(&forms::MU5_TOTAL_X, s);
        ensure!(
            forms::eval(&forms::MU5_M1.total(), s) == m1,
            "family sum M1, s = {s}"
        );
        ensure!(
            forms::eval(&forms::MU5_X.total(), s) == x,
            "family sum X, s = {s}"
        );
        let gap = forms::eval(&forms::MU5_GAP, s);
        ensure!(&m1 - &x == gap && gap > BigInt::zero(), "gap at s = {s}");
    }
    Ok(format!(
        "gap 14s^3+20s^2+5s-1 = {} at s = 1, 2, 3; 10704 vs 10666 at s = 1; \
         closed forms consistent for s <= 100",
        gaps.join(", ")
    ))
}

fn compositions(t: usize, m: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == t - 1 {
        let used: u64 = prefix.iter().sum();
        if (m as u64) > used {
            prefix.push(m as u64 - used);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    let used: u64 = prefix.iter().sum();
    let remaining_slots = (t - prefix.len() - 1) as u64;
    for x in 1..=(m as u64).saturating_sub(used + remaining_slots) {
        prefix.push(x);
        compositions(t, m, prefix, out);
        prefix.pop();
    }
}

fn fair_tuples_maximise() -> Outcome {
    let mut checked = 0usize;
    for t in 2..=5 {
        for m in t..=12 {
            let mut tuples = Vec::new();
            compositions(t, m, &mut Vec::new(), &mut tuples);
            ensure!(
                tuples.len() == binomial(m - 1, t - 1).to_usize().unwrap_or(0),
                "L({t},{m}) size"
            );
            for k in 2..=t {
                let values: Vec<BigUint> =
                    tuples.iter().map(|l| elementary_symmetric(l, k)).collect();
                let max = values.iter().max().expect("nonempty").clone();
                ensure!(
                    max == fair_maximum(t, m, k).map_err(err)?,
                    "t={t} m={m} k={k}: max"
                );
                let mut fair = fair_tuple(t, m);
                fair.sort_unstable();
                for (l, v) in tuples.iter().zip(&values) {
                    let mut sorted = l.clone();
                    sorted.sort_unstable();
                    let is_fair = sorted == fair;
                    ensure!(
                        (*v == max) == is_fair,
                        "t={t} m={m} k={k}: {l:?} gives {v}, max {max}"
                    );
                }
                checked += tuples.len();
            }
        }
    }
    Ok(format!("{checked} (tuple, k) pairs"))
}

fn chain_formula_oracle() -> Outcome {
    let mut graphs = 0;
    for (name, spec) in catalog::enlarged_catalog(1).map_err(err)? {
        let g = enlarge(&spec).map_err(err)?;
        ensure!(g.m() <= 24, "{name} has {} edges", g.m());
        let d = decompose(&g).map_err(err)?;
        for k in 0..=6 {
            let via = mu_k_via_chain_formula(&d, k, BUDGET).map_err(err)?;
            let brute = mu_k_bruteforce(&g, k, BUDGET).map_err(err)?;
            ensure!(via == brute, "{name}, k = {k}: {via} vs {brute}");
        }
        graphs += 1;
    }
    Ok(format!("{graphs} enlarged graphs, k = 0..6"))
}

fn no_umrg_at_s1() -> Outcome {
    let build = |y: &str| -> Result<MultiGraph, String> {
        enlarge(&catalog::enlargement("W", y, 1).map_err(err)?).map_err(err)
    };
    let (gm1, gx) = (build("M1")?, build("X")?);
    let sm1 = cut_spectrum(&gm1, None, BUDGET).map_err(err)?;
    let sx = cut_spectrum(&gx, None, BUDGET).map_err(err)?;
    ensure!(
        gm1.m() == 20 && sm1.is_complete() && sx.is_complete(),
        "spectra incomplete"
    );
    for (g, s) in [(&gm1, &sm1), (&gx, &sx)] {
        let via = spectrum_via_chain_formula(&decompose(g).map_err(err)?, BUDGET).map_err(err)?;
        ensure!(
            via == *s,
            "chain-formula spectrum differs from 2^20 enumeration"
        );
    }
    let c0 = compare_near_zero(&sm1, &sx).map_err(err)?;
    ensure!(c0.verdict == Verdict::FirstBetter, "near 0: {c0:?}");
    let c1 = compare_near_one(&sx, &sm1).map_err(err)?;
    ensure!(c1.verdict == Verdict::FirstBetter, "near 1: {c1:?}");

    let pm1 = polynomial_from_spectrum(&sm1).map_err(err)?;
    let px = polynomial_from_spectrum(&sx).map_err(err)?;
    let w0 = witness_near_zero(&pm1, &px)
        .map_err(err)?
        .ok_or("no witness near 0")?;
    let (a, b) = (
        evaluate(&pm1, &w0.rho).map_err(err)?,
        evaluate(&px, &w0.rho).map_err(err)?,
    );
    ensure!(a > b, "witness near 0 does not confirm");
    let w1 = witness_near_one(&px, &pm1)
        .map_err(err)?
        .ok_or("no witness near 1")?;
    let (a1, b1) = (
        evaluate(&px, &w1.rho).map_err(err)?,
        evaluate(&pm1, &w1.rho).map_err(err)?,
    );
    ensure!(a1 > b1, "witness near 1 does not confirm");

    let tol = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(9)));
    let xs = find_crossings(&px, &pm1, &tol).map_err(err)?;
    ensure!(!xs.is_empty(), "no crossing found");
    for x in &xs {
        ensure!(x.width() <= tol, "interval too wide");
        ensure!(
            x.lo > BigRational::zero() && x.hi < BigRational::one(),
            "interval leaves (0,1)"
        );
        let lo = evaluate(&px, &x.lo).map_err(err)? - evaluate(&pm1, &x.lo).map_err(err)?;
        let hi = evaluate(&px, &x.hi).map_err(err)? - evaluate(&pm1, &x.hi).map_err(err)?;
        ensure!(!lo.is_zero() && !hi.is_zero(), "zero at an endpoint");
        ensure!(
            (lo > BigRational::zero()) != (hi > BigRational::zero()),
            "no sign change"
        );
    }
    Ok(format!(
        "near 0 at rho = 2^-{}, near 1 at rho = 1 - 2^-{}, crossing in [{:.10}, {:.10}]",
        w0.exponent,
        w1.exponent,
        xs[0].lo.to_f64().unwrap_or(f64::NAN),
        xs[0].hi.to_f64().unwrap_or(f64::NAN)
    ))
}

fn polynomial_invariants() -> Outcome {
    let mut graphs: Vec<(String, MultiGraph, netrel::CutSpectrum)> = Vec::new();
    for name in GRAPH_NAMES {
        let g = catalog::graph(name).map_err(err)?.graph;
        let s = cut_spectrum(&g, None, BUDGET).map_err(err)?;
        graphs.push((name.to_string(), g, s));
    }
    for (name, spec) in catalog::enlarged_catalog(1).map_err(err)? {
        let g = enlarge(&spec).map_err(err)?;
        let s = spectrum_via_chain_formula(&decompose(&g).map_err(err)?, BUDGET).map_err(err)?;
        graphs.push((name, g, s));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let trials = 100_000u64;
    let mut worst = 0.0f64;
    for (seed, (name, g, s)) in graphs.iter().enumerate() {
        let p = polynomial_from_spectrum(s).map_err(err)?;
        ensure!(
            evaluate(&p, &BigRational::zero()).map_err(err)?.is_one(),
            "{name}: R(0) != 1"
        );
        ensure!(
            evaluate(&p, &BigRational::one()).map_err(err)?.is_zero(),
            "{name}: R(1) != 0"
        );
        for i in 1..=20 {
            let rho = BigRational::new(BigInt::from(i), BigInt::from(21));
            ensure!(
                evaluate(&p, &rho).map_err(err)? == evaluate_bernstein(s, &rho).map_err(err)?,
                "{name}: evaluations differ at {rho}"
            );
        }
        let exact = evaluate(&p, &half)
            .map_err(err)?
            .to_f64()
            .unwrap_or(f64::NAN);
        let freq = monte_carlo_reliability(g, 0.5, trials, seed as u64 + 1);
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        let z = (freq - exact).abs() / sigma;
        let within = z <= 5.0;
        ensure!(
            within,
            "{name}: Monte Carlo {freq} vs exact {exact} ({z:.2} sigma)"
        );
        worst = worst.max(z);
    }
    Ok(format!(
        "{} graphs; worst Monte Carlo deviation {worst:.2} sigma",
        graphs.len()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "cut census of W",
            limit: secs(1),
            run: wagner_census,
        },
        Criterion {
            id: 2,
            name: "cubic graphs on 8 vertices",
            limit: secs(10),
            run: cubic8,
        },
        Criterion {
            id: 3,
            name: "perfect matching orbits",
            limit: secs(5),
            run: matching_orbits,
        },
        Criterion {
            id: 4,
            name: "4-edge-cut formulas, s = 1, 2",
            limit: secs(30),
            run: mu4_formulas,
        },
        Criterion {
            id: 5,
            name: "5-edge-cut formulas, s = 1, 2, 3",
            limit: secs(60),
            run: mu5_formulas,
        },
        Criterion {
            id: 6,
            name: "fair tuples maximise e_k, t <= 5, m <= 12",
            limit: secs(10),
            run: fair_tuples_maximise,
        },
        Criterion {
            id: 7,
            name: "chain formula against brute force",
            limit: secs(120),
            run: chain_formula_oracle,
        },
        Criterion {
            id: 8,
            name: "no uniformly most reliable graph, s = 1",
            limit: secs(120),
            run: no_umrg_at_s1,
        },
        Criterion {
            id: 9,
            name: "reliability polynomial invariants",
            limit: secs(60),
            run: polynomial_invariants,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let timing = format!(
            "{:.2} s, limit {} s",
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        match outcome {
            Ok(summary) if elapsed <= c.limit => {
                println!("PASS {}: {} ({timing}): {summary}", c.id, c.name)
            }
            Ok(summary) => {
                failed += 1;
                println!("FAIL {}: {} ({timing}): too slow: {summary}", c.id, c.name)
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {} ({timing}): {why}", c.id, c.name)
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}

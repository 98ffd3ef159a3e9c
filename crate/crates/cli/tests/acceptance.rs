//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use common::{exhaustive_spaces, factorial_isometry, random_distance_preserving};
use pmetric::morphisms::{commutes, BRUTE_FORCE_CAP};
use pmetric::*;
use pmetric_cli::document::SpaceDocument;
use pmetric_cli::fuzz::{self, FuzzConfig, Suite};
use pmetric_cli::{parse_space, to_canonical};

struct Outcome {
    violations: usize,
    detail: String,
}

fn gen(seed: u64, n: usize, merge: (u64, u64), max_entry: (u64, u64)) -> Space {
    random_space(
        &GenParams::new(seed, n)
            .with_zero_merge(Dist::ratio(merge.0, merge.1).unwrap())
            .with_max_entry(Dist::ratio(max_entry.0, max_entry.1).unwrap()),
    )
    .unwrap()
}

fn valid(s: &Space) -> bool {
    validate_pseudometric(s.labels(), &s.rows()).unwrap().ok()
}

/// `{x : some a in A has d(a, x) = 0}` computed without the library.
fn saturated(s: &Space, a: &Subset) -> bool {
    s.points().all(|x| a.contains(x) || !a.iter().any(|y| s.d(x, y).is_zero()))
}

fn family() -> Vec<Space> {
    (1..=4).flat_map(|n| exhaustive_spaces(n, &[0, 1, 2])).collect()
}

fn quotient_correctness() -> Outcome {
    let mut bad = 0;
    for seed in 0..1000u64 {
        let s = gen(seed, 1 + seed as usize % 8, (seed % 4, 4), (4, 1));
        let r = metric_reflection(&s).unwrap();
        let pairs_ok = s.points().all(|x| {
            s.points().all(|y| r.quotient.d(r.projection.apply(x), r.projection.apply(y)) == s.d(x, y))
        });
        bad += !(is_metric(&r.quotient) && pairs_ok) as usize;
    }
    Outcome { violations: bad, detail: "1000 spaces, n <= 8".into() }
}

fn topology_equivalences() -> Outcome {
    let spaces = family();
    let (mut bad, mut subsets) = (0, 0);
    for s in &spaces {
        for a in Subset::all(s.len()) {
            subsets += 1;
            let sat = saturated(s, &a);
            let ok = is_open(s, &a) == sat
                && is_closed(s, &a) == sat
                && closure(s, &a) == saturate(s, &a)
                && complete_via_boundary(s, &a)
                && (a.is_empty() || closed_via_completeness(s, &a).unwrap() == is_closed(s, &a));
            bad += !ok as usize;
        }
    }
    Outcome { violations: bad, detail: format!("{} spaces, {subsets} subsets", spaces.len()) }
}

fn metric_iff_all_closed() -> Outcome {
    let spaces = family();
    let bad = spaces
        .iter()
        .filter(|s| is_metric(s) != Subset::all(s.len()).all(|a| is_closed(s, &a)))
        .count();
    Outcome { violations: bad, detail: format!("{} spaces", spaces.len()) }
}

fn zero_point_gluing() -> Outcome {
    let mut bad = 0;
    for seed in 0..500u64 {
        let x = gen(seed, 1 + seed as usize % 8, (seed % 3, 4), (4, 1));
        let e = glue_zero_point(&x, seed as usize % x.len(), "y0").unwrap();
        bad += !(valid(e.sup()) && !is_closed(e.sup(), &e.image())) as usize;
    }
    Outcome { violations: bad, detail: "500 spaces".into() }
}

fn completion_gluing() -> Outcome {
    let mut bad = 0;
    for seed in 0..500u64 {
        let y = gen(seed, 1 + seed as usize % 7, (seed % 4, 4), (4, 1));
        let r = metric_reflection(&y).unwrap();
        let ystar = random_superspace(&r.quotient, &GenParams::new(seed ^ 0x5EED, seed as usize % 4), true).unwrap();
        let e = completion_glue(&y, ystar.sup(), ystar.inclusion()).unwrap();
        let ok = valid(e.sup()) && in_cec(&e).unwrap() && is_closed(e.sup(), &e.image());
        bad += !ok as usize;
    }
    let mut non_cec = 0;
    for seed in 0..500u64 {
        let y = gen(seed ^ 0xF00D, 1 + seed as usize % 6, (1, 3), (4, 1));
        let p = GenParams::new(seed, 1 + seed as usize % 3).with_zero_merge(Dist::ratio(1, 2).unwrap());
        let e = random_superspace(&y, &p, seed % 2 == 0).unwrap();
        bad += !check_cec_minimality(&y, &e).unwrap() as usize;
        non_cec += !in_cec(&e).unwrap() as usize;
    }
    Outcome { violations: bad, detail: format!("500 gluings, 500 superspaces ({non_cec} outside CEC)") }
}

fn pair(seed: u64) -> (Space, Space) {
    let nx = 1 + (seed as usize * 7) % 5;
    let x = gen(seed, nx, (seed % 3, 3), (1, 6));
    let y = match seed % 4 {
        0 => {
            let q = metric_reflection(&x).unwrap().quotient;
            let extra = 5usize.saturating_sub(q.len()).min(2);
            random_superspace(&q, &GenParams::new(seed, extra).with_zero_merge(Dist::one()), false)
                .unwrap()
                .sup()
                .clone()
        }
        1 => metric_reflection(&x).unwrap().quotient,
        _ => gen(seed ^ 0xBEEF, 1 + (seed as usize * 3) % 5, ((seed / 4) % 3, 3), (1, 6)),
    };
    (x, y)
}

fn pseudoisometry_oracle() -> Outcome {
    let (mut bad, mut present) = (0, 0);
    for seed in 0..200u64 {
        let (x, y) = pair(seed);
        let fast = are_pseudoisometric(&x, &y).unwrap();
        let slow = brute_force_pseudoisometry(&x, &y, BRUTE_FORCE_CAP).unwrap();
        bad += (fast.is_some() != slow.is_some()) as usize;
        present += fast.is_some() as usize;
        let rx = metric_reflection(&x).unwrap();
        let ry = metric_reflection(&y).unwrap();
        for w in fast.iter().chain(&slow) {
            let f = induced_reflection_map(w).unwrap();
            let ok = is_pseudoisometry(w).ok() && is_isometry(&f) && commutes(w, &f, &rx, &ry);
            bad += !ok as usize;
        }
    }
    Outcome { violations: bad, detail: format!("200 pairs, {present} pseudoisometric") }
}

fn isometry_completeness() -> Outcome {
    let mut pool: Vec<Space> = Vec::new();
    for seed in 0..100u64 {
        let n = 1 + seed as usize % 6;
        if seed % 4 == 3 {
            // relabelled, reversed copy of an earlier space of the same size
            let src = pool.iter().rev().find(|s| s.len() == n).cloned().unwrap_or_else(|| gen(seed, n, (0, 1), (1, 4)));
            let rev: Vec<usize> = (0..n).rev().collect();
            let rows = rev.iter().map(|&i| rev.iter().map(|&j| src.d(i, j).clone()).collect()).collect();
            pool.push(Space::new((0..n).map(|i| format!("c{i}")).collect(), rows).unwrap());
        } else {
            pool.push(gen(seed, n, (0, 1), (1, 4)));
        }
    }
    let (mut bad, mut found, mut pairs) = (0, 0, 0);
    for a in &pool {
        for b in &pool {
            pairs += 1;
            let (m, _) = find_isometry(a, b).unwrap();
            bad += (m.is_some() != factorial_isometry(a, b).is_some()) as usize;
            if let Some(m) = m {
                found += 1;
                bad += !is_isometry(&m) as usize;
            }
        }
    }
    Outcome { violations: bad, detail: format!("{pairs} pairs, {found} isometric") }
}

fn metric_pseudoisometries() -> Outcome {
    let (mut bad, mut maps, mut seed) = (0, 0, 0u64);
    let (mut both, mut cod, mut dom) = (0, 0, 0);
    while maps < 1000 {
        seed += 1;
        assert!(seed < 100_000, "generator stalled");
        let x = gen(seed, 1 + seed as usize % 6, (seed % 3, 4), (1, 4));
        let y = match seed % 3 {
            0 => metric_reflection(&x).unwrap().quotient,
            1 => random_superspace(&x, &GenParams::new(seed, 1).with_zero_merge(Dist::one()), false)
                .unwrap()
                .sup()
                .clone(),
            _ => {
                let q = metric_reflection(&x).unwrap().quotient;
                let rev: Vec<usize> = (0..q.len()).rev().collect();
                let rows = rev.iter().map(|&i| rev.iter().map(|&j| q.d(i, j).clone()).collect()).collect();
                Space::new((0..q.len()).map(|i| format!("r{i}")).collect(), rows).unwrap()
            }
        };
        let Some(m) = random_distance_preserving(&x, &y, seed) else { continue };
        if !is_pseudoisometry(&m).ok() {
            continue;
        }
        maps += 1;
        let (dm, cm) = (is_metric(&x), is_metric(&y));
        if dm && cm {
            both += 1;
            bad += !(m.is_bijective() && is_distance_preserving(&m)) as usize;
        }
        if cm {
            cod += 1;
            bad += !m.is_surjective() as usize;
        }
        if dm {
            dom += 1;
            bad += !m.is_injective() as usize;
        }
    }
    Outcome {
        violations: bad,
        detail: format!("{maps} maps ({both} metric-metric, {cod} metric codomain, {dom} metric domain)"),
    }
}

fn equivalence_relation() -> Outcome {
    let pool: Vec<Space> = (0..30u64).map(|seed| gen(seed % 10, 1 + seed as usize % 4, (seed % 3, 3), (1, 3))).collect();
    let mut bad = 0;
    let mut related = 0;
    for x in &pool {
        bad += !(is_pseudoisometry(&PointMap::identity(x)).ok() && are_pseudoisometric(x, x).unwrap().is_some()) as usize;
    }
    for x in &pool {
        for y in &pool {
            let f = are_pseudoisometric(x, y).unwrap();
            bad += (f.is_some() != are_pseudoisometric(y, x).unwrap().is_some()) as usize;
            let Some(f) = f else { continue };
            related += 1;
            for z in &pool {
                if let Some(g) = are_pseudoisometric(y, z).unwrap() {
                    let h = compose(&f, &g).unwrap();
                    let direct = are_pseudoisometric(x, z).unwrap();
                    bad += !(is_pseudoisometry(&h).ok() && direct.is_some()) as usize;
                }
            }
        }
    }
    Outcome { violations: bad, detail: format!("30 spaces, {related} related ordered pairs") }
}

/// Same space with unreduced fractions, shuffled keys and odd whitespace.
fn scrambled(s: &Space) -> String {
    let rows: Vec<String> = s
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .map(|d| format!("\"{}/{}\"", d.numer() * 3u32, d.denom() * 3u32))
                .collect();
            format!("[{}]", cells.join(" ,"))
        })
        .collect();
    let pts: Vec<String> = s.labels().iter().map(|l| serde_json::to_string(l).unwrap()).collect();
    format!("{{ \"d\":[{}],\n\t\"points\" : [{}] }}", rows.join(","), pts.join(","))
}

fn determinism_and_format() -> Outcome {
    let mut bad = 0;
    for seed in 0..50u64 {
        let s = gen(seed, 1 + seed as usize % 8, (seed % 4, 4), (7, 3));
        let canon = to_canonical(&s);
        let again = to_canonical(&parse_space(&canon, "doc").unwrap());
        let from_scrambled = SpaceDocument::parse(&scrambled(&s), "doc").unwrap().to_canonical();
        bad += (again != canon) as usize + (from_scrambled != canon) as usize;
    }
    let cfg = FuzzConfig { seed: 7, count: 200, max_n: 6, suite: Suite::All };
    let first = fuzz::run(&cfg).to_string();
    let second = fuzz::run(&cfg).to_string();
    bad += (first != second) as usize;
    Outcome { violations: bad, detail: "50 documents, 2 fuzz runs".into() }
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 quotient correctness", quotient_correctness, Duration::from_secs(5)),
        ("2 finite topology equivalences", topology_equivalences, Duration::from_secs(60)),
        ("3 metric iff every subset closed", metric_iff_all_closed, Duration::from_secs(60)),
        ("4 zero-point superspace not closed", zero_point_gluing, Duration::from_secs(5)),
        ("5 completion gluing and CEC minimality", completion_gluing, Duration::from_secs(10)),
        ("6 pseudoisometry oracle equivalence", pseudoisometry_oracle, Duration::from_secs(30)),
        ("7 isometry search completeness", isometry_completeness, Duration::from_secs(30)),
        ("8 pseudoisometries between metric spaces", metric_pseudoisometries, Duration::from_secs(60)),
        ("9 pseudoisometry is an equivalence", equivalence_relation, Duration::from_secs(60)),
        ("10 determinism and canonical format", determinism_and_format, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.violations == 0 && elapsed <= budget;
        failed += !pass as usize;
        println!(
            "criterion {name}: {} ({} violations; {}; {:.2}s of {}s)",
            if pass { "PASS" } else { "FAIL" },
            out.violations,
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}

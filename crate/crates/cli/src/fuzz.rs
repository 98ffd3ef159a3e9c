//! Seeded property suites run by `pmetric fuzz`.
//!
//! Case `i` of a run uses the seed `splitmix64(seed + i)`, so a failing case
//! can be replayed from the summary alone. Suites run in a fixed order and
//! all counters are deterministic.

use std::fmt;

use pmetric::morphisms::{commutes, BRUTE_FORCE_CAP};
use pmetric::zero::is_saturated;
use pmetric::*;
use serde::Serialize;

use crate::document::bundle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Core,
    Topology,
    Morphisms,
    Constructions,
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Core, Suite::Topology, Suite::Morphisms, Suite::Constructions],
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Core => "core",
            Suite::Topology => "topology",
            Suite::Morphisms => "morphisms",
            Suite::Constructions => "constructions",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: u64,
    pub max_n: usize,
    pub suite: Suite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: &'static str,
    pub cases: u64,
    pub checks: u64,
    pub violations: u64,
}

/// First failing check of a run, with the spaces involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub suite: &'static str,
    pub property: String,
    pub case_seed: u64,
    pub bundle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: u64,
    pub max_n: usize,
    pub suites: Vec<SuiteSummary>,
    pub counterexample: Option<Counterexample>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.violations == 0)
    }
}

impl fmt::Display for FuzzSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fuzz seed={} count={} max-n={}", self.seed, self.count, self.max_n)?;
        for s in &self.suites {
            writeln!(f, "{}: {} cases, {} checks, {} violations", s.suite, s.cases, s.checks, s.violations)?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "first counterexample: {} / {} (case seed {})", c.suite, c.property, c.case_seed)?;
            write!(f, "{}", c.bundle)?;
        }
        writeln!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

struct Tally<'a> {
    suite: Suite,
    case_seed: u64,
    checks: u64,
    violations: u64,
    first: &'a mut Option<Counterexample>,
}

impl Tally<'_> {
    fn check(&mut self, property: &str, holds: bool, spaces: &[(&str, &Space)]) {
        self.checks += 1;
        if holds {
            return;
        }
        self.violations += 1;
        if self.first.is_none() {
            *self.first = Some(Counterexample {
                suite: self.suite.name(),
                property: property.to_owned(),
                case_seed: self.case_seed,
                bundle: bundle(spaces),
            });
        }
    }
}

fn params(seed: u64, n: usize, merge: (u64, u64), max_entry: (u64, u64)) -> GenParams {
    GenParams::new(seed, n)
        .with_zero_merge(Dist::ratio(merge.0, merge.1).expect("nonzero"))
        .with_max_entry(Dist::ratio(max_entry.0, max_entry.1).expect("nonzero"))
}

fn case_space(seed: u64, max_n: usize) -> Space {
    let n = 1 + (splitmix64(seed ^ 1) % max_n as u64) as usize;
    let merge = splitmix64(seed ^ 2) % 4;
    random_space(&params(seed, n, (merge, 4), (4, 1))).expect("valid generator parameters")
}

fn core_case(t: &mut Tally, seed: u64, max_n: usize) {
    let s = case_space(seed, max_n);
    let one = [("space", &s)];
    t.check("validate", validate_pseudometric(s.labels(), &s.rows()).map(|r| r.ok()).unwrap_or(false), &one);
    let classes = zero_classes(&s);
    let equivalence = s.points().all(|i| {
        s.points().all(|j| s.d(i, j).is_zero() == (classes.block_of(i) == classes.block_of(j)))
    });
    t.check("zero-relation-equivalence", equivalence, &one);
    let r = metric_reflection(&s).expect("nonempty");
    t.check("quotient-is-metric", is_metric(&r.quotient), &[("space", &s), ("quotient", &r.quotient)]);
    t.check("quotient-distances", r.projection_preserves_distances(), &[("space", &s), ("quotient", &r.quotient)]);
    t.check("well-defined", check_well_defined(&s.rows()).ok(), &one);
    let ps = compose(&r.section, &r.projection).expect("composable");
    t.check("section-then-projection", ps == PointMap::identity(&r.quotient), &one);
}

fn topology_case(t: &mut Tally, seed: u64, max_n: usize) {
    let s = case_space(seed, max_n.min(7));
    let one = [("space", &s)];
    let mut all_closed = true;
    for a in Subset::all(s.len()) {
        let sat = is_saturated(&s, &a);
        let closed = is_closed(&s, &a);
        all_closed &= closed;
        t.check("open-iff-saturated", is_open(&s, &a) == sat, &one);
        t.check("closed-iff-saturated", closed == sat, &one);
        t.check("closure-is-saturation", closure(&s, &a) == saturate(&s, &a), &one);
        t.check("boundary-criterion", complete_via_boundary(&s, &a), &one);
        if !a.is_empty() {
            let via = closed_via_completeness(&s, &a).unwrap_or(!closed);
            t.check("closed-via-completeness", via == closed, &one);
        }
    }
    t.check("metric-iff-all-closed", is_metric(&s) == all_closed, &one);
}

fn morphisms_case(t: &mut Tally, seed: u64, max_n: usize) {
    let cap = max_n.min(5);
    let fine = |s: u64, n: usize, m: u64| random_space(&params(s, n, (m, 4), (1, 6))).expect("valid");
    let nx = 1 + (splitmix64(seed ^ 3) % cap as u64) as usize;
    let x = fine(seed, nx, splitmix64(seed ^ 4) % 3);
    let y = match seed % 3 {
        0 => {
            let q = metric_reflection(&x).expect("nonempty").quotient;
            let extra = cap.saturating_sub(q.len()).min(2);
            random_superspace(&q, &params(seed, extra, (1, 1), (1, 6)), false)
                .expect("valid")
                .sup()
                .clone()
        }
        1 => fine(splitmix64(seed), 1 + (splitmix64(seed ^ 5) % cap as u64) as usize, splitmix64(seed ^ 6) % 3),
        _ => metric_reflection(&x).expect("nonempty").quotient,
    };
    let pair = [("x", &x), ("y", &y)];
    let fast = are_pseudoisometric(&x, &y).expect("nonempty");
    let slow = brute_force_pseudoisometry(&x, &y, BRUTE_FORCE_CAP).expect("within cap");
    t.check("reflection-search-matches-brute-force", fast.is_some() == slow.is_some(), &pair);
    for w in fast.iter().chain(&slow) {
        t.check("witness-is-pseudoisometry", is_pseudoisometry(w).ok(), &pair);
        let f = induced_reflection_map(w).expect("validated");
        t.check("induced-map-is-isometry", is_isometry(&f), &pair);
        let rx = metric_reflection(&x).expect("nonempty");
        let ry = metric_reflection(&y).expect("nonempty");
        t.check("induced-map-commutes", commutes(w, &f, &rx, &ry), &pair);
        if is_metric(&y) {
            t.check("metric-codomain-surjective", w.is_surjective(), &pair);
        }
        if is_metric(&x) {
            t.check("metric-domain-injective", w.is_injective(), &pair);
        }
    }
    let qx = metric_reflection(&x).expect("nonempty").quotient;
    let qy = metric_reflection(&y).expect("nonempty").quotient;
    let (iso, _) = find_isometry(&qx, &qy).expect("quotients are metric");
    t.check("isometry-search-matches-reflections", iso.is_some() == fast.is_some(), &pair);
    let sym = are_pseudoisometric(&y, &x).expect("nonempty");
    t.check("pseudoisometric-symmetric", sym.is_some() == fast.is_some(), &pair);
}

fn constructions_case(t: &mut Tally, seed: u64, max_n: usize) {
    let y = case_space(seed, max_n);
    let valid = |s: &Space| validate_pseudometric(s.labels(), &s.rows()).map(|r| r.ok()).unwrap_or(false);

    let center = (splitmix64(seed ^ 7) % y.len() as u64) as usize;
    let glued = glue_zero_point(&y, center, "y0").expect("fresh label");
    let g = [("space", &y), ("superspace", glued.sup())];
    t.check("zero-glue-valid", valid(glued.sup()), &g);
    t.check("zero-glue-not-closed", !is_closed(glued.sup(), &glued.image()), &g);

    let r = metric_reflection(&y).expect("nonempty");
    let extra = (splitmix64(seed ^ 8) % 3) as usize;
    let ystar = random_superspace(&r.quotient, &params(splitmix64(seed), extra, (0, 1), (4, 1)), true)
        .expect("valid");
    let x = completion_glue(&y, ystar.sup(), ystar.inclusion()).expect("metric superspace");
    let c = [("space", &y), ("ystar", ystar.sup()), ("glued", x.sup())];
    t.check("completion-glue-valid", valid(x.sup()), &c);
    t.check("completion-glue-cec", in_cec(&x).unwrap_or(false), &c);
    t.check("completion-glue-closed", is_closed(x.sup(), &x.image()), &c);

    let force = seed & 1 == 0;
    let e = random_superspace(&y, &params(seed, 1 + extra, (1, 2), (4, 1)), force).expect("valid");
    let s = [("space", &y), ("superspace", e.sup())];
    t.check("superspace-valid", valid(e.sup()) && is_superspace(&e), &s);
    if force {
        t.check("cec-keeps-closed", is_closed(e.sup(), &e.image()), &s);
    }
    t.check("cec-minimality", check_cec_minimality(&y, &e).unwrap_or(false), &s);
}

/// Runs the selected suites for `count` cases each.
pub fn run(cfg: &FuzzConfig) -> FuzzSummary {
    let max_n = cfg.max_n.max(1);
    let mut first = None;
    let mut suites = Vec::new();
    for suite in cfg.suite.expand() {
        let mut t = Tally { suite, case_seed: 0, checks: 0, violations: 0, first: &mut first };
        for i in 0..cfg.count {
            let case_seed = splitmix64(cfg.seed.wrapping_add(i));
            t.case_seed = case_seed;
            match suite {
                Suite::Core => core_case(&mut t, case_seed, max_n),
                Suite::Topology => topology_case(&mut t, case_seed, max_n),
                Suite::Morphisms => morphisms_case(&mut t, case_seed, max_n),
                Suite::Constructions => constructions_case(&mut t, case_seed, max_n),
                Suite::All => unreachable!("expanded"),
            }
        }
        suites.push(SuiteSummary { suite: suite.name(), cases: cfg.count, checks: t.checks, violations: t.violations });
    }
    FuzzSummary { seed: cfg.seed, count: cfg.count, max_n, suites, counterexample: first }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_repeats() {
        let cfg = FuzzConfig { seed: 3, count: 20, max_n: 5, suite: Suite::All };
        let a = run(&cfg);
        assert!(a.passed(), "{a}");
        assert_eq!(a.suites.len(), 4);
        assert!(a.suites.iter().all(|s| s.checks > 0));
        assert_eq!(a, run(&cfg));
    }

    #[test]
    fn failing_check_records_counterexample() {
        let mut first = None;
        let s = Space::from_integers(vec!["a"], &[&[0]]).unwrap();
        let mut t = Tally { suite: Suite::Core, case_seed: 9, checks: 0, violations: 0, first: &mut first };
        t.check("demo", false, &[("space", &s)]);
        t.check("demo2", false, &[("space", &s)]);
        assert_eq!(t.violations, 2);
        let c = first.unwrap();
        assert_eq!(c.property, "demo");
        assert!(c.bundle.contains("\"points\": [\"a\"]"));
    }
}

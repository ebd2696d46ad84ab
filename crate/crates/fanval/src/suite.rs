//! The acceptance battery: ten criteria, each combining exact identities
//! with Monte Carlo checks at fixed sample sizes and a runtime budget.

use std::time::{Duration, Instant};

use fanval_core::arrangement::CharPoly;
use fanval_core::fan::{
    check_deletion_restriction, check_fan_valuation_identity, whitney_decomposition_check, ConeValuation,
};
use fanval_core::indicator::{
    euler_involution_check, exceptional_arrangement, genericity_check, hug_kabluchko_check,
    klivans_swartz_indicator_check, lemma_key_check, recover_cone, self_dual_check, sommerville_check,
    theorem_vk_arr_check, verify_polar_duality, verify_vk_valuation, vk, vk_arrangement, vk_terms,
    IndicatorCheck, VkValuation,
};
use fanval_core::intrinsic::{mc_intrinsic_volumes, verify_klivans_swartz, verify_zaslavsky, IntrinsicVolume};
use fanval_core::linalg::{dot, int_vector as iv, to_rational, Subspace};
use fanval_core::projection::{check_moreau_isomorphism, moreau_fan};
use fanval_core::{Arrangement, Cone, Fan, IndicatorElement, IntVector};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::random;

/// The result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    /// All checks passed and the run finished within `limit`.
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn line(&self) -> String {
        let limit = self.limit.map(|l| format!(" / limit {:.0?}", l)).unwrap_or_default();
        format!(
            "criterion {:>2} {} {}: {} [{:.2?}{}]",
            self.id,
            self.status(),
            self.name,
            self.summary,
            self.elapsed,
            limit
        )
    }

    /// The report without timings, so that it is reproducible byte for byte.
    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.id,
            "name": self.name,
            "status": self.status(),
            "summary": self.summary,
            "details": self.details,
        })
    }
}

fn finish(
    id: usize,
    name: &'static str,
    start: Instant,
    limit: Option<Duration>,
    checks_pass: bool,
    summary: String,
    details: Value,
) -> Outcome {
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let summary = if in_time { summary } else { format!("{summary}; over the time limit") };
    Outcome { id, name, passed: checks_pass && in_time, summary, details, elapsed, limit }
}

/// Battery settings. Sample sizes and tolerances are fixed by the
/// criteria; only the seed varies.
#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct SuiteConfig {
    pub seed: u64,
}


const Z: f64 = 4.0;

fn poly(p: &CharPoly) -> String {
    p.to_string()
}

fn lines(normals: &[&[i64]]) -> Arrangement {
    Arrangement::from_normals(normals)
}

/// Three generic planes, two coordinate lines, one line, three lines in
/// the plane, and the braid arrangement in `R^3`, with their Whitney
/// numbers worked out by hand.
pub fn named_arrangements() -> Vec<(&'static str, Arrangement, Vec<i64>)> {
    vec![
        ("3 generic planes in R^3", lines(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), vec![1, 3, 3, 1]),
        ("2 coordinate lines in R^2", lines(&[&[1, 0], &[0, 1]]), vec![1, 2, 1]),
        ("1 line in R^2", lines(&[&[0, 1]]), vec![0, 1, 1]),
        ("3 lines in R^2", lines(&[&[1, 0], &[0, 1], &[1, 1]]), vec![2, 3, 1]),
        ("braid arrangement in R^3", lines(&[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]]), vec![0, 2, 3, 1]),
    ]
}

/// Criterion 1: deletion-restriction and Möbius routes agree on 20 random
/// arrangements.
pub fn criterion_1(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for a in random::arrangements(cfg.seed, 20) {
        let whitney = a.whitney_numbers();
        let delres = a.char_poly_delres().expect("nonempty");
        ok &= whitney == delres;
        rows.push(json!({
            "d": a.ambient_dim(),
            "hyperplanes": a.len(),
            "whitney": poly(&whitney),
            "deletion_restriction": poly(&delres),
        }));
    }
    let agree = rows.iter().filter(|r| r["whitney"] == r["deletion_restriction"]).count();
    finish(
        1,
        "characteristic polynomial agreement",
        start,
        Some(Duration::from_secs(10)),
        ok,
        format!("{agree}/20 arrangements agree"),
        json!({ "seed": cfg.seed, "arrangements": rows }),
    )
}

/// Criterion 2: `ōχ(1)` counts the regions.
pub fn criterion_2(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for a in random::arrangements(cfg.seed, 20) {
        let at_one = a.whitney_numbers().eval(1);
        let regions = a.regions().len() as i64;
        ok &= at_one == regions;
        rows.push(json!({ "d": a.ambient_dim(), "hyperplanes": a.len(), "at_one": at_one, "regions": regions }));
    }
    finish(
        2,
        "Zaslavsky region count",
        start,
        None,
        ok,
        format!("{} arrangements checked", rows.len()),
        json!({ "seed": cfg.seed, "arrangements": rows }),
    )
}

/// Criterion 3: both nonzero intrinsic volumes of a halfspace are 1/2.
pub fn criterion_3(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let n: u64 = 100_000;
    let d = 3;
    let h = Cone::halfspace(&iv(&[1, -2, 2]));
    let est = mc_intrinsic_volumes(&h, n, cfg.seed);
    let tol = 4.0 * (0.25 / n as f64).sqrt();
    let top = est.value(d);
    let below = est.value(d - 1);
    let rest_zero = (0..d - 1).all(|k| est.value(k) == 0.0);
    let ok = (top - 0.5).abs() <= tol && (below - 0.5).abs() <= tol && rest_zero;
    finish(
        3,
        "halfspace intrinsic volumes",
        start,
        Some(Duration::from_secs(5)),
        ok,
        format!("v_3 = {top:.4}, v_2 = {below:.4}, tolerance {tol:.4}"),
        json!({ "samples": n, "seed": cfg.seed, "values": est.values(), "tolerance": tol }),
    )
}

/// Criterion 4: Monte Carlo coefficients of `ōχ_{𝒩(𝒜)}` match the Whitney
/// numbers.
pub fn criterion_4(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let n: u64 = 200_000;
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, a, expected) in named_arrangements() {
        let w = a.whitney_numbers();
        let oracle = (0..expected.len()).all(|k| w.coefficient(k) == expected[k]);
        let report = verify_klivans_swartz(&a, n, cfg.seed, Z).expect("nonempty");
        ok &= oracle && report.holds();
        rows.push(json!({
            "arrangement": name,
            "whitney": w.coefficients(),
            "whitney_matches_hand_count": oracle,
            "estimates": report.rows.iter().map(|r| r.estimate).collect::<Vec<_>>(),
            "ci_radii": report.rows.iter().map(|r| r.ci_radius).collect::<Vec<_>>(),
            "within": report.holds(),
        }));
    }
    let passing = rows.iter().filter(|r| r["within"] == json!(true)).count();
    finish(
        4,
        "Monte Carlo characteristic polynomial",
        start,
        Some(Duration::from_secs(120)),
        ok,
        format!("{passing}/{} arrangements within {Z} sigma", rows.len()),
        json!({ "samples_per_cone": n, "seed": cfg.seed, "z": Z, "arrangements": rows }),
    )
}

/// Fans of rank at least one used by criterion 5.
pub fn test_fans() -> Vec<(String, Fan)> {
    let mut fans: Vec<(String, Fan)> =
        named_arrangements().into_iter().map(|(name, a, _)| (name.to_string(), a.regions())).collect();
    fans.push(("Moreau fan of the quadrant".into(), moreau_fan(&Cone::orthant(2))));
    fans.push(("the octant".into(), Fan::single(Cone::orthant(3))));
    let plane = Subspace::span(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 1])]);
    let inside = Arrangement::new(plane, &[iv(&[1, 0, 0]), iv(&[0, 1, 1]), iv(&[1, 1, 1])]).expect("valid");
    fans.push(("2 lines in a plane of R^3".into(), inside.regions()));
    fans
}

/// Criterion 5: `ōχ̂(−1)` vanishes within tolerance.
pub fn criterion_5(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let n: u64 = 100_000;
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, fan) in test_fans() {
        let r = verify_zaslavsky(&fan, n, cfg.seed, Z);
        let vanishes = r.at_minus_one_vanishes == Some(true);
        ok &= vanishes;
        rows.push(json!({
            "fan": name,
            "rank": fan.rank(),
            "at_minus_one": r.at_minus_one,
            "tolerance": r.tolerance,
            "vanishes": vanishes,
        }));
    }
    let passing = rows.iter().filter(|r| r["vanishes"] == json!(true)).count();
    finish(
        5,
        "alternating sum vanishes",
        start,
        None,
        ok,
        format!("{passing}/{} fans", rows.len()),
        json!({ "samples_per_cone": n, "seed": cfg.seed, "z": Z, "fans": rows }),
    )
}

struct Tally {
    name: &'static str,
    instances: usize,
    failures: usize,
    comparisons: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, instances: 0, failures: 0, comparisons: 0 }
    }

    fn record(&mut self, check: &IndicatorCheck) {
        self.comparisons += 1;
        self.failures += usize::from(!check.holds);
    }

    fn json(&self) -> Value {
        json!({
            "identity": self.name,
            "instances": self.instances,
            "comparisons": self.comparisons,
            "failures": self.failures,
        })
    }

    fn passed(&self) -> bool {
        self.instances >= 5 && self.failures == 0
    }
}

/// Small arrangements for the exact checks: `d ≤ 3`, at most 4 hyperplanes.
pub fn small_arrangements() -> Vec<Arrangement> {
    vec![
        lines(&[&[0, 1]]),
        lines(&[&[1, 0], &[0, 1]]),
        lines(&[&[1, 0], &[0, 1], &[1, 1]]),
        lines(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        lines(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
        lines(&[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]]),
    ]
}

/// Small cones for the exact checks: `d ≤ 3`, at most 12 faces.
pub fn small_cones(seed: u64) -> Vec<Cone> {
    let mut rng = random::rng(seed ^ 0x6);
    vec![
        Cone::orthant(2),
        Cone::orthant(3),
        random::simplicial_cone(&mut rng, 3),
        random::simplicial_cone(&mut rng, 2),
        Cone::halfspace(&iv(&[0, 1, 1])),
        Cone::from_rays(&[&[1, 0]]),
        Cone::from_rays(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1], &[0, 0, 1]]),
        Cone::full_space(2),
        Cone::origin(3),
    ]
}

/// Criterion 6: every indicator identity, decided exactly.
pub fn criterion_6(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let arrangements = small_arrangements();
    let cones = small_cones(cfg.seed);
    let mut tallies = Vec::new();

    let mut key = Tally::new("lemma key");
    let mut arr = Tally::new("V_k of an arrangement");
    let mut ks = Tally::new("indicator characteristic polynomial");
    for a in &arrangements {
        key.instances += 1;
        key.record(&lemma_key_check(a));
        arr.instances += 1;
        for k in 0..=a.ambient_dim() {
            arr.record(&theorem_vk_arr_check(a, k));
        }
        ks.instances += 1;
        for c in klivans_swartz_indicator_check(a) {
            ks.record(&c);
        }
    }

    let mut val = Tally::new("V_k valuation");
    let mut rng = random::rng(cfg.seed ^ 0x60);
    for c in cones.iter().filter(|c| c.is_full_dimensional()) {
        let h = random::cutting_normal(&mut rng, c);
        val.instances += 1;
        for k in 0..=c.ambient_dim() {
            val.record(&verify_vk_valuation(c, &h, k));
        }
    }

    let mut polar = Tally::new("polar duality");
    let mut hk = Tally::new("alternating normal-cone sum");
    let mut som = Tally::new("Sommerville relation");
    for c in &cones {
        polar.instances += 1;
        for k in 0..=c.ambient_dim() {
            polar.record(&verify_polar_duality(c, k));
        }
        hk.instances += 1;
        hk.record(&hug_kabluchko_check(c));
        som.instances += 1;
        som.record(&sommerville_check(c));
    }

    let mut euler = Tally::new("Euler map involution");
    let mut elements: Vec<IndicatorElement> = cones.iter().map(|c| IndicatorElement::cone(c.clone())).collect();
    elements.push(vk(&Cone::orthant(3), 1));
    elements.push(
        IndicatorElement::cone(Cone::orthant(3))
            .sub(&IndicatorElement::cone(Cone::from_rays(&[&[1, 1, 0], &[0, 0, 1]])).scale(3))
            .add(&IndicatorElement::cone(Cone::halfspace(&iv(&[1, 0, 1])))),
    );
    elements.push(vk_arrangement(&arrangements[1], 1));
    for f in &elements {
        euler.instances += 1;
        euler.record(&euler_involution_check(f));
    }

    tallies.extend([key, arr, val, polar, ks, hk, som, euler]);
    let ok = tallies.iter().all(Tally::passed);
    let comparisons: usize = tallies.iter().map(|t| t.comparisons).sum();
    let failures: usize = tallies.iter().map(|t| t.failures).sum();
    finish(
        6,
        "exact indicator identities",
        start,
        Some(Duration::from_secs(120)),
        ok,
        format!("{} identities, {comparisons} comparisons, {failures} failures", tallies.len()),
        json!({ "seed": cfg.seed, "identities": tallies.iter().map(Tally::json).collect::<Vec<_>>() }),
    )
}

/// Criterion 7: faces of the Moreau fan correspond to intervals of the
/// face lattice.
pub fn criterion_7(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(cfg.seed ^ 0x7);
    let cases: Vec<(&str, Cone, Option<usize>)> = vec![
        ("quadrant", Cone::orthant(2), Some(9)),
        ("octant", Cone::orthant(3), Some(27)),
        ("random simplicial cone in R^3", random::simplicial_cone(&mut rng, 3), Some(27)),
        ("halfplane", Cone::halfspace(&iv(&[1, 2])), Some(3)),
        ("line in R^3", Cone::subspace(&Subspace::span(3, &[iv(&[1, 1, 0])])), Some(1)),
    ];
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, c, expected) in cases {
        let m = check_moreau_isomorphism(&c);
        let count_ok = expected.is_none_or(|e| m.intervals == e && m.moreau_faces == e);
        ok &= m.holds() && count_ok;
        rows.push(json!({
            "cone": name,
            "intervals": m.intervals,
            "moreau_faces": m.moreau_faces,
            "bijective": m.bijective,
            "order_preserving": m.order_preserving,
            "expected": expected,
        }));
    }
    finish(
        7,
        "Moreau fan and interval poset",
        start,
        None,
        ok,
        format!("{} cones", rows.len()),
        json!({ "seed": cfg.seed, "cones": rows }),
    )
}

/// Criterion 8: cones are recovered from their `V_k` terms, and `V_k` is
/// polar-invariant when `2k = d`.
pub fn criterion_8(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(cfg.seed ^ 0x8);
    let mut ok = true;
    let mut rows = Vec::new();
    for (d, k) in [(3, 1), (4, 1), (4, 3)] {
        let mut recovered = 0;
        for _ in 0..5 {
            let c = random::simplicial_cone(&mut rng, d);
            if recover_cone(&vk_terms(&c, k), k, d).as_ref() == Ok(&c) {
                recovered += 1;
            }
        }
        ok &= recovered == 5;
        rows.push(json!({ "d": d, "k": k, "cones": 5, "recovered": recovered }));
    }
    let mut self_dual = Vec::new();
    for d in [2, 4] {
        let cones = [Cone::orthant(d), random::simplicial_cone(&mut rng, d)];
        for c in &cones {
            let check = self_dual_check(c).expect("even dimension");
            ok &= check.holds;
            self_dual.push(json!({ "d": d, "k": d / 2, "cone": c.to_string(), "equal": check.holds }));
        }
    }
    finish(
        8,
        "cone recovery",
        start,
        None,
        ok,
        format!("{} recovery settings, {} self-dual checks", rows.len(), self_dual.len()),
        json!({ "seed": cfg.seed, "recovery": rows, "self_dual": self_dual }),
    )
}

/// Criterion 9: `V_k(𝒜)` equals `w_k` exactly off the exceptional
/// arrangement and exceeds it on it.
pub fn criterion_9(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(cfg.seed ^ 0x9);
    let cases: Vec<(&str, Arrangement, Option<Vec<IntVector>>)> = vec![
        ("1 line in R^2", lines(&[&[0, 1]]), Some(vec![iv(&[0, 1])])),
        ("2 coordinate lines in R^2", lines(&[&[1, 0], &[0, 1]]), Some(vec![iv(&[0, 1]), iv(&[1, 0])])),
        ("3 lines in R^2", lines(&[&[1, 0], &[0, 1], &[1, 1]]), None),
        ("3 generic planes in R^3", lines(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), None),
    ];
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, a, hand) in cases {
        let d = a.ambient_dim();
        let pi = exceptional_arrangement(&a);
        let list_ok = hand.as_ref().is_none_or(|h| pi.normals() == h.as_slice());
        let w = a.whitney_numbers();
        let vks: Vec<IndicatorElement> = (0..=d).map(|k| vk_arrangement(&a, k)).collect();
        let on_pi = |x: &[num_bigint::BigInt]| pi.normals().iter().any(|n| dot(n, x).is_zero());

        let mut generic = 0;
        let mut generic_ok = true;
        let mut agree = true;
        while generic < 100 {
            let x = random::integer_point(&mut rng, d, 20);
            if on_pi(&x) {
                continue;
            }
            generic += 1;
            generic_ok &= (0..=d).all(|k| vks[k].evaluate_int(&x) == w.coefficient(k));
            agree &= genericity_check(&a, &to_rational(&x)).agrees();
        }

        let mut special = 0;
        let mut exceeds = true;
        for n in pi.normals() {
            for _ in 0..5 {
                let x = random::point_on_hyperplane(&mut rng, n, 20);
                special += 1;
                let values: Vec<i64> = (0..=d).map(|k| vks[k].evaluate_int(&x)).collect();
                let at_least = (0..=d).all(|k| values[k] >= w.coefficient(k));
                let somewhere = (0..=d).any(|k| values[k] > w.coefficient(k));
                exceeds &= at_least && somewhere;
                agree &= genericity_check(&a, &to_rational(&x)).agrees();
            }
        }
        ok &= list_ok && generic_ok && exceeds && agree;
        rows.push(json!({
            "arrangement": name,
            "exceptional_normals": crate::json::integer_vectors_json(pi.normals()),
            "matches_hand_list": hand.as_ref().map(|_| list_ok),
            "generic_points": generic,
            "equals_whitney_off_exceptional": generic_ok,
            "points_on_exceptional": special,
            "exceeds_on_exceptional": exceeds,
            "genericity_criteria_agree": agree,
        }));
    }
    finish(
        9,
        "exceptional arrangement",
        start,
        None,
        ok,
        format!("{} arrangements", rows.len()),
        json!({ "seed": cfg.seed, "arrangements": rows }),
    )
}

/// `k`-singleton: one hyperplane in `span(e_1, …, e_k) ⊆ R^d`.
pub fn singleton(d: usize, k: usize) -> Arrangement {
    let basis: Vec<IntVector> = (0..k)
        .map(|i| {
            let mut e = vec![0i64; d];
            e[i] = 1;
            iv(&e)
        })
        .collect();
    let mut n = vec![0i64; d];
    n[0] = 1;
    Arrangement::new(Subspace::span(d, &basis), &[iv(&n)]).expect("valid singleton")
}

/// Criterion 10: fan-valuation and deletion-restriction identities for
/// `V_k`, and the Whitney decomposition of `v_k` from singleton values.
pub fn criterion_10(cfg: SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(cfg.seed ^ 0x10);
    let mut ok = true;
    let mut rows = Vec::new();
    let n: u64 = 20_000;
    for (name, a, _) in named_arrangements() {
        let d = a.ambient_dim();
        let fan = a.regions();
        let mut fan_checks = 0;
        let mut fan_ok = true;
        let mut delres_checks = 0;
        let mut delres_ok = true;
        let h = loop {
            let h = random::integer_point(&mut rng, d, 3);
            if !h.iter().all(Zero::is_zero) {
                break h;
            }
        };
        for k in 0..=d {
            let phi = VkValuation { k, simple: true };
            let c = check_fan_valuation_identity(&phi, &fan, &h).expect("hyperplane meets the hull");
            fan_checks += 1;
            fan_ok &= c.holds;
            if a.len() >= 2 {
                for normal in a.normals() {
                    let c = check_deletion_restriction(&phi, &a, normal).expect("hyperplane of the arrangement");
                    delres_checks += 1;
                    delres_ok &= c.holds;
                }
            }
        }
        let mut whitney_ok = true;
        let mut whitney = Vec::new();
        for j in 0..=d {
            let phi = IntrinsicVolume { k: j, samples: n, seed: cfg.seed, z: Z };
            let singles: Vec<_> = (1..=d).map(|k| singleton(d, k).regions().evaluate(&phi)).collect();
            let r = whitney_decomposition_check(&phi, &a, &singles).expect("nonempty");
            whitney_ok &= r.holds;
            whitney.push(json!({
                "k": j,
                "predicted": r.predicted.mean,
                "evaluated": r.evaluated.mean,
                "agrees": phi.agrees(&r.predicted, &r.evaluated),
            }));
        }
        ok &= fan_ok && delres_ok && whitney_ok;
        rows.push(json!({
            "arrangement": name,
            "fan_valuation_checks": fan_checks,
            "fan_valuation_holds": fan_ok,
            "deletion_restriction_checks": delres_checks,
            "deletion_restriction_holds": delres_ok,
            "whitney_decomposition": whitney,
            "whitney_decomposition_holds": whitney_ok,
        }));
    }
    finish(
        10,
        "fan valuation identities",
        start,
        None,
        ok,
        format!("{} arrangements", rows.len()),
        json!({ "seed": cfg.seed, "samples_per_cone": n, "z": Z, "arrangements": rows }),
    )
}

pub fn criteria() -> [fn(SuiteConfig) -> Outcome; 10] {
    [
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
    ]
}

pub fn run_all(cfg: SuiteConfig) -> Vec<Outcome> {
    criteria().iter().map(|c| c(cfg)).collect()
}

//! Acceptance suite: every exit criterion of the engine, one test per
//! criterion, each printing a pass line (visible with `--nocapture`).
//! Tolerances are exact — every assertion is an identity of rationals or
//! polynomials — and the stated runtime budgets are enforced.

use hilbsegre_core::errata::detect_errata;
use hilbsegre_core::families::{
    exceptional_check, ml_bundle, rho, tangent_big_threshold, tangent_n0,
    very_ample_order_check, FamilyKind, FamilySpec,
};
use hilbsegre_core::fock::FockEngine;
use hilbsegre_core::poly::{parse_poly, rat, ratio, Poly, Sym};
use hilbsegre_core::positivity::{certify_line_bundle, certify_ml, certify_ulrich};
use hilbsegre_core::surface::{BundleInvariants, SurfaceModel};
use hilbsegre_core::tautsegre::{closed_form, identity_suite, TautBundle, TautSegreEngine};
use std::time::{Duration, Instant};

fn budget(name: &str, start: Instant, max: Duration) {
    let took = start.elapsed();
    assert!(
        took <= max,
        "{name} exceeded its runtime budget: {took:?} > {max:?}"
    );
}

#[test]
fn acceptance_01_identity_suite() {
    let start = Instant::now();
    let report = identity_suite().expect("identity suite runs");
    for c in &report.checks {
        assert!(c.pass, "{} failed:\nlhs: {}rhs: {}", c.label, c.lhs_dump, c.rhs_dump);
    }
    assert_eq!(report.checks.len(), 9);
    budget("identity suite", start, Duration::from_secs(1));
    println!("ACCEPTANCE 01 identity suite (9/9 symbolic in S1, S2): PASS");
}

#[test]
fn acceptance_02_closed_form_oracle_k2() {
    let start = Instant::now();
    let mut eng = TautSegreEngine::new(TautBundle::abstract_symbolic());
    let got = eng.top_integral(2).expect("recursion runs");
    let want = closed_form(
        &Poly::sym(Sym::R),
        &Poly::sym(Sym::S1),
        &Poly::sym(Sym::S2),
        2,
    )
    .unwrap();
    assert_eq!(got, want, "k=2 recursion != closed form");
    budget("k=2 oracle", start, Duration::from_secs(5));
    println!("ACCEPTANCE 02 closed-form oracle k=2 (exact in r, S1, S2): PASS");
}

#[test]
fn acceptance_03_closed_form_oracle_k3() {
    let start = Instant::now();
    let mut eng = TautSegreEngine::new(TautBundle::abstract_symbolic());
    let got = eng.top_integral(3).expect("recursion runs");
    let want = closed_form(
        &Poly::sym(Sym::R),
        &Poly::sym(Sym::S1),
        &Poly::sym(Sym::S2),
        3,
    )
    .unwrap();
    assert_eq!(got, want, "k=3 recursion != closed form");
    budget("k=3 oracle", start, Duration::from_secs(60));
    println!("ACCEPTANCE 03 closed-form oracle k=3 (exact in r, S1, S2): PASS");
}

#[test]
fn acceptance_04_line_bundle_formulas_and_erratum() {
    // symbolic line bundle nH on genus-g K3
    let model = SurfaceModel::k3(Poly::sym(Sym::G));
    let lb = BundleInvariants::line_bundle(Poly::sym(Sym::N), model);
    let bundle = TautBundle::from_invariants(&lb);

    // k = 2: integral equals 2(n^4(g-1)^2 - 5n^2(g-1) + 6) exactly
    let mut eng = TautSegreEngine::new(bundle.clone());
    let got2 = eng.top_integral(2).unwrap();
    let gm1 = &Poly::sym(Sym::G) - &Poly::one();
    let n2 = Poly::sym(Sym::N).pow(2);
    let t = &n2 * &gm1;
    let want2 = (&(&t.pow(2) - &t.scale(&rat(5))) + &Poly::int(6)).scale(&rat(2));
    assert_eq!(got2, want2);

    // k = 3: integral equals the factored form
    // (4/3)(g-1)^3 (n^2 - 4/(g-1))(n^2 - 5/(g-1))(n^2 - 6/(g-1))
    // = (4/3)(t-4)(t-5)(t-6) with t = n^2(g-1)
    let got3 = eng.top_integral(3).unwrap();
    let want3 = (&(&(&t - &Poly::int(4)) * &(&t - &Poly::int(5))) * &(&t - &Poly::int(6)))
        .scale(&ratio(4, 3));
    assert_eq!(got3, want3);

    // the printed k=3 expansion is flagged as a detected erratum
    let errata = detect_errata();
    let e = errata
        .iter()
        .find(|e| e.id == "line-bundle-k3-expansion")
        .expect("erratum present");
    assert!(e.confirmed, "erratum not confirmed by the engine");
    // the printed expansion differs from the engine value
    let printed = parse_poly(&e.printed).unwrap();
    let engine_t = parse_poly(&e.computed).unwrap();
    assert_ne!(printed, engine_t);
    assert_eq!(got3, engine_t.subst_sym(Sym::T, &t));
    println!("ACCEPTANCE 04 line-bundle formulas exact; printed k=3 expansion flagged: PASS");
}

#[test]
fn acceptance_05_spot_values() {
    // each value computed twice: recursion and closed form
    let cases: [(&str, BundleInvariants, u32, i64); 3] = [
        (
            "line n=1 g=7 k=2",
            BundleInvariants::line_bundle(Poly::one(), SurfaceModel::k3_genus(7)),
            2,
            24,
        ),
        (
            "line n=2 g=5 k=3",
            BundleInvariants::line_bundle(Poly::int(2), SurfaceModel::k3_genus(5)),
            3,
            1760,
        ),
        (
            "ML⊗H g=6 r=3 d=6 k=2",
            FamilySpec::ml(6, 3, 6).hilb_bundle().unwrap(),
            2,
            3696,
        ),
    ];
    for (name, inv, k, want) in cases {
        let mut eng = TautSegreEngine::new(TautBundle::from_invariants(&inv));
        let via_recursion = eng.top_integral(k).unwrap();
        assert_eq!(via_recursion, Poly::int(want), "{name} (recursion)");
        let (s1, s2) = inv.segre_from_chern();
        let via_closed = closed_form(&inv.rank, &s1, &s2, k).unwrap();
        assert_eq!(via_closed, Poly::int(want), "{name} (closed form)");
    }
    println!("ACCEPTANCE 05 spot values 24 / 1760 / 3696 by both routes: PASS");
}

#[test]
fn acceptance_06_mukai_arithmetic() {
    // ⟨v(T_X(n)), v(T_X(n))⟩ = 88 and moduli dim 90 for all (g, n):
    // a single symbolic computation covers every pair
    let txn = FamilySpec::empty(FamilyKind::TangentTwist).invariants().unwrap();
    let v = txn.mukai_vector();
    assert_eq!(v.self_pair(), Poly::int(88));
    assert_eq!(v.moduli_dim(), Poly::int(90));

    // ML moduli dim = 2ρ as a polynomial identity in (g, r, d)
    let ml = FamilySpec::empty(FamilyKind::MukaiLazarsfeld).invariants().unwrap();
    let dim = ml.mukai_vector().moduli_dim();
    let two_rho = rho(&Poly::sym(Sym::G), &Poly::sym(Sym::R), &Poly::sym(Sym::D)).scale(&rat(2));
    assert_eq!(dim, two_rho);

    // Ulrich moduli dim = 8a^2 + 2a^2 h + 2 as a polynomial identity
    let ul = FamilySpec::empty(FamilyKind::Ulrich).invariants().unwrap();
    let dim = ul.mukai_vector().moduli_dim();
    assert_eq!(dim, parse_poly("2*a^2*h + 8*a^2 + 2").unwrap());

    // the four exceptional triples have ⟨v, v⟩ = -2
    for (g, r, d) in [(6, 3, 6), (9, 3, 8), (10, 5, 12), (12, 3, 10)] {
        assert!(exceptional_check(g, r, d), "({g},{r},{d}) not exceptional");
        let rep = ml_bundle(g, r, d).unwrap();
        assert_eq!(rep.mukai.self_pair(), Poly::int(-2), "({g},{r},{d})");
    }
    println!("ACCEPTANCE 06 Mukai arithmetic (88/90, 2ρ, Ulrich dim, exceptional -2): PASS");
}

#[test]
fn acceptance_07_threshold_tables() {
    let n0_table = [
        (2, 4),
        (3, 3),
        (4, 2),
        (5, 2),
        (6, 2),
        (7, 2),
        (8, 2),
        (9, 2),
        (10, 1),
        (11, 2),
        (12, 1),
    ];
    for (g, want) in n0_table {
        assert_eq!(tangent_n0(g).unwrap(), want, "n0({g})");
    }
    // the four bigness-threshold cases
    assert_eq!(tangent_big_threshold(2).unwrap(), 5);
    assert_eq!(tangent_big_threshold(3).unwrap(), 4);
    for g in 4..=9 {
        assert_eq!(tangent_big_threshold(g).unwrap(), 3, "g={g}");
    }
    assert_eq!(tangent_big_threshold(11).unwrap(), 3);
    for g in [10, 12, 13, 20, 50] {
        assert_eq!(tangent_big_threshold(g).unwrap(), 2, "g={g}");
    }
    println!("ACCEPTANCE 07 effectivity table and bigness thresholds: PASS");
}

#[test]
fn acceptance_08_ml_alpha_coefficients() {
    // engine's symbolic top integral for (E ⊗ H)^[2] in (r, g, d)
    let inv = FamilySpec::empty(FamilyKind::MukaiLazarsfeld).hilb_bundle().unwrap();
    let bundle = TautBundle::from_invariants(&inv);
    let mut eng = TautSegreEngine::new(bundle);
    let p = eng.top_integral(2).unwrap();
    let by = p.coefficients_in(&[Sym::G, Sym::D]);
    let alpha = |kg: u16, kd: u16| by.get(&vec![kg, kd]).cloned().unwrap_or_default();
    let pp = |s: &str| parse_poly(s).unwrap();
    // all six published coefficients
    assert_eq!(alpha(0, 0), pp("2*r^4 + 23/2*r^3 + 53/2*r^2 + 29*r + 15"));
    assert_eq!(alpha(1, 0), pp("-2*r^4 - 23/2*r^3 - 59/2*r^2 - 38*r - 23"));
    assert_eq!(alpha(0, 1), pp("3/2*r^2 + 9/2*r + 11/2"));
    assert_eq!(alpha(1, 1), pp("-r^2 - 3*r - 4"));
    assert_eq!(alpha(2, 0), pp("r^2 + 3*r + 4").pow(2).scale(&ratio(1, 2)));
    assert_eq!(alpha(0, 2), Poly::frac(1, 2));
    println!("ACCEPTANCE 08 twisted-ML k=2 alpha coefficients match exactly: PASS");
}

#[test]
fn acceptance_09_certificates() {
    let start = Instant::now();

    // Mukai–Lazarsfeld, r = 2..50
    let ml = certify_ml(2, 2, 50).expect("certificate runs");
    assert!(ml.verdict, "{}", ml.summary());
    let symbolic = &ml.legs[0];
    assert!(symbolic.param.contains("symbolic"));
    assert!(symbolic
        .facts
        .iter()
        .any(|f| f.name == "discriminant" && f.value == "0"));
    for leg in &ml.legs[1..] {
        let get = |name: &str| {
            leg.facts
                .iter()
                .find(|f| f.name == name)
                .map(|f| f.value.clone())
                .unwrap_or_default()
        };
        // no roots on the boundary ray of the family domain
        assert_eq!(get("line_roots_g_above_2"), "0", "{}", leg.param);
        // a point of the parabola lies strictly in d > 2g-2 (the margin is
        // part of the leg's pass condition; just require the evidence)
        assert!(!get("halfplane_margin").is_empty(), "{}", leg.param);
        // full-line root freeness holds for every rank except the boundary
        // tangency at r = 2, whose roots 11/6 and 2 lie outside g >= 3
        if leg.param == "r=2" {
            assert_eq!(get("line_roots_full_line"), "2");
            assert_eq!(get("line_roots_g_le_2"), "2");
        } else {
            assert_eq!(get("line_roots_full_line"), "0", "{}", leg.param);
        }
    }

    // Ulrich, a = 1..20, k = 2 and 3, exact max-root brackets below 2
    let width = ratio(1, 1024);
    for k in [2u32, 3] {
        let cert = certify_ulrich(k, 1, 20, &width).expect("certificate runs");
        assert!(cert.verdict, "{}", cert.summary());
        for leg in &cert.legs[1..] {
            let bracket = leg
                .facts
                .iter()
                .find(|f| f.name == "max_root_bracket")
                .unwrap();
            assert!(bracket.value.ends_with(']'), "bracket evidence present");
            assert!(leg
                .facts
                .iter()
                .any(|f| f.name == "bracket_below_2" && f.value == "true"));
        }
        if k == 3 {
            let a1 = cert.legs.iter().find(|l| l.param == "a=1").unwrap();
            let at2 = a1.facts.iter().find(|f| f.name == "value_at_g2").unwrap();
            assert_eq!(at2.value, "146", "k=3 a=1 evidence includes p(2) = 146");
        }
    }

    // line bundles: thresholds sharp at t = 3 (k=2) and t = 6 (k=3)
    for (k, want) in [(2u32, "3"), (3, "6")] {
        let cert = certify_line_bundle(k, None).expect("certificate runs");
        assert!(cert.verdict, "{}", cert.summary());
        let leg = &cert.legs[0];
        let thr = leg.facts.iter().find(|f| f.name == "threshold").unwrap();
        assert_eq!(thr.value, want);
        let at = leg
            .facts
            .iter()
            .find(|f| f.name == "value_at_threshold")
            .unwrap();
        assert_eq!(at.value, "0", "threshold is sharp");
    }

    budget("certificates", start, Duration::from_secs(300));
    println!("ACCEPTANCE 09 certificates (ML r<=50, Ulrich a<=20 k=2,3, line sharp): PASS");
}

#[test]
fn acceptance_10_very_ampleness() {
    for k in [2i64, 3] {
        for g in (2 * k - 1)..=30 {
            for n in 1..=10 {
                let c = very_ample_order_check(g, n, k).unwrap();
                assert!(c.ok, "expected true at g={g} n={n} k={k}");
            }
        }
    }
    let c = very_ample_order_check(2, 1, 2).unwrap();
    assert!(!c.ok, "expected false at g=2 n=1 k=2");
    println!("ACCEPTANCE 10 very-ampleness criterion (g > 2k-2 true; g=2 n=1 k=2 false): PASS");
}

#[test]
fn acceptance_11_consistency_guard() {
    // deterministic pseudo-random numeric bundles: r <= 4, S1, S2 <= 100
    let mut state = 0x2545f4914f6cdd1du64;
    let mut next = move |m: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % m
    };
    for case in 0..6 {
        let r = 1 + next(4) as i64;
        let s1 = next(101) as i64;
        let s2 = next(101) as i64;
        let mut eng = TautSegreEngine::new(TautBundle::numeric(r, s1, s2));
        for k in 0..=4u32 {
            let total = eng.total_segre(k).unwrap();
            for d in 0..=(2 * k) {
                let graded = eng.segre_class(k, d).unwrap();
                assert_eq!(
                    graded, total.classes[&d],
                    "case {case} (r={r} S1={s1} S2={s2}) k={k} d={d}"
                );
            }
        }
        // k = 1 output equals the surface Segre classes
        let b = TautBundle::numeric(r, s1, s2);
        let fock = FockEngine::new(b.model.clone());
        let vac = hilbsegre_core::fock::FockState::vacuum();
        let total = eng.total_segre(1).unwrap();
        assert_eq!(total.classes[&0], fock.apply_q(1, &b.model.unit(), &vac).unwrap());
        assert_eq!(total.classes[&1], fock.apply_q(1, &b.s1, &vac).unwrap());
        assert_eq!(total.classes[&2], fock.apply_q(1, &b.s2, &vac).unwrap());
    }
    println!("ACCEPTANCE 11 recursion self-consistency for k <= 4 and k=1 base case: PASS");
}

#[test]
fn golden_symbolic_outputs() {
    let mut eng = TautSegreEngine::new(TautBundle::abstract_symbolic());
    for k in [2u32, 3] {
        let got = eng.top_integral(k).unwrap();
        let golden = std::fs::read_to_string(format!(
            "{}/tests/golden/segre_k{k}.txt",
            env!("CARGO_MANIFEST_DIR")
        ))
        .expect("golden file present");
        assert_eq!(got.to_string(), golden.trim_end(), "golden k={k}");
        // and the canonical text round-trips
        assert_eq!(parse_poly(golden.trim_end()).unwrap(), got);
    }
}

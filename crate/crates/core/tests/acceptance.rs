//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its headline numbers. Run with `cargo test --test acceptance`.

use std::time::Instant;

use jcubic::clifford;
use jcubic::comp_alg::{
    base_algebra, cayley_dickson, cubic_etale, quadratic_etale, ConicAlgebra, EtaleSpec2,
    EtaleSpec3,
};
use jcubic::cubic_jordan::{
    self, assoc, eq_vec, find_elementary_idempotent, her3, isotope, jomast_map, plus_algebra,
    tits1, tits2, verify_hom, CubicJordan, HomMode, IdempotentSearch,
};
use jcubic::fields::{Field, Scalar};
use jcubic::homogeneity::{self, Homogeneity};
use jcubic::linalg;
use jcubic::quadforms::{self, DEFAULT_BUDGET};
use jcubic::rng::subseed;
use jcubic::valuation;

fn etale2_nonsplit(f: &Field) -> jcubic::comp_alg::EtaleAlgebra {
    if f.characteristic() == 2 {
        // a trace-nontrivial element gives the quadratic field extension
        let b = f
            .elements()
            .map(|els| {
                els.into_iter()
                    .find(|e| !f.is_zero(e) && !f.artin_schreier_trivial(e).unwrap())
                    .expect("nontrivial Artin-Schreier class")
            })
            .unwrap_or_else(|| f.one());
        quadratic_etale(f, EtaleSpec2::ArtinSchreier(b)).unwrap()
    } else if let Some(ns) = f.nonsquare() {
        quadratic_etale(f, EtaleSpec2::SquareRoot(ns)).unwrap()
    } else {
        // rationals: sqrt(-1)
        quadratic_etale(f, EtaleSpec2::SquareRoot(f.int(-1))).unwrap()
    }
}

/// Coordinate algebras of dimensions 1, 2, 4, 8 over the given field.
fn coordinate_algebras(f: &Field) -> Vec<ConicAlgebra> {
    let mut out = vec![];
    let two = etale2_nonsplit(f).to_conic().unwrap();
    if f.characteristic() != 2 {
        out.push(base_algebra(f));
    } else {
        out.push(base_algebra(f)); // dim 1 stays usable as a her3 coordinate
    }
    out.push(two.clone());
    let four = cayley_dickson(&two, &f.int(-1)).unwrap();
    out.push(four.clone());
    out.push(cayley_dickson(&four, &f.int(-1)).unwrap());
    out
}

fn gamma_choices(f: &Field) -> Vec<[Scalar; 3]> {
    // three diagonal choices with nonzero entries in every characteristic
    let units: Vec<Scalar> = match f.elements() {
        Some(els) => els.into_iter().filter(|e| !f.is_zero(e)).take(3).collect(),
        None => vec![f.int(1), f.int(2), f.int(3)],
    };
    let pick = |i: usize| units[i % units.len()].clone();
    vec![
        [f.one(), f.one(), f.one()],
        [pick(1), pick(0), pick(0)],
        [pick(1), pick(2), pick(0)],
    ]
}

fn f125(f5: &Field) -> jcubic::comp_alg::EtaleAlgebra {
    cubic_etale(f5, EtaleSpec3::MinPoly(vec![f5.one(), f5.one(), f5.zero()])).unwrap()
}

fn norm_one_mu(sys: &cubic_jordan::InvolutorialSystem) -> Vec<Scalar> {
    let f = sys.field().clone();
    for a in f.elements().unwrap() {
        for b in f.elements().unwrap() {
            if f.is_zero(&b) {
                continue;
            }
            let cand = vec![a.clone(), b.clone()];
            let n = sys.k_norm(&cand).unwrap();
            if f.is_zero(&n[1]) && n[0] == f.one() {
                return cand;
            }
        }
    }
    panic!("no norm-one element");
}

#[test]
fn criterion_01_jordan_axiom_suite() {
    let started = Instant::now();
    let fields = [
        Field::parse("Fp:5").unwrap(),
        Field::parse("Fp:7").unwrap(),
        Field::parse("Fq:2:3:x^3+x+1").unwrap(),
        Field::parse("Fq:3:2:x^2+1").unwrap(),
        Field::rationals(),
    ];
    let mut algebras: Vec<CubicJordan> = vec![];
    for f in &fields {
        for c in coordinate_algebras(f) {
            for gamma in gamma_choices(f) {
                algebras.push(her3(&c, gamma).unwrap());
            }
        }
        // plus-algebras
        let split3 = cubic_etale(f, EtaleSpec3::SplitTriple).unwrap();
        algebras.push(plus_algebra(&assoc::etale_cubic(&split3).unwrap()).unwrap());
        algebras.push(plus_algebra(&assoc::mat3_cubic(f).unwrap()).unwrap());
        // first Tits constructions (a unit mu valid in every characteristic)
        let a3 = assoc::etale_cubic(&split3).unwrap();
        let mu = gamma_choices(f)[2][0].clone();
        algebras.push(tits1(&a3, &mu).unwrap());
    }
    // second Tits constructions with K a quadratic field over F_5 and F_7
    for p in [5u64, 7] {
        let f = Field::prime(p).unwrap();
        let k = etale2_nonsplit(&f);
        let sys9 = cubic_jordan::etale_system(&f, &k, &f125_like(&f)).unwrap();
        let mu = norm_one_mu(&sys9);
        algebras.push(tits2(&sys9, &sys9.unit().to_vec(), &mu).unwrap());
        let sys27 =
            cubic_jordan::mat3_system(&f, &k, [f.one(), f.int(2), f.one()]).unwrap();
        let mu = norm_one_mu(&sys27);
        algebras.push(tits2(&sys27, &sys27.unit().to_vec(), &mu).unwrap());
    }
    let mut checked = 0usize;
    for j in &algebras {
        // U_1 = id, x## = N(x) x, Hamilton-Cayley, N(U_x y) = N(x)^2 N(y)
        j.validate(100).unwrap_or_else(|e| {
            panic!("axiom suite failed for {}: {e}", j.provenance().label())
        });
        // fundamental formula on random triples
        let f = j.field().clone();
        let mut rng = subseed(1, &format!("acc1-{}-{}", f, j.dim()));
        for _ in 0..100 {
            let x = j.random_vec(&mut rng);
            let y = j.random_vec(&mut rng);
            let z = j.random_vec(&mut rng);
            let uxy = j.u_apply(&x, &y).unwrap();
            let lhs = j.u_apply(&uxy, &z).unwrap();
            let rhs = j
                .u_apply(&x, &j.u_apply(&y, &j.u_apply(&x, &z).unwrap()).unwrap())
                .unwrap();
            assert!(
                eq_vec(&f, &lhs, &rhs),
                "fundamental formula fails for {}",
                j.provenance().label()
            );
        }
        checked += 1;
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 300.0, "axiom suite took {secs:.1}s, budget is 300s");
    println!("PASS criterion 1: Jordan axiom suite on {checked} algebras in {secs:.1}s");
}

/// The cubic field extension when it exists; over F_7, x^3 + 2 works
/// (2 is not a cube mod 7), over F_5 use x^3 + x + 1.
fn f125_like(f: &Field) -> jcubic::comp_alg::EtaleAlgebra {
    match f.characteristic() {
        5 => f125(f),
        7 => cubic_etale(f, EtaleSpec3::MinPoly(vec![f.int(2), f.zero(), f.zero()])).unwrap(),
        _ => cubic_etale(f, EtaleSpec3::SplitTriple).unwrap(),
    }
}

#[test]
fn criterion_02_isotope_u_operator_consistency() {
    let mut count = 0usize;
    for p in [5u64, 7] {
        let f = Field::prime(p).unwrap();
        let mut algebras = vec![];
        for c in coordinate_algebras(&f).into_iter().take(3) {
            algebras.push(her3(&c, [f.one(), f.int(2), f.one()]).unwrap());
        }
        let split3 = cubic_etale(&f, EtaleSpec3::SplitTriple).unwrap();
        algebras.push(tits1(&assoc::etale_cubic(&split3).unwrap(), &f.int(3)).unwrap());
        for j in algebras {
            let mut rng = subseed(2, &format!("acc2-{p}-{}", j.dim()));
            let p_vec = loop {
                let cand = j.random_vec(&mut rng);
                if !f.is_zero(&j.eval_norm(&cand).unwrap()) {
                    break cand;
                }
            };
            let jp = isotope(&j, &p_vec).unwrap();
            for _ in 0..20 {
                let x = j.random_vec(&mut rng);
                let y = j.random_vec(&mut rng);
                let lhs = jp.u_apply(&x, &y).unwrap();
                let rhs = j.u_apply(&x, &j.u_apply(&p_vec, &y).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "U^(p) != U_x U_p at dim {}", j.dim());
            }
            count += 1;
        }
    }
    println!("PASS criterion 2: isotope U-operator agreement on {count} algebras x 20 triples");
}

#[test]
fn criterion_03_jomast_over_f5_square_classes() {
    let f5 = Field::prime(5).unwrap();
    let mut count = 0usize;
    for c in coordinate_algebras(&f5) {
        for g1 in [1i64, 2] {
            for g2 in [1i64, 2] {
                for g3 in [1i64, 2] {
                    let gamma = [f5.int(g1), f5.int(g2), f5.int(g3)];
                    let r = jomast_map(&c, gamma).unwrap_or_else(|e| {
                        panic!("jomast failed at dim C = {}, gamma = ({g1},{g2},{g3}): {e}", c.dim())
                    });
                    // the result is already certificate-checked; confirm the
                    // unit lands on p and that the map is an isomorphism
                    let v = verify_hom(&r.source, &r.target, &r.map, HomMode::Isomorphism, 10)
                        .unwrap();
                    assert!(v.is_yes());
                    count += 1;
                }
            }
        }
    }
    println!("PASS criterion 3: jomast verified for {count} (C, Gamma) pairs over F_5");
}

#[test]
fn criterion_04_redfr_equivalence() {
    for desc in ["Fp:3", "Fp:5", "Fp:7", "Fq:3:2:x^2+1"] {
        let f = Field::parse(desc).unwrap();
        let split2 = quadratic_etale(&f, EtaleSpec2::Split).unwrap().to_conic().unwrap();
        let coords: Vec<ConicAlgebra> = vec![
            base_algebra(&f),
            split2.clone(),
            etale2_nonsplit(&f).to_conic().unwrap(),
            cayley_dickson(&split2, &f.one()).unwrap(),
            cayley_dickson(&cayley_dickson(&split2, &f.one()).unwrap(), &f.one()).unwrap(),
        ];
        for c in &coords {
            let via_h = homogeneity::homogeneous_via_hyperbolicity(c, DEFAULT_BUDGET).unwrap();
            let via_u = homogeneity::homogeneous_via_universality(c, DEFAULT_BUDGET).unwrap();
            assert_eq!(
                via_h.value, via_u.value,
                "(ii)/(iii) disagree over {desc} at dim C = {}",
                c.dim()
            );
            assert_eq!(
                via_h.value,
                Homogeneity::Homogeneous,
                "expected Homogeneous over {desc} at dim C = {}",
                c.dim()
            );
        }
    }
    println!("PASS criterion 4: (ii)- and (iii)-based verdicts agree and are Homogeneous over F_3, F_5, F_7, F_9");
}

#[test]
fn criterion_05_base_field_classifier() {
    let cases: Vec<(&str, Homogeneity)> = vec![
        ("Fp:2", Homogeneity::Homogeneous),
        ("Fq:2:2:x^2+x+1", Homogeneity::Homogeneous),
        ("RatFun:Fp:2:s", Homogeneity::NotHomogeneous),
        ("Q", Homogeneity::NotHomogeneous),
        ("RatFun:Fp:3:s", Homogeneity::NotHomogeneous),
    ];
    for (desc, expect) in cases {
        let f = Field::parse(desc).unwrap();
        let v = homogeneity::her3k_homogeneous(&f, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.value, expect, "classifier over {desc}");
        match desc {
            "Q" => assert!(
                v.certificates.iter().any(|(k, fv)| k.contains("1,1,1,1") && fv.is_no()),
                "Q needs the <1,1,1,1> anisotropy certificate"
            ),
            "RatFun:Fp:3:s" => assert!(
                v.certificates.iter().any(|(k, fv)| k.contains("anisotropic") && fv.is_no()),
                "F_3(s) needs a Springer residue certificate"
            ),
            _ => {}
        }
    }
    println!("PASS criterion 5: base-field classifier with certificates (F_2, F_4, F_2(s), Q, F_3(s))");
}

#[test]
fn criterion_06_first_tits_division_criterion() {
    // over F_7: idempotents exist for every mu
    let f7 = Field::prime(7).unwrap();
    let e = cubic_etale(&f7, EtaleSpec3::SplitTriple).unwrap();
    let a = assoc::etale_cubic(&e).unwrap();
    let mut rng = subseed(6, "acc6-idempotents");
    for mu in 1..7i64 {
        let j = tits1(&a, &f7.int(mu)).unwrap();
        match find_elementary_idempotent(&j, DEFAULT_BUDGET, &mut rng).unwrap() {
            IdempotentSearch::Found(idem) => {
                assert!(eq_vec(&f7, &j.square(&idem).unwrap(), &idem));
                assert!(linalg::is_zero_vec(&f7, &j.eval_sharp(&idem).unwrap()));
                assert_eq!(j.t_linear(&idem).unwrap(), f7.one());
            }
            IdempotentSearch::NotFound { reason } => {
                panic!("no elementary idempotent for mu = {mu}: {reason}")
            }
        }
    }
    // over F_5((t)): 500-sample nonzero-norm certification for J(E, t)
    let l = Field::parse("Laurent:Fp:5:t").unwrap();
    let e = cubic_etale(&l, EtaleSpec3::MinPoly(vec![l.one(), l.one(), l.zero()])).unwrap();
    let a = assoc::etale_cubic(&e).unwrap();
    let t = l.variable().unwrap();
    let j = tits1(&a, &t).unwrap();
    let mut rng = subseed(6, "acc6-division-sampling");
    let mut nonzero = 0usize;
    while nonzero < 500 {
        let x = j.random_lattice_vec(&mut rng);
        if x.iter().all(|c| l.is_zero(c)) {
            continue;
        }
        assert!(
            !l.is_zero(&j.eval_norm(&x).unwrap()),
            "found a nonzero element of norm zero in the ramified division algebra"
        );
        nonzero += 1;
    }
    println!("PASS criterion 6: idempotents for all mu over F_7; 500/500 nonzero norms over F_5((t))");
}

#[test]
fn criterion_07_valuation_suite() {
    let l = Field::parse("Laurent:Fp:5:t").unwrap();
    let e = f125(&l.base_field().map(|_| l.clone()).unwrap());
    let a = assoc::etale_cubic(&e).unwrap();
    let t = l.variable().unwrap();
    // lambda(j_1) = 1/3 exactly on the ramified example
    let j_ram = tits1(&a, &t).unwrap();
    let mut j1 = linalg::zero_vector(&l, 9);
    j1[3] = l.one();
    assert_eq!(
        valuation::lambda_j(&j_ram, &j1).unwrap(),
        Some(num::rational::Ratio::new(1, 3))
    );
    assert_eq!(valuation::ramification(&j_ram).unwrap(), (3, 3));
    let j_unram = tits1(&a, &l.int(2)).unwrap();
    assert_eq!(valuation::ramification(&j_unram).unwrap(), (1, 9));
    // full law suite at 50 samples each, with no precision failures
    let mut rng = subseed(7, "acc7");
    for (j, division) in [(&j_ram, true), (&j_unram, false), (&plus_algebra(&a).unwrap(), true)] {
        let rep = valuation::analyze(j, 50, &mut rng)
            .unwrap_or_else(|e| panic!("precision or analysis failure: {e}"));
        assert!(rep.fundeq_ok, "FUNDEQ fails for {}", j.provenance().label());
        if division {
            assert_eq!(rep.lamsha_ok, Some(true));
            assert_eq!(rep.u_composition_ok, Some(true));
            assert_eq!(rep.ultrametric_ok, Some(true));
            assert_eq!(rep.unit_group_ok, Some(true));
        }
    }
    println!("PASS criterion 7: lambda(j1) = 1/3, (e,f) = (3,3)/(1,9), FUNDEQ + LAMSHA + U-law on 50 samples, 0 precision failures");
}

#[test]
fn criterion_08_gram_determinant_vs_ramification() {
    let l = Field::parse("Laurent:Fp:5:t").unwrap();
    let e = f125(&l);
    let a = assoc::etale_cubic(&e).unwrap();
    let t = l.variable().unwrap();
    let mut rng = subseed(8, "acc8");
    let unram = tits1(&a, &l.int(3)).unwrap();
    let r = valuation::regularity_unramified_check(&unram, 20, &mut rng).unwrap();
    assert_eq!(r.gram_det_val, Some(0), "unramified lattice has unit Gram determinant");
    assert_eq!(r.e, 1);
    assert!(r.equivalence_holds);
    let ram = tits1(&a, &t).unwrap();
    let r = valuation::regularity_unramified_check(&ram, 20, &mut rng).unwrap();
    assert!(r.gram_det_val.unwrap() > 0, "ramified lattice has non-unit Gram determinant");
    assert_eq!(r.e, 3);
    assert!(r.equivalence_holds);
    println!("PASS criterion 8: unit Gram determinant <=> e = 1 on both Laurent examples");
}

#[test]
fn criterion_09_clifford_theorem_sweep() {
    let started = Instant::now();
    let f3 = Field::prime(3).unwrap();
    let mut forms_checked = 0usize;
    let mut points_checked = 0usize;
    for dim in 1..=3usize {
        let reps = clifford::regular_forms_up_to_equivalence(&f3, dim, DEFAULT_BUDGET).unwrap();
        assert!(!reps.is_empty());
        for q in &reps {
            let (_, _, round) = quadforms::d_g_round(q, DEFAULT_BUDGET).unwrap();
            let group = clifford::similitude_group(q, DEFAULT_BUDGET).unwrap();
            let invertibles: Vec<Vec<Scalar>> =
                quadforms::VecEnum::new(f3.elements().unwrap(), dim)
                    .filter(|v| !f3.is_zero(&q.eval(v).unwrap()))
                    .collect();
            for e in clifford::base_points(q).unwrap() {
                let mut orbit: std::collections::BTreeSet<String> = Default::default();
                for g in &group {
                    let img = linalg::mat_vec(&f3, g, &e).unwrap();
                    orbit.insert(
                        img.iter().map(|c| f3.format(c)).collect::<Vec<_>>().join(","),
                    );
                }
                let inv_keys: std::collections::BTreeSet<String> = invertibles
                    .iter()
                    .map(|v| v.iter().map(|c| f3.format(c)).collect::<Vec<_>>().join(","))
                    .collect();
                let homogeneous = orbit == inv_keys;
                // forward: homogeneous => round; converse: round & regular
                // => homogeneous (all representatives here are regular)
                assert!(!homogeneous || round, "homogeneous but not round: {}", q.describe());
                assert!(!round || homogeneous, "round and regular but not homogeneous: {}", q.describe());
                points_checked += 1;
            }
            forms_checked += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 120.0, "sweep took {secs:.1}s, budget is 120s");
    println!(
        "PASS criterion 9: roundness <=> homogeneity on {forms_checked} regular forms / {points_checked} base points over F_3 in {secs:.1}s"
    );
}

#[test]
fn criterion_10_residue_algebra_correctness() {
    let l = Field::parse("Laurent:Fp:5:t").unwrap();
    let base = l.base_field().unwrap();
    let e = f125(&l);
    let a = assoc::etale_cubic(&e).unwrap();
    let e_bar = cubic_etale(
        &base,
        EtaleSpec3::MinPoly(vec![base.one(), base.one(), base.zero()]),
    )
    .unwrap();
    let a_bar = assoc::etale_cubic(&e_bar).unwrap();
    for mu_val in [1i64, 2, 3] {
        let j = tits1(&a, &l.int(mu_val)).unwrap();
        let res = valuation::residue_algebra(&j).unwrap();
        let expected = tits1(&a_bar, &base.int(mu_val)).unwrap();
        let id = linalg::identity(&base, 9);
        let v = verify_hom(&res, &expected, &id, HomMode::Isomorphism, 50).unwrap();
        assert!(v.is_yes(), "mu = {mu_val}: {}", v.evidence);
    }
    println!("PASS criterion 10: residue of J(o_E, mu) is J(E-bar, mu-bar) for three unit choices");
}

#[test]
fn criterion_11_cli_determinism() {
    let exe = env!("CARGO_BIN_EXE_jcubic");
    let doc = "field = Fp:5\nconstruction = her3(cd(F,1,1),gamma=1,2,1)\nseed = 42\ncommand = build\ncommand = verify\ncommand = homogeneity\n";
    let dir = std::env::temp_dir().join(format!("jcubic-acc11-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("doc.txt");
    std::fs::write(&path, doc).unwrap();
    let mut digests = std::collections::HashSet::new();
    for _ in 0..5 {
        let out = std::process::Command::new(exe)
            .args(["run", path.to_str().unwrap()])
            .output()
            .expect("run jcubic");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8_lossy(&out.stdout);
        let digest = text
            .lines()
            .find(|l| l.starts_with("report_digest"))
            .expect("report digest line")
            .to_string();
        digests.insert(digest);
    }
    assert_eq!(digests.len(), 1, "digests differ across runs: {digests:?}");
    println!("PASS criterion 11: identical report digests across 5 CLI runs");
}

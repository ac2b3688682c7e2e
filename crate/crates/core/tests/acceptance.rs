//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `--nocapture`; the per-test ok/FAILED line carries the same
//! verdict). Every tolerance here is an exact identity — no floats anywhere.
//!
//! Heavy towers are shared between criteria through lazy fixtures; the
//! fixture build time is charged against the criterion that owns the stated
//! budget.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use qma_core::matrix::echelon::solve_in_span;
use qma_core::poly::MonicPolynomial;
use qma_core::report::{run_tower, BackendSpec, RMatrixSpec, RunSpec};
use qma_core::scalar::{prime_sequence, to_prime_field, PrimeField, QValue, Rational, Rationals};
use qma_core::tower::conformance::{expected_root_set, root_conformance, RootVerdict};
use qma_core::tower::{classical_oracle, coefficients_s3, SymmetrizerTower, TowerOptions};
use qma_core::{flip, re_twist, rtt_twist, standard_glq, Field, SquareMatrix, TwistKind};

const TEST_QS: [&str; 2] = ["3/2", "7/5"];

fn q(s: &str) -> QValue {
    QValue::parse(s).unwrap()
}

fn r(s: &str) -> Rational {
    Rational::parse(s).unwrap()
}

struct TimedTower {
    tower: SymmetrizerTower<Rationals>,
    build_time: Duration,
}

fn rational_tower_fixture(qs: &str) -> &'static TimedTower {
    static T32: OnceLock<TimedTower> = OnceLock::new();
    static T75: OnceLock<TimedTower> = OnceLock::new();
    let cell = match qs {
        "3/2" => &T32,
        "7/5" => &T75,
        _ => panic!("unknown fixture"),
    };
    cell.get_or_init(|| {
        let start = Instant::now();
        let h = standard_glq(&Rationals, 2, &q(qs)).unwrap();
        let t = rtt_twist(&h).unwrap();
        let tower = SymmetrizerTower::build(t, &TowerOptions::to_level(5)).unwrap();
        TimedTower { tower, build_time: start.elapsed() }
    })
}

fn classical_tower_fixture() -> &'static TimedTower {
    static T: OnceLock<TimedTower> = OnceLock::new();
    T.get_or_init(|| {
        let start = Instant::now();
        let h = flip(&Rationals, 2).unwrap();
        let t = rtt_twist(&h).unwrap();
        let tower = SymmetrizerTower::build(t, &TowerOptions::to_level(5)).unwrap();
        TimedTower { tower, build_time: start.elapsed() }
    })
}

fn report(criterion: &str, elapsed: Duration, budget: Duration, detail: &str) {
    println!(
        "criterion {criterion}: PASS — {detail} ({elapsed:.2?} of {budget:.0?} budget)"
    );
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its runtime budget: {elapsed:.2?} > {budget:.0?}"
    );
}

#[test]
fn criterion_01_hecke_validation() {
    let start = Instant::now();
    for n in [2usize, 3] {
        for qs in TEST_QS {
            let per = Instant::now();
            let h = standard_glq(&Rationals, n, &q(qs)).unwrap();
            assert_eq!(h.matrix().dim(), n * n);
            assert!(
                per.elapsed() < Duration::from_secs(5),
                "validation of glq({n}) at q={qs} took {:?}",
                per.elapsed()
            );
        }
    }
    report(
        "01 hecke-validation",
        start.elapsed(),
        Duration::from_secs(20),
        "glq(N) exactly satisfies braid and Hecke relations for N in {2,3}, q in {3/2,7/5}",
    );
}

#[test]
fn criterion_02_twist_spectrum() {
    let start = Instant::now();
    for qs in TEST_QS {
        let qv = q(qs);
        let h = standard_glq(&Rationals, 2, &qv).unwrap();
        let twist = rtt_twist(&h).unwrap();
        let mp = twist.matrix().minimal_polynomial().unwrap();
        let q_rat = qv.rational().clone();
        let q_sq = &q_rat * &q_rat;
        let expected = MonicPolynomial::from_roots(
            Rationals,
            &[r("1"), -&q_sq, -&q_sq.recip().unwrap()],
        );
        assert_eq!(mp, expected, "twist spectrum at q={qs}");
    }
    report(
        "02 twist-spectrum",
        start.elapsed(),
        Duration::from_secs(10),
        "minimal polynomial of the rtt twist is exactly (x-1)(x+q^2)(x+q^-2)",
    );
}

#[test]
fn criterion_03_level3_minimal_polynomial() {
    let start = Instant::now();
    for qs in TEST_QS {
        let h = standard_glq(&Rationals, 2, &q(qs)).unwrap();
        let tower =
            SymmetrizerTower::build(rtt_twist(&h).unwrap(), &TowerOptions::to_level(3)).unwrap();
        let level = tower.level(3).unwrap();
        let m = level.m.as_ref().unwrap();
        assert_eq!(m.degree(), 4, "q={qs}");
        let expected_roots = expected_root_set(3, &q(qs)).unwrap();
        let expected = MonicPolynomial::from_roots(Rationals, &expected_roots);
        assert_eq!(m, &expected, "q={qs}");
        if qs == "3/2" {
            // Frozen nontrivial roots at q = 3/2 (2_q = 13/6).
            for root in ["36/169", "9409/28561"] {
                assert!(m.evaluate(&r(root)).is_zero(), "missing root {root}");
            }
        }
    }
    report(
        "03 level-3 minimal polynomial",
        start.elapsed(),
        Duration::from_secs(30),
        "m at level 3 has degree 4 and the exact published roots at both test q",
    );
}

#[test]
fn criterion_04_level4_root_table() {
    let start = Instant::now();
    for qs in TEST_QS {
        let h = standard_glq(&Rationals, 2, &q(qs)).unwrap();
        let tower =
            SymmetrizerTower::build(rtt_twist(&h).unwrap(), &TowerOptions::to_level(4)).unwrap();
        let level = tower.level(4).unwrap();
        let m = level.m.as_ref().unwrap();
        assert_eq!(m.degree(), 5, "q={qs}");
        let expected = MonicPolynomial::from_roots(Rationals, &expected_root_set(4, &q(qs)).unwrap());
        assert_eq!(m, &expected, "q={qs}");
    }
    report(
        "04 level-4 root table",
        start.elapsed(),
        Duration::from_secs(300),
        "m at level 4 has degree 5 and the exact published roots at both test q",
    );
}

#[test]
fn criterion_05_level5_root_table_both_backends() {
    // Rational arm: exact identity within the 60-minute budget.
    let fixture = rational_tower_fixture("3/2");
    let level = fixture.tower.level(5).unwrap();
    let m = level.m.as_ref().unwrap();
    assert_eq!(m.degree(), 6);
    let expected = MonicPolynomial::from_roots(Rationals, &expected_root_set(5, &q("3/2")).unwrap());
    assert_eq!(m, &expected);
    assert!(
        fixture.build_time < Duration::from_secs(3600),
        "rational tower build took {:?}",
        fixture.build_time
    );

    // Multi-prime arm: two distinct primes within the 10-minute budget.
    let start = Instant::now();
    let primes = [2305843009213693951u64, prime_sequence(0)];
    assert_ne!(primes[0], primes[1]);
    let mut degrees = Vec::new();
    for p in primes {
        let field = PrimeField::new_backend(p).unwrap();
        let h = standard_glq(&field, 2, &q("3/2")).unwrap();
        let t = rtt_twist(&h).unwrap();
        let tower = SymmetrizerTower::build(t, &TowerOptions::to_level(5)).unwrap();
        let level = tower.level(5).unwrap();
        let m_p = level.m.as_ref().unwrap();
        degrees.push(m_p.degree());
        // The images of the expected rational roots annihilate m mod p.
        for root in expected_root_set(5, &q("3/2")).unwrap() {
            let image = to_prime_field(&root, p).unwrap().residue();
            assert!(field.is_zero(&m_p.evaluate(&image)), "root image mod {p}");
        }
        assert_eq!(
            root_conformance(&field, m_p, 5, &q("3/2")).unwrap(),
            RootVerdict::Match
        );
    }
    assert_eq!(degrees, vec![6, 6], "both primes agree on the degree");
    let multi_elapsed = start.elapsed();
    assert!(multi_elapsed < Duration::from_secs(600));
    println!(
        "criterion 05 level-5 root table: PASS — rational backend {:.2?} (60 min budget), two-prime backend {:.2?} (10 min budget), degree 6, exact published roots",
        fixture.build_time, multi_elapsed
    );
}

#[test]
fn criterion_06_simple_root_conjecture() {
    for qs in TEST_QS {
        let fixture = rational_tower_fixture(qs);
        for level in fixture.tower.levels() {
            if let Some(m) = &level.m {
                assert_eq!(
                    m.root_multiplicity(&r("1")),
                    1,
                    "level {} at q={qs}",
                    level.n
                );
                assert_eq!(level.one_simple_root, Some(true));
            }
        }
    }
    println!(
        "criterion 06 simple-root conjecture: PASS — 1 is a simple root of every level minimal polynomial in criteria 3-5 (exit 3 never taken)"
    );
}

#[test]
fn criterion_07_q1_collapse() {
    let fixture = classical_tower_fixture();
    let start = Instant::now();
    for n in 3..=5usize {
        let level = fixture.tower.level(n).unwrap();
        let m = level.m.as_ref().unwrap();
        assert_eq!(m.degree(), 3, "level {n}");
        let collapse = Rational::from_integers(1, ((n - 1) * (n - 1)) as i64).unwrap();
        let expected = MonicPolynomial::from_roots(Rationals, &[r("0"), r("1"), collapse]);
        assert_eq!(m, &expected, "level {n}");
    }
    let elapsed = start.elapsed() + fixture.build_time;
    report(
        "07 q=1 collapse",
        elapsed,
        Duration::from_secs(300),
        "flip(2) tower to level 5 has degree-3 polynomials with roots {0, 1, 1/(n-1)^2}",
    );
}

#[test]
fn criterion_08_oracle_equivalence() {
    let fixture = classical_tower_fixture();
    let start = Instant::now();
    for level in fixture.tower.levels() {
        let oracle = classical_oracle(level.n, 2).unwrap();
        assert_eq!(level.s, oracle, "level {} differs from the brute-force average", level.n);
    }
    let elapsed = start.elapsed() + fixture.build_time;
    report(
        "08 oracle equivalence",
        elapsed,
        Duration::from_secs(600),
        "recursion-built S(n) equals the permutation average entrywise for n <= 5 at q = 1",
    );
}

#[test]
fn criterion_09_dimension_stability() {
    let mut build_total = Duration::ZERO;
    for qs in TEST_QS {
        let fixture = rational_tower_fixture(qs);
        build_total += fixture.build_time;
        let dims: Vec<usize> = fixture.tower.levels().iter().map(|l| l.dimension).collect();
        assert_eq!(dims, vec![10, 20, 35, 56], "q={qs}");
        for level in fixture.tower.levels() {
            // dimension was verified rank = trace at build; re-check trace.
            assert_eq!(level.s.trace(), Rational::from_i64(level.dimension as i64));
            assert!(level.s.is_idempotent());
        }
        let rows = fixture.tower.dimension_report();
        assert!(rows.iter().all(|row| row.matches_classical), "q={qs}");
    }
    report(
        "09 dimension stability",
        build_total,
        Duration::from_secs(3600),
        "trace = rank = {10, 20, 35, 56} for n = 2..5 at both test q, matching C(n+3,3)",
    );
}

#[test]
fn criterion_10_s3_expansion_coefficients() {
    let start = Instant::now();
    // Independent group-algebra oracle: the left-regular representation of
    // the symmetric group on three letters.
    let (alpha, beta, gamma) = regular_representation_oracle();
    assert_eq!(alpha, r("4/3"));
    assert_eq!(beta, r("-1/3"));
    assert_eq!(gamma, r("0"));

    // The tower solve reproduces the oracle at q = 1 ...
    let h = flip(&Rationals, 2).unwrap();
    let tower = SymmetrizerTower::build(rtt_twist(&h).unwrap(), &TowerOptions::to_level(3)).unwrap();
    let coeffs = coefficients_s3(&tower).unwrap();
    assert_eq!(coeffs.alpha, alpha);
    assert_eq!(coeffs.beta, beta);
    assert_eq!(coeffs.gamma, gamma);
    assert_eq!(coeffs.sum, r("1"));

    // ... and reconstructs S(3) exactly at both generic q (verified inside
    // coefficients_s3), with coefficients summing to 1.
    for qs in TEST_QS {
        let h = standard_glq(&Rationals, 2, &q(qs)).unwrap();
        let tower =
            SymmetrizerTower::build(rtt_twist(&h).unwrap(), &TowerOptions::to_level(3)).unwrap();
        let coeffs = coefficients_s3(&tower).unwrap();
        assert_eq!(coeffs.sum, r("1"), "q={qs}");
        assert!(!coeffs.degenerate, "q={qs}");
    }
    report(
        "10 S(3) expansion coefficients",
        start.elapsed(),
        Duration::from_secs(60),
        "coefficients reconstruct S(3) exactly, sum to 1, and equal (4/3, -1/3, 0) at q = 1",
    );
}

#[test]
fn criterion_11_factor_interchange() {
    let start = Instant::now();
    for qs in TEST_QS {
        let h = standard_glq(&Rationals, 2, &q(qs)).unwrap();
        let tower =
            SymmetrizerTower::build(rtt_twist(&h).unwrap(), &TowerOptions::to_level(4)).unwrap();
        // Building levels 3 and 4 records the interchange outcome for the
        // overlapped products of levels 2 and 3.
        for n in [3usize, 4] {
            let level = tower.level(n).unwrap();
            assert_eq!(
                level.checks.factor_interchange,
                Some(true),
                "interchange into level {n} at q={qs}"
            );
        }
        // And the standalone re-check agrees.
        for n in [2usize, 3] {
            assert!(
                qma_core::check_factor_interchange(&tower, n).unwrap(),
                "re-check at level {n}, q={qs}"
            );
        }
    }
    report(
        "11 factor interchange",
        start.elapsed(),
        Duration::from_secs(300),
        "p(AB)/kappa = p(BA)/kappa exactly for the overlapped products at levels 2 and 3, both q",
    );
}

#[test]
fn criterion_12_reflection_equation_extension() {
    let start = Instant::now();
    // The RE twist collapses to the RTT twist for the flip.
    let h1 = flip(&Rationals, 2).unwrap();
    assert_eq!(
        re_twist(&h1).unwrap().matrix(),
        rtt_twist(&h1).unwrap().matrix()
    );

    // The RE tower builds to level 3 with simple roots and idempotent levels.
    let h = standard_glq(&Rationals, 2, &q("3/2")).unwrap();
    let twist = re_twist(&h).unwrap();
    assert_eq!(twist.kind(), TwistKind::Re);
    let tower = SymmetrizerTower::build(twist, &TowerOptions::to_level(3)).unwrap();
    for level in tower.levels() {
        assert!(level.checks.idempotent);
        assert!(level.s.is_idempotent());
        if level.n >= 3 {
            let m = level.m.as_ref().unwrap();
            assert_eq!(m.root_multiplicity(&r("1")), 1);
        }
    }
    assert!(tower.all_checks_pass());
    report(
        "12 reflection-equation extension",
        start.elapsed(),
        Duration::from_secs(600),
        "re twist equals rtt twist on the flip; RE tower reaches level 3 with simple roots",
    );
}

/// Spec invariant behind criteria 3–5: the exact root multiset of every
/// level polynomial equals the published formulas at both test q values.
#[test]
fn invariant_root_tables_hold_at_both_q() {
    for qs in TEST_QS {
        let fixture = rational_tower_fixture(qs);
        for n in [3usize, 4, 5] {
            let level = fixture.tower.level(n).unwrap();
            let m = level.m.as_ref().unwrap();
            assert_eq!(
                root_conformance(&Rationals, m, n, &q(qs)).unwrap(),
                RootVerdict::Match,
                "level {n} at q={qs}"
            );
        }
    }
    println!("invariant root-tables: PASS — levels 3-5 match the published systems at q in {{3/2, 7/5}}");
}

/// Multi-prime driver agreement, exercised through the same entry point the
/// CLI uses (also covers the deterministic cross-check report).
#[test]
fn multiprime_driver_agreement() {
    let spec = RunSpec {
        command: "tower".into(),
        rmatrix: RMatrixSpec::Glq { n: 2 },
        q: q("3/2"),
        kind: TwistKind::Rtt,
        n_max: 4,
        backend: BackendSpec::MultiPrime(2305843009213693951, prime_sequence(0)),
        format: "json".into(),
        full_checks: false,
    };
    let report = run_tower(&spec).unwrap();
    let cross = report.canonical.cross_check.as_ref().unwrap();
    assert!(cross.agree);
    assert!(report.all_pass());
    assert_eq!(report.canonical.verdicts.m3, "match");
    assert_eq!(report.canonical.verdicts.m4, "match");
}

/// The S₃ group-algebra expansion of the full symmetrizer over
/// {S₁₂S₂₃S₁₂S₂₃S₁₂, S₁₂S₂₃S₁₂, S₁₂}, solved in the left-regular
/// representation — independent of every tower code path.
fn regular_representation_oracle() -> (Rational, Rational, Rational) {
    type Perm = [usize; 3];
    fn compose(a: Perm, b: Perm) -> Perm {
        // (a∘b)(x) = a(b(x))
        [a[b[0]], a[b[1]], a[b[2]]]
    }
    let elements: Vec<Perm> = vec![
        [0, 1, 2],
        [1, 0, 2], // s1
        [0, 2, 1], // s2
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: Perm| elements.iter().position(|e| *e == p).unwrap();
    let regular = |g: Perm| -> SquareMatrix<Rationals> {
        SquareMatrix::from_fn(Rationals, 6, |row, col| {
            if index(compose(g, elements[col])) == row {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    };
    let half = r("1/2");
    let s12 = regular([0, 1, 2]).add(&regular([1, 0, 2])).unwrap().scale(&half);
    let s23 = regular([0, 1, 2]).add(&regular([0, 2, 1])).unwrap().scale(&half);
    let mut sym = SquareMatrix::zeros(Rationals, 6);
    for g in &elements {
        sym = sym.add(&regular(*g)).unwrap();
    }
    let sym = sym.scale(&r("1/6"));

    let pair = s12.multiply(&s23).unwrap();
    let b = pair.multiply(&s12).unwrap();
    let a = pair.multiply(&b).unwrap();
    let basis = [a.entries().to_vec(), b.entries().to_vec(), s12.entries().to_vec()];
    let solve = solve_in_span(&Rationals, &basis, sym.entries()).expect("expansion exists");
    assert!(solve.degenerate, "the three basis elements are dependent at q = 1");
    let mut it = solve.coefficients.into_iter();
    (it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
}

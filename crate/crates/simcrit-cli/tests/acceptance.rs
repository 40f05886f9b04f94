//! Acceptance suite: one test per release criterion, each printing a
//! pass line (run with `cargo test --test acceptance -- --nocapture` to
//! see them). Tolerances are pinned here, in code.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simcrit::rational::{int, ratio, to_f64, Rational};
use simcrit::{
    audit_preset, check_basis, check_similarity, compare_materials, cramer_derivation,
    default_registry, derive_exponents_cramer, derive_exponents_nullspace, derive_pi_groups,
    estimate_print_time, implied_rate, reference_print_times, slm_preset, AccuracyClass,
    BasisSelection, CaseAssignment, DimensionSystem, DimensionVector, DimensionalMatrix, PiError,
    PiGroup, Quantity,
};
use std::path::PathBuf;
use std::time::{Duration, Instant};

#[test]
fn criterion_01_basis_determinant_is_exactly_three_within_a_millisecond() {
    let (matrix, basis) = slm_preset();
    // warm-up, then best of ten timed runs
    for _ in 0..3 {
        let _ = check_basis(&matrix, &basis).unwrap();
    }
    let mut best = Duration::MAX;
    let mut determinant = None;
    for _ in 0..10 {
        let start = Instant::now();
        let check = check_basis(&matrix, &basis).unwrap();
        best = best.min(start.elapsed());
        determinant = Some(check.determinant);
    }
    assert_eq!(determinant.unwrap(), int(3));
    assert!(best < Duration::from_millis(1), "took {best:?}");
    println!("[PASS] criterion 1: basis determinant = 3 in {best:?}");
}

#[test]
fn criterion_02_row_replacement_determinants_and_final_exponents() {
    let (matrix, basis) = slm_preset();

    let density = cramer_derivation(&matrix, &basis, matrix.index_of("ρ").unwrap()).unwrap();
    assert_eq!(density.basis_determinant, int(3));
    assert_eq!(
        density.replacement_determinants,
        vec![int(-6), int(-1), int(-3), int(-3)]
    );
    assert_eq!(
        density.exponents,
        vec![int(-2), ratio(-1, 3), int(-1), int(-1)]
    );

    let power = cramer_derivation(&matrix, &basis, matrix.index_of("E").unwrap()).unwrap();
    assert_eq!(
        power.replacement_determinants,
        vec![int(-9), int(2), int(0), int(0)]
    );
    assert_eq!(
        power.exponents,
        vec![int(-3), ratio(2, 3), int(0), int(0)]
    );
    println!("[PASS] criterion 2: replacement determinants and final exponents match exactly");
}

#[test]
fn criterion_03_corrected_mass_group_and_detection_of_the_published_error() {
    let (matrix, basis) = slm_preset();
    let target = matrix.index_of("M").unwrap();
    let expected = vec![int(-2), ratio(2, 3), int(-1), int(-1)];

    let cramer = derive_exponents_cramer(&matrix, &basis, target).unwrap();
    let nullspace = derive_exponents_nullspace(&matrix, &basis, target).unwrap();
    assert_eq!(cramer, expected);
    assert_eq!(nullspace, expected);
    assert_eq!(cramer, nullspace);

    let group = PiGroup::from_exponents(&matrix, &basis, target, expected).unwrap();
    assert!(matrix
        .net_dimensions(group.monomial())
        .unwrap()
        .is_dimensionless());

    // The published monomial M¹·t_c³·V^(2/3)·z¹ must be rejected, both as
    // a raw exponent vector and as a candidate group (k = (-3, -2/3, 0, -1)).
    let published_monomial = vec![
        int(3),        // t_c
        ratio(2, 3),   // V
        int(0),        // T
        int(1),        // z
        int(0),        // ρ
        int(0),        // E
        int(1),        // M
    ];
    let net = matrix.net_dimensions(&published_monomial).unwrap();
    assert!(!net.is_dimensionless(), "published monomial must fail, net = {net}");

    let rejected = PiGroup::from_exponents(
        &matrix,
        &basis,
        target,
        vec![int(-3), ratio(-2, 3), int(0), int(-1)],
    );
    assert!(matches!(rejected, Err(PiError::NotDimensionless { .. })));
    println!("[PASS] criterion 3: corrected mass group agrees across routes; published monomial rejected");
}

#[test]
fn criterion_04_buckingham_count_three_groups_from_seven_quantities() {
    let (matrix, basis) = slm_preset();
    let groups = derive_pi_groups(&matrix, &basis).unwrap();
    assert_eq!(matrix.len(), 7);
    assert_eq!(matrix.rank(), 4);
    assert_eq!(groups.len(), 3);
    assert_eq!(groups.len(), matrix.len() - matrix.rank());
    println!("[PASS] criterion 4: 7 quantities, rank 4, exactly 3 groups");
}

#[test]
fn criterion_05_fuzzed_systems_stay_dimensionless_and_routes_agree() {
    const SYSTEMS: usize = 500;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x51_6d_c7_17);
    let mut emitted_groups = 0usize;
    let mut singular = 0usize;

    for _ in 0..SYSTEMS {
        let dims = rng.random_range(1..=5usize);
        let quantity_count = rng.random_range(dims..=10usize);
        let system = DimensionSystem::new((0..dims).map(|i| format!("D{i}"))).unwrap();
        let quantities: Vec<Quantity> = (0..quantity_count)
            .map(|i| {
                let exponents: Vec<Rational> = (0..dims)
                    .map(|_| {
                        let numer = rng.random_range(-4i64..=4);
                        let denom = *[1i64, 2, 3].choose(&mut rng).unwrap();
                        ratio(numer, denom)
                    })
                    .collect();
                Quantity::new(
                    format!("q{i}"),
                    format!("fuzzed {i}"),
                    DimensionVector::new(&system, exponents).unwrap(),
                )
            })
            .collect();
        let matrix = DimensionalMatrix::new(system, quantities).unwrap();
        let mut order: Vec<usize> = (0..quantity_count).collect();
        order.shuffle(&mut rng);
        let basis = BasisSelection::new(order[..dims].to_vec(), &matrix).unwrap();

        let check = check_basis(&matrix, &basis).unwrap();
        if !check.independent {
            singular += 1;
            assert!(matches!(
                derive_pi_groups(&matrix, &basis),
                Err(PiError::SingularBasis)
            ));
            continue;
        }
        let groups = derive_pi_groups(&matrix, &basis).unwrap();
        assert_eq!(groups.len(), quantity_count - dims);
        for group in &groups {
            let net = matrix.net_dimensions(group.monomial()).unwrap();
            assert!(net.is_dimensionless(), "net = {net}");
            let cramer = derive_exponents_cramer(&matrix, &basis, group.target_index()).unwrap();
            let nullspace =
                derive_exponents_nullspace(&matrix, &basis, group.target_index()).unwrap();
            assert_eq!(cramer, nullspace, "routes disagree");
            emitted_groups += 1;
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    assert!(emitted_groups > 0);
    println!(
        "[PASS] criterion 5: {SYSTEMS} systems ({singular} singular), {emitted_groups} groups, all exact, in {elapsed:?}"
    );
}

#[test]
fn criterion_06_pi_values_survive_dimension_scaling_within_1e9() {
    const CASES: usize = 100;
    const TOLERANCE: f64 = 1e-9;
    let (matrix, basis) = slm_preset();
    let groups = derive_pi_groups(&matrix, &basis).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);

    for _ in 0..CASES {
        let values: Vec<f64> = (0..matrix.len())
            .map(|_| 10f64.powf(rng.random_range(-2.0..=2.0)))
            .collect();
        let lambdas: Vec<f64> = (0..matrix.system().arity())
            .map(|_| rng.random_range(0.1..=10.0))
            .collect();
        let base = CaseAssignment::from_pairs(
            "base",
            matrix
                .quantities()
                .iter()
                .zip(&values)
                .map(|(q, &v)| (q.symbol.clone(), v)),
        )
        .unwrap();
        let scaled = CaseAssignment::from_pairs(
            "scaled",
            matrix.quantities().iter().zip(&values).map(|(q, &v)| {
                let factor: f64 = q
                    .dims
                    .exponents()
                    .iter()
                    .zip(&lambdas)
                    .map(|(e, l)| l.powf(to_f64(e)))
                    .product();
                (q.symbol.clone(), v * factor)
            }),
        )
        .unwrap();
        let report = check_similarity(&groups, &matrix, &base, &scaled, TOLERANCE).unwrap();
        assert!(
            report.similar,
            "λ = {lambdas:?}, deviations: {:?}",
            report
                .groups
                .iter()
                .map(|g| g.relative_deviation)
                .collect::<Vec<_>>()
        );
    }
    println!("[PASS] criterion 6: {CASES} scaled cases invariant within {TOLERANCE:e}");
}

#[test]
fn criterion_07_reference_table_round_trips_and_flags_the_bearing_rate() {
    let table = reference_print_times();
    let mut cells = 0;
    for row in table.rows() {
        for class in AccuracyClass::ALL {
            let hours = row.hours(class);
            let rate = implied_rate(row.volume_cm3, hours).unwrap();
            let estimate = estimate_print_time(row.volume_cm3, rate).unwrap();
            assert!(
                (estimate.hours - hours).abs() <= 0.05,
                "{} class {}: {} vs {}",
                row.part_name,
                class.label(),
                estimate.hours,
                hours
            );
            cells += 1;
        }
    }
    assert_eq!(cells, 12);

    // bearing, class A: implied 2.9/0.4 = 7.25 < 10 → warning
    let bearing = &table.rows()[0];
    let rate = implied_rate(bearing.volume_cm3, bearing.hours_a).unwrap();
    assert!((rate - 7.25).abs() < 1e-12);
    let estimate = estimate_print_time(bearing.volume_cm3, rate).unwrap();
    assert!(estimate.rate_warning.is_some(), "7.25 cm³/h must warn");

    // wheel, class A: implied 81/8 = 10.125 is inside the range → no warning
    let wheel = &table.rows()[1];
    let rate = implied_rate(wheel.volume_cm3, wheel.hours_a).unwrap();
    let estimate = estimate_print_time(wheel.volume_cm3, rate).unwrap();
    assert!(estimate.rate_warning.is_none());
    println!("[PASS] criterion 7: 12 cells round-trip within ±0.05 h; bearing class A warns");
}

#[test]
fn criterion_08_comparison_ratios_display_as_published() {
    let strength = compare_materials(
        1.23,
        0.291,
        "ТНМ20",
        "сталь 40Х",
        "safety factor",
        true,
        2,
    )
    .unwrap();
    assert_eq!(strength.display_ratio, "4.2");
    assert_eq!(strength.better, "ТНМ20");

    let displacement = compare_materials(
        0.0787,
        0.0472,
        "сталь 40Х",
        "ТНМ20",
        "maximum displacement",
        false,
        3,
    )
    .unwrap();
    assert_eq!(displacement.display_ratio, "1.67");
    assert_eq!(displacement.better, "ТНМ20");
    println!("[PASS] criterion 8: ratios display as 4.2 and 1.67");
}

#[test]
fn criterion_09_preset_audit_flags_exactly_power_and_specific_heat() {
    let (matrix, _) = slm_preset();
    let records = audit_preset(&matrix, &default_registry());
    assert_eq!(records.len(), 7);
    let mut mismatched: Vec<&str> = records
        .iter()
        .filter(|r| !r.matches)
        .map(|r| r.symbol.as_str())
        .collect();
    mismatched.sort();
    assert_eq!(mismatched, vec!["E", "z"]);
    let matched = records.iter().filter(|r| r.matches).count();
    assert_eq!(matched, 5);
    println!("[PASS] criterion 9: audit flags exactly {{E, z}}; the other five match");
}

#[test]
fn criterion_10_cli_contract_golden_report_and_exit_codes() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let bin = env!("CARGO_BIN_EXE_simcrit");
    let problem = manifest.join("assets/slm.problem");

    let output = std::process::Command::new(bin)
        .args(["pi", "derive", problem.to_str().unwrap(), "--json", "-"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let golden = std::fs::read(manifest.join("tests/golden/slm_derive.json")).unwrap();
    assert_eq!(
        output.stdout, golden,
        "JSON derivation report drifted from the golden bytes"
    );

    let expect_code = |args: &[&str], code: i32| {
        let output = std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs");
        assert_eq!(
            output.status.code(),
            Some(code),
            "args {args:?}, stderr: {}",
            String::from_utf8_lossy(&output.stderr)
        );
    };
    let fixture = |name: &str| {
        manifest
            .join("tests/fixtures")
            .join(name)
            .to_str()
            .unwrap()
            .to_string()
    };
    expect_code(&["pi", "derive", &fixture("missing.problem")], 1);
    expect_code(&["pi", "derive", &fixture("bad_schema.problem")], 2);
    expect_code(&["pi", "derive", &fixture("dependent_basis.problem")], 3);
    expect_code(&["pi", "derive", &fixture("inconsistent.problem")], 4);
    expect_code(
        &[
            "similarity",
            "check",
            &fixture("slm_si.problem"),
            &fixture("case_base.json"),
            &fixture("case_double.json"),
        ],
        5,
    );
    println!("[PASS] criterion 10: golden JSON stable; exit codes 1–5 each exercised");
}

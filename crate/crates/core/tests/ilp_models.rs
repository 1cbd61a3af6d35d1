mod common;

use bbqp::heuristics::{round_x_optimize_y, round_y_optimize_x};
use bbqp::ilp::{
    emit_ilp1, emit_ilp2, fractional_to_text, ilp1_text, ilp2_text, read_fractional_solution,
    Formulation,
};
use bbqp::{evaluate_fractional_exact, FractionalPoint, Instance};
use common::{lp_brute_force_optimum, naive_optimum, parse_lp, random_instance};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample() -> Instance {
    Instance::from_rows(&[vec![1, -2], vec![3, 4]], vec![1, -1], vec![-2, 2])
        .unwrap()
        .with_name("sample")
}

#[test]
fn model_optima_equal_instance_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..40 {
        let m = rng.random_range(1..=4);
        let n = rng.random_range(1..=(8 - m).min(4));
        let inst = random_instance(&mut rng, m, n, -9, 9);
        let best = naive_optimum(&inst) as i128 * 4;
        let (text1, _) = ilp1_text(&inst);
        assert_eq!(lp_brute_force_optimum(&parse_lp(&text1), m, n), best);
        let (text2, _) = ilp2_text(&inst);
        assert_eq!(lp_brute_force_optimum(&parse_lp(&text2), m, n), best);
    }
}

#[test]
fn stats_follow_counting_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for _ in 0..50 {
        let (m, n) = (rng.random_range(1..=12), rng.random_range(1..=12));
        let inst = random_instance(&mut rng, m, n, -5, 5);
        let negatives = inst.q_entries().iter().filter(|&&q| q < 0).count();
        let (text, s1) = ilp1_text(&inst);
        assert_eq!(s1.formulation, Formulation::Ilp1);
        assert_eq!(s1.variable_count, m * n + m + n);
        assert_eq!(s1.constraint_count, 2 * m * n + negatives);
        let model = parse_lp(&text);
        assert_eq!(model.constraints.len(), s1.constraint_count);
        assert_eq!(model.binaries.len(), s1.binary_count);
        let (text, s2) = ilp2_text(&inst);
        assert_eq!(s2.variable_count, 4 * m * n + m + n);
        assert_eq!(s2.constraint_count, 4 * m * n);
        let model = parse_lp(&text);
        assert_eq!(model.constraints.len(), s2.constraint_count);
        assert_eq!(model.binaries.len(), s2.binary_count);
    }
}

#[test]
fn emission_matches_golden_files() {
    let mut out = Vec::new();
    emit_ilp1(&sample(), &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), include_str!("golden/sample_ilp1.lp"));
    let mut out = Vec::new();
    emit_ilp2(&sample(), &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), include_str!("golden/sample_ilp2.lp"));
}

#[test]
fn emission_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let inst = random_instance(&mut rng, 7, 9, -50, 50);
    assert_eq!(ilp1_text(&inst), ilp1_text(&inst));
    assert_eq!(ilp2_text(&inst), ilp2_text(&inst));
}

#[test]
fn imported_points_round_above_their_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    for _ in 0..100 {
        let (m, n) = (rng.random_range(1..=10), rng.random_range(1..=10));
        let inst = random_instance(&mut rng, m, n, -30, 30);
        let mut draw = |len: usize| -> Vec<f64> {
            (0..len).map(|_| rng.random_range(0..=8) as f64 / 8.0).collect()
        };
        let p = FractionalPoint::new(draw(m), draw(n)).unwrap();
        let read = read_fractional_solution(&inst, &fractional_to_text(&p)).unwrap();
        assert_eq!(read, p);
        let f = evaluate_fractional_exact(&inst, &read).unwrap();
        for s in [round_x_optimize_y(&inst, &read).unwrap(), round_y_optimize_x(&inst, &read).unwrap()] {
            assert!(BigRational::from_integer(BigInt::from(s.value)) >= f);
        }
    }
}

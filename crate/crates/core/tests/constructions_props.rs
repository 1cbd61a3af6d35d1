mod common;

use bbqp::constructions::{
    alternating_trap, bqp_threshold, bqp_to_bbqp, local_search_trap, local_search_trap_gap,
    pad_instance, partition_median_instance, recover_solution, tight_instance,
};
use bbqp::heuristics::{alternating, best_neighbor_alpha, FirstSide};
use bbqp::oracle::{brute_force_partition_check, enumerate_stats, optimum, Enumerator};
use bbqp::{average_value, Exec, Instance, QuarterRational};
use common::{bits, naive_optimum, random_instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn tight_instance_count_is_exact() {
    for m in 1..=10 {
        for n in 1..=(16 - m).min(10) {
            let t = tight_instance(m, n).unwrap();
            let r = enumerate_stats(&t).unwrap();
            assert_eq!(r.count_at_most_average, 1 << (m + n - 2), "m={m} n={n}");
        }
    }
}

#[test]
fn alternating_trap_properties() {
    for n in [2, 3, 4] {
        for big_m in 1..=8 {
            let (inst, start) = alternating_trap(n, big_m).unwrap();
            let r = alternating(&inst, &start, FirstSide::X, 100).unwrap();
            assert!(r.converged);
            assert_eq!(r.solution.value, 1);
            assert_eq!(naive_optimum(&inst), big_m + 1);
            let a = average_value(&inst);
            assert_eq!(a, QuarterRational::new(big_m + 1, 4));
            assert_eq!(a.cmp_int(1).is_gt(), big_m > 3);
        }
    }
}

#[test]
fn local_search_trap_is_alpha_optimal_but_below_average() {
    let (inst, start, alpha) = local_search_trap(10).unwrap();
    let same = best_neighbor_alpha(&inst, &start, alpha).unwrap();
    assert_eq!(same.value, start.value);
    let escape = best_neighbor_alpha(&inst, &start, 10).unwrap();
    assert!(escape.value > start.value);
    let a = average_value(&inst);
    assert_eq!(
        QuarterRational::from_ratio(a.as_ratio() - QuarterRational::from_integer(start.value).as_ratio()),
        local_search_trap_gap(10)
    );
    assert!(a.cmp_int(start.value).is_gt());
}

#[test]
fn local_search_trap_gap_formula_for_larger_n() {
    for n in [15, 20, 25, 50] {
        let (inst, start, alpha) = local_search_trap(n).unwrap();
        assert_eq!(alpha, n / 5);
        let a = average_value(&inst);
        let gap = QuarterRational::from_ratio(
            a.as_ratio() - QuarterRational::from_integer(start.value).as_ratio(),
        );
        assert_eq!(gap, local_search_trap_gap(n), "n={n}");
    }
}

#[test]
fn partition_medians_track_partition_existence() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let len = rng.random_range(1..=10);
        let a: Vec<u64> = (0..len).map(|_| rng.random_range(1..=6)).collect();
        let total: u64 = a.iter().sum();
        let scale = 2 * (total + 1);
        let inst = partition_median_instance(&a, scale).unwrap();
        let r = enumerate_stats(&inst).unwrap();
        let target = (scale / 2 * total) as i64;
        let medians_hit = r.theta1 == target && r.theta2 == target;
        assert_eq!(medians_hit, brute_force_partition_check(&a).unwrap(), "{a:?}");
    }
}

#[test]
fn partition_examples() {
    let r = enumerate_stats(&partition_median_instance(&[1, 1, 2], 100).unwrap()).unwrap();
    assert_eq!((r.theta1, r.theta2), (200, 200));
    let r = enumerate_stats(&partition_median_instance(&[1, 1, 3], 100).unwrap()).unwrap();
    assert!(!(r.theta1 == 250 && r.theta2 == 250));
    let r = enumerate_stats(&partition_median_instance(&[2], 100).unwrap()).unwrap();
    assert!(!(r.theta1 == 100 && r.theta2 == 100));
}

fn bqp_value(qp: &[Vec<i64>], cp: &[i64], x: &[bool]) -> i64 {
    let n = cp.len();
    let mut v = 0;
    for i in 0..n {
        if x[i] {
            v += cp[i];
            for j in 0..n {
                if x[j] {
                    v += qp[i][j];
                }
            }
        }
    }
    v
}

#[test]
fn bqp_reduction_doubles_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..150 {
        let n = rng.random_range(1..=3);
        let qp: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-5..=5)).collect()).collect();
        let cp: Vec<i64> = (0..n).map(|_| rng.random_range(-5..=5)).collect();
        let big_m = if rng.random_bool(0.5) {
            1000
        } else {
            bqp_threshold(&qp, &cp) as i64
        };
        let inst = bqp_to_bbqp(&qp, &cp, big_m).unwrap();
        let bqp_best = (0..1u64 << n).map(|mask| bqp_value(&qp, &cp, &bits(mask, n))).max().unwrap();
        let report = enumerate_stats(&inst).unwrap();
        assert_eq!(report.optimum.value, 2 * bqp_best);
        let diagonal_optimum = (0..1u64 << n).any(|mask| {
            let x = bits(mask, n);
            inst.evaluate(&x, &x).unwrap() == report.optimum.value
        });
        assert!(diagonal_optimum);
        // every off-diagonal pair is strictly below the optimum
        for xm in 0..1u64 << n {
            for ym in 0..1u64 << n {
                if xm != ym {
                    let v = inst.evaluate(&bits(xm, n), &bits(ym, n)).unwrap();
                    assert!(v < report.optimum.value);
                }
            }
        }
    }
}

#[test]
fn bqp_examples() {
    let inst = bqp_to_bbqp(&[vec![0, 0], vec![0, 0]], &[0, 0], 10).unwrap();
    assert_eq!(optimum(&inst).unwrap().value, 0);
    let inst = bqp_to_bbqp(&[vec![0, 1], vec![1, 0]], &[0, 0], 10).unwrap();
    let best = optimum(&inst).unwrap();
    assert_eq!((best.value, best.x.clone(), best.y.clone()), (4, vec![true; 2], vec![true; 2]));
}

#[test]
fn padding_preserves_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for round in 0..20 {
        let dim = if round % 2 == 0 { 1 } else { 2 };
        let inst = random_instance(&mut rng, dim, dim, -10, 10);
        for (a, b) in [(2, 1), (3, 2)] {
            let p = pad_instance(&inst, a, b).unwrap();
            let padded = Enumerator::new(30, Exec::default()).optimum(&p.inner).unwrap();
            let original = naive_optimum(&inst);
            assert_eq!(padded.value, original);
            let r = recover_solution(&p, &padded).unwrap();
            assert_eq!(r.value, original);
            assert_eq!(inst.evaluate(&r.x, &r.y).unwrap(), original);
        }
    }
}

#[test]
fn padding_examples() {
    let five = Instance::homogeneous(&[vec![5]]).unwrap();
    let p = pad_instance(&five, 2, 1).unwrap();
    assert_eq!(optimum(&p.inner).unwrap().value, 5);
    let r = recover_solution(&p, &optimum(&p.inner).unwrap()).unwrap();
    assert_eq!((r.x, r.y, r.value), (vec![true], vec![true], 5));
    let zero = pad_instance(&Instance::zeros(1, 1).unwrap(), 2, 1).unwrap();
    let report = enumerate_stats(&zero.inner).unwrap();
    assert_eq!(report.minimum, report.optimum.value);
    let p = pad_instance(&Instance::from_rows(&[vec![-1]], vec![2], vec![0]).unwrap(), 3, 2).unwrap();
    assert_eq!(optimum(&p.inner).unwrap().value, 2);
}

mod common;

use momineq::randomization::{
    randomization_test, reflected_statistics, sample_reflections, ReflectionPlan, SignVector,
};
use momineq::statistics::{evaluate, t_star_transform, StatTag};
use momineq::{nnls, DataMatrix, DirectionSet, StatisticSpec};
use ndarray::{Array1, Array2};
use proptest::prelude::*;

fn matrix(max_n: usize, max_p: usize) -> impl Strategy<Value = Array2<f64>> {
    (3..=max_n, 1..=max_p).prop_flat_map(|(n, p)| {
        (
            prop::collection::vec(-3.0f64..3.0, n * p),
            prop::collection::vec(-1.0f64..1.0, p),
        )
            .prop_map(move |(v, shift)| {
                let mut x = Array2::from_shape_vec((n, p), v).unwrap();
                for (mut col, s) in x.columns_mut().into_iter().zip(shift) {
                    col.mapv_inplace(|e| e + s);
                }
                x
            })
    })
}

fn specs() -> [StatisticSpec; 3] {
    [
        StatisticSpec::t_max(),
        StatisticSpec::t_max_iota(),
        StatisticSpec::t_plus(),
    ]
}

fn full_group(n: usize) -> ReflectionPlan {
    let signs = (0..1u32 << n)
        .map(|bits| {
            let s: Vec<f64> = (0..n)
                .map(|i| if bits >> i & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            SignVector::from_signs(&s)
        })
        .collect();
    ReflectionPlan::from_sign_vectors(signs).unwrap()
}

fn same(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-8 * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nnls_satisfies_kkt(a in matrix(8, 4), b in prop::collection::vec(-2.0f64..2.0, 8)) {
        let b = Array1::from(b[..a.nrows()].to_vec());
        let sol = nnls(a.view(), b.view()).unwrap();
        let grad = a.t().dot(&sol.residual);
        let tol = 1e-7 * (1.0 + a.t().dot(&b).iter().fold(0.0f64, |m, v| m.max(v.abs())));
        for (l, g) in sol.lambda.iter().zip(grad.iter()) {
            prop_assert!(*l >= 0.0);
            prop_assert!(*g <= tol, "gradient {g}");
            if *l > 0.0 {
                prop_assert!(g.abs() <= tol, "complementarity {l} {g}");
            }
        }
    }

    #[test]
    fn statistics_are_ordered(x in matrix(12, 5)) {
        let x = DataMatrix::new(x).unwrap();
        let v: Vec<_> = specs().iter().map(|s| evaluate(&x, s).unwrap()).collect();
        if v.iter().all(|s| s.tag == StatTag::Finite) {
            prop_assert!(v[1].value >= v[0].value * (1.0 - 1e-10));
            prop_assert!(v[2].value >= v[1].value * (1.0 - 1e-8));
        }
        if v[0].tag == StatTag::Zero {
            prop_assert!(v.iter().all(|s| s.tag == StatTag::Zero));
        }
    }

    #[test]
    fn statistic_is_invariant_to_column_order(x in matrix(10, 5), seed in 0u64..100) {
        let p = x.ncols();
        let mut perm: Vec<usize> = (0..p).collect();
        perm.rotate_left(seed as usize % p);
        let y = x.select(ndarray::Axis(1), &perm);
        for spec in specs() {
            let a = evaluate(&DataMatrix::new(x.clone()).unwrap(), &spec).unwrap();
            let b = evaluate(&DataMatrix::new(y.clone()).unwrap(), &spec).unwrap();
            prop_assert_eq!(a.tag, b.tag);
            prop_assert!(a.tag != StatTag::Finite || same(a.value, b.value), "{} vs {}", a.value, b.value);
        }
    }

    #[test]
    fn statistics_are_scale_invariant(x in matrix(10, 4), scales in prop::collection::vec(0.2f64..5.0, 4)) {
        let mut y = x.clone();
        for (mut col, s) in y.columns_mut().into_iter().zip(&scales) {
            col.mapv_inplace(|v| v * s);
        }
        for spec in [StatisticSpec::t_max(), StatisticSpec::t_plus()] {
            let a = evaluate(&DataMatrix::new(x.clone()).unwrap(), &spec).unwrap();
            let b = evaluate(&DataMatrix::new(y.clone()).unwrap(), &spec).unwrap();
            prop_assert_eq!(a.tag, b.tag);
            prop_assert!(a.tag != StatTag::Finite || same(a.value, b.value), "{} vs {}", a.value, b.value);
        }
    }

    /// Reflecting the data permutes the orbit of the full sign-flip group.
    #[test]
    fn orbit_is_group_invariant(x in matrix(6, 3), flip in prop::collection::vec(any::<bool>(), 6)) {
        let n = x.nrows();
        let s: Vec<f64> = flip[..n].iter().map(|&f| if f { -1.0 } else { 1.0 }).collect();
        let plan = full_group(n);
        let moved = plan.composed_with(&SignVector::from_signs(&s));
        for spec in specs() {
            let x = DataMatrix::new(x.clone()).unwrap();
            let mut a: Vec<f64> = reflected_statistics(&x, &spec, &plan).unwrap().iter().map(|v| v.value).collect();
            let mut b: Vec<f64> = reflected_statistics(&x, &spec, &moved).unwrap().iter().map(|v| v.value).collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            for (u, v) in a.iter().zip(&b) {
                prop_assert!(same(*u, *v), "{u} vs {v}");
            }
        }
    }

    #[test]
    fn p_values_are_valid(x in matrix(12, 4), m in 1usize..60, seed in any::<u64>()) {
        let n = x.nrows();
        let m = m.min(1 << (n - 1));
        let plan = sample_reflections(n, m, seed).unwrap();
        prop_assert_eq!(&plan, &sample_reflections(n, m, seed).unwrap());
        let x = DataMatrix::new(x).unwrap();
        for spec in specs() {
            let out = randomization_test(&x, &spec, &plan, 0.05).unwrap();
            prop_assert!(out.p_count >= 1 && out.p_count <= m);
            prop_assert_eq!(out.p_value, out.p_count as f64 / m as f64);
            prop_assert_eq!(out.reject, out.p_value <= 0.05);
        }
    }

    #[test]
    fn t_star_is_increasing(a in 0.0f64..50.0, b in 0.0f64..50.0, n in 2usize..500) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(t_star_transform(lo, n) <= t_star_transform(hi, n));
        prop_assert!(t_star_transform(hi, n) < (n as f64).sqrt());
    }

    #[test]
    fn custom_coordinates_match_t_max(x in matrix(10, 4)) {
        let p = x.ncols();
        let eye: Vec<Vec<f64>> = (0..p).map(|j| (0..p).map(|k| f64::from(u8::from(j == k))).collect()).collect();
        let x = DataMatrix::new(x).unwrap();
        let a = evaluate(&x, &StatisticSpec::t_max()).unwrap();
        let b = evaluate(&x, &StatisticSpec::Finite(DirectionSet::Custom(eye))).unwrap();
        prop_assert_eq!(a.tag, b.tag);
        prop_assert!(same(a.value, b.value));
    }

    /// Adding the iota direction can only raise reflected statistics, so when
    /// it leaves the observed value unchanged the p-value cannot fall.
    #[test]
    fn iota_never_beats_t_max_when_inactive(x in matrix(12, 5), seed in any::<u64>()) {
        let n = x.nrows();
        let plan = sample_reflections(n, 40.min(1 << (n - 1)), seed).unwrap();
        let x = DataMatrix::new(x).unwrap();
        let a = randomization_test(&x, &StatisticSpec::t_max(), &plan, 0.05).unwrap();
        let b = randomization_test(&x, &StatisticSpec::t_max_iota(), &plan, 0.05).unwrap();
        if a.statistic.tag == StatTag::Finite && b.statistic.value == a.statistic.value {
            prop_assert!(b.p_count >= a.p_count, "{} < {}", b.p_count, a.p_count);
        }
    }
}

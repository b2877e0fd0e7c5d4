use num_bigint::BigInt;
use proptest::prelude::*;

use semicurve_core::curve::{CurveModel, CurveSpec, Generator};
use semicurve_core::field::FieldSpec;
use semicurve_core::lattice::ExponentVec;
use semicurve_core::motivic::{self, MOTIVIC_CHECKS};
use semicurve_core::poly::{IntPoly, MultiPoly, QLaurent, Unit};
use semicurve_core::report::Status;
use semicurve_core::semigroup::numerical_semigroup;
use semicurve_core::series::{self, SERIES_CHECKS};
use semicurve_core::xi::{self, peel_binomial_factors, FactorMultiset};

fn int_poly_strategy(nvars: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::collection::vec(0i64..3, nvars), -3i64..4), 0..5).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                nvars,
                terms
                    .into_iter()
                    .map(|(e, c)| (ExponentVec::new(e), BigInt::from(c))),
            )
        },
    )
}

fn laurent_strategy() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-3i64..4, -3i64..4), 0..4)
        .prop_map(|t| QLaurent::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

/// `x = t`, `y = f_i(t)` on every branch, with `f_i` of order at least one.
fn graph_curve(polys: &[Vec<i64>]) -> CurveSpec {
    let ys: Vec<Vec<(i64, u32)>> = polys
        .iter()
        .map(|f| {
            f.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (c, k as u32 + 1))
                .collect()
        })
        .collect();
    let ys: Vec<&[(i64, u32)]> = ys.iter().map(Vec::as_slice).collect();
    let xs: Vec<&[(i64, u32)]> = vec![&[(1, 1)]; polys.len()];
    CurveSpec::parametrization(
        FieldSpec::default(),
        vec![
            Generator::from_ints("x", &xs),
            Generator::from_ints("y", &ys),
        ],
    )
}

fn order_of_difference(f: &[i64], g: &[i64]) -> u64 {
    f.iter()
        .zip(g)
        .position(|(a, b)| a != b)
        .map(|k| k as u64 + 1)
        .unwrap()
}

fn distinct_graphs() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3)
        .prop_flat_map(|r| prop::collection::vec(prop::collection::vec(-2i64..3, 3), r))
        .prop_filter("distinct branches", |fs| {
            (0..fs.len()).all(|i| (i + 1..fs.len()).all(|j| fs[i] != fs[j]))
        })
}

fn numerical_gens() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..10, 2..=3).prop_filter("coprime", |g| {
        g.iter().fold(0, |a, &b| num_integer::gcd(a, b)) == 1
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in int_poly_strategy(2), b in int_poly_strategy(2), c in int_poly_strategy(2)
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn specialization_is_a_ring_map(a in int_poly_strategy(3), b in int_poly_strategy(3), i in 0usize..3) {
        for u in [Unit::Zero, Unit::One] {
            let lhs = a.mul(&b).unwrap().specialize(i, u).unwrap();
            let rhs = a.specialize(i, u).unwrap().mul(&b.specialize(i, u).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn univariate_division_inverts_multiplication(a in int_poly_strategy(1), b in int_poly_strategy(1)) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).unwrap().div_exact_univariate(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn laurent_division_inverts_multiplication(a in laurent_strategy(), b in laurent_strategy()) {
        use semicurve_core::poly::Coefficient;
        prop_assume!(b.terms().next().is_some());
        prop_assert_eq!(a.mul_ref(&b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn peeling_ignores_factor_order(zs in prop::collection::vec(1u64..6, 0..5), seed in any::<u64>()) {
        let mut shuffled = zs.clone();
        let n = shuffled.len();
        for k in 0..n {
            let j = (seed.rotate_left(k as u32 * 7) as usize) % n;
            shuffled.swap(k, j);
        }
        let one: IntPoly = MultiPoly::one(1);
        let a = peel_binomial_factors(0, &xi::binomial_product(&zs), &one).unwrap();
        let b = peel_binomial_factors(0, &xi::binomial_product(&shuffled), &one).unwrap();
        let mut sorted = zs.clone();
        sorted.sort_unstable();
        prop_assert_eq!(&a.factors, &sorted);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn matching_recovers_symmetric_matrices(entries in prop::collection::vec(1u64..5, 3)) {
        let rows = vec![
            vec![0, entries[0], entries[1]],
            vec![entries[0], 0, entries[2]],
            vec![entries[1], entries[2], 0],
        ];
        let m = semicurve_core::semigroup::XiMatrix::from_rows(rows);
        let sets: Vec<FactorMultiset> = (0..3).map(|i| FactorMultiset { branch: i, factors: m.row_multiset(i) }).collect();
        let found = xi::match_xi(&sets).unwrap();
        prop_assert!(found.solutions.contains(&m));
        for s in &found.solutions {
            for (i, set) in sets.iter().enumerate() {
                prop_assert_eq!(&s.row_multiset(i), &set.factors);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn numerical_semigroup_identities(gens in numerical_gens()) {
        let s = numerical_semigroup(&gens).unwrap();
        let sym = s.symmetry_check().unwrap();
        for name in SERIES_CHECKS {
            let c = series::check_identity(&s, name).unwrap();
            prop_assert!(c.status != Status::Fail, "{:?}: {}", gens, c);
            if *name == "functional-equation" {
                let expected = if sym.gorenstein { Status::Pass } else { Status::NotApplicable };
                prop_assert_eq!(c.status, expected);
            }
        }
        for name in MOTIVIC_CHECKS {
            let c = motivic::check_motivic(&s, name).unwrap();
            prop_assert_eq!(c.status, Status::Pass, "{:?}: {}", gens, c);
        }
    }

    #[test]
    fn graph_curves(fs in distinct_graphs()) {
        let m = CurveModel::build(&graph_curve(&fs), None).unwrap();
        let s = m.semigroup();
        let r = fs.len();
        let xi_oracle = s.xi_oracle().unwrap();
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    prop_assert_eq!(xi_oracle.get(i, j), order_of_difference(&fs[i], &fs[j]));
                }
            }
        }
        let rec = xi::recover_xi(&m).unwrap();
        prop_assert!(rec.matches_oracle());
        prop_assert!(rec.root_multiplicities.iter().all(|&k| k + 1 == r));

        // Dropping branch j lowers δ_i by exactly ξ_ij.
        for j in 0..r {
            let keep: Vec<usize> = (0..r).filter(|&k| k != j).collect();
            let sub = s.project(&keep).unwrap();
            for (pos, &i) in keep.iter().enumerate() {
                prop_assert_eq!(sub.conductor()[pos], s.conductor()[i] - xi_oracle.get(i, j) as i64);
            }
        }
        // Projecting in two steps is projecting once.
        let direct = s.project(&[0]).unwrap();
        let two_step = s.project(&[0, 1]).unwrap().project(&[0]).unwrap();
        prop_assert_eq!(direct, two_step);

        for name in ["functional-equation", "pi-independence", "ptilde-decomposition", "projection"] {
            let c = series::check_identity(&m, name).unwrap();
            prop_assert_eq!(c.status, Status::Pass, "{}", c);
        }
        let g = motivic::check_motivic(s, "gorsky").unwrap();
        prop_assert_eq!(g.status, Status::Pass, "{}", g);
    }
}

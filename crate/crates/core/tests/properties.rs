use cmdegen_core::fitting::fitting_ideals;
use cmdegen_core::fixtures::witness_from_submodule;
use cmdegen_core::jordan::*;
use cmdegen_core::matrix::Subspace;
use cmdegen_core::modrep::{hom_space, is_isomorphic};
use cmdegen_core::witness::verify_witness;
use cmdegen_core::{Field, Matrix, ModuleRep, Scalar};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7)), Just(Field::Prime(101))]
}

fn matrix(f: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-4i64..5, rows * cols)
        .prop_map(move |v| Matrix::from_fn(f, rows, cols, |i, j| f.from_i64(v[i * cols + j])))
}

fn partition(n: usize, max_parts: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1..=n, 0..=max_parts).prop_map(move |v| Partition::new(n, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rank_nullity((_f, m) in field().prop_flat_map(|f| (Just(f), matrix(f, 4, 5)))) {
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), 5);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_and_det((_f, a, b) in field().prop_flat_map(|f| (Just(f), matrix(f, 3, 3), matrix(f, 3, 3)))) {
        prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        match a.inverse() {
            Some(inv) => prop_assert!(inv.mul(&a).is_identity()),
            None => prop_assert!(a.det().is_zero()),
        }
    }

    #[test]
    fn jordan_type_round_trip(p in partition(4, 5)) {
        prop_assert_eq!(jordan_type(4, &nilpotent_of(Field::Rational, &p)).unwrap(), p.clone());
        prop_assert_eq!(type_of(&module_of(&p)).unwrap(), p);
    }

    #[test]
    fn syzygy_shift_is_an_involution_on_stripped(p in partition(4, 6)) {
        let s = p.strip_free().0;
        prop_assert_eq!(syzygy_shift(&syzygy_shift(&p)), s);
    }

    #[test]
    fn hom_dimensions_of_blocks(a in 1usize..=4, b in 1usize..=4) {
        let alg = jordan_algebra(Field::Rational, 4);
        let ja = module_over(&alg, &Partition::new(4, vec![a]).unwrap());
        let jb = module_over(&alg, &Partition::new(4, vec![b]).unwrap());
        prop_assert_eq!(hom_space(&ja, &jb).unwrap().dim(), a.min(b));
    }

    #[test]
    fn conjugate_modules_are_isomorphic(p in partition(3, 3), g in matrix(Field::Rational, 9, 9), seed in any::<u64>()) {
        let m = module_of(&p);
        let d = m.dim();
        let g = g.block(0, 0, d, d).add(&Matrix::identity(Field::Rational, d).scale(&Field::Rational.from_i64(11)));
        prop_assume!(g.is_invertible());
        let ginv = g.inverse().unwrap();
        let actions = m.actions().iter().map(|x| g.mul(x).mul(&ginv)).collect();
        let conj = ModuleRep::new(m.algebra().clone(), d, actions).unwrap();
        prop_assert!(is_isomorphic(&m, &conj, seed).unwrap().holds());
    }

    #[test]
    fn distinct_types_are_not_isomorphic((p, q) in (1usize..=7).prop_flat_map(|s| {
        let ps = partitions(3, s);
        (proptest::sample::select(ps.clone()), proptest::sample::select(ps))
    })) {
        prop_assume!(p != q);
        let alg = jordan_algebra(Field::Rational, 3);
        prop_assert!(!is_isomorphic(&module_over(&alg, &p), &module_over(&alg, &q), 0).unwrap().holds());
    }

    #[test]
    fn fitting_zero_is_multiplicative(p in partition(3, 2), q in partition(3, 2)) {
        let alg = jordan_algebra(Field::Rational, 3);
        let (mp, mq) = (module_over(&alg, &p), module_over(&alg, &q));
        let sum = mp.direct_sum(&mq).unwrap();
        let lhs = fitting_ideals(&sum, 0).unwrap().remove(0);
        let rhs = fitting_ideals(&mp, 0).unwrap()[0].product(&fitting_ideals(&mq, 0).unwrap()[0]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn deg_order_is_reflexive_and_transitive(p in partition(3, 4), q in partition(3, 4), r in partition(3, 4)) {
        prop_assert!(deg_order(&p, &p).unwrap());
        if deg_order(&p, &q).unwrap() && deg_order(&q, &r).unwrap() {
            prop_assert!(deg_order(&p, &r).unwrap());
        }
    }

    #[test]
    fn submodule_extensions_give_witnesses(p in partition(3, 3), j in 1usize..3, use_kernel in any::<bool>()) {
        let m = module_of(&p);
        prop_assume!(m.dim() > 0);
        let t = m.action(j);
        let sub = if use_kernel {
            Subspace::span(m.field(), m.dim(), t.nullspace())
        } else {
            Subspace::column_space(t)
        };
        let w = witness_from_submodule(&m, &sub);
        prop_assert_eq!(verify_witness(&w).unwrap(), None);
        prop_assert!(deg_order(&p, &type_of(&w.n).unwrap()).unwrap());
    }
}

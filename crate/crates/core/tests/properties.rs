use liework::catalog::{self, Payload};
use liework::exactla::{rat, ratio, Mat, Rat, Subspace};
use liework::finite;
use liework::invariants::{derivations, nilradical, skew_derivations, MetricTensor};
use liework::lie::LieAlgebra;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

fn vecs(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(prop::collection::vec(small_rat(), n), 0..=max)
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(small_rat(), rows * cols).prop_map(move |d| Mat::from_flat(rows, cols, d).unwrap())
}

fn algebras() -> Vec<LieAlgebra> {
    catalog::catalog()
        .into_iter()
        .filter_map(|e| match e.payload {
            Payload::Lie { algebra, .. } => Some(algebra),
            Payload::Group(_) => None,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| mat(r, c))) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel().basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn sum_intersection_dims(u in vecs(4, 3), v in vecs(4, 3)) {
        let u = Subspace::span(4, &u).unwrap();
        let v = Subspace::span(4, &v).unwrap();
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u).unwrap() && i.is_subspace_of(&v).unwrap());
        prop_assert!(u.is_subspace_of(&s).unwrap() && v.is_subspace_of(&s).unwrap());
    }

    #[test]
    fn modular_law(u in vecs(4, 2), v in vecs(4, 3), w in vecs(4, 2)) {
        let u = Subspace::span(4, &u).unwrap();
        let v = Subspace::span(4, &v).unwrap();
        // force u ⊆ w
        let w = Subspace::span(4, &w).unwrap().sum(&u).unwrap();
        let lhs = w.intersect(&u.sum(&v).unwrap()).unwrap();
        let rhs = u.sum(&w.intersect(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn equality_is_mutual_containment(u in vecs(4, 3), v in vecs(4, 3)) {
        let a = Subspace::span(4, &u).unwrap();
        let b = Subspace::span(4, &v).unwrap();
        let mutual = a.is_subspace_of(&b).unwrap() && b.is_subspace_of(&a).unwrap();
        prop_assert_eq!(a == b, mutual);
        prop_assert_eq!(a.equals(&b).unwrap(), mutual);
    }

    #[test]
    fn span_ignores_generator_presentation(u in vecs(4, 3), c in small_rat()) {
        prop_assume!(!c.is_zero());
        let a = Subspace::span(4, &u).unwrap();
        let mut w: Vec<Vec<Rat>> = u.iter().rev().map(|x| x.iter().map(|t| t * &c).collect()).collect();
        if u.len() >= 2 {
            w.push(u[0].iter().zip(&u[1]).map(|(x, y)| x + y).collect());
        }
        prop_assert_eq!(a, Subspace::span(4, &w).unwrap());
    }

    #[test]
    fn rational_cross_multiplication(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = ratio(a, b) + ratio(c, d);
        prop_assert_eq!(x * rat(b * d), rat(a * d + c * b));
        prop_assert_eq!(ratio(a, b) == ratio(c, d), a * d == c * b);
    }

    #[test]
    fn jacobi_on_random_vectors(idx in 0usize..100, x in vecs(6, 3)) {
        let algs = algebras();
        let g = &algs[idx % algs.len()];
        let n = g.dim();
        let pick = |k: usize| -> Vec<Rat> {
            x.get(k).map(|v| v[..n.min(6)].to_vec()).unwrap_or_else(|| vec![Rat::zero(); n])
        };
        prop_assume!(n <= 6);
        let (a, b, c) = (pick(0), pick(1), pick(2));
        let r = g.jacobi_residual(&a, &b, &c).unwrap();
        prop_assert!(r.iter().all(Zero::is_zero));
        let ab = g.bracket(&a, &b).unwrap();
        let ba = g.bracket(&b, &a).unwrap();
        prop_assert!(ab.iter().zip(&ba).all(|(p, q)| (p + q).is_zero()));
    }

    #[test]
    fn skew_is_inside_derivations(idx in 0usize..100, seed in any::<u64>()) {
        let algs = algebras();
        let g = &algs[idx % algs.len()];
        let q = MetricTensor::random(g.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let skew = skew_derivations(g, &q).unwrap();
        let der = derivations(g).unwrap();
        prop_assert!(skew.is_subalgebra_of(&der).unwrap());
        for d in skew.basis_maps() {
            prop_assert!(g.is_derivation(&d).unwrap());
            let s = d.transpose().mul(q.matrix()).unwrap().add(&q.matrix().mul(&d).unwrap()).unwrap();
            prop_assert!(s.is_zero());
        }
    }

    #[test]
    fn skew_derivations_invariant_under_scaling(idx in 0usize..100, seed in any::<u64>(), c in 1i64..7, d in 1i64..7) {
        let algs = algebras();
        let g = &algs[idx % algs.len()];
        let q = MetricTensor::random(g.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let scaled = q.scaled(&ratio(c, d)).unwrap();
        let a = skew_derivations(g, &q).unwrap();
        let b = skew_derivations(g, &scaled).unwrap();
        prop_assert_eq!(a.space(), b.space());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_terms_are_ideals_after_basis_change(idx in 0usize..100, t in mat(4, 4)) {
        let algs: Vec<_> = algebras().into_iter().filter(|g| g.dim() == 4).collect();
        let g = &algs[idx % algs.len()];
        prop_assume!(!t.determinant().unwrap().is_zero());
        let h = g.transport(&t).unwrap();
        prop_assert!(h.validate().is_empty());
        for s in h.lower_central_series().iter().chain(&h.derived_series()) {
            prop_assert!(h.is_ideal(s).unwrap());
        }
        prop_assert_eq!(h.is_nilpotent(), g.is_nilpotent());
        let r = nilradical(&h).unwrap();
        prop_assert!(r.is_ideal);
        prop_assert_eq!(r.nilradical.dim(), nilradical(g).unwrap().nilradical.dim());
    }

    #[test]
    fn finite_isometry_structure(idx in 0usize..1000) {
        let corpus = finite::corpus(7, 5);
        let m = &corpus[idx % corpus.len()];
        prop_assume!(m.order() <= 6);
        let g = finite::isometries(m);
        let ml = finite::left_translations(m);
        let stab = finite::stabilizer(m, &g);
        prop_assert!(g.is_group());
        prop_assert!(ml.is_subset_of(&g));
        prop_assert_eq!(g.len(), ml.len() * stab.len());
        let aut = finite::automorphisms(m);
        prop_assert!(aut.is_group());
        for f in aut.perms() {
            prop_assert!(m.is_homomorphism(f));
        }
    }
}

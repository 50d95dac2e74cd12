use std::sync::Arc;

use proptest::prelude::*;

use qg_core::catalog::{
    cyclic, dihedral, function_algebra, group_algebra, magic_block_example, quaternion,
    sn_plus_presentation, standard_groups, suq2_presentation, symmetric,
};
use qg_core::corep::{intertwiners, irr_table};
use qg_core::dualqg::{DualQG, IrrData};
use qg_core::freestar::{eval_hom, letter_gen, letter_is_adjoint, normal_form, validate_magic, Word, WordPoly};
use qg_core::hopfcore::{
    check_cancellation, check_morphism, dual_hopf, opcoopposite, opposite, coopposite, verify_hopf,
    HopfData,
};
use qg_core::measures::{convolve_functionals, haar_solve};
use qg_core::random::{random_matrix, random_projection, random_unitary, seeded};
use qg_core::tenscore::{
    c, flip, identity, kron, leg_embed, max_abs_diff, max_abs_diff_vec, psd_check, rank_of_span,
    CMatrix, CVector, Tolerance,
};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn small_hosts() -> Vec<Arc<HopfData>> {
    let mut out = Vec::new();
    for g in [cyclic(4).unwrap(), symmetric(3).unwrap(), dihedral(4).unwrap(), quaternion().unwrap()] {
        out.push(Arc::new(group_algebra(&g).unwrap()));
        out.push(Arc::new(function_algebra(&g).unwrap()));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, d in 1usize..4) {
        let mut rng = seeded(seed);
        let x = random_matrix(&mut rng, a, b);
        let y = random_matrix(&mut rng, b, d);
        let z = random_matrix(&mut rng, d, a);
        let lhs = kron(&kron(&x, &y), &z);
        let rhs = kron(&x, &kron(&y, &z));
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn flip_swaps_factors(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut rng = seeded(seed);
        let a = random_matrix(&mut rng, n, n);
        let b = random_matrix(&mut rng, m, m);
        let f = flip(n, m);
        prop_assert!(max_abs_diff(&(f.adjoint() * &f), &identity(n * m)) < 1e-12);
        let swapped = &f * kron(&a, &b) * flip(m, n);
        prop_assert!(max_abs_diff(&swapped, &kron(&b, &a)) < 1e-12);
    }

    #[test]
    fn leg_embed_is_multiplicative(seed in any::<u64>(), which in 0usize..3) {
        let mut rng = seeded(seed);
        let dims = [2usize, 3, 2];
        let legs: Vec<usize> = match which { 0 => vec![0, 2], 1 => vec![1, 0], _ => vec![2, 1] };
        let size: usize = legs.iter().map(|&l| dims[l]).product();
        let x = random_matrix(&mut rng, size, size);
        let y = random_matrix(&mut rng, size, size);
        let lhs = leg_embed(&(&x * &y), &legs, &dims).unwrap();
        let rhs = leg_embed(&x, &legs, &dims).unwrap() * leg_embed(&y, &legs, &dims).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn rank_of_span_ignores_recombination(seed in any::<u64>(), k in 1usize..5, r in 1usize..4) {
        let mut rng = seeded(seed);
        // k vectors spanning an r-dimensional space (r ≤ k enforced below).
        let r = r.min(k);
        let basis = random_matrix(&mut rng, 6, r);
        let coeffs = random_matrix(&mut rng, r, k);
        let vs = &basis * coeffs;
        let list: Vec<CMatrix> = (0..k).map(|i| vs.columns(i, 1).into_owned()).collect();
        let g = random_unitary(&mut rng, k);
        let mixed = &vs * g;
        let list2: Vec<CMatrix> = (0..k).map(|i| mixed.columns(i, 1).into_owned()).collect();
        let a = rank_of_span(&list, tol()).unwrap();
        prop_assert_eq!(a, r);
        prop_assert_eq!(a, rank_of_span(&list2, tol()).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), q in prop::sample::select(vec![0.5, 1.0, 2.0, -1.5])) {
        use rand::Rng;
        let p = suq2_presentation(q).unwrap();
        let mut rng = seeded(seed);
        let mut poly = WordPoly::zero();
        for _ in 0..3 {
            let len = rng.random_range(0..=5);
            let w = Word((0..len).map(|_| rng.random_range(0..4u16)).collect());
            poly.add_term(c(rng.random_range(-2.0..2.0), 0.0), w);
        }
        let once = normal_form(&poly, &p, 100_000).unwrap();
        let twice = normal_form(&once, &p, 100_000).unwrap();
        prop_assert_eq!(&once, &twice);
        // Normal words have the shape a^k (g*)^l g^m or (a*)^k (g*)^l g^m.
        for (w, _) in once.terms() {
            let rank = |l: u16| match (letter_gen(l), letter_is_adjoint(l)) {
                (0, _) => 0,
                (1, true) => 1,
                _ => 2,
            };
            let ranks: Vec<u8> = w.0.iter().map(|&l| rank(l)).collect();
            prop_assert!(ranks.windows(2).all(|x| x[0] <= x[1]));
            let a_letters: Vec<u16> = w.0.iter().copied().filter(|&l| letter_gen(l) == 0).collect();
            prop_assert!(a_letters.windows(2).all(|x| x[0] == x[1]));
        }
    }

    #[test]
    fn relations_are_basis_covariant(seed in any::<u64>(), theta in 0.0f64..6.0) {
        let mut rng = seeded(seed);
        let p = suq2_presentation(1.0).unwrap();
        // A diagonal representation of SU(2): α = diag(e^{iθ}, e^{-iθ}), γ = 0.
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![c(theta.cos(), theta.sin()), c(theta.cos(), -theta.sin())]));
        let g = CMatrix::zeros(2, 2);
        prop_assert!(eval_hom(&p, &[a.clone(), g.clone()], tol()).unwrap().passed());
        let u = random_unitary(&mut rng, 2);
        let conj = |x: &CMatrix| u.adjoint() * x * &u;
        prop_assert!(eval_hom(&p, &[conj(&a), conj(&g)], tol()).unwrap().passed());
    }

    #[test]
    fn magic_matrices_represent_sn_plus(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let pp = random_projection(&mut rng, 2, 1);
        let qq = random_projection(&mut rng, 2, 1);
        let u = magic_block_example(&pp, &qq, tol()).unwrap();
        prop_assert!(validate_magic(&u, tol()).unwrap().passed());
        let pres = sn_plus_presentation(4).unwrap();
        let assignment: Vec<CMatrix> = u.iter().flatten().cloned().collect();
        prop_assert!(eval_hom(&pres, &assignment, tol()).unwrap().passed());
    }

    #[test]
    fn phi_is_stable_under_small_changes(seed in any::<u64>()) {
        let h = Arc::new(function_algebra(&symmetric(3).unwrap()).unwrap());
        let d = DualQG::new(IrrData::finite(&h, tol(), &mut seeded(0)).unwrap()).unwrap();
        let mut rng = seeded(seed);
        let v = d.w_corep();
        let mut v2 = v.clone();
        v2.coeffs += random_matrix(&mut rng, v.coeffs.nrows(), v.coeffs.ncols()) * c(1e-13, 0.0);
        let a = d.phi_from_corep(d.algebra(), &v, tol(), 0, &mut rng).unwrap();
        let b = d.phi_from_corep(d.algebra(), &v2, tol(), 0, &mut rng).unwrap();
        prop_assert!(max_abs_diff(&a.matrix, &b.matrix) < 1e-9);
    }
}

#[test]
fn opposites_are_hopf() {
    for h in small_hosts() {
        for x in [opposite(&h).unwrap(), coopposite(&h).unwrap(), opcoopposite(&h).unwrap()] {
            let r = verify_hopf(&x, tol()).unwrap();
            assert!(r.passed(), "{}: {r}", x.name);
        }
        assert!(check_cancellation(&h, tol()));
    }
}

#[test]
fn double_dual_is_identity_map() {
    for h in small_hosts() {
        let hh = dual_hopf(&dual_hopf(&h).unwrap()).unwrap();
        assert!(check_morphism(&identity(h.dim()), &hh, &h, tol()).unwrap(), "{}", h.name);
    }
}

#[test]
fn commutative_iff_dual_cocommutative() {
    for h in small_hosts() {
        let d = dual_hopf(&h).unwrap();
        assert_eq!(h.alg.is_commutative(tol()), d.coalg.is_cocommutative(tol()), "{}", h.name);
        assert_eq!(h.coalg.is_cocommutative(tol()), d.alg.is_commutative(tol()), "{}", h.name);
    }
}

#[test]
fn catalog_commutativity_matches_group() {
    for g in standard_groups() {
        let cg = group_algebra(&g).unwrap();
        let fg = function_algebra(&g).unwrap();
        assert!(cg.coalg.is_cocommutative(tol()));
        assert!(fg.alg.is_commutative(tol()));
        let both = cg.alg.is_commutative(tol()) && fg.coalg.is_cocommutative(tol());
        assert_eq!(both, g.is_abelian(), "{}", g.name());
    }
}

#[test]
fn haar_is_idempotent_and_tracial() {
    for h in small_hosts() {
        let haar = haar_solve(&h, tol()).unwrap().state;
        let sq = convolve_functionals(&haar, &haar).unwrap();
        assert!(max_abs_diff_vec(sq.coeffs(), haar.coeffs()) < 1e-12);
        assert!(haar.is_tracial(tol()));
        // Faithfulness: the Gram matrix of 𝒉 is positive definite.
        let g = haar.gram();
        let (vals, _) = qg_core::tenscore::hermitian_eigen(&g);
        assert!(vals[0] > 1e-9 && psd_check(&g, tol()));
    }
}

#[test]
fn haar_on_function_algebras_is_uniform() {
    for g in standard_groups() {
        let h = Arc::new(function_algebra(&g).unwrap());
        let haar = haar_solve(&h, tol()).unwrap().state;
        let n = g.order() as f64;
        assert!(haar.coeffs().iter().all(|z| (z - c(1.0 / n, 0.0)).norm() < 1e-12));
    }
}

#[test]
fn irreducible_classes_are_disjoint() {
    let mut rng = seeded(1);
    for h in small_hosts() {
        let t = irr_table(&h, tol(), &mut rng).unwrap();
        for (a, u) in t.irreps.iter().enumerate() {
            for (b, v) in t.irreps.iter().enumerate() {
                let k = intertwiners(u, v, tol()).unwrap().len();
                assert_eq!(k, usize::from(a == b), "{}: classes {a}, {b}", h.name);
            }
        }
    }
}

#[test]
fn multiplicative_unitary_two_ways() {
    // (Δ̂⊗id)W from the computed Δ̂ against the defining W₂₃W₁₃.
    for h in [function_algebra(&symmetric(3).unwrap()).unwrap(), group_algebra(&cyclic(5).unwrap()).unwrap()] {
        let h = Arc::new(h);
        let d = DualQG::new(IrrData::finite(&h, tol(), &mut seeded(0)).unwrap()).unwrap();
        let lhs = d.delta_matrix() * d.w().matrix();
        assert!(max_abs_diff(&lhs, &d.w23_w13().coeffs) < 1e-10);
    }
}

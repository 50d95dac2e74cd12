use std::sync::Arc;

use qg_core::catalog::{
    cyclic, function_algebra, group_algebra, magic_block_example, sn_plus_presentation,
    standard_groups, suq2_presentation, symmetric, synthetic_nonkac,
};
use qg_core::corep::irr_table;
use qg_core::dualqg::{modular_report, unimodularity_report};
use qg_core::freestar::{delta_well_defined, eval_hom, normal_form, validate_magic, DEFAULT_DEGREE_CAP};
use qg_core::hopfcore::{check_cancellation, check_morphism, dual_hopf, verify_all};
use qg_core::random::seeded;
use qg_core::tenscore::{c, identity, max_abs_diff, trace, CMatrix, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn group_algebra_examples() {
    let z1 = group_algebra(&cyclic(1).unwrap()).unwrap();
    assert_eq!(z1.dim(), 1);
    assert!(verify_all(&z1, tol()).passed());

    let z2 = group_algebra(&cyclic(2).unwrap()).unwrap();
    assert!(max_abs_diff(z2.antipode().unwrap(), &identity(2)) == 0.0);

    let s3 = group_algebra(&symmetric(3).unwrap()).unwrap();
    assert_eq!(s3.dim(), 6);
    assert!(!s3.alg.is_commutative(tol()));
    assert!(s3.coalg.is_cocommutative(tol()));
}

#[test]
fn function_algebra_examples() {
    let z2 = function_algebra(&cyclic(2).unwrap()).unwrap();
    assert!(z2.alg.is_commutative(tol()) && z2.coalg.is_cocommutative(tol()));
    let s3 = symmetric(3).unwrap();
    let f = function_algebra(&s3).unwrap();
    assert!(f.alg.is_commutative(tol()));
    assert!(f.coalg.cocommutator_residual() > 0.5);
    // The dual basis of the group elements is the basis of point masses.
    let d = dual_hopf(&group_algebra(&s3).unwrap()).unwrap();
    assert!(check_morphism(&identity(6), &d, &f, tol()).unwrap());
}

#[test]
fn every_catalog_algebra_is_a_hopf_algebra() {
    for g in standard_groups() {
        for h in [group_algebra(&g).unwrap(), function_algebra(&g).unwrap()] {
            let r = verify_all(&h, tol());
            assert!(r.passed(), "{}: {r}", h.name);
            assert!(check_cancellation(&h, tol()), "{}", h.name);
        }
    }
}

#[test]
fn irreducible_dimensions_fill_the_algebra() {
    let mut rng = seeded(4);
    for g in standard_groups().into_iter().filter(|g| g.order() <= 8) {
        for h in [group_algebra(&g).unwrap(), function_algebra(&g).unwrap()] {
            let h = Arc::new(h);
            let t = irr_table(&h, tol(), &mut rng).unwrap();
            let sum: usize = t.dims().iter().map(|n| n * n).sum();
            assert_eq!(sum, g.order(), "{}", h.name);
        }
    }
}

#[test]
fn magic_block_examples() {
    let zero = CMatrix::zeros(2, 2);
    let one = identity(2);
    let u = magic_block_example(&zero, &zero, tol()).unwrap();
    assert!(validate_magic(&u, tol()).unwrap().passed());
    for (j, row) in u.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            let expected = if j == k { &one } else { &zero };
            assert_eq!(x, expected);
        }
    }
    let u = magic_block_example(&one, &zero, tol()).unwrap();
    assert_eq!(u[0][1], one);
    assert_eq!(u[1][0], one);
    assert_eq!(u[0][0], zero);
    assert!(validate_magic(&u, tol()).unwrap().passed());

    // Rank-one projections with non-commuting images.
    let p = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let q = CMatrix::from_element(2, 2, c(0.5, 0.0));
    let u = magic_block_example(&p, &q, tol()).unwrap();
    assert!(validate_magic(&u, tol()).unwrap().passed());
    assert!(max_abs_diff(&(&u[0][1] * &u[2][3]), &(&u[2][3] * &u[0][1])) > 0.1);

    let not_projection = CMatrix::from_element(2, 2, c(1.0, 0.0));
    assert!(magic_block_example(&not_projection, &q, tol()).is_err());
}

#[test]
fn presentation_examples() {
    let s3 = sn_plus_presentation(3).unwrap();
    let d = s3.delta.as_ref().unwrap();
    assert!(delta_well_defined(&s3, d, DEFAULT_DEGREE_CAP, tol()).unwrap().passed());

    let p = suq2_presentation(1.0).unwrap();
    let ag = p.parse_poly("a g").unwrap();
    let ga = p.parse_poly("g a").unwrap();
    let diff = normal_form(&ag.sub(&ga), &p, 10_000).unwrap();
    assert!(diff.is_empty());

    let p = suq2_presentation(2.0).unwrap();
    let r = eval_hom(&p, &[identity(1), identity(1)], tol()).unwrap();
    assert!(!r.passed());

    assert!(sn_plus_presentation(0).is_err());
    assert!(suq2_presentation(0.0).is_err());
}

#[test]
fn synthetic_nonkac_examples() {
    let src = synthetic_nonkac(&[(2, 2.0)]).unwrap();
    let q = &src.qs()[0];
    assert!((trace(&q.q).re - 2.5).abs() < 1e-12);
    assert!((trace(&q.inverse()).re - 2.5).abs() < 1e-12);

    let kac = synthetic_nonkac(&[(1, 1.0)]).unwrap();
    assert!(unimodularity_report(&kac, tol()).unwrap().q_identity);

    let src = synthetic_nonkac(&[(2, 3.0), (1, 1.0)]).unwrap();
    let m = modular_report(&src, tol()).unwrap();
    assert!(m.report.passed());
    assert!(m.weight_gap > 1.0 && m.witness.is_some());
    assert!(!unimodularity_report(&src, tol()).unwrap().weights_equal);

    assert!(synthetic_nonkac(&[(2, -1.0)]).is_err());
}

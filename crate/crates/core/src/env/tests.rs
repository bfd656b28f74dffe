use super::*;
use crate::abelian::from_exponents;
use crate::error::Error;
use crate::exactla::{unit_vector, FieldElement, FiniteField, Matrix, Subspace, Vector};
use crate::liealg::AlgebraPresentation;

fn f(p: u32) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

fn vec_of(field: &FiniteField, coords: &[i64]) -> Vector {
    coords.iter().map(|&c| field.from_int(c)).collect()
}

fn heisenberg(p: u32, pmap: [[i64; 3]; 3]) -> AlgebraPresentation {
    let field = f(p);
    let mut a = AlgebraPresentation::new(field.clone(), 3);
    a.set_bracket(0, 1, vec_of(&field, &[0, 0, 1])).unwrap();
    for (i, v) in pmap.iter().enumerate() {
        a.set_pmap(i, vec_of(&field, v)).unwrap();
    }
    a.with_names(vec!["x".into(), "y".into(), "z".into()]).unwrap()
}

fn one_dim(p: u32, c: i64) -> AlgebraPresentation {
    let field = f(p);
    let mut a = AlgebraPresentation::new(field.clone(), 1);
    a.set_pmap(0, vec_of(&field, &[c])).unwrap();
    a
}

/// `[x,y]=z, [x,z]=w` over `F_3`, zero p-map.
fn filiform3() -> AlgebraPresentation {
    let field = f(3);
    let mut a = AlgebraPresentation::new(field.clone(), 4);
    a.set_bracket(0, 1, vec_of(&field, &[0, 0, 1, 0])).unwrap();
    a.set_bracket(0, 2, vec_of(&field, &[0, 0, 0, 1])).unwrap();
    a.validated().unwrap()
}

/// Monomial index of `x^a y^b z^c` in `u` over three generators.
fn mono(u: &PbwAlgebra, e: &[u8]) -> Vector {
    unit_vector(u.dim(), u.index_of(e))
}

fn fixtures() -> Vec<AlgebraPresentation> {
    vec![
        one_dim(2, 0),
        one_dim(3, 0),
        one_dim(2, 1),
        heisenberg(2, [[0; 3]; 3]),
        heisenberg(2, [[0, 0, 1], [0, 0, 0], [0, 0, 0]]),
        heisenberg(2, [[0, 0, 1], [0, 0, 1], [0, 0, 0]]),
        heisenberg(3, [[0; 3]; 3]),
        heisenberg(3, [[0, 0, 1], [0, 0, 2], [0, 0, 0]]),
        from_exponents(&f(2), &[3]),
        from_exponents(&f(2), &[2, 1]),
        from_exponents(&f(3), &[2, 1]),
        filiform3(),
    ]
}

#[test]
fn truncated_and_toral_one_dimensional() {
    let u = PbwAlgebra::new(&one_dim(3, 0)).unwrap();
    assert_eq!(u.dim(), 3);
    let x = u.embed(&[FieldElement::ONE]);
    assert!(crate::exactla::is_zero(&u.pow(&x, 3)));
    assert_eq!(u.nilpotency_index(), Some(3));

    let u = PbwAlgebra::new(&one_dim(2, 1)).unwrap();
    let x = u.embed(&[FieldElement::ONE]);
    assert_eq!(u.pow(&x, 2), x);
    assert_eq!(u.nilpotency_index(), None);
}

#[test]
fn heisenberg_straightening_and_filtration() {
    let h = heisenberg(2, [[0; 3]; 3]);
    let u = PbwAlgebra::new(&h).unwrap();
    let field = h.field();
    assert_eq!(u.dim(), 8);
    assert!(u.verify_embedding().is_empty());
    assert!(u.check_associativity(3));
    let (x, y, z) = (mono(&u, &[1, 0, 0]), mono(&u, &[0, 1, 0]), mono(&u, &[0, 0, 1]));
    let yx = u.mul(&y, &x);
    let expected = crate::exactla::add(field, &mono(&u, &[1, 1, 0]), &z);
    assert_eq!(yx, expected);
    let _ = x;

    let series = u.augmentation_series(None);
    let dims: Vec<usize> = series.iter().map(Subspace::dim).collect();
    assert_eq!(dims, vec![7, 5, 3, 1, 0]);
    assert_eq!(u.nilpotency_index(), Some(5));

    let jl = u.jl_subspace().unwrap();
    let expected =
        Subspace::from_vectors(field, 8, [mono(&u, &[1, 0, 1]), mono(&u, &[0, 1, 1]), mono(&u, &[1, 1, 1])]).unwrap();
    assert_eq!(jl, expected);
    assert!(jl.is_subspace_of(field, &series[1]).unwrap());

    assert_eq!(u.dimension_subalgebra_oracle(2), h.span(&[h.unit(2)]));
    assert_eq!(u.n_quotient_dims(&h.derived_p()), (1, 1));
    assert_eq!(u.n_quotient_dims(&Subspace::zero(3)), (0, 0));

    let counts = u.weight_basis_counts(&series).unwrap();
    for c in &counts {
        assert!(c.basis, "{c:?}");
        assert_eq!(c.omega_dim, c.monomials);
    }
}

#[test]
fn heights_and_weights() {
    let h = heisenberg(2, [[0; 3]; 3]);
    let u = PbwAlgebra::new(&h).unwrap();
    let series = u.augmentation_series(None);
    assert_eq!(u.height(&series, &h.unit(2)), Some(2));
    assert_eq!(u.height(&series, &h.unit(0)), Some(1));
    assert_eq!(u.height(&series, &h.zero()), None);
    let (_, heights) = u.height_basis(&series).unwrap();
    assert_eq!(heights, vec![1, 1, 2]);
    assert_eq!(u.weight(u.index_of(&[1, 1, 1]), &[1, 1, 2]), 4);
}

#[test]
fn oracle_matches_formula() {
    for a in fixtures() {
        let u = PbwAlgebra::new(&a).unwrap();
        assert_eq!(u.dim(), (a.characteristic() as usize).pow(a.dim() as u32));
        assert!(u.verify_embedding().is_empty());
        let top = u.augmentation_series(None).len() + 1;
        for n in 1..=top {
            assert_eq!(a.dimension_subalgebra(n).space, u.dimension_subalgebra_oracle(n), "{a:?} n={n}");
        }
        assert_eq!(u.nilpotency_index().is_some(), a.is_p_nilpotent());
    }
}

#[test]
fn n_quotient_identity() {
    for a in fixtures() {
        let u = PbwAlgebra::new(&a).unwrap();
        for n in [Subspace::zero(a.dim()), a.derived_p(), a.center(), a.whole()] {
            let (lhs, rhs) = u.n_quotient_dims(&n);
            assert_eq!(lhs, rhs, "{a:?}");
            assert_eq!(u.n_intersection(&n), a.commutator_plus_p_powers(&n));
        }
    }
}

#[test]
fn e_space_decomposition() {
    let a = from_exponents(&f(2), &[1, 1]);
    let u = PbwAlgebra::new(&a).unwrap();
    let x = u.quotient_basis_lift().unwrap();
    let e = u.e_space(&x).unwrap();
    assert_eq!(e, Subspace::from_vectors(a.field(), 4, [mono(&u, &[1, 1])]).unwrap());

    for a in fixtures().into_iter().filter(|a| a.is_p_nilpotent()) {
        let u = PbwAlgebra::new(&a).unwrap();
        let x = u.quotient_basis_lift().unwrap();
        let e = u.e_space(&x).unwrap();
        let check = u.check_decomposition(&e).unwrap();
        assert!(check.passed(), "{a:?}: {check:?}");
        let central = u.verify_e_centrality(&e, true).unwrap();
        assert!(central.violations.is_empty(), "{:?}", central.violations);
    }
    let u = PbwAlgebra::new(&one_dim(2, 1)).unwrap();
    let e = Subspace::zero(u.dim());
    assert!(matches!(u.verify_e_centrality(&e, false), Err(Error::NotPNilpotent)));
}

#[test]
fn fingerprint_examples() {
    let h = heisenberg(2, [[0; 3]; 3]);
    let fp = fingerprint(&h).unwrap();
    assert_eq!(fp.omega_dims, vec![7, 5, 3, 1, 0]);
    assert_eq!(fp.dim_quotients, vec![2, 1]);
    assert_eq!(fp.main_quotient_dim, 3);
    assert_eq!(fp.nilpotency_index_omega, 5);
    assert_eq!(fp.jl_dim, 3);

    let a = fingerprint(&from_exponents(&f(2), &[3])).unwrap();
    let b = fingerprint(&from_exponents(&f(2), &[2, 1])).unwrap();
    assert!(a.differences(&b).contains(&"l_mod_lp_exponents"));
    assert!(matches!(fingerprint(&one_dim(2, 1)), Err(Error::NotPNilpotent)));
}

#[test]
fn fingerprint_survives_basis_change() {
    let field = f(3);
    let g = Matrix::from_rows(
        vec![
            vec_of(&field, &[1, 2, 0, 1]),
            vec_of(&field, &[0, 1, 1, 0]),
            vec_of(&field, &[0, 0, 1, 2]),
            vec_of(&field, &[1, 0, 0, 0]),
        ],
        4,
    )
    .unwrap();
    assert!(g.inverse(&field).is_some());
    let a = filiform3();
    let b = a.change_basis(&g).unwrap();
    assert_eq!(fingerprint(&a).unwrap(), fingerprint(&b).unwrap());
}

#[test]
fn shadow_is_preserved_by_basis_change() {
    let field = f(2);
    let a = heisenberg(2, [[0, 0, 1], [0, 0, 0], [0, 0, 0]]);
    let g =
        Matrix::from_rows(vec![vec_of(&field, &[1, 1, 0]), vec_of(&field, &[0, 1, 0]), vec_of(&field, &[1, 0, 1])], 3)
            .unwrap();
    let b = a.change_basis(&g).unwrap();
    let ua = PbwAlgebra::new(&a).unwrap();
    let ub = PbwAlgebra::new(&b).unwrap();
    // b-coordinates of the old basis vectors are the columns of G^{-1}.
    let inv = g.inverse(&field).unwrap();
    let images: Vec<Vector> = (0..3).map(|i| ub.embed(&inv.column(i))).collect();
    assert!(ua.respects_relations(&ub, &images));
    let phi = ua.induced_map(&ub, &images);
    assert_eq!(phi.rank(&field), 8);
    let sa = ua.augmentation_series(None);
    let sb = ub.augmentation_series(None);
    assert!(ua.filtration_shadow(&sa, &ub, &sb, &phi).unwrap().iter().all(|&ok| ok));
}

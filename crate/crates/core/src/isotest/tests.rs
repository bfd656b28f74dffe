use super::*;
use crate::abelian::{abelian_iso, from_exponents};
use crate::exactla::{FiniteField, Matrix, Vector};
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
    a
}

fn one_dim(p: u32, c: i64) -> AlgebraPresentation {
    let field = f(p);
    let mut a = AlgebraPresentation::new(field.clone(), 1);
    a.set_pmap(0, vec_of(&field, &[c])).unwrap();
    a
}

fn small_f2() -> Vec<AlgebraPresentation> {
    let field = f(2);
    vec![
        from_exponents(&field, &[1, 1, 1]),
        from_exponents(&field, &[2, 1]),
        from_exponents(&field, &[3]),
        heisenberg(2, [[0; 3]; 3]),
        heisenberg(2, [[0, 0, 1], [0, 0, 0], [0, 0, 0]]),
        heisenberg(2, [[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
        heisenberg(2, [[0, 0, 1], [0, 0, 1], [0, 0, 0]]),
        heisenberg(2, [[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
    ]
}

fn shuffle(a: &AlgebraPresentation) -> AlgebraPresentation {
    let field = a.field().clone();
    let n = a.dim();
    // Unitriangular mixing followed by a cyclic shift of the basis.
    let mut g = Matrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            g.set(i, j, field.from_int((i + 2 * j) as i64));
        }
    }
    let mut shift = Matrix::zeros(n, n);
    for i in 0..n {
        shift.set((i + 1) % n, i, field.one());
    }
    a.change_basis(&g.mul(&field, &shift).unwrap()).unwrap()
}

fn is_witness(s: &IsoSearch) -> bool {
    matches!(s.outcome, IsoOutcome::Witness(_))
}

#[test]
fn identity_and_base_change_witnesses() {
    for a in small_f2() {
        let s = lie_iso_search(&a, &a, SearchOptions::default()).unwrap();
        let IsoOutcome::Witness(w) = s.outcome else { panic!("{a:?}") };
        assert!(verify_lie_witness(&a, &a, &w).is_ok());
        let b = shuffle(&a);
        let s = lie_iso_search(&a, &b, SearchOptions::default()).unwrap();
        let IsoOutcome::Witness(w) = s.outcome else { panic!("{a:?}") };
        assert!(verify_lie_witness(&a, &b, &w).is_ok());
    }
}

#[test]
fn invariant_mismatch_stops_at_depth_zero() {
    let h = heisenberg(2, [[0; 3]; 3]);
    let ab = from_exponents(&f(2), &[1, 1, 1]);
    let s = lie_iso_search(&h, &ab, SearchOptions::default()).unwrap();
    assert!(matches!(s.outcome, IsoOutcome::NotIsomorphic(_)));
    assert_eq!(s.nodes, 0);
}

#[test]
fn agrees_with_abelian_oracle() {
    for p in [2, 3] {
        let field = f(p);
        let parts: [&[u32]; 3] = [&[3], &[2, 1], &[1, 1, 1]];
        for a in parts {
            for b in parts {
                let (x, y) = (from_exponents(&field, a), shuffle(&from_exponents(&field, b)));
                let s = lie_iso_search(&x, &y, SearchOptions::default()).unwrap();
                assert_eq!(is_witness(&s), abelian_iso(&x, &y).unwrap().is_some());
                assert!(!matches!(s.outcome, IsoOutcome::Inconclusive));
            }
        }
    }
}

#[test]
fn pruning_is_conservative() {
    let algebras = small_f2();
    let unpruned = SearchOptions { prune: false, ..SearchOptions::default() };
    for a in &algebras {
        for b in &algebras {
            let pruned = lie_iso_search(a, b, SearchOptions::default()).unwrap();
            let full = lie_iso_search(a, b, unpruned).unwrap();
            assert_eq!(is_witness(&pruned), is_witness(&full), "{a:?} {b:?}");
            assert!(!matches!(full.outcome, IsoOutcome::Inconclusive));
        }
    }
}

#[test]
fn canonical_ids_match_search() {
    let mut algebras = small_f2();
    algebras.extend(small_f2().iter().map(shuffle));
    algebras.push(one_dim(2, 1));
    algebras.push(from_exponents(&f(2), &[1]).direct_sum(&one_dim(2, 1)).unwrap());
    for a in &algebras {
        let ca = canonical_form(a, CANONICAL_BUDGET);
        assert!(ca.exact);
        for b in &algebras {
            let cb = canonical_form(b, CANONICAL_BUDGET);
            if a.dim() != b.dim() {
                assert_ne!(ca.id, cb.id);
                continue;
            }
            let s = lie_iso_search(a, b, SearchOptions::default()).unwrap();
            assert_eq!(ca.id == cb.id, is_witness(&s), "{} {}", ca.id, cb.id);
        }
    }
}

#[test]
fn swapped_p_maps_are_isomorphic() {
    let a = heisenberg(2, [[0, 0, 1], [0, 0, 0], [0, 0, 0]]);
    let b = heisenberg(2, [[0, 0, 0], [0, 0, 1], [0, 0, 0]]);
    assert_eq!(class_id(&a), class_id(&b));
    // The p-map on span{x, y} is the quadratic form ab + (p-images); only
    // the anisotropic form a^2 + ab + b^2 gives a new class.
    assert_eq!(class_id(&a), class_id(&heisenberg(2, [[0; 3]; 3])));
    let c = heisenberg(2, [[0, 0, 1], [0, 0, 1], [0, 0, 0]]);
    assert_ne!(class_id(&a), class_id(&c));
}

#[test]
fn graded_ids_survive_base_change() {
    for a in small_f2().into_iter().filter(AlgebraPresentation::is_p_nilpotent) {
        let g1 = a.graded().unwrap();
        let g2 = shuffle(&a).graded().unwrap();
        let (c1, c2) = (graded_canonical_form(&g1, CANONICAL_BUDGET), graded_canonical_form(&g2, CANONICAL_BUDGET));
        assert!(c1.exact);
        assert_eq!(c1.id, c2.id);
    }
}

#[test]
fn envelope_search_examples() {
    let nil = one_dim(2, 0);
    let toral = one_dim(2, 1);
    let s = env_generator_iso_search(&nil, &nil, DEFAULT_BUDGET).unwrap();
    assert!(matches!(s.outcome, EnvOutcome::Found { .. }));
    assert_eq!(env_generator_iso_search(&nil, &toral, DEFAULT_BUDGET).unwrap().outcome, EnvOutcome::NotIsomorphic);
    assert_eq!(env_generator_iso_search(&toral, &nil, DEFAULT_BUDGET).unwrap().outcome, EnvOutcome::NotIsomorphic);

    let h = heisenberg(2, [[0, 0, 1], [0, 0, 0], [0, 0, 0]]);
    let s = env_generator_iso_search(&h, &shuffle(&h), DEFAULT_BUDGET).unwrap();
    assert!(matches!(s.outcome, EnvOutcome::Found { .. }));

    let big = from_exponents(&f(3), &[1, 1, 1, 1, 1, 1]);
    assert!(matches!(env_generator_iso_search(&big, &big, 10), Err(crate::Error::SizeLimit { .. })));
}

#[test]
fn envelope_search_sees_through_non_isomorphic_lie_algebras() {
    // Abelian {1,1} and the 2-dim algebra with x^[2] = y are not isomorphic
    // as restricted Lie algebras; their envelopes have different ω^2.
    let a = from_exponents(&f(2), &[1, 1]);
    let b = from_exponents(&f(2), &[2]);
    let s = env_generator_iso_search(&a, &b, DEFAULT_BUDGET).unwrap();
    assert_eq!(s.outcome, EnvOutcome::NotIsomorphic);
}

#[test]
fn consistency_examples() {
    let h = heisenberg(2, [[0; 3]; 3]);
    let r = main_theorem_consistency(&h, &shuffle(&h), SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Consistent);
    let r = main_theorem_consistency(&h, &from_exponents(&f(2), &[1, 1, 1]), SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Distinguished);
    assert!(!r.differing.is_empty());
}

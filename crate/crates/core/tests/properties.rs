use proptest::prelude::*;
use uea_core::exactlin::scalar::{self, Scalar};
use uea_core::exactlin::{GenId, LinComb};
use uea_core::io::{algebra_spec, build_algebra};
use uea_core::linfty::{LInftyAlgebra, LInftyMorphism};
use uea_core::permutahedra::{check_hv_contraction, check_hv_functoriality, Contractions};
use uea_core::uea::{
    alt_bracket_check, closed_form_m2_check, pbw_compare, stasheff_check, AInftyStructure, Caps,
};

fn rational() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| scalar::ratio(p, q))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |c| c != &scalar::zero())
}

fn names(k: usize) -> Vec<String> {
    ["a", "b", "c"][..k].iter().map(|s| s.to_string()).collect()
}

/// Every antisymmetric bracket on a two-dimensional space is a Lie bracket.
fn two_dim_lie(lambda: Scalar, mu: Scalar) -> LInftyAlgebra {
    let mut l = LInftyAlgebra::abelian(names(2), vec![0, 0]).unwrap();
    let mut v = LinComb::term(0, lambda);
    v.add_term(1, mu);
    l.set_bracket(&[0, 1], v).unwrap();
    l
}

/// `[a, b] = α c` with `c` central, in any degrees making the bracket homogeneous.
fn heisenberg_like(alpha: Scalar, da: i32, db: i32) -> LInftyAlgebra {
    let mut l = LInftyAlgebra::abelian(names(3), vec![da, db, da + db]).unwrap();
    l.set_bracket(&[0, 1], LinComb::term(2, alpha)).unwrap();
    l
}

fn two_term(degrees: [i32; 2], d: &Scalar) -> LInftyAlgebra {
    let mut v = LInftyAlgebra::abelian(names(2), degrees.to_vec()).unwrap();
    if degrees[1] == degrees[0] + 1 {
        v.set_bracket(&[0], LinComb::term(1, d.clone())).unwrap();
    }
    v
}

fn passes(l: &LInftyAlgebra) -> Result<(), TestCaseError> {
    let a = AInftyStructure::new(l, Caps::new(3, 3).unwrap()).unwrap();
    prop_assert!(stasheff_check(&a).unwrap().is_ok());
    prop_assert!(closed_form_m2_check(&a).unwrap().is_ok());
    prop_assert!(alt_bracket_check(&a, 2).unwrap().is_ok());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_two_dimensional_lie_algebras(lambda in rational(), mu in rational()) {
        let l = two_dim_lie(lambda, mu);
        passes(&l)?;
        prop_assert!(pbw_compare(&l, 3).unwrap().is_ok());
    }

    #[test]
    fn graded_heisenberg_algebras(alpha in nonzero(), da in -1i32..=1, db in -1i32..=1) {
        let l = heisenberg_like(alpha, da, db);
        passes(&l)?;
    }

    #[test]
    fn json_round_trip(lambda in rational(), mu in rational()) {
        let l = two_dim_lie(lambda, mu);
        prop_assert_eq!(build_algebra(&algebra_spec(&l)).unwrap(), l);
    }

    #[test]
    fn hv_contraction_on_two_term_complexes(d0 in -1i32..=2, step in 0i32..=1, d in nonzero()) {
        let v = two_term([d0, d0 + step], &d);
        let r = check_hv_contraction(&v, &Contractions::standard(), 3).unwrap();
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }

    #[test]
    fn hv_is_natural_in_chain_maps(d0 in -1i32..=1, dv in nonzero(), dw in nonzero(), alpha in rational()) {
        let degrees = [d0, d0 + 1];
        let (v, w) = (two_term(degrees, &dv), two_term(degrees, &dw));
        let beta = &alpha * &dw / &dv;
        let images: Vec<LinComb<GenId>> = vec![LinComb::term(0, alpha), LinComb::term(1, beta)];
        let phi = LInftyMorphism::strict(&v, &w, &images).unwrap();
        let r = check_hv_functoriality(&phi, &Contractions::standard(), 3).unwrap();
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }
}

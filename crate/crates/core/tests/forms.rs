use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use weylstar::element::Element;
use weylstar::forms::{delta_g, lambda_parts, p_lambda_power, presets, sharp, BilinearForm, TensorPair};
use weylstar::linalg::{matmul, rank, transpose, Matrix};
use weylstar::normal_form::normal_form;
use weylstar::sampling;
use weylstar::scalar::{q, Coeff, Exact};

fn real_matrix(f: &BilinearForm<Exact>) -> Matrix {
    f.matrix().iter().map(|r| r.iter().map(|c| c.re.clone()).collect()).collect()
}

#[test]
fn parts_of_standard_ordering() {
    let b = weylstar::basis::GeneratorBasis::even(&["q", "p"]).unwrap();
    let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
    let (plus, minus) = lambda_parts(&std);
    assert_eq!(plus.matrix(), &[vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(0, 1)]]);
    assert_eq!(minus, presets::weyl(&b, &[("q", "p")]).unwrap());
}

#[test]
fn iterated_contraction_of_squares() {
    let b = weylstar::basis::GeneratorBasis::even(&["q", "p"]).unwrap();
    let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
    let p2 = Element::parse(&b, "p^2").unwrap();
    let q2 = Element::parse(&b, "q^2").unwrap();
    let twice = p_lambda_power(&p2, &q2, 2, &std).unwrap();
    let mut want = TensorPair::zero(&b);
    want.add_term(weylstar::basis::Monomial::one(2), weylstar::basis::Monomial::one(2), q(4, 1));
    assert_eq!(twice, want);
    assert!(p_lambda_power(&p2, &q2, 3, &std).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parts_recombine(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let f = sampling::random_form(&mut rng, &b, true);
        let (plus, minus) = lambda_parts(&f);
        prop_assert_eq!(plus.try_add(&minus).unwrap(), f);
        prop_assert!(plus.is_graded_symmetric());
        prop_assert_eq!(minus.graded_transpose(), minus.scale(&-<Exact as Coeff>::one()));
    }

    #[test]
    fn normal_form_is_a_congruence(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let f = sampling::random_form(&mut rng, &b, false);
        let nf = normal_form(&f).unwrap();
        let minus = real_matrix(&lambda_parts(&f).1);
        let bm = &nf.change_of_basis;
        prop_assert_eq!(rank(bm), b.dim());
        prop_assert_eq!(matmul(&transpose(bm), &matmul(&minus, bm)), nf.normal.clone());
        let (d, k, r, s, t) = nf.invariants();
        prop_assert_eq!(2 * d + k, b.even_indices().len());
        prop_assert_eq!(r + s + t, b.odd_indices().len());
        let one = BigRational::one();
        for i in 0..d {
            prop_assert_eq!(&nf.normal[i][d + i], &one);
            prop_assert_eq!(&nf.normal[d + i][i], &-one.clone());
        }
        let e = 2 * d + k;
        for j in 0..r {
            let v = &nf.normal[e + j][e + j];
            prop_assert!(v.is_positive());
            prop_assert!(*v == one || nf.unnormalized.contains(v));
        }
        for j in r..r + s {
            let v = &nf.normal[e + j][e + j];
            prop_assert!(v.is_negative());
            prop_assert!(-v.clone() == one || nf.unnormalized.contains(&-v.clone()));
        }
        for j in r + s..r + s + t {
            prop_assert!(nf.normal[e + j][e + j].is_zero());
        }
    }

    #[test]
    fn laplacian_lowers_degree_by_two(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let g = sampling::random_graded_symmetric(&mut rng, &b);
        let shape = sampling::ElementShape { max_degree: 4, max_terms: 3, complex: false };
        let a = sampling::random_element(&mut rng, &b, shape);
        let out = delta_g(&a, &g).unwrap();
        if let (Some(hi), Some(lo)) = (out.max_degree(), a.max_degree()) {
            prop_assert!(hi + 2 <= lo);
        }
        let linear = sampling::random_even_linear(&mut rng, &b);
        prop_assert!(delta_g(&linear, &g).unwrap().is_zero());
    }

    #[test]
    fn sharp_is_antisymmetric(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let f = sampling::random_form(&mut rng, &b, true);
        let v = sampling::random_even_linear(&mut rng, &b);
        let w = sampling::random_even_linear(&mut rng, &b);
        let vw = sharp(&v, &f).unwrap().apply(&w).unwrap();
        let wv = sharp(&w, &f).unwrap().apply(&v).unwrap();
        prop_assert_eq!(vw, -wv);
    }
}

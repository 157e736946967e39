use std::sync::Arc;

use proptest::prelude::*;
use weylstar::basis::{GeneratorBasis, Parity};
use weylstar::element::{sym_product, Element};
use weylstar::forms::{is_poisson_map, BilinearForm, LinearMap};
use weylstar::sampling::{self, ElementShape, SampleRng};
use weylstar::scalar::{q, Coeff, Exact};
use weylstar::star::{apply_linear, equivalence_transform, graded_commutator, poisson_bracket, star, translate};

fn shape() -> ElementShape {
    ElementShape { max_degree: 3, max_terms: 3, complex: true }
}

fn parse(b: &Arc<GeneratorBasis>, s: &str) -> Element<Exact> {
    Element::parse(b, s).unwrap()
}

fn odd(a: &Element<Exact>) -> bool {
    a.parity().is_some_and(Parity::is_odd)
}

fn signed(a: &Element<Exact>, negative: bool) -> Element<Exact> {
    if negative {
        -a
    } else {
        a.clone()
    }
}

fn homogeneous(rng: &mut SampleRng, b: &Arc<GeneratorBasis>) -> Element<Exact> {
    use rand::Rng;
    let parity = if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
    sampling::random_homogeneous_parity(rng, b, shape(), parity)
}

/// `Λ_V(e_i, e_j) = Λ_W(L e_i, L e_j)`.
fn pullback(lambda_w: &BilinearForm<Exact>, map: &LinearMap<Exact>) -> BilinearForm<Exact> {
    let d = map.source().dim();
    let cols: Vec<Vec<Exact>> = (0..d).map(|j| map.matrix().iter().map(|r| r[j].clone()).collect()).collect();
    let m = (0..d).map(|i| (0..d).map(|j| lambda_w.eval(&cols[i], &cols[j])).collect()).collect();
    BilinearForm::new(map.source(), m).unwrap()
}

#[test]
fn star_matches_bidifferential_oracle() {
    let b = GeneratorBasis::even(&["q", "p"]).unwrap();
    let lambda = BilinearForm::new(&b, vec![vec![q(1, 3), q(2, 1)], vec![q(-1, 1), q(1, 2)]]).unwrap();
    let z = q(5, 7);
    let a = parse(&b, "q^2*p + 3*q");
    let c = parse(&b, "p^3 - q*p");
    let ab = parse(
        &b,
        "p^4*q^2 + 81/7*p^3*q - p^2*q^3 + 15/14*p^2*q^2 - 10/21*p^2*q + 1230/49*p^2 - 36/7*p*q^2 \
         + 300/49*p*q - 205/147*p - 5/14*q^3 - 355/147*q + 1500/343",
    );
    let ba = parse(
        &b,
        "p^4*q^2 - 9/7*p^3*q - p^2*q^3 + 15/14*p^2*q^2 - 10/21*p^2*q - 165/49*p^2 - 3*p*q^2 \
         - 150/49*p*q - 55/147*p - 5/14*q^3 + 590/147*q + 375/343",
    );
    assert_eq!(star(&a, &c, &z, &lambda).unwrap(), ab);
    assert_eq!(star(&c, &a, &z, &lambda).unwrap(), ba);
}

#[test]
fn complex_star_matches_bidifferential_oracle() {
    let b = GeneratorBasis::even(&["q", "p", "r"]).unwrap();
    let i = Exact::i();
    let one = Exact::one();
    let zero = Exact::zero();
    let lambda = BilinearForm::new(
        &b,
        vec![
            vec![zero.clone(), one.clone(), i.clone()],
            vec![-one.clone(), zero.clone(), q(2, 3)],
            vec![i.clone(), zero, one.clone()],
        ],
    )
    .unwrap();
    let z = one + i * q(1, 2);
    let a = parse(&b, "q*p*r - 2*r^2");
    let c = parse(&b, "q^2 + p*r");
    let want = parse(
        &b,
        "p^2*q*r^2 + p^2*q + i/2*p^2*q - p^2*r/2 + i*p^2*r + p*q^3*r - p*q^2 + 2*i*p*q^2 + 2/3*p*q*r \
         + i/3*p*q*r - 2*p*r^3 + p*r^2 + i/2*p*r^2 - 4*p*r - 2*i*p*r + 3/4*p + i*p - 2*q^2*r^2 \
         - 2*q^2*r - i*q^2*r + 4*q*r - 8*i*q*r + 2*q - 3*i/2*q + r/2 + 2*i/3*r + 3 + 4*i",
    );
    assert_eq!(star(&a, &c, &z, &lambda).unwrap(), want);
}

#[test]
fn odd_generators_anticommute_up_to_the_form() {
    let b = GeneratorBasis::new([("e1", Parity::Odd), ("e2", Parity::Odd)]).unwrap();
    let lambda = BilinearForm::new(&b, vec![vec![q(1, 1), q(3, 1)], vec![q(-2, 1), q(0, 1)]]).unwrap();
    let z = q(1, 2);
    let e1 = parse(&b, "e1");
    let e2 = parse(&b, "e2");
    assert_eq!(star(&e1, &e2, &z, &lambda).unwrap(), parse(&b, "e1*e2 + 3/2"));
    assert_eq!(star(&e2, &e1, &z, &lambda).unwrap(), parse(&b, "-e1*e2 - 1"));
    assert_eq!(star(&e1, &e1, &z, &lambda).unwrap(), parse(&b, "1/2"));
    assert_eq!(graded_commutator(&e1, &e2, &z, &lambda).unwrap(), parse(&b, "1/2"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_associative(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let z = sampling::small_scalar(&mut rng, true);
        let [x, y, w] = [0; 3].map(|_| sampling::random_element(&mut rng, &b, shape()));
        let left = star(&star(&x, &y, &z, &lambda).unwrap(), &w, &z, &lambda).unwrap();
        let right = star(&x, &star(&y, &w, &z, &lambda).unwrap(), &z, &lambda).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_is_neutral(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let z = sampling::small_scalar(&mut rng, true);
        let a = sampling::random_element(&mut rng, &b, shape());
        let one = Element::one(&b);
        prop_assert_eq!(star(&one, &a, &z, &lambda).unwrap(), a.clone());
        prop_assert_eq!(star(&a, &one, &z, &lambda).unwrap(), a);
    }

    #[test]
    fn symmetric_product_is_graded_commutative(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let x = homogeneous(&mut rng, &b);
        let y = homogeneous(&mut rng, &b);
        let flipped = signed(&sym_product(&y, &x).unwrap(), odd(&x) && odd(&y));
        prop_assert_eq!(sym_product(&x, &y).unwrap(), flipped);
    }

    #[test]
    fn bracket_is_graded_antisymmetric_and_jacobi(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let [x, y, w] = [0; 3].map(|_| homogeneous(&mut rng, &b));
        let br = |u: &Element<Exact>, v: &Element<Exact>| poisson_bracket(u, v, &lambda).unwrap();
        prop_assert_eq!(br(&x, &y), signed(&br(&y, &x), !(odd(&x) && odd(&y))));
        let lhs = br(&x, &br(&y, &w));
        let rhs = &br(&br(&x, &y), &w) + &signed(&br(&y, &br(&x, &w)), odd(&x) && odd(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_a_graded_derivation(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let [x, y, w] = [0; 3].map(|_| homogeneous(&mut rng, &b));
        let br = |u: &Element<Exact>, v: &Element<Exact>| poisson_bracket(u, v, &lambda).unwrap();
        let lhs = br(&x, &(&y * &w));
        let rhs = &(&br(&x, &y) * &w) + &signed(&(&y * &br(&x, &w)), odd(&x) && odd(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_depends_only_on_antisymmetric_part(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let g = sampling::random_graded_symmetric(&mut rng, &b);
        let shifted = lambda.try_add(&g).unwrap();
        let [x, y] = [0; 2].map(|_| sampling::random_element(&mut rng, &b, shape()));
        prop_assert_eq!(poisson_bracket(&x, &y, &lambda).unwrap(), poisson_bracket(&x, &y, &shifted).unwrap());
    }

    #[test]
    fn translation_is_a_star_automorphism(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let z = sampling::small_scalar(&mut rng, true);
        let phi = sampling::random_even_functional(&mut rng, &b);
        let [x, y] = [0; 2].map(|_| sampling::random_element(&mut rng, &b, shape()));
        let t = |u: &Element<Exact>| translate(u, &phi).unwrap();
        prop_assert_eq!(t(&star(&x, &y, &z, &lambda).unwrap()), star(&t(&x), &t(&y), &z, &lambda).unwrap());
        prop_assert_eq!(t(&(&x * &y)), &t(&x) * &t(&y));
    }

    #[test]
    fn poisson_maps_intertwine_star_products(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda_w = sampling::random_form(&mut rng, &b, true);
        let map = sampling::random_linear_map(&mut rng, &b);
        let lambda_v = pullback(&lambda_w, &map);
        prop_assert!(is_poisson_map(&map, &lambda_v, &lambda_w).unwrap());
        let z = sampling::small_scalar(&mut rng, true);
        let [x, y] = [0; 2].map(|_| sampling::random_element(&mut rng, &b, shape()));
        let l = |u: &Element<Exact>| apply_linear(u, &map).unwrap();
        prop_assert_eq!(l(&star(&x, &y, &z, &lambda_v).unwrap()), star(&l(&x), &l(&y), &z, &lambda_w).unwrap());
    }

    #[test]
    fn laplacian_exponential_intertwines(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let g = sampling::random_graded_symmetric(&mut rng, &b);
        let shifted = lambda.try_add(&g).unwrap();
        let z = sampling::small_scalar(&mut rng, true);
        let [x, y] = [0; 2].map(|_| sampling::random_element(&mut rng, &b, shape()));
        let e = |u: &Element<Exact>| equivalence_transform(u, &z, &g).unwrap();
        prop_assert_eq!(e(&star(&x, &y, &z, &lambda).unwrap()), star(&e(&x), &e(&y), &z, &shifted).unwrap());
    }

    #[test]
    fn conjugation_is_antilinear_and_multiplicative(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let [x, y] = [0; 2].map(|_| sampling::random_element(&mut rng, &b, shape()));
        let c = sampling::small_scalar(&mut rng, true);
        prop_assert_eq!(x.scale(&c).conjugate(), x.conjugate().scale(&c.conj()));
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn display_round_trips_through_the_parser(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let x = sampling::random_element(&mut rng, &b, shape());
        prop_assert_eq!(Element::parse(&b, &x.to_string()).unwrap(), x);
    }
}

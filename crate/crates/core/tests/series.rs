use proptest::prelude::*;
use weylstar::basis::GeneratorBasis;
use weylstar::diagnostics::Verdict;
use weylstar::element::Element;
use weylstar::forms::presets;
use weylstar::sampling;
use weylstar::scalar::{q, Coeff, Exact};
use weylstar::seminorm::WeightedSeminorm;
use weylstar::series::{
    convergence_diagnosis, divergence_witness, exp_element, inner_translation_check, iterated_star_partial, star_exp,
    star_exp_taylor_partial, truncated_star, TruncatedSeries,
};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn qp() -> std::sync::Arc<GeneratorBasis> {
    GeneratorBasis::even(&["q", "p"]).unwrap()
}

#[test]
fn exponential_partial_sums_match_oracle() {
    let b = qp();
    let s = exp_element(&Element::<Exact>::parse(&b, "q").unwrap(), 40).unwrap();
    let two = WeightedSeminorm::new(&b, vec![2.0, 1.0]).unwrap();
    let unit = WeightedSeminorm::unit(&b);
    let cases = [
        (&two, 0.9, 63114194.273756050781946, Verdict::Converging),
        (&unit, 0.5, 3.4695063145210475625, Verdict::Converging),
        (&two, 1.1, 1.0397652814251609003e17, Verdict::Diverging),
    ];
    for (p, r, want, verdict) in cases {
        let report = convergence_diagnosis(&s, p, r).unwrap();
        assert!(close(*report.partials.last().unwrap(), want, 1e-12), "R = {r}");
        assert_eq!(report.verdict, verdict, "R = {r}");
    }
}

#[test]
fn divergent_coefficient_matches_oracle() {
    let w = divergence_witness(0.25, 1.0, 12).unwrap();
    let partials = [
        1.0,
        1.4142135623730950488,
        1.0823922002923939688,
        1.5075123182539682671,
        4.7131885067615476980,
        10.509872346535938758,
        24.285378760110933390,
        65.423306099725016432,
        188.74666462677532931,
        569.58331592006198482,
        1809.2402749265026798,
        6029.5335176137412872,
        20971.041110532106859,
    ];
    for (got, want) in w.partials.iter().zip(partials) {
        assert!(close(*got, want, 1e-12));
    }
}

#[test]
fn star_exponential_central_factor() {
    let b = qp();
    let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
    let w = Element::parse(&b, "q + 2*p").unwrap();
    let s = star_exp(&w, &q(1, 2), &q(3, 4), &std, 4).unwrap();
    assert_eq!(s.central(), &q(3, 16));
}

#[test]
fn generic_route_agrees_with_closed_form() {
    let b = qp();
    let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
    let z = q(2, 3);
    let eq = exp_element(&Element::parse(&b, "q").unwrap(), 12).unwrap();
    let ep = exp_element(&Element::parse(&b, "p").unwrap(), 12).unwrap();
    let closed = truncated_star(&ep, &eq, &z, &std, 6, 0, true).unwrap();
    assert_eq!(closed.central(), &z);
    let open_p = TruncatedSeries::custom(ep.components().to_vec(), false).unwrap();
    let open_q = TruncatedSeries::custom(eq.components().to_vec(), false).unwrap();
    let generic = truncated_star(&open_p, &open_q, &z, &std, 6, 6, false).unwrap();
    // With inputs cut at degree 12, the monomial q^a p^b collects the
    // contractions z^m/m! for m ≤ 12 − max(a, b) only.
    for n in 0..=6 {
        let want = closed.component(n).map_coeffs(|m, c| {
            let top = 12 - m.exponent(0).max(m.exponent(1)) as i64;
            let mut sum = Exact::zero();
            let mut term = Exact::one();
            for j in 0..=top {
                sum = sum + term.clone();
                term = term * z.clone() / Exact::from_i64(j + 1);
            }
            c.clone() * sum
        });
        assert_eq!(generic.component(n), want, "degree {n}");
    }
}

#[test]
fn polynomial_conjugation_reaches_the_shift_for_darboux() {
    let b = qp();
    let darboux = presets::darboux::<Exact>(&b, &[("q", "p")]).unwrap();
    let w = Element::parse(&b, "q").unwrap();
    let v = Element::parse(&b, "p").unwrap();
    let z = q(3, 2);
    let report = inner_translation_check(&w, &v, &z, &darboux, 6).unwrap();
    assert!(report.holds());
    assert_eq!(report.phi, q(3, 1));
    assert_eq!(report.degree0_partials.last().unwrap(), &report.phi);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn iterated_star_matches_closed_form(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = qp();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let w = sampling::random_even_linear(&mut rng, &b);
        let z = sampling::small_scalar(&mut rng, true);
        let t = sampling::small_scalar(&mut rng, true);
        prop_assert_eq!(
            iterated_star_partial(&w, &t, &z, &lambda, 6).unwrap(),
            star_exp_taylor_partial(&w, &t, &z, &lambda, 6).unwrap()
        );
    }

    #[test]
    fn conjugation_by_star_exponentials_translates(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let b = qp();
        let lambda = sampling::random_form(&mut rng, &b, true);
        let w = sampling::random_even_linear(&mut rng, &b);
        let v = sampling::random_even_linear(&mut rng, &b);
        let z = sampling::small_nonzero_rational(&mut rng);
        let report = inner_translation_check(&w, &v, &weylstar::scalar::real(z), &lambda, 6).unwrap();
        prop_assert!(report.holds());
    }

    #[test]
    fn polynomial_series_converge(seed in any::<u64>(), r in 0.0f64..3.0) {
        let mut rng = sampling::rng(seed);
        let b = sampling::mixed_basis();
        let a = sampling::random_element(&mut rng, &b, sampling::ElementShape::default());
        let s = TruncatedSeries::from_polynomial(&a, 10);
        let report = convergence_diagnosis(&s, &WeightedSeminorm::unit(&b), r).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Converging);
    }
}

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use weylstar::lattice::{CauchyPair, LatticeSection, LatticeSpacetime};
use weylstar::scalar::parse_rational;

fn r(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn section(lat: &LatticeSpacetime, cells: &[((usize, usize), &str)]) -> LatticeSection {
    let mut s = lat.zero();
    for &((t, x), v) in cells {
        s.set(t, x, r(v)).unwrap();
    }
    s
}

#[test]
fn propagator_matches_direct_solve() {
    // Rows of Gφ on a 7x5 window with m² = 1/2, from an oracle that
    // solves D u = φ as a linear system instead of stepping in time.
    let lat = LatticeSpacetime::new(7, 5, r("1/2")).unwrap();
    let phi = section(&lat, &[((3, 1), "1"), ((4, 3), "2")]);
    let want = [
        ["2", "-1/4", "-5/2", "13/4", "-9/2"],
        ["-3", "-3/2", "1", "-5/2", "2"],
        ["0", "-1", "-2", "1", "-2"],
        ["0", "0", "0", "-2", "0"],
        ["0", "1", "0", "0", "0"],
        ["1", "-1/2", "1", "2", "0"],
        ["-1", "5/4", "1", "0", "3"],
    ];
    let g = lat.propagator(&phi).unwrap();
    for (t, row) in want.iter().enumerate() {
        let row: Vec<BigRational> = row.iter().map(|v| r(v)).collect();
        assert_eq!(g.row(t), row.as_slice(), "row {t}");
    }
    let psi = section(&lat, &[((1, 0), "1"), ((5, 4), "-1/3"), ((2, 2), "3")]);
    assert_eq!(lat.lambda_cov(&phi, &psi).unwrap(), r("-9"));
}

#[test]
fn retarded_solution_starts_one_row_later() {
    let lat = LatticeSpacetime::massless(6, 9).unwrap();
    let g = lat.green_retarded(&lat.delta(2, 4).unwrap()).unwrap();
    assert_eq!(g.get(3, 4), &r("1"));
    for t in 0..=2 {
        assert!(g.row(t).iter().all(Zero::is_zero));
    }
}

#[test]
fn constant_data_gives_static_solution() {
    let lat = LatticeSpacetime::massless(6, 4).unwrap();
    let k = r("7/3");
    let data = CauchyPair { u0: vec![k.clone(); 4], u1: vec![k.clone(); 4] };
    let u = lat.solve_cauchy(&data, 2).unwrap();
    assert!(u.values().iter().all(|v| *v == k));
}

#[test]
fn boundary_support_is_rejected_by_d() {
    let lat = LatticeSpacetime::massless(5, 4).unwrap();
    assert!(lat.apply_d(&lat.delta(0, 1).unwrap()).is_err());
    assert!(lat.apply_d(&lat.delta(4, 1).unwrap()).is_err());
    assert!(LatticeSpacetime::massless(2, 8).is_err());
}

fn small_section(lat: &LatticeSpacetime, values: &[(usize, usize, i64)]) -> LatticeSection {
    let mut s = lat.zero();
    for &(t, x, v) in values {
        s.set(t, x, BigRational::from_integer(v.into())).unwrap();
    }
    s
}

fn cells(t: usize, n: usize) -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0..t, 0..n, -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn covariant_form_is_antisymmetric(a in cells(8, 5), b in cells(8, 5), m in 0i64..3) {
        let lat = LatticeSpacetime::new(8, 5, BigRational::from_integer(m.into())).unwrap();
        let (phi, psi) = (small_section(&lat, &a), small_section(&lat, &b));
        prop_assert_eq!(lat.lambda_cov(&phi, &psi).unwrap(), -lat.lambda_cov(&psi, &phi).unwrap());
    }

    #[test]
    fn restriction_to_cauchy_data_is_poisson(a in cells(8, 5), b in cells(8, 5), t0 in 0usize..7) {
        let lat = LatticeSpacetime::massless(8, 5).unwrap();
        let (phi, psi) = (small_section(&lat, &a), small_section(&lat, &b));
        let canonical = lat
            .lambda_sigma(&lat.rho_sigma(&phi, t0).unwrap(), &lat.rho_sigma(&psi, t0).unwrap())
            .unwrap();
        prop_assert_eq!(canonical, lat.lambda_cov(&phi, &psi).unwrap());
    }

    #[test]
    fn propagated_sections_solve_the_equation(a in cells(8, 5)) {
        let lat = LatticeSpacetime::new(8, 5, r("1/3")).unwrap();
        let g = lat.propagator(&small_section(&lat, &a)).unwrap();
        prop_assert!(lat.interior_residual(&g).unwrap().is_zero());
    }

    #[test]
    fn images_of_d_are_casimirs(inner in prop::collection::vec((2usize..6, 0usize..5, -3i64..=3), 1..4)) {
        let lat = LatticeSpacetime::massless(8, 5).unwrap();
        let chi = small_section(&lat, &inner);
        let phi = lat.apply_d(&chi).unwrap();
        prop_assert!(lat.propagator(&phi).unwrap().is_zero());
        prop_assert!(lat.casimir_check(&phi).unwrap().holds());
        prop_assert!(lat.rho_sigma(&phi, 3).unwrap().is_zero());
    }

    #[test]
    fn slab_representatives_preserve_pairings(a in cells(8, 5), t0 in 1usize..6) {
        let lat = LatticeSpacetime::massless(8, 5).unwrap();
        let phi = small_section(&lat, &a);
        let psi = lat.slab_representative(&phi, t0).unwrap();
        if let Some((lo, hi)) = psi.time_support() {
            prop_assert!(lo >= t0 && hi <= t0 + 1);
        }
        prop_assert_eq!(lat.propagator(&psi).unwrap(), lat.propagator(&phi).unwrap());
    }
}

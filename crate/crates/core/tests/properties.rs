//! Property tests for the crate-wide invariants.

use pants_measures::counting::budget_check;
use pants_measures::measures::{eta_fn, phi_diag_lower_bound, phi_x_fn, MeasureValue};
use pants_measures::pants::{cosh_m, x_to_length, y_coord, Length, PantsShape, XCoord};
use pants_measures::special::{lasso, rogers_l, Accuracy, UnitArg, PI2_OVER_6};
use pants_measures::torus::{
    enumerate_slopes, eta_partial_sum, fricke_boundary_trace, mcshane_partial_sum,
    torus_from_lengths, Branch, Cutoff, TorusBoundary, TraceTriple,
};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    0.01f64..0.99
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rogers_reflection_bounds_monotone(x in 1e-6f64..0.999_999) {
        let acc = Accuracy::standard();
        let l = rogers_l(UnitArg::new(x).unwrap(), acc);
        let r = rogers_l(UnitArg::new(1.0 - x).unwrap(), acc);
        prop_assert!((l + r - PI2_OVER_6).abs() <= 10.0 * acc.abs_tol());
        prop_assert!((0.0..=PI2_OVER_6).contains(&l));
        // Monotone: a nudge upward never decreases L.
        let l2 = rogers_l(UnitArg::new((x + 1e-6).min(1.0)).unwrap(), acc);
        prop_assert!(l2 >= l);
    }

    #[test]
    fn lasso_identity_on_diagonal(a in 0.001f64..0.999) {
        let acc = Accuracy::standard();
        let ua = UnitArg::new(a).unwrap();
        let la = lasso(ua, ua, acc).unwrap();
        prop_assert!((la - rogers_l(ua, acc)).abs() < 1e-13);
    }

    #[test]
    fn y_coord_two_routes_agree(x1 in coord(), x2 in coord(), x3 in coord()) {
        let p = PantsShape::from_values(x1, x2, x3).unwrap();
        let ls: Vec<Length> = p.coords().iter()
            .map(|&x| x_to_length(XCoord::new(x).unwrap()))
            .collect();
        for j in 1..=3 {
            let y = y_coord(j, &p).unwrap().get();
            prop_assert!(y > 0.0 && y < 1.0);
            let cm = cosh_m(j, ls[0], ls[1], ls[2]).unwrap();
            let via_trig = (cm - 1.0) / (cm + 1.0);
            prop_assert!((y - via_trig).abs() < 1e-10, "j={} {} vs {}", j, y, via_trig);
        }
    }

    #[test]
    fn phi_chain_positivity(x in coord(), y in coord(), z in coord()) {
        // phi(x,y,z) >= phi(t,t,t) > -24 t^3 log t + 24 t^3 > 0.
        let t = (x * y * z).cbrt();
        let top = phi_x_fn(&[x, y, z]).unwrap();
        let diag = phi_x_fn(&[t, t, t]).unwrap();
        let bound = phi_diag_lower_bound(t).unwrap();
        prop_assert!(top >= diag - 1e-12);
        prop_assert!(diag > bound);
        prop_assert!(bound > 0.0);
    }

    #[test]
    fn eta_dominates_equal_waist_phi(x in coord(), y in coord()) {
        let e = eta_fn(&[x, y]).unwrap();
        let f = phi_x_fn(&[x, y, y]).unwrap();
        prop_assert!(e >= f - 1e-12);
        prop_assert!(e > 0.0);
    }

    #[test]
    fn phi_permutation_invariance(x in coord(), y in coord(), z in coord()) {
        let a = phi_x_fn(&[x, y, z]).unwrap();
        let b = phi_x_fn(&[z, x, y]).unwrap();
        let c = phi_x_fn(&[y, x, z]).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        prop_assert!((a - c).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn fricke_invariant_under_markov_moves(la in 0.5f64..4.0, lb in 0.1f64..6.0) {
        let alpha = Length::new(la).unwrap();
        let beta = Length::new(lb).unwrap();
        let seed = match torus_from_lengths(TorusBoundary::Geodesic(beta), alpha, Branch::Plus) {
            Ok(s) => s,
            Err(_) => return Ok(()), // inadmissible pair; nothing to test
        };
        let k = fricke_boundary_trace(&seed);
        prop_assert!((k + 2.0 * (lb / 2.0).cosh()).abs() < 1e-10 * k.abs().max(1.0));
        // The move is an involution and preserves the boundary trace.
        let n = seed.markov_neighbor();
        prop_assert!((fricke_boundary_trace(&n) - k).abs() < 1e-10 * k.abs().max(1.0));
        let back = n.markov_neighbor();
        prop_assert!((back.tz() - seed.tz()).abs() <= 1e-12 * seed.tz().abs().max(1.0));
    }

    #[test]
    fn enumeration_no_duplicates_all_hyperbolic(la in 1.8f64..4.0) {
        let alpha = Length::new(la).unwrap();
        let seed = match torus_from_lengths(TorusBoundary::Cusp, alpha, Branch::Plus) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        let rec = enumerate_slopes(&seed, Cutoff::MaxDenominator(12)).unwrap();
        let mut seen = std::collections::HashSet::new();
        for r in &rec {
            prop_assert!(seen.insert(r.slope), "duplicate slope {:?}", r.slope);
            prop_assert!(r.trace > 2.0);
            prop_assert!(r.length.get() > 0.0);
            let g = gcd(r.slope.p.unsigned_abs(), r.slope.q.unsigned_abs());
            prop_assert!(g == 1 || (r.slope.p.abs() == 1 && r.slope.q == 0));
            prop_assert!(r.slope.q >= 1 || (r.slope.p == 1 && r.slope.q == 0));
        }
    }

    #[test]
    fn partial_sums_monotone_in_cutoff(n in 2u32..24) {
        let seed = TraceTriple::new(3.0, 3.0, 3.0).unwrap();
        let small = mcshane_partial_sum(&seed, Cutoff::MaxDenominator(n)).unwrap();
        let large = mcshane_partial_sum(&seed, Cutoff::MaxDenominator(n + 1)).unwrap();
        prop_assert!(large.value >= small.value);
        // Strict increase is observable until the new terms (~trace^-2,
        // doubly tiny by height ~13) fall below one ulp of the total.
        if n < 12 {
            prop_assert!(large.value > small.value);
        }
        prop_assert!(large.value < 0.5);

        let lb = Length::new(2.0).unwrap();
        let g = torus_from_lengths(TorusBoundary::Geodesic(lb), lb, Branch::Plus).unwrap();
        let se_small = eta_partial_sum(&g, lb, Cutoff::MaxDenominator(n)).unwrap();
        let se_large = eta_partial_sum(&g, lb, Cutoff::MaxDenominator(n + 1)).unwrap();
        prop_assert!(se_large.value >= se_small.value);
    }

    #[test]
    fn budget_total_permutation_invariant(values in prop::collection::vec(1e-6f64..1.0, 1..200)) {
        let fwd: Vec<MeasureValue> = values.iter().map(|&v| MeasureValue::new(v).unwrap()).collect();
        let mut rev = fwd.clone();
        rev.reverse();
        let a = budget_check(&fwd, 2).unwrap();
        let b = budget_check(&rev, 2).unwrap();
        prop_assert!((a.total - b.total).abs() <= 1e-12 * a.total.max(1.0));
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

use proptest::prelude::*;
use tetrablock_core::autgroup::{act_left, act_right, DiscAut};
use tetrablock_core::interpolate::{schwarz_feasible, solve_schwarz, solve_schwarz_with, SolveOptions};
use tetrablock_core::linalg::{mobius_matricial, op_norm, pi_map, sqrt_psd, CMat2};
use tetrablock_core::metrics::{dist_from_origin, dist_triangular_pair};
use tetrablock_core::musyn::{det_audit, lift_to_sigma, mu_diag};
use tetrablock_core::sampling::{
    box_matrix, contraction, disc_aut, gaussian_matrix, in_disc, point_in_e, seeded, triangular_in_e, unitary,
};
use tetrablock_core::tetrablock::{
    beta_params, closed_margin, d_of, geodesic_eval, in_closure, in_open, margins, membership, psi,
    GeodesicDisc,
};
use tetrablock_core::{Complex64 as C, CPoint3};

fn cx() -> impl Strategy<Value = C> {
    (-1.2f64..1.2, -1.2f64..1.2).prop_map(|(re, im)| C::new(re, im))
}

fn any_point() -> impl Strategy<Value = CPoint3> {
    (cx(), cx(), cx()).prop_map(|(a, b, c)| CPoint3::new(a, b, c))
}

fn decided(x: &CPoint3) -> bool {
    margins(x).m3.abs() > 1e-6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn op_norm_is_unitarily_invariant(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = gaussian_matrix(&mut rng);
        let (u, v) = (unitary(&mut rng), unitary(&mut rng));
        prop_assert!((op_norm(&(u * a * v)) - op_norm(&a)).abs() < 1e-12 * (1.0 + op_norm(&a)));
    }

    #[test]
    fn mobius_maps_invert(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (z, x) = (contraction(&mut rng), contraction(&mut rng));
        let y = mobius_matricial(&z, &x).unwrap();
        prop_assert!(op_norm(&y) < 1.0 + 1e-12);
        let back = mobius_matricial(&(-z), &y).unwrap();
        prop_assert!(back.dist(&x) < 1e-10);
    }

    #[test]
    fn sqrt_of_square(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let b = gaussian_matrix(&mut rng);
        let s = sqrt_psd(&(b.adjoint() * b)).unwrap();
        prop_assert!(sqrt_psd(&(s * s)).unwrap().dist(&s) < 1e-10 * (1.0 + s.max_abs()));
    }

    #[test]
    fn symmetric_representatives_agree(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = box_matrix(&mut rng, 1.0);
        let s = CMat2::new(a.a11, a.a12, a.a12, a.a22);
        let d = CMat2::diag(C::new(1.0, 0.0), C::new(-1.0, 0.0));
        prop_assert!(pi_map(&s).dist(&pi_map(&(d * s * d))) < 1e-15);
    }

    #[test]
    fn swap_and_strange_symmetry(x in any_point()) {
        prop_assume!(decided(&x));
        let inside = in_open(&x);
        prop_assume!(decided(&x.swap()));
        prop_assert_eq!(inside, in_open(&x.swap()));
        let strange = CPoint3::new(x.x1, x.x3.conj(), x.x2.conj());
        prop_assume!(decided(&strange));
        prop_assert_eq!(inside, in_open(&strange));
    }

    #[test]
    fn open_implies_closed(x in any_point()) {
        if in_open(&x) {
            prop_assert!(in_closure(&x));
        }
    }

    #[test]
    fn closure_is_starlike(seed in any::<u64>(), r in 0.0f64..0.999) {
        let mut rng = seeded(seed);
        let x = pi_map(&unitary(&mut rng));
        prop_assert!(in_closure(&x));
        prop_assert!(in_open(&x.dilate(r)));
        let y = CPoint3::new(x.x1 * r, x.x2 * r, x.x3 * (r * r));
        prop_assert!(in_open(&y));
    }

    #[test]
    fn d_characterises_membership(x in any_point()) {
        prop_assume!(!x.is_triangular() && x.x2.norm() < 1.0 && decided(&x));
        let d = d_of(&x).finite().unwrap();
        prop_assume!((d - 1.0).abs() > 1e-9);
        prop_assert_eq!(in_open(&x), d < 1.0);
    }

    #[test]
    fn quotient_ordering(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        let x = if x.x2.norm() <= x.x1.norm() { x } else { x.swap() };
        let q = d_of(&x).finite().unwrap();
        let qp = d_of(&x.swap()).finite().unwrap();
        prop_assert!(qp <= q + 1e-12);
    }

    #[test]
    fn geodesic_discs_reach_their_points(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        let (b1, b2) = beta_params(&x).unwrap();
        let disc = GeodesicDisc::new(b1, b2).unwrap();
        prop_assert!(geodesic_eval(&disc, x.x3).unwrap().dist(&x) < 1e-12);
        let l = in_disc(&mut rng, 0.99);
        prop_assert!(in_closure(&geodesic_eval(&disc, l).unwrap()));
    }

    #[test]
    fn psi_is_bounded_inside(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        let z = in_disc(&mut rng, 1.0);
        prop_assert!(psi(z, &x).unwrap().norm() < 1.0 + 1e-12);
    }

    #[test]
    fn feasibility_matches_distance(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        let l0 = in_disc(&mut rng, 0.999);
        prop_assume!(l0.norm() > 0.0);
        let d = dist_from_origin(&x).unwrap();
        let f = schwarz_feasible(l0, &x).unwrap();
        prop_assume!((l0.norm().atanh() - d).abs() > 1e-9);
        prop_assert_eq!(f.feasible, l0.norm().atanh() >= d);
        prop_assert_eq!(f.feasible, solve_schwarz(l0, &x).is_ok());
    }

    #[test]
    fn distance_grows_along_rays(seed in any::<u64>(), r in 0.05f64..0.95) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        let near = dist_from_origin(&x.dilate(r)).unwrap();
        prop_assert!(near <= dist_from_origin(&x).unwrap() + 1e-12);
    }

    #[test]
    fn triangular_distance_is_invariant(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let t = triangular_in_e(&mut rng);
        let y = point_in_e(&mut rng);
        let (u, w) = (disc_aut(&mut rng), disc_aut(&mut rng));
        let mv = |p: &CPoint3| act_right(&act_left(&u, p).unwrap(), &w).unwrap();
        let before = dist_triangular_pair(&t, &y).unwrap();
        let after = dist_triangular_pair(&mv(&t), &mv(&y)).unwrap();
        prop_assert!((before - after).abs() < 1e-8 * (1.0 + before));
        prop_assert!((before - dist_triangular_pair(&y, &t).unwrap()).abs() < 1e-10 * (1.0 + before));
    }

    #[test]
    fn actions_preserve_e(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        let u = disc_aut(&mut rng);
        prop_assert!(closed_margin(&act_left(&u, &x).unwrap()) > -1e-12);
        prop_assert!(closed_margin(&act_right(&x, &u).unwrap()) > -1e-12);
        let id = act_left(&DiscAut::identity(), &x).unwrap();
        prop_assert!(id.dist(&x) < 1e-15);
    }

    #[test]
    fn lifts_are_consistent(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        let q = d_of(&x).finite().unwrap().max(d_of(&x.swap()).finite().unwrap());
        prop_assume!(q < 0.99);
        let l0 = C::from_polar(q + (0.999 - q) * 0.5, 1.0);
        let phi = solve_schwarz(l0, &x).unwrap();
        let f0 = phi.lift_evaluate(C::new(0.0, 0.0)).unwrap();
        prop_assert!(f0.a11.norm() < 1e-12 && f0.a21.norm() < 1e-12);
        let fl = phi.lift_evaluate(l0).unwrap();
        prop_assert!((fl.det() - x.x3).norm() < 1e-10);
        for _ in 0..10 {
            let l = in_disc(&mut rng, 0.999);
            let f = phi.lift_evaluate(l).unwrap();
            prop_assert!(pi_map(&f).dist(&phi.evaluate(l).unwrap()) < 1e-10);
            let s = lift_to_sigma(&phi.evaluate(l).unwrap());
            prop_assert!(pi_map(&s).dist(&phi.evaluate(l).unwrap()) < 1e-15);
        }
    }

    #[test]
    fn epsilon_fallback_tracks_the_extremal_solution(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let x = point_in_e(&mut rng);
        prop_assume!(!x.is_triangular() && x.x1.norm().min(x.x2.norm()) > 1e-3);
        let q = d_of(&x).finite().unwrap().max(d_of(&x.swap()).finite().unwrap());
        prop_assume!(q > 0.05 && q < 0.9);
        let l0 = C::from_polar(q, 0.3);
        let opts = SolveOptions { epsilon_fallback: Some(1e-6), ..SolveOptions::default() };
        let phi = solve_schwarz_with(l0, &x, opts).unwrap();
        prop_assert!(phi.evaluate(phi.node()).unwrap().dist(&x) < 1e-9);
        prop_assert!(phi.evaluate(l0).unwrap().dist(&x) < 1e-4);
    }

    #[test]
    fn mu_is_invariant_under_diagonal_similarity(seed in any::<u64>(), t in -2.3f64..2.3) {
        let mut rng = seeded(seed);
        let a = box_matrix(&mut rng, 1.0);
        let d = t.exp();
        let s = CMat2::new(a.a11, a.a12 * d, a.a21 / d, a.a22);
        prop_assert!((mu_diag(&a, 1e-13) - mu_diag(&s, 1e-13)).abs() < 1e-8);
        prop_assert!(mu_diag(&a, 1e-13) <= op_norm(&a) + 1e-9);
    }

    #[test]
    fn zw_sign_convention(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = box_matrix(&mut rng, 1.0);
        let (z, w) = (in_disc(&mut rng, 1.0), in_disc(&mut rng, 1.0));
        prop_assert!(det_audit(&a, z, w).norm() < 1e-14);
    }

    #[test]
    fn mu_verdict_matches_membership(seed in any::<u64>(), s in 0.3f64..1.5) {
        let mut rng = seeded(seed);
        let a = box_matrix(&mut rng, 1.0).scale(C::new(s, 0.0));
        let m = mu_diag(&a, 1e-13);
        prop_assume!((m - 1.0).abs() > 1e-6);
        prop_assert_eq!(m < 1.0, membership(&pi_map(&a), false, 1e-9).in_set);
    }
}

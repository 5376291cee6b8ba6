use approx::assert_relative_eq;
use proptest::prelude::*;
use radpress_core::barrier::{hop_variable, BarrierScenario};
use radpress_core::catalog::Catalog;
use radpress_core::fusion::{derive_parameters, fit_alpha_measured, fluctuation_sum, hill_wheeler_sigma, DEFAULT_L_MAX};
use radpress_core::numerics::{regularized_gamma_p, regularized_gamma_q};
use radpress_core::polar::{polar_hop_variable, polar_problem};
use radpress_core::sampling::fhat;
use radpress_core::tail::{exceedance_exponent, tail_coefficients};
use radpress_core::units::{convert, thompson_cross_section};
use radpress_core::{OperatorKind, SamplingSpec, Unit};

fn neutron() -> radpress_core::PolarizableParticle {
    Catalog::builtin().particle("neutron").unwrap().clone()
}

fn same_dimension_units() -> impl Strategy<Value = (Unit, Unit)> {
    prop_oneof![
        Just((Unit::MeV, Unit::InvFm)),
        Just((Unit::MeV, Unit::AtomicMass)),
        Just((Unit::Fm, Unit::InvMeV)),
        Just((Unit::Fm2, Unit::Millibarn)),
        Just((Unit::InvMeV2, Unit::Millibarn)),
        Just((Unit::Fm3, Unit::InvMeV3)),
    ]
}

proptest! {
    #[test]
    fn gamma_halves_sum_to_one(s in 0.05f64..60.0, x in 0.0f64..200.0) {
        let sum = regularized_gamma_p(s, x).unwrap() + regularized_gamma_q(s, x).unwrap();
        prop_assert!((sum - 1.0).abs() <= 1e-12, "s={s} x={x} sum={sum}");
    }

    #[test]
    fn unit_round_trip(v in 1e-30f64..1e30, (a, b) in same_dimension_units()) {
        let back = convert(convert(v, a, b).unwrap(), b, a).unwrap();
        prop_assert!(((back - v) / v).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn thomson_scales_as_z4_over_m2(z in 1i32..=100, m in 0.1f64..1e5, k in 1.5f64..10.0) {
        let base = thompson_cross_section(1, m).unwrap();
        let rz = thompson_cross_section(z, m).unwrap() / base;
        prop_assert!((rz / f64::from(z).powi(4) - 1.0).abs() <= 1e-12);
        let rm = thompson_cross_section(1, k * m).unwrap() / base;
        prop_assert!((rm * k * k - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn fhat_even_monotone_bounded(alpha in 0.05f64..0.999, w in 0.0f64..1e3, dw in 0.0f64..10.0) {
        let spec = SamplingSpec::new(alpha).unwrap();
        prop_assert_eq!(fhat(&spec, w), fhat(&spec, -w));
        prop_assert!(fhat(&spec, w + dw) <= fhat(&spec, w));
        prop_assert!(fhat(&spec, w) <= 1.0);
    }

    #[test]
    fn exponent_increases_past_turning_point(
        alpha in 0.1f64..0.9,
        p in prop_oneof![Just(3u32), Just(7u32)],
        t in 0.0f64..1.0,
    ) {
        let kind = if p == 3 { OperatorKind::momentum_flux() } else { OperatorKind::polarizable_force() };
        let coeff = tail_coefficients(&SamplingSpec::new(alpha).unwrap(), &kind).unwrap();
        let lo = coeff.turning_point().map_or(1.0, |x| (2.0 * x).max(1.0));
        if lo < 1e30 {
            let x1 = lo * (1e30 / lo).powf(t);
            let x2 = x1 * 1.5;
            prop_assert!(exceedance_exponent(&coeff, x2).unwrap() > exceedance_exponent(&coeff, x1).unwrap());
        }
    }

    #[test]
    fn charged_hop_is_inverse_square_in_v0(v0 in 0.01f64..0.9, d in 1.0f64..1e6, k in 1.01f64..1.1) {
        let v1 = (v0 * k).min(0.99);
        let a = hop_variable(&BarrierScenario::new(v0, d, 1, 0.5).unwrap());
        let b = hop_variable(&BarrierScenario::new(v1, d, 1, 0.5).unwrap());
        prop_assert!(b < a);
        prop_assert!((b / a * (v1 / v0).powi(2) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn polar_hop_scaling(d in 0.1f64..1e4, v0 in 0.01f64..0.5, k in 1.1f64..3.0) {
        let n = neutron();
        let h = polar_hop_variable(&n, d, v0).unwrap();
        let hd = polar_hop_variable(&n, k * d, v0).unwrap();
        let hv = polar_hop_variable(&n, d, k * v0 / 3.0).unwrap();
        prop_assert!((hd.x / h.x / k.powi(7) - 1.0).abs() <= 1e-12);
        prop_assert!((hv.x / h.x * (k / 3.0).powi(6) - 1.0).abs() <= 1e-12);
        prop_assert!((hd.x_s7 / h.x_s7 - 1.0).abs() <= 1e-14);
        prop_assert!((h.x * h.s.powi(7) / h.x_s7 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn hill_wheeler_grows_with_energy(e in 100.0f64..122.0) {
        let mut sys = Catalog::builtin().system("Ar+Sm").unwrap().clone();
        sys.e = e;
        let lo = hill_wheeler_sigma(&sys, DEFAULT_L_MAX).unwrap();
        sys.e = e + 1.0;
        let hi = hill_wheeler_sigma(&sys, DEFAULT_L_MAX).unwrap();
        prop_assert!(hi > lo);
    }
}

#[test]
fn exponent_grows_as_alpha_grows() {
    let f = |alpha: f64| {
        let c = tail_coefficients(&SamplingSpec::new(alpha).unwrap(), &OperatorKind::momentum_flux()).unwrap();
        exceedance_exponent(&c, 1e10).unwrap()
    };
    let (f4, f3, f2) = (f(0.25), f(1.0 / 3.0), f(0.5));
    assert!(f4 < f3 && f3 < f2, "{f4} {f3} {f2}");
}

#[test]
fn fluctuation_sum_decreases_in_alpha() {
    let derived = derive_parameters(Catalog::builtin().system("Ar+Sm").unwrap()).unwrap();
    let mut prev = f64::INFINITY;
    for i in 0..=16 {
        let alpha = 0.2 + 0.04375 * f64::from(i);
        let s = fluctuation_sum(derived.xi, derived.x0, alpha, DEFAULT_L_MAX).unwrap();
        assert!(s < prev, "alpha={alpha} s={s} prev={prev}");
        prev = s;
    }
}

#[test]
fn partial_wave_truncation_is_harmless() {
    let catalog = Catalog::builtin();
    let sys = catalog.system("Ar+Sm").unwrap();
    let derived = derive_parameters(sys).unwrap();
    let alpha = fit_alpha_measured(sys, DEFAULT_L_MAX).unwrap().alpha;
    let short = fluctuation_sum(derived.xi, derived.x0, alpha, 2000).unwrap();
    let long = fluctuation_sum(derived.xi, derived.x0, alpha, 5000).unwrap();
    assert_relative_eq!(short, long, max_relative = 1e-9);
}

#[test]
fn neutron_fluctuations_lose_at_large_width() {
    let n = neutron();
    for alpha in [0.25, 1.0 / 3.0, 0.5] {
        assert!(polar_problem(&n, alpha, 0.2).unwrap().h(1e4) < 0.0, "alpha={alpha}");
    }
}

#[test]
fn default_partial_wave_count_is_converged() {
    let catalog = Catalog::builtin();
    let sys = catalog.system("Ar+Sm").unwrap();
    let derived = derive_parameters(sys).unwrap();
    let alpha = fit_alpha_measured(sys, DEFAULT_L_MAX).unwrap().alpha;
    let default = fluctuation_sum(derived.xi, derived.x0, alpha, DEFAULT_L_MAX).unwrap();
    let long = fluctuation_sum(derived.xi, derived.x0, alpha, 20_000).unwrap();
    assert_relative_eq!(default, long, max_relative = 1e-9);
}

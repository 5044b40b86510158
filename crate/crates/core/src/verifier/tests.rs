use super::*;
use crate::algebra::{FPoly, Field, RatZ};
use crate::classifier::classify;
use crate::parser::parse_equation;
use crate::solutions::{build_solution, PeriodicSpec, SolutionOptions};

fn family(s: &str, opts: &SolutionOptions) -> (EquationSpec, SolutionFamily) {
    let r = classify(&parse_equation(s).unwrap());
    let sol = build_solution(&r.verdict, &r.canonical, opts).unwrap();
    (r.canonical, sol)
}

fn int_poly(c: &[i64]) -> FPoly {
    FPoly::new(c.iter().map(|&x| RatZ::from_i64(x)).collect())
}

#[test]
fn grid_parse_and_count() {
    let g: Grid = "0:3:20,-1:1:10".parse().unwrap();
    assert_eq!(g, Grid::default());
    assert_eq!(g.points().len(), 200);
    assert_eq!(g.to_string(), "0:3:20,-1:1:10");
    assert!("0:3:0,-1:1:10".parse::<Grid>().is_err());
    assert!("0:3,1".parse::<Grid>().is_err());
}

#[test]
fn power_family_passes() {
    let (spec, sol) = family("F^2 = f^3", &SolutionOptions::default());
    let rep = verify_residual(&spec, &sol, &Grid::default(), 1e-9).unwrap();
    assert_eq!(rep.outcome, Outcome::Pass);
    assert_eq!(rep.points.len(), 200);
    assert!(rep.max_residual.unwrap() <= 1e-9);
}

#[test]
fn constant_solution_is_exact_up_to_rounding() {
    let zero = SolutionOptions { periodic: PeriodicSpec::constant(0.0), ..SolutionOptions::default() };
    let (spec, sol) = family("F^3 = 32/f^2", &zero);
    let rep = verify_residual(&spec, &sol, &Grid::default(), 1e-9).unwrap();
    assert!(rep.max_residual.unwrap() < 1e-14);
}

#[test]
fn wrong_equation_fails() {
    let (_, sol) = family("F^2 = f^3", &SolutionOptions::default());
    let other = parse_equation("F^2 = 2*f^3").unwrap();
    let rep = verify_residual(&other, &sol, &Grid::default(), 1e-9).unwrap();
    assert_eq!(rep.outcome, Outcome::Fail);
}

#[test]
fn all_skipped_is_inconclusive() {
    // f ≡ 0 sits on the double zero of the denominator f⁴
    let sol = SolutionFamily {
        form: "T1c-cheb-odd".into(),
        kind: FamilyKind::HalfSumDelta {
            base: 1.5,
            prefactor: [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
            periodic: PeriodicSpec::constant(0.0),
        },
        shell: false,
    };
    let spec = parse_equation("F^3 = 2/f^4").unwrap();
    let rep = verify_residual(&spec, &sol, &Grid::default(), 1e-9).unwrap();
    assert_eq!(rep.outcome, Outcome::Inconclusive);
    assert_eq!(rep.max_residual, None);
    assert_eq!(rep.skipped_fraction, 1.0);
    assert!(rep.skipped.iter().all(|s| s.reason == SkipReason::NearDenominatorZero));
}

#[test]
fn delta_orbit_checked_step_by_step() {
    let (spec, sol) = family("F^2 = 2*(f+1/2)^2*(f-1)/((f-1/2)^4*(f+1)^2)", &SolutionOptions::default());
    let rep = verify_residual(&spec, &sol, &Grid::default(), 1e-9).unwrap();
    assert_eq!(rep.outcome, Outcome::Pass, "{:?}", rep.max_residual);
    assert_eq!(rep.points.len() + rep.skipped.len(), 20);
}

#[test]
fn monotone_in_tolerance() {
    let (spec, sol) = family("F^2 = -4*f^2*(f^2-1)", &SolutionOptions::default());
    let m = verify_residual(&spec, &sol, &Grid::default(), 1.0).unwrap().max_residual.unwrap();
    for tol in [m, 2.0 * m, 1e-6, 1.0] {
        assert_eq!(verify_residual(&spec, &sol, &Grid::default(), tol).unwrap().outcome, Outcome::Pass);
    }
    assert!(verify_residual(&spec, &sol, &Grid::default(), 0.0).is_err());
}

#[test]
fn multiplicity_examples() {
    let r = |n, d| BigRational::new(BigInt::from(n), BigInt::from(d));
    let o = orbit_multiplicity(2, 3, 4, 10).unwrap();
    assert_eq!(o.sequence, vec![r(4, 1), r(6, 1), r(9, 1), r(27, 2)]);
    assert_eq!(o.first_non_integral, Some(3));
    let o = orbit_multiplicity(2, 4, 1, 6).unwrap();
    assert_eq!(o.first_non_integral, None);
    assert!(o.integral_forever);
    assert_eq!(o.sequence[3], r(8, 1));
    let o = orbit_multiplicity(3, 2, 9, 10).unwrap();
    assert_eq!(o.sequence, vec![r(9, 1), r(6, 1), r(4, 1), r(8, 3)]);
    assert!(orbit_multiplicity(1, 2, 1, 3).is_err());
}

#[test]
fn multiplicity_matches_brute_force() {
    for n in 2..=6u32 {
        for e in 1..=6u32 {
            for m0 in 1..=12u64 {
                let o = orbit_multiplicity(n, e, m0, 10).unwrap();
                let want = (1..=10u32).find(|&s| !brute_force_integral(n, e, m0, s)).map(|s| s as usize);
                assert_eq!(o.first_non_integral, want, "n={} e={} m0={}", n, e, m0);
            }
        }
    }
}

#[test]
fn degree_examples() {
    let cube = FRat::from_poly(int_poly(&[0, 0, 0, 1]));
    let f2 = FRat::new(int_poly(&[1, 0, 1]), int_poly(&[-2, 1])).unwrap();
    assert!(degree_functional_check(&cube, &f2).unwrap());
    assert_eq!(compose_rational(&cube, &f2).unwrap().degree(), 6);
    // (f²−1)/(f²+1) after f = (z³+1)/z: numerator (z³+1)² − z², denominator
    // (z³+1)² + z², coprime, both degree 6
    let r = FRat::new(int_poly(&[-1, 0, 1]), int_poly(&[1, 0, 1])).unwrap();
    let f3 = FRat::new(int_poly(&[1, 0, 0, 1]), int_poly(&[0, 1])).unwrap();
    let c = compose_rational(&r, &f3).unwrap();
    assert_eq!(c.num(), &int_poly(&[1, 0, -1, 2, 0, 0, 1]));
    assert_eq!(c.den(), &int_poly(&[1, 0, 1, 2, 0, 0, 1]));
    assert!(degree_functional_check(&r, &f3).unwrap());
    let k = FRat::from_poly(int_poly(&[3]));
    assert!(degree_functional_check(&r, &k).is_err());
}

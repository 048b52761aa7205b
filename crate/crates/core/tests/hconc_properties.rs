//! Polar-transform properties beyond the unit tests: the defining
//! inequality, agreement of the exact and certified paths on functions
//! expressible both ways, and order reversal.

use conepolar::cones::PolyhedralCone;
use conepolar::exactnum::{pair, Rational, RationalMatrix, RationalVector};
use conepolar::hconc::{check_duality_transform, polar_eval, ConeFunction, Value};
use conepolar::poly::Polynomial;
use conepolar::sampling::{rng_from_seed, sample_in_cone, sample_in_interior};

fn tol() -> Rational {
    Rational::ratio(1, 1_000_000_000)
}

fn quadrant() -> PolyhedralCone {
    PolyhedralCone::from_rays(
        2,
        &[
            RationalVector::from_ints(&[1, 0]),
            RationalVector::from_ints(&[0, 1]),
        ],
        RationalMatrix::identity(2),
    )
    .unwrap()
}

/// min(x, y) on the quadrant, as explicit chambers.
fn min_fn() -> ConeFunction {
    let pairing = RationalMatrix::identity(2);
    let lower = PolyhedralCone::from_rays(
        2,
        &[
            RationalVector::from_ints(&[1, 0]),
            RationalVector::from_ints(&[1, 1]),
        ],
        pairing.clone(),
    )
    .unwrap();
    let upper = PolyhedralCone::from_rays(
        2,
        &[
            RationalVector::from_ints(&[1, 1]),
            RationalVector::from_ints(&[0, 1]),
        ],
        pairing,
    )
    .unwrap();
    ConeFunction::piecewise_linear(
        quadrant(),
        vec![
            (lower, RationalVector::from_ints(&[0, 1])),
            (upper, RationalVector::from_ints(&[1, 0])),
        ],
    )
    .unwrap()
}

#[test]
fn defining_inequality_of_the_polar() {
    // Hf(w) * f(v) <= pair(w, v), exactly, on sampled pairs.
    let f = min_fn();
    let dual = f.domain().dual().unwrap();
    let mut rng = rng_from_seed(41);
    for _ in 0..200 {
        let w = sample_in_cone(&dual, &mut rng);
        let v = sample_in_interior(f.domain(), &mut rng);
        let hf = polar_eval(&f, &w, &tol()).unwrap();
        let hf_val = match hf.value {
            Value::Exact(x) => x,
            Value::Interval { hi, .. } => hi,
        };
        let fv = f.evaluate(&v).unwrap().expect_exact("piecewise linear").unwrap();
        let rhs = pair(f.domain().pairing(), &v, &w).unwrap();
        assert!(
            &hf_val * &fv <= rhs,
            "defining inequality violated at w={w}, v={v}"
        );
    }
}

#[test]
fn exact_and_certified_paths_agree() {
    // The same min-of-linear function expressed as explicit chambers (exact
    // path) and as degree-1 power chambers (certified numeric path) must
    // produce the same values within tolerance.
    let f_exact = min_fn();
    let pairing = RationalMatrix::identity(2);
    let lower = PolyhedralCone::from_rays(
        2,
        &[
            RationalVector::from_ints(&[1, 0]),
            RationalVector::from_ints(&[1, 1]),
        ],
        pairing.clone(),
    )
    .unwrap();
    let upper = PolyhedralCone::from_rays(
        2,
        &[
            RationalVector::from_ints(&[1, 1]),
            RationalVector::from_ints(&[0, 1]),
        ],
        pairing,
    )
    .unwrap();
    let f_power = ConeFunction::power_polynomial(
        quadrant(),
        vec![
            (lower, Polynomial::monomial(2, vec![0, 1], Rational::one())),
            (upper, Polynomial::monomial(2, vec![1, 0], Rational::one())),
        ],
        1,
    )
    .unwrap();

    let mut rng = rng_from_seed(43);
    let t = tol();
    for _ in 0..25 {
        let w = sample_in_cone(&quadrant(), &mut rng);
        let a = polar_eval(&f_exact, &w, &t).unwrap();
        let b = polar_eval(&f_power, &w, &t).unwrap();
        assert!(
            a.value.approx_eq(&b.value, &t),
            "paths disagree at {w}: exact {:?} vs certified {:?}",
            a.value,
            b.value
        );
    }
}

#[test]
fn order_reversal_on_function_pairs() {
    let f = min_fn();
    let g = conepolar::hconc::polar_function(&f).unwrap();
    let report = check_duality_transform(&f, &g, 50, 47, &tol()).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn polar_scaling_inverts() {
    // H(2f) = (1/2) Hf on sampled rays.
    let f = min_fn();
    let two_f = {
        // min(2x, 2y) expressed with scaled weights.
        let pairing = RationalMatrix::identity(2);
        let lower = PolyhedralCone::from_rays(
            2,
            &[
                RationalVector::from_ints(&[1, 0]),
                RationalVector::from_ints(&[1, 1]),
            ],
            pairing.clone(),
        )
        .unwrap();
        let upper = PolyhedralCone::from_rays(
            2,
            &[
                RationalVector::from_ints(&[1, 1]),
                RationalVector::from_ints(&[0, 1]),
            ],
            pairing,
        )
        .unwrap();
        ConeFunction::piecewise_linear(
            quadrant(),
            vec![
                (lower, RationalVector::from_ints(&[0, 2])),
                (upper, RationalVector::from_ints(&[2, 0])),
            ],
        )
        .unwrap()
    };
    let mut rng = rng_from_seed(53);
    let t = tol();
    for _ in 0..50 {
        let w = sample_in_cone(&quadrant(), &mut rng);
        let h = polar_eval(&f, &w, &t).unwrap().value;
        let h2 = polar_eval(&two_f, &w, &t).unwrap().value;
        let half = h.scale(&Rational::ratio(1, 2));
        assert!(
            h2.approx_eq(&half, &t),
            "H(2f) != Hf/2 at {w}: {h2:?} vs {half:?}"
        );
    }
}

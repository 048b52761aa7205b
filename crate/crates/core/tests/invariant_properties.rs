//! Cross-cutting invariant properties: comparisons between the divisor- and
//! curve-side constants and monotonicity under the cone order.

use conepolar::catalog;
use conepolar::exactnum::Rational;
use conepolar::invariants::{InvariantContext, Route};
use conepolar::sampling::{rng_from_seed, sample_in_cone};

fn tol() -> Rational {
    Rational::ratio(1, 1_000_000_000)
}

#[test]
fn seshadri_at_most_nakayama_on_nef_classes() {
    // s_x <= n_x pointwise: the nef cone of the blow-up sits inside its
    // pseudo-effective cone.
    for entry in catalog::list_catalog() {
        let model = catalog::load_model(entry.id).unwrap();
        for profile in &model.point_profiles {
            let ctx = InvariantContext::new(&model, profile).unwrap();
            let mut rng = rng_from_seed(83);
            for _ in 0..100 {
                let l = sample_in_cone(&model.nef, &mut rng);
                let s = ctx.seshadri_s(&l).unwrap();
                let n = ctx.nakayama_n(&l).unwrap();
                assert!(s <= n, "s({l}) = {s} > n({l}) = {n} on {}", model.name);
            }
        }
    }
}

#[test]
fn curve_side_constants_monotone_under_cone_order() {
    // If a' - a is pseudo-effective then N(a') >= N(a); similarly for S on
    // movable classes ordered by the movable cone.
    for entry in catalog::list_catalog() {
        let model = catalog::load_model(entry.id).unwrap();
        let profile = model.profile("generic").unwrap();
        let ctx = InvariantContext::new(&model, profile).unwrap();
        let mut rng = rng_from_seed(89);
        for _ in 0..60 {
            let alpha = sample_in_cone(&model.eff_curves, &mut rng);
            let bump = sample_in_cone(&model.eff_curves, &mut rng);
            let bigger = alpha.add(&bump);
            let n_small = ctx
                .nakayama_big_n(&alpha, Route::Exit, &tol())
                .unwrap()
                .exit
                .unwrap();
            let n_big = ctx
                .nakayama_big_n(&bigger, Route::Exit, &tol())
                .unwrap()
                .exit
                .unwrap();
            assert!(
                n_big >= n_small,
                "N not monotone on {}: N({bigger}) < N({alpha})",
                model.name
            );

            let alpha = sample_in_cone(&model.mov_curves, &mut rng);
            let bump = sample_in_cone(&model.mov_curves, &mut rng);
            let bigger = alpha.add(&bump);
            let s_small = ctx
                .seshadri_big_s(&alpha, Route::Exit, &tol())
                .unwrap()
                .exit
                .unwrap();
            let s_big = ctx
                .seshadri_big_s(&bigger, Route::Exit, &tol())
                .unwrap()
                .exit
                .unwrap();
            assert!(s_big >= s_small, "S not monotone on {}", model.name);
        }
    }
}

#[test]
fn divisor_route_requires_curve_side_seshadri() {
    let model = catalog::load_model("P2").unwrap();
    let ctx = InvariantContext::new(&model, model.profile("generic").unwrap()).unwrap();
    let alpha = conepolar::exactnum::RationalVector::from_ints(&[1]);
    let err = ctx.nakayama_big_n(&alpha, Route::Divisors, &tol());
    assert!(err.is_err());
}

#[test]
fn preconditions_are_enforced() {
    let model = catalog::load_model("BlqP2").unwrap();
    let ctx = InvariantContext::new(&model, model.profile("generic").unwrap()).unwrap();
    // E is pseudo-effective but not nef: the Seshadri constant rejects it.
    let e = conepolar::exactnum::RationalVector::from_ints(&[0, 1]);
    assert!(ctx.seshadri_s(&e).is_err());
    assert!(ctx.nakayama_n(&e).is_ok());
    // Outside the pseudo-effective cone, everything rejects.
    let outside = conepolar::exactnum::RationalVector::from_ints(&[-1, 0]);
    assert!(ctx.nakayama_n(&outside).is_err());
    assert!(ctx
        .nakayama_big_n(&outside, Route::Exit, &tol())
        .is_err());
}

//! Model-layer properties: load validation catches defective data, Zariski
//! decompositions are orthogonal and order-independent, and the volume
//! function obeys its scaling laws.

use conepolar::catalog;
use conepolar::exactnum::{pair, Rational, RationalVector};
use conepolar::geomodel::VarietyModel;
use conepolar::sampling::{rng_from_seed, sample_in_cone, sample_scale};

#[test]
fn all_catalog_models_load() {
    for entry in catalog::list_catalog() {
        let model = catalog::load_model(entry.id).unwrap();
        assert_eq!(model.name, entry.id);
        assert!(model.point_profiles.iter().any(|p| p.name == "generic"));
    }
}

#[test]
fn load_rejects_broken_duality() {
    // Swap the movable cone for the pseudo-effective one: the stated
    // duality dual(Eff) = Mov must fail and the error must say so.
    let good = catalog::list_catalog()
        .into_iter()
        .find(|e| e.id == "BlqP2")
        .unwrap();
    let broken = good
        .json
        .replace("\"mov_curve_rays\": [[\"1\", \"0\"], [\"1\", \"-1\"]]",
                 "\"mov_curve_rays\": [[\"0\", \"1\"], [\"1\", \"-1\"]]");
    assert_ne!(broken, good.json, "replacement must hit");
    let err = VarietyModel::load_json(&broken).unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("duality") || msg.contains("movable"),
        "error should name the violated duality: {msg}"
    );
}

#[test]
fn load_rejects_bad_self_intersection() {
    let good = catalog::list_catalog()
        .into_iter()
        .find(|e| e.id == "BlqP2")
        .unwrap();
    let broken = good.json.replace("\"self_int\": \"-1\"", "\"self_int\": \"-2\"");
    let err = VarietyModel::load_json(&broken).unwrap_err();
    assert!(err.to_string().contains("self-intersection"), "{err}");
}

#[test]
fn zariski_orthogonality_and_nonnegativity() {
    for id in ["BlqP2", "Bl2P2"] {
        let model = catalog::load_model(id).unwrap();
        let mut rng = rng_from_seed(61);
        for _ in 0..100 {
            let l = sample_in_cone(&model.eff_div, &mut rng);
            let z = model.zariski_decompose(&l).unwrap();
            // L = P + N.
            let recomposed = z.positive.add(&z.negative_part(model.rho));
            assert_eq!(recomposed, l);
            for (label, class, coeff) in &z.negative_support {
                assert!(!coeff.is_negative(), "negative coefficient for {label}");
                let dot = model.divisor_dot(&z.positive, class).unwrap();
                assert!(dot.is_zero(), "P . {label} = {dot} != 0");
            }
            // P is nef against the whole negative-curve catalog.
            for c in &model.negative_curves {
                let dot = model.divisor_dot(&z.positive, &c.class_div).unwrap();
                assert!(!dot.is_negative());
            }
        }
    }
}

#[test]
fn zariski_is_order_independent() {
    // Permute the negative-curve catalog in the JSON; the decomposition of
    // every sampled class must be unchanged.
    let entry = catalog::list_catalog()
        .into_iter()
        .find(|e| e.id == "Bl2P2")
        .unwrap();
    let model = VarietyModel::load_json(entry.json).unwrap();
    // Reverse the order of the three negative curves.
    let permuted_json = entry.json.replace(
        r#"{ "label": "E1", "class_div": ["0", "1", "0"], "self_int": "-1" },
    { "label": "E2", "class_div": ["0", "0", "1"], "self_int": "-1" },
    { "label": "L12", "class_div": ["1", "-1", "-1"], "self_int": "-1" }"#,
        r#"{ "label": "L12", "class_div": ["1", "-1", "-1"], "self_int": "-1" },
    { "label": "E2", "class_div": ["0", "0", "1"], "self_int": "-1" },
    { "label": "E1", "class_div": ["0", "1", "0"], "self_int": "-1" }"#,
    );
    assert_ne!(permuted_json, entry.json, "permutation must hit");
    let permuted = VarietyModel::load_json(&permuted_json).unwrap();

    let mut rng = rng_from_seed(67);
    for _ in 0..60 {
        let l = sample_in_cone(&model.eff_div, &mut rng);
        let a = model.zariski_decompose(&l).unwrap();
        let b = permuted.zariski_decompose(&l).unwrap();
        assert_eq!(a.positive, b.positive, "positive parts differ at {l}");
        assert_eq!(a.negative_support, b.negative_support);
    }
}

#[test]
fn volume_is_degree_n_homogeneous() {
    for entry in catalog::list_catalog() {
        let model = catalog::load_model(entry.id).unwrap();
        let mut rng = rng_from_seed(71);
        for _ in 0..100 {
            let l = sample_in_cone(&model.eff_div, &mut rng);
            let t = sample_scale(&mut rng);
            let lhs = model.volume(&l.scale(&t)).unwrap();
            let rhs = t.pow(model.dim_n) * model.volume(&l).unwrap();
            assert_eq!(lhs, rhs, "vol(tL) != t^n vol(L) at {l} on {}", model.name);
        }
    }
}

#[test]
fn volume_ignores_the_negative_part() {
    for id in ["P2", "P1xP1", "BlqP2", "Bl2P2"] {
        let model = catalog::load_model(id).unwrap();
        let mut rng = rng_from_seed(73);
        for _ in 0..100 {
            let l = sample_in_cone(&model.eff_div, &mut rng);
            let z = model.zariski_decompose(&l).unwrap();
            assert_eq!(
                model.volume(&l).unwrap(),
                model.volume(&z.positive).unwrap(),
                "vol(L) != vol(P) at {l} on {id}"
            );
        }
    }
}

#[test]
fn exceptional_curve_class_pairs_correctly() {
    for entry in catalog::list_catalog() {
        let model = catalog::load_model(entry.id).unwrap();
        for profile in &model.point_profiles {
            let b = &profile.blowup;
            let e = b.exceptional_curve_class();
            // E . e = 1 and pull(D) . e = 0 for every divisor basis vector.
            let dim = model.rho + 1;
            let mut e_div = vec![Rational::zero(); dim];
            e_div[dim - 1] = Rational::one();
            assert_eq!(
                pair(&b.pairing_y, &RationalVector::new(e_div), &e).unwrap(),
                Rational::one()
            );
            for i in 0..model.rho {
                let mut d = vec![Rational::zero(); model.rho];
                d[i] = Rational::one();
                let up = b.pullback_div(&RationalVector::new(d));
                assert!(pair(&b.pairing_y, &up, &e).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn pullback_appends_zero() {
    let model = catalog::load_model("BlpP3").unwrap();
    let b = &model.profile("generic").unwrap().blowup;
    let alpha = RationalVector::from_ints(&[2, 3]);
    assert_eq!(
        b.pullback_curve(&alpha),
        RationalVector::from_ints(&[2, 3, 0])
    );
}

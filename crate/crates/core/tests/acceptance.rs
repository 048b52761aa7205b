//! Acceptance suite: one criterion per section, one printed line per
//! criterion, everything at its stated tolerance and sample count.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::Instant;

use conepolar::catalog;
use conepolar::exactnum::{Rational, RationalVector};
use conepolar::geomodel::VarietyModel;
use conepolar::hconc::{check_duality_transform, check_hconc, polar_function, Value};
use conepolar::invariants::{
    check_fulger_bound, check_n_lower_bound, check_n_upper_bound, check_s_le_n,
    check_surface_selfduality, check_theorem_a, check_theorem_b, check_theorem_c, m_func,
    m_func_root, value_matches, InvariantContext, Route,
};
use conepolar::sampling::{rng_from_seed, sample_in_cone};

struct Gate {
    failures: Vec<String>,
    started: Instant,
}

impl Gate {
    fn new() -> Self {
        Gate {
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    fn criterion(&mut self, number: u32, label: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => println!("PASS criterion {number:>2}: {label}"),
            Err(why) => {
                println!("FAIL criterion {number:>2}: {label}: {why}");
                self.failures.push(format!("criterion {number}: {why}"));
            }
        }
    }
}

fn tol() -> Rational {
    Rational::ratio(1, 1_000_000_000)
}

fn models() -> Vec<VarietyModel> {
    catalog::list_catalog()
        .iter()
        .map(|e| catalog::load_model(e.id).expect("catalog model loads"))
        .collect()
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();
    let models = models();

    // 1. Cone dualities, exactly, under one second for all five models.
    {
        let t0 = Instant::now();
        let mut out = Ok(());
        for model in &models {
            let nef_ok = model
                .nef
                .dual()
                .map(|d| d.same_cone(&model.eff_curves))
                .unwrap_or(false);
            let eff_ok = model
                .eff_div
                .dual()
                .map(|d| d.same_cone(&model.mov_curves))
                .unwrap_or(false);
            if !nef_ok || !eff_ok {
                out = Err(format!("duality violated on {}", model.name));
            }
        }
        let elapsed = t0.elapsed();
        if elapsed.as_secs_f64() >= 1.0 {
            out = Err(format!("duality checks took {elapsed:?}"));
        }
        gate.criterion(1, "cone dualities on all catalog models", out);
    }

    // 2. Route agreement for N and S on at least 200 sampled rays per model
    // and profile, exact, under 60 seconds.
    {
        let t0 = Instant::now();
        let mut out = Ok(());
        'outer: for model in &models {
            for profile in &model.point_profiles {
                let ctx = InvariantContext::new(model, profile).unwrap();
                let mut rng = rng_from_seed(0xA11CE);
                for _ in 0..200 {
                    let alpha = sample_in_cone(&model.eff_curves, &mut rng);
                    let routes = ctx.nakayama_big_n(&alpha, Route::All, &tol()).unwrap();
                    if !routes.agree(&tol()) {
                        out = Err(format!(
                            "N routes disagree at {alpha} on {}/{}",
                            model.name, profile.name
                        ));
                        break 'outer;
                    }
                    let alpha = sample_in_cone(&model.mov_curves, &mut rng);
                    let routes = ctx.seshadri_big_s(&alpha, Route::All, &tol()).unwrap();
                    if !routes.agree(&tol()) {
                        out = Err(format!(
                            "S routes disagree at {alpha} on {}/{}",
                            model.name, profile.name
                        ));
                        break 'outer;
                    }
                }
            }
        }
        let elapsed = t0.elapsed();
        if elapsed.as_secs_f64() >= 60.0 {
            out = Err(format!("route agreement took {elapsed:?}"));
        }
        gate.criterion(2, "exit/polar route agreement for N and S", out);
    }

    // 3. N_x(a) >= vol-hat(a)^{(n-1)/n} on 200 samples per model.
    {
        let mut out = Ok(());
        for model in &models {
            for profile in &model.point_profiles {
                let ctx = InvariantContext::new(model, profile).unwrap();
                let rep = check_theorem_a(&ctx, 200, 0xBEE, &tol()).unwrap();
                if !rep.passed() {
                    out = Err(format!(
                        "{}/{}: {:?}",
                        model.name, profile.name, rep.witnesses
                    ));
                }
            }
        }
        gate.criterion(3, "volume lower bound for N (certified)", out);
    }

    // 4. S_x(a) <= M(a)^{(n-1)/n} on 200 samples, S > 0 inside, S = 0 on a
    // movable boundary ray with positive M wherever such a ray exists.
    {
        let mut out = Ok(());
        for model in &models {
            let rep = check_theorem_b(model, 200, 0xCAB, &tol()).unwrap();
            if !rep.passed() {
                out = Err(format!("{}: {:?}", model.name, rep.witnesses));
            }
        }
        // The positive-M boundary instances exist on the blow-up models and
        // their global Seshadri constant vanishes there.
        for id in ["BlqP2", "Bl2P2", "BlpP3"] {
            let model = models.iter().find(|m| m.name == id).unwrap();
            let mut witnessed = 0;
            for ray in model.mov_curves.rays() {
                let m_root = m_func_root(model, ray, &tol()).unwrap();
                if !m_root.value.lo().is_positive() {
                    continue;
                }
                let mut global = None::<Rational>;
                for profile in &model.point_profiles {
                    let ctx = InvariantContext::new(model, profile).unwrap();
                    let s = ctx
                        .seshadri_big_s(ray, Route::Exit, &tol())
                        .unwrap()
                        .exit
                        .unwrap();
                    global = Some(match global {
                        Some(g) => g.min(s),
                        None => s,
                    });
                }
                if global.unwrap() == Rational::zero() {
                    witnessed += 1;
                } else if out.is_ok() {
                    out = Err(format!(
                        "S({ray}) > 0 on a positive-M boundary ray of {id}"
                    ));
                }
            }
            if witnessed == 0 && out.is_ok() {
                out = Err(format!("no positive-M boundary ray found on {id}"));
            }
        }
        gate.criterion(4, "volume upper bound for S and interior criterion", out);
    }

    // 5. S_x <= N_x exactly on 200 movable samples per model/profile.
    {
        let mut out = Ok(());
        for model in &models {
            for profile in &model.point_profiles {
                let ctx = InvariantContext::new(model, profile).unwrap();
                let rep = check_s_le_n(&ctx, 200, 0xDAD, &tol()).unwrap();
                if !rep.passed() {
                    out = Err(format!(
                        "{}/{}: {:?}",
                        model.name, profile.name, rep.witnesses
                    ));
                }
            }
        }
        gate.criterion(5, "S at most N on movable classes", out);
    }

    // 6. Surface self-duality: polar(s) = n and polar(n) = s on 50 rays per
    // surface model, exactly.
    {
        let mut out = Ok(());
        for model in models.iter().filter(|m| m.dim_n == 2) {
            for profile in &model.point_profiles {
                let ctx = InvariantContext::new(model, profile).unwrap();
                let rep = check_surface_selfduality(&ctx, 50, 0xEE1, &tol()).unwrap();
                if !rep.passed() {
                    out = Err(format!(
                        "{}/{}: {:?}",
                        model.name, profile.name, rep.witnesses
                    ));
                }
            }
        }
        gate.criterion(6, "surface self-duality of s and n", out);
    }

    // 7. Vanishing locus instance on BlqP2 at alpha = [l].
    {
        let model = models.iter().find(|m| m.name == "BlqP2").unwrap();
        let case = &model.theorem_c_cases[0];
        let mut out = Ok(());
        match check_theorem_c(model, case, &tol()) {
            Ok((rep, result)) => {
                if !rep.passed() {
                    out = Err(format!("{:?}", rep.witnesses));
                } else {
                    if !result.is_boundary_mov || !result.m_positive {
                        out = Err("case is not a positive-M boundary class".into());
                    }
                    if result.zero_profiles != vec!["on_curve_F".to_string()] {
                        out = Err(format!(
                            "vanishing profiles {:?}, expected [on_curve_F]",
                            result.zero_profiles
                        ));
                    }
                    let generic = InvariantContext::new(
                        model,
                        model.profile("generic").unwrap(),
                    )
                    .unwrap();
                    let s = generic
                        .seshadri_big_s(&case.alpha, Route::Exit, &tol())
                        .unwrap()
                        .exit
                        .unwrap();
                    if !s.is_positive() {
                        out = Err("S vanishes at the generic profile".into());
                    }
                }
            }
            Err(e) => out = Err(e.to_string()),
        }
        gate.criterion(7, "vanishing locus of S on the one-point blow-up", out);
    }

    // 8. n >= vol^{1/n} and Zariski additivity on 200 samples per surface
    // model; finite upper-bound constant on every model.
    {
        let mut out = Ok(());
        for model in &models {
            for profile in &model.point_profiles {
                let ctx = InvariantContext::new(model, profile).unwrap();
                let rep = check_n_lower_bound(&ctx, 200, 0xFEED).unwrap();
                if !rep.passed() {
                    out = Err(format!("n lower bound: {:?}", rep.witnesses));
                }
                let rep = check_n_upper_bound(&ctx, 200, 0xFADE).unwrap();
                if !rep.passed() || !rep.values.contains_key("c_star") {
                    out = Err(format!("n upper bound: {:?}", rep.witnesses));
                }
                if model.dim_n == 2 {
                    let rep = conepolar::invariants::check_zariski_additivity(
                        &ctx, 200, 0xACE,
                    )
                    .unwrap();
                    if !rep.passed() {
                        out = Err(format!("additivity: {:?}", rep.witnesses));
                    }
                }
            }
        }
        gate.criterion(8, "Nakayama volume bound, additivity, finite constant", out);
    }

    // 9. The power-class bound S(L^{n-1}) >= s(L)^{n-1} with exact movable
    // membership witnesses, 50 nef samples per model/profile.
    {
        let mut out = Ok(());
        for model in &models {
            for profile in &model.point_profiles {
                let ctx = InvariantContext::new(model, profile).unwrap();
                let rep = check_fulger_bound(&ctx, 50, 0xF001, &tol()).unwrap();
                if !rep.passed() {
                    out = Err(format!(
                        "{}/{}: {:?}",
                        model.name, profile.name, rep.witnesses
                    ));
                }
            }
        }
        gate.criterion(9, "power-class lower bound with membership witness", out);
    }

    // 10. The function framework: homogeneity and superadditivity (exact,
    // 500 pairs) for s, n, N, S and the volume root on every model; order
    // reversal on 50 function pairs; the product-surface value M = 2.
    {
        let mut out = Ok(());
        for model in &models {
            for profile in &model.point_profiles {
                let ctx = InvariantContext::new(model, profile).unwrap();
                let mut fns = vec![
                    ("s", ctx.seshadri_function().clone()),
                    ("n", ctx.nakayama_function().clone()),
                    ("N", ctx.polar_of_seshadri().unwrap()),
                    ("S", ctx.polar_of_nakayama().unwrap()),
                ];
                fns.push(("vol_nef", model.volume_root_on_nef().unwrap()));
                fns.push(("vol_eff", model.volume_root_on_eff().unwrap()));
                for (name, f) in fns {
                    let rep = check_hconc(&f, 500, 0x5EED, &tol()).unwrap();
                    if !rep.passed() {
                        out = Err(format!(
                            "{name} on {}/{} fails: {} homogeneity, {} superadditivity",
                            model.name,
                            profile.name,
                            rep.homogeneity_failures.len(),
                            rep.superadditivity_failures.len()
                        ));
                    }
                }
            }
        }
        // Order reversal across 50 sampled function pairs.
        let blq = models.iter().find(|m| m.name == "BlqP2").unwrap();
        let ctx = InvariantContext::new(blq, blq.profile("generic").unwrap()).unwrap();
        let s_pwl = ctx
            .seshadri_function()
            .to_piecewise_linear()
            .unwrap()
            .unwrap();
        let polar_s = polar_function(&s_pwl).unwrap();
        let rep = check_duality_transform(&s_pwl, &polar_s, 50, 0xFACE, &tol()).unwrap();
        if !rep.passed() {
            out = Err(format!("duality transform: {rep:?}"));
        }
        // M(f1 + f2) = 2 on the product surface, within tolerance.
        let quadric = models.iter().find(|m| m.name == "P1xP1").unwrap();
        let m_val = m_func(quadric, &RationalVector::from_ints(&[1, 1]), &tol()).unwrap();
        if !value_matches(&m_val, &Rational::from_int(2), &tol()) {
            out = Err(format!("M(f1+f2) = {m_val:?}, expected 2"));
        }
        if let Value::Interval { lo, hi } = &m_val {
            if &(hi - lo) > &tol() {
                out = Err(format!("M enclosure too wide: [{lo}, {hi}]"));
            }
        }
        gate.criterion(10, "function framework and polar transform laws", out);
    }

    // 11. Golden values, exactly, and the whole gate within five minutes.
    {
        let mut out = Ok(());
        for entry in catalog::list_catalog() {
            let rep = catalog::golden_run(&entry, &tol()).unwrap();
            if !rep.passed() {
                out = Err(format!("{}: {:?}", entry.id, rep.witnesses));
            }
        }
        let elapsed = gate.started.elapsed();
        if elapsed.as_secs_f64() >= 300.0 {
            out = Err(format!("acceptance run took {elapsed:?}"));
        }
        gate.criterion(11, "golden catalog values and total runtime", out);
    }

    println!(
        "acceptance finished in {:?} with {} failure(s)",
        gate.started.elapsed(),
        gate.failures.len()
    );
    assert!(gate.failures.is_empty(), "{:?}", gate.failures);
}

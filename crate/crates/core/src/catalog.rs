//! Built-in variety models and their golden values.
//!
//! Five models ship with the crate: the plane, the quadric surface, the
//! one- and two-point blow-ups of the plane, and the blow-up of projective
//! 3-space at a point. Each entry carries expected invariant values worked
//! out independently (facet enumeration on the blow-up cones, multiplicity
//! catalogs, hand Zariski decompositions); `golden_run` recomputes every one
//! of them and diffs exactly.

use std::path::PathBuf;

use crate::error::Error;
use crate::exactnum::{Rational, RationalVector};
use crate::geomodel::VarietyModel;
use crate::invariants::{
    m_func, vol_hat, value_matches, InvariantContext, Route,
};
use crate::report::CheckReport;
use crate::Result;

/// Environment variable overriding the catalog location; when set, models
/// are read from `<dir>/<id>.json` instead of the embedded copies.
pub const CATALOG_DIR_ENV: &str = "CONEPOLAR_CATALOG_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("P2", include_str!("../catalog/P2.json")),
    ("P1xP1", include_str!("../catalog/P1xP1.json")),
    ("BlqP2", include_str!("../catalog/BlqP2.json")),
    ("Bl2P2", include_str!("../catalog/Bl2P2.json")),
    ("BlpP3", include_str!("../catalog/BlpP3.json")),
];

/// One golden expectation: an operation, its input, and the exact expected
/// output (tolerance applies only to enclosure-valued volume functions).
#[derive(Clone, Debug)]
pub enum GoldenOp {
    /// Divisor-side Seshadri constant by the exit route.
    SeshadriS {
        profile: &'static str,
        class: Vec<i64>,
        expected: Rational,
    },
    /// Divisor-side Seshadri constant from the curve catalog.
    SeshadriSViaCurves {
        profile: &'static str,
        class: Vec<i64>,
        expected: Rational,
    },
    /// Divisor-side Nakayama constant.
    NakayamaN {
        profile: &'static str,
        class: Vec<i64>,
        expected: Rational,
    },
    /// Curve-side Nakayama constant; all routes must agree with the value.
    NakayamaBigN {
        profile: &'static str,
        class: Vec<i64>,
        expected: Rational,
    },
    /// Curve-side Seshadri constant; all routes must agree with the value.
    SeshadriBigS {
        profile: &'static str,
        class: Vec<i64>,
        expected: Rational,
    },
    /// Exact volume of a pseudo-effective divisor class.
    Volume { class: Vec<i64>, expected: Rational },
    /// Polar volume over the nef cone, within tolerance.
    VolHat { class: Vec<i64>, expected: Rational },
    /// Polar volume over the pseudo-effective cone, within tolerance.
    MFunc { class: Vec<i64>, expected: Rational },
    /// Zariski decomposition: positive part and negative support.
    Zariski {
        class: Vec<i64>,
        positive: Vec<i64>,
        support: Vec<(&'static str, Rational)>,
    },
}

/// A catalog model with provenance and golden tests.
pub struct CatalogEntry {
    pub id: &'static str,
    pub json: &'static str,
    pub expected_values: Vec<GoldenOp>,
}

fn one() -> Rational {
    Rational::one()
}

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

/// All built-in models with their golden expectations.
pub fn list_catalog() -> Vec<CatalogEntry> {
    let g = |id: &str| {
        EMBEDDED
            .iter()
            .find(|(k, _)| *k == id)
            .expect("embedded model")
            .1
    };
    vec![
        CatalogEntry {
            id: "P2",
            json: g("P2"),
            expected_values: vec![
                // Exit along -E in the nef cone of the one-point blow-up:
                // the strict-transform facet gives 1 - t >= 0.
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![1],
                    expected: one(),
                },
                // min(3*1/1, 3*3/2) over the line and the nodal cubic.
                GoldenOp::SeshadriSViaCurves {
                    profile: "generic",
                    class: vec![3],
                    expected: int(3),
                },
                GoldenOp::NakayamaN {
                    profile: "generic",
                    class: vec![1],
                    expected: one(),
                },
                GoldenOp::NakayamaBigN {
                    profile: "generic",
                    class: vec![1],
                    expected: one(),
                },
                GoldenOp::SeshadriBigS {
                    profile: "generic",
                    class: vec![1],
                    expected: one(),
                },
                GoldenOp::Volume {
                    class: vec![3],
                    expected: int(9),
                },
                GoldenOp::VolHat {
                    class: vec![1],
                    expected: one(),
                },
                GoldenOp::MFunc {
                    class: vec![1],
                    expected: one(),
                },
            ],
        },
        CatalogEntry {
            id: "P1xP1",
            json: g("P1xP1"),
            expected_values: vec![
                // min(a, b) from the strict transforms of the two rulings.
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![1, 1],
                    expected: one(),
                },
                // The ruling through the point is contracted by its own
                // fiber class.
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: Rational::zero(),
                },
                // Both rulings through the point can be subtracted.
                GoldenOp::NakayamaN {
                    profile: "generic",
                    class: vec![1, 1],
                    expected: int(2),
                },
                GoldenOp::NakayamaBigN {
                    profile: "generic",
                    class: vec![1, 1],
                    expected: int(2),
                },
                GoldenOp::NakayamaBigN {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: one(),
                },
                GoldenOp::SeshadriBigS {
                    profile: "generic",
                    class: vec![1, 1],
                    expected: one(),
                },
                GoldenOp::SeshadriBigS {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: Rational::zero(),
                },
                GoldenOp::Volume {
                    class: vec![1, 1],
                    expected: int(2),
                },
                // inf (a+b)^2 / 2ab = 2 at a = b.
                GoldenOp::MFunc {
                    class: vec![1, 1],
                    expected: int(2),
                },
                GoldenOp::VolHat {
                    class: vec![1, 1],
                    expected: int(2),
                },
            ],
        },
        CatalogEntry {
            id: "BlqP2",
            json: g("BlqP2"),
            expected_values: vec![
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: one(),
                },
                // H contracts E, so a point on E sees Seshadri constant 0.
                GoldenOp::SeshadriS {
                    profile: "on_curve_F",
                    class: vec![1, 0],
                    expected: Rational::zero(),
                },
                GoldenOp::SeshadriSViaCurves {
                    profile: "on_curve_F",
                    class: vec![1, 0],
                    expected: Rational::zero(),
                },
                // E is rigid: its Nakayama constant is its multiplicity.
                GoldenOp::NakayamaN {
                    profile: "generic",
                    class: vec![0, 1],
                    expected: Rational::zero(),
                },
                GoldenOp::NakayamaN {
                    profile: "on_curve_F",
                    class: vec![0, 1],
                    expected: one(),
                },
                // Additivity instance: n(H + E) = n(H) + n(E) = 2 + 1.
                GoldenOp::NakayamaN {
                    profile: "on_curve_F",
                    class: vec![1, 1],
                    expected: int(3),
                },
                GoldenOp::NakayamaBigN {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: one(),
                },
                GoldenOp::NakayamaBigN {
                    profile: "on_curve_F",
                    class: vec![1, 0],
                    expected: int(2),
                },
                GoldenOp::SeshadriBigS {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: one(),
                },
                // The vanishing-locus instance: S_x = 0 exactly on E.
                GoldenOp::SeshadriBigS {
                    profile: "on_curve_F",
                    class: vec![1, 0],
                    expected: Rational::zero(),
                },
                GoldenOp::Volume {
                    class: vec![1, 1],
                    expected: one(),
                },
                GoldenOp::MFunc {
                    class: vec![1, 0],
                    expected: one(),
                },
                GoldenOp::Zariski {
                    class: vec![1, 1],
                    positive: vec![1, 0],
                    support: vec![("E", Rational::one())],
                },
                GoldenOp::Zariski {
                    class: vec![0, 1],
                    positive: vec![0, 0],
                    support: vec![("E", Rational::one())],
                },
            ],
        },
        CatalogEntry {
            id: "Bl2P2",
            json: g("Bl2P2"),
            expected_values: vec![
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![1, 0, 0],
                    expected: one(),
                },
                GoldenOp::SeshadriS {
                    profile: "on_curve_E1",
                    class: vec![1, 0, 0],
                    expected: Rational::zero(),
                },
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![2, -1, -1],
                    expected: one(),
                },
                GoldenOp::NakayamaBigN {
                    profile: "generic",
                    class: vec![1, 0, 0],
                    expected: one(),
                },
                GoldenOp::SeshadriBigS {
                    profile: "generic",
                    class: vec![1, 0, 0],
                    expected: one(),
                },
                GoldenOp::SeshadriBigS {
                    profile: "on_curve_E1",
                    class: vec![1, 0, 0],
                    expected: Rational::zero(),
                },
                // Zariski chamber with the line through both points in the
                // negative part: P = (3,-1,-2), vol = P^2 = 4.
                GoldenOp::Volume {
                    class: vec![4, -2, -3],
                    expected: int(4),
                },
                GoldenOp::Zariski {
                    class: vec![4, -2, -3],
                    positive: vec![3, -1, -2],
                    support: vec![("L12", Rational::one())],
                },
                GoldenOp::MFunc {
                    class: vec![1, 0, 0],
                    expected: one(),
                },
            ],
        },
        CatalogEntry {
            id: "BlpP3",
            json: g("BlpP3"),
            expected_values: vec![
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: one(),
                },
                // H - E is the fiber class of the projection to the plane;
                // the fiber through the point is contracted.
                GoldenOp::SeshadriS {
                    profile: "generic",
                    class: vec![1, -1],
                    expected: Rational::zero(),
                },
                GoldenOp::NakayamaN {
                    profile: "generic",
                    class: vec![1, -1],
                    expected: one(),
                },
                GoldenOp::NakayamaBigN {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: one(),
                },
                GoldenOp::NakayamaBigN {
                    profile: "on_exceptional",
                    class: vec![1, 0],
                    expected: int(2),
                },
                GoldenOp::SeshadriBigS {
                    profile: "generic",
                    class: vec![1, 0],
                    expected: one(),
                },
                GoldenOp::SeshadriBigS {
                    profile: "on_exceptional",
                    class: vec![1, 0],
                    expected: Rational::zero(),
                },
                GoldenOp::Volume {
                    class: vec![2, -1],
                    expected: int(7),
                },
                GoldenOp::VolHat {
                    class: vec![1, 0],
                    expected: one(),
                },
                GoldenOp::MFunc {
                    class: vec![1, 0],
                    expected: one(),
                },
            ],
        },
    ]
}

/// Loads a model by catalog id or filesystem path, honoring the directory
/// override variable.
pub fn load_model(id_or_path: &str) -> Result<VarietyModel> {
    if let Ok(dir) = std::env::var(CATALOG_DIR_ENV) {
        let candidate = PathBuf::from(&dir).join(format!("{id_or_path}.json"));
        if candidate.exists() {
            let text = std::fs::read_to_string(&candidate)
                .map_err(|e| Error::load(candidate.display().to_string(), e.to_string()))?;
            return VarietyModel::load_json(&text);
        }
    }
    if let Some((_, json)) = EMBEDDED.iter().find(|(k, _)| *k == id_or_path) {
        return VarietyModel::load_json(json);
    }
    let path = PathBuf::from(id_or_path);
    if path.exists() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::load(path.display().to_string(), e.to_string()))?;
        return VarietyModel::load_json(&text);
    }
    Err(Error::precondition(format!(
        "unknown model {id_or_path:?}; catalog ids: {}",
        EMBEDDED
            .iter()
            .map(|(k, _)| *k)
            .collect::<Vec<_>>()
            .join(", ")
    )))
}

/// Writes the embedded catalog files into a directory.
pub fn export_catalog(dir: &std::path::Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::load(dir.display().to_string(), e.to_string()))?;
    let mut written = Vec::new();
    for (id, json) in EMBEDDED {
        let path = dir.join(format!("{id}.json"));
        std::fs::write(&path, json)
            .map_err(|e| Error::load(path.display().to_string(), e.to_string()))?;
        written.push(path);
    }
    Ok(written)
}

/// Executes every expected value of the entry and diffs exactly.
pub fn golden_run(entry: &CatalogEntry, tol: &Rational) -> Result<CheckReport> {
    let model = VarietyModel::load_json(entry.json)?;
    let mut rep = CheckReport::new(model.name.clone(), None, "golden".into());

    for op in &entry.expected_values {
        let outcome = run_golden_op(&model, op, tol)?;
        match outcome {
            None => rep.pass_one(),
            Some(diff) => rep.fail(format!("{op:?}: {diff}")),
        }
    }
    Ok(rep)
}

fn vector(coords: &[i64]) -> RationalVector {
    RationalVector::from_ints(coords)
}

/// Returns `None` on match, or a description of the mismatch.
fn run_golden_op(model: &VarietyModel, op: &GoldenOp, tol: &Rational) -> Result<Option<String>> {
    match op {
        GoldenOp::SeshadriS {
            profile,
            class,
            expected,
        } => {
            let ctx = InvariantContext::new(model, model.profile(profile)?)?;
            let got = ctx.seshadri_s(&vector(class))?;
            Ok((got != *expected).then(|| format!("got {got}, expected {expected}")))
        }
        GoldenOp::SeshadriSViaCurves {
            profile,
            class,
            expected,
        } => {
            let ctx = InvariantContext::new(model, model.profile(profile)?)?;
            let got = ctx.seshadri_s_via_curves(&vector(class))?;
            Ok((got != *expected).then(|| format!("got {got}, expected {expected}")))
        }
        GoldenOp::NakayamaN {
            profile,
            class,
            expected,
        } => {
            let ctx = InvariantContext::new(model, model.profile(profile)?)?;
            let got = ctx.nakayama_n(&vector(class))?;
            Ok((got != *expected).then(|| format!("got {got}, expected {expected}")))
        }
        GoldenOp::NakayamaBigN {
            profile,
            class,
            expected,
        } => {
            let ctx = InvariantContext::new(model, model.profile(profile)?)?;
            let routes = ctx.nakayama_big_n(&vector(class), Route::All, tol)?;
            if !routes.agree(tol) {
                return Ok(Some(format!("routes disagree: {routes:?}")));
            }
            let got = routes.exit.expect("exit route");
            Ok((got != *expected).then(|| format!("got {got}, expected {expected}")))
        }
        GoldenOp::SeshadriBigS {
            profile,
            class,
            expected,
        } => {
            let ctx = InvariantContext::new(model, model.profile(profile)?)?;
            let routes = ctx.seshadri_big_s(&vector(class), Route::All, tol)?;
            if !routes.agree(tol) {
                return Ok(Some(format!("routes disagree: {routes:?}")));
            }
            let got = routes.exit.expect("exit route");
            Ok((got != *expected).then(|| format!("got {got}, expected {expected}")))
        }
        GoldenOp::Volume { class, expected } => {
            let got = model.volume(&vector(class))?;
            Ok((got != *expected).then(|| format!("got {got}, expected {expected}")))
        }
        GoldenOp::VolHat { class, expected } => {
            let got = vol_hat(model, &vector(class), tol)?;
            Ok((!value_matches(&got, expected, tol))
                .then(|| format!("got {got:?}, expected {expected}")))
        }
        GoldenOp::MFunc { class, expected } => {
            let got = m_func(model, &vector(class), tol)?;
            Ok((!value_matches(&got, expected, tol))
                .then(|| format!("got {got:?}, expected {expected}")))
        }
        GoldenOp::Zariski {
            class,
            positive,
            support,
        } => {
            let got = model.zariski_decompose(&vector(class))?;
            let expected_pos = vector(positive);
            if got.positive != expected_pos {
                return Ok(Some(format!(
                    "positive part {} expected {expected_pos}",
                    got.positive
                )));
            }
            let got_support: Vec<(String, Rational)> = got
                .negative_support
                .iter()
                .map(|(l, _, c)| (l.clone(), c.clone()))
                .collect();
            let want: Vec<(String, Rational)> = support
                .iter()
                .map(|(l, c)| (l.to_string(), c.clone()))
                .collect();
            Ok((got_support != want)
                .then(|| format!("support {got_support:?} expected {want:?}")))
        }
    }
}

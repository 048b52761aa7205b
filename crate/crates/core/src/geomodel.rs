//! Intersection-theory models of varieties, marked point types and their
//! point blow-ups.
//!
//! A model carries the four positive cones of `X` (nef and pseudo-effective
//! divisor classes, pseudo-effective and movable curve classes), the
//! divisor/curve intersection pairing, the top intersection form, the
//! irreducible negative curves (surfaces), a chamberwise volume polynomial,
//! and one `PointProfile` per marked point type. A profile carries the four
//! cones of the blow-up `Y` at such a point plus the incidence catalogs
//! (curves and divisors through the point with multiplicities).
//!
//! Blow-up cones are model data, not derived: computing them is genuine
//! geometry the library takes as input, then cross-validates against the
//! cone dualities and the pairing conventions at load time. Any mismatch is
//! a hard load error.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::cones::{MembershipStatus, PolyhedralCone};
use crate::error::Error;
use crate::exactnum::{pair, solve_linear, Rational, RationalMatrix, RationalVector};
use crate::hconc::ConeFunction;
use crate::poly::Polynomial;
use crate::sampling::{rng_from_seed, sample_in_cone};
use crate::Result;

/// Symmetric top intersection form `D_{i_1} ... D_{i_n}` on divisors,
/// stored by exponent multi-index.
#[derive(Clone, Debug)]
pub struct TopForm {
    pub degree: u32,
    pub rho: usize,
    values: BTreeMap<Vec<u32>, Rational>,
}

impl TopForm {
    pub fn new(degree: u32, rho: usize, entries: Vec<(Vec<u32>, Rational)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (exps, value) in entries {
            if exps.len() != rho || exps.iter().sum::<u32>() != degree {
                return Err(Error::load(
                    "top_form",
                    format!("bad multi-index {exps:?} for degree {degree}, rank {rho}"),
                ));
            }
            values.insert(exps, value);
        }
        let form = TopForm { degree, rho, values };
        for e in multi_indices(rho, degree) {
            if !form.values.contains_key(&e) {
                return Err(Error::load(
                    "top_form",
                    format!("missing multi-index {e:?}"),
                ));
            }
        }
        Ok(form)
    }

    pub fn value(&self, exps: &[u32]) -> &Rational {
        &self.values[exps]
    }

    /// `(sum_i x_i D_i)^n` as an exact polynomial in the coordinates.
    pub fn power_polynomial(&self) -> Polynomial {
        let mut terms = Vec::new();
        for (exps, value) in &self.values {
            let coeff = multinomial(self.degree, exps) * value.clone();
            terms.push((exps.clone(), coeff));
        }
        Polynomial::from_terms(self.rho, terms)
    }

    /// Intersection matrix `D_i . D_j` (surfaces).
    pub fn bilinear_matrix(&self) -> Result<RationalMatrix> {
        if self.degree != 2 {
            return Err(Error::Unsupported(
                "bilinear intersection matrix only exists for surfaces".into(),
            ));
        }
        let mut rows = Vec::with_capacity(self.rho);
        for i in 0..self.rho {
            let mut row = Vec::with_capacity(self.rho);
            for j in 0..self.rho {
                let mut e = vec![0u32; self.rho];
                e[i] += 1;
                e[j] += 1;
                row.push(self.values[&e].clone());
            }
            rows.push(row);
        }
        RationalMatrix::from_rows(rows)
    }

    /// The top form on the blow-up `Y`: pulled-back classes multiply as on
    /// `X`, mixed products with the exceptional divisor vanish, and
    /// `E^n = (-1)^{n-1}`.
    pub fn blowup(&self) -> TopForm {
        let mut values = BTreeMap::new();
        for e in multi_indices(self.rho + 1, self.degree) {
            let m = e[self.rho];
            let v = if m == 0 {
                self.values[&e[..self.rho].to_vec()].clone()
            } else if m == self.degree {
                if self.degree % 2 == 0 {
                    -Rational::one()
                } else {
                    Rational::one()
                }
            } else {
                Rational::zero()
            };
            values.insert(e, v);
        }
        TopForm {
            degree: self.degree,
            rho: self.rho + 1,
            values,
        }
    }
}

fn multi_indices(rho: usize, degree: u32) -> Vec<Vec<u32>> {
    if rho == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for rest in multi_indices(rho - 1, degree - first) {
            let mut e = Vec::with_capacity(rho);
            e.push(first);
            e.extend(rest);
            out.push(e);
        }
    }
    out
}

fn multinomial(n: u32, exps: &[u32]) -> Rational {
    let mut num = BigInt::from(1);
    for k in 2..=n {
        num *= BigInt::from(k);
    }
    let mut den = BigInt::from(1);
    for &e in exps {
        for k in 2..=e {
            den *= BigInt::from(k);
        }
    }
    Rational::new(num, den).expect("positive denominator")
}

/// An irreducible curve of negative self-intersection (surfaces).
#[derive(Clone, Debug)]
pub struct NegativeCurve {
    pub label: String,
    pub class_div: RationalVector,
    pub self_int: Rational,
}

/// A curve or divisor through the marked point, with its multiplicity there.
#[derive(Clone, Debug)]
pub struct Incidence {
    pub label: String,
    pub class: RationalVector,
    pub mult: Rational,
}

/// Data for a vanishing-locus instance: a movable boundary class, (the class
/// of) its positive-product root, and the divisorial non-Kaehler components.
#[derive(Clone, Debug)]
pub struct TheoremCCase {
    pub alpha: RationalVector,
    pub l_alpha_div: RationalVector,
    pub enk_divisorial: Vec<String>,
}

/// The four positive cones of the blow-up at the marked point, ambient
/// dimension `rho + 1`, with the blow-up coordinate last.
#[derive(Clone, Debug)]
pub struct BlowupModel {
    pub nef_y: PolyhedralCone,
    pub eff_div_y: PolyhedralCone,
    pub eff_curves_y: PolyhedralCone,
    pub mov_curves_y: PolyhedralCone,
    pub pairing_y: RationalMatrix,
}

impl BlowupModel {
    /// Linear pullback map appending a zero blow-up coordinate.
    pub fn pullback_matrix(&self, rho: usize) -> RationalMatrix {
        let mut m = RationalMatrix::new(
            rho + 1,
            rho,
            vec![Rational::zero(); (rho + 1) * rho],
        )
        .expect("sized");
        for i in 0..rho {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn pullback_div(&self, l: &RationalVector) -> RationalVector {
        let mut coords = l.coords.clone();
        coords.push(Rational::zero());
        RationalVector::new(coords)
    }

    pub fn pullback_curve(&self, alpha: &RationalVector) -> RationalVector {
        self.pullback_div(alpha)
    }

    /// The class `e = (-E)^{n-1} = -l_E` in curve coordinates of `Y`.
    ///
    /// On `E`, the conormal bundle is `O(1)`, so `E^{n-1}` is
    /// `(-1)^{n-2} l_E` and the sign cancels to `-l_E` in every dimension;
    /// the consistency pairing `E . e = 1` is asserted.
    pub fn exceptional_curve_class(&self) -> RationalVector {
        let dim = self.pairing_y.rows;
        let mut coords = vec![Rational::zero(); dim];
        coords[dim - 1] = -Rational::one();
        let e = RationalVector::new(coords);
        let mut e_div = vec![Rational::zero(); dim];
        e_div[dim - 1] = Rational::one();
        let check = pair(&self.pairing_y, &RationalVector::new(e_div), &e)
            .expect("pairing dimensions");
        debug_assert_eq!(check, Rational::one());
        e
    }

    /// Direction `-E` in divisor coordinates of `Y`.
    pub fn minus_exceptional_divisor(&self) -> RationalVector {
        let dim = self.pairing_y.rows;
        let mut coords = vec![Rational::zero(); dim];
        coords[dim - 1] = -Rational::one();
        RationalVector::new(coords)
    }
}

/// A marked point type: the blow-up cone data plus incidence catalogs.
#[derive(Clone, Debug)]
pub struct PointProfile {
    pub name: String,
    pub blowup: BlowupModel,
    pub curves_through_x: Vec<Incidence>,
    pub divisors_through_x: Vec<Incidence>,
    /// Labels of catalog negative curves containing the point.
    pub on_curves: Vec<String>,
}

/// Intersection-theory model of a variety with marked point types.
#[derive(Clone, Debug)]
pub struct VarietyModel {
    pub name: String,
    pub dim_n: u32,
    pub rho: usize,
    pub divisor_basis: Vec<String>,
    pub curve_basis: Vec<String>,
    pub pairing: RationalMatrix,
    pub top_form: TopForm,
    pub nef: PolyhedralCone,
    pub eff_div: PolyhedralCone,
    pub eff_curves: PolyhedralCone,
    pub mov_curves: PolyhedralCone,
    pub negative_curves: Vec<NegativeCurve>,
    pub prime_divisors: Vec<(String, RationalVector)>,
    pub volume_chambers: Vec<(PolyhedralCone, Polynomial)>,
    pub point_profiles: Vec<PointProfile>,
    pub theorem_c_cases: Vec<TheoremCCase>,
    pub provenance: String,
}

/// Zariski decomposition `L = P + N` on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: RationalVector,
    /// `(label, divisor class, coefficient)` for the negative part.
    pub negative_support: Vec<(String, RationalVector, Rational)>,
}

impl ZariskiDecomposition {
    pub fn negative_part(&self, rho: usize) -> RationalVector {
        let mut acc = RationalVector::zeros(rho);
        for (_, class, coeff) in &self.negative_support {
            acc = acc.add(&class.scale(coeff));
        }
        acc
    }
}

impl VarietyModel {
    pub fn load_json(text: &str) -> Result<VarietyModel> {
        let schema: ModelSchema = serde_json::from_str(text)
            .map_err(|e| Error::load("model json", e.to_string()))?;
        VarietyModel::from_schema(schema)
    }

    pub fn profile(&self, name: &str) -> Result<&PointProfile> {
        self.point_profiles
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| {
                Error::precondition(format!(
                    "model {} has no profile {name:?}; available: {}",
                    self.name,
                    self.point_profiles
                        .iter()
                        .map(|p| p.name.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }

    /// Divisor-by-divisor intersection number (surfaces).
    pub fn divisor_dot(&self, a: &RationalVector, b: &RationalVector) -> Result<Rational> {
        let q = self.top_form.bilinear_matrix()?;
        pair(&q, a, b)
    }

    /// Curve class representing a divisor under the intersection pairing
    /// (surfaces): the unique `g` with `pair(L, g) = L . D` for all `L`.
    pub fn divisor_to_curve(&self, d: &RationalVector) -> Result<RationalVector> {
        let q = self.top_form.bilinear_matrix()?;
        let qd = q.mul_vec(d)?;
        solve_linear(&self.pairing, &qd)?
            .ok_or_else(|| Error::model("pairing matrix is singular"))
    }

    /// `L^n` from the top intersection form.
    pub fn top_power(&self, l: &RationalVector) -> Rational {
        self.top_form.power_polynomial().eval(l)
    }

    /// Curve class of `L^{n-1}`: the unique `g` with
    /// `pair(D, g) = L^{n-1} . D` for every divisor `D`.
    pub fn power_curve_class(&self, l: &RationalVector) -> Result<RationalVector> {
        power_curve_class_for(&self.top_form, &self.pairing, l)
    }

    /// Curve class of `D^{n-1}` on the blow-up, for a divisor class `D` on
    /// `Y`; uses the derived top form of the blow-up.
    pub fn blowup_power_curve_class(
        &self,
        profile: &PointProfile,
        d_on_y: &RationalVector,
    ) -> Result<RationalVector> {
        let top_y = self.top_form.blowup();
        power_curve_class_for(&top_y, &profile.blowup.pairing_y, d_on_y)
    }

    /// Divisorial Zariski decomposition on a surface, by the standard
    /// fixpoint iteration on the set of curves met negatively.
    pub fn zariski_decompose(&self, l: &RationalVector) -> Result<ZariskiDecomposition> {
        if self.dim_n != 2 {
            return Err(Error::Unsupported(format!(
                "Zariski decomposition implemented for surfaces only (dim {})",
                self.dim_n
            )));
        }
        if !self.eff_div.contains(l)? {
            return Err(Error::precondition(format!(
                "{l} is not pseudo-effective on {}",
                self.name
            )));
        }
        let q = self.top_form.bilinear_matrix()?;
        let dot = |a: &RationalVector, b: &RationalVector| -> Result<Rational> { pair(&q, a, b) };

        let mut support: Vec<usize> = Vec::new();
        for (i, c) in self.negative_curves.iter().enumerate() {
            if dot(l, &c.class_div)?.is_negative() {
                support.push(i);
            }
        }
        let mut coeffs: Vec<Rational>;
        for _round in 0..=self.negative_curves.len() {
            if support.is_empty() {
                return Ok(ZariskiDecomposition {
                    positive: l.clone(),
                    negative_support: Vec::new(),
                });
            }
            // Solve (L - sum c_j C_j) . C_i = 0 on the support.
            let k = support.len();
            let mut gram_rows = Vec::with_capacity(k);
            let mut rhs = Vec::with_capacity(k);
            for &i in &support {
                let ci = &self.negative_curves[i].class_div;
                let mut row = Vec::with_capacity(k);
                for &j in &support {
                    row.push(dot(&self.negative_curves[j].class_div, ci)?);
                }
                gram_rows.push(row);
                rhs.push(dot(l, ci)?);
            }
            let gram = RationalMatrix::from_rows(gram_rows)?;
            assert_negative_definite(&gram, &self.name)?;
            let sol = solve_linear(&gram, &RationalVector::new(rhs))?
                .ok_or_else(|| Error::model("singular Gram matrix in Zariski step"))?;
            coeffs = sol.coords;

            // Enlarge the support with any curve still met negatively.
            let mut n_part = RationalVector::zeros(self.rho);
            for (pos, &i) in support.iter().enumerate() {
                n_part = n_part.add(&self.negative_curves[i].class_div.scale(&coeffs[pos]));
            }
            let p_part = l.sub(&n_part);
            let mut grew = false;
            for (i, c) in self.negative_curves.iter().enumerate() {
                if !support.contains(&i) && dot(&p_part, &c.class_div)?.is_negative() {
                    support.push(i);
                    grew = true;
                }
            }
            if !grew {
                for (pos, &i) in support.iter().enumerate() {
                    if coeffs[pos].is_negative() {
                        return Err(Error::model(format!(
                            "negative Zariski coefficient for {}",
                            self.negative_curves[i].label
                        )));
                    }
                }
                let membership = self.nef.membership(&p_part)?;
                if membership.status == MembershipStatus::Outside {
                    return Err(Error::model(format!(
                        "Zariski positive part {p_part} of {l} is not nef; negative-curve catalog incomplete?"
                    )));
                }
                let mut negative_support = Vec::with_capacity(support.len());
                for (pos, &i) in support.iter().enumerate() {
                    let c = &self.negative_curves[i];
                    negative_support.push((c.label.clone(), c.class_div.clone(), coeffs[pos].clone()));
                }
                negative_support.sort_by(|a, b| a.0.cmp(&b.0));
                return Ok(ZariskiDecomposition {
                    positive: p_part,
                    negative_support,
                });
            }
            support.sort_unstable();
        }
        Err(Error::model(format!(
            "Zariski iteration failed to stabilize within {} rounds on {}",
            self.negative_curves.len() + 1,
            self.name
        )))
    }

    /// Exact volume of a pseudo-effective divisor class: `P(L)^2` on
    /// surfaces, the chamber polynomial otherwise.
    pub fn volume(&self, l: &RationalVector) -> Result<Rational> {
        if !self.eff_div.contains(l)? {
            return Err(Error::precondition(format!(
                "{l} is not pseudo-effective on {}",
                self.name
            )));
        }
        if self.dim_n == 2 {
            let z = self.zariski_decompose(l)?;
            return self.divisor_dot(&z.positive, &z.positive);
        }
        self.volume_from_chambers(l)
    }

    pub fn volume_from_chambers(&self, l: &RationalVector) -> Result<Rational> {
        for (cone, poly) in &self.volume_chambers {
            if cone.contains(l)? {
                return Ok(poly.eval(l));
            }
        }
        Err(Error::model(format!(
            "volume chambers of {} do not cover {l}",
            self.name
        )))
    }

    /// `vol^{1/n}` restricted to the nef cone (a single chamber: the top
    /// self-intersection polynomial).
    pub fn volume_root_on_nef(&self) -> Result<ConeFunction> {
        ConeFunction::power_polynomial(
            self.nef.clone(),
            vec![(self.nef.clone(), self.top_form.power_polynomial())],
            self.dim_n,
        )
    }

    /// `vol^{1/n}` on the pseudo-effective cone, from the model chambers.
    pub fn volume_root_on_eff(&self) -> Result<ConeFunction> {
        ConeFunction::power_polynomial(
            self.eff_div.clone(),
            self.volume_chambers.clone(),
            self.dim_n,
        )
    }

    fn from_schema(schema: ModelSchema) -> Result<VarietyModel> {
        let rho = schema.rho;
        if schema.divisor_basis.len() != rho || schema.curve_basis.len() != rho {
            return Err(Error::load(
                schema.name.clone(),
                "basis label count must equal rho",
            ));
        }
        if schema.dim_n < 2 {
            return Err(Error::load(schema.name.clone(), "dim_n must be at least 2"));
        }
        let pairing = schema.pairing.clone();
        if pairing.rows != rho || pairing.cols != rho {
            return Err(Error::load(schema.name.clone(), "pairing must be rho x rho"));
        }
        let curve_pairing = pairing.transpose();

        let nef = PolyhedralCone::from_rays(rho, &schema.nef_rays, pairing.clone())
            .map_err(|e| Error::load(format!("{}/nef", schema.name), e.to_string()))?;
        let eff_div = PolyhedralCone::from_rays(rho, &schema.eff_div_rays, pairing.clone())
            .map_err(|e| Error::load(format!("{}/eff_div", schema.name), e.to_string()))?;
        let eff_curves =
            PolyhedralCone::from_rays(rho, &schema.eff_curve_rays, curve_pairing.clone())
                .map_err(|e| Error::load(format!("{}/eff_curves", schema.name), e.to_string()))?;
        let mov_curves =
            PolyhedralCone::from_rays(rho, &schema.mov_curve_rays, curve_pairing.clone())
                .map_err(|e| Error::load(format!("{}/mov_curves", schema.name), e.to_string()))?;

        // Cone dualities are the load-bearing consistency facts.
        let nef_dual = nef.dual()?;
        if !nef_dual.same_cone(&eff_curves) {
            return Err(Error::load(
                format!("{}/cones", schema.name),
                "duality violated: dual(Nef) != pseudo-effective curve cone",
            ));
        }
        let eff_dual = eff_div.dual()?;
        if !eff_dual.same_cone(&mov_curves) {
            return Err(Error::load(
                format!("{}/cones", schema.name),
                "duality violated: dual(Eff) != movable curve cone",
            ));
        }
        for r in nef.rays() {
            if !eff_div.contains(r)? {
                return Err(Error::load(
                    format!("{}/cones", schema.name),
                    format!("nef ray {r} is not pseudo-effective"),
                ));
            }
        }
        for r in mov_curves.rays() {
            if !eff_curves.contains(r)? {
                return Err(Error::load(
                    format!("{}/cones", schema.name),
                    format!("movable ray {r} is not pseudo-effective"),
                ));
            }
        }

        let top_form = TopForm::new(
            schema.dim_n,
            rho,
            schema
                .top_form
                .into_iter()
                .map(|t| (t.exponents, t.value))
                .collect(),
        )?;

        let negative_curves: Vec<NegativeCurve> = schema
            .negative_curves
            .into_iter()
            .map(|c| NegativeCurve {
                label: c.label,
                class_div: c.class_div,
                self_int: c.self_int,
            })
            .collect();
        if schema.dim_n == 2 {
            let q = top_form.bilinear_matrix()?;
            for c in &negative_curves {
                let got = pair(&q, &c.class_div, &c.class_div)?;
                if got != c.self_int {
                    return Err(Error::load(
                        format!("{}/negative_curves/{}", schema.name, c.label),
                        format!("self-intersection mismatch: stated {}, computed {got}", c.self_int),
                    ));
                }
                if !got.is_negative() {
                    return Err(Error::load(
                        format!("{}/negative_curves/{}", schema.name, c.label),
                        "self-intersection is not negative",
                    ));
                }
            }
        } else if !negative_curves.is_empty() {
            return Err(Error::load(
                schema.name.clone(),
                "negative_curves are surface data",
            ));
        }

        let mut volume_chambers = Vec::new();
        for (i, ch) in schema.volume_chambers.into_iter().enumerate() {
            let cone = PolyhedralCone::from_rays(rho, &ch.rays, pairing.clone())
                .map_err(|e| {
                    Error::load(format!("{}/volume_chambers[{i}]", schema.name), e.to_string())
                })?;
            if !ch.polynomial.is_homogeneous(schema.dim_n) {
                return Err(Error::load(
                    format!("{}/volume_chambers[{i}]", schema.name),
                    "chamber polynomial is not homogeneous of degree n",
                ));
            }
            volume_chambers.push((cone, ch.polynomial));
        }

        let mut point_profiles = Vec::new();
        for p in schema.point_profiles {
            point_profiles.push(load_profile(
                &schema.name,
                rho,
                &pairing,
                &nef,
                &eff_div,
                &eff_curves,
                &mov_curves,
                &negative_curves,
                p,
            )?);
        }
        if !point_profiles.iter().any(|p| p.name == "generic") {
            return Err(Error::load(
                schema.name.clone(),
                "every model must include a \"generic\" point profile",
            ));
        }

        let mut theorem_c_cases = Vec::new();
        for (i, c) in schema.theorem_c_cases.into_iter().enumerate() {
            if !mov_curves.contains(&c.alpha)? {
                return Err(Error::load(
                    format!("{}/theorem_c_cases[{i}]", schema.name),
                    "alpha is not movable",
                ));
            }
            if !eff_div.contains(&c.l_alpha_div)? {
                return Err(Error::load(
                    format!("{}/theorem_c_cases[{i}]", schema.name),
                    "L_alpha is not pseudo-effective",
                ));
            }
            for label in &c.enk_divisorial {
                if !negative_curves.iter().any(|n| &n.label == label) {
                    return Err(Error::load(
                        format!("{}/theorem_c_cases[{i}]", schema.name),
                        format!("unknown negative curve label {label:?}"),
                    ));
                }
            }
            theorem_c_cases.push(TheoremCCase {
                alpha: c.alpha,
                l_alpha_div: c.l_alpha_div,
                enk_divisorial: c.enk_divisorial,
            });
        }

        let mut prime_divisors = Vec::new();
        for d in schema.prime_divisors {
            if !eff_div.contains(&d.class_div)? {
                return Err(Error::load(
                    format!("{}/prime_divisors/{}", schema.name, d.label),
                    "prime divisor class is not pseudo-effective",
                ));
            }
            prime_divisors.push((d.label, d.class_div));
        }

        let model = VarietyModel {
            name: schema.name,
            dim_n: schema.dim_n,
            rho,
            divisor_basis: schema.divisor_basis,
            curve_basis: schema.curve_basis,
            pairing,
            top_form,
            nef,
            eff_div,
            eff_curves,
            mov_curves,
            negative_curves,
            prime_divisors,
            volume_chambers,
            point_profiles,
            theorem_c_cases,
            provenance: schema.provenance,
        };
        model.validate_volume()?;
        Ok(model)
    }

    /// Volume cross-checks: the chambers must reproduce the top
    /// self-intersection on the nef cone and, on surfaces, the Zariski
    /// positive-part square on pseudo-effective samples.
    fn validate_volume(&self) -> Result<()> {
        let mut rng = rng_from_seed(0xC0DE);
        let top_poly = self.top_form.power_polynomial();
        for _ in 0..20 {
            let l = sample_in_cone(&self.nef, &mut rng);
            let from_chambers = self.volume_from_chambers(&l)?;
            let from_top = top_poly.eval(&l);
            if from_chambers != from_top {
                return Err(Error::load(
                    format!("{}/volume_chambers", self.name),
                    format!("nef volume mismatch at {l}: chambers give {from_chambers}, top form gives {from_top}"),
                ));
            }
        }
        if self.dim_n == 2 {
            for _ in 0..20 {
                let l = sample_in_cone(&self.eff_div, &mut rng);
                let from_chambers = self.volume_from_chambers(&l)?;
                let z = self.zariski_decompose(&l)?;
                let from_zariski = self.divisor_dot(&z.positive, &z.positive)?;
                if from_chambers != from_zariski {
                    return Err(Error::load(
                        format!("{}/volume_chambers", self.name),
                        format!("volume mismatch at {l}: chambers give {from_chambers}, Zariski gives {from_zariski}"),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn power_curve_class_for(
    top: &TopForm,
    pairing: &RationalMatrix,
    l: &RationalVector,
) -> Result<RationalVector> {
    // L^{n-1} . D_j = (d/dx_j) (x . D)^n / n evaluated at L.
    let poly = top.power_polynomial();
    let n = Rational::from_int(top.degree as i64);
    let mut rhs = Vec::with_capacity(top.rho);
    for j in 0..top.rho {
        rhs.push(&poly.partial_derivative(j).eval(l) / &n);
    }
    solve_linear(pairing, &RationalVector::new(rhs))?
        .ok_or_else(|| Error::model("pairing matrix is singular"))
}

fn assert_negative_definite(gram: &RationalMatrix, model: &str) -> Result<()> {
    let k = gram.rows;
    for size in 1..=k {
        let mut rows = Vec::with_capacity(size);
        for i in 0..size {
            let mut row = Vec::with_capacity(size);
            for j in 0..size {
                row.push(gram.at(i, j).clone());
            }
            rows.push(row);
        }
        let minor = RationalMatrix::from_rows(rows)?.determinant()?;
        let expected_positive = size % 2 == 0;
        let ok = if expected_positive {
            minor.is_positive()
        } else {
            minor.is_negative()
        };
        if !ok {
            return Err(Error::model(format!(
                "Zariski support Gram matrix on {model} is not negative definite (minor {size} = {minor}); negative-curve catalog incomplete?"
            )));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn load_profile(
    model_name: &str,
    rho: usize,
    pairing: &RationalMatrix,
    nef: &PolyhedralCone,
    eff_div: &PolyhedralCone,
    eff_curves: &PolyhedralCone,
    mov_curves: &PolyhedralCone,
    negative_curves: &[NegativeCurve],
    schema: ProfileSchema,
) -> Result<PointProfile> {
    let loc = |part: &str| format!("{model_name}/profiles/{}/{part}", schema.name);
    let dim_y = rho + 1;

    // Pairing of the blow-up: block extension with E . l_E = -1.
    let mut pairing_y = RationalMatrix::new(
        dim_y,
        dim_y,
        vec![Rational::zero(); dim_y * dim_y],
    )?;
    for i in 0..rho {
        for j in 0..rho {
            pairing_y.set(i, j, pairing.at(i, j).clone());
        }
    }
    pairing_y.set(rho, rho, -Rational::one());
    let curve_pairing_y = pairing_y.transpose();

    let b = &schema.blowup;
    let nef_y = PolyhedralCone::from_rays(dim_y, &b.nef_rays, pairing_y.clone())
        .map_err(|e| Error::load(loc("nef_y"), e.to_string()))?;
    let eff_div_y = PolyhedralCone::from_rays(dim_y, &b.eff_div_rays, pairing_y.clone())
        .map_err(|e| Error::load(loc("eff_div_y"), e.to_string()))?;
    let eff_curves_y = PolyhedralCone::from_rays(dim_y, &b.eff_curve_rays, curve_pairing_y.clone())
        .map_err(|e| Error::load(loc("eff_curves_y"), e.to_string()))?;
    let mov_curves_y = PolyhedralCone::from_rays(dim_y, &b.mov_curve_rays, curve_pairing_y)
        .map_err(|e| Error::load(loc("mov_curves_y"), e.to_string()))?;

    if !nef_y.dual()?.same_cone(&eff_curves_y) {
        return Err(Error::load(
            loc("cones"),
            "duality violated: dual(Nef_Y) != pseudo-effective curve cone of Y",
        ));
    }
    if !eff_div_y.dual()?.same_cone(&mov_curves_y) {
        return Err(Error::load(
            loc("cones"),
            "duality violated: dual(Eff_Y) != movable curve cone of Y",
        ));
    }

    let blowup = BlowupModel {
        nef_y,
        eff_div_y,
        eff_curves_y,
        mov_curves_y,
        pairing_y,
    };

    // Pullbacks of the four cones of X land in the corresponding cones of Y.
    for (name, cone_x, cone_y) in [
        ("nef", nef, &blowup.nef_y),
        ("eff_div", eff_div, &blowup.eff_div_y),
        ("eff_curves", eff_curves, &blowup.eff_curves_y),
        ("mov_curves", mov_curves, &blowup.mov_curves_y),
    ] {
        for r in cone_x.rays() {
            let up = blowup.pullback_div(r);
            if !cone_y.contains(&up)? {
                return Err(Error::load(
                    loc(name),
                    format!("pullback of {name} ray {r} escapes the blow-up cone"),
                ));
            }
        }
    }

    let mut curves_through_x = Vec::new();
    for c in schema.curves_through_x {
        if !eff_curves.contains(&c.class_curve)? {
            return Err(Error::load(
                loc(&format!("curves_through_x/{}", c.label)),
                "curve class is not pseudo-effective",
            ));
        }
        if c.mult < Rational::one() {
            return Err(Error::load(
                loc(&format!("curves_through_x/{}", c.label)),
                "multiplicity at the point must be at least 1",
            ));
        }
        curves_through_x.push(Incidence {
            label: c.label,
            class: c.class_curve,
            mult: c.mult,
        });
    }
    let mut divisors_through_x = Vec::new();
    for d in schema.divisors_through_x {
        if !eff_div.contains(&d.class_div)? {
            return Err(Error::load(
                loc(&format!("divisors_through_x/{}", d.label)),
                "divisor class is not pseudo-effective",
            ));
        }
        if d.mult < Rational::one() {
            return Err(Error::load(
                loc(&format!("divisors_through_x/{}", d.label)),
                "multiplicity at the point must be at least 1",
            ));
        }
        divisors_through_x.push(Incidence {
            label: d.label,
            class: d.class_div,
            mult: d.mult,
        });
    }
    for label in &schema.on_curves {
        if !negative_curves.iter().any(|c| &c.label == label) {
            return Err(Error::load(
                loc("on_curves"),
                format!("unknown negative curve label {label:?}"),
            ));
        }
    }

    Ok(PointProfile {
        name: schema.name,
        blowup,
        curves_through_x,
        divisors_through_x,
        on_curves: schema.on_curves,
    })
}

// --------------------------------------------------------------------------
// JSON schema
// --------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ModelSchema {
    name: String,
    dim_n: u32,
    rho: usize,
    divisor_basis: Vec<String>,
    curve_basis: Vec<String>,
    pairing: RationalMatrix,
    top_form: Vec<TopFormEntry>,
    nef_rays: Vec<RationalVector>,
    eff_div_rays: Vec<RationalVector>,
    eff_curve_rays: Vec<RationalVector>,
    mov_curve_rays: Vec<RationalVector>,
    #[serde(default)]
    negative_curves: Vec<NegativeCurveSchema>,
    #[serde(default)]
    prime_divisors: Vec<PrimeDivisorSchema>,
    volume_chambers: Vec<ChamberSchema>,
    point_profiles: Vec<ProfileSchema>,
    #[serde(default)]
    theorem_c_cases: Vec<TheoremCSchema>,
    #[serde(default)]
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct TopFormEntry {
    exponents: Vec<u32>,
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct NegativeCurveSchema {
    label: String,
    class_div: RationalVector,
    self_int: Rational,
}

#[derive(Serialize, Deserialize)]
struct PrimeDivisorSchema {
    label: String,
    class_div: RationalVector,
}

#[derive(Serialize, Deserialize)]
struct ChamberSchema {
    rays: Vec<RationalVector>,
    polynomial: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct ProfileSchema {
    name: String,
    blowup: BlowupSchema,
    #[serde(default)]
    curves_through_x: Vec<CurveIncidenceSchema>,
    #[serde(default)]
    divisors_through_x: Vec<DivisorIncidenceSchema>,
    #[serde(default)]
    on_curves: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct BlowupSchema {
    nef_rays: Vec<RationalVector>,
    eff_div_rays: Vec<RationalVector>,
    eff_curve_rays: Vec<RationalVector>,
    mov_curve_rays: Vec<RationalVector>,
}

#[derive(Serialize, Deserialize)]
struct CurveIncidenceSchema {
    label: String,
    class_curve: RationalVector,
    mult: Rational,
}

#[derive(Serialize, Deserialize)]
struct DivisorIncidenceSchema {
    label: String,
    class_div: RationalVector,
    mult: Rational,
}

#[derive(Serialize, Deserialize)]
struct TheoremCSchema {
    alpha: RationalVector,
    l_alpha_div: RationalVector,
    enk_divisorial: Vec<String>,
}

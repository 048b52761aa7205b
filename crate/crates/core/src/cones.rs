//! Polyhedral convex cones with exact dual-representation conversion.
//!
//! A cone stores both a minimal V-representation (extremal rays) and a
//! minimal H-representation (facet normals). Facet normals live in the dual
//! coordinate space and are evaluated against cone vectors through an
//! explicit pairing matrix, because the geometric pairings of interest
//! (intersection forms) are indefinite.
//!
//! Conversion between the two representations is the double description
//! method over exact rationals. Catalog cones have rank at most 4 and a
//! handful of rays, so exactness is cheap.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactnum::{Rational, RationalMatrix, RationalVector};
use crate::Result;

/// Where a vector sits relative to a cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeMembership {
    pub status: MembershipStatus,
    /// A violated facet normal (outside) or a tight one (boundary).
    pub witness: Option<RationalVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipStatus {
    Interior,
    Boundary,
    Outside,
}

/// Exit parameter `sup { t >= 0 : base + t dir in C }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExitParameter {
    Finite(Rational),
    Infinite,
}

impl ExitParameter {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExitParameter::Finite(t) => Some(t),
            ExitParameter::Infinite => None,
        }
    }

    pub fn expect_finite(&self, context: &str) -> Result<Rational> {
        self.finite()
            .cloned()
            .ok_or_else(|| Error::model(format!("unbounded exit parameter in {context}")))
    }
}

/// Closed convex rational polyhedral cone, pointed (no lines), possibly of
/// lower dimension than its ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    pub ambient_dim: usize,
    /// Minimal generating set: extremal, primitive, pairwise distinct.
    rays: Vec<RationalVector>,
    /// Minimal inequality set in dual coordinates; for a lower-dimensional
    /// cone the span equations appear as +/- pairs.
    facets: Vec<RationalVector>,
    pairing: RationalMatrix,
    full_dim: bool,
}

impl PolyhedralCone {
    /// Builds a cone from generators, computing minimal V- and H-reps.
    pub fn from_rays(
        ambient_dim: usize,
        rays: &[RationalVector],
        pairing: RationalMatrix,
    ) -> Result<Self> {
        if rays.is_empty() {
            return Err(Error::precondition("cone needs at least one ray"));
        }
        check_pairing(ambient_dim, &pairing)?;
        for r in rays {
            if r.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "cone ray",
                    expected: ambient_dim,
                    found: r.dim(),
                });
            }
            if r.is_zero() {
                return Err(Error::ZeroRay);
            }
        }

        // H-rep: generators of the dual cone { w : r^T M w >= 0 }.
        let pt = pairing.transpose();
        let dual_ineqs: Vec<RationalVector> = rays
            .iter()
            .map(|r| pt.mul_vec(r))
            .collect::<Result<_>>()?;
        let (dual_lin, dual_rays) = extreme_rays(ambient_dim, &dual_ineqs);
        let full_dim = dual_lin.is_empty();
        let mut facets = dual_rays;
        for l in dual_lin {
            facets.push(l.neg());
            facets.push(l);
        }
        sort_vectors(&mut facets);

        // Minimal V-rep: extreme rays of { v : v^T M f >= 0 }.
        let primal_ineqs: Vec<RationalVector> = facets
            .iter()
            .map(|f| pairing.mul_vec(f))
            .collect::<Result<_>>()?;
        let (lin, mut min_rays) = extreme_rays(ambient_dim, &primal_ineqs);
        if !lin.is_empty() {
            return Err(Error::ContainsLine(format!(
                "{:?}",
                rays.iter().map(|r| r.to_string()).collect::<Vec<_>>()
            )));
        }
        sort_vectors(&mut min_rays);

        let cone = PolyhedralCone {
            ambient_dim,
            rays: min_rays,
            facets,
            pairing,
            full_dim,
        };
        // Construction sanity: inputs must lie in the computed cone.
        for r in rays {
            if cone.membership(r)?.status == MembershipStatus::Outside {
                return Err(Error::model(format!(
                    "double description inconsistency: input ray {r} outside computed cone"
                )));
            }
        }
        Ok(cone)
    }

    /// Builds a cone from inequality normals (dual coordinates). Returns
    /// `None` when the inequalities only admit the zero vector.
    pub fn from_facets(
        ambient_dim: usize,
        facet_normals: &[RationalVector],
        pairing: RationalMatrix,
    ) -> Result<Option<Self>> {
        check_pairing(ambient_dim, &pairing)?;
        let primal_ineqs: Vec<RationalVector> = facet_normals
            .iter()
            .map(|f| pairing.mul_vec(f))
            .collect::<Result<_>>()?;
        let (lin, rays) = extreme_rays(ambient_dim, &primal_ineqs);
        if !lin.is_empty() {
            return Err(Error::ContainsLine("cone from facets".into()));
        }
        if rays.is_empty() {
            return Ok(None);
        }
        Ok(Some(Self::from_rays(ambient_dim, &rays, pairing)?))
    }

    pub fn rays(&self) -> &[RationalVector] {
        &self.rays
    }

    pub fn facets(&self) -> &[RationalVector] {
        &self.facets
    }

    pub fn pairing(&self) -> &RationalMatrix {
        &self.pairing
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.full_dim
    }

    /// Pairing evaluation `v^T M f` of a dual vector against a cone vector.
    pub fn eval(&self, facet: &RationalVector, v: &RationalVector) -> Result<Rational> {
        crate::exactnum::pair(&self.pairing, v, facet)
    }

    /// Exact membership classification with a facet witness.
    pub fn membership(&self, v: &RationalVector) -> Result<ConeMembership> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "membership",
                expected: self.ambient_dim,
                found: v.dim(),
            });
        }
        let mut tight: Option<RationalVector> = None;
        for f in &self.facets {
            let val = self.eval(f, v)?;
            if val.is_negative() {
                return Ok(ConeMembership {
                    status: MembershipStatus::Outside,
                    witness: Some(f.clone()),
                });
            }
            if val.is_zero() && tight.is_none() {
                tight = Some(f.clone());
            }
        }
        Ok(match tight {
            Some(f) => ConeMembership {
                status: MembershipStatus::Boundary,
                witness: Some(f),
            },
            None => ConeMembership {
                status: MembershipStatus::Interior,
                witness: None,
            },
        })
    }

    pub fn contains(&self, v: &RationalVector) -> Result<bool> {
        Ok(self.membership(v)?.status != MembershipStatus::Outside)
    }

    /// `sup { t >= 0 : base + t dir in cone }`, exactly.
    ///
    /// The supremum is the minimum of `-eval(f, base) / eval(f, dir)` over
    /// facets decreasing along `dir`; no decreasing facet means the ray never
    /// leaves the cone.
    pub fn exit_parameter(
        &self,
        base: &RationalVector,
        dir: &RationalVector,
    ) -> Result<ExitParameter> {
        if self.membership(base)?.status == MembershipStatus::Outside {
            return Err(Error::precondition(format!(
                "exit_parameter base {base} lies outside the cone"
            )));
        }
        if dir.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "exit_parameter direction",
                expected: self.ambient_dim,
                found: dir.dim(),
            });
        }
        let mut best: Option<Rational> = None;
        for f in &self.facets {
            let slope = self.eval(f, dir)?;
            if slope.is_negative() {
                let level = self.eval(f, base)?;
                let t = -&(&level / &slope);
                best = Some(match best {
                    Some(b) => b.min(t),
                    None => t,
                });
            }
        }
        Ok(match best {
            Some(t) => ExitParameter::Finite(t),
            None => ExitParameter::Infinite,
        })
    }

    /// The dual cone under the stored pairing: rays and facets swap, the
    /// pairing transposes. Errors when the dual would contain a line, i.e.
    /// when this cone is lower-dimensional.
    pub fn dual(&self) -> Result<PolyhedralCone> {
        if !self.full_dim {
            return Err(Error::ContainsLine(
                "dual of a lower-dimensional cone".into(),
            ));
        }
        Ok(PolyhedralCone {
            ambient_dim: self.ambient_dim,
            rays: self.facets.clone(),
            facets: self.rays.clone(),
            pairing: self.pairing.transpose(),
            full_dim: true,
        })
    }

    /// Set equality of minimal representations (rays as sets of primitive
    /// vectors, likewise facets).
    pub fn same_cone(&self, other: &PolyhedralCone) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rays == other.rays
            && self.facets == other.facets
    }

    /// Interior point: the sum of the extremal rays.
    pub fn interior_point(&self) -> RationalVector {
        let mut acc = RationalVector::zeros(self.ambient_dim);
        for r in &self.rays {
            acc = acc.add(r);
        }
        acc
    }
}

fn check_pairing(ambient_dim: usize, pairing: &RationalMatrix) -> Result<()> {
    if pairing.rows != ambient_dim || pairing.cols != ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "cone pairing",
            expected: ambient_dim,
            found: pairing.rows.max(pairing.cols),
        });
    }
    if pairing.determinant()?.is_zero() {
        return Err(Error::precondition(
            "cone pairing must be nondegenerate",
        ));
    }
    Ok(())
}

fn sort_vectors(vs: &mut [RationalVector]) {
    vs.sort_by(compare_vectors);
}

fn compare_vectors(a: &RationalVector, b: &RationalVector) -> Ordering {
    for (x, y) in a.coords.iter().zip(&b.coords) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.coords.len().cmp(&b.coords.len())
}

/// Extreme rays of `{ x : a_i . x >= 0 }` (standard dot product), by the
/// double description method.
///
/// Returns `(lineality_basis, rays)`: the cone equals
/// `span(lineality) + cone(rays)`, and when the lineality basis is empty the
/// rays are exactly the extreme rays, primitive and deduplicated.
pub fn extreme_rays(
    dim: usize,
    ineqs: &[RationalVector],
) -> (Vec<RationalVector>, Vec<RationalVector>) {
    let mut lineality: Vec<RationalVector> = (0..dim)
        .map(|i| {
            let mut c = vec![Rational::zero(); dim];
            c[i] = Rational::one();
            RationalVector::new(c)
        })
        .collect();
    let mut rays: Vec<RationalVector> = Vec::new();

    for (k, a) in ineqs.iter().enumerate() {
        let nonzero = lineality.iter().position(|l| !a.dot(l).is_zero());
        if let Some(idx) = nonzero {
            // Absorb one lineality direction into a ray.
            let mut pivot = lineality.swap_remove(idx);
            let mut s = a.dot(&pivot);
            if s.is_negative() {
                pivot = pivot.neg();
                s = -s;
            }
            for l in lineality.iter_mut() {
                let c = &a.dot(l) / &s;
                *l = l.sub(&pivot.scale(&c));
            }
            for r in rays.iter_mut() {
                let c = &a.dot(r) / &s;
                *r = r.sub(&pivot.scale(&c)).primitive();
            }
            rays.push(pivot.primitive());
            dedup_vectors(&mut rays);
            continue;
        }

        // Lineality lies in the hyperplane; classic positive/negative split.
        let vals: Vec<Rational> = rays.iter().map(|r| a.dot(r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            continue;
        }

        // Tight sets against processed inequalities, for the combinatorial
        // adjacency test.
        let tight: Vec<BTreeSet<usize>> = rays
            .iter()
            .map(|r| {
                ineqs[..=k]
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.dot(r).is_zero())
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();

        let mut next: Vec<RationalVector> = (0..rays.len())
            .filter(|i| !vals[*i].is_negative())
            .map(|i| rays[i].clone())
            .collect();

        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> = tight[p].intersection(&tight[n]).copied().collect();
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != n)
                    .all(|r| !common.is_subset(&tight[r]));
                if !adjacent {
                    continue;
                }
                // a.(w) = 0 with w a positive combination of the pair.
                let w = rays[n]
                    .scale(&vals[p])
                    .sub(&rays[p].scale(&vals[n]))
                    .primitive();
                if !w.is_zero() {
                    next.push(w);
                }
            }
        }
        dedup_vectors(&mut next);
        rays = next;
    }

    sort_vectors(&mut rays);
    (lineality, rays)
}

fn dedup_vectors(vs: &mut Vec<RationalVector>) {
    let mut seen: Vec<RationalVector> = Vec::new();
    vs.retain(|v| {
        if seen.contains(v) {
            false
        } else {
            seen.push(v.clone());
            true
        }
    });
}

/// Exact feasibility of `target = G x, x >= 0` by phase-one simplex with
/// Bland's rule. Independent of the facet representation; used to cross-check
/// V- and H-representations against each other.
pub fn nonneg_combination_exists(
    generators: &[RationalVector],
    target: &RationalVector,
) -> Result<bool> {
    if target.is_zero() {
        return Ok(true);
    }
    let m = target.dim();
    let n = generators.len();
    for g in generators {
        if g.dim() != m {
            return Err(Error::DimensionMismatch {
                context: "feasibility generators",
                expected: m,
                found: g.dim(),
            });
        }
    }
    // Tableau columns: n structural + m artificial + rhs.
    let cols = n + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = target.coords[i].is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        let mut row: Vec<Rational> = Vec::with_capacity(cols + 1);
        for g in generators {
            row.push(&g.coords[i] * &sign);
        }
        for j in 0..m {
            row.push(if j == i { Rational::one() } else { Rational::zero() });
        }
        row.push(&target.coords[i] * &sign);
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut cost: Vec<Rational> = vec![Rational::zero(); cols + 1];
    for row in &tab {
        for (j, c) in cost.iter_mut().enumerate().take(cols + 1) {
            *c -= &row[j];
        }
    }
    for j in n..n + m {
        cost[j] = Rational::zero();
    }

    loop {
        let entering = (0..cols).find(|&j| cost[j].is_negative() && !basis.contains(&j));
        let entering = match entering {
            Some(j) => j,
            None => break,
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[entering].is_positive() {
                let ratio = &row[cols] / &row[entering];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (leaving, _) = match leave {
            Some(l) => l,
            // Unbounded cannot occur in phase one; defensive break.
            None => break,
        };
        let pivot = tab[leaving][entering].clone();
        for c in 0..=cols {
            tab[leaving][c] = &tab[leaving][c] / &pivot;
        }
        for i in 0..m {
            if i != leaving && !tab[i][entering].is_zero() {
                let factor = tab[i][entering].clone();
                for c in 0..=cols {
                    let sub = &tab[leaving][c] * &factor;
                    tab[i][c] -= &sub;
                }
            }
        }
        if !cost[entering].is_zero() {
            let factor = cost[entering].clone();
            for c in 0..=cols {
                let sub = &tab[leaving][c] * &factor;
                cost[c] -= &sub;
            }
        }
        basis[leaving] = entering;
    }

    // Optimal artificial sum is -cost[rhs].
    let mut art_sum = Rational::zero();
    for (i, &b) in basis.iter().enumerate() {
        if b >= n {
            art_sum += &tab[i][cols];
        }
    }
    Ok(art_sum.is_zero())
}

/// Serialization form: rays plus pairing define the cone; the H-rep is
/// emitted for inspection and recomputed on load.
#[derive(Serialize, Deserialize)]
struct ConeData {
    ambient_dim: usize,
    rays: Vec<RationalVector>,
    pairing: RationalMatrix,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    facets: Option<Vec<RationalVector>>,
}

impl Serialize for PolyhedralCone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeData {
            ambient_dim: self.ambient_dim,
            rays: self.rays.clone(),
            pairing: self.pairing.clone(),
            facets: Some(self.facets.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyhedralCone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let data = ConeData::deserialize(d)?;
        PolyhedralCone::from_rays(data.ambient_dim, &data.rays, data.pairing)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec2(a: i64, b: i64) -> RationalVector {
        RationalVector::from_ints(&[a, b])
    }

    fn quadrant() -> PolyhedralCone {
        PolyhedralCone::from_rays(
            2,
            &[vec2(1, 0), vec2(0, 1)],
            RationalMatrix::identity(2),
        )
        .unwrap()
    }

    /// Nef cone of the blow-up of the plane at one point, divisor basis
    /// (H, E), curve basis (pullback line, exceptional line), intersection
    /// pairing diag(1, -1).
    fn nef_blowup_plane() -> PolyhedralCone {
        PolyhedralCone::from_rays(
            2,
            &[vec2(1, 0), vec2(1, -1)],
            RationalMatrix::from_ints(&[&[1, 0], &[0, -1]]),
        )
        .unwrap()
    }

    #[test]
    fn quadrant_self_dual() {
        let c = quadrant();
        assert_eq!(c.rays(), &[vec2(0, 1), vec2(1, 0)]);
        assert_eq!(c.facets(), &[vec2(0, 1), vec2(1, 0)]);
        let d = c.dual().unwrap();
        assert!(d.same_cone(&c));
    }

    #[test]
    fn redundant_ray_removed() {
        let c = PolyhedralCone::from_rays(
            2,
            &[vec2(1, 0), vec2(0, 1), vec2(1, 1)],
            RationalMatrix::identity(2),
        )
        .unwrap();
        assert_eq!(c.rays().len(), 2);
        assert_eq!(c.rays(), &[vec2(0, 1), vec2(1, 0)]);
    }

    #[test]
    fn ray_scaling_idempotent() {
        let c1 = PolyhedralCone::from_rays(
            2,
            &[vec2(2, 0), vec2(0, 3)],
            RationalMatrix::identity(2),
        )
        .unwrap();
        assert!(c1.same_cone(&quadrant()));
    }

    #[test]
    fn zero_ray_rejected() {
        let err = PolyhedralCone::from_rays(2, &[vec2(0, 0)], RationalMatrix::identity(2));
        assert!(matches!(err, Err(Error::ZeroRay)));
    }

    #[test]
    fn line_rejected() {
        let err = PolyhedralCone::from_rays(
            2,
            &[vec2(1, 0), vec2(-1, 0), vec2(0, 1)],
            RationalMatrix::identity(2),
        );
        assert!(matches!(err, Err(Error::ContainsLine(_))));
    }

    #[test]
    fn nef_blowup_facets_are_curve_classes() {
        // Facets of Nef = extremal curve classes: the exceptional line (0,1)
        // and the strict transform of a line through the point (1,-1).
        let c = nef_blowup_plane();
        assert_eq!(c.facets(), &[vec2(0, 1), vec2(1, -1)]);
    }

    #[test]
    fn blowup_cone_dualities() {
        // Nef* = pseudo-effective curves (Mori cone).
        let nef = nef_blowup_plane();
        let mori = nef.dual().unwrap();
        let mut mori_rays = mori.rays().to_vec();
        mori_rays.sort_by(super::compare_vectors);
        assert_eq!(mori_rays, vec![vec2(0, 1), vec2(1, -1)]);

        // Eff* = movable curves.
        let eff = PolyhedralCone::from_rays(
            2,
            &[vec2(0, 1), vec2(1, -1)],
            RationalMatrix::from_ints(&[&[1, 0], &[0, -1]]),
        )
        .unwrap();
        let mov = eff.dual().unwrap();
        assert_eq!(mov.rays(), &[vec2(1, -1), vec2(1, 0)]);
    }

    #[test]
    fn dual_is_involution() {
        for cone in [quadrant(), nef_blowup_plane()] {
            let dd = cone.dual().unwrap().dual().unwrap();
            assert!(dd.same_cone(&cone));
        }
    }

    #[test]
    fn membership_examples() {
        let q = quadrant();
        assert_eq!(
            q.membership(&vec2(1, 1)).unwrap().status,
            MembershipStatus::Interior
        );

        let nef = nef_blowup_plane();
        let m = nef.membership(&vec2(1, -1)).unwrap();
        assert_eq!(m.status, MembershipStatus::Boundary);
        assert_eq!(m.witness, Some(vec2(1, -1))); // tight on the strict transform

        let m = nef.membership(&vec2(1, -2)).unwrap();
        assert_eq!(m.status, MembershipStatus::Outside);
        assert_eq!(m.witness, Some(vec2(1, -1)));
    }

    #[test]
    fn exit_parameter_examples() {
        let q = quadrant();
        let one = Rational::one();
        assert_eq!(
            q.exit_parameter(&vec2(1, 1), &vec2(0, -1)).unwrap(),
            ExitParameter::Finite(one.clone())
        );
        assert_eq!(
            q.exit_parameter(&vec2(1, 0), &vec2(1, 1)).unwrap(),
            ExitParameter::Infinite
        );

        // Seshadri constant of the hyperplane class on the plane.
        let nef = nef_blowup_plane();
        assert_eq!(
            nef.exit_parameter(&vec2(1, 0), &vec2(0, -1)).unwrap(),
            ExitParameter::Finite(one)
        );
    }

    #[test]
    fn exit_parameter_base_outside_errors() {
        let q = quadrant();
        assert!(q.exit_parameter(&vec2(-1, 0), &vec2(1, 0)).is_err());
    }

    #[test]
    fn exit_parameter_homogeneous() {
        let nef = nef_blowup_plane();
        let t1 = nef.exit_parameter(&vec2(1, 0), &vec2(0, -1)).unwrap();
        let t3 = nef.exit_parameter(&vec2(3, 0), &vec2(0, -1)).unwrap();
        assert_eq!(
            t3.finite().unwrap(),
            &(t1.finite().unwrap() * &Rational::from_int(3))
        );
    }

    #[test]
    fn lower_dimensional_cone_supported() {
        let ray = PolyhedralCone::from_rays(2, &[vec2(1, 0)], RationalMatrix::identity(2)).unwrap();
        assert!(!ray.is_full_dimensional());
        // Span equation appears as a +/- facet pair.
        assert_eq!(ray.facets().len(), 3);
        assert!(ray.contains(&vec2(2, 0)).unwrap());
        assert!(!ray.contains(&vec2(1, 1)).unwrap());
        assert_eq!(
            ray.membership(&vec2(1, 0)).unwrap().status,
            MembershipStatus::Boundary
        );
        assert!(ray.dual().is_err());
    }

    #[test]
    fn simplex_feasibility_matches_cone() {
        let rays = [vec2(1, 0), vec2(1, -1)];
        assert!(nonneg_combination_exists(&rays, &vec2(2, -1)).unwrap());
        assert!(!nonneg_combination_exists(&rays, &vec2(-1, 0)).unwrap());
        assert!(!nonneg_combination_exists(&rays, &vec2(1, 1)).unwrap());
        assert!(nonneg_combination_exists(&rays, &vec2(0, 0)).unwrap());
    }

    #[test]
    fn three_dimensional_cone() {
        // Cone over a square: 4 rays, 4 facets.
        let rays = [
            RationalVector::from_ints(&[1, 1, 1]),
            RationalVector::from_ints(&[1, -1, 1]),
            RationalVector::from_ints(&[-1, 1, 1]),
            RationalVector::from_ints(&[-1, -1, 1]),
        ];
        let c = PolyhedralCone::from_rays(3, &rays, RationalMatrix::identity(3)).unwrap();
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        let dd = c.dual().unwrap().dual().unwrap();
        assert!(dd.same_cone(&c));
    }
}

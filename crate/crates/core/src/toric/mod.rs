//! Fans of iterated point blowups of the positive orthant, divisor
//! sheaves, and weight-graded Čech cohomology.
//!
//! Rays are labeled: the `d` coordinate axes, plus one exceptional ray per
//! constellation point (the star-subdivision vector created when that
//! point is blown up). Max cones are unimodular; the fan supports the
//! orthant. Global sections of `O(D)` are the lattice points satisfying
//! `<m, v_rho> >= -a_rho` for every ray; for exceptional-only divisors
//! these form a monomial ideal.
//!
//! Cohomology in degrees `i >= 1` is computed weight by weight: the weight
//! `m` part of `H^i(X, O(D))` is the reduced simplicial cohomology
//! `H~^{i-1}` of the complex of violated rays (subsets of rays that span a
//! cone of the fan and are all violated by `m`). This is the long-exact-
//! sequence reduction of the Čech complex on the max-cone cover; the
//! two routes are cross-checked in the test suite.

mod cech;

pub use cech::{
    cech_dims, injectivity_check, CechStatus, CohomOptions, CohomReport, InjectivityReport,
};

use crate::monomial::{IdealError, MonomialIdeal};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("coefficient vector has length {got}, fan has {expected} rays")]
    CoeffLength { expected: usize, got: usize },
    #[error(
        "weight set is not contained in the orthant: coordinate ray {axis} carries coefficient {coeff} > 0"
    )]
    NotAnIdeal { axis: usize, coeff: i64 },
    #[error("fan is invalid: {0}")]
    InvalidFan(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Ray label: a coordinate axis of the original chart, or the exceptional
/// divisor of a constellation point (0-based index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RayLabel {
    Axis(usize),
    Exceptional(usize),
}

impl Serialize for RayLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RayLabel::Axis(j) => s.serialize_str(&format!("x{}", j + 1)),
            RayLabel::Exceptional(i) => s.serialize_str(&format!("E{}", i + 1)),
        }
    }
}

impl<'de> Deserialize<'de> for RayLabel {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        let parse = |rest: &str| rest.parse::<usize>().ok().filter(|&n| n > 0);
        if let Some(rest) = s.strip_prefix('x') {
            if let Some(n) = parse(rest) {
                return Ok(RayLabel::Axis(n - 1));
            }
        }
        if let Some(rest) = s.strip_prefix('E') {
            if let Some(n) = parse(rest) {
                return Ok(RayLabel::Exceptional(n - 1));
            }
        }
        Err(D::Error::custom(format!("bad ray label '{s}'")))
    }
}

/// Primitive ray with its divisor label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub coords: Vec<i64>,
    pub label: RayLabel,
}

/// Smooth fan from an iterated closed-point blowup of the orthant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub d: usize,
    pub rays: Vec<Ray>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Orthant fan of the unblown chart (one max cone, axis rays only).
    pub fn orthant(d: usize) -> Fan {
        let rays = (0..d)
            .map(|j| {
                let mut v = vec![0i64; d];
                v[j] = 1;
                Ray {
                    coords: v,
                    label: RayLabel::Axis(j),
                }
            })
            .collect();
        Fan {
            d,
            rays,
            max_cones: vec![(0..d).collect()],
        }
    }

    /// Ray index of the exceptional divisor of constellation point `i`.
    /// Rays are pushed axes first, then exceptional in point order.
    pub fn exceptional_ray(&self, point: usize) -> usize {
        debug_assert!(matches!(
            self.rays[self.d + point].label,
            RayLabel::Exceptional(p) if p == point
        ));
        self.d + point
    }

    pub fn exceptional_count(&self) -> usize {
        self.rays.len() - self.d
    }

    /// Structural checks: primitive rays, unimodular max cones, every
    /// label used exactly once, axes first.
    pub fn validate(&self) -> Result<(), ToricError> {
        let bad = |m: String| Err(ToricError::InvalidFan(m));
        if self.rays.len() < self.d {
            return bad("fewer rays than the ambient dimension".into());
        }
        for (j, ray) in self.rays.iter().enumerate() {
            if ray.coords.len() != self.d {
                return bad(format!("ray {j} has wrong arity"));
            }
            if ray.coords.iter().any(|&c| c < 0) || ray.coords.iter().all(|&c| c == 0) {
                return bad(format!("ray {j} is not in the orthant"));
            }
            let g = ray.coords.iter().fold(0i64, |acc, &c| gcd(acc, c));
            if g != 1 {
                return bad(format!("ray {j} is not primitive"));
            }
            let expect = if j < self.d {
                RayLabel::Axis(j)
            } else {
                RayLabel::Exceptional(j - self.d)
            };
            if ray.label != expect {
                return bad(format!("ray {j} has unexpected label"));
            }
        }
        for cone in &self.max_cones {
            if cone.len() != self.d {
                return bad("max cone is not full-dimensional".into());
            }
            let mat: Vec<&[i64]> = cone.iter().map(|&r| &self.rays[r].coords[..]).collect();
            let det = int_det(&mat);
            if det.abs() != 1 {
                return bad(format!("cone {cone:?} has determinant {det}"));
            }
        }
        Ok(())
    }

    fn check_coeffs(&self, a: &[i64]) -> Result<(), ToricError> {
        if a.len() != self.rays.len() {
            return Err(ToricError::CoeffLength {
                expected: self.rays.len(),
                got: a.len(),
            });
        }
        Ok(())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn int_det(rows: &[&[i64]]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign: i128 = 1;
    let mut denom: i128 = 1;
    for k in 0..n.saturating_sub(1) {
        let pivot = (k..n).find(|&i| m[i][k] != 0);
        let Some(p) = pivot else { return 0 };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / denom;
            }
            m[i][k] = 0;
        }
        denom = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Global sections of `O(D)` for `D = sum a_rho D_rho`, as a monomial
/// ideal: the lattice points `m >= 0` with `<m, v_rho> >= -a_rho` for all
/// rays, returned by minimal generators.
///
/// The weight set is upward closed because all rays lie in the orthant.
/// It is contained in the orthant exactly when no coordinate ray carries a
/// positive coefficient; otherwise the set contains points with negative
/// entries and there is no ideal to return.
pub fn sections_ideal(fan: &Fan, a: &[i64]) -> Result<MonomialIdeal, ToricError> {
    fan.check_coeffs(a)?;
    for j in 0..fan.d {
        if a[j] > 0 {
            return Err(ToricError::NotAnIdeal {
                axis: j + 1,
                coeff: a[j],
            });
        }
    }
    // minimal generators lie in the box where a single coordinate already
    // satisfies every constraint it participates in
    let bound: Vec<i64> = (0..fan.d)
        .map(|k| {
            fan.rays
                .iter()
                .zip(a)
                .filter(|(ray, _)| ray.coords[k] > 0)
                .map(|(ray, &ar)| {
                    if ar >= 0 {
                        0
                    } else {
                        (-ar + ray.coords[k] - 1) / ray.coords[k]
                    }
                })
                .max()
                .unwrap_or(0)
        })
        .collect();
    let satisfies = |m: &[i64]| {
        fan.rays.iter().zip(a).all(|(ray, &ar)| {
            let dot: i64 = ray.coords.iter().zip(m).map(|(c, x)| c * x).sum();
            dot >= -ar
        })
    };
    let gens = crate::monomial::minimal_elements(&bound, |v| satisfies(v));
    Ok(MonomialIdeal::new(fan.d, gens)?)
}

/// Per-ray coefficient vector of an exceptional divisor given by its
/// `E`-coefficients over the tree's constellation (zero on coordinate
/// rays).
pub fn ray_coefficients(fan: &Fan, e_coeffs: &[i64]) -> Result<Vec<i64>, ToricError> {
    if e_coeffs.len() != fan.exceptional_count() {
        return Err(ToricError::CoeffLength {
            expected: fan.exceptional_count(),
            got: e_coeffs.len(),
        });
    }
    let mut a = vec![0i64; fan.rays.len()];
    for (i, &c) in e_coeffs.iter().enumerate() {
        a[fan.exceptional_ray(i)] = c;
    }
    Ok(a)
}

/// Adjoint ideal computed from its sheaf description: sections of
/// `O(K_f - D_I)` on a principalization of `I`.
pub fn adjoint_via_sections(
    tree: &crate::monomial::PrincipalizationTree,
    ideal_index: usize,
) -> Result<MonomialIdeal, ToricError> {
    let canonical = tree
        .constellation
        .canonical_divisor()
        .map_err(|e| ToricError::InvalidFan(e.to_string()))?;
    let valuations = tree
        .constellation
        .divisor_of_basis(&tree.bases[ideal_index])
        .map_err(|e| ToricError::InvalidFan(e.to_string()))?;
    let coeffs: Vec<i64> = canonical
        .coeffs
        .iter()
        .zip(&valuations.coeffs)
        .map(|(k, v)| k - v)
        .collect();
    let a = ray_coefficients(&tree.fan, &coeffs)?;
    sections_ideal(&tree.fan, &a)
}

/// Integral closure recovered as sections of `O(-D_I)`; the definitional
/// counterpart of the Newton-polyhedron route.
pub fn closure_via_sections(
    tree: &crate::monomial::PrincipalizationTree,
    ideal_index: usize,
) -> Result<MonomialIdeal, ToricError> {
    let valuations = tree
        .constellation
        .divisor_of_basis(&tree.bases[ideal_index])
        .map_err(|e| ToricError::InvalidFan(e.to_string()))?;
    let coeffs: Vec<i64> = valuations.coeffs.iter().map(|v| -v).collect();
    let a = ray_coefficients(&tree.fan, &coeffs)?;
    sections_ideal(&tree.fan, &a)
}

/// The ideal with a prescribed point basis on a given tree: sections of
/// `O(-sum r_beta E_beta^*)`. Used to realize the adjoint from the basis
/// formula as an actual ideal.
pub fn ideal_of_basis(
    tree: &crate::monomial::PrincipalizationTree,
    basis: &crate::constellation::PointBasis,
) -> Result<MonomialIdeal, ToricError> {
    let valuations = tree
        .constellation
        .divisor_of_basis(basis)
        .map_err(|e| ToricError::InvalidFan(e.to_string()))?;
    let coeffs: Vec<i64> = valuations.coeffs.iter().map(|v| -v).collect();
    let a = ray_coefficients(&tree.fan, &coeffs)?;
    sections_ideal(&tree.fan, &a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_fan_is_valid_and_sections_are_unit() {
        for d in 2..=4 {
            let fan = Fan::orthant(d);
            fan.validate().unwrap();
            let sections = sections_ideal(&fan, &vec![0; d]).unwrap();
            assert!(sections.is_unit());
        }
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(int_det(&[&[1, 1], &[1, 2]]), 1);
        assert_eq!(int_det(&[&[2, 1], &[3, 2]]), 1);
        assert_eq!(int_det(&[&[2, 0], &[0, 3]]), 6);
        assert_eq!(int_det(&[&[1, 2], &[2, 4]]), 0);
        assert_eq!(
            int_det(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]),
            1
        );
        assert_eq!(
            int_det(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]),
            -90
        );
    }

    #[test]
    fn positive_axis_coefficient_is_rejected() {
        let fan = Fan::orthant(2);
        let err = sections_ideal(&fan, &[1, 0]).unwrap_err();
        assert_eq!(
            err,
            ToricError::NotAnIdeal {
                axis: 1,
                coeff: 1
            }
        );
        // negative axis coefficients are fine: they cut the orthant deeper
        let ok = sections_ideal(&fan, &[-2, 0]).unwrap();
        assert_eq!(ok.gens(), &[vec![2, 0]]);
    }

    #[test]
    fn sections_of_ideal_sheaf_recover_integral_closure() {
        use crate::monomial::{integral_closure, principalize, MonomialIdeal};
        for spec in ["x^2, y^3", "x^3, x y, y^4"] {
            let i = MonomialIdeal::parse(spec).unwrap();
            let t = principalize(std::slice::from_ref(&i)).unwrap().tree().unwrap();
            assert_eq!(
                closure_via_sections(&t, 0).unwrap(),
                integral_closure(&i),
                "{spec}"
            );
        }
        // and with the canonical twist included it is the adjoint instead
        let i = MonomialIdeal::parse("x^2, y^3").unwrap();
        let t = principalize(std::slice::from_ref(&i)).unwrap().tree().unwrap();
        assert_eq!(
            adjoint_via_sections(&t, 0).unwrap(),
            MonomialIdeal::maximal(2)
        );
    }

    #[test]
    fn ray_label_wire_format() {
        let a = serde_json::to_string(&RayLabel::Axis(0)).unwrap();
        assert_eq!(a, "\"x1\"");
        let e = serde_json::to_string(&RayLabel::Exceptional(2)).unwrap();
        assert_eq!(e, "\"E3\"");
        let back: RayLabel = serde_json::from_str("\"E3\"").unwrap();
        assert_eq!(back, RayLabel::Exceptional(2));
        assert!(serde_json::from_str::<RayLabel>("\"q9\"").is_err());
    }
}

//! Chart-recursive principalization of monomial ideals by closed-point
//! blowups.
//!
//! Every chart is an affine `d`-space whose coordinates correspond to the
//! rays of a unimodular cone. Blowing up the chart origin is the star
//! subdivision at the sum of those rays; in the `i`-th child chart the
//! substitution is `x_j -> x_j * x_i` for `j != i`, after which each
//! tracked ideal drops its monomial gcd (the weak transform).
//!
//! A chart origin is a base point when some transform is a non-unit ideal
//! whose zero set is exactly the origin. A non-unit transform whose zero
//! set contains a coordinate subspace of positive dimension can never be
//! principalized by point blowups (the non-invertibility locus of a
//! monomial ideal is torus-invariant), so the recursion aborts with a
//! witness. Charts where every transform is a unit become the max cones of
//! the final fan.

use super::{IdealError, MonomialIdeal};
use crate::constellation::{Constellation, Point, PointBasis};
use crate::toric::{Fan, Ray, RayLabel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

pub const DEFAULT_DEPTH_CAP: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrincipalizeError {
    #[error("at least one ideal is required")]
    EmptyInput,
    #[error("ambient dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("all inputs are principal monomial ideals; there are no base points")]
    NoBasePoints,
    #[error("blowup depth cap {cap} exceeded; likely a nonterminating recursion")]
    DepthCapExceeded { cap: usize },
}

/// Positive-dimensional base locus found in some chart: the coordinate
/// subspace `{x_j = 0 : j in vanishing}` lies in the zero set of the
/// transform of input ideal `ideal_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveWitness {
    /// Chart choices from the root, 1-based coordinate indices.
    pub chart_path: Vec<usize>,
    /// 1-based coordinates cutting out the offending subspace.
    pub vanishing: Vec<usize>,
    pub ideal_index: usize,
    pub transform: MonomialIdeal,
    pub labels: Vec<RayLabel>,
}

impl CurveWitness {
    pub fn subspace_dim(&self) -> usize {
        self.transform.dim() - self.vanishing.len()
    }
}

/// Where a point's chart sits in the recursion: chart choices from the
/// root (1-based) and the divisor labels of its coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartLog {
    pub path: Vec<usize>,
    pub labels: Vec<RayLabel>,
}

/// Result of a successful multi-ideal principalization: one shared
/// constellation, a point basis per tracked ideal, the final fan, and the
/// transform of every ideal at every base point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrincipalizationTree {
    pub constellation: Constellation,
    pub bases: Vec<PointBasis>,
    pub fan: Fan,
    pub charts: Vec<ChartLog>,
    /// `transforms[point][ideal]`: weak transform at that base point.
    pub transforms: Vec<Vec<MonomialIdeal>>,
    /// Root transforms (inputs with their monomial factor stripped).
    pub ideals: Vec<MonomialIdeal>,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Principalization {
    Tree(PrincipalizationTree),
    NotFinitelySupported(CurveWitness),
}

impl Principalization {
    pub fn tree(self) -> Option<PrincipalizationTree> {
        match self {
            Principalization::Tree(t) => Some(t),
            Principalization::NotFinitelySupported(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&CurveWitness> {
        match self {
            Principalization::Tree(_) => None,
            Principalization::NotFinitelySupported(w) => Some(w),
        }
    }
}

pub fn principalize(ideals: &[MonomialIdeal]) -> Result<Principalization, PrincipalizeError> {
    principalize_with_cap(ideals, DEFAULT_DEPTH_CAP)
}

pub fn principalize_with_cap(
    ideals: &[MonomialIdeal],
    cap: usize,
) -> Result<Principalization, PrincipalizeError> {
    let Some(first) = ideals.first() else {
        return Err(PrincipalizeError::EmptyInput);
    };
    let d = first.dim();
    if d < 2 {
        return Err(PrincipalizeError::BadDimension(d));
    }
    for i in ideals {
        if i.dim() != d {
            return Err(PrincipalizeError::Ideal(IdealError::DimensionMismatch(
                d,
                i.dim(),
            )));
        }
    }
    let roots: Vec<MonomialIdeal> = ideals.iter().map(|i| i.strip_monomial_factor().0).collect();

    let mut state = State {
        d,
        cap,
        points: Vec::new(),
        bases: vec![Vec::new(); roots.len()],
        transforms: Vec::new(),
        charts: Vec::new(),
        rays: Fan::orthant(d).rays,
        leaf_cones: Vec::new(),
    };
    let root_frame = Frame {
        ray_idx: (0..d).collect(),
        labels: (0..d).map(RayLabel::Axis).collect(),
        path: Vec::new(),
        transforms: roots.clone(),
        parent: None,
    };
    if let Some(witness) = state.visit(root_frame)? {
        return Ok(Principalization::NotFinitelySupported(witness));
    }
    if state.points.is_empty() {
        return Err(PrincipalizeError::NoBasePoints);
    }
    let constellation =
        Constellation::new(d, state.points).expect("blowup recursion yields a valid constellation");
    let bases = state
        .bases
        .into_iter()
        .map(|b| PointBasis::new(b).expect("orders are nonnegative"))
        .collect();
    let fan = Fan {
        d,
        rays: state.rays,
        max_cones: state.leaf_cones,
    };
    debug_assert!(fan.validate().is_ok());
    let tree = PrincipalizationTree {
        constellation,
        bases,
        fan,
        charts: state.charts,
        transforms: state.transforms,
        ideals: roots,
    };
    debug_assert_eq!(tree.verify(), Ok(()));
    Ok(Principalization::Tree(tree))
}

struct State {
    d: usize,
    cap: usize,
    points: Vec<Point>,
    bases: Vec<Vec<i64>>,
    transforms: Vec<Vec<MonomialIdeal>>,
    charts: Vec<ChartLog>,
    rays: Vec<Ray>,
    leaf_cones: Vec<Vec<usize>>,
}

struct Frame {
    /// Ray index (into `State::rays`) of each chart coordinate.
    ray_idx: Vec<usize>,
    labels: Vec<RayLabel>,
    path: Vec<usize>,
    transforms: Vec<MonomialIdeal>,
    parent: Option<usize>,
}

enum Status {
    Unit,
    Origin,
    PositiveDim(Vec<usize>),
}

impl State {
    fn visit(&mut self, frame: Frame) -> Result<Option<CurveWitness>, PrincipalizeError> {
        for (k, t) in frame.transforms.iter().enumerate() {
            if let Status::PositiveDim(cover) = classify(t) {
                return Ok(Some(CurveWitness {
                    chart_path: frame.path.iter().map(|&c| c + 1).collect(),
                    vanishing: cover.iter().map(|&c| c + 1).collect(),
                    ideal_index: k,
                    transform: t.clone(),
                    labels: frame.labels.clone(),
                }));
            }
        }
        let base_point = frame
            .transforms
            .iter()
            .any(|t| matches!(classify(t), Status::Origin));
        if !base_point {
            self.leaf_cones.push(frame.ray_idx);
            return Ok(None);
        }
        if frame.path.len() >= self.cap {
            return Err(PrincipalizeError::DepthCapExceeded { cap: self.cap });
        }

        let idx = self.points.len();
        let prox: BTreeSet<usize> = frame
            .labels
            .iter()
            .filter_map(|l| match l {
                RayLabel::Exceptional(p) => Some(*p),
                RayLabel::Axis(_) => None,
            })
            .collect();
        self.points.push(Point {
            parent: frame.parent,
            prox,
        });
        for (k, t) in frame.transforms.iter().enumerate() {
            self.bases[k].push(if t.is_unit() { 0 } else { t.order() });
        }
        self.transforms.push(frame.transforms.clone());
        self.charts.push(ChartLog {
            path: frame.path.iter().map(|&c| c + 1).collect(),
            labels: frame.labels.clone(),
        });

        // star subdivision at the sum of the chart's rays
        let mut coords = vec![0i64; self.d];
        for &r in &frame.ray_idx {
            for (c, rc) in coords.iter_mut().zip(&self.rays[r].coords) {
                *c = c.checked_add(*rc).expect("ray coordinates overflow");
            }
        }
        let new_ray = self.rays.len();
        self.rays.push(Ray {
            coords,
            label: RayLabel::Exceptional(idx),
        });

        for i in 0..self.d {
            let mut ray_idx = frame.ray_idx.clone();
            ray_idx[i] = new_ray;
            let mut labels = frame.labels.clone();
            labels[i] = RayLabel::Exceptional(idx);
            let mut path = frame.path.clone();
            path.push(i);
            let transforms = frame
                .transforms
                .iter()
                .map(|t| chart_transform(t, i))
                .collect();
            let child = Frame {
                ray_idx,
                labels,
                path,
                transforms,
                parent: Some(idx),
            };
            if let Some(w) = self.visit(child)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

/// Weak transform in chart `i`: substitute `x_j -> x_j x_i`, so the `i`-th
/// exponent becomes the total degree, then strip the monomial gcd.
fn chart_transform(ideal: &MonomialIdeal, i: usize) -> MonomialIdeal {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut v = g.clone();
            v[i] = g.iter().sum();
            v
        })
        .collect();
    MonomialIdeal::new(ideal.dim(), gens)
        .expect("substitution preserves validity")
        .strip_monomial_factor()
        .0
}

/// Zero-set classification of a gcd-free monomial ideal. `PositiveDim`
/// carries a minimal set of coordinates `B` such that every generator
/// involves one of them, with `|B| < d`: the subspace `{x_j = 0, j in B}`
/// then lies in the zero set.
fn classify(t: &MonomialIdeal) -> Status {
    if t.is_unit() {
        return Status::Unit;
    }
    if t.is_m_primary() {
        return Status::Origin;
    }
    let d = t.dim();
    // smallest proper cover; d <= 4 at desk scale, so scan by popcount
    let mut best: Option<Vec<usize>> = None;
    for mask in 1u32..(1 << d) {
        if mask.count_ones() as usize >= d {
            continue;
        }
        if let Some(b) = &best {
            if mask.count_ones() as usize >= b.len() {
                continue;
            }
        }
        let covers = t.gens().iter().all(|g| {
            (0..d).any(|j| mask & (1 << j) != 0 && g[j] > 0)
        });
        if covers {
            best = Some((0..d).filter(|&j| mask & (1 << j) != 0).collect());
        }
    }
    Status::PositiveDim(best.expect("non-unit non-primary ideal has a proper cover"))
}

impl PrincipalizationTree {
    /// Consistency of the three data layers:
    /// the root entry of every basis is the order of its ideal; the fan
    /// valuation of every exceptional ray equals the proximity-derived
    /// valuation `(basis . p^{-1})_i`; and the canonical-divisor
    /// coefficient at each point is `|v_rho| - 1`.
    pub fn verify(&self) -> Result<(), String> {
        self.fan.validate().map_err(|e| e.to_string())?;
        if self.fan.exceptional_count() != self.constellation.len() {
            return Err("one exceptional ray per point is required".into());
        }
        for (k, ideal) in self.ideals.iter().enumerate() {
            if self.bases[k].root() != ideal.order() {
                return Err(format!(
                    "basis root {} differs from ideal order {}",
                    self.bases[k].root(),
                    ideal.order()
                ));
            }
            let vals = self
                .constellation
                .divisor_of_basis(&self.bases[k])
                .map_err(|e| e.to_string())?;
            for i in 0..self.constellation.len() {
                let ray = &self.fan.rays[self.fan.exceptional_ray(i)];
                let fan_val = ideal
                    .gens()
                    .iter()
                    .map(|g| {
                        g.iter()
                            .zip(&ray.coords)
                            .map(|(&a, &b)| a as i128 * b as i128)
                            .sum::<i128>()
                    })
                    .min()
                    .expect("nonempty");
                if fan_val != vals.coeffs[i] as i128 {
                    return Err(format!(
                        "ideal {k}: fan valuation {fan_val} at point {} differs from basis-derived {}",
                        i + 1,
                        vals.coeffs[i]
                    ));
                }
            }
        }
        let canonical = self
            .constellation
            .canonical_divisor()
            .map_err(|e| e.to_string())?;
        for i in 0..self.constellation.len() {
            let ray = &self.fan.rays[self.fan.exceptional_ray(i)];
            let discrepancy: i64 = ray.coords.iter().sum::<i64>() - 1;
            if discrepancy != canonical.coeffs[i] {
                return Err(format!(
                    "discrepancy {} at point {} differs from canonical coefficient {}",
                    discrepancy,
                    i + 1,
                    canonical.coeffs[i]
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(d: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(d, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn tree_of(gens: &[&[i64]], d: usize) -> PrincipalizationTree {
        principalize(&[ideal(d, gens)])
            .unwrap()
            .tree()
            .expect("finitely supported")
    }

    #[test]
    fn cusp_tree_matches_hand_trace() {
        let t = tree_of(&[&[2, 0], &[0, 3]], 2);
        assert_eq!(t.constellation.len(), 3);
        assert_eq!(t.bases[0].entries(), &[2, 1, 1]);
        let pts = t.constellation.points();
        assert_eq!(pts[1].parent, Some(0));
        assert_eq!(pts[1].prox, BTreeSet::from([0]));
        assert_eq!(pts[2].parent, Some(1));
        assert_eq!(pts[2].prox, BTreeSet::from([0, 1]));
        // exceptional rays and their valuations on the ideal
        let rays: Vec<Vec<i64>> = (0..3)
            .map(|i| t.fan.rays[t.fan.exceptional_ray(i)].coords.clone())
            .collect();
        assert_eq!(rays, vec![vec![1, 1], vec![2, 1], vec![3, 2]]);
        let vals = t.constellation.divisor_of_basis(&t.bases[0]).unwrap();
        assert_eq!(vals.coeffs, vec![2, 3, 6]);
        t.verify().unwrap();
        // second point's transform is (x^2, y) in its chart
        assert_eq!(t.transforms[1][0], ideal(2, &[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn power_of_maximal_is_one_point() {
        for a in 1..=4 {
            let t = tree_of(&[&[a, 0, 0], &[0, a, 0], &[0, 0, a]], 3);
            assert_eq!(t.constellation.len(), 1);
            assert_eq!(t.bases[0].entries(), &[a]);
            assert_eq!(t.fan.max_cones.len(), 3);
            t.verify().unwrap();
        }
    }

    #[test]
    fn curve_of_base_points_is_detected() {
        let out = principalize(&[ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]])]).unwrap();
        let w = out.witness().expect("not finitely supported");
        assert_eq!(w.chart_path.len(), 2, "curve appears in a depth-2 chart");
        assert_eq!(w.subspace_dim(), 1);
        assert_eq!(w.transform, ideal(3, &[&[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(w.vanishing, vec![1, 3]);
    }

    #[test]
    fn monomial_times_primary_strips_factor() {
        // x * (x^2, y^3): the tracked ideal is the primary part
        let t = tree_of(&[&[3, 0], &[1, 3]], 2);
        assert_eq!(t.bases[0].entries(), &[2, 1, 1]);
        assert_eq!(t.ideals[0], ideal(2, &[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn principal_input_has_no_base_points() {
        let err = principalize(&[ideal(2, &[&[3, 1]])]).unwrap_err();
        assert_eq!(err, PrincipalizeError::NoBasePoints);
    }

    #[test]
    fn joint_principalization_shares_the_constellation() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let m = MonomialIdeal::maximal(2);
        let t = principalize(&[i.clone(), m.clone(), i.product(&m).unwrap()])
            .unwrap()
            .tree()
            .unwrap();
        // product basis = sum of bases, componentwise
        let expect = t.bases[0].product(&t.bases[1]).unwrap();
        assert_eq!(t.bases[2], expect);
        assert_eq!(t.bases[1].entries()[0], 1);
        assert!(t.bases[1].entries()[1..].iter().all(|&e| e == 0));
        t.verify().unwrap();
    }

    #[test]
    fn unit_tracked_ideal_gets_zero_basis() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let t = principalize(&[i, MonomialIdeal::unit(2)])
            .unwrap()
            .tree()
            .unwrap();
        assert!(t.bases[1].entries().iter().all(|&e| e == 0));
    }

    #[test]
    fn depth_cap_is_enforced() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let err = principalize_with_cap(&[i], 2).unwrap_err();
        assert_eq!(err, PrincipalizeError::DepthCapExceeded { cap: 2 });
    }

    #[test]
    fn deeper_three_dimensional_example() {
        // m^2 * (x, y, z^2): two base points, second in the z-chart
        let m2 = MonomialIdeal::maximal(3).pow(2);
        let f = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let t = principalize(&[m2.product(&f).unwrap()])
            .unwrap()
            .tree()
            .unwrap();
        assert_eq!(t.bases[0].entries(), &[3, 1]);
        assert_eq!(t.charts[1].path, vec![3]);
        assert_eq!(t.transforms[1][0], MonomialIdeal::maximal(3));
        assert_eq!(
            t.constellation.points()[1].prox,
            BTreeSet::from([0])
        );
        t.verify().unwrap();
        // star subdivision of the z-chart cone (e1, e2, v1)
        assert_eq!(t.fan.rays[t.fan.exceptional_ray(1)].coords, vec![2, 2, 1]);
    }

    #[test]
    fn transform_substitution_examples() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        // chart y: (x^2 y^2, y^3) / y^2 = (x^2, y)
        assert_eq!(chart_transform(&i, 1), ideal(2, &[&[2, 0], &[0, 1]]));
        // chart x: (x^2, x^3 y^3) / x^2 = (1, ...) = unit
        assert!(chart_transform(&i, 0).is_unit());
    }
}

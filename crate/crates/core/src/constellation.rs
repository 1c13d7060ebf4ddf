//! Constellations of infinitely near points and their divisor combinatorics.
//!
//! A constellation is a rooted tree of blown-up closed points in a regular
//! ambient of dimension `d`. Each non-root point records its parent and its
//! proximity set: the strict ancestors whose exceptional divisor passes
//! through the point (always including the parent; never more than `d` of
//! them, by normal crossings).
//!
//! Exceptional divisors carry two integer coordinate systems: coefficients
//! of the `E_i` themselves ([`Divisor`]) and coordinates in the dual basis
//! `E_i^*` ([`StarDivisor`]). The unitriangular proximity matrix `p`
//! converts between them by the row-vector product `m = n . p`, and a
//! divisor is *full* exactly when its star coordinates are all nonnegative.
//! Point bases of ideals live on the star side and are nonnegative by the
//! proximity inequality.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstellationError {
    #[error("constellation must contain at least one point")]
    Empty,
    #[error("ambient dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("point {point}: parent {parent} is not an earlier point")]
    BadParent { point: usize, parent: usize },
    #[error("point {point}: proximity set must contain the parent")]
    ProxMissingParent { point: usize },
    #[error("point {point}: proximate point {to} is not a strict ancestor")]
    ProxNotAncestor { point: usize, to: usize },
    #[error("point {point}: {got} proximities exceed the ambient bound {bound}")]
    ProxTooLarge { point: usize, got: usize, bound: usize },
    #[error("root point must not have a parent or proximities")]
    BadRoot,
    #[error("vector length {got} does not match point count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("point basis entries must be nonnegative")]
    NegativeBasisEntry,
    #[error("integer overflow in divisor arithmetic")]
    Overflow,
}

type Result<T> = std::result::Result<T, ConstellationError>;

/// One infinitely near point: parent edge plus proximity set (0-based
/// indices into the constellation's point list; the root has neither).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub parent: Option<usize>,
    pub prox: BTreeSet<usize>,
}

/// Rooted tree of infinitely near points with proximity relations, indexed
/// so that every parent precedes its children (the root is point 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constellation {
    d: usize,
    points: Vec<Point>,
}

impl Constellation {
    pub fn new(d: usize, points: Vec<Point>) -> Result<Self> {
        if d < 2 {
            return Err(ConstellationError::BadDimension(d));
        }
        if points.is_empty() {
            return Err(ConstellationError::Empty);
        }
        if points[0].parent.is_some() || !points[0].prox.is_empty() {
            return Err(ConstellationError::BadRoot);
        }
        for (i, pt) in points.iter().enumerate().skip(1) {
            let parent = pt.parent.ok_or(ConstellationError::BadParent {
                point: i + 1,
                parent: 0,
            })?;
            if parent >= i {
                return Err(ConstellationError::BadParent {
                    point: i + 1,
                    parent: parent + 1,
                });
            }
            if !pt.prox.contains(&parent) {
                return Err(ConstellationError::ProxMissingParent { point: i + 1 });
            }
            if pt.prox.len() > d {
                return Err(ConstellationError::ProxTooLarge {
                    point: i + 1,
                    got: pt.prox.len(),
                    bound: d,
                });
            }
            let mut ancestors = BTreeSet::new();
            let mut cur = parent;
            loop {
                ancestors.insert(cur);
                match points[cur].parent {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            for &j in &pt.prox {
                if !ancestors.contains(&j) {
                    return Err(ConstellationError::ProxNotAncestor {
                        point: i + 1,
                        to: j + 1,
                    });
                }
            }
        }
        Ok(Constellation { d, points })
    }

    /// Single root point in dimension `d`.
    pub fn single(d: usize) -> Self {
        Constellation::new(
            d,
            vec![Point {
                parent: None,
                prox: BTreeSet::new(),
            }],
        )
        .expect("single point is valid")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Never true: a constellation always contains its root.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Proximity matrix `p` and its inverse, both upper unitriangular with
    /// exact integer entries; the inverse is entrywise nonnegative.
    pub fn proximity_matrix(&self) -> Result<ProximityMatrix> {
        let r = self.points.len();
        let mut p = vec![vec![0i64; r]; r];
        for i in 0..r {
            p[i][i] = 1;
            for &j in &self.points[i].prox {
                p[j][i] = -1;
            }
        }
        // p = id - N with N nilpotent and nonnegative, so the inverse is
        // nonnegative; solve column by column, bottom-up.
        let mut inv = vec![vec![0i64; r]; r];
        for i in 0..r {
            inv[i][i] = 1;
            for j in (0..i).rev() {
                let mut acc: i64 = 0;
                for k in (j + 1)..=i {
                    if self.points[k].prox.contains(&j) {
                        acc = acc
                            .checked_add(inv[k][i])
                            .ok_or(ConstellationError::Overflow)?;
                    }
                }
                inv[j][i] = acc;
            }
        }
        Ok(ProximityMatrix { p, inv })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.points.len() {
            return Err(ConstellationError::LengthMismatch {
                expected: self.points.len(),
                got: len,
            });
        }
        Ok(())
    }

    /// `E`-coefficients to `E*`-coordinates: `m = n . p`, i.e.
    /// `m_i = n_i - sum of n_j over the points i is proximate to`.
    pub fn to_star(&self, divisor: &Divisor) -> Result<StarDivisor> {
        self.check_len(divisor.coeffs.len())?;
        let n = &divisor.coeffs;
        let mut m = Vec::with_capacity(n.len());
        for (i, pt) in self.points.iter().enumerate() {
            let mut v = n[i];
            for &j in &pt.prox {
                v = v.checked_sub(n[j]).ok_or(ConstellationError::Overflow)?;
            }
            m.push(v);
        }
        Ok(StarDivisor { coords: m })
    }

    /// `E*`-coordinates back to `E`-coefficients: `n = m . p^{-1}`.
    pub fn from_star(&self, star: &StarDivisor) -> Result<Divisor> {
        self.check_len(star.coords.len())?;
        let pm = self.proximity_matrix()?;
        let m = &star.coords;
        let r = m.len();
        let mut n = vec![0i64; r];
        for (j, out) in n.iter_mut().enumerate() {
            let mut acc: i64 = 0;
            for i in 0..=j {
                if pm.inv[i][j] != 0 {
                    let term = m[i]
                        .checked_mul(pm.inv[i][j])
                        .ok_or(ConstellationError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(ConstellationError::Overflow)?;
                }
            }
            *out = acc;
        }
        Ok(Divisor { coeffs: n })
    }

    /// A divisor is full iff all its `E*`-coordinates are nonnegative.
    /// Since `p^{-1} >= 0`, this also forces the `E`-coefficients to be
    /// nonnegative, so it agrees with the two-clause definition.
    pub fn is_full(&self, divisor: &Divisor) -> Result<bool> {
        Ok(self.to_star(divisor)?.coords.iter().all(|&m| m >= 0))
    }

    /// Relative canonical divisor `(d-1)(E_1^* + ... + E_r^*)` in
    /// `E`-coordinates.
    pub fn canonical_divisor(&self) -> Result<Divisor> {
        let k = (self.d - 1) as i64;
        self.from_star(&StarDivisor {
            coords: vec![k; self.points.len()],
        })
    }

    /// Total fiber of the root's maximal ideal: `E_1^*` in `E`-coordinates.
    pub fn fiber_divisor(&self) -> Result<Divisor> {
        let mut coords = vec![0i64; self.points.len()];
        coords[0] = 1;
        self.from_star(&StarDivisor { coords })
    }

    /// Divisor of a point basis: `sum r_beta E_beta^*` in `E`-coordinates.
    /// Always full, since the star coordinates are the (nonnegative) basis.
    pub fn divisor_of_basis(&self, basis: &PointBasis) -> Result<Divisor> {
        self.from_star(&StarDivisor {
            coords: basis.entries.clone(),
        })
    }
}

/// Proximity matrix `p` (upper unitriangular, `p[j][i] = -1` iff point `i`
/// is proximate to point `j`) together with its exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityMatrix {
    pub p: Vec<Vec<i64>>,
    pub inv: Vec<Vec<i64>>,
}

/// Exceptional divisor written as coefficients of `E_1, ..., E_r`.
/// Coefficients may be negative; fullness is a predicate, not an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub coeffs: Vec<i64>,
}

impl Divisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Divisor { coeffs }
    }

    pub fn zero(r: usize) -> Self {
        Divisor { coeffs: vec![0; r] }
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(ConstellationError::LengthMismatch {
                expected: self.coeffs.len(),
                got: other.coeffs.len(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_add(b).ok_or(ConstellationError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Divisor { coeffs })
    }

    /// Componentwise `floor(c * n_i)` for a rational scale `c = num/den >= 0`.
    pub fn scale_floor(&self, num: i64, den: i64) -> Result<Divisor> {
        assert!(den > 0 && num >= 0, "scale must be a nonnegative rational");
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                a.checked_mul(num)
                    .map(|x| x.div_euclid(den))
                    .ok_or(ConstellationError::Overflow)
            })
            .collect::<Result<_>>()?;
        Ok(Divisor { coeffs })
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Divisor in the dual `E*`-coordinates (the free basis of the monoid of
/// full divisors).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarDivisor {
    pub coords: Vec<i64>,
}

/// Point basis of an ideal: the orders of its transforms at each point of
/// a constellation. Entries are nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PointBasis {
    entries: Vec<i64>,
}

impl<'de> Deserialize<'de> for PointBasis {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let entries = Vec::<i64>::deserialize(de)?;
        PointBasis::new(entries).map_err(D::Error::custom)
    }
}

impl PointBasis {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&e| e < 0) {
            return Err(ConstellationError::NegativeBasisEntry);
        }
        Ok(PointBasis { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Order of the ideal at the root point.
    pub fn root(&self) -> i64 {
        self.entries[0]
    }

    /// Point basis of the adjoint: componentwise `max(r + 1 - d, 0)`.
    pub fn adjoint(&self, d: usize) -> PointBasis {
        PointBasis {
            entries: self
                .entries
                .iter()
                .map(|&r| (r + 1 - d as i64).max(0))
                .collect(),
        }
    }

    /// Point basis of a product of ideals: componentwise sum.
    pub fn product(&self, other: &PointBasis) -> Result<PointBasis> {
        if self.entries.len() != other.entries.len() {
            return Err(ConstellationError::LengthMismatch {
                expected: self.entries.len(),
                got: other.entries.len(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.checked_add(b).ok_or(ConstellationError::Overflow))
            .collect::<Result<_>>()?;
        Ok(PointBasis { entries })
    }
}

// ---------------------------------------------------------------------------
// JSON interchange, 1-based ids:
// {"d":2,"points":[{"id":1},{"id":2,"parent":1,"prox":[1]}]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PointJson {
    id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    parent: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    prox: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ConstellationJson {
    d: usize,
    points: Vec<PointJson>,
}

impl Serialize for Constellation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, pt)| PointJson {
                id: i + 1,
                parent: pt.parent.map(|p| p + 1),
                prox: pt.prox.iter().map(|&p| p + 1).collect(),
            })
            .collect();
        ConstellationJson { d: self.d, points }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Constellation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = ConstellationJson::deserialize(de)?;
        let mut points = Vec::with_capacity(raw.points.len());
        for (i, pj) in raw.points.iter().enumerate() {
            if pj.id != i + 1 {
                return Err(D::Error::custom(format!(
                    "point ids must be 1..r in order; found id {} at position {}",
                    pj.id,
                    i + 1
                )));
            }
            let parent = match pj.parent {
                Some(0) => return Err(D::Error::custom("parent ids are 1-based")),
                Some(p) => Some(p - 1),
                None => None,
            };
            let mut prox = BTreeSet::new();
            for &q in &pj.prox {
                if q == 0 {
                    return Err(D::Error::custom("prox ids are 1-based"));
                }
                prox.insert(q - 1);
            }
            points.push(Point { parent, prox });
        }
        Constellation::new(raw.d, points).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn cusp_constellation() -> Constellation {
    Constellation::new(
        2,
        vec![
            Point {
                parent: None,
                prox: BTreeSet::new(),
            },
            Point {
                parent: Some(0),
                prox: BTreeSet::from([0]),
            },
            Point {
                parent: Some(1),
                prox: BTreeSet::from([0, 1]),
            },
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp() -> Constellation {
        cusp_constellation()
    }

    #[test]
    fn single_point_matrix_is_identity() {
        let c = Constellation::single(2);
        let pm = c.proximity_matrix().unwrap();
        assert_eq!(pm.p, vec![vec![1]]);
        assert_eq!(pm.inv, vec![vec![1]]);
    }

    #[test]
    fn cusp_proximity_matrix() {
        let pm = cusp().proximity_matrix().unwrap();
        assert_eq!(pm.p, vec![vec![1, -1, -1], vec![0, 1, -1], vec![0, 0, 1]]);
        assert_eq!(pm.inv, vec![vec![1, 1, 2], vec![0, 1, 1], vec![0, 0, 1]]);
        for i in 0..3 {
            for j in 0..3 {
                let dot: i64 = (0..3).map(|k| pm.p[i][k] * pm.inv[k][j]).sum();
                assert_eq!(dot, i64::from(i == j));
            }
        }
    }

    #[test]
    fn free_chain_inverse_is_all_ones() {
        let c = Constellation::new(
            2,
            vec![
                Point {
                    parent: None,
                    prox: BTreeSet::new(),
                },
                Point {
                    parent: Some(0),
                    prox: BTreeSet::from([0]),
                },
                Point {
                    parent: Some(1),
                    prox: BTreeSet::from([1]),
                },
            ],
        )
        .unwrap();
        let pm = c.proximity_matrix().unwrap();
        assert_eq!(pm.inv, vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn star_conversion_roundtrip_cusp() {
        let c = cusp();
        let n = Divisor::new(vec![2, 3, 6]);
        let m = c.to_star(&n).unwrap();
        assert_eq!(m.coords, vec![2, 1, 1]);
        assert_eq!(c.from_star(&m).unwrap(), n);

        let k = c
            .from_star(&StarDivisor {
                coords: vec![1, 1, 1],
            })
            .unwrap();
        assert_eq!(k.coeffs, vec![1, 2, 4]);
    }

    #[test]
    fn zero_divisor_maps_to_zero() {
        let c = cusp();
        let z = Divisor::zero(3);
        assert_eq!(c.to_star(&z).unwrap().coords, vec![0, 0, 0]);
    }

    #[test]
    fn fullness_examples() {
        let c = cusp();
        assert!(c.is_full(&Divisor::zero(3)).unwrap());
        assert!(c.is_full(&Divisor::new(vec![2, 3, 6])).unwrap());
        // m_3 = 4 - 3 - 2 < 0
        assert!(!c.is_full(&Divisor::new(vec![2, 3, 4])).unwrap());
        // (1,3,6) has star coords (1,2,2): full
        assert!(c.is_full(&Divisor::new(vec![1, 3, 6])).unwrap());
    }

    #[test]
    fn fullness_matches_two_clause_definition() {
        let c = cusp();
        let literal = |n: &[i64]| -> bool {
            (0..3).all(|i| {
                let s: i64 = c.points()[i].prox.iter().map(|&j| n[j]).sum();
                n[i] >= 0 && n[i] >= s
            })
        };
        for a in -2..4 {
            for b in -2..4 {
                for e in -2..6 {
                    let n = vec![a, b, e];
                    let d = Divisor::new(n.clone());
                    assert_eq!(c.is_full(&d).unwrap(), literal(&n), "mismatch at {n:?}");
                }
            }
        }
    }

    #[test]
    fn canonical_and_fiber_divisors() {
        let c = cusp();
        assert_eq!(c.canonical_divisor().unwrap().coeffs, vec![1, 2, 4]);
        assert_eq!(c.fiber_divisor().unwrap().coeffs, vec![1, 1, 2]);
        let single = Constellation::single(3);
        assert_eq!(single.fiber_divisor().unwrap().coeffs, vec![1]);
        assert_eq!(single.canonical_divisor().unwrap().coeffs, vec![2]);
    }

    #[test]
    fn adjoint_basis_formula() {
        let b = PointBasis::new(vec![2, 1, 1]).unwrap();
        assert_eq!(b.adjoint(2).entries(), &[1, 0, 0]);
        let small = PointBasis::new(vec![1, 1, 0]).unwrap();
        assert_eq!(small.adjoint(3).entries(), &[0, 0, 0]);
        let m4 = PointBasis::new(vec![4]).unwrap();
        assert_eq!(m4.adjoint(3).entries(), &[2]);
        assert_eq!(b.adjoint(2).root(), (b.root() + 1 - 2).max(0));
    }

    #[test]
    fn product_basis_is_componentwise_sum() {
        let a = PointBasis::new(vec![2, 1, 1]).unwrap();
        let b = PointBasis::new(vec![1, 0, 0]).unwrap();
        assert_eq!(a.product(&b).unwrap().entries(), &[3, 1, 1]);
    }

    #[test]
    fn validation_rejects_bad_structures() {
        assert_eq!(
            Constellation::new(2, vec![]).unwrap_err(),
            ConstellationError::Empty
        );
        let e = Constellation::new(
            2,
            vec![
                Point {
                    parent: None,
                    prox: BTreeSet::new(),
                },
                Point {
                    parent: Some(0),
                    prox: BTreeSet::new(),
                },
            ],
        )
        .unwrap_err();
        assert_eq!(e, ConstellationError::ProxMissingParent { point: 2 });
        let e = Constellation::new(
            2,
            vec![
                Point {
                    parent: None,
                    prox: BTreeSet::new(),
                },
                Point {
                    parent: Some(0),
                    prox: BTreeSet::from([0]),
                },
                Point {
                    parent: Some(1),
                    prox: BTreeSet::from([0, 1]),
                },
                Point {
                    parent: Some(2),
                    prox: BTreeSet::from([0, 1, 2]),
                },
            ],
        )
        .unwrap_err();
        assert_eq!(
            e,
            ConstellationError::ProxTooLarge {
                point: 4,
                got: 3,
                bound: 2
            }
        );
        let e = Constellation::new(
            3,
            vec![
                Point {
                    parent: None,
                    prox: BTreeSet::new(),
                },
                Point {
                    parent: Some(0),
                    prox: BTreeSet::from([0]),
                },
                Point {
                    parent: Some(0),
                    prox: BTreeSet::from([0, 1]),
                },
            ],
        )
        .unwrap_err();
        assert_eq!(e, ConstellationError::ProxNotAncestor { point: 3, to: 2 });
    }

    #[test]
    fn json_roundtrip_matches_wire_format() {
        let c = cusp();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"d":2,"points":[{"id":1},{"id":2,"parent":1,"prox":[1]},{"id":3,"parent":2,"prox":[1,2]}]}"#
        );
        let back: Constellation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let sample = r#"{"d":2,"points":[{"id":1},{"id":2,"parent":1,"prox":[1]},{"id":3,"parent":2,"prox":[2,1]}]}"#;
        let parsed: Constellation = serde_json::from_str(sample).unwrap();
        assert_eq!(parsed, c);
    }

    #[test]
    fn scale_floor_keeps_fullness() {
        let c = cusp();
        let d = Divisor::new(vec![2, 3, 6]);
        let half = d.scale_floor(1, 2).unwrap();
        assert_eq!(half.coeffs, vec![1, 1, 3]);
        assert!(c.is_full(&half).unwrap());
    }
}

//! Newton-polyhedron tests and the ideals they cut out.
//!
//! `NP(I)` is the convex hull of the generator exponents plus the positive
//! orthant. Membership and interior tests are exact rational LPs; the
//! integral closure and the adjoint are recovered as the lattice points of
//! `NP(I)` and the interior shift `v + 1`, enumerated inside the generator
//! box and minimalized.

use super::{divides, IdealError, MonomialIdeal};
use crate::linalg::{rat, Rat};
use crate::lp::{feasible, minimize, Constraint, LpOutcome, Rel};
use num_traits::Signed;

/// `v` lies in `NP(I)`: some convex combination of generators is
/// componentwise at most `v`. Vectors with negative entries are never
/// members.
pub fn np_member(v: &[i64], ideal: &MonomialIdeal) -> bool {
    assert_eq!(v.len(), ideal.dim(), "exponent arity mismatch");
    if v.iter().any(|&e| e < 0) {
        return false;
    }
    // quick accept: divisibility by a generator
    if ideal.gens().iter().any(|g| divides(g, v)) {
        return true;
    }
    // quick reject: total degree below the minimum over NP(I)
    if v.iter().sum::<i64>() < ideal.order() {
        return false;
    }
    let n = ideal.gens().len();
    let mut cons = Vec::with_capacity(ideal.dim() + 1);
    for j in 0..ideal.dim() {
        cons.push(Constraint {
            coeffs: ideal.gens().iter().map(|g| rat(g[j])).collect(),
            rel: Rel::Le,
            rhs: rat(v[j]),
        });
    }
    cons.push(Constraint {
        coeffs: vec![rat(1); n],
        rel: Rel::Eq,
        rhs: rat(1),
    });
    feasible(n, &cons)
}

/// `v` lies in the interior of `NP(I)`: since the polyhedron is upward
/// closed and full-dimensional, this holds iff `v - delta*(1,...,1)` is a
/// member for some `delta > 0`. Decided exactly by maximizing `delta`.
pub fn np_interior(v: &[i64], ideal: &MonomialIdeal) -> bool {
    assert_eq!(v.len(), ideal.dim(), "exponent arity mismatch");
    let n = ideal.gens().len();
    // variables: lambda_1..lambda_n, delta_plus, delta_minus
    let mut cons = Vec::with_capacity(ideal.dim() + 1);
    for j in 0..ideal.dim() {
        let mut coeffs: Vec<Rat> = ideal.gens().iter().map(|g| rat(g[j])).collect();
        coeffs.push(rat(1));
        coeffs.push(rat(-1));
        cons.push(Constraint {
            coeffs,
            rel: Rel::Le,
            rhs: rat(v[j]),
        });
    }
    let mut coeffs = vec![rat(1); n];
    coeffs.push(rat(0));
    coeffs.push(rat(0));
    cons.push(Constraint {
        coeffs,
        rel: Rel::Eq,
        rhs: rat(1),
    });
    let mut objective = vec![rat(0); n];
    objective.push(rat(-1));
    objective.push(rat(1));
    match minimize(&objective, &cons) {
        LpOutcome::Optimal { value, .. } => (-value).is_positive(),
        LpOutcome::Infeasible => false,
        // delta is bounded above by min v_j since NP(I) stays in the orthant
        LpOutcome::Unbounded => unreachable!("interior depth is bounded"),
    }
}

/// Minimal elements of an upward-closed set of lattice points, enumerated
/// over the box `prod [0, bound_j]`. Points are visited in increasing
/// total degree and the predicate is only consulted on points not
/// dominated by an already-found element, so the result is exactly the
/// antichain of minimal members (provided all minimal members lie in the
/// box). A strict dominator has strictly smaller degree, hence is seen
/// first.
pub fn minimal_elements(bound: &[i64], mut member: impl FnMut(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let mut pts = box_points(bound);
    pts.sort_by(|a, b| {
        let (da, db) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    let mut found: Vec<Vec<i64>> = Vec::new();
    for v in pts {
        if !found.iter().any(|g| divides(g, &v)) && member(&v) {
            found.push(v);
        }
    }
    found
}

fn box_points(bound: &[i64]) -> Vec<Vec<i64>> {
    let d = bound.len();
    let mut pts = Vec::new();
    let mut v = vec![0i64; d];
    'outer: loop {
        pts.push(v.clone());
        let mut k = 0;
        loop {
            if k == d {
                break 'outer;
            }
            v[k] += 1;
            if v[k] <= bound[k] {
                break;
            }
            v[k] = 0;
            k += 1;
        }
    }
    pts
}

/// Generator box: componentwise maximum of the generators. Clamping any
/// coordinate of an NP member down to this box preserves membership, so
/// all minimal closure (and adjoint) generators live inside it.
fn generator_box(ideal: &MonomialIdeal) -> Vec<i64> {
    (0..ideal.dim())
        .map(|j| ideal.gens().iter().map(|g| g[j]).max().expect("nonempty"))
        .collect()
}

/// Integral closure: minimal generators of the monomials in `NP(I)`.
pub fn integral_closure(ideal: &MonomialIdeal) -> MonomialIdeal {
    let bound = generator_box(ideal);
    let gens = minimal_elements(&bound, |v| np_member(v, ideal));
    MonomialIdeal::new(ideal.dim(), gens).expect("closure contains the generators")
}

/// Adjoint (multiplier ideal at exponent one) of an m-primary monomial
/// ideal: monomials `v` with `v + (1,...,1)` interior to `NP(I)`.
///
/// The unit ideal is its own adjoint. Other non-m-primary inputs are
/// rejected: the interior-point description is only guaranteed for ideals
/// cofinite in the orthant.
pub fn adjoint_ideal(ideal: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    if !ideal.is_m_primary() {
        return Err(IdealError::NotMPrimary { op: "adjoint" });
    }
    let bound = generator_box(ideal);
    let one = vec![1i64; ideal.dim()];
    let gens = minimal_elements(&bound, |v| {
        let shifted: Vec<i64> = v.iter().zip(&one).map(|(a, b)| a + b).collect();
        np_interior(&shifted, ideal)
    });
    if gens.is_empty() {
        // cannot happen: far enough inside the box the shift is interior
        unreachable!("adjoint of an m-primary ideal is nonzero");
    }
    MonomialIdeal::new(ideal.dim(), gens)
}

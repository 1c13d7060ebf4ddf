//! Exact monomial-ideal algebra in `d` variables.
//!
//! A [`MonomialIdeal`] is a finite antichain of exponent vectors in
//! `Z_{>=0}^d` (the unique minimal generating set), kept in a canonical
//! sorted order so that structural equality is ideal equality. The zero
//! ideal is excluded; the unit ideal is the single zero vector.

mod newton;
mod principalize;

pub use newton::{adjoint_ideal, integral_closure, minimal_elements, np_interior, np_member};
pub use principalize::{
    principalize, principalize_with_cap, ChartLog, CurveWitness, Principalization,
    PrincipalizationTree, PrincipalizeError, DEFAULT_DEPTH_CAP,
};

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideal must have at least one generator (zero ideal is not allowed)")]
    ZeroIdeal,
    #[error("number of variables must be at least 1, got {0}")]
    BadDimension(usize),
    #[error("generator has {got} exponents, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("exponents must be nonnegative")]
    NegativeExponent,
    #[error("ideals live in different numbers of variables: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{op} requires an m-primary ideal")]
    NotMPrimary { op: &'static str },
    #[error("cannot parse monomial ideal: {0}")]
    Parse(String),
}

type Result<T> = std::result::Result<T, IdealError>;

/// Monomial ideal, canonically represented by its sorted minimal
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    d: usize,
    gens: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Raw {
            d: usize,
            gens: Vec<Vec<i64>>,
        }
        let raw = Raw::deserialize(de)?;
        MonomialIdeal::new(raw.d, raw.gens).map_err(D::Error::custom)
    }
}

/// Drop generators strictly divisible by another; sort lexicographically.
fn minimalize(mut gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .map(|g| {
            !gens
                .iter()
                .any(|h| h != g && h.iter().zip(g).all(|(a, b)| a <= b))
        })
        .collect();
    gens.into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

pub(crate) fn divides(g: &[i64], v: &[i64]) -> bool {
    g.iter().zip(v).all(|(a, b)| a <= b)
}

impl MonomialIdeal {
    pub fn new(d: usize, gens: Vec<Vec<i64>>) -> Result<Self> {
        if d == 0 {
            return Err(IdealError::BadDimension(d));
        }
        if gens.is_empty() {
            return Err(IdealError::ZeroIdeal);
        }
        for g in &gens {
            if g.len() != d {
                return Err(IdealError::ArityMismatch {
                    expected: d,
                    got: g.len(),
                });
            }
            if g.iter().any(|&e| e < 0) {
                return Err(IdealError::NegativeExponent);
            }
        }
        Ok(MonomialIdeal {
            d,
            gens: minimalize(gens),
        })
    }

    /// The unit ideal (generated by 1).
    pub fn unit(d: usize) -> Self {
        MonomialIdeal {
            d,
            gens: vec![vec![0; d]],
        }
    }

    /// The maximal ideal `m = (x_1, ..., x_d)`.
    pub fn maximal(d: usize) -> Self {
        let gens = (0..d)
            .map(|i| {
                let mut v = vec![0; d];
                v[i] = 1;
                v
            })
            .collect();
        MonomialIdeal {
            d,
            gens: minimalize(gens),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    /// Membership of a single monomial.
    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.d
            && v.iter().all(|&e| e >= 0)
            && self.gens.iter().any(|g| divides(g, v))
    }

    /// Containment of ideals: every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_dim(other)?;
        Ok(other.gens.iter().all(|g| self.contains(g)))
    }

    fn check_dim(&self, other: &MonomialIdeal) -> Result<()> {
        if self.d != other.d {
            return Err(IdealError::DimensionMismatch(self.d, other.d));
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(MonomialIdeal {
            d: self.d,
            gens: minimalize(gens),
        })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.iter().zip(h).map(|(a, b)| a + b).collect());
            }
        }
        Ok(MonomialIdeal {
            d: self.d,
            gens: minimalize(gens),
        })
    }

    pub fn pow(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.d);
        for _ in 0..k {
            acc = acc.product(self).expect("same dimension");
        }
        acc
    }

    /// Intersection: pairwise componentwise maxima (lcm of monomials).
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.iter().zip(h).map(|(a, b)| *a.max(b)).collect());
            }
        }
        Ok(MonomialIdeal {
            d: self.d,
            gens: minimalize(gens),
        })
    }

    /// Colon ideal `self : other = { v : v + u in self for all u in other }`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut acc: Option<MonomialIdeal> = None;
        for u in &other.gens {
            // self : (x^u) is generated by the truncated differences
            let gens: Vec<Vec<i64>> = self
                .gens
                .iter()
                .map(|g| g.iter().zip(u).map(|(a, b)| (a - b).max(0)).collect())
                .collect();
            let part = MonomialIdeal {
                d: self.d,
                gens: minimalize(gens),
            };
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?,
            });
        }
        Ok(acc.expect("other has at least one generator"))
    }

    /// Order at the origin: minimal total degree of a generator. The order
    /// of an ideal and of its integral closure agree, since total degree is
    /// linear on the Newton polyhedron.
    pub fn order(&self) -> i64 {
        self.gens
            .iter()
            .map(|g| g.iter().sum::<i64>())
            .min()
            .expect("nonempty")
    }

    /// True iff the radical is the maximal ideal: every variable occurs as
    /// a pure power among the generators. (Equivalently, the integral
    /// closure contains a pure power of each variable.) The unit ideal is
    /// not m-primary.
    pub fn is_m_primary(&self) -> bool {
        !self.is_unit()
            && (0..self.d).all(|j| {
                self.gens
                    .iter()
                    .any(|g| g[j] > 0 && g.iter().enumerate().all(|(k, &e)| k == j || e == 0))
            })
    }

    /// Number of standard monomials outside the ideal. Finite exactly when
    /// the ideal is m-primary (or the unit ideal, with colength 0).
    pub fn colength(&self) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        if !self.is_m_primary() {
            return Err(IdealError::NotMPrimary { op: "colength" });
        }
        // pure power bounds: outside the box every monomial is inside
        let bound: Vec<i64> = (0..self.d)
            .map(|j| {
                self.gens
                    .iter()
                    .filter(|g| g.iter().enumerate().all(|(k, &e)| k == j || e == 0))
                    .map(|g| g[j])
                    .min()
                    .expect("m-primary has a pure power in each variable")
            })
            .collect();
        let mut count = 0u64;
        let mut v = vec![0i64; self.d];
        loop {
            if !self.gens.iter().any(|g| divides(g, &v)) {
                count += 1;
            }
            // odometer over the box [0, bound_j)
            let mut k = 0;
            loop {
                if k == self.d {
                    return Ok(count);
                }
                v[k] += 1;
                if v[k] < bound[k] {
                    break;
                }
                v[k] = 0;
                k += 1;
            }
        }
    }

    /// Divide out the monomial gcd (componentwise minimum of generators),
    /// returning the quotient and the gcd exponent vector.
    pub fn strip_monomial_factor(&self) -> (MonomialIdeal, Vec<i64>) {
        let gcd: Vec<i64> = (0..self.d)
            .map(|j| self.gens.iter().map(|g| g[j]).min().expect("nonempty"))
            .collect();
        if gcd.iter().all(|&e| e == 0) {
            return (self.clone(), gcd);
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().zip(&gcd).map(|(a, b)| a - b).collect())
            .collect();
        (
            MonomialIdeal {
                d: self.d,
                gens: minimalize(gens),
            },
            gcd,
        )
    }

    /// Parse `x^2, y^3` or `x1^2*x2, x2^4`. Variables `x,y,z,w` map to the
    /// first four slots; `x1..x9` are positional. The dimension is the
    /// smallest that fits all named variables (at least `min_dim`).
    pub fn parse_with_min_dim(input: &str, min_dim: usize) -> Result<MonomialIdeal> {
        let mut terms: Vec<Vec<(usize, i64)>> = Vec::new();
        let mut max_var = 0usize;
        for raw in input.split(',') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(IdealError::Parse("empty generator".into()));
            }
            let mut factors: Vec<(usize, i64)> = Vec::new();
            let chars: Vec<char> = term.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let ch = chars[i];
                if ch.is_whitespace() || ch == '*' {
                    i += 1;
                    continue;
                }
                if ch == '1' && factors.is_empty() && i + 1 == chars.len() {
                    // the unit generator
                    i += 1;
                    continue;
                }
                let var = match ch {
                    'x' | 'X' => 0,
                    'y' | 'Y' => 1,
                    'z' | 'Z' => 2,
                    'w' | 'W' => 3,
                    _ => {
                        return Err(IdealError::Parse(format!(
                            "unexpected character '{ch}' in '{term}'"
                        )))
                    }
                };
                i += 1;
                // positional form x3
                let mut var = var;
                if (ch == 'x' || ch == 'X') && i < chars.len() && chars[i].is_ascii_digit() {
                    let mut idx = 0usize;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        idx = idx * 10 + chars[i].to_digit(10).unwrap() as usize;
                        i += 1;
                    }
                    if idx == 0 {
                        return Err(IdealError::Parse("variable indices are 1-based".into()));
                    }
                    var = idx - 1;
                }
                let mut exp = 1i64;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(IdealError::Parse(format!("missing exponent in '{term}'")));
                    }
                    exp = chars[start..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| IdealError::Parse("bad exponent".into()))?;
                }
                max_var = max_var.max(var + 1);
                factors.push((var, exp));
            }
            terms.push(factors);
        }
        if terms.is_empty() {
            return Err(IdealError::Parse("no generators".into()));
        }
        let d = max_var.max(min_dim).max(1);
        let gens = terms
            .into_iter()
            .map(|factors| {
                let mut v = vec![0i64; d];
                for (var, exp) in factors {
                    v[var] += exp;
                }
                v
            })
            .collect();
        MonomialIdeal::new(d, gens)
    }

    pub fn parse(input: &str) -> Result<MonomialIdeal> {
        Self::parse_with_min_dim(input, 1)
    }

    /// Render in the human syntax accepted by [`MonomialIdeal::parse`].
    /// Generators print in descending lexicographic order so that powers
    /// of earlier variables come first.
    pub fn display_human(&self) -> String {
        let names = ["x", "y", "z", "w"];
        let mut gens = self.gens.clone();
        gens.reverse();
        gens.iter()
            .map(|g| {
                if g.iter().all(|&e| e == 0) {
                    return "1".to_string();
                }
                g.iter()
                    .enumerate()
                    .filter(|&(_, &e)| e > 0)
                    .map(|(j, &e)| {
                        let name = if self.d <= 4 {
                            names[j].to_string()
                        } else {
                            format!("x{}", j + 1)
                        };
                        if e == 1 {
                            name
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.display_human())
    }
}

//! Points, hyperplanes and lines of PG(k-1, q).
//!
//! Both points and hyperplanes are stored as left-normalized coordinate
//! vectors: the leftmost nonzero coordinate is 1. Points are ordered
//! lexicographically by coordinate encodings, and the rank of a point in
//! that order is its canonical vertex id.

use std::collections::HashMap;
use std::fmt;

use crate::field::{Field, FieldElement};
use crate::{Error, Result};

/// A point of PG(k-1, q).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

/// A hyperplane `a_1 X_1 + ... + a_k X_k = 0`, stored by its normalized
/// coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    coeffs: Vec<FieldElement>,
}

fn normalize_vec(field: &Field, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let lead = v.iter().copied().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
    let scale = field.inv(lead)?;
    Ok(v.iter().map(|&c| field.mul(c, scale)).collect())
}

fn check_range(field: &Field, v: &[FieldElement]) -> Result<()> {
    match v.iter().find(|c| c.encoding() as u32 >= field.order()) {
        Some(c) => Err(Error::InvalidParameter(format!(
            "{c} is not an element of GF({})",
            field.order()
        ))),
        None => Ok(()),
    }
}

fn dot(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[FieldElement]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl ProjPoint {
    /// Normalizes a raw coordinate vector to its class representative.
    pub fn normalize(field: &Field, v: &[FieldElement]) -> Result<Self> {
        check_range(field, v)?;
        Ok(ProjPoint {
            coords: normalize_vec(field, v)?,
        })
    }

    /// Convenience constructor from raw encodings.
    pub fn from_encodings(field: &Field, v: &[u32]) -> Result<Self> {
        let v = v
            .iter()
            .map(|&e| field.element(e))
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(field, &v)
    }

    /// The unit point `U_i` (1-based `i`) of PG(k-1, q).
    pub fn unit(k: usize, i: usize) -> Self {
        assert!((1..=k).contains(&i), "unit point index out of range");
        let mut coords = vec![FieldElement::ZERO; k];
        coords[i - 1] = FieldElement::ONE;
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Reinterprets the coordinates as hyperplane coefficients.
    pub fn dual(&self) -> Hyperplane {
        Hyperplane {
            coeffs: self.coords.clone(),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

impl Hyperplane {
    pub fn from_coeffs(field: &Field, v: &[FieldElement]) -> Result<Self> {
        check_range(field, v)?;
        Ok(Hyperplane {
            coeffs: normalize_vec(field, v)?,
        })
    }

    pub fn from_encodings(field: &Field, v: &[u32]) -> Result<Self> {
        let v = v
            .iter()
            .map(|&e| field.element(e))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(field, &v)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// The point with the same coordinate vector.
    pub fn dual(&self) -> ProjPoint {
        ProjPoint {
            coords: self.coeffs.clone(),
        }
    }

    /// Points of `points` lying on this hyperplane, in input order.
    pub fn points_in<'a>(
        &'a self,
        field: &'a Field,
        points: &'a [ProjPoint],
    ) -> impl Iterator<Item = &'a ProjPoint> + 'a {
        points
            .iter()
            .filter(move |p| dot(field, &p.coords, &self.coeffs).is_zero())
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coeffs)
    }
}

/// Number of points of PG(k-1, q): `(q^k - 1) / (q - 1)`.
pub fn point_count(k: usize, q: u64) -> u64 {
    (0..k as u32).map(|i| q.pow(i)).sum()
}

/// All points of PG(k-1, q) in canonical (lexicographic) order.
pub fn enumerate_points(k: usize, field: &Field) -> Vec<ProjPoint> {
    let q = field.order() as u16;
    let mut points = Vec::with_capacity(point_count(k, q as u64) as usize);
    // Leading one at position `lead`; zeros before it, anything after it.
    for lead in (0..k).rev() {
        let tail = (k - lead - 1) as u32;
        for mut rank in 0..(q as u64).pow(tail) {
            let mut coords = vec![FieldElement::ZERO; k];
            coords[lead] = FieldElement::ONE;
            // last coordinate is the least significant digit
            for slot in coords[lead + 1..].iter_mut().rev() {
                *slot = FieldElement::from_encoding((rank % q as u64) as u16);
                rank /= q as u64;
            }
            points.push(ProjPoint { coords });
        }
    }
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
    points
}

/// Whether the point lies on the hyperplane.
pub fn incident(field: &Field, x: &ProjPoint, h: &Hyperplane) -> Result<bool> {
    if x.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: h.dim(),
        });
    }
    Ok(dot(field, &x.coords, &h.coeffs).is_zero())
}

/// The `q + 1` points of the line joining two distinct points, sorted by
/// canonical id.
pub fn line_through(field: &Field, p1: &ProjPoint, p2: &ProjPoint) -> Result<Vec<ProjPoint>> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch {
            expected: p1.dim(),
            got: p2.dim(),
        });
    }
    if p1 == p2 {
        return Err(Error::EqualPoints);
    }
    let mut out = vec![p1.clone()];
    for lambda in field.elements() {
        let v: Vec<_> = p2
            .coords
            .iter()
            .zip(&p1.coords)
            .map(|(&b, &a)| field.add(b, field.mul(lambda, a)))
            .collect();
        out.push(ProjPoint::normalize(field, &v)?);
    }
    out.sort();
    Ok(out)
}

/// Lookup from normalized points to canonical ids.
#[derive(Clone, Debug)]
pub struct PointIndex {
    q: u64,
    ids: HashMap<u64, usize>,
}

impl PointIndex {
    pub fn new(field: &Field, points: &[ProjPoint]) -> Self {
        let q = field.order() as u64;
        let ids = points
            .iter()
            .enumerate()
            .map(|(i, p)| (Self::key(q, p), i))
            .collect();
        PointIndex { q, ids }
    }

    fn key(q: u64, p: &ProjPoint) -> u64 {
        p.coords
            .iter()
            .fold(0u64, |acc, c| acc * q + c.encoding() as u64)
    }

    pub fn id(&self, p: &ProjPoint) -> Option<usize> {
        self.ids.get(&Self::key(self.q, p)).copied()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

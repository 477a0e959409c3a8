//! The K_k-free subgraph `H(k, q)`, q even.
//!
//! Over GF(q), q = 2^h, take the pseudo-symplectic form whose absolute points
//! are the hyperplane `H_inf: X_k = 0`. For every `t` of absolute trace one
//! the hyperplane `H_t: t0 X_{k-1} + t X_k = 0` meets the other `H_t'` only
//! inside `H_inf`. `H(k, q)` is the polarity graph induced on the union of
//! the `H_t` with `H_inf` and the line `l` removed, where `l = U_{k-2} U_k`
//! for odd `k` and `l = U_{k-1} U_k` for even `k` (empty for `k = 2`).

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::field::{Field, FieldElement};
use crate::graph::Graph;
use crate::polarity::{form_graph, BilinearForm, FormKind};
use crate::projgeom::{enumerate_points, incident, line_through, Hyperplane, ProjPoint};
use crate::{Error, Result};

/// A square matrix over the field, row-major, acting on column vectors.
pub type Matrix = Vec<Vec<FieldElement>>;

#[derive(Clone, Debug)]
pub struct ConstructionParams {
    k: usize,
    field: Field,
    t0: FieldElement,
}

impl ConstructionParams {
    /// `t0` defaults to the smallest trace-one element.
    pub fn new(k: usize, field: Field, t0: Option<FieldElement>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k = {k}, need k >= 2")));
        }
        if !field.is_binary() {
            return Err(Error::OddCharacteristic("the trace-one construction"));
        }
        let t0 = match t0 {
            Some(t) => {
                field.element(t.encoding() as u32)?;
                if field.trace(t)? != 1 {
                    return Err(Error::NotTraceOne(t.encoding()));
                }
                t
            }
            None => field.trace_one_set()?[0],
        };
        Ok(ConstructionParams { k, field, t0 })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn t0(&self) -> FieldElement {
        self.t0
    }

    pub fn form(&self) -> BilinearForm {
        BilinearForm::standard(FormKind::PseudoSymplectic, self.k, &self.field)
            .expect("pseudo-symplectic form exists for k >= 2 in characteristic two")
    }

    /// `H_inf: X_k = 0`.
    pub fn h_infinity(&self) -> Hyperplane {
        ProjPoint::unit(self.k, self.k).dual()
    }

    /// Expected number of vertices of `H(k, q)`.
    pub fn expected_order(&self) -> u64 {
        let q = self.q() as u64;
        let k = self.k as u32;
        match self.k {
            2 => q / 2,
            _ if k % 2 == 1 => q.pow(k - 1) / 2,
            _ => (q.pow(k - 1) - q) / 2,
        }
    }

    /// Expected degree of `H(k, q)`: `q^(k-2) / 2` for `k >= 3`, 0 for `k = 2`.
    pub fn expected_degree(&self) -> u64 {
        if self.k == 2 {
            0
        } else {
            (self.q() as u64).pow(self.k as u32 - 2) / 2
        }
    }
}

/// The line `l`; empty for `k = 2`.
pub fn line_ell(k: usize, field: &Field) -> Vec<ProjPoint> {
    if k < 3 {
        return Vec::new();
    }
    let first = if k % 2 == 1 { k - 2 } else { k - 1 };
    line_through(field, &ProjPoint::unit(k, first), &ProjPoint::unit(k, k))
        .expect("distinct unit points span a line")
}

/// `H_t: t0 X_{k-1} + t X_k = 0`.
pub fn hyperplane_ht(params: &ConstructionParams, t: FieldElement) -> Result<Hyperplane> {
    let field = &params.field;
    field.element(t.encoding() as u32)?;
    if field.trace(t)? != 1 {
        return Err(Error::NotTraceOne(t.encoding()));
    }
    let k = params.k;
    let mut coeffs = vec![FieldElement::ZERO; k];
    coeffs[k - 2] = params.t0;
    coeffs[k - 1] = t;
    Hyperplane::from_coeffs(field, &coeffs)
}

/// Points of `H_t` off `H_inf` and off `l`, in canonical order.
pub fn ht_vertices(params: &ConstructionParams, t: FieldElement) -> Result<Vec<ProjPoint>> {
    let field = &params.field;
    let ht = hyperplane_ht(params, t)?;
    let h_inf = params.h_infinity();
    let ell: HashSet<ProjPoint> = line_ell(params.k, field).into_iter().collect();
    let points = enumerate_points(params.k, field);
    let mut out = Vec::new();
    for p in ht.points_in(field, &points) {
        if !incident(field, p, &h_inf)? && !ell.contains(p) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// The vertex set `(union of H_t, t in T) minus (H_inf union l)`, sorted.
pub fn vertex_set_h(params: &ConstructionParams) -> Result<Vec<ProjPoint>> {
    let mut set = BTreeSet::new();
    for t in params.field.trace_one_set()? {
        for p in ht_vertices(params, t)? {
            let fresh = set.insert(p);
            debug_assert!(fresh, "H_t sets off H_inf must be disjoint");
        }
    }
    Ok(set.into_iter().collect())
}

/// `H(k, q)`, labelled by its points in canonical order.
pub fn build_h(params: &ConstructionParams) -> Result<Graph> {
    Ok(form_graph(&params.form(), vertex_set_h(params)?))
}

/// The polarity graph induced on the non-absolute points of `form`.
pub fn nonabsolute_subgraph(form: &BilinearForm) -> Result<Graph> {
    let mut points = Vec::new();
    for p in enumerate_points(form.dim(), form.field()) {
        if !form.is_absolute(&p)? {
            points.push(p);
        }
    }
    Ok(form_graph(form, points))
}

fn identity(k: usize) -> Matrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO })
                .collect()
        })
        .collect()
}

/// The unipotent isometry used for odd `k`: with `a = (a_1, .., a_{k-2})`,
/// column `k-1` carries `a` in rows `1..k-2` and row `k-2` carries the
/// hyperbolic partners `a_2, a_1, a_4, a_3, ...` in columns `1..k-3`.
pub fn odd_isometry(k: usize, a: &[FieldElement]) -> Matrix {
    assert!(k >= 3 && k % 2 == 1 && a.len() == k - 2);
    let mut m = identity(k);
    for (i, &ai) in a.iter().enumerate() {
        m[i][k - 2] = ai;
    }
    for j in 0..k - 3 {
        m[k - 3][j] = a[j ^ 1];
    }
    m
}

/// Symplectic transvection `x -> x + c B(x, v) v` for the alternating form
/// with hyperbolic pairs on coordinates `1..k-2`, embedded with a 2x2
/// identity block on the last two coordinates. Characteristic two only.
pub fn embedded_transvection(k: usize, v: &[FieldElement], c: FieldElement, field: &Field) -> Matrix {
    let s = k - 2;
    assert!(k >= 4 && k.is_multiple_of(2) && v.len() == s);
    let mut m = identity(k);
    // B(e_j, v) = v_{partner(j)}
    for i in 0..s {
        for j in 0..s {
            let coef = field.mul(c, field.mul(v[i], v[j ^ 1]));
            m[i][j] = field.add(m[i][j], coef);
        }
    }
    m
}

/// A generating set for the isometries acting transitively on
/// `H_t \ (H_inf u l)`.
///
/// Odd `k`: the unipotent maps with `a = c e_i`, `c` running over the
/// polynomial basis `1, x, .., x^(h-1)` of GF(q) over GF(2).
/// Even `k`: transvections along `e_i` and `e_i + e_j` with the same
/// scalars, which generate Sp(k-2, q).
pub fn isometry_generators(params: &ConstructionParams) -> Result<Vec<Matrix>> {
    let k = params.k;
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "isometry generators need k >= 3, got {k}"
        )));
    }
    let field = &params.field;
    let scalars: Vec<FieldElement> = (0..field.degree())
        .map(|j| FieldElement::from_encoding(1 << j))
        .collect();
    let mut gens = Vec::new();
    if k % 2 == 1 {
        for i in 0..k - 2 {
            for &c in &scalars {
                let mut a = vec![FieldElement::ZERO; k - 2];
                a[i] = c;
                gens.push(odd_isometry(k, &a));
            }
        }
    } else {
        let s = k - 2;
        let mut directions = Vec::new();
        for i in 0..s {
            let mut v = vec![FieldElement::ZERO; s];
            v[i] = FieldElement::ONE;
            directions.push(v);
            for j in i + 1..s {
                let mut v = vec![FieldElement::ZERO; s];
                v[i] = FieldElement::ONE;
                v[j] = FieldElement::ONE;
                directions.push(v);
            }
        }
        for v in &directions {
            for &c in &scalars {
                gens.push(embedded_transvection(k, v, c, field));
            }
        }
    }
    Ok(gens)
}

/// Applies a matrix to a point and renormalizes.
pub fn apply(field: &Field, m: &Matrix, x: &ProjPoint) -> ProjPoint {
    let v: Vec<FieldElement> = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(x.coords())
                .fold(FieldElement::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect();
    ProjPoint::normalize(field, &v).expect("isometries are invertible")
}

/// Orbit of `start` under the group generated by `gens`, by breadth-first
/// closure.
pub fn orbit(field: &Field, gens: &[Matrix], start: &ProjPoint) -> BTreeSet<ProjPoint> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = apply(field, g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub t: FieldElement,
    pub generators: usize,
    pub orbit_size: usize,
    pub expected_size: usize,
    pub generators_are_isometries: bool,
    pub pass: bool,
}

/// Checks that the isometry generators act transitively on
/// `H_t \ (H_inf u l)`; `t` defaults to `t0`.
pub fn verify_transitivity(
    params: &ConstructionParams,
    t: Option<FieldElement>,
) -> Result<TransitivityReport> {
    let t = t.unwrap_or(params.t0);
    let gens = isometry_generators(params)?;
    let form = params.form();
    let generators_are_isometries = gens.iter().all(|m| form.is_isometry(m));
    let target: BTreeSet<ProjPoint> = ht_vertices(params, t)?.into_iter().collect();
    let q = params.q() as usize;
    let k = params.k as u32;
    let expected_size = if k % 2 == 1 {
        q.pow(k - 2)
    } else {
        q.pow(k - 2) - 1
    };
    let start = target
        .iter()
        .next()
        .cloned()
        .ok_or_else(|| Error::InvalidParameter("empty H_t".into()))?;
    let orb = orbit(&params.field, &gens, &start);
    Ok(TransitivityReport {
        t,
        generators: gens.len(),
        orbit_size: orb.len(),
        expected_size,
        generators_are_isometries,
        pass: generators_are_isometries && target.len() == expected_size && orb == target,
    })
}

//! Reflexive bilinear forms, the polarities they induce and polarity graphs.
//!
//! The polarity graph on PG(k-1, q) joins distinct points `x`, `y` whenever
//! `beta(x, y) = 0` and carries a loop at every absolute point.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::{Field, FieldElement};
use crate::graph::{words_for, Graph};
use crate::projgeom::{enumerate_points, Hyperplane, ProjPoint};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    /// Symmetric, non-alternating, characteristic two.
    #[serde(rename = "pseudo-symplectic")]
    PseudoSymplectic,
    /// Alternating.
    #[serde(rename = "symplectic")]
    Symplectic,
    /// Symmetric, odd characteristic.
    #[serde(rename = "orthogonal")]
    OrthogonalSymmetric,
}

impl FormKind {
    pub fn name(self) -> &'static str {
        match self {
            FormKind::PseudoSymplectic => "pseudo-symplectic",
            FormKind::Symplectic => "symplectic",
            FormKind::OrthogonalSymmetric => "orthogonal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pseudo-symplectic" | "pseudo" => Some(FormKind::PseudoSymplectic),
            "symplectic" => Some(FormKind::Symplectic),
            "orthogonal" | "orthogonal-symmetric" => Some(FormKind::OrthogonalSymmetric),
            _ => None,
        }
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A non-degenerate bilinear form `beta(x, y) = x^T G y` on GF(q)^k.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    kind: FormKind,
    k: usize,
    field: Field,
    gram: Vec<FieldElement>,
}

impl BilinearForm {
    /// The standard form of the given kind.
    ///
    /// * pseudo-symplectic: hyperbolic pairs `x_1 y_2 + x_2 y_1 + ...` on
    ///   coordinates `1..k-1` for odd `k` and `1..k` for even `k`, plus the
    ///   diagonal term `x_k y_k`;
    /// * symplectic: `x_1 y_2 - x_2 y_1 + x_3 y_4 - x_4 y_3 + ...`;
    /// * orthogonal: the identity Gram matrix.
    pub fn standard(kind: FormKind, k: usize, field: &Field) -> Result<Self> {
        let one = FieldElement::ONE;
        let minus_one = field.neg(one);
        let mut gram = vec![FieldElement::ZERO; k * k];
        match kind {
            FormKind::PseudoSymplectic => {
                if !field.is_binary() {
                    return Err(Error::InvalidParameter(
                        "pseudo-symplectic forms need characteristic two".into(),
                    ));
                }
                if k < 2 {
                    return Err(Error::InvalidParameter(
                        "pseudo-symplectic forms need k >= 2".into(),
                    ));
                }
                let paired = if k % 2 == 1 { k - 1 } else { k };
                for i in (0..paired).step_by(2) {
                    gram[i * k + i + 1] = one;
                    gram[(i + 1) * k + i] = one;
                }
                gram[k * k - 1] = one;
            }
            FormKind::Symplectic => {
                if k == 0 || k % 2 == 1 {
                    return Err(Error::InvalidParameter(
                        "symplectic forms need even k".into(),
                    ));
                }
                for i in (0..k).step_by(2) {
                    gram[i * k + i + 1] = one;
                    gram[(i + 1) * k + i] = minus_one;
                }
            }
            FormKind::OrthogonalSymmetric => {
                if field.is_binary() {
                    return Err(Error::InvalidParameter(
                        "orthogonal forms need odd characteristic".into(),
                    ));
                }
                if k == 0 {
                    return Err(Error::InvalidParameter("k must be positive".into()));
                }
                for i in 0..k {
                    gram[i * k + i] = one;
                }
            }
        }
        let form = BilinearForm {
            kind,
            k,
            field: field.clone(),
            gram,
        };
        debug_assert!(form.is_nondegenerate());
        Ok(form)
    }

    /// A form from an explicit Gram matrix (row-major), checked for
    /// non-degeneracy and for consistency with `kind`.
    pub fn from_gram(kind: FormKind, field: &Field, gram: Vec<Vec<FieldElement>>) -> Result<Self> {
        let k = gram.len();
        if gram.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidParameter("Gram matrix must be square".into()));
        }
        let form = BilinearForm {
            kind,
            k,
            field: field.clone(),
            gram: gram.into_iter().flatten().collect(),
        };
        if !form.is_nondegenerate() {
            return Err(Error::InvalidParameter("degenerate form".into()));
        }
        let ok = match kind {
            FormKind::Symplectic => form.is_alternating(),
            FormKind::PseudoSymplectic => {
                field.is_binary() && form.is_symmetric() && !form.is_alternating()
            }
            FormKind::OrthogonalSymmetric => !field.is_binary() && form.is_symmetric(),
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "Gram matrix is not a {kind} form"
            )));
        }
        Ok(form)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gram_entry(&self, i: usize, j: usize) -> FieldElement {
        self.gram[i * self.k + j]
    }

    /// Rows of the Gram matrix.
    pub fn gram_rows(&self) -> Vec<Vec<FieldElement>> {
        self.gram.chunks(self.k).map(<[_]>::to_vec).collect()
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.k {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.k,
                got: len,
            })
        }
    }

    /// `x^T G y`.
    pub fn eval(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<FieldElement> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        Ok(dot(&self.field, &self.covector(x), y))
    }

    /// The unnormalized coefficient vector `G^T x` of `x^perp`.
    pub fn covector(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        (0..self.k)
            .map(|j| {
                (0..self.k).fold(FieldElement::ZERO, |acc, i| {
                    f.add(acc, f.mul(x[i], self.gram[i * self.k + j]))
                })
            })
            .collect()
    }

    /// The hyperplane `x^perp = { y : beta(x, y) = 0 }`.
    pub fn perp(&self, x: &ProjPoint) -> Result<Hyperplane> {
        self.check_dim(x.dim())?;
        Hyperplane::from_coeffs(&self.field, &self.covector(x.coords()))
    }

    /// The point `h^perp`, i.e. the unique `x` with `x^perp = h`.
    pub fn pole(&self, h: &Hyperplane) -> Result<ProjPoint> {
        self.check_dim(h.dim())?;
        // Solve G^T x = h by elimination.
        let f = &self.field;
        let k = self.k;
        let mut aug: Vec<Vec<FieldElement>> = (0..k)
            .map(|j| {
                let mut row: Vec<_> = (0..k).map(|i| self.gram[i * k + j]).collect();
                row.push(h.coeffs()[j]);
                row
            })
            .collect();
        gauss_jordan(f, &mut aug, k);
        let x: Vec<_> = aug.iter().map(|r| r[k]).collect();
        ProjPoint::normalize(f, &x)
    }

    pub fn is_absolute(&self, x: &ProjPoint) -> Result<bool> {
        Ok(self.eval(x.coords(), x.coords())?.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.k).all(|i| (0..self.k).all(|j| self.gram_entry(i, j) == self.gram_entry(j, i)))
    }

    /// `beta(x, x) = 0` for all `x`: zero diagonal and `G^T = -G`.
    pub fn is_alternating(&self) -> bool {
        let f = &self.field;
        (0..self.k).all(|i| {
            self.gram_entry(i, i).is_zero()
                && (0..self.k).all(|j| self.gram_entry(i, j) == f.neg(self.gram_entry(j, i)))
        })
    }

    pub fn is_nondegenerate(&self) -> bool {
        let mut m: Vec<Vec<FieldElement>> = self.gram_rows();
        gauss_jordan(&self.field, &mut m, self.k) == self.k
    }

    /// Whether `M^T G M = G` for a k x k matrix `M` (row-major rows).
    pub fn is_isometry(&self, m: &[Vec<FieldElement>]) -> bool {
        let k = self.k;
        let f = &self.field;
        if m.len() != k || m.iter().any(|r| r.len() != k) {
            return false;
        }
        // (M^T G M)_{ij} = sum_{a,b} M_{ai} G_{ab} M_{bj}
        (0..k).all(|i| {
            (0..k).all(|j| {
                let mut acc = FieldElement::ZERO;
                for a in 0..k {
                    if m[a][i].is_zero() {
                        continue;
                    }
                    for b in 0..k {
                        let t = f.mul(f.mul(m[a][i], self.gram[a * k + b]), m[b][j]);
                        acc = f.add(acc, t);
                    }
                }
                acc == self.gram[i * k + j]
            })
        })
    }
}

fn dot(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Reduces the first `cols` columns of `m` to reduced row echelon form in
/// place and returns the rank.
fn gauss_jordan(f: &Field, m: &mut [Vec<FieldElement>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = f.inv(m[rank][c]).expect("pivot is nonzero");
        for v in m[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let factor = m[r][c];
                let pivot_row = m[rank].clone();
                for (v, p) in m[r].iter_mut().zip(pivot_row) {
                    *v = f.sub(*v, f.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The graph on `points` where distinct points are adjacent iff orthogonal
/// and absolute points carry loops. Labels are the points, in given order.
pub fn form_graph(form: &BilinearForm, points: Vec<ProjPoint>) -> Graph {
    let n = points.len();
    let words = words_for(n);
    let f = form.field();
    let covectors: Vec<Vec<FieldElement>> =
        points.iter().map(|p| form.covector(p.coords())).collect();
    let rows: Vec<u64> = covectors
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, cov)| {
            let mut row = vec![0u64; words];
            for (j, p) in points.iter().enumerate() {
                if j != i && dot(f, cov, p.coords()).is_zero() {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let loops = covectors
        .iter()
        .zip(&points)
        .map(|(cov, p)| dot(f, cov, p.coords()).is_zero())
        .collect();
    Graph::from_rows(n, rows, loops, points)
}

/// The full polarity graph on all points of PG(k-1, q).
pub fn polarity_graph(form: &BilinearForm) -> Graph {
    form_graph(form, enumerate_points(form.dim(), form.field()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::point_count;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn fe(v: u16) -> FieldElement {
        FieldElement::from_encoding(v)
    }

    fn gram_enc(form: &BilinearForm) -> Vec<Vec<u16>> {
        form.gram_rows()
            .iter()
            .map(|r| r.iter().map(|c| c.encoding()).collect())
            .collect()
    }

    #[test]
    fn standard_forms() {
        let f = BilinearForm::standard(FormKind::PseudoSymplectic, 3, &gf(4)).unwrap();
        assert_eq!(gram_enc(&f), vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);

        let f = BilinearForm::standard(FormKind::PseudoSymplectic, 4, &gf(2)).unwrap();
        assert_eq!(
            gram_enc(&f),
            vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 1]]
        );

        let f = BilinearForm::standard(FormKind::OrthogonalSymmetric, 3, &gf(5)).unwrap();
        assert_eq!(gram_enc(&f), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        let f = BilinearForm::standard(FormKind::Symplectic, 4, &gf(3)).unwrap();
        assert_eq!(gram_enc(&f)[1], vec![2, 0, 0, 0]);
        assert!(f.is_alternating());
    }

    #[test]
    fn invalid_form_requests() {
        assert!(BilinearForm::standard(FormKind::PseudoSymplectic, 3, &gf(3)).is_err());
        assert!(BilinearForm::standard(FormKind::PseudoSymplectic, 1, &gf(4)).is_err());
        assert!(BilinearForm::standard(FormKind::Symplectic, 3, &gf(4)).is_err());
        assert!(BilinearForm::standard(FormKind::OrthogonalSymmetric, 3, &gf(4)).is_err());
        let degenerate = vec![vec![fe(1), fe(0)], vec![fe(0), fe(0)]];
        assert!(BilinearForm::from_gram(FormKind::PseudoSymplectic, &gf(2), degenerate).is_err());
        let alt = vec![vec![fe(0), fe(1)], vec![fe(1), fe(0)]];
        assert!(BilinearForm::from_gram(FormKind::PseudoSymplectic, &gf(2), alt.clone()).is_err());
        assert!(BilinearForm::from_gram(FormKind::Symplectic, &gf(2), alt).is_ok());
    }

    #[test]
    fn standard_forms_are_nondegenerate_and_typed() {
        for q in [2, 4, 8, 16] {
            for k in 2..=6 {
                let f = BilinearForm::standard(FormKind::PseudoSymplectic, k, &gf(q)).unwrap();
                assert!(f.is_nondegenerate() && f.is_symmetric() && !f.is_alternating());
            }
        }
        for q in [2, 3, 5, 7] {
            for k in [2, 4, 6] {
                let f = BilinearForm::standard(FormKind::Symplectic, k, &gf(q)).unwrap();
                assert!(f.is_nondegenerate() && f.is_alternating());
            }
        }
    }

    #[test]
    fn eval_examples() {
        for k in 2..=5 {
            let field = gf(8);
            let form = BilinearForm::standard(FormKind::PseudoSymplectic, k, &field).unwrap();
            let uk = ProjPoint::unit(k, k);
            assert_eq!(form.eval(uk.coords(), uk.coords()).unwrap(), FieldElement::ONE);
            // cross terms cancel: beta(x, x) = x_k^2
            for x in enumerate_points(k, &field) {
                let xk = x.coords()[k - 1];
                assert_eq!(form.eval(x.coords(), x.coords()).unwrap(), field.square(xk));
            }
        }
        let field = gf(5);
        let form = BilinearForm::standard(FormKind::Symplectic, 4, &field).unwrap();
        for x in enumerate_points(4, &field) {
            assert!(form.eval(x.coords(), x.coords()).unwrap().is_zero());
        }
        assert!(matches!(
            form.eval(&[fe(1)], &[fe(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn perp_examples() {
        let field = gf(4);
        let form = BilinearForm::standard(FormKind::PseudoSymplectic, 3, &field).unwrap();
        let h_inf = form.perp(&ProjPoint::unit(3, 3)).unwrap();
        assert_eq!(h_inf, Hyperplane::from_encodings(&field, &[0, 0, 1]).unwrap());

        // x = (0, ..., 0, t1, t0) has perp t1 X_{k-2} + t0 X_k = 0
        let field = gf(8);
        for k in [3usize, 5] {
            let form = BilinearForm::standard(FormKind::PseudoSymplectic, k, &field).unwrap();
            let t = field.trace_one_set().unwrap();
            for &t1 in &t {
                for &t0 in &t {
                    let mut v = vec![FieldElement::ZERO; k];
                    v[k - 2] = t1;
                    v[k - 1] = t0;
                    let x = ProjPoint::normalize(&field, &v).unwrap();
                    let mut expect = vec![FieldElement::ZERO; k];
                    expect[k - 3] = t1;
                    expect[k - 1] = t0;
                    assert_eq!(
                        form.perp(&x).unwrap(),
                        Hyperplane::from_coeffs(&field, &expect).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn perp_is_symmetric_relation() {
        let field = gf(3);
        for form in [
            BilinearForm::standard(FormKind::Symplectic, 4, &field).unwrap(),
            BilinearForm::standard(FormKind::OrthogonalSymmetric, 3, &field).unwrap(),
        ] {
            let pts = enumerate_points(form.dim(), &field);
            for x in &pts {
                let hx = form.perp(x).unwrap();
                for y in &pts {
                    let hy = form.perp(y).unwrap();
                    assert_eq!(
                        crate::projgeom::incident(&field, x, &hy).unwrap(),
                        crate::projgeom::incident(&field, y, &hx).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn pole_inverts_perp() {
        let mut forms = Vec::new();
        for k in 2..=4 {
            for q in [2, 4, 8] {
                forms.push(BilinearForm::standard(FormKind::PseudoSymplectic, k, &gf(q)).unwrap());
            }
            for q in [3, 5, 7] {
                forms.push(BilinearForm::standard(FormKind::OrthogonalSymmetric, k, &gf(q)).unwrap());
            }
        }
        for q in [2, 3, 4, 5, 7, 8] {
            forms.push(BilinearForm::standard(FormKind::Symplectic, 2, &gf(q)).unwrap());
            forms.push(BilinearForm::standard(FormKind::Symplectic, 4, &gf(q)).unwrap());
        }
        for form in &forms {
            for x in enumerate_points(form.dim(), form.field()) {
                let h = form.perp(&x).unwrap();
                assert_eq!(form.pole(&h).unwrap(), x);
            }
        }
    }

    #[test]
    fn absolute_points() {
        let field = gf(4);
        let form = BilinearForm::standard(FormKind::PseudoSymplectic, 3, &field).unwrap();
        assert!(form.is_absolute(&ProjPoint::unit(3, 1)).unwrap());
        assert!(!form.is_absolute(&ProjPoint::unit(3, 3)).unwrap());

        let form = BilinearForm::standard(FormKind::Symplectic, 4, &gf(3)).unwrap();
        assert!(enumerate_points(4, form.field())
            .iter()
            .all(|x| form.is_absolute(x).unwrap()));
    }

    #[test]
    fn pseudo_symplectic_absolute_set_is_h_infinity() {
        for k in 2..=5 {
            for q in [2, 4, 8] {
                let field = gf(q);
                let form = BilinearForm::standard(FormKind::PseudoSymplectic, k, &field).unwrap();
                let h_inf = Hyperplane::from_coeffs(&field, ProjPoint::unit(k, k).coords()).unwrap();
                for x in enumerate_points(k, &field) {
                    assert_eq!(
                        form.is_absolute(&x).unwrap(),
                        crate::projgeom::incident(&field, &x, &h_inf).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn polarity_graph_examples() {
        let g = polarity_graph(
            &BilinearForm::standard(FormKind::PseudoSymplectic, 3, &gf(2)).unwrap(),
        );
        assert_eq!(g.n(), 7);
        assert!(g.degrees().all(|d| d == 3));
        assert_eq!(g.loop_count(), 3);

        let g = polarity_graph(
            &BilinearForm::standard(FormKind::PseudoSymplectic, 3, &gf(4)).unwrap(),
        );
        assert_eq!(g.n(), 21);
        assert!(g.degrees().all(|d| d == 5));

        let g = polarity_graph(
            &BilinearForm::standard(FormKind::OrthogonalSymmetric, 3, &gf(5)).unwrap(),
        );
        assert_eq!(g.n(), 31);
        assert!(g.degrees().all(|d| d == 6));
    }

    #[test]
    fn polarity_graph_row_sums() {
        for (kind, k, q) in [
            (FormKind::PseudoSymplectic, 4, 4),
            (FormKind::PseudoSymplectic, 5, 2),
            (FormKind::Symplectic, 4, 3),
            (FormKind::OrthogonalSymmetric, 4, 7),
        ] {
            let g = polarity_graph(&BilinearForm::standard(kind, k, &gf(q)).unwrap());
            assert_eq!(g.n() as u64, point_count(k, q as u64));
            let d = point_count(k - 1, q as u64) as usize;
            assert!(g.degrees().all(|x| x == d), "{kind} k={k} q={q}");
            assert!(g.is_symmetric());
        }
    }
}

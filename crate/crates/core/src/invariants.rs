//! Structural invariants: Killing form, radical, nilradical, derivation
//! algebras, metric-skew derivations and the isometry algebra of a
//! nilpotent metric Lie algebra.

use std::collections::VecDeque;

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::exactla::{axpy, ratio, zero_vec, LinAlgError, Mat, Rat, Subspace};
use crate::lie::{semidirect, LieAlgebra, LieError, LinMapAlg};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("metric is not symmetric")]
    NotSymmetric,
    #[error("metric is not positive definite (leading minor {index} is {minor})")]
    NotPositiveDefinite { index: usize, minor: String },
    #[error("metric has dimension {metric} but the algebra has dimension {algebra}")]
    DimensionMismatch { metric: usize, algebra: usize },
    #[error("base algebra `{0}` is not nilpotent; the isometry algebra is only built for nilpotent bases")]
    NotNilpotent(String),
    #[error("post-verification failed: {0}")]
    PostVerification(String),
}

/// A positive-definite symmetric bilinear form on the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTensor {
    q: Mat,
}

impl MetricTensor {
    /// Checks symmetry and positive definiteness by leading principal minors.
    pub fn new(q: Mat) -> Result<Self, InvariantError> {
        if !q.is_symmetric() {
            return Err(InvariantError::NotSymmetric);
        }
        for (index, minor) in q.leading_principal_minors()?.into_iter().enumerate() {
            if minor <= Rat::zero() {
                return Err(InvariantError::NotPositiveDefinite { index: index + 1, minor: minor.to_string() });
            }
        }
        Ok(MetricTensor { q })
    }

    pub fn identity(n: usize) -> Self {
        MetricTensor { q: Mat::identity(n) }
    }

    /// A random positive-definite metric `AᵀA + I/2` with small rational `A`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut a = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                a[(r, c)] = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            }
        }
        let q = a.transpose().mul(&a).expect("square").add(&Mat::identity(n).scale(&ratio(1, 2))).expect("square");
        MetricTensor::new(q).expect("AᵀA + I/2 is positive definite")
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.q
    }

    pub fn scaled(&self, c: &Rat) -> Result<Self, InvariantError> {
        MetricTensor::new(self.q.scale(c))
    }

    pub fn is_identity(&self) -> bool {
        self.q == Mat::identity(self.dim())
    }
}

/// `κ(e_i, e_j) = tr(ad e_i · ad e_j)`.
pub fn killing_form(g: &LieAlgebra) -> Mat {
    let n = g.dim();
    let ads: Vec<Mat> = (0..n).map(|i| g.ad_basis(i)).collect();
    let mut k = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = ads[i].mul(&ads[j]).expect("square").trace();
            k[(i, j)] = t.clone();
            k[(j, i)] = t;
        }
    }
    k
}

/// The maximal solvable ideal, computed as the Killing-orthogonal of
/// `[g, g]` and verified afterwards.
pub fn radical(g: &LieAlgebra) -> Result<Subspace, InvariantError> {
    let n = g.dim();
    let full = Subspace::full(n);
    let derived = g.bracket_span(&full, &full)?;
    let kappa = killing_form(g);
    let eqs = derived.basis().mul(&kappa)?;
    let rad = eqs.kernel();
    if !g.is_ideal(&rad)? {
        return Err(InvariantError::PostVerification("radical is not an ideal".into()));
    }
    if !g.is_solvable_subalgebra(&rad)? {
        return Err(InvariantError::PostVerification("radical is not solvable".into()));
    }
    Ok(rad)
}

/// Nilradical together with the data that certifies it.
#[derive(Debug, Clone)]
pub struct NilradicalReport {
    pub algebra_dim: usize,
    pub radical: Subspace,
    pub nilradical: Subspace,
    /// Dimension of the associative matrix algebra generated by `ad` on the radical.
    pub hull_dim: usize,
    /// Dimension of the trace radical of that associative algebra.
    pub trace_radical_dim: usize,
    /// Nilpotency class of the nilradical under the restricted bracket.
    pub nilpotency_class: usize,
    /// Dimensions of the lower central series of the nilradical.
    pub lower_central_dims: Vec<usize>,
    pub is_ideal: bool,
}

/// Associative algebra generated (without unit) by `gens`, as a subspace of
/// flattened `k×k` matrices, with a list of matrices spanning it.
fn associative_hull(k: usize, gens: &[Mat]) -> Result<(Subspace, Vec<Mat>), InvariantError> {
    let mut span = Subspace::zero(k * k);
    let mut elems = Vec::new();
    let mut queue: VecDeque<Mat> = VecDeque::new();
    for g in gens {
        if !span.contains(g.entries())? {
            span = Subspace::span(k * k, &[span.basis_vectors(), vec![g.entries().to_vec()]].concat())?;
            elems.push(g.clone());
            queue.push_back(g.clone());
        }
    }
    // Every word in the generators is a right product of a shorter word.
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let p = a.mul(g)?;
            if !span.contains(p.entries())? {
                span = Subspace::span(k * k, &[span.basis_vectors(), vec![p.entries().to_vec()]].concat())?;
                elems.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    Ok((span, elems))
}

/// The largest nilpotent ideal.
///
/// Works inside the radical `r`: the associative algebra `A` generated by
/// `ad_r(r)` is formed, its radical is `{a ∈ A : tr(ab) = 0 ∀ b ∈ A}`, and
/// the nilradical is the preimage of that radical under `ad_r`.
pub fn nilradical(g: &LieAlgebra) -> Result<NilradicalReport, InvariantError> {
    let n = g.dim();
    let rad = radical(g)?;
    let rb = rad.basis_vectors();
    let k = rb.len();

    // ad_r(x_i) in the radical's coordinates
    let mut gens = Vec::with_capacity(k);
    for x in &rb {
        let mut cols = Vec::with_capacity(k);
        for y in &rb {
            let b = g.bracket(x, y)?;
            let c = rad
                .coordinates(&b)?
                .ok_or_else(|| InvariantError::PostVerification("radical is not closed".into()))?;
            cols.push(c);
        }
        gens.push(Mat::from_cols(k, &cols)?);
    }

    let (hull, elems) = associative_hull(k, &gens)?;
    let m = elems.len();
    let mut gram = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = elems[i].mul(&elems[j])?.trace();
        }
    }
    let trace_rad_coords = gram.kernel();
    let trace_rad_vecs: Vec<Vec<Rat>> = trace_rad_coords
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut v = zero_vec(k * k);
            for (ci, e) in c.iter().zip(&elems) {
                axpy(&mut v, ci, e.entries());
            }
            v
        })
        .collect();
    let trace_rad = Subspace::span(k * k, &trace_rad_vecs)?;

    // y ↦ Σ y_j vec(ad_r x_j)
    let lin = Mat::from_cols(k * k, &gens.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>())?;
    let coords = trace_rad.preimage(&lin)?;
    let nil_vecs: Vec<Vec<Rat>> = coords
        .basis_vectors()
        .iter()
        .map(|y| {
            let mut v = zero_vec(n);
            for (yj, b) in y.iter().zip(&rb) {
                axpy(&mut v, yj, b);
            }
            v
        })
        .collect();
    let nil = Subspace::span(n, &nil_vecs)?;

    let is_ideal = g.is_ideal(&nil)?;
    if !is_ideal {
        return Err(InvariantError::PostVerification("nilradical is not an ideal".into()));
    }
    let lcs = g.lower_central_series_of(&nil)?;
    if !lcs.last().is_some_and(Subspace::is_zero) {
        return Err(InvariantError::PostVerification("nilradical is not nilpotent".into()));
    }
    Ok(NilradicalReport {
        algebra_dim: n,
        nilpotency_class: lcs.len() - 1,
        lower_central_dims: lcs.iter().map(Subspace::dim).collect(),
        radical: rad,
        nilradical: nil,
        hull_dim: hull.dim(),
        trace_radical_dim: trace_rad.dim(),
        is_ideal,
    })
}

/// Linear conditions on the `n²` entries of `D` (row-major) expressing that
/// `D` is a derivation.
fn derivation_equations(g: &LieAlgebra) -> Vec<Vec<Rat>> {
    let n = g.dim();
    let idx = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..n {
                let mut row = zero_vec(n * n);
                // (D[e_i, e_j])_m
                for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row[idx(m, k)] += c;
                    }
                }
                // -([D e_i, e_j])_m - ([e_i, D e_j])_m
                for k in 0..n {
                    let c = &g.bracket_basis(k, j)[m];
                    if !c.is_zero() {
                        row[idx(k, i)] -= c;
                    }
                    let c = &g.bracket_basis(i, k)[m];
                    if !c.is_zero() {
                        row[idx(k, j)] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Conditions `Dᵀq + qD = 0`.
fn skew_equations(q: &Mat) -> Vec<Vec<Rat>> {
    let n = q.rows();
    let idx = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut row = zero_vec(n * n);
            for k in 0..n {
                // (Dᵀq)_{ab} = Σ_k D[k][a] q[k][b]
                row[idx(k, a)] += &q[(k, b)];
                // (qD)_{ab} = Σ_k q[a][k] D[k][b]
                row[idx(k, b)] += &q[(a, k)];
            }
            rows.push(row);
        }
    }
    rows
}

fn solve_maps(n: usize, rows: Vec<Vec<Rat>>) -> Result<LinMapAlg, InvariantError> {
    let space = Mat::from_rows(n * n, &rows)?.kernel();
    LinMapAlg::new(n, space).map_err(|e| match e {
        LieError::NotClosed => InvariantError::PostVerification("solution space is not closed under commutator".into()),
        other => other.into(),
    })
}

/// The derivation algebra `Der(g)`.
pub fn derivations(g: &LieAlgebra) -> Result<LinMapAlg, InvariantError> {
    solve_maps(g.dim(), derivation_equations(g))
}

/// Derivations that are skew for `q`: `Dᵀq + qD = 0`.
pub fn skew_derivations(g: &LieAlgebra, q: &MetricTensor) -> Result<LinMapAlg, InvariantError> {
    if q.dim() != g.dim() {
        return Err(InvariantError::DimensionMismatch { metric: q.dim(), algebra: g.dim() });
    }
    let mut rows = derivation_equations(g);
    rows.extend(skew_equations(q.matrix()));
    solve_maps(g.dim(), rows)
}

/// `n ⋊ Der_skew(n, q)` for a nilpotent base `n`.
#[derive(Debug, Clone)]
pub struct IsometryAlgebra {
    pub base: LieAlgebra,
    pub metric: MetricTensor,
    pub stab: LinMapAlg,
    pub total: LieAlgebra,
    /// The embedded copy of `base` in `total`: the first `base.dim()` coordinates.
    pub n_embed: Subspace,
}

pub fn isometry_algebra(n: &LieAlgebra, q: &MetricTensor) -> Result<IsometryAlgebra, InvariantError> {
    if q.dim() != n.dim() {
        return Err(InvariantError::DimensionMismatch { metric: q.dim(), algebra: n.dim() });
    }
    if !n.is_nilpotent() {
        return Err(InvariantError::NotNilpotent(n.name().to_string()));
    }
    let stab = skew_derivations(n, q)?;
    let sd = semidirect(n, &stab)?;
    if !sd.algebra.is_ideal(&sd.n_embed)? {
        return Err(InvariantError::PostVerification("embedded base is not an ideal".into()));
    }
    Ok(IsometryAlgebra {
        base: n.clone(),
        metric: q.clone(),
        stab,
        total: sd.algebra.with_name(format!("isom({})", n.name())),
        n_embed: sd.n_embed,
    })
}

#[derive(Debug, Clone)]
pub struct NilradicalVerdict {
    pub holds: bool,
    pub nil_found: Subspace,
    pub report: NilradicalReport,
}

/// Whether the embedded base is exactly the nilradical of the isometry algebra.
pub fn check_nilradical_condition(iso: &IsometryAlgebra) -> Result<NilradicalVerdict, InvariantError> {
    let report = nilradical(&iso.total)?;
    let holds = report.nilradical.equals(&iso.n_embed)?;
    Ok(NilradicalVerdict { holds, nil_found: report.nilradical.clone(), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::lie::from_int_brackets;

    fn heisenberg3() -> LieAlgebra {
        from_int_brackets("heisenberg3", 3, &[(0, 1, &[(2, 1)])])
    }
    fn rototranslation() -> LieAlgebra {
        from_int_brackets("rototranslation", 3, &[(0, 2, &[(1, -1)]), (1, 2, &[(0, 1)])])
    }
    fn so3() -> LieAlgebra {
        from_int_brackets("so3", 3, &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])])
    }

    #[test]
    fn killing_examples() {
        assert!(killing_form(&LieAlgebra::abelian(3)).is_zero());
        assert!(killing_form(&heisenberg3()).is_zero());
        assert_eq!(killing_form(&so3()), Mat::identity(3).scale(&rat(-2)));
    }

    #[test]
    fn radical_examples() {
        assert!(radical(&heisenberg3()).unwrap().is_full());
        assert!(radical(&rototranslation()).unwrap().is_full());
        assert!(radical(&so3()).unwrap().is_zero());
    }

    #[test]
    fn nilradical_examples() {
        assert!(nilradical(&heisenberg3()).unwrap().nilradical.is_full());
        let r = nilradical(&rototranslation()).unwrap();
        assert_eq!(r.nilradical, Subspace::coordinate(3, [0, 1]));
        assert_eq!(r.nilpotency_class, 1);
        assert!(nilradical(&so3()).unwrap().nilradical.is_zero());
        assert!(nilradical(&LieAlgebra::abelian(0)).unwrap().nilradical.is_zero());
    }

    #[test]
    fn derivation_dimensions() {
        for n in 1..=3 {
            assert_eq!(derivations(&LieAlgebra::abelian(n)).unwrap().dim(), n * n);
        }
        assert_eq!(derivations(&heisenberg3()).unwrap().dim(), 6);
        let d = derivations(&so3()).unwrap();
        assert_eq!(d.dim(), 3);
        for i in 0..3 {
            assert!(d.contains(&so3().ad_basis(i)).unwrap());
        }
    }

    #[test]
    fn skew_derivation_dimensions() {
        for n in 1..=4 {
            let d = skew_derivations(&LieAlgebra::abelian(n), &MetricTensor::identity(n)).unwrap();
            assert_eq!(d.dim(), n * (n - 1) / 2);
        }
        let h = skew_derivations(&heisenberg3(), &MetricTensor::identity(3)).unwrap();
        assert_eq!(h.dim(), 1);
        let rot = Mat::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(h.contains(&rot).unwrap());
        assert_eq!(skew_derivations(&rototranslation(), &MetricTensor::identity(3)).unwrap().dim(), 1);
        assert!(matches!(
            skew_derivations(&heisenberg3(), &MetricTensor::identity(2)),
            Err(InvariantError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn metric_validation() {
        assert_eq!(MetricTensor::new(Mat::from_i64(&[&[1, 2], &[0, 1]])), Err(InvariantError::NotSymmetric));
        assert!(matches!(
            MetricTensor::new(Mat::from_i64(&[&[1, 2], &[2, 1]])),
            Err(InvariantError::NotPositiveDefinite { index: 2, .. })
        ));
        assert!(MetricTensor::new(Mat::from_i64(&[&[2, 1], &[1, 2]])).is_ok());
    }

    #[test]
    fn isometry_algebra_examples() {
        let iso = isometry_algebra(&heisenberg3(), &MetricTensor::identity(3)).unwrap();
        assert_eq!(iso.total.dim(), 4);
        let iso = isometry_algebra(&LieAlgebra::abelian(3), &MetricTensor::identity(3)).unwrap();
        assert_eq!(iso.total.dim(), 6);
        assert!(matches!(
            isometry_algebra(&rototranslation(), &MetricTensor::identity(3)),
            Err(InvariantError::NotNilpotent(_))
        ));
    }

    #[test]
    fn nilradical_condition_examples() {
        for (g, dim) in [(heisenberg3(), 3), (LieAlgebra::abelian(3), 3), (LieAlgebra::abelian(1), 1)] {
            let iso = isometry_algebra(&g, &MetricTensor::identity(dim)).unwrap();
            let v = check_nilradical_condition(&iso).unwrap();
            assert!(v.holds, "{}", g.name());
            assert_eq!(v.nil_found, Subspace::coordinate(iso.total.dim(), 0..dim));
        }
    }
}

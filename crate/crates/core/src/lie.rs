//! Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{axpy, is_zero_vec, render_rat, unit_vec, zero_vec, LinAlgError, Mat, Rat, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constants must be keyed by i < j, got ({i}, {j})")]
    NotUpperPair { i: usize, j: usize },
    #[error("expected {expected} basis names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("element {index} of the map algebra is not a derivation")]
    NotDerivation { index: usize },
    #[error("map space is not closed under the commutator")]
    NotClosed,
    #[error("constructed algebra violates the Jacobi identity: {0}")]
    JacobiFailure(String),
}

/// A failed Jacobi identity on the basis triple `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vec<Rat>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residual.iter().map(render_rat).collect();
        write!(f, "Jacobi fails on basis triple ({}, {}, {}): residual [{}]", self.i, self.j, self.k, r.join(", "))
    }
}

/// Structure constants keyed by `(i, j)` with `i < j`; each value is the
/// sparse expansion of `[e_i, e_j]`. Zero coefficients are never stored.
pub type StructureConstants = BTreeMap<(usize, usize), BTreeMap<usize, Rat>>;

/// A finite-dimensional Lie algebra over the rationals.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored, so antisymmetry holds
/// by construction. A dense bracket table is cached alongside.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    names: Vec<String>,
    sc: StructureConstants,
    table: Vec<Vec<Vec<Rat>>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("brackets", &self.sc.len())
            .finish()
    }
}

impl LieAlgebra {
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Rat)>)>,
    ) -> Result<Self, LieError> {
        let dim = names.len();
        let mut sc = StructureConstants::new();
        for ((i, j), terms) in entries {
            for idx in [i, j] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if i >= j {
                return Err(LieError::NotUpperPair { i, j });
            }
            let slot = sc.entry((i, j)).or_default();
            for (k, c) in terms {
                if k >= dim {
                    return Err(LieError::IndexOutOfRange { index: k, dim });
                }
                *slot.entry(k).or_insert_with(Rat::zero) += c;
            }
        }
        Ok(Self::from_sc(name.into(), names, sc))
    }

    fn from_sc(name: String, names: Vec<String>, mut sc: StructureConstants) -> Self {
        for terms in sc.values_mut() {
            terms.retain(|_, c| !c.is_zero());
        }
        sc.retain(|_, terms| !terms.is_empty());
        let dim = names.len();
        let mut table = vec![vec![zero_vec(dim); dim]; dim];
        for (&(i, j), terms) in &sc {
            for (&k, c) in terms {
                table[i][j][k] = c.clone();
                table[j][i][k] = -c.clone();
            }
        }
        LieAlgebra { name, names, sc, table }
    }

    /// Builds an algebra from a dense bracket function on basis pairs. Only
    /// pairs `i < j` are queried.
    pub fn from_basis_brackets(
        name: impl Into<String>,
        names: Vec<String>,
        mut bracket: impl FnMut(usize, usize) -> Vec<Rat>,
    ) -> Self {
        let dim = names.len();
        let mut sc = StructureConstants::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = bracket(i, j);
                debug_assert_eq!(v.len(), dim);
                let terms: BTreeMap<usize, Rat> =
                    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !terms.is_empty() {
                    sc.insert((i, j), terms);
                }
            }
        }
        Self::from_sc(name.into(), names, sc)
    }

    /// The abelian algebra of dimension `n`, basis `e1..en`.
    pub fn abelian(n: usize) -> Self {
        Self::from_sc(format!("abelian{n}"), default_names(n), StructureConstants::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    /// `[e_i, e_j]` as a dense vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.table[i][j]
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LinAlgError::DimensionMismatch { expected: self.dim(), got: v.len() }.into());
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = zero_vec(self.dim());
        for (&(i, j), terms) in &self.sc {
            // x_i y_j - x_j y_i
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (&k, s) in terms {
                out[k] += &c * s;
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x) = [x, ·]`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Rat]) -> Result<Mat, LieError> {
        self.check_len(x)?;
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Mat {
        self.ad(&unit_vec(self.dim(), i)).expect("unit vector has algebra length")
    }

    pub fn jacobi_residual(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Result<Vec<Rat>, LieError> {
        let a = self.bracket(x, &self.bracket(y, z)?)?;
        let b = self.bracket(y, &self.bracket(z, x)?)?;
        let c = self.bracket(z, &self.bracket(x, y)?)?;
        Ok(a.iter().zip(&b).zip(&c).map(|((a, b), c)| a + b + c).collect())
    }

    /// Jacobi violations over all basis triples `i < j < k`. Empty iff the
    /// structure constants define a Lie algebra.
    pub fn validate(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut res = zero_vec(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = &self.table[b][c];
                        for (m, coef) in inner.iter().enumerate() {
                            if !coef.is_zero() {
                                axpy(&mut res, coef, &self.table[a][m]);
                            }
                        }
                    }
                    if !is_zero_vec(&res) {
                        out.push(JacobiViolation { i, j, k, residual: res });
                    }
                }
            }
        }
        out
    }

    fn check_subspace(&self, s: &Subspace) -> Result<(), LieError> {
        if s.ambient_dim() != self.dim() {
            return Err(LinAlgError::DimensionMismatch { expected: self.dim(), got: s.ambient_dim() }.into());
        }
        Ok(())
    }

    /// `span{[a, b] : a ∈ A, b ∈ B}`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let av = a.basis_vectors();
        let bv = b.basis_vectors();
        let mut out = Vec::with_capacity(av.len() * bv.len());
        for x in &av {
            for y in &bv {
                let v = self.bracket(x, y)?;
                if !is_zero_vec(&v) {
                    out.push(v);
                }
            }
        }
        Ok(Subspace::span(self.dim(), &out)?)
    }

    /// Lower central series of the subalgebra `s`: `s, [s, s], [s, [s, s]], …`.
    ///
    /// Stops once a term is zero; if the series stabilizes at a nonzero term,
    /// that term is repeated once as the witness.
    pub fn lower_central_series_of(&self, s: &Subspace) -> Result<Vec<Subspace>, LieError> {
        self.iterate_series(s, |cur| self.bracket_span(s, cur))
    }

    /// Derived series of the subalgebra `s`, with the same termination rule.
    pub fn derived_series_of(&self, s: &Subspace) -> Result<Vec<Subspace>, LieError> {
        self.iterate_series(s, |cur| self.bracket_span(cur, cur))
    }

    fn iterate_series(
        &self,
        start: &Subspace,
        mut step: impl FnMut(&Subspace) -> Result<Subspace, LieError>,
    ) -> Result<Vec<Subspace>, LieError> {
        self.check_subspace(start)?;
        let mut series = vec![start.clone()];
        loop {
            let cur = series.last().expect("series is nonempty");
            if cur.is_zero() {
                return Ok(series);
            }
            let next = step(cur)?;
            let stable = &next == cur;
            series.push(next);
            if stable {
                return Ok(series);
            }
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        self.lower_central_series_of(&Subspace::full(self.dim())).expect("full subspace matches")
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        self.derived_series_of(&Subspace::full(self.dim())).expect("full subspace matches")
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    /// Nilpotency class of the subalgebra `s` under the restricted bracket,
    /// or `None` if it is not nilpotent.
    pub fn nilpotency_class_of(&self, s: &Subspace) -> Result<Option<usize>, LieError> {
        let lcs = self.lower_central_series_of(s)?;
        Ok(lcs.last().is_some_and(Subspace::is_zero).then(|| lcs.len() - 1))
    }

    pub fn is_solvable_subalgebra(&self, s: &Subspace) -> Result<bool, LieError> {
        Ok(self.derived_series_of(s)?.last().is_some_and(Subspace::is_zero))
    }

    /// `∩_i ker ad(e_i)`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // x is central iff [e_i, x] = 0 for every i; stack the ad(e_i) blocks.
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            rows.extend(self.ad_basis(i).row_vecs());
        }
        Mat::from_rows(n, &rows).expect("ad rows have algebra length").kernel()
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, LieError> {
        Ok(self.bracket_span(s, s)?.is_subspace_of(s)?)
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool, LieError> {
        self.check_subspace(s)?;
        let full = Subspace::full(self.dim());
        Ok(self.bracket_span(&full, s)?.is_subspace_of(s)?)
    }

    /// The algebra transported along the invertible map `t`: the bracket
    /// `[x, y]' = t [t⁻¹x, t⁻¹y]`, which makes `t` an isomorphism onto it.
    pub fn transport(&self, t: &Mat) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n {
            return Err(LinAlgError::DimensionMismatch { expected: n, got: t.rows() }.into());
        }
        let tinv = t.inverse()?;
        let cols: Vec<Vec<Rat>> = (0..n).map(|i| tinv.col(i)).collect();
        let mut err = None;
        let g = LieAlgebra::from_basis_brackets(self.name.clone(), self.names.clone(), |i, j| {
            match self.bracket(&cols[i], &cols[j]).and_then(|b| Ok(t.mul_vec(&b)?)) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    zero_vec(n)
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(g),
        }
    }

    /// Structure constants of the subalgebra `s` in its canonical basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra, LieError> {
        self.check_subspace(s)?;
        let basis = s.basis_vectors();
        let names = default_names(basis.len());
        let mut err = None;
        let sub = LieAlgebra::from_basis_brackets(format!("{}|sub", self.name), names, |i, j| {
            let b = match self.bracket(&basis[i], &basis[j]) {
                Ok(b) => b,
                Err(e) => {
                    err = Some(e);
                    return zero_vec(basis.len());
                }
            };
            match s.coordinates(&b) {
                Ok(Some(c)) => c,
                Ok(None) => {
                    err = Some(LieError::NotClosed);
                    zero_vec(basis.len())
                }
                Err(e) => {
                    err = Some(e.into());
                    zero_vec(basis.len())
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(sub),
        }
    }

    /// Whether `d` satisfies `d[e_i, e_j] = [d e_i, e_j] + [e_i, d e_j]`.
    pub fn is_derivation(&self, d: &Mat) -> Result<bool, LieError> {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return Err(LinAlgError::DimensionMismatch { expected: n, got: d.rows() }.into());
        }
        let images: Vec<Vec<Rat>> = (0..n).map(|i| d.col(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(&self.table[i][j])?;
                let a = self.bracket(&images[i], &unit_vec(n, j))?;
                let b = self.bracket(&unit_vec(n, i), &images[j])?;
                if lhs.iter().zip(a.iter().zip(&b)).any(|(l, (a, b))| *l != a + b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// A Lie algebra of `n×n` matrices, stored as a canonical subspace of the
/// `n²`-dimensional matrix space (row-major flattening).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMapAlg {
    n: usize,
    space: Subspace,
}

impl LinMapAlg {
    /// Checks closure under the matrix commutator.
    pub fn new(n: usize, space: Subspace) -> Result<Self, LieError> {
        if space.ambient_dim() != n * n {
            return Err(LinAlgError::DimensionMismatch { expected: n * n, got: space.ambient_dim() }.into());
        }
        let alg = LinMapAlg { n, space };
        if !alg.is_closed()? {
            return Err(LieError::NotClosed);
        }
        Ok(alg)
    }

    pub fn from_maps(n: usize, maps: &[Mat]) -> Result<Self, LieError> {
        let flat: Vec<Vec<Rat>> = maps.iter().map(|m| m.entries().to_vec()).collect();
        Self::new(n, Subspace::span(n * n, &flat)?)
    }

    pub fn zero(n: usize) -> Self {
        LinMapAlg { n, space: Subspace::zero(n * n) }
    }

    fn is_closed(&self) -> Result<bool, LieError> {
        let maps = self.basis_maps();
        for (a, x) in maps.iter().enumerate() {
            for y in &maps[a + 1..] {
                if !self.space.contains(x.commutator(y)?.entries())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Dimension of the acted-on space.
    pub fn parent_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_maps(&self) -> Vec<Mat> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|v| Mat::from_flat(self.n, self.n, v).expect("flattened map has n² entries"))
            .collect()
    }

    pub fn contains(&self, m: &Mat) -> Result<bool, LieError> {
        Ok(self.space.contains(m.entries())?)
    }

    pub fn coordinates(&self, m: &Mat) -> Result<Option<Vec<Rat>>, LieError> {
        Ok(self.space.coordinates(m.entries())?)
    }

    pub fn is_subalgebra_of(&self, other: &LinMapAlg) -> Result<bool, LieError> {
        Ok(self.space.is_subspace_of(&other.space)?)
    }
}

/// Output of [`semidirect`]: the algebra on `n ⊕ h` and the two embedded
/// coordinate blocks.
#[derive(Debug, Clone)]
pub struct Semidirect {
    pub algebra: LieAlgebra,
    pub n_embed: Subspace,
    pub h_embed: Subspace,
}

/// The semidirect sum `n ⋊ h` with bracket
/// `[(x, D), (y, E)] = ([x, y] + Dy − Ex, DE − ED)`.
///
/// Basis order is the basis of `n` followed by the canonical basis of `h`.
pub fn semidirect(n: &LieAlgebra, h: &LinMapAlg) -> Result<Semidirect, LieError> {
    let d = n.dim();
    if h.parent_dim() != d {
        return Err(LinAlgError::DimensionMismatch { expected: d, got: h.parent_dim() }.into());
    }
    let maps = h.basis_maps();
    for (index, m) in maps.iter().enumerate() {
        if !n.is_derivation(m)? {
            return Err(LieError::NotDerivation { index });
        }
    }
    let m = maps.len();
    let total = d + m;
    let mut names: Vec<String> = n.basis_names().to_vec();
    names.extend((1..=m).map(|a| format!("D{a}")));

    let mut err = None;
    let algebra = LieAlgebra::from_basis_brackets(n.name().to_string(), names, |i, j| {
        let mut v = zero_vec(total);
        match (i < d, j < d) {
            (true, true) => v[..d].clone_from_slice(n.bracket_basis(i, j)),
            // [e_i, D_b] = -D_b e_i
            (true, false) => {
                for (k, c) in maps[j - d].col(i).into_iter().enumerate() {
                    v[k] = -c;
                }
            }
            (false, true) => unreachable!("only i < j is queried"),
            (false, false) => {
                let comm = maps[i - d].commutator(&maps[j - d]).map_err(LieError::from);
                match comm.and_then(|c| {
                    h.coordinates(&c)?.ok_or(LieError::NotClosed)
                }) {
                    Ok(coords) => v[d..].clone_from_slice(&coords),
                    Err(e) => err = Some(e),
                }
            }
        }
        v
    });
    if let Some(e) = err {
        return Err(e);
    }
    let violations = algebra.validate();
    if let Some(v) = violations.first() {
        return Err(LieError::JacobiFailure(v.to_string()));
    }
    Ok(Semidirect {
        algebra,
        n_embed: Subspace::coordinate(total, 0..d),
        h_embed: Subspace::coordinate(total, d..total),
    })
}

/// `(i, j, terms)`: `[e_i, e_j] = Σ c·e_k` for `(k, c)` in `terms`.
pub type IntBracket<'a> = (usize, usize, &'a [(usize, i64)]);

/// Builds the algebra from a compact integer table; test and catalog helper.
pub fn from_int_brackets(name: &str, dim: usize, brackets: &[IntBracket]) -> LieAlgebra {
    LieAlgebra::new(
        name,
        default_names(dim),
        brackets.iter().map(|&(i, j, terms)| {
            ((i, j), terms.iter().map(|&(k, c)| (k, crate::exactla::rat(c))).collect())
        }),
    )
    .expect("well-formed integer brackets")
}

//! Finite groups with left-invariant distances.
//!
//! Isometries are found by backtracking with distance-profile pruning, and
//! the affine structure of the isometry group is checked exhaustively.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{rat, ratio, Rat};

/// A finite group given by its Cayley table together with a distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricGroup {
    pub name: String,
    pub labels: Vec<String>,
    pub identity: usize,
    /// `table[g][h]` is the index of `g·h`.
    pub table: Vec<Vec<usize>>,
    pub dist: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupViolation {
    Shape(String),
    NotClosed { g: usize, h: usize },
    NotAssociative { a: usize, b: usize, c: usize },
    Identity { g: usize },
    NoInverse { g: usize },
    NotSymmetric { p: usize, q: usize },
    Diagonal { p: usize },
    NonPositive { p: usize, q: usize },
    Triangle { p: usize, q: usize, r: usize },
    NotLeftInvariant { g: usize, p: usize, q: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupViolation::*;
        match self {
            Shape(s) => write!(f, "malformed: {s}"),
            NotClosed { g, h } => write!(f, "table entry ({g}, {h}) is out of range"),
            NotAssociative { a, b, c } => write!(f, "associativity fails on ({a}, {b}, {c})"),
            Identity { g } => write!(f, "identity law fails for element {g}"),
            NoInverse { g } => write!(f, "element {g} has no inverse"),
            NotSymmetric { p, q } => write!(f, "distance is not symmetric at ({p}, {q})"),
            Diagonal { p } => write!(f, "distance from {p} to itself is nonzero"),
            NonPositive { p, q } => write!(f, "distance between distinct {p} and {q} is not positive"),
            Triangle { p, q, r } => write!(f, "triangle inequality fails for ({p}, {q}, {r})"),
            NotLeftInvariant { g, p, q } => write!(f, "left-invariance fails: d({g}·{p}, {g}·{q}) != d({p}, {q})"),
        }
    }
}

impl FiniteMetricGroup {
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == self.identity).expect("validated group has inverses")
    }

    /// Exhaustive check of the group axioms and the metric axioms, including
    /// left-invariance. Empty iff valid.
    pub fn validate(&self) -> Vec<GroupViolation> {
        use GroupViolation::*;
        let n = self.order();
        let mut out = Vec::new();
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            out.push(Shape(format!("table must be {n}x{n}")));
            return out;
        }
        if self.dist.len() != n || self.dist.iter().any(|r| r.len() != n) {
            out.push(Shape(format!("metric must be {n}x{n}")));
            return out;
        }
        if self.identity >= n && n > 0 {
            out.push(Shape("identity index out of range".into()));
            return out;
        }
        if n == 0 {
            out.push(Shape("a group has at least one element".into()));
            return out;
        }
        for g in 0..n {
            for h in 0..n {
                if self.table[g][h] >= n {
                    out.push(NotClosed { g, h });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b];
                for c in 0..n {
                    if self.table[ab][c] != self.table[a][self.table[b][c]] {
                        out.push(NotAssociative { a, b, c });
                    }
                }
            }
        }
        let e = self.identity;
        for g in 0..n {
            if self.table[e][g] != g || self.table[g][e] != g {
                out.push(Identity { g });
            }
            if !(0..n).any(|h| self.table[g][h] == e && self.table[h][g] == e) {
                out.push(NoInverse { g });
            }
        }
        let d = &self.dist;
        for p in 0..n {
            if !d[p][p].is_zero() {
                out.push(Diagonal { p });
            }
            for q in 0..n {
                if p != q && d[p][q] <= Rat::zero() {
                    out.push(NonPositive { p, q });
                }
                if p < q && d[p][q] != d[q][p] {
                    out.push(NotSymmetric { p, q });
                }
                for r in 0..n {
                    if d[p][r] > &d[p][q] + &d[q][r] {
                        out.push(Triangle { p, q, r });
                    }
                }
            }
        }
        for g in 0..n {
            for p in 0..n {
                for q in 0..n {
                    if d[self.table[g][p]][self.table[g][q]] != d[p][q] {
                        out.push(NotLeftInvariant { g, p, q });
                    }
                }
            }
        }
        out
    }

    /// Sorted distance row of each point; an isometry can only map a point
    /// to one with the same profile.
    fn profiles(&self) -> Vec<Vec<Rat>> {
        self.dist
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort();
                r
            })
            .collect()
    }

    pub fn is_homomorphism(&self, f: &Perm) -> bool {
        self.is_homomorphism_to(self, f)
    }

    /// Whether `f(g·h) = f(g)·f(h)` for all `g, h`, with `f: self → other`.
    pub fn is_homomorphism_to(&self, other: &FiniteMetricGroup, f: &Perm) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| f.apply(self.mul(g, h)) == other.mul(f.apply(g), f.apply(h))))
    }

    pub fn is_isometry_to(&self, other: &FiniteMetricGroup, f: &Perm) -> bool {
        let n = self.order();
        (0..n).all(|p| (0..n).all(|q| other.dist[f.apply(p)][f.apply(q)] == self.dist[p][q]))
    }

    pub fn left_translation(&self, g: usize) -> Perm {
        Perm((0..self.order()).map(|p| self.mul(g, p)).collect())
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The same group with every distance multiplied by `c`.
    pub fn scaled(&self, c: &Rat) -> FiniteMetricGroup {
        let mut out = self.clone();
        for row in &mut out.dist {
            for x in row.iter_mut() {
                *x = &*x * c;
            }
        }
        out
    }
}

/// A bijection of `{0, …, n−1}` (or between two sets of equal size).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_vec(v: Vec<usize>) -> Option<Self> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Perm(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&p| self.0[p]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// A set of permutations kept sorted and deduplicated, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometrySet {
    degree: usize,
    perms: Vec<Perm>,
}

impl IsometrySet {
    pub fn new(degree: usize, perms: impl IntoIterator<Item = Perm>) -> Self {
        let set: BTreeSet<Perm> = perms.into_iter().collect();
        IsometrySet { degree, perms: set.into_iter().collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.perms.binary_search(p).is_ok()
    }

    pub fn is_subset_of(&self, other: &IsometrySet) -> bool {
        self.perms.iter().all(|p| other.contains(p))
    }

    /// Closed under composition and inverses and nonempty.
    pub fn is_group(&self) -> bool {
        if self.perms.is_empty() {
            return false;
        }
        self.perms.iter().all(|a| self.contains(&a.inverse()) && self.perms.iter().all(|b| self.contains(&a.compose(b))))
    }

    pub fn intersection(&self, other: &IsometrySet) -> IsometrySet {
        IsometrySet::new(self.degree, self.perms.iter().filter(|p| other.contains(p)).cloned())
    }
}

/// `p ↦ m·Φ(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineWitness {
    pub translation: usize,
    pub automorphism: Perm,
}

/// All distance-preserving bijections `m1 → m2`. When `fix_identity` is set
/// only maps sending identity to identity are returned.
fn search_isometries(m1: &FiniteMetricGroup, m2: &FiniteMetricGroup, fix_identity: bool) -> Vec<Perm> {
    let n = m1.order();
    if n != m2.order() {
        return Vec::new();
    }
    let p1 = m1.profiles();
    let p2 = m2.profiles();
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|p| (0..n).filter(|&q| p1[p] == p2[q]).collect()).collect();

    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn go(
        p: usize,
        m1: &FiniteMetricGroup,
        m2: &FiniteMetricGroup,
        candidates: &[Vec<usize>],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        fixed: Option<(usize, usize)>,
        out: &mut Vec<Perm>,
    ) {
        let n = assign.len();
        if p == n {
            out.push(Perm(assign.clone()));
            return;
        }
        for &img in &candidates[p] {
            if used[img] {
                continue;
            }
            if let Some((a, b)) = fixed {
                if (p == a) != (img == b) {
                    continue;
                }
            }
            if (0..p).any(|q| m2.dist[img][assign[q]] != m1.dist[p][q]) {
                continue;
            }
            assign[p] = img;
            used[img] = true;
            go(p + 1, m1, m2, candidates, assign, used, fixed, out);
            used[img] = false;
        }
        assign[p] = usize::MAX;
    }

    let fixed = fix_identity.then_some((m1.identity, m2.identity));
    go(0, m1, m2, &candidates, &mut assign, &mut used, fixed, &mut out);
    out.sort();
    out
}

/// The full isometry group.
pub fn isometries(m: &FiniteMetricGroup) -> IsometrySet {
    IsometrySet::new(m.order(), search_isometries(m, m, false))
}

pub fn isometries_between(m1: &FiniteMetricGroup, m2: &FiniteMetricGroup) -> Vec<Perm> {
    search_isometries(m1, m2, false)
}

/// Isometries `m1 → m2` sending identity to identity.
pub fn based_isometries_between(m1: &FiniteMetricGroup, m2: &FiniteMetricGroup) -> Vec<Perm> {
    search_isometries(m1, m2, true)
}

pub fn left_translations(m: &FiniteMetricGroup) -> IsometrySet {
    IsometrySet::new(m.order(), (0..m.order()).map(|g| m.left_translation(g)))
}

/// Automorphisms found by backtracking over bijections fixing the identity,
/// pruned by the homomorphism law on assigned pairs.
pub fn automorphisms(m: &FiniteMetricGroup) -> IsometrySet {
    let n = m.order();
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let order_of = element_orders(m);

    fn go(
        p: usize,
        m: &FiniteMetricGroup,
        orders: &[usize],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Perm>,
    ) {
        let n = assign.len();
        if p == n {
            let f = Perm(assign.clone());
            if m.is_homomorphism(&f) {
                out.push(f);
            }
            return;
        }
        for img in 0..n {
            if used[img] || orders[img] != orders[p] {
                continue;
            }
            if (p == m.identity) != (img == m.identity) {
                continue;
            }
            // image of an already decided element, with p ↦ img tentatively
            let image = |x: usize| match x.cmp(&p) {
                std::cmp::Ordering::Less => Some(assign[x]),
                std::cmp::Ordering::Equal => Some(img),
                std::cmp::Ordering::Greater => None,
            };
            let ok = (0..=p).all(|q| {
                let fq = image(q).expect("q <= p");
                image(m.mul(p, q)).is_none_or(|x| x == m.mul(img, fq))
                    && image(m.mul(q, p)).is_none_or(|x| x == m.mul(fq, img))
            });
            if !ok {
                continue;
            }
            assign[p] = img;
            used[img] = true;
            go(p + 1, m, orders, assign, used, out);
            used[img] = false;
            assign[p] = usize::MAX;
        }
    }

    go(0, m, &order_of, &mut assign, &mut used, &mut out);
    IsometrySet::new(n, out)
}

pub fn element_orders(m: &FiniteMetricGroup) -> Vec<usize> {
    (0..m.order())
        .map(|g| {
            let mut x = g;
            let mut k = 1;
            while x != m.identity {
                x = m.mul(x, g);
                k += 1;
            }
            k
        })
        .collect()
}

/// Elements of `s` fixing the identity of `m`.
pub fn stabilizer(m: &FiniteMetricGroup, s: &IsometrySet) -> IsometrySet {
    IsometrySet::new(s.degree(), s.perms().iter().filter(|f| f.apply(m.identity) == m.identity).cloned())
}

/// `{F ∘ I ∘ F⁻¹ : I ∈ s}`.
pub fn conjugate_set(f: &Perm, s: &IsometrySet) -> IsometrySet {
    let finv = f.inverse();
    IsometrySet::new(f.len(), s.perms().iter().map(|i| f.compose(i).compose(&finv)))
}

/// Writes `f = L_m ∘ Φ` with `m = f(1)` and returns the witness if `Φ` is an
/// automorphism.
pub fn affine_decompose(f: &Perm, m: &FiniteMetricGroup) -> Option<AffineWitness> {
    let t = f.apply(m.identity);
    let phi = m.left_translation(m.inverse(t)).compose(f);
    m.is_homomorphism(&phi).then_some(AffineWitness { translation: t, automorphism: phi })
}

/// The four conditions of the affine-isometry equivalence, each evaluated
/// on its own.
#[derive(Debug, Clone)]
pub struct TfaeReport {
    /// Left translations are normal in the isometry group.
    pub a: bool,
    /// Every isometry is affine.
    pub b: bool,
    /// Every identity-fixing isometry is an automorphism.
    pub c: bool,
    /// The isometry group is the semidirect product of left translations
    /// and the identity stabilizer.
    pub d: bool,
    pub equivalent: bool,
    pub isometry_count: usize,
    pub translation_count: usize,
    pub stabilizer_count: usize,
    pub affine_count: usize,
    /// An isometry witnessing the failure of (a), if any.
    pub non_normalizing: Option<Perm>,
    /// An isometry that is not affine, if any.
    pub non_affine: Option<Perm>,
    /// A stabilizer element that is not an automorphism, if any.
    pub non_automorphism: Option<Perm>,
}

pub fn check_tfae(m: &FiniteMetricGroup) -> TfaeReport {
    let g = isometries(m);
    let ml = left_translations(m);
    let stab = stabilizer(m, &g);

    // (a) F L_p F⁻¹ ∈ M^L for every F ∈ G and p ∈ M
    let non_normalizing = g
        .perms()
        .iter()
        .find(|f| {
            let finv = f.inverse();
            ml.perms().iter().any(|l| !ml.contains(&f.compose(l).compose(&finv)))
        })
        .cloned();
    let a = non_normalizing.is_none();

    // (b)
    let mut affine_count = 0;
    let mut non_affine = None;
    for f in g.perms() {
        if affine_decompose(f, m).is_some() {
            affine_count += 1;
        } else if non_affine.is_none() {
            non_affine = Some(f.clone());
        }
    }
    let b = non_affine.is_none();

    // (c)
    let non_automorphism = stab.perms().iter().find(|f| !m.is_homomorphism(f)).cloned();
    let c = non_automorphism.is_none();

    // (d) normality via F·M^L = M^L·F, then G = M^L·Stab with trivial intersection
    let normal = g.perms().iter().all(|f| {
        let left: HashSet<Perm> = ml.perms().iter().map(|l| f.compose(l)).collect();
        ml.perms().iter().all(|l| left.contains(&l.compose(f)))
    });
    let products = IsometrySet::new(
        m.order(),
        ml.perms().iter().flat_map(|l| stab.perms().iter().map(move |s| l.compose(s))),
    );
    let trivial = ml.intersection(&stab).perms() == [Perm::identity(m.order())];
    let d = normal && products == g && trivial;

    TfaeReport {
        a,
        b,
        c,
        d,
        equivalent: a == b && b == c && c == d,
        isometry_count: g.len(),
        translation_count: ml.len(),
        stabilizer_count: stab.len(),
        affine_count,
        non_normalizing,
        non_affine,
        non_automorphism,
    }
}

/// Outcome of the finite conjugation-implies-isomorphism check on a pair.
#[derive(Debug, Clone, Default)]
pub struct ConjugationCheck {
    /// Identity-fixing isometries examined.
    pub examined: usize,
    /// Those carrying left translations onto left translations.
    pub hypothesis_holds: usize,
    /// Those among them that are group isomorphisms.
    pub isomorphisms: usize,
    pub counterexample: Option<Perm>,
}

impl ConjugationCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.hypothesis_holds == self.isomorphisms
    }
}

/// For every identity-fixing isometry `F: m1 → m2` with
/// `F ∘ M1^L ∘ F⁻¹ = M2^L`, checks that `F` is an isomorphism.
pub fn check_conjugation_isomorphism(m1: &FiniteMetricGroup, m2: &FiniteMetricGroup) -> ConjugationCheck {
    let mut out = ConjugationCheck::default();
    let l1 = left_translations(m1);
    let l2 = left_translations(m2);
    for f in based_isometries_between(m1, m2) {
        out.examined += 1;
        if conjugate_set(&f, &l1) != l2 {
            continue;
        }
        out.hypothesis_holds += 1;
        if m1.is_homomorphism_to(m2, &f) {
            out.isomorphisms += 1;
        } else if out.counterexample.is_none() {
            out.counterexample = Some(f);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Group constructions and the test corpus.

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Group from a multiplication on `0..n` with identity `0`; distances from a
/// length function `dist(p, q) = len(p⁻¹q)`.
pub fn from_mul(name: &str, labels: Vec<String>, mul: impl Fn(usize, usize) -> usize, len: &[Rat]) -> FiniteMetricGroup {
    let n = labels.len();
    let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| mul(g, h)).collect()).collect();
    let mut g = FiniteMetricGroup {
        name: name.to_string(),
        labels,
        identity: 0,
        table,
        dist: vec![vec![Rat::zero(); n]; n],
    };
    g.dist = metric_from_length(&g, len);
    g
}

pub fn metric_from_length(g: &FiniteMetricGroup, len: &[Rat]) -> Vec<Vec<Rat>> {
    let n = g.order();
    (0..n).map(|p| (0..n).map(|q| len[g.mul(g.inverse(p), q)].clone()).collect()).collect()
}

pub fn with_length(g: &FiniteMetricGroup, name: &str, len: &[Rat]) -> FiniteMetricGroup {
    let mut out = g.clone();
    out.name = name.to_string();
    out.dist = metric_from_length(g, len);
    out
}

pub fn discrete_length(n: usize) -> Vec<Rat> {
    (0..n).map(|i| if i == 0 { Rat::zero() } else { rat(1) }).collect()
}

/// Product of cyclic groups `Z/k1 × Z/k2 × …`, with the discrete metric.
pub fn abelian_product(name: &str, factors: &[usize]) -> FiniteMetricGroup {
    let n: usize = factors.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        factors
            .iter()
            .map(|&k| {
                let d = x % k;
                x /= k;
                d
            })
            .collect()
    };
    let undigits = |ds: &[usize]| -> usize {
        ds.iter().zip(factors).rev().fold(0, |acc, (&d, &k)| acc * k + d)
    };
    let mul = |a: usize, b: usize| {
        let (da, db) = (digits(a), digits(b));
        let s: Vec<usize> = da.iter().zip(&db).zip(factors).map(|((x, y), k)| (x + y) % k).collect();
        undigits(&s)
    };
    from_mul(name, labels("g", n), mul, &discrete_length(n))
}

pub fn cyclic(n: usize) -> FiniteMetricGroup {
    abelian_product(&format!("z{n}"), &[n])
}

/// Dihedral group of order `2n`: element `r^i s^j` has index `i + n·j`.
pub fn dihedral(n: usize) -> FiniteMetricGroup {
    let mul = |a: usize, b: usize| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        // r^i s^j r^k s^l = r^(i ± k) s^(j+l)
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    };
    from_mul(&format!("d{}", 2 * n), labels("x", 2 * n), mul, &discrete_length(2 * n))
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> FiniteMetricGroup {
    // index = 2·unit + sign, unit ∈ {1, i, j, k}
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        // returns (unit, negated)
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mul = |a: usize, b: usize| {
        let (u, neg) = unit_mul(a / 2, b / 2);
        let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
        2 * u + sign
    };
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    from_mul("q8", names, mul, &discrete_length(8))
}

/// Symmetric group on three letters.
pub fn s3() -> FiniteMetricGroup {
    let perms: Vec<Perm> = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]]
        .iter()
        .map(|p| Perm(p.to_vec()))
        .collect();
    let mul = |a: usize, b: usize| {
        let c = perms[a].compose(&perms[b]);
        perms.iter().position(|p| *p == c).expect("S3 is closed")
    };
    let names = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"].iter().map(|s| s.to_string()).collect();
    from_mul("s3", names, mul, &discrete_length(6))
}

/// Word length with respect to a generating set closed under inverses.
pub fn word_length(g: &FiniteMetricGroup, gens: &[usize]) -> Vec<Rat> {
    let n = g.order();
    let mut sym: Vec<usize> = gens.iter().flat_map(|&s| [s, g.inverse(s)]).collect();
    sym.sort_unstable();
    sym.dedup();
    let mut len = vec![usize::MAX; n];
    len[g.identity] = 0;
    let mut frontier = vec![g.identity];
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &s in &sym {
                let y = g.mul(x, s);
                if len[y] == usize::MAX {
                    len[y] = k;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    assert!(len.iter().all(|&l| l != usize::MAX), "generators must generate the group");
    len.into_iter().map(|l| rat(l as i64)).collect()
}

/// A random symmetric length function valued in `[1, 2]`. Any such function
/// satisfies the triangle inequality.
pub fn random_length(g: &FiniteMetricGroup, rng: &mut impl Rng) -> Vec<Rat> {
    let n = g.order();
    let choices = [ratio(1, 1), ratio(5, 4), ratio(3, 2), ratio(7, 4), ratio(2, 1)];
    let mut len = vec![Rat::zero(); n];
    for x in 0..n {
        if x == g.identity {
            continue;
        }
        let inv = g.inverse(x);
        if inv < x {
            len[x] = len[inv].clone();
        } else {
            len[x] = choices.choose(rng).expect("nonempty").clone();
        }
    }
    len
}

/// Small generating sets, enough to give each corpus group a word metric.
fn generators(g: &FiniteMetricGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut reached: BTreeSet<usize> = BTreeSet::from([g.identity]);
    while reached.len() < n {
        let s = (0..n).find(|x| !reached.contains(x)).expect("some element unreached");
        gens.push(s);
        // close reached under the new generator
        loop {
            let before = reached.len();
            let cur: Vec<usize> = reached.iter().copied().collect();
            for &x in &cur {
                for &t in &gens {
                    reached.insert(g.mul(x, t));
                }
            }
            if reached.len() == before {
                break;
            }
        }
    }
    gens
}

/// Every group of order at most 8 up to isomorphism.
pub fn corpus_groups() -> Vec<FiniteMetricGroup> {
    let mut out = vec![abelian_product("z1", &[1])];
    for n in 2..=8 {
        out.push(cyclic(n));
    }
    out.push(abelian_product("z2xz2", &[2, 2]));
    out.push(s3());
    out.push(abelian_product("z4xz2", &[4, 2]));
    out.push(abelian_product("z2xz2xz2", &[2, 2, 2]));
    out.push(dihedral(4));
    out.push(quaternion());
    out
}

/// Each corpus group with several left-invariant metrics: discrete, a word
/// metric, its half-scaled copy and random lengths in `[1, 2]`, deduplicated.
/// At least `min_metrics` distinct metrics per nontrivial group.
pub fn corpus(seed: u64, min_metrics: usize) -> Vec<FiniteMetricGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in corpus_groups() {
        let mut lengths: Vec<Vec<Rat>> = Vec::new();
        let push = |l: Vec<Rat>, lengths: &mut Vec<Vec<Rat>>| {
            if !lengths.contains(&l) {
                lengths.push(l);
            }
        };
        push(discrete_length(g.order()), &mut lengths);
        let word = word_length(&g, &generators(&g));
        push(word.iter().map(|x| x * ratio(1, 2)).collect(), &mut lengths);
        push(word, &mut lengths);
        let mut attempts = 0;
        while lengths.len() < min_metrics && attempts < 200 {
            push(random_length(&g, &mut rng), &mut lengths);
            attempts += 1;
        }
        for (k, l) in lengths.iter().enumerate() {
            out.push(with_length(&g, &format!("{}-m{k}", g.name), l));
        }
    }
    out
}

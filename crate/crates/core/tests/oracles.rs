//! Values checked against computations that share no code with the library:
//! floating-point group laws, integer elimination and brute-force search.

#![allow(clippy::needless_range_loop)]

use liework::catalog::{self, Payload};
use liework::exactla::{rat, Rat, Subspace};
use liework::finite::{self, FiniteMetricGroup, Perm};
use liework::invariants::{derivations, killing_form, nilradical};
use liework::lie::LieAlgebra;
use num_traits::{ToPrimitive, Zero};

// ---------- rototranslation group law in coordinates (x, y, z) ----------

type P = [f64; 3];

fn mul(p: P, q: P) -> P {
    let (c, s) = (p[2].cos(), p[2].sin());
    [c * q[0] - s * q[1] + p[0], s * q[0] + c * q[1] + p[1], p[2] + q[2]]
}

fn inv(p: P) -> P {
    let (c, s) = (p[2].cos(), p[2].sin());
    // R(-z)(x, y), negated
    [-(c * p[0] + s * p[1]), -(-s * p[0] + c * p[1]), -p[2]]
}

fn unit(i: usize, t: f64) -> P {
    let mut p = [0.0; 3];
    p[i] = t;
    p
}

/// `d/ds d/dt (γ_i(s) γ_j(t) γ_i(s)⁻¹)` at zero by central differences.
fn fd_bracket(i: usize, j: usize) -> P {
    let h = 1e-4;
    let conj = |s: f64, t: f64| {
        let g = unit(i, s);
        mul(mul(g, unit(j, t)), inv(g))
    };
    let mut out = [0.0; 3];
    for k in 0..3 {
        let f = |s: f64, t: f64| conj(s, t)[k];
        out[k] = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
    }
    out
}

#[test]
fn rototranslation_brackets_match_group_law() {
    let g = catalog::rototranslation();
    for i in 0..3 {
        for j in 0..3 {
            let fd = fd_bracket(i, j);
            let exact = g.bracket_basis(i, j);
            for k in 0..3 {
                let e = exact[k].to_f64().unwrap();
                assert!((fd[k] - e).abs() < 1e-5, "[e{},e{}]_{}: {} vs {}", i + 1, j + 1, k + 1, fd[k], e);
            }
        }
    }
}

#[test]
fn rototranslation_rotation_preserves_euclidean_metric() {
    // ad(e3) restricted to the translations is skew for the standard metric
    let g = catalog::rototranslation();
    let a = [g.bracket_basis(2, 0), g.bracket_basis(2, 1)];
    assert_eq!(a[0][0], Rat::zero());
    assert_eq!(a[1][1], Rat::zero());
    assert_eq!(&a[0][1], &-&a[1][0]);
}

// ---------- integer structure constants and fraction-free elimination ----------

fn int_table(g: &LieAlgebra) -> Vec<Vec<Vec<i128>>> {
    let n = g.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    g.bracket_basis(i, j)
                        .iter()
                        .map(|c| {
                            assert!(c.is_integer());
                            c.to_integer().to_i128().unwrap()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let (mut r, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for k in c + 1..cols {
                m[i][k] = (m[r][c] * m[i][k] - m[i][c] * m[r][k]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `D[x,y] = [Dx,y] + [x,Dy]` over the basis, unknowns `D[a][b]`.
fn derivation_dim_oracle(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let t = int_table(g);
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![0i128; n * n];
                // D applied to [e_i, e_j]: sum_m c_ij^m D[k][m]
                for m in 0..n {
                    row[k * n + m] += t[i][j][m];
                }
                // [D e_i, e_j]: sum_a D[a][i] c_aj^k
                for a in 0..n {
                    row[a * n + i] -= t[a][j][k];
                    row[a * n + j] -= t[i][a][k];
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    n * n - bareiss_rank(eqs)
}

fn catalog_algebras() -> Vec<LieAlgebra> {
    catalog::catalog()
        .into_iter()
        .filter_map(|e| match e.payload {
            Payload::Lie { algebra, .. } => Some(algebra),
            Payload::Group(_) => None,
        })
        .collect()
}

#[test]
fn derivation_dims_match_integer_elimination() {
    for g in catalog_algebras() {
        assert_eq!(derivations(&g).unwrap().dim(), derivation_dim_oracle(&g), "{}", g.name());
    }
}

#[test]
fn killing_form_matches_triple_sum() {
    for g in catalog_algebras() {
        let t = int_table(&g);
        let n = g.dim();
        let k = killing_form(&g);
        for a in 0..n {
            for b in 0..n {
                // tr(ad e_a ad e_b) = sum_{m,l} c_{b m}^l c_{a l}^m
                let mut s = 0i128;
                for m in 0..n {
                    for l in 0..n {
                        s += t[b][m][l] * t[a][l][m];
                    }
                }
                assert_eq!(k[(a, b)], rat(s as i64), "{} ({a},{b})", g.name());
            }
        }
    }
}

// ---------- nilradical maximality ----------

fn ideal_closure(g: &LieAlgebra, s: &Subspace) -> Subspace {
    let full = Subspace::full(g.dim());
    let mut cur = s.clone();
    loop {
        let next = cur.sum(&g.bracket_span(&full, &cur).unwrap()).unwrap();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[test]
fn nilradical_is_maximal() {
    let mut algs = catalog_algebras();
    // two solvable non-nilpotent examples with a proper nilradical
    algs.push(liework::lie::from_int_brackets("s", 3, &[(0, 1, &[(1, 1)]), (0, 2, &[(2, 1)])]));
    algs.push(liework::lie::from_int_brackets("t", 4, &[(0, 1, &[(2, 1)]), (0, 3, &[(0, -1)]), (1, 3, &[(1, 1)])]));
    for g in algs {
        assert!(g.validate().is_empty(), "{}", g.name());
        let n = g.dim();
        let nil = nilradical(&g).unwrap().nilradical;
        assert!(g.is_ideal(&nil).unwrap());
        // every small integer vector outside the nilradical generates, with it,
        // a non-nilpotent ideal
        let mut v = vec![-1i64; n];
        loop {
            let x: Vec<Rat> = v.iter().map(|&c| rat(c)).collect();
            if !nil.contains(&x).unwrap() {
                let j = ideal_closure(&g, &nil.sum(&Subspace::span(n, std::slice::from_ref(&x)).unwrap()).unwrap());
                let sub = g.restrict(&j).unwrap();
                assert!(!sub.is_nilpotent(), "{}: {:?} extends the nilradical", g.name(), v);
            }
            let mut k = 0;
            while k < n && v[k] == 1 {
                v[k] = -1;
                k += 1;
            }
            if k == n {
                break;
            }
            v[k] += 1;
        }
    }
}

// ---------- finite groups by exhaustive enumeration ----------

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_isometries(m: &FiniteMetricGroup) -> Vec<Vec<usize>> {
    let n = m.order();
    all_perms(n)
        .into_iter()
        .filter(|f| (0..n).all(|p| (0..n).all(|q| m.dist[f[p]][f[q]] == m.dist[p][q])))
        .collect()
}

fn brute_automorphisms(m: &FiniteMetricGroup) -> usize {
    let n = m.order();
    all_perms(n).into_iter().filter(|f| (0..n).all(|a| (0..n).all(|b| f[m.mul(a, b)] == m.mul(f[a], f[b])))).count()
}

#[test]
fn isometry_and_automorphism_counts_match_enumeration() {
    for m in finite::corpus(11, 5).iter().filter(|m| m.order() <= 6) {
        let brute = brute_isometries(m);
        let fast = finite::isometries(m);
        assert_eq!(fast.len(), brute.len(), "{}", m.name);
        for f in &brute {
            assert!(fast.contains(&Perm(f.clone())));
        }
        assert_eq!(finite::automorphisms(m).len(), brute_automorphisms(m), "{}", m.name);
    }
}

#[test]
fn affine_condition_matches_enumeration() {
    // F is affine iff F = L_g ∘ A with A an automorphism, i.e. x ↦ F(e)⁻¹ F(x) is one
    for m in finite::corpus(3, 5).iter().filter(|m| m.order() <= 6) {
        let n = m.order();
        let brute_all_affine = brute_isometries(m).iter().all(|f| {
            let g = m.inverse(f[m.identity]);
            (0..n).all(|a| (0..n).all(|b| m.mul(g, f[m.mul(a, b)]) == m.mul(m.mul(g, f[a]), m.mul(g, f[b]))))
        });
        let r = finite::check_tfae(m);
        assert_eq!(r.b, brute_all_affine, "{}", m.name);
    }
}

#[test]
fn fourpoint_every_permutation_is_an_isometry() {
    let m = catalog::fourpoint_discrete();
    assert_eq!(brute_isometries(&m).len(), 24);
    assert_eq!(brute_automorphisms(&m), 2);
}

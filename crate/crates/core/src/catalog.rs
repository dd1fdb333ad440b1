//! Built-in fixtures.

use crate::exactla::Mat;
use crate::finite::{self, FiniteMetricGroup};
use crate::format::{serialize_fmg, serialize_lie};
use crate::invariants::MetricTensor;
use crate::lie::{from_int_brackets, semidirect, LieAlgebra, LinMapAlg};

#[derive(Debug, Clone)]
pub enum Payload {
    Lie { algebra: LieAlgebra, metric: MetricTensor },
    Group(FiniteMetricGroup),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub payload: Payload,
    pub provenance: String,
}

impl CatalogEntry {
    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Lie { .. } => "lie-algebra",
            Payload::Group(_) => "finite-group",
        }
    }

    /// Size of the object: dimension or group order.
    pub fn size(&self) -> usize {
        match &self.payload {
            Payload::Lie { algebra, .. } => algebra.dim(),
            Payload::Group(g) => g.order(),
        }
    }

    /// The entry in its text format.
    pub fn to_text(&self) -> String {
        match &self.payload {
            Payload::Lie { algebra, metric } => serialize_lie(algebra, Some(metric)),
            Payload::Group(g) => serialize_fmg(g),
        }
    }

    pub fn is_valid(&self) -> bool {
        match &self.payload {
            Payload::Lie { algebra, metric } => algebra.validate().is_empty() && metric.dim() == algebra.dim(),
            Payload::Group(g) => g.validate().is_empty(),
        }
    }
}

pub fn heisenberg3() -> LieAlgebra {
    from_int_brackets("heisenberg3", 3, &[(0, 1, &[(2, 1)])])
}

/// `[e1,e2] = e3, [e1,e3] = e4`.
pub fn filiform4() -> LieAlgebra {
    from_int_brackets("filiform4", 4, &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])])
}

/// Coordinates `(x, y, z)` with `p·p' = R(z)p' + p`, `R(z)` the rotation by
/// `z` in the `(x, y)`-plane. Conjugation by `exp(t e3)` rotates the plane by
/// `t`, so `[e3,e1] = e2` and `[e3,e2] = −e1`; translations commute.
pub fn rototranslation() -> LieAlgebra {
    // stored in basis order: [e1,e3] = -e2, [e2,e3] = e1
    from_int_brackets("rototranslation", 3, &[(0, 2, &[(1, -1)]), (1, 2, &[(0, 1)])])
}

/// `[e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2`.
pub fn so3() -> LieAlgebra {
    from_int_brackets("so3", 3, &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (0, 2, &[(1, -1)])])
}

/// `R³ ⋊ so(3)`, translations `t1..t3` first, then rotations `r1..r3`.
pub fn euclid3() -> LieAlgebra {
    // infinitesimal rotations about the three axes
    let rots = [
        Mat::from_i64(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
        Mat::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
        Mat::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
    ];
    let h = LinMapAlg::from_maps(3, &rots).expect("so(3) is closed");
    let sd = semidirect(&LieAlgebra::abelian(3), &h).expect("rotations are derivations of R³");
    let names = ["t1", "t2", "t3", "r1", "r2", "r3"].iter().map(|s| s.to_string()).collect();
    let g = sd.algebra;
    LieAlgebra::from_basis_brackets("euclid3", names, |i, j| g.bracket_basis(i, j).to_vec())
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n)
}

fn named(g: FiniteMetricGroup, name: &str, labels: &[&str]) -> FiniteMetricGroup {
    FiniteMetricGroup { name: name.to_string(), labels: labels.iter().map(|s| s.to_string()).collect(), ..g }
}

/// `{1, i, −1, −i}` with the discrete distance; index `k` is `i^k`.
pub fn fourpoint_discrete() -> FiniteMetricGroup {
    named(finite::cyclic(4), "fourpoint-discrete", &["1", "i", "-1", "-i"])
}

/// `Z/4` with the graph distance of the 4-cycle.
pub fn z4_cycle() -> FiniteMetricGroup {
    let g = finite::cyclic(4);
    let len = finite::word_length(&g, &[1]);
    named(finite::with_length(&g, "z4-cycle", &len), "z4-cycle", &["0", "1", "2", "3"])
}

pub fn z4_discrete() -> FiniteMetricGroup {
    named(finite::cyclic(4), "z4-discrete", &["0", "1", "2", "3"])
}

pub fn klein4_discrete() -> FiniteMetricGroup {
    named(finite::abelian_product("klein4", &[2, 2]), "klein4-discrete", &["e", "a", "b", "c"])
}

fn lie(name: &str, algebra: LieAlgebra, provenance: &str) -> CatalogEntry {
    let metric = MetricTensor::identity(algebra.dim());
    CatalogEntry {
        name: name.to_string(),
        payload: Payload::Lie { algebra: algebra.with_name(name), metric },
        provenance: provenance.to_string(),
    }
}

fn group(g: FiniteMetricGroup, provenance: &str) -> CatalogEntry {
    CatalogEntry { name: g.name.clone(), payload: Payload::Group(g), provenance: provenance.to_string() }
}

/// All built-in entries, sorted by name.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        lie("heisenberg3", heisenberg3(), "standard: three-dimensional Heisenberg algebra"),
        lie("filiform4", filiform4(), "standard: four-dimensional filiform algebra"),
        lie(
            "rototranslation",
            rototranslation(),
            "universal cover of the orientation-preserving plane isometries; brackets from the product R(z)p' + p",
        ),
        lie("so3", so3(), "standard: compact simple algebra so(3)"),
        lie("euclid3", euclid3(), "standard: Euclidean algebra R^3 x| so(3)"),
        group(fourpoint_discrete(), "fourth roots of unity with the discrete distance"),
        group(z4_cycle(), "Z/4 with the 4-cycle graph distance"),
        group(z4_discrete(), "Z/4 with the discrete distance"),
        group(klein4_discrete(), "Klein four-group with the discrete distance"),
    ];
    for n in 1..=4 {
        out.push(lie(&format!("abelian{n}"), abelian(n), "standard: abelian algebra"));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// The identity-metric catalog entries that are nilpotent Lie algebras.
pub fn nilpotent_algebras() -> Vec<LieAlgebra> {
    catalog()
        .into_iter()
        .filter_map(|e| match e.payload {
            Payload::Lie { algebra, .. } if algebra.is_nilpotent() => Some(algebra),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_document, Document};

    #[test]
    fn names_are_unique_and_valid() {
        let c = catalog();
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        names.dedup();
        assert_eq!(names.len(), c.len());
        for e in &c {
            assert!(e.is_valid(), "{}", e.name);
        }
    }

    #[test]
    fn fixtures_present() {
        let r = find("rototranslation").unwrap();
        assert_eq!((r.kind(), r.size()), ("lie-algebra", 3));
        let f = find("fourpoint-discrete").unwrap();
        assert_eq!((f.kind(), f.size()), ("finite-group", 4));
        for name in ["heisenberg3", "abelian1", "abelian4", "filiform4", "so3", "euclid3", "z4-cycle", "klein4-discrete"] {
            assert!(find(name).is_some(), "{name}");
        }
    }

    #[test]
    fn round_trip() {
        for e in catalog() {
            let text = e.to_text();
            let doc = parse_document(&text).unwrap();
            match (&e.payload, doc) {
                (Payload::Lie { algebra, metric }, Document::Lie(f)) => {
                    assert_eq!(&f.algebra, algebra);
                    assert_eq!(f.metric.as_ref(), Some(metric));
                }
                (Payload::Group(g), Document::Group(h)) => assert_eq!(g, &h),
                _ => panic!("kind changed for {}", e.name),
            }
        }
    }

    #[test]
    fn euclid3_is_semidirect() {
        let g = euclid3();
        assert_eq!(g.dim(), 6);
        assert!(g.validate().is_empty());
        assert!(!g.is_solvable());
    }
}

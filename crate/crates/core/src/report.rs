//! Check results and their canonical JSON rendering.
//!
//! The `body` of a report is deterministic: keys are sorted, rationals are
//! rendered as `p` or `p/q` and subspaces by their canonical basis rows. The
//! `digest` covers exactly the body; wall time sits outside it.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{self, CatalogEntry, Payload};
use crate::exactla::{render_rat, Mat, Rat, Subspace};
use crate::finite::{self, FiniteMetricGroup};
use crate::invariants::{
    check_nilradical_condition, derivations, isometry_algebra, killing_form, nilradical, skew_derivations,
    InvariantError, MetricTensor,
};
use crate::lie::LieAlgebra;

pub const TOOL: &str = "liework";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: Map<String, Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, details: Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "verdict": if self.passed { "pass" } else { "fail" },
            "details": Value::Object(self.details.clone()),
        })
    }

    /// One line: verdict, name and the scalar details.
    pub fn summary(&self) -> String {
        let scalars: Vec<String> = self
            .details
            .iter()
            .filter(|(_, v)| !v.is_array() && !v.is_object())
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, scalars.join(" "))
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub checks: Vec<Check>,
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(command: impl Into<String>, input: &str, checks: Vec<Check>) -> Self {
        Report { command: command.into(), input_digest: sha256_hex(input.as_bytes()), checks }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn body(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    /// Canonical serialization of the body.
    pub fn canonical_body(&self) -> String {
        serde_json::to_string(&self.body()).expect("JSON values serialize")
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.canonical_body().as_bytes())
    }

    pub fn to_json(&self, wall_time_ms: u128) -> String {
        let v = json!({
            "body": self.body(),
            "digest": self.digest(),
            "wall_time_ms": wall_time_ms as u64,
        });
        serde_json::to_string_pretty(&v).expect("JSON values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out: Vec<String> = self.checks.iter().map(Check::summary).collect();
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push(format!("{} checks, {} failed", self.checks.len(), failed));
        out.join("\n")
    }
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(render_rat(r))
}

pub fn rows_json(rows: &[Vec<Rat>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(rat_json).collect())).collect())
}

pub fn mat_json(m: &Mat) -> Value {
    rows_json(&m.row_vecs())
}

pub fn subspace_json(s: &Subspace) -> Value {
    mat_json(s.basis())
}

fn dims(series: &[Subspace]) -> Value {
    json!(series.iter().map(Subspace::dim).collect::<Vec<_>>())
}

fn failure(name: String, e: impl std::fmt::Display) -> Check {
    Check::new(name, false).with("error", e.to_string())
}

pub fn jacobi_check(prefix: &str, g: &LieAlgebra) -> Check {
    let v = g.validate();
    Check::new(format!("{prefix}/jacobi"), v.is_empty())
        .with("dim", g.dim())
        .with("violations", v.iter().map(|x| Value::String(x.to_string())).collect::<Vec<_>>())
}

pub fn series_check(prefix: &str, g: &LieAlgebra) -> Check {
    let lcs = g.lower_central_series();
    let der = g.derived_series();
    let nil = lcs.last().is_some_and(Subspace::is_zero);
    let sol = der.last().is_some_and(Subspace::is_zero);
    let ideals = lcs.iter().chain(&der).all(|s| g.is_ideal(s).unwrap_or(false));
    Check::new(format!("{prefix}/series"), ideals && (!nil || sol))
        .with("lower_central_dims", dims(&lcs))
        .with("derived_dims", dims(&der))
        .with("nilpotent", nil)
        .with("solvable", sol)
        .with("center", subspace_json(&g.center()))
}

pub fn nilradical_check(prefix: &str, g: &LieAlgebra) -> Check {
    let name = format!("{prefix}/nilradical");
    let r = match nilradical(g) {
        Ok(r) => r,
        Err(e) => return failure(name, e),
    };
    let full = Subspace::full(g.dim());
    let contained = r.nilradical.is_subspace_of(&r.radical).unwrap_or(false);
    let commutator = g
        .bracket_span(&full, &r.radical)
        .ok()
        .and_then(|c| c.is_subspace_of(&r.nilradical).ok())
        .unwrap_or(false);
    let nil_iff = g.is_nilpotent() == r.nilradical.is_full();
    let sol_iff = g.is_solvable() == r.radical.is_full();
    Check::new(name, r.is_ideal && contained && commutator && nil_iff && sol_iff)
        .with("radical_dim", r.radical.dim())
        .with("nilradical_dim", r.nilradical.dim())
        .with("nilpotency_class", r.nilpotency_class)
        .with("hull_dim", r.hull_dim)
        .with("trace_radical_dim", r.trace_radical_dim)
        .with("radical", subspace_json(&r.radical))
        .with("nilradical", subspace_json(&r.nilradical))
        .with("killing_form", mat_json(&killing_form(g)))
}

pub fn derivations_check(prefix: &str, g: &LieAlgebra, q: &MetricTensor) -> Check {
    let name = format!("{prefix}/derivations");
    let (der, skew) = match derivations(g).and_then(|d| Ok((d, skew_derivations(g, q)?))) {
        Ok(x) => x,
        Err(e) => return failure(name, e),
    };
    let inside = skew.is_subalgebra_of(&der).unwrap_or(false);
    let qm = q.matrix();
    let skew_ok = skew.basis_maps().iter().all(|d| {
        let lhs = d.transpose().mul(qm).and_then(|a| a.add(&qm.mul(d)?));
        lhs.is_ok_and(|m| m.is_zero())
    });
    Check::new(name, inside && skew_ok)
        .with("derivations_dim", der.dim())
        .with("skew_derivations_dim", skew.dim())
        .with("skew_basis", Value::Array(skew.basis_maps().iter().map(mat_json).collect()))
}

/// The nilradical condition for nilpotent bases; the refusal otherwise.
pub fn isometry_check(prefix: &str, g: &LieAlgebra, q: &MetricTensor) -> Check {
    let name = format!("{prefix}/nilrad-condition");
    match isometry_algebra(g, q) {
        Ok(iso) => match check_nilradical_condition(&iso) {
            Ok(v) => Check::new(name, v.holds)
                .with("holds", v.holds)
                .with("total_dim", iso.total.dim())
                .with("skew_derivations_dim", iso.stab.dim())
                .with("nil_dim", v.nil_found.dim())
                .with("nil_found", subspace_json(&v.nil_found)),
            Err(e) => failure(name, e),
        },
        Err(InvariantError::NotNilpotent(_)) => Check::new(format!("{prefix}/isometry-algebra-refused"), true)
            .with("refused", "base is not nilpotent"),
        Err(e) => failure(name, e),
    }
}

pub fn lie_checks(prefix: &str, g: &LieAlgebra, q: &MetricTensor) -> Vec<Check> {
    vec![
        jacobi_check(prefix, g),
        series_check(prefix, g),
        nilradical_check(prefix, g),
        derivations_check(prefix, g, q),
        isometry_check(prefix, g, q),
    ]
}

pub fn tfae_check(prefix: &str, m: &FiniteMetricGroup) -> Check {
    let r = finite::check_tfae(m);
    let orbit_stab = r.isometry_count == r.translation_count * r.stabilizer_count;
    Check::new(format!("{prefix}/tfae"), r.equivalent && orbit_stab)
        .with("a", r.a)
        .with("b", r.b)
        .with("c", r.c)
        .with("d", r.d)
        .with("equivalent", r.equivalent)
        .with("isometries", r.isometry_count)
        .with("translations", r.translation_count)
        .with("stabilizer", r.stabilizer_count)
        .with("affine", r.affine_count)
}

pub fn group_checks(prefix: &str, m: &FiniteMetricGroup) -> Vec<Check> {
    let v = m.validate();
    let valid = Check::new(format!("{prefix}/validate"), v.is_empty())
        .with("order", m.order())
        .with("violations", v.iter().map(|x| Value::String(x.to_string())).collect::<Vec<_>>());
    if !v.is_empty() {
        return vec![valid];
    }
    let g = finite::isometries(m);
    let ml = finite::left_translations(m);
    let structure = Check::new(format!("{prefix}/isometry-group"), g.is_group() && ml.is_subset_of(&g))
        .with("isometries", g.len())
        .with("automorphisms", finite::automorphisms(m).len())
        .with("abelian", m.is_abelian());
    vec![valid, structure, tfae_check(prefix, m)]
}

pub fn entry_checks(entry: &CatalogEntry) -> Vec<Check> {
    match &entry.payload {
        Payload::Lie { algebra, metric } => lie_checks(&entry.name, algebra, metric),
        Payload::Group(g) => group_checks(&entry.name, g),
    }
}

/// Fixed expected values for the built-in fixtures.
pub fn fixture_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let q3 = MetricTensor::identity(3);

    let h = catalog::heisenberg3();
    let iso = isometry_algebra(&h, &q3).and_then(|iso| Ok((check_nilradical_condition(&iso)?, iso)));
    out.push(match iso {
        Ok((v, iso)) => Check::new(
            "fixture/heisenberg3-isometry",
            iso.total.dim() == 4 && iso.stab.dim() == 1 && v.holds && v.nil_found.dim() == 3,
        )
        .with("total_dim", iso.total.dim())
        .with("skew_derivations_dim", iso.stab.dim())
        .with("nil_dim", v.nil_found.dim()),
        Err(e) => failure("fixture/heisenberg3-isometry".into(), e),
    });
    let der = derivations(&h).map(|d| d.dim());
    out.push(Check::new("fixture/heisenberg3-derivations", der == Ok(6)).with("dim", der.unwrap_or(0)));

    let r = catalog::rototranslation();
    let skew = skew_derivations(&r, &q3).map(|s| s.dim());
    let nil = nilradical(&r).map(|n| n.nilradical);
    let refused = matches!(isometry_algebra(&r, &q3), Err(InvariantError::NotNilpotent(_)));
    out.push(
        Check::new(
            "fixture/rototranslation",
            skew == Ok(1) && nil.as_ref().is_ok_and(|n| *n == Subspace::coordinate(3, [0, 1])) && refused,
        )
        .with("skew_derivations_dim", skew.unwrap_or(0))
        .with("nilradical_dim", nil.map(|n| n.dim()).unwrap_or(0))
        .with("isometry_algebra_refused", refused),
    );

    let k = killing_form(&catalog::so3());
    out.push(Check::new("fixture/so3-killing", k == Mat::identity(3).scale(&crate::exactla::rat(-2))).with("killing_form", mat_json(&k)));

    let rad = crate::invariants::radical(&catalog::euclid3());
    out.push(
        Check::new("fixture/euclid3-radical", rad.as_ref().is_ok_and(|r| *r == Subspace::coordinate(6, 0..3)))
            .with("radical_dim", rad.map(|r| r.dim()).unwrap_or(0)),
    );

    for n in 1..=4 {
        let d = derivations(&LieAlgebra::abelian(n)).map(|d| d.dim());
        out.push(Check::new(format!("fixture/abelian{n}-derivations"), d == Ok(n * n)).with("dim", d.unwrap_or(0)));
    }

    let fp = catalog::fourpoint_discrete();
    let t = finite::check_tfae(&fp);
    out.push(
        Check::new(
            "fixture/fourpoint-discrete",
            t.isometry_count == 24 && t.affine_count == 8 && !t.a && !t.b && !t.c && !t.d && t.equivalent,
        )
        .with("isometries", t.isometry_count)
        .with("affine", t.affine_count)
        .with("equivalent", t.equivalent),
    );

    let z = finite::check_tfae(&catalog::z4_cycle());
    out.push(
        Check::new("fixture/z4-cycle", z.isometry_count == 8 && z.a && z.b && z.c && z.d)
            .with("isometries", z.isometry_count)
            .with("stabilizer", z.stabilizer_count),
    );
    out
}

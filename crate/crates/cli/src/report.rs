use std::fmt::Write;

use projflat_core::connection::{curvature, Connection};
use projflat_core::decide::{Decision, FlatnessVerdict};
use projflat_core::matrix::RatMatrix;
use projflat_core::rational::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksReport {
    pub autoparallel: bool,
    pub homomorphism: bool,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub field: String,
    pub n: usize,
    pub subset: String,
    pub structure: String,
    pub dim: usize,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks: ChecksReport,
    pub diagram: String,
    /// Carrier basis; the witness is indexed by it.
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensors: Option<TensorDump>,
}

/// Nonzero coefficients of `∇_X Y` as `(element, coefficient)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NablaEntry {
    pub x: String,
    pub y: String,
    pub value: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDump {
    pub basis: Vec<String>,
    pub nabla: Vec<NablaEntry>,
    pub torsion_free: bool,
    pub ricci: Vec<Vec<String>>,
    pub p: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<String>>>,
    pub affinely_flat: bool,
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn grid(m: &RatMatrix, dim: usize) -> Vec<Vec<String>> {
    (0..dim).map(|i| (0..dim).map(|j| m.get(i, j).to_string()).collect()).collect()
}

pub fn tensor_dump(conn: &Connection) -> TensorDump {
    let sub = conn.carrier();
    let names = sub.names();
    let m = conn.dim();
    let mut nabla = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let v = conn.nabla(a, b);
            if !v.is_zero() {
                let value = v.iter().map(|(k, c)| (names[k].clone(), c.to_string())).collect();
                nabla.push(NablaEntry { x: names[a].clone(), y: names[b].clone(), value });
            }
        }
    }
    let pack = curvature(conn);
    TensorDump {
        basis: names,
        nabla,
        torsion_free: conn.is_torsion_free(),
        ricci: grid(&pack.ric, m),
        p: grid(&pack.p, m),
        gamma: pack.gamma.as_ref().map(|g| grid(g, m)),
        affinely_flat: pack.is_flat(),
    }
}

impl VerdictReport {
    pub fn from_decision(d: &Decision, dump: bool) -> Self {
        let (witness, reason) = match &d.verdict {
            FlatnessVerdict::Flat { witness, .. } => (Some(rationals(witness)), None),
            FlatnessVerdict::Unknown { reason } => (None, Some(reason.clone())),
            FlatnessVerdict::NotFlat { .. } => (None, None),
        };
        let tensors = dump.then(|| {
            let conn = projflat_core::connection::induced_connection(
                &projflat_core::connection::canonical_connection(d.carrier.model()),
                &d.carrier,
            )
            .expect("decided carriers are autoparallel");
            tensor_dump(&conn)
        });
        VerdictReport {
            field: d.field.tag().to_string(),
            n: d.n,
            subset: d.subset.label(),
            structure: d.structure.name().to_string(),
            dim: d.dim(),
            verdict: d.verdict.tag().to_string(),
            witness,
            certificate: d.certificate_lines(),
            reason,
            checks: ChecksReport {
                autoparallel: d.checks.autoparallel,
                homomorphism: d.checks.homomorphism,
                oracle: d.checks.oracle.name().to_string(),
            },
            diagram: d.diagram(),
            basis: d.carrier.names(),
            tensors,
        }
    }

    pub fn title(&self) -> String {
        let k = if self.field == "h" { "H" } else { "R" };
        format!("{} of sl({},{}) for {{{}}}", self.structure, self.n, k, self.subset)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "{}", self.title());
        let _ = writeln!(out, "  diagram   {}", self.diagram);
        let _ = writeln!(out, "  dimension {}", self.dim);
        let _ = writeln!(out, "  verdict   {}", self.verdict);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  witness");
            for (name, value) in self.basis.iter().zip(w) {
                if value != "0" {
                    let _ = writeln!(out, "    xi({name}) = {value}");
                }
            }
            if w.iter().all(|v| v == "0") {
                let _ = writeln!(out, "    xi = 0");
            }
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(out, "  certificate");
            for line in c {
                let _ = writeln!(out, "    {line}");
            }
        }
        if let Some(r) = &self.reason {
            let _ = writeln!(out, "  reason    {r}");
        }
        let _ = writeln!(
            out,
            "  checks    autoparallel={} homomorphism={} oracle={}",
            yes(self.checks.autoparallel),
            yes(self.checks.homomorphism),
            self.checks.oracle
        );
        if let Some(t) = &self.tensors {
            out.push_str(&t.render_text());
        }
        out
    }
}

impl TensorDump {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "  basis     {}", self.basis.join(" "));
        let _ = writeln!(out, "  torsion-free {}  affinely flat {}", self.torsion_free, self.affinely_flat);
        let _ = writeln!(out, "  connection");
        for e in &self.nabla {
            let terms: Vec<String> = e.value.iter().map(|(k, c)| format!("{c} {k}")).collect();
            let _ = writeln!(out, "    nabla({}, {}) = {}", e.x, e.y, terms.join(" + "));
        }
        let table = |out: &mut String, name: &str, g: &[Vec<String>]| {
            let _ = writeln!(out, "  {name}");
            for row in g {
                let _ = writeln!(out, "    {}", row.join(" "));
            }
        };
        table(&mut out, "ricci", &self.ricci);
        table(&mut out, "p", &self.p);
        if let Some(g) = &self.gamma {
            table(&mut out, "gamma", g);
        }
        out
    }
}

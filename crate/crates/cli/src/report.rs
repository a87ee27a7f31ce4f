//! Report documents. The machine format is one JSON object
//! `{"schema": "atomlab.report/1", "command": ..., "body": {<kind>: {...}}}`;
//! field order is fixed by the struct definitions below and all lists are
//! deterministic, so rendering a parsed document reproduces it byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use atomlab_core::search::{Composition, FindOutcome, Impossibility, SweepResult, SweepStatus};
use atomlab_core::{
    AtomInventory, DivisibilityInvariants, Field, PropertyCheck, RingSpec, StructureReport,
};

pub const SCHEMA: &str = "atomlab.report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub command: String,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Check(CheckDoc),
    Atoms(AtomsDoc),
    Structure(StructureDoc),
    Verify(VerifyDoc),
    Sweep(SweepDoc),
    Find(FindDoc),
    Compose(ComposeDoc),
}

impl Document {
    pub fn new(command: &str, body: Body) -> Document {
        Document {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Document> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        match &self.body {
            Body::Check(d) => d.text(),
            Body::Atoms(d) => d.text(),
            Body::Structure(d) => d.text(),
            Body::Verify(d) => d.text(),
            Body::Sweep(d) => d.text(),
            Body::Find(d) => d.text(),
            Body::Compose(d) => d.text(),
        }
    }
}

/// The ring a report is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub p: u64,
    pub m: u32,
    #[serde(rename = "D")]
    pub d: u32,
    pub n: usize,
    pub residue_field_size: u64,
    pub field_order: u64,
    /// K-bases of `V_1, ..., V_{n-1}` as polynomials in y.
    pub v: Vec<Vec<String>>,
}

impl SpecDoc {
    pub fn new(spec: &RingSpec) -> SpecDoc {
        let t = spec.tower();
        SpecDoc {
            p: t.p() as u64,
            m: t.m(),
            d: t.m() * t.e(),
            n: spec.n(),
            residue_field_size: spec.q(),
            field_order: t.order() as u64,
            v: spec.v().iter().map(|s| elems(t.field(), s.basis())).collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = format!(
            "ring: p={} m={} D={} n={} |K|={} |F|={}\n",
            self.p, self.m, self.d, self.n, self.residue_field_size, self.field_order
        );
        for (i, b) in self.v.iter().enumerate() {
            let _ = writeln!(s, "  V{} = span{{{}}}", i + 1, b.join(", "));
        }
        s
    }
}

fn elems(f: &Field, xs: &[u32]) -> Vec<String> {
    xs.iter().map(|&x| f.format(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub valid: bool,
    pub spec: SpecDoc,
    pub unit_group_order: String,
}

impl CheckDoc {
    pub fn new(spec: &RingSpec) -> CheckDoc {
        CheckDoc {
            valid: true,
            spec: SpecDoc::new(spec),
            unit_group_order: spec.unit_group_order().to_string(),
        }
    }

    fn text(&self) -> String {
        format!(
            "valid\n{}unit windows: {}\n",
            self.spec.text(),
            self.unit_group_order
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCount {
    pub layer: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDoc {
    pub order: usize,
    pub layer: usize,
    /// The normal-form window as polynomials in y.
    pub window: Vec<String>,
    /// The same window as integer element codes.
    pub codes: Vec<u32>,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomsDoc {
    pub spec: SpecDoc,
    pub total: usize,
    pub layers: Vec<LayerCount>,
    pub atoms: Vec<AtomDoc>,
    /// Whether the brute-force oracle agreed, when it was run.
    pub oracle_agrees: Option<bool>,
}

impl AtomsDoc {
    pub fn new(spec: &RingSpec, inv: &AtomInventory, oracle_agrees: Option<bool>) -> AtomsDoc {
        let f = spec.field();
        AtomsDoc {
            spec: SpecDoc::new(spec),
            total: inv.total(),
            layers: inv
                .layer_counts()
                .into_iter()
                .map(|(layer, count)| LayerCount { layer, count })
                .collect(),
            atoms: inv
                .atoms()
                .iter()
                .map(|a| AtomDoc {
                    order: a.form.order,
                    layer: a.layer,
                    window: elems(f, &a.form.window),
                    codes: a.form.window.clone(),
                    element: a.form.format(f),
                })
                .collect(),
            oracle_agrees,
        }
    }

    pub fn summary(&self) -> String {
        let mut parts = vec![format!("total={}", self.total)];
        parts.extend(self.layers.iter().map(|l| format!("layer{}={}", l.layer, l.count)));
        parts.join(", ")
    }

    fn text(&self) -> String {
        let mut s = self.spec.text();
        let _ = writeln!(s, "{}", self.summary());
        if let Some(ok) = self.oracle_agrees {
            let _ = writeln!(s, "oracle: {}", if ok { "agrees" } else { "DISAGREES" });
        }
        let _ = writeln!(s, "{:>5}  {:>5}  element", "order", "layer");
        for a in &self.atoms {
            let _ = writeln!(s, "{:>5}  {:>5}  {}", a.order, a.layer, a.element);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub k: usize,
    pub universal: bool,
    pub weakly_universal: bool,
    pub graded_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityDoc {
    pub structure_known: bool,
    pub rank: Option<u32>,
    pub units_mod_k: Option<u64>,
    pub f_mod_w: Option<u64>,
    /// Order of the torsion part, as a decimal string.
    pub cardinality: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub spec: SpecDoc,
    pub dim_m_over_m2: usize,
    pub residue_field_size: u64,
    pub v_order: u64,
    pub v_transversal: Vec<Vec<String>>,
    /// V-orbits as indices into the atom list of the `atoms` report.
    pub v_orbits: Vec<Vec<usize>>,
    pub least_universal: usize,
    pub least_weakly_universal: usize,
    pub m_maximal_in_multiplier: bool,
    pub m_principal_in_multiplier: bool,
    /// K-bases of `U_0, ..., U_{n-1}`.
    pub multiplier: Vec<Vec<String>>,
    pub profile: Vec<ProfileDoc>,
    pub divisibility: DivisibilityDoc,
    pub dvr: bool,
}

impl StructureDoc {
    pub fn new(spec: &RingSpec, rep: &StructureReport) -> StructureDoc {
        let f = spec.field();
        let divisibility = match rep.divisibility {
            DivisibilityInvariants::Structured {
                rank,
                units_mod_k,
                f_mod_w,
            } => DivisibilityDoc {
                structure_known: true,
                rank: Some(rank),
                units_mod_k: Some(units_mod_k),
                f_mod_w: Some(f_mod_w),
                cardinality: None,
            },
            DivisibilityInvariants::CardinalityOnly { cardinality } => DivisibilityDoc {
                structure_known: false,
                rank: None,
                units_mod_k: None,
                f_mod_w: None,
                cardinality: Some(cardinality.to_string()),
            },
        };
        StructureDoc {
            spec: SpecDoc::new(spec),
            dim_m_over_m2: rep.dim_m_over_m2,
            residue_field_size: rep.residue_field_size,
            v_order: rep.v_order,
            v_transversal: rep.v_transversal.iter().map(|w| elems(f, w)).collect(),
            v_orbits: rep.v_orbits.clone(),
            least_universal: rep.least_universal,
            least_weakly_universal: rep.least_weakly_universal,
            m_maximal_in_multiplier: rep.m_maximal_in_multiplier,
            m_principal_in_multiplier: rep.m_principal_in_multiplier,
            multiplier: rep.multiplier.iter().map(|u| elems(f, u.basis())).collect(),
            profile: rep
                .profile
                .iter()
                .map(|p| ProfileDoc {
                    k: p.k,
                    universal: p.universal,
                    weakly_universal: p.weakly_universal,
                    graded_dim: p.graded_dim,
                })
                .collect(),
            divisibility,
            dvr: rep.dvr,
        }
    }

    fn text(&self) -> String {
        let mut s = self.spec.text();
        let _ = writeln!(s, "dim M/M^2: {}", self.dim_m_over_m2);
        let _ = writeln!(s, "|K|: {}", self.residue_field_size);
        let _ = writeln!(s, "|V|: {}", self.v_order);
        let tr: Vec<String> = self
            .v_transversal
            .iter()
            .map(|w| format!("({})", w.join(", ")))
            .collect();
        let _ = writeln!(s, "V transversal: {}", tr.join(" "));
        let _ = writeln!(s, "V orbits: {}", self.v_orbits.len());
        let _ = writeln!(s, "least universal power: {}", self.least_universal);
        let _ = writeln!(s, "least weakly universal power: {}", self.least_weakly_universal);
        let _ = writeln!(s, "M maximal in [M:M]: {}", self.m_maximal_in_multiplier);
        let _ = writeln!(s, "M principal in [M:M]: {}", self.m_principal_in_multiplier);
        for (j, u) in self.multiplier.iter().enumerate() {
            let _ = writeln!(s, "  U{j} = span{{{}}}", u.join(", "));
        }
        let _ = writeln!(s, "{:>3}  {:>9}  {:>15}  {:>10}", "k", "universal", "weakly", "graded_dim");
        for p in &self.profile {
            let _ = writeln!(
                s,
                "{:>3}  {:>9}  {:>15}  {:>10}",
                p.k, p.universal, p.weakly_universal, p.graded_dim
            );
        }
        let d = &self.divisibility;
        if d.structure_known {
            let _ = writeln!(
                s,
                "G(R) = Z + (order {} torsion from F*/K*) + (order {} from F/W)",
                d.units_mod_k.unwrap_or(0),
                d.f_mod_w.unwrap_or(0)
            );
        } else {
            let _ = writeln!(
                s,
                "G(R): torsion cardinality {} (structure unknown)",
                d.cardinality.as_deref().unwrap_or("?")
            );
        }
        let _ = writeln!(s, "DVR: {}", self.dvr);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub spec: SpecDoc,
    pub passed: bool,
    pub layer1: usize,
    pub in_m2: usize,
    pub total: usize,
    pub checks: Vec<CheckEntry>,
}

impl VerifyDoc {
    pub fn new(spec: &RingSpec, inv: &AtomInventory, checks: &[PropertyCheck]) -> VerifyDoc {
        VerifyDoc {
            spec: SpecDoc::new(spec),
            passed: checks.iter().all(|c| c.passed),
            layer1: inv.layer_count(1),
            in_m2: inv.in_m2(),
            total: inv.total(),
            checks: checks
                .iter()
                .map(|c| CheckEntry {
                    name: c.name.to_string(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = self.spec.text();
        let _ = writeln!(
            s,
            "{} counts ({}, {}, {})",
            if self.passed { "pass" } else { "FAIL" },
            self.layer1,
            self.in_m2,
            self.total
        );
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  {} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsDoc {
    pub atoms: u64,
    pub in_m2: u64,
    pub least_universal: usize,
    pub v_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntryDoc {
    pub p: u64,
    pub m: u32,
    pub k: u32,
    pub l: u32,
    pub predicted: CountsDoc,
    pub enumerated: Option<CountsDoc>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub family: u32,
    pub enumerate: bool,
    pub entries: Vec<SweepEntryDoc>,
    pub achievable: Vec<u64>,
    pub mismatches: usize,
}

impl SweepDoc {
    pub fn new(family: u32, enumerate: bool, r: &SweepResult) -> SweepDoc {
        SweepDoc {
            family,
            enumerate,
            entries: r
                .entries
                .iter()
                .map(|e| SweepEntryDoc {
                    p: e.point.p,
                    m: e.point.m,
                    k: e.point.k,
                    l: e.point.l,
                    predicted: CountsDoc {
                        atoms: e.predicted.atoms,
                        in_m2: e.predicted.in_m2,
                        least_universal: e.predicted.least_universal,
                        v_order: e.predicted.v_order,
                    },
                    enumerated: e.enumerated.map(|x| CountsDoc {
                        atoms: x.atoms,
                        in_m2: x.in_m2,
                        least_universal: x.least_universal,
                        v_order: x.v_order,
                    }),
                    status: match &e.status {
                        SweepStatus::Predicted => "predicted".to_string(),
                        SweepStatus::Agrees => "agrees".to_string(),
                        SweepStatus::Mismatch => "MISMATCH".to_string(),
                        SweepStatus::CapExceeded(msg) => format!("predicted only: {msg}"),
                    },
                })
                .collect(),
            achievable: r.achievable().into_iter().collect(),
            mismatches: r.mismatches(),
        }
    }

    fn text(&self) -> String {
        let mut s = format!("family {}\n", self.family);
        let _ = writeln!(
            s,
            "{:>4} {:>3} {:>3} {:>3}  {:>8} {:>6} {:>4} {:>6}  status",
            "p", "m", "k", "l", "atoms", "in_M2", "M^k", "|V|"
        );
        for e in &self.entries {
            let c = &e.predicted;
            let _ = writeln!(
                s,
                "{:>4} {:>3} {:>3} {:>3}  {:>8} {:>6} {:>4} {:>6}  {}",
                e.p, e.m, e.k, e.l, c.atoms, c.in_m2, c.least_universal, c.v_order, e.status
            );
        }
        let a: Vec<String> = self.achievable.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "achievable: {}", a.join(", "));
        let _ = writeln!(s, "mismatches: {}", self.mismatches);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub family: u32,
    pub p: u64,
    pub m: u32,
    pub k: u32,
    pub l: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDoc {
    pub spec: SpecDoc,
    pub in_m2: u64,
    pub least_universal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindDoc {
    pub count: u64,
    /// `found`, `impossible` or `not found within bounds`.
    pub verdict: String,
    pub reason: Option<String>,
    pub points: Vec<PointDoc>,
    pub graded: Vec<GradedDoc>,
}

impl FindDoc {
    pub fn new(count: u64, outcome: &FindOutcome) -> FindDoc {
        let (verdict, reason, points, graded) = match outcome {
            FindOutcome::Found { points, graded } => (
                "found",
                None,
                points
                    .iter()
                    .map(|p| PointDoc {
                        family: p.family,
                        p: p.p,
                        m: p.m,
                        k: p.k,
                        l: p.l,
                    })
                    .collect(),
                graded
                    .iter()
                    .map(|h| GradedDoc {
                        spec: SpecDoc::new(&h.spec),
                        in_m2: h.in_m2,
                        least_universal: h.least_universal,
                    })
                    .collect(),
            ),
            FindOutcome::Impossible(why) => (
                "impossible",
                Some(match why {
                    Impossibility::Two => {
                        "no local domain has exactly two nonassociate atoms".to_string()
                    }
                    Impossibility::PrimeWrongForm => format!(
                        "{count} is prime, so M^2 would be universal, but {count} is not (q^k-1)/(q-1)"
                    ),
                }),
                Vec::new(),
                Vec::new(),
            ),
            FindOutcome::NotFoundWithinBounds => (
                "not found within bounds",
                Some("absence within the searched bounds says nothing about existence".to_string()),
                Vec::new(),
                Vec::new(),
            ),
        };
        FindDoc {
            count,
            verdict: verdict.to_string(),
            reason,
            points,
            graded,
        }
    }

    fn text(&self) -> String {
        let mut s = format!("count {}: {}\n", self.count, self.verdict);
        if let Some(r) = &self.reason {
            let _ = writeln!(s, "  {r}");
        }
        for p in &self.points {
            let _ = writeln!(
                s,
                "  family {} p={} m={} k={} l={}",
                p.family, p.p, p.m, p.k, p.l
            );
        }
        for g in &self.graded {
            let v: Vec<String> = g
                .spec
                .v
                .iter()
                .map(|b| format!("span{{{}}}", b.join(", ")))
                .collect();
            let _ = writeln!(
                s,
                "  graded p={} m={} D={} n={} V=[{}] in_M2={} least_universal={}",
                g.spec.p,
                g.spec.m,
                g.spec.d,
                g.spec.n,
                v.join(", "),
                g.in_m2,
                g.least_universal
            );
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeDoc {
    pub count: u64,
    /// Number of decompositions, as a decimal string.
    pub total: String,
    pub decompositions: Vec<Vec<u64>>,
    pub truncated: bool,
}

impl ComposeDoc {
    pub fn new(count: u64, c: &Composition) -> ComposeDoc {
        ComposeDoc {
            count,
            total: c.count.to_string(),
            decompositions: c.decompositions.clone(),
            truncated: c.truncated,
        }
    }

    fn text(&self) -> String {
        let mut s = format!("{} = sum of (p+1) over distinct primes: {} ways\n", self.count, self.total);
        for d in &self.decompositions {
            let ps: Vec<String> = d.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "  ({})", ps.join(", "));
        }
        if self.truncated {
            let _ = writeln!(s, "  ... (list truncated)");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use atomlab_core::{enumerate_atoms, spec_validate, structure_report, tower_make, Subspace};
    use std::sync::Arc;

    fn eight() -> Arc<RingSpec> {
        let t = Arc::new(tower_make(2, 1, 3).unwrap());
        spec_validate(&t, 2, vec![Subspace::span(&t, &[1, 2]).unwrap()]).unwrap()
    }

    #[test]
    fn atoms_summary_and_round_trip() {
        let r = eight();
        let inv = enumerate_atoms(&r).unwrap();
        let doc = Document::new("atoms", Body::Atoms(AtomsDoc::new(&r, &inv, None)));
        assert!(doc.to_text().contains("total=8, layer1=6, layer2=2"));
        let json = doc.to_json();
        let back = Document::from_json(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), json);
        assert!(json.contains("\"schema\": \"atomlab.report/1\""));
    }

    #[test]
    fn structure_round_trip() {
        let r = eight();
        let inv = enumerate_atoms(&r).unwrap();
        let rep = structure_report(&r, &inv).unwrap();
        let doc = Document::new("structure", Body::Structure(StructureDoc::new(&r, &rep)));
        let json = doc.to_json();
        assert_eq!(Document::from_json(&json).unwrap().to_json(), json);
        let text = doc.to_text();
        assert!(text.contains("|V|: 2"));
        assert!(text.contains("least universal power: 4"));
    }
}

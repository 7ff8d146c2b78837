//! Flat `key=value` records, one per line.

use std::fmt;

use specert_core::certify::CertOutcome;
use specert_core::families::FamilyWitness;
use specert_core::oracles::{OracleVerdict, Witness};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("field {0:?} has no '='")]
    MissingEquals(String),
    #[error("empty key in field {0:?}")]
    EmptyKey(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record {
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    /// Appends a field. Whitespace in the value is replaced by `_`.
    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        let value: String = value.to_string().chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.push(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(line: &str) -> Result<Record, RecordError> {
        let mut rec = Record::new();
        for field in line.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| RecordError::MissingEquals(field.to_string()))?;
            if k.is_empty() {
                return Err(RecordError::EmptyKey(field.to_string()));
            }
            rec.fields.push((k.to_string(), v.to_string()));
        }
        Ok(rec)
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

pub fn join_list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn join_pairs(items: &[(usize, usize)]) -> String {
    items.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(",")
}

/// `core|join`, each a comma-separated vertex list.
pub fn partition_field(w: &FamilyWitness) -> String {
    format!("{}|{}", join_list(&w.core_part), join_list(&w.join_part))
}

pub fn witness_fields(rec: &mut Record, w: &FamilyWitness) {
    rec.push("witness_family", w.family.name());
    rec.push("witness_partition", partition_field(w));
    rec.push("witness_r", w.r);
    if let Some((xs, ys)) = &w.sides {
        rec.push("witness_m", w.m);
        rec.push("witness_t", w.t);
        rec.push("witness_sides", format!("{}|{}", join_list(xs), join_list(ys)));
    }
}

pub fn cert_record(out: &CertOutcome) -> Record {
    let mut rec = Record::new();
    rec.push("status", out.status.name());
    match &out.mu {
        Some(mu) => {
            rec.push("mu", format!("{:.12}", mu.value));
            rec.push("mu_upper", format!("{:.12}", mu.upper));
            rec.push("mu_residual", format!("{:.3e}", mu.residual));
        }
        None => {
            rec.push("mu", "NA");
        }
    }
    rec.push("radicand", out.radicand);
    rec.push("theorem", out.params.theorem.name());
    rec.push("k", out.params.k);
    rec.push("s_or_beta", out.params.param);
    match &out.witness {
        Some(w) => witness_fields(&mut rec, w),
        None => {
            rec.push("witness_family", "none");
        }
    }
    let failed: Vec<&str> = out.report.failures().map(|c| c.name).collect();
    if !failed.is_empty() {
        rec.push("unmet", failed.join(";"));
    }
    rec
}

pub fn witness_value(w: &Witness) -> (&'static str, String) {
    match w {
        Witness::None => ("none", String::new()),
        Witness::TooFewVertices => ("too_few_vertices", String::new()),
        Witness::VertexCut(x) => ("vertex_cut", join_list(x)),
        Witness::EdgeCut(e) => ("edge_cut", join_pairs(e)),
        Witness::Matching { edges, unmatched } => ("matching", format!("{}|{}", join_pairs(edges), join_list(unmatched))),
        Witness::PathCover(paths) => {
            ("path_cover", paths.iter().map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")).collect::<Vec<_>>().join(","))
        }
        Witness::HamiltonianCycle(c) => ("hamiltonian_cycle", join_list(c)),
        Witness::DeletionSet(x) => ("deletion_set", join_list(x)),
        Witness::PathSystem(e) => ("path_system", join_pairs(e)),
    }
}

pub fn oracle_record(property: &str, param: usize, verdict: &OracleVerdict) -> Record {
    let (kind, value) = witness_value(&verdict.witness);
    let mut rec = Record::new().with("property", property).with("param", param).with("holds", verdict.holds);
    rec.push("witness", kind);
    if !value.is_empty() {
        rec.push("witness_value", value);
    }
    rec
}

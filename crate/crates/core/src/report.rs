//! Per-identity verification records and their JSON / text rendering.

use serde::{Serialize, Serializer};

use crate::series::{coeff_fraction_string, Coeff, FracExp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

fn ser_coeff<S: Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&coeff_fraction_string(c))
}

/// The lowest exponent at which the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub exponent: FracExp,
    #[serde(serialize_with = "ser_coeff")]
    pub lhs_coeff: Coeff,
    #[serde(serialize_with = "ser_coeff")]
    pub rhs_coeff: Coeff,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub lhs: String,
    pub rhs: String,
    pub order: FracExp,
    pub status: Status,
    /// Present exactly when `status` is `Failed`.
    pub first_discrepancy: Option<Discrepancy>,
    pub runtime_ms: u64,
    /// Human-readable cause when `status` is `Error`; not part of the JSON schema.
    #[serde(skip)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Renders reports; the output is UTF-8 and newline-terminated.
pub fn emit_report(reports: &[IdentityReport], format: ReportFormat) -> Vec<u8> {
    let mut out = match format {
        ReportFormat::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        ReportFormat::Text => text_table(reports),
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out.into_bytes()
}

fn detail(r: &IdentityReport) -> String {
    match (&r.first_discrepancy, &r.error) {
        (Some(d), _) => format!(
            "q^{}: lhs {} rhs {}",
            d.exponent,
            coeff_fraction_string(&d.lhs_coeff),
            coeff_fraction_string(&d.rhs_coeff)
        ),
        (None, Some(e)) => e.clone(),
        (None, None) => String::new(),
    }
}

fn text_table(reports: &[IdentityReport]) -> String {
    let header = ["identity", "status", "order", "ms", "detail"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.identity_id.clone(),
                r.status.as_str().to_string(),
                r.order.to_string(),
                r.runtime_ms.to_string(),
                detail(r),
            ]
        })
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: [&str; 5]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(width).enumerate() {
            if i == 4 {
                s.push_str(cell);
            } else if i == 3 {
                s.push_str(&format!("{cell:>w$}  "));
            } else {
                s.push_str(&format!("{cell:<w$}  "));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in &rows {
        out.push_str(&line([&row[0], &row[1], &row[2], &row[3], &row[4]]));
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    out.push_str(&format!(
        "{} verified, {} failed, {} error\n",
        count(Status::Verified),
        count(Status::Failed),
        count(Status::Error)
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff;

    fn report(status: Status) -> IdentityReport {
        IdentityReport {
            identity_id: "kp-1".into(),
            lhs: "f(1, 2, 1; q, q)".into(),
            rhs: "Jp(1)^2".into(),
            order: FracExp::int(60),
            status,
            first_discrepancy: (status == Status::Failed).then(|| Discrepancy {
                exponent: FracExp::new(7, 2),
                lhs_coeff: coeff(3),
                rhs_coeff: coeff(2),
            }),
            runtime_ms: 4,
            error: None,
        }
    }

    fn json(reports: &[IdentityReport]) -> serde_json::Value {
        serde_json::from_slice(&emit_report(reports, ReportFormat::Json)).unwrap()
    }

    #[test]
    fn verified_has_null_discrepancy() {
        let v = json(&[report(Status::Verified)]);
        let o = &v[0];
        assert_eq!(o["status"], "verified");
        assert!(o["first_discrepancy"].is_null());
        assert_eq!(o["order"], "60/1");
        let mut keys: Vec<_> = o.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["first_discrepancy", "identity_id", "lhs", "order", "rhs", "runtime_ms", "status"]
        );
    }

    #[test]
    fn failed_has_discrepancy() {
        let v = json(&[report(Status::Failed)]);
        let d = &v[0]["first_discrepancy"];
        assert_eq!(d["exponent"], "7/2");
        assert_eq!(d["lhs_coeff"], "3/1");
        assert_eq!(d["rhs_coeff"], "2/1");
    }

    #[test]
    fn empty_list() {
        assert_eq!(emit_report(&[], ReportFormat::Json), b"[]\n");
    }

    #[test]
    fn text_is_aligned() {
        let t = String::from_utf8(emit_report(
            &[report(Status::Verified), report(Status::Failed)],
            ReportFormat::Text,
        ))
        .unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 4);
        let col = lines[0].find("status").unwrap();
        assert!(lines[1..3].iter().all(|l| l[col..].starts_with("verified") || l[col..].starts_with("failed")));
        assert!(lines[2].ends_with("q^7/2: lhs 3/1 rhs 2/1"));
        assert_eq!(lines[3], "1 verified, 1 failed, 0 error");
    }
}

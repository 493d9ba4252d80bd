use std::path::Path;

use crate::error::HarnessError;

/// One verified claim: what was predicted, what was measured, and
/// whether the measurement satisfied the claim's rule. `detail` states
/// the rule in words, since some claims are two-sided matches and some
/// are one-sided bounds.
#[derive(Debug, Clone)]
pub struct ClaimRecord {
    pub id: String,
    pub claim: String,
    pub predicted: f64,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub records: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    /// Human-readable table. Deterministic: no clocks, no paths.
    pub fn render_table(&self, header: &str) -> String {
        // Fixed point for ordinary magnitudes, scientific for the rest,
        // so a 1e-7 tail never prints as 0.000000.
        fn cell(v: f64) -> String {
            let v = if v == 0.0 { 0.0 } else { v };
            if v == 0.0 || (v.abs() >= 1e-3 && v.abs() < 1e7) {
                format!("{v:>14.6}")
            } else {
                format!("{v:>14.6e}")
            }
        }
        let mut out = String::new();
        out.push_str(header);
        out.push('\n');
        out.push_str(&format!(
            "{:<26} {:>14} {:>14} {:>10}  {}\n",
            "claim", "predicted", "measured", "tolerance", "result"
        ));
        for r in &self.records {
            out.push_str(&format!(
                "{:<26} {} {} {:>10.1e}  {}\n",
                r.id,
                cell(r.predicted),
                cell(r.measured),
                r.tolerance,
                if r.pass { "PASS" } else { "FAIL" }
            ));
        }
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!("{}: {}. {}\n", r.id, r.claim, r.detail));
        }
        let passed = self.records.iter().filter(|r| r.pass).count();
        out.push_str(&format!("\n{} of {} claims pass\n", passed, self.records.len()));
        out
    }

    /// Machine-readable records. Full double precision; text fields are
    /// kept comma-free so the format needs no quoting.
    pub fn to_records_csv(&self) -> String {
        let mut out = String::from("id,claim,predicted,measured,tolerance,pass\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{:.16e},{:.16e},{:.16e},{}\n",
                r.id,
                r.claim.replace(',', ";"),
                r.predicted,
                r.measured,
                r.tolerance,
                r.pass
            ));
        }
        out
    }

    /// Write `report.txt` and `records.csv` into `dir`.
    pub fn write(&self, dir: &Path, header: &str) -> Result<(), HarnessError> {
        std::fs::write(dir.join("report.txt"), self.render_table(header))?;
        std::fs::write(dir.join("records.csv"), self.to_records_csv())?;
        Ok(())
    }
}

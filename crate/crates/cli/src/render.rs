//! Text and CSV renderings of the library's report types.
//!
//! JSON output serializes the report structs as-is; the functions here cover
//! the human-readable `--format text` views and the plottable CSV curves.

use hypostab_core::decay::DecayFit;
use hypostab_core::hypo::HcReport;
use hypostab_core::stab::{
    LasmReport, StrongStabilityVerdict, SweepPoint, SweepResult, VerdictStatus,
};
use hypostab_core::suite::SuiteRow;
use hypostab_core::HpFloat;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn hc_report_text(label: &str, report: &HcReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("matrix                 {label} ({0}x{0})\n", report.n));
    out.push_str(&format!(
        "semi-dissipative       {}\n",
        yes_no(report.semi_dissipative)
    ));
    match report.hc_index {
        Some(m) => out.push_str(&format!("hc index               {m}\n")),
        None => out.push_str("hc index               none\n"),
    }
    out.push_str(&format!("rank of hermitian part {}\n", report.rank_lh));
    if let (Some(lo), Some(hi)) = (&report.lower_bound, report.upper_bound) {
        out.push_str(&format!("index bounds           {lo} <= m <= {hi}\n"));
    }
    out.push_str(&format!(
        "asymptotically stable  {}{}\n",
        yes_no(report.asymptotically_stable),
        if report.stability_marginal {
            " (marginal spectrum)"
        } else {
            ""
        }
    ));
    for record in &report.tm_chain {
        out.push_str(&format!(
            "T_{:<2}                   {}\n",
            record.m,
            record.definiteness.label()
        ));
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

pub fn sweep_text(scheme: &str, matrix: &str, res: &SweepResult) -> String {
    format!(
        "max excess {} at tau = {} ({} vs {}, {} grid points over (0, {}], {} bits)\n",
        res.max_excess.to_decimal(3),
        res.argmax_tau.to_decimal(3),
        scheme,
        matrix,
        res.grid_points,
        res.epsilon.to_decimal(3),
        res.precision_bits,
    )
}

pub fn sweep_csv(curve: &[SweepPoint]) -> String {
    let mut out = String::from("tau,norm,excess\n");
    for point in curve {
        out.push_str(&format!(
            "{},{},{}\n",
            point.tau.to_decimal(17),
            point.norm.to_decimal(50),
            point.excess.to_decimal(17),
        ));
    }
    out
}

pub fn decay_text(label: &str, fit: &DecayFit) -> String {
    format!(
        "{}: hc index {} predicts decay exponent {}; fitted a = {} with c = {} \
         over {} samples in [2^{}, 2^{}]\n",
        label,
        fit.hc_index,
        fit.a_predicted,
        fit.a_est.to_decimal(5),
        fit.c_est.to_decimal(3),
        fit.samples.len(),
        fit.fit_window.0.log2_f64().round() as i64,
        fit.fit_window.1.log2_f64().round() as i64,
    )
}

pub fn decay_csv(samples: &[(HpFloat, HpFloat)]) -> String {
    let mut out = String::from("t,norm\n");
    for (t, norm) in samples {
        out.push_str(&format!(
            "{},{}\n",
            t.to_decimal(17),
            norm.to_decimal(50)
        ));
    }
    out
}

pub fn verdict_text(scheme: &str, labels: &[String], v: &StrongStabilityVerdict) -> String {
    match v.status {
        VerdictStatus::CounterexampleFound => {
            let w = v
                .witness
                .as_ref()
                .expect("a counterexample always carries its witness");
            format!(
                "{}: counterexample found — {} expands the norm at tau = {} (excess {})\n",
                scheme,
                labels
                    .get(w.matrix_index)
                    .map(String::as_str)
                    .unwrap_or("matrix"),
                w.tau.to_decimal(3),
                w.excess.to_decimal(3),
            )
        }
        VerdictStatus::NoViolationOnTestSet => format!(
            "{}: no violation on the test set ({} matrices checked)\n",
            scheme,
            labels.len()
        ),
    }
}

pub fn lasm_text(report: &LasmReport) -> String {
    let mut out = format!(
        "order {} against index cap {}: threshold 2m+1 <= p {}; checked {} member(s)\n",
        report.order,
        report.index_cap,
        if report.index_condition_satisfied {
            "holds"
        } else {
            "does not hold"
        },
        report.checked,
    );
    for label in &report.skipped {
        out.push_str(&format!("skipped {label}: not a family member\n"));
    }
    if report.violations.is_empty() {
        out.push_str("no violations\n");
    } else {
        for v in &report.violations {
            out.push_str(&format!(
                "violation: {} at tau = {} (excess {})\n",
                v.label,
                v.tau.to_decimal(3),
                v.excess.to_decimal(3),
            ));
        }
    }
    out
}

pub fn suite_table(rows: &[SuiteRow]) -> String {
    let id_w = rows.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let exp_w = rows
        .iter()
        .map(|r| r.expected.len())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut out = format!(
        "{:<6} {:<id_w$} {:>8} {:<exp_w$} observed\n",
        "result", "id", "seconds", "expected"
    );
    for row in rows {
        out.push_str(&format!(
            "{:<6} {:<id_w$} {:>8.1} {:<exp_w$} {}\n",
            if row.passed { "PASS" } else { "FAIL" },
            row.id,
            row.seconds,
            row.expected,
            row.observed,
        ));
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    out.push_str(&format!(
        "{} of {} rows passed\n",
        rows.len() - failed,
        rows.len()
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypostab_core::hypo::{hc_report, staircase};

    #[test]
    fn staircase_report_renders_every_section() {
        let text = hc_report_text("staircase(3)", &hc_report(&staircase(3)));
        assert!(text.contains("hc index               2"));
        assert!(text.contains("index bounds           2 <= m <= 2"));
        assert!(text.contains("T_2"));
    }

    #[test]
    fn suite_table_aligns_and_counts() {
        let rows = vec![
            SuiteRow {
                id: "a".into(),
                description: "first".into(),
                expected: "0".into(),
                observed: "0".into(),
                passed: true,
                seconds: 0.03,
            },
            SuiteRow {
                id: "longer-row-name".into(),
                description: "second".into(),
                expected: "1".into(),
                observed: "2".into(),
                passed: false,
                seconds: 1.27,
            },
        ];
        let table = suite_table(&rows);
        assert!(table.contains("FAIL   longer-row-name"));
        assert!(table.ends_with("1 of 2 rows passed\n"));
    }
}

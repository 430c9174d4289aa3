use super::{witness_equation_flat, MembershipError};
use crate::group::FiniteGroup;
use crate::model::prefix_length;
use crate::Budgets;
use serde::Serialize;
use std::io::Write;

/// Witness sizes for one `H`, measured against `log₂³|H|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRecord {
    pub label: String,
    pub order: usize,
    /// Total relation length of the short presentation.
    pub pres_len: usize,
    pub qe_len: usize,
    pub eq_len: usize,
    pub log2cube: f64,
    pub pres_ratio: f64,
    pub qe_ratio: f64,
    pub eq_ratio: f64,
}

/// Builds and checks the witnesses for each `H` against `G`, in the given
/// order. Fails on the first `H` that already lies in `SP(G)`.
pub fn growth_experiment(
    g: &FiniteGroup,
    family: &[FiniteGroup],
    budgets: &Budgets,
) -> Result<Vec<GrowthRecord>, MembershipError> {
    family
        .iter()
        .map(|h| {
            let w = witness_equation_flat(g, h, budgets)?;
            let log2cube = (h.order() as f64).log2().powi(3);
            let pres_len = w.quasi.short.presentation.total_length();
            let qe_len = prefix_length(&w.quasi.quasi_equation);
            let eq_len = prefix_length(&w.equation);
            Ok(GrowthRecord {
                label: h.label().to_string(),
                order: h.order(),
                pres_len,
                qe_len,
                eq_len,
                log2cube,
                pres_ratio: pres_len as f64 / log2cube,
                qe_ratio: qe_len as f64 / log2cube,
                eq_ratio: eq_len as f64 / log2cube,
            })
        })
        .collect()
}

/// Writes the records as CSV with fixed six-decimal floats; an empty slice
/// gives the header alone.
pub fn write_growth_csv<W: Write>(records: &[GrowthRecord], out: W) -> Result<(), MembershipError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "label",
        "order",
        "pres_len",
        "qe_len",
        "eq_len",
        "log2cube",
        "pres_ratio",
        "qe_ratio",
        "eq_ratio",
    ])?;
    for r in records {
        w.write_record([
            r.label.clone(),
            r.order.to_string(),
            r.pres_len.to_string(),
            r.qe_len.to_string(),
            r.eq_len.to_string(),
            format!("{:.6}", r.log2cube),
            format!("{:.6}", r.pres_ratio),
            format!("{:.6}", r.qe_ratio),
            format!("{:.6}", r.eq_ratio),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, DEFAULT_MAX_ORDER};

    fn g(spec: &str) -> FiniteGroup {
        named_group(spec, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn empty_family_gives_header() {
        let mut buf = Vec::new();
        write_growth_csv(&growth_experiment(&g("cyclic:2"), &[], &Budgets::default()).unwrap(), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "label,order,pres_len,qe_len,eq_len,log2cube,pres_ratio,qe_ratio,eq_ratio\n"
        );
    }

    #[test]
    fn members_are_rejected_by_name() {
        let family = [g("cyclic:4"), g("klein")];
        let err = growth_experiment(&g("cyclic:2"), &family, &Budgets::default()).unwrap_err();
        assert!(matches!(err, MembershipError::PreconditionViolated(ref l) if l == "klein"), "{err}");
    }

    #[test]
    fn small_family() {
        let family = [g("cyclic:4"), g("cyclic:8")];
        let records = growth_experiment(&g("cyclic:2"), &family, &Budgets::default()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].order, 4);
        assert!(records[0].qe_len <= records[1].qe_len);
        assert!((records[0].log2cube - 8.0).abs() < 1e-12);
    }
}

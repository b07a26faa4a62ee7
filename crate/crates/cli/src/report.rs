//! Report envelope, float normalization and CSV flattening.

use serde::Serialize;
use serde_json::Value;

use dlenergy::closed_form::AnalyticSpectrum;
use dlenergy::energy::EnergyReport;
use dlenergy::search::{ExtremalResult, SigmaCensus};
use dlenergy::theorems::BoundCheck;

pub const SCHEMA_VERSION: u32 = 1;
/// Significant digits kept for every float in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;
/// Magnitudes below this are written as zero.
pub const ZERO_SNAP: f64 = 1e-11;

#[derive(Debug, Clone, Serialize)]
pub struct InputDescriptor {
    /// `family`, `edgelist`, `graph6` or `range`.
    pub kind: &'static str,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticEigenvalue {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectra {
    pub distance_laplacian: Vec<f64>,
    pub laplacian: Vec<f64>,
    pub distance: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_distance_laplacian: Option<Vec<AnalyticEigenvalue>>,
    /// Largest gap between analytic and numeric distance Laplacian values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_max_deviation: Option<f64>,
}

impl Spectra {
    pub fn analytic_pairs(a: &AnalyticSpectrum) -> Vec<AnalyticEigenvalue> {
        a.pairs()
            .iter()
            .map(|&(v, multiplicity)| AnalyticEigenvalue {
                value: if v.is_integer() {
                    v.to_integer().to_string()
                } else {
                    format!("{}/{}", v.numer(), v.denom())
                },
                multiplicity,
            })
            .collect()
    }
}

/// Checks on one isomorphism class in a range sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ClassChecks {
    pub graph6: String,
    /// Labelled graphs in the class, `n!/|Aut|`.
    pub labeled_count: u64,
    pub checks: Vec<BoundCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub theorem: &'static str,
    pub case_label: String,
    pub index: Option<usize>,
    pub holds: bool,
    pub equality: bool,
    pub equality_predicted: Option<bool>,
}

impl Violation {
    pub fn from_check(graph6: &str, c: &BoundCheck) -> Violation {
        Violation {
            graph6: graph6.to_string(),
            theorem: c.theorem.name(),
            case_label: c.case_label.clone(),
            index: c.index,
            holds: c.holds,
            equality: c.equality,
            equality_predicted: c.equality_predicted,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifySummary {
    pub graphs: usize,
    pub labeled_graphs: u64,
    pub checks: usize,
    pub equality_cases: usize,
    pub out_of_domain: usize,
    pub discrepancies: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: InputDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_report: Option<EnergyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra: Option<Spectra>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bound_checks: Vec<BoundCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassChecks>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<VerifySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal: Option<ExtremalResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<SigmaCensus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str, input: InputDescriptor) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            energy_report: None,
            spectra: None,
            bound_checks: Vec::new(),
            classes: Vec::new(),
            summary: None,
            extremal: None,
            census: None,
            timing: None,
        }
    }
}

pub fn round_float(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < ZERO_SNAP {
        return 0.0;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn normalize(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = round_float(num.as_f64().expect("f64 number"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(normalize),
        Value::Object(map) => map.values_mut().for_each(normalize),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to [`SIGNIFICANT_DIGITS`].
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    normalize(&mut v);
    serde_json::to_string_pretty(&v)
}

pub fn fmt_float(x: f64) -> String {
    round_float(x).to_string()
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub const CHECK_HEADER: [&str; 15] = [
    "graph",
    "theorem",
    "case_label",
    "index",
    "t",
    "lhs",
    "rhs",
    "exact",
    "holds",
    "equality",
    "equality_predicted",
    "in_domain",
    "printed_rhs",
    "discrepancy",
    "violation",
];

pub fn check_record(graph: &str, c: &BoundCheck) -> Vec<String> {
    vec![
        graph.to_string(),
        c.theorem.name().to_string(),
        c.case_label.clone(),
        fmt_opt(c.index),
        fmt_opt(c.t),
        fmt_float(c.lhs.to_f64()),
        fmt_float(c.rhs.to_f64()),
        c.exact.to_string(),
        c.holds.to_string(),
        c.equality.to_string(),
        fmt_opt(c.equality_predicted),
        c.in_domain.to_string(),
        fmt_opt(c.printed_rhs.map(|p| fmt_float(p.to_f64()))),
        c.discrepancy.to_string(),
        c.is_violation().to_string(),
    ]
}

/// Tabular view of a report: bound checks flattened one per row, other
/// payloads as their natural table.
pub fn to_csv(report: &Report) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(s) = &report.spectra {
        w.write_record(["index", "distance_laplacian", "laplacian", "distance", "analytic_distance_laplacian"])?;
        let analytic: Option<Vec<String>> = s.analytic_distance_laplacian.as_ref().map(|pairs| {
            pairs
                .iter()
                .flat_map(|p| std::iter::repeat_n(p.value.clone(), p.multiplicity))
                .collect()
        });
        for i in 0..s.distance_laplacian.len() {
            w.write_record([
                (i + 1).to_string(),
                fmt_float(s.distance_laplacian[i]),
                fmt_float(s.laplacian[i]),
                fmt_float(s.distance[i]),
                analytic.as_ref().map(|a| a[i].clone()).unwrap_or_default(),
            ])?;
        }
    } else if let Some(e) = &report.energy_report {
        w.write_record([
            "n", "m", "wiener", "dle", "dle_exact", "le", "de", "sigma", "t", "avg_transmission", "avg_degree",
        ])?;
        let exact = e.dle_exact.map(|r| {
            if r.is_integer() {
                r.to_integer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        });
        w.write_record([
            e.n.to_string(),
            e.m.to_string(),
            e.wiener.to_string(),
            fmt_float(e.dle),
            exact.unwrap_or_default(),
            fmt_float(e.le),
            fmt_float(e.de),
            e.sigma.to_string(),
            e.t_param.to_string(),
            fmt_float(e.avg_transmission),
            fmt_float(e.avg_degree),
        ])?;
    } else if let Some(x) = &report.extremal {
        w.write_record(["class", "n", "class_size", "min_dle", "graph6", "family", "matches_prediction"])?;
        for (g, fam) in x.minimizer_graphs.iter().zip(&x.minimizer_families) {
            w.write_record([
                x.class_spec.clone(),
                x.n.to_string(),
                x.class_size.to_string(),
                fmt_float(x.min_dle),
                g.clone(),
                fam.clone().unwrap_or_default(),
                fmt_opt(x.matches_prediction),
            ])?;
        }
    } else if let Some(c) = &report.census {
        w.write_record(["n", "sigma", "count"])?;
        for (sigma, count) in &c.histogram {
            w.write_record([c.n.to_string(), sigma.to_string(), count.to_string()])?;
        }
    } else {
        w.write_record(CHECK_HEADER)?;
        for c in &report.bound_checks {
            w.write_record(check_record(&report.input.value, c))?;
        }
        for class in &report.classes {
            for c in &class.checks {
                w.write_record(check_record(&class.graph6, c))?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_float(12.400000000000002), 12.4);
        assert_eq!(round_float(-3e-13), 0.0);
        assert_eq!(round_float(7.999999999999998), 8.0);
        assert_eq!(round_float(1.0 / 3.0), 0.333333333333);
    }

    #[test]
    fn json_floats_are_normalized() {
        let v = serde_json::json!({"a": [0.1 + 0.2, 2e-15], "b": {"c": 5}});
        assert_eq!(to_json(&v).unwrap(), "{\n  \"a\": [\n    0.3,\n    0.0\n  ],\n  \"b\": {\n    \"c\": 5\n  }\n}");
    }
}

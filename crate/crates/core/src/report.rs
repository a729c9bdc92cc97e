//! Report serialization: JSON and CSV record encodings for scan and
//! analyze output. Rationals serialize as `p/q` strings and intervals as
//! `["lo", "hi"]` pairs, so reports round-trip losslessly.

use crate::derived::{DerivedCodeReport, DerivedVerdict};
use crate::exact::format_rat;
use crate::feasibility::{
    CandidateReport, DistValue, KnownFamily, RootValue, Status,
};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn status_name(status: &Status) -> &'static str {
    match status {
        Status::OutOfRange => "OutOfRange",
        Status::RejectedDivisibility => "RejectedDivisibility",
        Status::RejectedRootStructure => "RejectedRootStructure",
        Status::RejectedSignPattern => "RejectedSignPattern",
        Status::RejectedNonIntegerDistribution => "RejectedNonIntegerDistribution",
        Status::KnownFamilyMatch(_) => "KnownFamilyMatch",
        Status::SurvivorRefutedByDerived => "SurvivorRefutedByDerived",
        Status::SurvivorUnresolved => "SurvivorUnresolved",
    }
}

fn root_value_json(v: &RootValue) -> Value {
    match v {
        RootValue::Exact(r) => Value::String(format_rat(r)),
        RootValue::Isolated(iv) => json!([format_rat(&iv.lo), format_rat(&iv.hi)]),
    }
}

fn dist_value_json(v: &DistValue) -> Value {
    match v {
        DistValue::Exact(r) => Value::String(format_rat(r)),
        DistValue::Interval(iv) => json!([format_rat(&iv.lo), format_rat(&iv.hi)]),
    }
}

fn family_json(f: &KnownFamily) -> Value {
    match f {
        KnownFamily::Tight5 { m } => json!({"family": "Tight5", "m": m}),
        KnownFamily::Case3 { m } => json!({"family": "Case3", "m": m}),
    }
}

fn derived_json(d: &DerivedCodeReport) -> Value {
    let mut obj = Map::new();
    obj.insert("which".into(), Value::String(d.which.as_str().into()));
    obj.insert("cardinality".into(), Value::String(format_rat(&d.cardinality)));
    obj.insert(
        "products".into(),
        Value::Array(d.products.iter().map(|p| Value::String(format_rat(p))).collect()),
    );
    obj.insert(
        "values".into(),
        Value::Array(d.values.iter().map(|v| Value::String(format_rat(v))).collect()),
    );
    let (verdict, reason) = match &d.verdict {
        DerivedVerdict::Pass => ("Pass", None),
        DerivedVerdict::ContradictionNonInteger => ("ContradictionNonInteger", None),
        DerivedVerdict::ContradictionNegative => ("ContradictionNegative", None),
        DerivedVerdict::InconsistentMoment3 => ("InconsistentMoment3", None),
        DerivedVerdict::Skipped(reason) => ("Skipped", Some(reason.clone())),
    };
    obj.insert("verdict".into(), Value::String(verdict.into()));
    if let Some(r) = reason {
        obj.insert("reason".into(), Value::String(r));
    }
    Value::Object(obj)
}

pub fn record_to_json(r: &CandidateReport) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(r.parameters.n));
    obj.insert("M".into(), Value::String(r.parameters.m.to_string()));
    obj.insert(
        "T".into(),
        r.parameters.t.as_ref().map_or(Value::Null, |t| Value::String(t.to_string())),
    );
    obj.insert("status".into(), Value::String(status_name(&r.status).into()));
    obj.insert(
        "inner_products".into(),
        r.inner_products.as_ref().map_or(Value::Null, |t| {
            Value::Array(t.roots().iter().map(|v| root_value_json(v)).collect())
        }),
    );
    obj.insert(
        "distribution".into(),
        r.distribution.as_ref().map_or(Value::Null, |d| {
            Value::Array(d.values().iter().map(|v| dist_value_json(v)).collect())
        }),
    );
    let families = match &r.status {
        Status::KnownFamilyMatch(f) => Value::Array(f.iter().map(family_json).collect()),
        _ => Value::Array(Vec::new()),
    };
    obj.insert("families".into(), families);
    obj.insert(
        "derived".into(),
        r.derived.as_ref().map_or(Value::Null, |ds| {
            Value::Array(ds.iter().map(derived_json).collect())
        }),
    );
    Value::Object(obj)
}

/// The full scan report: metadata plus records sorted by (n, M). With
/// `timestamp` None the output is byte-deterministic.
pub fn scan_report_json(
    records: &[CandidateReport],
    n_min: u32,
    n_max: u32,
    total_examined: u64,
    timestamp: Option<String>,
) -> Value {
    let mut counts: BTreeMap<&'static str, u64> = BTreeMap::new();
    for r in records {
        *counts.entry(status_name(&r.status)).or_insert(0) += 1;
    }
    json!({
        "metadata": {
            "tool_version": TOOL_VERSION,
            "n_min": n_min,
            "n_max": n_max,
            "timestamp": timestamp,
            "total_candidates_examined": total_examined,
            "status_counts": counts,
        },
        "records": records.iter().map(record_to_json).collect::<Vec<_>>(),
    })
}

fn csv_escape_list(items: Vec<String>) -> String {
    items.join(";")
}

fn root_value_csv(v: &RootValue) -> String {
    match v {
        RootValue::Exact(r) => format_rat(r),
        RootValue::Isolated(iv) => format!("{}..{}", format_rat(&iv.lo), format_rat(&iv.hi)),
    }
}

fn dist_value_csv(v: &DistValue) -> String {
    match v {
        DistValue::Exact(r) => format_rat(r),
        DistValue::Interval(iv) => format!("{}..{}", format_rat(&iv.lo), format_rat(&iv.hi)),
    }
}

/// CSV rows with the same fields as the JSON records; list-valued fields
/// are `;`-separated, intervals rendered `lo..hi`.
pub fn records_to_csv(records: &[CandidateReport]) -> String {
    let mut out = String::from("n,M,T,status,inner_products,distribution,families,derived\n");
    for r in records {
        let t = r.parameters.t.as_ref().map_or(String::new(), |t| t.to_string());
        let ips = r.inner_products.as_ref().map_or(String::new(), |t| {
            csv_escape_list(t.roots().iter().map(|v| root_value_csv(v)).collect())
        });
        let dist = r.distribution.as_ref().map_or(String::new(), |d| {
            csv_escape_list(d.values().iter().map(|v| dist_value_csv(v)).collect())
        });
        let fams = match &r.status {
            Status::KnownFamilyMatch(f) => csv_escape_list(
                f.iter()
                    .map(|fam| match fam {
                        KnownFamily::Tight5 { m: Some(m) } => format!("Tight5(m={m})"),
                        KnownFamily::Tight5 { m: None } => "Tight5(icosahedron)".to_string(),
                        KnownFamily::Case3 { m } => format!("Case3(m={m})"),
                    })
                    .collect(),
            ),
            _ => String::new(),
        };
        let derived = r.derived.as_ref().map_or(String::new(), |ds| {
            csv_escape_list(
                ds.iter()
                    .map(|d| {
                        let v = match &d.verdict {
                            DerivedVerdict::Skipped(_) => "Skipped",
                            DerivedVerdict::Pass => "Pass",
                            DerivedVerdict::ContradictionNonInteger => "ContradictionNonInteger",
                            DerivedVerdict::ContradictionNegative => "ContradictionNegative",
                            DerivedVerdict::InconsistentMoment3 => "InconsistentMoment3",
                        };
                        format!("{}:{}", d.which.as_str(), v)
                    })
                    .collect(),
            )
        });
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.parameters.n,
            r.parameters.m,
            t,
            status_name(&r.status),
            ips,
            dist,
            fams,
            derived
        ));
    }
    out
}

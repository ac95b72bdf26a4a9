use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::group::{abelian, RealizedGroup};

/// Order of a computed group, which may be unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderValue {
    Finite(u64),
    Infinite,
    Undetermined,
}

impl Serialize for OrderValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OrderValue::Finite(n) => s.serialize_u64(*n),
            OrderValue::Infinite => s.serialize_str("infinite"),
            OrderValue::Undetermined => s.serialize_str("undetermined"),
        }
    }
}

/// The `result` block of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: OrderValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelian_invariants: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_count_m: Option<u64>,
}

impl GroupSummary {
    /// Order, commutativity, invariants of the abelianization, exponent.
    pub fn of(g: &RealizedGroup) -> GroupSummary {
        let inv = abelian::abelianization_invariants(&std::sync::Arc::new(g.clone()))
            .map(|a| a.factors().to_vec())
            .ok();
        GroupSummary {
            order: OrderValue::Finite(g.order() as u64),
            abelian: Some(g.is_abelian()),
            abelian_invariants: inv,
            exponent: Some(g.exponent() as u64),
            tensor_count_m: None,
        }
    }

    pub fn unknown(order: OrderValue) -> GroupSummary {
        GroupSummary {
            order,
            abelian: None,
            abelian_invariants: None,
            exponent: None,
            tensor_count_m: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReportStats {
    pub cosets_defined: u64,
    pub elapsed_ms: u64,
}

/// A complete structured report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub query: Value,
    pub result: GroupSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    pub stats: ReportStats,
}

/// Deterministic JSON: object keys sorted, no insignificant whitespace.
pub fn serialize_report(report: &Report) -> String {
    // Going through `Value` sorts every object's keys.
    let v = serde_json::to_value(report).expect("report is serializable");
    serde_json::to_string(&v).expect("value is serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(g: &RealizedGroup) -> Report {
        Report {
            query: serde_json::json!({"command": "tensor", "group": g.name()}),
            result: GroupSummary::of(g),
            chain: None,
            details: Value::Null,
            stats: ReportStats::default(),
        }
    }

    #[test]
    fn trivial_group_report() {
        let s = serialize_report(&report(&RealizedGroup::trivial("1")));
        assert!(s.starts_with(r#"{"query":"#), "{s}");
        assert!(s.contains(r#""result":{"abelian":true,"abelian_invariants":[],"exponent":1,"order":1}"#), "{s}");
    }

    #[test]
    fn identical_inputs_identical_bytes() {
        let g = RealizedGroup::cyclic(6);
        assert_eq!(serialize_report(&report(&g)), serialize_report(&report(&g)));
    }

    #[test]
    fn order_variants() {
        assert_eq!(serde_json::to_string(&OrderValue::Infinite).unwrap(), r#""infinite""#);
        assert_eq!(serde_json::to_string(&OrderValue::Finite(4)).unwrap(), "4");
    }
}

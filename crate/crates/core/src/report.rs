//! Result rows and sweep reports.
//!
//! Every check evaluated by the verification layer produces a
//! [`CheckResult`]: an id, the parameters it was evaluated at, both sides of
//! the asserted relation, and whether it held. Rows come in two categories.
//! Theorem rows assert statements expected to hold and drive the failure
//! count. Finding rows document how the printed formula readings behave;
//! when one fails it is recorded as a discrepancy and never affects the
//! failure count.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::ideals::Variant;

/// The relation a check asserts between its two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn eval(&self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

/// Parameter tuple a check was evaluated at; unused coordinates stay unset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckParams {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

impl CheckParams {
    pub fn new(n: u32) -> Self {
        CheckParams {
            n,
            m: None,
            k: None,
            d: None,
            variant: None,
        }
    }

    pub fn m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn d(mut self, d: i64) -> Self {
        self.d = Some(d);
        self
    }

    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = Some(v);
        self
    }
}

fn bigint_as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Ordering key: (id, n, m, k, d, variant, category).
pub type RowKey<'a> = (
    &'a str,
    u32,
    Option<u32>,
    Option<u32>,
    Option<i64>,
    Option<Variant>,
    bool,
);

/// One evaluated check instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub params: CheckParams,
    #[serde(serialize_with = "bigint_as_string")]
    pub lhs: BigInt,
    #[serde(serialize_with = "bigint_as_string")]
    pub rhs: BigInt,
    pub relation: Relation,
    pub holds: bool,
    /// Category flag: findings document printed-reading behavior and are
    /// routed to the discrepancy list instead of the failure count.
    #[serde(skip)]
    pub finding: bool,
}

impl CheckResult {
    pub fn theorem(
        id: impl Into<String>,
        params: CheckParams,
        lhs: BigInt,
        relation: Relation,
        rhs: BigInt,
    ) -> Self {
        let holds = relation.eval(&lhs, &rhs);
        CheckResult {
            id: id.into(),
            params,
            lhs,
            rhs,
            relation,
            holds,
            finding: false,
        }
    }

    pub fn finding(
        id: impl Into<String>,
        params: CheckParams,
        lhs: BigInt,
        relation: Relation,
        rhs: BigInt,
    ) -> Self {
        let mut row = CheckResult::theorem(id, params, lhs, relation, rhs);
        row.finding = true;
        row
    }

    /// Deterministic ordering key for report rows.
    pub fn key(&self) -> RowKey<'_> {
        (
            &self.id,
            self.params.n,
            self.params.m,
            self.params.k,
            self.params.d,
            self.params.variant,
            self.finding,
        )
    }

    fn category(&self) -> &'static str {
        if self.finding {
            "finding"
        } else {
            "theorem"
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [n={}", self.id, self.params.n)?;
        if let Some(m) = self.params.m {
            write!(f, " m={m}")?;
        }
        if let Some(k) = self.params.k {
            write!(f, " k={k}")?;
        }
        if let Some(d) = self.params.d {
            write!(f, " d={d}")?;
        }
        if let Some(v) = self.params.variant {
            write!(f, " {v}")?;
        }
        write!(
            f,
            "] {} {} {}: {}",
            self.lhs,
            self.relation,
            self.rhs,
            if self.holds { "ok" } else { "VIOLATED" }
        )
    }
}

/// Per-check-id pass/fail/discrepancy tallies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub pass: u64,
    pub fail: u64,
    pub disc: u64,
}

/// Aggregate tallies for a whole sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: u64,
    pub fail: u64,
    pub disc: u64,
    pub per_check: BTreeMap<String, CheckCounts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub notes: Vec<String>,
}

impl Default for Meta {
    fn default() -> Self {
        Meta {
            tool: "sqfd".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            notes: vec![
                "all counts are exact integers; lhs/rhs are decimal strings".into(),
                "cycle-relative counts carry a variant: `printed` follows the formula \
                 as printed (tail exponent n-l-k+1), `corrected` uses the \
                 oracle-confirmed exponent n-k-1"
                    .into(),
                "finding rows document printed-variant behavior; failing findings land \
                 in `discrepancies` and never affect the failure count or exit status"
                    .into(),
            ],
        }
    }
}

/// Parameter ranges a sweep covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ranges {
    pub n_min: u32,
    pub n_max: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub oracle_cap: u32,
}

/// Wall-clock data; excluded from the canonical serialization so reports
/// can be compared byte for byte across thread counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub millis: u64,
    pub jobs: usize,
}

/// Full outcome of a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub meta: Meta,
    pub ranges: Ranges,
    /// Every theorem row, passing or failing.
    pub results: Vec<CheckResult>,
    /// Failing finding rows: places where a printed reading disagrees.
    pub discrepancies: Vec<CheckResult>,
    pub summary: Summary,
    pub timing: Timing,
}

impl SweepReport {
    /// Sorts raw rows, routes them into results/discrepancies, and tallies
    /// the summary. Passing findings are tallied but not stored as rows.
    pub fn assemble(ranges: Ranges, mut rows: Vec<CheckResult>, timing: Timing) -> Self {
        rows.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut results = Vec::new();
        let mut discrepancies = Vec::new();
        let mut summary = Summary::default();
        for row in rows {
            let counts = summary.per_check.entry(row.id.clone()).or_default();
            if row.holds {
                summary.pass += 1;
                counts.pass += 1;
                if !row.finding {
                    results.push(row);
                }
            } else if row.finding {
                summary.disc += 1;
                counts.disc += 1;
                discrepancies.push(row);
            } else {
                summary.fail += 1;
                counts.fail += 1;
                results.push(row);
            }
        }
        SweepReport {
            meta: Meta::default(),
            ranges,
            results,
            discrepancies,
            summary,
            timing,
        }
    }

    /// Theorem rows that did not hold.
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.holds)
    }

    pub fn is_success(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// JSON with the timing block removed and keys sorted: byte-identical
    /// across runs and thread counts for the same inputs.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serialization cannot fail");
        value
            .as_object_mut()
            .expect("report serializes to an object")
            .remove("timing");
        serde_json::to_string_pretty(&value).expect("value serialization cannot fail")
    }

    /// All rows (results and discrepancies merged, sorted) as CSV.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<&CheckResult> =
            self.results.iter().chain(&self.discrepancies).collect();
        rows.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut out = String::from("id,n,m,k,d,variant,relation,lhs,rhs,holds,category\n");
        fn opt<T: fmt::Display>(v: Option<T>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        for r in rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                r.id,
                r.params.n,
                opt(r.params.m),
                opt(r.params.k),
                opt(r.params.d),
                opt(r.params.variant),
                r.relation,
                r.lhs,
                r.rhs,
                r.holds,
                r.category(),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn relation_semantics() {
        assert!(Relation::Ge.eval(&b(3), &b(3)));
        assert!(!Relation::Ge.eval(&b(2), &b(3)));
        assert!(Relation::Le.eval(&b(-5), &b(0)));
        assert!(Relation::Eq.eval(&b(7), &b(7)));
        assert_eq!(Relation::Ge.to_string(), ">=");
        assert_eq!(Relation::Eq.to_string(), "=");
    }

    fn sample_rows() -> Vec<CheckResult> {
        vec![
            CheckResult::theorem("z.last", CheckParams::new(5).m(2).k(1), b(4), Relation::Eq, b(4)),
            CheckResult::theorem("a.first", CheckParams::new(4).m(3), b(1), Relation::Ge, b(2)),
            CheckResult::finding("m.note", CheckParams::new(4).m(3).k(2), b(5), Relation::Eq, b(7)),
            CheckResult::finding("m.note", CheckParams::new(4).m(3).k(1), b(6), Relation::Eq, b(6)),
        ]
    }

    #[test]
    fn assemble_routes_and_counts() {
        let ranges = Ranges {
            n_min: 4,
            n_max: 5,
            m: None,
            oracle_cap: 24,
        };
        let report = SweepReport::assemble(ranges, sample_rows(), Timing { millis: 1, jobs: 1 });

        assert_eq!(report.results.len(), 2);
        assert_eq!(report.results[0].id, "a.first");
        assert!(!report.results[0].holds);
        assert_eq!(report.discrepancies.len(), 1);
        assert_eq!(report.discrepancies[0].params.k, Some(2));

        assert_eq!(report.summary.pass, 2);
        assert_eq!(report.summary.fail, 1);
        assert_eq!(report.summary.disc, 1);
        let note = &report.summary.per_check["m.note"];
        assert_eq!((note.pass, note.fail, note.disc), (1, 0, 1));

        assert_eq!(report.failures().count(), 1);
        assert!(!report.is_success());
    }

    #[test]
    fn json_shapes() {
        let ranges = Ranges {
            n_min: 4,
            n_max: 5,
            m: Some(2),
            oracle_cap: 24,
        };
        let report = SweepReport::assemble(ranges, sample_rows(), Timing { millis: 9, jobs: 2 });
        let json = report.to_json();
        assert!(json.contains(r#""lhs": "1""#), "{json}");
        assert!(json.contains(r#""relation": ">=""#));
        assert!(json.contains(r#""timing""#));
        assert!(!json.contains(r#""finding""#), "category flag stays out of JSON");

        let canonical = report.canonical_json();
        assert!(!canonical.contains("timing"));
        let reparsed: serde_json::Value = serde_json::from_str(&canonical).unwrap();
        assert_eq!(reparsed["summary"]["disc"], 1);
        assert_eq!(reparsed["ranges"]["m"], 2);
    }

    #[test]
    fn csv_layout() {
        let ranges = Ranges {
            n_min: 4,
            n_max: 5,
            m: None,
            oracle_cap: 24,
        };
        let report = SweepReport::assemble(ranges, sample_rows(), Timing { millis: 0, jobs: 1 });
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "id,n,m,k,d,variant,relation,lhs,rhs,holds,category");
        assert_eq!(lines[1], "a.first,4,3,,,,>=,1,2,false,theorem");
        assert_eq!(lines[2], "m.note,4,3,2,,,=,5,7,false,finding");
        assert_eq!(lines[3], "z.last,5,2,1,,,=,4,4,true,theorem");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn display_row() {
        let row = CheckResult::theorem(
            "t.check",
            CheckParams::new(5).m(3).k(4).d(2),
            b(-1),
            Relation::Ge,
            b(0),
        );
        assert_eq!(row.to_string(), "t.check [n=5 m=3 k=4 d=2] -1 >= 0: VIOLATED");
    }
}

//! Cross-validation of every characterization and formula against brute
//! force, over all universes up to a size bound.
//!
//! Each suite produces one [`Cell`] per (universe, check). Cells are ordered
//! by `(n, m, k)` and then by check name, so a report is byte-identical no
//! matter how many threads computed it.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{self, Count};
use crate::error::{Error, Result};
use crate::relations::{self, AbundanceVerdict, Method, Oracle, RelationKind};
use crate::semigroup::{enumerate, is_member};
use crate::structure;
use crate::transformation::Transformation;
use crate::universe::Universe;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellValue {
    #[serde(with = "decimal")]
    Count(Count),
    Bool(bool),
    Verdict {
        left: bool,
        right: bool,
    },
}

mod decimal {
    use super::Count;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Count, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Count, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Count(c) => write!(f, "{c}"),
            CellValue::Bool(b) => write!(f, "{b}"),
            CellValue::Verdict { left, right } => write!(f, "({left},{right})"),
        }
    }
}

impl From<usize> for CellValue {
    fn from(v: usize) -> Self {
        CellValue::Count(BigUint::from(v))
    }
}

impl From<Count> for CellValue {
    fn from(v: Count) -> Self {
        CellValue::Count(v)
    }
}

impl From<bool> for CellValue {
    fn from(v: bool) -> Self {
        CellValue::Bool(v)
    }
}

impl From<&AbundanceVerdict> for CellValue {
    fn from(v: &AbundanceVerdict) -> Self {
        CellValue::Verdict {
            left: v.left,
            right: v.right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    #[serde(flatten)]
    pub universe: Universe,
    pub check: String,
    pub expected: CellValue,
    pub actual: CellValue,
    pub pass: bool,
}

impl Cell {
    fn new(
        universe: Universe,
        check: impl Into<String>,
        expected: impl Into<CellValue>,
        actual: impl Into<CellValue>,
    ) -> Self {
        let expected = expected.into();
        let actual = actual.into();
        Cell {
            universe,
            check: check.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cells: Vec<Cell>,
    #[serde(skip)]
    pub elapsed: Duration,
    pub overall: bool,
}

impl VerificationReport {
    fn assemble(suite: &str, mut cells: Vec<Cell>, started: Instant) -> Self {
        cells.sort_by(|a, b| (a.universe, &a.check).cmp(&(b.universe, &b.check)));
        VerificationReport {
            suite: suite.to_string(),
            overall: cells.iter().all(|c| c.pass),
            cells,
            elapsed: started.elapsed(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, universe: &Universe, check: &str) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.universe == *universe && c.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text table, one row per cell, closed by an overall line.
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .cells
            .iter()
            .map(|c| {
                [
                    c.universe.to_string(),
                    c.check.clone(),
                    c.expected.to_string(),
                    c.actual.to_string(),
                    if c.pass { "PASS" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        let header = ["universe", "check", "expected", "actual", "result"].map(String::from);
        let mut widths = header.clone().map(|h| h.len());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = format!("suite: {}\n", self.suite);
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall { "PASS" } else { "FAIL" }
        ));
        out
    }
}

type Pred = fn(&Universe, &Transformation, &Transformation) -> Result<bool>;

/// The implementations under test. Tests swap entries for faulty versions
/// to confirm the harness notices.
#[derive(Clone, Copy)]
struct Checks {
    order: fn(&Universe) -> Count,
    order_stratum: fn(&Universe, usize) -> Result<Count>,
    regular_count: fn(&Universe) -> Count,
    idempotent_count: fn(&Universe) -> Count,
    lstar_related: Pred,
    rstar_related: Pred,
    is_regular_element: fn(&Universe, &Transformation) -> Result<bool>,
    quasi_inverse: fn(&Universe, &Transformation) -> Result<Transformation>,
    is_regular_semigroup: fn(&Universe) -> bool,
    nonregular_witness: fn(&Universe) -> Result<Transformation>,
    abundance_table: fn(&Universe) -> AbundanceVerdict,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            order: counting::order,
            order_stratum: counting::order_stratum,
            regular_count: counting::regular_count,
            idempotent_count: counting::idempotent_count,
            lstar_related: relations::lstar_related,
            rstar_related: relations::rstar_related,
            is_regular_element: structure::is_regular_element,
            quasi_inverse: structure::quasi_inverse,
            is_regular_semigroup: structure::is_regular_semigroup,
            nonregular_witness: structure::nonregular_witness,
            abundance_table: relations::abundance_table,
        }
    }
}

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Counts,
    Relations,
    Regularity,
    Abundance,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Relations => "relations",
            Suite::Regularity => "regularity",
            Suite::Abundance => "abundance",
            Suite::All => "all",
        }
    }
}

/// Runs verification suites within configurable size bounds.
#[derive(Clone)]
pub struct Verifier {
    count_bound: usize,
    structure_bound: usize,
    checks: Checks,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            count_bound: Self::DEFAULT_COUNT_BOUND,
            structure_bound: Self::DEFAULT_STRUCTURE_BOUND,
            checks: Checks::default(),
        }
    }
}

/// `∃β ∈ S : αβα = α`, by exhaustive search.
fn brute_regular(all: &[Transformation], a: &Transformation) -> bool {
    all.iter().any(|b| a.then(b).then(a) == *a)
}

impl Verifier {
    pub const DEFAULT_COUNT_BOUND: usize = 5;
    pub const DEFAULT_STRUCTURE_BOUND: usize = 4;

    pub fn new() -> Self {
        Self::default()
    }

    /// Largest `n` accepted by the counts suite.
    pub fn with_count_bound(mut self, bound: usize) -> Self {
        self.count_bound = bound;
        self
    }

    /// Largest `n` accepted by the relations, regularity and abundance suites.
    pub fn with_structure_bound(mut self, bound: usize) -> Self {
        self.structure_bound = bound;
        self
    }

    #[cfg(test)]
    fn with_checks(mut self, checks: Checks) -> Self {
        self.checks = checks;
        self
    }

    fn check_bound(max_n: usize, bound: usize) -> Result<()> {
        if max_n > bound {
            return Err(Error::BoundExceeded { max_n, bound });
        }
        Ok(())
    }

    fn cells_per_universe<F>(max_n: usize, f: F) -> Vec<Cell>
    where
        F: Fn(&Universe) -> Vec<Cell> + Sync,
    {
        Universe::all_up_to(max_n)
            .par_iter()
            .flat_map_iter(&f)
            .collect()
    }

    pub fn run(&self, suite: Suite, max_n: usize) -> Result<VerificationReport> {
        match suite {
            Suite::Counts => self.verify_counts(max_n),
            Suite::Relations => self.verify_relations(max_n),
            Suite::Regularity => self.verify_regularity(max_n),
            Suite::Abundance => self.verify_abundance(max_n),
            Suite::All => self.verify_all(max_n),
        }
    }

    /// Every formula against filtered enumeration.
    pub fn verify_counts(&self, max_n: usize) -> Result<VerificationReport> {
        Self::check_bound(max_n, self.count_bound)?;
        let started = Instant::now();
        let c = self.checks;
        let cells = Self::cells_per_universe(max_n, |u| {
            let all: Vec<Transformation> = enumerate(u).collect();
            let mut strata = vec![0usize; u.k() + 1];
            let mut regular = 0;
            let mut idempotent = 0;
            for a in &all {
                let y_image = a.image_of(u.y()).expect("Y lies in X");
                strata[y_image.len()] += 1;
                if brute_regular(&all, a) {
                    regular += 1;
                }
                if a.then(a) == *a {
                    idempotent += 1;
                }
            }
            let mut cells = vec![
                Cell::new(*u, "order", (c.order)(u), all.len()),
                Cell::new(*u, "regular_count", (c.regular_count)(u), regular),
                Cell::new(*u, "idempotent_count", (c.idempotent_count)(u), idempotent),
            ];
            let mut stratum_sum = BigUint::default();
            for (r, &brute) in strata.iter().enumerate().skip(1) {
                let formula = (c.order_stratum)(u, r).expect("1 <= r <= k");
                stratum_sum += &formula;
                cells.push(Cell::new(*u, format!("order_stratum_r{r}"), formula, brute));
            }
            cells.push(Cell::new(*u, "strata_sum", (c.order)(u), stratum_sum));
            cells
        });
        Ok(VerificationReport::assemble(
            Suite::Counts.name(),
            cells,
            started,
        ))
    }

    /// `L*` and `R*` characterizations against the cancellation oracle, on every ordered pair.
    pub fn verify_relations(&self, max_n: usize) -> Result<VerificationReport> {
        Self::check_bound(max_n, self.structure_bound)?;
        let started = Instant::now();
        let c = self.checks;
        let cells = Self::cells_per_universe(max_n, |u| {
            let all: Vec<Transformation> = enumerate(u).collect();
            let oracle = Oracle::from_members(u, all.clone());
            let mut cells = Vec::new();
            for (name, kind, pred) in [
                ("lstar_vs_oracle", RelationKind::LStar, c.lstar_related),
                ("rstar_vs_oracle", RelationKind::RStar, c.rstar_related),
            ] {
                let sigs: Vec<Vec<u32>> = all.iter().map(|a| oracle.signature(kind, a)).collect();
                let mut agree = 0usize;
                for (i, a) in all.iter().enumerate() {
                    for (j, b) in all.iter().enumerate() {
                        let fast = pred(u, a, b).unwrap_or(!(sigs[i] == sigs[j]));
                        if fast == (sigs[i] == sigs[j]) {
                            agree += 1;
                        }
                    }
                }
                cells.push(Cell::new(*u, name, all.len() * all.len(), agree));
            }
            cells
        });
        Ok(VerificationReport::assemble(
            Suite::Relations.name(),
            cells,
            started,
        ))
    }

    /// The regular-element condition against `∃β: αβα = α`, quasi-inverse
    /// postconditions, the regular-semigroup classification, and
    /// non-regular witnesses.
    pub fn verify_regularity(&self, max_n: usize) -> Result<VerificationReport> {
        Self::check_bound(max_n, self.structure_bound)?;
        let started = Instant::now();
        let c = self.checks;
        let cells = Self::cells_per_universe(max_n, |u| {
            let all: Vec<Transformation> = enumerate(u).collect();
            let mut agree = 0usize;
            let mut regular = 0usize;
            let mut valid_inverses = 0usize;
            for a in &all {
                let brute = brute_regular(&all, a);
                let fast = (c.is_regular_element)(u, a).unwrap_or(!brute);
                if fast == brute {
                    agree += 1;
                }
                if brute {
                    regular += 1;
                    let ok = (c.quasi_inverse)(u, a).is_ok_and(|b| {
                        b.n() == u.n()
                            && is_member(u, &b).unwrap_or(false)
                            && a.then(&b).then(a) == *a
                    });
                    if ok {
                        valid_inverses += 1;
                    }
                }
            }
            let all_regular = regular == all.len();
            let mut cells = vec![
                Cell::new(*u, "regular_element_vs_bruteforce", all.len(), agree),
                Cell::new(*u, "quasi_inverse_valid", regular, valid_inverses),
                Cell::new(
                    *u,
                    "regular_semigroup",
                    all_regular,
                    (c.is_regular_semigroup)(u),
                ),
            ];
            if !all_regular {
                let rejected = (c.nonregular_witness)(u).is_ok_and(|w| {
                    is_member(u, &w).unwrap_or(false)
                        && !brute_regular(&all, &w)
                        && (c.is_regular_element)(u, &w) == Ok(false)
                });
                cells.push(Cell::new(*u, "nonregular_witness_rejected", true, rejected));
            }
            cells
        });
        Ok(VerificationReport::assemble(
            Suite::Regularity.name(),
            cells,
            started,
        ))
    }

    /// The abundance table against idempotent search in oracle-computed
    /// classes, plus the idempotent-free witness elements.
    pub fn verify_abundance(&self, max_n: usize) -> Result<VerificationReport> {
        Self::check_bound(max_n, self.structure_bound)?;
        let started = Instant::now();
        let c = self.checks;
        let cells = Self::cells_per_universe(max_n, |u| {
            let classes = |kind| {
                relations::relation_classes(u, kind, Method::Oracle)
                    .expect("within materialization bound")
            };
            let l = classes(RelationKind::LStar);
            let r = classes(RelationKind::RStar);
            let has_idempotent =
                |class: &Vec<Transformation>| class.iter().any(|a| a.then(a) == *a);
            let empirical = CellValue::Verdict {
                left: l.classes.iter().all(has_idempotent),
                right: r.classes.iter().all(has_idempotent),
            };
            let mut cells = vec![Cell::new(
                *u,
                "abundance",
                &(c.abundance_table)(u),
                empirical,
            )];
            let witness_clean = |classes: &relations::RelationClasses, f: &Transformation| {
                classes
                    .class_of(f)
                    .is_some_and(|i| !has_idempotent(&classes.classes[i]))
            };
            if let Ok(f) = relations::idempotent_free_lstar_element(u) {
                cells.push(Cell::new(
                    *u,
                    "lstar_witness_idempotent_free",
                    true,
                    witness_clean(&l, &f),
                ));
            }
            if let Ok(f) = relations::idempotent_free_rstar_element(u) {
                cells.push(Cell::new(
                    *u,
                    "rstar_witness_idempotent_free",
                    true,
                    witness_clean(&r, &f),
                ));
            }
            cells
        });
        Ok(VerificationReport::assemble(
            Suite::Abundance.name(),
            cells,
            started,
        ))
    }

    /// All four suites at one `max_n`, merged into a single report.
    pub fn verify_all(&self, max_n: usize) -> Result<VerificationReport> {
        Self::check_bound(max_n, self.count_bound.min(self.structure_bound))?;
        let started = Instant::now();
        let mut cells = Vec::new();
        for report in [
            self.verify_counts(max_n)?,
            self.verify_relations(max_n)?,
            self.verify_regularity(max_n)?,
            self.verify_abundance(max_n)?,
        ] {
            cells.extend(report.cells);
        }
        Ok(VerificationReport::assemble(
            Suite::All.name(),
            cells,
            started,
        ))
    }
}

pub fn verify_counts(max_n: usize) -> Result<VerificationReport> {
    Verifier::new().verify_counts(max_n)
}

pub fn verify_relations(max_n: usize) -> Result<VerificationReport> {
    Verifier::new().verify_relations(max_n)
}

pub fn verify_regularity(max_n: usize) -> Result<VerificationReport> {
    Verifier::new().verify_regularity(max_n)
}

pub fn verify_abundance(max_n: usize) -> Result<VerificationReport> {
    Verifier::new().verify_abundance(max_n)
}

#![allow(dead_code)]

use std::time::{Duration, Instant};

use coltrees::{Canonizer, ColoringMatrix};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Row {
    pub values: Vec<u64>,
    pub hyper: bool,
    pub named: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct Table {
    pub scope: Vec<usize>,
    pub total: Row,
    pub colors: Vec<Row>,
}

#[derive(Debug, Deserialize)]
pub struct Equation {
    pub color: usize,
    pub poly: String,
}

#[derive(Debug, Deserialize)]
pub struct Class3 {
    pub id: usize,
    pub matrices: Vec<String>,
    pub tables: Vec<Table>,
    pub equations: Vec<Equation>,
}

impl Class3 {
    pub fn matrix(&self, k: usize) -> ColoringMatrix {
        self.matrices[k].parse().unwrap()
    }

    pub fn rep(&self) -> ColoringMatrix {
        self.matrix(0)
    }
}

pub fn catalog3() -> Vec<Class3> {
    serde_json::from_str(include_str!("../data/catalog3.json")).unwrap()
}

pub fn class3(cat: &[Class3], id: usize) -> &Class3 {
    cat.iter().find(|c| c.id == id).unwrap()
}

/// The 3x3 catalog's matrices for `id`, optionally restricted to the first table's scope.
pub fn class3_matrices(cat: &[Class3], id: usize, first_table_only: bool) -> Vec<ColoringMatrix> {
    let c = class3(cat, id);
    let idx: Vec<usize> = if first_table_only {
        c.tables[0].scope.clone()
    } else {
        (0..c.matrices.len()).collect()
    };
    idx.into_iter().map(|k| c.matrix(k)).collect()
}

/// The 2x2 catalog: listed matrices, printed leading terms, and class id 1..=8.
pub struct Class2 {
    pub id: usize,
    pub matrices: &'static [&'static str],
    pub totals: &'static [u64],
}

pub const CATALOG2: [Class2; 8] = [
    Class2 { id: 1, matrices: &["00;00"], totals: &[2, 0, 0, 0] },
    Class2 { id: 2, matrices: &["01;00"], totals: &[2, 1, 1, 1] },
    Class2 { id: 3, matrices: &["10;00"], totals: &[2, 1, 2, 5, 14, 42] },
    Class2 { id: 4, matrices: &["10;01", "10;10", "01;10"], totals: &[2, 2, 4, 10, 28, 84] },
    Class2 { id: 5, matrices: &["11;00"], totals: &[2, 2, 6, 22, 90, 394] },
    Class2 { id: 6, matrices: &["11;01"], totals: &[2, 3, 9, 34, 145, 667] },
    Class2 { id: 7, matrices: &["11;10"], totals: &[2, 3, 10, 42, 198, 1001] },
    Class2 { id: 8, matrices: &["11;11"], totals: &[2, 4, 16, 80, 448, 2688] },
];

pub fn class2_rep(id: usize) -> ColoringMatrix {
    CATALOG2[id - 1].matrices[0].parse().unwrap()
}

pub fn class2_matrices(id: usize) -> Vec<ColoringMatrix> {
    CATALOG2[id - 1].matrices.iter().map(|s| s.parse().unwrap()).collect()
}

pub fn isomorphic_to_any(a: &ColoringMatrix, pool: &[ColoringMatrix]) -> bool {
    let canon = Canonizer::new(a.size());
    let code = canon.canonical_code(a).0;
    pool.iter()
        .any(|b| b.size() == a.size() && canon.canonical_code(b).0 == code)
}

/// Runs one acceptance check, prints a single status line and fails the test
/// when the check fails or overruns its budget.
pub fn criterion(id: u32, title: &str, budget: Duration, check: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = check();
    let took = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if took <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over budget")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id:>2} {} | {title} | {detail} | {:.2}s of {:.0}s",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

/// `Err` with a message unless `cond` holds.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

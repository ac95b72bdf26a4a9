//! Todd-Coxeter coset enumeration.
//!
//! The default strategy is HLT with lookahead: cosets are processed in
//! order, every relator is scanned and filled at each coset, and when the
//! table runs out of rows a lookahead pass scans without defining so that
//! coincidences can free space. Coincidences are processed in place with a
//! union-find over coset numbers. Felsch (definitions in row-major order,
//! each followed by full deduction processing) is available for
//! cross-checking.

use std::collections::HashSet;
use std::rc::Rc;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{RealizedGroup, DEFAULT_ORDER_CAP};
use crate::word::{Presentation, Word};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_cosets: usize,
    pub max_time_ms: Option<u64>,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_cosets: 2_000_000,
            max_time_ms: None,
        }
    }
}

impl EnumerationBudget {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        EnumerationBudget {
            max_cosets: max_cosets.max(1),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub cosets_defined: usize,
    pub cosets_final: usize,
    pub coincidences: usize,
    pub elapsed_ms: u64,
}

impl EnumerationStats {
    /// Adds another enumeration's counters to these.
    pub fn absorb(&mut self, other: &EnumerationStats) {
        self.cosets_defined += other.cosets_defined;
        self.cosets_final += other.cosets_final;
        self.coincidences += other.coincidences;
        self.elapsed_ms += other.elapsed_ms;
    }
}

/// A completed coset table. Row 0 is the subgroup coset; column `2s` is
/// generator `s` and column `2s + 1` its inverse.
#[derive(Debug, Clone)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<u32>,
    coset_count: usize,
    complete: bool,
    trivial_subgroup: bool,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    /// Image of `coset` under generator `gen` (or its inverse).
    pub fn entry(&self, coset: usize, gen: usize, inverse: bool) -> Option<usize> {
        let v = self.rows[coset * self.columns + 2 * gen + inverse as usize];
        (v != NONE).then_some(v as usize)
    }

    /// Traces a word from a coset.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        let mut c = coset;
        for (g, inv) in w.units() {
            c = self.entry(c, g, inv)?;
        }
        Some(c)
    }
}

/// Enumerates the cosets of `<subgroup_words>` with the default HLT strategy.
pub fn enumerate(
    p: &Presentation,
    subgroup_words: &[Word],
    budget: EnumerationBudget,
) -> Result<(CosetTable, EnumerationStats)> {
    enumerate_with(p, subgroup_words, budget, Strategy::Hlt)
}

pub fn enumerate_with(
    p: &Presentation,
    subgroup_words: &[Word],
    budget: EnumerationBudget,
    strategy: Strategy,
) -> Result<(CosetTable, EnumerationStats)> {
    p.validate()?;
    for w in subgroup_words {
        if w.max_gen().is_some_and(|m| m >= p.rank()) {
            return Err(Error::Usage(
                "subgroup word uses an undeclared generator".into(),
            ));
        }
    }
    let mut e = Enumerator::new(p, subgroup_words, budget);
    match strategy {
        Strategy::Hlt => e.run_hlt()?,
        Strategy::Felsch => e.run_felsch()?,
    }
    e.finish(subgroup_words)
}

/// Realizes a finite presentation as a group via its regular representation.
pub fn realize(
    p: &Presentation,
    budget: EnumerationBudget,
) -> Result<(RealizedGroup, EnumerationStats)> {
    realize_with(p, budget, Strategy::Hlt, DEFAULT_ORDER_CAP)
}

pub fn realize_with(
    p: &Presentation,
    budget: EnumerationBudget,
    strategy: Strategy,
    order_cap: usize,
) -> Result<(RealizedGroup, EnumerationStats)> {
    let (t, stats) = enumerate_with(p, &[], budget, strategy)?;
    if t.coset_count() > order_cap {
        return Err(Error::OrderCap {
            order: t.coset_count(),
            cap: order_cap,
        });
    }
    Ok((regular_representation(&t, p)?, stats))
}

/// The group acting on the cosets of the trivial subgroup, with generator
/// images taken from the table's columns.
pub fn regular_representation(t: &CosetTable, p: &Presentation) -> Result<RealizedGroup> {
    if !t.complete {
        return Err(Error::IncompleteTable);
    }
    if !t.trivial_subgroup {
        return Err(Error::InternalInconsistency(
            "regular representation needs the table of the trivial subgroup".into(),
        ));
    }
    if t.generator_count() != p.rank() {
        return Err(Error::InternalInconsistency(
            "table and presentation disagree on generators".into(),
        ));
    }
    let n = t.coset_count();
    let right: Vec<Vec<u32>> = (0..p.rank())
        .map(|s| {
            (0..n)
                .map(|c| t.entry(c, s, false).expect("complete table") as u32)
                .collect()
        })
        .collect();
    let (g, _) = RealizedGroup::from_regular_action(p.name.clone(), p.generators.clone(), right, n)?;
    for r in &p.relators {
        if g.eval(r) != 0 {
            return Err(Error::InternalInconsistency(format!(
                "relator {} is not trivial in the realization",
                r.display(&p.generators)
            )));
        }
    }
    Ok(g)
}

/// Column-letter form of relators: cyclically reduced, deduplicated up to
/// rotation and inversion, shortest first.
fn prepare_relators(p: &Presentation) -> Vec<Vec<u32>> {
    let mut seen = HashSet::new();
    let mut out: Vec<(Word, Vec<u32>)> = Vec::new();
    for r in &p.relators {
        let canon = r.cyclic_canonical();
        if canon.is_identity() || !seen.insert(canon.clone()) {
            continue;
        }
        let cols = to_columns(&canon);
        out.push((canon, cols));
    }
    out.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.0.cmp(&b.0)));
    out.into_iter().map(|(_, c)| c).collect()
}

fn to_columns(w: &Word) -> Vec<u32> {
    w.units()
        .map(|(g, inv)| (2 * g + inv as usize) as u32)
        .collect()
}

enum Scan {
    Done,
    OutOfSpace,
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    // Union-find parent; a coset is live iff it is its own parent.
    parent: Vec<u32>,
    relators: Rc<Vec<Vec<u32>>>,
    subgroup: Rc<Vec<Vec<u32>>>,
    // Felsch: cyclic conjugates of relators grouped by first letter.
    conjugates: Rc<Vec<Vec<Vec<u32>>>>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
    queue: Vec<u32>,
    budget: EnumerationBudget,
    started: Instant,
    defined: usize,
    coincidences: usize,
}

impl Enumerator {
    fn new(p: &Presentation, subgroup_words: &[Word], budget: EnumerationBudget) -> Self {
        let cols = 2 * p.rank();
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            relators: Rc::new(prepare_relators(p)),
            subgroup: Rc::new(
                subgroup_words
                    .iter()
                    .filter(|w| !w.is_identity())
                    .map(to_columns)
                    .collect(),
            ),
            conjugates: Rc::default(),
            deductions: Vec::new(),
            track_deductions: false,
            queue: Vec::new(),
            budget,
            started: Instant::now(),
            defined: 1,
            coincidences: 0,
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.cols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, v: u32) {
        self.table[c as usize * self.cols + x as usize] = v;
    }

    #[inline]
    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn check_time(&self) -> Result<()> {
        if let Some(ms) = self.budget.max_time_ms {
            if self.started.elapsed().as_millis() as u64 > ms {
                return Err(Error::BudgetExceeded {
                    reason: format!("time limit of {ms} ms"),
                });
            }
        }
        Ok(())
    }

    /// Defines `c * x` as a fresh coset; `false` when the table is full.
    fn define(&mut self, c: u32, x: u32) -> bool {
        if self.rows() >= self.budget.max_cosets {
            return false;
        }
        let d = self.rows() as u32;
        self.parent.push(d);
        self.table.resize(self.table.len() + self.cols, NONE);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.defined += 1;
        if self.track_deductions {
            self.deductions.push((c, x));
        }
        true
    }

    fn deduce(&mut self, f: u32, x: u32, b: u32) {
        self.set(f, x, b);
        self.set(b, x ^ 1, f);
        if self.track_deductions {
            self.deductions.push((f, x));
        }
    }

    /// HLT scan of `w` at `c`, defining cosets to close gaps when `fill`.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> Scan {
        if w.is_empty() {
            return Scan::Done;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let next = self.get(f, w[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Scan::Done;
            }
            while j >= i as isize {
                let next = self.get(b, w[j as usize] ^ 1);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Scan::Done;
            }
            if j == i as isize {
                self.deduce(f, w[i], b);
                return Scan::Done;
            }
            if !fill {
                return Scan::Done;
            }
            if !self.define(f, w[i]) {
                return Scan::OutOfSpace;
            }
        }
    }

    fn merge(&mut self, k: u32, l: u32) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
        self.coincidences += 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols as u32 {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                    continue;
                }
                let fx = self.get(f1, x ^ 1);
                if fx != NONE {
                    self.merge(e1, fx);
                    continue;
                }
                self.set(e1, x, f1);
                self.set(f1, x ^ 1, e1);
                if self.track_deductions {
                    self.deductions.push((e1, x));
                }
            }
        }
    }

    /// Scans every relator at every live coset without defining.
    fn lookahead(&mut self) {
        let relators = self.relators.clone();
        for c in 0..self.rows() as u32 {
            for r in relators.iter() {
                if !self.live(c) {
                    break;
                }
                self.scan(c, r, false);
            }
        }
    }

    /// Renumbers live cosets consecutively; returns the new index of the
    /// first live coset at or after `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let n = self.rows();
        let mut new_index = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.parent[c] == c as u32 {
                new_index[c] = next;
                next += 1;
            }
        }
        if next as usize == n {
            return cursor;
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if new_index[c] == NONE {
                continue;
            }
            for x in 0..self.cols {
                let v = self.table[c * self.cols + x];
                table.push(if v == NONE { NONE } else { new_index[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        let deductions = std::mem::take(&mut self.deductions);
        self.deductions = deductions
            .into_iter()
            .filter(|&(c, _)| new_index[c as usize] != NONE)
            .map(|(c, x)| (new_index[c as usize], x))
            .collect();
        (cursor..n)
            .find(|&c| new_index[c] != NONE)
            .map_or(next as usize, |c| new_index[c] as usize)
    }

    /// Frees rows after the table fills up, or fails the enumeration.
    fn recover_space(&mut self, cursor: usize, lookahead: bool) -> Result<usize> {
        if lookahead {
            self.lookahead();
        }
        let cursor = self.compact(cursor);
        let free = self.budget.max_cosets.saturating_sub(self.rows());
        if free * 20 < self.budget.max_cosets || free == 0 {
            return Err(Error::BudgetExceeded {
                reason: format!("more than {} cosets", self.budget.max_cosets),
            });
        }
        Ok(cursor)
    }

    fn fill_subgroup(&mut self, lookahead: bool) -> Result<()> {
        let words = self.subgroup.clone();
        for w in words.iter() {
            while let Scan::OutOfSpace = self.scan(0, w, true) {
                self.recover_space(0, lookahead)?;
            }
        }
        Ok(())
    }

    fn run_hlt(&mut self) -> Result<()> {
        self.fill_subgroup(true)?;
        let relators = self.relators.clone();
        let mut c = 0usize;
        let mut processed = 0usize;
        'outer: while c < self.rows() {
            if !self.live(c as u32) {
                c += 1;
                continue;
            }
            for r in relators.iter() {
                if !self.live(c as u32) {
                    break;
                }
                if let Scan::OutOfSpace = self.scan(c as u32, r, true) {
                    c = self.recover_space(c, true)?;
                    continue 'outer;
                }
            }
            if self.live(c as u32) {
                for x in 0..self.cols as u32 {
                    if self.get(c as u32, x) == NONE && !self.define(c as u32, x) {
                        c = self.recover_space(c, true)?;
                        continue 'outer;
                    }
                }
            }
            processed += 1;
            if processed.is_multiple_of(1024) {
                self.check_time()?;
            }
            c += 1;
        }
        Ok(())
    }

    fn run_felsch(&mut self) -> Result<()> {
        self.track_deductions = true;
        let mut conjugates = vec![Vec::new(); self.cols];
        let mut seen = HashSet::new();
        for r in self.relators.iter() {
            for start in 0..r.len() {
                let rot: Vec<u32> = r[start..].iter().chain(&r[..start]).copied().collect();
                if seen.insert(rot.clone()) {
                    conjugates[rot[0] as usize].push(rot);
                }
            }
        }
        self.conjugates = Rc::new(conjugates);
        self.fill_subgroup(false)?;
        self.process_deductions();
        let mut c = 0usize;
        let mut processed = 0usize;
        while c < self.rows() {
            if self.live(c as u32) {
                for x in 0..self.cols as u32 {
                    if !self.live(c as u32) {
                        break;
                    }
                    if self.get(c as u32, x) != NONE {
                        continue;
                    }
                    if !self.define(c as u32, x) {
                        c = self.recover_space(c, false)?;
                        if !self.define(c as u32, x) {
                            return Err(Error::BudgetExceeded {
                                reason: format!("more than {} cosets", self.budget.max_cosets),
                            });
                        }
                    }
                    self.process_deductions();
                }
            }
            processed += 1;
            if processed.is_multiple_of(1024) {
                self.check_time()?;
            }
            c += 1;
        }
        Ok(())
    }

    fn process_deductions(&mut self) {
        let conjugates = self.conjugates.clone();
        let subgroup = self.subgroup.clone();
        loop {
            while let Some((a, x)) = self.deductions.pop() {
                if !self.live(a) {
                    continue;
                }
                for w in &conjugates[x as usize] {
                    if !self.live(a) {
                        break;
                    }
                    self.scan(a, w, false);
                }
                if !self.live(a) {
                    continue;
                }
                let b = self.get(a, x);
                if b == NONE {
                    continue;
                }
                for w in &conjugates[(x ^ 1) as usize] {
                    if !self.live(b) {
                        break;
                    }
                    self.scan(b, w, false);
                }
            }
            for w in subgroup.iter() {
                self.scan(0, w, false);
            }
            if self.deductions.is_empty() {
                break;
            }
        }
    }

    fn finish(mut self, subgroup_words: &[Word]) -> Result<(CosetTable, EnumerationStats)> {
        self.compact(0);
        let n = self.rows();
        if self.table.contains(&NONE) {
            return Err(Error::InternalInconsistency(
                "enumeration ended with undefined entries".into(),
            ));
        }
        for r in self.relators.iter() {
            for c in 0..n as u32 {
                let mut d = c;
                for &x in r {
                    d = self.get(d, x);
                }
                if d != c {
                    return Err(Error::InternalInconsistency(format!(
                        "relator does not close at coset {c}"
                    )));
                }
            }
        }
        let mut trivial_subgroup = true;
        for w in subgroup_words {
            let cols = to_columns(w);
            let mut d = 0u32;
            for &x in &cols {
                d = self.get(d, x);
            }
            if d != 0 {
                return Err(Error::InternalInconsistency(
                    "subgroup generator does not fix the subgroup coset".into(),
                ));
            }
            trivial_subgroup &= w.is_identity();
        }
        let stats = EnumerationStats {
            cosets_defined: self.defined,
            cosets_final: n,
            coincidences: self.coincidences,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        };
        Ok((
            CosetTable {
                columns: self.cols,
                rows: self.table,
                coset_count: n,
                complete: true,
                trivial_subgroup,
            },
            stats,
        ))
    }
}

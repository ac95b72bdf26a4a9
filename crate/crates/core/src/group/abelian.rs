//! Finitely generated abelian groups: invariant factors via Smith normal
//! form over arbitrary-precision integers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{derived_subgroup, quotient, Elem, RealizedGroup};
use crate::error::{Error, Result};

/// Invariant factors `d1 | d2 | ... | dk`, none equal to 1; a `0` entry is an
/// infinite cyclic factor and sorts last.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants::default()
    }

    /// Invariant factors of `Z/c1 + Z/c2 + ...` for arbitrary cyclic orders
    /// (`0` = infinite, `1` = trivial).
    pub fn from_cyclic_factors(cyclic: &[u64]) -> Result<Self> {
        let n = cyclic.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, &c) in cyclic.iter().enumerate() {
            m[i][i] = i64::try_from(c)
                .map_err(|_| Error::Overflow(format!("cyclic order {c}")))?;
        }
        abelian_invariants(&m, n)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        !self.factors.contains(&0)
    }

    /// Number of infinite cyclic factors.
    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }

    /// The finite part.
    pub fn torsion(&self) -> AbelianInvariants {
        AbelianInvariants {
            factors: self.factors.iter().copied().filter(|&d| d != 0).collect(),
        }
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    pub fn exponent(&self) -> u64 {
        if !self.is_finite() {
            return 0;
        }
        self.factors.last().copied().unwrap_or(1)
    }

    /// Whether a group with these invariants embeds in one with `other`'s:
    /// aligned from the largest factor, each factor must divide its partner.
    pub fn embeds_in(&self, other: &AbelianInvariants) -> bool {
        if self.factors.len() > other.factors.len() {
            return false;
        }
        self.factors
            .iter()
            .rev()
            .zip(other.factors.iter().rev())
            .all(|(&a, &b)| if a == 0 { b == 0 } else { b % a == 0 })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("C{d}") })
            .collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Invariant factors of the cokernel of an integer relation matrix with one
/// row per relation and `columns` generator columns.
pub fn abelian_invariants(rows: &[Vec<i64>], columns: usize) -> Result<AbelianInvariants> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            v.resize(columns, BigInt::zero());
            v
        })
        .collect();
    let diagonal = smith_diagonal(&mut m, columns);
    let mut factors = Vec::new();
    for d in &diagonal {
        if !d.is_one() {
            factors.push(
                d.to_u64()
                    .ok_or_else(|| Error::Overflow(format!("invariant factor {d}")))?,
            );
        }
    }
    factors.extend(std::iter::repeat_n(0, columns - diagonal.len()));
    Ok(AbelianInvariants { factors })
}

/// Smith normal form diagonal (nonzero entries, each dividing the next).
fn smith_diagonal(m: &mut [Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let delta = &q * &m[t][j];
                    m[i][j] -= delta;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                    if m[i][t].abs() < m[t][t].abs() {
                        m.swap(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                    if m[t][j].abs() < m[t][t].abs() {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let p = m[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Invariant factors of a finite abelian group, read off from the number of
/// solutions of `x^(p^k) = 1` for each prime `p` dividing the order.
pub fn invariants_of_abelian_group(g: &RealizedGroup) -> Result<AbelianInvariants> {
    if !g.is_abelian() {
        return Err(Error::InternalInconsistency(format!(
            "{} is not abelian",
            g.name()
        )));
    }
    let n = g.order() as u64;
    let mut primary: Vec<Vec<u64>> = Vec::new();
    for p in prime_divisors(n) {
        let mut parts = Vec::new();
        let mut prev_rank = 0u32;
        let mut pk = p;
        loop {
            let count = g.elements().filter(|&x| g.pow(x, pk as i64) == 0).count() as u64;
            let rank = count.ilog(p);
            let at_least = rank - prev_rank;
            if at_least == 0 {
                break;
            }
            // `at_least` cyclic factors have order >= pk.
            parts.push((pk, at_least));
            prev_rank = rank;
            pk *= p;
        }
        // Convert "number of factors with order >= p^k" into factor orders.
        let mut orders = Vec::new();
        for (idx, &(q, c)) in parts.iter().enumerate() {
            let next = parts.get(idx + 1).map_or(0, |&(_, c2)| c2);
            orders.extend(std::iter::repeat_n(q, (c - next) as usize));
        }
        orders.sort_unstable_by(|a, b| b.cmp(a));
        primary.push(orders);
    }
    let width = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; width];
    for orders in &primary {
        for (i, &q) in orders.iter().enumerate() {
            factors[i] *= q;
        }
    }
    factors.reverse();
    Ok(AbelianInvariants { factors })
}

/// Abelianization `G/G'` with its projection.
pub fn abelianization(g: &Arc<RealizedGroup>) -> Result<(Arc<RealizedGroup>, super::Homomorphism)> {
    let d = derived_subgroup(g);
    quotient(g, &d, format!("{}^ab", g.name()))
}

/// Invariant factors of `G/G'` for a finite group.
pub fn abelianization_invariants(g: &Arc<RealizedGroup>) -> Result<AbelianInvariants> {
    if g.is_abelian() {
        return invariants_of_abelian_group(g);
    }
    let (ab, _) = abelianization(g)?;
    invariants_of_abelian_group(&ab)
}

/// Rank over the rationals of an integer matrix (fraction-free elimination).
pub fn rational_rank(rows: &[Vec<i64>], columns: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            v.resize(columns, BigInt::zero());
            v
        })
        .collect();
    let mut rank = 0;
    for c in 0..columns {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[rank][c].clone();
            let b = m[i][c].clone();
            for j in c..columns {
                let v = &a * &m[i][j] - &b * &m[rank][j];
                m[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Generators whose image in the abelianization has infinite order.
pub fn free_generators(rows: &[Vec<i64>], columns: usize) -> Vec<usize> {
    let base = rational_rank(rows, columns);
    (0..columns)
        .filter(|&i| {
            let mut ext = rows.to_vec();
            let mut e = vec![0i64; columns];
            e[i] = 1;
            ext.push(e);
            rational_rank(&ext, columns) > base
        })
        .collect()
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Element whose powers realize the largest invariant factor; handy for
/// witnesses in reports.
pub fn element_of_max_order(g: &RealizedGroup) -> Elem {
    g.elements()
        .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
        .unwrap_or(0)
}

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// An order bound assembled from exact sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub exact_orders: BTreeMap<String, u64>,
    pub bound: u64,
    pub chain: Vec<String>,
}

fn positive(inputs: &[(&str, u64)]) -> Result<BTreeMap<String, u64>> {
    let mut map = BTreeMap::new();
    for &(name, v) in inputs {
        if v == 0 {
            return Err(Error::Usage(format!("{name} must be positive")));
        }
        map.insert(name.to_string(), v);
    }
    Ok(map)
}

fn product(factors: &[u64]) -> Result<u64> {
    factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .ok_or_else(|| Error::Overflow(format!("product of {factors:?}")))
}

/// `|π_n(X)| ≤ a·b·c·t`, where `a`, `b`, `c` bound the homotopy groups of
/// the pieces and `t` is the order of the tensor product of the relative
/// groups.
pub fn bound_theorem_a(a: u64, b: u64, c: u64, t: u64) -> Result<BoundReport> {
    let exact_orders = positive(&[("a", a), ("b", b), ("c", c), ("t", t)])?;
    let bc = product(&[b, c])?;
    let bct = product(&[b, c, t])?;
    let abct = product(&[a, b, c, t])?;
    Ok(BoundReport {
        exact_orders,
        bound: abct,
        chain: vec![
            format!("pi_n(C) -> pi_n(B) -> pi_n(B,C): |pi_n(B,C)| <= b*c = {bc}"),
            format!("pi_n(X,A) is an extension by the triad group: |pi_n(X,A)| <= b*c*t = {bct}"),
            format!("pi_n(A) -> pi_n(X) -> pi_n(X,A): |pi_n(X)| <= a*b*c*t = {abct}"),
        ],
    })
}

/// `|π₃(SX)| ≤ a·t` with `a = |π₂(X)|` and `t` the tensor-square order.
pub fn bound_theorem_b(a: u64, t: u64) -> Result<BoundReport> {
    let exact_orders = positive(&[("a", a), ("t", t)])?;
    let at = product(&[a, t])?;
    Ok(BoundReport {
        exact_orders,
        bound: at,
        chain: vec![
            format!("image of pi_2(X) in pi_3(SX) has order <= a = {a}"),
            format!("|pi_2(Omega SX, X)| <= t = {t}"),
            format!("pi_2(X) -> pi_3(SX) -> pi_2(Omega SX, X): |pi_3(SX)| <= a*t = {at}"),
        ],
    })
}

/// `|π₃(X)| ≤ n_a·n_b·t` for a homotopy pushout, `t` the order of the
/// tensor product of the fibres' fundamental groups.
pub fn bound_pushout_pi3(n_a: u64, n_b: u64, t: u64) -> Result<BoundReport> {
    let exact_orders = positive(&[("n_a", n_a), ("n_b", n_b), ("t", t)])?;
    let nt = product(&[n_a, t])?;
    let bound = product(&[n_a, n_b, t])?;
    Ok(BoundReport {
        exact_orders,
        bound,
        chain: vec![
            format!("pi_1(F(X)) = pi_1(F(f)) (x) pi_1(F(g)) has order t = {t}"),
            format!("fibre sequence of F(X): order <= n_a*t = {nt}"),
            format!("fibre sequence of X: |pi_3(X)| <= n_a*n_b*t = {bound}"),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excision_bound_arithmetic() {
        assert_eq!(bound_theorem_a(2, 3, 4, 5).unwrap().bound, 120);
        assert_eq!(bound_theorem_a(1, 1, 1, 7).unwrap().bound, 7);
        assert_eq!(bound_theorem_a(2, 3, 4, 1).unwrap().bound, 24);
        assert_eq!(bound_theorem_a(2, 3, 4, 5).unwrap().chain.len(), 3);
    }

    #[test]
    fn suspension_bound_arithmetic() {
        assert_eq!(bound_theorem_b(2, 2).unwrap().bound, 4);
        assert_eq!(bound_theorem_b(1, 9).unwrap().bound, 9);
        assert_eq!(bound_theorem_b(5, 1).unwrap().bound, 5);
    }

    #[test]
    fn pushout_arithmetic() {
        assert_eq!(bound_pushout_pi3(2, 3, 4).unwrap().bound, 24);
        assert_eq!(bound_pushout_pi3(1, 1, 6).unwrap().bound, 6);
        assert_eq!(bound_pushout_pi3(2, 5, 1).unwrap().bound, 10);
    }

    #[test]
    fn rejects_zero_and_overflow() {
        assert!(matches!(bound_theorem_b(0, 2), Err(Error::Usage(_))));
        assert!(matches!(bound_theorem_b(u64::MAX, 2), Err(Error::Overflow(_))));
    }
}

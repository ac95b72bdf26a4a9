use crate::error::{Error, Result};
use crate::word::{Presentation, Word};

/// Facts a catalog entry's realization must match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownFacts {
    /// `None` for infinite groups.
    pub order: Option<u64>,
    pub abelian: bool,
}

impl KnownFacts {
    pub fn is_infinite(&self) -> bool {
        self.order.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Presentation,
    pub known_facts: Option<KnownFacts>,
}

/// Finite catalog names small enough for every construction, ordered by
/// group order.
pub const SMALL_CORPUS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2x2", "C5", "C6", "S3", "C7", "C8", "C2x4", "C2x2x2", "D4", "Q8",
    "C9", "C3x3", "C10", "D5", "C11", "C12", "C2x6", "D6", "A4",
];

/// Finite catalog names of orders 13 to 24 whose `ν(G)` stays within
/// desk-scale enumeration.
pub const EXTENDED_CORPUS: &[&str] = &[
    "C13", "C14", "D7", "C15", "C16", "D8", "C2x8", "C18", "D9", "C20", "C21", "C22", "D11",
    "C23", "C24", "S4",
];

const LETTERS: &str = "abcdefghijklmnopqrstuvwxyz";

fn names(k: usize) -> Vec<String> {
    LETTERS.chars().take(k).map(|c| c.to_string()).collect()
}

fn g(i: usize) -> Word {
    Word::gen(i)
}

fn entry(name: &str, gens: usize, rels: Vec<Word>, facts: KnownFacts) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        name: name.to_string(),
        presentation: Presentation::new(name, names(gens), rels)?,
        known_facts: Some(facts),
    })
}

fn unknown(name: &str) -> Error {
    Error::UnknownCatalogName(name.to_string())
}

fn number(s: &str, name: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return Err(unknown(name));
    }
    s.parse().map_err(|_| unknown(name))
}

/// Looks up a built-in group by name.
///
/// Names: `C<n>`, `C<a>x<b>...` (also `C<a>xC<b>...`), `D<n>` (order `2n`),
/// `S<n>` for `n <= 5`, `Q8`, `A4`, `F<r>` and `Z`.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry> {
    match name {
        "Q8" => {
            return entry(
                name,
                2,
                vec![
                    g(0).pow(4),
                    g(0).pow(2).mul(&g(1).pow(-2)),
                    g(1).inverse().mul(&g(0)).mul(&g(1)).mul(&g(0)),
                ],
                KnownFacts {
                    order: Some(8),
                    abelian: false,
                },
            )
        }
        "A4" => {
            return entry(
                name,
                2,
                vec![g(0).pow(2), g(1).pow(3), g(0).mul(&g(1)).pow(3)],
                KnownFacts {
                    order: Some(12),
                    abelian: false,
                },
            )
        }
        "Z" => return free(name, 1),
        _ => {}
    }
    let (head, rest) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    match head {
        "C" => {
            let parts: Vec<&str> = rest.split('x').collect();
            let mut orders = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                let p = if i > 0 { p.strip_prefix('C').unwrap_or(p) } else { p };
                let n = number(p, name)?;
                if n == 0 {
                    return Err(unknown(name));
                }
                orders.push(n);
            }
            if orders.len() > LETTERS.len() {
                return Err(unknown(name));
            }
            let k = orders.len();
            let mut rels: Vec<Word> = orders
                .iter()
                .enumerate()
                .map(|(i, &n)| g(i).pow(n as i64))
                .collect();
            for i in 0..k {
                for j in i + 1..k {
                    rels.push(Word::commutator(&g(i), &g(j)));
                }
            }
            let order = orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n));
            entry(
                name,
                k,
                rels,
                KnownFacts {
                    order: Some(order.ok_or_else(|| unknown(name))?),
                    abelian: true,
                },
            )
        }
        "D" => {
            let n = number(rest, name)?;
            if n == 0 {
                return Err(unknown(name));
            }
            entry(
                name,
                2,
                vec![g(0).pow(n as i64), g(1).pow(2), g(0).mul(&g(1)).pow(2)],
                KnownFacts {
                    order: Some(2 * n),
                    abelian: n <= 2,
                },
            )
        }
        "S" => {
            let n = number(rest, name)?;
            if n == 0 || n > 5 {
                return Err(unknown(name));
            }
            symmetric(name, n as usize)
        }
        "F" => {
            let r = number(rest, name)?;
            if r == 0 || r as usize > LETTERS.len() {
                return Err(unknown(name));
            }
            free(name, r as usize)
        }
        _ => Err(unknown(name)),
    }
}

fn free(name: &str, r: usize) -> Result<CatalogEntry> {
    entry(
        name,
        r,
        Vec::new(),
        KnownFacts {
            order: None,
            abelian: r == 1,
        },
    )
}

/// Coxeter presentation on adjacent transpositions.
fn symmetric(name: &str, n: usize) -> Result<CatalogEntry> {
    let k = n.saturating_sub(1).max(1);
    let mut rels = Vec::new();
    if n == 1 {
        rels.push(g(0));
    } else {
        for i in 0..k {
            rels.push(g(i).pow(2));
            for j in i + 1..k {
                let e = if j == i + 1 { 3 } else { 2 };
                rels.push(g(i).mul(&g(j)).pow(e));
            }
        }
    }
    let order: u64 = (1..=n as u64).product();
    entry(
        name,
        k,
        rels,
        KnownFacts {
            order: Some(order),
            abelian: n <= 2,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_entry() {
        let e = catalog_lookup("C6").unwrap();
        assert_eq!(e.presentation.generators, vec!["a"]);
        assert_eq!(e.presentation.relators, vec![Word::power_of(0, 6)]);
        assert_eq!(e.known_facts.unwrap().order, Some(6));
    }

    #[test]
    fn products_in_both_spellings() {
        let a = catalog_lookup("C2x4").unwrap();
        let b = catalog_lookup("C2xC4").unwrap();
        assert_eq!(a.presentation.relators, b.presentation.relators);
        assert_eq!(a.known_facts.unwrap().order, Some(8));
    }

    #[test]
    fn free_entries_are_infinite() {
        let z = catalog_lookup("Z").unwrap();
        assert!(z.presentation.relators.is_empty());
        assert!(z.known_facts.unwrap().is_infinite());
        assert_eq!(catalog_lookup("F3").unwrap().presentation.rank(), 3);
    }

    #[test]
    fn rejects_unknown_names() {
        for bad in ["", "C0", "C", "S6", "X7", "C2x", "D", "F0", "C02", "Q16"] {
            assert!(
                matches!(catalog_lookup(bad), Err(Error::UnknownCatalogName(_))),
                "{bad}"
            );
        }
    }
}

//! Words over a generating set and finite presentations.

use std::fmt;

use crate::error::{Error, Result};

/// A generator raised to a nonzero power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

/// A word in the free group, stored as runs of generator powers.
///
/// Adjacent runs never share a generator and no exponent is zero; the empty
/// word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(gen: usize) -> Self {
        Word::from_letters([Letter { gen, exp: 1 }])
    }

    pub fn power_of(gen: usize, exp: i64) -> Self {
        Word::from_letters([Letter { gen, exp }])
    }

    /// Builds a freely reduced word from arbitrary runs.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from signed unit letters `(gen, inverse?)`.
    pub fn from_units(units: impl IntoIterator<Item = (usize, bool)>) -> Self {
        Word::from_letters(
            units
                .into_iter()
                .map(|(gen, inv)| Letter { gen, exp: if inv { -1 } else { 1 } }),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of unit letters.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    fn push(&mut self, l: Letter) {
        if l.exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.gen == l.gen {
                last.exp += l.exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(l);
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, exp: -l.exp })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `x^-1 y^-1 x y`
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// `y^-1 x y`
    pub fn conjugate(x: &Word, y: &Word) -> Word {
        y.inverse().mul(x).mul(y)
    }

    /// Unit letters as `(gen, inverse?)`, expanding powers.
    pub fn units(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.letters.iter().flat_map(|l| {
            std::iter::repeat_n((l.gen, l.exp < 0), l.exp.unsigned_abs() as usize)
        })
    }

    /// Exponent sum of each generator, for abelianization.
    pub fn exponent_sums(&self, n_gens: usize) -> Vec<i64> {
        let mut v = vec![0; n_gens];
        for l in &self.letters {
            v[l.gen] += l.exp;
        }
        v
    }

    /// Cyclically reduces the word (removes matching ends).
    pub fn cyclically_reduced(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.gen != last.gen {
                break;
            }
            letters.pop();
            letters[0].exp += last.exp;
            if letters[0].exp == 0 {
                letters.remove(0);
            }
        }
        Word { letters }
    }

    /// Canonical representative among cyclic rotations of the word and its
    /// inverse, used to deduplicate relators.
    pub fn cyclic_canonical(&self) -> Word {
        let reduced = self.cyclically_reduced();
        let units: Vec<(usize, bool)> = reduced.units().collect();
        if units.is_empty() {
            return Word::identity();
        }
        let inv: Vec<(usize, bool)> = reduced.inverse().units().collect();
        let n = units.len();
        let mut best: Option<Vec<(usize, bool)>> = None;
        for seq in [&units, &inv] {
            for start in 0..n {
                let rot: Vec<(usize, bool)> =
                    seq[start..].iter().chain(&seq[..start]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word::from_units(best.unwrap())
    }

    /// Formats the word with the given generator names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            // The grammar has no identity token; `g^0` parses to the empty word.
            return match self.names.first() {
                Some(n) => write!(f, "{n}^0"),
                None => Ok(()),
            };
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self.names.get(l.gen).map(String::as_str).unwrap_or("?");
            if l.exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

/// Generators plus relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self> {
        let p = Presentation {
            name: name.into(),
            generators,
            relators,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            if self.generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        for r in &self.relators {
            if let Some(m) = r.max_gen() {
                if m >= self.generators.len() {
                    return Err(Error::UnknownGenerator {
                        name: format!("#{m}"),
                        line: 0,
                        column: 0,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Relation matrix of the abelianization: one row per relator, one
    /// column per generator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_sums(self.rank()))
            .collect()
    }

    /// True when the presentation visibly defines an abelian group: at most
    /// one generator, or every pair of generators has a commutator relator.
    pub fn is_visibly_abelian(&self) -> bool {
        let n = self.rank();
        if n <= 1 {
            return true;
        }
        let canon: std::collections::HashSet<Word> =
            self.relators.iter().map(Word::cyclic_canonical).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                canon.contains(&Word::commutator(&Word::gen(i), &Word::gen(j)).cyclic_canonical())
            })
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group {} {{ gens: {};", self.name, self.generators.join(" "))?;
        if !self.relators.is_empty() {
            f.write_str(" rels: ")?;
            for (i, r) in self.relators.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", r.display(&self.generators))?;
            }
            f.write_str(";")?;
        }
        f.write_str(" }")
    }
}

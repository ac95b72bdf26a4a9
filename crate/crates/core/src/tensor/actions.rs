use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, RealizedGroup};
use crate::io::ActionSpec;

/// Mutual right actions of `G` and `H`, tabulated on all elements, that
/// satisfy both compatibility identities.
#[derive(Debug, Clone)]
pub struct CompatibleActionPair {
    g: Arc<RealizedGroup>,
    h: Arc<RealizedGroup>,
    // g_on_h[x * |H| + y] = y^x
    g_on_h: Vec<Elem>,
    // h_on_g[y * |G| + x] = x^y
    h_on_g: Vec<Elem>,
    conjugation: bool,
}

impl CompatibleActionPair {
    pub fn g(&self) -> &Arc<RealizedGroup> {
        &self.g
    }

    pub fn h(&self) -> &Arc<RealizedGroup> {
        &self.h
    }

    /// `y^x` for `x` in G, `y` in H.
    pub fn act_on_h(&self, y: Elem, x: Elem) -> Elem {
        self.g_on_h[x * self.h.order() + y]
    }

    /// `x^y` for `x` in G, `y` in H.
    pub fn act_on_g(&self, x: Elem, y: Elem) -> Elem {
        self.h_on_g[y * self.g.order() + x]
    }

    /// Both groups are the same and both actions are conjugation.
    pub fn is_conjugation(&self) -> bool {
        self.conjugation
    }

    pub fn is_trivial(&self) -> bool {
        let ng = self.g.order();
        let nh = self.h.order();
        self.g_on_h.iter().enumerate().all(|(i, &v)| v == i % nh)
            && self.h_on_g.iter().enumerate().all(|(i, &v)| v == i % ng)
    }

    /// Both actions trivial.
    pub fn trivial(g: Arc<RealizedGroup>, h: Arc<RealizedGroup>) -> Result<Self> {
        let g_on_h = (0..g.order()).flat_map(|_| h.elements()).collect();
        let h_on_g = (0..h.order()).flat_map(|_| g.elements()).collect();
        Self::from_tables(g, h, g_on_h, h_on_g)
    }

    /// `G` acting on itself by conjugation from both sides.
    pub fn conjugation(g: Arc<RealizedGroup>) -> Result<Self> {
        let table: Vec<Elem> = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .map(|(x, y)| g.conj(y, x))
            .collect();
        let mut pair = Self::from_tables(g.clone(), g, table.clone(), table)?;
        pair.conjugation = true;
        Ok(pair)
    }

    /// Validates element-level action tables.
    pub fn from_tables(
        g: Arc<RealizedGroup>,
        h: Arc<RealizedGroup>,
        g_on_h: Vec<Elem>,
        h_on_g: Vec<Elem>,
    ) -> Result<Self> {
        if g_on_h.len() != g.order() * h.order() || h_on_g.len() != g.order() * h.order() {
            return Err(Error::InternalInconsistency("action table has the wrong size".into()));
        }
        let pair = CompatibleActionPair {
            g,
            h,
            g_on_h,
            h_on_g,
            conjugation: false,
        };
        pair.check_automorphisms()?;
        pair.check_compatibility()?;
        pair.check_action_homomorphisms()?;
        Ok(pair)
    }

    fn check_automorphisms(&self) -> Result<()> {
        check_automorphism_table(&self.g, &self.h, &self.g_on_h)?;
        check_automorphism_table(&self.h, &self.g, &self.h_on_g)
    }

    fn check_compatibility(&self) -> Result<()> {
        let (g, h) = (&*self.g, &*self.h);
        // x^(y^x1) = ((x^(x1^-1))^y)^x1
        for x in g.elements() {
            for y in h.elements() {
                for x1 in g.elements() {
                    let lhs = self.act_on_g(x, self.act_on_h(y, x1));
                    let t = g.conj(x, g.inv(x1));
                    let rhs = g.conj(self.act_on_g(t, y), x1);
                    if lhs != rhs {
                        return Err(Error::Incompatible {
                            witness: format!(
                                "(g, h, g1) = ({}, {}, {})",
                                g.element_label(x),
                                h.element_label(y),
                                g.element_label(x1)
                            ),
                        });
                    }
                }
            }
        }
        // y^(x^y1) = ((y^(y1^-1))^x)^y1
        for y in h.elements() {
            for x in g.elements() {
                for y1 in h.elements() {
                    let lhs = self.act_on_h(y, self.act_on_g(x, y1));
                    let t = h.conj(y, h.inv(y1));
                    let rhs = h.conj(self.act_on_h(t, x), y1);
                    if lhs != rhs {
                        return Err(Error::Incompatible {
                            witness: format!(
                                "(h, g, h1) = ({}, {}, {})",
                                h.element_label(y),
                                g.element_label(x),
                                h.element_label(y1)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_action_homomorphisms(&self) -> Result<()> {
        check_right_action(&self.g, &self.h, &self.g_on_h)?;
        check_right_action(&self.h, &self.g, &self.h_on_g)
    }
}

/// Each row of the table must be an automorphism of the target.
fn check_automorphism_table(
    actor: &RealizedGroup,
    target: &RealizedGroup,
    table: &[Elem],
) -> Result<()> {
    let n = target.order();
    for a in actor.elements() {
        let row = &table[a * n..(a + 1) * n];
        if let Some(bad) = automorphism_defect(target, row) {
            return Err(Error::NotAutomorphism {
                actor: actor.name().to_string(),
                generator: format!("{} ({bad})", actor.element_label(a)),
            });
        }
    }
    Ok(())
}

fn automorphism_defect(target: &RealizedGroup, row: &[Elem]) -> Option<&'static str> {
    let n = target.order();
    let mut hit = vec![false; n];
    for &y in row {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Some("not bijective");
        }
    }
    for x in target.elements() {
        for y in target.elements() {
            if row[target.mul(x, y)] != target.mul(row[x], row[y]) {
                return Some("not multiplicative");
            }
        }
    }
    None
}

/// `(y^a)^b = y^(ab)` for all `a, b` in the actor.
fn check_right_action(actor: &RealizedGroup, target: &RealizedGroup, table: &[Elem]) -> Result<()> {
    let n = target.order();
    for a in actor.elements() {
        for b in actor.elements() {
            let ab = actor.mul(a, b);
            for y in target.elements() {
                if table[b * n + table[a * n + y]] != table[ab * n + y] {
                    return Err(Error::NotActionHomomorphism {
                        actor: actor.name().to_string(),
                    });
                }
            }
        }
    }
    if table[..n].iter().enumerate().any(|(y, &v)| v != y) {
        return Err(Error::NotActionHomomorphism {
            actor: actor.name().to_string(),
        });
    }
    Ok(())
}

/// Element-level table of the action described by `spec`: each actor
/// generator's target-generator images extend to an endomorphism, and an
/// actor element acts through its canonical word.
pub fn action_table(
    actor: &RealizedGroup,
    target: &RealizedGroup,
    spec: &ActionSpec,
) -> Result<Vec<Elem>> {
    let n = target.order();
    if spec.generator_map.len() != actor.generators().len() {
        return Err(Error::IncompleteMap {
            action: spec.name.clone(),
            missing: format!("{} actor generators", actor.generators().len()),
        });
    }
    let mut gen_autos: Vec<Vec<Elem>> = Vec::new();
    for (s, images) in spec.generator_map.iter().enumerate() {
        if images.len() != target.generators().len() {
            return Err(Error::IncompleteMap {
                action: spec.name.clone(),
                missing: format!("images of generator {}", actor.generator_names()[s]),
            });
        }
        let gen_images: Vec<Elem> = images.iter().map(|w| target.eval(w)).collect();
        let row = crate::group::extend_along_words(target, target, &gen_images);
        if automorphism_defect(target, &row).is_some() {
            return Err(Error::NotAutomorphism {
                actor: actor.name().to_string(),
                generator: actor.generator_names()[s].clone(),
            });
        }
        gen_autos.push(row);
    }
    let mut table = vec![0; actor.order() * n];
    for y in 0..n {
        table[y] = y;
    }
    for a in 1..actor.order() {
        let w = actor.word_of(a);
        let s = *w.last().expect("non-identity word") as usize;
        let prefix = actor.mul_gen_inv(a, s);
        for y in 0..n {
            table[a * n + y] = gen_autos[s][table[prefix * n + y]];
        }
    }
    Ok(table)
}

/// Builds and validates the pair described by two action specs.
pub fn validate_compatibility(
    g: Arc<RealizedGroup>,
    h: Arc<RealizedGroup>,
    g_on_h: &ActionSpec,
    h_on_g: &ActionSpec,
) -> Result<CompatibleActionPair> {
    let t1 = action_table(&g, &h, g_on_h)?;
    let t2 = action_table(&h, &g, h_on_g)?;
    CompatibleActionPair::from_tables(g, h, t1, t2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn spec(name: &str, actor_gens: usize, images: Vec<Vec<Word>>) -> ActionSpec {
        assert_eq!(images.len(), actor_gens);
        ActionSpec {
            name: name.into(),
            actor: "G".into(),
            target: "H".into(),
            generator_map: images,
        }
    }

    fn s3() -> Arc<RealizedGroup> {
        Arc::new(
            RealizedGroup::from_permutations(
                "S3",
                vec!["a".into(), "b".into()],
                &[vec![1, 2, 0], vec![1, 0, 2]],
                100,
            )
            .unwrap(),
        )
    }

    #[test]
    fn trivial_actions_are_compatible() {
        let g = s3();
        let h = Arc::new(RealizedGroup::cyclic(4));
        let p = CompatibleActionPair::trivial(g, h).unwrap();
        assert!(p.is_trivial());
    }

    #[test]
    fn conjugation_is_compatible() {
        let p = CompatibleActionPair::conjugation(s3()).unwrap();
        assert!(p.is_conjugation());
        assert!(!p.is_trivial());
    }

    #[test]
    fn inversion_action_of_c2_on_c4() {
        let c2 = Arc::new(RealizedGroup::cyclic(2));
        let c4 = Arc::new(RealizedGroup::cyclic(4));
        let inv = spec("inv", 1, vec![vec![Word::power_of(0, -1)]]);
        let t = action_table(&c2, &c4, &inv).unwrap();
        let b = c4.generators()[0];
        assert_eq!(t[4 + b], c4.inv(b));
        let triv_back = spec("triv", 1, vec![vec![Word::gen(0)]]);
        // C4 acting trivially on C2 and C2 inverting C4 is compatible.
        validate_compatibility(c2, c4, &inv, &triv_back).unwrap();
    }

    #[test]
    fn mutual_squaring_on_c5_is_incompatible() {
        let g = Arc::new(RealizedGroup::cyclic(5));
        let h = Arc::new(
            RealizedGroup::from_regular_action(
                "C5",
                vec!["b".into()],
                vec![(0..5).map(|x| ((x + 1) % 5) as u32).collect()],
                5,
            )
            .unwrap()
            .0,
        );
        let sq = spec("sq", 1, vec![vec![Word::power_of(0, 2)]]);
        let err = validate_compatibility(g, h, &sq, &sq).unwrap_err();
        match err {
            Error::Incompatible { witness } => {
                assert!(witness.ends_with("(a, b, a)"), "{witness}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_automorphism_rejected() {
        let c2 = Arc::new(RealizedGroup::cyclic(2));
        let c4 = Arc::new(RealizedGroup::cyclic(4));
        let sq = spec("sq", 1, vec![vec![Word::power_of(0, 2)]]);
        let triv = spec("triv", 1, vec![vec![Word::gen(0)]]);
        assert!(matches!(
            validate_compatibility(c2, c4, &sq, &triv),
            Err(Error::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn non_action_rejected() {
        // C3 acting on C3 by inversion: a^3 acts as inversion, not identity.
        let c3 = Arc::new(RealizedGroup::cyclic(3));
        let c2 = Arc::new(RealizedGroup::cyclic(2));
        let inv = spec("inv", 1, vec![vec![Word::power_of(0, -1)]]);
        let triv = spec("triv", 1, vec![vec![Word::gen(0)]]);
        assert!(validate_compatibility(c3, c2.clone(), &triv, &triv).is_ok());
        let c3 = Arc::new(RealizedGroup::cyclic(3));
        let r = validate_compatibility(c3.clone(), c3, &inv, &triv);
        assert!(matches!(
            r,
            Err(Error::NotActionHomomorphism { .. }) | Err(Error::Incompatible { .. })
        ));
    }

    #[test]
    fn missing_images_reported() {
        let c2 = Arc::new(RealizedGroup::cyclic(2));
        let empty = ActionSpec {
            name: "bad".into(),
            actor: "C2".into(),
            target: "C2".into(),
            generator_map: vec![vec![]],
        };
        assert!(matches!(
            action_table(&c2, &c2, &empty),
            Err(Error::IncompleteMap { .. })
        ));
    }
}

use std::sync::Arc;

use super::{closure, is_normal, Elem, RealizedGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between realized groups, tabulated on every source element.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Arc<RealizedGroup>,
    target: Arc<RealizedGroup>,
    images: Vec<Elem>,
}

impl Homomorphism {
    /// Wraps an image table after checking `images[xy] = images[x] images[y]`
    /// on every pair.
    pub fn new(
        source: Arc<RealizedGroup>,
        target: Arc<RealizedGroup>,
        images: Vec<Elem>,
    ) -> Result<Self> {
        let h = Homomorphism {
            source,
            target,
            images,
        };
        h.verify()?;
        Ok(h)
    }

    /// Extends generator images along canonical words, then verifies.
    pub fn from_generator_images(
        source: Arc<RealizedGroup>,
        target: Arc<RealizedGroup>,
        gen_images: &[Elem],
    ) -> Result<Self> {
        let images = extend_along_words(&source, &target, gen_images);
        Homomorphism::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<RealizedGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RealizedGroup> {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).is_trivial()
    }

    /// Exhaustive homomorphism check.
    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.images.len() != s.order() {
            return Err(Error::NotHomomorphism("image table has the wrong length".into()));
        }
        if self.images.iter().any(|&y| y >= t.order()) {
            return Err(Error::NotHomomorphism("image outside the target".into()));
        }
        for x in s.elements() {
            for y in s.elements() {
                if self.images[s.mul(x, y)] != t.mul(self.images[x], self.images[y]) {
                    return Err(Error::NotHomomorphism(format!(
                        "images of {} and {} do not multiply",
                        s.element_label(x),
                        s.element_label(y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The image as a subgroup of the target.
    pub fn image(&self) -> Subgroup {
        let gens: Vec<Elem> = self
            .source
            .generators()
            .iter()
            .map(|&g| self.images[g])
            .collect();
        closure(&self.target, &gens)
    }
}

/// Maps each source element to the product of generator images along its
/// canonical word.
pub fn extend_along_words(
    source: &RealizedGroup,
    target: &RealizedGroup,
    gen_images: &[Elem],
) -> Vec<Elem> {
    let mut images = vec![0; source.order()];
    // Canonical words are breadth-first paths, so every element's prefix
    // has a smaller index.
    for x in 1..source.order() {
        let w = source.word_of(x);
        let (&s, _) = w.split_last().expect("non-identity has a word");
        let prefix = source.mul_gen_inv(x, s as usize);
        images[x] = target.mul(images[prefix], gen_images[s as usize]);
    }
    images
}

pub fn kernel(h: &Homomorphism) -> Subgroup {
    let members: Vec<Elem> = h
        .source
        .elements()
        .filter(|&x| h.images[x] == 0)
        .collect();
    closure(&h.source, &members)
}

/// Quotient of `parent` by a normal subgroup, with its projection.
pub fn quotient(
    parent: &Arc<RealizedGroup>,
    n: &Subgroup,
    name: impl Into<String>,
) -> Result<(Arc<RealizedGroup>, Homomorphism)> {
    if !Arc::ptr_eq(parent, n.parent()) {
        return Err(Error::MixedParents);
    }
    is_normal(n)?;
    // Label each element by its coset, numbered in order of first appearance
    // along the element indices.
    const NONE: usize = usize::MAX;
    let mut coset = vec![NONE; parent.order()];
    let mut reps = Vec::new();
    for x in parent.elements() {
        if coset[x] == NONE {
            let id = reps.len();
            reps.push(x);
            for &m in n.members() {
                coset[parent.mul(m, x)] = id;
            }
        }
    }
    let k = reps.len();
    debug_assert_eq!(k * n.order(), parent.order());
    let right: Vec<Vec<u32>> = parent
        .generators()
        .iter()
        .map(|&g| reps.iter().map(|&r| coset[parent.mul(r, g)] as u32).collect())
        .collect();
    let (q, relabel) =
        RealizedGroup::from_regular_action(name, parent.generator_names().to_vec(), right, k)?;
    let q = Arc::new(q);
    let images: Vec<Elem> = coset.iter().map(|&c| relabel[c]).collect();
    let proj = Homomorphism {
        source: parent.clone(),
        target: q.clone(),
        images,
    };
    if parent.order() <= 256 {
        proj.verify()?;
    }
    Ok((q, proj))
}

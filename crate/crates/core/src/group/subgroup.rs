use std::sync::Arc;

use super::{Elem, RealizedGroup};
use crate::error::{Error, Result};

/// A subgroup of a realized group, stored as its sorted member set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<RealizedGroup>,
    members: Vec<Elem>,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<RealizedGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn whole(parent: &Arc<RealizedGroup>) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: parent.elements().collect(),
            generators: parent.generators().to_vec(),
        }
    }

    pub fn trivial(parent: &Arc<RealizedGroup>) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
            && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn same_members(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }

    /// Exponent of the subgroup.
    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        self.members
            .iter()
            .fold(1usize, |acc, &x| acc.lcm(&self.parent.element_order(x)))
    }

    /// Materializes the subgroup as a standalone group on its chosen
    /// generators.
    ///
    /// Returns the group and, for each element of the new group, the parent
    /// element it came from.
    pub fn to_group(&self, name: impl Into<String>) -> Result<(RealizedGroup, Vec<Elem>)> {
        let gens = self.irredundant_generators();
        let n = self.members.len();
        let local = |x: Elem| {
            self.members
                .binary_search(&x)
                .expect("subgroup closed under multiplication")
        };
        let local_gens: Vec<usize> = gens.iter().map(|&g| local(g)).collect();
        let gen_names = (0..gens.len()).map(|i| format!("s{}", i + 1)).collect();
        // members[0] is the identity since members are sorted and contain 0.
        let (g, relabel) =
            RealizedGroup::from_mul(name, gen_names, n, &local_gens, |a, b| {
                local(self.parent.mul(self.members[a], self.members[b]))
            })?;
        let mut back = vec![0; n];
        for (old, &new) in relabel.iter().enumerate() {
            back[new] = self.members[old];
        }
        Ok((g, back))
    }

    /// Greedy generating set: each kept generator lies outside the span of
    /// the ones before it.
    pub fn irredundant_generators(&self) -> Vec<Elem> {
        let mut kept: Vec<Elem> = Vec::new();
        let mut span = closure(&self.parent, &[]);
        let candidates = if self.generators.is_empty() {
            &self.members
        } else {
            &self.generators
        };
        for &g in candidates {
            if !span.contains(g) {
                kept.push(g);
                span = closure(&self.parent, &kept);
                if span.order() == self.order() {
                    break;
                }
            }
        }
        kept
    }

    /// Verifies closure under products and inverses.
    pub fn verify(&self) -> Result<()> {
        if !self.contains(0) {
            return Err(Error::InternalInconsistency("subgroup misses the identity".into()));
        }
        for &a in &self.members {
            if !self.contains(self.parent.inv(a)) {
                return Err(Error::InternalInconsistency("subgroup not closed under inverse".into()));
            }
            for &b in &self.generators {
                if !self.contains(self.parent.mul(a, b)) {
                    return Err(Error::InternalInconsistency(
                        "subgroup not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Smallest subgroup containing `gens`.
pub fn closure(parent: &Arc<RealizedGroup>, gens: &[Elem]) -> Subgroup {
    let n = parent.order();
    let mut seen = vec![false; n];
    let mut members = vec![0];
    seen[0] = true;
    let mut useful: Vec<Elem> = Vec::new();
    for &g in gens {
        if g != 0 && !useful.contains(&g) {
            useful.push(g);
        }
    }
    // Finite group: closing under right multiplication by generators also
    // closes under inverses.
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        for &g in &useful {
            let y = parent.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                members.push(y);
            }
        }
        head += 1;
    }
    members.sort_unstable();
    Subgroup {
        parent: parent.clone(),
        members,
        generators: gens.to_vec(),
    }
}

/// Subgroup generated by two subgroups.
pub fn join(m: &Subgroup, n: &Subgroup) -> Result<Subgroup> {
    same_parent(m, n)?;
    let gens: Vec<Elem> = m.generators.iter().chain(&n.generators).copied().collect();
    Ok(closure(&m.parent, &gens))
}

/// True when conjugation by every parent generator preserves `s`.
pub fn is_normal(s: &Subgroup) -> Result<()> {
    let g = &s.parent;
    for &x in s.members() {
        for &y in g.generators() {
            if !s.contains(g.conj(x, y)) {
                return Err(Error::NotNormal { element: x, by: y });
            }
        }
    }
    Ok(())
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(parent: &Arc<RealizedGroup>, gens: &[Elem]) -> Subgroup {
    let mut current = closure(parent, gens);
    loop {
        let mut extra = Vec::new();
        for &x in current.members() {
            for &y in parent.generators() {
                let c = parent.conj(x, y);
                if !current.contains(c) && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return current;
        }
        let mut gens = current.generators.clone();
        gens.extend(extra);
        current = closure(parent, &gens);
    }
}

pub fn intersection(m: &Subgroup, n: &Subgroup) -> Result<Subgroup> {
    same_parent(m, n)?;
    let members: Vec<Elem> = m.members.iter().copied().filter(|&x| n.contains(x)).collect();
    Ok(Subgroup {
        parent: m.parent.clone(),
        generators: members.clone(),
        members,
    })
}

/// `[M, N]`, the subgroup generated by all commutators `[a, b]`.
pub fn commutator_subgroup(m: &Subgroup, n: &Subgroup) -> Result<Subgroup> {
    same_parent(m, n)?;
    let g = &m.parent;
    let mut comms: Vec<Elem> = Vec::new();
    let mut seen = vec![false; g.order()];
    for &a in &m.members {
        for &b in &n.members {
            let c = g.comm(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    Ok(closure(g, &comms))
}

/// Derived subgroup `G'`.
pub fn derived_subgroup(g: &Arc<RealizedGroup>) -> Subgroup {
    let whole = Subgroup::whole(g);
    commutator_subgroup(&whole, &whole).expect("same parent")
}

fn same_parent(m: &Subgroup, n: &Subgroup) -> Result<()> {
    if Arc::ptr_eq(&m.parent, &n.parent) {
        Ok(())
    } else {
        Err(Error::MixedParents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn closure_of_nothing_is_trivial() {
        let c6 = Arc::new(RealizedGroup::cyclic(6));
        assert_eq!(closure(&c6, &[]).order(), 1);
    }

    #[test]
    fn closure_of_square_in_c6() {
        let c6 = Arc::new(RealizedGroup::cyclic(6));
        let a = c6.generators()[0];
        let sub = closure(&c6, &[c6.pow(a, 2)]);
        assert_eq!(sub.order(), 3);
        sub.verify().unwrap();
    }

    #[test]
    fn transpositions_generate_s3() {
        let g = s3();
        let transpositions: Vec<Elem> =
            g.elements().filter(|&x| g.element_order(x) == 2).collect();
        assert_eq!(transpositions.len(), 3);
        assert_eq!(closure(&g, &transpositions).order(), 6);
    }

    #[test]
    fn derived_subgroups() {
        let c6 = Arc::new(RealizedGroup::cyclic(6));
        assert!(derived_subgroup(&c6).is_trivial());
        let g = s3();
        let d = derived_subgroup(&g);
        assert_eq!(d.order(), 3);
        is_normal(&d).unwrap();
    }

    #[test]
    fn non_normal_subgroup_detected() {
        let g = s3();
        let t = g.generators()[1];
        assert!(matches!(is_normal(&closure(&g, &[t])), Err(Error::NotNormal { .. })));
        let nc = normal_closure(&g, &[t]);
        assert_eq!(nc.order(), 6);
    }

    #[test]
    fn mixed_parents_rejected() {
        let a = Arc::new(RealizedGroup::cyclic(4));
        let b = Arc::new(RealizedGroup::cyclic(4));
        let r = intersection(&Subgroup::whole(&a), &Subgroup::whole(&b));
        assert!(matches!(r, Err(Error::MixedParents)));
    }

    #[test]
    fn subgroup_materializes() {
        let c12 = Arc::new(RealizedGroup::cyclic(12));
        let a = c12.generators()[0];
        let sub = closure(&c12, &[c12.pow(a, 3)]);
        let (g, back) = sub.to_group("C4").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(back[0], 0);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(back[g.mul(x, y)], c12.mul(back[x], back[y]));
            }
        }
    }
}

use std::collections::VecDeque;
use std::sync::OnceLock;

use indexmap::IndexSet;
use rayon::prelude::*;

use super::element::{GroupElement, Module};
use crate::error::{Error, Result};

/// Default element cap for closures (comfortably above S3 wr F20).
pub const DEFAULT_CAP: usize = 2_000_000;

/// A finite group given by generators and a complete, canonically sorted
/// element list.
pub struct FiniteGroup {
    generators: Vec<GroupElement>,
    elements: IndexSet<GroupElement>,
    module: Module,
    orders: OnceLock<Vec<u64>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            module: self.module.clone(),
            orders: self.orders.clone(),
        }
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {} on {})", self.order(), self.module)
    }
}

fn common_module(gens: &[GroupElement]) -> Result<Module> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Precondition("closure needs at least one generator".into()))?;
    let module = first.module()?;
    for g in &gens[1..] {
        let same_kind = matches!(
            (first, g),
            (GroupElement::Matrix(_), GroupElement::Matrix(_))
                | (GroupElement::Semilinear(_), GroupElement::Semilinear(_))
        );
        if !same_kind || g.module()? != module {
            return Err(Error::MixedModules);
        }
        if let (GroupElement::Semilinear(a), GroupElement::Semilinear(b)) = (first, g) {
            if **a.field() != **b.field() {
                return Err(Error::MixedModules);
            }
        }
    }
    for g in gens {
        if let GroupElement::Matrix(m) = g {
            if m.rank() < m.rows() {
                return Err(Error::Singular);
            }
        }
    }
    Ok(module)
}

impl FiniteGroup {
    /// Breadth-first closure of `gens` under multiplication. Fails (rather
    /// than truncating) once more than `cap` elements are found.
    pub fn closure(gens: &[GroupElement], cap: usize) -> Result<FiniteGroup> {
        let module = common_module(gens)?;
        let identity = gens[0].identity_like();
        let mut elements = IndexSet::new();
        elements.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.mul(g);
                if !elements.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCap(cap));
                    }
                    elements.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        elements.sort();
        Ok(FiniteGroup { generators: gens.to_vec(), elements, module, orders: OnceLock::new() })
    }

    /// The trivial group on `module`.
    pub fn trivial(identity: GroupElement) -> Result<FiniteGroup> {
        if !identity.is_identity() {
            return Err(Error::Precondition("trivial group needs the identity".into()));
        }
        FiniteGroup::closure(&[identity], 1)
    }

    /// Builds a subgroup from an element set already known to be closed
    /// (e.g. a centralizer). A small generating set is chosen greedily.
    pub fn from_closed_set(elements: Vec<GroupElement>, module: &Module) -> Result<FiniteGroup> {
        let identity = elements
            .iter()
            .find(|e| e.is_identity())
            .cloned()
            .ok_or_else(|| Error::Precondition("subset lacks the identity".into()))?;
        let target: IndexSet<GroupElement> = elements.into_iter().collect();
        let mut gens = vec![identity.clone()];
        let mut current = FiniteGroup::closure(&gens, target.len())?;
        let mut candidates = target.iter();
        while current.order() < target.len() {
            let next = candidates
                .by_ref()
                .find(|x| !current.contains(x))
                .ok_or_else(|| Error::Precondition("subset is not closed".into()))?;
            gens.push(next.clone());
            current = FiniteGroup::closure(&gens, target.len())
                .map_err(|_| Error::Precondition("subset is not closed".into()))?;
        }
        if current.elements.iter().any(|x| !target.contains(x)) {
            return Err(Error::Precondition("subset is not closed".into()));
        }
        if gens.len() > 1 {
            gens.remove(0);
            current.generators = gens;
        }
        debug_assert_eq!(&current.module, module);
        Ok(current)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &IndexSet<GroupElement> {
        &self.elements
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.contains(x)
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.elements.get_index_of(x)
    }

    pub fn identity(&self) -> GroupElement {
        self.elements[0].identity_like()
    }

    /// Element orders, computed once and cached; aligned with `elements()`.
    pub fn orders(&self) -> &[u64] {
        self.orders.get_or_init(|| {
            let cap = self.order() as u64;
            let elems: Vec<&GroupElement> = self.elements.iter().collect();
            elems
                .par_iter()
                .map(|x| x.order(cap).expect("element order divides the group order"))
                .collect()
        })
    }

    /// The subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<FiniteGroup> {
        if let Some(bad) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::Precondition(format!("{bad:?} is not in the group")));
        }
        FiniteGroup::closure(gens, self.order())
    }

    /// Elements commuting with every member of `subset`.
    pub fn centralizer(&self, subset: &[GroupElement]) -> Result<FiniteGroup> {
        let elems: Vec<&GroupElement> = self.elements.iter().collect();
        let cent: Vec<GroupElement> = elems
            .par_iter()
            .filter(|x| subset.iter().all(|s| x.commutes_with(s)))
            .map(|x| (*x).clone())
            .collect();
        FiniteGroup::from_closed_set(cent, &self.module)
    }

    pub fn center(&self) -> Result<FiniteGroup> {
        self.centralizer(&self.generators)
    }

    /// Whether every generator of this group conjugates `sub` into itself.
    pub fn normalizes(&self, sub: &FiniteGroup) -> bool {
        self.generators
            .iter()
            .all(|g| sub.generators.iter().all(|s| sub.contains(&g.conjugate(s))))
    }

    /// Whether `x` conjugates this group onto itself.
    pub fn is_normalized_by(&self, x: &GroupElement) -> bool {
        self.generators.iter().all(|s| self.contains(&x.conjugate(s)))
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.commutes_with(b)))
    }
}

/// Whether `sub` is a normal subgroup of `group`.
pub fn normal_test(group: &FiniteGroup, sub: &FiniteGroup) -> bool {
    sub.is_subgroup_of(group) && group.normalizes(sub)
}

/// The coset `rep * subgroup`.
pub struct Coset<'a> {
    pub rep: GroupElement,
    pub subgroup: &'a FiniteGroup,
}

impl<'a> Coset<'a> {
    pub fn new(rep: GroupElement, subgroup: &'a FiniteGroup) -> Self {
        Coset { rep, subgroup }
    }

    pub fn len(&self) -> usize {
        self.subgroup.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.subgroup.contains(&self.rep)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.subgroup.elements().iter().map(move |h| self.rep.mul(h))
    }
}

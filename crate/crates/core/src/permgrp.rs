//! Finite permutation groups by full element enumeration: orbits,
//! stabilizers, cosets and double cosets.
//!
//! Elements are enumerated breadth-first from the identity along
//! `g -> s * g` for the generators `s` in order, so every element has a fixed
//! index and every coset or double-coset representative is the element of
//! smallest index in its class.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image array {0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("permutation of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("permutation {0} is not an element of the group")]
    NotInGroup(Perm),
    #[error("element set is not a subgroup")]
    NotASubgroup,
}

/// A bijection on `{0, .., degree - 1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm, PermError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(PermError::NotAPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree).collect())
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::NotAPermutation(cyc.to_vec()));
                }
                images[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug)]
pub struct Enumeration {
    perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// For every non-identity element: (generator, parent) with
    /// `element = generator * parent`.
    tree: Vec<Option<(usize, usize)>>,
    inverse: Vec<usize>,
}

/// A permutation group given by generators, enumerated lazily.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    enumeration: OnceLock<Result<Enumeration, PermError>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, PermError> {
        Self::with_cap(degree, generators, DEFAULT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<PermGroup, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(PermGroup { degree, generators, cap, enumeration: OnceLock::new() })
    }

    /// Constructs and enumerates in one step.
    pub fn enumerated(degree: usize, generators: Vec<Perm>) -> Result<Arc<PermGroup>, PermError> {
        let g = PermGroup::new(degree, generators)?;
        g.enumerate()?;
        Ok(Arc::new(g))
    }

    pub fn trivial() -> Arc<PermGroup> {
        PermGroup::enumerated(1, vec![]).expect("trivial group")
    }

    /// Cyclic group of order `n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Arc<PermGroup> {
        let gen = Perm::new((0..n).map(|i| (i + 1) % n).collect()).expect("rotation");
        PermGroup::enumerated(n, vec![gen]).expect("cyclic group")
    }

    pub fn symmetric(n: usize) -> Arc<PermGroup> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cyc: Vec<usize> = (0..n).collect();
            gens.push(Perm::from_cycles(n, &[&cyc]).unwrap());
        }
        PermGroup::enumerated(n.max(1), gens).expect("symmetric group")
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Arc<PermGroup> {
        let rot = Perm::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let refl = Perm::new((0..n).map(|i| (n - i) % n).collect()).unwrap();
        PermGroup::enumerated(n, vec![rot, refl]).expect("dihedral group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn enumerate(&self) -> Result<&Enumeration, PermError> {
        self.enumeration
            .get_or_init(|| enumerate_bfs(self.degree, &self.generators, self.cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn en(&self) -> &Enumeration {
        self.enumerate().expect("group must be enumerable before use")
    }

    pub fn order(&self) -> usize {
        self.en().perms.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.en().perms
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.en().perms[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.en().index.get(p).copied()
    }

    pub const IDENTITY: usize = 0;

    /// Index of `a * b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let en = self.en();
        en.index[&en.perms[a].compose(&en.perms[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.en().inverse[a]
    }

    /// Index of the `k`-th generator.
    pub fn generator_index(&self, k: usize) -> usize {
        self.en().index[&self.generators[k]]
    }

    /// The breadth-first spanning tree: entry `i` is `(k, j)` with
    /// `element_i = generator_k * element_j`.
    pub fn tree(&self) -> &[Option<(usize, usize)>] {
        &self.en().tree
    }

    /// Builds a value for every element by walking the spanning tree, then
    /// checks that it is compatible with every Cayley edge. Used to extend
    /// generator data (matrices, characters) to a homomorphism.
    pub fn extend_hom<T: Clone + PartialEq>(
        &self,
        identity: T,
        gen_values: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Vec<T>, (usize, usize)> {
        assert_eq!(gen_values.len(), self.generators.len());
        let n = self.order();
        let mut values: Vec<Option<T>> = vec![None; n];
        values[Self::IDENTITY] = Some(identity);
        for i in 1..n {
            let (k, j) = self.tree()[i].expect("non-identity elements have a parent");
            let v = mul(&gen_values[k], values[j].as_ref().expect("parents come first"));
            values[i] = Some(v);
        }
        let values: Vec<T> = values.into_iter().map(Option::unwrap).collect();
        for j in 0..n {
            for (k, gv) in gen_values.iter().enumerate() {
                let target = self.mul(self.generator_index(k), j);
                if mul(gv, &values[j]) != values[target] {
                    return Err((k, j));
                }
            }
        }
        Ok(values)
    }
}

fn enumerate_bfs(degree: usize, generators: &[Perm], cap: usize) -> Result<Enumeration, PermError> {
    let id = Perm::identity(degree);
    let mut perms = vec![id.clone()];
    let mut index = HashMap::from([(id, 0)]);
    let mut tree = vec![None];
    let mut head = 0;
    while head < perms.len() {
        for (k, g) in generators.iter().enumerate() {
            let p = g.compose(&perms[head]);
            if !index.contains_key(&p) {
                if perms.len() >= cap {
                    return Err(PermError::CapExceeded { cap });
                }
                index.insert(p.clone(), perms.len());
                perms.push(p);
                tree.push(Some((k, head)));
            }
        }
        head += 1;
    }
    let inverse = perms.iter().map(|p| index[&p.inverse()]).collect();
    Ok(Enumeration { perms, index, tree, inverse })
}

/// A subgroup of an enumerated parent, stored as a set of element indices.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<PermGroup>,
    generators: Vec<Perm>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), self.generators)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.member == other.member
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn generated(group: &Arc<PermGroup>, generators: Vec<Perm>) -> Result<Subgroup, PermError> {
        let mut idx = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.degree() != group.degree() {
                return Err(PermError::DegreeMismatch { expected: group.degree(), found: g.degree() });
            }
            idx.push(group.index_of(g).ok_or_else(|| PermError::NotInGroup(g.clone()))?);
        }
        let member = closure(group, &idx);
        Ok(Self::from_member(group, generators, member))
    }

    fn from_member(group: &Arc<PermGroup>, generators: Vec<Perm>, member: Vec<bool>) -> Subgroup {
        let elements = (0..member.len()).filter(|&i| member[i]).collect();
        Subgroup { group: Arc::clone(group), generators, elements, member }
    }

    pub fn whole(group: &Arc<PermGroup>) -> Subgroup {
        Self::from_member(group, group.generators().to_vec(), vec![true; group.order()])
    }

    pub fn trivial(group: &Arc<PermGroup>) -> Subgroup {
        let mut member = vec![false; group.order()];
        member[PermGroup::IDENTITY] = true;
        Self::from_member(group, vec![], member)
    }

    /// Subgroup from a closed set of element indices; generators are picked
    /// greedily in enumeration order.
    pub fn from_elements(group: &Arc<PermGroup>, elements: &[usize]) -> Result<Subgroup, PermError> {
        let mut member = vec![false; group.order()];
        for &e in elements {
            member[e] = true;
        }
        if !member[PermGroup::IDENTITY] {
            return Err(PermError::NotASubgroup);
        }
        for &a in elements {
            for &b in elements {
                if !member[group.mul(a, b)] {
                    return Err(PermError::NotASubgroup);
                }
            }
        }
        let mut gens = Vec::new();
        let mut reached = closure(group, &gens);
        for i in 0..member.len() {
            if member[i] && !reached[i] {
                gens.push(i);
                reached = closure(group, &gens);
            }
        }
        let generators = gens.iter().map(|&i| group.element(i).clone()).collect();
        Ok(Self::from_member(group, generators, member))
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.group.index_of(g).expect("generator in group")).collect()
    }

    /// Element indices in enumeration order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member[g]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// Is `self` normalized by every element of `other`?
    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        let g = &self.group;
        other.elements.iter().all(|&x| {
            self.elements.iter().all(|&h| self.contains(g.mul(g.mul(x, h), g.inv(x))))
        })
    }

    pub fn left_cosets(&self) -> CosetTable {
        let g = &self.group;
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &h in &self.elements {
                coset_of[g.mul(a, h)] = c;
            }
        }
        CosetTable { reps, coset_of }
    }
}

fn closure(group: &PermGroup, gens: &[usize]) -> Vec<bool> {
    let mut member = vec![false; group.order()];
    member[PermGroup::IDENTITY] = true;
    let mut queue = vec![PermGroup::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = group.mul(s, x);
            if !member[y] {
                member[y] = true;
                queue.push(y);
            }
        }
    }
    member
}

/// Left cosets `aH`, each represented by its first element in enumeration order.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub reps: Vec<usize>,
    /// Element index to coset index.
    pub coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Permutation of coset indices induced by left multiplication with `g`.
    pub fn action(&self, group: &PermGroup, g: usize) -> Vec<usize> {
        self.reps.iter().map(|&a| self.coset_of[group.mul(g, a)]).collect()
    }
}

/// Orbit of the value at the identity under `act`, together with its stabilizer.
pub fn orbit_stabilizer<T, F>(group: &Arc<PermGroup>, act: F) -> (Vec<T>, Subgroup)
where
    T: Eq + Hash + Clone,
    F: Fn(usize) -> T,
{
    let images: Vec<T> = (0..group.order()).map(&act).collect();
    let x = images[PermGroup::IDENTITY].clone();
    let mut seen = HashMap::new();
    let mut orbit = Vec::new();
    for y in &images {
        if !seen.contains_key(y) {
            seen.insert(y.clone(), orbit.len());
            orbit.push(y.clone());
        }
    }
    let stab: Vec<usize> = (0..images.len()).filter(|&g| images[g] == x).collect();
    let sub = Subgroup::from_elements(group, &stab).expect("a stabilizer is a subgroup");
    (orbit, sub)
}

/// `{g : act(g) = act(1)}`.
pub fn stabilizer<T, F>(group: &Arc<PermGroup>, act: F) -> Subgroup
where
    T: Eq + Hash + Clone,
    F: Fn(usize) -> T,
{
    orbit_stabilizer(group, act).1
}

/// Decomposition of `G` into double cosets `HgJ`.
#[derive(Clone, Debug)]
pub struct DoubleCosetDecomp {
    pub h: Subgroup,
    pub j: Subgroup,
    /// One representative per double coset, the first in enumeration order.
    pub reps: Vec<usize>,
    /// Per double coset, `g_1, .., g_t` with `HgJ = H g_1 ⊔ .. ⊔ H g_t`.
    pub left_reps: Vec<Vec<usize>>,
    /// Per double coset, its elements in enumeration order.
    pub members: Vec<Vec<usize>>,
    /// Element index to double-coset index.
    pub coset_of: Vec<usize>,
}

impl DoubleCosetDecomp {
    pub fn new(h: &Subgroup, j: &Subgroup) -> DoubleCosetDecomp {
        assert!(Arc::ptr_eq(h.group(), j.group()) || **h.group() == **j.group());
        let g = h.group();
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &x in h.elements() {
                let xa = g.mul(x, a);
                for &y in j.elements() {
                    coset_of[g.mul(xa, y)] = c;
                }
            }
            members.push(Vec::new());
        }
        for a in 0..n {
            members[coset_of[a]].push(a);
        }
        let left_reps = members
            .iter()
            .map(|mem| {
                let mut covered: Vec<usize> = Vec::new();
                let mut out = Vec::new();
                for &k in mem {
                    if covered.contains(&k) {
                        continue;
                    }
                    out.push(k);
                    covered.extend(h.elements().iter().map(|&x| g.mul(x, k)));
                }
                out
            })
            .collect();
        DoubleCosetDecomp { h: h.clone(), j: j.clone(), reps, left_reps, members, coset_of }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    /// Indices (in `cosets`, a table for `G/J`) of the left cosets `aJ` inside
    /// each double coset, in enumeration order.
    pub fn j_cosets(&self, cosets: &CosetTable) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|mem| {
                let mut out: Vec<usize> = Vec::new();
                for &a in mem {
                    let c = cosets.coset_of[a];
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
                out
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transposition_s3(g: &Arc<PermGroup>) -> Subgroup {
        Subgroup::generated(g, vec![Perm::from_cycles(3, &[&[1, 2]]).unwrap()]).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(PermGroup::trivial().order(), 1);
        assert_eq!(PermGroup::symmetric(3).order(), 6);
        assert_eq!(PermGroup::cyclic(4).order(), 4);
        assert_eq!(PermGroup::dihedral(4).order(), 8);
        assert_eq!(PermGroup::symmetric(4).order(), 24);
    }

    #[test]
    fn cap_is_enforced() {
        let s5 = PermGroup::with_cap(
            5,
            vec![Perm::from_cycles(5, &[&[0, 1]]).unwrap(), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()],
            100,
        )
        .unwrap();
        assert_eq!(s5.enumerate().unwrap_err(), PermError::CapExceeded { cap: 100 });
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = PermGroup::symmetric(3);
        let whole = stabilizer(&s3, |_| 0u8);
        assert_eq!(whole.order(), 6);
        let (orbit, stab) = orbit_stabilizer(&s3, |g| s3.element(g).apply(0));
        assert_eq!(stab.order(), 2);
        assert_eq!(orbit.len() * stab.order(), 6);
        assert_eq!(stab, transposition_s3(&s3));
        let regular = stabilizer(&s3, |g| g);
        assert!(regular.is_trivial());
    }

    #[test]
    fn double_coset_examples() {
        let s3 = PermGroup::symmetric(3);
        let g = Subgroup::whole(&s3);
        let d = DoubleCosetDecomp::new(&g, &g);
        assert_eq!(d.len(), 1);
        assert_eq!(d.left_reps[0].len(), 1);
        let t = Subgroup::trivial(&s3);
        assert_eq!(DoubleCosetDecomp::new(&t, &t).len(), 6);
        let h = transposition_s3(&s3);
        let d = DoubleCosetDecomp::new(&h, &h);
        let mut sizes: Vec<usize> = (0..d.len()).map(|c| d.size(c)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = PermGroup::dihedral(4);
        let b = PermGroup::dihedral(4);
        assert_eq!(a.elements(), b.elements());
    }
}

//! Permutations, cyclic cosets, Koszul signs and planar trees.
//!
//! Permutations are one-indexed and stored in image form: position `i`
//! holds `σ(i)`. Composition follows `(σ·τ)(i) = σ(τ(i))`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` in image form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its images `σ(1), …, σ(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The rotation `i ↦ i + k (mod n)`.
    pub fn rotation(n: usize, k: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + k) % n + 1).collect(),
        }
    }

    /// The permutation whose word `σ^{-1}(1), …, σ^{-1}(n)` is `word`.
    pub fn from_word(word: &[usize]) -> Result<Self> {
        Ok(Permutation::new(word.to_vec())?.inverse())
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for one-indexed `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The word `σ^{-1}(1), …, σ^{-1}(n)`; leaf `p` of a tree decorated by
    /// `σ` carries the label `σ^{-1}(p)`.
    pub fn word(&self) -> Vec<usize> {
        self.inverse().images
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "arity mismatch in compose");
        Permutation {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn sign(&self) -> i32 {
        let mut visited = vec![false; self.len()];
        let mut sign = 1;
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !visited[j] {
                visited[j] = true;
                j = self.images[j] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// All permutations of `{1, …, n}` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            if !next_lex(&mut cur) {
                break;
            }
        }
        out
    }

    /// Direct sum `σ_1 ⊕ ⋯ ⊕ σ_l`.
    pub fn direct_sum(parts: &[Permutation]) -> Permutation {
        let mut images = Vec::new();
        let mut offset = 0;
        for p in parts {
            images.extend(p.images.iter().map(|&x| x + offset));
            offset += p.len();
        }
        Permutation { images }
    }

    /// Extends `σ ∈ Σ_n` to `Σ_{n+k}` by fixing the last `k` letters.
    pub fn extend(&self, k: usize) -> Permutation {
        let n = self.len();
        let mut images = self.images.clone();
        images.extend(n + 1..=n + k);
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn next_lex(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Koszul sign `ε(σ; d_1, …, d_n)` defined by
/// `a_1 ∧ ⋯ ∧ a_n = ε(σ) · a_{σ(1)} ∧ ⋯ ∧ a_{σ(n)}` in the free
/// graded-commutative algebra with `|a_i| = d_i`.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i64]) -> Result<i32> {
    if degrees.len() != sigma.len() {
        return Err(Error::ArityMismatch {
            expected: sigma.len(),
            found: degrees.len(),
        });
    }
    let pos = sigma.inverse();
    let n = sigma.len();
    let mut odd = 0i64;
    for x in 1..=n {
        for y in x + 1..=n {
            if pos.apply(x) > pos.apply(y) {
                odd += degrees[x - 1] * degrees[y - 1];
            }
        }
    }
    Ok(if odd.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `χ(σ; degrees) = sgn(σ) · ε(σ; degrees)`.
pub fn chi(sigma: &Permutation, degrees: &[i64]) -> Result<i32> {
    Ok(sigma.sign() * koszul_sign(sigma, degrees)?)
}

/// One term of a cyclic sum: coefficient and the order in which the slots
/// `a_1, …, a_n` appear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicTerm {
    pub coefficient: i32,
    pub order: Vec<usize>,
}

/// Expands `Σ_ζ χ(ζ) X(a_{ζ(1)}, …, a_{ζ(n)})` over the `n` rotations.
pub fn cyclic_sum(degrees: &[i64]) -> Vec<CyclicTerm> {
    let n = degrees.len();
    (0..n)
        .map(|k| {
            let zeta = Permutation::rotation(n, k);
            CyclicTerm {
                coefficient: chi(&zeta, degrees).expect("matching arity"),
                order: zeta.images().to_vec(),
            }
        })
        .collect()
}

/// A left coset `ℤ_n σ`, stored by the representative fixing `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicCoset {
    arity: usize,
    rep: Permutation,
}

impl CyclicCoset {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The representative `σ'` with `σ'(1) = 1`, as an element of `Σ_n`.
    pub fn representative(&self) -> &Permutation {
        &self.rep
    }

    /// The representative restricted to `{2, …, n}` and shifted down, an
    /// element of `Σ_{n-1}`.
    pub fn reduced(&self) -> Permutation {
        Permutation {
            images: self.rep.images()[1..].iter().map(|&x| x - 1).collect(),
        }
    }

    /// The cyclic word of the coset, rotated so that the letter `1` leads.
    pub fn cyclic_word(&self) -> Vec<usize> {
        canonical_cyclic_word(&self.rep.word())
    }

    pub fn from_reduced(p: &Permutation) -> Self {
        let mut images = vec![1];
        images.extend(p.images().iter().map(|&x| x + 1));
        CyclicCoset {
            arity: images.len(),
            rep: Permutation { images },
        }
    }

    /// All cosets of `ℤ_n \ Σ_n`, ordered by their reduced representative.
    pub fn all(n: usize) -> Vec<CyclicCoset> {
        if n == 0 {
            return Vec::new();
        }
        Permutation::all(n - 1)
            .iter()
            .map(CyclicCoset::from_reduced)
            .collect()
    }
}

/// Projection `π_n : Σ_n → ℤ_n \ Σ_n`.
pub fn coset_project(sigma: &Permutation) -> CyclicCoset {
    let n = sigma.len();
    if n == 0 {
        return CyclicCoset {
            arity: 0,
            rep: sigma.clone(),
        };
    }
    // ζ with ζ(σ(1)) = 1.
    let zeta = Permutation::rotation(n, n + 1 - sigma.apply(1));
    CyclicCoset {
        arity: n,
        rep: zeta.compose(sigma),
    }
}

/// Rotates a word so that its minimal letter comes first.
pub fn canonical_cyclic_word(word: &[usize]) -> Vec<usize> {
    if word.is_empty() {
        return Vec::new();
    }
    let start = (0..word.len()).min_by_key(|&i| word[i]).unwrap();
    word[start..]
        .iter()
        .chain(word[..start].iter())
        .copied()
        .collect()
}

/// The block permutation `σ(m_1, …, m_l)` composed with identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPermutation {
    pub outer: Permutation,
    pub sizes: Vec<usize>,
}

impl BlockPermutation {
    pub fn new(outer: Permutation, sizes: Vec<usize>) -> Result<Self> {
        if outer.len() != sizes.len() {
            return Err(Error::ArityMismatch {
                expected: outer.len(),
                found: sizes.len(),
            });
        }
        Ok(BlockPermutation { outer, sizes })
    }

    /// The permutation moving block `b` to block position `σ(b)`.
    pub fn expand(&self) -> Permutation {
        let mut offsets = vec![0];
        for &m in &self.sizes {
            offsets.push(offsets.last().unwrap() + m);
        }
        let mut word = Vec::new();
        for b in self.outer.word() {
            word.extend(offsets[b - 1] + 1..=offsets[b]);
        }
        Permutation::from_word(&word).expect("block word is a permutation")
    }

    /// `σ(σ_1, …, σ_l) = σ(m_1, …, m_l) · (σ_1 ⊕ ⋯ ⊕ σ_l)`.
    pub fn with_inner(&self, inner: &[Permutation]) -> Result<Permutation> {
        if inner.len() != self.sizes.len() {
            return Err(Error::ArityMismatch {
                expected: self.sizes.len(),
                found: inner.len(),
            });
        }
        for (p, &m) in inner.iter().zip(&self.sizes) {
            if p.len() != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: p.len(),
                });
            }
        }
        Ok(self.expand().compose(&Permutation::direct_sum(inner)))
    }
}

/// The rake tree `T_{m_1, …, m_l}`: a root with `l` inputs, the `s`-th of
/// which carries a corolla with `m_s` leaves (a bare leaf when `m_s = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RakeTree {
    sizes: Vec<usize>,
}

impl RakeTree {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidComposition(sizes));
        }
        Ok(RakeTree { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn leaves(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn degree(&self) -> usize {
        self.sizes.len() - 1
    }

    /// First leaf of each block: `i_s = m_1 + ⋯ + m_{s-1} + 1`.
    pub fn block_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut acc = 1;
        for &m in &self.sizes {
            out.push(acc);
            acc += m;
        }
        out
    }
}

/// All compositions of `n` (ordered, positive parts).
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Compositions of `n` into exactly `k` positive parts.
pub fn compositions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    compositions(n)
        .into_iter()
        .filter(|c| c.len() == k)
        .collect()
}

/// A rooted planar tree whose internal vertices have at least two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn corolla(k: usize) -> PlanarTree {
        if k == 1 {
            PlanarTree::Leaf
        } else {
            PlanarTree::Node(vec![PlanarTree::Leaf; k])
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(ch) => ch.iter().map(|c| c.leaves()).sum(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(ch) => 1 + ch.iter().map(|c| c.vertices()).sum::<usize>(),
        }
    }

    pub fn is_binary(&self) -> bool {
        match self {
            PlanarTree::Leaf => true,
            PlanarTree::Node(ch) => ch.len() == 2 && ch.iter().all(|c| c.is_binary()),
        }
    }

    /// Cellular degree `Σ_v (arity(v) − 2) = leaves − 1 − vertices`.
    pub fn degree(&self) -> usize {
        self.leaves() - 1 - self.vertices()
    }

    /// Arity of the root vertex (0 for a leaf).
    pub fn root_arity(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(ch) => ch.len(),
        }
    }

    /// Leaf ranges `[a, b]` (zero-based, inclusive) spanned by every
    /// vertex, listed in preorder.
    pub fn vertex_spans(&self) -> Vec<(usize, usize)> {
        fn go(t: &PlanarTree, start: usize, out: &mut Vec<(usize, usize)>) -> usize {
            match t {
                PlanarTree::Leaf => start + 1,
                PlanarTree::Node(ch) => {
                    let idx = out.len();
                    out.push((start, start));
                    let mut pos = start;
                    for c in ch {
                        pos = go(c, pos, out);
                    }
                    out[idx].1 = pos - 1;
                    pos
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    /// Rebuilds a planar tree on `n` leaves from a laminar family of leaf
    /// spans (each of length at least two). The whole range becomes the
    /// root if it is not already listed.
    pub fn from_spans(n: usize, spans: &[(usize, usize)]) -> PlanarTree {
        let mut all: BTreeSet<(usize, usize)> = spans.iter().copied().collect();
        if n >= 2 {
            all.insert((0, n - 1));
        }
        fn build(lo: usize, hi: usize, spans: &BTreeSet<(usize, usize)>) -> PlanarTree {
            if lo == hi {
                return PlanarTree::Leaf;
            }
            let mut children = Vec::new();
            let mut pos = lo;
            while pos <= hi {
                // Largest span starting at `pos` strictly inside (lo, hi).
                let next = spans
                    .range((pos, pos)..=(pos, hi))
                    .filter(|&&(a, b)| (a, b) != (lo, hi))
                    .map(|&(_, b)| b)
                    .max();
                match next {
                    Some(b) => {
                        children.push(build(pos, b, spans));
                        pos = b + 1;
                    }
                    None => {
                        children.push(PlanarTree::Leaf);
                        pos += 1;
                    }
                }
            }
            PlanarTree::Node(children)
        }
        if n == 1 {
            PlanarTree::Leaf
        } else {
            build(0, n - 1, &all)
        }
    }
}

/// Grafts `children[i]` onto leaf `i` of `parent`.
pub fn graft(parent: &PlanarTree, children: &[PlanarTree]) -> Result<PlanarTree> {
    if parent.leaves() != children.len() {
        return Err(Error::ArityMismatch {
            expected: parent.leaves(),
            found: children.len(),
        });
    }
    fn go(t: &PlanarTree, it: &mut std::slice::Iter<'_, PlanarTree>) -> PlanarTree {
        match t {
            PlanarTree::Leaf => it.next().expect("leaf count checked").clone(),
            PlanarTree::Node(ch) => PlanarTree::Node(ch.iter().map(|c| go(c, it)).collect()),
        }
    }
    Ok(go(parent, &mut children.iter()))
}

/// All planar trees with `n` leaves and internal vertices of arity ≥ 2,
/// in a fixed deterministic order.
pub fn enumerate_planar_trees(n: usize) -> Vec<PlanarTree> {
    let mut memo: Vec<Vec<PlanarTree>> = vec![Vec::new(), vec![PlanarTree::Leaf]];
    for m in 2..=n {
        let mut trees = Vec::new();
        for comp in compositions(m) {
            if comp.len() < 2 {
                continue;
            }
            let mut partial: Vec<Vec<PlanarTree>> = vec![Vec::new()];
            for &part in &comp {
                let mut next = Vec::new();
                for pre in &partial {
                    for t in &memo[part] {
                        let mut v = pre.clone();
                        v.push(t.clone());
                        next.push(v);
                    }
                }
                partial = next;
            }
            trees.extend(partial.into_iter().map(PlanarTree::Node));
        }
        memo.push(trees);
    }
    if n == 0 {
        return Vec::new();
    }
    memo.swap_remove(n)
}

/// A non-planar rooted tree with leaves labeled by `1..n`; children of
/// each vertex are sorted, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabeledTree {
    Leaf(usize),
    Node(Vec<LabeledTree>),
}

impl LabeledTree {
    pub fn min_label(&self) -> usize {
        match self {
            LabeledTree::Leaf(x) => *x,
            LabeledTree::Node(ch) => ch.iter().map(|c| c.min_label()).min().unwrap(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            LabeledTree::Leaf(_) => 0,
            LabeledTree::Node(ch) => 1 + ch.iter().map(|c| c.vertices()).sum::<usize>(),
        }
    }
}

/// All non-planar trees with leaves `1..n` and vertices of arity ≥ 2.
pub fn enumerate_labeled_trees(n: usize) -> Vec<LabeledTree> {
    let labels: Vec<usize> = (1..=n).collect();
    let mut out = labeled_trees_on(&labels);
    out.sort();
    out
}

fn labeled_trees_on(labels: &[usize]) -> Vec<LabeledTree> {
    if labels.len() == 1 {
        return vec![LabeledTree::Leaf(labels[0])];
    }
    let mut out = Vec::new();
    for blocks in set_partitions(labels) {
        if blocks.len() < 2 {
            continue;
        }
        let mut partial: Vec<Vec<LabeledTree>> = vec![Vec::new()];
        for b in &blocks {
            let subs = labeled_trees_on(b);
            let mut next = Vec::new();
            for pre in &partial {
                for t in &subs {
                    let mut v = pre.clone();
                    v.push(t.clone());
                    next.push(v);
                }
            }
            partial = next;
        }
        out.extend(partial.into_iter().map(LabeledTree::Node));
    }
    out
}

/// Set partitions of `items`, blocks ordered by their first element.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for p in set_partitions(&items[1..]) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            q.sort();
            out.push(q);
        }
        let mut q = p.clone();
        q.insert(0, vec![first]);
        q.sort();
        out.push(q);
    }
    out
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_follows_sigma_of_tau() {
        let s = p(&[2, 3, 1]);
        let t = p(&[2, 1, 3]);
        assert_eq!(s.compose(&t), p(&[3, 2, 1]));
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn koszul_sign_examples() {
        let id = Permutation::identity(3);
        assert_eq!(koszul_sign(&id, &[1, 1, 1]).unwrap(), 1);
        let s21 = p(&[2, 1]);
        assert_eq!(koszul_sign(&s21, &[1, 1]).unwrap(), -1);
        let c = p(&[2, 3, 1]);
        assert_eq!(koszul_sign(&c, &[0, 0, 0]).unwrap(), 1);
        assert_eq!(chi(&c, &[0, 0, 0]).unwrap(), 1);
        assert!(koszul_sign(&c, &[0, 0]).is_err());
    }

    #[test]
    fn cyclic_sum_examples() {
        assert_eq!(
            cyclic_sum(&[0]),
            vec![CyclicTerm {
                coefficient: 1,
                order: vec![1]
            }]
        );
        let three = cyclic_sum(&[0, 0, 0]);
        assert_eq!(
            three.iter().map(|t| t.coefficient).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
        let two = cyclic_sum(&[1, 1]);
        assert_eq!(
            two[0],
            CyclicTerm {
                coefficient: 1,
                order: vec![1, 2]
            }
        );
        assert_eq!(
            two[1],
            CyclicTerm {
                coefficient: 1,
                order: vec![2, 1]
            }
        );
    }

    #[test]
    fn coset_examples() {
        let id = Permutation::identity(3);
        let rot = p(&[2, 3, 1]);
        assert_eq!(coset_project(&id), coset_project(&rot));
        let cosets: BTreeSet<_> = Permutation::all(3).iter().map(coset_project).collect();
        assert_eq!(cosets.len(), 2);
        assert!(coset_project(&p(&[3, 1, 2])).representative().is_identity());
    }

    #[test]
    fn block_permutation_moves_blocks() {
        let b = BlockPermutation::new(p(&[2, 1]), vec![2, 1]).unwrap();
        assert_eq!(b.expand().word(), vec![3, 1, 2]);
    }

    #[test]
    fn graft_examples() {
        let c2 = PlanarTree::corolla(2);
        let leaf = PlanarTree::Leaf;
        assert_eq!(graft(&c2, &[leaf.clone(), leaf.clone()]).unwrap(), c2);
        let left = graft(&c2, &[c2.clone(), leaf.clone()]).unwrap();
        assert_eq!(left, PlanarTree::Node(vec![c2.clone(), leaf.clone()]));
        assert_eq!(graft(&c2, &[c2.clone(), c2.clone()]).unwrap().vertices(), 3);
        assert!(graft(&c2, &[leaf]).is_err());
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_planar_trees(2).len(), 1);
        assert_eq!(enumerate_planar_trees(3).len(), 3);
        assert_eq!(enumerate_planar_trees(4).len(), 11);
        assert_eq!(enumerate_labeled_trees(2).len(), 1);
        assert_eq!(enumerate_labeled_trees(3).len(), 4);
    }

    #[test]
    fn spans_round_trip() {
        for n in 1..=6 {
            for t in enumerate_planar_trees(n) {
                let spans = t.vertex_spans();
                assert_eq!(PlanarTree::from_spans(n, &spans), t);
            }
        }
    }

    #[test]
    fn rake_tree_degree() {
        let r = RakeTree::new(vec![2, 1, 3]).unwrap();
        assert_eq!(r.degree(), 2);
        assert_eq!(r.block_starts(), vec![1, 3, 4]);
        assert!(RakeTree::new(vec![2, 0]).is_err());
    }
}

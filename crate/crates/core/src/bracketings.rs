//! Bracketings and cyclic bracketings, their interval models, and the
//! operad / module compositions on them.
//!
//! Positions in a word are zero-based internally. A *gap* `g ∈ 1..=n` is the
//! slot between positions `g` and `g + 1` (one-based, cyclically for cyclic
//! words), so a bracket around `r` consecutive letters occupies `r − 1`
//! consecutive gaps. Intervals and cyclic intervals are sets of gaps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::combinatorics::{enumerate_planar_trees, PlanarTree};
use crate::error::{Error, Result};
use crate::poset::{IsoReport, Poset};

type Mask = u64;

fn range_mask(lo: usize, hi: usize) -> Mask {
    // gaps lo..=hi (one-based) as bits lo-1..=hi-1
    if lo > hi {
        return 0;
    }
    let width = hi - lo + 1;
    let ones = if width >= 64 {
        Mask::MAX
    } else {
        (1 << width) - 1
    };
    ones << (lo - 1)
}

fn is_linear_interval(mask: Mask) -> bool {
    if mask == 0 {
        return false;
    }
    let shifted = mask >> mask.trailing_zeros();
    shifted & (shifted + 1) == 0
}

fn is_cyclic_arc(mask: Mask, n: usize) -> bool {
    let full = range_mask(1, n);
    if mask == 0 || mask == full {
        return false;
    }
    // Some rotation of the mask is a linear interval.
    (0..n).any(|k| {
        let rot = ((mask >> k) | (mask << (n - k))) & full;
        is_linear_interval(rot)
    })
}

/// A proper subinterval `[i, j]` of `[1, n − 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub i: usize,
    pub j: usize,
}

impl Interval {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Interval> {
        if n < 2 || i < 1 || i > j || j > n - 1 || (i == 1 && j == n - 1) {
            return Err(Error::InvalidInterval(format!("[{i},{j}] in P({n})")));
        }
        Ok(Interval { i, j })
    }

    pub fn mask(&self) -> Mask {
        range_mask(self.i, self.j)
    }

    pub fn len(&self) -> usize {
        self.j - self.i + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gaps(&self) -> Vec<usize> {
        (self.i..=self.j).collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

/// The set `P(n)` of proper subintervals of `[1, n − 1]`.
pub fn proper_intervals(n: usize) -> Vec<Interval> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in i..n {
            if let Ok(iv) = Interval::new(n, i, j) {
                out.push(iv);
            }
        }
    }
    out
}

/// `I` and `J` are compatible unless `I ∪ J` is an interval properly
/// containing both.
pub fn compatible(a: &Interval, b: &Interval) -> bool {
    let (x, y) = (a.mask(), b.mask());
    let u = x | y;
    if u == x || u == y {
        return true;
    }
    !is_linear_interval(u)
}

/// A proper cyclic subinterval of `[1, n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CyclicInterval {
    /// `[i, j] = {i, …, j}`.
    Normal { i: usize, j: usize },
    /// `i][j = {1, …, i} ∪ {j, …, n}`.
    Wrap { i: usize, j: usize },
}

impl CyclicInterval {
    pub fn normal(n: usize, i: usize, j: usize) -> Result<CyclicInterval> {
        if i < 1 || i > j || j > n || (i == 1 && j == n) {
            return Err(Error::InvalidInterval(format!("[{i},{j}] in PC({n})")));
        }
        Ok(CyclicInterval::Normal { i, j })
    }

    pub fn wrap(n: usize, i: usize, j: usize) -> Result<CyclicInterval> {
        if i < 1 || i >= j || j > n || j == i + 1 {
            return Err(Error::InvalidInterval(format!("{i}][{j} in PC({n})")));
        }
        Ok(CyclicInterval::Wrap { i, j })
    }

    pub fn mask(&self, n: usize) -> Mask {
        match *self {
            CyclicInterval::Normal { i, j } => range_mask(i, j),
            CyclicInterval::Wrap { i, j } => range_mask(1, i) | range_mask(j, n),
        }
    }

    pub fn len(&self, n: usize) -> usize {
        self.mask(n).count_ones() as usize
    }

    /// The letter arc bracketed by `b(I)`: zero-based start position and
    /// number of letters, read off the three-case formula for `b(I)`.
    pub fn letter_arc(&self, n: usize) -> (usize, usize) {
        match *self {
            // 1⋯(i⋯j+1)⋯n for j < n, and 1)⋯(i⋯n for j = n
            CyclicInterval::Normal { i, j } => (i - 1, j - i + 2),
            // 1⋯i+1)⋯(j⋯n
            CyclicInterval::Wrap { i, j } => (j - 1, n - j + 1 + i + 1),
        }
    }

    /// The cyclic interval of gaps covered by a letter arc.
    pub fn from_letter_arc(n: usize, start: usize, len: usize) -> Result<CyclicInterval> {
        if len < 2 || len > n || start >= n {
            return Err(Error::InvalidInterval(format!(
                "arc ({start},{len}) in PC({n})"
            )));
        }
        let lo = start + 1;
        let hi = start + len - 1;
        if hi <= n {
            CyclicInterval::normal(n, lo, hi)
        } else {
            CyclicInterval::wrap(n, hi - n, lo)
        }
    }

    /// Recovers a cyclic interval from its gap set, if it is one.
    pub fn from_mask(n: usize, mask: u64) -> Option<CyclicInterval> {
        cyclic_intervals(n).into_iter().find(|c| c.mask(n) == mask)
    }

    /// The gaps of the interval, in increasing order.
    pub fn gaps(&self, n: usize) -> Vec<usize> {
        let m = self.mask(n);
        (1..=n).filter(|g| m >> (g - 1) & 1 == 1).collect()
    }

    /// Tag used in serialized output.
    pub fn tag(&self) -> String {
        self.to_string()
    }
}

/// Cyclic intervals that are not intervals of `[1, n]`: the wrap-around
/// ones. Together with `P(n + 1)` they make up `PC(n)`.
pub fn exotic_intervals(n: usize) -> Vec<CyclicInterval> {
    cyclic_intervals(n)
        .into_iter()
        .filter(|c| matches!(c, CyclicInterval::Wrap { .. }))
        .collect()
}

impl fmt::Display for CyclicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CyclicInterval::Normal { i, j } => write!(f, "[{i},{j}]"),
            CyclicInterval::Wrap { i, j } => write!(f, "{i}][{j}"),
        }
    }
}

/// The set `PC(n)`.
pub fn cyclic_intervals(n: usize) -> Vec<CyclicInterval> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            if let Ok(c) = CyclicInterval::normal(n, i, j) {
                out.push(c);
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if let Ok(c) = CyclicInterval::wrap(n, i, j) {
                out.push(c);
            }
        }
    }
    out
}

/// `I ⊂ J` or `J ⊂ I`.
pub fn nested(n: usize, a: &CyclicInterval, b: &CyclicInterval) -> bool {
    let (x, y) = (a.mask(n), b.mask(n));
    x & y == x || x & y == y
}

/// Cyclic compatibility: nested, or disjoint with a union that is neither
/// a cyclic arc nor all of `[1, n]`.
pub fn cyclic_compatible(n: usize, a: &CyclicInterval, b: &CyclicInterval) -> bool {
    if nested(n, a, b) {
        return true;
    }
    let (x, y) = (a.mask(n), b.mask(n));
    if x & y != 0 {
        return false;
    }
    let u = x | y;
    u != range_mask(1, n) && !is_cyclic_arc(u, n)
}

/// A set of pairwise compatible intervals, an element of `I(n)` or `IC(n)`.
pub type IntervalSet<T> = BTreeSet<T>;

fn compatible_families<T: Clone + Ord>(
    items: &[T],
    ok: impl Fn(&T, &T) -> bool,
) -> Vec<BTreeSet<T>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn go<T: Clone + Ord>(
        items: &[T],
        ok: &dyn Fn(&T, &T) -> bool,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<T>>,
    ) {
        out.push(cur.iter().map(|&i| items[i].clone()).collect());
        for k in start..items.len() {
            if cur.iter().all(|&c| ok(&items[c], &items[k])) {
                cur.push(k);
                go(items, ok, k + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(items, &ok, 0, &mut cur, &mut out);
    out
}

/// All elements of `I(n)`.
pub fn enumerate_i(n: usize) -> Vec<IntervalSet<Interval>> {
    compatible_families(&proper_intervals(n), compatible)
}

/// All elements of `IC(n)` under cyclic compatibility.
pub fn enumerate_ic(n: usize) -> Vec<IntervalSet<CyclicInterval>> {
    compatible_families(&cyclic_intervals(n), |a, b| cyclic_compatible(n, a, b))
}

/// All subsets of `PC(n)` whose members are pairwise nested.
pub fn enumerate_ic_nested(n: usize) -> Vec<IntervalSet<CyclicInterval>> {
    compatible_families(&cyclic_intervals(n), |a, b| nested(n, a, b))
}

/// Poset `I(n)`: `ι' ≤ ι''` iff `ι'' ⊆ ι'` (fewer intervals = bigger face).
pub fn poset_i(n: usize) -> (Vec<IntervalSet<Interval>>, Poset) {
    let els = enumerate_i(n);
    let labels = els.iter().map(fmt_set).collect();
    let p = Poset::from_relation(labels, |a, b| els[b].is_subset(&els[a]));
    (els, p)
}

pub fn poset_ic(n: usize) -> (Vec<IntervalSet<CyclicInterval>>, Poset) {
    let els = enumerate_ic(n);
    let labels = els.iter().map(fmt_set).collect();
    let p = Poset::from_relation(labels, |a, b| els[b].is_subset(&els[a]));
    (els, p)
}

pub fn fmt_set<T: fmt::Display>(s: &BTreeSet<T>) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// A bracketing of a word of distinct letters, stored as a planar tree
/// over the ordered leaves. The root vertex is the implicit outer pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracketing {
    tree: PlanarTree,
    letters: Vec<usize>,
}

impl Bracketing {
    /// A bracketing of `1 2 ⋯ n`.
    pub fn new(tree: PlanarTree) -> Bracketing {
        let n = tree.leaves();
        Bracketing {
            tree,
            letters: (1..=n).collect(),
        }
    }

    /// A bracketing of a permuted word (an element of the symmetrization).
    pub fn with_letters(tree: PlanarTree, letters: Vec<usize>) -> Result<Bracketing> {
        if tree.leaves() != letters.len() {
            return Err(Error::ArityMismatch {
                expected: tree.leaves(),
                found: letters.len(),
            });
        }
        Ok(Bracketing { tree, letters })
    }

    pub fn trivial(n: usize) -> Bracketing {
        Bracketing::new(PlanarTree::corolla(n))
    }

    pub fn arity(&self) -> usize {
        self.letters.len()
    }

    pub fn tree(&self) -> &PlanarTree {
        &self.tree
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Letter spans `(a, b)` (zero-based positions) of the bracket pairs,
    /// excluding the implicit outer pair.
    pub fn spans(&self) -> BTreeSet<(usize, usize)> {
        let n = self.arity();
        self.tree
            .vertex_spans()
            .into_iter()
            .filter(|&(a, b)| !(a == 0 && b + 1 == n))
            .collect()
    }

    pub fn from_spans(letters: Vec<usize>, spans: &BTreeSet<(usize, usize)>) -> Bracketing {
        let n = letters.len();
        let v: Vec<_> = spans.iter().copied().collect();
        Bracketing {
            tree: PlanarTree::from_spans(n, &v),
            letters,
        }
    }

    /// The intervals `[a+1, b]` of gaps inside each bracket pair.
    pub fn intervals(&self) -> IntervalSet<Interval> {
        let n = self.arity();
        self.spans()
            .into_iter()
            .map(|(a, b)| Interval::new(n, a + 1, b).expect("proper bracket"))
            .collect()
    }

    /// Parses strings such as `1(23)4` or `(13)2`.
    pub fn parse(s: &str) -> Result<Bracketing> {
        let mut letters = Vec::new();
        let mut stack = Vec::new();
        let mut spans = BTreeSet::new();
        for ch in s.chars() {
            match ch {
                '(' => stack.push(letters.len()),
                ')' => {
                    let a = stack.pop().ok_or_else(|| Error::Parse(s.to_string()))?;
                    if letters.len() < a + 2 {
                        return Err(Error::Parse(s.to_string()));
                    }
                    if !spans.insert((a, letters.len() - 1)) {
                        return Err(Error::Parse(s.to_string()));
                    }
                }
                d if d.is_ascii_digit() && d != '0' => {
                    letters.push(d.to_digit(10).unwrap() as usize)
                }
                _ => return Err(Error::Parse(s.to_string())),
            }
        }
        let n = letters.len();
        if !stack.is_empty() || n == 0 || spans.contains(&(0, n - 1)) {
            return Err(Error::Parse(s.to_string()));
        }
        let mut sorted = letters.clone();
        sorted.sort();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(Bracketing::from_spans(letters, &spans))
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.arity();
        let spans = self.spans();
        let mut out = String::new();
        for p in 0..n {
            let mut opens: Vec<_> = spans.iter().filter(|s| s.0 == p).collect();
            opens.sort_by_key(|s| std::cmp::Reverse(s.1));
            for _ in opens {
                out.push('(');
            }
            out.push_str(&self.letters[p].to_string());
            for _ in spans.iter().filter(|s| s.1 == p) {
                out.push(')');
            }
        }
        f.write_str(&out)
    }
}

/// Bracketing `b(I) = 1⋯(i⋯j+1)⋯n` for a single interval.
pub fn interval_to_bracketing(n: usize, iv: &Interval) -> Bracketing {
    let mut spans = BTreeSet::new();
    spans.insert((iv.i - 1, iv.j));
    Bracketing::from_spans((1..=n).collect(), &spans)
}

/// The bracketing of `1 ⋯ n` with one bracket per interval of `ι`.
pub fn interval_set_to_bracketing(n: usize, iota: &IntervalSet<Interval>) -> Bracketing {
    let spans: BTreeSet<_> = iota
        .iter()
        .flat_map(|iv| interval_to_bracketing(n, iv).spans())
        .collect();
    Bracketing::from_spans((1..=n).collect(), &spans)
}

/// All bracketings of `1 ⋯ n` (planar trees), ordered by the
/// reflexive-transitive closure of single bracket deletions.
pub fn enumerate_b(n: usize) -> (Vec<Bracketing>, Poset) {
    let els: Vec<Bracketing> = enumerate_planar_trees(n)
        .into_iter()
        .map(Bracketing::new)
        .collect();
    let index: BTreeMap<BTreeSet<(usize, usize)>, usize> = els
        .iter()
        .enumerate()
        .map(|(i, b)| (b.spans(), i))
        .collect();
    let mut steps = Vec::new();
    for (i, b) in els.iter().enumerate() {
        let spans = b.spans();
        for s in &spans {
            let mut fewer = spans.clone();
            fewer.remove(s);
            steps.push((i, index[&fewer]));
        }
    }
    let labels = els.iter().map(|b| b.to_string()).collect();
    (els, Poset::from_steps(labels, &steps))
}

/// Verifies that `ι ↦ b(ι)` is an order isomorphism `I(n) → B(n)`.
pub fn iso_b_i(n: usize) -> IsoReport {
    let (iset, ip) = poset_i(n);
    let (bs, bp) = enumerate_b(n);
    let index: BTreeMap<String, usize> = bs
        .iter()
        .enumerate()
        .map(|(i, b)| (b.to_string(), i))
        .collect();
    let mut map = Vec::with_capacity(iset.len());
    for iota in &iset {
        let b = interval_set_to_bracketing(n, iota);
        match index.get(&b.to_string()) {
            Some(&k) => map.push(k),
            None => {
                return IsoReport::NotBijective {
                    element: fmt_set(iota),
                }
            }
        }
    }
    ip.check_isomorphism(&bp, &map)
}

/// A cyclic bracketing: a cyclic word rotated so that the letter `1`
/// leads, together with bracketed letter arcs `(start, length)` on its
/// positions. An arc of full length `n` is an all-embracing pair whose
/// opening sits before position `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicBracketing {
    word: Vec<usize>,
    arcs: BTreeSet<(usize, usize)>,
}

/// One block of a cyclic forest: a planar tree with the letters on its
/// leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub tree: PlanarTree,
    pub letters: Vec<usize>,
}

impl CyclicBracketing {
    /// Builds the canonical symbol from cyclically arranged blocks. Any
    /// rotation of the block list gives the same symbol.
    pub fn from_blocks(blocks: &[Block]) -> Result<CyclicBracketing> {
        let mut word = Vec::new();
        let mut arcs = Vec::new();
        for b in blocks {
            if b.tree.leaves() != b.letters.len() {
                return Err(Error::ArityMismatch {
                    expected: b.tree.leaves(),
                    found: b.letters.len(),
                });
            }
            let off = word.len();
            for (a, z) in b.tree.vertex_spans() {
                arcs.push((off + a, z - a + 1));
            }
            word.extend(b.letters.iter().copied());
        }
        Self::from_word_arcs(word, arcs)
    }

    /// Builds from an arbitrary rotation of a word and arcs on it.
    pub fn from_word_arcs(word: Vec<usize>, arcs: Vec<(usize, usize)>) -> Result<CyclicBracketing> {
        let n = word.len();
        let mut sorted = word.clone();
        sorted.sort();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Parse(format!("{word:?}")));
        }
        let shift = word.iter().position(|&x| x == 1).unwrap_or(0);
        let rotated: Vec<usize> = (0..n).map(|p| word[(p + shift) % n]).collect();
        let arcs: BTreeSet<_> = arcs
            .into_iter()
            .map(|(s, l)| ((s + n - shift) % n, l))
            .collect();
        Ok(CyclicBracketing {
            word: rotated,
            arcs,
        })
    }

    pub fn arity(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    /// Cyclic intervals of gaps, one per bracket pair.
    pub fn intervals(&self) -> IntervalSet<CyclicInterval> {
        let n = self.arity();
        self.arcs
            .iter()
            .map(|&(s, l)| CyclicInterval::from_letter_arc(n, s, l).expect("valid arc"))
            .collect()
    }

    /// Inverse of [`intervals`](Self::intervals) for the word `word`.
    pub fn from_intervals(
        word: Vec<usize>,
        iota: &IntervalSet<CyclicInterval>,
    ) -> Result<CyclicBracketing> {
        let n = word.len();
        let arcs = iota.iter().map(|c| c.letter_arc(n)).collect();
        Self::from_word_arcs(word, arcs)
    }

    /// Parses the bracket notation, e.g. `1)((23)` or `(12))(3`, with
    /// letters in any cyclic order.
    pub fn parse(s: &str) -> Result<CyclicBracketing> {
        let mut word = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut closed: Vec<(usize, usize)> = Vec::new();
        let mut dangling_close: Vec<usize> = Vec::new();
        for ch in s.chars() {
            match ch {
                '(' => stack.push(word.len()),
                ')' => {
                    if word.is_empty() {
                        return Err(Error::Parse(s.to_string()));
                    }
                    let end = word.len() - 1;
                    match stack.pop() {
                        Some(a) => closed.push((a, end)),
                        None => dangling_close.push(end),
                    }
                }
                d if d.is_ascii_digit() && d != '0' => word.push(d.to_digit(10).unwrap() as usize),
                _ => return Err(Error::Parse(s.to_string())),
            }
        }
        let n = word.len();
        if stack.len() != dangling_close.len() || n == 0 {
            return Err(Error::Parse(s.to_string()));
        }
        let mut arcs = Vec::new();
        for (a, b) in closed {
            arcs.push((a, b - a + 1));
        }
        // The innermost wrap bracket opens last and closes first.
        for (k, &end) in dangling_close.iter().enumerate() {
            let start = stack[stack.len() - 1 - k];
            arcs.push((start, n - start + end + 1));
        }
        if arcs.iter().any(|&(_, l)| l < 2 || l > n) {
            return Err(Error::Parse(s.to_string()));
        }
        let len = arcs.len();
        let cb = Self::from_word_arcs(word, arcs)?;
        if cb.arcs.len() != len {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(cb)
    }

    /// Splits the symbol into its cyclically arranged blocks, starting
    /// with the block containing position 0 (or the block opening right
    /// after the cut preceding it).
    pub fn blocks(&self) -> Vec<Block> {
        let n = self.arity();
        // Maximal arcs cover the blocks; uncovered letters are singletons.
        let covered_by = |p: usize| {
            self.arcs
                .iter()
                .filter(move |&&(s, l)| (p + n - s) % n < l)
                .max_by_key(|&&(_, l)| l)
                .copied()
        };
        let maximal: BTreeSet<(usize, usize)> = self
            .arcs
            .iter()
            .copied()
            .filter(|&(s, l)| {
                !self
                    .arcs
                    .iter()
                    .any(|&(s2, l2)| l2 > l && (s + n - s2) % n + l <= l2)
            })
            .collect();
        // Choose a cut: a position that begins a block.
        let starts: Vec<usize> = (0..n)
            .filter(|&p| match covered_by(p) {
                None => true,
                Some(_) => maximal.iter().any(|&(s, _)| s == p),
            })
            .collect();
        let first = starts[0];
        let mut out = Vec::new();
        let mut p = first;
        let mut consumed = 0;
        while consumed < n {
            let arc = maximal.iter().find(|&&(s, _)| s == p).copied();
            let len = arc.map(|a| a.1).unwrap_or(1);
            let letters: Vec<usize> = (0..len).map(|k| self.word[(p + k) % n]).collect();
            let spans: Vec<(usize, usize)> = self
                .arcs
                .iter()
                .filter(|&&(s, l)| (s + n - p) % n + l <= len)
                .map(|&(s, l)| {
                    let a = (s + n - p) % n;
                    (a, a + l - 1)
                })
                .collect();
            out.push(Block {
                tree: PlanarTree::from_spans(len, &spans),
                letters,
            });
            p = (p + len) % n;
            consumed += len;
        }
        out
    }

    /// Number of bracket pairs (the codimension of the face).
    pub fn codim(&self) -> usize {
        self.arcs.len()
    }
}

impl fmt::Display for CyclicBracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.arity();
        let mut out = String::new();
        for p in 0..n {
            let mut opens: Vec<_> = self.arcs.iter().filter(|a| a.0 == p).collect();
            opens.sort_by_key(|a| std::cmp::Reverse(a.1));
            for _ in opens {
                out.push('(');
            }
            out.push_str(&self.word[p].to_string());
            let mut closes: Vec<_> = self
                .arcs
                .iter()
                .filter(|a| (a.0 + a.1 - 1) % n == p)
                .collect();
            closes.sort_by_key(|a| a.1);
            for _ in closes {
                out.push(')');
            }
        }
        f.write_str(&out)
    }
}

/// `b(I)` for a single cyclic interval, via the three-case formula.
pub fn cyclic_interval_to_bracketing(n: usize, iv: &CyclicInterval) -> CyclicBracketing {
    let mut s = IntervalSet::new();
    s.insert(*iv);
    CyclicBracketing::from_intervals((1..=n).collect(), &s).expect("valid interval")
}

/// Cyclic bracketings of the word `1 ⋯ n`, generated as cyclic forests:
/// a nonempty set of cuts splits the cycle into blocks, and each block of
/// length `r ≥ 2` carries a planar tree whose root is a bracket pair.
pub fn enumerate_bc(n: usize) -> (Vec<CyclicBracketing>, Poset) {
    let mut els = BTreeSet::new();
    if n == 1 {
        els.insert(CyclicBracketing {
            word: vec![1],
            arcs: BTreeSet::new(),
        });
    }
    for cuts in 1u64..(1u64 << n) {
        if n == 1 {
            break;
        }
        // cut g (bit g) sits after position g
        let cut_pos: Vec<usize> = (0..n).filter(|g| cuts >> g & 1 == 1).collect();
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        for (k, &c) in cut_pos.iter().enumerate() {
            let next = cut_pos[(k + 1) % cut_pos.len()];
            let start = (c + 1) % n;
            let len = if cut_pos.len() == 1 {
                n
            } else {
                (next + n - c) % n
            };
            blocks.push((start, len));
        }
        let mut partial: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for &(start, len) in &blocks {
            let trees = enumerate_planar_trees(len);
            let mut next = Vec::new();
            for pre in &partial {
                for t in &trees {
                    let mut v = pre.clone();
                    for (a, z) in t.vertex_spans() {
                        v.push(((start + a) % n, z - a + 1));
                    }
                    next.push(v);
                }
            }
            partial = next;
        }
        for arcs in partial {
            els.insert(CyclicBracketing::from_word_arcs((1..=n).collect(), arcs).unwrap());
        }
    }
    let els: Vec<CyclicBracketing> = els.into_iter().collect();
    let index: BTreeMap<&BTreeSet<(usize, usize)>, usize> =
        els.iter().enumerate().map(|(i, b)| (&b.arcs, i)).collect();
    let mut steps = Vec::new();
    for (i, b) in els.iter().enumerate() {
        for a in &b.arcs {
            let mut fewer = b.arcs.clone();
            fewer.remove(a);
            steps.push((i, index[&fewer]));
        }
    }
    let labels = els.iter().map(|b| b.to_string()).collect();
    (els, Poset::from_steps(labels, &steps))
}

/// Verifies that `ι ↦ b(ι)` is an order isomorphism `IC(n) → BC(n)`.
pub fn iso_bc_ic(n: usize) -> IsoReport {
    let (iset, ip) = poset_ic(n);
    let (bs, bp) = enumerate_bc(n);
    let index: BTreeMap<String, usize> = bs
        .iter()
        .enumerate()
        .map(|(i, b)| (b.to_string(), i))
        .collect();
    let mut map = Vec::with_capacity(iset.len());
    for iota in &iset {
        let b = CyclicBracketing::from_intervals((1..=n).collect(), iota).expect("valid intervals");
        match index.get(&b.to_string()) {
            Some(&k) => map.push(k),
            None => {
                return IsoReport::NotBijective {
                    element: fmt_set(iota),
                }
            }
        }
    }
    ip.check_isomorphism(&bp, &map)
}

/// Operad composition of the symmetrized bracketings: letter `s` of `b`
/// is replaced by `children[s − 1]` with letters shifted, and no bracket
/// is added around the inserted blocks.
pub fn compose_b(b: &Bracketing, children: &[Bracketing]) -> Result<Bracketing> {
    if children.len() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: b.arity(),
            found: children.len(),
        });
    }
    let (letters, pos_ranges, inner) = substitute(&b.letters, children);
    let mut spans = BTreeSet::new();
    for (a, z) in b.spans() {
        spans.insert((pos_ranges[a].0, pos_ranges[z].1));
    }
    spans.extend(inner);
    Ok(Bracketing::from_spans(letters, &spans))
}

/// Substitutes blocks into a word; returns the new word, the position
/// range of each old position, and the inner bracket spans.
fn substitute(
    word: &[usize],
    children: &[Bracketing],
) -> (Vec<usize>, Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut offsets = vec![0];
    for c in children {
        offsets.push(offsets.last().unwrap() + c.arity());
    }
    let mut letters = Vec::new();
    let mut ranges = Vec::new();
    let mut inner = Vec::new();
    for &s in word {
        let c = &children[s - 1];
        let start = letters.len();
        letters.extend(c.letters.iter().map(|&x| x + offsets[s - 1]));
        ranges.push((start, letters.len() - 1));
        for (a, z) in c.spans() {
            inner.push((start + a, start + z));
        }
    }
    (letters, ranges, inner)
}

/// Module composition `ν(b; b_1, …, b_l)` of a cyclic bracketing with
/// symmetrized bracketings.
pub fn compose_bc(b: &CyclicBracketing, children: &[Bracketing]) -> Result<CyclicBracketing> {
    if children.len() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: b.arity(),
            found: children.len(),
        });
    }
    let (letters, ranges, inner) = substitute(&b.word, children);
    let n = letters.len();
    let mut arcs: Vec<(usize, usize)> = inner.into_iter().map(|(a, z)| (a, z - a + 1)).collect();
    let l = b.arity();
    for &(s, len) in &b.arcs {
        let start = ranges[s].0;
        let last = ranges[(s + len - 1) % l].1;
        let span = (last + n - start) % n + 1;
        arcs.push((start, span));
    }
    CyclicBracketing::from_word_arcs(letters, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cb(s: &str) -> CyclicBracketing {
        CyclicBracketing::parse(s).unwrap()
    }

    #[test]
    fn b_sizes() {
        assert_eq!(enumerate_b(2).0.len(), 1);
        let (b3, _) = enumerate_b(3);
        let names: BTreeSet<String> = b3.iter().map(|b| b.to_string()).collect();
        assert_eq!(
            names,
            ["(12)3", "1(23)", "123"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        let (b4, p4) = enumerate_b(4);
        assert_eq!(b4.len(), 11);
        assert_eq!(p4.minimal().len(), 5);
    }

    #[test]
    fn bc_small() {
        let (b2, _) = enumerate_bc(2);
        let names: BTreeSet<String> = b2.iter().map(|b| b.to_string()).collect();
        assert_eq!(
            names,
            ["(12)", "1)(2", "12"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        let (b3, _) = enumerate_bc(3);
        let names: BTreeSet<String> = b3.iter().map(|b| b.to_string()).collect();
        let table = [
            "(1(23))", "((12)3)", "1)((23)", "1))(2(3", "1)2)((3", "(12))(3", "1(23)", "1)(23",
            "1)2(3", "12)(3", "(12)3", "(123)", "123",
        ];
        assert_eq!(names, table.iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn compatibility_examples() {
        let i11 = Interval::new(4, 1, 1).unwrap();
        let i22 = Interval::new(4, 2, 2).unwrap();
        let i12 = Interval::new(4, 1, 2).unwrap();
        assert!(!compatible(&i11, &i22));
        assert!(compatible(&i12, &i11));
        let a = Interval::new(5, 1, 1).unwrap();
        let b = Interval::new(5, 3, 3).unwrap();
        assert!(compatible(&a, &b));
    }

    #[test]
    fn interval_formulas() {
        let b = interval_to_bracketing(3, &Interval::new(3, 1, 1).unwrap());
        assert_eq!(b.to_string(), "(12)3");
        let c = cyclic_interval_to_bracketing(3, &CyclicInterval::normal(3, 2, 3).unwrap());
        assert_eq!(c.to_string(), "1)(23");
        let w = cyclic_interval_to_bracketing(3, &CyclicInterval::wrap(3, 1, 3).unwrap());
        assert_eq!(w.to_string(), "12)(3");
    }

    #[test]
    fn string_round_trip() {
        for n in 1..=5 {
            for b in enumerate_bc(n).0 {
                assert_eq!(cb(&b.to_string()), b);
            }
        }
        for n in 2..=5 {
            for b in enumerate_b(n).0 {
                assert_eq!(Bracketing::parse(&b.to_string()).unwrap(), b);
            }
        }
    }

    #[test]
    fn swap_identification_at_construction() {
        let t2 = PlanarTree::corolla(2);
        let x = Block {
            tree: t2.clone(),
            letters: vec![1, 2],
        };
        let y = Block {
            tree: PlanarTree::Leaf,
            letters: vec![3],
        };
        let a = CyclicBracketing::from_blocks(&[x.clone(), y.clone()]).unwrap();
        let b = CyclicBracketing::from_blocks(&[y, x]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(12)3");
    }

    #[test]
    fn compose_examples() {
        let b = Bracketing::parse("12").unwrap();
        let r = compose_b(
            &b,
            &[
                Bracketing::parse("1(23)").unwrap(),
                Bracketing::parse("12").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(r.to_string(), "1(23)45");
        let b = Bracketing::parse("(12)3").unwrap();
        let kids = ["(12)3", "12", "(12)(34)"].map(|s| Bracketing::parse(s).unwrap());
        assert_eq!(
            compose_b(&b, &kids).unwrap().to_string(),
            "((12)345)(67)(89)"
        );

        let one = Bracketing::trivial(1);
        let two = Bracketing::trivial(2);
        let r = compose_bc(&cb("12"), &[two.clone(), two.clone()]).unwrap();
        assert_eq!(r.to_string(), "1234");
        let r = compose_bc(&cb("1)(2"), &[two.clone(), one.clone()]).unwrap();
        assert_eq!(r.to_string(), "12)(3");
        let r = compose_bc(&cb("(12)"), &[one.clone(), one]).unwrap();
        assert_eq!(r.to_string(), "(12)");
    }

    #[test]
    fn blocks_round_trip() {
        for n in 1..=5 {
            for b in enumerate_bc(n).0 {
                let again = CyclicBracketing::from_blocks(&b.blocks()).unwrap();
                assert_eq!(again, b, "{b}");
            }
        }
    }

    #[test]
    fn small_isomorphisms() {
        for n in 2..=5 {
            assert!(iso_b_i(n).passed(), "B({n})");
        }
        for n in 1..=4 {
            assert!(iso_bc_ic(n).passed(), "BC({n})");
        }
    }

    #[test]
    fn nested_only_family_is_too_small() {
        assert_eq!(enumerate_ic(4).len(), enumerate_bc(4).0.len());
        assert!(enumerate_ic_nested(4).len() < enumerate_ic(4).len());
    }
}

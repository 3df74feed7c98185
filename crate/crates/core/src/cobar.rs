//! Cobar complexes of `(sAss)*` and of the comodules `(sCycl)*` and
//! `(s(g∘Ass))*`, their identification with cellular chains of `K̄_n`,
//! `W̄_n` and `Δ̄_n`, and the filtration spectral sequence.
//!
//! A basis element of the module cobar complex is an arrangement
//! `[ξ_l; B_1, …, B_l]`: `l` blocks, each a planar tree whose leaves carry
//! letters. Cyclic arrangements are taken modulo rotation, with
//! `[B_1, …, B_l] = (−1)^{l−1} (−1)^{|B_1|(|B_2|+⋯+|B_l|)} [B_2, …, B_l, B_1]`.
//! A vertex with `k` inputs has degree `k − 2` and `ξ_l` has degree `l − 1`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::bracketings::{enumerate_bc, Block, Bracketing, CyclicBracketing};
use crate::chains::{
    incidence_check, simplex_complex, verify_chain_map, CellLattice, ChainComplex, ChainMap,
    IncidenceReport, SimplexCell, Witness,
};
use crate::combinatorics::{
    compositions, coset_project, enumerate_planar_trees, BlockPermutation, CyclicCoset,
    Permutation, PlanarTree,
};
use crate::linalg::{kernel, q, svec_add, Echelon, SVec, Q};
use crate::polytopes::{build_k, build_w, enumerate_faces, FaceLattice};

fn parity(x: usize) -> i32 {
    if x.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of splitting a vertex with `i + j + l` inputs into
/// `α_{i+1+l} ∘_{i+1} α_j`.
pub fn split_sign(i: usize, j: usize, l: usize) -> i32 {
    parity(i + j * l)
}

fn vertex_degrees(t: &PlanarTree, out: &mut Vec<usize>) {
    if let PlanarTree::Node(ch) = t {
        out.push(ch.len() - 2);
        for c in ch {
            vertex_degrees(c, out);
        }
    }
}

/// All ways of splitting the vertex with preorder index `target`, with
/// the local sign `s(i,j,l) · (−1)^{|α_j| Σ_{c≤i} |S_c|}`.
fn split_vertex(t: &PlanarTree, target: usize, counter: &mut usize) -> Vec<(i32, PlanarTree)> {
    let PlanarTree::Node(ch) = t else {
        return Vec::new();
    };
    let here = *counter;
    *counter += 1;
    if here == target {
        let k = ch.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 2..=k - i {
                let l = k - i - j;
                if i + l == 0 {
                    continue;
                }
                let before: usize = ch[..i].iter().map(|c| c.degree()).sum();
                let sign = split_sign(i, j, l) * parity((j - 2) * before);
                let mut kids: Vec<PlanarTree> = ch[..i].to_vec();
                kids.push(PlanarTree::Node(ch[i..i + j].to_vec()));
                kids.extend(ch[i + j..].iter().cloned());
                out.push((sign, PlanarTree::Node(kids)));
            }
        }
        return out;
    }
    for (c_idx, c) in ch.iter().enumerate() {
        let start = *counter;
        let res = split_vertex(c, target, counter);
        if !res.is_empty() || (start <= target && target < *counter) {
            return res
                .into_iter()
                .map(|(s, nc)| {
                    let mut kids = ch.clone();
                    kids[c_idx] = nc;
                    (s, PlanarTree::Node(kids))
                })
                .collect();
        }
    }
    Vec::new()
}

/// The derivation `∂` on a forest of trees, vertices taken in preorder
/// across the forest, starting after `prefix` degrees.
fn forest_boundary(trees: &[PlanarTree], prefix: usize) -> Vec<(i32, Vec<PlanarTree>)> {
    let mut out = Vec::new();
    let mut acc = prefix;
    for (b, t) in trees.iter().enumerate() {
        let mut degs = Vec::new();
        vertex_degrees(t, &mut degs);
        for (v, d) in degs.iter().enumerate() {
            let mut counter = 0;
            for (s, nt) in split_vertex(t, v, &mut counter) {
                let mut f = trees.to_vec();
                f[b] = nt;
                out.push((s * parity(acc), f));
            }
            acc += d;
        }
    }
    out
}

/// The cobar complex of `(sAss)*` in arity `n`: labeled planar trees,
/// which are the bracketings of `K̄_n`.
pub fn cobar_operad(n: usize) -> ChainComplex {
    let trees = enumerate_planar_trees(n);
    let perms = Permutation::all(n);
    let top = n.saturating_sub(1);
    let mut cells: Vec<Vec<(PlanarTree, Vec<usize>)>> = vec![Vec::new(); top.max(1)];
    for t in &trees {
        for p in &perms {
            cells[t.degree()].push((t.clone(), p.word()));
        }
    }
    for c in cells.iter_mut() {
        c.sort();
    }
    let index: BTreeMap<&(PlanarTree, Vec<usize>), usize> = cells
        .iter()
        .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)))
        .collect();
    let mut boundary = Vec::new();
    for (d, cs) in cells.iter().enumerate() {
        let mut rows = Vec::new();
        for (t, w) in cs {
            let mut b = SVec::new();
            if d > 0 {
                for (s, f) in forest_boundary(std::slice::from_ref(t), 0) {
                    let key = (f[0].clone(), w.clone());
                    svec_add(&mut b, index[&key], &q(s as i64));
                }
            }
            rows.push(b);
        }
        boundary.push(rows);
    }
    let basis = cells
        .iter()
        .map(|cs| {
            cs.iter()
                .map(|(t, w)| {
                    Bracketing::with_letters(t.clone(), w.clone())
                        .expect("arity")
                        .to_string()
                })
                .collect()
        })
        .collect();
    ChainComplex::new(basis, boundary)
}

/// The cell lattice of `K̄_n`: one geometric `K_n` per labeling.
pub fn k_bar_lattice(n: usize) -> CellLattice {
    let lat = enumerate_faces(&build_k(n).expect("n ≥ 2"));
    let parts = Permutation::all(n)
        .into_iter()
        .map(|p| {
            let w = p.word();
            relabel_lattice(&lat, |face| {
                let b = Bracketing::parse(&lat.label(face)).expect("label parses");
                Bracketing::with_letters(b.tree().clone(), w.clone())
                    .expect("arity")
                    .to_string()
            })
        })
        .collect();
    CellLattice::disjoint_union(parts)
}

fn relabel_lattice(lat: &FaceLattice, label: impl Fn(usize) -> String) -> CellLattice {
    CellLattice {
        labels: (0..lat.faces.len()).map(&label).collect(),
        dims: lat.faces.iter().map(|f| f.dim).collect(),
        facets: lat.covers().into_iter().map(|[a, b]| (a, b)).collect(),
    }
}

/// Whether arrangements are taken modulo rotation (the comodule
/// `(sCycl)*`) or not (the free comodule `(s(g∘Ass))*`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Arrangement {
    Cyclic,
    Linear,
}

fn block_degree(b: &Block) -> usize {
    b.tree.degree()
}

/// `[B] = sign · [ρ B]` for the rotation `ρ(B_1, …, B_l) = (B_2, …, B_l, B_1)`.
fn rotation_sign(blocks: &[Block]) -> i32 {
    let l = blocks.len();
    let first = block_degree(&blocks[0]);
    let rest: usize = blocks[1..].iter().map(block_degree).sum();
    parity(l - 1) * parity(first * rest)
}

/// Returns `(sign, canonical)` with `[blocks] = sign · [canonical]`. The
/// canonical rotation minimizes the block sizes, then the letters.
pub fn canonical_arrangement(blocks: &[Block]) -> (i32, Vec<Block>) {
    let l = blocks.len();
    let key = |bs: &[Block]| {
        (
            bs.iter().map(|b| b.letters.len()).collect::<Vec<_>>(),
            bs.iter()
                .flat_map(|b| b.letters.clone())
                .collect::<Vec<_>>(),
        )
    };
    let mut cur = blocks.to_vec();
    let mut sign = 1;
    let mut best = (key(&cur), 1, cur.clone());
    for _ in 1..l {
        sign *= rotation_sign(&cur);
        cur.rotate_left(1);
        let k = key(&cur);
        if k < best.0 {
            best = (k, sign, cur.clone());
        }
    }
    (best.1, best.2)
}

fn arrangement_label(blocks: &[Block], mode: Arrangement) -> String {
    match mode {
        Arrangement::Cyclic => CyclicBracketing::from_blocks(blocks)
            .expect("blocks")
            .to_string(),
        Arrangement::Linear => blocks
            .iter()
            .map(|b| {
                let s = Bracketing::with_letters(b.tree.clone(), b.letters.clone())
                    .expect("arity")
                    .to_string();
                if b.letters.len() > 1 {
                    format!("[{s}]")
                } else {
                    s
                }
            })
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn merge(blocks: &[Block]) -> Block {
    Block {
        tree: PlanarTree::Node(blocks.iter().map(|b| b.tree.clone()).collect()),
        letters: blocks.iter().flat_map(|b| b.letters.clone()).collect(),
    }
}

/// The module cobar complex with its basis arrangements.
#[derive(Clone, Debug)]
pub struct CobarModule {
    pub n: usize,
    pub mode: Arrangement,
    pub complex: ChainComplex,
    /// Canonical arrangement of every basis element, by degree.
    pub cells: Vec<Vec<Vec<Block>>>,
}

impl CobarModule {
    /// Number of blocks of a basis element; the filtration level is this
    /// minus one.
    pub fn blocks(&self, d: usize, i: usize) -> usize {
        self.cells[d][i].len()
    }

    fn index(&self) -> BTreeMap<&Vec<Block>, (usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(d, cs)| cs.iter().enumerate().map(move |(i, c)| (c, (d, i))))
            .collect()
    }
}

fn arrangement_degree(blocks: &[Block]) -> usize {
    blocks.len() - 1 + blocks.iter().map(block_degree).sum::<usize>()
}

/// All canonical arrangements in arity `n`.
fn module_cells(n: usize, mode: Arrangement) -> Vec<Vec<Vec<Block>>> {
    let mut set: BTreeSet<Vec<Block>> = BTreeSet::new();
    match mode {
        Arrangement::Cyclic => {
            let (bcs, _) = enumerate_bc(n);
            for coset in CyclicCoset::all(n) {
                let w = coset.cyclic_word();
                for b in &bcs {
                    let arcs: Vec<(usize, usize)> = b.arcs().iter().copied().collect();
                    let relabeled =
                        CyclicBracketing::from_word_arcs(w.clone(), arcs).expect("valid word");
                    set.insert(canonical_arrangement(&relabeled.blocks()).1);
                }
            }
        }
        Arrangement::Linear => {
            for p in Permutation::all(n) {
                let w = p.word();
                for comp in compositions(n) {
                    let mut partial: Vec<Vec<Block>> = vec![Vec::new()];
                    let mut off = 0;
                    for &m in &comp {
                        let letters = w[off..off + m].to_vec();
                        off += m;
                        let mut next = Vec::new();
                        for pre in &partial {
                            for t in enumerate_planar_trees(m) {
                                let mut v = pre.clone();
                                v.push(Block {
                                    tree: t,
                                    letters: letters.clone(),
                                });
                                next.push(v);
                            }
                        }
                        partial = next;
                    }
                    set.extend(partial);
                }
            }
        }
    }
    let mut cells = vec![Vec::new(); n];
    for c in set {
        cells[arrangement_degree(&c)].push(c);
    }
    cells
}

/// `∂[ξ_l; B]` as a list of signed arrangements (not yet canonical).
///
/// The root part merges `k ≥ 2` consecutive blocks into one block under a
/// new vertex. Cyclically this is `Σ_rot ± (−1)^{lk} [B_1⋯B_k, B_{k+1}, …]`;
/// linearly, merging `B_{p+1}, …, B_{p+k}` has sign
/// `(−1)^{p + k + k(l−p−k)}` times the Koszul sign of moving the new vertex
/// past `B_1, …, B_p`. The tree part is the derivation on the blocks,
/// after `ξ_l`.
fn module_boundary(blocks: &[Block], mode: Arrangement) -> Vec<(i32, Vec<Block>)> {
    let l = blocks.len();
    let mut out = Vec::new();
    match mode {
        Arrangement::Cyclic => {
            // Σ over rotations with the identification sign, k ≥ 2.
            let mut cur = blocks.to_vec();
            let mut rs = 1;
            for r in 0..l {
                if r > 0 {
                    rs *= rotation_sign(&cur);
                    cur.rotate_left(1);
                }
                for k in 2..=l {
                    let mut nb = vec![merge(&cur[..k])];
                    nb.extend(cur[k..].iter().cloned());
                    out.push((rs * parity(l * k), nb));
                }
            }
        }
        Arrangement::Linear => {
            for k in 2..=l {
                for p in 0..=l - k {
                    let before: usize = blocks[..p].iter().map(block_degree).sum();
                    let mut nb = blocks[..p].to_vec();
                    nb.push(merge(&blocks[p..p + k]));
                    nb.extend(blocks[p + k..].iter().cloned());
                    out.push((
                        parity(k + p + k * (l - p - k)) * parity((k - 2) * before),
                        nb,
                    ));
                }
            }
        }
    }
    let trees: Vec<PlanarTree> = blocks.iter().map(|b| b.tree.clone()).collect();
    for (s, f) in forest_boundary(&trees, l - 1) {
        let nb = blocks
            .iter()
            .zip(f)
            .map(|(b, t)| Block {
                tree: t,
                letters: b.letters.clone(),
            })
            .collect();
        out.push((s, nb));
    }
    out
}

/// `∂` of one arrangement, as signed arrangements in no particular
/// rotation.
pub fn arrangement_boundary(blocks: &[Block], mode: Arrangement) -> Vec<(i32, Vec<Block>)> {
    module_boundary(blocks, mode)
}

/// `∂` of one planar tree of the operad cobar complex.
pub fn tree_boundary(t: &PlanarTree) -> Vec<(i32, PlanarTree)> {
    forest_boundary(std::slice::from_ref(t), 0)
        .into_iter()
        .map(|(s, mut f)| (s, f.remove(0)))
        .collect()
}

fn build_module(
    n: usize,
    mode: Arrangement,
    cells: Vec<Vec<Vec<Block>>>,
    boundary_fn: impl Fn(&[Block]) -> Vec<(i32, Vec<Block>)>,
) -> CobarModule {
    let index: BTreeMap<&Vec<Block>, usize> = cells
        .iter()
        .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)))
        .collect();
    let mut boundary = Vec::new();
    for (d, cs) in cells.iter().enumerate() {
        let mut rows = Vec::new();
        for c in cs {
            let mut b = SVec::new();
            if d > 0 {
                for (s, nb) in boundary_fn(c) {
                    let (s2, canon) = match mode {
                        Arrangement::Cyclic => canonical_arrangement(&nb),
                        Arrangement::Linear => (1, nb),
                    };
                    svec_add(&mut b, index[&canon], &q((s * s2) as i64));
                }
            }
            rows.push(b);
        }
        boundary.push(rows);
    }
    let basis = cells
        .iter()
        .map(|cs| cs.iter().map(|c| arrangement_label(c, mode)).collect())
        .collect();
    CobarModule {
        n,
        mode,
        complex: ChainComplex::new(basis, boundary),
        cells,
    }
}

/// `Ω((sCycl)*; (sAss)*)(n)`, or its linear analogue for the free
/// module `⟨g; Ass; 0⟩`.
pub fn cobar_module(n: usize, mode: Arrangement) -> CobarModule {
    build_module(n, mode, module_cells(n, mode), |b| module_boundary(b, mode))
}

/// The cell lattice of `W̄_n`: one geometric `W_n` per cyclic order,
/// labeled by relabeled cyclic bracketings.
pub fn w_bar_lattice(n: usize) -> CellLattice {
    let lat = enumerate_faces(&build_w(n).expect("n ≥ 1"));
    w_bar_from(&lat, n)
}

fn w_bar_from(lat: &FaceLattice, n: usize) -> CellLattice {
    let parts = CyclicCoset::all(n)
        .into_iter()
        .map(|c| {
            let w = c.cyclic_word();
            relabel_lattice(lat, |face| {
                let b = CyclicBracketing::parse(&lat.label(face)).expect("label parses");
                let arcs = b.arcs().iter().copied().collect();
                CyclicBracketing::from_word_arcs(w.clone(), arcs)
                    .expect("valid")
                    .to_string()
            })
        })
        .collect();
    CellLattice::disjoint_union(parts)
}

/// The combinatorial cell lattice of `W̄_n` from `BC(n)`, with facets
/// given by single bracket deletions.
pub fn w_bar_combinatorial(n: usize) -> CellLattice {
    let (bcs, _) = enumerate_bc(n);
    let index: BTreeMap<&BTreeSet<(usize, usize)>, usize> =
        bcs.iter().enumerate().map(|(i, b)| (b.arcs(), i)).collect();
    let mut facets = BTreeSet::new();
    for (i, b) in bcs.iter().enumerate() {
        for a in b.arcs() {
            let mut fewer = b.arcs().clone();
            fewer.remove(a);
            facets.insert((i, index[&fewer]));
        }
    }
    let parts = CyclicCoset::all(n)
        .into_iter()
        .map(|c| {
            let w = c.cyclic_word();
            CellLattice {
                labels: bcs
                    .iter()
                    .map(|b| {
                        CyclicBracketing::from_word_arcs(
                            w.clone(),
                            b.arcs().iter().copied().collect(),
                        )
                        .unwrap()
                        .to_string()
                    })
                    .collect(),
                dims: bcs.iter().map(|b| n - 1 - b.codim()).collect(),
                facets: facets.clone(),
            }
        })
        .collect();
    CellLattice::disjoint_union(parts)
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclohedronReport {
    pub n: usize,
    pub dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub d_squared: Result<(), Witness>,
    pub incidence: IncidenceReport,
}

impl CyclohedronReport {
    pub fn passed(&self) -> bool {
        self.dims == self.expected_dims && self.d_squared.is_ok() && self.incidence.passed()
    }
}

/// Matches the module cobar complex with the cells of `W̄_n`: basis
/// labels biject with cells, and boundaries are ±1 exactly on facets.
/// Uses the geometric lattice when `geometric` is set, else `BC(n)`.
pub fn identify_cyclohedron(n: usize, geometric: bool) -> CyclohedronReport {
    let m = cobar_module(n, Arrangement::Cyclic);
    let lattice = if geometric {
        w_bar_lattice(n)
    } else {
        w_bar_combinatorial(n)
    };
    let mut expected = vec![0; n];
    for &d in &lattice.dims {
        expected[d] += 1;
    }
    CyclohedronReport {
        n,
        dims: m.complex.dims(),
        expected_dims: expected,
        d_squared: m.complex.check_d_squared(),
        incidence: incidence_check(&m.complex, &lattice),
    }
}

/// `(sCycl∘Ass)(n)`, words stored as degree-zero left combs, with `∂[ξ_l; w_1, …, w_l] = −Σ_rot ± [ξ_{l−1}; w_1w_2, …]`.
pub fn free_simplex_module(n: usize) -> CobarModule {
    let cells: Vec<Vec<Vec<Block>>> = module_cells(n, Arrangement::Cyclic)
        .into_iter()
        .map(|cs| {
            cs.into_iter()
                .filter(|c| c.iter().all(|b| b.tree == left_comb(b.letters.len())))
                .collect()
        })
        .collect();
    build_module(n, Arrangement::Cyclic, cells, |blocks| {
        let l = blocks.len();
        let mut out = Vec::new();
        let mut cur = blocks.to_vec();
        let mut rs = 1;
        for r in 0..l {
            if r > 0 {
                rs *= rotation_sign(&cur);
                cur.rotate_left(1);
            }
            if l >= 2 {
                let letters: Vec<usize> = cur[0]
                    .letters
                    .iter()
                    .chain(&cur[1].letters)
                    .copied()
                    .collect();
                let mut nb = vec![Block {
                    tree: left_comb(letters.len()),
                    letters,
                }];
                nb.extend(cur[2..].iter().cloned());
                out.push((-rs, nb));
            }
        }
        out
    })
}

/// `φ(T_{m_1,…,m_l} × σ) = ⟨σ^{-1}(i_1), …, σ^{-1}(i_l)⟩ × [σ]`, the
/// letters starting each block, as a signed oriented cell.
pub fn phi(blocks: &[Block]) -> (i32, SimplexCell) {
    let word: Vec<usize> = blocks.iter().flat_map(|b| b.letters.clone()).collect();
    let firsts: Vec<usize> = blocks.iter().map(|b| b.letters[0]).collect();
    let sigma = Permutation::from_word(&word).expect("word");
    SimplexCell::oriented(&firsts, coset_project(&sigma))
}

/// `φ` on the symbol `T_m × σ` directly.
pub fn phi_symbol(sizes: &[usize], sigma: &Permutation) -> (i32, SimplexCell) {
    let inv = sigma.inverse();
    let mut firsts = Vec::new();
    let mut i = 1;
    for &m in sizes {
        firsts.push(inv.apply(i));
        i += m;
    }
    SimplexCell::oriented(&firsts, coset_project(sigma))
}

/// `ζ(T_m × σ) = sgn(ζ) · T_{m_{ζ^{-1}(1)}, …} × ζ(m_1, …, m_l)σ`.
pub fn rotate_symbol(
    zeta: &Permutation,
    sizes: &[usize],
    sigma: &Permutation,
) -> (i32, Vec<usize>, Permutation) {
    let inv = zeta.inverse();
    let new_sizes = (1..=sizes.len()).map(|s| sizes[inv.apply(s) - 1]).collect();
    let block = BlockPermutation::new(zeta.clone(), sizes.to_vec())
        .expect("sizes")
        .expand();
    (zeta.sign(), new_sizes, block.compose(sigma))
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplexReport {
    pub n: usize,
    pub well_defined: Result<(), String>,
    pub bijective: bool,
    pub chain_map: Result<(), Witness>,
    pub dims: Vec<usize>,
    /// `C(n−1, l−1) · n!/l` per degree `l − 1`.
    pub expected_dims: Vec<usize>,
}

impl SimplexReport {
    pub fn passed(&self) -> bool {
        self.well_defined.is_ok()
            && self.bijective
            && self.chain_map.is_ok()
            && self.dims == self.expected_dims
    }
}

/// The map `ω` from `(sCycl∘Ass)(n)` to the chains of `Δ̄_n`.
pub fn omega(n: usize) -> (CobarModule, ChainComplex, ChainMap) {
    let m = free_simplex_module(n);
    let (target, cells) = simplex_complex(n);
    let index: BTreeMap<&SimplexCell, usize> = cells
        .iter()
        .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)))
        .collect();
    let images = m
        .cells
        .iter()
        .map(|cs| {
            cs.iter()
                .map(|c| {
                    let (s, cell) = phi(c);
                    SVec::from([(index[&cell], q(s as i64))])
                })
                .collect()
        })
        .collect();
    (m, target, ChainMap { images })
}

/// Checks that `ω` is well defined on rotation classes, a degreewise
/// signed bijection, and a chain map.
pub fn identify_simplex(n: usize) -> SimplexReport {
    let (m, target, w) = omega(n);
    let mut well_defined = Ok(());
    'outer: for sizes in compositions(n) {
        let l = sizes.len();
        for sigma in Permutation::all(n) {
            let base = phi_symbol(&sizes, &sigma);
            for k in 0..l {
                let zeta = Permutation::rotation(l, k);
                let (s, ns, nsig) = rotate_symbol(&zeta, &sizes, &sigma);
                let (s2, cell) = phi_symbol(&ns, &nsig);
                if cell != base.1 || s * s2 != base.0 {
                    well_defined = Err(format!("T_{sizes:?} x {sigma} under rotation by {k}"));
                    break 'outer;
                }
            }
        }
    }
    let expected_dims = (1..=n)
        .map(|l| {
            crate::combinatorics::binomial(n - 1, l - 1) * crate::combinatorics::factorial(n) / l
        })
        .collect();
    SimplexReport {
        n,
        well_defined,
        bijective: w.is_signed_bijection(&target),
        chain_map: verify_chain_map(&m.complex, &target, &w),
        dims: m.complex.dims(),
        expected_dims,
    }
}

/// Homology concentration report for a cobar complex.
#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub n: usize,
    pub homology: Vec<usize>,
    pub concentrated: bool,
    pub expected_h0: usize,
    pub h0_matches: bool,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        self.concentrated && self.h0_matches
    }
}

fn koszul_report(n: usize, c: &ChainComplex, expected_h0: usize) -> KoszulReport {
    let homology = c.homology_dims();
    let concentrated = homology.iter().skip(1).all(|&h| h == 0);
    let h0 = homology.first().copied().unwrap_or(0);
    KoszulReport {
        n,
        concentrated,
        h0_matches: h0 == expected_h0,
        expected_h0,
        homology,
    }
}

/// Koszulness of `Ass`: `H(Ω((sAss)*))(n) = Ass^!(n) = k[Σ_n]` in degree 0.
pub fn koszul_ass(n: usize) -> KoszulReport {
    koszul_report(n, &cobar_operad(n), crate::combinatorics::factorial(n))
}

/// Koszulness of `Cycl`: homology `Cycl^!(n)`, of dimension `(n−1)!`.
pub fn koszul_cycl(n: usize) -> KoszulReport {
    koszul_report(
        n,
        &cobar_module(n, Arrangement::Cyclic).complex,
        crate::combinatorics::factorial(n - 1),
    )
}

/// The relation-free module `⟨g; Ass; 0⟩` checked against the values
/// `(n−1)!` expected of `Cycl`.
pub fn koszul_free_as_cycl(n: usize) -> KoszulReport {
    koszul_report(
        n,
        &cobar_module(n, Arrangement::Linear).complex,
        crate::combinatorics::factorial(n - 1),
    )
}

/// Dimensions `E^r_{p,q}` of a filtered complex, keyed by `(p, q)`.
pub type PageDims = BTreeMap<(usize, usize), usize>;

/// Exact pages of the spectral sequence of the filtration by number of
/// blocks, `F_p = span{arrangements with at most p + 1 blocks}`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub filtration_closed: bool,
    pub pages: Vec<PageDims>,
    pub e_infinity: PageDims,
    pub e1_vanishes_above_row_zero: bool,
    pub e1_matches_simplex: bool,
    pub d1_matches_simplex: bool,
    pub collapses: bool,
    pub e_infinity_total: usize,
}

impl SpectralReport {
    pub fn passed(&self) -> bool {
        self.filtration_closed
            && self.e1_vanishes_above_row_zero
            && self.e1_matches_simplex
            && self.d1_matches_simplex
            && self.collapses
            && self.e_infinity_total == crate::combinatorics::factorial(self.n - 1)
    }
}

struct Filtered<'a> {
    c: &'a ChainComplex,
    level: Vec<Vec<usize>>,
}

impl Filtered<'_> {
    /// Basis of `Z^r_{p,d} = {x ∈ F_p C_d : ∂x ∈ F_{p−r}}`, with the
    /// convention `Z^{−1}_p = F_p`.
    fn z(&self, r: i64, p: i64, d: usize) -> Vec<SVec> {
        let members: Vec<usize> = (0..self.c.dim(d))
            .filter(|&i| (self.level[d][i] as i64) <= p)
            .collect();
        if r < 0 || d == 0 {
            return members.iter().map(|&i| SVec::from([(i, q(1))])).collect();
        }
        let images: Vec<SVec> = members
            .iter()
            .map(|&i| {
                self.c.boundary[d][i]
                    .iter()
                    .filter(|(j, _)| (self.level[d - 1][**j] as i64) > p - r)
                    .map(|(j, c)| (*j, c.clone()))
                    .collect()
            })
            .collect();
        kernel(&images)
            .into_iter()
            .map(|comb| comb.into_iter().map(|(k, c)| (members[k], c)).collect())
            .collect()
    }

    fn dim_e(&self, r: i64, p: i64, d: usize) -> usize {
        let z = self.z(r, p, d);
        let mut e = Echelon::new();
        for v in &z {
            e.insert(v);
        }
        let dz = e.rank();
        let mut den = Echelon::new();
        for v in self.z(r - 1, p - 1, d) {
            den.insert(&v);
        }
        if d + 1 < self.c.basis.len() {
            for v in self.z(r - 1, p + r - 1, d + 1) {
                den.insert(&self.c.apply(d + 1, &v));
            }
        }
        dz - den.rank()
    }

    fn page(&self, r: i64, max_p: usize) -> PageDims {
        let mut out = PageDims::new();
        for d in 0..self.c.basis.len() {
            for p in 0..=max_p.min(d) {
                let dim = self.dim_e(r, p as i64, d);
                if dim > 0 {
                    out.insert((p, d - p), dim);
                }
            }
        }
        out
    }
}

/// Sign `s(T)` with `T ≡ s(T)·(left comb)` in `H_0` of the cobar complex of
/// `(sAss)*`, for a binary tree `T` on `m` leaves.
fn binary_class_signs(m: usize) -> BTreeMap<PlanarTree, i32> {
    let c = cobar_operad(m);
    let mut out = BTreeMap::new();
    if m <= 1 {
        out.insert(PlanarTree::Leaf, 1);
        return out;
    }
    let id: Vec<usize> = (1..=m).collect();
    let mut rel = Echelon::new();
    if c.basis.len() > 1 {
        for b in &c.boundary[1] {
            rel.insert(b);
        }
    }
    let comb = left_comb(m);
    let label_of = |t: &PlanarTree| {
        Bracketing::with_letters(t.clone(), id.clone())
            .unwrap()
            .to_string()
    };
    let comb_idx = c.index_of(0, &label_of(&comb)).unwrap();
    let comb_red = rel.reduce(&SVec::from([(comb_idx, q(1))]));
    for t in enumerate_planar_trees(m)
        .into_iter()
        .filter(|t| t.is_binary())
    {
        let idx = c.index_of(0, &label_of(&t)).unwrap();
        let red = rel.reduce(&SVec::from([(idx, q(1))]));
        let (k, v) = comb_red.iter().next().expect("nonzero class");
        let ratio = red.get(k).cloned().unwrap_or_else(Q::zero) / v;
        let sign = if ratio == q(1) {
            1
        } else if ratio == q(-1) {
            -1
        } else {
            0
        };
        out.insert(t, sign);
    }
    out
}

fn left_comb(m: usize) -> PlanarTree {
    let mut t = PlanarTree::Leaf;
    for _ in 1..m {
        t = PlanarTree::Node(vec![t, PlanarTree::Leaf]);
    }
    t
}

/// Computes `E^0`, `E^1`, `E^2` and `E^∞` of the block filtration on
/// `Ω((sCycl)*; (sAss)*)(n)`, and compares `E^1` and `d^1` with the
/// chains of `Δ̄_n` through `ψ` and `ω`.
pub fn filtration_pages(n: usize) -> SpectralReport {
    let m = cobar_module(n, Arrangement::Cyclic);
    let level: Vec<Vec<usize>> = m
        .cells
        .iter()
        .map(|cs| cs.iter().map(|c| c.len() - 1).collect())
        .collect();
    let filtration_closed = (1..m.complex.basis.len()).all(|d| {
        m.complex.boundary[d]
            .iter()
            .enumerate()
            .all(|(i, b)| b.keys().all(|j| level[d - 1][*j] <= level[d][i]))
    });
    let f = Filtered {
        c: &m.complex,
        level,
    };
    let max_p = n - 1;
    let pages: Vec<PageDims> = (0..=2).map(|r| f.page(r, max_p)).collect();
    let e_infinity = f.page(n as i64 + 1, max_p);
    let e1 = &pages[1];
    let e1_vanishes_above_row_zero = e1.keys().all(|&(_, qq)| qq == 0);
    let (simplex, _) = simplex_complex(n);
    let e1_matches_simplex =
        (0..n).all(|p| e1.get(&(p, 0)).copied().unwrap_or(0) == simplex.dim(p));
    let collapses = pages[2] == e_infinity && e_infinity.keys().all(|&(p, qq)| p + qq == 0);
    let e_infinity_total = e_infinity.values().sum();
    SpectralReport {
        n,
        filtration_closed,
        e1_vanishes_above_row_zero,
        e1_matches_simplex,
        d1_matches_simplex: d1_matches_simplex(n, &m),
        collapses,
        e_infinity_total,
        pages,
        e_infinity,
    }
}

/// `d^1` on comb representatives of `E^1`, transported by
/// `ω ∘ ψ`, equals the simplex boundary up to one sign per degree.
fn d1_matches_simplex(n: usize, m: &CobarModule) -> bool {
    let (target, cells) = simplex_complex(n);
    let sidx: BTreeMap<&SimplexCell, usize> = cells
        .iter()
        .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)))
        .collect();
    let signs: Vec<BTreeMap<PlanarTree, i32>> = (0..=n).map(binary_class_signs).collect();
    let index = m.index();
    // ω∘ψ on a binary arrangement: product of class signs times φ.
    let transport = |blocks: &[Block]| -> (i32, usize) {
        let s: i32 = blocks
            .iter()
            .map(|b| signs[b.letters.len()][&b.tree])
            .product();
        let (s2, cell) = phi(blocks);
        (s * s2, sidx[&cell])
    };
    let mut ratio: BTreeMap<usize, i32> = BTreeMap::new();
    for p in 1..n {
        for comb_cell in m.cells[p]
            .iter()
            .filter(|c| c.len() == p + 1 && c.iter().all(|b| b.tree == left_comb(b.letters.len())))
        {
            let (i_d, i) = index[comb_cell];
            // d^1: keep the part of ∂ one filtration level down, expressed
            // through class signs of the (binary) merged blocks.
            let mut lhs = SVec::new();
            for (j, c) in &m.complex.boundary[i_d][i] {
                let blocks = &m.cells[i_d - 1][*j];
                if blocks.len() != p || !blocks.iter().all(|b| b.tree.is_binary()) {
                    continue;
                }
                let (s, k) = transport(blocks);
                svec_add(&mut lhs, k, &(c * q(s as i64)));
            }
            let (s, k) = transport(comb_cell);
            let rhs = target.apply(p, &SVec::from([(k, q(s as i64))]));
            let mut plus = lhs.clone();
            crate::linalg::svec_axpy(&mut plus, &q(-1), &rhs);
            let mut minus = lhs;
            crate::linalg::svec_axpy(&mut minus, &q(1), &rhs);
            let r = if plus.is_empty() {
                1
            } else if minus.is_empty() {
                -1
            } else {
                return false;
            };
            if *ratio.entry(p).or_insert(r) != r {
                return false;
            }
        }
    }
    true
}

/// One row of the deblowing-up table: a cell of `W̄_n` and the cell of
/// `Δ̄_n` it maps onto, or the lower cell it collapses to.
#[derive(Clone, Debug, Serialize)]
pub struct DeblowRow {
    pub cell: String,
    pub dim: usize,
    pub image: String,
    pub collapsed: bool,
}

pub fn deblow_report(n: usize) -> Vec<DeblowRow> {
    let m = cobar_module(n, Arrangement::Cyclic);
    let mut rows = Vec::new();
    for (d, cs) in m.cells.iter().enumerate() {
        for (i, c) in cs.iter().enumerate() {
            let (_, cell) = phi(c);
            let collapsed = !c.iter().all(|b| b.tree.is_binary());
            rows.push(DeblowRow {
                cell: m.complex.basis[d][i].clone(),
                dim: d,
                image: cell.label(),
                collapsed,
            });
        }
    }
    rows
}

pub fn deblow_text(rows: &[DeblowRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let arrow = if r.collapsed {
            format!("collapsed -> {}", r.image)
        } else {
            r.image.clone()
        };
        out.push_str(&format!("{}\t{}\t{}\n", r.dim, r.cell, arrow));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cobar_ass_small() {
        let c = cobar_operad(3);
        assert_eq!(c.dims(), vec![12, 6]);
        assert!(c.check_d_squared().is_ok());
        for n in 2..=4 {
            assert!(cobar_operad(n).check_d_squared().is_ok(), "n={n}");
        }
        assert_eq!(cobar_operad(4).homology_dims(), vec![24, 0, 0]);
    }

    #[test]
    fn cobar_module_small() {
        let m = cobar_module(2, Arrangement::Cyclic);
        assert_eq!(m.complex.dims(), vec![2, 1]);
        let m3 = cobar_module(3, Arrangement::Cyclic);
        assert_eq!(m3.complex.dims(), vec![12, 12, 2]);
        for n in 1..=4 {
            let c = cobar_module(n, Arrangement::Cyclic).complex;
            assert!(c.check_d_squared().is_ok(), "n={n}");
        }
    }

    #[test]
    fn linear_module_squares_to_zero() {
        for n in 1..=4 {
            assert!(
                cobar_module(n, Arrangement::Linear)
                    .complex
                    .check_d_squared()
                    .is_ok(),
                "n={n}"
            );
        }
    }

    #[test]
    fn koszul_small() {
        for n in 1..=4 {
            assert!(koszul_cycl(n).passed(), "{:?}", koszul_cycl(n));
        }
        assert!(koszul_ass(3).passed());
    }

    #[test]
    fn cyclohedron_small() {
        for n in 1..=3 {
            let r = identify_cyclohedron(n, true);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn omega_small() {
        for n in 1..=4 {
            let r = identify_simplex(n);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn spectral_small() {
        for n in 1..=3 {
            let r = filtration_pages(n);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn negated_rotated_corolla_breaks_chain_map() {
        let (m, target, mut w) = omega(2);
        assert!(verify_chain_map(&m.complex, &target, &w).is_ok());
        // [ξ_1; 21] ↦ −⟨2⟩ instead of ⟨2⟩.
        let i = m
            .complex
            .index_of(0, "(21)")
            .or_else(|| m.complex.index_of(0, "(12)"))
            .unwrap();
        let (s, cell) = phi(&m.cells[0][i]);
        assert_eq!((s, cell.label()), (1, "<1>x[12]".to_string()));
        for (j, c) in m.cells[0].iter().enumerate() {
            if c[0].letters == vec![2, 1] {
                assert_eq!(phi(c).1.label(), "<2>x[12]");
                w.images[0][j] = crate::linalg::svec_scale(&w.images[0][j], &q(-1));
            }
        }
        assert!(verify_chain_map(&m.complex, &target, &w).is_err());
    }

    #[test]
    fn deblow_three() {
        let rows = deblow_report(3);
        let collapsed: Vec<&DeblowRow> =
            rows.iter().filter(|r| r.collapsed && r.dim == 1).collect();
        assert_eq!(collapsed.len(), 6);
        let r = rows.iter().find(|r| r.cell == "(123)").unwrap();
        assert!(r.collapsed);
        assert_eq!(r.image, "<1>x[123]");
    }
}

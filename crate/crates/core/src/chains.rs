//! Graded chain complexes over ℚ with labeled bases.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{coset_project, CyclicCoset, Permutation};
use crate::linalg::{fmt_q, q, rank, svec_add, svec_axpy, SVec, Q};

/// A nonnegatively graded chain complex. `boundary[d][i]` is the boundary
/// of basis element `i` of degree `d`, as a sparse vector in degree
/// `d − 1`.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    pub basis: Vec<Vec<String>>,
    pub boundary: Vec<Vec<SVec>>,
}

/// A basis element located in a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: usize,
    pub label: String,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} in degree {}", self.label, self.degree)
    }
}

impl ChainComplex {
    pub fn new(basis: Vec<Vec<String>>, boundary: Vec<Vec<SVec>>) -> Self {
        ChainComplex { basis, boundary }
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, |b| b.len())
    }

    pub fn index_of(&self, d: usize, label: &str) -> Option<usize> {
        self.basis.get(d)?.iter().position(|l| l == label)
    }

    /// Applies the boundary to a chain of degree `d`.
    pub fn apply(&self, d: usize, x: &SVec) -> SVec {
        let mut out = SVec::new();
        if d == 0 {
            return out;
        }
        for (i, c) in x {
            svec_axpy(&mut out, c, &self.boundary[d][*i]);
        }
        out
    }

    /// A copy with the sign of the first nonzero coefficient of `∂e_i` in
    /// degree `d` flipped.
    pub fn with_flipped_sign(&self, d: usize, i: usize) -> ChainComplex {
        let mut out = self.clone();
        if let Some((_, c)) = out.boundary[d][i].iter_mut().next() {
            *c = -c.clone();
        }
        out
    }

    /// Checks `∂∂ = 0`; returns the first basis element violating it.
    pub fn check_d_squared(&self) -> Result<(), Witness> {
        for d in 2..self.basis.len() {
            for (i, b) in self.boundary[d].iter().enumerate() {
                if !self.apply(d - 1, b).is_empty() {
                    return Err(Witness {
                        degree: d,
                        label: self.basis[d][i].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Betti numbers over ℚ. The basis is first split into the connected
    /// components of the incidence graph so ranks are computed blockwise.
    pub fn homology_dims(&self) -> Vec<usize> {
        let top = self.basis.len();
        let mut offset = vec![0];
        for b in &self.basis {
            offset.push(offset.last().unwrap() + b.len());
        }
        let total = *offset.last().unwrap();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for d in 1..top {
            for (i, b) in self.boundary[d].iter().enumerate() {
                for j in b.keys() {
                    let (x, y) = (
                        find(&mut parent, offset[d] + i),
                        find(&mut parent, offset[d - 1] + j),
                    );
                    parent[x] = y;
                }
            }
        }
        let mut ranks = vec![0usize; top + 1];
        let mut groups: BTreeMap<usize, Vec<Vec<SVec>>> = BTreeMap::new();
        for d in 1..top {
            for (i, b) in self.boundary[d].iter().enumerate() {
                let root = find(&mut parent, offset[d] + i);
                let g = groups.entry(root).or_insert_with(|| vec![Vec::new(); top]);
                g[d].push(b.clone());
            }
        }
        for g in groups.values() {
            for d in 1..top {
                ranks[d] += rank(&g[d]);
            }
        }
        (0..top)
            .map(|d| self.dim(d) - ranks[d] - ranks[d + 1])
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims()
            .iter()
            .enumerate()
            .map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    }

    /// Reorders the basis of every degree by `perms[d]` (new position of
    /// old element `i` is `perms[d][i]`).
    pub fn permute_basis(&self, perms: &[Vec<usize>]) -> ChainComplex {
        let mut basis = self.basis.clone();
        for (d, p) in perms.iter().enumerate() {
            for (i, &j) in p.iter().enumerate() {
                basis[d][j] = self.basis[d][i].clone();
            }
        }
        let mut boundary = self.boundary.clone();
        for d in 0..self.basis.len() {
            for (i, b) in self.boundary[d].iter().enumerate() {
                let moved: SVec = if d == 0 {
                    SVec::new()
                } else {
                    b.iter()
                        .map(|(j, c)| (perms[d - 1][*j], c.clone()))
                        .collect()
                };
                boundary[d][perms[d][i]] = moved;
            }
        }
        ChainComplex { basis, boundary }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump<'a> {
            degrees: Vec<DegreeDump<'a>>,
        }
        #[derive(Serialize)]
        struct DegreeDump<'a> {
            degree: usize,
            basis: &'a [String],
            boundary: Vec<(usize, usize, String)>,
        }
        let degrees = (0..self.basis.len())
            .map(|d| DegreeDump {
                degree: d,
                basis: &self.basis[d],
                boundary: self.boundary[d]
                    .iter()
                    .enumerate()
                    .flat_map(|(i, b)| b.iter().map(move |(j, c)| (i, *j, fmt_q(c))))
                    .collect(),
            })
            .collect();
        serde_json::to_value(Dump { degrees }).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in 0..self.basis.len() {
            out.push_str(&format!("degree {d}: {} cells\n", self.dim(d)));
            for (i, l) in self.basis[d].iter().enumerate() {
                let terms: Vec<String> = if d == 0 {
                    Vec::new()
                } else {
                    self.boundary[d][i]
                        .iter()
                        .map(|(j, c)| format!("{} {}", fmt_q(c), self.basis[d - 1][*j]))
                        .collect()
                };
                out.push_str(&format!(
                    "  d({l}) = {}\n",
                    if terms.is_empty() {
                        "0".into()
                    } else {
                        terms.join(" + ")
                    }
                ));
            }
        }
        out
    }
}

/// A degree-preserving linear map. `images[d][i]` is the image of basis
/// element `i` in degree `d`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub images: Vec<Vec<SVec>>,
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> ChainMap {
        ChainMap {
            images: c
                .basis
                .iter()
                .map(|b| (0..b.len()).map(|i| SVec::from([(i, q(1))])).collect())
                .collect(),
        }
    }

    pub fn apply(&self, d: usize, x: &SVec) -> SVec {
        let mut out = SVec::new();
        for (i, c) in x {
            svec_axpy(&mut out, c, &self.images[d][*i]);
        }
        out
    }

    /// True when every degree is a signed permutation matrix.
    pub fn is_signed_bijection(&self, target: &ChainComplex) -> bool {
        for (d, imgs) in self.images.iter().enumerate() {
            if imgs.len() != target.dim(d) {
                return false;
            }
            let mut hit = BTreeSet::new();
            for img in imgs {
                if img.len() != 1 {
                    return false;
                }
                let (j, c) = img.iter().next().unwrap();
                if !c.abs().is_one() || !hit.insert(*j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Checks `∂ f = f ∂` on every basis element of `source`.
pub fn verify_chain_map(
    source: &ChainComplex,
    target: &ChainComplex,
    f: &ChainMap,
) -> Result<(), Witness> {
    for d in 1..source.basis.len() {
        for i in 0..source.dim(d) {
            let unit = SVec::from([(i, q(1))]);
            let lhs = target.apply(d, &f.apply(d, &unit));
            let rhs = f.apply(d - 1, &source.boundary[d][i]);
            let mut diff = lhs;
            svec_axpy(&mut diff, &q(-1), &rhs);
            if !diff.is_empty() {
                return Err(Witness {
                    degree: d,
                    label: source.basis[d][i].clone(),
                });
            }
        }
    }
    Ok(())
}

/// A cell poset: labels, dimensions, and codimension-one incidences.
#[derive(Clone, Debug, Default)]
pub struct CellLattice {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    /// `(face, cell)` with `face` a codimension-one face of `cell`.
    pub facets: BTreeSet<(usize, usize)>,
}

impl CellLattice {
    /// Disjoint union with label rewriting per summand.
    pub fn disjoint_union(parts: Vec<CellLattice>) -> CellLattice {
        let mut out = CellLattice::default();
        for p in parts {
            let off = out.labels.len();
            out.labels.extend(p.labels);
            out.dims.extend(p.dims);
            out.facets
                .extend(p.facets.into_iter().map(|(a, b)| (a + off, b + off)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IncidenceReport {
    Pass {
        cells: usize,
    },
    CountMismatch {
        degree: usize,
        complex: usize,
        lattice: usize,
    },
    UnknownLabel(Witness),
    /// A boundary coefficient that is not ±1 on a facet, or nonzero off one.
    BadCoefficient {
        cell: Witness,
        face: String,
        coefficient: String,
    },
}

impl IncidenceReport {
    pub fn passed(&self) -> bool {
        matches!(self, IncidenceReport::Pass { .. })
    }
}

/// Checks that basis labels of `c` biject with the cells of `lattice` in
/// matching dimensions and that each boundary has coefficient ±1 on the
/// codimension-one faces and zero elsewhere.
pub fn incidence_check(c: &ChainComplex, lattice: &CellLattice) -> IncidenceReport {
    let index: BTreeMap<&str, usize> = lattice
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let top = c
        .basis
        .len()
        .max(lattice.dims.iter().map(|d| d + 1).max().unwrap_or(0));
    for d in 0..top {
        let lat = lattice.dims.iter().filter(|&&x| x == d).count();
        if lat != c.dim(d) {
            return IncidenceReport::CountMismatch {
                degree: d,
                complex: c.dim(d),
                lattice: lat,
            };
        }
    }
    let mut cell_of: Vec<Vec<usize>> = Vec::new();
    for d in 0..c.basis.len() {
        let mut row = Vec::new();
        for l in &c.basis[d] {
            match index.get(l.as_str()) {
                Some(&k) if lattice.dims[k] == d => row.push(k),
                _ => {
                    return IncidenceReport::UnknownLabel(Witness {
                        degree: d,
                        label: l.clone(),
                    })
                }
            }
        }
        cell_of.push(row);
    }
    for d in 1..c.basis.len() {
        for i in 0..c.dim(d) {
            let cell = cell_of[d][i];
            let b = &c.boundary[d][i];
            for j in 0..c.dim(d - 1) {
                let face = cell_of[d - 1][j];
                let coeff = b.get(&j).cloned().unwrap_or_else(Q::zero);
                let ok = if lattice.facets.contains(&(face, cell)) {
                    coeff.abs().is_one()
                } else {
                    coeff.is_zero()
                };
                if !ok {
                    return IncidenceReport::BadCoefficient {
                        cell: Witness {
                            degree: d,
                            label: c.basis[d][i].clone(),
                        },
                        face: c.basis[d - 1][j].clone(),
                        coefficient: fmt_q(&coeff),
                    };
                }
            }
        }
    }
    IncidenceReport::Pass {
        cells: lattice.labels.len(),
    }
}

/// A basis cell `⟨i_1 < ⋯ < i_l⟩ × [σ]` of the chains on `Δ̄_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexCell {
    pub vertices: Vec<usize>,
    pub coset: CyclicCoset,
}

impl SimplexCell {
    /// Normalizes an ordered vertex list to increasing order; returns the
    /// orientation sign.
    pub fn oriented(vertices: &[usize], coset: CyclicCoset) -> (i32, SimplexCell) {
        let mut v = vertices.to_vec();
        let mut sign = 1;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        (sign, SimplexCell { vertices: v, coset })
    }

    pub fn label(&self) -> String {
        let v: Vec<String> = self.vertices.iter().map(|x| x.to_string()).collect();
        let w: String = self
            .coset
            .cyclic_word()
            .iter()
            .map(|x| x.to_string())
            .collect();
        format!("<{}>x[{w}]", v.join(","))
    }

    /// `(⟨i_1, …, i_l⟩ × [σ])·ρ = ⟨ρ^{-1}(i_1), …, ρ^{-1}(i_l)⟩ × [σρ]`.
    pub fn act(&self, rho: &Permutation) -> (i32, SimplexCell) {
        let inv = rho.inverse();
        let moved: Vec<usize> = self.vertices.iter().map(|&i| inv.apply(i)).collect();
        let coset = coset_project(&self.coset.representative().compose(rho));
        SimplexCell::oriented(&moved, coset)
    }
}

/// The cells of `Δ̄_n` grouped by dimension, in a fixed order.
pub fn simplex_cells(n: usize) -> Vec<Vec<SimplexCell>> {
    let cosets = CyclicCoset::all(n);
    let mut out = vec![Vec::new(); n];
    for c in &cosets {
        for mask in 1u32..(1 << n) {
            let v: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            out[v.len() - 1].push(SimplexCell {
                vertices: v,
                coset: c.clone(),
            });
        }
    }
    for cells in out.iter_mut() {
        cells.sort();
    }
    out
}

/// Cellular chains on `Δ̄_n` with
/// `∂⟨i_1, …, i_l⟩ = Σ_k (−1)^{k+1} ⟨…, î_k, …⟩`.
pub fn simplex_complex(n: usize) -> (ChainComplex, Vec<Vec<SimplexCell>>) {
    let cells = simplex_cells(n);
    let index: BTreeMap<&SimplexCell, usize> = cells
        .iter()
        .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)))
        .collect();
    let mut boundary = Vec::new();
    for (d, cs) in cells.iter().enumerate() {
        let mut rows = Vec::new();
        for c in cs {
            let mut b = SVec::new();
            if d > 0 {
                for k in 0..c.vertices.len() {
                    let mut v = c.vertices.clone();
                    v.remove(k);
                    let face = SimplexCell {
                        vertices: v,
                        coset: c.coset.clone(),
                    };
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    svec_add(&mut b, index[&face], &q(sign));
                }
            }
            rows.push(b);
        }
        boundary.push(rows);
    }
    let basis = cells
        .iter()
        .map(|cs| cs.iter().map(|c| c.label()).collect())
        .collect();
    (ChainComplex::new(basis, boundary), cells)
}

/// The face poset of `Δ̄_n` as a cell lattice with the labels of
/// [`simplex_complex`].
pub fn simplex_lattice(n: usize) -> CellLattice {
    let cells: Vec<SimplexCell> = simplex_cells(n).into_iter().flatten().collect();
    let index: BTreeMap<&SimplexCell, usize> =
        cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut facets = BTreeSet::new();
    for (i, c) in cells.iter().enumerate() {
        if c.vertices.len() > 1 {
            for k in 0..c.vertices.len() {
                let mut v = c.vertices.clone();
                v.remove(k);
                facets.insert((
                    index[&SimplexCell {
                        vertices: v,
                        coset: c.coset.clone(),
                    }],
                    i,
                ));
            }
        }
    }
    CellLattice {
        labels: cells.iter().map(|c| c.label()).collect(),
        dims: cells.iter().map(|c| c.vertices.len() - 1).collect(),
        facets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_boundary_n2() {
        let (c, cells) = simplex_complex(2);
        assert_eq!(c.dims(), vec![2, 1]);
        let top = &cells[1][0];
        assert_eq!(top.vertices, vec![1, 2]);
        let b = &c.boundary[1][0];
        let one = c.index_of(0, "<1>x[12]").unwrap();
        let two = c.index_of(0, "<2>x[12]").unwrap();
        assert_eq!(b[&two], q(1));
        assert_eq!(b[&one], q(-1));
    }

    #[test]
    fn simplex_n3() {
        let (c, _) = simplex_complex(3);
        assert_eq!(c.dims(), vec![6, 6, 2]);
        assert!(c.check_d_squared().is_ok());
        assert_eq!(c.homology_dims(), vec![2, 0, 0]);
        assert!(incidence_check(&c, &simplex_lattice(3)).passed());
    }

    #[test]
    fn action_commutes_with_boundary() {
        for n in 1..=4 {
            let (c, cells) = simplex_complex(n);
            let index: BTreeMap<&SimplexCell, usize> = cells
                .iter()
                .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)))
                .collect();
            for rho in Permutation::all(n) {
                let act = |d: usize, x: &SVec| {
                    let mut out = SVec::new();
                    for (i, coef) in x {
                        let (s, y) = cells[d][*i].act(&rho);
                        svec_add(&mut out, index[&y], &(coef * q(s as i64)));
                    }
                    out
                };
                for d in 1..n {
                    for i in 0..c.dim(d) {
                        let unit = SVec::from([(i, q(1))]);
                        assert_eq!(c.apply(d, &act(d, &unit)), act(d - 1, &c.boundary[d][i]));
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_chain_map() {
        let (c, _) = simplex_complex(3);
        let id = ChainMap::identity(&c);
        assert!(verify_chain_map(&c, &c, &id).is_ok());
        assert!(id.is_signed_bijection(&c));
    }

    #[test]
    fn zero_complex() {
        let c = ChainComplex::new(vec![vec![], vec![]], vec![vec![], vec![]]);
        assert_eq!(c.homology_dims(), vec![0, 0]);
    }

    #[test]
    fn duplicated_coefficient_rejected() {
        let (mut c, _) = simplex_complex(2);
        for v in c.boundary[1][0].values_mut() {
            *v *= q(2);
        }
        assert!(!incidence_check(&c, &simplex_lattice(2)).passed());
    }
}

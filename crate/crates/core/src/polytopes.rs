//! Exact convex realizations of the associahedron `K_n`, the cyclohedron
//! `W_n` and the simplex `Δ_n`, with face lattices computed from the
//! H-representation.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bracketings::{
    cyclic_compatible, cyclic_intervals, fmt_set, interval_set_to_bracketing, poset_i, poset_ic,
    proper_intervals, CyclicBracketing, CyclicInterval, Interval, IntervalSet,
};
use crate::error::{Error, Result};
use crate::linalg::{dense_rank, fmt_q, q, solve_unique, Q};
use crate::poset::{IsoReport, Poset};

/// The three built-in families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Associahedron,
    Cyclohedron,
    Simplex,
}

/// The geometric meaning of an inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FacetLabel {
    Interval(Interval),
    Cyclic(CyclicInterval),
    /// `t_i ≥ 0` in the simplex.
    Coordinate(usize),
}

impl FacetLabel {
    pub fn tag(&self) -> String {
        match self {
            FacetLabel::Interval(i) => i.to_string(),
            FacetLabel::Cyclic(c) => c.to_string(),
            FacetLabel::Coordinate(i) => format!("t_{i}"),
        }
    }
}

/// `Σ_k coeffs[k]·t_k ≥ level`.
#[derive(Clone, Debug)]
pub struct Halfspace {
    pub label: FacetLabel,
    pub coeffs: Vec<Q>,
    pub level: Q,
}

#[derive(Clone, Debug)]
pub struct HRepPolytope {
    pub family: Family,
    pub n: usize,
    pub ambient: usize,
    pub eq_coeffs: Vec<Q>,
    pub eq_level: Q,
    pub halfspaces: Vec<Halfspace>,
}

/// A level function on sets of gaps.
pub type LevelFn<'a> = &'a dyn Fn(&[usize]) -> Q;

/// `c(I) = 3^{#I}`.
pub fn default_c(gaps: &[usize]) -> Q {
    power_c(3)(gaps)
}

/// `c(I) = base^{#I}`.
pub fn power_c(base: i64) -> impl Fn(&[usize]) -> Q {
    move |gaps: &[usize]| q(base.pow(gaps.len() as u32))
}

fn indicator(ambient: usize, gaps: &[usize]) -> Vec<Q> {
    let mut v = vec![Q::zero(); ambient];
    for &g in gaps {
        v[g - 1] = Q::one();
    }
    v
}

/// `c(I) + c(J) < c(I ∪ J)` whenever `I ∪ J` is an interval properly
/// containing both. Returns the first violating pair.
pub fn admissible_linear(n: usize, c: LevelFn) -> std::result::Result<(), (Interval, Interval)> {
    let ivs = proper_intervals(n);
    for a in &ivs {
        for b in &ivs {
            let lo = a.i.min(b.i);
            let hi = a.j.max(b.j);
            let union_is_interval = a.j + 1 >= b.i && b.j + 1 >= a.i;
            if !union_is_interval || hi - lo + 1 == a.len() || hi - lo + 1 == b.len() {
                continue;
            }
            let u: Vec<usize> = (lo..=hi).collect();
            if c(&a.gaps()) + c(&b.gaps()) >= c(&u) {
                return Err((*a, *b));
            }
        }
    }
    Ok(())
}

/// Cyclic admissibility: the same inequality whenever `I, J` are not
/// cyclically compatible, with `I ∪ J` a cyclic arc or all of `[1, n]`.
pub fn admissible_cyclic(
    n: usize,
    c: LevelFn,
) -> std::result::Result<(), (CyclicInterval, CyclicInterval)> {
    let ivs = cyclic_intervals(n);
    for a in &ivs {
        for b in &ivs {
            if cyclic_compatible(n, a, b) {
                continue;
            }
            let u = a.mask(n) | b.mask(n);
            let gaps: Vec<usize> = (1..=n).filter(|g| u >> (g - 1) & 1 == 1).collect();
            if c(&a.gaps(n)) + c(&b.gaps(n)) >= c(&gaps) {
                return Err((*a, *b));
            }
        }
    }
    Ok(())
}

/// `K_n ⊂ ℝ^{n−1}`: `Σ_{k∈I} t_k ≥ c(I)` for `I ∈ P(n)` and
/// `Σ t_k = c([1, n−1])`.
pub fn build_k_with(n: usize, c: LevelFn) -> Result<HRepPolytope> {
    if n < 2 {
        return Err(Error::Unsupported(format!("K_{n}")));
    }
    if let Err((a, b)) = admissible_linear(n, c) {
        return Err(Error::Inadmissible(format!("{a} and {b}")));
    }
    let ambient = n - 1;
    let full: Vec<usize> = (1..n).collect();
    let halfspaces = proper_intervals(n)
        .into_iter()
        .map(|iv| Halfspace {
            label: FacetLabel::Interval(iv),
            coeffs: indicator(ambient, &iv.gaps()),
            level: c(&iv.gaps()),
        })
        .collect();
    Ok(HRepPolytope {
        family: Family::Associahedron,
        n,
        ambient,
        eq_coeffs: indicator(ambient, &full),
        eq_level: c(&full),
        halfspaces,
    })
}

/// `W_n ⊂ ℝ^n`: `Σ_{k∈I} t_k ≥ c(I)` for `I ∈ PC(n)` and
/// `Σ t_k = c([1, n])`.
pub fn build_w_with(n: usize, c: LevelFn) -> Result<HRepPolytope> {
    if n < 1 {
        return Err(Error::Unsupported("W_0".into()));
    }
    if let Err((a, b)) = admissible_cyclic(n, c) {
        return Err(Error::Inadmissible(format!("{a} and {b}")));
    }
    let full: Vec<usize> = (1..=n).collect();
    let halfspaces = cyclic_intervals(n)
        .into_iter()
        .map(|iv| Halfspace {
            label: FacetLabel::Cyclic(iv),
            coeffs: indicator(n, &iv.gaps(n)),
            level: c(&iv.gaps(n)),
        })
        .collect();
    Ok(HRepPolytope {
        family: Family::Cyclohedron,
        n,
        ambient: n,
        eq_coeffs: indicator(n, &full),
        eq_level: c(&full),
        halfspaces,
    })
}

pub fn build_k(n: usize) -> Result<HRepPolytope> {
    build_k_with(n, &default_c)
}

pub fn build_w(n: usize) -> Result<HRepPolytope> {
    build_w_with(n, &default_c)
}

/// The standard simplex `t_i ≥ 0`, `Σ t_i = 1` in `ℝ^n`.
pub fn build_simplex(n: usize) -> Result<HRepPolytope> {
    if n < 1 {
        return Err(Error::Unsupported("Δ_0".into()));
    }
    let halfspaces = (1..=n)
        .map(|i| Halfspace {
            label: FacetLabel::Coordinate(i),
            coeffs: indicator(n, &[i]),
            level: Q::zero(),
        })
        .collect();
    Ok(HRepPolytope {
        family: Family::Simplex,
        n,
        ambient: n,
        eq_coeffs: vec![Q::one(); n],
        eq_level: Q::one(),
        halfspaces,
    })
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl HRepPolytope {
    pub fn contains(&self, x: &[Q]) -> bool {
        dot(&self.eq_coeffs, x) == self.eq_level
            && self.halfspaces.iter().all(|h| dot(&h.coeffs, x) >= h.level)
    }

    /// Indices of the inequalities tight at `x`.
    pub fn tight(&self, x: &[Q]) -> BTreeSet<usize> {
        (0..self.halfspaces.len())
            .filter(|&i| dot(&self.halfspaces[i].coeffs, x) == self.halfspaces[i].level)
            .collect()
    }

    /// All vertices, found by solving every square system made of the
    /// equality and `ambient − 1` inequalities.
    pub fn vertices(&self) -> Vec<Vec<Q>> {
        let mut out = BTreeSet::new();
        for combo in (0..self.halfspaces.len()).combinations(self.ambient - 1) {
            let mut a = vec![self.eq_coeffs.clone()];
            let mut b = vec![self.eq_level.clone()];
            for &i in &combo {
                a.push(self.halfspaces[i].coeffs.clone());
                b.push(self.halfspaces[i].level.clone());
            }
            if let Some(x) = solve_unique(&a, &b) {
                if self.contains(&x) {
                    out.insert(x);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Polytope dimension: ambient dimension minus the equality.
    pub fn dim(&self) -> usize {
        self.ambient - 1
    }

    /// The H-representation in text form, one hyperplane per line.
    pub fn to_text(&self) -> String {
        let fmt_vec = |v: &[Q]| v.iter().map(fmt_q).collect::<Vec<_>>().join(" ");
        let mut lines = vec![format!(
            "= full : {} = {}",
            fmt_q(&self.eq_level),
            fmt_vec(&self.eq_coeffs)
        )];
        let mut hs: Vec<&Halfspace> = self.halfspaces.iter().collect();
        hs.sort_by_key(|a| a.label);
        for h in hs {
            lines.push(format!(
                "{} : {} <= {}",
                h.label.tag(),
                fmt_q(&h.level),
                fmt_vec(&h.coeffs)
            ));
        }
        lines.join("\n") + "\n"
    }
}

/// A nonempty face, identified by its active inequalities.
#[derive(Clone, Debug)]
pub struct GeometricFace {
    pub active: BTreeSet<usize>,
    pub dim: usize,
    /// Indices into [`FaceLattice::vertices`].
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub polytope: HRepPolytope,
    pub vertices: Vec<Vec<Q>>,
    pub faces: Vec<GeometricFace>,
}

fn affine_rank(points: &[&Vec<Q>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    dense_rank(&diffs)
}

/// Enumerates all nonempty faces as intersections of vertex tight sets.
pub fn enumerate_faces(p: &HRepPolytope) -> FaceLattice {
    let vertices = p.vertices();
    let tights: Vec<BTreeSet<usize>> = vertices.iter().map(|v| p.tight(v)).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = tights.iter().cloned().collect();
    let mut frontier: Vec<BTreeSet<usize>> = seen.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for t in &tights {
            let x: BTreeSet<usize> = s.intersection(t).copied().collect();
            if seen.insert(x.clone()) {
                frontier.push(x);
            }
        }
    }
    let mut faces: Vec<GeometricFace> = seen
        .into_iter()
        .map(|active| {
            let vs: Vec<usize> = (0..vertices.len())
                .filter(|&i| active.is_subset(&tights[i]))
                .collect();
            let pts: Vec<&Vec<Q>> = vs.iter().map(|&i| &vertices[i]).collect();
            GeometricFace {
                dim: affine_rank(&pts),
                active,
                vertices: vs,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.active).cmp(&(b.dim, &b.active)));
    FaceLattice {
        polytope: p.clone(),
        vertices,
        faces,
    }
}

#[derive(Serialize)]
struct FaceJson {
    id: usize,
    dim: usize,
    active: Vec<String>,
    label: String,
    vertices: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct LatticeJson {
    faces: Vec<FaceJson>,
    covers: Vec<[usize; 2]>,
}

impl FaceLattice {
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.polytope.dim() + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// `Σ (−1)^i f_i` over nonempty faces, including the polytope itself.
    pub fn euler(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Faces ordered by inclusion: `a ≤ b` iff `active(b) ⊆ active(a)`.
    pub fn poset(&self) -> Poset {
        let labels = (0..self.faces.len()).map(|i| self.label(i)).collect();
        Poset::from_relation(labels, |a, b| {
            self.faces[b].active.is_subset(&self.faces[a].active)
        })
    }

    pub fn active_labels(&self, face: usize) -> Vec<FacetLabel> {
        self.faces[face]
            .active
            .iter()
            .map(|&i| self.polytope.halfspaces[i].label)
            .collect()
    }

    /// Bracketing-style label: a bracketing for `K_n`, a cyclic bracketing
    /// for `W_n`, and the spanning vertices `⟨…⟩` for `Δ_n`.
    pub fn label(&self, face: usize) -> String {
        let n = self.polytope.n;
        let labels = self.active_labels(face);
        match self.polytope.family {
            Family::Associahedron => {
                let iota: IntervalSet<Interval> = labels
                    .iter()
                    .filter_map(|l| {
                        if let FacetLabel::Interval(i) = l {
                            Some(*i)
                        } else {
                            None
                        }
                    })
                    .collect();
                interval_set_to_bracketing(n, &iota).to_string()
            }
            Family::Cyclohedron => {
                let iota: IntervalSet<CyclicInterval> = labels
                    .iter()
                    .filter_map(|l| {
                        if let FacetLabel::Cyclic(i) = l {
                            Some(*i)
                        } else {
                            None
                        }
                    })
                    .collect();
                CyclicBracketing::from_intervals((1..=n).collect(), &iota)
                    .map(|b| b.to_string())
                    .unwrap_or_default()
            }
            Family::Simplex => {
                let zero: BTreeSet<usize> = labels
                    .iter()
                    .filter_map(|l| {
                        if let FacetLabel::Coordinate(i) = l {
                            Some(*i)
                        } else {
                            None
                        }
                    })
                    .collect();
                let span: Vec<String> = (1..=n)
                    .filter(|i| !zero.contains(i))
                    .map(|i| i.to_string())
                    .collect();
                format!("<{}>", span.join(","))
            }
        }
    }

    /// Covering pairs `(lower, upper)`, computed from dimensions.
    pub fn covers(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for (a, fa) in self.faces.iter().enumerate() {
            for (b, fb) in self.faces.iter().enumerate() {
                if fb.dim == fa.dim + 1 && fb.active.is_subset(&fa.active) {
                    out.push([a, b]);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let faces = self
            .faces
            .iter()
            .enumerate()
            .map(|(id, f)| {
                let mut active: Vec<String> =
                    self.active_labels(id).iter().map(|l| l.tag()).collect();
                active.sort();
                FaceJson {
                    id,
                    dim: f.dim,
                    active,
                    label: self.label(id),
                    vertices: f
                        .vertices
                        .iter()
                        .map(|&v| self.vertices[v].iter().map(fmt_q).collect())
                        .collect(),
                }
            })
            .collect();
        serde_json::to_value(LatticeJson {
            faces,
            covers: self.covers(),
        })
        .expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let f: Vec<String> = self.f_vector().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("f-vector: {}\n", f.join(",")));
        for (id, face) in self.faces.iter().enumerate() {
            let mut active: Vec<String> = self.active_labels(id).iter().map(|l| l.tag()).collect();
            active.sort();
            out.push_str(&format!(
                "{id}\tdim {}\t{}\t{{{}}}\n",
                face.dim,
                self.label(id),
                active.join(",")
            ));
        }
        out
    }
}

/// Result of matching a geometric face lattice with its combinatorial
/// model.
#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub iso: IsoReport,
    /// First face whose dimension differs from the predicted one.
    pub dim_mismatch: Option<String>,
}

impl MatchReport {
    pub fn passed(&self) -> bool {
        self.iso.passed() && self.dim_mismatch.is_none()
    }
}

/// Matches the face lattice with `I(n)`, `IC(n)`, or nonempty subsets of
/// `{1, …, n}`, and checks the face dimension formulas.
pub fn match_lattice(lat: &FaceLattice) -> MatchReport {
    let n = lat.polytope.n;
    let geo = lat.poset();
    let mut dim_mismatch = None;
    let iso = match lat.polytope.family {
        Family::Associahedron => {
            let (els, p) = poset_i(n);
            let index: BTreeMap<&IntervalSet<Interval>, usize> =
                els.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut map = Vec::new();
            for (id, face) in lat.faces.iter().enumerate() {
                let iota: IntervalSet<Interval> = lat
                    .active_labels(id)
                    .iter()
                    .filter_map(|l| {
                        if let FacetLabel::Interval(i) = l {
                            Some(*i)
                        } else {
                            None
                        }
                    })
                    .collect();
                if face.dim + iota.len() + 2 != n && dim_mismatch.is_none() {
                    dim_mismatch = Some(fmt_set(&iota));
                }
                match index.get(&iota) {
                    Some(&k) => map.push(k),
                    None => {
                        return MatchReport {
                            iso: IsoReport::NotBijective {
                                element: fmt_set(&iota),
                            },
                            dim_mismatch,
                        }
                    }
                }
            }
            geo.check_isomorphism(&p, &map)
        }
        Family::Cyclohedron => {
            let (els, p) = poset_ic(n);
            let index: BTreeMap<&IntervalSet<CyclicInterval>, usize> =
                els.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut map = Vec::new();
            for (id, face) in lat.faces.iter().enumerate() {
                let iota: IntervalSet<CyclicInterval> = lat
                    .active_labels(id)
                    .iter()
                    .filter_map(|l| {
                        if let FacetLabel::Cyclic(i) = l {
                            Some(*i)
                        } else {
                            None
                        }
                    })
                    .collect();
                if face.dim + iota.len() + 1 != n && dim_mismatch.is_none() {
                    dim_mismatch = Some(fmt_set(&iota));
                }
                match index.get(&iota) {
                    Some(&k) => map.push(k),
                    None => {
                        return MatchReport {
                            iso: IsoReport::NotBijective {
                                element: fmt_set(&iota),
                            },
                            dim_mismatch,
                        }
                    }
                }
            }
            geo.check_isomorphism(&p, &map)
        }
        Family::Simplex => {
            let subsets: Vec<Vec<usize>> = (1u32..(1 << n))
                .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
                .collect();
            let labels = subsets.iter().map(|s| format!("{s:?}")).collect();
            let p = Poset::from_relation(labels, |a, b| {
                subsets[a].iter().all(|x| subsets[b].contains(x))
            });
            let mut map = Vec::new();
            for (id, face) in lat.faces.iter().enumerate() {
                let span: Vec<usize> = face
                    .vertices
                    .iter()
                    .map(|&v| lat.vertices[v].iter().position(|x| x.is_one()).unwrap() + 1)
                    .collect();
                let mut span = span;
                span.sort();
                if face.dim + 1 != span.len() && dim_mismatch.is_none() {
                    dim_mismatch = Some(lat.label(id));
                }
                map.push(
                    subsets
                        .iter()
                        .position(|s| *s == span)
                        .expect("nonempty subset"),
                );
            }
            geo.check_isomorphism(&p, &map)
        }
    };
    MatchReport { iso, dim_mismatch }
}

/// Contracts the letters `1..k` of a cyclic interval of `[1, n]` to a
/// single letter, giving a cyclic interval of `[1, n − k + 1]`.
fn contract(n: usize, k: usize, iv: &CyclicInterval) -> Option<CyclicInterval> {
    let m = n - k + 1;
    let mask = iv.mask(n) >> (k - 1);
    CyclicInterval::from_mask(m, mask)
}

/// Checks that the faces of `W_n` below the facet `b_{k,n}` (letters
/// `1…k` bracketed) form the product `IC(n−k+1) × I(k)`.
pub fn facet_product_check(n: usize, k: usize) -> Result<IsoReport> {
    if k < 2 || k > n {
        return Err(Error::Unsupported(format!("facet b_{{{k},{n}}}")));
    }
    let facet = CyclicInterval::normal(n, 1, k - 1)?;
    let (els, p) = poset_ic(n);
    let below: Vec<usize> = (0..els.len())
        .filter(|&i| els[i].contains(&facet))
        .collect();
    let down = p.restrict(&below);
    let (outer, po) = poset_ic(n - k + 1);
    let (inner, pi) = poset_i(k);
    let prod = po.product(&pi);
    let inner_mask = facet.mask(n);
    let mut map = Vec::new();
    for &b in &below {
        let iota = &els[b];
        let mut o = IntervalSet::new();
        let mut i = IntervalSet::new();
        for iv in iota {
            if *iv == facet {
                continue;
            }
            let m = iv.mask(n);
            if m & inner_mask == m {
                i.insert(Interval::new(
                    k,
                    iv.gaps(n)[0],
                    *iv.gaps(n).last().unwrap(),
                )?);
            } else {
                match contract(n, k, iv) {
                    Some(c) => {
                        o.insert(c);
                    }
                    None => {
                        return Ok(IsoReport::NotBijective {
                            element: fmt_set(iota),
                        })
                    }
                }
            }
        }
        let oi = outer.iter().position(|x| *x == o);
        let ii = inner.iter().position(|x| *x == i);
        match (oi, ii) {
            (Some(a), Some(c)) => map.push(a * inner.len() + c),
            _ => {
                return Ok(IsoReport::NotBijective {
                    element: fmt_set(iota),
                })
            }
        }
    }
    Ok(down.check_isomorphism(&prod, &map))
}

/// Number of vertices of each facet of `W_n`, keyed by the facet label.
pub fn facet_census(lat: &FaceLattice) -> BTreeMap<String, usize> {
    let d = lat.polytope.dim();
    lat.faces
        .iter()
        .enumerate()
        .filter(|(_, f)| d > 0 && f.dim == d - 1)
        .map(|(id, f)| (lat.label(id), f.vertices.len()))
        .collect()
}

/// The points `P_t`: barycenters of the facets of `W_n` bracketing the
/// whole word read from `t`, that is, all gaps except `t − 1`.
pub fn inscribed_simplex(n: usize) -> Result<Vec<Vec<Q>>> {
    let w = build_w(n)?;
    let lat = enumerate_faces(&w);
    if n == 1 {
        return Ok(lat.vertices.clone());
    }
    let mut out = Vec::new();
    for t in 1..=n {
        let missing = if t == 1 { n } else { t - 1 };
        let mask = ((1u64 << n) - 1) & !(1u64 << (missing - 1));
        let iv = CyclicInterval::from_mask(n, mask)
            .ok_or_else(|| Error::InvalidInterval(format!("P_{t}")))?;
        let h = w
            .halfspaces
            .iter()
            .position(|h| h.label == FacetLabel::Cyclic(iv))
            .expect("hyperplane exists");
        let face = lat
            .faces
            .iter()
            .find(|f| f.active.len() == 1 && f.active.contains(&h))
            .ok_or_else(|| Error::InvalidInterval(format!("facet {iv}")))?;
        let mut bary = vec![Q::zero(); n];
        for &v in &face.vertices {
            for (b, x) in bary.iter_mut().zip(&lat.vertices[v]) {
                *b += x;
            }
        }
        let k = q(face.vertices.len() as i64);
        out.push(bary.into_iter().map(|x| x / &k).collect());
    }
    Ok(out)
}

/// Affine rank of a point set.
pub fn affine_rank_of(points: &[Vec<Q>]) -> usize {
    let refs: Vec<&Vec<Q>> = points.iter().collect();
    affine_rank(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_segment() {
        let k = build_k(3).unwrap();
        assert_eq!(k.vertices(), vec![vec![q(3), q(6)], vec![q(6), q(3)]]);
    }

    #[test]
    fn small_f_vectors() {
        assert_eq!(
            enumerate_faces(&build_k(4).unwrap()).f_vector(),
            vec![5, 5, 1]
        );
        assert_eq!(
            enumerate_faces(&build_w(3).unwrap()).f_vector(),
            vec![6, 6, 1]
        );
        assert_eq!(enumerate_faces(&build_w(2).unwrap()).f_vector(), vec![2, 1]);
        assert_eq!(
            enumerate_faces(&build_simplex(3).unwrap()).f_vector(),
            vec![3, 3, 1]
        );
        assert_eq!(enumerate_faces(&build_w(1).unwrap()).f_vector(), vec![1]);
    }

    #[test]
    fn w4_census() {
        let lat = enumerate_faces(&build_w(4).unwrap());
        assert_eq!(lat.f_vector()[0], 20);
        let census = facet_census(&lat);
        assert_eq!(census.len(), 12);
        for size in [4, 5, 6] {
            assert_eq!(census.values().filter(|&&v| v == size).count(), 4);
        }
    }

    #[test]
    fn lattices_match() {
        for n in 2..=4 {
            assert!(match_lattice(&enumerate_faces(&build_k(n).unwrap())).passed());
        }
        for n in 1..=3 {
            assert!(match_lattice(&enumerate_faces(&build_w(n).unwrap())).passed());
            assert!(match_lattice(&enumerate_faces(&build_simplex(n).unwrap())).passed());
        }
    }

    #[test]
    fn inadmissible_levels_rejected() {
        assert!(matches!(
            build_w_with(3, &power_c(2)),
            Err(Error::Inadmissible(_))
        ));
        assert!(build_w_with(3, &power_c(4)).is_ok());
    }

    #[test]
    fn products() {
        for k in 2..=4 {
            assert!(facet_product_check(4, k).unwrap().passed(), "k={k}");
        }
    }

    #[test]
    fn simplex_inside() {
        let pts = inscribed_simplex(4).unwrap();
        assert_eq!(affine_rank_of(&pts), 3);
        let w2 = enumerate_faces(&build_w(2).unwrap());
        let mut p2 = inscribed_simplex(2).unwrap();
        p2.sort();
        assert_eq!(p2, w2.vertices);
    }

    #[test]
    fn hrep_text() {
        let t = build_w(2).unwrap().to_text();
        assert_eq!(t, "= full : 9 = 1 1\n[1,1] : 3 <= 1 0\n[2,2] : 3 <= 0 1\n");
    }
}

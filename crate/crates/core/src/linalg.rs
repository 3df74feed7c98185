//! Exact sparse linear algebra over ℚ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` (or `p` when integral) rendering.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sparse vector indexed by basis position.
pub type SVec = BTreeMap<usize, Q>;

pub fn svec_add(target: &mut SVec, idx: usize, c: &Q) {
    if c.is_zero() {
        return;
    }
    let e = target.entry(idx).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        target.remove(&idx);
    }
}

pub fn svec_axpy(target: &mut SVec, a: &Q, x: &SVec) {
    for (i, c) in x {
        svec_add(target, *i, &(a * c));
    }
}

pub fn svec_scale(x: &SVec, a: &Q) -> SVec {
    if a.is_zero() {
        return SVec::new();
    }
    x.iter().map(|(i, c)| (*i, c * a)).collect()
}

/// Incrementally maintained row echelon form. Each stored row has a pivot
/// (its first nonzero column) normalized to one, and no other row has a
/// nonzero entry in that pivot column's leading position order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut v = v.clone();
        loop {
            let next = v
                .iter()
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            match next {
                Some((i, c)) => {
                    let row = &self.rows[&i];
                    svec_axpy(&mut v, &(-c), row);
                }
                None => return v,
            }
        }
    }

    /// Adds `v`; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        match r.iter().next() {
            None => false,
            Some((&p, c)) => {
                let inv = c.recip();
                self.rows.insert(p, svec_scale(&r, &inv));
                true
            }
        }
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SVec> {
        self.rows.values()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: &[SVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of the null space `{x : Σ_j x_j rows[j] = 0}` of the linear map
/// sending the `j`-th standard vector to `rows[j]`.
pub fn kernel(images: &[SVec]) -> Vec<SVec> {
    // Track combinations: reduce each image, remembering which inputs built it.
    let mut pivots: BTreeMap<usize, (SVec, SVec)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut comb = SVec::new();
        comb.insert(j, q(1));
        loop {
            let next = v
                .iter()
                .find(|(i, _)| pivots.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            match next {
                Some((i, c)) => {
                    let (row, rc) = &pivots[&i];
                    svec_axpy(&mut v, &(-c.clone()), row);
                    svec_axpy(&mut comb, &(-c), rc);
                }
                None => break,
            }
        }
        match v.iter().next() {
            None => out.push(comb),
            Some((&p, c)) => {
                let inv = c.recip();
                pivots.insert(p, (svec_scale(&v, &inv), svec_scale(&comb, &inv)));
            }
        }
    }
    out
}

/// Solves the dense system `A x = b` exactly; returns `None` when the
/// solution is not unique or does not exist.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    if rows == 0 {
        return None;
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][c].is_zero()) else {
            return None;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][c].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pr = m[pivot_row].clone();
                for (x, y) in m[r].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(c);
        pivot_row += 1;
    }
    for r in pivot_row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
}

/// Exact rank of a dense matrix.
pub fn dense_rank(rows: &[Vec<Q>]) -> usize {
    let sparse: Vec<SVec> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect()
        })
        .collect();
    rank(&sparse)
}

pub fn is_unit(x: &Q) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[(usize, i64)]) -> SVec {
        v.iter().map(|&(i, c)| (i, q(c))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![
            sv(&[(0, 1), (1, 1)]),
            sv(&[(1, 1), (2, 1)]),
            sv(&[(0, 1), (2, -1)]),
        ];
        assert_eq!(rank(&rows), 2);
        let k = kernel(&rows);
        assert_eq!(k.len(), 1);
        let mut total = SVec::new();
        for (j, c) in &k[0] {
            svec_axpy(&mut total, c, &rows[*j]);
        }
        assert!(total.is_empty());
    }

    #[test]
    fn unique_solution() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(0)]];
        let x = solve_unique(&a, &[q(9), q(3)]).unwrap();
        assert_eq!(x, vec![q(3), q(6)]);
        let singular = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_unique(&singular, &[q(1), q(2)]).is_none());
    }

    #[test]
    fn fraction_format() {
        assert_eq!(fmt_q(&qf(6, 4)), "3/2");
        assert_eq!(fmt_q(&qf(-4, 2)), "-2");
    }
}

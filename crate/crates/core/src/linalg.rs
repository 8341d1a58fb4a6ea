//! Sparse exact linear algebra over `Q(s)` and filtered cohomology of
//! two-periodic complexes.

use std::collections::{BTreeMap, HashMap};

use crate::scalars::RatFunc;

pub type SparseVec = BTreeMap<usize, RatFunc>;

/// `v += c·w`, dropping cancelled entries.
pub fn axpy(v: &mut SparseVec, c: &RatFunc, w: &SparseVec) {
    for (k, x) in w {
        let term = c.mul(x);
        match v.get_mut(k) {
            Some(y) => {
                let s = y.add(&term);
                if s.is_zero() {
                    v.remove(k);
                } else {
                    *y = s;
                }
            }
            None => {
                if !term.is_zero() {
                    v.insert(*k, term);
                }
            }
        }
    }
}

fn scale_in_place(v: &mut SparseVec, c: &RatFunc) {
    for x in v.values_mut() {
        *x = x.mul(c);
    }
}

struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Row echelon basis of a growing set of vectors.  Each stored row has its
/// least index as pivot with coefficient one.
#[derive(Default)]
pub struct Echelon {
    rows: HashMap<usize, Row>,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records, for each stored row, which inserted vectors it combines.
    pub fn tracking() -> Self {
        Echelon {
            rows: HashMap::new(),
            track: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut SparseVec, combo: &mut SparseVec) {
        let mut cursor = 0usize;
        loop {
            let Some((&c, coef)) = v.range(cursor..).next() else {
                break;
            };
            match self.rows.get(&c) {
                Some(row) => {
                    let neg = coef.neg();
                    axpy(v, &neg, &row.vec);
                    if self.track {
                        axpy(combo, &neg, &row.combo);
                    }
                }
                None => cursor = c + 1,
            }
        }
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        self.reduce(&mut v, &mut combo);
        v.is_empty()
    }

    /// Inserts `v`, returning whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new()).is_none()
    }

    /// Inserts `v` whose provenance is `combo`.  When `v` is dependent the
    /// returned combination is a relation among inserted vectors.
    fn insert_tagged(&mut self, mut v: SparseVec, mut combo: SparseVec) -> Option<SparseVec> {
        self.reduce(&mut v, &mut combo);
        let Some((&pivot, lead)) = v.iter().next() else {
            return Some(combo);
        };
        let inv = lead.inv().expect("nonzero pivot");
        scale_in_place(&mut v, &inv);
        if self.track {
            scale_in_place(&mut combo, &inv);
        }
        self.rows.insert(pivot, Row { vec: v, combo });
        None
    }
}

/// Kernel of the matrix whose `j`-th column is `columns[order[k]]`.
///
/// Columns are processed in the given order; each returned kernel vector is
/// tagged with the column at which it was found and is supported on that
/// column and columns processed before it.
pub fn kernel_in_order(columns: &[SparseVec], order: &[usize]) -> Vec<(usize, SparseVec)> {
    let mut ech = Echelon::tracking();
    let mut out = Vec::new();
    for &j in order {
        let mut combo = SparseVec::new();
        combo.insert(j, RatFunc::one());
        if let Some(rel) = ech.insert_tagged(columns[j].clone(), combo) {
            out.push((j, rel));
        }
    }
    out
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Two-periodic complex with a degree attached to every basis element.
///
/// `diff[p][j]` is the image of the `j`-th basis element of parity `p`,
/// written in the basis of parity `1 - p`.
#[derive(Clone, Debug, Default)]
pub struct GradedComplex {
    pub degrees: [Vec<u32>; 2],
    pub diff: [Vec<SparseVec>; 2],
}

#[derive(Clone, Debug, Default)]
pub struct FilteredCohomology {
    /// `dims[p][d]`: classes of parity `p` whose minimal representative has
    /// degree `d`.
    pub dims: [Vec<usize>; 2],
    /// Representatives `(degree, vector)` for each counted class.
    pub representatives: [Vec<(u32, SparseVec)>; 2],
}

impl GradedComplex {
    /// Associated graded dimensions of cohomology for the filtration by
    /// degree, reported for degrees `0..=max_degree`.
    pub fn filtered_cohomology(&self, max_degree: u32) -> FilteredCohomology {
        let mut out = FilteredCohomology::default();
        for p in 0..2 {
            let q = 1 - p;
            let degs = &self.degrees[p];
            let mut order: Vec<usize> = (0..degs.len()).collect();
            order.sort_by(|a, b| degs[*b].cmp(&degs[*a]).then(a.cmp(b)));
            let cycles = kernel_in_order(&self.diff[p], &order);
            let mut span = Echelon::new();
            for b in &self.diff[q] {
                span.insert(b.clone());
            }
            let mut dims = vec![0usize; max_degree as usize + 1];
            let mut reps = Vec::new();
            for (j, z) in cycles {
                let d = degs[j];
                if span.insert(z.clone()) && d <= max_degree {
                    dims[d as usize] += 1;
                    reps.push((d, z));
                }
            }
            out.dims[p] = dims;
            out.representatives[p] = reps;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|(k, c)| (*k, RatFunc::from_int(*c)))
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 1)])];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn kernel_is_supported_on_earlier_columns() {
        // columns: e0, e0, e1
        let cols = vec![v(&[(0, 1)]), v(&[(0, 1)]), v(&[(1, 1)])];
        let ker = kernel_in_order(&cols, &[2, 1, 0]);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].0, 0);
        assert_eq!(ker[0].1, v(&[(0, 1), (1, -1)]));
    }

    #[test]
    fn polynomial_ring_mod_product() {
        // C_even spanned by 1, a, b (degrees 0, 1, 1) with zero differential
        // and b exact from an odd element of degree 2.
        let c = GradedComplex {
            degrees: [vec![0, 1, 1], vec![2]],
            diff: [vec![SparseVec::new(); 3], vec![v(&[(2, 1)])]],
        };
        let h = c.filtered_cohomology(3);
        assert_eq!(h.dims[0], vec![1, 1, 0, 0]);
        assert_eq!(h.dims[1], vec![0, 0, 0, 0]);
    }
}

/// Inverse of a small dense square matrix, or `None` if singular.
pub fn invert_dense(m: &[Vec<RatFunc>]) -> Option<Vec<Vec<RatFunc>>> {
    let n = m.len();
    let mut a: Vec<Vec<RatFunc>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|r| !a[*r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let t = a[col][k].mul(&f);
                    a[r][k] = a[r][k].sub(&t);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `x^e` for any integer `e` (`x` must be nonzero when `e < 0`).
pub fn pow_i(x: &RatFunc, e: i64) -> RatFunc {
    let base = if e < 0 { x.inv().expect("nonzero base") } else { x.clone() };
    (0..e.unsigned_abs()).fold(RatFunc::one(), |acc, _| acc.mul(&base))
}

#[cfg(test)]
mod dense_tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn inverse_of_two_by_two() {
        let m = vec![
            vec![RatFunc::from_int(1), RatFunc::laurent_monomial(BigRational::from_integer(1.into()), 1)],
            vec![RatFunc::laurent_monomial(BigRational::from_integer(1.into()), 1), RatFunc::from_int(1)],
        ];
        let inv = invert_dense(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = RatFunc::zero();
                for k in 0..2 {
                    s = s.add(&m[i][k].mul(&inv[k][j]));
                }
                assert_eq!(s, if i == j { RatFunc::one() } else { RatFunc::zero() });
            }
        }
        assert!(invert_dense(&[vec![RatFunc::zero()]]).is_none());
    }
}

//! Exact integer matrices: Smith normal form and cokernel/kernel invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("cannot parse matrix `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    Shape { rows: usize, cols: usize, expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape { rows, cols, expected: rows * cols, got: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        let entries = rows.iter().flat_map(|row| row.iter().map(|x| x.clone().into())).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Fraction-free (Bareiss) determinant. Panics if not square.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * f;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * f;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.entries[i * self.cols + j]);
            self.entries[i * self.cols + j] = v;
        }
    }

    /// Parses `a b; c d` (rows separated by `;`, entries by whitespace).
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let err = |reason: &str| MatrixError::Parse { text: text.to_string(), reason: reason.into() };
        if text.trim().is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        let rows = text
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(|t| t.parse::<BigInt>().map_err(|_| err("bad integer")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(err("rows must be nonempty and of equal length"));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal with d1 | d2 | ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// U·a·V = S, U and V unimodular, S diagonal with a divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if (self.u.rows, self.v.cols) != (a.rows, a.cols) || self.u.cols != a.rows || self.v.rows != a.cols {
            return false;
        }
        let unimodular = |m: &IntMatrix| m.det().abs().is_one();
        let d = self.diagonal();
        let chain = d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        self.s.is_diagonal()
            && chain
            && d.iter().all(|x| !x.is_negative())
            && unimodular(&self.u)
            && unimodular(&self.v)
            && self.u.mul(a).mul(&self.v) == self.s
    }
}

fn find_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            // strict comparison keeps the lowest row, then lowest column, on ties
            if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form by unimodular row and column operations. The pivot is
/// the smallest nonzero absolute value in the active block, ties broken by
/// lowest row and then lowest column.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = find_pivot(&s, t) else {
                return Snf { u, s, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, s, v }
}

fn serialize_torsion<S: Serializer>(torsion: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(torsion.iter().map(|d| d.to_string()))
}

/// K_0 = Z^free ⊕ torsion, K_1 = Z^k1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KGroups {
    pub k0_free_rank: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub k0_torsion: Vec<BigInt>,
    pub k1_rank: usize,
}

impl KGroups {
    pub fn k0_string(&self) -> String {
        let mut parts = Vec::new();
        if self.k0_free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.k0_free_rank > 1 {
            parts.push(format!("Z^{}", self.k0_free_rank));
        }
        parts.extend(self.k0_torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn k1_string(&self) -> String {
        match self.k1_rank {
            0 => "0".into(),
            1 => "Z".into(),
            k => format!("Z^{k}"),
        }
    }
}

impl fmt::Display for KGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0 = {}, K1 = {}", self.k0_string(), self.k1_string())
    }
}

/// Cokernel and kernel of `a : Z^cols -> Z^rows`.
pub fn coker_ker(a: &IntMatrix) -> KGroups {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = snf.rank();
    KGroups {
        k0_free_rank: a.rows - rank,
        k0_torsion: diag.into_iter().filter(|d| d > &BigInt::one()).collect(),
        k1_rank: a.cols - rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check(a: &IntMatrix, snf: &Snf) {
        assert!(snf.verify(a));
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.s);
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        assert!(snf.s.is_diagonal());
        let d = snf.diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        assert!(d.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn examples() {
        let a = m(&[vec![0, 1], vec![1, 1], vec![1, 1]]);
        let snf = smith_normal_form(&a);
        check(&a, &snf);
        assert_eq!(snf.s, m(&[vec![1, 0], vec![0, 1], vec![0, 0]]));

        let id = IntMatrix::identity(4);
        let snf = smith_normal_form(&id);
        assert_eq!((snf.u.clone(), snf.s.clone(), snf.v.clone()), (id.clone(), id.clone(), id));

        let a = m(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&a);
        check(&a, &snf);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn kgroup_examples() {
        let d = m(&[vec![0, -1], vec![-1, -1], vec![-2, -1]]);
        assert_eq!(coker_ker(&d), KGroups { k0_free_rank: 1, k0_torsion: vec![], k1_rank: 0 });
        let printed = m(&[vec![0, -1], vec![-1, 0], vec![-1, -2]]);
        assert_eq!(coker_ker(&printed), coker_ker(&d));
        let empty = IntMatrix::zeros(3, 0);
        assert_eq!(coker_ker(&empty), KGroups { k0_free_rank: 3, k0_torsion: vec![], k1_rank: 0 });
        let reg = m(&[vec![0, -1, -2], vec![-1, 0, -2], vec![-2, -2, -3]]);
        assert_eq!(reg.det(), BigInt::from(-5));
        let k = coker_ker(&reg);
        assert_eq!(k, KGroups { k0_free_rank: 0, k0_torsion: vec![BigInt::from(5)], k1_rank: 0 });
        assert_eq!(k.to_string(), "K0 = Z/5, K1 = 0");
    }

    #[test]
    fn degenerate_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0), (1, 1)] {
            let a = IntMatrix::zeros(r, c);
            let snf = smith_normal_form(&a);
            check(&a, &snf);
            assert_eq!(coker_ker(&a), KGroups { k0_free_rank: r, k0_torsion: vec![], k1_rank: c });
        }
    }

    #[test]
    fn text_form() {
        let a = IntMatrix::parse("0 -1; -1 0; -1 -2").unwrap();
        assert_eq!((a.rows(), a.cols()), (3, 2));
        assert_eq!(a.to_string(), "0 -1; -1 0; -1 -2");
        assert_eq!(IntMatrix::parse(&a.to_string()).unwrap(), a);
        assert!(IntMatrix::parse("1 2; 3").is_err());
        assert!(IntMatrix::parse("1 x").is_err());
        assert_eq!(IntMatrix::parse("").unwrap().rows(), 0);
    }

    #[test]
    fn deterministic_transforms() {
        let a = m(&[vec![3, 5, 7], vec![2, 4, 6], vec![1, 1, 9]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    // Oracle: d_k = gcd of k-minors / gcd of (k-1)-minors.
    fn minors_gcd(a: &IntMatrix, k: usize) -> BigInt {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = combos(n - 1, k);
            for mut c in combos(n - 1, k - 1) {
                c.push(n - 1);
                out.push(c);
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in combos(a.rows(), k) {
            for cs in combos(a.cols(), k) {
                let sub = IntMatrix::from_rows(
                    &rs.iter()
                        .map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                );
                g = g.gcd(&sub.det());
            }
        }
        g
    }

    fn oracle_invariants(a: &IntMatrix) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=a.rows().min(a.cols()) {
            let g = minors_gcd(a, k);
            if g.is_zero() {
                out.push(BigInt::zero());
                prev = BigInt::zero();
                continue;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    impl IntMatrix {
        fn from_rows_big(rows: &[Vec<BigInt>]) -> Self {
            let c = rows.first().map_or(0, Vec::len);
            IntMatrix { rows: rows.len(), cols: c, entries: rows.iter().flatten().cloned().collect() }
        }
    }

    fn arb_small() -> impl Strategy<Value = IntMatrix> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-2i64..=2, r * c)
                .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c)
                .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    fn random_unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut p = IntMatrix::identity(n);
        for &(a, b, f) in ops {
            let (a, b) = (a % n, b % n);
            if a == b {
                p.swap_rows(0, a);
            } else {
                p.add_row(a, b, &BigInt::from(f));
            }
        }
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]

        #[test]
        fn snf_matches_minor_oracle(a in arb_small()) {
            let snf = smith_normal_form(&a);
            check(&a, &snf);
            prop_assert_eq!(snf.diagonal(), oracle_invariants(&a));
        }

        #[test]
        fn snf_contract(a in arb_matrix()) {
            let snf = smith_normal_form(&a);
            check(&a, &snf);
        }

        #[test]
        fn invariants_under_unimodular_change(
            a in arb_matrix(),
            pops in proptest::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..=10),
            qops in proptest::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..=10),
        ) {
            let p = random_unimodular(a.rows(), &pops);
            let q = random_unimodular(a.cols(), &qops);
            prop_assert!(p.det().abs().is_one() && q.det().abs().is_one());
            prop_assert_eq!(coker_ker(&p.mul(&a).mul(&q)), coker_ker(&a));
        }
    }

    #[test]
    fn big_entries_do_not_overflow() {
        let a = IntMatrix::from_rows_big(&[
            vec![BigInt::from(i64::MAX), BigInt::from(3)],
            vec![BigInt::from(i64::MAX) * 2, BigInt::from(5)],
        ]);
        let snf = smith_normal_form(&a);
        check(&a, &snf);
    }
}

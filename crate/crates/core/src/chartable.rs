//! Irreducible character tables.
//!
//! [`character_table`] runs Dixon–Burnside: simultaneous eigenvectors of the
//! class-multiplication matrices over F_p give the central characters mod p,
//! which are normalised by the degree formula and then lifted exactly to
//! Q(zeta_e), e the group exponent, through eigenvalue multiplicities.
//! [`load_table`] reads a table document and verifies it.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cyclotomic::{CycloElement, CycloError};
use crate::group::{class_mult_coeffs, conjugacy, ClassData, Group, GroupError};
use crate::par::{self, Mode};

/// Random splitting rounds before giving up on a seed.
const MAX_SPLIT_ROUNDS: usize = 64;
/// Fresh seeds tried after a failed round budget.
const MAX_RESEEDS: u64 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharTableError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("eigenspaces did not split into lines mod {prime} after {rounds} rounds ({remaining} subspaces of dimension > 1 left)")]
    Split { prime: u64, rounds: usize, remaining: usize },
    #[error("lifting character values failed: {0}")]
    Lift(String),
    #[error("row orthogonality fails for rows {0} and {1}")]
    RowOrthogonality(usize, usize),
    #[error("column orthogonality fails for classes {0} and {1}")]
    ColumnOrthogonality(usize, usize),
    #[error("sum of squared degrees is {sum}, group order is {order}")]
    DegreeSum { sum: u64, order: usize },
    #[error("table has {rows} irreducibles but the group has {classes} classes")]
    RowCount { rows: usize, classes: usize },
    #[error("row {row} has value {value} on the identity but declares degree {dim}")]
    IdentityValue { row: usize, value: String, dim: u64 },
    #[error("table document line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone)]
pub struct CharTable {
    group: Arc<Group>,
    classes: ClassData,
    conductor: u64,
    dims: Vec<u64>,
    values: Vec<Vec<CycloElement>>,
    labels: Vec<String>,
}

impl CharTable {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn num_irreps(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.dims[i]
    }

    /// `values()[i][k]` is the i-th character on the representative of class k.
    pub fn values(&self) -> &[Vec<CycloElement>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[CycloElement] {
        &self.values[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `(1/|G|) Σ_C |C| f(C) conj(χ_i(C))`.
    pub fn inner_product(&self, f: &[CycloElement], i: usize) -> CycloElement {
        let order = self.group.order();
        let mut acc = CycloElement::zero(self.conductor);
        for (k, (fk, chi)) in f.iter().zip(&self.values[i]).enumerate() {
            let term = (fk * &chi.conj()).scale(&BigRational::from_integer(self.classes.size(k).into()));
            acc = &acc + &term;
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(order)))
    }

    pub fn verify(&self) -> Result<(), CharTableError> {
        verify_parts(&self.group, &self.classes, &self.dims, &self.values, Mode::default())
    }

    /// True when both tables have the same multiset of rows.
    pub fn same_up_to_row_permutation(&self, other: &CharTable) -> bool {
        if self.num_irreps() != other.num_irreps() || self.classes.num_classes() != other.classes.num_classes() {
            return false;
        }
        let mut used = vec![false; other.num_irreps()];
        self.values.iter().all(|row| match (0..other.num_irreps()).find(|&j| !used[j] && other.values[j] == *row) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        })
    }

    /// Renders the table document format read by [`load_table`].
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group {}", self.group.spec());
        let _ = writeln!(out, "classes {}", self.classes.num_classes());
        let _ = writeln!(out, "zeta {}", self.conductor);
        for (i, row) in self.values.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|v| v.embed(self.conductor).to_string()).collect();
            let _ = writeln!(out, "irrep {} dim {} : {}", self.labels[i], self.dims[i], vals.join(" | "));
        }
        out
    }
}

fn verify_parts(
    group: &Group,
    classes: &ClassData,
    dims: &[u64],
    values: &[Vec<CycloElement>],
    mode: Mode,
) -> Result<(), CharTableError> {
    let r = classes.num_classes();
    if values.len() != r {
        return Err(CharTableError::RowCount { rows: values.len(), classes: r });
    }
    let sum: u64 = dims.iter().map(|d| d * d).sum();
    if sum != group.order() as u64 {
        return Err(CharTableError::DegreeSum { sum, order: group.order() });
    }
    for (i, row) in values.iter().enumerate() {
        if row[0].as_integer() != Some(BigInt::from(dims[i])) {
            return Err(CharTableError::IdentityValue { row: i, value: row[0].to_string(), dim: dims[i] });
        }
    }
    let conj: Vec<Vec<CycloElement>> = values.iter().map(|row| row.iter().map(CycloElement::conj).collect()).collect();
    let order = BigInt::from(group.order());

    // rows: Σ_C |C| χ_i(C) conj χ_j(C) = δ_ij |G|
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let row_bad = par::map(mode, &pairs, |&(i, j)| {
        let mut acc = CycloElement::zero(values[i][0].conductor());
        for k in 0..r {
            let t = (&values[i][k] * &conj[j][k]).scale(&BigRational::from_integer(classes.size(k).into()));
            acc = &acc + &t;
        }
        let expect = if i == j { order.clone() } else { BigInt::zero() };
        acc.as_integer() != Some(expect)
    });
    if let Some(&(i, j)) = pairs.iter().zip(&row_bad).find(|(_, &b)| b).map(|(p, _)| p) {
        return Err(CharTableError::RowOrthogonality(i, j));
    }

    // columns: Σ_i χ_i(C) conj χ_i(C') = δ_CC' |G|/|C|
    let col_bad = par::map(mode, &pairs, |&(k, l)| {
        let mut acc = CycloElement::zero(values[0][0].conductor());
        for i in 0..r {
            acc = &acc + &(&values[i][k] * &conj[i][l]);
        }
        let expect = if k == l { BigInt::from(group.order() / classes.size(k)) } else { BigInt::zero() };
        acc.as_integer() != Some(expect)
    });
    if let Some(&(k, l)) = pairs.iter().zip(&col_bad).find(|(_, &b)| b).map(|(p, _)| p) {
        return Err(CharTableError::ColumnOrthogonality(k, l));
    }
    Ok(())
}

mod modp {
    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(sel) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, sel);
            let s = inv(m[r][c], p);
            m[r].iter_mut().for_each(|x| *x = *x * s % p);
            let pivot = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right nullspace of `m` (rows × cols).
    pub fn nullspace(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
        let pivots = rref(&mut m, p);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[row][f]) % p;
                }
                v
            })
            .collect()
    }
}

/// A subspace of F_p^r kept as RREF rows, so coordinates are read at pivots.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(mut rows: Vec<Vec<u64>>, p: u64) -> Self {
        let pivots = modp::rref(&mut rows, p);
        rows.truncate(pivots.len());
        Subspace { rows, pivots }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Splits into eigenspaces of `a` (which must leave the subspace invariant).
    fn split(&self, a: &[Vec<u64>], p: u64) -> Vec<Subspace> {
        let d = self.dim();
        let r = a.len();
        let images: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|b| (0..r).map(|j| (0..r).fold(0u64, |acc, k| (acc + a[j][k] * b[k]) % p)).collect())
            .collect();
        // restricted matrix C with C[m][l] = coordinate m of A b_l
        let c: Vec<Vec<u64>> = (0..d).map(|m| (0..d).map(|l| images[l][self.pivots[m]]).collect()).collect();
        let mut parts = Vec::new();
        let mut found = 0;
        for lambda in 0..p {
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|m| (0..d).map(|l| if m == l { (c[m][l] + p - lambda) % p } else { c[m][l] }).collect())
                .collect();
            let null = modp::nullspace(shifted, d, p);
            if null.is_empty() {
                continue;
            }
            found += null.len();
            let vecs = null
                .iter()
                .map(|x| (0..r).map(|j| (0..d).fold(0u64, |acc, l| (acc + x[l] * self.rows[l][j]) % p)).collect())
                .collect();
            parts.push(Subspace::new(vecs, p));
            if found == d {
                break;
            }
        }
        parts
    }
}

/// Least prime p ≡ 1 (mod exponent) with p > 2 sqrt(order).
pub fn dixon_prime(exponent: u64, order: usize) -> u64 {
    let mut p = exponent + 1;
    while !(p * p > 4 * order as u64 && modp::is_prime(p)) {
        p += exponent;
    }
    p
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn split_all(matrices: &[Vec<Vec<u64>>], r: usize, p: u64, seed: u64) -> Result<Vec<Vec<u64>>, CharTableError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect();
    let mut pending = vec![Subspace::new(identity, p)];
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut rounds = 0;
    while !pending.is_empty() {
        if rounds == MAX_SPLIT_ROUNDS {
            return Err(CharTableError::Split { prime: p, rounds, remaining: pending.len() });
        }
        rounds += 1;
        let mut next = Vec::new();
        for space in pending {
            if space.dim() == 1 {
                done.push(space.rows.into_iter().next().expect("one row"));
                continue;
            }
            let coeffs: Vec<u64> = (0..matrices.len()).map(|_| rng.gen_range(0..p)).collect();
            let combo: Vec<Vec<u64>> = (0..r)
                .map(|j| {
                    (0..r)
                        .map(|k| matrices.iter().zip(&coeffs).fold(0u64, |acc, (m, &c)| (acc + c * m[j][k]) % p))
                        .collect()
                })
                .collect();
            let parts = space.split(&combo, p);
            let total: usize = parts.iter().map(Subspace::dim).sum();
            if total != space.dim() {
                return Err(CharTableError::Lift(format!(
                    "class algebra is not diagonalisable mod {p} (eigenspaces span {total} of {})",
                    space.dim()
                )));
            }
            for part in parts {
                if part.dim() == 1 {
                    done.push(part.rows.into_iter().next().expect("one row"));
                } else {
                    next.push(part);
                }
            }
        }
        pending = next;
    }
    Ok(done)
}

/// Primitive `e`-th root of unity mod p (requires e | p-1).
fn primitive_root_of_unity(e: u64, p: u64) -> u64 {
    let mut primes = Vec::new();
    let mut m = e;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            primes.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    (1..p)
        .map(|g| modp::pow(g, (p - 1) / e, p))
        .find(|&z| primes.iter().all(|&q| modp::pow(z, e / q, p) != 1))
        .expect("F_p contains e-th roots of unity")
}

pub fn character_table(g: Arc<Group>, cd: ClassData) -> Result<CharTable, CharTableError> {
    character_table_with(g, cd, 0, Mode::default())
}

/// Dixon–Burnside with an explicit PRNG seed and parallel mode.
pub fn character_table_with(g: Arc<Group>, cd: ClassData, seed: u64, mode: Mode) -> Result<CharTable, CharTableError> {
    let r = cd.num_classes();
    let order = g.order();
    let e = cd.exponent();
    let p = dixon_prime(e, order);

    let coeffs: Vec<Vec<Vec<u64>>> = par::try_map_range(mode, r, |i| {
        (0..r).map(|j| class_mult_coeffs(&g, &cd, i, j)).collect::<Result<Vec<_>, _>>()
    })?;
    let matrices: Vec<Vec<Vec<u64>>> =
        coeffs.iter().map(|mi| mi.iter().map(|row| row.iter().map(|&a| a % p).collect()).collect()).collect();

    let mut vectors = None;
    let mut last_err = None;
    for attempt in 0..MAX_RESEEDS {
        match split_all(&matrices, r, p, seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15))) {
            Ok(v) => {
                vectors = Some(v);
                break;
            }
            Err(err @ CharTableError::Split { .. }) => last_err = Some(err),
            Err(err) => return Err(err),
        }
    }
    let vectors = match vectors {
        Some(v) => v,
        None => return Err(last_err.expect("at least one attempt")),
    };
    if vectors.len() != r {
        return Err(CharTableError::Lift(format!("found {} central characters, expected {r}", vectors.len())));
    }

    let z = primitive_root_of_unity(e, p);
    let z_inv = modp::inv(z, p);
    let e_inv = modp::inv(e % p, p);
    let max_dim = isqrt(order as u64);
    let power_class: Vec<Vec<usize>> =
        (0..r).map(|k| (0..e).map(|t| cd.class_of(g.pow(cd.representative(k), t))).collect()).collect();

    let rows: Vec<(u64, Vec<CycloElement>)> = par::try_map(mode, &vectors, |w| {
        let scale = modp::inv(w[0], p);
        let omega: Vec<u64> = w.iter().map(|&x| x * scale % p).collect();
        let s = (0..r).fold(0u64, |acc, k| {
            let t = omega[k] * omega[cd.inverse_class(k)] % p * modp::inv(cd.size(k) as u64 % p, p) % p;
            (acc + t) % p
        });
        if s == 0 {
            return Err(CharTableError::Lift("degree formula divides by zero".into()));
        }
        let d2 = (order as u64 % p) * modp::inv(s, p) % p;
        let dim = (1..=max_dim)
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| CharTableError::Lift(format!("no degree d <= {max_dim} with d^2 = {d2} mod {p}")))?;
        let theta: Vec<u64> =
            (0..r).map(|k| omega[k] * (dim % p) % p * modp::inv(cd.size(k) as u64 % p, p) % p).collect();
        let mut values = Vec::with_capacity(r);
        for pc in &power_class {
            let mut counts = vec![0i64; e as usize];
            for (s_idx, count) in counts.iter_mut().enumerate() {
                let step = modp::pow(z_inv, s_idx as u64, p);
                let mut zt = 1u64;
                let mut acc = 0u64;
                for &cls in pc.iter() {
                    acc = (acc + theta[cls] * zt) % p;
                    zt = zt * step % p;
                }
                let mu = acc * e_inv % p;
                if mu > dim {
                    return Err(CharTableError::Lift(format!("eigenvalue multiplicity {mu} exceeds degree {dim}")));
                }
                *count = mu as i64;
            }
            if counts.iter().sum::<i64>() != dim as i64 {
                return Err(CharTableError::Lift("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(CycloElement::from_power_counts(e, &counts));
        }
        Ok((dim, values))
    })?;

    let mut rows = rows;
    sort_rows(&mut rows);
    let dims: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let values: Vec<Vec<CycloElement>> = rows.into_iter().map(|(_, v)| v).collect();
    verify_parts(&g, &cd, &dims, &values, mode)?;
    let labels = (0..r).map(|i| format!("chi{i}")).collect();
    Ok(CharTable { group: g, classes: cd, conductor: e, dims, values, labels })
}

fn is_trivial(row: &[CycloElement]) -> bool {
    row.iter().all(|v| v.as_integer() == Some(BigInt::one()))
}

/// Trivial character first, then by (degree, lexicographic values).
fn sort_rows(rows: &mut [(u64, Vec<CycloElement>)]) {
    rows.sort_by(|(da, va), (db, vb)| {
        is_trivial(vb).cmp(&is_trivial(va)).then(da.cmp(db)).then_with(|| {
            va.iter().zip(vb).map(|(x, y)| x.lex_cmp(y)).find(|o| *o != Ordering::Equal).unwrap_or(Ordering::Equal)
        })
    });
}

/// Parses and verifies a table document:
///
/// ```text
/// group symmetric:3
/// classes 3
/// zeta 6
/// irrep iota dim 1 : 1 | 1 | 1
/// ```
pub fn load_table(doc: &str) -> Result<CharTable, CharTableError> {
    load_table_with_cap(doc, crate::group::DEFAULT_ORDER_CAP)
}

pub fn load_table_with_cap(doc: &str, cap: usize) -> Result<CharTable, CharTableError> {
    let mut group_spec = None;
    let mut class_count = None;
    let mut zeta = None;
    let mut irreps: Vec<(usize, String, u64, Vec<String>)> = Vec::new();
    for (lineno, raw) in doc.lines().enumerate() {
        let line_no = lineno + 1;
        let bad = |reason: &str| CharTableError::Parse { line: line_no, reason: reason.into() };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).ok_or_else(|| bad("expected `key value`"))?;
        let rest = rest.trim();
        match key {
            "group" => group_spec = Some(rest.to_string()),
            "classes" => class_count = Some(rest.parse::<usize>().map_err(|_| bad("bad class count"))?),
            "zeta" => zeta = Some(rest.parse::<u64>().ok().filter(|&n| n >= 1).ok_or_else(|| bad("bad zeta"))?),
            "irrep" => {
                let (head, vals) = rest.split_once(':').ok_or_else(|| bad("expected `:` before values"))?;
                let words: Vec<&str> = head.split_whitespace().collect();
                let [name, "dim", d] = words.as_slice() else {
                    return Err(bad("expected `irrep <name> dim <n> :`"));
                };
                let dim = d.parse::<u64>().ok().filter(|&x| x >= 1).ok_or_else(|| bad("bad dimension"))?;
                let vals = vals.split('|').map(|v| v.trim().to_string()).collect();
                irreps.push((line_no, name.to_string(), dim, vals));
            }
            _ => return Err(bad("unknown key")),
        }
    }
    let missing = |what: &str| CharTableError::Parse { line: 0, reason: format!("missing `{what}` header") };
    let group = Arc::new(Group::from_spec_with_cap(&group_spec.ok_or_else(|| missing("group"))?, cap)?);
    let k = class_count.ok_or_else(|| missing("classes"))?;
    let n = zeta.ok_or_else(|| missing("zeta"))?;
    let cd = conjugacy(&group);
    if k != cd.num_classes() {
        return Err(CharTableError::Parse {
            line: 0,
            reason: format!("document declares {k} classes, group has {}", cd.num_classes()),
        });
    }
    let mut dims = Vec::new();
    let mut values = Vec::new();
    let mut labels = Vec::new();
    for (line, name, dim, vals) in irreps {
        if vals.len() != k {
            return Err(CharTableError::Parse { line, reason: format!("expected {k} values, found {}", vals.len()) });
        }
        let row = vals
            .iter()
            .map(|v| CycloElement::parse(v, n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CharTableError::Parse { line, reason: e.to_string() })?;
        dims.push(dim);
        values.push(row);
        labels.push(name);
    }
    verify_parts(&group, &cd, &dims, &values, Mode::default())?;
    Ok(CharTable { group, classes: cd, conductor: n, dims, values, labels })
}

/// Shorthand: build the group from a spec and compute its table.
pub fn table_for_spec(spec: &str, seed: u64) -> Result<CharTable, CharTableError> {
    let g = Arc::new(Group::from_spec(spec)?);
    let cd = conjugacy(&g);
    character_table_with(g, cd, seed, Mode::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: u64, v: i64) -> CycloElement {
        CycloElement::from_int(n, v)
    }

    #[test]
    fn s3_known_values() {
        let t = table_for_spec("symmetric:3", 0).unwrap();
        assert_eq!(t.dims(), &[1, 1, 2]);
        let n = t.conductor();
        assert_eq!(t.row(0), &[int(n, 1), int(n, 1), int(n, 1)]);
        assert_eq!(t.row(1), &[int(n, 1), int(n, -1), int(n, 1)]);
        assert_eq!(t.row(2), &[int(n, 2), int(n, 0), int(n, -1)]);
    }

    #[test]
    fn trivial_group_table() {
        let t = table_for_spec("cyclic:1", 0).unwrap();
        assert_eq!(t.dims(), &[1]);
        assert_eq!(t.row(0), &[int(1, 1)]);
    }

    #[test]
    fn cyclic_three_is_powers_of_zeta() {
        let t = table_for_spec("cyclic:3", 0).unwrap();
        let g = t.group().clone();
        let gen = g.generators()[0];
        let direct: Vec<Vec<CycloElement>> = (0..3)
            .map(|j| {
                (0..3)
                    .map(|k| {
                        let x = t.classes().representative(k);
                        let power = (0..3).find(|&a| g.pow(gen, a) == x).unwrap() as i64;
                        CycloElement::zeta_pow(3, j * power)
                    })
                    .collect()
            })
            .collect();
        for row in &direct {
            assert!(t.values().contains(row));
        }
    }

    #[test]
    fn seeds_do_not_change_the_table() {
        let a = table_for_spec("symmetric:4", 0).unwrap();
        for seed in [1, 7, 12345] {
            let b = table_for_spec("symmetric:4", seed).unwrap();
            assert_eq!(a.values(), b.values());
        }
        let seq = character_table_with(a.group().clone(), a.classes().clone(), 3, Mode::Sequential).unwrap();
        assert_eq!(seq.values(), a.values());
    }

    #[test]
    fn dixon_prime_choice() {
        // S3: exponent 6, 2 sqrt 6 ~ 4.9
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(1, 1), 3);
        assert_eq!(dixon_prime(60, 720), 61);
    }

    const S3_DOC: &str = "group symmetric:3\nclasses 3\nzeta 1\n\
        irrep iota dim 1 : 1 | 1 | 1\n\
        irrep eps dim 1 : 1 | -1 | 1\n\
        irrep sigma dim 2 : 2 | 0 | -1\n";

    #[test]
    fn load_published_s3() {
        let loaded = load_table(S3_DOC).unwrap();
        let computed = table_for_spec("symmetric:3", 0).unwrap();
        assert!(loaded.same_up_to_row_permutation(&computed));
        assert_eq!(loaded.labels()[2], "sigma");
    }

    #[test]
    fn load_rejects_altered_value() {
        let doc = S3_DOC.replace("2 | 0 | -1", "2 | 1 | -1");
        assert!(matches!(load_table(&doc), Err(CharTableError::RowOrthogonality(_, _))));
    }

    #[test]
    fn load_rejects_structural_errors() {
        let missing_row = S3_DOC.lines().take(5).collect::<Vec<_>>().join("\n");
        assert!(matches!(load_table(&missing_row), Err(CharTableError::RowCount { .. })));
        let bad_dim = S3_DOC.replace("sigma dim 2", "sigma dim 3").replace("3 : 2 |", "3 : 3 |");
        assert!(matches!(load_table(&bad_dim), Err(CharTableError::DegreeSum { .. })));
        let wrong_id = S3_DOC.replace("sigma dim 2 : 2", "sigma dim 2 : 1");
        assert!(matches!(load_table(&wrong_id), Err(CharTableError::IdentityValue { .. })));
        let classes = S3_DOC.replace("classes 3", "classes 4");
        assert!(matches!(load_table(&classes), Err(CharTableError::Parse { .. })));
        let short = S3_DOC.replace("1 | -1 | 1", "1 | -1");
        assert!(matches!(load_table(&short), Err(CharTableError::Parse { line: 5, .. })));
    }

    #[test]
    fn load_z4_formula_table() {
        let g = Group::from_spec("cyclic:4").unwrap();
        // classes of Z/4 are the elements in BFS order 0,1,2,3
        let mut doc = String::from("group cyclic:4\nclasses 4\nzeta 4\n");
        for j in 0..4 {
            let vals: Vec<String> = (0..4)
                .map(|k| {
                    let a = g.label(k).parse::<i64>().unwrap();
                    CycloElement::zeta_pow(4, j * a).to_string()
                })
                .collect();
            doc.push_str(&format!("irrep x{j} dim 1 : {}\n", vals.join(" | ")));
        }
        let t = load_table(&doc).unwrap();
        assert!(t.same_up_to_row_permutation(&table_for_spec("cyclic:4", 0).unwrap()));
    }

    #[test]
    fn document_round_trip() {
        for spec in ["symmetric:4", "dihedral:5", "product:[2,3]"] {
            let t = table_for_spec(spec, 0).unwrap();
            let back = load_table(&t.to_document()).unwrap();
            assert_eq!(back.values(), t.values());
            assert_eq!(back.dims(), t.dims());
        }
    }
}

//! Finite groups given by a Cayley table, built from a small spec grammar.
//!
//! Every group is produced by breadth-first closure over its generators, so
//! element indices are deterministic: index 0 is the identity, and the rest
//! appear in the order in which right multiplication by the generators (in
//! spec order) first reaches them.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub const DEFAULT_ORDER_CAP: usize = 5040;

/// Environment variable that overrides [`DEFAULT_ORDER_CAP`].
pub const ORDER_CAP_ENV: &str = "REPCORR_ORDER_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group spec `{spec}`: {reason}")]
    Malformed { spec: String, reason: String },
    #[error("group generated by `{spec}` exceeds the order cap {cap}")]
    OrderCap { spec: String, cap: usize },
    #[error("class index {index} out of range (group has {count} classes)")]
    ClassIndex { index: usize, count: usize },
}

/// Reads the order cap from [`ORDER_CAP_ENV`], falling back to the default.
pub fn order_cap_from_env() -> Result<usize, GroupError> {
    match std::env::var(ORDER_CAP_ENV) {
        Ok(v) => v.trim().parse::<usize>().ok().filter(|&c| c >= 1).ok_or_else(|| GroupError::Malformed {
            spec: format!("{ORDER_CAP_ENV}={v}"),
            reason: "order cap must be a positive integer".into(),
        }),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

/// A permutation of `0..degree`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    /// Builds a permutation of `0..degree` from 1-based disjoint or
    /// overlapping cycles, composed right to left.
    pub fn from_cycles(cycles: &[Vec<u32>], degree: usize) -> Option<Self> {
        let mut p = Perm::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut c = Perm::identity(degree);
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cycle.len() {
                return None;
            }
            for (k, &pt) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if pt == 0 || pt as usize > degree || next == 0 {
                    return None;
                }
                c.0[pt as usize - 1] = next - 1;
            }
            Perm::from_images(c.0.clone())?;
            p = c.compose(&p);
        }
        Some(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.0[point as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &j)| i as u32 == j).count()
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut lens = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parsed form of the group-spec mini-grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    Product(Vec<u32>),
    Dihedral(u32),
    Symmetric(u32),
    Perm(Vec<Perm>),
}

impl GroupSpec {
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let bad = |reason: &str| GroupError::Malformed { spec: spec.to_string(), reason: reason.into() };
        let s = spec.trim();
        let (family, arg) = s.split_once(':').ok_or_else(|| bad("expected `<family>:<argument>`"))?;
        let arg = arg.trim();
        let int = |a: &str| a.trim().parse::<u32>().map_err(|_| bad("expected a nonnegative integer"));
        match family.trim() {
            "cyclic" => {
                let n = int(arg)?;
                if n < 1 {
                    return Err(bad("cyclic:n needs n >= 1"));
                }
                Ok(GroupSpec::Cyclic(n))
            }
            "dihedral" => {
                let n = int(arg)?;
                if n < 2 {
                    return Err(bad("dihedral:n needs n >= 2"));
                }
                Ok(GroupSpec::Dihedral(n))
            }
            "symmetric" => {
                let n = int(arg)?;
                if !(2..=6).contains(&n) {
                    return Err(bad("symmetric:n needs 2 <= n <= 6"));
                }
                Ok(GroupSpec::Symmetric(n))
            }
            "product" => {
                let inner = strip_brackets(arg).ok_or_else(|| bad("expected `[n1,...,nk]`"))?;
                let factors = inner.split(',').map(int).collect::<Result<Vec<_>, _>>()?;
                if factors.is_empty() || factors.iter().any(|&n| n < 1) {
                    return Err(bad("product factors must be >= 1"));
                }
                Ok(GroupSpec::Product(factors))
            }
            "perm" => {
                let inner = strip_brackets(arg).ok_or_else(|| bad("expected `[(cycles),...]`"))?;
                let gens = split_top_level(inner)
                    .into_iter()
                    .map(|g| parse_cycles(g).ok_or_else(|| bad("bad cycle notation")))
                    .collect::<Result<Vec<_>, _>>()?;
                if gens.is_empty() {
                    return Err(bad("perm needs at least one generator"));
                }
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1).max(1) as usize;
                let perms = gens
                    .iter()
                    .map(|cycles| Perm::from_cycles(cycles, degree).ok_or_else(|| bad("cycle repeats a point")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GroupSpec::Perm(perms))
            }
            _ => Err(bad("unknown family (cyclic, product, dihedral, symmetric, perm)")),
        }
    }
}

fn strip_brackets(s: &str) -> Option<&str> {
    s.trim().strip_prefix('[')?.strip_suffix(']')
}

/// Splits on commas that are not inside parentheses or brackets.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

/// Parses `(1 2 3)(4 5)` into 1-based cycles. `()` is the identity.
pub(crate) fn parse_cycles(s: &str) -> Option<Vec<Vec<u32>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() {
        return None;
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(')?;
        let close = body.find(')')?;
        let pts = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().ok().filter(|&p| p >= 1))
            .collect::<Option<Vec<_>>>()?;
        if !pts.is_empty() {
            cycles.push(pts);
        }
        rest = body[close + 1..].trim_start();
    }
    Some(cycles)
}

/// A finite group stored as its Cayley table.
#[derive(Debug, Clone)]
pub struct Group {
    spec: String,
    order: usize,
    mult: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
    labels: Vec<String>,
    action: Vec<Perm>,
}

struct Closure<K> {
    elements: Vec<K>,
    generators: Vec<usize>,
    parent: Vec<(usize, usize)>,
    right: Vec<Vec<u32>>,
}

fn bfs_closure<K, F>(spec: &str, identity: K, gens: &[K], mul: F, cap: usize) -> Result<Closure<K>, GroupError>
where
    K: Clone + Eq + Hash,
    F: Fn(&K, &K) -> K,
{
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut parent = vec![(0usize, usize::MAX)];
    index.insert(identity, 0);
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let y = mul(&elements[x], g);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= cap {
                        return Err(GroupError::OrderCap { spec: spec.to_string(), cap });
                    }
                    index.insert(y.clone(), i);
                    elements.push(y);
                    parent.push((x, gi));
                    queue.push_back(i);
                    i
                }
            };
            row.push(idx as u32);
        }
        if right.len() <= x {
            right.resize(x + 1, Vec::new());
        }
        right[x] = row;
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(Closure { elements, generators, parent, right })
}

impl Group {
    pub fn from_spec(spec: &str) -> Result<Self, GroupError> {
        Self::from_spec_with_cap(spec, DEFAULT_ORDER_CAP)
    }

    pub fn from_spec_with_cap(spec: &str, cap: usize) -> Result<Self, GroupError> {
        let parsed = GroupSpec::parse(spec)?;
        let canonical = spec.trim().to_string();
        match parsed {
            GroupSpec::Cyclic(n) => Self::from_product(&canonical, &[n], cap, |k| format!("{}", k[0])),
            GroupSpec::Product(ns) => Self::from_product(&canonical, &ns, cap, |k| {
                let parts: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }),
            GroupSpec::Dihedral(n) => {
                // (a, b) is the map x -> (-1)^b x + a on Z/n.
                let mul = move |x: &(u32, u32), y: &(u32, u32)| {
                    let shifted = if x.1 == 0 { y.0 } else { (n - y.0) % n };
                    ((x.0 + shifted) % n, (x.1 + y.1) % 2)
                };
                let c = bfs_closure(&canonical, (0, 0), &[(1 % n, 0), (0, 1)], mul, cap)?;
                let labels = c
                    .elements
                    .iter()
                    .map(|&(a, b)| if b == 0 { format!("r^{a}") } else { format!("r^{a}s") })
                    .collect();
                let action = c
                    .elements
                    .iter()
                    .map(|&(a, b)| Perm((0..n).map(|x| if b == 0 { (x + a) % n } else { (n - x + a) % n }).collect()))
                    .collect();
                Ok(Self::assemble(canonical, c, labels, action))
            }
            GroupSpec::Symmetric(n) => {
                let d = n as usize;
                let transposition = Perm::from_cycles(&[vec![1, 2]], d).expect("valid cycle");
                let long = Perm::from_cycles(&[(1..=n).collect()], d).expect("valid cycle");
                Self::from_perms(&canonical, vec![transposition, long], cap)
            }
            GroupSpec::Perm(gens) => Self::from_perms(&canonical, gens, cap),
        }
    }

    fn from_perms(spec: &str, gens: Vec<Perm>, cap: usize) -> Result<Self, GroupError> {
        let degree = gens[0].degree();
        let c = bfs_closure(spec, Perm::identity(degree), &gens, |x, y| x.compose(y), cap)?;
        let labels = c.elements.iter().map(|p| p.to_string()).collect();
        let action = c.elements.clone();
        Ok(Self::assemble(spec.to_string(), c, labels, action))
    }

    fn from_product(spec: &str, ns: &[u32], cap: usize, label: impl Fn(&[u32]) -> String) -> Result<Self, GroupError> {
        let order: u128 = ns.iter().map(|&n| n as u128).product();
        if order > cap as u128 {
            return Err(GroupError::OrderCap { spec: spec.to_string(), cap });
        }
        let k = ns.len();
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|i| {
                let mut g = vec![0u32; k];
                g[i] = 1 % ns[i];
                g
            })
            .collect();
        let mul = |x: &Vec<u32>, y: &Vec<u32>| -> Vec<u32> {
            x.iter().zip(y).zip(ns).map(|((a, b), n)| (a + b) % n).collect()
        };
        let c = bfs_closure(spec, vec![0u32; k], &gens, mul, cap)?;
        let labels = c.elements.iter().map(|e| label(e)).collect();
        let offsets: Vec<u32> = ns
            .iter()
            .scan(0u32, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        let action = c
            .elements
            .iter()
            .map(|e| {
                let mut img = Vec::new();
                for ((&a, &n), &o) in e.iter().zip(ns).zip(&offsets) {
                    img.extend((0..n).map(|x| o + (x + a) % n));
                }
                Perm(img)
            })
            .collect();
        Ok(Self::assemble(spec.to_string(), c, labels, action))
    }

    fn assemble<K>(spec: String, c: Closure<K>, labels: Vec<String>, action: Vec<Perm>) -> Self {
        let n = c.elements.len();
        let mut mult = vec![0u32; n * n];
        for x in 0..n {
            mult[x * n] = x as u32;
            for y in 1..n {
                let (p, g) = c.parent[y];
                let xp = mult[x * n + p] as usize;
                mult[x * n + y] = c.right[xp][g];
            }
        }
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            inverse[x] = (0..n).find(|&y| mult[x * n + y] == 0).expect("group has inverses") as u32;
        }
        Group { spec, order: n, mult, inverse, generators: c.generators, labels, action }
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Element indices of the generators, in spec order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// The natural permutation action of element `x` (0-based points).
    pub fn natural_action(&self, x: usize) -> &Perm {
        &self.action[x]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Brute-force check of the group axioms on the Cayley table.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order;
        let perm_rows = (0..n).all(|x| {
            let mut seen = vec![false; n];
            (0..n).all(|y| !std::mem::replace(&mut seen[self.mul(x, y)], true))
        });
        let identity = (0..n).all(|x| self.mul(0, x) == x && self.mul(x, 0) == x);
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        });
        perm_rows && identity && assoc
    }
}

/// Conjugacy-class structure of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    exponent: u64,
}

impl ClassData {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    /// Smallest element index in class `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }
}

/// Conjugacy classes ordered by smallest member index, so the identity class
/// comes first.
pub fn conjugacy(g: &Group) -> ClassData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for h in 0..n {
            let y = g.mul(g.mul(h, x), g.inv(h));
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                members.push(y);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    let exponent = classes.iter().map(|c| g.element_order(c[0])).fold(1u64, num_integer::lcm);
    ClassData { classes, class_of, inverse_class, exponent }
}

/// Class multiplication coefficients `a_{ijk}`: the number of pairs
/// `(x, y)` in `C_i × C_j` with `xy` equal to the representative of `C_k`.
pub fn class_mult_coeffs(g: &Group, cd: &ClassData, i: usize, j: usize) -> Result<Vec<u64>, GroupError> {
    let r = cd.num_classes();
    for idx in [i, j] {
        if idx >= r {
            return Err(GroupError::ClassIndex { index: idx, count: r });
        }
    }
    Ok((0..r)
        .map(|k| {
            let z = cd.representative(k);
            cd.class(i).iter().filter(|&&x| cd.class_of(g.mul(g.inv(x), z)) == j).count() as u64
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_classes(g: &Group) -> usize {
        // union-find free: count orbits by marking
        let n = g.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        for x in 0..n {
            if seen[x] {
                continue;
            }
            count += 1;
            for h in 0..n {
                for (y, s) in seen.iter_mut().enumerate() {
                    if g.mul(h, x) == g.mul(y, h) {
                        *s = true;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn symmetric_three_classes() {
        let g = Group::from_spec("symmetric:3").unwrap();
        assert_eq!(g.order(), 6);
        let cd = conjugacy(&g);
        assert_eq!(cd.class_sizes(), vec![1, 3, 2]);
        assert_eq!(cd.exponent(), 6);
        assert_eq!(g.label(cd.representative(1)), "(1 2)");
        assert_eq!(g.label(cd.representative(2)), "(1 2 3)");
        assert!(g.verify_axioms());
    }

    #[test]
    fn trivial_group() {
        let g = Group::from_spec("cyclic:1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(conjugacy(&g).num_classes(), 1);
        assert_eq!(conjugacy(&g).exponent(), 1);
    }

    #[test]
    fn dihedral_class_counts_match_brute_force() {
        for (n, classes) in [(4u32, 5usize), (6, 6)] {
            let g = Group::from_spec(&format!("dihedral:{n}")).unwrap();
            assert_eq!(g.order(), 2 * n as usize);
            assert!(g.verify_axioms());
            let cd = conjugacy(&g);
            assert_eq!(cd.num_classes(), classes);
            assert_eq!(brute_force_classes(&g), classes);
        }
        // D_6 has rotations of order 6 and reflections of order 2.
        let g = Group::from_spec("dihedral:6").unwrap();
        let brute = (0..12).map(|x| g.element_order(x)).fold(1, num_integer::lcm);
        assert_eq!(brute, 6);
        assert_eq!(conjugacy(&g).exponent(), 6);
    }

    #[test]
    fn dihedral_two_is_klein_four() {
        let g = Group::from_spec("dihedral:2").unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(conjugacy(&g).exponent(), 2);
    }

    #[test]
    fn cyclic_classes_are_singletons() {
        for n in 1..=12 {
            let g = Group::from_spec(&format!("cyclic:{n}")).unwrap();
            let cd = conjugacy(&g);
            assert_eq!(cd.num_classes(), n as usize);
            assert_eq!(cd.exponent(), n as u64);
        }
    }

    #[test]
    fn class_mult_examples() {
        let g = Group::from_spec("symmetric:3").unwrap();
        let cd = conjugacy(&g);
        for j in 0..3 {
            let a = class_mult_coeffs(&g, &cd, 0, j).unwrap();
            let delta: Vec<u64> = (0..3).map(|k| (j == k) as u64).collect();
            assert_eq!(a, delta);
        }
        let a = class_mult_coeffs(&g, &cd, 1, 1).unwrap();
        assert_eq!(a[0], 3);
        // brute-force pair enumeration
        let mut brute = vec![0u64; 3];
        for &x in cd.class(1) {
            for &y in cd.class(1) {
                let z = g.mul(x, y);
                if z == cd.representative(cd.class_of(z)) {
                    brute[cd.class_of(z)] += 1;
                }
            }
        }
        assert_eq!(a, brute);

        let g = Group::from_spec("cyclic:4").unwrap();
        let cd = conjugacy(&g);
        let one = cd.class_of(g.generators()[0]);
        let two = cd.class_of(g.mul(g.generators()[0], g.generators()[0]));
        let a = class_mult_coeffs(&g, &cd, one, one).unwrap();
        for (k, &v) in a.iter().enumerate() {
            assert_eq!(v, (k == two) as u64);
        }
        assert!(class_mult_coeffs(&g, &cd, 4, 0).is_err());
    }

    #[test]
    fn class_equation_and_normalisation() {
        for spec in ["symmetric:4", "dihedral:5", "product:[2,4]", "perm:[(1 2 3),(1 2)(3 4)]"] {
            let g = Group::from_spec(spec).unwrap();
            let cd = conjugacy(&g);
            assert_eq!(cd.class_sizes().iter().sum::<usize>(), g.order());
            assert_eq!(cd.size(0), 1);
            assert!(cd.class_sizes().iter().all(|s| g.order().is_multiple_of(*s)));
            for i in 0..cd.num_classes() {
                for j in 0..cd.num_classes() {
                    let a = class_mult_coeffs(&g, &cd, i, j).unwrap();
                    let lhs: u64 = a.iter().enumerate().map(|(k, &v)| v * cd.size(k) as u64).sum();
                    assert_eq!(lhs, (cd.size(i) * cd.size(j)) as u64);
                }
            }
        }
    }

    #[test]
    fn spec_errors() {
        for bad in
            ["cyclic:0", "dihedral:1", "symmetric:7", "symmetric:1", "foo:3", "product:[]", "perm:[(1 1)]", "cyclic"]
        {
            assert!(matches!(Group::from_spec(bad), Err(GroupError::Malformed { .. })), "{bad}");
        }
        assert!(matches!(Group::from_spec_with_cap("symmetric:5", 100), Err(GroupError::OrderCap { .. })));
        assert!(matches!(Group::from_spec_with_cap("product:[10,11]", 100), Err(GroupError::OrderCap { .. })));
    }

    #[test]
    fn perm_generators_and_ordering() {
        let g = Group::from_spec("perm:[(1 2 3),(1 2)(3 4)]").unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.label(0), "()");
        assert_eq!(g.label(g.generators()[0]), "(1 2 3)");
        assert_eq!(g.label(g.generators()[1]), "(1 2)(3 4)");
        assert!(g.verify_axioms());
        let again = Group::from_spec("perm:[(1 2 3),(1 2)(3 4)]").unwrap();
        assert_eq!(g.mult, again.mult);
    }

    #[test]
    fn perm_display_and_cycle_type() {
        let p = Perm::from_cycles(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert_eq!(Perm::identity(3).to_string(), "()");
    }
}

//! Directed multigraphs: K-theory of graph algebras, simplicity criteria,
//! skew products over abelian duals, rotation graphs on the circle and DOT output.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cpgraph::{build_e_graph, pimsner_matrices, Convention, CorrGraph};
use crate::cyclotomic::CycloElement;
use crate::group::{split_top_level, GroupSpec};
use crate::intlinalg::{coker_ker, IntMatrix, KGroups};
use crate::par::{self, Mode};
use crate::rep::RepSpec;

/// Vertex cap for skew products; adjacency is stored densely.
pub const MAX_SKEW_VERTICES: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("adjacency matrix must be square and nonempty")]
    Shape,
    #[error("{count} names for {n} vertices")]
    Names { count: usize, n: usize },
    #[error("edge {edge}: {reason}")]
    Character { edge: usize, reason: String },
    #[error("window radius must be at least 1, got {0}")]
    Window(i64),
    #[error("skew product would have {0} vertices (cap {MAX_SKEW_VERTICES})")]
    TooLarge(u128),
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("frequency list is empty")]
    EmptyFrequencies,
    #[error("orbit order overflows u64")]
    Overflow,
    #[error("group `{0}` is not a cyclic group or a product of cyclic groups")]
    NotAbelianSpec(String),
}

fn parse_err(text: &str, reason: &str) -> GraphError {
    GraphError::Parse { text: text.to_string(), reason: reason.to_string() }
}

/// `a[v][w]` counts edges from w to v.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiGraph {
    #[serde(rename = "A")]
    a: Vec<Vec<u64>>,
    names: Vec<String>,
}

impl MultiGraph {
    pub fn new(a: Vec<Vec<u64>>) -> Result<Self, GraphError> {
        let names = (0..a.len()).map(|i| format!("v{i}")).collect();
        Self::with_names(a, names)
    }

    pub fn with_names(a: Vec<Vec<u64>>, names: Vec<String>) -> Result<Self, GraphError> {
        let n = a.len();
        if n == 0 || a.iter().any(|row| row.len() != n) {
            return Err(GraphError::Shape);
        }
        if names.len() != n {
            return Err(GraphError::Names { count: names.len(), n });
        }
        Ok(MultiGraph { a, names })
    }

    pub fn n_vertices(&self) -> usize {
        self.a.len()
    }

    pub fn adjacency(&self) -> &[Vec<u64>] {
        &self.a
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Edges from `w` to `v`.
    pub fn edges(&self, w: usize, v: usize) -> u64 {
        self.a[v][w]
    }
}

impl From<&CorrGraph> for MultiGraph {
    fn from(g: &CorrGraph) -> Self {
        MultiGraph { a: g.b.clone(), names: g.vertices.iter().map(|v| v.name.clone()).collect() }
    }
}

/// Sources are zero rows of A (no incoming edges); sinks are zero columns.
pub fn sources_sinks(g: &MultiGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.n_vertices();
    let sources = (0..n).filter(|&v| g.a[v].iter().all(|&x| x == 0)).collect();
    let sinks = (0..n).filter(|&w| (0..n).all(|v| g.a[v][w] == 0)).collect();
    (sources, sinks)
}

/// (Aᵀ - I) with the columns of vertices receiving no edges removed.
pub fn ktheory_matrix(g: &MultiGraph) -> IntMatrix {
    let n = g.n_vertices();
    let keep: Vec<usize> = (0..n).filter(|&v| g.a[v].iter().any(|&x| x > 0)).collect();
    let mut m = IntMatrix::zeros(n, n);
    for v in 0..n {
        for w in 0..n {
            m.set(w, v, BigInt::from(g.a[v][w]) - BigInt::from(u8::from(v == w)));
        }
    }
    m.select_columns(&keep)
}

/// K-theory of the graph algebra of the reversed graph: coker and ker of [`ktheory_matrix`].
pub fn ktheory_graph(g: &MultiGraph) -> KGroups {
    coker_ker(&ktheory_matrix(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub every_cycle_has_exit: bool,
    pub cofinal: bool,
    pub simple: bool,
    pub purely_infinite_simple: bool,
}

/// Criteria for the graph algebra, evaluated on the reversed orientation
/// (out-edges of `v` are row `v` of A).
pub fn simplicity_check(g: &MultiGraph) -> SimplicityReport {
    let n = g.n_vertices();
    let out = |v: usize| (0..n).filter(move |&w| g.a[v][w] > 0);
    let out_degree: Vec<u64> = (0..n).map(|v| g.a[v].iter().sum()).collect();

    let reach_from = |v: usize| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(x) = queue.pop_front() {
            for y in out(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    };
    let reach: Vec<Vec<bool>> = (0..n).map(reach_from).collect();
    let on_cycle: Vec<bool> = (0..n).map(|v| out(v).any(|w| reach[w][v])).collect();

    // a cycle without exit runs through vertices that each emit exactly one edge
    let exitless = (0..n).any(|start| {
        let mut v = start;
        for _ in 0..n {
            if out_degree[v] != 1 {
                return false;
            }
            v = out(v).next().expect("out-degree 1");
            if v == start {
                return true;
            }
        }
        false
    });

    let cofinal = (0..n).all(|v| {
        let mut h = reach[v].clone();
        loop {
            let add: Vec<usize> = (0..n).filter(|&u| !h[u] && out_degree[u] > 0 && out(u).all(|w| h[w])).collect();
            if add.is_empty() {
                break;
            }
            for u in add {
                h[u] = true;
            }
        }
        h.iter().all(|&x| x)
    });

    let every_cycle_has_exit = !exitless;
    let simple = every_cycle_has_exit && cofinal;
    let reaches_cycle = (0..n).all(|v| (0..n).any(|w| reach[v][w] && on_cycle[w]));
    SimplicityReport { every_cycle_has_exit, cofinal, simple, purely_infinite_simple: simple && reaches_cycle }
}

/// K-groups of one representation along both paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossPath {
    pub graph: KGroups,
    pub pimsner: KGroups,
}

impl CrossPath {
    pub fn agree(&self) -> bool {
        self.graph == self.pimsner
    }
}

pub fn cross_path(r: &RepSpec, convention: Convention) -> CrossPath {
    CrossPath {
        graph: ktheory_graph(&MultiGraph::from(&build_e_graph(r, convention))),
        pimsner: pimsner_matrices(r).k_groups(),
    }
}

pub fn cross_path_batch(reps: &[RepSpec], convention: Convention, mode: Mode) -> Vec<CrossPath> {
    par::map(mode, reps, |r| cross_path(r, convention))
}

/// Dual group of the skew product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualGroup {
    /// ∏ ℤ/m_i
    Finite(Vec<u64>),
    /// ℤ^d seen through the window of sup-norm radius `window`.
    Lattice { dim: usize, window: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSpec {
    pub dual: DualGroup,
    /// One character per edge of the one-vertex graph E_n.
    pub cocycle: Vec<Vec<i64>>,
}

impl SkewSpec {
    /// ℤ window of radius W with cocycle ℤ ∩ [-2W, 2W], so every in-window
    /// difference occurs exactly once.
    pub fn truncated_regular(window: i64) -> Self {
        SkewSpec {
            dual: DualGroup::Lattice { dim: 1, window },
            cocycle: (-2 * window..=2 * window).map(|c| vec![c]).collect(),
        }
    }

    /// `finite:[m1,...]; c:[(a,b),...]` or `lattice:d; window:W; c:[(x,...),...]`.
    /// `c:regular` on a 1-dimensional lattice is [`SkewSpec::truncated_regular`].
    /// `window_override` replaces (or supplies) the window radius.
    pub fn parse(text: &str, window_override: Option<i64>) -> Result<Self, GraphError> {
        let mut finite = None;
        let mut lattice = None;
        let mut window = None;
        let mut cocycle = None;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once(':').ok_or_else(|| parse_err(part, "expected `key:value`"))?;
            let value = value.trim();
            match key.trim() {
                "finite" => {
                    let list = brackets(value).ok_or_else(|| parse_err(value, "expected `[m1,...]`"))?;
                    let moduli = list
                        .split(',')
                        .map(|x| x.trim().parse::<u64>().ok().filter(|&m| m >= 1))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| parse_err(value, "moduli are positive integers"))?;
                    finite = Some(moduli);
                }
                "lattice" => {
                    lattice = Some(
                        value
                            .parse::<usize>()
                            .ok()
                            .filter(|&d| d >= 1)
                            .ok_or_else(|| parse_err(value, "dimension >= 1"))?,
                    )
                }
                "window" => window = Some(value.parse::<i64>().map_err(|_| parse_err(value, "integer window"))?),
                "c" => cocycle = Some(value.to_string()),
                _ => return Err(parse_err(part, "unknown key (finite, lattice, window, c)")),
            }
        }
        let window = window_override.or(window);
        let cocycle = cocycle.ok_or_else(|| parse_err(text, "missing `c:`"))?;
        let dual = match (finite, lattice) {
            (Some(m), None) => DualGroup::Finite(m),
            (None, Some(dim)) => {
                let w = window.ok_or_else(|| parse_err(text, "lattice needs a window"))?;
                if cocycle == "regular" {
                    if dim != 1 {
                        return Err(parse_err(text, "`c:regular` needs lattice:1"));
                    }
                    return Ok(SkewSpec::truncated_regular(w));
                }
                DualGroup::Lattice { dim, window: w }
            }
            _ => return Err(parse_err(text, "give exactly one of `finite:` and `lattice:`")),
        };
        let list = brackets(&cocycle).ok_or_else(|| parse_err(&cocycle, "expected `[(..),...]`"))?;
        let cocycle = split_top_level(list)
            .into_iter()
            .map(|t| {
                t.strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .and_then(|t| t.split(',').map(|x| x.trim().parse::<i64>().ok()).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| parse_err(t, "expected `(a,b,...)`"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SkewSpec { dual, cocycle })
    }
}

fn brackets(s: &str) -> Option<&str> {
    s.trim().strip_prefix('[')?.strip_suffix(']')
}

/// An edge of the skew product leaving the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stub {
    pub src: usize,
    pub edge: usize,
    pub target: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewProduct {
    pub graph: MultiGraph,
    /// Coordinates of each vertex.
    pub points: Vec<Vec<i64>>,
    pub stubs: Vec<Stub>,
}

fn lex_points(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut points = vec![Vec::new()];
    for &(lo, hi) in ranges {
        points = points
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    points
}

/// Vertices χ, one edge χ → χ·c(e) for every vertex and every edge e of E_n.
pub fn skew_product(s: &SkewSpec) -> Result<SkewProduct, GraphError> {
    let (ranges, dim): (Vec<(i64, i64)>, usize) = match &s.dual {
        DualGroup::Finite(moduli) => {
            if moduli.is_empty() || moduli.iter().any(|&m| m == 0 || m > i64::MAX as u64) {
                return Err(GraphError::Character { edge: 0, reason: "moduli must be positive".into() });
            }
            (moduli.iter().map(|&m| (0, m as i64 - 1)).collect(), moduli.len())
        }
        DualGroup::Lattice { dim, window } => {
            if *window < 1 {
                return Err(GraphError::Window(*window));
            }
            (vec![(-window, *window); *dim], *dim)
        }
    };
    let count = ranges.iter().try_fold(1u128, |acc, (lo, hi)| acc.checked_mul((hi - lo + 1) as u128));
    match count {
        Some(c) if c <= MAX_SKEW_VERTICES as u128 => {}
        Some(c) => return Err(GraphError::TooLarge(c)),
        None => return Err(GraphError::TooLarge(u128::MAX)),
    }
    for (e, c) in s.cocycle.iter().enumerate() {
        if c.len() != dim {
            return Err(GraphError::Character { edge: e, reason: format!("expected {dim} coordinates") });
        }
        if let DualGroup::Finite(moduli) = &s.dual {
            if c.iter().zip(moduli).any(|(&x, &m)| x < 0 || x as u64 >= m) {
                return Err(GraphError::Character { edge: e, reason: format!("{c:?} is outside the dual group") });
            }
        }
    }

    let points = lex_points(&ranges);
    let n = points.len();
    let index = |p: &[i64]| -> Option<usize> {
        let mut idx = 0usize;
        for (&x, &(lo, hi)) in p.iter().zip(&ranges) {
            if x < lo || x > hi {
                return None;
            }
            idx = idx * (hi - lo + 1) as usize + (x - lo) as usize;
        }
        Some(idx)
    };
    let mut a = vec![vec![0u64; n]; n];
    let mut stubs = Vec::new();
    for (src, p) in points.iter().enumerate() {
        for (e, c) in s.cocycle.iter().enumerate() {
            let target: Vec<i64> = match &s.dual {
                DualGroup::Finite(moduli) => {
                    p.iter().zip(c).zip(moduli).map(|((&x, &y), &m)| (x + y).rem_euclid(m as i64)).collect()
                }
                DualGroup::Lattice { .. } => p.iter().zip(c).map(|(&x, &y)| x + y).collect(),
            };
            match index(&target) {
                Some(dst) => a[dst][src] += 1,
                None => stubs.push(Stub { src, edge: e, target }),
            }
        }
    }
    let names =
        points.iter().map(|p| format!("({})", p.iter().map(i64::to_string).collect::<Vec<_>>().join(","))).collect();
    Ok(SkewProduct { graph: MultiGraph::with_names(a, names)?, points, stubs })
}

/// Dual coordinates of each row of an abelian character table: row i is
/// `χ_b(a) = Π ζ_{m_j}^{a_j b_j}` for the returned `b`.
pub fn abelian_dual_coords(r: &RepSpec) -> Result<(Vec<u64>, Vec<Vec<i64>>), GraphError> {
    let t = r.table();
    let g = t.group();
    let moduli: Vec<u64> = match GroupSpec::parse(g.spec()) {
        Ok(GroupSpec::Cyclic(n)) => vec![u64::from(n)],
        Ok(GroupSpec::Product(ns)) => ns.into_iter().map(u64::from).collect(),
        _ => return Err(GraphError::NotAbelianSpec(g.spec().to_string())),
    };
    let coords_of = |x: usize| -> Vec<i64> {
        g.label(x)
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|s| s.trim().parse::<i64>().expect("abelian labels are coordinates"))
            .collect()
    };
    let cond = t.conductor();
    let reps = t.classes().representatives();
    let elems: Vec<Vec<i64>> = reps.iter().map(|&x| coords_of(x)).collect();
    let ranges: Vec<(i64, i64)> = moduli.iter().map(|&m| (0, m as i64 - 1)).collect();
    let duals = lex_points(&ranges);
    let mut out = Vec::with_capacity(t.num_irreps());
    for i in 0..t.num_irreps() {
        let row = t.row(i);
        let found = duals.iter().find(|b| {
            elems.iter().zip(row).all(|(a, v)| {
                // exponent of ζ_cond
                let e: i64 = a
                    .iter()
                    .zip(b.iter())
                    .zip(&moduli)
                    .map(|((&aj, &bj), &m)| (aj * bj).rem_euclid(m as i64) * (cond / m) as i64)
                    .sum();
                CycloElement::zeta_pow(cond, e) == *v
            })
        });
        out.push(found.expect("every character of an abelian group is some χ_b").clone());
    }
    Ok((moduli, out))
}

/// Cocycle listing each character of `r` with its multiplicity.
pub fn skew_from_rep(r: &RepSpec) -> Result<SkewSpec, GraphError> {
    let (moduli, coords) = abelian_dual_coords(r)?;
    let cocycle =
        r.mults().iter().zip(&coords).flat_map(|(&m, b)| std::iter::repeat_n(b.clone(), m as usize)).collect();
    Ok(SkewSpec { dual: DualGroup::Finite(moduli), cocycle })
}

/// Rotation angle, as a fraction of a full turn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Angle {
    Rational(Rational64),
    /// A named irrational number.
    Irrational(String),
}

impl Angle {
    /// `p/q`, an integer, or `irr:NAME`.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let t = text.trim();
        if let Some(name) = t.strip_prefix("irr:") {
            if name.is_empty() {
                return Err(parse_err(text, "empty irrational name"));
            }
            return Ok(Angle::Irrational(name.to_string()));
        }
        parse_rational(t).map(Angle::Rational).ok_or_else(|| parse_err(text, "expected `p/q` or `irr:NAME`"))
    }
}

fn parse_rational(t: &str) -> Option<Rational64> {
    match t.split_once('/') {
        Some((p, q)) => {
            let q = q.trim().parse::<i64>().ok().filter(|&q| q != 0)?;
            Some(Rational64::new(p.trim().parse().ok()?, q))
        }
        None => t.parse::<i64>().ok().map(Rational64::from_integer),
    }
}

/// Rotation graph on 𝕋: s(z, k) = z, r(z, k) = z_k z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleGraph {
    pub angles: Vec<Angle>,
}

impl CircleGraph {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let angles = text.split(',').filter(|s| !s.trim().is_empty()).map(Angle::parse).collect::<Result<_, _>>()?;
        Ok(CircleGraph { angles })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitOrder {
    Finite(u64),
    Infinite,
}

impl Serialize for OrbitOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OrbitOrder::Finite(n) => s.serialize_u64(*n),
            OrbitOrder::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircleReport {
    pub orbit_group_order: OrbitOrder,
    pub dense: bool,
}

/// The subgroup of 𝕋 generated by the rotations.
pub fn circle_analysis(c: &CircleGraph) -> Result<CircleReport, GraphError> {
    if c.angles.iter().any(|a| matches!(a, Angle::Irrational(_))) {
        return Ok(CircleReport { orbit_group_order: OrbitOrder::Infinite, dense: true });
    }
    let mut order: u64 = 1;
    for a in &c.angles {
        if let Angle::Rational(q) = a {
            // reduce mod 1; Ratio keeps lowest terms
            let frac = q - q.floor();
            let d = *frac.denom() as u64;
            order = order.checked_mul(d / order.gcd(&d)).ok_or(GraphError::Overflow)?;
        }
    }
    Ok(CircleReport { orbit_group_order: OrbitOrder::Finite(order), dense: false })
}

/// A real frequency: a rational, or a rational multiple of a named positive irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freq {
    Rational(Rational64),
    Marked { coeff: Rational64, token: String },
}

impl Freq {
    /// `[+-]p/q`, `[+-]TOKEN` or `[+-]p/q*TOKEN`, TOKEN starting with a letter.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let t = text.trim();
        let bad = || parse_err(text, "expected `p/q`, `TOKEN` or `p/q*TOKEN`");
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest.trim()),
            None => (1, t.strip_prefix('+').unwrap_or(t).trim()),
        };
        let is_token = |s: &str| {
            s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        };
        let signed = |q: Rational64| if sign < 0 { -q } else { q };
        if let Some((c, tok)) = body.split_once('*') {
            let (c, tok) = (c.trim(), tok.trim());
            if !is_token(tok) {
                return Err(bad());
            }
            let coeff = parse_rational(c).ok_or_else(bad)?;
            return Ok(Freq::Marked { coeff: signed(coeff), token: tok.to_string() });
        }
        if is_token(body) {
            return Ok(Freq::Marked { coeff: signed(Rational64::from_integer(1)), token: body.to_string() });
        }
        parse_rational(body).map(|q| Freq::Rational(signed(q))).ok_or_else(bad)
    }

    fn coeff(&self) -> Rational64 {
        match self {
            Freq::Rational(q) => *q,
            Freq::Marked { coeff, .. } => *coeff,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    True,
    False,
    Undecided,
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Decision::True => s.serialize_bool(true),
            Decision::False => s.serialize_bool(false),
            Decision::Undecided => s.serialize_str("undecided"),
        }
    }
}

/// Whether the frequencies generate ℝ as a closed semigroup, on the decidable fragment.
pub fn semigroup_r_check(freqs: &[Freq]) -> Result<Decision, GraphError> {
    if freqs.is_empty() {
        return Err(GraphError::EmptyFrequencies);
    }
    let nonzero: Vec<&Freq> = freqs.iter().filter(|f| !f.coeff().is_zero()).collect();
    let pos = nonzero.iter().any(|f| f.coeff().is_positive());
    let neg = nonzero.iter().any(|f| f.coeff().is_negative());
    if !(pos && neg) {
        return Ok(Decision::False);
    }
    let first_token = nonzero.iter().find_map(|f| match f {
        Freq::Marked { token, .. } => Some(token),
        Freq::Rational(_) => None,
    });
    // commensurable: every frequency is a rational multiple of one common number
    let commensurable = match first_token {
        None => true,
        Some(tok) => nonzero.iter().all(|f| matches!(f, Freq::Marked { token, .. } if token == tok)),
    };
    if commensurable {
        return Ok(Decision::False);
    }
    if let [a, b] = nonzero.as_slice() {
        let irrational_ratio =
            matches!((a, b), (Freq::Rational(_), Freq::Marked { .. }) | (Freq::Marked { .. }, Freq::Rational(_)));
        if irrational_ratio {
            return Ok(Decision::True);
        }
    }
    Ok(Decision::Undecided)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn dot_multigraph(g: &MultiGraph) -> String {
    let n = g.n_vertices();
    let mut out = String::from("digraph G {\n");
    for (i, name) in g.names.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{}\"];", dot_escape(name)).unwrap();
    }
    for w in 0..n {
        for v in 0..n {
            for _ in 0..g.a[v][w] {
                writeln!(out, "  v{w} -> v{v};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn dot_corr_graph(g: &CorrGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in &g.vertices {
        let alg = if v.algebra_dim == 1 { "C".to_string() } else { format!("M_{}", v.algebra_dim) };
        writeln!(out, "  v{} [label=\"{} ({})\"];", v.index, dot_escape(&v.name), alg).unwrap();
    }
    for e in &g.edges {
        for _ in 0..e.multiplicity {
            writeln!(out, "  v{} -> v{} [label=\"M_{{{}×{}}}\"];", e.src, e.dst, e.label_rows, e.label_cols).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

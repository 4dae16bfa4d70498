//! Representations as multiplicity vectors over the irreducibles, with the
//! calculus used to build graphs: direct sum, tensor product, decomposition.

use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::chartable::CharTable;
use crate::cyclotomic::{CycloElement, CycloError};
use crate::group::{parse_cycles, split_top_level, Group, Perm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("not a character: multiplicity of irreducible {index} is {value}")]
    NotACharacter { index: usize, value: String },
    #[error("class function has {got} values, the table has {expected} classes")]
    Length { got: usize, expected: usize },
    #[error("representations are over different character tables")]
    TableMismatch,
    #[error("multiplicity overflow")]
    Overflow,
    #[error("permutation action: {0}")]
    PermAction(String),
    #[error("unknown representation name `{0}`")]
    UnknownName(String),
    #[error("cannot parse rep spec `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// A class function: one value per conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CycloElement>,
}

impl ClassFunction {
    pub fn new(values: Vec<CycloElement>) -> Self {
        ClassFunction { values }
    }

    pub fn pointwise_mul(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }
}

/// A representation up to equivalence: multiplicities of each irreducible.
#[derive(Debug, Clone)]
pub struct RepSpec {
    table: Arc<CharTable>,
    mults: Vec<u64>,
}

impl PartialEq for RepSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.mults == other.mults
    }
}

impl RepSpec {
    pub fn from_mults(table: Arc<CharTable>, mults: Vec<u64>) -> Result<Self, RepError> {
        if mults.len() != table.num_irreps() {
            return Err(RepError::Length { got: mults.len(), expected: table.num_irreps() });
        }
        Ok(RepSpec { table, mults })
    }

    pub fn table(&self) -> &Arc<CharTable> {
        &self.table
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    pub fn dim(&self) -> u64 {
        self.mults.iter().zip(self.table.dims()).map(|(m, n)| m * n).sum()
    }

    /// Σ m_i χ_i
    pub fn character(&self) -> ClassFunction {
        let r = self.table.classes().num_classes();
        let n = self.table.conductor();
        let values = (0..r)
            .map(|k| {
                self.mults.iter().enumerate().fold(CycloElement::zero(n), |acc, (i, &m)| {
                    if m == 0 {
                        acc
                    } else {
                        &acc + &(&self.table.row(i)[k] * &CycloElement::from_int(n, m))
                    }
                })
            })
            .collect();
        ClassFunction { values }
    }
}

/// Multiplicities `(1/|G|) Σ |C| chi(C) conj(χ_i(C))`, each required to be a
/// nonnegative integer.
pub fn decompose(chi: &ClassFunction, t: &Arc<CharTable>) -> Result<RepSpec, RepError> {
    let r = t.classes().num_classes();
    if chi.values.len() != r {
        return Err(RepError::Length { got: chi.values.len(), expected: r });
    }
    let mults = (0..t.num_irreps())
        .map(|i| {
            let ip = t.inner_product(&chi.values, i);
            match ip.as_integer().and_then(|m| m.to_u64()) {
                Some(m) => Ok(m),
                None => Err(RepError::NotACharacter { index: i, value: ip.to_string() }),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RepSpec { table: Arc::clone(t), mults })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepOp {
    DirectSum,
    Tensor,
}

pub fn rep_op(a: &RepSpec, b: &RepSpec, op: RepOp) -> Result<RepSpec, RepError> {
    if !Arc::ptr_eq(&a.table, &b.table) {
        return Err(RepError::TableMismatch);
    }
    match op {
        RepOp::DirectSum => {
            let mults = a
                .mults
                .iter()
                .zip(&b.mults)
                .map(|(x, y)| x.checked_add(*y).ok_or(RepError::Overflow))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RepSpec { table: Arc::clone(&a.table), mults })
        }
        RepOp::Tensor => {
            a.dim().checked_mul(b.dim()).ok_or(RepError::Overflow)?;
            let out = decompose(&a.character().pointwise_mul(&b.character()), &a.table);
            debug_assert!(out.is_ok(), "product of characters is a character");
            out
        }
    }
}

/// A permutation action of the group's generators on `degree` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermAction {
    pub images: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialRep {
    Trivial,
    Regular,
    /// The group's own defining action.
    Natural,
    Perm(PermAction),
}

/// Extends generator images to the whole group, checking that the result is a homomorphism.
fn extend_action(g: &Group, action: &PermAction) -> Result<Vec<Perm>, RepError> {
    let gens = g.generators();
    if action.images.len() != gens.len() {
        return Err(RepError::PermAction(format!(
            "{} generator images given, the group has {} generators",
            action.images.len(),
            gens.len()
        )));
    }
    let degree = action.images.first().map_or(0, Perm::degree);
    if action.images.iter().any(|p| p.degree() != degree) {
        return Err(RepError::PermAction("generator images act on different numbers of points".into()));
    }
    let mut acts: Vec<Option<Perm>> = vec![None; g.order()];
    acts[0] = Some(Perm::identity(degree));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let ax = acts[x].clone().expect("assigned before queued");
        for (gi, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            let ay = ax.compose(&action.images[gi]);
            match &acts[y] {
                Some(existing) if *existing != ay => {
                    return Err(RepError::PermAction("images are inconsistent with the group relations".into()));
                }
                Some(_) => {}
                None => {
                    acts[y] = Some(ay);
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(acts.into_iter().map(|a| a.expect("generators generate the group")).collect())
}

fn fixed_point_character(t: &CharTable, fixed: impl Fn(usize) -> usize) -> ClassFunction {
    let n = t.conductor();
    let values = t.classes().representatives().iter().map(|&x| CycloElement::from_int(n, fixed(x) as u64)).collect();
    ClassFunction { values }
}

pub fn special_reps(t: &Arc<CharTable>, which: &SpecialRep) -> Result<RepSpec, RepError> {
    let r = t.num_irreps();
    match which {
        SpecialRep::Trivial => {
            let mut mults = vec![0; r];
            mults[0] = 1;
            Ok(RepSpec { table: Arc::clone(t), mults })
        }
        SpecialRep::Regular => Ok(RepSpec { table: Arc::clone(t), mults: t.dims().to_vec() }),
        SpecialRep::Natural => {
            let g = t.group();
            decompose(&fixed_point_character(t, |x| g.natural_action(x).fixed_points()), t)
        }
        SpecialRep::Perm(action) => {
            let acts = extend_action(t.group(), action)?;
            decompose(&fixed_point_character(t, |x| acts[x].fixed_points()), t)
        }
    }
}

/// True iff every irreducible occurs, i.e. the integrated representation of C*(G) is faithful.
pub fn is_pi_injective(r: &RepSpec) -> bool {
    r.mults.iter().all(|&m| m > 0)
}

/// Parsed rep-spec expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepExpr {
    Trivial,
    Regular,
    Natural,
    /// Generator images as 1-based image lists or cycles.
    Perm(Vec<PermText>),
    Mult(Vec<u64>),
    Char(Vec<String>),
    Tensor(Box<RepExpr>, Box<RepExpr>),
    DirectSum(Box<RepExpr>, Box<RepExpr>),
    /// Reference to a representation defined elsewhere.
    Named(String),
}

fn is_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermText {
    Images(Vec<u32>),
    Cycles(Vec<Vec<u32>>),
}

impl RepExpr {
    pub fn parse(text: &str) -> Result<Self, RepError> {
        let err = |reason: &str| RepError::Parse { text: text.to_string(), reason: reason.into() };
        let s = text.trim();
        for (name, ctor) in [("tensor", 0), ("dsum", 1)] {
            if let Some(inner) = s.strip_prefix(name).map(str::trim_start).and_then(|r| r.strip_prefix('(')) {
                let inner = inner.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
                let args = split_top_level(inner);
                let [a, b] = args.as_slice() else {
                    return Err(err("expected two arguments"));
                };
                let (a, b) = (Box::new(RepExpr::parse(a)?), Box::new(RepExpr::parse(b)?));
                return Ok(if ctor == 0 { RepExpr::Tensor(a, b) } else { RepExpr::DirectSum(a, b) });
            }
        }
        match s {
            "trivial" => return Ok(RepExpr::Trivial),
            "regular" => return Ok(RepExpr::Regular),
            "perm" => return Ok(RepExpr::Natural),
            name if is_name(name) => return Ok(RepExpr::Named(name.to_string())),
            _ => {}
        }
        let (head, body) = s.split_once(':').ok_or_else(|| err("unknown rep spec"))?;
        let list =
            body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(|| err("expected `[...]`"))?;
        let items = split_top_level(list);
        match head.trim() {
            "mult" => items
                .iter()
                .map(|x| x.parse::<u64>().map_err(|_| err("multiplicities must be nonnegative integers")))
                .collect::<Result<Vec<_>, _>>()
                .map(RepExpr::Mult),
            "char" => {
                if items.iter().any(|v| v.is_empty()) {
                    return Err(err("empty character value"));
                }
                Ok(RepExpr::Char(items.iter().map(|v| v.to_string()).collect()))
            }
            "perm" => items
                .iter()
                .map(|item| {
                    if let Some(l) = item.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                        l.split(',')
                            .map(|x| x.trim().parse::<u32>().ok().filter(|&v| v >= 1))
                            .collect::<Option<Vec<_>>>()
                            .map(PermText::Images)
                            .ok_or_else(|| err("image lists hold 1-based points"))
                    } else {
                        parse_cycles(item).map(PermText::Cycles).ok_or_else(|| err("bad cycle notation"))
                    }
                })
                .collect::<Result<Vec<_>, _>>()
                .map(RepExpr::Perm),
            _ => Err(err("unknown rep spec")),
        }
    }

    pub fn eval(&self, t: &Arc<CharTable>) -> Result<RepSpec, RepError> {
        self.eval_with(t, &|_| None)
    }

    /// Evaluates with `lookup` resolving [`RepExpr::Named`].
    pub fn eval_with(&self, t: &Arc<CharTable>, lookup: &dyn Fn(&str) -> Option<RepSpec>) -> Result<RepSpec, RepError> {
        match self {
            RepExpr::Named(name) => lookup(name).ok_or_else(|| RepError::UnknownName(name.clone())),
            RepExpr::Trivial => special_reps(t, &SpecialRep::Trivial),
            RepExpr::Regular => special_reps(t, &SpecialRep::Regular),
            RepExpr::Natural => special_reps(t, &SpecialRep::Natural),
            RepExpr::Perm(gens) => {
                let degree = gens
                    .iter()
                    .map(|g| match g {
                        PermText::Images(v) => v.len(),
                        PermText::Cycles(c) => c.iter().flatten().copied().max().unwrap_or(1) as usize,
                    })
                    .max()
                    .unwrap_or(1);
                let images = gens
                    .iter()
                    .map(|g| match g {
                        PermText::Images(v) if v.len() == degree => {
                            Perm::from_images(v.iter().map(|&x| x - 1).collect())
                        }
                        PermText::Images(_) => None,
                        PermText::Cycles(c) => Perm::from_cycles(c, degree),
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| RepError::PermAction("generator images are not permutations".into()))?;
                special_reps(t, &SpecialRep::Perm(PermAction { images }))
            }
            RepExpr::Mult(m) => RepSpec::from_mults(Arc::clone(t), m.clone()),
            RepExpr::Char(vals) => {
                let values =
                    vals.iter().map(|v| CycloElement::parse(v, t.conductor())).collect::<Result<Vec<_>, _>>()?;
                decompose(&ClassFunction::new(values), t)
            }
            RepExpr::Tensor(a, b) => rep_op(&a.eval_with(t, lookup)?, &b.eval_with(t, lookup)?, RepOp::Tensor),
            RepExpr::DirectSum(a, b) => rep_op(&a.eval_with(t, lookup)?, &b.eval_with(t, lookup)?, RepOp::DirectSum),
        }
    }
}

/// Parses and evaluates a rep-spec string against a table.
pub fn parse_rep(text: &str, t: &Arc<CharTable>) -> Result<RepSpec, RepError> {
    RepExpr::parse(text)?.eval(t)
}

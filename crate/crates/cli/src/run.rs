//! Executes a job: group → table → reps → graphs → K-theory, plus the
//! skew-product and circle analyses.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use repcorr::chartable::{character_table_with, CharTable, CharTableError};
use repcorr::cpgraph::{build_d_graph, build_e_graph, pimsner_matrices, CorrGraph};
use repcorr::graphlab::{
    circle_analysis, dot_corr_graph, dot_multigraph, ktheory_matrix, semigroup_r_check, simplicity_check,
    skew_from_rep, skew_product, sources_sinks, CircleGraph, DualGroup, Freq, GraphError, MultiGraph, OrbitOrder,
    SkewSpec,
};
use repcorr::group::{conjugacy, order_cap_from_env, Group, GroupError};
use repcorr::intlinalg::{smith_normal_form, IntMatrix, KGroups};
use repcorr::par::{self, Mode};
use repcorr::rep::{is_pi_injective, RepError, RepExpr, RepSpec};

use crate::job::{JobSpec, Task};
use crate::CliError;

fn group_err(e: GroupError) -> CliError {
    CliError::Parse(e.to_string())
}

fn table_err(e: CharTableError) -> CliError {
    match e {
        CharTableError::Group(g) => group_err(g),
        CharTableError::Parse { .. } => CliError::Parse(e.to_string()),
        other => CliError::Verify(other.to_string()),
    }
}

fn rep_err(name: &str, e: RepError) -> CliError {
    let msg = format!("rep `{name}`: {e}");
    match e {
        RepError::NotACharacter { .. } | RepError::Overflow | RepError::TableMismatch => CliError::Verify(msg),
        _ => CliError::Parse(msg),
    }
}

fn graph_err(e: GraphError) -> CliError {
    match e {
        GraphError::Overflow | GraphError::Shape | GraphError::Names { .. } => CliError::Verify(e.to_string()),
        _ => CliError::Parse(e.to_string()),
    }
}

/// Everything a job produces, in every output format.
#[derive(Debug, Default)]
pub struct Outcome {
    pub report: Value,
    pub text: String,
    /// (artifact name, DOT source)
    pub dots: Vec<(String, String)>,
    pub table_document: Option<String>,
}

impl Outcome {
    pub fn dot_bundle(&self) -> String {
        self.dots.iter().map(|(name, dot)| format!("// {name}\n{dot}")).collect()
    }
}

fn k_json(k: &KGroups) -> Value {
    json!({
        "K0": k.k0_string(),
        "K1": k.k1_string(),
        "k0_free_rank": k.k0_free_rank,
        "k0_torsion": k.k0_torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "k1_rank": k.k1_rank,
    })
}

fn matrix_text(b: &[Vec<u64>]) -> String {
    b.iter().map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ")
}

fn checked_k(a: &IntMatrix, what: &str) -> Result<KGroups, CliError> {
    let snf = smith_normal_form(a);
    if !snf.verify(a) {
        return Err(CliError::Verify(format!("Smith normal form check failed for {what}")));
    }
    Ok(repcorr::intlinalg::coker_ker(a))
}

fn names(t: &CharTable, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| t.labels()[v].clone()).collect()
}

struct RepOutput {
    json: Value,
    text: String,
    dots: Vec<(String, String)>,
}

fn corr_json(g: &CorrGraph) -> Value {
    serde_json::to_value(g).expect("graph serializes")
}

fn analyze_rep(name: &str, spec: &str, r: &RepSpec, job: &JobSpec) -> Result<RepOutput, CliError> {
    let t = r.table();
    let mut out = serde_json::Map::new();
    let mut text = String::new();
    let mut dots = Vec::new();
    let w = |text: &mut String, s: String| writeln!(text, "{s}").expect("string write");

    out.insert("spec".into(), json!(spec));
    out.insert("mults".into(), json!(r.mults()));
    out.insert("dim".into(), json!(r.dim()));
    out.insert("pi_injective".into(), json!(is_pi_injective(r)));
    w(&mut text, format!("[rep {name}] {spec}"));
    let mults: Vec<String> = r.mults().iter().map(u64::to_string).collect();
    w(&mut text, format!("  mults {} (dim {})", mults.join(" "), r.dim()));

    if job.tasks.contains(&Task::Decompose) {
        let chi: Vec<String> = r.character().values.iter().map(|v| v.to_string()).collect();
        let parts: BTreeMap<String, u64> =
            t.labels().iter().cloned().zip(r.mults().iter().copied()).filter(|(_, m)| *m > 0).collect();
        out.insert("decompose".into(), json!({ "character": chi, "components": parts }));
        w(&mut text, format!("  character {}", chi.join(" | ")));
        let comps: Vec<String> =
            parts.iter().map(|(n, m)| if *m == 1 { n.clone() } else { format!("{m}*{n}") }).collect();
        w(&mut text, format!("  decomposition {}", if comps.is_empty() { "0".into() } else { comps.join(" + ") }));
    }

    if job.tasks.contains(&Task::Egraph) || job.tasks.contains(&Task::Export) {
        let g = build_e_graph(r, job.convention);
        let mg = MultiGraph::from(&g);
        let (sources, _) = sources_sinks(&mg);
        let simp = simplicity_check(&mg);
        let mut v = corr_json(&g);
        v["sources"] = json!(names(t, &sources));
        v["simplicity"] = serde_json::to_value(simp).expect("report serializes");
        out.insert("egraph".into(), v);
        w(&mut text, format!("  egraph ({}) B = {}", job.convention.as_str(), matrix_text(&g.b)));
        w(
            &mut text,
            format!("    sources: {}", if sources.is_empty() { "none".into() } else { names(t, &sources).join(", ") }),
        );
        w(&mut text, format!("    simple: {}, purely infinite simple: {}", simp.simple, simp.purely_infinite_simple));
        dots.push((format!("{name}.egraph"), dot_corr_graph(&g)));
    }

    if job.tasks.contains(&Task::Dgraph) || job.tasks.contains(&Task::Export) {
        let g = build_d_graph(r);
        let mut v = corr_json(&g);
        v["sources"] = json!(names(t, &g.sources()));
        out.insert("dgraph".into(), v);
        w(&mut text, format!("  dgraph B = {}", matrix_text(&g.b)));
        dots.push((format!("{name}.dgraph"), dot_corr_graph(&g)));
    }

    if job.tasks.contains(&Task::Ktheory) {
        let mg = MultiGraph::from(&build_e_graph(r, job.convention));
        let p = pimsner_matrices(r);
        let graph = checked_k(&ktheory_matrix(&mg), "the graph matrix")?;
        let pimsner = checked_k(&p.reduced, "the Pimsner matrix")?;
        let agree = graph == pimsner;
        out.insert(
            "ktheory".into(),
            json!({
                "convention": job.convention.as_str(),
                "graph": k_json(&graph),
                "pimsner": k_json(&pimsner),
                "pimsner_reduced": p.reduced.to_string(),
                "pimsner_columns": names(t, &p.j_cols),
                "agree": agree,
            }),
        );
        w(&mut text, format!("  ktheory graph path: {graph}"));
        w(&mut text, format!("  ktheory Pimsner path: {pimsner}"));
        if !agree {
            w(&mut text, "  warning: the two K-theory paths disagree".into());
        }
    }

    Ok(RepOutput { json: Value::Object(out), text, dots })
}

fn skew_analysis(name: &str, spec: &SkewSpec) -> Result<(Value, String, String), CliError> {
    let sp = skew_product(spec).map_err(graph_err)?;
    let k = checked_k(&ktheory_matrix(&sp.graph), "the skew product")?;
    let simp = simplicity_check(&sp.graph);
    let dual = match &spec.dual {
        DualGroup::Finite(m) => json!({ "finite": m }),
        DualGroup::Lattice { dim, window } => json!({ "lattice": dim, "window": window }),
    };
    let v = json!({
        "dual": dual,
        "cocycle": spec.cocycle,
        "vertices": sp.graph.names(),
        "A": sp.graph.adjacency(),
        "stubs": sp.stubs,
        "ktheory": k_json(&k),
        "simplicity": simp,
    });
    let mut text = String::new();
    writeln!(text, "[skew {name}] {} vertices, {} boundary stubs", sp.graph.n_vertices(), sp.stubs.len()).unwrap();
    writeln!(text, "  A = {}", matrix_text(sp.graph.adjacency())).unwrap();
    writeln!(text, "  {k}; simple: {}", simp.simple).unwrap();
    Ok((v, text, dot_multigraph(&sp.graph)))
}

pub fn run(job: &JobSpec) -> Result<Outcome, CliError> {
    let mut report = serde_json::Map::new();
    let mut text = String::new();
    let mut dots = Vec::new();
    let mut table_document = None;
    report.insert("seed".into(), json!(job.seed));
    report.insert("convention".into(), json!(job.convention.as_str()));
    report.insert("tasks".into(), json!(job.tasks.iter().map(|t| format!("{t:?}").to_lowercase()).collect::<Vec<_>>()));

    let table = match &job.group {
        Some(spec) => {
            let cap = order_cap_from_env().map_err(group_err)?;
            let g = Arc::new(Group::from_spec_with_cap(spec, cap).map_err(group_err)?);
            let cd = conjugacy(&g);
            let t = character_table_with(Arc::clone(&g), cd, job.seed, Mode::default()).map_err(table_err)?;
            t.verify().map_err(table_err)?;
            let classes: Vec<Value> = (0..t.classes().num_classes())
                .map(|k| {
                    let x = t.classes().representative(k);
                    json!({ "representative": g.label(x), "size": t.classes().size(k), "element_order": g.element_order(x) })
                })
                .collect();
            report.insert("group".into(), json!({ "spec": g.spec(), "order": g.order(), "classes": classes }));
            writeln!(text, "group {} (order {}, {} classes)", g.spec(), g.order(), t.classes().num_classes()).unwrap();
            Some(Arc::new(t))
        }
        None => None,
    };

    if let Some(t) = &table {
        if job.tasks.contains(&Task::Table) || job.tasks.contains(&Task::Export) {
            let irreps: Vec<Value> = (0..t.num_irreps())
                .map(|i| {
                    let vals: Vec<String> = t.row(i).iter().map(|v| v.to_string()).collect();
                    json!({ "name": t.labels()[i], "dim": t.dim(i), "values": vals })
                })
                .collect();
            report.insert("table".into(), json!({ "conductor": t.conductor(), "irreps": irreps }));
            let doc = t.to_document();
            if job.tasks.contains(&Task::Table) {
                text.push_str("[table]\n");
                text.push_str(&doc);
            }
            table_document = Some(doc);
        }
    }

    let mut reps: Vec<(String, String, RepSpec)> = Vec::new();
    if let Some(t) = &table {
        for (name, spec) in &job.reps {
            let expr = RepExpr::parse(spec).map_err(|e| rep_err(name, e))?;
            let lookup = |n: &str| reps.iter().find(|(m, _, _)| m == n).map(|(_, _, r)| r.clone());
            let r = expr.eval_with(t, &lookup).map_err(|e| rep_err(name, e))?;
            reps.push((name.clone(), spec.clone(), r));
        }
    }

    if job.tasks.iter().any(|t| t.needs_reps() || *t == Task::Export) && !reps.is_empty() {
        let outputs = par::try_map(Mode::default(), &reps, |(name, spec, r)| analyze_rep(name, spec, r, job))?;
        let mut rep_json = serde_json::Map::new();
        for ((name, _, _), o) in reps.iter().zip(outputs) {
            rep_json.insert(name.clone(), o.json);
            text.push_str(&o.text);
            dots.extend(o.dots);
        }
        report.insert("reps".into(), Value::Object(rep_json));
    }

    if job.tasks.contains(&Task::Skew) {
        let specs: Vec<(String, SkewSpec)> = match &job.skew {
            Some(s) => vec![("skew".into(), SkewSpec::parse(s, job.window).map_err(graph_err)?)],
            None => reps
                .iter()
                .map(|(name, _, r)| skew_from_rep(r).map(|s| (name.clone(), s)).map_err(graph_err))
                .collect::<Result<_, _>>()?,
        };
        let mut skew_json = serde_json::Map::new();
        for (name, spec) in &specs {
            let (v, t, dot) = skew_analysis(name, spec)?;
            skew_json.insert(name.clone(), v);
            text.push_str(&t);
            dots.push((format!("{name}.skew"), dot));
        }
        report.insert("skew".into(), Value::Object(skew_json));
    }

    if job.tasks.contains(&Task::Circle) {
        let mut circle = serde_json::Map::new();
        if let Some(angles) = &job.circle {
            let c = CircleGraph::parse(angles).map_err(graph_err)?;
            let rep = circle_analysis(&c).map_err(graph_err)?;
            circle.insert("angles".into(), json!(angles));
            circle.insert("orbit_group_order".into(), serde_json::to_value(rep.orbit_group_order).unwrap());
            circle.insert("dense".into(), json!(rep.dense));
            let order = match rep.orbit_group_order {
                OrbitOrder::Finite(n) => n.to_string(),
                OrbitOrder::Infinite => "infinite".into(),
            };
            writeln!(text, "[circle] {angles}: orbit group order {order}, dense: {}", rep.dense).unwrap();
        }
        if let Some(freqs) = &job.freqs {
            let f = freqs.split(',').map(Freq::parse).collect::<Result<Vec<_>, _>>().map_err(graph_err)?;
            let d = semigroup_r_check(&f).map_err(graph_err)?;
            circle.insert("semigroup".into(), json!({ "freqs": freqs, "generates_R": d }));
            writeln!(text, "[semigroup] {freqs}: generates R: {}", serde_json::to_string(&d).unwrap()).unwrap();
        }
        report.insert("circle".into(), Value::Object(circle));
    }

    Ok(Outcome { report: Value::Object(report), text, dots, table_document })
}

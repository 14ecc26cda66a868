//! Command dispatch. Every command returns a JSON result document with
//! exact rationals written as `"num/den"` strings.

use ceresa_core::abel_jacobi::aj;
use ceresa_core::ceresa::{ceresa_pointed, ceresa_unpointed, ceresa_w, CeresaResult};
use ceresa_core::graph::fundamental_cycles;
use ceresa_core::linalg::{determinant, format_rat, IntMatrix, RatMatrix};
use ceresa_core::morita::{b_group, compare_morita_ceresa, delta_matrix, n_class, n_vector};
use ceresa_core::{JacobianData, Point, PointedModel, Rat, TensorElement, TorsionOrder};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::divisor::{format_divisor, parse_divisor, parse_point};
use crate::document::ParsedGraph;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Info,
    Jacobian,
    Aj,
    Ceresa,
    CeresaUnpointed,
    Wclass,
    Torsion,
    Morita,
    Compare,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Info,
        Command::Jacobian,
        Command::Aj,
        Command::Ceresa,
        Command::CeresaUnpointed,
        Command::Wclass,
        Command::Torsion,
        Command::Morita,
        Command::Compare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Jacobian => "jacobian",
            Command::Aj => "aj",
            Command::Ceresa => "ceresa",
            Command::CeresaUnpointed => "ceresa-unpointed",
            Command::Wclass => "wclass",
            Command::Torsion => "torsion",
            Command::Morita => "morita",
            Command::Compare => "compare",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Tree edge ids of the input graph.
    pub tree: Option<Vec<String>>,
    /// Overrides the document basepoint.
    pub basepoint: Option<String>,
    pub divisor: Option<String>,
}

pub fn rat_str(x: &Rat) -> String {
    format_rat(x)
}

pub fn rats(xs: &[Rat]) -> Value {
    xs.iter().map(rat_str).collect()
}

pub fn ints(xs: &[BigInt]) -> Value {
    xs.iter().map(|x| Value::String(x.to_string())).collect()
}

fn int_rows(m: &IntMatrix) -> Value {
    (0..m.rows()).map(|r| ints(m.row(r))).collect()
}

fn rat_rows(m: &RatMatrix) -> Value {
    (0..m.rows()).map(|r| rats(m.row(r))).collect()
}

fn order(t: &TorsionOrder) -> Value {
    Value::String(t.to_string())
}

pub fn tensor(x: &TensorElement) -> Value {
    let idx = x.index();
    let (p, q) = x.degrees();
    let support: Vec<Value> =
        x.support().into_iter().map(|(i, c)| json!({ "basis": idx.label(i), "coeff": rat_str(c) })).collect();
    json!({ "degrees": [p, q], "coords": rats(x.coords()), "support": support })
}

fn class_result(r: &CeresaResult) -> Value {
    json!({
        "quotient": r.quotient.to_string(),
        "representative": tensor(&r.representative),
        "class": rats(&r.reduced_class),
        "torsion_order": order(&r.torsion_order),
        "is_zero": r.reduced_class.iter().all(num_traits::Zero::is_zero),
    })
}

struct Context {
    model: PointedModel,
    jd: JacobianData,
}

fn prepare(input: &ParsedGraph, opts: &Options, basepoint: Point) -> Result<Context, CliError> {
    let model = PointedModel::prepare(&input.graph, &basepoint, opts.tree.as_deref())?;
    let jd = JacobianData::new(&model.graph, &model.tree);
    Ok(Context { model, jd })
}

fn basepoint(input: &ParsedGraph, opts: &Options) -> Result<Point, CliError> {
    match &opts.basepoint {
        Some(text) => parse_point(&input.graph, text),
        None => Ok(input.basepoint.clone().unwrap_or(Point::Vertex(0))),
    }
}

/// Runs one command. The returned notices are meant for standard error.
pub fn run(command: Command, input: &ParsedGraph, opts: &Options) -> Result<(Value, Vec<String>), CliError> {
    let flat = if command == Command::Aj { Point::Vertex(0) } else { basepoint(input, opts)? };
    let ctx = prepare(input, opts, flat.clone())?;
    let (g, jd) = (&ctx.model.graph, &ctx.jd);
    let mut notices = Vec::new();
    if !ctx.model.contracted.is_empty() {
        notices.push(format!("contracted bridges {}", ctx.model.contracted.join(", ")));
    }
    let mut out = Map::new();
    out.insert("command".into(), command.name().into());
    out.insert("genus".into(), jd.genus().into());
    out.insert("tree".into(), json!(jd.tree().tree_edge_ids(g)));
    out.insert("cotree".into(), json!(jd.tree().cotree_edge_ids(g)));
    out.insert("contracted".into(), json!(ctx.model.contracted));
    if command != Command::Aj {
        out.insert("basepoint".into(), input.graph.point_name(&flat).into());
        out.insert("basepoint_vertex".into(), g.vertices()[ctx.model.basepoint].clone().into());
        if let Some(e) = &ctx.model.subdivided {
            out.insert("subdivided".into(), e.clone().into());
        }
    }
    let flat = ctx.model.basepoint;
    let body = match command {
        Command::Info => {
            let c = fundamental_cycles(g, jd.tree());
            let cycles: Vec<Value> = (0..c.rows())
                .map(|k| {
                    let terms: Vec<Value> = (0..c.cols())
                        .filter(|&e| !num_traits::Zero::is_zero(&c[(k, e)]))
                        .map(|e| json!({ "edge": g.edge(e).id, "coeff": c[(k, e)].to_string() }))
                        .collect();
                    Value::Array(terms)
                })
                .collect();
            json!({
                "vertices": g.vertices(),
                "edges": g.edge_ids(),
                "lengths": rats(&g.lengths()),
                "cycles": cycles,
            })
        }
        Command::Jacobian => {
            let q = jd.polarization();
            let tangents: Map<String, Value> =
                g.edges().iter().enumerate().map(|(e, edge)| (edge.id.clone(), ints(jd.tangents().row(e)))).collect();
            json!({
                "polarization": rat_rows(q),
                "determinant": rat_str(&determinant(q)),
                "tangents": tangents,
                "integral": jd.integral_polarization().is_ok(),
            })
        }
        Command::Aj => {
            let text = opts.divisor.as_deref().ok_or_else(|| CliError::Usage("aj needs --divisor".into()))?;
            let d = parse_divisor(&input.graph, text)?;
            // carry the points through the bridge contraction
            let mut moved = ceresa_core::abel_jacobi::Divisor::default();
            for (p, m) in d.terms() {
                moved.add_point(input.graph.contract_bridges(p)?.1, *m);
            }
            let r = aj(jd, &moved)?;
            json!({
                "divisor": format_divisor(&input.graph, &d),
                "representative": rats(&r.representative),
                "class": rats(&r.class),
                "torsion_order": order(&r.torsion_order),
            })
        }
        Command::Ceresa => class_result(&ceresa_pointed(jd, flat)?),
        Command::CeresaUnpointed => class_result(&ceresa_unpointed(jd)?),
        Command::Wclass => {
            let w = ceresa_w(jd, flat)?;
            json!({
                "quotient": "Q_{3,0}",
                "representative": tensor(&w.representative),
                "class": rats(&w.reduced_class),
                "nonzero": w.nonzero,
            })
        }
        Command::Torsion => {
            let pointed: Map<String, Value> = (0..g.vertex_count())
                .map(|v| Ok((g.vertices()[v].clone(), order(&ceresa_pointed(jd, v)?.torsion_order))))
                .collect::<Result<_, CliError>>()?;
            json!({
                "pointed": order(&ceresa_pointed(jd, flat)?.torsion_order),
                "pointed_by_vertex": pointed,
                "unpointed": order(&ceresa_unpointed(jd)?.torsion_order),
            })
        }
        Command::Morita => {
            let b = b_group(jd)?;
            let group = &b.group;
            json!({
                "delta": int_rows(delta_matrix(jd)?.matrix()),
                "invariant_factors": ints(group.invariant_factors()),
                "free_rank": group.free_rank(),
                "order": group.order().map(|n| n.to_string()),
                "exponent": group.exponent().map(|n| n.to_string()),
                "basis": b.labels,
                "n": ints(&n_vector(jd)?),
                "n_class": ints(&n_class(jd)?),
            })
        }
        Command::Compare => {
            let c = compare_morita_ceresa(jd)?;
            json!({
                "n_class": ints(&c.n_class),
                "phi_n": rats(&c.phi_n),
                "vbar": rats(&c.vbar),
                "equal": c.equal,
            })
        }
    };
    let Value::Object(body) = body else { unreachable!("command bodies are objects") };
    out.extend(body);
    Ok((Value::Object(out), notices))
}

/// A plain-text rendering: one `path: value` line per leaf.
pub fn summary(v: &Value) -> String {
    fn walk(path: &str, v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = xs.iter().map(scalar).collect();
                out.push(format!("{path}: [{}]", items.join(", ")));
            }
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    walk(&format!("{path}[{i}]"), x, out);
                }
            }
            _ => out.push(format!("{path}: {}", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out.join("\n") + "\n"
}

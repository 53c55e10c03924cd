use std::path::Path;

use raftkit_core::depth::{
    check_hypotheses, crossing_graph, depth_filtration, raft_valences, DepthAssignment, DepthConfig, Status,
    Verdict,
};
use raftkit_core::gog::{complete_reduce, graph_from_json, graph_to_json, validate, SelectionPolicy};
use raftkit_core::qi::{
    pattern_from_json, patterns_equivalent, rigidity_check, slope_invariant, vertex_edge_pattern,
    LinearPattern,
};
use raftkit_core::tree::{annotate_depth, build_ball, to_dot};
use raftkit_core::{Error, GraphOfGroups};
use serde_json::{json, Value};

use crate::{exit, text, Cli, Command, Failure, Format};

/// Runs the selected command, returning the rendered report and exit code.
pub fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let (value, code) = match &cli.command {
        Command::Validate { file } => cmd_validate(file)?,
        Command::Depth { file } => cmd_depth(cli, file)?,
        Command::Rafts { file } => cmd_rafts(cli, file)?,
        Command::Crossing { file, vertex } => cmd_crossing(cli, file, vertex)?,
        Command::Check { file } => cmd_check(cli, file)?,
        Command::Reduce { file, order } => return cmd_reduce(file, order),
        Command::Invariants { file, vertex } => cmd_invariants(file, vertex.as_deref())?,
        Command::Compare {
            file_a,
            file_b,
            vertex_a,
            vertex_b,
        } => cmd_compare(cli, file_a, file_b, vertex_a.as_deref(), vertex_b.as_deref())?,
        Command::Ball { file, root, dot } => {
            let (ball, value) = cmd_ball(cli, file, root.as_deref())?;
            if *dot || cli.format == Format::Dot {
                return Ok((to_dot(&ball), exit::OK));
            }
            (value, exit::OK)
        }
    };
    let mut report = json!({ "command": command_name(&cli.command), "seed": cli.seed });
    report["report"] = value;
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => text::render(&report),
        Format::Dot => {
            return Err(Failure {
                code: exit::INPUT,
                message: "--format dot is only available for `ball`".into(),
            })
        }
    };
    Ok((rendered, code))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Depth { .. } => "depth",
        Command::Rafts { .. } => "rafts",
        Command::Crossing { .. } => "crossing",
        Command::Check { .. } => "check",
        Command::Reduce { .. } => "reduce",
        Command::Invariants { .. } => "invariants",
        Command::Compare { .. } => "compare",
        Command::Ball { .. } => "ball",
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedOracle { .. } => exit::UNSUPPORTED,
        Error::WrongVertex { .. }
        | Error::WrongLevel(_)
        | Error::Underdetermined(_)
        | Error::NotLinePattern(_) => exit::NEGATIVE,
        _ => exit::INPUT,
    }
}

fn core(e: Error) -> Failure {
    Failure {
        code: error_code(&e),
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: exit::INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn parse_graph(path: &Path) -> Result<GraphOfGroups, Failure> {
    let text = read(path)?;
    graph_from_json(&text).map_err(|e| Failure {
        code: exit::INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

/// A parsed graph that also passes validation.
fn load_graph(path: &Path) -> Result<GraphOfGroups, Failure> {
    let g = parse_graph(path)?;
    let report = validate(&g);
    if !report.is_valid() {
        let lines: Vec<String> = report.violations.iter().map(|v| v.message.clone()).collect();
        return Err(Failure {
            code: exit::INPUT,
            message: format!("{}: invalid graph: {}", path.display(), lines.join("; ")),
        });
    }
    Ok(g)
}

fn config(cli: &Cli) -> DepthConfig {
    DepthConfig {
        loop_bound: cli.loop_bound as usize,
        horizon: cli.horizon.map(|h| h as usize),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cmd_validate(file: &Path) -> Result<(Value, u8), Failure> {
    let g = parse_graph(file)?;
    let report = validate(&g);
    let code = if report.is_valid() {
        exit::OK
    } else {
        exit::NEGATIVE
    };
    Ok((
        json!({ "valid": report.is_valid(), "violations": to_value(&report.violations) }),
        code,
    ))
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Finite(_) => exit::OK,
        Verdict::Infinite(_) => exit::INFINITE,
        Verdict::Unknown(_) => exit::UNKNOWN,
    }
}

fn depth(cli: &Cli, g: &GraphOfGroups) -> Result<DepthAssignment, Failure> {
    depth_filtration(g, &config(cli)).map_err(core)
}

fn cmd_depth(cli: &Cli, file: &Path) -> Result<(Value, u8), Failure> {
    let g = load_graph(file)?;
    let da = depth(cli, &g)?;
    Ok((to_value(&da), verdict_code(&da.verdict)))
}

fn cmd_rafts(cli: &Cli, file: &Path) -> Result<(Value, u8), Failure> {
    let g = load_graph(file)?;
    let da = depth(cli, &g)?;
    let valences: Vec<Value> = da
        .depth_zero_rafts()
        .iter()
        .map(|r| {
            let v: Vec<Value> = raft_valences(&g, r)
                .into_iter()
                .map(|(vertex, index)| json!({ "vertex": vertex, "valence": to_value(&index) }))
                .collect();
            json!({ "members": to_value(&r.members), "kind": to_value(&r.kind), "valences": v })
        })
        .collect();
    let value = json!({
        "verdict": to_value(&da.verdict),
        "depth_zero": valences,
        "levels": to_value(&da.levels),
    });
    Ok((value, verdict_code(&da.verdict)))
}

fn cmd_crossing(cli: &Cli, file: &Path, vertex: &str) -> Result<(Value, u8), Failure> {
    let g = load_graph(file)?;
    g.require_abelian("crossing graphs").map_err(core)?;
    let da = depth(cli, &g)?;
    let cg = crossing_graph(&g, vertex, &da).map_err(core)?;
    let code = if cg.verdict.is_ok() {
        exit::OK
    } else {
        exit::NEGATIVE
    };
    Ok((to_value(&cg), code))
}

fn cmd_check(cli: &Cli, file: &Path) -> Result<(Value, u8), Failure> {
    let g = load_graph(file)?;
    let report = check_hypotheses(&g, &config(cli)).map_err(core)?;
    let code = if report.all_pass() {
        exit::OK
    } else if report.hypotheses.iter().any(|h| h.status.is_fail()) {
        exit::NEGATIVE
    } else {
        debug_assert!(report
            .hypotheses
            .iter()
            .any(|h| matches!(h.status, Status::Unknown { .. })));
        exit::UNKNOWN
    };
    Ok((
        json!({ "all_pass": report.all_pass(), "hypotheses": to_value(&report.hypotheses) }),
        code,
    ))
}

/// The reduced graph is emitted in the input format whatever `--format` says,
/// so it can be fed back to the other commands.
fn cmd_reduce(file: &Path, order: &str) -> Result<(String, u8), Failure> {
    let g = load_graph(file)?;
    let policy: SelectionPolicy = order.parse().map_err(core)?;
    let reduced = complete_reduce(&g, &policy).map_err(core)?;
    let text = serde_json::to_string_pretty(&graph_to_json(&reduced)).expect("graphs serialize") + "\n";
    Ok((text, exit::OK))
}

/// A pattern file, or the edge pattern at `vertex` of a graph file.
fn load_pattern(path: &Path, vertex: Option<&str>) -> Result<(LinearPattern, Value), Failure> {
    let text = read(path)?;
    let is_pattern = serde_json::from_str::<Value>(&text)
        .map(|v| v.get("pattern").is_some())
        .unwrap_or(false);
    if is_pattern {
        if vertex.is_some() {
            return Err(Failure {
                code: exit::INPUT,
                message: format!("{} is a pattern file; drop the vertex option", path.display()),
            });
        }
        let p = pattern_from_json(&text).map_err(|e| Failure {
            code: exit::INPUT,
            message: format!("{}: {e}", path.display()),
        })?;
        return Ok((p, json!({ "file": path.display().to_string() })));
    }
    let g = load_graph(path)?;
    let Some(vertex) = vertex else {
        return Err(Failure {
            code: exit::INPUT,
            message: format!("{} is a graph file; name a vertex", path.display()),
        });
    };
    let vp = vertex_edge_pattern(&g, vertex).map_err(core)?;
    let source = json!({
        "file": path.display().to_string(),
        "vertex": vertex,
        "excluded": vp.excluded,
    });
    Ok((vp.pattern, source))
}

fn cmd_invariants(file: &Path, vertex: Option<&str>) -> Result<(Value, u8), Failure> {
    let (p, source) = load_pattern(file, vertex)?;
    let slopes = match slope_invariant(&p) {
        Ok(inv) => json!({ "status": "ok", "invariant": to_value(&inv), "text": inv.to_string() }),
        Err(e @ (Error::Underdetermined(_) | Error::NotLinePattern(_))) => {
            json!({ "status": "unavailable", "reason": e.to_string() })
        }
        Err(e) => return Err(core(e)),
    };
    let value = json!({
        "source": source,
        "pattern": to_value(&p),
        "dims": p.dims_sorted(),
        "slope_invariant": slopes,
        "rigidity": to_value(&rigidity_check(&p)),
    });
    Ok((value, exit::OK))
}

fn cmd_compare(
    cli: &Cli,
    a: &Path,
    b: &Path,
    vertex_a: Option<&str>,
    vertex_b: Option<&str>,
) -> Result<(Value, u8), Failure> {
    let (p, source_a) = load_pattern(a, vertex_a)?;
    let (q, source_b) = load_pattern(b, vertex_b)?;
    let eq = patterns_equivalent(&p, &q, cli.seed).map_err(core)?;
    let code = if eq.equivalent { exit::OK } else { exit::NEGATIVE };
    Ok((
        json!({ "a": source_a, "b": source_b, "result": to_value(&eq) }),
        code,
    ))
}

fn cmd_ball(cli: &Cli, file: &Path, root: Option<&str>) -> Result<(raftkit_core::TreeBall, Value), Failure> {
    let g = load_graph(file)?;
    g.require_abelian("tree balls").map_err(core)?;
    let root = match root {
        Some(r) => r.to_string(),
        None => g
            .vertices()
            .iter()
            .map(|v| v.id.clone())
            .min()
            .ok_or_else(|| core(Error::InvalidGraph(vec!["no vertices".into()])))?,
    };
    let ball = build_ball(&g, &root, cli.radius, cli.branch_cap as usize).map_err(core)?;
    // Depth labels are attached when the graph is reduced and of finite depth.
    let ball = match depth_filtration(&g, &config(cli)) {
        Ok(da) if da.verdict.is_finite() => annotate_depth(&ball, &da).map_err(core)?,
        _ => ball,
    };
    let value = to_value(&ball);
    Ok((ball, value))
}

//! Command implementations.

use std::path::{Path, PathBuf};

use serde_json::json;

use coregame::analysis::{
    bondareva_oracle, core_nonempty, equivalence_check, gamma_analysis, grand_anchor_lp,
    integrality_check, is_core_member,
};
use coregame::error::{Error, Result};
use coregame::exact::{parse_rational, vec_scale, RatMatrix, RatVector, Rational};
use coregame::families::{
    self, parse_sat_text, sat::SatInstance, WeightedGraph,
};
use coregame::game::{value_chain, Coalition};
use coregame::lp;

use crate::report::*;
use crate::schema::{load_instance, parse_allocation, InstanceFile};

pub fn cmd_analyze(path: &Path, chain: bool, equiv: bool, json: bool) -> Result<()> {
    let g = load_instance(path)?;
    let report = core_nonempty(&g)?;
    let chain_report = if chain {
        Some(value_chain(&g, &Coalition::ones(g.players()))?)
    } else {
        None
    };
    let equiv_report = if equiv { Some(equivalence_check(&g)?) } else { None };
    if json {
        let mut doc = json!({ "core": core_report_json(&report) });
        if let Some(c) = &chain_report {
            doc["chain"] = chain_json(c);
        }
        if let Some(e) = &equiv_report {
            doc["equivalence"] = equivalence_json(e);
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
    } else {
        print!("{}", core_report_text(&report));
        if let Some(c) = &chain_report {
            print!("{}", chain_text(c));
        }
        if let Some(e) = &equiv_report {
            print!("{}", equivalence_text(e));
        }
    }
    Ok(())
}

pub fn cmd_member(
    path: &Path,
    check: Option<&Path>,
    enumerate: Option<usize>,
    json: bool,
) -> Result<()> {
    let g = load_instance(path)?;

    if let Some(check_path) = check {
        let text = std::fs::read_to_string(check_path)
            .map_err(|e| Error::Parse(format!("{}: {e}", check_path.display())))?;
        let y = parse_allocation(&text)?;
        let ok = is_core_member(&g, &y)?;
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"candidate": vector_json(&y), "member": ok}))
                    .expect("valid json")
            );
        } else {
            println!("candidate {}: {}", coregame::exact::format_vector(&y), if ok { "pass" } else { "fail" });
        }
        return Ok(());
    }

    let report = core_nonempty(&g)?;
    if !report.nonempty {
        return Err(Error::EmptyCore);
    }

    if let Some(cap) = enumerate {
        let problem = grand_anchor_lp(&g)?;
        let out = lp::enumerate_optimal_dual_vertices(&problem, cap)?;
        let vertices: Vec<RatVector> = out
            .vertices
            .into_iter()
            .map(|v| {
                if g.rhs_scale == coregame::exact::rat_int(1) {
                    v
                } else {
                    vec_scale(&v, &g.rhs_scale)
                }
            })
            .collect();
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&members_json(&vertices, out.truncated))
                    .expect("valid json")
            );
        } else {
            for v in &vertices {
                println!("{}", coregame::exact::format_vector(v));
            }
            if out.truncated {
                println!("(truncated at {cap} bases)");
            }
        }
        return Ok(());
    }

    let member = report.member.as_ref().expect("nonempty core carries a member");
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({"member": vector_json(member)}))
                .expect("valid json")
        );
    } else {
        println!("member = {}", coregame::exact::format_vector(member));
    }
    Ok(())
}

pub fn cmd_gamma(path: &Path, json: bool) -> Result<()> {
    let g = load_instance(path)?;
    let report = gamma_analysis(&g)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&gamma_json(&report)).expect("valid json"));
    } else {
        print!("{}", gamma_text(&report));
    }
    Ok(())
}

pub fn cmd_oracle(path: &Path, compare: bool, json: bool) -> Result<()> {
    let g = load_instance(path)?;
    let oracle = bondareva_oracle(&g)?;
    let mut agree = None;
    if compare {
        let theorem = core_nonempty(&g)?;
        agree = Some(theorem.nonempty == oracle.nonempty);
    }
    if json {
        let mut doc = bondareva_json(&oracle);
        if let Some(a) = agree {
            doc["theorem_agrees"] = json!(a);
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
    } else {
        print!("{}", bondareva_text(&oracle));
        if let Some(a) = agree {
            println!(
                "{}",
                if a {
                    "oracle agrees with theorem path"
                } else {
                    "MISMATCH between oracle and theorem path"
                }
            );
        }
    }
    if agree == Some(false) {
        // A disagreement between the two routes is a defect, not a usage
        // problem; give it a distinct exit code.
        std::process::exit(4);
    }
    Ok(())
}

pub fn cmd_check_is(path: &Path, json: bool) -> Result<()> {
    let g = load_instance(path)?;
    let report = g.precondition_check()?;
    let direction = if g.sense.is_revenue() { "subadditive" } else { "superadditive" };
    if json {
        let mut doc = is_report_json(&report);
        doc["direction"] = json!(direction);
        println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
    } else {
        print!("{}", is_report_text(&report, direction));
    }
    Ok(())
}

pub fn cmd_equiv(path: &Path, json: bool) -> Result<()> {
    let g = load_instance(path)?;
    let report = equivalence_check(&g)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&equivalence_json(&report)).expect("valid json")
        );
    } else {
        print!("{}", equivalence_text(&report));
    }
    Ok(())
}

pub fn cmd_integrality(path: &Path, json: bool) -> Result<()> {
    let g = load_instance(path)?;
    let report = integrality_check(&g)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&integrality_json(&report)).expect("valid json")
        );
    } else {
        println!(
            "integral relaxation optimum: {}",
            if report.relax_has_integer_optimum { "exists" } else { "none" }
        );
        if let Some(p) = &report.integral_point {
            println!("point = {}", coregame::exact::format_vector(p));
        }
        println!("{}", report.converse_note);
    }
    Ok(())
}

/// Options shared by the generate families; unused fields are simply
/// ignored by families that do not need them.
pub struct GenerateOptions {
    pub mean: Option<String>,
    pub covariance: Option<String>,
    pub risk: Option<String>,
    pub complete: Option<usize>,
    pub weight: Option<String>,
    pub vertices: Option<usize>,
    pub edges: Option<String>,
    pub conflicts: Option<String>,
    pub costs: Option<String>,
    pub d0: Option<String>,
    pub prices: Option<String>,
    pub values: Option<String>,
    pub sat: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn cmd_generate(family: &str, opts: &GenerateOptions) -> Result<()> {
    let game = match family {
        "portfolio" => {
            let mean = parse_rat_list(required(&opts.mean, "--mu")?)?;
            let covariance = parse_rat_matrix(required(&opts.covariance, "--sigma")?)?;
            let risk = parse_rational(required(&opts.risk, "--risk")?)?;
            families::portfolio_game(&mean, &covariance, &risk)?
        }
        "maxcut" => {
            let weights = if let Some(n) = opts.complete {
                let w = parse_rational(opts.weight.as_deref().unwrap_or("1"))?;
                families::complete_graph_weights(n, &w)
            } else {
                let n = required_value(opts.vertices, "--vertices")?;
                let (edges, weights) = parse_edge_list(required(&opts.edges, "--edges")?)?;
                let mut m = RatMatrix::zero(n, n);
                for ((u, v), w) in edges.iter().zip(&weights) {
                    *m.get_mut(*u, *v) = w.clone();
                    *m.get_mut(*v, *u) = w.clone();
                }
                m
            };
            families::maxcut_game(&weights)?
        }
        "assortment" => {
            let prices = parse_rat_list(required(&opts.prices, "--prices")?)?;
            let values = parse_rat_list(required(&opts.values, "--values")?)?;
            families::assortment_game(&prices, &values)?
        }
        "qmatching" => {
            let n = required_value(opts.vertices, "--vertices")?;
            let (edges, weights) = parse_edge_list(required(&opts.edges, "--edges")?)?;
            let graph = WeightedGraph::new(n, edges)?;
            let m = graph.n_edges();
            let mut penalties = RatMatrix::zero(m, m);
            if let Some(spec) = &opts.conflicts {
                for (i, j) in parse_pair_list(spec)? {
                    if i >= m || j >= m {
                        return Err(Error::Parse(format!("conflict ({i},{j}) out of edge range")));
                    }
                    *penalties.get_mut(i, j) = coregame::exact::rat_int(-1);
                    *penalties.get_mut(j, i) = coregame::exact::rat_int(-1);
                }
            }
            families::quadratic_matching_game(&graph, &weights, &penalties)?
        }
        "rmatching" => {
            let n = required_value(opts.vertices, "--vertices")?;
            let (edges, profits) = parse_edge_list(required(&opts.edges, "--edges")?)?;
            let graph = WeightedGraph::new(n, edges)?;
            let costs = parse_rat_list(required(&opts.costs, "--costs")?)?;
            let offset = parse_rational(opts.d0.as_deref().unwrap_or("1"))?;
            families::ratio_matching_game(&graph, &profits, &costs, &offset)?
        }
        "sat-reduction" => {
            let sat_path = opts
                .sat
                .as_ref()
                .ok_or_else(|| Error::Parse("sat-reduction needs --sat <file>".into()))?;
            let text = std::fs::read_to_string(sat_path)
                .map_err(|e| Error::Parse(format!("{}: {e}", sat_path.display())))?;
            let sat: SatInstance = parse_sat_text(&text)?;
            let (_, game) = families::conflict_matching_game(&sat)?;
            game
        }
        other => return Err(Error::Parse(format!("unknown family {other:?}"))),
    };

    let file = InstanceFile::from_game(&game)?;
    let text = serde_json::to_string_pretty(&file).expect("valid json");
    match &opts.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::Parse(format!("missing {flag}")))
}

fn required_value<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("missing {flag}")))
}

pub fn parse_rat_list(text: &str) -> Result<RatVector> {
    text.split(',')
        .map(|t| parse_rational(t.trim()))
        .collect()
}

pub fn parse_rat_matrix(text: &str) -> Result<RatMatrix> {
    let rows: Vec<RatVector> = text
        .split(';')
        .map(parse_rat_list)
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(RatMatrix::from_rows(rows))
}

/// `"0-1:3,1-2:1/2"` into edge endpoints and weights.
pub fn parse_edge_list(text: &str) -> Result<(Vec<(usize, usize)>, Vec<Rational>)> {
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (ends, weight) = match part.split_once(':') {
            Some((e, w)) => (e, parse_rational(w)?),
            None => (part, coregame::exact::rat_int(1)),
        };
        let (u, v) = ends
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("bad edge {part:?}")))?;
        let u: usize = u.trim().parse().map_err(|_| Error::Parse(format!("bad vertex in {part:?}")))?;
        let v: usize = v.trim().parse().map_err(|_| Error::Parse(format!("bad vertex in {part:?}")))?;
        edges.push((u, v));
        weights.push(weight);
    }
    Ok((edges, weights))
}

/// `"0-1;2-3"` into index pairs.
pub fn parse_pair_list(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(';')
        .map(|part| {
            let part = part.trim();
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad pair {part:?}")))?;
            let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad index in {part:?}")))?;
            let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad index in {part:?}")))?;
            Ok((a, b))
        })
        .collect()
}

//! JSON and plain-text renderings of analysis reports.

use serde_json::{json, Value};

use coregame::analysis::{
    BondarevaReport, CoreReport, EquivalenceReport, GammaReport, IntegralityReport,
};
use coregame::exact::{format_rational, format_vector, RatVector, Rational};
use coregame::game::ValueChain;
use coregame::objective::IsReport;

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn core_report_json(r: &CoreReport) -> Value {
    json!({
        "nonempty": r.nonempty,
        "nu_grand": rational_json(&r.nu_grand),
        "anchor_grand": rational_json(&r.anchor_grand),
        "member": r.member.as_ref().map(|m| vector_json(m)),
        "gamma_min": r.gamma_min.as_ref().map(rational_json),
        "theorem": r.theorem_used,
        "notes": r.notes,
    })
}

pub fn core_report_text(r: &CoreReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("nu(grand)     = {}\n", format_rational(&r.nu_grand)));
    out.push_str(&format!("anchor(grand) = {}\n", format_rational(&r.anchor_grand)));
    if r.nonempty {
        out.push_str("core: NONEMPTY (grand value matches the relaxation)\n");
        if let Some(m) = &r.member {
            out.push_str(&format!("member        = {}\n", format_vector(m)));
        }
    } else {
        out.push_str("core: EMPTY (grand value differs from the relaxation)\n");
    }
    if let Some(g) = &r.gamma_min {
        out.push_str(&format!("gamma_min     = {}\n", format_rational(g)));
    }
    out.push_str(&format!("theorem path  = {}\n", r.theorem_used));
    for note in &r.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

pub fn chain_json(c: &ValueChain) -> Value {
    json!({
        "anchor": rational_json(&c.anchor),
        "upper": rational_json(&c.upper),
        "original": rational_json(&c.original),
        "lower": rational_json(&c.lower),
    })
}

pub fn chain_text(c: &ValueChain) -> String {
    format!(
        "value chain   = anchor {} >= upper {} >= original {} >= lower {}\n",
        format_rational(&c.anchor),
        format_rational(&c.upper),
        format_rational(&c.original),
        format_rational(&c.lower)
    )
}

pub fn equivalence_json(e: &EquivalenceReport) -> Value {
    let (a, b, c) = e.verdicts();
    json!({
        "chain": chain_json(&e.chain),
        "original_matches_anchor": e.original_matches_anchor,
        "upper_matches_anchor": e.upper_matches_anchor,
        "optimal_extension_point_exists": e.optimal_extension_point_exists,
        "lower_matches_anchor": e.lower_matches_anchor,
        "verdicts": [a, b, c],
        "agree": e.agree,
    })
}

pub fn equivalence_text(e: &EquivalenceReport) -> String {
    let (a, b, c) = e.verdicts();
    let mut out = chain_text(&e.chain);
    out.push_str(&format!(
        "upper test    = value match {} / extension-point optimizer {}\n",
        e.upper_matches_anchor, e.optimal_extension_point_exists
    ));
    out.push_str(&format!(
        "verdicts      = anchor {a} | upper {b} | lower {c} (agree: {})\n",
        e.agree
    ));
    out
}

pub fn bondareva_json(r: &BondarevaReport) -> Value {
    let values: Value = r
        .coalition_values
        .iter()
        .map(|(w, v)| (w.to_string(), rational_json(v)))
        .collect::<serde_json::Map<String, Value>>()
        .into();
    json!({
        "coalition_values": values,
        "skipped": r.skipped.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "lp_value": rational_json(&r.lp_value),
        "nonempty": r.nonempty,
        "core_member": r.core_member.as_ref().map(|m| vector_json(m)),
    })
}

pub fn bondareva_text(r: &BondarevaReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "coalitions evaluated = {} (skipped {})\n",
        r.coalition_values.len(),
        r.skipped.len()
    ));
    out.push_str(&format!("allocation optimum   = {}\n", format_rational(&r.lp_value)));
    out.push_str(&format!(
        "core: {}\n",
        if r.nonempty { "NONEMPTY" } else { "EMPTY" }
    ));
    if let Some(m) = &r.core_member {
        out.push_str(&format!("member               = {}\n", format_vector(m)));
    }
    out
}

pub fn gamma_json(g: &GammaReport) -> Value {
    json!({
        "gamma_min": rational_json(&g.gamma_min),
        "member": vector_json(&g.member),
    })
}

pub fn gamma_text(g: &GammaReport) -> String {
    format!(
        "gamma_min = {}\nmember    = {}\n",
        format_rational(&g.gamma_min),
        format_vector(&g.member)
    )
}

pub fn integrality_json(r: &IntegralityReport) -> Value {
    json!({
        "relax_has_integer_optimum": r.relax_has_integer_optimum,
        "integral_point": r.integral_point.as_ref().map(|p| vector_json(p)),
        "converse_note": r.converse_note,
    })
}

pub fn is_report_json(r: &IsReport) -> Value {
    json!({
        "holds": r.holds,
        "witness": r.witness.as_ref().map(|w| json!({
            "point": vector_json(&w.point),
            "coalition": w.coalition.as_ref().map(|c| c.to_string()),
            "objective_value": rational_json(&w.objective_value),
            "relaxation_value": rational_json(&w.relaxation_value),
        })),
    })
}

pub fn is_report_text(r: &IsReport, direction: &str) -> String {
    if r.holds {
        format!("objective is individually {direction}\n")
    } else {
        let w = r.witness.as_ref().expect("failed check carries a witness");
        format!(
            "objective is NOT individually {direction}: {}\n",
            w.describe()
        )
    }
}

pub fn members_json(vertices: &[RatVector], truncated: bool) -> Value {
    json!({
        "vertices": vertices.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
        "truncated": truncated,
    })
}

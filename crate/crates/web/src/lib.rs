//! Browser bindings. Each exported function returns a JSON string that the
//! static page in `www/` renders; errors come back as thrown strings.
//!
//! The `*_json` functions hold the logic so they can be tested natively.

use knot818::embedding::{phase_in_pi, site_positions, DEFAULT_POINTS_PER_SLOT};
use knot818::{
    alexander_from_braid, annular_embed, canonical_818, closure_diagram, defect_report,
    ensemble_totals, mirror_table, parse_braid_word, site_totals, traverse, winding_phase, writhe,
    BraidWord, Direction, EnsembleKind, SiteLabel, StartSpec, VertexRule, VisitRole,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn braid_from(text: &str, strands: usize) -> Result<BraidWord, String> {
    if text.trim().is_empty() {
        return Ok(BraidWord::knot_818());
    }
    parse_braid_word(text, strands).map_err(|e| e.to_string())
}

/// Invariants plus everything needed to draw the closure: the polyline and
/// the position of every labelled site.
pub fn knot_json(braid_text: &str, strands: usize) -> Result<String, String> {
    let braid = braid_from(braid_text, strands)?;
    let diagram = closure_diagram(&braid, VertexRule::Auto).map_err(|e| e.to_string())?;
    let delta = alexander_from_braid(&braid).map_err(|e| e.to_string())?;
    let radii: Vec<f64> = (1..=braid.strands()).map(|r| r as f64).collect();
    let embedding =
        annular_embed(&braid, &radii, DEFAULT_POINTS_PER_SLOT).map_err(|e| e.to_string())?;
    let phase = winding_phase(&embedding).map_err(|e| e.to_string())?;
    let det = delta.evaluate_int(-1).map_err(|e| e.to_string())?;
    let sites = site_positions(&braid, &diagram, &radii).map_err(|e| e.to_string())?;
    let signs: Vec<Value> = diagram
        .crossings
        .iter()
        .map(|c| json!({"site": c.site.to_string(), "sign": c.sign}))
        .collect();
    let out = json!({
        "alexander": delta.to_string(),
        "writhe": writhe(&diagram.crossings),
        "phase": phase,
        "phase_pi": phase_in_pi(phase, 1e-9),
        "determinant": det.numer().magnitude().to_string(),
        "strands": braid.strands(),
        "points": embedding.polyline().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
        "sites": sites.iter().map(|(s, p)| json!({"site": s.to_string(), "x": p.x, "y": p.y})).collect::<Vec<_>>(),
        "crossings": signs,
    });
    Ok(out.to_string())
}

fn spec_from(site: &str, direction: &str, role: &str) -> Result<StartSpec, String> {
    let mut chars = site.trim().chars();
    let label = match (chars.next().and_then(SiteLabel::from_letter), chars.next()) {
        (Some(l), None) => l,
        _ => return Err(format!("unknown site {site:?}")),
    };
    let direction: Direction = direction
        .parse()
        .map_err(|e: knot818::traversal::TraversalError| e.to_string())?;
    let role = match role.trim() {
        "" => None,
        r => Some(VisitRole::from_name(r).ok_or_else(|| format!("unknown role {r:?}"))?),
    };
    StartSpec::new(label, direction, role).map_err(|e| e.to_string())
}

/// Traversal table of the 8_18 diagram as `[{site, role, value}]`, ordered
/// by value.
pub fn traversal_json(
    site: &str,
    direction: &str,
    role: &str,
    mirrored: bool,
) -> Result<String, String> {
    let spec = spec_from(site, direction, role)?;
    let mut table = traverse(&canonical_818(), &spec).map_err(|e| e.to_string())?;
    if mirrored {
        table = mirror_table(&table);
    }
    let mut rows = Vec::new();
    for s in table.values().keys() {
        for r in [VisitRole::Through, VisitRole::Over, VisitRole::Under] {
            if let Some(v) = table.value(*s, r) {
                rows.push((v, s.to_string(), r.name()));
            }
        }
    }
    rows.sort();
    let rows: Vec<Value> = rows
        .into_iter()
        .map(|(v, s, r)| json!({"site": s, "role": r, "value": v}))
        .collect();
    Ok(Value::Array(rows).to_string())
}

/// Defect report for `reps10`, `all40`, `with_mirrors`, or a single state
/// written as `SITE,DIR[,ROLE]`.
pub fn analysis_json(choice: &str) -> Result<String, String> {
    let word = canonical_818();
    let allocation = if choice.contains(',') {
        let parts: Vec<&str> = choice.split(',').map(str::trim).collect();
        let spec = match parts.as_slice() {
            [s, d] => spec_from(s, d, "")?,
            [s, d, r] => spec_from(s, d, r)?,
            _ => return Err(format!("bad state {choice:?}")),
        };
        let table = traverse(&word, &spec).map_err(|e| e.to_string())?;
        site_totals(&table, spec.to_string())
    } else {
        let kind: EnsembleKind = choice
            .parse()
            .map_err(|e: knot818::traversal::TraversalError| e.to_string())?;
        let states = kind.build(&word).map_err(|e| e.to_string())?;
        ensemble_totals(&states, kind.name()).map_err(|e| e.to_string())?
    };
    let report = defect_report(&allocation).map_err(|e| e.to_string())?;
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|c| {
            json!({
                "class": c.class.name(),
                "totals": c.totals.iter().map(|(l, t)| json!({"site": l.to_string(), "total": t})).collect::<Vec<_>>(),
                "mean": c.mean.to_string(),
                "max_deviation": c.max_deviation.to_string(),
                "mismatch": c.mismatch,
            })
        })
        .collect();
    Ok(json!({"source": report.source, "states": report.states, "classes": classes}).to_string())
}

#[wasm_bindgen]
pub fn knot(braid_text: &str, strands: usize) -> Result<String, JsError> {
    knot_json(braid_text, strands).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn traversal(
    site: &str,
    direction: &str,
    role: &str,
    mirrored: bool,
) -> Result<String, JsError> {
    traversal_json(site, direction, role, mirrored).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analysis(choice: &str) -> Result<String, JsError> {
    analysis_json(choice).map_err(|e| JsError::new(&e))
}

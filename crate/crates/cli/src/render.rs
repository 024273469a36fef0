use serde_json::{json, Value};

use rhoforms::checks::Outcome;
use rhoforms::{FieldValuedForm, Form, NaturalityReport, OmegaDerivation};

pub fn terms(w: &Form) -> Vec<Value> {
    let pres = w.space().presentation();
    w.terms()
        .map(|(t, c)| {
            json!({
                "coeff": c.to_string(),
                "monomial": pres.format_monomial(t.coefficient()),
                "dslots": t.dslots().iter().map(|m| pres.format_monomial(m)).collect::<Vec<_>>(),
            })
        })
        .collect()
}

pub fn form(w: &Form) -> Value {
    let kind = if w.terms().all(|(t, _)| t.degree() == 0) && !w.is_zero() { "element" } else { "form" };
    json!({ "kind": kind, "text": w.to_string(), "terms": terms(w) })
}

pub fn element(w: &Form) -> Value {
    json!({ "kind": "element", "text": w.to_string(), "terms": terms(w) })
}

/// Values on `d(x_i)`, flattened into `terms` tagged with `on`.
pub fn fvform(k: &FieldValuedForm) -> Value {
    let names = k.space().presentation().generator_names();
    let flat: Vec<Value> = names
        .iter()
        .zip(k.values())
        .flat_map(|(name, v)| {
            terms(v).into_iter().map(move |mut t| {
                t["on"] = json!(format!("d({name})"));
                t
            })
        })
        .collect();
    json!({
        "kind": "fvform",
        "text": k.to_string(),
        "target_degree": k.target_degree(),
        "grade": k.grade().coords(),
        "terms": flat,
    })
}

pub fn omega_derivation(d: &OmegaDerivation) -> Value {
    let names = d.space().presentation().generator_names();
    let mut flat = vec![];
    for (prefix, values) in [("", d.on_generators()), ("d", d.on_differentials())] {
        for (name, v) in names.iter().zip(values) {
            let on = if prefix.is_empty() { name.clone() } else { format!("d({name})") };
            for mut t in terms(v) {
                t["on"] = json!(on);
                flat.push(t);
            }
        }
    }
    json!({
        "kind": "omega-derivation",
        "text": d.to_string(),
        "degree": d.degree().degree,
        "grade": d.degree().grade.coords(),
        "terms": flat,
    })
}

pub fn naturality(r: &NaturalityReport) -> Value {
    let items: Vec<Value> = r
        .items
        .iter()
        .map(|i| json!({ "item": i.item, "statement": i.statement, "passed": i.passed, "witness": i.witness }))
        .collect();
    json!({ "kind": "report", "related": r.related, "items": items, "terms": [] })
}

pub fn suites(outcomes: &[Outcome]) -> Value {
    let items: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "suite": o.suite, "seed": o.seed, "cases": o.cases, "passed": o.passed(), "failures": o.failures }))
        .collect();
    json!({ "kind": "report", "suites": items, "terms": [] })
}

//! JSON readers and writers for the on-disk formats: complexes, maps,
//! covers, bundles, presentations, and fact files.
//!
//! Every function here is a pure string transform; callers own the file
//! handling. Parsers reject unknown keys so typos surface as errors
//! instead of silently ignored fields. Renders are deterministic:
//! pretty-printed JSON with sorted keys and a trailing newline, except
//! fact files, which hold one compact JSON object per line.
//!
//! Map and bundle files embed their complexes rather than referencing
//! them by name, so a single file is enough to rebuild the objects.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::budget::Budget;
use crate::certify::{FactStore, Provenance, Statement, Witness};
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::covers::VertexCover;
use crate::error::{Error, Result};
use crate::fibration::{Bundle, BundleKind};
use crate::pi1::{GroupPresentation, Word};

fn bad(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("{what}: invalid JSON: {e}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("{what} is not a JSON object")))
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    for key in m.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(bad(format!("{what}: unknown key {key:?}")));
        }
    }
    Ok(())
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| bad(format!("{what}: missing key {key:?}")))
}

fn str_field(m: &Map<String, Value>, key: &str, what: &str) -> Result<String> {
    field(m, key, what)?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| bad(format!("{what}: {key} must be a string")))
}

fn usize_field(m: &Map<String, Value>, key: &str, what: &str) -> Result<usize> {
    field(m, key, what)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("{what}: {key} must be a non-negative integer")))
}

fn vertex_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?;
    arr.iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| bad(format!("{what} holds a non-vertex entry {x}")))
        })
        .collect()
}

fn vertex_lists(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| vertex_list(row, &format!("{what}[{i}]")))
        .collect()
}

fn finish(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON rendering cannot fail");
    s.push('\n');
    s
}

/// Reads a complex from `{"name", "vertex_count", "maximal_simplices"}`.
///
/// The stored vertex count is a cross-check against the count implied by
/// the simplices; a mismatch is rejected rather than repaired. Isolated
/// vertices are listed as singleton maximal simplices.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let value = parse_json(text, "complex file")?;
    complex_from_value(&value, "complex file")
}

fn complex_from_value(value: &Value, what: &str) -> Result<SimplicialComplex> {
    let m = as_object(value, what)?;
    check_keys(m, &["name", "vertex_count", "maximal_simplices"], what)?;
    let name = str_field(m, "name", what)?;
    let declared = usize_field(m, "vertex_count", what)?;
    let maximal = vertex_lists(
        field(m, "maximal_simplices", what)?,
        &format!("{what}: maximal_simplices"),
    )?;
    let x = SimplicialComplex::build(name, &maximal)?;
    if x.vertex_count() != declared {
        return Err(bad(format!(
            "{what}: vertex_count {declared} does not match the {} vertices implied by the simplices",
            x.vertex_count()
        )));
    }
    Ok(x)
}

pub fn render_complex(x: &SimplicialComplex) -> String {
    finish(complex_to_value(x))
}

fn complex_to_value(x: &SimplicialComplex) -> Value {
    json!({
        "name": x.name(),
        "vertex_count": x.vertex_count(),
        "maximal_simplices": x.maximal_simplices(),
    })
}

/// Reads a map file with embedded source and target complexes and a
/// vertex table, validating simplexwise linearity on the way in.
pub fn parse_map(text: &str) -> Result<(SimplicialComplex, SimplicialComplex, SimplicialMap)> {
    let value = parse_json(text, "map file")?;
    let m = as_object(&value, "map file")?;
    check_keys(m, &["source", "target", "vertex_map"], "map file")?;
    let src = complex_from_value(field(m, "source", "map file")?, "map file: source")?;
    let tgt = complex_from_value(field(m, "target", "map file")?, "map file: target")?;
    let vmap = vertex_list(field(m, "vertex_map", "map file")?, "map file: vertex_map")?;
    let map = SimplicialMap::new(&src, &tgt, vmap)?;
    Ok((src, tgt, map))
}

pub fn render_map(
    src: &SimplicialComplex,
    tgt: &SimplicialComplex,
    map: &SimplicialMap,
) -> Result<String> {
    map.validate(src, tgt)?;
    Ok(finish(json!({
        "source": complex_to_value(src),
        "target": complex_to_value(tgt),
        "vertex_map": map.vertex_map,
    })))
}

/// Reads a cover from `{"complex", "pieces", "partition"}`. The partition
/// flag is advisory render output; validators recompute it from the
/// complex, so it is type-checked and discarded here.
pub fn parse_cover(text: &str) -> Result<VertexCover> {
    let value = parse_json(text, "cover file")?;
    let m = as_object(&value, "cover file")?;
    check_keys(m, &["complex", "pieces", "partition"], "cover file")?;
    if let Some(flag) = m.get("partition") {
        if !flag.is_boolean() {
            return Err(bad("cover file: partition must be a boolean"));
        }
    }
    let name = str_field(m, "complex", "cover file")?;
    let pieces = vertex_lists(field(m, "pieces", "cover file")?, "cover file: pieces")?;
    VertexCover::new(name, pieces)
}

pub fn render_cover(cover: &VertexCover, x: &SimplicialComplex) -> Result<String> {
    if cover.complex != x.name() {
        return Err(bad(format!(
            "cover names complex {:?} but was rendered against {:?}",
            cover.complex,
            x.name()
        )));
    }
    Ok(finish(json!({
        "complex": cover.complex,
        "pieces": cover.pieces,
        "partition": cover.is_partition(x),
    })))
}

/// Reads a bundle file and rebuilds the bundle from its ingredients.
///
/// Products are `{"kind": "product", "factors": [fibre, base]}`; mapping
/// tori are `{"kind": "mapping_torus", "fibre": ..., "automorphism":
/// [...]}`. The total space is always reconstructed, never trusted from
/// disk; an optional `name` renames it, so a file can call its total
/// space "torus" instead of the generated "product(circle3,circle3)".
pub fn parse_bundle(text: &str) -> Result<Bundle> {
    let value = parse_json(text, "bundle file")?;
    let m = as_object(&value, "bundle file")?;
    let kind = str_field(m, "kind", "bundle file")?;
    let mut bundle = match kind.as_str() {
        "product" => {
            check_keys(m, &["kind", "factors", "name"], "bundle file")?;
            let factors = field(m, "factors", "bundle file")?
                .as_array()
                .ok_or_else(|| bad("bundle file: factors must be an array"))?;
            if factors.len() != 2 {
                return Err(bad(format!(
                    "bundle file: a product needs exactly two factors, got {}",
                    factors.len()
                )));
            }
            let fibre = complex_from_value(&factors[0], "bundle file: factors[0]")?;
            let base = complex_from_value(&factors[1], "bundle file: factors[1]")?;
            Bundle::product(&fibre, &base)?
        }
        "mapping_torus" => {
            check_keys(m, &["kind", "fibre", "automorphism", "name"], "bundle file")?;
            let fibre = complex_from_value(field(m, "fibre", "bundle file")?, "bundle file: fibre")?;
            let auto = vertex_list(
                field(m, "automorphism", "bundle file")?,
                "bundle file: automorphism",
            )?;
            let g = SimplicialMap::new(&fibre, &fibre, auto)?;
            Bundle::mapping_torus(&fibre, &g)?
        }
        other => return Err(bad(format!("bundle file: unknown kind {other:?}"))),
    };
    if m.contains_key("name") {
        rename_total(&mut bundle, &str_field(m, "name", "bundle file")?);
    }
    Ok(bundle)
}

/// Renames the total space, keeping the projection consistent.
pub fn rename_total(bundle: &mut Bundle, name: &str) {
    bundle.total.rename(name);
    bundle.projection.source = name.to_string();
}

pub fn render_bundle(bundle: &Bundle) -> Result<String> {
    match bundle.kind {
        BundleKind::Product => Ok(finish(json!({
            "kind": "product",
            "name": bundle.total.name(),
            "factors": [complex_to_value(&bundle.fibre), complex_to_value(&bundle.base)],
        }))),
        BundleKind::MappingTorus => {
            let g = bundle
                .monodromy
                .as_ref()
                .ok_or_else(|| bad("mapping torus bundle lacks its gluing automorphism"))?;
            Ok(finish(json!({
                "kind": "mapping_torus",
                "name": bundle.total.name(),
                "fibre": complex_to_value(&bundle.fibre),
                "automorphism": g.vertex_map,
            })))
        }
    }
}

/// Reads a presentation from `{"generators", "relators"}`, with relators
/// as arrays of nonzero signed letters.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let value = parse_json(text, "presentation file")?;
    let m = as_object(&value, "presentation file")?;
    check_keys(m, &["generators", "relators"], "presentation file")?;
    let generators = usize_field(m, "generators", "presentation file")?;
    let rows = field(m, "relators", "presentation file")?
        .as_array()
        .ok_or_else(|| bad("presentation file: relators must be an array"))?;
    let mut relators: Vec<Word> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let word = row.as_array().ok_or_else(|| {
            bad(format!("presentation file: relators[{i}] must be an array"))
        })?;
        let mut letters = Vec::with_capacity(word.len());
        for x in word {
            let l = x.as_i64().and_then(|n| i32::try_from(n).ok()).ok_or_else(|| {
                bad(format!(
                    "presentation file: relators[{i}] holds a non-letter entry {x}"
                ))
            })?;
            letters.push(l);
        }
        relators.push(letters);
    }
    GroupPresentation::new(generators, relators)
}

pub fn render_presentation(p: &GroupPresentation) -> String {
    finish(json!({
        "generators": p.generator_count,
        "relators": p.relators,
    }))
}

/// Loads fact lines into the store. A line either registers a complex,
/// `{"register": <complex>}`, or asserts a fact: an object with a
/// `statement` in the canonical text form and a `provenance` that is
/// either an axiom with a citation or a computed fact with a witness.
/// Registrations make the file self-sufficient: cover witnesses are
/// validated against complexes registered on earlier lines or already in
/// the store. Derived lines are rejected; derivations are replayed by
/// saturation, never trusted from disk. Blank lines are skipped. Returns
/// the number of facts loaded, not counting registrations; the first
/// violation aborts the load with its line number.
pub fn load_facts(text: &str, store: &mut FactStore, budget: &Budget) -> Result<usize> {
    let mut loaded = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let counted = load_fact_line(line, store, budget)
            .map_err(|e| bad(format!("facts line {}: {e}", i + 1)))?;
        if counted {
            loaded += 1;
        }
    }
    Ok(loaded)
}

fn load_fact_line(line: &str, store: &mut FactStore, budget: &Budget) -> Result<bool> {
    let value: Value =
        serde_json::from_str(line).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let m = as_object(&value, "fact")?;
    if m.contains_key("register") {
        check_keys(m, &["register"], "registration")?;
        let x = complex_from_value(field(m, "register", "registration")?, "registration")?;
        store.register_complex(&x)?;
        return Ok(false);
    }
    check_keys(m, &["statement", "provenance"], "fact")?;
    let statement = Statement::from_str(&str_field(m, "statement", "fact")?)?;
    let p = as_object(field(m, "provenance", "fact")?, "fact provenance")?;
    let kind = str_field(p, "kind", "fact provenance")?;
    match kind.as_str() {
        "axiom" => {
            check_keys(p, &["kind", "citation"], "fact provenance")?;
            let citation = str_field(p, "citation", "fact provenance")?;
            store.assert_axiom(statement, &citation)?;
        }
        "computed" => {
            check_keys(p, &["kind", "witness"], "fact provenance")?;
            let witness = witness_from_value(field(p, "witness", "fact provenance")?)?;
            store.assert_computed(statement, witness, budget)?;
        }
        "derived" => {
            return Err(bad(
                "derived facts are replayed by saturation, not loaded; keep only axiom and computed lines",
            ));
        }
        other => return Err(bad(format!("unknown provenance kind {other:?}"))),
    }
    Ok(true)
}

fn witness_from_value(v: &Value) -> Result<Witness> {
    let m = as_object(v, "witness")?;
    if let Some(note) = m.get("note") {
        check_keys(m, &["note"], "witness")?;
        let note = note
            .as_str()
            .ok_or_else(|| bad("witness note must be a string"))?;
        return Ok(Witness::Note(note.to_string()));
    }
    if let Some(cover) = m.get("cover") {
        check_keys(m, &["cover"], "witness")?;
        let c = as_object(cover, "witness cover")?;
        check_keys(c, &["complex", "pieces"], "witness cover")?;
        let name = str_field(c, "complex", "witness cover")?;
        let pieces = vertex_lists(field(c, "pieces", "witness cover")?, "witness cover pieces")?;
        return Ok(Witness::Cover(VertexCover::new(name, pieces)?));
    }
    Err(bad("witness must hold either a note or a cover"))
}

/// Renders the store as one compact JSON object per line: registrations
/// for its complexes first, then axiom and computed facts in assertion
/// order. Derived facts are omitted; saturation reconstructs them.
pub fn render_facts(store: &FactStore) -> String {
    let mut out = String::new();
    for x in store.complexes().values() {
        let line = json!({"register": complex_to_value(x)});
        out.push_str(&serde_json::to_string(&line).expect("JSON rendering cannot fail"));
        out.push('\n');
    }
    for entry in store.facts() {
        let provenance = match &entry.provenance {
            Provenance::Axiom { citation } => json!({"kind": "axiom", "citation": citation}),
            Provenance::Computed { witness } => {
                json!({"kind": "computed", "witness": witness_to_value(witness)})
            }
            Provenance::Derived { .. } => continue,
        };
        let line = json!({
            "statement": entry.statement.to_string(),
            "provenance": provenance,
        });
        out.push_str(&serde_json::to_string(&line).expect("JSON rendering cannot fail"));
        out.push('\n');
    }
    out
}

fn witness_to_value(w: &Witness) -> Value {
    match w {
        Witness::Note(note) => json!({"note": note}),
        Witness::Cover(cover) => json!({
            "cover": {"complex": cover.complex, "pieces": cover.pieces}
        }),
    }
}

#[cfg(test)]
mod tests;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use nimrep_core::algebra::admissible_base_points;
use nimrep_core::classify::{
    brute_force_irreducible, brute_force_nimreps_with, canonical_form, group_ring_nimreps, neargroup_brute,
    neargroup_one_orbit, neargroup_to_nimrep, neargroup_two_orbit, su2half_admissible, BruteOptions,
};
use nimrep_core::fusion::{family_ring, FusionRing};
use nimrep_core::groups::builtin_group;
use nimrep_core::json::{self, JsonError};
use nimrep_core::modular::{
    catalog, catalog_entry, catalog_nimreps, conjecture_report, enumerate_invariants, MatchReport, ModularData,
};
use nimrep_core::nimrep::{are_equivalent, NimRep};
use nimrep_core::par::map_collect;

use crate::{ClassifyFamily, Failure, Format};

type CmdResult = Result<(), Failure>;

fn validation(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn emit(text: &str, out: Option<&Path>) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(v: &Value, out: Option<&Path>) -> CmdResult {
    let mut text = serde_json::to_string_pretty(v).expect("values serialize");
    text.push('\n');
    emit(&text, out)
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| validation(format!("{}: {e}", path.display())))
}

/// A ring from a family spec, or from a ring JSON file if `spec` names one.
fn load_ring(spec: &str) -> Result<Arc<FusionRing>, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let v = read_json(path)?;
        return json::ring_from_json(&v).map(Arc::new).map_err(validation);
    }
    family_ring(spec).map(Arc::new).map_err(usage)
}

/// NIM-reps stored in `path` (single object or `{"nimreps": [..]}`); a string
/// `ring` field is a ring spec or a path relative to the file.
fn load_nimreps(path: &Path) -> Result<Vec<NimRep>, Failure> {
    let v = read_json(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = |r: &Value| -> Result<Arc<FusionRing>, JsonError> {
        let spec = r.as_str().ok_or_else(|| JsonError::Shape("`ring` must be an object or a string".into()))?;
        let candidate: PathBuf = base.join(spec);
        if candidate.is_file() {
            let text = fs::read_to_string(&candidate).map_err(|e| JsonError::Shape(e.to_string()))?;
            return Ok(Arc::new(json::ring_from_json(&serde_json::from_str(&text)?)?));
        }
        family_ring(spec).map(Arc::new).map_err(JsonError::from)
    };
    json::items(&v, "nimreps")
        .into_iter()
        .map(|item| json::nimrep_from_json_with(item, &resolve))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn pick(list: &[NimRep], index: usize, path: &Path) -> Result<NimRep, Failure> {
    list.get(index)
        .cloned()
        .ok_or_else(|| usage(format!("{} holds {} NIM-reps; index {index} is out of range", path.display(), list.len())))
}

pub fn ring(family: &str, out: Option<&Path>) -> CmdResult {
    let r = family_ring(family).map_err(usage)?;
    emit_json(&json::ring_to_json(&r), out)
}

pub struct NimrepsArgs {
    pub family: ClassifyFamily,
    pub group: Option<String>,
    pub ring: Option<String>,
    pub alpha: Option<u32>,
    pub max_orbits: usize,
    pub max_dim: usize,
    pub bound: Option<u32>,
    pub closed_form: bool,
    pub include_reducible: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub parallel: bool,
}

fn summary(list: &[NimRep]) -> String {
    let dims: Vec<String> = list.iter().map(|n| n.dim().to_string()).collect();
    let mut text = format!("{} NIM-reps, dims {}\n", list.len(), dims.join(","));
    for (i, n) in list.iter().enumerate() {
        let kind = if n.is_irreducible() { "irreducible" } else { "reducible" };
        let base = admissible_base_points(n);
        text.push_str(&format!("#{i}: dim {} {kind}, base points {base:?}\n", n.dim()));
    }
    text
}

pub fn nimreps(args: NimrepsArgs) -> CmdResult {
    let need_group = || -> Result<_, Failure> {
        let spec = args.group.as_deref().ok_or_else(|| usage("--group is required for this family"))?;
        builtin_group(spec).map_err(usage)
    };
    let opts = BruteOptions { bound: args.bound, parallel: args.parallel, ..BruteOptions::default() };
    let out = args.out.as_deref();
    let list: Vec<NimRep> = match args.family {
        ClassifyFamily::Group => {
            let g = need_group()?;
            let mut list: Vec<NimRep> = group_ring_nimreps(&g).into_iter().map(|(_, n)| n).collect();
            list.sort_by_key(NimRep::dim);
            list
        }
        ClassifyFamily::Neargroup => {
            let g = need_group()?;
            let alpha = args.alpha.ok_or_else(|| usage("--alpha is required for the near-group family"))?;
            let (solutions, bound, warnings) = if args.closed_form {
                let mut s = neargroup_one_orbit(&g, alpha);
                s.extend(neargroup_two_orbit(&g, alpha));
                (s, Value::Null, Vec::new())
            } else {
                let found = neargroup_brute(&g, alpha, args.max_orbits, args.bound).map_err(validation)?;
                let warnings = found.warnings.iter().map(|w| json!(w)).collect();
                (found.solutions, json!(found.bound), warnings)
            };
            if args.format == Format::Text {
                let mut text = format!("{} solutions\n", solutions.len());
                for s in &solutions {
                    let orders: Vec<usize> = s.orbits.iter().map(|h| h.order()).collect();
                    text.push_str(&format!("orbit subgroup orders {orders:?}, C = {:?}\n", s.c));
                }
                return emit(&text, out);
            }
            let mut v = json::solutions_to_json(&solutions);
            v["bound"] = bound;
            v["warnings"] = Value::Array(warnings);
            return emit_json(&v, out);
        }
        ClassifyFamily::Su2half => {
            let spec = args.ring.as_deref().ok_or_else(|| usage("--ring su2half:<l> is required"))?;
            let level = spec
                .strip_prefix("su2half:")
                .and_then(|l| l.parse::<usize>().ok())
                .ok_or_else(|| usage("--ring must be su2half:<l> for this family"))?;
            vec![su2half_admissible(level).map_err(usage)?]
        }
        ClassifyFamily::Brute => {
            let spec = args.ring.as_deref().ok_or_else(|| usage("--ring is required for brute force"))?;
            let ring = load_ring(spec)?;
            let mut list = Vec::new();
            for dim in 1..=args.max_dim {
                if args.include_reducible {
                    let found = brute_force_nimreps_with(ring.clone(), dim, &opts).map_err(validation)?;
                    list.extend(found.into_iter().map(|c| c.nimrep));
                } else {
                    list.extend(brute_force_irreducible(ring.clone(), dim, &opts).map_err(validation)?);
                }
            }
            list
        }
    };
    match args.format {
        Format::Json => emit_json(&json::nimreps_to_json(&list), out),
        Format::Text => emit(&summary(&list), out),
    }
}

pub fn verify(file: &Path) -> CmdResult {
    let v = read_json(file)?;
    let mut lines = Vec::new();
    let looks = |key: &str| v.get(key).is_some();
    if looks("nimreps") || looks("mats") {
        for (i, n) in load_nimreps(file)?.iter().enumerate() {
            let kind = if n.is_irreducible() { "irreducible" } else { "reducible" };
            lines.push(format!("ok: NIM-rep #{i} of dimension {} ({kind}) over a rank-{} ring", n.dim(), n.ring().rank()));
        }
    } else if looks("solutions") || looks("C") {
        for (i, item) in json::items(&v, "solutions").into_iter().enumerate() {
            let s = json::solution_from_json(item).map_err(validation)?;
            if !s.satisfies_cbc() {
                return Err(validation(format!("solution #{i} violates C·B·C = |G|·I + alpha·C")));
            }
            let n = neargroup_to_nimrep(&s).map_err(validation)?;
            lines.push(format!("ok: near-group solution #{i} with {} orbits, NIM-rep of dimension {}", s.p(), n.dim()));
        }
    } else if looks("coeffs") {
        let r = json::ring_from_json(&v).map_err(validation)?;
        lines.push(format!("ok: fusion ring of rank {}", r.rank()));
    } else if looks("table") {
        let g = json::group_from_json(&v).map_err(validation)?;
        lines.push(format!("ok: group of order {}", g.order()));
    } else {
        return Err(validation(format!("{}: not a recognised schema-1 object", file.display())));
    }
    emit(&(lines.join("\n") + "\n"), None)
}

pub fn equiv(a: &Path, b: &Path, index: &[usize]) -> CmdResult {
    let (ia, ib) = match index {
        [] => (0, 0),
        [i] => (*i, *i),
        [i, j, ..] => (*i, *j),
    };
    let na = pick(&load_nimreps(a)?, ia, a)?;
    let nb = pick(&load_nimreps(b)?, ib, b)?;
    if na.ring().tensor() != nb.ring().tensor() {
        return Err(validation("the NIM-reps are over different rings"));
    }
    match are_equivalent(&na, &nb) {
        Some(perm) => emit(&format!("equivalent: basis map {perm:?}\n"), None),
        None => emit("not equivalent\n", None),
    }
}

pub fn graph(file: &Path, index: usize, out: Option<&Path>) -> CmdResult {
    let n = pick(&load_nimreps(file)?, index, file)?;
    emit(&n.to_dot(), out)
}

pub fn algebras(file: &Path, out: Option<&Path>) -> CmdResult {
    let list = load_nimreps(file)?;
    let reports: Vec<Value> = list.iter().map(json::algebra_report_json).collect();
    let v = if reports.len() == 1 { reports.into_iter().next().expect("one") } else { json!({"schema": 1, "reports": reports}) };
    emit_json(&v, out)
}

fn modular_one(md: &ModularData, bound: u32, parallel: bool) -> Result<(MatchReport, Vec<String>), Failure> {
    let search = enumerate_invariants(md, bound).map_err(validation)?;
    let opts = BruteOptions { parallel, ..BruteOptions::default() };
    let nimreps = catalog_nimreps(md, &opts).map_err(validation)?;
    let report = conjecture_report(md, &search.invariants, &nimreps).map_err(validation)?;
    Ok((report, search.warnings))
}

pub fn modular(mtc: &str, bound: u32, format: Format, out: Option<&Path>, parallel: bool) -> CmdResult {
    if bound == 0 {
        return Err(usage("--bound must be at least 1"));
    }
    let entries = if mtc.eq_ignore_ascii_case("all") { catalog() } else { vec![catalog_entry(mtc).map_err(usage)?] };
    let results = map_collect(entries, parallel, |md| modular_one(&md, bound, parallel));
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Text => {
            let mut text = String::new();
            for (report, warnings) in &results {
                text.push_str(&report.to_text());
                for w in warnings {
                    text.push_str(&format!("warning: {w}\n"));
                }
                text.push('\n');
            }
            emit(&text, out)
        }
        Format::Json => {
            let reports: Vec<Value> = results
                .iter()
                .map(|(r, w)| {
                    let mut v = r.to_json();
                    v["warnings"] = json!(w);
                    v
                })
                .collect();
            let v = if reports.len() == 1 { reports.into_iter().next().expect("one") } else { json!({"schema": 1, "reports": reports}) };
            emit_json(&v, out)
        }
    }
}

/// Canonical keys of the irreducible NIM-reps in `list` with dimension ≤ `max_dim`.
fn keys(list: &[NimRep], max_dim: usize) -> BTreeSet<Vec<u32>> {
    list.iter().filter(|n| n.dim() <= max_dim && n.is_irreducible()).map(|n| canonical_form(n).0).collect()
}

pub fn oracle(spec: &str, max_dim: usize, max_orbits: usize, parallel: bool) -> CmdResult {
    let (family, rest) = spec.split_once(':').ok_or_else(|| usage("oracle needs group:, neargroup: or su2half:"))?;
    let ring = Arc::new(family_ring(spec).map_err(usage)?);
    let opts = BruteOptions { parallel, ..BruteOptions::default() };
    let expected: Vec<NimRep> = match family {
        "group" => {
            let g = builtin_group(rest).map_err(usage)?;
            group_ring_nimreps(&g).into_iter().map(|(_, n)| n).collect()
        }
        "neargroup" => {
            let (g, alpha) = rest.rsplit_once(':').ok_or_else(|| usage("neargroup:<g>:<alpha>"))?;
            let g = builtin_group(g).map_err(usage)?;
            let alpha: u32 = alpha.parse().map_err(usage)?;
            let found = neargroup_brute(&g, alpha, max_orbits, None).map_err(validation)?;
            found.solutions.iter().map(neargroup_to_nimrep).collect::<Result<_, _>>().map_err(validation)?
        }
        "su2half" => vec![su2half_admissible(rest.parse().map_err(usage)?).map_err(usage)?],
        _ => return Err(usage("oracle needs group:, neargroup: or su2half:")),
    };
    let mut brute = Vec::new();
    for dim in 1..=max_dim {
        brute.extend(brute_force_irreducible(ring.clone(), dim, &opts).map_err(validation)?);
    }
    let (want, got) = if family == "su2half" {
        let admissible: Vec<NimRep> = brute.into_iter().filter(|n| !admissible_base_points(n).is_empty()).collect();
        (keys(&expected, max_dim), keys(&admissible, max_dim))
    } else {
        (keys(&expected, max_dim), keys(&brute, max_dim))
    };
    let missing = want.difference(&got).count();
    let extra = got.difference(&want).count();
    let verdict = if missing == 0 && extra == 0 { "PASS" } else { "FAIL" };
    emit(
        &format!("{verdict}: {spec} up to dim {max_dim}: family {}, brute force {}, missing {missing}, extra {extra}\n", want.len(), got.len()),
        None,
    )?;
    if verdict == "PASS" {
        Ok(())
    } else {
        Err(validation("family classification and brute force disagree"))
    }
}

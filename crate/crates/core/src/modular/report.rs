//! Matching modular invariants with NIM-reps by exponent.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{exponent_of_invariant, exponent_of_nimrep, ExponentMultiset, Family, ModularData, ModularError, ModularInvariant};
use crate::classify::{
    brute_force_irreducible, canonical_form, group_ring_nimreps, neargroup_brute, neargroup_to_nimrep, su2half_admissible,
    BruteOptions,
};
use crate::groups::builtin_group;
use crate::nimrep::NimRep;

/// Items sharing one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentClass {
    pub exponent: ExponentMultiset,
    /// Indices into [`MatchReport::invariants`].
    pub invariants: Vec<usize>,
    /// Indices into [`MatchReport::nimreps`].
    pub nimreps: Vec<usize>,
}

impl ExponentClass {
    /// Pairs `(invariant, NIM-rep)` taken in order; the surplus is orphaned.
    pub fn matched(&self) -> Vec<(usize, usize)> {
        self.invariants.iter().copied().zip(self.nimreps.iter().copied()).collect()
    }

    pub fn orphan_invariants(&self) -> &[usize] {
        &self.invariants[self.nimreps.len().min(self.invariants.len())..]
    }

    pub fn orphan_nimreps(&self) -> &[usize] {
        &self.nimreps[self.invariants.len().min(self.nimreps.len())..]
    }

    /// Several invariants attach to fewer (but some) NIM-reps.
    pub fn is_shared(&self) -> bool {
        !self.nimreps.is_empty() && self.invariants.len() > self.nimreps.len()
    }
}

#[derive(Debug, Clone)]
pub struct MatchReport {
    pub mtc: String,
    pub object_names: Vec<String>,
    pub invariants: Vec<(ModularInvariant, ExponentMultiset)>,
    pub nimreps: Vec<(NimRep, ExponentMultiset)>,
    /// Sorted by exponent, descending.
    pub classes: Vec<ExponentClass>,
}

impl MatchReport {
    pub fn orphan_invariants(&self) -> Vec<usize> {
        self.classes.iter().flat_map(|c| c.orphan_invariants().to_vec()).collect()
    }

    pub fn orphan_nimreps(&self) -> Vec<usize> {
        self.classes.iter().flat_map(|c| c.orphan_nimreps().to_vec()).collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.orphan_invariants().is_empty() && self.orphan_nimreps().is_empty()
    }

    pub fn shared_classes(&self) -> Vec<&ExponentClass> {
        self.classes.iter().filter(|c| c.is_shared()).collect()
    }

    /// Exponents with multiplicities above one, if any.
    pub fn flagged_multiplicities(&self) -> Vec<&ExponentMultiset> {
        self.classes.iter().map(|c| &c.exponent).filter(|e| e.has_multiplicities()).collect()
    }

    /// One table block: invariant / exponent on the left, NIM-rep / exponent on the right.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names = &self.object_names;
        let _ = writeln!(
            out,
            "== {} (rank {}): {} invariants, {} NIM-reps ==",
            self.mtc,
            names.len(),
            self.invariants.len(),
            self.nimreps.len()
        );
        let mut rows: Vec<[String; 4]> = Vec::new();
        for class in &self.classes {
            let exp = class.exponent.render(names);
            for r in 0..class.invariants.len().max(class.nimreps.len()) {
                let (inv, inv_exp) = match class.invariants.get(r) {
                    Some(&i) => (self.invariants[i].0.to_string(), exp.clone()),
                    None => ("--".to_string(), String::new()),
                };
                let (nim, nim_exp) = match class.nimreps.get(r) {
                    Some(&n) => (format!("#{} (dim {})", n, self.nimreps[n].0.dim()), exp.clone()),
                    None if class.is_shared() => (format!("#{} (shared)", class.nimreps[0]), exp.clone()),
                    None => ("--".to_string(), String::new()),
                };
                rows.push([inv, inv_exp, nim, nim_exp]);
            }
        }
        let header = ["invariant", "exponent", "NIM-rep", "exponent"].map(String::from);
        let width = |c: usize| rows.iter().chain([&header]).map(|r| r[c].chars().count()).max().unwrap_or(0);
        let (w0, w1, w2) = (width(0), width(1), width(2));
        for [a, b, c, d] in std::iter::once(&header).chain(&rows) {
            let _ = writeln!(out, "{a:<w0$}  {b:<w1$} | {c:<w2$}  {d}");
        }
        let _ = writeln!(
            out,
            "orphan invariants: {}, orphan NIM-reps: {}, shared classes: {}",
            self.orphan_invariants().len(),
            self.orphan_nimreps().len(),
            self.shared_classes().len()
        );
        for e in self.flagged_multiplicities() {
            let _ = writeln!(out, "note: exponent {} has multiplicity above one", e.render(names));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let exp = |e: &ExponentMultiset| json!(e.mult);
        json!({
            "schema": 1,
            "mtc": self.mtc,
            "object_names": self.object_names,
            "invariants": self.invariants.iter().map(|(z, e)| json!({"z": z.z, "exponent": exp(e)})).collect::<Vec<_>>(),
            "nimreps": self.nimreps.iter().map(|(n, e)| json!({
                "dim": n.dim(),
                "basis": n.basis_names(),
                "matrices": n.mats().iter().map(|m| m.rows()).collect::<Vec<_>>(),
                "exponent": exp(e),
            })).collect::<Vec<_>>(),
            "classes": self.classes.iter().map(|c| json!({
                "exponent": exp(&c.exponent),
                "invariants": c.invariants,
                "nimreps": c.nimreps,
                "matched": c.matched(),
                "orphan_invariants": c.orphan_invariants(),
                "orphan_nimreps": c.orphan_nimreps(),
                "shared": c.is_shared(),
            })).collect::<Vec<_>>(),
            "orphan_invariants": self.orphan_invariants(),
            "orphan_nimreps": self.orphan_nimreps(),
        })
    }
}

/// Groups invariants and NIM-reps by exponent.
pub fn conjecture_report(
    md: &ModularData,
    invariants: &[ModularInvariant],
    nimreps: &[NimRep],
) -> Result<MatchReport, ModularError> {
    let invariants: Vec<(ModularInvariant, ExponentMultiset)> =
        invariants.iter().map(|z| (z.clone(), exponent_of_invariant(z))).collect();
    let nimreps: Vec<(NimRep, ExponentMultiset)> =
        nimreps.iter().map(|n| Ok((n.clone(), exponent_of_nimrep(md, n)?))).collect::<Result<_, ModularError>>()?;
    let mut by_exp: BTreeMap<ExponentMultiset, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, (_, e)) in invariants.iter().enumerate() {
        by_exp.entry(e.clone()).or_default().0.push(i);
    }
    for (i, (_, e)) in nimreps.iter().enumerate() {
        by_exp.entry(e.clone()).or_default().1.push(i);
    }
    let classes = by_exp
        .into_iter()
        .rev()
        .map(|(exponent, (invariants, nimreps))| ExponentClass { exponent, invariants, nimreps })
        .collect();
    Ok(MatchReport { mtc: md.name.clone(), object_names: md.object_names.clone(), invariants, nimreps, classes })
}

/// Irreducible NIM-reps over the entry's ring: the family classification
/// transported to the entry's labels, plus brute force up to dimension
/// `rank`, deduplicated up to basis permutation. Sorted by dimension
/// (descending), then canonical form.
pub fn catalog_nimreps(md: &ModularData, opts: &BruteOptions) -> Result<Vec<NimRep>, ModularError> {
    let ring = md.ring.clone();
    let (natural, order): (Vec<NimRep>, &[usize]) = match &md.family {
        Family::Group { group, order } => {
            let g = builtin_group(group).map_err(|e| ModularError::UnknownMtc(e.to_string()))?;
            (group_ring_nimreps(&g).into_iter().map(|(_, n)| n).collect(), order)
        }
        Family::NearGroup { group, alpha, order } => {
            let g = builtin_group(group).map_err(|e| ModularError::UnknownMtc(e.to_string()))?;
            let found = neargroup_brute(&g, *alpha, md.rank(), None)?;
            (found.solutions.iter().map(neargroup_to_nimrep).collect::<Result<_, _>>()?, order)
        }
        Family::Su2Half { level, order } => (vec![su2half_admissible(*level)?], order),
    };
    let mut seen: BTreeMap<(std::cmp::Reverse<usize>, Vec<u32>), NimRep> = BTreeMap::new();
    for n in natural {
        let n = n.relabel_ring(ring.clone(), order)?;
        if n.is_irreducible() {
            seen.entry((std::cmp::Reverse(n.dim()), canonical_form(&n).0)).or_insert(n);
        }
    }
    for dim in 1..=md.rank() {
        for n in brute_force_irreducible(ring.clone(), dim, opts)? {
            seen.entry((std::cmp::Reverse(n.dim()), canonical_form(&n).0)).or_insert(n);
        }
    }
    Ok(seen.into_values().collect())
}

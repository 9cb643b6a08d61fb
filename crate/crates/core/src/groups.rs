//! Finite groups as explicit Cayley tables.
//!
//! Elements are indices `0..order`; `table[g][h]` is the index of `g·h`.
//! Subgroups are stored as sorted element lists and are only meaningful
//! together with the group they were taken from.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::map_collect;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("Cayley table must be non-empty and square: row {row} has {len} entries, expected {expected}")]
    BadShape { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("expected {expected} element names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("{axis} {index} of the Cayley table is not a permutation")]
    NotLatinSquare { axis: &'static str, index: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("elements {0:?} do not form a subgroup")]
    NotSubgroup(Vec<usize>),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("invalid group parameter in `{0}`")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    names: Vec<String>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table. Checks run in the order shape, Latin square,
    /// identity, associativity; the first failure is reported.
    pub fn from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::BadShape { row: 0, len: 0, expected: 1 });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::BadShape { row, len: r.len(), expected: order });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange { row, col, value, order });
                }
            }
        }
        if names.len() != order {
            return Err(GroupError::NameCount { expected: order, got: names.len() });
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * order + b];

        for index in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for j in 0..order {
                let r = at(index, j);
                if std::mem::replace(&mut seen_row[r], true) {
                    return Err(GroupError::NotLatinSquare { axis: "row", index });
                }
                let c = at(j, index);
                if std::mem::replace(&mut seen_col[c], true) {
                    return Err(GroupError::NotLatinSquare { axis: "column", index });
                }
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;

        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut inverse = vec![0; order];
        for g in 0..order {
            inverse[g] = (0..order).find(|&h| at(g, h) == identity).expect("Latin square row contains identity");
        }

        Ok(FiniteGroup { order, table: flat, names, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// `g h g⁻¹`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse(g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The smallest subgroup containing `gens`, as a sorted element list.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&g| seen[g]).collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }
}

pub fn group_from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_table(table, names)
}

/// Cyclic group `Z_n` with elements `e, a, a^2, ...`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    cyclic_product(&[n])
}

/// Direct product of cyclic groups. Elements are tuples ordered
/// lexicographically with the last factor varying fastest.
pub fn cyclic_product(factors: &[usize]) -> Result<FiniteGroup, GroupError> {
    if factors.is_empty() || factors.iter().any(|&n| n == 0) {
        return Err(GroupError::InvalidParameter(format!("{factors:?}")));
    }
    let order: usize = factors.iter().product();
    let digits = |mut x: usize| {
        let mut d = vec![0; factors.len()];
        for (slot, &n) in d.iter_mut().zip(factors).rev() {
            *slot = x % n;
            x /= n;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &n)| acc * n + x);
    let mut table = vec![vec![0; order]; order];
    for (a, row) in table.iter_mut().enumerate() {
        let da = digits(a);
        for (b, slot) in row.iter_mut().enumerate() {
            let db = digits(b);
            let sum: Vec<usize> = da.iter().zip(&db).zip(factors).map(|((x, y), n)| (x + y) % n).collect();
            *slot = encode(&sum);
        }
    }
    let letters = ['a', 'b', 'c', 'd', 'f', 'g', 'h', 'k'];
    let names = (0..order)
        .map(|g| {
            let d = digits(g);
            let word: String = d
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let letter = letters.get(i).copied().unwrap_or('z');
                    if x == 1 {
                        letter.to_string()
                    } else {
                        format!("{letter}^{x}")
                    }
                })
                .collect();
            if word.is_empty() {
                "e".to_string()
            } else {
                word
            }
        })
        .collect();
    FiniteGroup::from_table(table, names)
}

/// Dihedral group of order `2n`: rotations `a^k` at index `k`, reflections
/// `x a^k` at index `n + k`, with `x a = a⁻¹ x`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("D_0".into()));
    }
    let order = 2 * n;
    let split = |g: usize| (g / n, g % n);
    let mut table = vec![vec![0; order]; order];
    for (p, row) in table.iter_mut().enumerate() {
        let (s, i) = split(p);
        for (q, slot) in row.iter_mut().enumerate() {
            let (t, j) = split(q);
            // x^s a^i x^t a^j = x^(s+t) a^((-1)^t i + j)
            let rot = if t == 0 { (i + j) % n } else { (n - i + j) % n };
            *slot = ((s + t) % 2) * n + rot;
        }
    }
    let power = |k: usize| match k {
        0 => String::new(),
        1 => "a".to_string(),
        k => format!("a^{k}"),
    };
    let names = (0..order)
        .map(|g| {
            let (s, k) = split(g);
            match (s, k) {
                (0, 0) => "e".to_string(),
                (0, k) => power(k),
                (_, k) => format!("x{}", power(k)),
            }
        })
        .collect();
    FiniteGroup::from_table(table, names)
}

/// Parses `Z_n`, `Z_a x Z_b [x ...]` or `D_n`.
pub fn builtin_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    let parse_param = |s: &str| -> Result<usize, GroupError> {
        let n: usize = s.trim().parse().map_err(|_| GroupError::InvalidParameter(spec.to_string()))?;
        if n == 0 {
            return Err(GroupError::InvalidParameter(spec.to_string()));
        }
        Ok(n)
    };
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(rest) = compact.strip_prefix("D_") {
        return dihedral(parse_param(rest)?);
    }
    if compact.starts_with("Z_") {
        let factors = compact
            .split('x')
            .map(|part| {
                part.strip_prefix("Z_")
                    .ok_or_else(|| GroupError::UnknownFamily(spec.to_string()))
                    .and_then(parse_param)
            })
            .collect::<Result<Vec<_>, _>>()?;
        return cyclic_product(&factors);
    }
    Err(GroupError::UnknownFamily(spec.to_string()))
}

/// A subgroup, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks identity membership, closure and inverses, and Lagrange.
    pub fn new(group: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let fail = |e: &Vec<usize>| GroupError::NotSubgroup(e.clone());
        if elements.iter().any(|&g| g >= group.order()) {
            return Err(fail(&elements));
        }
        let mut member = vec![false; group.order()];
        for &g in &elements {
            member[g] = true;
        }
        if !member[group.identity()] {
            return Err(fail(&elements));
        }
        for &a in &elements {
            if !member[group.inverse(a)] || elements.iter().any(|&b| !member[group.mul(a, b)]) {
                return Err(fail(&elements));
            }
        }
        assert_eq!(group.order() % elements.len(), 0, "Lagrange violated by a closed subset");
        Ok(Subgroup { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn index_in(&self, group: &FiniteGroup) -> usize {
        group.order() / self.order()
    }

    /// `g H g⁻¹`
    pub fn conjugate_by(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| group.conjugate(g, h)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    fn sort_key(&self) -> (usize, &[usize]) {
        (self.order(), &self.elements)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by size, then lexicographically by element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Every subgroup exactly once, sorted by order then element list.
///
/// Starts from the cyclic subgroups and closes under joins with cyclic
/// subgroups; every subgroup is generated by the cyclic subgroups it contains.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let seeds: Vec<usize> = (0..group.order()).collect();
    let cyclic_list: Vec<(Vec<usize>, usize)> =
        map_collect(seeds, true, |g| (group.generate(&[g]), g));

    // elements -> a generating set
    let mut known: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (elements, g) in &cyclic_list {
        known.entry(elements.clone()).or_insert_with(|| vec![*g]);
    }
    let cyclic: Vec<(Vec<usize>, usize)> = known.iter().map(|(e, gens)| (e.clone(), gens[0])).collect();

    let mut work: VecDeque<Vec<usize>> = known.keys().cloned().collect();
    while let Some(current) = work.pop_front() {
        let gens = known[&current].clone();
        let joins: Vec<(Vec<usize>, Vec<usize>)> = cyclic
            .iter()
            .filter(|(_, g)| current.binary_search(g).is_err())
            .map(|&(_, g)| {
                let mut next_gens = gens.clone();
                next_gens.push(g);
                (group.generate(&next_gens), next_gens)
            })
            .collect();
        for (elements, next_gens) in joins {
            if !known.contains_key(&elements) {
                known.insert(elements.clone(), next_gens);
                work.push_back(elements);
            }
        }
    }
    let mut out: Vec<Subgroup> = known.into_keys().map(|elements| Subgroup { elements }).collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Lexicographically least member.
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partitions all subgroups into conjugacy classes, ordered by representative.
pub fn conjugacy_classes_of_subgroups(group: &FiniteGroup) -> Vec<SubgroupClass> {
    let subgroups = all_subgroups(group);
    let mut assigned: BTreeSet<Subgroup> = BTreeSet::new();
    let mut classes = Vec::new();
    for h in &subgroups {
        if assigned.contains(h) {
            continue;
        }
        let members: BTreeSet<Subgroup> = (0..group.order()).map(|g| h.conjugate_by(group, g)).collect();
        let representative = members
            .iter()
            .min_by(|a, b| a.elements.cmp(&b.elements))
            .cloned()
            .expect("class contains h");
        assigned.extend(members.iter().cloned());
        classes.push(SubgroupClass { representative, members: members.into_iter().collect() });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    classes
}

/// Left-translation action of a group on the left cosets `gH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetAction {
    pub subgroup: Subgroup,
    /// One representative per coset, chosen greedily in element order.
    pub reps: Vec<usize>,
    /// `act[g][i] = j` where `g·reps[i] ∈ reps[j]·H`.
    pub act: Vec<Vec<usize>>,
    /// Coset index of every group element.
    pub coset_of: Vec<usize>,
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Orbit of coset 0 covers every coset.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.index()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for row in &self.act {
                let j = row[i];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn coset_action(group: &FiniteGroup, h: &Subgroup) -> CosetAction {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] == usize::MAX {
            let idx = reps.len();
            reps.push(g);
            for &x in h.elements() {
                coset_of[group.mul(g, x)] = idx;
            }
        }
    }
    debug_assert_eq!(reps.len() * h.order(), n);
    let act = (0..n)
        .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
        .collect();
    CosetAction { subgroup: h.clone(), reps, act, coset_of }
}

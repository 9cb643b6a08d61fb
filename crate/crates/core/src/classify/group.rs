use std::sync::Arc;

use crate::fusion::{group_ring, FusionRing};
use crate::groups::{conjugacy_classes_of_subgroups, coset_action, FiniteGroup, Subgroup};
use crate::matrix::Mat;
use crate::nimrep::{verify, NimRep};

/// The NIM-rep `M(H)`, identified by a conjugacy-class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupNimSpec {
    pub subgroup: Subgroup,
    pub class_size: usize,
}

/// `M(H)`: the group ring acting on left cosets of `H` by permutation matrices.
/// Basis elements are named `m_<coset representative>`.
pub fn coset_nimrep(group: &FiniteGroup, ring: Arc<FusionRing>, h: &Subgroup) -> NimRep {
    let action = coset_action(group, h);
    let n = action.index();
    let mats = (0..group.order())
        .map(|g| {
            let row = &action.act[g];
            Mat::from_fn(n, |i, j| u32::from(row[i] == j))
        })
        .collect();
    let names = action.reps.iter().map(|&r| format!("m_{}", group.name(r))).collect();
    verify(ring, mats, names).expect("coset actions give NIM-reps")
}

/// One NIM-rep per conjugacy class of subgroups, in class order.
pub fn group_ring_nimreps(group: &FiniteGroup) -> Vec<(GroupNimSpec, NimRep)> {
    let ring = Arc::new(group_ring(group));
    conjugacy_classes_of_subgroups(group)
        .into_iter()
        .map(|class| {
            let rep = coset_nimrep(group, ring.clone(), &class.representative);
            (GroupNimSpec { class_size: class.size(), subgroup: class.representative }, rep)
        })
        .collect()
}

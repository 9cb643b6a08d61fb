use std::sync::Arc;

use super::ClassifyError;
use crate::fusion::{length, su2_half_ring};
use crate::nimrep::{regular_nimrep, NimRep};

/// The admissible NIM-rep of the even part of `A(1, l)`: the regular one,
/// generated from `m_0` by the fusion rules. Labels and basis follow the
/// ring's natural order `V0, V2, …`.
pub fn su2half_admissible(l: usize) -> Result<NimRep, ClassifyError> {
    Ok(regular_nimrep(Arc::new(su2_half_ring(l)?)))
}

/// Natural indices of `V0, V2, …, V(l−1)` sorted by increasing length.
/// Lengths are pairwise distinct, so this order is canonical.
pub fn su2half_length_order(l: usize) -> Result<Vec<usize>, ClassifyError> {
    let ring = su2_half_ring(l)?;
    let mut order: Vec<usize> = (0..ring.rank()).collect();
    order.sort_by_key(|&i| length(&ring, i));
    Ok(order)
}

/// [`su2half_admissible`] with ring labels and module basis both reordered by
/// length, the order used for printed tables.
pub fn su2half_table_form(l: usize) -> Result<NimRep, ClassifyError> {
    let order = su2half_length_order(l)?;
    let ring = Arc::new(su2_half_ring(l)?.permuted(&order)?);
    let natural = su2half_admissible(l)?;
    let mut position = vec![0; order.len()];
    for (t, &o) in order.iter().enumerate() {
        position[o] = t;
    }
    Ok(natural.permute_basis(&position).relabel_ring(ring, &order)?)
}

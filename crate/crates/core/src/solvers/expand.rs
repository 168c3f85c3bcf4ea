use crate::cost::WeightedPointSet;
use crate::metric::PointId;

/// Replaces every weighted entry `(p, w)` by `w` copies of `p`.
pub fn expand_unweighted(set: &WeightedPointSet) -> Vec<PointId> {
    set.entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.point, e.weight as usize))
        .collect()
}

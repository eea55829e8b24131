//! Cohomology of cell complexes and its direct limit under the substitution.

mod group;
mod limit;

pub use group::{cochain_cohomology, describe, induced_cohomology_map, FgAbGroup, GroupSummary};
pub use limit::{
    minimal_polynomial, DirectLimitGroup, Divisibility, DivisibilityCertificate, LimitElement, LimitSummary,
    ProbeLevel,
};

use crate::complexes::{CellComplex, CellMap};
use crate::error::Result;

/// H^q together with its limit under the substitution.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub group: FgAbGroup,
    pub limit: DirectLimitGroup,
}

/// Computes H^q, the induced endomorphism and the direct-limit data.
pub fn degree_cohomology(complex: &CellComplex, map: &CellMap, q: usize) -> Result<DegreeCohomology> {
    let group = cochain_cohomology(complex, q);
    let phi = induced_cohomology_map(complex, map, &group)?;
    let limit = DirectLimitGroup::new(group.orders(), phi);
    Ok(DegreeCohomology { group, limit })
}

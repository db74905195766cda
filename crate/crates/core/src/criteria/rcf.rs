//! Reduced cost fixing: a positive edge whose reduced cost exceeds the
//! duality gap is zero in every optimal solution.

use super::{Criterion, PersistencyCertificate, Witness};
use crate::error::{Error, Result};
use crate::graph::{EdgeLabeling, ProblemInstance};
use crate::packing::{reduced_costs, DualPacking, DUAL_EPS};

/// With `gamma = <theta, primal> - dual_bound`, fixes `x_f = 0` for every
/// edge with `theta_f >= 0` and reduced cost `> gamma + 1e-9`. The packing
/// must cover the whole instance; a cut is also a multicut, so the bound
/// applies to max-cut primals as well.
pub fn reduced_cost_fixing(
    inst: &ProblemInstance,
    primal: &EdgeLabeling,
    packing: &DualPacking,
) -> Result<Vec<PersistencyCertificate>> {
    if !inst.is_feasible(primal)? {
        return Err(Error::contract("primal labeling is infeasible"));
    }
    let rc = reduced_costs(inst, packing)?;
    let gamma = inst.linear_objective(primal)? - packing.dual_bound;
    if gamma < -DUAL_EPS {
        return Err(Error::contract(format!(
            "negative duality gap {gamma}: packing does not bound this instance"
        )));
    }
    let gamma = gamma.max(0.0);
    Ok((0..inst.edge_count())
        .filter(|&f| inst.weight(f) >= 0.0 && rc.get(f) > gamma + DUAL_EPS)
        .map(|f| {
            PersistencyCertificate::new(
                f,
                0,
                Criterion::Rcf,
                Witness::DualGap {
                    gamma,
                    reduced_cost: rc.get(f),
                },
            )
        })
        .collect())
}

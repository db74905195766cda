//! Components of the positive subgraph: negative edges between different
//! components are cut in some optimal multicut.

use super::{normalize, Criterion, PersistencyCertificate, Witness};
use crate::error::{Error, Result};
use crate::graph::{Partition, ProblemInstance, ProblemKind};

/// Components of `(V, E+)` with `E+ = {e : theta_e >= 0}`, and a certificate
/// `x_e = 1` for every negative edge joining two components. The witness of
/// each certificate is the component of the edge's lower endpoint, whose cut
/// contains no positive edge.
pub fn gplus_decomposition(inst: &ProblemInstance) -> Result<(Vec<PersistencyCertificate>, Partition)> {
    if inst.kind() != ProblemKind::Multicut {
        return Err(Error::UnsupportedKind(inst.kind().name()));
    }
    let parts = inst.connected_components(|e| inst.weight(e) >= 0.0);
    let blocks = parts.blocks();
    let certs = inst
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| parts.label(e.u) != parts.label(e.v))
        .map(|(id, e)| {
            PersistencyCertificate::new(
                id,
                1,
                Criterion::GplusDecomp,
                Witness::Cut {
                    side: blocks[parts.label(e.u)].clone(),
                },
            )
        })
        .collect();
    Ok((normalize(certs), parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::check_edge_cut;
    use crate::graph::NodeSet;

    #[test]
    fn all_positive() {
        let g = ProblemInstance::new(ProblemKind::Multicut, 3, vec![(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        let (certs, parts) = gplus_decomposition(&g).unwrap();
        assert!(certs.is_empty());
        assert_eq!(parts.block_count(), 1);
    }

    #[test]
    fn two_cliques() {
        let mut e = Vec::new();
        for (a, b) in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)] {
            e.push((a, b, 1.0));
        }
        e.push((2, 3, -4.0));
        let g = ProblemInstance::new(ProblemKind::Multicut, 6, e).unwrap();
        let (certs, parts) = gplus_decomposition(&g).unwrap();
        assert_eq!(parts.blocks(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(certs.len(), 1);
        let c = &certs[0];
        assert_eq!((c.edge, c.beta), (g.find_edge(2, 3).unwrap(), 1));
        let Witness::Cut { side } = &c.witness else { panic!() };
        let side = NodeSet::from_nodes(6, side.iter().copied());
        assert_eq!(check_edge_cut(&g, c.edge, &side), Some((Criterion::EdgeE2, 1)));
    }

    #[test]
    fn all_negative_and_maxcut() {
        let g = ProblemInstance::new(ProblemKind::Multicut, 3, vec![(0, 1, -1.0), (1, 2, -2.0), (0, 2, -3.0)]).unwrap();
        let (certs, parts) = gplus_decomposition(&g).unwrap();
        assert_eq!(certs.len(), 3);
        assert_eq!(parts.block_count(), 3);
        let m = ProblemInstance::new(ProblemKind::Maxcut, 2, vec![(0, 1, -1.0)]).unwrap();
        assert!(matches!(gplus_decomposition(&m), Err(Error::UnsupportedKind(_))));
    }
}

//! Canonical forms for small graphs by partition refinement plus an
//! exhaustive individualization search over the cells left after refinement.
//!
//! The certificate is the lexicographically smallest adjacency matrix over
//! all discrete partitions reached by the search. Refinement only ever
//! orders cells by label-independent signatures, so the set of leaves (and
//! hence the minimum) is the same for isomorphic inputs.

use crate::error::{Error, Result};
use crate::graphcore::Graph;

/// Largest order accepted by [`canonical_form`].
pub const ISO_MAX_ORDER: usize = 32;

/// Isomorphism-invariant encoding of a graph: equal iff the graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    order: usize,
    rows: Vec<u32>,
}

type Partition = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next: Partition = Vec::with_capacity(n);
        let mut split = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u8; cells.len()];
                    for w in g.neighbors(v).iter() {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let before = next.len();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            split |= next.len() - before > 1;
        }
        cells = next;
        if !split {
            return cells;
        }
    }
}

fn leaf_certificate(g: &Graph, cells: &Partition) -> Vec<u32> {
    let n = g.order();
    let mut pos = vec![0usize; n];
    for (c, cell) in cells.iter().enumerate() {
        pos[cell[0]] = c;
    }
    let mut rows = vec![0u32; n];
    for v in 0..n {
        for w in g.neighbors(v).iter() {
            rows[pos[v]] |= 1u32 << pos[w];
        }
    }
    rows
}

fn search(g: &Graph, cells: Partition, best: &mut Option<Vec<u32>>) {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let cert = leaf_certificate(g, &cells);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    };
    for &v in &cells[target] {
        let mut child = Vec::with_capacity(cells.len() + 1);
        child.extend_from_slice(&cells[..target]);
        child.push(vec![v]);
        child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        child.extend_from_slice(&cells[target + 1..]);
        search(g, child, best);
    }
}

pub fn canonical_form(g: &Graph) -> Result<Certificate> {
    let n = g.order();
    if n > ISO_MAX_ORDER {
        return Err(Error::UnsupportedSize {
            what: "isomorphism order",
            actual: n,
            limit: ISO_MAX_ORDER,
        });
    }
    if n == 0 {
        return Ok(Certificate {
            order: 0,
            rows: Vec::new(),
        });
    }
    let mut best = None;
    search(g, vec![(0..n).collect()], &mut best);
    Ok(Certificate {
        order: n,
        rows: best.expect("the search reaches at least one leaf"),
    })
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        // Still enforce the size limit so callers see consistent errors.
        for g in [g1, g2] {
            if g.order() > ISO_MAX_ORDER {
                return Err(Error::UnsupportedSize {
                    what: "isomorphism order",
                    actual: g.order(),
                    limit: ISO_MAX_ORDER,
                });
            }
        }
        return Ok(false);
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.order()).map(|v| g.neighbors(v).len()).collect();
        d.sort_unstable();
        d
    };
    if degrees(g1) != degrees(g2) {
        canonical_form(g1)?;
        return Ok(false);
    }
    Ok(canonical_form(g1)? == canonical_form(g2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functigraph::{build_functigraph, from_cycles, identity_map, ThreeTranslate};
    use crate::graphcore::{build_cycle, build_path};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn prism(n: usize) -> Graph {
        // C_n x K_2 built directly as a ladder closed into a ring.
        let edges = (0..n).flat_map(|i| [(i, (i + 1) % n), (n + i, n + (i + 1) % n), (i, n + i)]);
        Graph::from_edges(2 * n, edges).unwrap()
    }

    #[test]
    fn identity_functigraph_is_prism() {
        for n in [4, 5, 8, 12] {
            let fg =
                build_functigraph(&build_cycle(n).unwrap(), &identity_map(n).unwrap()).unwrap();
            let mut perm: Vec<usize> = (0..2 * n).collect();
            perm.reverse();
            let shuffled = prism(n).relabel(&perm).unwrap();
            assert!(are_isomorphic(fg.graph(), &shuffled).unwrap());
        }
    }

    #[test]
    fn c4_permutation_classes_differ() {
        let c4 = build_cycle(4).unwrap();
        let id = build_functigraph(&c4, &identity_map(4).unwrap()).unwrap();
        let twist = build_functigraph(&c4, &from_cycles(4, &[&[1, 2]]).unwrap()).unwrap();
        assert!(!are_isomorphic(id.graph(), twist.graph()).unwrap());
    }

    #[test]
    fn translate_remark_pair() {
        let c9 = build_cycle(9).unwrap();
        let a = ThreeTranslate::new(1, 1, 2).unwrap().expand(3).unwrap();
        let b = ThreeTranslate::new(2, 3, 3).unwrap().expand(3).unwrap();
        let ga = build_functigraph(&c9, &a).unwrap();
        let gb = build_functigraph(&c9, &b).unwrap();
        assert!(are_isomorphic(ga.graph(), gb.graph()).unwrap());
    }

    #[test]
    fn cycle_vs_path_plus_edge() {
        let c6 = build_cycle(6).unwrap();
        let p6 = build_path(6).unwrap();
        assert!(!are_isomorphic(&c6, &p6).unwrap());
        // Same degree sequence, different structure: C_6 vs two triangles.
        let two_tri =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_tri).unwrap());
    }

    #[test]
    fn certificate_invariant_under_shuffles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let graphs = [
            build_functigraph(
                &build_cycle(7).unwrap(),
                &crate::functigraph::VertexMap::new(vec![0, 0, 3, 6, 2, 2, 5]).unwrap(),
            )
            .unwrap()
            .graph()
            .clone(),
            build_functigraph(
                &build_cycle(9).unwrap(),
                &ThreeTranslate::new(3, 1, 1).unwrap().expand(3).unwrap(),
            )
            .unwrap()
            .graph()
            .clone(),
            build_cycle(11).unwrap(),
        ];
        for g in &graphs {
            let cert = canonical_form(g).unwrap();
            let mut perm: Vec<usize> = (0..g.order()).collect();
            for _ in 0..50 {
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.relabel(&perm).unwrap()).unwrap(), cert);
            }
        }
    }

    #[test]
    fn size_limit() {
        let big = build_cycle(33).unwrap();
        assert!(matches!(
            canonical_form(&big),
            Err(Error::UnsupportedSize { .. })
        ));
        assert!(are_isomorphic(&big, &big).is_err());
    }
}

//! Exact minimum domination.
//!
//! [`gamma_bruteforce`] enumerates subsets by increasing size and serves as
//! the oracle for tiny graphs. [`gamma_exact`] is a branch-and-bound search:
//! it branches on the dominators of the undominated vertex with the fewest
//! remaining candidates, excluding already-tried candidates in later sibling
//! branches, and prunes with a covering lower bound. A greedy set seeds the
//! incumbent.

use crate::error::{invalid, Error, Result};
use crate::graphcore::{Graph, VertexSet};

/// Largest order [`gamma_bruteforce`] will enumerate.
pub const BRUTEFORCE_MAX_ORDER: usize = 24;

/// Environment variable overriding [`SolveBudget::node_limit`].
pub const BUDGET_ENV: &str = "FUNCTIDOM_BUDGET_NODES";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_vertices: usize,
    pub node_limit: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        Self {
            max_vertices: 64,
            node_limit: 100_000_000,
        }
    }
}

impl SolveBudget {
    /// Default budget with `node_limit` taken from [`BUDGET_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Self::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            let limit: u64 = raw
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{BUDGET_ENV}={raw:?} is not a node count")))?;
            if limit == 0 {
                return Err(invalid(format!("{BUDGET_ENV} must be positive")));
            }
            budget.node_limit = limit;
        }
        Ok(budget)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationResult {
    pub gamma: usize,
    /// A minimum dominating set.
    pub witness: VertexSet,
    pub nodes_explored: u64,
}

#[inline]
fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn closed_rows(g: &Graph) -> Vec<u128> {
    (0..g.order()).map(|v| g.closed_row(v)).collect()
}

/// Exhaustive oracle: tries every subset of size 0, 1, 2, ... in
/// lexicographic order, so the witness is the lexicographically least
/// minimum dominating set.
pub fn gamma_bruteforce(g: &Graph) -> Result<DominationResult> {
    let n = g.order();
    if n > BRUTEFORCE_MAX_ORDER {
        return Err(Error::UnsupportedSize {
            what: "brute-force order",
            actual: n,
            limit: BRUTEFORCE_MAX_ORDER,
        });
    }
    let rows = closed_rows(g);
    let full = full_mask(n);
    let mut tested = 0u64;
    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            tested += 1;
            let covered = combo.iter().fold(0u128, |acc, &v| acc | rows[v]);
            if covered == full {
                return Ok(DominationResult {
                    gamma: size,
                    witness: VertexSet::from_indices(n, combo.iter().copied())?,
                    nodes_explored: tested,
                });
            }
            // Advance to the next combination in lexicographic order.
            let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set always dominates")
}

/// Greedy dominating set: repeatedly take the vertex covering the most
/// undominated vertices, lowest index on ties.
pub fn greedy_upper_bound(g: &Graph) -> (usize, VertexSet) {
    let rows = closed_rows(g);
    let set = greedy_from(&rows, full_mask(g.order()), 0, 0, full_mask(g.order()))
        .expect("every vertex may dominate itself");
    (
        set.count_ones() as usize,
        VertexSet::from_bits(g.order(), set).expect("in range"),
    )
}

fn greedy_from(
    rows: &[u128],
    full: u128,
    mut chosen: u128,
    mut dominated: u128,
    allowed: u128,
) -> Option<u128> {
    while dominated != full {
        let undominated = full & !dominated;
        let mut best = None;
        let mut best_cover = 0;
        let mut cands = allowed & !chosen;
        while cands != 0 {
            let u = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            let cover = (rows[u] & undominated).count_ones();
            if cover > best_cover {
                best_cover = cover;
                best = Some(u);
            }
        }
        let u = best?;
        chosen |= 1u128 << u;
        dominated |= rows[u];
    }
    Some(chosen)
}

struct Search<'a> {
    rows: &'a [u128],
    full: u128,
    node_limit: u64,
    nodes: u64,
    aborted: bool,
    best_size: u32,
    best_set: u128,
}

impl Search<'_> {
    fn lower_bound(&self, undominated: u128, allowed: u128) -> Option<u32> {
        let mut max_cover = 0;
        let mut cands = allowed;
        while cands != 0 {
            let u = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            max_cover = max_cover.max((self.rows[u] & undominated).count_ones());
        }
        if max_cover == 0 {
            return None;
        }
        Some(undominated.count_ones().div_ceil(max_cover))
    }

    fn dfs(&mut self, chosen: u128, dominated: u128, allowed: u128) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return;
        }
        let size = chosen.count_ones();
        if dominated == self.full {
            if size < self.best_size {
                self.best_size = size;
                self.best_set = chosen;
            }
            return;
        }
        let undominated = self.full & !dominated;
        let Some(lb) = self.lower_bound(undominated, allowed) else {
            return;
        };
        if size + lb >= self.best_size {
            return;
        }

        // Undominated vertex with the fewest candidate dominators.
        let mut pivot_cands = 0u128;
        let mut fewest = u32::MAX;
        let mut rest = undominated;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cands = self.rows[v] & allowed;
            let c = cands.count_ones();
            if c < fewest {
                fewest = c;
                pivot_cands = cands;
                if c <= 1 {
                    break;
                }
            }
        }
        if fewest == 0 {
            return;
        }

        let mut allowed = allowed;
        let mut cands = pivot_cands;
        while cands != 0 {
            let u = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            let bit = 1u128 << u;
            allowed &= !bit;
            self.dfs(chosen | bit, dominated | self.rows[u], allowed);
            if self.aborted {
                return;
            }
        }
    }
}

/// Exact domination number by branch and bound.
pub fn gamma_exact(g: &Graph, budget: &SolveBudget) -> Result<DominationResult> {
    let empty = VertexSet::empty(g.order());
    gamma_with_constraints(g, &empty, &empty, budget)
}

/// Like [`gamma_with_constraints`], but the witness is the lexicographically
/// least (as an ascending index sequence) among all optimal sets.
pub fn lex_least_with_constraints(
    g: &Graph,
    include: &VertexSet,
    exclude: &VertexSet,
    budget: &SolveBudget,
) -> Result<DominationResult> {
    let first = gamma_with_constraints(g, include, exclude, budget)?;
    let gamma = first.gamma;
    let mut nodes = first.nodes_explored;
    let mut chosen = *include;
    let mut banned = *exclude;
    // Fix the set one position at a time: the smallest next vertex for which
    // an optimal completion still exists, skipping everything below it.
    while chosen.len() < gamma {
        let mut fixed = false;
        for v in 0..g.order() {
            if chosen.contains(v) || banned.contains(v) {
                continue;
            }
            let mut trial = chosen;
            trial.insert(v);
            match gamma_with_constraints(g, &trial, &banned, budget) {
                Ok(r) if r.gamma == gamma => {
                    nodes += r.nodes_explored;
                    chosen = trial;
                    fixed = true;
                    break;
                }
                Ok(r) => nodes += r.nodes_explored,
                Err(Error::Infeasible(_)) => {}
                Err(e) => return Err(e),
            }
            banned.insert(v);
        }
        assert!(fixed, "an optimal completion exists at every step");
    }
    Ok(DominationResult {
        gamma,
        witness: chosen,
        nodes_explored: nodes,
    })
}

/// Minimum dominating set among those containing `include` and avoiding
/// `exclude`.
pub fn gamma_with_constraints(
    g: &Graph,
    include: &VertexSet,
    exclude: &VertexSet,
    budget: &SolveBudget,
) -> Result<DominationResult> {
    let n = g.order();
    if n > budget.max_vertices {
        return Err(Error::UnsupportedSize {
            what: "solver order",
            actual: n,
            limit: budget.max_vertices,
        });
    }
    if include.universe() != n || exclude.universe() != n {
        return Err(invalid(
            "constraint sets must range over the graph's vertices",
        ));
    }
    if !include.is_disjoint(exclude) {
        return Err(invalid(format!(
            "include {include} and exclude {exclude} overlap"
        )));
    }
    let rows = closed_rows(g);
    let full = full_mask(n);
    let chosen = include.bits();
    let dominated = g.dominated_by(include).bits();
    let allowed = full & !exclude.bits() & !chosen;

    let reachable = dominated
        | (0..n)
            .filter(|&u| (allowed >> u) & 1 == 1)
            .fold(0, |acc, u| acc | rows[u]);
    if reachable != full {
        let stuck = VertexSet::from_bits(n, full & !reachable)?;
        return Err(Error::Infeasible(format!(
            "vertices {stuck} cannot be dominated without excluded vertices"
        )));
    }
    let incumbent =
        greedy_from(&rows, full, chosen, dominated, allowed).expect("feasibility checked above");

    let mut search = Search {
        rows: &rows,
        full,
        node_limit: budget.node_limit,
        nodes: 0,
        aborted: false,
        best_size: incumbent.count_ones(),
        best_set: incumbent,
    };
    search.dfs(chosen, dominated, allowed);
    if search.aborted {
        let lb = chosen.count_ones() + search.lower_bound(full & !dominated, allowed).unwrap_or(0);
        return Err(Error::ResourceLimit {
            node_limit: budget.node_limit,
            lower_bound: lb as usize,
            upper_bound: search.best_size as usize,
        });
    }
    Ok(DominationResult {
        gamma: search.best_size as usize,
        witness: VertexSet::from_bits(n, search.best_set)?,
        nodes_explored: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functigraph::{
        build_functigraph, constant_map, from_cycles, identity_map, VertexMap,
    };
    use crate::graphcore::{build_cycle, build_path, build_star_chain};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn budget() -> SolveBudget {
        SolveBudget::default()
    }

    #[test]
    fn small_families() {
        assert_eq!(gamma_bruteforce(&build_cycle(5).unwrap()).unwrap().gamma, 2);
        assert_eq!(
            gamma_exact(&build_cycle(9).unwrap(), &budget())
                .unwrap()
                .gamma,
            3
        );
        assert_eq!(
            gamma_exact(&build_path(1).unwrap(), &budget())
                .unwrap()
                .gamma,
            1
        );
        assert_eq!(
            gamma_exact(&build_path(2).unwrap(), &budget())
                .unwrap()
                .gamma,
            1
        );
        assert_eq!(
            gamma_exact(&build_path(5).unwrap(), &budget())
                .unwrap()
                .gamma,
            2
        );
        for a in 1..=4 {
            assert_eq!(
                gamma_exact(&build_star_chain(a).unwrap(), &budget())
                    .unwrap()
                    .gamma,
                a
            );
        }
    }

    #[test]
    fn cycles_match_ceiling_formula() {
        for n in 3..=21 {
            let c = build_cycle(n).unwrap();
            let r = gamma_exact(&c, &budget()).unwrap();
            assert_eq!(r.gamma, n.div_ceil(3), "C_{n}");
            assert!(c.is_dominating(&r.witness).unwrap());
        }
    }

    #[test]
    fn bruteforce_witness_is_lexicographic() {
        let r = gamma_bruteforce(&build_cycle(6).unwrap()).unwrap();
        assert_eq!(r.witness.to_vec(), vec![0, 3]);
        let c3 = build_cycle(3).unwrap();
        let fg = build_functigraph(&c3, &constant_map(3, 0).unwrap()).unwrap();
        let r = gamma_bruteforce(fg.graph()).unwrap();
        assert_eq!((r.gamma, r.witness.to_vec()), (1, vec![3]));
        assert!(gamma_bruteforce(&build_cycle(25).unwrap()).is_err());
    }

    #[test]
    fn twisted_c4_needs_three() {
        // Representative of the non-prism class of C_4 permutation graphs.
        let c4 = build_cycle(4).unwrap();
        let fg = build_functigraph(&c4, &from_cycles(4, &[&[1, 2]]).unwrap()).unwrap();
        assert_eq!(gamma_bruteforce(fg.graph()).unwrap().gamma, 3);
        assert_eq!(gamma_exact(fg.graph(), &budget()).unwrap().gamma, 3);
    }

    #[test]
    fn larger_instances() {
        let c10 = build_cycle(10).unwrap();
        let fg = build_functigraph(&c10, &identity_map(10).unwrap()).unwrap();
        assert_eq!(gamma_exact(fg.graph(), &budget()).unwrap().gamma, 6);
    }

    #[test]
    fn constrained_solves() {
        let c7 = build_cycle(7).unwrap();
        let empty = VertexSet::empty(7);
        let plain = gamma_exact(&c7, &budget()).unwrap();
        assert_eq!(
            gamma_with_constraints(&c7, &empty, &empty, &budget()).unwrap(),
            plain
        );

        // Oracle: smallest dominating superset of {0} by enumeration.
        let oracle = (0u32..1 << 7)
            .filter(|m| m & 1 == 1)
            .filter(|&m| {
                let s = VertexSet::from_bits(7, m as u128).unwrap();
                c7.is_dominating(&s).unwrap()
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap();
        assert_eq!(oracle, 3);
        let inc = VertexSet::from_indices(7, [0]).unwrap();
        let r = gamma_with_constraints(&c7, &inc, &empty, &budget()).unwrap();
        assert_eq!(r.gamma, oracle);
        assert!(r.witness.contains(0));

        let c3 = build_cycle(3).unwrap();
        assert!(matches!(
            gamma_with_constraints(&c3, &VertexSet::empty(3), &VertexSet::full(3), &budget()),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            gamma_with_constraints(&c3, &inc_of(3, 0), &inc_of(3, 0), &budget()),
            Err(Error::InvalidParameter(_))
        ));
    }

    fn inc_of(n: usize, v: usize) -> VertexSet {
        VertexSet::from_indices(n, [v]).unwrap()
    }

    #[test]
    fn greedy_bounds() {
        let star = build_star_chain(1).unwrap();
        assert_eq!(greedy_upper_bound(&star), (1, inc_of(5, 0)));
        let c6 = build_cycle(6).unwrap();
        let (size, set) = greedy_upper_bound(&c6);
        assert!((2..=3).contains(&size));
        assert!(c6.is_dominating(&set).unwrap());
    }

    #[test]
    fn node_limit_is_reported() {
        let c20 = build_cycle(20).unwrap();
        let fg = build_functigraph(&c20, &identity_map(20).unwrap()).unwrap();
        let tight = SolveBudget {
            max_vertices: 64,
            node_limit: 3,
        };
        match gamma_exact(fg.graph(), &tight) {
            Err(Error::ResourceLimit {
                lower_bound,
                upper_bound,
                ..
            }) => {
                assert!(lower_bound <= 10 && upper_bound >= 10);
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
        let small = SolveBudget {
            max_vertices: 10,
            node_limit: 10,
        };
        assert!(matches!(
            gamma_exact(fg.graph(), &small),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn solver_agrees_with_oracle_on_random_functigraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..500 {
            let n = rng.gen_range(3..=10);
            let f = VertexMap::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap();
            let fg = build_functigraph(&build_cycle(n).unwrap(), &f).unwrap();
            let g = fg.graph();
            let exact = gamma_exact(g, &budget()).unwrap();
            let oracle = gamma_bruteforce(g).unwrap();
            assert_eq!(exact.gamma, oracle.gamma, "{f:?}");
            assert!(g.is_dominating(&exact.witness).unwrap());
            assert_eq!(exact.witness.len(), exact.gamma);
            let (greedy, _) = greedy_upper_bound(g);
            assert!(greedy >= exact.gamma);
            assert!(exact.gamma >= g.order().div_ceil(g.max_degree() + 1));
            let base = n.div_ceil(3);
            assert!(base <= exact.gamma && exact.gamma <= 2 * base);
            assert_eq!(gamma_exact(g, &budget()).unwrap(), exact);
        }
    }

    #[test]
    fn lex_least_matches_oracle_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let n = rng.gen_range(3..=8);
            let f = VertexMap::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap();
            let g = build_functigraph(&build_cycle(n).unwrap(), &f)
                .unwrap()
                .graph()
                .clone();
            let empty = VertexSet::empty(g.order());
            let lex = lex_least_with_constraints(&g, &empty, &empty, &budget()).unwrap();
            assert_eq!(lex.witness, gamma_bruteforce(&g).unwrap().witness);
        }
        let c8 = build_cycle(8).unwrap();
        let include = VertexSet::from_indices(8, [5]).unwrap();
        let r = lex_least_with_constraints(&c8, &include, &VertexSet::empty(8), &budget()).unwrap();
        assert_eq!(r.witness.to_vec(), vec![0, 2, 5]);
    }
}

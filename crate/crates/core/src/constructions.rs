//! Explicit dominating sets for functigraphs over cycles and star chains.
//!
//! Each construction takes an arbitrary instance satisfying its hypothesis,
//! relabels it cyclically (via [`LabelShift`]) into the normalized position
//! the construction is phrased in, builds the set there, maps it back, and
//! certifies it on the original functigraph before returning.
//!
//! Inside the builders vertices are named by 1-based labels `u(i)` / `v(i)`
//! so the index arithmetic reads the same as the set definitions.

use crate::domsolve::{gamma_bruteforce, lex_least_with_constraints, SolveBudget};
use crate::error::{invalid, precondition, Error, Result};
use crate::functigraph::{build_functigraph, Functigraph, LabelShift, VertexMap};
use crate::graphcore::{
    build_cycle, build_star_chain, cycle_distance, star_center, Graph, VertexSet,
};
use crate::registry::TheoremId;

/// An explicit dominating set of a functigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub set: VertexSet,
    pub claimed_size: usize,
    pub theorem_id: TheoremId,
}

/// Collects 1-based `u`/`v` labels over `C(G, f)` with `|G| = n`.
/// Labels wrap modulo `n`.
struct SetBuilder {
    n: usize,
    set: VertexSet,
}

impl SetBuilder {
    fn new(n: usize) -> Self {
        Self {
            n,
            set: VertexSet::empty(2 * n),
        }
    }

    fn u(&mut self, label: usize) -> &mut Self {
        self.set.insert((label + self.n - 1) % self.n);
        self
    }

    fn v(&mut self, label: usize) -> &mut Self {
        self.set.insert(self.n + (label + self.n - 1) % self.n);
        self
    }

    fn us<I: IntoIterator<Item = usize>>(&mut self, labels: I) -> &mut Self {
        for l in labels {
            self.u(l);
        }
        self
    }

    fn vs<I: IntoIterator<Item = usize>>(&mut self, labels: I) -> &mut Self {
        for l in labels {
            self.v(l);
        }
        self
    }

    fn build(&self) -> VertexSet {
        self.set
    }
}

fn certify(
    fg: &Functigraph,
    set: VertexSet,
    claimed_size: usize,
    theorem_id: TheoremId,
) -> Result<Witness> {
    let fail = |message: String| Error::InvalidWitness {
        theorem: theorem_id.to_string(),
        message,
    };
    if set.len() != claimed_size {
        return Err(fail(format!(
            "size {} differs from claimed {claimed_size}",
            set.len()
        )));
    }
    if !fg.graph().is_dominating(&set)? {
        let missed = fg.graph().dominated_by(&set).complement();
        return Err(fail(format!(
            "vertices {:?} undominated",
            fg.labels(&missed)
        )));
    }
    Ok(Witness {
        set,
        claimed_size,
        theorem_id,
    })
}

fn cycle_functigraph(f: &VertexMap) -> Result<Functigraph> {
    build_functigraph(&build_cycle(f.domain_size())?, f)
}

/// Smallest `(domain, codomain)` shift pair, domain-major, satisfying `ok`.
fn first_shift(n: usize, mut ok: impl FnMut(&LabelShift) -> bool) -> Option<LabelShift> {
    (0..n)
        .flat_map(|ds| (0..n).map(move |cs| LabelShift::new(n, ds, cs)))
        .find(|s| ok(s))
}

/// The map `f_i` on a chain of `a` stars: stars `1..=i` collapse onto their
/// codomain centers, everything else maps to its own copy.
pub fn realization_map(a: usize, i: usize) -> Result<VertexMap> {
    if a == 0 {
        return Err(invalid("realization needs a >= 1"));
    }
    if i > a {
        return Err(invalid(format!("realization index i={i} exceeds a={a}")));
    }
    let targets = (0..5 * a)
        .map(|v| {
            let star = v / 5;
            if star < i {
                star_center(star)
            } else {
                v
            }
        })
        .collect();
    VertexMap::new(targets)
}

/// Star chain, `f_i` and the set `{c_{i+1},...,c_a, c'_1,...,c'_a}` of size `2a - i`.
pub fn realization_instance(a: usize, i: usize) -> Result<(Graph, VertexMap, Witness)> {
    let f = realization_map(a, i)?;
    let g = build_star_chain(a)?;
    let fg = build_functigraph(&g, &f)?;
    let n = g.order();
    let mut set = VertexSet::empty(2 * n);
    for j in i..a {
        set.insert(star_center(j));
    }
    for j in 0..a {
        set.insert(n + star_center(j));
    }
    let w = certify(&fg, set, 2 * a - i, TheoremId::Realization)?;
    Ok((g, f, w))
}

/// Dominating set of the prism `C(C_n, id)` of size `⌈n/2⌉`, or `n/2 + 1`
/// when `n ≡ 2 (mod 4)`.
pub fn identity_dominating_set(n: usize) -> Result<Witness> {
    if n < 3 {
        return Err(invalid("identity construction needs n >= 3"));
    }
    let k = n / 4;
    let mut b = SetBuilder::new(n);
    match n % 4 {
        0 => {
            for j in 0..k {
                b.u(4 * j + 1).v(4 * j + 3);
            }
        }
        1 => {
            b.us((0..=k).map(|j| 4 * j + 1))
                .vs((0..k).map(|i| 4 * i + 3));
        }
        2 => {
            b.us((0..=k).map(|j| 4 * j + 1))
                .vs((0..k).map(|i| 4 * i + 3))
                .v(4 * k + 2);
        }
        _ => {
            for j in 0..=k {
                b.u(4 * j + 1).v(4 * j + 3);
            }
        }
    }
    let claimed = if n % 4 == 2 { n / 2 + 1 } else { n.div_ceil(2) };
    let fg = cycle_functigraph(&crate::functigraph::identity_map(n)?)?;
    certify(&fg, b.build(), claimed, TheoremId::CnId)
}

/// `n = 3k+1`: `{v_1} ∪ {u_{3j}, v_{3j} : 1 ≤ j ≤ k}` after moving an edge to `u_1 v_1`.
pub fn mod1_dominating_set(f: &VertexMap) -> Result<Witness> {
    let n = f.domain_size();
    if n < 4 || n % 3 != 1 {
        return Err(invalid(format!(
            "mod1 construction needs n = 3k+1 >= 4, got {n}"
        )));
    }
    let k = (n - 1) / 3;
    let shift = LabelShift::to_origin(n, 0, f.image(0));
    let mut b = SetBuilder::new(n);
    b.v(1);
    for j in 1..=k {
        b.u(3 * j).v(3 * j);
    }
    let set = shift.undo(&b.build());
    certify(&cycle_functigraph(f)?, set, 2 * k + 1, TheoremId::Mod1)
}

/// `n = 3k+2`, `f` not a permutation: pigeonhole over the three residue
/// dominating sets of `G2`, then a matching `k`-set in `G1`. Size `2k+1`.
pub fn nonperm_3k2_dominating_set(f: &VertexMap) -> Result<Witness> {
    let n = f.domain_size();
    if n < 5 || n % 3 != 2 {
        return Err(invalid(format!(
            "construction needs n = 3k+2 >= 5, got {n}"
        )));
    }
    if f.is_permutation() {
        return Err(precondition("map is a permutation"));
    }
    let k = (n - 2) / 3;
    let internal = |message: String| Error::InvalidWitness {
        theorem: TheoremId::NonPerm3k2.to_string(),
        message,
    };

    // A codomain vertex with at least two preimages becomes v_1.
    let first = first_shift(n, |s| {
        s.domain_shift == 0 && f.preimage_count((n - s.codomain_shift) % n) >= 2
    })
    .expect("a non-permutation has a repeated image");
    let g = first.apply(f)?;

    // V_1 = {v_{3i+1}}, V_2 = {v_{3i+2}}, V_3 = {v_{3i}} ∪ {v_1}, as codomain sets.
    let class = |labels: Vec<usize>| VertexSet::from_indices(n, labels.into_iter().map(|l| l - 1));
    let classes = [
        class((0..=k).map(|i| 3 * i + 1).collect())?,
        class((0..=k).map(|i| 3 * i + 2).collect())?,
        class((1..=k).map(|i| 3 * i).chain([1]).collect())?,
    ];
    let mut d2 = classes[0];
    let mut best = 0;
    for c in &classes {
        let size = g.preimage(c)?.len();
        if size > best {
            best = size;
            d2 = *c;
        }
    }
    if best < k + 2 {
        return Err(internal(format!(
            "largest class preimage has {best} < k+2 vertices"
        )));
    }

    // Some preimage of D2 becomes u_1.
    let second = first_shift(n, |s| {
        s.codomain_shift == 0 && d2.contains(g.image((n - s.domain_shift) % n))
    })
    .expect("D2 has preimages");
    let h = second.apply(&g)?;
    let pre = h.preimage(&d2)?;
    let in_pre = |label: usize| pre.contains((label - 1) % n);

    let mut b = SetBuilder::new(n);
    b.vs(d2.iter().map(|c| c + 1));
    if let Some(i) = (0..=k).find(|&i| in_pre(3 * i + 2)) {
        b.us((1..=i).map(|j| 3 * j))
            .us((i + 1..=k).map(|j| 3 * j + 1));
    } else {
        let j0 = (1..=k)
            .find(|&j| in_pre(3 * j) && in_pre(3 * j + 1))
            .ok_or_else(|| internal("no adjacent pair u_{3j}, u_{3j+1} in the preimage".into()))?;
        b.u(1)
            .us((1..j0).map(|j| 3 * j + 1))
            .us((j0 + 1..=k).map(|j| 3 * j));
    }
    let set = first.then(&second).undo(&b.build());
    certify(
        &cycle_functigraph(f)?,
        set,
        2 * k + 1,
        TheoremId::NonPerm3k2,
    )
}

/// First pair `(x, y)`, `x < y`, with `d(x,y) ≡ 1` but `d(f(x),f(y)) ≢ 1 (mod 3)`.
pub fn find_distance_violation(f: &VertexMap) -> Option<(usize, usize)> {
    let n = f.domain_size();
    if n < 3 {
        return None;
    }
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| {
            cycle_distance(n, x, y).ok().is_some_and(|d| d % 3 == 1)
                && cycle_distance(n, f.image(x), f.image(y)).is_ok_and(|d| d % 3 != 1)
        })
}

/// `n = 3k+2` with a pair `x, y` whose distance residue 1 is not preserved.
/// After moving `x` to `u_1` and `f(x)` to `v_1`, `y = u_{3a+2}` and the
/// dominating set splits on where `f(y)` lands. Size `2k+1`.
pub fn distance_3k2_dominating_set(
    f: &VertexMap,
    x: usize,
    y: usize,
    budget: &SolveBudget,
) -> Result<Witness> {
    let n = f.domain_size();
    if n < 5 || n % 3 != 2 {
        return Err(invalid(format!(
            "construction needs n = 3k+2 >= 5, got {n}"
        )));
    }
    if x >= n || y >= n || x == y {
        return Err(invalid(format!(
            "need distinct vertices below {n}, got ({x}, {y})"
        )));
    }
    if cycle_distance(n, x, y)? % 3 != 1 {
        return Err(precondition(format!(
            "d(u{}, u{}) is not 1 mod 3",
            x + 1,
            y + 1
        )));
    }
    if cycle_distance(n, f.image(x), f.image(y))? % 3 == 1 {
        return Err(precondition(format!(
            "d(f(u{}), f(u{})) is 1 mod 3",
            x + 1,
            y + 1
        )));
    }
    let k = (n - 2) / 3;
    let internal = |message: String| Error::InvalidWitness {
        theorem: TheoremId::Distance3k2.to_string(),
        message,
    };
    let shift = LabelShift::to_origin(n, x, f.image(x));
    let g = shift.apply(f)?;
    let y_idx = (y + n - x) % n;
    if y_idx % 3 != 1 {
        return Err(internal(format!("relabeled y at index {y_idx}")));
    }
    let a = (y_idx - 1) / 3;

    let mut b = SetBuilder::new(n);
    b.us((1..=a).map(|i| 3 * i))
        .us((a + 1..=k).map(|i| 3 * i + 1));

    let fy = g.image(y_idx) + 1;
    if fy == 1 {
        let cycle = build_cycle(n)?;
        let include = VertexSet::from_indices(n, [0])?;
        let d2 =
            lex_least_with_constraints(&cycle, &include, &VertexSet::empty(n), budget)?.witness;
        b.vs(d2.iter().map(|c| c + 1));
    } else {
        let ell = fy / 3;
        match (fy % 3, ell) {
            (0, 1) => {
                b.vs((1..=k).map(|i| 3 * i)).v(1);
            }
            (1, 1) => {
                b.vs((1..=k).map(|i| 3 * i + 1)).v(1);
            }
            (0, _) => {
                b.vs((1..ell).map(|i| 3 * i + 1))
                    .vs((ell + 1..=k).map(|i| 3 * i))
                    .v(1)
                    .v(3 * ell);
            }
            (1, _) => {
                b.vs((1..ell).map(|i| 3 * i + 1))
                    .vs((ell + 1..=k).map(|i| 3 * i + 1))
                    .v(1)
                    .v(3 * ell + 1);
            }
            _ => return Err(internal(format!("f(y) = v{fy} is at distance 1 mod 3"))),
        }
    }
    let set = shift.undo(&b.build());
    certify(
        &cycle_functigraph(f)?,
        set,
        2 * k + 1,
        TheoremId::Distance3k2,
    )
}

/// Smallest shift putting five consecutive domain vertices onto `u_1..u_5`
/// with images inside `v_1..v_5`.
pub fn find_consecutive_window(f: &VertexMap) -> Option<LabelShift> {
    let n = f.domain_size();
    if n < 5 {
        return None;
    }
    first_shift(n, |s| {
        (0..5).all(|i| {
            let orig = (i + n - s.domain_shift) % n;
            (f.image(orig) + s.codomain_shift) % n < 5
        })
    })
}

/// `n = 3k+2` with a window of five consecutive vertices mapped into five
/// consecutive vertices: a minimum dominating set of the embedded
/// `C(C_5, ·)` extended by every third vertex on each side. Size at most `2k+1`.
pub fn consecutive5_dominating_set(f: &VertexMap) -> Result<Witness> {
    let n = f.domain_size();
    if n < 5 || n % 3 != 2 {
        return Err(invalid(format!(
            "construction needs n = 3k+2 >= 5, got {n}"
        )));
    }
    let k = (n - 2) / 3;
    let shift = find_consecutive_window(f).ok_or_else(|| {
        precondition("no five consecutive vertices map into five consecutive vertices")
    })?;
    let g = shift.apply(f)?;

    let window = VertexMap::new(g.targets()[..5].to_vec())?;
    let embedded = build_functigraph(&build_cycle(5)?, &window)?;
    let s0 = gamma_bruteforce(embedded.graph())?.witness;
    let (s0_u, s0_v) = embedded.split(&s0);

    let rotated = cycle_functigraph(&g)?;
    let mut b = SetBuilder::new(n);
    b.us(s0_u.iter().map(|i| i + 1))
        .vs(s0_v.iter().map(|i| i + 1));
    let covered = rotated.graph().dominated_by(&b.build());

    let internal = |message: &str| Error::InvalidWitness {
        theorem: TheoremId::Consecutive5.to_string(),
        message: message.to_string(),
    };
    // Boundary repair, domain side first: pick the residue of the every-third
    // extension so the undominated end of the window is picked up.
    for (first, last, side) in [(0, 4, 0), (n, n + 4, n)] {
        let offset = match (covered.contains(first), covered.contains(last)) {
            (true, true) => 1,
            (false, true) => 2,
            (true, false) => 0,
            (false, false) => return Err(internal("both window ends undominated")),
        };
        for j in 2..=k {
            let label = 3 * j + offset;
            if side == 0 {
                b.u(label);
            } else {
                b.v(label);
            }
        }
    }
    let set = b.build();
    if set.len() > 2 * k + 1 {
        return Err(internal("extension exceeds 2k+1 vertices"));
    }
    let set = shift.undo(&set);
    certify(
        &cycle_functigraph(f)?,
        set,
        set.len(),
        TheoremId::Consecutive5,
    )
}

/// `n = 3k` with `Δ(C(C_n, f)) ≥ k+5`: a dominating set of size `2k-1`.
pub fn max_degree_dominating_set(f: &VertexMap) -> Result<Witness> {
    let n = f.domain_size();
    if n < 3 || !n.is_multiple_of(3) {
        return Err(invalid(format!("construction needs n = 3k >= 3, got {n}")));
    }
    let k = n / 3;
    let fg = cycle_functigraph(f)?;
    let delta = fg.graph().max_degree();
    if delta < k + 5 {
        return Err(precondition(format!(
            "max degree {delta} < k+5 = {}",
            k + 5
        )));
    }
    let internal = |message: String| Error::InvalidWitness {
        theorem: TheoremId::MaxDegree.to_string(),
        message,
    };
    let top = (0..n).map(|c| f.preimage_count(c)).max().unwrap_or(0);
    let first = first_shift(n, |s| {
        s.domain_shift == 0 && f.preimage_count((n - s.codomain_shift) % n) == top
    })
    .expect("maximum is attained");
    let g = first.apply(f)?;

    let at_v1 = g.preimage(&VertexSet::from_indices(n, [0])?)?;
    // Group U_i = {u_{3i-2}, u_{3i-1}, u_{3i}} as 0-based indices.
    let group = |i: usize| [3 * i - 3, 3 * i - 2, 3 * i - 1];
    let hits = |i: usize| group(i).iter().filter(|&&x| at_v1.contains(x)).count();

    let mut b = SetBuilder::new(n);
    let shift = if let Some(p) = (1..=k).find(|&p| hits(p) == 3) {
        let second = LabelShift::new(n, n - 3 * (p - 1), 0);
        b.us((5..=n).filter(|l| l % 3 == 2))
            .vs((1..=n).filter(|l| l % 3 == 1));
        first.then(&second)
    } else {
        let full: Vec<usize> = (1..=k).filter(|&i| hits(i) == 2).take(3).collect();
        if full.len() < 3 {
            return Err(internal(format!(
                "only {} groups meet N[v1] twice",
                full.len()
            )));
        }
        // The vertex of each such group outside N[v1], with its group and the
        // residue of its image's label.
        let missing: Vec<(usize, usize)> = full
            .iter()
            .map(|&i| {
                let x = *group(i)
                    .iter()
                    .find(|&&x| !at_v1.contains(x))
                    .expect("two of three hit");
                (i, (g.image(x) + 1) % 3)
            })
            .collect();
        if let Some(&(p, _)) = missing.iter().find(|&&(_, r)| r == 1) {
            b.us((1..=n).filter(|&l| l % 3 == 2 && l != 3 * p - 1))
                .vs((1..=n).filter(|l| l % 3 == 1));
        } else {
            let (p, q, r) = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .find(|&&(a, c)| missing[a].1 == missing[c].1)
                .map(|&(a, c)| (missing[a].0, missing[c].0, missing[a].1))
                .ok_or_else(|| {
                    internal("three residues outside class 1 are pairwise distinct".into())
                })?;
            b.us((1..=n).filter(|&l| l % 3 == 2 && l != 3 * p - 1 && l != 3 * q - 1))
                .v(1)
                .vs((1..=n).filter(|l| l % 3 == r));
        }
        first
    };
    let set = shift.undo(&b.build());
    certify(&fg, set, 2 * k - 1, TheoremId::MaxDegree)
}

/// Codomain residue class `V_i = {v_j : j ≡ i (mod 3)}`, `i ∈ {1, 2, 3}`.
pub fn residue_class(n: usize, class: usize) -> Result<VertexSet> {
    if !(1..=3).contains(&class) {
        return Err(invalid(format!("residue class {class} outside 1..=3")));
    }
    VertexSet::from_indices(n, (0..n).filter(|c| (c + 1) % 3 == class % 3))
}

/// Sum of degrees in `C(C_n, f)` over the residue class `V_i`.
pub fn class_degree_sum(f: &VertexMap, class: usize) -> Result<usize> {
    let n = f.domain_size();
    let v = residue_class(n, class)?;
    Ok(2 * v.len() + f.preimage(&v)?.len())
}

/// `n = 3k`, average degree over `V_i` above 4: `V_i` plus the domain
/// vertices it misses. Size at most `2k-1`.
pub fn avg_degree_dominating_set(f: &VertexMap, class: usize) -> Result<Witness> {
    let n = f.domain_size();
    if n < 3 || !n.is_multiple_of(3) {
        return Err(invalid(format!("construction needs n = 3k >= 3, got {n}")));
    }
    let k = n / 3;
    let sum = class_degree_sum(f, class)?;
    if sum <= 4 * k {
        return Err(precondition(format!(
            "average degree over V{class} is {sum}/{k}, not above 4"
        )));
    }
    let v = residue_class(n, class)?;
    let missed = f.preimage(&v)?.complement();
    let fg = cycle_functigraph(f)?;
    let set = fg.join(&missed, &v);
    if set.len() > 2 * k - 1 {
        return Err(Error::InvalidWitness {
            theorem: TheoremId::AvgDegree.to_string(),
            message: format!("size {} exceeds 2k-1", set.len()),
        });
    }
    certify(&fg, set, set.len(), TheoremId::AvgDegree)
}

/// The map on `C_{3k}` sending `u_i` to `v_i`, `v_{i+1}` or `v_{3k}` by the
/// residue of `i`.
pub fn ex2_map(k: usize) -> Result<VertexMap> {
    if k == 0 {
        return Err(invalid("ex2 map needs k >= 1"));
    }
    let n = 3 * k;
    let targets = (1..=n)
        .map(|i| match i % 3 {
            1 => i - 1,
            2 => i,
            _ => n - 1,
        })
        .collect();
    VertexMap::new(targets)
}

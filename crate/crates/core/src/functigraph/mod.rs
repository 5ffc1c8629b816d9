//! Functigraphs `C(G, f)`: two copies of a base graph joined by the edges
//! `u -> f(u)`.
//!
//! Index convention: for a base graph of order `n`, the domain copy `G1`
//! occupies `0..n` and the codomain copy `G2` occupies `n..2n`. Paper-style
//! labels are 1-based: index `i < n` is `u{i+1}` and index `n + i` is `v{i+1}`.

mod iso;

use std::fmt;

pub use iso::{are_isomorphic, canonical_form, Certificate, ISO_MAX_ORDER};

use crate::error::{invalid, Error, Result};
use crate::graphcore::{cycle_distance, Graph, VertexSet, MAX_ORDER};

/// A function from the domain copy to the codomain copy:
/// `targets[i] = j` means `f(u_{i+1}) = v_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexMap {
    targets: Vec<usize>,
}

impl VertexMap {
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        let n = targets.len();
        if n == 0 {
            return Err(invalid("a vertex map needs a nonempty domain"));
        }
        if n > MAX_ORDER {
            return Err(Error::UnsupportedSize {
                what: "map domain",
                actual: n,
                limit: MAX_ORDER,
            });
        }
        if let Some((i, &t)) = targets.iter().enumerate().find(|(_, &t)| t >= n) {
            return Err(invalid(format!("target {t} of vertex {i} outside 0..{n}")));
        }
        Ok(Self { targets })
    }

    #[inline]
    pub fn domain_size(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.targets[i]
    }

    /// `Range(f)` as a set over the codomain (universe `n`).
    pub fn map_range(&self) -> VertexSet {
        let n = self.domain_size();
        let mut s = VertexSet::empty(n);
        for &t in &self.targets {
            s.insert(t);
        }
        s
    }

    /// `f(S)` for a domain set `S`.
    pub fn image_of(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_universe(s)?;
        let mut out = VertexSet::empty(self.domain_size());
        for i in s.iter() {
            out.insert(self.targets[i]);
        }
        Ok(out)
    }

    /// `f^{-1}(S)` for a codomain set `S`.
    pub fn preimage(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_universe(s)?;
        let mut out = VertexSet::empty(self.domain_size());
        for (i, &t) in self.targets.iter().enumerate() {
            if s.contains(t) {
                out.insert(i);
            }
        }
        Ok(out)
    }

    pub fn preimage_count(&self, target: usize) -> usize {
        self.targets.iter().filter(|&&t| t == target).count()
    }

    pub fn is_permutation(&self) -> bool {
        self.map_range().len() == self.domain_size()
    }

    pub fn is_constant(&self) -> bool {
        self.targets.iter().all(|&t| t == self.targets[0])
    }

    pub fn inverse(&self) -> Option<VertexMap> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0; self.domain_size()];
        for (i, &t) in self.targets.iter().enumerate() {
            inv[t] = i;
        }
        Some(VertexMap { targets: inv })
    }

    /// Whether `d(f(x), f(y)) ≡ 1 (mod 3)` whenever `d(x, y) ≡ 1 (mod 3)`,
    /// distances taken along `C_n` on both sides.
    pub fn satisfies_distance_condition(&self) -> Result<bool> {
        let n = self.domain_size();
        if n < 3 {
            return Err(invalid("distance condition needs a cycle, n >= 3"));
        }
        for x in 0..n {
            for y in x + 1..n {
                if cycle_distance(n, x, y)? % 3 == 1
                    && cycle_distance(n, self.targets[x], self.targets[y])? % 3 != 1
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Cyclic relabeling of both copies: the returned map `g` satisfies
    /// `g((i + domain_shift) mod n) = (f(i) + codomain_shift) mod n`.
    /// Over a cycle, `C(C_n, g)` is isomorphic to `C(C_n, f)`.
    pub fn rotate_labels(&self, domain_shift: usize, codomain_shift: usize) -> Result<VertexMap> {
        let n = self.domain_size();
        if domain_shift >= n || codomain_shift >= n {
            return Err(invalid(format!(
                "shifts ({domain_shift}, {codomain_shift}) outside 0..{n}"
            )));
        }
        let mut targets = vec![0; n];
        for (i, &t) in self.targets.iter().enumerate() {
            targets[(i + domain_shift) % n] = (t + codomain_shift) % n;
        }
        Ok(VertexMap { targets })
    }

    /// Text form: `f <n> : t0 t1 ... t(n-1)` with 0-based targets.
    pub fn to_text(&self) -> String {
        let mut s = format!("f {} :", self.domain_size());
        for t in &self.targets {
            s.push(' ');
            s.push_str(&t.to_string());
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<VertexMap> {
        let perr = |message: String| Error::Parse { line: 1, message };
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| perr("empty map file".into()))?;
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("f") {
            return Err(perr("expected `f <n> : t0 ... t(n-1)`".into()));
        }
        let n: usize = tokens
            .next()
            .ok_or_else(|| perr("missing domain size".into()))?
            .parse()
            .map_err(|e| perr(format!("domain size: {e}")))?;
        if tokens.next() != Some(":") {
            return Err(perr("expected `:` after the domain size".into()));
        }
        let targets = tokens
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| perr(format!("target {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if targets.len() != n {
            return Err(perr(format!(
                "expected {n} targets, found {}",
                targets.len()
            )));
        }
        VertexMap::new(targets).map_err(|e| perr(e.to_string()))
    }

    fn check_universe(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.domain_size() {
            Err(invalid(format!(
                "set universe {} does not match map size {}",
                s.universe(),
                self.domain_size()
            )))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for VertexMap {
    /// Paper labels: `u1->v3 u2->v1 ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.targets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "u{}->v{}", i + 1, t + 1)?;
        }
        Ok(())
    }
}

pub fn identity_map(n: usize) -> Result<VertexMap> {
    VertexMap::new((0..n).collect())
}

pub fn constant_map(n: usize, target: usize) -> Result<VertexMap> {
    if target >= n {
        return Err(invalid(format!("constant target {target} outside 0..{n}")));
    }
    VertexMap::new(vec![target; n])
}

/// A bijection on `0..perm.len()` given by its images.
pub fn from_permutation(perm: &[usize]) -> Result<VertexMap> {
    let map = VertexMap::new(perm.to_vec())?;
    if !map.is_permutation() {
        return Err(invalid(format!("{perm:?} is not a permutation")));
    }
    Ok(map)
}

/// A permutation on `n` points written in cycle notation with 1-based
/// labels, e.g. `&[&[3, 5]]` for the transposition `(3,5)`.
pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<VertexMap> {
    let mut targets: Vec<usize> = (0..n).collect();
    let mut seen = VertexSet::empty(n);
    for cycle in cycles {
        for (pos, &label) in cycle.iter().enumerate() {
            if label == 0 || label > n {
                return Err(invalid(format!("cycle label {label} outside 1..={n}")));
            }
            if seen.contains(label - 1) {
                return Err(invalid(format!("label {label} appears twice")));
            }
            seen.insert(label - 1);
            let next = cycle[(pos + 1) % cycle.len()];
            if next == 0 || next > n {
                return Err(invalid(format!("cycle label {next} outside 1..={n}")));
            }
            targets[label - 1] = next - 1;
        }
    }
    from_permutation(&targets)
}

/// The composite graph `C(G, f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functigraph {
    base: Graph,
    graph: Graph,
    map: VertexMap,
}

impl Functigraph {
    #[inline]
    pub fn base_order(&self) -> usize {
        self.base.order()
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn map(&self) -> &VertexMap {
        &self.map
    }

    #[inline]
    pub fn domain_vertex(&self, i: usize) -> usize {
        i
    }

    #[inline]
    pub fn codomain_vertex(&self, i: usize) -> usize {
        self.base_order() + i
    }

    /// Splits a set over `C(G, f)` into its domain part and codomain part,
    /// both expressed over the base universe `0..n`.
    pub fn split(&self, s: &VertexSet) -> (VertexSet, VertexSet) {
        let n = self.base_order();
        let low = (1u128 << n) - 1;
        let d1 = VertexSet::from_bits(n, s.bits() & low).expect("masked");
        let d2 = VertexSet::from_bits(n, (s.bits() >> n) & low).expect("masked");
        (d1, d2)
    }

    /// Inverse of [`Functigraph::split`].
    pub fn join(&self, d1: &VertexSet, d2: &VertexSet) -> VertexSet {
        VertexSet::from_bits(
            2 * self.base_order(),
            d1.bits() | (d2.bits() << self.base_order()),
        )
        .expect("both halves lie inside the base universe")
    }

    pub fn label(&self, index: usize) -> String {
        functigraph_label(self.base_order(), index)
    }

    pub fn labels(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.label(v)).collect()
    }
}

/// `u{i+1}` for domain indices, `v{i+1}` for codomain indices.
pub fn functigraph_label(base_order: usize, index: usize) -> String {
    if index < base_order {
        format!("u{}", index + 1)
    } else {
        format!("v{}", index - base_order + 1)
    }
}

/// Parses a label produced by [`functigraph_label`] back to an index. A
/// trailing prime on a codomain label (`v3'`) is accepted.
pub fn parse_functigraph_label(base_order: usize, label: &str) -> Result<usize> {
    let (side, num) = label.split_at(label.len().min(1));
    let num = match side {
        "v" => num.strip_suffix('\'').unwrap_or(num),
        _ => num,
    };
    let i: usize = num
        .parse()
        .map_err(|_| invalid(format!("bad vertex label {label:?}")))?;
    if i == 0 || i > base_order {
        return Err(invalid(format!("label {label:?} outside 1..={base_order}")));
    }
    match side {
        "u" => Ok(i - 1),
        "v" => Ok(base_order + i - 1),
        _ => Err(invalid(format!("bad vertex label {label:?}"))),
    }
}

pub fn build_functigraph(base: &Graph, f: &VertexMap) -> Result<Functigraph> {
    let n = base.order();
    if f.domain_size() != n {
        return Err(invalid(format!(
            "map size {} does not match base order {n}",
            f.domain_size()
        )));
    }
    if 2 * n > MAX_ORDER {
        return Err(Error::UnsupportedSize {
            what: "functigraph order",
            actual: 2 * n,
            limit: MAX_ORDER,
        });
    }
    let edges = base
        .edges()
        .flat_map(|(i, j)| [(i, j), (n + i, n + j)])
        .chain(f.targets().iter().enumerate().map(|(i, &t)| (i, n + t)));
    Ok(Functigraph {
        base: base.clone(),
        graph: Graph::from_edges(2 * n, edges)?,
        map: f.clone(),
    })
}

/// A three-translate on `C_{3k}` given by its restriction to `{1, 2, 3}`,
/// stored in 1-based labels as written `(a1, a2, a3)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ThreeTranslate {
    tilde: [u8; 3],
}

impl ThreeTranslate {
    pub fn new(a1: u8, a2: u8, a3: u8) -> Result<Self> {
        let tilde = [a1, a2, a3];
        if tilde.iter().any(|&a| !(1..=3).contains(&a)) {
            return Err(invalid(format!(
                "three-translate {tilde:?} needs entries in 1..=3"
            )));
        }
        Ok(Self { tilde })
    }

    pub fn tilde(&self) -> [u8; 3] {
        self.tilde
    }

    /// All 27 restrictions in lexicographic order.
    pub fn all() -> Vec<ThreeTranslate> {
        let mut out = Vec::with_capacity(27);
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    out.push(ThreeTranslate { tilde: [a, b, c] });
                }
            }
        }
        out
    }

    pub fn is_permutation(&self) -> bool {
        let [a, b, c] = self.tilde;
        a != b && b != c && a != c
    }

    pub fn is_constant(&self) -> bool {
        let [a, b, c] = self.tilde;
        a == b && b == c
    }

    /// Parses `a1,a2,a3` (parentheses optional).
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u8>()
                    .map_err(|_| invalid(format!("bad tilde {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match parts.as_slice() {
            &[a, b, c] => Self::new(a, b, c),
            _ => Err(invalid(format!("tilde {s:?} needs exactly three entries"))),
        }
    }

    /// The map on `C_{3k}` with `f(x + 3i) = f(x) + 3i`.
    pub fn expand(&self, k: usize) -> Result<VertexMap> {
        three_translate_expand(*self, k)
    }
}

impl fmt::Display for ThreeTranslate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.tilde;
        write!(f, "({a},{b},{c})")
    }
}

pub fn three_translate_expand(t: ThreeTranslate, k: usize) -> Result<VertexMap> {
    if k == 0 {
        return Err(invalid("three-translate needs k >= 1"));
    }
    let targets = (0..3 * k)
        .map(|idx| {
            let (block, x) = (idx / 3, idx % 3);
            usize::from(t.tilde[x]) - 1 + 3 * block
        })
        .collect();
    VertexMap::new(targets)
}

/// A cyclic relabeling of both copies of `C(C_n, f)`, recorded so that sets
/// found on the relabeled graph can be mapped back to the original one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelShift {
    pub n: usize,
    pub domain_shift: usize,
    pub codomain_shift: usize,
}

impl LabelShift {
    pub fn new(n: usize, domain_shift: usize, codomain_shift: usize) -> Self {
        Self {
            n,
            domain_shift: domain_shift % n,
            codomain_shift: codomain_shift % n,
        }
    }

    /// The shift moving domain index `from_domain` to 0 and codomain index
    /// `from_codomain` to 0.
    pub fn to_origin(n: usize, from_domain: usize, from_codomain: usize) -> Self {
        Self::new(n, (n - from_domain % n) % n, (n - from_codomain % n) % n)
    }

    pub fn apply(&self, f: &VertexMap) -> Result<VertexMap> {
        f.rotate_labels(self.domain_shift, self.codomain_shift)
    }

    pub fn then(&self, next: &LabelShift) -> LabelShift {
        LabelShift::new(
            self.n,
            self.domain_shift + next.domain_shift,
            self.codomain_shift + next.codomain_shift,
        )
    }

    /// Maps a vertex set of the relabeled functigraph back to the original.
    pub fn undo(&self, s: &VertexSet) -> VertexSet {
        let n = self.n;
        let mut out = VertexSet::empty(2 * n);
        for v in s.iter() {
            if v < n {
                out.insert((v + n - self.domain_shift) % n);
            } else {
                out.insert(n + (v - n + n - self.codomain_shift) % n);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{build_cycle, build_path};

    #[test]
    fn functigraph_edges() {
        let c3 = build_cycle(3).unwrap();
        let fg = build_functigraph(&c3, &constant_map(3, 0).unwrap()).unwrap();
        assert_eq!(fg.graph().order(), 6);
        assert_eq!(fg.graph().degree(3).unwrap(), 5);
        assert_eq!(
            fg.graph().closed_neighborhood(3).unwrap(),
            fg.graph().vertices()
        );

        let c4 = build_cycle(4).unwrap();
        let prism = build_functigraph(&c4, &identity_map(4).unwrap()).unwrap();
        assert!((0..8).all(|v| prism.graph().degree(v).unwrap() == 3));

        let c5 = build_cycle(5).unwrap();
        let fg = build_functigraph(&c5, &VertexMap::new(vec![4, 4, 0, 2, 1]).unwrap()).unwrap();
        assert_eq!(fg.graph().order(), 10);
        assert_eq!(fg.graph().edge_count(), 15);
        for i in 0..5 {
            let cross = fg
                .graph()
                .neighbors(i)
                .difference(&VertexSet::from_bits(10, 0b11111).unwrap());
            assert_eq!(cross.to_vec(), vec![5 + fg.map().image(i)]);
        }
        assert!(build_functigraph(&c5, &identity_map(4).unwrap()).is_err());
    }

    #[test]
    fn restrictions_match_base() {
        let p = build_path(6).unwrap();
        let f = VertexMap::new(vec![5, 0, 0, 3, 2, 2]).unwrap();
        let fg = build_functigraph(&p, &f).unwrap();
        let lo = VertexSet::from_indices(12, 0..6).unwrap();
        let hi = lo.complement();
        assert_eq!(fg.graph().induced_subgraph(&lo).unwrap().0, p);
        assert_eq!(fg.graph().induced_subgraph(&hi).unwrap().0, p);
    }

    #[test]
    fn map_families() {
        assert_eq!(identity_map(4).unwrap().targets(), &[0, 1, 2, 3]);
        assert_eq!(constant_map(3, 0).unwrap().targets(), &[0, 0, 0]);
        assert!(constant_map(3, 3).is_err());
        assert_eq!(
            from_cycles(5, &[&[3, 5]]).unwrap().targets(),
            &[0, 1, 4, 3, 2]
        );
        assert_eq!(
            from_cycles(5, &[&[3, 4, 5]]).unwrap().targets(),
            &[0, 1, 3, 4, 2]
        );
        assert!(from_permutation(&[0, 0, 1]).is_err());
        assert!(from_cycles(3, &[&[1, 1]]).is_err());

        let id = identity_map(7).unwrap();
        assert!(id.is_permutation() && !id.is_constant());
        let c = constant_map(7, 3).unwrap();
        assert!(!c.is_permutation() && c.is_constant());
    }

    #[test]
    fn range_and_preimage() {
        let id = identity_map(6).unwrap();
        let s = VertexSet::from_indices(6, [1, 4]).unwrap();
        assert_eq!(id.preimage(&s).unwrap(), s);
        let c = constant_map(5, 2).unwrap();
        let two = VertexSet::from_indices(5, [2]).unwrap();
        assert_eq!(c.preimage(&two).unwrap(), VertexSet::full(5));
        assert_eq!(c.map_range(), two);
        assert!(c.preimage(&VertexSet::empty(4)).is_err());
        let f = VertexMap::new(vec![1, 1, 3, 0]).unwrap();
        assert_eq!(
            f.image_of(&VertexSet::from_indices(4, [0, 1, 2]).unwrap())
                .unwrap()
                .to_vec(),
            vec![1, 3]
        );
        assert_eq!(f.inverse(), None);
        let p = VertexMap::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().unwrap().targets(), &[1, 2, 0]);
    }

    #[test]
    fn three_translates() {
        for k in 1..6 {
            assert_eq!(
                ThreeTranslate::new(1, 2, 3).unwrap().expand(k).unwrap(),
                identity_map(3 * k).unwrap()
            );
        }
        // Paper labels 1->2, 2->1, 3->3, 4->5, 5->4, 6->6.
        let f = ThreeTranslate::new(2, 1, 3).unwrap().expand(2).unwrap();
        assert_eq!(f.targets(), &[1, 0, 2, 4, 3, 5]);
        let f = ThreeTranslate::new(2, 3, 1).unwrap().expand(4).unwrap();
        assert_eq!(f.targets(), &[1, 2, 0, 4, 5, 3, 7, 8, 6, 10, 11, 9]);
        assert!(!ThreeTranslate::new(1, 1, 2)
            .unwrap()
            .expand(3)
            .unwrap()
            .is_permutation());
        assert!(ThreeTranslate::new(0, 1, 2).is_err());
        assert!(ThreeTranslate::new(1, 2, 3).unwrap().expand(0).is_err());
        assert_eq!(ThreeTranslate::all().len(), 27);
        assert_eq!(
            ThreeTranslate::all()
                .iter()
                .filter(|t| t.is_permutation())
                .count(),
            6
        );
        assert_eq!(
            ThreeTranslate::parse("(2,1,3)").unwrap(),
            ThreeTranslate::new(2, 1, 3).unwrap()
        );
        assert!(ThreeTranslate::parse("2,1").is_err());
    }

    #[test]
    fn distance_condition() {
        for n in 3..10 {
            assert!(identity_map(n)
                .unwrap()
                .satisfies_distance_condition()
                .unwrap());
        }
        let swap = from_cycles(5, &[&[3, 4]]).unwrap();
        assert!(!swap.satisfies_distance_condition().unwrap());
        assert!(!constant_map(7, 2)
            .unwrap()
            .satisfies_distance_condition()
            .unwrap());
    }

    #[test]
    fn rotation() {
        let f = VertexMap::new(vec![3, 1, 1, 0, 4]).unwrap();
        assert_eq!(f.rotate_labels(0, 0).unwrap(), f);
        let g = f.rotate_labels(0, 2).unwrap();
        assert_eq!(g.image(0), 0);
        let g = f.rotate_labels(2, 1).unwrap();
        for i in 0..5 {
            assert_eq!(g.image((i + 2) % 5), (f.image(i) + 1) % 5);
        }
        assert!(f.rotate_labels(5, 0).is_err());

        let shift = LabelShift::to_origin(5, 3, 0);
        let g = shift.apply(&f).unwrap();
        assert_eq!(g.image(0), 0);
        let fg = build_functigraph(&build_cycle(5).unwrap(), &g).unwrap();
        let s = VertexSet::from_indices(10, [0, 5]).unwrap();
        let back = shift.undo(&s);
        assert!(back.contains(3) && back.contains(5));
        assert_eq!(
            fg.split(&fg.join(&VertexSet::full(5), &VertexSet::empty(5)))
                .0,
            VertexSet::full(5)
        );
    }

    #[test]
    fn text_and_labels() {
        let f = VertexMap::new(vec![2, 0, 1, 1]).unwrap();
        assert_eq!(f.to_text(), "f 4 : 2 0 1 1");
        assert_eq!(VertexMap::parse_text("f 4 : 2 0 1 1\n").unwrap(), f);
        assert!(VertexMap::parse_text("f 4 : 2 0 1").is_err());
        assert!(VertexMap::parse_text("f 2 : 2 0").is_err());
        assert!(VertexMap::parse_text("g 2 : 1 0").is_err());
        for idx in 0..16 {
            let l = functigraph_label(8, idx);
            assert_eq!(parse_functigraph_label(8, &l).unwrap(), idx);
        }
        assert_eq!(functigraph_label(8, 10), "v3");
        assert!(parse_functigraph_label(8, "w1").is_err());
        assert!(parse_functigraph_label(8, "u9").is_err());
    }
}

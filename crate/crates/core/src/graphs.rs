//! Two-pointed genus-0 stable graphs on the contracted invariant curves.
//!
//! Trees are grown one leaf at a time under a degree budget and deduplicated
//! by an AHU-style canonical string minimized over all roots. Marks are
//! placed last: mark 1 on a vertex carrying the smaller marked label, mark 2
//! on one carrying the larger, so each mark-swap class appears once.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{Chart, FixedPoint, InvariantCurve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: FixedPoint,
    /// Sorted subset of `{1, 2}`.
    pub marks: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: (usize, usize),
    pub curve: InvariantCurve,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// `S(i, j)`: edges on `C_{i,j}`, marks on `R^{(1)}`, `R^{(2)}`.
/// `T(i; j, k)`: edges on the punctual curves of chart `i`, marks on `Q_{i,j}`, `Q_{i,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    S { i: Chart, j: Chart },
    T { i: Chart, j: u8, k: u8 },
}

impl GraphFamily {
    pub fn s(i: Chart, j: Chart) -> Result<GraphFamily> {
        if i == j {
            return Err(Error::Family(format!("S({i},{j}) needs i != j")));
        }
        Ok(GraphFamily::S { i, j })
    }

    pub fn t(i: Chart, j: u8, k: u8) -> Result<GraphFamily> {
        if !(j < k && k <= 2) {
            return Err(Error::Family(format!("T({i};{j},{k}) needs 0 <= j < k <= 2")));
        }
        Ok(GraphFamily::T { i, j, k })
    }

    /// Fixed points a vertex of this family may carry.
    pub fn labels(&self) -> Vec<FixedPoint> {
        match *self {
            GraphFamily::S { i, j } => vec![FixedPoint::Pair { i, j, s: 1 }, FixedPoint::Pair { i, j, s: 2 }],
            GraphFamily::T { i, .. } => (0..3).map(|k| FixedPoint::Punctual { i, k }).collect(),
        }
    }

    /// Labels of the vertices carrying mark 1 and mark 2.
    pub fn marked_labels(&self) -> (FixedPoint, FixedPoint) {
        match *self {
            GraphFamily::S { i, j } => (FixedPoint::Pair { i, j, s: 1 }, FixedPoint::Pair { i, j, s: 2 }),
            GraphFamily::T { i, j, k } => (FixedPoint::Punctual { i, k: j }, FixedPoint::Punctual { i, k }),
        }
    }

    pub fn allows(&self, curve: &InvariantCurve) -> bool {
        match (*self, *curve) {
            (GraphFamily::S { i, j }, InvariantCurve::Pair { i: a, j: b }) => i == a && j == b,
            (GraphFamily::T { i, .. }, InvariantCurve::Punctual { i: a, .. }) => i == a,
            _ => false,
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::S { i, j } => write!(f, "S({i},{j})"),
            GraphFamily::T { i, j, k } => write!(f, "T({i};{j},{k})"),
        }
    }
}

fn label_key(p: &FixedPoint) -> usize {
    FixedPoint::all().iter().position(|q| q == p).unwrap()
}

fn curve_key(c: &InvariantCurve) -> usize {
    crate::geometry::curve_catalog().iter().position(|q| q == c).unwrap()
}

impl StableGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `(neighbour, edge index)` lists.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            let (a, b) = edge.ends;
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.ends.0 == v || e.ends.1 == v).count()
    }

    /// `sum_e beta(curve_e) * d_e`.
    pub fn total_degree(&self) -> u32 {
        self.edges.iter().map(|e| e.curve.beta_multiple() * e.degree).sum()
    }

    fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        if self.edges.iter().any(|e| e.ends.0 >= n || e.ends.1 >= n || e.ends.0 == e.ends.1) {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn encode(&self, adj: &[Vec<(usize, usize)>], v: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = adj[v]
            .iter()
            .filter(|&&(u, _)| Some(u) != parent)
            .map(|&(u, e)| {
                let edge = &self.edges[e];
                format!("{}.{}{}", curve_key(&edge.curve), edge.degree, self.encode(adj, u, Some(v)))
            })
            .collect();
        children.sort();
        let marks: String = self.vertices[v].marks.iter().map(|m| m.to_string()).collect();
        format!("({}m{}[{}])", label_key(&self.vertices[v].label), marks, children.join(","))
    }

    /// Isomorphism invariant: equal iff the graphs are isomorphic
    /// (preserving labels, marks, curves and degrees).
    pub fn canonical_form(&self) -> String {
        let adj = self.adjacency();
        (0..self.vertices.len()).map(|r| self.encode(&adj, r, None)).min().unwrap_or_default()
    }

    fn add_leaf(&self, at: usize, label: FixedPoint, curve: InvariantCurve, degree: u32) -> StableGraph {
        let mut g = self.clone();
        g.vertices.push(Vertex { label, marks: Vec::new() });
        g.edges.push(Edge { ends: (at, g.vertices.len() - 1), curve, degree });
        g
    }
}

impl fmt::Display for StableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if v.marks.is_empty() {
                    format!("v{k}:{}", v.label)
                } else {
                    let m: Vec<String> = v.marks.iter().map(|m| m.to_string()).collect();
                    format!("v{k}:{}{{{}}}", v.label, m.join(","))
                }
            })
            .collect();
        let es: Vec<String> =
            self.edges.iter().map(|e| format!("v{}-v{}:{}x{}", e.ends.0, e.ends.1, e.curve, e.degree)).collect();
        write!(f, "[{}; {}]", vs.join(" "), es.join(" "))
    }
}

/// One representative per isomorphism class of marked graphs in `family`
/// with total degree `d`, sorted by canonical form.
pub fn enumerate(family: &GraphFamily, d: u32) -> Vec<StableGraph> {
    if d == 0 {
        return Vec::new();
    }
    let labels = family.labels();
    let (m1, m2) = family.marked_labels();

    // unmarked trees keyed by canonical form, grouped by remaining budget
    let mut frontier: BTreeMap<String, (StableGraph, u32)> = BTreeMap::new();
    for &l in &labels {
        let g = StableGraph { vertices: vec![Vertex { label: l, marks: Vec::new() }], edges: Vec::new() };
        frontier.insert(g.canonical_form(), (g, d));
    }
    let mut complete: Vec<StableGraph> = Vec::new();
    while !frontier.is_empty() {
        let mut next: BTreeMap<String, (StableGraph, u32)> = BTreeMap::new();
        for (g, budget) in frontier.into_values() {
            if budget == 0 {
                complete.push(g);
                continue;
            }
            for v in 0..g.vertices.len() {
                let here = g.vertices[v].label;
                for &l in &labels {
                    let Some(curve) = InvariantCurve::joining(&here, &l) else { continue };
                    if !family.allows(&curve) {
                        continue;
                    }
                    let beta = curve.beta_multiple();
                    for de in 1..=budget / beta {
                        let h = g.add_leaf(v, l, curve, de);
                        let rest = budget - beta * de;
                        if !can_finish(&h, rest, m1, m2) {
                            continue;
                        }
                        next.entry(h.canonical_form()).or_insert((h, rest));
                    }
                }
            }
        }
        frontier = next;
    }

    let mut classes: BTreeMap<String, StableGraph> = BTreeMap::new();
    for g in complete {
        for a in 0..g.vertices.len() {
            if g.vertices[a].label != m1 {
                continue;
            }
            for b in 0..g.vertices.len() {
                if g.vertices[b].label != m2 {
                    continue;
                }
                let mut h = g.clone();
                h.vertices[a].marks.push(1);
                h.vertices[b].marks.push(2);
                classes.entry(h.canonical_form()).or_insert(h);
            }
        }
    }
    classes.into_values().collect()
}

// Each missing marked label needs at least one more unit of budget.
fn can_finish(g: &StableGraph, budget: u32, m1: FixedPoint, m2: FixedPoint) -> bool {
    let missing = [m1, m2].iter().filter(|m| !g.vertices.iter().any(|v| v.label == **m)).count() as u32;
    missing <= budget
}

/// `|Aut(G)| * prod_e d_e`.
pub fn automorphism_order(g: &StableGraph) -> u64 {
    let n = g.vertices.len();
    let mut edge_at: BTreeMap<(usize, usize), (InvariantCurve, u32)> = BTreeMap::new();
    for e in &g.edges {
        edge_at.insert((e.ends.0, e.ends.1), (e.curve, e.degree));
        edge_at.insert((e.ends.1, e.ends.0), (e.curve, e.degree));
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let aut = count_automorphisms(g, &edge_at, 0, &mut image, &mut used);
    let cover: u64 = g.edges.iter().map(|e| u64::from(e.degree)).product();
    aut * cover
}

fn count_automorphisms(
    g: &StableGraph,
    edge_at: &BTreeMap<(usize, usize), (InvariantCurve, u32)>,
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> u64 {
    let n = g.vertices.len();
    if v == n {
        return 1;
    }
    let mut total = 0;
    for u in 0..n {
        if used[u] || g.vertices[u] != g.vertices[v] {
            continue;
        }
        let consistent = (0..v).all(|x| match edge_at.get(&(x, v)) {
            Some(data) => edge_at.get(&(image[x], u)) == Some(data),
            None => true,
        });
        if !consistent {
            continue;
        }
        image[v] = u;
        used[u] = true;
        total += count_automorphisms(g, edge_at, v + 1, image, used);
        used[u] = false;
    }
    total
}

/// All structural, family and degree constraints.
pub fn validate(g: &StableGraph, family: &GraphFamily, d: u32) -> bool {
    if !g.is_tree() {
        return false;
    }
    let labels = family.labels();
    if g.vertices.iter().any(|v| !labels.contains(&v.label)) {
        return false;
    }
    for e in &g.edges {
        if e.degree == 0 || !family.allows(&e.curve) {
            return false;
        }
        let (a, b) = e.curve.endpoints();
        let (la, lb) = (g.vertices[e.ends.0].label, g.vertices[e.ends.1].label);
        if !((la == a && lb == b) || (la == b && lb == a)) {
            return false;
        }
    }
    let holders =
        |m: u8| -> Vec<usize> { (0..g.vertices.len()).filter(|&v| g.vertices[v].marks.contains(&m)).collect() };
    let (h1, h2) = (holders(1), holders(2));
    if h1.len() != 1 || h2.len() != 1 {
        return false;
    }
    if g.vertices.iter().any(|v| v.marks.iter().any(|m| *m != 1 && *m != 2)) {
        return false;
    }
    let (m1, m2) = family.marked_labels();
    let (l1, l2) = (g.vertices[h1[0]].label, g.vertices[h2[0]].label);
    if !((l1 == m1 && l2 == m2) || (l1 == m2 && l2 == m1)) {
        return false;
    }
    g.total_degree() == d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: u8) -> Chart {
        Chart::new(i).unwrap()
    }

    fn single_edge(de: u32) -> StableGraph {
        let (i, j) = (c(0), c(1));
        StableGraph {
            vertices: vec![
                Vertex { label: FixedPoint::Pair { i, j, s: 1 }, marks: vec![1] },
                Vertex { label: FixedPoint::Pair { i, j, s: 2 }, marks: vec![2] },
            ],
            edges: vec![Edge { ends: (0, 1), curve: InvariantCurve::Pair { i, j }, degree: de }],
        }
    }

    #[test]
    fn s_degree_one() {
        let fam = GraphFamily::s(c(0), c(1)).unwrap();
        let gs = enumerate(&fam, 1);
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].canonical_form(), single_edge(1).canonical_form());
        assert!(validate(&gs[0], &fam, 1));
    }

    #[test]
    fn t_degree_one() {
        let f12 = GraphFamily::t(c(2), 1, 2).unwrap();
        assert!(enumerate(&f12, 1).is_empty());
        let f01 = GraphFamily::t(c(2), 0, 1).unwrap();
        let gs = enumerate(&f01, 1);
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].edges.len(), 1);
        assert_eq!(gs[0].edges[0].degree, 1);
        assert!(gs[0].vertices.iter().all(|v| v.marks.len() == 1));
    }

    #[test]
    fn automorphisms_small() {
        assert_eq!(automorphism_order(&single_edge(1)), 1);
        assert_eq!(automorphism_order(&single_edge(2)), 2);
        // center R1 with mark 1, two leaves R2, one holding mark 2
        let (i, j) = (c(0), c(1));
        let curve = InvariantCurve::Pair { i, j };
        let star = StableGraph {
            vertices: vec![
                Vertex { label: FixedPoint::Pair { i, j, s: 1 }, marks: vec![1] },
                Vertex { label: FixedPoint::Pair { i, j, s: 2 }, marks: vec![2] },
                Vertex { label: FixedPoint::Pair { i, j, s: 2 }, marks: vec![] },
            ],
            edges: vec![Edge { ends: (0, 1), curve, degree: 1 }, Edge { ends: (0, 2), curve, degree: 1 }],
        };
        assert_eq!(automorphism_order(&star), 1);
        // unmarked symmetric leaves swap
        let mut sym = star.clone();
        sym.vertices[0].marks = vec![1];
        sym.vertices[1].marks.clear();
        sym.vertices.push(Vertex { label: FixedPoint::Pair { i, j, s: 2 }, marks: vec![2] });
        sym.edges.push(Edge { ends: (0, 3), curve, degree: 1 });
        assert_eq!(automorphism_order(&sym), 2);
    }

    #[test]
    fn validate_rejects() {
        let fam = GraphFamily::s(c(0), c(1)).unwrap();
        let mut cyc = single_edge(1);
        cyc.edges.push(cyc.edges[0].clone());
        assert!(!validate(&cyc, &fam, 2));
        assert!(!validate(&single_edge(1), &fam, 2));
        let tfam = GraphFamily::t(c(0), 0, 1).unwrap();
        assert!(!validate(&single_edge(1), &tfam, 1));
        let mut nomark = single_edge(1);
        nomark.vertices[1].marks.clear();
        assert!(!validate(&nomark, &fam, 1));
        let mut swapped = single_edge(1);
        swapped.vertices[0].marks = vec![2];
        swapped.vertices[1].marks = vec![1];
        assert!(validate(&swapped, &fam, 1));
    }

    #[test]
    fn family_constructors() {
        assert!(GraphFamily::s(c(1), c(1)).is_err());
        assert!(GraphFamily::t(c(1), 2, 1).is_err());
        assert!(GraphFamily::t(c(1), 1, 3).is_err());
    }

    #[test]
    fn enumerated_graphs_are_valid_and_distinct() {
        let fams = [
            GraphFamily::s(c(2), c(0)).unwrap(),
            GraphFamily::t(c(1), 0, 1).unwrap(),
            GraphFamily::t(c(1), 0, 2).unwrap(),
            GraphFamily::t(c(1), 1, 2).unwrap(),
        ];
        for fam in fams {
            for d in 1..=4 {
                let gs = enumerate(&fam, d);
                let mut forms: Vec<String> = gs.iter().map(|g| g.canonical_form()).collect();
                for g in &gs {
                    assert!(validate(g, &fam, d), "{fam} d={d}: {g}");
                    let uses_c12 =
                        g.edges.iter().any(|e| matches!(e.curve, InvariantCurve::Punctual { k: 1, l: 2, .. }));
                    assert!(!uses_c12 || d >= 3);
                }
                let n = forms.len();
                forms.dedup();
                assert_eq!(forms.len(), n);
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let fam = GraphFamily::t(c(1), 0, 2).unwrap();
        assert_eq!(enumerate(&fam, 3), enumerate(&fam, 3));
    }
}

//! Diamond graphs and general layered graphs.
//!
//! A [`LayeredGraph`] is a connected simple graph whose nodes are partitioned
//! into layers `0..=N` by graph distance from a single left end node `x_L`.
//! Every edge joins adjacent layers and both end layers are singletons, so the
//! right end `x_R` is the unique node at distance `N`.
//!
//! Diamond graphs are grown from a [`GrowthSpec`]: starting from the single
//! edge `x_L - x_R`, level `i` replaces every edge by `branching[i]` parallel
//! paths of `segmenting[i]` edges each.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

/// Upper bound on the number of edges a [`GrowthSpec`] may produce.
pub const MAX_EDGES: usize = 1 << 22;

/// Branching and segmenting sequences of a diamond family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrowthSpec {
    branching: Vec<usize>,
    segmenting: Vec<usize>,
}

impl GrowthSpec {
    pub fn new(branching: Vec<usize>, segmenting: Vec<usize>) -> Result<Self> {
        if branching.len() != segmenting.len() {
            return Err(Error::GrowthLengthMismatch {
                branching: branching.len(),
                segmenting: segmenting.len(),
            });
        }
        for (i, (&b, &s)) in branching.iter().zip(&segmenting).enumerate() {
            if b == 0 || s == 0 {
                return Err(Error::ZeroGrowthParameter { level: i + 1 });
            }
            if b >= 2 && s < 2 {
                return Err(Error::ParallelEdges {
                    level: i + 1,
                    branching: b,
                });
            }
        }
        let spec = GrowthSpec {
            branching,
            segmenting,
        };
        spec.predicted_counts()
            .filter(|&(_, edges)| edges <= MAX_EDGES)
            .ok_or(Error::GraphTooLarge { limit: MAX_EDGES })?;
        Ok(spec)
    }

    /// The standard diamond: two branches of two segments at every level.
    pub fn standard(level: usize) -> Self {
        GrowthSpec::new(vec![2; level], vec![2; level]).expect("standard diamond is valid")
    }

    pub fn level(&self) -> usize {
        self.branching.len()
    }

    pub fn branching(&self) -> &[usize] {
        &self.branching
    }

    pub fn segmenting(&self) -> &[usize] {
        &self.segmenting
    }

    /// `N`, the product of the segmenting numbers.
    pub fn chain_length(&self) -> usize {
        self.segmenting.iter().product()
    }

    /// `|V|` from the recursion `V_l = V_{l-1} + N_l (J_l - 1) E_{l-1}`.
    pub fn node_count(&self) -> usize {
        self.predicted_counts().expect("checked on construction").0
    }

    /// `|E| = prod N_l J_l`.
    pub fn edge_count(&self) -> usize {
        self.predicted_counts().expect("checked on construction").1
    }

    fn predicted_counts(&self) -> Option<(usize, usize)> {
        let (mut nodes, mut edges) = (2usize, 1usize);
        for (&b, &s) in self.branching.iter().zip(&self.segmenting) {
            let fresh = edges.checked_mul(b)?.checked_mul(s - 1)?;
            nodes = nodes.checked_add(fresh)?;
            edges = edges.checked_mul(b)?.checked_mul(s)?;
        }
        Some((nodes, edges))
    }
}

/// Node identifier.
///
/// Diamond nodes carry canonical hierarchical addresses: `L` and `R` for the
/// two ends, otherwise a `/`-separated list of `branch.segment` pairs. All but
/// the last pair locate the edge that was subdivided (branch and segment at
/// each earlier level); the last pair gives the branch and the position of the
/// node along it. A node keeps the address of the level that created it.
/// Externally supplied graphs may use arbitrary strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }

    pub fn left() -> Self {
        NodeId("L".to_owned())
    }

    pub fn right() -> Self {
        NodeId("R".to_owned())
    }

    /// Address of a node created at `path.last()` on the edge addressed by
    /// the preceding pairs.
    pub fn address(path: &[(usize, usize)]) -> Self {
        if path.is_empty() {
            return NodeId::left();
        }
        let parts: Vec<String> = path.iter().map(|(b, s)| format!("{b}.{s}")).collect();
        NodeId(parts.join("/"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_owned())
    }
}

/// Node list with layers and edge list, as accepted by [`validate_layered`].
pub type RawGraph = (Vec<(NodeId, usize)>, Vec<(NodeId, NodeId)>);

/// A validated layered graph with its layer map and degree tables.
///
/// Nodes are stored sorted by `(layer, id)`, so `x_L` has index 0, `x_R` has
/// index `node_count() - 1`, and each layer occupies a contiguous index range.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredGraph {
    ids: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    layer: Vec<usize>,
    layer_offsets: Vec<usize>,
    edges: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl LayeredGraph {
    /// Chain length `N`; layers are `0..=N`.
    pub fn n(&self) -> usize {
        self.layer_offsets.len() - 2
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn id(&self, node: usize) -> &NodeId {
        &self.ids[node]
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Layer `Π(x)` of a node, i.e. its distance to `x_L`.
    pub fn layer_index(&self, id: &NodeId) -> Result<usize> {
        self.index_of(id)
            .map(|i| self.layer[i])
            .ok_or_else(|| Error::UnknownNode(id.clone()))
    }

    pub fn layer(&self, node: usize) -> usize {
        self.layer[node]
    }

    pub fn layer_nodes(&self, n: usize) -> Range<usize> {
        self.layer_offsets[n]..self.layer_offsets[n + 1]
    }

    pub fn layer_size(&self, n: usize) -> usize {
        self.layer_offsets[n + 1] - self.layer_offsets[n]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        (0..=self.n()).map(|n| self.layer_size(n)).collect()
    }

    /// Layer weight `μ(x) = 1 / |Π^{-1}(Π(x))|`.
    pub fn weight(&self, node: usize) -> f64 {
        1.0 / self.layer_size(self.layer[node]) as f64
    }

    pub fn left(&self) -> usize {
        0
    }

    pub fn right(&self) -> usize {
        self.ids.len() - 1
    }

    /// Edges as `(lower, upper)` index pairs, `layer(upper) = layer(lower) + 1`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours in the next layer.
    pub fn up(&self, node: usize) -> &[usize] {
        &self.up[node]
    }

    /// Neighbours in the previous layer.
    pub fn down(&self, node: usize) -> &[usize] {
        &self.down[node]
    }

    pub fn deg_plus(&self, node: usize) -> usize {
        self.up[node].len()
    }

    pub fn deg_minus(&self, node: usize) -> usize {
        self.down[node].len()
    }

    pub fn is_edge(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(&y) || self.down[x].contains(&y)
    }

    /// Number of edges between layers `n` and `n + 1`.
    pub fn edges_between(&self, n: usize) -> usize {
        self.layer_nodes(n).map(|x| self.deg_plus(x)).sum()
    }

    /// True when `deg+` and `deg-` are constant on every layer.
    pub fn is_layer_transitive(&self) -> bool {
        (0..=self.n()).all(|n| {
            let r = self.layer_nodes(n);
            let (p, m) = (self.deg_plus(r.start), self.deg_minus(r.start));
            r.clone()
                .all(|x| self.deg_plus(x) == p && self.deg_minus(x) == m)
        })
    }

    /// Nodes with layers and edges as id pairs, in canonical order.
    pub fn to_raw(&self) -> RawGraph {
        let nodes = self
            .ids
            .iter()
            .zip(&self.layer)
            .map(|(id, &l)| (id.clone(), l))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
            .collect();
        (nodes, edges)
    }

    /// Sorts nodes into canonical order and fills every table. Callers have
    /// already checked that `layers` are BFS distances and edges are simple
    /// and join adjacent layers.
    fn assemble(ids: Vec<NodeId>, layers: Vec<usize>, edges: &[(usize, usize)]) -> Self {
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by(|&a, &b| (layers[a], &ids[a]).cmp(&(layers[b], &ids[b])));
        let mut position = vec![0; ids.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }

        let layer: Vec<usize> = order.iter().map(|&o| layers[o]).collect();
        let n = *layer.last().expect("non-empty");
        let mut layer_offsets = vec![0; n + 2];
        for &l in &layer {
            layer_offsets[l + 1] += 1;
        }
        for i in 1..layer_offsets.len() {
            layer_offsets[i] += layer_offsets[i - 1];
        }

        let mut sorted_edges: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (position[a], position[b]);
                if layer[a] < layer[b] {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        sorted_edges.sort_unstable();

        let mut up = vec![Vec::new(); ids.len()];
        let mut down = vec![Vec::new(); ids.len()];
        for &(a, b) in &sorted_edges {
            up[a].push(b);
            down[b].push(a);
        }
        for list in &mut down {
            list.sort_unstable();
        }

        let mut slots: Vec<Option<NodeId>> = ids.into_iter().map(Some).collect();
        let ids: Vec<NodeId> = order.iter().map(|&o| slots[o].take().expect("each once")).collect();
        let index = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();

        LayeredGraph {
            ids,
            index,
            layer,
            layer_offsets,
            edges: sorted_edges,
            up,
            down,
        }
    }
}

/// Breadth-first distances from node 0; `None` for unreachable nodes.
fn bfs_distances(node_count: usize, edges: &[(usize, usize)]) -> Vec<Option<usize>> {
    let mut adjacency = vec![Vec::new(); node_count];
    for &(a, b) in edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut dist = vec![None; node_count];
    let mut queue = VecDeque::new();
    dist[0] = Some(0);
    queue.push_back(0);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].expect("queued nodes have distances");
        for &y in &adjacency[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Grows the diamond graph `G_l` of a growth spec.
pub fn build_graph(spec: &GrowthSpec) -> Result<LayeredGraph> {
    struct Edge {
        address: Vec<(usize, usize)>,
        from: usize,
        to: usize,
    }

    let mut ids = vec![NodeId::left(), NodeId::right()];
    let mut predicted = vec![0usize, 1];
    let mut edges = vec![Edge {
        address: Vec::new(),
        from: 0,
        to: 1,
    }];

    for (&branches, &segments) in spec.branching().iter().zip(spec.segmenting()) {
        for l in &mut predicted {
            *l *= segments;
        }
        let mut next = Vec::with_capacity(edges.len() * branches * segments);
        for edge in &edges {
            for b in 0..branches {
                let mut prev = edge.from;
                for s in 0..segments {
                    let to = if s + 1 == segments {
                        edge.to
                    } else {
                        let mut path = edge.address.clone();
                        path.push((b, s + 1));
                        ids.push(NodeId::address(&path));
                        predicted.push(predicted[edge.from] + s + 1);
                        ids.len() - 1
                    };
                    let mut address = edge.address.clone();
                    address.push((b, s));
                    next.push(Edge {
                        address,
                        from: prev,
                        to,
                    });
                    prev = to;
                }
            }
        }
        edges = next;
    }

    let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.from, e.to)).collect();
    let dist = bfs_distances(ids.len(), &pairs);
    for (i, (d, &p)) in dist.iter().zip(&predicted).enumerate() {
        if *d != Some(p) {
            return Err(Error::Internal(format!(
                "node {} predicted in layer {p}, found at distance {d:?}",
                ids[i]
            )));
        }
    }
    if ids.len() != spec.node_count() || pairs.len() != spec.edge_count() {
        return Err(Error::Internal("node or edge count disagrees with recursion".into()));
    }
    Ok(LayeredGraph::assemble(ids, predicted, &pairs))
}

/// Checks an externally specified layered graph and computes its tables.
pub fn validate_layered(
    nodes: Vec<(NodeId, usize)>,
    edges: Vec<(NodeId, NodeId)>,
) -> Result<LayeredGraph> {
    if nodes.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut index = HashMap::with_capacity(nodes.len());
    for (i, (id, _)) in nodes.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(Error::DuplicateNode(id.clone()));
        }
    }
    let layers: Vec<usize> = nodes.iter().map(|(_, l)| *l).collect();
    let lookup = |id: &NodeId| index.get(id).copied().ok_or_else(|| Error::UnknownNode(id.clone()));

    let mut pairs = Vec::with_capacity(edges.len());
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for (a, b) in &edges {
        let (i, j) = (lookup(a)?, lookup(b)?);
        if i == j {
            return Err(Error::SelfLoop(a.clone()));
        }
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(Error::DuplicateEdge(a.clone(), b.clone()));
        }
        let (li, lj) = (layers[i], layers[j]);
        if li == lj {
            return Err(Error::IntraLayerEdge {
                a: a.clone(),
                b: b.clone(),
                layer: li,
            });
        }
        if li.abs_diff(lj) != 1 {
            return Err(Error::SkippedLayer {
                a: a.clone(),
                b: b.clone(),
                from: li,
                to: lj,
            });
        }
        pairs.push((i, j));
    }

    // A layer beyond node_count - 1 forces an empty layer somewhere.
    let top = layers.iter().copied().max().expect("non-empty");
    if top >= nodes.len() {
        let mut present = vec![false; nodes.len()];
        for &l in &layers {
            if l < nodes.len() {
                present[l] = true;
            }
        }
        let missing = present.iter().position(|p| !p).unwrap_or(nodes.len());
        return Err(Error::EmptyLayer(missing));
    }
    let mut sizes = vec![0usize; top + 1];
    for &l in &layers {
        sizes[l] += 1;
    }
    if let Some(n) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::EmptyLayer(n));
    }
    for end in [0, top] {
        if sizes[end] != 1 {
            return Err(Error::EndLayerNotSingleton {
                layer: end,
                size: sizes[end],
            });
        }
    }

    // Put x_L first so BFS starts there.
    let left = layers.iter().position(|&l| l == 0).expect("layer 0 present");
    let swap = |i: usize| match i {
        0 => left,
        i if i == left => 0,
        i => i,
    };
    let swapped: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (swap(a), swap(b))).collect();
    let dist = bfs_distances(nodes.len(), &swapped);
    for (i, (id, declared)) in nodes.iter().enumerate() {
        match dist[swap(i)] {
            None => return Err(Error::Disconnected(id.clone())),
            Some(d) if d != *declared => {
                return Err(Error::LayerMismatch {
                    node: id.clone(),
                    declared: *declared,
                    distance: d,
                })
            }
            Some(_) => {}
        }
    }

    let ids = nodes.into_iter().map(|(id, _)| id).collect();
    Ok(LayeredGraph::assemble(ids, layers, &pairs))
}

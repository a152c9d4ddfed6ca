"""Stallings core graphs over a fixed free-group basis.

A core graph is a rooted, connected, folded, edge-labeled directed
multigraph; it encodes a finitely generated subgroup of the ambient free
group.  All instances here are kept in a canonical numbering (BFS from the
root, exploring labels in order, outgoing before incoming), so structural
equality of the serialized form coincides with based isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import DEFAULT_WORD_LENGTH_BOUND, ValidationError
from .words import Word, CyclicWord, cyclic_reduce, lies_in_proper_free_factor, reduce_letters


class NotInSubgroupError(ValidationError):
    """The traced word does not represent an element of the subgroup."""


class CoreGraph:
    """Canonical folded rooted labeled graph.  Root is always vertex 0."""

    __slots__ = ("n_vertices", "edges", "rank_ambient", "names", "_out", "_in")

    def __init__(self, n_vertices, edges, rank_ambient, names=(), _canonical=False):
        self.n_vertices = n_vertices
        self.edges = tuple(sorted(edges))
        self.rank_ambient = rank_ambient
        self.names = tuple(names) if names else tuple(
            "abcdefghijklmnopqrstuvwxyz"[:rank_ambient]
        )
        self._out = {}
        self._in = {}
        for idx, (s, d, l) in enumerate(self.edges):
            if (s, l) in self._out or (d, l) in self._in:
                raise ValidationError("graph is not folded")
            self._out[(s, l)] = (d, idx)
            self._in[(d, l)] = (s, idx)
        if not _canonical:
            # constructors are expected to canonicalize first
            canon = _canonicalize(n_vertices, self.edges, 0, rank_ambient)
            if canon != (self.n_vertices, self.edges):
                raise ValidationError("graph is not in canonical numbering")

    # -- structure -------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges

    def rank(self) -> int:
        return 1 - self.euler_characteristic()

    def out_edge(self, v: int, label: int):
        return self._out.get((v, label))

    def in_edge(self, v: int, label: int):
        return self._in.get((v, label))

    def edges_with_label(self, label: int) -> int:
        return sum(1 for (_, _, l) in self.edges if l == label)

    def degree(self, v: int) -> int:
        return sum(1 for (s, d, _) in self.edges for x in (s, d) if x == v)

    def key(self):
        return (self.n_vertices, self.rank_ambient, self.edges)

    def __eq__(self, other):
        return isinstance(other, CoreGraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        es = ", ".join(f"{s}-{self.names[l]}->{d}" for s, d, l in self.edges)
        return f"CoreGraph({self.n_vertices}v; {es})"

    # -- tracing ----------------------------------------------------------

    def trace(self, letters, start: int = 0):
        """Follow a letter sequence; returns final vertex or None if stuck."""
        v = start
        for x in letters:
            hop = self.out_edge(v, abs(x) - 1) if x > 0 else self.in_edge(v, abs(x) - 1)
            if hop is None:
                return None
            v = hop[0]
        return v

    def contains_word(self, w: Word) -> bool:
        return self.trace(w.letters) == 0

    def trace_edges(self, letters, start: int = 0):
        """Edge indices (sign = direction) along a path; None if stuck."""
        v = start
        out = []
        for x in letters:
            hop = self.out_edge(v, abs(x) - 1) if x > 0 else self.in_edge(v, abs(x) - 1)
            if hop is None:
                return None
            v, idx = hop
            out.append(idx + 1 if x > 0 else -(idx + 1))
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "vertices": self.n_vertices,
            "root": 0,
            "rank": self.rank_ambient,
            "edges": [{"src": s, "dst": d, "label": self.names[l]} for s, d, l in self.edges],
        }


def _canonicalize(n_vertices, edges, root, rank):
    """BFS renumbering from the root: labels in order, outgoing before
    incoming.  Returns (n_vertices, renumbered sorted edge tuple)."""
    out = {}
    inc = {}
    for s, d, l in edges:
        out[(s, l)] = d
        inc[(d, l)] = s
    order = {root: 0}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for l in range(rank):
            for nbr in (out.get((v, l)), inc.get((v, l))):
                if nbr is not None and nbr not in order:
                    order[nbr] = len(order)
                    queue.append(nbr)
    if len(order) != n_vertices:
        raise ValidationError("graph is not connected")
    new_edges = tuple(sorted((order[s], order[d], l) for s, d, l in edges))
    return n_vertices, new_edges


def bouquet(rank: int, names=()) -> CoreGraph:
    """The wedge of rank loops: the core graph of the whole free group."""
    return CoreGraph(1, [(0, 0, l) for l in range(rank)], rank, names, _canonical=True)


def trivial_graph(rank: int, names=()) -> CoreGraph:
    """Single root, no edges: the trivial subgroup."""
    return CoreGraph(1, [], rank, names, _canonical=True)


def graph_of_word(w: Word | CyclicWord) -> CoreGraph:
    """The w-cycle: one directed cycle spelling w from the root."""
    if isinstance(w, Word):
        cyc, conj = cyclic_reduce(w)
        if conj.letters:
            raise ValidationError("graph_of_word requires a cyclically reduced word")
        w = cyc
    if not w.letters:
        raise ValidationError("graph_of_word is undefined for the identity word")
    n = len(w.letters)
    edges = []
    for i, x in enumerate(w.letters):
        a, b = i, (i + 1) % n
        if x > 0:
            edges.append((a, b, x - 1))
        else:
            edges.append((b, a, -x - 1))
    nv, es = _canonicalize(n, edges, 0, w.rank)
    return CoreGraph(nv, es, w.rank, w.names, _canonical=True)


def fold(n_vertices, edges, root=0, rank=None, names=()) -> CoreGraph:
    """Stallings folding of a raw rooted labeled graph.

    Identifies targets (sources) of same-label edges sharing a source
    (target) until locally injective; prunes dead hanging trees; returns
    the canonical core graph.  The result is independent of fold order.
    """
    if rank is None:
        rank = 1 + max((l for _, _, l in edges), default=-1)
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    edge_set = set(edges)
    changed = True
    while changed:
        changed = False
        cur = {(find(s), find(d), l) for s, d, l in edge_set}
        by_out: dict = {}
        by_in: dict = {}
        for s, d, l in cur:
            if (s, l) in by_out and by_out[(s, l)] != d:
                union(by_out[(s, l)], d)
                changed = True
                break
            by_out[(s, l)] = d
            if (d, l) in by_in and by_in[(d, l)] != s:
                union(by_in[(d, l)], s)
                changed = True
                break
            by_in[(d, l)] = s
        edge_set = cur
    final = {(find(s), find(d), l) for s, d, l in edge_set}
    verts = {find(v) for v in range(n_vertices)} | {find(root)}
    # keep only the connected component of the root
    reach = {find(root)}
    frontier = [find(root)]
    adj: dict = {}
    for s, d, l in final:
        adj.setdefault(s, []).append(d)
        adj.setdefault(d, []).append(s)
    while frontier:
        v = frontier.pop()
        for u in adj.get(v, []):
            if u not in reach:
                reach.add(u)
                frontier.append(u)
    final = {(s, d, l) for s, d, l in final if s in reach}
    verts = reach
    # prune hanging trees (degree-1 non-root vertices)
    while True:
        deg: dict = {v: 0 for v in verts}
        for s, d, _ in final:
            deg[s] += 1
            deg[d] += 1
        prune = {v for v, k in deg.items() if k <= 1 and v != find(root)}
        if not prune:
            break
        verts -= prune
        final = {(s, d, l) for s, d, l in final if s not in prune and d not in prune}
    num = {v: i for i, v in enumerate(sorted(verts))}
    renum = [(num[s], num[d], l) for s, d, l in final]
    nv, es = _canonicalize(len(verts), renum, num[find(root)], rank)
    return CoreGraph(nv, es, rank, names, _canonical=True)


def graph_of_subgroup(generators: list[Word], rank: int | None = None, names=()) -> CoreGraph:
    """Core graph of the subgroup generated by the given words, via folding
    a wedge of loops."""
    if not generators:
        raise ValidationError("need at least one generator")
    rank = rank or generators[0].rank
    names = names or generators[0].names
    edges = []
    next_v = 1
    for g in generators:
        prev = 0
        for i, x in enumerate(g.letters):
            last = i == len(g.letters) - 1
            nxt = 0 if last else next_v
            if not last:
                next_v += 1
            if x > 0:
                edges.append((prev, nxt, x - 1))
            else:
                edges.append((nxt, prev, -x - 1))
            prev = nxt
    return fold(next_v, edges, 0, rank, names)


@dataclass(frozen=True)
class GraphMorphism:
    """The unique root- and label-preserving morphism between core graphs."""

    source: CoreGraph
    target: CoreGraph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]  # source edge index -> target edge index

    def vertex_fibers(self) -> tuple[int, ...]:
        fibers = [0] * self.target.n_vertices
        for v in self.vertex_map:
            fibers[v] += 1
        return tuple(fibers)

    def edge_fibers(self) -> tuple[int, ...]:
        fibers = [0] * self.target.n_edges
        for e in self.edge_map:
            fibers[e] += 1
        return tuple(fibers)

    def is_surjective(self) -> bool:
        return all(f > 0 for f in self.vertex_fibers()) and all(
            f > 0 for f in self.edge_fibers()
        )

    def is_injective(self) -> bool:
        return len(set(self.vertex_map)) == self.source.n_vertices and len(
            set(self.edge_map)
        ) == self.source.n_edges


def morphism(h: CoreGraph, j: CoreGraph) -> GraphMorphism | None:
    """The morphism Gamma(H) -> Gamma(J), which exists iff H <= J.

    Constructed by propagating root -> root; uniqueness is forced since
    both graphs are folded.
    """
    if h.rank_ambient != j.rank_ambient:
        raise ValidationError("ambient rank mismatch")
    vmap = [-1] * h.n_vertices
    vmap[0] = 0
    emap = [-1] * h.n_edges
    queue = [0]
    seen = {0}
    while queue:
        v = queue.pop()
        for l in range(h.rank_ambient):
            for direction in (0, 1):
                hop = h.out_edge(v, l) if direction == 0 else h.in_edge(v, l)
                if hop is None:
                    continue
                u, eidx = hop
                jhop = j.out_edge(vmap[v], l) if direction == 0 else j.in_edge(vmap[v], l)
                if jhop is None:
                    return None
                ju, jeidx = jhop
                if vmap[u] == -1:
                    vmap[u] = ju
                elif vmap[u] != ju:
                    return None
                emap[eidx] = jeidx
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return GraphMorphism(h, j, tuple(vmap), tuple(emap))


# -- spanning trees and subgroup bases --------------------------------------


@dataclass(frozen=True)
class SubgroupBasis:
    """A spanning tree of a core graph plus the induced free basis.

    ``basis_words`` are ambient-alphabet words, one per non-tree edge;
    ``vertex_paths`` give the tree path from the root to each vertex, used
    to translate arbitrary closed paths into the basis.
    """

    graph: CoreGraph
    tree_edges: frozenset[int]
    basis_words: tuple[Word, ...]
    vertex_paths: tuple[tuple[int, ...], ...]
    basis_letter_of_edge: tuple[int, ...]  # edge index -> basis index + 1, or 0

    def rank(self) -> int:
        return len(self.basis_words)


def spanning_tree_basis(g: CoreGraph) -> SubgroupBasis:
    """Deterministic BFS tree from the root (labels in order, outgoing
    before incoming); one basis word per non-tree edge."""
    paths: list[tuple[int, ...] | None] = [None] * g.n_vertices
    paths[0] = ()
    tree: set[int] = set()
    queue = [0]
    while queue:
        v = queue.pop(0)
        for l in range(g.rank_ambient):
            for direction in (0, 1):
                hop = g.out_edge(v, l) if direction == 0 else g.in_edge(v, l)
                if hop is None:
                    continue
                u, eidx = hop
                if paths[u] is None:
                    letter = (l + 1) if direction == 0 else -(l + 1)
                    paths[u] = paths[v] + (letter,)
                    tree.add(eidx)
                    queue.append(u)
    basis_words = []
    basis_letter = [0] * g.n_edges
    for eidx, (s, d, l) in enumerate(g.edges):
        if eidx in tree:
            continue
        letters = paths[s] + (l + 1,) + tuple(-x for x in reversed(paths[d]))
        basis_letter[eidx] = len(basis_words) + 1
        basis_words.append(Word(g.rank_ambient, reduce_letters(letters), g.names))
    basis = SubgroupBasis(
        g, frozenset(tree), tuple(basis_words), tuple(paths), tuple(basis_letter)
    )
    assert basis.rank() == g.rank()
    return basis


def rewrite_in_subgroup(w: Word, basis: SubgroupBasis) -> Word:
    """Express w (an ambient word) in the subgroup basis of Gamma(H).

    The w-path must close at the root, i.e. w must lie in H.  Crossing a
    non-tree edge contributes that basis letter; tree edges contribute
    nothing.  The result, expanded through the basis, equals w in F_r.
    """
    g = basis.graph
    path = g.trace_edges(w.letters)
    if path is None:
        raise NotInSubgroupError(f"word {w} cannot be traced in the graph")
    if g.trace(w.letters) != 0:
        raise NotInSubgroupError(f"word {w} does not close at the root")
    out = []
    for signed in path:
        b = basis.basis_letter_of_edge[abs(signed) - 1]
        if b:
            out.append(b if signed > 0 else -b)
    k = basis.rank()
    return Word(max(1, k), reduce_letters(out)) if k else Word(1, ())


# -- quotient enumeration ---------------------------------------------------


def _merge_and_fold(g: CoreGraph, u: int, v: int) -> CoreGraph:
    n = g.n_vertices
    edges = [(s if s != v else u, d if d != v else u, l) for s, d, l in g.edges]
    return fold(n, edges, 0, g.rank_ambient, g.names)


class QuotientPoset:
    """All quotients of the w-cycle: the lattice underlying every
    convolution formula.  Nodes are canonical core graphs; the order is
    morphism existence (memoized)."""

    def __init__(self, word: Word, bound: int = DEFAULT_WORD_LENGTH_BOUND):
        cyc, _ = cyclic_reduce(word)
        if not cyc.letters:
            raise ValidationError("quotient poset is undefined for the identity word")
        if len(cyc.letters) > bound:
            raise ValidationError(
                f"|w| = {len(cyc.letters)} exceeds quotient enumeration bound {bound}"
            )
        self.word = cyc.to_word()
        bottom = graph_of_word(cyc)
        seen: dict = {bottom.key(): bottom}
        queue = [bottom]
        while queue:
            g = queue.pop()
            for u in range(g.n_vertices):
                for v in range(u + 1, g.n_vertices):
                    q = _merge_and_fold(g, u, v)
                    if q.key() not in seen:
                        seen[q.key()] = q
                        queue.append(q)
        nodes = sorted(seen.values(), key=lambda g: (g.rank(), -g.n_vertices, g.key()))
        self.nodes: tuple[CoreGraph, ...] = tuple(nodes)
        self.bottom_index = self.nodes.index(bottom)
        self._morphisms: dict = {}
        self._leq: dict = {}

    def __len__(self):
        return len(self.nodes)

    def index_of(self, g: CoreGraph) -> int:
        return self.nodes.index(g)

    def morphism_between(self, i: int, j: int) -> GraphMorphism | None:
        key = (i, j)
        if key not in self._morphisms:
            self._morphisms[key] = morphism(self.nodes[i], self.nodes[j])
        return self._morphisms[key]

    def leq(self, i: int, j: int) -> bool:
        key = (i, j)
        if key not in self._leq:
            if i == j:
                self._leq[key] = True
            else:
                self._leq[key] = self.morphism_between(i, j) is not None
        return self._leq[key]

    def comparable_pairs(self):
        n = len(self.nodes)
        return [(i, j) for i in range(n) for j in range(n) if self.leq(i, j)]

    def interval(self, i: int, j: int) -> list[int]:
        return [k for k in range(len(self.nodes)) if self.leq(i, k) and self.leq(k, j)]

    def top_index(self) -> int | None:
        """Index of the bouquet node, if w uses every ambient generator."""
        b = bouquet(self.word.rank, self.word.names)
        try:
            return self.nodes.index(b)
        except ValueError:
            return None


def enumerate_quotients(w: Word, bound: int = DEFAULT_WORD_LENGTH_BOUND) -> QuotientPoset:
    """The poset Q_B(w) of quotients of the w-cycle.

    Enumerated by closing the w-cycle under single vertex merges followed
    by folding; this reaches every folded quotient (any vertex-gluing
    factors through a chain of such steps) without iterating all set
    partitions.
    """
    return QuotientPoset(w, bound)


def decomp(poset: QuotientPoset, i: int, j: int, m: int) -> list[tuple[int, ...]]:
    """All chains i = c_0 <= c_1 <= ... <= c_m = j in the poset, i.e. the
    decompositions of the morphism i -> j into m surjective morphisms.
    Degenerate links (isomorphisms) are allowed."""
    if not poset.leq(i, j):
        return []
    chains: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...]):
        if len(prefix) == m:
            if poset.leq(prefix[-1], j):
                chains.append(prefix + (j,))
            return
        for k in range(len(poset.nodes)):
            if poset.leq(prefix[-1], k) and poset.leq(k, j):
                extend(prefix + (k,))

    extend((i,))
    return chains


# -- algebraicity and the algebraic-free decomposition ----------------------


def is_algebraic_cyclic_base(w: Word, h: CoreGraph, rank_bound: int | None = None) -> bool:
    """Is <w> <= H an algebraic extension?  True iff w, rewritten in a
    basis of H, lies in no proper free factor of H."""
    from .budget import DEFAULT_WHITEHEAD_RANK_BOUND

    rank_bound = rank_bound or DEFAULT_WHITEHEAD_RANK_BOUND
    basis = spanning_tree_basis(h)
    rewritten = rewrite_in_subgroup(w, basis)
    if rewritten.is_identity():
        raise ValidationError("identity word: algebraicity handled upstream")
    if basis.rank() <= 1:
        return True  # rank-1 H: only proper free factor is trivial
    return not lies_in_proper_free_factor(rewritten, rank_bound)


def afd_cyclic(w: Word, j: CoreGraph, bound: int = DEFAULT_WORD_LENGTH_BOUND) -> CoreGraph:
    """The algebraic-free decomposition of <w> <= J: the unique L with
    <w> <=_alg L <=* J, computed as the maximal algebraic quotient of the
    w-cycle that maps into J."""
    cyc, _ = cyclic_reduce(w)
    if j.trace(cyc.letters) != 0:
        raise NotInSubgroupError("w does not lie in J")
    poset = enumerate_quotients(cyc.to_word(), bound)
    candidates = []
    for idx, node in enumerate(poset.nodes):
        if morphism(node, j) is None:
            continue
        if is_algebraic_cyclic_base(cyc.to_word(), node):
            candidates.append(idx)
    maximal = [
        i
        for i in candidates
        if not any(k != i and poset.leq(i, k) for k in candidates)
    ]
    assert len(maximal) == 1, "algebraic-free decomposition must be unique"
    return poset.nodes[maximal[0]]

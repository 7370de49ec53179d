"""Finite simple graphs: construction, JSON I/O, automorphisms and isomorphism.

The search is individualisation-refinement.  Every node of the search tree is
an equitable colouring whose colours are canonical ranks, so two graphs that
are relabellings of each other produce relabelled trees.  The target cell of a
node is its smallest non-singleton cell (ties go to the lowest colour index),
and children are explored in increasing vertex order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import InputError, ParseError

DEFAULT_MAX_GROUP_ORDER = 1_000_000


@dataclass(frozen=True)
class ClassicalGraph:
    """Undirected loop-free graph on vertices ``0..n-1``."""

    n: int
    edges: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {self.n!r}")
        norm = set()
        for k, e in enumerate(self.edges):
            u, v = (int(x) for x in e)
            if u == v:
                raise InputError(f"edges[{k}]: loop ({u}, {v})")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edges[{k}]: vertex out of range in ({u}, {v})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_adjacency(cls, adj):
        adj = np.asarray(adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InputError("adjacency matrix must be square")
        if np.any(adj != adj.T):
            raise InputError("adjacency matrix must be symmetric")
        if np.any(np.diag(adj) != 0):
            raise InputError("adjacency matrix must have zero diagonal")
        us, vs = np.nonzero(np.triu(adj, 1))
        return cls(adj.shape[0], tuple(zip(us.tolist(), vs.tolist())))

    @cached_property
    def adjacency(self):
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        a.setflags(write=False)
        return a

    @property
    def num_edges(self):
        return len(self.edges)

    def degrees(self):
        return self.adjacency.sum(axis=1).astype(int)

    def neighbors(self, v):
        return np.flatnonzero(self.adjacency[v]).tolist()

    def relabel(self, perm):
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = [int(p) for p in perm]
        return ClassicalGraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def is_automorphism(self, perm):
        perm = np.asarray(perm)
        a = self.adjacency
        return bool(np.array_equal(a[np.ix_(perm, perm)], a))


# ---------------------------------------------------------------------------
# standard families


def cycle_graph(n):
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return ClassicalGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n):
    return ClassicalGraph(n, tuple(combinations(range(n), 2)))


def complete_bipartite_graph(a, b):
    return ClassicalGraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def path_graph(n):
    return ClassicalGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return ClassicalGraph(10, tuple(outer + spokes + inner))


def rook_graph(k):
    """Cartesian product of two complete graphs on k vertices (the k x k torus/rook graph)."""
    edges = []
    for a, b in combinations(range(k * k), 2):
        (r1, c1), (r2, c2) = divmod(a, k), divmod(b, k)
        if (r1 == r2) != (c1 == c2):
            edges.append((a, b))
    return ClassicalGraph(k * k, tuple(edges))


# ---------------------------------------------------------------------------
# JSON


def graph_to_json(g: ClassicalGraph):
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def serialize_graph(g: ClassicalGraph):
    return json.dumps(graph_to_json(g))


def graph_from_json(obj):
    if not isinstance(obj, dict):
        raise ParseError("graph JSON must be an object with fields 'n' and 'edges'")
    if "n" not in obj:
        raise ParseError("graph JSON: missing field 'n'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"field 'n': expected a non-negative integer, got {n!r}")
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise ParseError("field 'edges': expected a list of [u, v] pairs")
    seen = set()
    out = []
    for k, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise ParseError(f"edges[{k}]: expected a pair of integers, got {e!r}")
        u, v = e
        if u == v:
            raise ParseError(f"edges[{k}]: loop [{u}, {v}] is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edges[{k}]: vertex out of range 0..{n - 1} in {e!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"edges[{k}]: duplicate edge {list(key)}")
        seen.add(key)
        out.append(key)
    return ClassicalGraph(n, tuple(out))


def parse_graph(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return graph_from_json(obj)


# ---------------------------------------------------------------------------
# search tree


class _Tree:
    def __init__(self, g: ClassicalGraph):
        self.g = g
        self.n = g.n
        self.adj = np.ascontiguousarray(g.adjacency, dtype=np.uint8)
        self._arange = np.arange(self.n)

    def refine(self, colors):
        return _kernels.refine_colors(self.adj, colors)

    def root(self):
        return self.refine(np.zeros(self.n, dtype=np.int64))

    def individualize(self, colors, v):
        return self.refine(2 * colors + (self._arange != v))

    @staticmethod
    def target_cell(colors):
        sizes = np.bincount(colors)
        big = np.flatnonzero(sizes > 1)
        if big.size == 0:
            return None
        c = big[np.argmin(sizes[big])]
        return np.flatnonzero(colors == c)

    def invariant(self, colors):
        """Cell sizes plus quotient matrix of an equitable colouring, as bytes."""
        k = int(colors.max()) + 1 if self.n else 0
        reps = np.zeros(k, dtype=np.int64)
        reps[colors[::-1]] = self._arange[::-1]
        onehot = np.zeros((self.n, k), dtype=np.int64)
        onehot[self._arange, colors] = 1
        quotient = self.adj[reps].astype(np.int64) @ onehot
        return np.bincount(colors, minlength=k).tobytes() + quotient.tobytes()

    def leaf_key(self, colors):
        order = np.argsort(colors)
        return np.packbits(self.adj[np.ix_(order, order)]).tobytes()


class _FirstPath:
    """First path of the search tree together with the automorphisms it yields."""

    def __init__(self, tree: _Tree):
        self.tree = tree
        self.colors = []
        self.cells = []
        self.invs = []
        colors = tree.root()
        while True:
            self.invs.append(tree.invariant(colors))
            cell = tree.target_cell(colors)
            if cell is None:
                break
            self.colors.append(colors)
            self.cells.append(cell)
            colors = tree.individualize(colors, int(cell[0]))
        self.leaf = colors
        self.leaf_key = tree.leaf_key(colors)
        self.leaf_order = np.argsort(colors)

    @property
    def depth(self):
        return len(self.cells)

    def search(self, colors, depth, invs, leaf_key):
        """Depth-first search for a leaf below ``colors`` matching ``leaf_key``."""
        tree = self.tree
        if tree.invariant(colors) != invs[depth]:
            return None
        cell = tree.target_cell(colors)
        if cell is None:
            return colors if tree.leaf_key(colors) == leaf_key else None
        for y in cell:
            found = self.search(tree.individualize(colors, int(y)), depth + 1, invs, leaf_key)
            if found is not None:
                return found
        return None


def _orbit(point, gens, n):
    seen = np.zeros(n, dtype=bool)
    seen[point] = True
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return seen


def _transversal(point, gens, n):
    """Elements t_y of <gens> with t_y(point) = y, one per orbit point (Schreier tree)."""
    ident = np.arange(n)
    reps = {point: ident}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(g[x])
                if y not in reps:
                    reps[y] = g[reps[x]]
                    nxt.append(y)
        frontier = nxt
    return np.array([reps[y] for y in sorted(reps)], dtype=np.int64)


@dataclass
class AutomorphismData:
    """Generators and base/transversal data of Aut(g) from one search."""

    n: int
    generators: list
    transversals: list  # per first-path level, arrays of coset representatives
    order: int
    level_generators: list  # generators fixing the first-path prefix, per level
    first_path: _FirstPath

    def elements(self):
        """All group elements, sorted lexicographically (identity first)."""
        elems = np.arange(self.n, dtype=np.int64)[None, :]
        for trans in reversed(self.transversals):
            if len(trans) == 1:
                continue
            rows = np.arange(len(trans))[:, None, None]
            elems = trans[rows, elems[None, :, :]].reshape(-1, self.n)
        idx = np.lexsort(elems.T[::-1])
        return elems[idx]


def automorphism_data(g: ClassicalGraph) -> AutomorphismData:
    tree = _Tree(g)
    fp = _FirstPath(tree)
    n = g.n
    gens = []
    level_gens = [None] * fp.depth
    transversals = [None] * fp.depth
    for i in reversed(range(fp.depth)):
        cell = fp.cells[i]
        w = int(cell[0])
        orbit = _orbit(w, gens, n)
        for x in cell[1:]:
            x = int(x)
            if orbit[x]:
                continue
            leaf = fp.search(tree.individualize(fp.colors[i], x), i + 1, fp.invs, fp.leaf_key)
            if leaf is None:
                continue
            gamma = fp.leaf_order[leaf]
            if not g.is_automorphism(gamma):  # pragma: no cover - would be a search bug
                raise AssertionError("search produced a non-automorphism")
            gens.append(gamma)
            orbit = _orbit(w, gens, n)
        level_gens[i] = list(gens)
        transversals[i] = _transversal(w, gens, n)
    order = math.prod(len(t) for t in transversals)
    return AutomorphismData(n, gens, transversals, order, level_gens, fp)


def automorphism_group(g: ClassicalGraph, max_order: int = DEFAULT_MAX_GROUP_ORDER):
    """Aut(g) as a :class:`~qpt.permgroups.PermGroup`.

    The order always comes from the orbit-stabiliser chain of the search.  If
    it exceeds ``max_order`` the group carries generators only and any
    operation that needs the element list raises ``GroupOrderCapExceeded``.
    """
    from .permgroups import PermGroup

    if g.n < 1:
        raise InputError("automorphism_group needs at least one vertex")
    data = automorphism_data(g)
    elements = data.elements() if data.order <= max_order else None
    return PermGroup(g.n, tuple(data.generators), elements, data.order, max_order)


def are_isomorphic(g: ClassicalGraph, h: ClassicalGraph):
    """A vertex bijection ``f`` with ``h = g.relabel(f)``, or ``None``."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    if sorted(g.degrees().tolist()) != sorted(h.degrees().tolist()):
        return None
    if g.n == 0:
        return []
    fp_g = _FirstPath(_Tree(g))
    hd = automorphism_data(h)
    tree_h, fp_h = hd.first_path.tree, hd.first_path

    def along_path(depth):
        colors = fp_h.leaf if depth == fp_h.depth else fp_h.colors[depth]
        if depth >= len(fp_g.invs) or tree_h.invariant(colors) != fp_g.invs[depth]:
            return None
        if depth == fp_h.depth:
            return colors if tree_h.leaf_key(colors) == fp_g.leaf_key else None
        cell = fp_h.cells[depth]
        done = np.zeros(h.n, dtype=bool)
        for y in cell:
            y = int(y)
            if done[y]:
                continue
            done |= _orbit(y, hd.level_generators[depth], h.n)
            if y == int(cell[0]):
                found = along_path(depth + 1)
            else:
                found = fp_h.search(
                    tree_h.individualize(colors, y), depth + 1, fp_g.invs, fp_g.leaf_key
                )
            if found is not None:
                return found
        return None

    leaf = along_path(0)
    if leaf is None:
        return None
    order_h = np.argsort(leaf)
    f = order_h[fp_g.leaf]
    if h != g.relabel(f):  # pragma: no cover - would be a search bug
        raise AssertionError("isomorphism search returned an invalid bijection")
    return f.tolist()


def canonical_form(g: ClassicalGraph):
    """Canonical relabelling: the lexicographically least leaf adjacency string.

    Explores the whole search tree, pruning children of first-path nodes that
    lie in a common orbit of the corresponding stabiliser.  Returns
    ``(canonical_graph, labelling)`` where ``canonical_graph = g.relabel(labelling)``.
    """
    if g.n == 0:
        return g, []
    data = automorphism_data(g)
    fp = data.first_path
    tree = fp.tree
    best = [None, None]

    def visit(colors):
        cell = tree.target_cell(colors)
        if cell is None:
            key = tree.leaf_key(colors)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, colors
            return
        for y in cell:
            visit(tree.individualize(colors, int(y)))

    def along_path(depth):
        if depth == fp.depth:
            visit(fp.leaf)
            return
        cell = fp.cells[depth]
        done = np.zeros(g.n, dtype=bool)
        for y in cell:
            y = int(y)
            if done[y]:
                continue
            done |= _orbit(y, data.level_generators[depth], g.n)
            if y == int(cell[0]):
                along_path(depth + 1)
            else:
                visit(tree.individualize(fp.colors[depth], y))

    along_path(0)
    labelling = best[1].tolist()
    return g.relabel(labelling), labelling

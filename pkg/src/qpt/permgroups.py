"""Permutation groups on vertex sets and small abstract groups given by tables.

Permutations compose right to left: ``(a * b)(v) = a(b(v))``.  Every group with
an element list keeps it sorted lexicographically, so the identity is always
element 0 and the index order coincides with the lexicographic order of the
image tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import sympy

from .errors import (
    ElementNotInGroup,
    GroupOrderCapExceeded,
    InputError,
    NotASubgroup,
)

DEFAULT_CAP = 1_000_000
MAX_SUBGROUP_SEARCH_ORDER = 5000


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, v):
        return self.images[v]

    def __mul__(self, other):
        if self.degree != other.degree:
            raise InputError("cannot compose permutations of different degrees")
        return Permutation(tuple(self.images[x] for x in other.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def array(self):
        return np.array(self.images, dtype=np.int64)


def _as_array(p):
    if isinstance(p, Permutation):
        return p.array()
    return np.asarray(p, dtype=np.int64)


def _row_keys(arr):
    """Row keys whose byte order matches numeric lexicographic order."""
    arr = np.ascontiguousarray(np.asarray(arr).astype(">u2"))
    return arr.view(np.dtype((np.void, arr.dtype.itemsize * arr.shape[1]))).ravel()


def _sorted_unique_rows(arr):
    keys = _row_keys(arr)
    _, idx = np.unique(keys, return_index=True)
    return np.asarray(arr)[idx]


class PermGroup:
    """A permutation group, optionally with its full (sorted) element list."""

    def __init__(self, degree, generators=(), elements=None, order=None, cap=DEFAULT_CAP):
        self.degree = int(degree)
        self.generators = tuple(
            g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators
        )
        self.cap = cap
        if elements is not None:
            elements = _sorted_unique_rows(np.asarray(elements, dtype=np.int64).reshape(-1, self.degree))
            if order is not None and order != len(elements):
                raise InputError(f"order {order} disagrees with {len(elements)} listed elements")
            order = len(elements)
        if order is None:
            raise InputError("either elements or order must be given")
        self._elements = elements
        self.order = int(order)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    @property
    def has_elements(self):
        return self._elements is not None

    @property
    def elements(self):
        if self._elements is None:
            raise GroupOrderCapExceeded(
                f"group order {self.order} exceeds the element cap {self.cap}; only generators are stored"
            )
        return self._elements

    @cached_property
    def _keys(self):
        return _row_keys(self.elements)

    def indices_of(self, perms):
        """Indices of the given permutations in the element list (-1 if absent)."""
        perms = np.asarray(perms, dtype=np.int64).reshape(-1, self.degree)
        keys = _row_keys(perms)
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, self.order - 1)
        found = self._keys[pos] == keys
        return np.where(found, pos, -1)

    def index_of(self, perm):
        idx = int(self.indices_of(_as_array(perm))[0])
        if idx < 0:
            raise ElementNotInGroup(f"{tuple(_as_array(perm))} is not in the group")
        return idx

    def __contains__(self, perm):
        return int(self.indices_of(_as_array(perm))[0]) >= 0

    @cached_property
    def multiplication_table(self):
        """``table[i, j]`` is the index of ``elements[i] * elements[j]``."""
        e = self.elements
        k = self.order
        table = np.empty((k, k), dtype=np.int64)
        for i in range(k):
            table[i] = self.indices_of(e[i][e])
        if np.any(table < 0):
            raise NotASubgroup("element list is not closed under composition")
        return table

    @cached_property
    def abstract(self):
        return FiniteGroup(self.multiplication_table)

    def subgroup(self, indices):
        return Subgroup(self, indices)

    def whole(self):
        return Subgroup(self, range(self.order))


class Subgroup:
    """A subgroup of an enumerated :class:`PermGroup`, stored as parent indices."""

    def __init__(self, parent: PermGroup, indices):
        self.parent = parent
        idx = np.unique(np.asarray(list(indices), dtype=np.int64))
        if idx.size == 0 or idx[0] != 0:
            raise NotASubgroup("a subgroup must contain the identity")
        table = parent.multiplication_table
        if not np.all(np.isin(table[np.ix_(idx, idx)], idx)):
            raise NotASubgroup("index set is not closed under composition")
        self.indices = idx

    def __repr__(self):
        return f"Subgroup(order={self.order}, of {self.parent!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and np.array_equal(other.indices, self.indices)
        )

    def __hash__(self):
        return hash(self.indices.tobytes())

    @property
    def order(self):
        return len(self.indices)

    @property
    def degree(self):
        return self.parent.degree

    @property
    def elements(self):
        return self.parent.elements[self.indices]

    def as_group(self):
        return PermGroup(self.degree, (), self.elements)

    @cached_property
    def abstract(self):
        """Abstract multiplication table in this subgroup's own (sorted) element order."""
        table = self.parent.multiplication_table[np.ix_(self.indices, self.indices)]
        return FiniteGroup(np.searchsorted(self.indices, table))

    def sort_key(self):
        return tuple(self.indices.tolist())


def closure(gens, degree=None, cap=DEFAULT_CAP):
    """Smallest permutation group containing ``gens``, by breadth-first search."""
    gens = [_as_array(g) for g in gens]
    if degree is None:
        if not gens:
            raise InputError("degree is required when no generators are given")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise InputError("all generators must have the same degree")
        if sorted(g.tolist()) != list(range(degree)):
            raise InputError(f"not a permutation: {g.tolist()}")
    ident = np.arange(degree, dtype=np.int64)
    seen = {ident.tobytes()}
    found = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                key = y.tobytes()
                if key not in seen:
                    seen.add(key)
                    found.append(y)
                    nxt.append(y)
                    if len(found) > cap:
                        raise GroupOrderCapExceeded(f"group order exceeds the cap {cap}")
        frontier = nxt
    return PermGroup(degree, gens, np.array(found), cap=cap)


def orbit(group_elements, v):
    return sorted(set(np.asarray(group_elements)[:, v].tolist()))


def centralizer(G: PermGroup, a):
    """Subgroup of elements of G commuting with ``a``."""
    ia = G.index_of(a)
    t = G.multiplication_table
    return Subgroup(G, np.flatnonzero(t[ia, :] == t[:, ia]))


def stabilizer(L, v):
    """Elements of ``L`` (a Subgroup or PermGroup) fixing the point ``v``."""
    if isinstance(L, PermGroup):
        L = L.whole()
    if not 0 <= v < L.degree:
        raise InputError(f"point {v} out of range for degree {L.degree}")
    keep = L.elements[:, v] == v
    return Subgroup(L.parent, L.indices[keep])


@dataclass
class ConjugacyClass:
    representative: Subgroup
    members: tuple

    @property
    def order(self):
        return self.representative.order

    @property
    def size(self):
        return len(self.members)


def _generated(table, gens, k):
    """Index set generated by ``gens`` inside the table group."""
    inside = np.zeros(k, dtype=bool)
    inside[0] = True
    frontier = np.array([0])
    gens = np.asarray(gens, dtype=np.int64)
    while frontier.size:
        prods = table[np.ix_(frontier, gens)].ravel()
        new = np.unique(prods[~inside[prods]])
        inside[new] = True
        frontier = new
    return inside


def all_subgroups(G: PermGroup, max_order=MAX_SUBGROUP_SEARCH_ORDER):
    """Every subgroup of G as a boolean membership mask (cyclic-extension method)."""
    if G.order > max_order:
        raise GroupOrderCapExceeded(
            f"subgroup enumeration is limited to groups of order <= {max_order}, got {G.order}"
        )
    table = G.multiplication_table
    fg = G.abstract
    k = G.order
    orders = fg.element_orders
    prime_power = [g for g in range(1, k) if len(sympy.factorint(int(orders[g]))) == 1]
    cyclic = {}
    for g in prime_power:
        mask = _generated(table, [g], k)
        cyclic.setdefault(mask.tobytes(), (g, mask))
    cyclic = list(cyclic.values())
    trivial = np.zeros(k, dtype=bool)
    trivial[0] = True
    found = {trivial.tobytes(): (trivial, [])}
    frontier = [(trivial, [])]
    while frontier:
        nxt = []
        for mask, gens in frontier:
            for g, cmask in cyclic:
                if mask[g]:
                    continue
                new_gens = gens + [g]
                joined = _generated(table, new_gens, k)
                key = joined.tobytes()
                if key not in found:
                    found[key] = (joined, new_gens)
                    nxt.append((joined, new_gens))
        frontier = nxt
    return [m for m, _ in found.values()]


def subgroups_square_order(G: PermGroup, max_order=MAX_SUBGROUP_SEARCH_ORDER):
    """Subgroups of perfect-square order > 1, grouped into conjugacy classes under G.

    Each class is represented by its member whose sorted element list is
    lexicographically least; classes are sorted by (order, representative).
    """
    masks = [
        m for m in all_subgroups(G, max_order) if m.sum() > 1 and math.isqrt(int(m.sum())) ** 2 == m.sum()
    ]
    table = G.multiplication_table
    inv = G.abstract.inverse
    conj = table[table, inv[:, None]]  # conj[g, i] = g i g^-1
    classes = []
    assigned = set()
    for mask in masks:
        key = mask.tobytes()
        if key in assigned:
            continue
        idx = np.flatnonzero(mask)
        members = {}
        for g in range(G.order):
            cm = np.zeros(G.order, dtype=bool)
            cm[conj[g, idx]] = True
            members.setdefault(cm.tobytes(), cm)
        assigned.update(members)
        subs = sorted((Subgroup(G, np.flatnonzero(m)) for m in members.values()), key=Subgroup.sort_key)
        classes.append(ConjugacyClass(subs[0], tuple(subs)))
    classes.sort(key=lambda c: (c.order, c.representative.sort_key()))
    return classes


def dihedral_group(n):
    """Symmetries of the n-gon acting on its vertices (order 2n)."""
    r = [(i + 1) % n for i in range(n)]
    s = [(-i) % n for i in range(n)]
    return closure([r, s], n)


# ---------------------------------------------------------------------------
# abstract groups


class FiniteGroup:
    """Group given by a multiplication table with element 0 the identity."""

    def __init__(self, table):
        t = np.asarray(table, dtype=np.int64)
        k = t.shape[0]
        if t.shape != (k, k):
            raise InputError("multiplication table must be square")
        ar = np.arange(k)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise InputError("element 0 must be the identity")
        if not all(np.array_equal(np.sort(row), ar) for row in t):
            raise InputError("multiplication table is not a Latin square")
        self.table = t
        self.table.setflags(write=False)

    @property
    def order(self):
        return self.table.shape[0]

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def mul(self, a, b):
        return int(self.table[a, b])

    @cached_property
    def inverse(self):
        inv = np.argmax(self.table == 0, axis=1)
        return inv.astype(np.int64)

    @cached_property
    def commuting(self):
        return self.table == self.table.T

    @cached_property
    def is_abelian(self):
        return bool(self.commuting.all())

    def conj(self, a, b):
        """a b a^-1"""
        return int(self.table[self.table[a, b], self.inverse[a]])

    @cached_property
    def conjugation(self):
        """``conjugation[a, b] = a b a^-1``."""
        return self.table[self.table, self.inverse[:, None]]

    @cached_property
    def element_orders(self):
        k = self.order
        orders = np.ones(k, dtype=np.int64)
        for a in range(1, k):
            x, n = a, 1
            while x != 0:
                x = self.table[x, a]
                n += 1
            orders[a] = n
        return orders

    @cached_property
    def exponent(self):
        return int(np.lcm.reduce(self.element_orders))

    def generated(self, gens):
        return np.flatnonzero(_generated(self.table, list(gens) or [0], self.order))

    def is_subgroup(self, indices):
        idx = np.asarray(sorted(set(int(i) for i in indices)), dtype=np.int64)
        if idx.size == 0 or idx[0] != 0:
            return False
        return bool(np.all(np.isin(self.table[np.ix_(idx, idx)], idx)))

    @cached_property
    def small_generating_set(self):
        gens = []
        span = np.zeros(self.order, dtype=bool)
        span[0] = True
        for g in np.argsort(-self.element_orders, kind="stable"):
            if not span[g]:
                gens.append(int(g))
                span = _generated(self.table, gens, self.order)
            if span.all():
                break
        return gens

    @classmethod
    def cyclic(cls, n):
        ar = np.arange(n)
        return cls((ar[:, None] + ar[None, :]) % n)

    @classmethod
    def abelian(cls, moduli):
        """Z_{m1} x ... x Z_{mr} with mixed-radix indexing (last factor fastest)."""
        g = cls(np.zeros((1, 1), dtype=np.int64))
        for m in moduli:
            g = direct_product(g, cls.cyclic(m))
        return g

    def invariant_factors(self):
        """Invariant factors of an abelian group (empty for the trivial group)."""
        if not self.is_abelian:
            raise InputError("invariant factors are defined for abelian groups only")
        orders = self.element_orders
        factors = []
        for p, a in sympy.factorint(self.order).items():
            # counts[j] = log_p #{x : x^(p^j) = e} = sum_i min(j, a_i)
            counts = [0]
            while counts[-1] < a:
                j = len(counts)
                c = int(np.sum(np.isin(orders, [p**i for i in range(j + 1)])))
                counts.append(_int_log(c, p))
            exps = []
            for j in range(1, len(counts)):
                at_least = counts[j] - counts[j - 1]
                beyond = counts[j + 1] - counts[j] if j + 1 < len(counts) else 0
                exps += [j] * (at_least - beyond)
            factors.append(sorted((p**e for e in exps), reverse=True))
        width = max((len(f) for f in factors), default=0)
        inv = []
        for i in range(width):
            inv.append(math.prod(f[i] for f in factors if i < len(f)))
        return sorted(inv)

    def describe(self):
        """Short structure name: invariant factors for abelian groups, else the order."""
        if self.order == 1:
            return "1"
        if self.order > 64:
            return f"group of order {self.order}"
        if not self.is_abelian:
            return f"nonabelian group of order {self.order}"
        parts = []
        factors = self.invariant_factors()
        for m in sorted(set(factors)):
            c = factors.count(m)
            parts.append(f"Z{m}" + (f"^{c}" if c > 1 else ""))
        return " x ".join(parts)


def _int_log(c, p):
    e = 0
    while c > 1:
        c //= p
        e += 1
    return e


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Product group with element (a, b) at index a * |g2| + b."""
    k2 = g2.order
    t1, t2 = g1.table, g2.table
    a = t1[:, None, :, None] * k2 + t2[None, :, None, :]
    return FiniteGroup(a.reshape(g1.order * k2, g1.order * k2))

"""Root-of-unity valued 2-cocycles on finite groups.

A cocycle is stored exactly: ``table[a, b]`` is an integer mod ``root_order``
and the value is ``exp(2 pi i table[a, b] / root_order)``.  Group theory stays
in integers; complex numbers only appear when matrices are built.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import zmod
from .errors import (
    CocycleViolation,
    InputError,
    NonIntegerPhi,
    NondegeneracyRequired,
    NotAbelian,
    NotASubgroup,
    NotConjugating,
    TooLarge,
    VerificationError,
)
from .numerics import null_space
from .permgroups import FiniteGroup, PermGroup, Subgroup


@dataclass(frozen=True, eq=False)
class TwoCocycle:
    group: FiniteGroup
    root_order: int
    table: np.ndarray

    def __post_init__(self):
        N = int(self.root_order)
        if N < 1:
            raise InputError(f"root order must be positive, got {N}")
        t = np.asarray(self.table, dtype=np.int64) % N
        k = self.group.order
        if t.shape != (k, k):
            raise InputError(f"cocycle table has shape {t.shape}, expected {(k, k)}")
        if np.any(t[0]) or np.any(t[:, 0]):
            raise InputError("cocycle is not normalised: psi(e, b) and psi(a, e) must be 1")
        t.setflags(write=False)
        object.__setattr__(self, "root_order", N)
        object.__setattr__(self, "table", t)

    @classmethod
    def trivial(cls, group: FiniteGroup, root_order=1):
        return cls(group, root_order, np.zeros((group.order, group.order), dtype=np.int64))

    @property
    def order(self):
        return self.group.order

    def values(self):
        return np.exp(2j * np.pi * self.table / self.root_order)

    def value(self, a, b):
        return np.exp(2j * np.pi * self.table[a, b] / self.root_order)

    def rescaled(self, root_order):
        if root_order % self.root_order:
            raise InputError(f"cannot rescale root order {self.root_order} to {root_order}")
        return TwoCocycle(self.group, root_order, self.table * (root_order // self.root_order))

    def same_values(self, other):
        """Exact equality of the cocycle functions (root orders may differ)."""
        if other.group != self.group:
            return False
        n = math.lcm(self.root_order, other.root_order)
        return np.array_equal(self.rescaled(n).table, other.rescaled(n).table)

    def __add__(self, other):
        """Pointwise product of cocycle values (sum of exponents)."""
        if other.group != self.group:
            raise InputError("cocycles live on different groups")
        n = math.lcm(self.root_order, other.root_order)
        return TwoCocycle(self.group, n, self.rescaled(n).table + other.rescaled(n).table)

    def __neg__(self):
        return TwoCocycle(self.group, self.root_order, -self.table)

    def __sub__(self, other):
        return self + (-other)

    @cached_property
    def rho_table(self):
        """Exponents of rho(a, b) = psi(a, b) / psi(a b a^-1, a) for all pairs."""
        g = self.group
        ar = np.arange(g.order)
        return (self.table - self.table[g.conjugation, ar[:, None]]) % self.root_order

    def to_json(self, embedding=None):
        obj = {
            "order": self.order,
            "mult_table": self.group.table.tolist(),
            "root_order": self.root_order,
            "table": self.table.tolist(),
        }
        if embedding is not None:
            obj["embedding"] = np.asarray(embedding).tolist()
        return obj

    @classmethod
    def from_json(cls, obj):
        try:
            group = FiniteGroup(obj["mult_table"])
            c = cls(group, int(obj["root_order"]), np.asarray(obj["table"], dtype=np.int64))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed cocycle JSON: {exc}") from exc
        if "order" in obj and int(obj["order"]) != group.order:
            raise InputError("cocycle JSON: 'order' disagrees with the multiplication table")
        return c


def verify_cocycle(c: TwoCocycle):
    """Check psi(a,b) psi(ab,c) = psi(b,c) psi(a,bc) for every triple, exactly."""
    t, m, N = c.table, c.group.table, c.root_order
    for a in range(c.order):
        lhs = t[a][:, None] + t[m[a]]  # [b, c]: psi(a,b) + psi(ab,c)
        rhs = t + t[a][m]  # [b, c]: psi(b,c) + psi(a,bc)
        bad = np.argwhere((lhs - rhs) % N)
        if bad.size:
            b, cc = (int(x) for x in bad[0])
            raise CocycleViolation((a, b, cc))
    return True


def rho(c: TwoCocycle, a, b):
    """Exponent of rho(a, b) mod ``c.root_order``."""
    return int(c.rho_table[a, b])


def twisted_center_dimension(c: TwoCocycle, tol=1e-9):
    """Dimension of the centre of the twisted group algebra, from the commutant equations."""
    g = c.group
    k = g.order
    vals = c.values()
    blocks = []
    for h in g.small_generating_set or [0]:
        m = np.zeros((k, k), dtype=complex)
        ar = np.arange(k)
        np.add.at(m, (g.table[ar, h], ar), vals[ar, h])
        np.add.at(m, (g.table[h, ar], ar), -vals[h, ar])
        blocks.append(m)
    return null_space(np.vstack(blocks), tol).shape[1]


def regular_classes(c: TwoCocycle):
    """Conjugacy classes of elements g with rho(g, h) = 1 for all h commuting with g."""
    g = c.group
    comm = g.commuting
    nonreg = np.any((c.rho_table != 0) & comm, axis=1)
    classes, seen = [], set()
    for x in range(g.order):
        if nonreg[x] or x in seen:
            continue
        cls_ = sorted(set(g.conjugation[:, x].tolist()))
        seen.update(cls_)
        classes.append(cls_)
    return classes


def is_nondegenerate(c: TwoCocycle, tol=1e-9):
    """True iff the twisted group algebra has a one-dimensional centre."""
    dim = twisted_center_dimension(c, tol)
    comb = len(regular_classes(c))
    if dim != comb:
        raise VerificationError(
            f"centre dimension {dim} from the commutant disagrees with {comb} regular classes"
        )
    result = dim == 1
    if c.group.is_abelian:
        radical_trivial = bool(np.all(np.any(c.rho_table[1:] != 0, axis=1)))
        if radical_trivial != result:
            raise VerificationError("rho-radical test disagrees with the centre dimension")
    return result


def _subgroup_indices(c, H):
    idx = sorted(set(int(h) for h in H))
    if not c.group.is_subgroup(idx):
        raise NotASubgroup(f"{idx} is not a subgroup")
    return np.asarray(idx, dtype=np.int64)


def phi(c: TwoCocycle, H):
    """Sum of rho(a, b) over commuting pairs a, b of the subgroup H (an integer)."""
    idx = _subgroup_indices(c, H)
    sub = np.ix_(idx, idx)
    mask = c.group.commuting[sub]
    total = np.sum(np.exp(2j * np.pi * c.rho_table[sub][mask] / c.root_order))
    if abs(total.imag) > 1e-9 or abs(total.real - round(total.real)) > 1e-6:
        raise NonIntegerPhi(f"Phi = {total} is not an integer")
    return int(round(total.real))


def orthogonal_complement(c: TwoCocycle, S):
    """S-perp = {g : rho(g, a) = 1 for every a in S commuting with g}."""
    idx = _subgroup_indices(c, S)
    g = c.group
    inside = np.zeros(g.order, dtype=bool)
    inside[idx] = True
    bad = (c.rho_table != 0) & g.commuting & inside[None, :]
    return np.flatnonzero(~bad.any(axis=1))


@dataclass(frozen=True)
class Coisotropy:
    coisotropic: bool
    complement: tuple


def is_coisotropic(c: TwoCocycle, H, check_phi=True):
    """Whether H contains its orthogonal complement; the complement is the witness.

    For a non-degenerate cocycle the answer is cross-checked against
    ``phi(c, H) == |L|``.
    """
    idx = _subgroup_indices(c, H)
    perp = orthogonal_complement(c, idx)
    result = bool(np.all(np.isin(perp, idx)))
    if check_phi and is_nondegenerate(c):
        if (phi(c, idx) == c.order) != result:
            raise VerificationError("coisotropy test disagrees with the Phi criterion")
    return Coisotropy(result, tuple(int(x) for x in perp))


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True)
class Coboundary:
    """beta: L -> Z_N, acting by (delta beta)(a, b) = beta(a) + beta(b) - beta(ab)."""

    root_order: int
    beta: np.ndarray

    def delta(self, group: FiniteGroup):
        b = self.beta
        return TwoCocycle(group, self.root_order, b[:, None] + b[None, :] - b[group.table])


def _coboundary_matrix(group: FiniteGroup):
    k = group.order
    rows = np.arange(k * k)
    a, b = np.divmod(rows, k)
    A = np.zeros((k * k, k), dtype=np.int64)
    np.add.at(A, (rows, a), 1)
    np.add.at(A, (rows, b), 1)
    np.add.at(A, (rows, group.table[a, b]), -1)
    return A


def cohomologous(c1: TwoCocycle, c2: TwoCocycle):
    """A coboundary beta with c2 - c1 = delta beta, or ``None``.

    Both cocycles are lifted to the root order N * exp(L), where N is the lcm
    of their root orders.  Over the complex numbers any trivialising function
    can be chosen with values in those roots of unity, so solvability mod that
    order is exactly cohomology of the complex-valued cocycles.
    """
    if c1.group != c2.group:
        raise InputError("cocycles live on different groups")
    g = c1.group
    n = math.lcm(c1.root_order, c2.root_order) * g.exponent
    diff = (c2.rescaled(n).table - c1.rescaled(n).table).reshape(-1)
    beta = zmod.solve_mod(_coboundary_matrix(g), diff, n)
    result = None
    if beta is not None:
        result = Coboundary(n, beta % n)
        if not (c1 + result.delta(g)).same_values(c2):  # pragma: no cover
            raise VerificationError("coboundary solver returned a wrong solution")
    if g.is_abelian:
        comm_equal = np.array_equal(c1.rescaled(n).rho_table, c2.rescaled(n).rho_table)
        if comm_equal != (result is not None):
            raise VerificationError("coboundary solve disagrees with the rho comparison")
    return result


# ---------------------------------------------------------------------------
# central type subgroups of permutation groups


def _check_realisation(elements, group: FiniteGroup):
    elements = np.asarray(elements, dtype=np.int64)
    k, n = elements.shape
    if k != group.order:
        raise InputError(f"{k} permutations given for a group of order {group.order}")
    if not np.array_equal(elements[0], np.arange(n)):
        raise InputError("the first permutation must be the identity")
    prod = elements[:, None, :][np.arange(k)[:, None, None], 0, elements[None, :, :]]
    expected = elements[group.table]
    if not np.array_equal(prod, expected):
        raise InputError("permutations do not realise the multiplication table")
    return elements


@dataclass(frozen=True, eq=False)
class CentralTypeSubgroup:
    """A permutation group L together with a non-degenerate cocycle on it.

    ``elements[i]`` is the permutation realising abstract element ``i`` of
    ``psi.group`` (composition ``(a b)(v) = a(b(v))``).
    """

    elements: np.ndarray
    psi: TwoCocycle

    def __post_init__(self):
        els = _check_realisation(self.elements, self.psi.group)
        els.setflags(write=False)
        object.__setattr__(self, "elements", els)
        if math.isqrt(self.order) ** 2 != self.order:
            raise NondegeneracyRequired(f"|L| = {self.order} is not a perfect square")
        verify_cocycle(self.psi)
        if not is_nondegenerate(self.psi):
            raise NondegeneracyRequired("the cocycle is degenerate")

    @classmethod
    def from_subgroup(cls, sub: Subgroup, psi: TwoCocycle):
        return cls(sub.elements, psi)

    @property
    def group(self):
        return self.psi.group

    @property
    def order(self):
        return self.psi.group.order

    @property
    def degree(self):
        return self.elements.shape[1]

    @property
    def dim(self):
        return math.isqrt(self.order)

    def stabilizer(self, v):
        """Abstract indices of the elements fixing vertex v."""
        return np.flatnonzero(self.elements[:, v] == v)

    def orbits(self):
        seen, out = set(), []
        for v in range(self.degree):
            if v not in seen:
                orb = sorted(set(self.elements[:, v].tolist()))
                seen.update(orb)
                out.append(orb)
        return out

    def to_json(self):
        return self.psi.to_json(embedding=self.elements)


def central_type_from_json(obj):
    psi = TwoCocycle.from_json(obj)
    if "embedding" not in obj:
        raise InputError("cocycle JSON needs an 'embedding' array to act on a graph")
    return CentralTypeSubgroup(np.asarray(obj["embedding"], dtype=np.int64), psi)


def conjugate_cocycle(c: TwoCocycle, L_elements, L2_elements, g):
    """Transport psi along x -> g x g^-1, giving a cocycle on the group L2 = g L g^-1.

    ``L2_elements`` fixes the element order of the target; its abstract table
    is read off from the permutations.
    """
    L_elements = np.asarray(L_elements, dtype=np.int64)
    L2_elements = np.asarray(L2_elements, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    ginv = np.argsort(g)
    pulled = g[L_elements][:, ginv]  # g x g^-1 for each x in L
    target = PermGroup(L2_elements.shape[1], (), L2_elements)
    pos_sorted = target.indices_of(pulled)
    if np.any(pos_sorted < 0) or len(set(pos_sorted.tolist())) != len(L_elements):
        raise NotConjugating("g L g^-1 is not the target subgroup")
    sorted_to_given = target.indices_of(L2_elements)
    given_pos = np.empty_like(sorted_to_given)
    given_pos[sorted_to_given] = np.arange(len(sorted_to_given))
    images = given_pos[pos_sorted]  # images[i] = index in L2 of g x_i g^-1
    _check_realisation(L_elements, c.group)
    k = len(L_elements)
    table2 = np.empty((k, k), dtype=np.int64)
    table2[np.ix_(images, images)] = images[c.group.table]
    group2 = FiniteGroup(table2)
    _check_realisation(L2_elements, group2)
    t = np.empty((k, k), dtype=np.int64)
    t[np.ix_(images, images)] = c.table
    out = TwoCocycle(group2, c.root_order, t)
    verify_cocycle(out)
    return out


def equivalent_pairs(p1: CentralTypeSubgroup, p2: CentralTypeSubgroup, G: PermGroup):
    """Whether some g in G conjugates L1 onto L2 and transports psi1 into the class of psi2."""
    k = p1.order
    if p2.order != k:
        return False
    target = PermGroup(p2.degree, (), p2.elements)
    for g in G.elements:
        ginv = np.argsort(g)
        if np.any(target.indices_of(g[p1.elements][:, ginv]) < 0):
            continue
        moved = conjugate_cocycle(p1.psi, p1.elements, p2.elements, g)
        if cohomologous(moved, p2.psi) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# classes of non-degenerate cocycles


def cyclic_decomposition(group: FiniteGroup):
    """Basis of an abelian group: elements e_i of orders n_i with L = prod <e_i>.

    Returns ``(moduli, basis, coords)`` where ``coords[x]`` are the exponents of
    element x in the basis.
    """
    if not group.is_abelian:
        raise NotAbelian("cyclic decomposition needs an abelian group")
    moduli = sorted(group.invariant_factors(), reverse=True)
    orders = group.element_orders
    k = group.order

    def search(chosen, span):
        if len(chosen) == len(moduli):
            return chosen
        need = moduli[len(chosen)]
        for x in np.flatnonzero(orders == need):
            x = int(x)
            new = group.generated(chosen + [x])
            if len(new) == len(span) * need:
                found = search(chosen + [x], new)
                if found is not None:
                    return found
        return None

    basis = search([], np.array([0])) if moduli else []
    if basis is None:  # pragma: no cover - invariant factors guarantee a basis
        raise VerificationError("no cyclic basis found")
    coords = np.zeros((k, len(moduli)), dtype=np.int64)
    for exps in itertools.product(*(range(m) for m in moduli)):
        x = 0
        for e, b in zip(exps, basis):
            for _ in range(e):
                x = group.table[x, b]
        coords[x] = exps
    return moduli, basis, coords


def enumerate_nondegenerate_classes_abelian(group: FiniteGroup, max_candidates=1 << 16):
    """One cocycle per non-degenerate cohomology class of an abelian group.

    Classes of an abelian group correspond to alternating bicharacters.  In a
    cyclic basis e_1..e_r with orders n_i the representative is the upper
    triangular bicharacter psi(x, y) = prod_{i<j} w_ij^(x_i y_j) with w_ij a
    gcd(n_i, n_j)-th root of unity; the root order is the exponent of L.
    """
    if not group.is_abelian:
        raise NotAbelian("this enumeration handles abelian groups only")
    k = group.order
    if k == 1 or math.isqrt(k) ** 2 != k:
        return []
    moduli, _, coords = cyclic_decomposition(group)
    N = group.exponent
    pairs = [(i, j) for i in range(len(moduli)) for j in range(i + 1, len(moduli))]
    gcds = [math.gcd(moduli[i], moduli[j]) for i, j in pairs]
    total = math.prod(gcds)
    if total > max_candidates:
        raise TooLarge(f"{total} alternating bicharacters exceed the limit {max_candidates}")
    # outer[p][x, y] = x_i * y_j * N / gcd for pair p
    outer = [
        np.outer(coords[:, i], coords[:, j]) * (N // gd) for (i, j), gd in zip(pairs, gcds)
    ]
    out = []
    for w in itertools.product(*(range(gd) for gd in gcds)):
        t = np.zeros((k, k), dtype=np.int64)
        for wp, op in zip(w, outer):
            if wp:
                t += wp * op
        t %= N
        rho_t = (t - t.T) % N
        if np.all(np.any(rho_t[1:] != 0, axis=1)):
            out.append(TwoCocycle(group, N, t))
    return out


def _cocycle_parametrisation(group: FiniteGroup):
    """Linear parametrisation of gauge-fixed normalised cocycles by psi(x, s), s in S.

    Along a breadth-first spanning tree of the right Cayley graph, psi(a, y)
    for y = b s is expressed through psi(a, b) and the unknowns f_s(x) =
    psi(x, s) by the cocycle identity.  Returns ``(coeff, equations)`` where
    ``coeff[a, y]`` is the coefficient row of psi(a, y) in the free unknowns
    and ``equations`` are the rows that must vanish for a cocycle.
    """
    k = group.order
    t = group.table
    gens = group.small_generating_set
    parent = {0: None}
    order = [0]
    for y in order:
        for si, s in enumerate(gens):
            z = int(t[y, s])
            if z not in parent:
                parent[z] = (y, si)
                order.append(z)
    # unknown f_s(x) for x != e; gauge fixes f_s(b) = 0 on tree edges (b, s) with b != e
    fixed = {(b, si) for z, ps in parent.items() if ps is not None for b, si in [ps] if b != 0}
    free = [(x, si) for si in range(len(gens)) for x in range(1, k) if (x, si) not in fixed]
    col = {key: i for i, key in enumerate(free)}
    u = len(free)

    def f_row(x, si):
        r = np.zeros(u, dtype=np.int64)
        if x != 0 and (x, si) in col:
            r[col[(x, si)]] = 1
        return r

    f_rows = np.zeros((len(gens), k, u), dtype=np.int64)
    for si in range(len(gens)):
        for x in range(k):
            f_rows[si, x] = f_row(x, si)
    coeff = np.zeros((k, k, u), dtype=np.int64)
    ar = np.arange(k)
    for y in order[1:]:
        b, si = parent[y]
        coeff[:, y] = coeff[:, b] + f_rows[si][t[ar, b]] - f_rows[si][b][None, :]
    eqs = []
    for b in range(k):
        for si, s in enumerate(gens):
            y = int(t[b, s])
            if parent[y] == (b, si):
                continue
            eqs.append(coeff[:, y] - coeff[:, b] - f_rows[si][t[ar, b]] + f_rows[si][b][None, :])
    equations = np.vstack(eqs) if eqs else np.zeros((0, u), dtype=np.int64)
    return coeff, equations


def find_nondegenerate_cocycle(group: FiniteGroup, max_candidates=1 << 18):
    """A non-degenerate cocycle on ``group`` if one exists, else ``None``.

    Every class of complex 2-cocycles has a representative with values in the
    |L|-th roots of unity, and every class has a representative vanishing on
    the tree edges of a spanning tree.  Non-degeneracy only depends on the
    commutator pairing rho(a, b) = psi(a, b) / psi(b, a) on commuting pairs,
    which is linear in the free parameters, so the (small) image of the
    gauge-fixed solution module under that map is enumerated by closure.
    """
    k = group.order
    if k == 1 or math.isqrt(k) ** 2 != k:
        return None
    N = k
    coeff, equations = _cocycle_parametrisation(group)
    gens = [v for v, _ in zmod.kernel_mod(equations, N)]
    comm = group.commuting.copy()
    comm[0, :] = False
    a_idx, b_idx = np.nonzero(comm)
    pairing = coeff[a_idx, b_idx] - coeff[b_idx, a_idx]  # rows: commuting pairs
    starts = np.searchsorted(a_idx, np.arange(1, k))

    def regular_free(r):
        # every x != e needs a commuting partner with rho(x, h) != 1
        return bool(np.all(np.logical_or.reduceat(r != 0, starts)))

    seen = {bytes(np.zeros(len(a_idx), dtype=np.int64)): np.zeros(coeff.shape[2], np.int64)}
    frontier = list(seen.items())
    images = [(pairing @ v) % N for v in gens]
    while frontier:
        nxt = []
        for key, param in frontier:
            r0 = np.frombuffer(key, dtype=np.int64)
            for img, v in zip(images, gens):
                r = (r0 + img) % N
                rk = r.tobytes()
                if rk in seen:
                    continue
                p = (param + v) % N
                seen[rk] = p
                if regular_free(r):
                    c = TwoCocycle(group, N, (coeff @ p) % N)
                    verify_cocycle(c)
                    if not is_nondegenerate(c):  # pragma: no cover
                        raise VerificationError("combinatorial and numerical nondegeneracy disagree")
                    return c
                nxt.append((rk, p))
                if len(seen) > max_candidates:
                    raise TooLarge(f"more than {max_candidates} commutator pairings")
        frontier = nxt
    return None


def is_central_type(group: FiniteGroup):
    """Whether the group admits a non-degenerate cocycle."""
    if group.is_abelian:
        return bool(enumerate_nondegenerate_classes_abelian(group))
    return find_nondegenerate_cocycle(group) is not None

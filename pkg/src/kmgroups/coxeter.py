"""Coxeter data derived from a generalized Cartan matrix.

The Weyl group attached to a GCM is the Coxeter group with edge orders
determined by the products a_ij * a_ji:

    product   0  1  2  3  >=4
    m_ij      2  3  4  6  infinity

This module classifies which subsets of generators span a finite (spherical)
group, decomposes subsets into spherical / essential / orthogonal parts,
builds the finite-subset complex (the nerve), and decides the two equivalent
strong-connectivity criteria used by the ends analysis.

Edge orders are Python ints, with ``math.inf`` for the infinite order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from collections.abc import Iterable, Sequence

from .gcm import GeneralizedCartanMatrix

INFINITE = math.inf

_ORDER_BY_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


class NotSphericalError(ValueError):
    """A subset expected to generate a finite group does not."""

    def __init__(self, subset: Iterable[int]):
        self.subset = frozenset(subset)
        super().__init__(f"subset {sorted(self.subset)} is not spherical")


@dataclass(frozen=True)
class FiniteTypeInfo:
    """Classification record for one finite-type connected diagram."""

    name: str
    order: int
    positive_roots: int


def _factorial(n: int) -> int:
    return math.factorial(n)


@dataclass(frozen=True)
class CoxeterDiagram:
    """A Coxeter matrix with its two derived graphs.

    ``orders[i][j]`` is the order m_ij of s_i s_j (1 on the diagonal,
    ``math.inf`` for the infinite order).  Two graphs matter:

    * the defining graph, edge iff m_ij >= 3 (used for components), and
    * the finite-order graph, edge iff m_ij < infinity (used for ends).

    >>> from .gcm import GeneralizedCartanMatrix
    >>> d = coxeter_matrix(GeneralizedCartanMatrix.from_rows([[2, -2], [-2, 2]]))
    >>> d.order(0, 1)
    inf
    >>> d.is_spherical({0})
    True
    >>> d.is_spherical({0, 1})
    False
    """

    orders: tuple[tuple[float, ...], ...]
    labels: tuple[str, ...]

    @classmethod
    def from_orders(
        cls,
        rows: Sequence[Sequence[float]],
        labels: Sequence[str] | None = None,
    ) -> "CoxeterDiagram":
        n = len(rows)
        frozen = tuple(
            tuple(INFINITE if x == INFINITE else int(x) for x in row) for row in rows
        )
        for i, row in enumerate(frozen):
            if len(row) != n:
                raise ValueError("order matrix must be square")
            if row[i] != 1:
                raise ValueError(f"m_{i}{i} must be 1")
        for i in range(n):
            for j in range(i + 1, n):
                if frozen[i][j] != frozen[j][i]:
                    raise ValueError(f"order matrix not symmetric at ({i},{j})")
                if frozen[i][j] != INFINITE and frozen[i][j] < 2:
                    raise ValueError(f"m_{i}{j} must be >= 2 or infinite")
        if labels is None:
            labels = tuple(str(i + 1) for i in range(n))
        return cls(orders=frozen, labels=tuple(labels))

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def index_set(self) -> range:
        return range(self.rank)

    def order(self, i: int, j: int) -> float:
        return self.orders[i][j]

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges of the defining graph (m_ij >= 3)."""
        return tuple(
            (i, j)
            for i in range(self.rank)
            for j in range(i + 1, self.rank)
            if self.orders[i][j] >= 3
        )

    def finite_order_edges(self) -> tuple[tuple[int, int], ...]:
        """Edges of the finite-order graph (m_ij < infinity)."""
        return tuple(
            (i, j)
            for i in range(self.rank)
            for j in range(i + 1, self.rank)
            if self.orders[i][j] != INFINITE
        )

    def components(self, subset: Iterable[int] | None = None) -> tuple[frozenset[int], ...]:
        """Connected components of the defining graph restricted to ``subset``."""
        verts = sorted(subset) if subset is not None else list(range(self.rank))
        vset = set(verts)
        seen: set[int] = set()
        out = []
        for start in verts:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for j in vset:
                    if j not in comp and self.orders[i][j] >= 3:
                        comp.add(j)
                        stack.append(j)
            seen |= comp
            out.append(frozenset(comp))
        return tuple(sorted(out, key=min))

    def spherical_type(self, component: Iterable[int]) -> FiniteTypeInfo | None:
        """Finite-type classification of one connected sub-diagram.

        Returns the type record (name, group order, number of positive roots)
        if the diagram is on the finite list, else None.  The list covers all
        finite Coxeter diagrams, so arbitrary edge orders (e.g. 5) are decided
        correctly, not only the crystallographic ones.
        """
        comp = sorted(component)
        n = len(comp)
        if n == 1:
            return FiniteTypeInfo("A1", 2, 1)
        if n == 2:
            m = self.orders[comp[0]][comp[1]]
            if m == INFINITE:
                return None
            m = int(m)
            name = {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
            return FiniteTypeInfo(name, 2 * m, m)
        edges = [
            (i, j)
            for a, i in enumerate(comp)
            for j in comp[a + 1 :]
            if self.orders[i][j] >= 3
        ]
        if any(self.orders[i][j] == INFINITE for i, j in edges):
            return None
        if len(edges) != n - 1:
            return None  # connected with a cycle
        degree = {i: 0 for i in comp}
        for i, j in edges:
            degree[i] += 1
            degree[j] += 1
        if max(degree.values()) > 3:
            return None
        heavy = [(i, j) for i, j in edges if self.orders[i][j] > 3]
        branch = [i for i in comp if degree[i] == 3]
        if len(branch) > 1:
            return None
        adj = {i: [] for i in comp}
        for i, j in edges:
            adj[i].append(j)
            adj[j].append(i)
        if branch:
            if heavy:
                return None
            b = branch[0]
            legs = []
            for first in adj[b]:
                length = 1
                prev, cur = b, first
                while degree[cur] == 2:
                    nxt = next(x for x in adj[cur] if x != prev)
                    prev, cur = cur, nxt
                    length += 1
                legs.append(length)
            legs.sort()
            if legs[:2] == [1, 1]:
                return FiniteTypeInfo(
                    f"D{n}", 2 ** (n - 1) * _factorial(n), n * (n - 1)
                )
            if legs == [1, 2, 2]:
                return FiniteTypeInfo("E6", 51840, 36)
            if legs == [1, 2, 3]:
                return FiniteTypeInfo("E7", 2903040, 63)
            if legs == [1, 2, 4]:
                return FiniteTypeInfo("E8", 696729600, 120)
            return None
        # a path: walk it from the smallest endpoint
        ends = [i for i in comp if degree[i] == 1]
        start = min(ends)
        path = [start]
        prev = None
        while len(path) < n:
            cur = path[-1]
            nxt = next(x for x in adj[cur] if x != prev)
            prev = cur
            path.append(nxt)
        if not heavy:
            return FiniteTypeInfo(
                f"A{n}", _factorial(n + 1), n * (n + 1) // 2
            )
        if len(heavy) > 1:
            return None
        labels_on_path = [
            int(self.orders[path[k]][path[k + 1]]) for k in range(n - 1)
        ]
        pos = next(k for k, m in enumerate(labels_on_path) if m > 3)
        m = labels_on_path[pos]
        terminal = pos in (0, n - 2)
        if m == 4:
            if terminal:
                return FiniteTypeInfo(f"B{n}", 2**n * _factorial(n), n * n)
            if n == 4:
                return FiniteTypeInfo("F4", 1152, 24)
            return None
        if m == 5 and terminal:
            if n == 3:
                return FiniteTypeInfo("H3", 120, 15)
            if n == 4:
                return FiniteTypeInfo("H4", 14400, 60)
        return None

    def is_spherical(self, subset: Iterable[int]) -> bool:
        """True iff the standard subgroup generated by ``subset`` is finite."""
        return all(
            self.spherical_type(c) is not None for c in self.components(subset)
        )

    def finite_group_order(self, subset: Iterable[int]) -> tuple[int, int]:
        """(group order, number of positive roots) of a spherical subset.

        Both are multiplicative / additive across components.  Raises
        :class:`NotSphericalError` when some component is not finite type.
        """
        order = 1
        positive = 0
        subset = frozenset(subset)
        for comp in self.components(subset):
            info = self.spherical_type(comp)
            if info is None:
                raise NotSphericalError(subset)
            order *= info.order
            positive += info.positive_roots
        return order, positive

    def decompose(self, subset: Iterable[int]) -> "SubsetDecomposition":
        """Split a subset into spherical part, essential part and perp."""
        subset = frozenset(subset)
        comps = self.components(subset)
        spherical = frozenset().union(
            *[c for c in comps if self.spherical_type(c) is not None]
        ) if comps else frozenset()
        essential = subset - spherical
        perp = frozenset(
            i
            for i in range(self.rank)
            if all(self.orders[i][j] == 2 for j in subset)
        )
        return SubsetDecomposition(
            subset=subset,
            components=comps,
            spherical_part=frozenset(spherical),
            essential_part=essential,
            perp=perp,
        )

    @cached_property
    def _spherical_subsets(self) -> tuple[frozenset[int], ...]:
        # level-wise enumeration; non-spherical sets are never extended,
        # which is sound because sphericity is closed under subsets
        found: list[frozenset[int]] = []
        level = [frozenset([i]) for i in range(self.rank)]
        while level:
            found.extend(level)
            nxt = []
            for simplex in level:
                top = max(simplex)
                for i in range(top + 1, self.rank):
                    cand = simplex | {i}
                    if self.is_spherical(cand):
                        nxt.append(cand)
            level = nxt
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def nerve(self) -> "Nerve":
        """The complex of all nonempty spherical subsets."""
        return Nerve(rank=self.rank, simplices=self._spherical_subsets)


@dataclass(frozen=True)
class SubsetDecomposition:
    """Decomposition of a generator subset J.

    ``spherical_part`` is the union of the finite-type components of J,
    ``essential_part`` the rest, and ``perp`` the set of all generators
    commuting with everything in J (disjoint from J since m_jj = 1).
    """

    subset: frozenset[int]
    components: tuple[frozenset[int], ...]
    spherical_part: frozenset[int]
    essential_part: frozenset[int]
    perp: frozenset[int]

    @property
    def is_spherical(self) -> bool:
        return self.essential_part == frozenset()

    @property
    def is_essential(self) -> bool:
        return self.spherical_part == frozenset()


@dataclass(frozen=True)
class Nerve:
    """All nonempty spherical subsets, ordered by inclusion.

    ``simplices`` is sorted by (size, members) and is closed downwards.
    """

    rank: int
    simplices: tuple[frozenset[int], ...]

    def __contains__(self, subset: Iterable[int]) -> bool:
        return frozenset(subset) in set(self.simplices)

    def by_dimension(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for s in self.simplices:
            counts[len(s) - 1] = counts.get(len(s) - 1, 0) + 1
        return counts

    def maximal_simplices(self) -> tuple[frozenset[int], ...]:
        return tuple(
            s
            for s in self.simplices
            if not any(s < t for t in self.simplices)
        )

    def face_hasse_edges(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs (face index, simplex index) in the face order."""
        index = {s: k for k, s in enumerate(self.simplices)}
        out = []
        for s in self.simplices:
            if len(s) == 1:
                continue
            for drop in sorted(s):
                out.append((index[s - {drop}], index[s]))
        return tuple(sorted(out))


def coxeter_matrix(gcm: GeneralizedCartanMatrix) -> CoxeterDiagram:
    """The Coxeter diagram of a GCM (products 0,1,2,3 map to 2,3,4,6; else inf).

    >>> d = coxeter_matrix(GeneralizedCartanMatrix.from_rows([[2, -1], [-3, 2]]))
    >>> d.order(0, 1)
    6
    """
    n = gcm.rank
    orders = tuple(
        tuple(
            1
            if i == j
            else _ORDER_BY_PRODUCT.get(gcm.entries[i][j] * gcm.entries[j][i], INFINITE)
            for j in range(n)
        )
        for i in range(n)
    )
    return CoxeterDiagram(orders=orders, labels=gcm.labels)


def _connected(vertices: set[int], adjacent) -> bool:
    # empty and singleton vertex sets count as connected
    if len(vertices) <= 1:
        return True
    verts = sorted(vertices)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        i = stack.pop()
        for j in vertices:
            if j not in seen and adjacent(i, j):
                seen.add(j)
                stack.append(j)
    return len(seen) == len(vertices)


@dataclass(frozen=True)
class StrongConnectivity:
    """Outcome of a strong-connectivity check.

    ``failing_subset`` is None when strongly connected; the empty frozenset
    means the finite-order graph itself is disconnected; otherwise it is the
    first (by size, then members) spherical subset whose removal disconnects
    the rest.
    """

    strongly_connected: bool
    failing_subset: frozenset[int] | None


def graph_strong_connectivity(diagram: CoxeterDiagram) -> StrongConnectivity:
    """Connectivity of the finite-order graph after deleting any spherical set."""
    def adjacent(i: int, j: int) -> bool:
        return diagram.orders[i][j] != INFINITE

    all_vertices = set(range(diagram.rank))
    for subset in (frozenset(),) + diagram._spherical_subsets:
        if not _connected(all_vertices - subset, adjacent):
            return StrongConnectivity(False, subset)
    return StrongConnectivity(True, None)


def strongly_connected_graph(diagram: CoxeterDiagram) -> bool:
    return graph_strong_connectivity(diagram).strongly_connected


def nerve_strong_connectivity(nerve: Nerve) -> StrongConnectivity:
    """Connectivity of every full subcomplex on the complement of a simplex.

    For J empty and for each simplex J of the nerve, take the subcomplex of
    simplices disjoint from J and test whether it is connected (a complex is
    connected iff its vertices are joined through shared simplices).
    """
    simplices = nerve.simplices
    for subset in (frozenset(),) + simplices:
        vertices = set(range(nerve.rank)) - subset
        if len(vertices) <= 1:
            continue
        parent = {v: v for v in vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in simplices:
            if s & subset:
                continue
            members = sorted(s)
            for other in members[1:]:
                ra, rb = find(members[0]), find(other)
                if ra != rb:
                    parent[rb] = ra
        roots = {find(v) for v in vertices}
        if len(roots) > 1:
            return StrongConnectivity(False, subset)
    return StrongConnectivity(True, None)


def strongly_connected_nerve(nerve: Nerve) -> bool:
    return nerve_strong_connectivity(nerve).strongly_connected

"""Standard parabolic combinatorics: the essential poset, conjugating moves,
bounded parabolic-closure search and the regular-element search.

Throughout, a subset J of generators is *essential* when it has no finite-type
component (J equals its essential part).  Essential subsets index the
commensurability classes of standard parabolic subgroups, ordered by
inclusion of essential parts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from collections.abc import Iterable

from .coxeter import CoxeterDiagram
from .roots import periodic_roots, positive_real_roots, split_by_support
from .weyl import DEFAULT_BUDGET, WeylElement, WeylGroup


class NotEssentialError(ValueError):
    def __init__(self, subset: Iterable[int]):
        self.subset = frozenset(subset)
        super().__init__(
            f"subset {sorted(self.subset)} is not essential and nonempty"
        )


class ComponentNotSphericalError(ValueError):
    """The move's surrounding component is infinite, so no move exists."""

    def __init__(self, subset: Iterable[int], s: int, component: Iterable[int]):
        self.subset = frozenset(subset)
        self.s = s
        self.component = frozenset(component)
        super().__init__(
            f"component {sorted(self.component)} of {sorted(self.subset)} + "
            f"{{{s}}} is not spherical"
        )


class MoveVerificationError(RuntimeError):
    """Conjugation by a move element did not land on generator matrices."""


def essential_subsets(diagram: CoxeterDiagram) -> tuple[frozenset[int], ...]:
    """All essential subsets (the empty set included), sorted by size then members."""
    out = []
    n = diagram.rank
    for bits in range(1 << n):
        subset = frozenset(i for i in range(n) if bits >> i & 1)
        if diagram.decompose(subset).essential_part == subset:
            out.append(subset)
    return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))


class Comparison(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def compare_commensurability(
    diagram: CoxeterDiagram, left: Iterable[int], right: Iterable[int]
) -> Comparison:
    """Order of the commensurability classes of two standard parabolics.

    The class of P_J embeds into that of P_K up to finite index exactly when
    the essential part of J is contained in the essential part of K, so the
    comparison reduces to set containment of essential parts.
    """
    a = diagram.decompose(left).essential_part
    b = diagram.decompose(right).essential_part
    if a == b:
        return Comparison.EQUAL
    if a <= b:
        return Comparison.LESS
    if b <= a:
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


@dataclass(frozen=True)
class EssentialPoset:
    """Essential subsets ordered by inclusion, with Hasse cover pairs."""

    diagram: CoxeterDiagram
    elements: tuple[frozenset[int], ...]
    hasse: tuple[tuple[int, int], ...]  # (smaller index, larger index)

    @classmethod
    def build(cls, diagram: CoxeterDiagram) -> "EssentialPoset":
        elements = essential_subsets(diagram)
        covers = []
        for a, small in enumerate(elements):
            for b, large in enumerate(elements):
                if not (small < large):
                    continue
                if any(
                    small < mid < large
                    for mid in elements
                ):
                    continue
                covers.append((a, b))
        return cls(diagram=diagram, elements=elements, hasse=tuple(sorted(covers)))

    def class_label(self, subset: frozenset[int]) -> str:
        return f"[W_{self.diagram_label(subset)}]"

    def representative(self, subset: frozenset[int]) -> str:
        if not subset:
            return "B"
        if subset == frozenset(range(self.diagram.rank)):
            return "G"
        return f"P_{self.diagram_label(subset)}"

    def diagram_label(self, subset: frozenset[int]) -> str:
        inside = ",".join(self.diagram.labels[i] for i in sorted(subset))
        return "{" + inside + "}"

    @property
    def maximum(self) -> frozenset[int]:
        return self.elements[-1] if self.elements else frozenset()


@dataclass(frozen=True)
class DeodharMove:
    """One elementary conjugation J -> nu^{-1} J nu of generator subsets."""

    source: frozenset[int]
    s: int
    component: frozenset[int]
    nu: WeylElement
    target: frozenset[int]


def _conjugate_generator_set(
    group: WeylGroup, element: WeylElement, subset: Iterable[int]
) -> frozenset[int]:
    """The set K with element^{-1} * subset * element = K, matrix-verified."""
    inv = element.inverse()
    out = set()
    for j in sorted(subset):
        conj = inv * group.generator(j) * element
        for k in range(group.rank):
            if conj == group.generator(k):
                out.add(k)
                break
        else:
            raise MoveVerificationError(
                f"conjugate of generator {j} is not a generator"
            )
    return frozenset(out)


def deodhar_move(group: WeylGroup, source: Iterable[int], s: int) -> DeodharMove:
    """Conjugate ``source`` across the outside generator ``s``.

    Requires the component K of source + {s} containing s to be spherical;
    the move element is nu = w_{K - s} * w_K and the target is computed (and
    verified) by matrix conjugation of each generator.
    """
    source = frozenset(source)
    if s in source:
        raise ValueError(f"generator {s} already belongs to {sorted(source)}")
    enlarged = source | {s}
    component = next(
        c for c in group.diagram.components(enlarged) if s in c
    )
    if not group.diagram.is_spherical(component):
        raise ComponentNotSphericalError(source, s, component)
    nu = group.longest_element(component - {s}) * group.longest_element(component)
    target = _conjugate_generator_set(group, nu, source)
    if len(target) != len(source):
        raise MoveVerificationError("move changed the subset size")
    return DeodharMove(source=source, s=s, component=component, nu=nu, target=target)


@dataclass(frozen=True)
class ConjugacyWitness:
    """A verified element w with w^{-1} J w = J', plus the move chain."""

    element: WeylElement
    moves: tuple[DeodharMove, ...]

    @property
    def chain(self) -> tuple[frozenset[int], ...]:
        if not self.moves:
            return ()
        return (self.moves[0].source,) + tuple(m.target for m in self.moves)


def standard_conjugacy(
    group: WeylGroup, source: Iterable[int], target: Iterable[int]
) -> ConjugacyWitness | None:
    """Search the finite move graph for a conjugation source -> target.

    Returns a verified witness, or None when the move graph is exhausted
    (which settles non-conjugacy for standard subsets).
    """
    source = frozenset(source)
    target = frozenset(target)
    if source == target:
        return ConjugacyWitness(element=group.identity, moves=())
    best_parent: dict[frozenset[int], tuple[frozenset[int], DeodharMove]] = {}
    queue = [source]
    seen = {source}
    head = 0
    while head < len(queue):
        cur = queue[head]
        head += 1
        for s in sorted(set(range(group.rank)) - cur):
            try:
                move = deodhar_move(group, cur, s)
            except ComponentNotSphericalError:
                continue
            if move.target in seen:
                continue
            seen.add(move.target)
            best_parent[move.target] = (cur, move)
            if move.target == target:
                moves = []
                node = target
                while node != source:
                    node, m = best_parent[node]
                    moves.append(m)
                moves.reverse()
                witness = group.identity
                for m in moves:
                    witness = witness * m.nu
                if _conjugate_generator_set(group, witness, source) != target:
                    raise MoveVerificationError("assembled witness failed to verify")
                return ConjugacyWitness(element=witness, moves=tuple(moves))
            queue.append(move.target)
    return None


def normalizer_factors(
    diagram: CoxeterDiagram, subset: Iterable[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """(J, J-perp) for essential J: the normalizer of W_J splits as
    W_J x W_{J-perp}, and the centralizer-side factor is W_{J-perp}."""
    subset = frozenset(subset)
    dec = diagram.decompose(subset)
    if not subset or dec.essential_part != subset:
        raise NotEssentialError(subset)
    return subset, dec.perp


@dataclass(frozen=True)
class ClosureCertificate:
    """Best conjugate found within a radius: an upper bound for the
    parabolic closure, never a proof of minimality."""

    element: WeylElement
    conjugator: WeylElement
    conjugate: WeylElement
    support: frozenset[int]
    essential_support: frozenset[int]
    depth: int


def parabolic_closure_search(
    group: WeylGroup,
    element: WeylElement,
    depth: int,
    generators: Iterable[int] | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> ClosureCertificate:
    """Minimize the support of v^{-1} w v over the ball of radius ``depth``.

    Candidates v are scanned in length-lexicographic order of canonical
    words; the key minimized is (essential-part size, support size), ties
    resolved by scan order.
    """
    best = None
    for v in group.ball_sorted(depth, generators=generators, budget=budget):
        conj = v.inverse() * element * v
        supp = conj.support
        ess = group.diagram.decompose(supp).essential_part
        key = (len(ess), len(supp))
        if best is None or key < best[0]:
            best = (key, v, conj, supp, ess)
    assert best is not None
    _, v, conj, supp, ess = best
    return ClosureCertificate(
        element=element,
        conjugator=v,
        conjugate=conj,
        support=supp,
        essential_support=ess,
        depth=depth,
    )


@dataclass(frozen=True)
class JRegularCertificate:
    """A candidate regular element with all four bounded certificates.

    * infinite order, decided against the torsion bound;
    * straightness, checked for powers 2..power_bound;
    * parabolic-closure search (within the subset) returned the full subset;
    * no positive real root supported in the subset, up to root_height, is
      fixed by a power <= power_bound.
    """

    element: WeylElement
    subset: frozenset[int]
    torsion_bound: int
    power_bound: int
    closure: ClosureCertificate
    root_height: int
    roots_checked: int


def find_j_regular(
    group: WeylGroup,
    subset: Iterable[int],
    max_len: int,
    power_bound: int,
    max_height: int,
    depth: int,
    budget: int | None = DEFAULT_BUDGET,
) -> JRegularCertificate | None:
    """Scan W_J by length then word for an element passing all four checks.

    Returns None when no element of length <= max_len passes; the bounds
    make every accepted certificate checkable but never prove that smaller
    candidates were wrongly rejected at higher bounds.
    """
    subset = frozenset(subset)
    dec = group.diagram.decompose(subset)
    if not subset or dec.essential_part != subset:
        raise NotEssentialError(subset)
    all_roots = positive_real_roots(group, max_height, budget=budget)
    in_subset, _ = split_by_support(all_roots, subset)
    torsion_bound = group.max_spherical_order
    for w in group.ball_sorted(max_len, generators=subset, budget=budget):
        if w.is_identity:
            continue
        if w.order(torsion_bound) is not None:
            continue
        if not w.is_straight(power_bound):
            continue
        closure = parabolic_closure_search(
            group, w, depth, generators=subset, budget=budget
        )
        if closure.support != subset:
            continue
        if periodic_roots(w, in_subset, power_bound):
            continue
        return JRegularCertificate(
            element=w,
            subset=subset,
            torsion_bound=torsion_bound,
            power_bound=power_bound,
            closure=closure,
            root_height=max_height,
            roots_checked=len(in_subset),
        )
    return None

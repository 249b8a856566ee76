"""Real roots: bounded orbit enumeration, reflections, bounded periodicity.

A real root is an orbit point w(alpha_i) of a simple root, kept here as its
integer coordinate vector in the simple-root basis together with a witness
pair (w, i).  Enumeration walks the orbit breadth-first and keeps positive
roots up to a height bound; every positive real root of height <= H is
reachable through positive roots of smaller height, so the bounded walk is
exhaustive up to H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections.abc import Iterable, Sequence

from .weyl import DEFAULT_BUDGET, BudgetExceededError, WeylElement, WeylGroup


class MissingWitnessError(ValueError):
    """The operation needs a root's witness pair (w, i) and none is stored."""


@dataclass(frozen=True)
class RealRoot:
    """A real root as exact coordinates; identity is the coordinate vector.

    ``witness`` is (w, i) with root = w(alpha_i), kept from the first
    breadth-first discovery; it does not take part in equality.
    """

    coords: tuple[int, ...]
    witness: tuple[WeylElement, int] | None = field(default=None, compare=False)

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.coords) if c != 0)

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coords) and any(c > 0 for c in self.coords)

    def __repr__(self) -> str:
        return f"RealRoot({self.coords})"


def _sign_or_raise(coords: Sequence[int]) -> int:
    if all(c >= 0 for c in coords) and any(c > 0 for c in coords):
        return 1
    if all(c <= 0 for c in coords) and any(c < 0 for c in coords):
        return -1
    raise RuntimeError(f"sign dichotomy violated for root image {tuple(coords)}")


def positive_real_roots(
    group: WeylGroup,
    max_height: int,
    budget: int | None = DEFAULT_BUDGET,
) -> list[RealRoot]:
    """All positive real roots of height <= max_height, in discovery order.

    >>> from .gcm import GeneralizedCartanMatrix
    >>> W = WeylGroup(GeneralizedCartanMatrix.from_rows([[2, -1], [-1, 2]]))
    >>> [r.coords for r in positive_real_roots(W, 2)]
    [(1, 0), (0, 1), (1, 1)]
    """
    n = group.rank
    a = group.gcm.entries
    roots: list[RealRoot] = []
    seen: set[tuple[int, ...]] = set()
    queue: list[RealRoot] = []
    for i in range(n):
        coords = tuple(1 if j == i else 0 for j in range(n))
        if 1 <= max_height:
            root = RealRoot(coords, (group.identity, i))
            seen.add(coords)
            roots.append(root)
            queue.append(root)
    head = 0
    while head < len(queue):
        root = queue[head]
        head += 1
        w, i = root.witness  # type: ignore[misc]
        for k in range(n):
            pairing = sum(a[k][j] * c for j, c in enumerate(root.coords))
            if pairing == 0:
                continue  # s_k fixes the root
            new = list(root.coords)
            new[k] -= pairing
            new_coords = tuple(new)
            if _sign_or_raise(new_coords) < 0:
                continue
            if sum(new_coords) > max_height or new_coords in seen:
                continue
            seen.add(new_coords)
            if budget is not None and len(seen) > budget:
                raise BudgetExceededError("root enumeration", budget)
            new_root = RealRoot(new_coords, (group.generator(k) * w, i))
            roots.append(new_root)
            queue.append(new_root)
    return roots


def split_by_support(
    roots: Iterable[RealRoot], subset: Iterable[int]
) -> tuple[list[RealRoot], list[RealRoot]]:
    """Partition roots into (support inside subset, the rest), order kept."""
    subset = frozenset(subset)
    inside, outside = [], []
    for r in roots:
        (inside if r.support <= subset else outside).append(r)
    return inside, outside


def reflection_of(root: RealRoot) -> WeylElement:
    """The reflection w s_i w^{-1} attached to a witnessed root.

    Checked on construction: the result is an involution sending the root
    to its negative.
    """
    if root.witness is None:
        raise MissingWitnessError(f"root {root.coords} carries no witness")
    w, i = root.witness
    refl = w * w.group.generator(i) * w.inverse()
    if refl.apply(root.coords) != tuple(-c for c in root.coords):
        raise RuntimeError(f"reflection for {root.coords} does not negate it")
    if not (refl * refl).is_identity:
        raise RuntimeError(f"reflection for {root.coords} is not an involution")
    return refl


def periodic_roots(
    element: WeylElement,
    roots: Iterable[RealRoot],
    n_max: int,
) -> list[tuple[RealRoot, int]]:
    """Roots fixed by some power w^n with 1 <= n <= n_max, with least period.

    A bounded check: an empty result only certifies no periodicity up to
    ``n_max``.
    """
    out = []
    for root in roots:
        coords = root.coords
        v = coords
        for n in range(1, n_max + 1):
            v = element.apply(v)
            if v == coords:
                out.append((root, n))
                break
    return out

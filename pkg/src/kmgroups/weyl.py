"""Exact Weyl group elements in the simple-root reflection representation.

An element is the integer matrix of its action on the root lattice, in the
basis of simple roots: column j holds the coordinates of the image of the
j-th simple root.  The generator s_i acts by

    s_i : alpha_j  |->  alpha_j - a_ij * alpha_i

so its matrix is the identity with row i replaced by (delta_ij - a_ij).
The representation is faithful: a nonidentity element has a right descent i
and therefore sends alpha_i to a negative root, so its matrix is not the
identity.  Words, lengths and supports are recovered from the matrix alone
by descent peeling, hence are representation-independent.

All entries are Python ints; nothing here can overflow.
"""

from __future__ import annotations

from functools import cached_property
from collections.abc import Iterable, Sequence

from ._intmat import Matrix, identity, mat_mul, mat_vec
from .coxeter import CoxeterDiagram, coxeter_matrix
from .gcm import GeneralizedCartanMatrix

DEFAULT_BUDGET = 1_000_000


class BudgetExceededError(RuntimeError):
    """An enumeration grew past its configured element budget."""

    def __init__(self, what: str, budget: int):
        self.what = what
        self.budget = budget
        super().__init__(f"{what} exceeded the element budget of {budget}")


def _column_sign(rows: Matrix, j: int) -> int:
    """Sign of the root in column j: +1 if positive, -1 if negative.

    Real roots are totally positive or totally negative in simple-root
    coordinates; a mixed-sign column means the arithmetic went wrong, which
    is treated as an internal error, never silently.
    """
    col = [row[j] for row in rows]
    if all(c >= 0 for c in col) and any(c > 0 for c in col):
        return 1
    if all(c <= 0 for c in col) and any(c < 0 for c in col):
        return -1
    raise RuntimeError(
        f"sign dichotomy violated in column {j}: {col}; "
        "matrix is not a Weyl element"
    )


class WeylGroup:
    """Factory and context for Weyl elements of one GCM.

    >>> from .gcm import GeneralizedCartanMatrix
    >>> W = WeylGroup(GeneralizedCartanMatrix.from_rows([[2, -2], [-2, 2]]))
    >>> s1, s2 = W.generator(0), W.generator(1)
    >>> (s1 * s2).length
    2
    >>> s1.apply((0, 1))   # s_1(alpha_2) = alpha_2 + 2 alpha_1
    (2, 1)
    """

    def __init__(self, gcm: GeneralizedCartanMatrix):
        self.gcm = gcm
        self.diagram: CoxeterDiagram = coxeter_matrix(gcm)
        n = gcm.rank
        self._identity_rows = identity(n)
        self.identity = WeylElement(self, self._identity_rows)
        self._generators = tuple(
            WeylElement(self, self._right_mul_gen(self._identity_rows, i))
            for i in range(n)
        )

    @property
    def rank(self) -> int:
        return self.gcm.rank

    def generator(self, i: int) -> "WeylElement":
        return self._generators[i]

    def generators(self) -> tuple["WeylElement", ...]:
        return self._generators

    def _right_mul_gen(self, rows: Matrix, k: int) -> Matrix:
        # (w s_k)[i][j] = w[i][j] - w[i][k] * a_kj
        a_k = self.gcm.entries[k]
        return tuple(
            tuple(row[j] - row[k] * a_k[j] for j in range(self.rank))
            for row in rows
        )

    def from_word(self, word: Iterable[int]) -> "WeylElement":
        rows = self._identity_rows
        for k in word:
            if not 0 <= k < self.rank:
                raise IndexError(f"generator index {k} out of range")
            rows = self._right_mul_gen(rows, k)
        return WeylElement(self, rows)

    def element(self, rows: Matrix) -> "WeylElement":
        return WeylElement(self, rows)

    def ball(
        self,
        radius: int,
        generators: Iterable[int] | None = None,
        budget: int | None = DEFAULT_BUDGET,
    ) -> list["WeylElement"]:
        """All elements of length <= radius (within the standard subgroup
        generated by ``generators`` if given), in breadth-first order.

        Raises :class:`BudgetExceededError` past ``budget`` elements.
        """
        gens = sorted(generators) if generators is not None else list(range(self.rank))
        seen = {self._identity_rows}
        out = [self.identity]
        frontier = [self._identity_rows]
        for _ in range(radius):
            nxt = []
            for rows in frontier:
                for k in gens:
                    new = self._right_mul_gen(rows, k)
                    if new in seen:
                        continue
                    seen.add(new)
                    if budget is not None and len(seen) > budget:
                        raise BudgetExceededError("element ball", budget)
                    nxt.append(new)
                    out.append(WeylElement(self, new))
            if not nxt:
                break
            frontier = nxt
        return out

    def ball_sorted(
        self,
        radius: int,
        generators: Iterable[int] | None = None,
        budget: int | None = DEFAULT_BUDGET,
    ) -> list["WeylElement"]:
        """The ball ordered length-lexicographically by canonical word."""
        return sorted(
            self.ball(radius, generators, budget), key=lambda w: (w.length, w.word)
        )

    def longest_element(self, subset: Iterable[int]) -> "WeylElement":
        """The longest element of a spherical standard subgroup.

        Built greedily from the identity: repeatedly append the smallest
        generator of the subset that still lengthens the word.  The result
        is an involution normalizing the subset, of length equal to the
        number of positive roots of the subgroup.
        """
        subset = sorted(frozenset(subset))
        _, positive = self.diagram.finite_group_order(subset)  # NotSphericalError
        rows = self._identity_rows
        for _ in range(positive):
            k = next((k for k in subset if _column_sign(rows, k) > 0), None)
            if k is None:
                raise RuntimeError("longest-element climb stopped early")
            rows = self._right_mul_gen(rows, k)
        if any(_column_sign(rows, k) > 0 for k in subset):
            raise RuntimeError("longest-element climb did not terminate")
        return WeylElement(self, rows)

    @cached_property
    def max_spherical_order(self) -> int:
        """Largest order of a finite standard subgroup (1 for rank 0 data).

        Any torsion element lies in a conjugate of some spherical standard
        subgroup, so its order is at most this bound; that makes
        :meth:`WeylElement.order` a total decision procedure.
        """
        best = 1
        for subset in self.diagram._spherical_subsets:
            order, _ = self.diagram.finite_group_order(subset)
            best = max(best, order)
        return best


class WeylElement:
    """One group element; immutable by convention, equality by matrix."""

    def __init__(self, group: WeylGroup, rows: Matrix):
        self.group = group
        self.rows = rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.rows == other.rows and self.group.gcm == other.group.gcm

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        letters = "*".join(f"s{k + 1}" for k in self.word) or "e"
        return f"<WeylElement {letters}>"

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if not isinstance(other, WeylElement):
            return NotImplemented
        return WeylElement(self.group, mat_mul(self.rows, other.rows))

    def __pow__(self, n: int) -> "WeylElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.group.identity
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @property
    def is_identity(self) -> bool:
        return self.rows == self.group._identity_rows

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Image of a root-lattice vector (simple-root coordinates)."""
        return mat_vec(self.rows, coords)

    def image_of_simple(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.rows)

    def right_descents(self) -> tuple[int, ...]:
        """Generators i with length(w s_i) < length(w)."""
        return tuple(
            i for i in range(self.group.rank) if _column_sign(self.rows, i) < 0
        )

    def reduced_word(self, tie_break: str = "smallest") -> tuple[int, ...]:
        """A reduced word recovered by descent peeling.

        At each step the image of some simple root is negative (a right
        descent); that index becomes the last letter and is peeled off.
        ``tie_break`` picks the smallest or largest descent.  Different
        tie-breaks may give different words but always the same letter set
        and length.
        """
        pick = min if tie_break == "smallest" else max
        letters = []
        cur = self.rows
        group = self.group
        while cur != group._identity_rows:
            descents = [
                k for k in range(group.rank) if _column_sign(cur, k) < 0
            ]
            if not descents:
                raise RuntimeError("nonidentity element with no descent")
            k = pick(descents)
            letters.append(k)
            cur = group._right_mul_gen(cur, k)
        letters.reverse()
        return tuple(letters)

    @cached_property
    def word(self) -> tuple[int, ...]:
        """The canonical reduced word (smallest-descent peeling)."""
        return self.reduced_word("smallest")

    @cached_property
    def length(self) -> int:
        return len(self.word)

    @cached_property
    def support(self) -> frozenset[int]:
        """Letters occurring in any reduced word (word-independent)."""
        return frozenset(self.word)

    def inverse(self) -> "WeylElement":
        return self.group.from_word(reversed(self.word))

    def order(self, bound: int | None = None) -> int | None:
        """The element's order, or None if infinite.

        Powers are tried up to ``bound`` (default: the largest spherical
        subgroup order, which caps the order of every torsion element).
        """
        if bound is None:
            bound = self.group.max_spherical_order
        power = self
        for n in range(1, bound + 1):
            if power.is_identity:
                return n
            power = power * self
        return None

    def is_straight(self, n_max: int) -> bool:
        """Whether length(w^n) = n * length(w) for all 2 <= n <= n_max.

        A bounded certificate only; it never proves straightness beyond
        ``n_max``.
        """
        base = self.length
        power = self
        for n in range(2, n_max + 1):
            power = power * self
            if power.length != n * base:
                return False
        return True

"""Validated generalized Cartan matrices and their exact type classification.

A generalized Cartan matrix (GCM) is a square integer matrix ``A`` with
``a_ii = 2``, ``a_ij <= 0`` for ``i != j``, and ``a_ij = 0`` exactly when
``a_ji = 0``.  Everything else in this package is derived from a validated
GCM.  All arithmetic is exact (Python ints).

Indices are 0-based everywhere in the library; the optional ``labels`` are
display-only and never used for identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from collections.abc import Iterable, Sequence

from ._intmat import Matrix, det, freeze

FINITE = "finite"
AFFINE = "affine"
INDEFINITE = "indefinite"


class GcmValidationError(ValueError):
    """A matrix violates one of the generalized Cartan matrix axioms.

    ``position`` holds the offending 0-based index tuple; ``describe()``
    renders the conventional 1-based form, e.g. ``DiagonalNotTwo(1)``.
    """

    code = "Invalid"

    def __init__(self, message: str, position: tuple[int, ...] = ()):
        super().__init__(message)
        self.position = position

    def describe(self) -> str:
        inside = ",".join(str(i + 1) for i in self.position)
        return f"{self.code}({inside})" if inside else self.code


class NotSquareError(GcmValidationError):
    code = "NotSquare"


class DiagonalNotTwoError(GcmValidationError):
    code = "DiagonalNotTwo"


class PositiveOffDiagonalError(GcmValidationError):
    code = "PositiveOffDiagonal"


class ZeroAsymmetryError(GcmValidationError):
    code = "ZeroAsymmetry"


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """An immutable, validated generalized Cartan matrix.

    Build instances with :func:`GeneralizedCartanMatrix.from_rows`, which
    checks the axioms and reports the first violation with its position.

    >>> a2 = GeneralizedCartanMatrix.from_rows([[2, -1], [-1, 2]])
    >>> a2.rank
    2
    >>> a2.entry(0, 1)
    -1
    """

    entries: Matrix
    labels: tuple[str, ...]

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
    ) -> "GeneralizedCartanMatrix":
        entries = freeze(rows)
        n = len(entries)
        if n == 0:
            raise NotSquareError("matrix is empty")
        for i, row in enumerate(entries):
            if len(row) != n:
                raise NotSquareError(
                    f"row {i + 1} has {len(row)} entries, expected {n}", (i,)
                )
        for i in range(n):
            if entries[i][i] != 2:
                raise DiagonalNotTwoError(
                    f"diagonal entry at position {i + 1} is {entries[i][i]}, must be 2",
                    (i,),
                )
        for i in range(n):
            for j in range(n):
                if i != j and entries[i][j] > 0:
                    raise PositiveOffDiagonalError(
                        f"off-diagonal entry at ({i + 1},{j + 1}) is "
                        f"{entries[i][j]}, must be <= 0",
                        (i, j),
                    )
        for i in range(n):
            for j in range(n):
                if i != j and entries[i][j] != 0 and entries[j][i] == 0:
                    raise ZeroAsymmetryError(
                        f"entry ({i + 1},{j + 1}) is {entries[i][j]} but "
                        f"({j + 1},{i + 1}) is 0; zeros must be symmetric",
                        (i, j),
                    )
        if labels is None:
            labels = tuple(str(i + 1) for i in range(n))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise GcmValidationError(
                    f"{len(labels)} labels for a rank-{n} matrix"
                )
        return cls(entries=entries, labels=labels)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def index_set(self) -> range:
        return range(self.rank)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def submatrix(self, subset: Iterable[int]) -> Matrix:
        idx = sorted(subset)
        return tuple(tuple(self.entries[i][j] for j in idx) for i in idx)

    def label_set(self, subset: Iterable[int]) -> str:
        inside = ",".join(self.labels[i] for i in sorted(subset))
        return "{" + inside + "}"


def components(gcm: GeneralizedCartanMatrix) -> tuple[frozenset[int], ...]:
    """Connected components of the index set, joining i and j iff a_ij != 0.

    Returned sorted by smallest member.

    >>> g = GeneralizedCartanMatrix.from_rows([[2, 0, -1], [0, 2, 0], [-1, 0, 2]])
    >>> [sorted(c) for c in components(g)]
    [[0, 2], [1]]
    """
    n = gcm.rank
    seen: set[int] = set()
    out = []
    for start in range(n):
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j not in comp and gcm.entries[i][j] != 0:
                    comp.add(j)
                    queue.append(j)
        seen |= comp
        out.append(frozenset(comp))
    return tuple(sorted(out, key=min))


@dataclass(frozen=True)
class GcmTypeVerdict:
    """Per-component type classification of a GCM.

    ``types[k]`` is one of ``"finite"``, ``"affine"``, ``"indefinite"`` and
    applies to ``components[k]``.
    """

    components: tuple[frozenset[int], ...]
    types: tuple[str, ...]
    indecomposable: bool

    def type_of(self, index: int) -> str:
        for comp, typ in zip(self.components, self.types):
            if index in comp:
                return typ
        raise IndexError(index)

    @property
    def all_finite(self) -> bool:
        return all(t == FINITE for t in self.types)


def _component_type(gcm: GeneralizedCartanMatrix, comp: frozenset[int]) -> str:
    # Finite iff all principal minors > 0; affine iff det = 0 and all proper
    # principal minors > 0; indefinite otherwise.  Exact integer determinants.
    idx = sorted(comp)
    k = len(idx)
    full = det([[gcm.entries[i][j] for j in idx] for i in idx])
    for size in range(1, k):
        for sub in itertools.combinations(idx, size):
            if det([[gcm.entries[i][j] for j in sub] for i in sub]) <= 0:
                return INDEFINITE
    if full > 0:
        return FINITE
    if full == 0:
        return AFFINE
    return INDEFINITE


def classify(gcm: GeneralizedCartanMatrix) -> GcmTypeVerdict:
    """Classify each indecomposable component as finite, affine or indefinite.

    >>> classify(GeneralizedCartanMatrix.from_rows([[2, -1], [-1, 2]])).types
    ('finite',)
    >>> classify(GeneralizedCartanMatrix.from_rows([[2, -2], [-2, 2]])).types
    ('affine',)
    >>> classify(GeneralizedCartanMatrix.from_rows([[2, -3], [-3, 2]])).types
    ('indefinite',)
    """
    comps = components(gcm)
    types = tuple(_component_type(gcm, c) for c in comps)
    return GcmTypeVerdict(components=comps, types=types, indecomposable=len(comps) == 1)


@dataclass(frozen=True)
class GcmScalars:
    """Scalar invariants read off the matrix entries.

    ``max_abs_offdiag`` is the largest |a_ij| over i != j (0 for rank 1);
    ``two_spherical`` means every rank-2 principal pair generates a finite
    dihedral group, i.e. a_ij * a_ji <= 3 for all i != j.
    """

    max_abs_offdiag: int
    two_spherical: bool


def scalars(gcm: GeneralizedCartanMatrix) -> GcmScalars:
    n = gcm.rank
    off = [abs(gcm.entries[i][j]) for i in range(n) for j in range(n) if i != j]
    products = [
        gcm.entries[i][j] * gcm.entries[j][i]
        for i in range(n)
        for j in range(i + 1, n)
    ]
    return GcmScalars(
        max_abs_offdiag=max(off, default=0),
        two_spherical=all(p <= 3 for p in products),
    )

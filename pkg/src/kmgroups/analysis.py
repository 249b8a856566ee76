"""Verdict layer: ends, local indecomposability over F_q, and structure
reports for the completed group attached to a GCM over a finite field.

Everything group-theoretic in the reports is static text gated on computed
combinatorial predicates; only the combinatorics is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable

from .coxeter import (
    CoxeterDiagram,
    coxeter_matrix,
    graph_strong_connectivity,
    nerve_strong_connectivity,
)
from .gcm import FINITE, GeneralizedCartanMatrix, classify, scalars
from .parabolics import EssentialPoset


class NotPrimePowerError(ValueError):
    def __init__(self, q: int):
        self.q = q
        super().__init__(f"{q} is not a prime power")


def prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e, p prime, e >= 1; trial division only.

    >>> prime_power(8)
    (2, 3)
    >>> prime_power(7)
    (7, 1)
    """
    if q < 2:
        raise NotPrimePowerError(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimePowerError(q)
    return p, e


@dataclass(frozen=True)
class EndsVerdict:
    """Number-of-ends facts derived from the diagram.

    ``witness`` is None when one-ended or when the Weyl group is finite;
    the empty frozenset means the finite-order graph is disconnected;
    otherwise it is a spherical subset whose removal disconnects the rest.
    """

    weyl_infinite: bool
    one_ended: bool
    graph_strongly_connected: bool
    nerve_strongly_connected: bool
    nerve_agreement: bool
    witness: frozenset[int] | None


def ends_verdict(gcm: GeneralizedCartanMatrix) -> EndsVerdict:
    diagram = coxeter_matrix(gcm)
    weyl_infinite = not classify(gcm).all_finite
    graph_result = graph_strong_connectivity(diagram)
    nerve_result = nerve_strong_connectivity(diagram.nerve())
    one_ended = weyl_infinite and graph_result.strongly_connected
    witness = None
    if weyl_infinite and not graph_result.strongly_connected:
        witness = graph_result.failing_subset
    return EndsVerdict(
        weyl_infinite=weyl_infinite,
        one_ended=one_ended,
        graph_strongly_connected=graph_result.strongly_connected,
        nerve_strongly_connected=nerve_result.strongly_connected,
        nerve_agreement=(
            graph_result.strongly_connected == nerve_result.strongly_connected
        ),
        witness=witness,
    )


@dataclass(frozen=True)
class CriterionFailure:
    """Why one sufficient criterion did not apply."""

    criterion: str  # "criterion_i" | "criterion_ii" | "applicability"
    failed: tuple[str, ...]


@dataclass(frozen=True)
class IndecomposabilityVerdict:
    """Local indecomposability of the completed group over F_q.

    ``outcome`` is "locally_indecomposable" or "inconclusive"; when
    decomposable-proof criteria apply, ``by`` names the route
    ("finite_type", "criterion_i", "criterion_ii").  Inconclusive verdicts
    carry one failure record per criterion.  The checklist lists every
    hypothesis that was computed, for transparency.
    """

    q: int
    p: int
    exponent: int
    applicable: bool
    outcome: str
    by: str | None
    reasons: tuple[CriterionFailure, ...]
    checklist: dict[str, bool]


def indecomposability_verdict(
    gcm: GeneralizedCartanMatrix, q: int
) -> IndecomposabilityVerdict:
    """Decide local indecomposability by the two sufficient criteria.

    Criterion I: the Weyl group is infinite and one-ended and p exceeds the
    largest |a_ij|.  Criterion II: the matrix is 2-spherical, with q >= 3
    required when max |a_ij| = 2 and q >= 4 when max |a_ij| = 3 (no bound
    when max |a_ij| <= 1).  Finite type is decided first and reported on its
    own.  Anything else is inconclusive, never a disproof.
    """
    p, e = prime_power(q)
    verdict = classify(gcm)
    sc = scalars(gcm)
    ends = ends_verdict(gcm)
    m = sc.max_abs_offdiag
    q_bound_ok = m <= 1 or (m == 2 and q >= 3) or (m == 3 and q >= 4)
    checklist = {
        "indecomposable": verdict.indecomposable,
        "finite_type": verdict.all_finite,
        "one_ended": ends.one_ended,
        "p_gt_max_abs_offdiag": p > m,
        "two_spherical": sc.two_spherical,
        "q_bound_ok": q_bound_ok,
    }
    def result(outcome, by, reasons, applicable=True):
        return IndecomposabilityVerdict(
            q=q, p=p, exponent=e, applicable=applicable, outcome=outcome,
            by=by, reasons=tuple(reasons), checklist=checklist,
        )

    if not verdict.indecomposable:
        return result(
            "inconclusive",
            None,
            [CriterionFailure("applicability", ("indecomposable",))],
            applicable=False,
        )
    if verdict.all_finite:
        return result("locally_indecomposable", "finite_type", [])
    if ends.one_ended and p > m:
        return result("locally_indecomposable", "criterion_i", [])
    if sc.two_spherical and q_bound_ok:
        return result("locally_indecomposable", "criterion_ii", [])
    failures = []
    failed_i = tuple(
        name
        for name, ok in (("one_ended", ends.one_ended), ("p_gt_max_abs_offdiag", p > m))
        if not ok
    )
    failures.append(CriterionFailure("criterion_i", failed_i))
    failed_ii = tuple(
        name
        for name, ok in (("two_spherical", sc.two_spherical), ("q_bound_ok", q_bound_ok))
        if not ok
    )
    failures.append(CriterionFailure("criterion_ii", failed_ii))
    return result("inconclusive", None, failures)


@dataclass(frozen=True)
class OpenSubgroupClass:
    subset: frozenset[int]
    class_label: str
    representative: str
    description: str


@dataclass(frozen=True)
class OpenSubgroupReport:
    """Commensurability classes of open subgroups, as a rendered poset."""

    poset: EssentialPoset
    classes: tuple[OpenSubgroupClass, ...]
    semantics: tuple[str, ...]


_OPEN_SEMANTICS = (
    "Every open subgroup is commensurable with a conjugate of exactly one "
    "standard parabolic P_J with J essential; the map to essential subsets "
    "is an order isomorphism onto subsets ordered by inclusion.",
    "Two classes are equal exactly when some conjugate of a member of one is "
    "commensurable with a member of the other.",
    "One class lies strictly below another exactly when some conjugate of a "
    "member embeds with infinite index in a member of the larger class.",
)


def open_subgroup_report(gcm: GeneralizedCartanMatrix) -> OpenSubgroupReport:
    diagram = coxeter_matrix(gcm)
    poset = EssentialPoset.build(diagram)
    full = frozenset(range(diagram.rank))
    classes = []
    for subset in poset.elements:
        if not subset:
            description = "compact open subgroups"
        elif subset == full:
            description = "open subgroups of finite index in G"
        else:
            description = (
                "open subgroups commensurable with a conjugate of "
                + poset.representative(subset)
            )
        classes.append(
            OpenSubgroupClass(
                subset=subset,
                class_label=poset.class_label(subset),
                representative=poset.representative(subset),
                description=description,
            )
        )
    return OpenSubgroupReport(
        poset=poset, classes=tuple(classes), semantics=_OPEN_SEMANTICS
    )


@dataclass(frozen=True)
class SandwichRecord:
    """One sandwich P- <= gHg^{-1} <= P for locally normal subgroups."""

    essential: frozenset[int]
    spherical_extra: frozenset[int]
    union: frozenset[int]
    parabolic: str
    statement: str
    refined_lower_bound: str


@dataclass(frozen=True)
class StructureReport:
    """Locally normal subgroup structure, rendered as checkable text."""

    sandwiches: tuple[SandwichRecord, ...]
    compact_or_open: bool
    symbols: dict[str, str]


_SYMBOLS = {
    "Res(O)": "intersection of all open normal subgroups of the open subgroup O",
    "L+_J": "closure of the subgroup generated by the root subgroups whose "
    "roots are supported in J",
    "U_X": "closure of the normal closure, inside the maximal positive "
    "unipotent subgroup, of the root subgroups attached to positive real "
    "roots not supported in X",
    "G-dagger": "closed subgroup generated by the closures of all "
    "contraction groups of group elements",
}


def locally_normal_report(gcm: GeneralizedCartanMatrix) -> StructureReport:
    """Sandwich every noncompact closed locally normal subgroup between the
    residual and the full parabolic of an essential-plus-orthogonal subset.

    One record is emitted per pair (J nonempty essential, J' spherical subset
    of the perp of J); the lower bound refines to L+_J times U over the
    perp-closure of J.
    """
    diagram = coxeter_matrix(gcm)
    records = []
    for subset in essential_nonempty(diagram):
        perp = diagram.decompose(subset).perp
        for extra in _subsets_of(perp):
            if not diagram.is_spherical(extra):
                continue
            union = subset | extra
            name = _parabolic_name(diagram, union)
            j_name = diagram_set_label(diagram, subset)
            perp_closure = diagram_set_label(diagram, subset | perp)
            records.append(
                SandwichRecord(
                    essential=subset,
                    spherical_extra=frozenset(extra),
                    union=union,
                    parabolic=name,
                    statement=(
                        f"some conjugate gHg^-1 satisfies "
                        f"Res({name}) <= gHg^-1 <= {name}"
                    ),
                    refined_lower_bound=(
                        f"L+_{j_name} U_{perp_closure} <= Res({name})"
                    ),
                )
            )
    compact_or_open = all(
        diagram.is_spherical(diagram.decompose(subset).perp)
        for subset in essential_nonempty(diagram)
    )
    return StructureReport(
        sandwiches=tuple(records),
        compact_or_open=compact_or_open,
        symbols=dict(_SYMBOLS),
    )


def essential_nonempty(diagram: CoxeterDiagram) -> list[frozenset[int]]:
    from .parabolics import essential_subsets

    return [s for s in essential_subsets(diagram) if s]


def _subsets_of(base: frozenset[int]) -> list[frozenset[int]]:
    members = sorted(base)
    out = []
    for bits in range(1 << len(members)):
        out.append(frozenset(m for k, m in enumerate(members) if bits >> k & 1))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def diagram_set_label(diagram: CoxeterDiagram, subset: Iterable[int]) -> str:
    inside = ",".join(diagram.labels[i] for i in sorted(subset))
    return "{" + inside + "}"


def _parabolic_name(diagram: CoxeterDiagram, subset: frozenset[int]) -> str:
    if not subset:
        return "B"
    if subset == frozenset(range(diagram.rank)):
        return "G"
    return "P_" + diagram_set_label(diagram, subset)

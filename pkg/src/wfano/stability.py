"""K-stability verdicts assembled from recomputable criterion traces.

Every sufficient criterion used by classify() is registered under a short
machine name together with a citation tag naming the underlying result.  The
trace is built exclusively through the registry, so each recorded conclusion
can be recomputed later from the recorded inputs alone, and the final verdict
is the join of the per-entry claims, never stronger.

All outputs are one-sided: "unknown" means no registered criterion applied,
never that the member is unstable, and alpha values are lower bounds.  The
only two-sided statement is the Fermat margin criterion, which does decide
instability for negative margins.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import WeightSystem, star_case
from .enumeration import EnumerationResult
from .monomial import Support, plan_cover_for_support, plan_cover_universal

MEMBER_FERMAT = "fermat"
MEMBER_GENERAL = "general"
MEMBER_ANY = "any_quasi_smooth"
MEMBER_CLASSES = (MEMBER_FERMAT, MEMBER_GENERAL, MEMBER_ANY)


class Verdict(enum.Enum):
    """Lattice of claims: k_stable > k_polystable > k_semistable > unknown.

    k_unstable sits outside the chain; it contradicts every positive claim
    and join_verdicts refuses to merge them.
    """

    K_STABLE = "k_stable"
    K_POLYSTABLE = "k_polystable"
    K_SEMISTABLE = "k_semistable"
    K_UNSTABLE = "k_unstable"
    UNKNOWN = "unknown"

    def implies(self, other: "Verdict") -> bool:
        if self is other:
            return True
        if self is Verdict.K_UNSTABLE or other is Verdict.K_UNSTABLE:
            return False
        return _CHAIN.index(self) >= _CHAIN.index(other)


_CHAIN = (Verdict.UNKNOWN, Verdict.K_SEMISTABLE, Verdict.K_POLYSTABLE, Verdict.K_STABLE)


def join_verdicts(verdicts: Iterable[Verdict | None]) -> Verdict:
    """Strongest claim supported by all of them; None entries carry no claim."""
    claims = [v for v in verdicts if v is not None]
    if Verdict.K_UNSTABLE in claims:
        if any(v not in (Verdict.K_UNSTABLE, Verdict.UNKNOWN) for v in claims):
            raise ValueError("contradictory trace: instability joined with a positive claim")
        return Verdict.K_UNSTABLE
    best = Verdict.UNKNOWN
    for v in claims:
        if _CHAIN.index(v) > _CHAIN.index(best):
            best = v
    return best


# ---------------------------------------------------------------------------
# alpha lower bounds


ALPHA_STAR = "star"
ALPHA_ALL_GE2 = "all_weights_ge2"
ALPHA_GENERIC = "generic"

COVER_ASSUMPTION = "smooth cover exists for a general member"


@dataclass(frozen=True)
class AlphaBound:
    """A lower bound for the alpha invariant, not its value."""

    value: Fraction
    case_tag: str
    assumptions: tuple[str, ...]

    def to_json(self) -> dict:
        return {"num": self.value.numerator, "den": self.value.denominator, "case": self.case_tag}


def alpha_lower_bound(ws: WeightSystem, cover_available: bool) -> AlphaBound | None:
    """Threshold bound for index-1 systems whose members carry a smooth cover.

    Returns None when cover_available is false: without the cover the bound
    is conditional and nothing is claimed.  The double-weight case d = 2a
    with weights 2 and a present gives (d-2)/d; otherwise the bound is
    (d-1)/d, upgraded to 1 when every weight is at least 2.
    """
    problems = []
    if ws.index != 1:
        problems.append(f"index {ws.index} != 1")
    if not ws.divisible:
        problems.append("some weight does not divide the degree")
    if not ws.well_formed:
        problems.append("not well-formed")
    if ws.is_linear_cone:
        problems.append("degree equals a weight (linear cone)")
    if problems:
        raise ValueError(f"alpha bound undefined for {ws.render()}: " + "; ".join(problems))
    if not cover_available:
        return None
    d = ws.degree
    assumptions = (COVER_ASSUMPTION,)
    if star_case(ws).holds:
        return AlphaBound(Fraction(d - 2, d), ALPHA_STAR, assumptions)
    if ws.weights[0] >= 2:
        return AlphaBound(Fraction(1), ALPHA_ALL_GE2, assumptions)
    return AlphaBound(Fraction(d - 1, d), ALPHA_GENERIC, assumptions)


# ---------------------------------------------------------------------------
# automorphism finiteness and the Fermat member


def aut_finite(weights: Sequence[int], multidegree: Sequence[int]) -> bool:
    """True when finiteness of the automorphism group is guaranteed.

    A complete intersection of multidegree (d_1, ..., d_c) in the weighted
    projective space with the given ascending weights has finite automorphism
    group when sum(d_j) exceeds the sum of the c+1 largest weights, or when
    the index I = sum(a_i) - sum(d_j) satisfies 0 < I < n - c.  False means
    the criterion is silent, never that the group is infinite.
    """
    ws = tuple(weights)
    degrees = tuple(multidegree)
    if not ws or any(a < 1 for a in ws):
        raise ValueError("weights must be positive")
    if any(ws[k] > ws[k + 1] for k in range(len(ws) - 1)):
        raise ValueError("weights must be ascending")
    if not degrees or any(d < 1 for d in degrees):
        raise ValueError("multidegree must be a non-empty list of positive degrees")
    if any(d in ws for d in degrees):
        raise ValueError("linear cone: a degree equals one of the weights")
    n = len(ws) - 1
    c = len(degrees)
    if c > n:
        raise ValueError(f"codimension {c} exceeds the ambient dimension {n}")
    total = sum(degrees)
    if total > sum(ws[-(c + 1):]):
        return True
    index = sum(ws) - total
    return 0 < index < n - c


@dataclass(frozen=True)
class FermatStability:
    """Verdict for the member cut out by the pure-power polynomial."""

    verdict: Verdict
    margin: int
    aut_finite: bool


def fermat_k_stability(ws: WeightSystem) -> FermatStability:
    """Decide the Fermat member by the margin n*a_0 - I.

    Positive margin gives K-polystability (K-stability once the automorphism
    group is known finite), zero gives strict K-semistability, negative gives
    K-instability.  This is the one criterion here that is two-sided.
    """
    problems = []
    if not ws.divisible:
        problems.append("some weight does not divide the degree")
    if ws.is_linear_cone:
        problems.append("degree equals a weight (linear cone)")
    if ws.index < 1:
        problems.append(f"index {ws.index} is not positive")
    if problems:
        raise ValueError(f"Fermat criterion undefined for {ws.render()}: " + "; ".join(problems))
    margin = ws.n * ws.weights[0] - ws.index
    finite = aut_finite(ws.weights, (ws.degree,))
    if margin > 0:
        verdict = Verdict.K_STABLE if finite else Verdict.K_POLYSTABLE
    elif margin == 0:
        verdict = Verdict.K_SEMISTABLE
    else:
        verdict = Verdict.K_UNSTABLE
    return FermatStability(verdict=verdict, margin=margin, aut_finite=finite)


# ---------------------------------------------------------------------------
# criterion registry


@dataclass(frozen=True)
class TraceEntry:
    """One applied criterion; conclusion and verdict recompute from inputs."""

    criterion: str
    cite: str
    inputs: dict
    conclusion: str
    verdict: Verdict | None = None


Evaluator = Callable[[dict], tuple[str, Verdict | None]]

_EVALUATORS: dict[str, Evaluator] = {}
_CITES: dict[str, str] = {}


def register_criterion(name: str, cite: str) -> Callable[[Evaluator], Evaluator]:
    def wrap(fn: Evaluator) -> Evaluator:
        _EVALUATORS[name] = fn
        _CITES[name] = cite
        return fn

    return wrap


def registered_criteria() -> tuple[str, ...]:
    return tuple(sorted(_EVALUATORS))


def make_entry(criterion: str, inputs: dict) -> TraceEntry:
    conclusion, verdict = _EVALUATORS[criterion](inputs)
    return TraceEntry(criterion, _CITES[criterion], dict(inputs), conclusion, verdict)


def recompute_entry(entry: TraceEntry) -> tuple[str, Verdict | None]:
    """Re-run the entry's criterion on its recorded inputs."""
    if entry.criterion not in _EVALUATORS:
        raise KeyError(f"unregistered criterion {entry.criterion!r}")
    return _EVALUATORS[entry.criterion](entry.inputs)


CRIT_INDEX_VS_DIM = "index_vs_dimension"
CRIT_AUT = "aut_finiteness"
CRIT_FERMAT = "fermat_margin"
CRIT_COVER = "smooth_cover"
CRIT_ALPHA = "alpha_bound"
CRIT_ALPHA_THRESHOLD = "alpha_above_threshold"
CRIT_BOUNDARY_SMOOTH = "alpha_boundary_smooth"
CRIT_BOUNDARY_PARITY = "alpha_boundary_star_parity"
CRIT_KE = "kahler_einstein"


def _ws_from(inputs: dict) -> WeightSystem:
    return WeightSystem.of(inputs["weights"], inputs["degree"])


@register_criterion(
    CRIT_INDEX_VS_DIM,
    "a general member is K-stable when the Fano index is smaller than the dimension",
)
def _eval_index_vs_dimension(inputs: dict) -> tuple[str, Verdict | None]:
    ws = _ws_from(inputs)
    if ws.index < ws.dim:
        return (
            f"Fano index {ws.index} is smaller than the dimension {ws.dim}; "
            "a general member is K-stable",
            Verdict.K_STABLE,
        )
    return (
        f"Fano index {ws.index} is not smaller than the dimension {ws.dim}; criterion silent",
        None,
    )


@register_criterion(
    CRIT_AUT,
    "the automorphism group is finite when the degree sum exceeds the sum of the "
    "largest c+1 weights, or when 0 < index < n - c",
)
def _eval_aut_finiteness(inputs: dict) -> tuple[str, Verdict | None]:
    weights = tuple(inputs["weights"])
    degrees = tuple(inputs["multidegree"])
    finite = aut_finite(weights, degrees)
    n = len(weights) - 1
    c = len(degrees)
    total = sum(degrees)
    top = sum(weights[-(c + 1):])
    index = sum(weights) - total
    if total > top:
        reason = f"degree sum {total} exceeds {top}, the sum of the {c + 1} largest weights"
    elif 0 < index < n - c:
        reason = f"index {index} lies strictly between 0 and n - c = {n - c}"
    else:
        reason = f"degree sum {total} <= {top} and index {index} is not in (0, {n - c})"
    assert finite == (total > top or 0 < index < n - c)
    if finite:
        return (f"automorphism group is finite: {reason}", None)
    return (f"finiteness of the automorphism group is not decided: {reason}", None)


@register_criterion(
    CRIT_FERMAT,
    "the Fermat member is K-polystable exactly when the Fano index is below n times "
    "the smallest weight, strictly K-semistable at equality, K-unstable beyond; "
    "K-polystable plus a finite automorphism group gives K-stable",
)
def _eval_fermat_margin(inputs: dict) -> tuple[str, Verdict | None]:
    ws = _ws_from(inputs)
    result = fermat_k_stability(ws)
    finiteness = "finite" if result.aut_finite else "not decided"
    return (
        f"margin n*a_0 - I = {ws.n}*{ws.weights[0]} - {ws.index} = {result.margin}; "
        f"automorphism group {finiteness}; the Fermat member is {result.verdict.value}",
        result.verdict,
    )


@register_criterion(
    CRIT_COVER,
    "iterated cyclic covers over the recorded coordinates produce a smooth finite "
    "cover of a quasi-smooth member",
)
def _eval_smooth_cover(inputs: dict) -> tuple[str, Verdict | None]:
    if inputs["mode"] == "universal":
        plan = plan_cover_universal(_ws_from(inputs))
        scope = "every quasi-smooth member"
    else:
        support = Support.of(inputs["weights"], inputs["degree"], inputs["monomials"])
        plan = plan_cover_for_support(support)
        scope = "the given member"
    if plan.ok:
        return (
            f"smooth cover found for {scope}: {plan.cover_count} cover step(s), "
            f"final weights {list(plan.final_weights)}",
            None,
        )
    return (
        f"no smooth cover found for {scope}: monomial {list(plan.witness.exponents)} "
        f"at position {plan.witness_index} blocks the semigroup condition over "
        f"weights {list(plan.witness_weights)}",
        None,
    )


@register_criterion(
    CRIT_ALPHA,
    "members carrying a smooth cover have alpha at least (d-2)/d in the "
    "double-weight case, (d-1)/d otherwise, and at least 1 when every weight "
    "is at least 2",
)
def _eval_alpha_bound(inputs: dict) -> tuple[str, Verdict | None]:
    bound = alpha_lower_bound(_ws_from(inputs), cover_available=inputs["cover_available"])
    if bound is None:
        return ("alpha bound unavailable without a smooth cover", None)
    return (
        f"alpha >= {bound.value} (case {bound.case_tag}; assuming: "
        + "; ".join(bound.assumptions)
        + ")",
        None,
    )


@register_criterion(
    CRIT_ALPHA_THRESHOLD,
    "a Fano variety whose alpha invariant exceeds dim/(dim+1) is K-stable",
)
def _eval_alpha_above_threshold(inputs: dict) -> tuple[str, Verdict | None]:
    ws = _ws_from(inputs)
    bound = alpha_lower_bound(ws, cover_available=True)
    threshold = Fraction(ws.dim, ws.dim + 1)
    if bound.value > threshold:
        return (
            f"alpha >= {bound.value} > dim/(dim+1) = {threshold}; the member is K-stable",
            Verdict.K_STABLE,
        )
    return (
        f"alpha bound {bound.value} does not exceed dim/(dim+1) = {threshold}; criterion silent",
        None,
    )


def _is_all_ones(ws: WeightSystem) -> bool:
    return ws.weights == (1,) * ws.num_weights and ws.degree == ws.n


def _is_boundary_star(ws: WeightSystem) -> bool:
    sc = star_case(ws)
    if not sc.holds or ws.index != 1:
        return False
    return ws.weights == (1,) * (ws.num_weights - 2) + (2, sc.a)


@register_criterion(
    CRIT_BOUNDARY_SMOOTH,
    "a smooth Fano variety with alpha invariant equal to dim/(dim+1) is K-stable",
)
def _eval_alpha_boundary_smooth(inputs: dict) -> tuple[str, Verdict | None]:
    ws = _ws_from(inputs)
    if not _is_all_ones(ws):
        return ("not the all-ones boundary shape; criterion silent", None)
    threshold = Fraction(ws.dim, ws.dim + 1)
    return (
        f"all weights equal 1 and the degree is {ws.degree}, so the member is a smooth "
        f"Fano hypersurface with alpha >= dim/(dim+1) = {threshold}; equality suffices "
        "for smooth varieties; K-stable",
        Verdict.K_STABLE,
    )


@register_criterion(
    CRIT_BOUNDARY_PARITY,
    "boundary shape (1,...,1,2,a : 2a): for odd a the member is smooth, for even a "
    "it has only half-point quotient singularities, which are not weakly "
    "exceptional; K-stable either way",
)
def _eval_alpha_boundary_star_parity(inputs: dict) -> tuple[str, Verdict | None]:
    ws = _ws_from(inputs)
    if not _is_boundary_star(ws):
        return ("not the double-weight boundary shape with all other weights 1; criterion silent", None)
    a = star_case(ws).a
    threshold = Fraction(ws.dim, ws.dim + 1)
    if a % 2 == 1:
        return (
            f"boundary case alpha = {threshold} with a = {a} odd: the member is smooth "
            "and equality suffices for smooth varieties; K-stable",
            Verdict.K_STABLE,
        )
    return (
        f"boundary case alpha = {threshold} with a = {a} even: the member has only "
        "half-point quotient singularities, which are not weakly exceptional "
        "(cited singularity classification, not recomputed here); K-stable",
        Verdict.K_STABLE,
    )


@register_criterion(
    CRIT_KE,
    "a K-stable Fano variety admits a Kahler-Einstein metric",
)
def _eval_kahler_einstein(inputs: dict) -> tuple[str, Verdict | None]:
    return ("the member admits a Kahler-Einstein metric", None)


# ---------------------------------------------------------------------------
# the combined pipeline


@dataclass(frozen=True)
class StabilityReport:
    system: WeightSystem
    member_class: str
    verdict: Verdict
    alpha: AlphaBound | None
    aut_finite: bool | None
    trace: tuple[TraceEntry, ...]


def classify(
    ws: WeightSystem,
    member_class: str = MEMBER_ANY,
    support: Support | None = None,
) -> StabilityReport:
    """Run every applicable criterion in a fixed order and join the claims.

    Order: the index-versus-dimension test for general members, the Fermat
    margin test for Fermat members, then (at index 1, for well-formed
    systems) the smooth-cover planners followed by the alpha threshold and
    its two boundary shapes.  A failed planner leaves its witness in the
    trace; with no applicable criterion the verdict is unknown.
    """
    if member_class not in MEMBER_CLASSES:
        raise ValueError(f"unknown member class {member_class!r}")
    problems = []
    if ws.index < 1:
        problems.append(f"index {ws.index} is not positive (not Fano)")
    if not ws.divisible:
        problems.append("some weight does not divide the degree")
    if ws.is_linear_cone:
        problems.append("degree equals a weight (linear cone)")
    if problems:
        raise ValueError(f"cannot classify {ws.render()}: " + "; ".join(problems))
    if support is not None:
        if tuple(sorted(support.weights)) != ws.weights or support.degree != ws.degree:
            raise ValueError("support ambient does not match the weight system")

    base = {"weights": list(ws.weights), "degree": ws.degree}
    entries: list[TraceEntry] = []
    alpha: AlphaBound | None = None
    finite: bool | None = None

    if member_class == MEMBER_GENERAL:
        entries.append(make_entry(CRIT_INDEX_VS_DIM, dict(base)))

    if member_class == MEMBER_FERMAT:
        entries.append(
            make_entry(CRIT_AUT, {"weights": list(ws.weights), "multidegree": [ws.degree]})
        )
        finite = aut_finite(ws.weights, (ws.degree,))
        entries.append(make_entry(CRIT_FERMAT, dict(base)))

    if ws.index == 1 and ws.well_formed:
        covered = plan_cover_universal(ws).ok
        entries.append(make_entry(CRIT_COVER, dict(base, mode="universal")))
        if not covered and support is not None:
            covered = plan_cover_for_support(support).ok
            entries.append(
                make_entry(
                    CRIT_COVER,
                    {
                        "weights": list(support.weights),
                        "degree": support.degree,
                        "mode": "support",
                        "monomials": [list(m.exponents) for m in support.monomials],
                    },
                )
            )
        entries.append(make_entry(CRIT_ALPHA, dict(base, cover_available=covered)))
        if covered:
            alpha = alpha_lower_bound(ws, cover_available=True)
            threshold = Fraction(ws.dim, ws.dim + 1)
            if alpha.value > threshold:
                entries.append(make_entry(CRIT_ALPHA_THRESHOLD, dict(base)))
            elif _is_all_ones(ws):
                entries.append(make_entry(CRIT_BOUNDARY_SMOOTH, dict(base)))
            elif _is_boundary_star(ws):
                entries.append(make_entry(CRIT_BOUNDARY_PARITY, dict(base)))
            else:
                # the threshold bound meets dim/(dim+1) only on the two shapes above
                raise AssertionError(f"alpha bound below dim/(dim+1) for {ws.render()}")

    verdict = join_verdicts(entry.verdict for entry in entries)
    if verdict is Verdict.K_STABLE:
        entries.append(make_entry(CRIT_KE, {}))
    return StabilityReport(
        system=ws,
        member_class=member_class,
        verdict=verdict,
        alpha=alpha,
        aut_finite=finite,
        trace=tuple(entries),
    )


def report_to_json(report: StabilityReport) -> dict:
    return {
        "system": {"weights": list(report.system.weights), "degree": report.system.degree},
        "member_class": report.member_class,
        "verdict": report.verdict.value,
        "alpha": report.alpha.to_json() if report.alpha is not None else None,
        "aut_finite": report.aut_finite,
        "trace": [
            {"criterion": e.criterion, "cite": e.cite, "conclusion": e.conclusion}
            for e in report.trace
        ],
    }


@dataclass(frozen=True)
class BatchSummary:
    """Deterministic tally over a catalog, in canonical system order."""

    total: int
    counts: dict
    unknown: tuple[StabilityReport, ...]


def batch_classify(catalog: EnumerationResult) -> BatchSummary:
    """Classify every catalog system as a quasi-smooth member, tally verdicts."""
    order = (
        Verdict.K_STABLE,
        Verdict.K_POLYSTABLE,
        Verdict.K_SEMISTABLE,
        Verdict.K_UNSTABLE,
        Verdict.UNKNOWN,
    )
    counts = {v.value: 0 for v in order}
    unknown: list[StabilityReport] = []
    for ws in catalog.systems:
        report = classify(ws, MEMBER_ANY)
        counts[report.verdict.value] += 1
        if report.verdict is Verdict.UNKNOWN:
            unknown.append(report)
    return BatchSummary(total=len(catalog.systems), counts=counts, unknown=tuple(unknown))


def summary_to_json(summary: BatchSummary) -> dict:
    return {
        "total": summary.total,
        "counts": dict(summary.counts),
        "unknown": [report_to_json(r) for r in summary.unknown],
    }

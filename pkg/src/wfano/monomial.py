"""Monomial supports, the star condition, and the smooth-cover planner.

A Support records the monomials of a weighted hypersurface member with
generic coefficients.  Unlike WeightSystem, a support keeps the variable
order of its source (constructor argument or fixture file): violation
witnesses are reported in the coordinates of the polynomial they came from.

The star condition: every monomial with exponent 1 at a position of weight
a_i > 1 must have a_i representable as a non-negative integer combination of
the weights of the other variables it involves.  It is the arithmetic gate for
replacing a weighted variable by its cyclic cover z_i -> z_i^{a_i} without
losing quasi-smoothness, after a generic coordinate change removes the
offending linear monomial.

Planners are sufficient-condition checkers: a failed plan means the iterated
cover procedure found no route, never that no smooth cover exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .core import WeightSystem, semigroup_decomposition, semigroup_representable

NOTE_COVER = "cyclic cover z_i -> z_i**a_i; ambient weight a_i becomes 1"
NOTE_SUBSTITUTE = "generic coordinate change z_i -> z_i + lambda*M removing a linear monomial"


class SupportError(ValueError):
    """Support file or constructor input is malformed."""


@dataclass(frozen=True)
class Monomial:
    """Exponent vector k_0..k_n against an ambient weight list."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.exponents:
            raise ValueError("monomial needs at least one exponent")
        if any(not isinstance(k, int) or k < 0 for k in self.exponents):
            raise ValueError(f"exponents must be non-negative integers, got {self.exponents!r}")

    def degree(self, weights: tuple[int, ...]) -> int:
        if len(weights) != len(self.exponents):
            raise ValueError(
                f"monomial has {len(self.exponents)} exponents, ambient has {len(weights)} weights"
            )
        return sum(k * a for k, a in zip(self.exponents, weights))

    def __repr__(self) -> str:
        return f"Monomial{self.exponents!r}"


@dataclass(frozen=True)
class Support:
    """Duplicate-free monomials of a fixed weighted degree, in source coordinates."""

    weights: tuple[int, ...]
    degree: int
    monomials: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        if not self.weights or any(not isinstance(a, int) or a <= 0 for a in self.weights):
            raise SupportError(f"weights must be positive integers, got {self.weights!r}")
        if not isinstance(self.degree, int) or self.degree <= 0:
            raise SupportError(f"degree must be a positive integer, got {self.degree!r}")
        if not self.monomials:
            raise SupportError("support must contain at least one monomial")
        # canonical order: descending lexicographic, duplicates collapsed
        unique = sorted({m.exponents for m in self.monomials}, reverse=True)
        for exps in unique:
            mono = Monomial(exps)
            if mono.degree(self.weights) != self.degree:
                raise SupportError(
                    f"monomial {exps} has weighted degree {mono.degree(self.weights)}, "
                    f"expected {self.degree}"
                )
        object.__setattr__(self, "monomials", tuple(Monomial(e) for e in unique))

    @classmethod
    def of(cls, weights: Iterable[int], degree: int, exponent_rows: Iterable[Iterable[int]]) -> "Support":
        return cls(
            tuple(weights),
            degree,
            tuple(Monomial(tuple(row)) for row in exponent_rows),
        )

    @property
    def system(self) -> WeightSystem:
        """Canonical ascending weight system of the ambient."""
        return WeightSystem.of(self.weights, self.degree)


def load_support(path: str | Path) -> Support:
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SupportError(f"support parse error: {exc}") from exc
    try:
        return Support.of(payload["weights"], payload["degree"], payload["monomials"])
    except (KeyError, TypeError) as exc:
        raise SupportError(f"support schema error: {exc}") from exc


def save_support(support: Support, path: str | Path) -> None:
    payload = {
        "weights": list(support.weights),
        "degree": support.degree,
        "monomials": [list(m.exponents) for m in support.monomials],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def fermat_support(ws: WeightSystem) -> Support:
    """The support {z_i**(d/a_i)}; needs divisibility and no linear cone."""
    quotients = ws.quotients
    if any(b < 2 for b in quotients):
        raise ValueError(f"{ws.render()} is a linear cone; no Fermat member")
    rows = []
    for i, b in enumerate(quotients):
        exps = [0] * ws.num_weights
        exps[i] = b
        rows.append(exps)
    return Support.of(ws.weights, ws.degree, rows)


@dataclass(frozen=True)
class StarCheck:
    """Outcome of a star-condition check; monomial/index are the first violation."""

    ok: bool
    monomial: Monomial | None = None
    index: int | None = None


def _star_violation_indices(support: Support, mono: Monomial) -> Iterable[int]:
    for i, k in enumerate(mono.exponents):
        if k != 1 or support.weights[i] <= 1:
            continue
        gens = {support.weights[j] for j, kj in enumerate(mono.exponents) if j != i and kj > 0}
        if not semigroup_representable(support.weights[i], gens):
            yield i


def star_condition(support: Support) -> StarCheck:
    """Check every monomial; first violation in canonical order (monomial, then index)."""
    for mono in support.monomials:
        for i in _star_violation_indices(support, mono):
            return StarCheck(False, mono, i)
    return StarCheck(True)


def star_condition_at(support: Support, i: int) -> StarCheck:
    """The per-index restriction; requires weight a_i > 1."""
    if support.weights[i] <= 1:
        raise ValueError(f"star condition at index {i} needs weight > 1, got {support.weights[i]}")
    for mono in support.monomials:
        if mono.exponents[i] != 1:
            continue
        if i in set(_star_violation_indices(support, mono)):
            return StarCheck(False, mono, i)
    return StarCheck(True, index=i)


@dataclass(frozen=True)
class UniversalStarCheck:
    """Star condition quantified over every possible degree-d monomial."""

    ok: bool
    witness: Monomial | None = None


def universal_star_at(ws: WeightSystem, i: int) -> UniversalStarCheck:
    """Would every conceivable member satisfy the star condition at position i?

    Fails iff some set of other variables S has a_i outside the semigroup of
    its weights while d - a_i - sum(S) lies inside: then the monomial
    z_i * prod_{j in S} z_j^(1+m_j) has degree d, exponent 1 at i, and
    witnesses the violation.  Subsets are searched over distinct weight values
    (equivalent to position subsets: extra positions of a value fold into the
    coefficients), sized ascending, values lexicographic; witness positions are
    the lowest position per value and the coefficient vector is
    lexicographically smallest.
    """
    weights = ws.weights
    a_i = weights[i]
    if a_i <= 1:
        raise ValueError(f"universal star check at index {i} needs weight > 1, got {a_i}")
    d = ws.degree
    lowest_position: dict[int, int] = {}
    for j, a in enumerate(weights):
        if j != i and a not in lowest_position:
            lowest_position[a] = j
    values = sorted(lowest_position)
    for size in range(len(values) + 1):
        for combo in combinations(values, size):
            if semigroup_representable(a_i, combo):
                continue
            remainder = d - a_i - sum(combo)
            if remainder < 0 or not semigroup_representable(remainder, combo):
                continue
            coeffs = semigroup_decomposition(remainder, combo)
            assert coeffs is not None
            exps = [0] * len(weights)
            exps[i] = 1
            for value, m in zip(combo, coeffs):
                exps[lowest_position[value]] = 1 + m
            return UniversalStarCheck(False, Monomial(tuple(exps)))
    return UniversalStarCheck(True)


def apply_cover(support: Support, i: int) -> tuple[Support, tuple[int, ...]]:
    """Replace z_i by its cyclic cover: weight a_i -> 1, exponent k_i -> k_i * a_i.

    The new ambient is re-sorted canonically; the returned permutation maps
    new positions to old ones (perm[new] = old), stable on ties.
    """
    a_i = support.weights[i]
    if a_i <= 1:
        raise ValueError(f"cover at index {i} needs weight > 1, got {a_i}")
    raw_weights = list(support.weights)
    raw_weights[i] = 1
    perm = tuple(sorted(range(len(raw_weights)), key=lambda j: (raw_weights[j], j)))
    new_weights = tuple(raw_weights[p] for p in perm)
    rows = []
    for mono in support.monomials:
        raw = list(mono.exponents)
        raw[i] *= a_i
        rows.append(tuple(raw[p] for p in perm))
    covered = Support.of(new_weights, support.degree, rows)
    return covered, perm


def substitute(support: Support, i: int, replacement: Monomial) -> Support:
    """Generic-coefficient closure of z_i -> z_i + lambda * M.

    M must avoid z_i and have weighted degree a_i.  Every monomial with
    k_i = t > 0 contributes the expansions z_i^(t-r) * M^r for r = 0..t; the
    result is the union with the original support (no cancellation is assumed).
    """
    if len(replacement.exponents) != len(support.weights):
        raise ValueError("replacement monomial does not match the ambient variable count")
    if replacement.exponents[i] != 0:
        raise ValueError(f"replacement monomial must not involve variable {i}")
    a_i = support.weights[i]
    if replacement.degree(support.weights) != a_i:
        raise ValueError(
            f"replacement monomial has degree {replacement.degree(support.weights)}, "
            f"expected the weight {a_i} of variable {i}"
        )
    rows = [mono.exponents for mono in support.monomials]
    for mono in support.monomials:
        t = mono.exponents[i]
        for r in range(1, t + 1):
            exps = list(mono.exponents)
            exps[i] = t - r
            for j, m in enumerate(replacement.exponents):
                exps[j] += r * m
            rows.append(tuple(exps))
    return Support.of(support.weights, support.degree, rows)


@dataclass(frozen=True)
class CoverStep:
    """One planner action: a cyclic cover (with its re-sort permutation) or a substitution."""

    kind: str  # "cover" | "substitute"
    index: int
    note: str
    monomial: Monomial | None = None
    permutation: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CoverPlan:
    """Ordered steps; on failure the witness is reported in witness_weights coordinates."""

    steps: tuple[CoverStep, ...]
    ok: bool
    witness: Monomial | None = None
    witness_index: int | None = None
    witness_weights: tuple[int, ...] | None = None
    final_weights: tuple[int, ...] | None = None

    @property
    def cover_count(self) -> int:
        return sum(1 for step in self.steps if step.kind == "cover")


def plan_cover_for_support(support: Support) -> CoverPlan:
    """Iterated cover construction for one explicit member.

    Repeatedly covers the smallest weight above 1 (lowest position on ties),
    preceded by a substitution when a monomial is linear in that variable; the
    star condition is re-verified after every transform, never assumed.
    """
    current = support
    check = star_condition(current)
    if not check.ok:
        return CoverPlan(
            steps=(),
            ok=False,
            witness=check.monomial,
            witness_index=check.index,
            witness_weights=current.weights,
        )
    steps: list[CoverStep] = []
    while any(a > 1 for a in current.weights):
        i = min(
            (j for j, a in enumerate(current.weights) if a > 1),
            key=lambda j: (current.weights[j], j),
        )
        linear = [mono for mono in current.monomials if mono.exponents[i] == 1]
        if linear:
            mono = linear[0]  # first in canonical descending order
            positions = [j for j, k in enumerate(mono.exponents) if j != i and k > 0]
            gens = tuple(current.weights[j] for j in positions)
            coeffs = semigroup_decomposition(current.weights[i], gens)
            assert coeffs is not None  # star condition was just verified
            exps = [0] * len(current.weights)
            for j, m in zip(positions, coeffs):
                exps[j] += m
            replacement = Monomial(tuple(exps))
            steps.append(
                CoverStep(kind="substitute", index=i, note=NOTE_SUBSTITUTE, monomial=replacement)
            )
            current = substitute(current, i, replacement)
            check = star_condition(current)
            if not check.ok:
                return CoverPlan(
                    steps=tuple(steps),
                    ok=False,
                    witness=check.monomial,
                    witness_index=check.index,
                    witness_weights=current.weights,
                )
        current, perm = apply_cover(current, i)
        steps.append(CoverStep(kind="cover", index=i, note=NOTE_COVER, permutation=perm))
        check = star_condition(current)
        if not check.ok:
            return CoverPlan(
                steps=tuple(steps),
                ok=False,
                witness=check.monomial,
                witness_index=check.index,
                witness_weights=current.weights,
            )
    return CoverPlan(steps=tuple(steps), ok=True, final_weights=current.weights)


def plan_cover_universal(ws: WeightSystem) -> CoverPlan:
    """Iterated cover construction valid for every quasi-smooth member.

    Covers any position whose universal star check passes, preferring the
    smallest weight and lowest index; fails with the witness of the first
    examined blocked position when none passes.  Failure means this procedure
    found no route, not that no smooth cover exists.
    """
    current = ws
    steps: list[CoverStep] = []
    while any(a > 1 for a in current.weights):
        first_blocked: tuple[int, UniversalStarCheck] | None = None
        chosen: int | None = None
        for i, a in enumerate(current.weights):
            if a <= 1:
                continue
            result = universal_star_at(current, i)
            if result.ok:
                chosen = i
                break
            if first_blocked is None:
                first_blocked = (i, result)
        if chosen is None:
            assert first_blocked is not None
            blocked_index, blocked = first_blocked
            return CoverPlan(
                steps=tuple(steps),
                ok=False,
                witness=blocked.witness,
                witness_index=blocked_index,
                witness_weights=current.weights,
            )
        raw = list(current.weights)
        raw[chosen] = 1
        perm = tuple(sorted(range(len(raw)), key=lambda j: (raw[j], j)))
        steps.append(CoverStep(kind="cover", index=chosen, note=NOTE_COVER, permutation=perm))
        current = WeightSystem(tuple(raw[p] for p in perm), current.degree)
    return CoverPlan(steps=tuple(steps), ok=True, final_weights=current.weights)


class CoordinatePointError(ValueError):
    """No monomial allows moving a coordinate point off the hypersurface."""

    def __init__(self, index: int, reason: str) -> None:
        super().__init__(f"variable {index}: {reason}")
        self.index = index


def move_coordinate_points(support: Support) -> Support:
    """Arrange, by generic substitutions, that every variable has its pure power.

    For each i lacking z_i^(d/a_i), a monomial z_j * z_i^c (with a_i | a_j so
    the change z_j -> z_j + lambda * z_i^(a_j/a_i) is polynomial) produces the
    missing pure power after substitution.  Raises CoordinatePointError naming
    the first variable for which no such monomial exists.
    """
    current = support
    d = support.degree
    for i, a_i in enumerate(support.weights):
        if d % a_i != 0:
            raise CoordinatePointError(i, f"weight {a_i} does not divide the degree {d}")
        pure = tuple(d // a_i if j == i else 0 for j in range(len(support.weights)))
        if any(mono.exponents == pure for mono in current.monomials):
            continue
        candidates = []
        for mono in current.monomials:
            others = [(j, k) for j, k in enumerate(mono.exponents) if j != i and k > 0]
            if len(others) == 1 and others[0][1] == 1 and mono.exponents[i] > 0:
                j = others[0][0]
                if current.weights[j] % a_i == 0:
                    candidates.append(j)
        if not candidates:
            raise CoordinatePointError(
                i, "no monomial z_j * z_i^c with a_i | a_j; cannot create the pure power"
            )
        j = min(candidates)
        exps = tuple(
            current.weights[j] // a_i if t == i else 0 for t in range(len(support.weights))
        )
        current = substitute(current, j, Monomial(exps))
        assert any(mono.exponents == pure for mono in current.monomials)
    return current

"""Complete enumeration of weight systems with divisible weights.

A system (a_0,...,a_n : d) with Fano index I satisfies d = sum(a_i) - I and
a_i | d for every i.  For index 1 the quotients b_i = d/a_i obey the unit
fraction identity sum(1/b_i) = 1 + 1/d with every b_i >= 2, and two facts make
the search finite and provably complete:

* d = lcm(b_0,...,b_n).  Each b_i divides d (b_i * a_i = d), so lcm | d;
  multiplying the identity by the lcm shows d | lcm.
* Fixing an ascending prefix b_0 <= ... <= b_{n-1} with L = lcm(prefix) and
  integer partial sum sigma = sum(L/b_i), the last value c satisfies
  c = t*L/u where u = t*w + 1, w = L - sigma, and u divides L with
  u = 1 (mod w).  (From t := d/L one gets t*L/c = t*w + 1 =: u; u is coprime
  to t and divides t*L, hence divides L.)  Scanning the divisors of L
  therefore finds every completion, and each scanned candidate satisfies the
  identity exactly with d = t*L.

When the prefix sums to exactly 1 (w = 0) the completion is c = k*lcm(prefix)
for any k >= 1; well-formedness forces k = 1 (every other weight becomes
divisible by k), which keeps the default search finite.

Intermediate values are bounded by b < m/(1 - s) where m counts the remaining
slots: all later values are at least b, so the total could not otherwise
exceed 1.  Partial sums s >= 1 with two or more slots remaining are
impossible (the excess over 1 must equal 1/lcm, but each remaining term is at
least 1/lcm already).

For index > 1 the identity couples the unknowns less tractably; the search is
a bounded divisor-multiset scan per degree and requires an explicit d_max.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import lcm
from pathlib import Path

from .core import WeightSystem, validate

CATALOG_VERSION = 1


class CatalogError(ValueError):
    """Catalog file is unreadable: parse error, bad schema, or bad version."""


class CatalogMismatch(CatalogError):
    """Catalog file is valid but was produced by a different query (cache miss)."""


@dataclass(frozen=True)
class EnumerationQuery:
    """Search parameters: n+1 weights, Fano index, optional degree bound, filters."""

    num_weights: int
    index: int
    d_max: int | None = None
    require_well_formed: bool = True
    exclude_linear_cone: bool = True

    def __post_init__(self) -> None:
        if self.num_weights < 3:
            raise ValueError(f"num_weights must be at least 3, got {self.num_weights}")
        if self.index < 1:
            raise ValueError(f"index must be a positive integer, got {self.index}")
        if self.d_max is not None and self.d_max < 1:
            raise ValueError(f"d_max must be positive when given, got {self.d_max}")


@dataclass(frozen=True)
class EnumerationResult:
    """Canonically ordered systems; complete=False when truncated by d_max."""

    query: EnumerationQuery
    systems: tuple[WeightSystem, ...]
    complete: bool


@lru_cache(maxsize=None)
def _factorize(value: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division; values stay small (<= ~10^4)."""
    factors: list[tuple[int, int]] = []
    v = value
    p = 2
    while p * p <= v:
        if v % p == 0:
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if v > 1:
        factors.append((v, 1))
    return tuple(factors)


def _divisors(factors: dict[int, int]) -> list[int]:
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def _index_one_systems(
    num_weights: int,
    require_well_formed: bool,
    d_max: int | None,
) -> list[WeightSystem]:
    """All index-1 systems via the ascending quotient recursion (see module docstring)."""
    found: list[WeightSystem] = []

    def emit(quotients: list[int], d: int) -> None:
        if d_max is not None and d > d_max:
            return
        # exact identity guard for the algebra above
        assert sum(Fraction(1, b) for b in quotients) == 1 + Fraction(1, d)
        ws = WeightSystem.of((d // b for b in quotients), d)
        assert ws.index == 1 and ws.divisible and not ws.is_linear_cone
        if require_well_formed and not ws.well_formed:
            return
        found.append(ws)

    def last_slot(chosen: list[int], big_l: int, sigma: int, factors: dict[int, int]) -> None:
        prev = chosen[-1]
        if sigma == big_l:
            # partial sum is exactly 1: c = k * lcm(prefix)
            if require_well_formed:
                ks = [1]
            elif d_max is not None:
                ks = list(range(1, d_max // big_l + 1))
            else:
                raise ValueError(
                    "index-1 search without well-formedness is infinite; give d_max"
                )
            for k in ks:
                c = k * big_l
                if c >= max(prev, 2):
                    emit(chosen + [c], c)
            return
        if sigma > big_l:
            return
        w = big_l - sigma
        for u in _divisors(factors):
            if u == 1 or (u - 1) % w != 0:
                continue
            t = (u - 1) // w
            c = t * big_l // u
            if c < max(prev, 2):
                continue
            assert lcm(big_l, c) == t * big_l
            emit(chosen + [c], t * big_l)

    def extend(
        chosen: list[int],
        slots: int,
        big_l: int,
        sigma: int,
        factors: dict[int, int],
    ) -> None:
        if slots == 1:
            last_slot(chosen, big_l, sigma, factors)
            return
        if sigma >= big_l:
            return  # partial sum >= 1 with two or more slots left is impossible
        lo = max(2, chosen[-1] if chosen else 2)
        hi = (slots * big_l - 1) // (big_l - sigma)
        for b in range(lo, hi + 1):
            new_factors = dict(factors)
            for p, e in _factorize(b):
                if new_factors.get(p, 0) < e:
                    new_factors[p] = e
            new_l = 1
            for p, e in new_factors.items():
                new_l *= p**e
            scale = new_l // big_l
            extend(chosen + [b], slots - 1, new_l, sigma * scale + new_l // b, new_factors)

    extend([], num_weights, 1, 0, {})
    return found


def _bounded_index_systems(query: EnumerationQuery) -> list[WeightSystem]:
    """Divisor-multiset scan per degree for index > 1 (d_max mandatory)."""
    assert query.d_max is not None
    found: list[WeightSystem] = []
    for d in range(1, query.d_max + 1):
        factors = dict(_factorize(d)) if d > 1 else {}
        divs = sorted(_divisors(factors))
        if query.exclude_linear_cone:
            divs = [a for a in divs if a < d]
        target = d + query.index
        slots = query.num_weights

        def pick(start: int, left: int, remaining: int, acc: list[int]) -> None:
            if left == 0:
                if remaining == 0:
                    ws = WeightSystem(tuple(acc), d)
                    if query.require_well_formed and not ws.well_formed:
                        return
                    if query.exclude_linear_cone and ws.is_linear_cone:
                        return
                    found.append(ws)
                return
            for idx in range(start, len(divs)):
                a = divs[idx]
                if a * left > remaining:
                    break  # ascending: every later pick is at least a
                if remaining - a > divs[-1] * (left - 1):
                    continue
                pick(idx, left - 1, remaining - a, acc + [a])

        if divs:
            pick(0, slots, target, [])
    return found


def enumerate_systems(query: EnumerationQuery) -> EnumerationResult:
    """All well-formed, non-cone systems with sum(a_i) - d = index and a_i | d."""
    if query.index == 1:
        systems = _index_one_systems(query.num_weights, query.require_well_formed, query.d_max)
    else:
        if query.d_max is None:
            raise ValueError(
                "enumeration with index > 1 is unbounded; an explicit d_max is required"
            )
        systems = _bounded_index_systems(query)
    unique = sorted(set(systems))
    for ws in unique:
        report = validate(ws, query.index)
        assert report.index_matches and report.divisibility
    return EnumerationResult(
        query=query,
        systems=tuple(unique),
        complete=query.index == 1 and query.d_max is None,
    )


def enumerate_bruteforce(num_weights: int, index: int, a_max: int) -> EnumerationResult:
    """Exhaustive oracle: scan every ascending weight tuple with a_i <= a_max.

    Cost is roughly a_max^num_weights / num_weights!; intended for validating
    enumerate_systems on its restriction to max weight <= a_max.
    """
    if a_max < 1:
        raise ValueError(f"a_max must be positive, got {a_max}")
    query = EnumerationQuery(num_weights=num_weights, index=index)
    found: list[WeightSystem] = []
    for weights in combinations_with_replacement(range(1, a_max + 1), num_weights):
        d = sum(weights) - index
        if d <= 0:
            continue
        # check divisibility from the largest weight down: fails earliest
        if any(d % a != 0 for a in reversed(weights)):
            continue
        ws = WeightSystem(weights, d)
        if ws.is_linear_cone or not ws.well_formed:
            continue
        found.append(ws)
    return EnumerationResult(query=query, systems=tuple(sorted(set(found))), complete=False)


def render_table(result: EnumerationResult, format: str = "md") -> str:
    """Render systems as markdown, TSV, or a JSON array; deterministic output."""
    if format == "md":
        lines = ["weights | degree", "--- | ---"]
        lines += [f"{' '.join(str(a) for a in ws.weights)} | {ws.degree}" for ws in result.systems]
        return "\n".join(lines)
    if format == "tsv":
        lines = ["weights\tdegree"]
        lines += [f"{' '.join(str(a) for a in ws.weights)}\t{ws.degree}" for ws in result.systems]
        return "\n".join(lines)
    if format == "json":
        payload = [{"weights": list(ws.weights), "degree": ws.degree} for ws in result.systems]
        return json.dumps(payload, indent=2)
    raise ValueError(f"unknown format {format!r}; expected md, tsv, or json")


def _query_to_json(query: EnumerationQuery) -> dict:
    return {
        "num_weights": query.num_weights,
        "index": query.index,
        "d_max": query.d_max,
        "require_well_formed": query.require_well_formed,
        "exclude_linear_cone": query.exclude_linear_cone,
    }


def save_catalog(result: EnumerationResult, path: str | Path) -> None:
    """Write the versioned catalog envelope; load_catalog inverts it exactly."""
    payload = {
        "version": CATALOG_VERSION,
        "query": _query_to_json(result.query),
        "complete": result.complete,
        "systems": [{"weights": list(ws.weights), "degree": ws.degree} for ws in result.systems],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_catalog(path: str | Path, query: EnumerationQuery | None = None) -> EnumerationResult:
    """Read a catalog file back; optional query echo check signals cache misses."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:  # message carries line/column/position
        raise CatalogError(f"catalog parse error: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("version") != CATALOG_VERSION:
        raise CatalogError(
            f"catalog version mismatch: expected {CATALOG_VERSION}, "
            f"got {payload.get('version') if isinstance(payload, dict) else type(payload).__name__!r}"
        )
    try:
        stored_query = EnumerationQuery(**payload["query"])
        systems = tuple(
            WeightSystem(tuple(entry["weights"]), entry["degree"]) for entry in payload["systems"]
        )
        complete = bool(payload["complete"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"catalog schema error: {exc}") from exc
    if list(systems) != sorted(set(systems)):
        raise CatalogError("catalog systems are not in canonical sorted order")
    if query is not None and stored_query != query:
        raise CatalogMismatch(
            f"catalog was built for {stored_query}, requested {query}"
        )
    return EnumerationResult(query=stored_query, systems=systems, complete=complete)

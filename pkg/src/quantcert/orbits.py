"""Orbit counts of essential simple closed curves and the degree-2 bounds.

On a hyperbolic surface of genus g with n punctures, curve orbits under the
mapping class group are determined by the homeomorphism type of the
complement: one nonseparating type when g >= 1, plus one type per unordered
pair of separating sides.  A side is a (genus, punctures) pair and must be
neither a disk (0, 0) nor a once-punctured disk (0, 1).

With labeled punctures (the pure group) the sides carry puncture subsets;
without labels (the full group) only the cardinalities matter.  The
unlabeled count N_{g,n} is the normal-generator count of the power
subgroup, the rank of the invariant homomorphism module, and the lower
bound in the degree-2 cohomology estimate lower <= dim H^2 <= n + 1 +
N_{g,n} (the upper bound valid for g >= 4).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NonHyperbolic

NONSEPARATING = "nonseparating"
SEPARATING = "separating"

_FORBIDDEN_SIDES = {(0, 0), (0, 1)}


@dataclass(frozen=True)
class Side:
    genus: int
    punctures: frozenset[int] | None  # None when only the count is tracked
    puncture_count: int

    def sort_key(self):
        labels = tuple(sorted(self.punctures)) if self.punctures is not None else ()
        return (self.genus, self.puncture_count, labels)


@dataclass(frozen=True)
class CurveType:
    kind: str
    sides: tuple[Side, Side] | None = None

    def sort_key(self):
        if self.kind == NONSEPARATING:
            return (0,)
        lo, hi = self.sides
        return (1, min(lo.genus, hi.genus), lo.sort_key(), hi.sort_key())


def _check_hyperbolic(g: int, n: int) -> None:
    if g < 0 or n < 0:
        raise ValueError(f"genus and puncture count must be nonnegative: ({g}, {n})")
    if 2 - 2 * g - n >= 0:
        raise NonHyperbolic(f"(g, n) = ({g}, {n}) has non-negative Euler characteristic")


def _side_ok(genus: int, count: int) -> bool:
    return (genus, count) not in _FORBIDDEN_SIDES


def _ordered_pair(a: Side, b: Side) -> tuple[Side, Side]:
    return (a, b) if a.sort_key() <= b.sort_key() else (b, a)


def _separating_types(g: int, n: int, labeled: bool) -> set[tuple[Side, Side]]:
    types: set[tuple[Side, Side]] = set()
    if labeled:
        for g1 in range(g + 1):
            for r in range(n + 1):
                for subset in itertools.combinations(range(n), r):
                    a_set = frozenset(subset)
                    b_set = frozenset(range(n)) - a_set
                    if not _side_ok(g1, len(a_set)) or not _side_ok(g - g1, len(b_set)):
                        continue
                    side_a = Side(g1, a_set, len(a_set))
                    side_b = Side(g - g1, b_set, len(b_set))
                    types.add(_ordered_pair(side_a, side_b))
    else:
        for g1 in range(g + 1):
            for n1 in range(n + 1):
                if not _side_ok(g1, n1) or not _side_ok(g - g1, n - n1):
                    continue
                side_a = Side(g1, None, n1)
                side_b = Side(g - g1, None, n - n1)
                types.add(_ordered_pair(side_a, side_b))
    return types


def count_orbits(g: int, n: int, labeled: bool = False) -> int:
    """Number of curve orbits on the (g, n) surface.

    One nonseparating orbit when g >= 1, plus the separating types; for
    closed surfaces this is floor(g/2) + 1, and g for a single puncture.
    """
    _check_hyperbolic(g, n)
    return (1 if g >= 1 else 0) + len(_separating_types(g, n, labeled))


def enumerate_orbits(g: int, n: int, labeled: bool = False) -> tuple[CurveType, ...]:
    """Deterministic orbit list: the nonseparating type first, then the
    separating types ordered by (smaller side genus, side data)."""
    _check_hyperbolic(g, n)
    out: list[CurveType] = []
    if g >= 1:
        out.append(CurveType(kind=NONSEPARATING))
    seps = [CurveType(kind=SEPARATING, sides=pair) for pair in _separating_types(g, n, labeled)]
    out.extend(sorted(seps, key=CurveType.sort_key))
    return tuple(out)


@dataclass(frozen=True)
class H2Bounds:
    g: int
    n: int
    lower_rank: int
    upper_bound: int
    upper_bound_valid: bool  # the upper estimate is established for g >= 4


def h2_bounds(g: int, n: int) -> H2Bounds:
    """Rank bounds lower <= dim H^2 <= n + 1 + N_{g,n} from the orbit count.

    The lower rank is the unlabeled orbit count; lower_rank >= 1 (any g >= 1)
    certifies non-vanishing for sufficiently divisible twist powers.  The
    upper bound is flagged valid only for g >= 4.
    """
    lower = count_orbits(g, n, labeled=False)
    return H2Bounds(
        g=g,
        n=n,
        lower_rank=lower,
        upper_bound=n + 1 + lower,
        upper_bound_valid=g >= 4,
    )


def curve_type_to_json(ct: CurveType) -> dict:
    if ct.kind == NONSEPARATING:
        return {"kind": NONSEPARATING}
    sides = []
    for side in ct.sides:
        entry: dict = {"genus": side.genus, "puncture_count": side.puncture_count}
        if side.punctures is not None:
            entry["punctures"] = sorted(side.punctures)
        sides.append(entry)
    return {"kind": SEPARATING, "sides": sides}

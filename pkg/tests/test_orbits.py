import itertools

import pytest

from quantcert.errors import NonHyperbolic
from quantcert.orbits import (
    NONSEPARATING,
    SEPARATING,
    count_orbits,
    curve_type_to_json,
    enumerate_orbits,
    h2_bounds,
)


def bruteforce_labeled_count(g, n):
    """Independent enumeration of curve types with labeled punctures."""
    types = set()
    for g1 in range(g + 1):
        for r in range(n + 1):
            for subset in itertools.combinations(range(n), r):
                a = frozenset(subset)
                b = frozenset(range(n)) - a
                if (g1, len(a)) in {(0, 0), (0, 1)}:
                    continue
                if (g - g1, len(b)) in {(0, 0), (0, 1)}:
                    continue
                types.add(
                    tuple(sorted([(g1, tuple(sorted(a))), (g - g1, tuple(sorted(b)))]))
                )
    return (1 if g >= 1 else 0) + len(types)


class TestCountOrbits:
    def test_closed_surface_formula(self):
        for g in range(2, 21):
            assert count_orbits(g, 0) == g // 2 + 1

    def test_one_puncture_formula(self):
        for g in range(2, 21):
            assert count_orbits(g, 1) == g
            assert count_orbits(g, 1, labeled=True) == g

    def test_genus4_closed(self):
        assert count_orbits(4, 0) == 3

    def test_genus3_one_puncture(self):
        assert count_orbits(3, 1) == 3

    def test_labeled_matches_bruteforce(self):
        for g in range(0, 5):
            for n in range(0, 5):
                if 2 - 2 * g - n >= 0:
                    continue
                assert count_orbits(g, n, labeled=True) == bruteforce_labeled_count(g, n)

    def test_labeled_at_least_unlabeled(self):
        for g in range(0, 5):
            for n in range(0, 6):
                if 2 - 2 * g - n >= 0:
                    continue
                assert count_orbits(g, n, labeled=True) >= count_orbits(g, n)

    def test_non_hyperbolic_rejected(self):
        for g, n in ((0, 0), (0, 2), (1, 0)):
            with pytest.raises(NonHyperbolic):
                count_orbits(g, n)

    def test_thrice_punctured_sphere_has_no_essential_curves(self):
        assert count_orbits(0, 3) == 0

    def test_thrice_punctured_sphere_plus_one(self):
        # (0, 4): no nonseparating type; three labeled splittings 2|2
        assert count_orbits(0, 4, labeled=True) == 3
        assert count_orbits(0, 4) == 1


class TestEnumerateOrbits:
    def test_genus2_closed(self):
        types = enumerate_orbits(2, 0)
        assert [t.kind for t in types] == [NONSEPARATING, SEPARATING]
        sides = types[1].sides
        assert [(s.genus, s.puncture_count) for s in sides] == [(1, 0), (1, 0)]

    def test_genus3_closed(self):
        types = enumerate_orbits(3, 0)
        assert len(types) == 2
        assert [(s.genus, s.puncture_count) for s in types[1].sides] == [(1, 0), (2, 0)]

    def test_nonseparating_first_and_lengths_agree(self):
        for g in range(0, 5):
            for n in range(0, 5):
                if 2 - 2 * g - n >= 0:
                    continue
                for labeled in (False, True):
                    types = enumerate_orbits(g, n, labeled=labeled)
                    assert len(types) == count_orbits(g, n, labeled=labeled)
                    assert len(set(types)) == len(types)
                    if g >= 1:
                        assert types[0].kind == NONSEPARATING

    def test_sides_are_canonically_ordered(self):
        for ct in enumerate_orbits(3, 2, labeled=True):
            if ct.kind == SEPARATING:
                lo, hi = ct.sides
                assert lo.sort_key() <= hi.sort_key()

    def test_json_rendering(self):
        types = enumerate_orbits(2, 1, labeled=True)
        docs = [curve_type_to_json(t) for t in types]
        assert docs[0] == {"kind": "nonseparating"}
        for doc in docs[1:]:
            assert doc["kind"] == "separating"
            assert len(doc["sides"]) == 2
            for side in doc["sides"]:
                assert "punctures" in side


class TestH2Bounds:
    def test_genus4_closed(self):
        bounds = h2_bounds(4, 0)
        assert (bounds.lower_rank, bounds.upper_bound) == (3, 4)
        assert bounds.upper_bound_valid

    def test_genus5_one_puncture(self):
        bounds = h2_bounds(5, 1)
        assert (bounds.lower_rank, bounds.upper_bound) == (5, 7)

    def test_upper_is_lower_plus_n_plus_1(self):
        for g in range(2, 8):
            for n in range(0, 4):
                bounds = h2_bounds(g, n)
                assert bounds.upper_bound == bounds.lower_rank + n + 1

    def test_nonvanishing_certificate(self):
        for g in range(2, 12):
            assert h2_bounds(g, 0).lower_rank >= 1

    def test_validity_flag(self):
        assert not h2_bounds(3, 0).upper_bound_valid
        assert h2_bounds(4, 0).upper_bound_valid

import math
import random
from fractions import Fraction

import pytest

from wildcat.engine import is_stable
from wildcat.linalg import Matrix
from wildcat.stokes import (
    Circle,
    IrregularClass,
    RepCandidate,
    UnsolvableRelation,
    WildSurface,
    build_scaffold,
    circle_invariants,
    exponential_torus_grading,
    expand_sheets,
    grouped_directions,
    katz_guarantee,
    random_candidate,
    singular_directions,
    stokes_pattern,
    to_framed_point,
    verify_candidate,
)

TWO_CIRCLE = IrregularClass([Circle(1, [(1, 1)], 1), Circle(1, [(1, -1)], 1)])
KATZ = IrregularClass([Circle(2, [(3, 1)], 1)])
TAME2 = IrregularClass([Circle(1, [], 2)])


def close(a, b, tol=1e-9):
    return abs((a - b + math.pi) % (2 * math.pi) - math.pi) <= tol


class TestCircles:
    def test_katz_slope(self):
        assert circle_invariants(Circle(2, [(3, 1)], 1)) == (2, Fraction(3, 2))

    def test_tame(self):
        assert circle_invariants(Circle(1, [], 3)) == (1, Fraction(0))

    def test_max_exponent(self):
        assert circle_invariants(Circle(1, [(2, 2), (1, 1)], 1)) == (1, Fraction(2))

    def test_gcd_normalization(self):
        with pytest.raises(ValueError):
            Circle(2, [(2, 1)], 1)  # gcd(2, 2) = 2: not minimally ramified
        with pytest.raises(ValueError):
            Circle(2, [], 1)  # tame circle must have ramification 1

    def test_rank(self):
        assert TWO_CIRCLE.rank == 2 and KATZ.rank == 2
        assert IrregularClass([Circle(2, [(3, 1)], 2)]).rank == 4


class TestDirections:
    def test_opposite_level_one(self):
        dirs = singular_directions(TWO_CIRCLE)
        assert len(dirs) == 2
        by_pair = {d.pair: d.theta for d in dirs}
        assert close(by_pair[(0, 1)], math.pi)
        assert close(by_pair[(1, 0)], 0.0)

    def test_single_sheet_no_pairs(self):
        assert singular_directions(TAME2) == []

    def test_level_two(self):
        cls = IrregularClass([Circle(1, [(2, 1)], 1), Circle(1, [], 1)])
        dirs = singular_directions(cls)
        up = sorted(d.theta for d in dirs if d.pair == (0, 1))
        down = sorted(d.theta for d in dirs if d.pair == (1, 0))
        assert len(up) == 2 and close(up[0], math.pi / 2) and close(up[1], 3 * math.pi / 2)
        assert len(down) == 2 and close(down[0], 0.0) and close(down[1], math.pi)

    def test_count_matches_level(self):
        for cls in (TWO_CIRCLE, KATZ,
                    IrregularClass([Circle(1, [(2, 1)], 1), Circle(1, [(1, 1)], 1)])):
            dirs = singular_directions(cls)
            per_pair = {}
            for d in dirs:
                per_pair.setdefault(d.pair, []).append(d.theta)
            for pair, thetas in per_pair.items():
                level = next(d.level for d in dirs if d.pair == pair)
                assert len(thetas) == level
                for i in range(len(thetas)):
                    for j in range(i + 1, len(thetas)):
                        assert not close(thetas[i], thetas[j])

    def test_pair_swap_shift(self):
        # swapping the ordered pair shifts each direction by pi/level
        for cls in (TWO_CIRCLE, KATZ):
            dirs = singular_directions(cls)
            by_pair = {}
            for d in dirs:
                by_pair.setdefault(d.pair, []).append(d.theta)
            for (i, j), thetas in by_pair.items():
                level = next(d.level for d in dirs if d.pair == (i, j))
                shift = math.pi / float(level)
                opposite = by_pair[(j, i)]
                for t in thetas:
                    assert any(close(t + shift, s) for s in opposite)
                    if level == 1:
                        assert any(close(t + math.pi, s) for s in opposite)

    def test_katz_cover_directions(self):
        groups = grouped_directions(KATZ)
        assert len(groups) == 6
        for k, (theta, pattern) in enumerate(groups):
            assert close(theta, k * math.pi / 3)
            assert pattern == ([(1, 0)] if k % 2 == 0 else [(0, 1)])


class TestPatterns:
    def test_two_circle_patterns(self):
        assert stokes_pattern(TWO_CIRCLE, math.pi) == [(0, 1)]
        assert stokes_pattern(TWO_CIRCLE, 0.0) == [(1, 0)]

    def test_non_singular_rejected(self):
        with pytest.raises(ValueError):
            stokes_pattern(TWO_CIRCLE, 1.0)
        with pytest.raises(ValueError):
            stokes_pattern(TAME2, 0.0)


class TestGrading:
    def test_two_circle_weights(self):
        g = exponential_torus_grading(TWO_CIRCLE)
        assert [w for w, _ in g.pieces] == [(1,), (-1,)]

    def test_katz_weights(self):
        g = exponential_torus_grading(KATZ)
        assert sorted(w for w, _ in g.pieces) == [(-1,), (1,)]

    def test_multiplicity_blocks(self):
        cls = IrregularClass([Circle(1, [(1, 1)], 2), Circle(1, [], 1)])
        g = exponential_torus_grading(cls)
        dims = [len(basis) for _, basis in g.pieces]
        assert dims == [2, 1]

    def test_sheets_distinct(self):
        sheets = expand_sheets(KATZ)
        assert len(sheets) == 2
        assert sheets[0].q != sheets[1].q


class TestKatzGuarantee:
    def test_positive(self):
        assert katz_guarantee(KATZ)

    def test_two_circles(self):
        assert not katz_guarantee(TWO_CIRCLE)

    def test_multiplicity(self):
        assert not katz_guarantee(IrregularClass([Circle(2, [(3, 1)], 2)]))


class TestScaffold:
    def test_tame_sphere(self):
        sc = build_scaffold(WildSurface(0, [TAME2], 2))
        assert [g.name for g in sc.generators] == ["h1"]
        assert sc.relation == [("h1", 1)]

    def test_genus_one_tame(self):
        sc = build_scaffold(WildSurface(1, [TAME2], 2))
        assert [g.name for g in sc.generators] == ["a1", "b1", "h1"]
        assert sc.relation == [("a1", 1), ("b1", 1), ("a1", -1), ("b1", -1), ("h1", 1)]

    def test_two_circle_sphere(self):
        sc = build_scaffold(WildSurface(0, [TWO_CIRCLE], 2))
        assert len(sc.generators) == 3
        assert sc.relation == [("h1", 1), ("S1.1", 1), ("S1.0", 1)]

    def test_two_punctures_connector(self):
        sc = build_scaffold(WildSurface(0, [TAME2, TWO_CIRCLE], 2))
        names = [g.name for g in sc.generators]
        assert "C2" in names
        assert sc.relation[:1] == [("h1", 1)]
        assert ("C2", -1) in sc.relation and ("C2", 1) in sc.relation


class TestVerify:
    def setup_method(self):
        self.sc = build_scaffold(WildSurface(0, [TWO_CIRCLE], 2))

    def test_forced_point_verifies(self):
        cand = RepCandidate({"h1": Matrix.identity(2),
                             "S1.0": Matrix.identity(2),
                             "S1.1": Matrix.identity(2)})
        assert verify_candidate(self.sc, cand) == []

    def test_relation_violation(self):
        x = Fraction(1)
        cand = RepCandidate({"h1": Matrix.identity(2),
                             "S1.0": Matrix.build([[1, 0], [x, 1]]),
                             "S1.1": Matrix.build([[1, -x], [0, 1]])})
        v = verify_candidate(self.sc, cand)
        assert len(v) == 1 and "relation" in v[0]

    def test_pattern_violation(self):
        cand = RepCandidate({"h1": Matrix.identity(2),
                             "S1.0": Matrix.build([[1, 1], [0, 1]]),  # wrong block
                             "S1.1": Matrix.identity(2)})
        v = verify_candidate(self.sc, cand)
        assert any("S1.0" in s and "pattern" in s for s in v)

    def test_formal_off_block(self):
        cand = RepCandidate({"h1": Matrix.build([[0, 1], [1, 0]]),
                             "S1.0": Matrix.identity(2),
                             "S1.1": Matrix.identity(2)})
        v = verify_candidate(self.sc, cand)
        assert any("h1" in s and "graded" in s for s in v)

    def test_missing_assignment(self):
        v = verify_candidate(self.sc, RepCandidate({"h1": Matrix.identity(2)}))
        assert any("missing" in s for s in v)

    def test_katz_formal_pattern_is_cyclic(self):
        sck = build_scaffold(WildSurface(0, [KATZ], 2))
        pd = sck.punctures[0]
        assert sorted(pd.formal_blocks) == [(0, 1), (1, 0)]


class TestFramedAssembly:
    def test_tame_sphere_verdict(self):
        sc = build_scaffold(WildSurface(0, [TAME2], 2))
        fp = to_framed_point(sc, RepCandidate({"h1": Matrix.identity(2)}))
        rep = is_stable(fp)
        assert rep.polystable and not rep.stable
        assert rep.stabilizer_dim == 4

    def test_two_circle_forced_point(self):
        sc = build_scaffold(WildSurface(0, [TWO_CIRCLE], 2))
        cand = RepCandidate({"h1": Matrix.identity(2), "S1.0": Matrix.identity(2),
                             "S1.1": Matrix.identity(2)})
        rep = is_stable(to_framed_point(sc, cand))
        assert rep.polystable and not rep.stable

    def test_unverified_rejected(self):
        sc = build_scaffold(WildSurface(0, [TWO_CIRCLE], 2))
        cand = RepCandidate({"h1": Matrix.build([[2, 0], [0, 1]]),
                             "S1.0": Matrix.identity(2), "S1.1": Matrix.identity(2)})
        with pytest.raises(ValueError):
            to_framed_point(sc, cand)

    def test_grading_compatibility(self):
        sc = build_scaffold(WildSurface(0, [KATZ], 2))
        cand = random_candidate(sc, 0)
        fp = to_framed_point(sc, cand)
        assert fp.n == 2 and len(fp.gradings) == 1
        assert [w for w, _ in fp.gradings[0].pieces] == [(1,), (-1,)]


class TestSampling:
    def test_tame_sphere_forced(self):
        sc = build_scaffold(WildSurface(0, [TAME2], 2))
        cand = random_candidate(sc, 5)
        assert cand.assignment["h1"] == Matrix.identity(2)

    def test_genus_one_tame(self):
        sc = build_scaffold(WildSurface(1, [TAME2], 2))
        for seed in range(4):
            cand = random_candidate(sc, seed)
            assert verify_candidate(sc, cand) == []
        a, b, h = (cand.assignment[k] for k in ("a1", "b1", "h1"))
        assert a @ b @ a.inverse() @ b.inverse() @ h == Matrix.identity(2)

    def test_two_circle_seeds(self):
        sc = build_scaffold(WildSurface(0, [TWO_CIRCLE], 2))
        for seed in range(6):
            cand = random_candidate(sc, seed)
            assert verify_candidate(sc, cand) == []

    def test_katz_seeds_verify(self):
        sc = build_scaffold(WildSurface(0, [KATZ], 2))
        for seed in range(6):
            assert verify_candidate(sc, random_candidate(sc, seed)) == []

    def test_genus_with_wild_puncture(self):
        sc = build_scaffold(WildSurface(1, [TWO_CIRCLE], 2))
        cand = random_candidate(sc, 2)
        assert verify_candidate(sc, cand) == []

    def test_two_punctures_mixed(self):
        sc = build_scaffold(WildSurface(0, [TAME2, TWO_CIRCLE], 2))
        for seed in range(3):
            cand = random_candidate(sc, seed)
            assert verify_candidate(sc, cand) == []

    def test_determinism(self):
        sc = build_scaffold(WildSurface(0, [KATZ], 2))
        a = random_candidate(sc, 7).to_json()
        b = random_candidate(sc, 7).to_json()
        assert a == b

"""Permutation-orbit machinery: groups, canonical forms, condition tables
and distinctness."""

import itertools

import pytest

from sl2comps.conj import (
    agl32,
    apply_perm,
    canonicalize,
    closure,
    distinctness_report,
    fano_lines,
    orbit_of_set,
    perm_from_cycles,
    psl27,
    stabilizer,
    verify_conditions_table,
)
from sl2comps.registry import default_registry
from sl2comps.restrict import Restrictor


@pytest.fixture(scope="module")
def reg():
    return default_registry()


@pytest.fixture(scope="module")
def rx(reg):
    return Restrictor(reg)


class TestGroups:
    def test_orders(self):
        assert psl27().order == 168
        assert agl32().order == 1344
        assert closure([tuple(range(5))]).order == 1

    def test_point_stabilizer_s4(self):
        assert stabilizer(psl27(), [0]).order == 24

    def test_agl_pair_stabilizer(self):
        assert stabilizer(agl32(), [0, 1]).order == 48

    def test_dihedral_pair_stabilizer_inside_s4(self):
        s4 = stabilizer(psl27(), [0])
        assert stabilizer(s4, [1, 2]).order == 8

    def test_agl_three_transitive_two_quadruple_orbits(self):
        g = agl32()
        assert stabilizer(g, [0, 1, 2]).order == 1344 // 56  # transitive on triples
        seen, sizes = set(), []
        for comb in itertools.combinations(range(8), 4):
            s = frozenset(comb)
            if s in seen:
                continue
            orb = orbit_of_set(g, s)
            seen |= orb
            sizes.append(len(orb))
        assert sorted(sizes) == [14, 56]

    def test_fano_structure(self):
        lines = set(fano_lines())
        assert len(lines) == 7
        # the fixed convention: slots (1,r,s), (1,t,u), (1,w,v) lie on lines
        for triple in ({0, 1, 2}, {0, 3, 4}, {0, 5, 6}):
            assert frozenset(triple) in lines
        # orbit sizes 7 and 28 on 3-subsets
        g = psl27()
        seen, sizes = set(), []
        for comb in itertools.combinations(range(7), 3):
            s = frozenset(comb)
            if s in seen:
                continue
            orb = orbit_of_set(g, s)
            seen |= orb
            sizes.append(len(orb))
        assert sorted(sizes) == [7, 28]


class TestCanonicalize:
    def test_constant_tuple(self):
        g = psl27()
        assert canonicalize((3, 3, 3, 3, 3, 3, 3), g) == (0,) * 7

    def test_already_minimal(self):
        s3 = closure([perm_from_cycles(3, [(1, 2)]),
                      perm_from_cycles(3, [(2, 3)])])
        assert canonicalize((0, 1, 2), s3) == (0, 1, 2)

    def test_idempotent_and_orbit_constant(self):
        g = psl27()
        t = (0, 2, 1, 0, 3, 1, 2)
        c = canonicalize(t, g)
        assert canonicalize(c, g) == c
        for e in list(g.elements)[::17]:
            assert canonicalize(apply_perm(e, t), g) == c

    def test_orbit_stabilizer_theorem(self):
        g = psl27()
        for pts in ([0], [0, 1], [0, 1, 2]):
            orb = orbit_of_set(g, pts)
            assert len(orb) * stabilizer(g, pts).order == g.order


class TestConditionCovers:
    @pytest.mark.parametrize("table,bound", [
        ("cond23", 3), ("cond27", 3), ("conditions1", 3), ("cond8", 3),
    ])
    def test_small_bound_exact_cover(self, reg, table, bound):
        rep = verify_conditions_table(reg, table, bound)
        assert rep["status"] == "pass", rep["counterexamples"][:3]

    def test_report_shape(self, reg):
        rep = verify_conditions_table(reg, "cond27", 2)
        assert set(rep) >= {"table", "bound", "orbits", "counterexamples",
                            "status"}


class TestDistinctness:
    def test_g2_small(self, rx):
        for p in (2, 3, 5):
            rep = distinctness_report(rx, "G2", p, 3, "adj")
            assert rep["status"] == "pass"

    def test_e6_empty_at_two(self, rx):
        rep = distinctness_report(rx, "E6", 2, 4, "min")
        assert rep["instances"] == 0 and rep["status"] == "pass"

    def test_f4_both_modules(self, rx):
        for module in ("min", "adj"):
            rep = distinctness_report(rx, "F4", 7, 3, module)
            assert rep["status"] == "pass" and rep["instances"] > 0

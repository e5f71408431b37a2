"""Smoothing states into circles and region complexes."""

import pytest

from kbdiag.diagram import DiagramError, adequacy, z2_class
from kbdiag.resolution import resolve


def state_of(d, signs):
    cids = [cid for cid, _ in d.crossings]
    return dict(zip(cids, signs))


class TestCircles:
    def test_e6_all_plus_two_essential(self, load):
        d = load("e6")
        res = resolve(d, state_of(d, (1, 1)))
        assert res.sum_signs == 2
        assert [c.key for c in res.circles] == ["aL", "aR"]
        assert res.trivial_count == 0
        assert res.essential_count == 2
        assert all(c.mask_min == 0b10 for c in res.circles)
        assert sorted(c.arcs for c in res.circles) == [("aL", "wL"), ("aR", "wR")]

    def test_e6_all_minus_two_trivial(self, load):
        d = load("e6")
        res = resolve(d, state_of(d, (-1, -1)))
        assert res.trivial_count == 2
        assert res.essential_count == 0
        assert sorted(c.arcs for c in res.circles) == [("aL", "aR"), ("wL", "wR")]
        # empty shadow: one region, no edges
        assert len(res.complex.regions) == 1
        assert res.complex.edges == ()

    @pytest.mark.parametrize("signs", [(1, -1), (-1, 1)])
    def test_e6_mixed_single_trivial(self, load, signs):
        d = load("e6")
        res = resolve(d, state_of(d, signs))
        assert len(res.circles) == 1
        assert res.trivial_count == 1
        assert res.sum_signs == 0

    def test_loop_only_diagrams(self, load):
        res = resolve(load("unknot"), {})
        assert res.trivial_count == 1 and res.essential_count == 0
        res = resolve(load("e1"), {})
        assert res.trivial_count == 0 and res.essential_count == 1
        res = resolve(load("e2"), {})
        assert res.essential_count == 2

    def test_state_validation(self, load):
        d = load("e6")
        with pytest.raises(DiagramError, match="state missing crossing"):
            resolve(d, {"c0": 1})
        with pytest.raises(DiagramError, match="must be \\+1 or -1"):
            resolve(d, {"c0": 1, "c1": 0})


class TestRegionComplex:
    def test_e5_pants(self, load):
        res = resolve(load("e5"), {})
        comp = res.complex
        assert len(comp.regions) == 4
        assert len(comp.edges) == 3
        internal = comp.internals()
        assert len(internal) == 1
        pants = comp.regions[internal[0]]
        assert pants.chi == -1
        assert pants.mask == 0
        assert len(pants.circles) == 3
        assert comp.phi_counts() == {2: 1}
        for i in comp.externals():
            assert comp.regions[i].chi == 0

    def test_e6_plus_state_annulus(self, load):
        d = load("e6")
        comp = resolve(d, state_of(d, (1, 1))).complex
        assert len(comp.regions) == 3
        chis = sorted(r.chi for r in comp.regions)
        assert chis == [0, 0, 0]
        assert comp.phi_counts() == {1: 1}
        assert sum(r.chi for r in comp.regions) == 1 - d.genus

    def test_chi_sum_invariant(self, load):
        for name, signs in [("e5", ()), ("e2", ()), ("e1", ())]:
            d = load(name)
            comp = resolve(d, {}).complex
            assert sum(r.chi for r in comp.regions) == 1 - d.genus


class TestDerivedDiagramAnalyses:
    def test_z2_classes(self, load):
        assert z2_class(load("unknot")) == (0,)
        assert z2_class(load("e1")) == (0, 1)
        assert z2_class(load("e2")) == (0, 0)
        assert z2_class(load("e5")) == (0, 0, 0)
        assert z2_class(load("e6")) == (0, 0)
        assert z2_class(load("trefoil")) == (0,)

    def test_z2_state_independent(self, load):
        d = load("e6")
        masks = []
        for signs in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
            res = resolve(d, state_of(d, signs))
            total = 0
            for c in res.circles:
                total ^= c.mask_min
            masks.append(total)
        assert len(set(masks)) == 1

    def test_adequacy(self, load):
        assert adequacy(load("trefoil")) == (True, True)
        assert adequacy(load("e6")) == (False, True)
        assert adequacy(load("unknot")) == (True, True)

"""Model, parser, face tracing and sphere assembly."""

import pytest

from kbdiag.diagram import (
    AMBIENT,
    AMBIENT_FACE,
    DiagramError,
    assemble,
    diagram_genus,
    faces,
    is_alternating,
    is_connected,
    parse_diagram,
    serialize,
)

FIXTURE_NAMES = ["unknot", "e1", "e2", "e5", "e6", "trefoil"]


class TestParseSerialize:
    @pytest.mark.parametrize("name", FIXTURE_NAMES)
    def test_round_trip_is_byte_stable(self, name, load, fixture_text):
        d = load(name)
        assert serialize(d) == fixture_text(name)
        assert serialize(parse_diagram(serialize(d))) == serialize(d)

    def test_comments_and_blank_lines_ignored(self):
        text = "kbdiag 1\n\n# a remark\ngenus 0\nO k0\n"
        text += "place piece k0 . f:. f:k0:L\nplace puncture 0 . f:. .\n"
        d = parse_diagram(text)
        assert d.loops == ["k0"]

    def test_missing_header(self):
        with pytest.raises(DiagramError, match="header"):
            parse_diagram("genus 0\n")

    def test_empty_diagram_parses(self):
        d = parse_diagram("kbdiag 1\ngenus 1\nplace puncture 0 . f:. .\nplace puncture 1 . f:. .\n")
        assert d.n_crossings == 0
        assert not is_connected(d)
        assert diagram_genus(d) == 0

    def test_slot_conflict(self):
        text = (
            "kbdiag 1\ngenus 0\n"
            "X m c0 s0 s1 s2 s3 0\n"
            "E m a s0 s1\nE m b s1 s2\nE m c s2 s3\n"
            "place piece m . f:. f:s0\nplace puncture 0 . f:. .\n"
        )
        with pytest.raises(DiagramError, match="slot conflict: slot s1"):
            parse_diagram(text)

    def test_dangling_slot(self):
        text = (
            "kbdiag 1\ngenus 0\n"
            "X m c0 s0 s1 s2 s3 0\n"
            "E m a s0 s1\n"
            "place piece m . f:. f:s0\nplace puncture 0 . f:. .\n"
        )
        with pytest.raises(DiagramError, match="dangling slot"):
            parse_diagram(text)

    def test_unknown_face_in_placement(self):
        text = "kbdiag 1\ngenus 0\nO k0\nplace piece k0 . f:. f:k0:X\nplace puncture 0 . f:. .\n"
        with pytest.raises(DiagramError, match="unknown face f:k0:X on piece k0"):
            parse_diagram(text)

    def test_unknown_host_face(self):
        text = "kbdiag 1\ngenus 0\nO k0\nplace piece k0 . f:oops f:k0:L\nplace puncture 0 . f:. .\n"
        with pytest.raises(DiagramError, match="unknown face f:oops"):
            parse_diagram(text)

    def test_puncture_count_mismatch(self):
        with pytest.raises(DiagramError, match="puncture count mismatch"):
            parse_diagram("kbdiag 1\ngenus 1\nplace puncture 0 . f:. .\n")

    def test_nesting_cycle(self):
        text = (
            "kbdiag 1\ngenus 0\nO k0\nO k1\n"
            "place piece k0 k1 f:k1:L f:k0:L\n"
            "place piece k1 k0 f:k0:R f:k1:R\n"
            "place puncture 0 . f:. .\n"
        )
        with pytest.raises(DiagramError, match="nesting cycle"):
            parse_diagram(text)

    def test_duplicate_piece(self):
        text = "kbdiag 1\ngenus 0\nO k0\nO k0\nplace piece k0 . f:. f:k0:L\nplace puncture 0 . f:. .\n"
        with pytest.raises(DiagramError, match="duplicate"):
            parse_diagram(text)

    def test_nonplanar_rotation_rejected(self):
        # one crossing with opposite slots joined twice cannot embed in the sphere
        text = (
            "kbdiag 1\ngenus 0\n"
            "X m c0 s0 s1 s2 s3 0\n"
            "E m a s0 s2\nE m b s1 s3\n"
            "place piece m . f:. f:s0\nplace puncture 0 . f:. .\n"
        )
        with pytest.raises(DiagramError, match="nonplanar rotation system"):
            parse_diagram(text)


class TestFaces:
    def test_unknot_two_faces(self, load):
        fs = faces(load("unknot"))
        assert len(fs.faces) == 2
        outer = fs.by_id(AMBIENT_FACE)
        assert outer.punctures == (0,)
        assert (("k0", "f:k0:L") in outer.members) and ((AMBIENT, AMBIENT_FACE) in outer.members)
        inner = fs.by_id("f:k0:R")
        assert inner.punctures == ()

    def test_e6_face_structure(self, load):
        d = load("e6")
        fs = faces(d)
        assert len(fs.faces) == 4
        assert sorted(f.id for f in fs.faces) == ["f:.", "f:c0.0", "f:c0.2", "f:c0.3"]
        outer = fs.by_id(AMBIENT_FACE)
        assert outer.punctures == (0,)
        assert set(outer.corners) == {"c0.1", "c1.1"}
        hole = fs.by_id("f:c0.3")
        assert hole.punctures == (1,)
        assert set(hole.corners) == {"c0.3", "c1.3"}
        bigon = fs.by_id("f:c0.2")
        assert set(bigon.corners) == {"c0.2", "c1.0"}
        assert bigon.punctures == ()
        wrap = fs.by_id("f:c0.0")
        assert set(wrap.corners) == {"c0.0", "c1.2"}

    def test_trefoil_face_structure(self, load):
        d = load("trefoil")
        fs = faces(d)
        assert len(fs.faces) == 5
        sizes = sorted(len(f.corners) for f in fs.faces)
        assert sizes == [2, 2, 2, 3, 3]
        outer = fs.by_id(AMBIENT_FACE)
        assert set(outer.corners) == {"c0.1", "c1.1", "c2.1"}

    def test_e5_face_structure(self, load):
        d = load("e5")
        fs = faces(d)
        assert len(fs.faces) == 4
        pants = fs.by_id("f:k1:L")
        assert set(pants.members) == {("k1", "f:k1:L"), ("k2", "f:k2:L"), ("k3", "f:k3:R")}
        assert pants.punctures == ()
        assert fs.by_id("f:k1:R").punctures == (1,)
        assert fs.by_id("f:k2:R").punctures == (2,)
        assert fs.by_id(AMBIENT_FACE).punctures == (0,)

    def test_euler_count_matches_formula(self, load):
        for name in FIXTURE_NAMES:
            d = load(name)
            expected = d.n_crossings + len(d.pieces) + 1
            assert len(d.union_faces) == expected
            assert len(faces(d).faces) == expected


class TestAnalyses:
    def test_connectivity(self, load):
        assert is_connected(load("e6"))
        assert is_connected(load("trefoil"))
        assert is_connected(load("unknot"))
        assert not is_connected(load("e2"))
        assert not is_connected(load("e5"))

    def test_alternating(self, load):
        assert is_alternating(load("e6"))
        assert is_alternating(load("trefoil"))
        assert is_alternating(load("unknot"))  # vacuous

    def test_non_alternating_after_flag_flip(self, load, fixture_text):
        text = fixture_text("trefoil").replace("X m c1 c1.0 c1.1 c1.2 c1.3 1",
                                               "X m c1 c1.0 c1.1 c1.2 c1.3 0")
        assert not is_alternating(parse_diagram(text))

    def test_diagram_genus(self, load):
        assert diagram_genus(load("unknot")) == 0
        assert diagram_genus(load("e1")) == 1
        assert diagram_genus(load("e2")) == 1
        assert diagram_genus(load("e5")) == 2
        assert diagram_genus(load("e6")) == 1
        assert diagram_genus(load("trefoil")) == 0

    def test_genus_drops_when_punctures_share_a_face(self):
        text = "kbdiag 1\ngenus 1\nO k0\nplace piece k0 . f:. f:k0:L\n"
        text += "place puncture 0 . f:. .\nplace puncture 1 . f:. .\n"
        assert diagram_genus(parse_diagram(text)) == 0

    def test_strands(self, load):
        assert len(load("e6").strands()) == 2
        assert len(load("trefoil").strands()) == 1
        tre = load("trefoil").strands()[0]
        assert len(tre) == 6  # one strand passing three crossings twice


class TestAssemble:
    @pytest.mark.parametrize("name", FIXTURE_NAMES)
    def test_assemble_recovers_union_structure(self, name, load):
        d = load(name)
        puncture_class = {
            idx: d._class_of[placement]
            for idx, placement in d.puncture_placements.items()
        }
        d2 = assemble(d.genus, list(d.pieces.values()), d.union_faces, puncture_class)
        assert d2.union_faces == d.union_faces
        assert d2.face_punctures == d.face_punctures
        assert serialize(parse_diagram(serialize(d2))) == serialize(d2)

    def test_assemble_rejects_disconnected_classes(self, load):
        d = load("e2")
        # drop the class merging k1 into k0's inner face
        classes = [
            [m for m in cl if m[0] != "k1"] or [("k1", "f:k1:L")]
            for cl in d.union_faces
        ]
        with pytest.raises(DiagramError):
            assemble(d.genus, list(d.pieces.values()), classes, {0: 0, 1: 1})

from dataclasses import replace

import pytest

from vogan_lab.diagram import (
    AffineDiagram, DiagramError, affine_extend, automorphisms, default_theta, diagram_involutions,
    dynkin_diagram, fold_quotient, verify_marks,
)
from vogan_lab.rootsys import SimpleType, build_root_system

TYPES = [SimpleType(f, n) for f, n in
         [("A", k) for k in range(1, 9)] + [("B", k) for k in range(2, 9)] + [("C", k) for k in range(2, 9)]
         + [("D", k) for k in range(3, 9)] + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]]


def D1(s):
    return affine_extend(build_root_system(SimpleType.parse(s)))


def test_a1_affine_bond():
    ad = D1("A1")
    assert ad.size == 2 and ad.marks == (1, 1)
    assert ad.cartan[0][1] == ad.cartan[1][0] == -2


def test_c2_marks_and_path():
    ad = D1("C2")
    assert ad.marks == (1, 2, 1)
    assert [(i, j) for i, j, _ in ad.edges()] == [(0, 1), (1, 2)]


def test_e7_marks():
    assert sorted(D1("E7").marks) == sorted([1, 2, 3, 4, 3, 2, 1, 2])


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_marks_balance(t):
    ad = affine_extend(build_root_system(t))
    assert verify_marks(ad)
    assert ad.marks[0] == 1


def test_perturbed_marks_fail():
    assert not verify_marks(replace(D1("A2"), marks=(1, 1, 2)))
    assert D1("C3").marks == (1, 2, 2, 1) and verify_marks(D1("C3"))


def test_verify_marks_rejects_twisted():
    with pytest.raises(DiagramError):
        verify_marks(fold_quotient(SimpleType("A", 3)))


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_shape(t):
    ad = affine_extend(build_root_system(t))
    edges = ad.edges()
    if t.family == "A" and t.rank >= 2 or t == SimpleType("D", 3):
        assert len(edges) == ad.size and all(len(ad.neighbors(v)) == 2 for v in range(ad.size))
    else:
        assert len(edges) == ad.size - 1
        assert len(ad.components()) == 1


def test_dynkin_diagram_is_finite_part():
    rs = build_root_system(SimpleType("F", 4))
    dg = dynkin_diagram(rs)
    assert dg.cartan == D1("F4").induced(range(1, 5)).cartan


@pytest.mark.parametrize("s,marks", [("A2", (1, 2)), ("A3", (1, 1, 1)), ("A4", (1, 2, 2)), ("A5", (1, 1, 2, 1)),
                                     ("D4", (1, 1, 1, 1)), ("D5", (1, 1, 1, 1, 1)), ("E6", (1, 2, 1, 3, 2))])
def test_twisted_marks(s, marks):
    tw = fold_quotient(SimpleType.parse(s))
    assert tw.r == 2 and tw.marks == marks


@pytest.mark.parametrize("s", ["A2", "A3", "A4", "A5", "A6", "A7", "D4", "D5", "D6", "E6"])
def test_fold_vertex_count(s):
    t = SimpleType.parse(s)
    theta = default_theta(t)
    orbits = {frozenset({i, theta[i]}) for i in range(1, t.rank + 1)}
    tw = fold_quotient(t)
    assert tw.size == len(orbits) + 1
    assert all(tw.quotient[i] == tw.quotient[theta[i]] for i in range(1, t.rank + 1))


def test_fold_examples():
    a3 = fold_quotient(SimpleType("A", 3))
    assert a3.size == 3 and list(a3.quotient[1:]).count(1) == 2
    assert fold_quotient(SimpleType("D", 4)).size == 4
    assert fold_quotient(SimpleType("E", 6)).size == 5


def test_fold_errors():
    with pytest.raises(DiagramError, match="identity"):
        fold_quotient(SimpleType("A", 3), (0, 1, 2, 3))
    with pytest.raises(DiagramError, match="no outer"):
        fold_quotient(SimpleType("B", 3))
    with pytest.raises(DiagramError):
        fold_quotient(SimpleType("E", 7))


def test_involution_examples():
    assert len(diagram_involutions(D1("A1"))) == 2
    assert len(diagram_involutions(D1("E7"))) == 2
    for n in range(2, 9):
        N = n + 1
        assert len(diagram_involutions(D1(f"A{n}"))) == N + 1 + (N % 2 == 0)


def test_identity_first():
    for s in ("D4", "E6", "C5"):
        invs = diagram_involutions(D1(s))
        assert invs[0] == tuple(range(len(invs[0])))
        assert len(set(invs)) == len(invs)


def test_automorphism_counts():
    assert len(automorphisms(D1("D4"))) == 24
    assert len(automorphisms(D1("E6"))) == 6
    assert len(automorphisms(D1("A3"))) == 8
    assert len(automorphisms(D1("E8"))) == 1


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_involutions_preserve_marks_and_bonds(t):
    ad = affine_extend(build_root_system(t))
    for d in diagram_involutions(ad):
        assert all(ad.marks[v] == ad.marks[d[v]] for v in range(ad.size))
        assert all(ad.cartan[d[i]][d[j]] == ad.cartan[i][j] for i in range(ad.size) for j in range(ad.size))


@pytest.mark.parametrize("ad", [D1("G2"), D1("D5"), fold_quotient(SimpleType("E", 6)), fold_quotient(SimpleType("A", 4))],
                         ids=["G2", "D5", "E6tw", "A4tw"])
def test_json_round_trip(ad):
    assert AffineDiagram.from_json(ad.to_json()) == ad


def test_json_rejects_wrong_marks():
    doc = D1("B3").to_json()
    doc["marks"] = [1, 1, 1, 1]
    with pytest.raises(DiagramError, match="marks"):
        AffineDiagram.from_json(doc)

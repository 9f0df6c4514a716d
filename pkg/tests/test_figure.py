import re
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

from minkowski_weights.balance import WeightVector, is_balanced
from minkowski_weights.field import QuadraticScalar
from minkowski_weights.figure import (
    FIGURE,
    dodecahedral_drawing,
    drawn_faces,
    drawn_weight,
    emit,
    emit_panel,
    face_ray,
    figure_left_weight,
    figure_right_weight,
    panel,
    tex_scalar,
    transfer_weight,
)
from minkowski_weights.skeleton import SkeletonError, builtin_polytope, classify_edges_by_axis, edge_permutation, link_cycle
from oracles import float_residual_norms, mp_value

Q = QuadraticScalar
FIXTURES = Path(__file__).parent / "fixtures"


def tokens(text):
    return re.findall(r"\\[A-Za-z]+|[A-Za-z]+|\d+(?:\.\d+)?|\.\d+|\S", text)


@pytest.fixture(scope="module")
def ico():
    return builtin_polytope("icosahedron")


@pytest.fixture(scope="module")
def drawing(ico):
    return dodecahedral_drawing(ico, ico.names[0])


def test_constants():
    phi = (1 + Q(0, 1)) / 2
    assert FIGURE.phi_fig == 1 / phi
    assert FIGURE.alpha_corrected == phi**2 * FIGURE.beta
    assert FIGURE.alpha_printed == 2 * FIGURE.alpha_corrected
    assert FIGURE.gamma == Q(Fraction(5, 4), Fraction(1, 4))


def test_drawing_counts(drawing):
    assert len(drawing.nodes) == 20
    assert len(drawing.edges) == 30
    assert len({e.dual for e in drawing.edges}) == 30
    faces = drawn_faces(drawing)
    assert len(faces) == 12
    assert len({face_ray(drawing, f) for f in faces}) == 12


def test_nodes_are_triangles(ico, drawing):
    triangles = {frozenset(t) for t in ico.triangles()}
    assert set(drawing.nodes.values()) == triangles


def test_outer_and_inner_faces(ico, drawing):
    axis, south = drawing.axis, drawing.antipode
    outer = {drawing.edge("outer", p).dual for p in range(1, 6)}
    inner = {drawing.edge("inner", p).dual for p in range(1, 6)}
    assert outer == set(ico.incident_edges(axis))
    assert inner == set(ico.incident_edges(south))
    faces = drawn_faces(drawing)
    assert face_ray(drawing, faces[-1]) == axis


def test_duality_is_incidence_preserving(ico, drawing):
    by_key = drawing.by_key()
    for face in drawn_faces(drawing):
        ray = face_ray(drawing, face)
        assert {by_key[k].dual for k in face} == set(ico.incident_edges(ray))


def test_drawing_classes_match_axis_classes(ico, drawing):
    classes = classify_edges_by_axis(ico, drawing.axis)
    expect = {"outer": "polar-N", "spoke": "ring-N", "middle": "equatorial", "inner-spoke": "ring-S", "inner": "polar-S"}
    for e in drawing.edges:
        assert e.dual in classes[expect[e.cls]]


def test_seed_handling(ico):
    axis = ico.names[0]
    cycle = link_cycle(ico, axis)
    d = dodecahedral_drawing(ico, axis, (axis, cycle[2], cycle[3]))
    assert d.nodes["O1"] == frozenset((axis, cycle[2], cycle[3]))
    with pytest.raises(SkeletonError):
        dodecahedral_drawing(ico, axis, (axis, cycle[0], cycle[2]))
    with pytest.raises(SkeletonError):
        dodecahedral_drawing(ico, axis, (cycle[0], cycle[1], cycle[2]))
    with pytest.raises(SkeletonError):
        dodecahedral_drawing(builtin_polytope("dodecahedron"), "v01")


def test_left_weight(ico):
    w = figure_left_weight(ico, ico.names[0])
    assert is_balanced(ico, w).balanced
    assert len(w.zero_set()) == 10
    assert Counter(w.values) == {Q(1): 10, Q(0): 10, FIGURE.phi_fig: 10}


def test_left_weight_dihedral_invariance(ico):
    from minkowski_weights.skeleton import axis_reflection, axis_rotation

    axis = ico.names[0]
    w = figure_left_weight(ico, axis)
    rot, ref = axis_rotation(ico, axis), axis_reflection(ico, axis)
    elements = []
    g = {v: v for v in ico.names}
    for _ in range(5):
        elements.append(g)
        elements.append({v: ref[g[v]] for v in ico.names})
        g = {v: rot[g[v]] for v in ico.names}
    assert len({tuple(sorted(e.items())) for e in elements}) == 10
    for e in elements:
        assert w.permuted(edge_permutation(ico, e)) == w


def test_right_weight_corrected(ico, drawing):
    w = figure_right_weight(drawing, "corrected")
    assert is_balanced(ico, w).balanced
    assert len(w.support()) == 29
    a, b, g = FIGURE.alpha_corrected, FIGURE.beta, FIGURE.gamma
    assert Counter(w.values) == {Q(1): 15, g: 6, b: 4, a: 4, Q(0): 1}


def test_right_weight_printed_fails_at_four_rays(ico, drawing):
    w = figure_right_weight(drawing, "printed")
    verdict = is_balanced(ico, w)
    assert len(verdict.failures) == 4
    # the failing rays are the antipode and the other endpoints of the alpha edges
    alpha_edges = [e for e, v in w.items() if v == FIGURE.alpha_printed]
    touched = {x for e in alpha_edges for x in e}
    assert set(verdict.failing_vertices) == touched
    assert drawing.antipode in touched
    # independent floating point residuals agree on where balancing fails
    norms = float_residual_norms(ico, w.as_dict())
    assert {v for v, n in norms.items() if n > 1e-30} == set(verdict.failing_vertices)


def test_right_minus_constant_is_balanced_on_non_one_labels(ico, drawing):
    w = figure_right_weight(drawing, "corrected")
    diff = w - WeightVector.constant(ico, 1)
    assert is_balanced(ico, diff).balanced
    non_one = {e for e, v in w.items() if v != 1}
    assert set(diff.support()) <= non_one


@pytest.mark.parametrize("axis_index, seed_step", [(0, 0), (0, 3), (4, 1), (7, 2), (11, 4)])
def test_balancedness_independent_of_drawing_choice(ico, axis_index, seed_step):
    axis = ico.names[axis_index]
    cycle = link_cycle(ico, axis)
    seed = (axis, cycle[seed_step], cycle[(seed_step + 1) % 5])
    d = dodecahedral_drawing(ico, axis, seed)
    w = figure_right_weight(d, "corrected")
    assert is_balanced(ico, w).balanced
    assert len(w.zero_set()) == 1
    assert len(is_balanced(ico, figure_right_weight(d, "printed")).failures) == 4


def test_transfer_round_trip(ico, drawing):
    w = figure_right_weight(drawing, "corrected")
    assert transfer_weight(drawing, drawn_weight(drawing, w)) == w
    ones = {e.key: Q(1) for e in drawing.edges}
    assert transfer_weight(drawing, ones) == WeightVector.constant(ico, 1)
    zeros = {e.key: Q(0) for e in drawing.edges}
    assert transfer_weight(drawing, zeros) == WeightVector.zero(ico)
    with pytest.raises(KeyError):
        transfer_weight(drawing, dict(list(ones.items())[:-1]))


def test_tex_scalar():
    assert tex_scalar(FIGURE.phi_fig) == r"\frac{\sqrt{5}-1}{2}"
    assert tex_scalar(FIGURE.alpha_printed) == r"\frac{3+\sqrt{5}}{2}"
    assert tex_scalar(FIGURE.beta) == r"\frac{1}{2}"
    assert tex_scalar(FIGURE.gamma) == r"\frac{5+\sqrt{5}}{4}"
    assert tex_scalar(Q(-1, -2)) == r"-1-2\sqrt{5}"
    assert tex_scalar(Q(0, -1)) == r"-\sqrt{5}"


@pytest.mark.parametrize(
    "name, which, fmt, alpha",
    [
        ("left.tikz", "left", "tikz", "corrected"),
        ("left.dot", "left", "dot", "corrected"),
        ("right_corrected.tikz", "right", "tikz", "corrected"),
        ("right_corrected.dot", "right", "dot", "corrected"),
        ("right_printed.tikz", "right", "tikz", "printed"),
        ("right_printed.dot", "right", "dot", "printed"),
    ],
)
def test_golden_files(ico, name, which, fmt, alpha):
    golden = (FIXTURES / name).read_text()
    out = emit_panel(ico, which, fmt, alpha)
    assert tokens(out) == tokens(golden)
    assert out == emit_panel(ico, which, fmt, alpha)


def test_left_tikz_layout_constants(ico):
    text = emit_panel(ico, "left", "tikz")
    for radius in ("8", "6", "4", "2"):
        assert f":{radius}) circle (.05)" in text
    for slot in ("(\\p*72+36:6.8)", "(\\p*72+4:7)", "(\\p*36+18:5)", "(\\p*72+43:3)", "(\\p*72:1.3)"):
        assert slot in text
    assert "vanishing on 10 edges." in text


def test_dot_counts(ico):
    text = emit_panel(ico, "right", "dot")
    assert len(re.findall(r"^\s+[OMAB]\d \[pos=", text, re.M)) == 20
    assert len(re.findall(r"^\s+[OMAB]\d -- [OMAB]\d ", text, re.M)) == 30


def test_emit_rejects_unknown_format(ico):
    drawing, dw, legend = panel(ico, "left")
    with pytest.raises(ValueError):
        emit(drawing, dw, legend, "svg")


def test_label_values_are_exact(ico):
    # the symbolic phi label stands for (r5 - 1)/2 ~ 0.618
    assert abs(float(mp_value(FIGURE.phi_fig)) - 0.6180339887) < 1e-9

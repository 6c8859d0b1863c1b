import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings

from bicoh.graph import Relation, distributivity_fixture, interpret, rel_compose, rel_identity
from bicoh.render import diagram_spec, render
from bicoh.syntax import infer_type, parse_formula

from conftest import FULL_C, composite_terms

F = parse_formula
SVG = "{http://www.w3.org/2000/svg}"


def test_identity_draws_vertical_links():
    a = F("p*(q+p)")
    out = render(rel_identity(3), a, a)
    lines = out.splitlines()
    assert lines[0].startswith("p   q   p")
    assert lines[1].rstrip() == "|   |   |"
    assert "links" not in out


def test_distributivity_round_trip_crosses():
    fx = distributivity_fixture()
    r = rel_compose(fx["up"], fx["down"])
    out = render(r, fx["outer"], fx["outer"])
    assert "X" in out
    assert "links (top-bottom): 0-0, 0-2, 1-1, 2-0, 2-2, 3-3" in out


def test_empty_relation_has_no_links():
    out = render(Relation.of(1, 0, []), F("p"), F("I"))
    assert set(out) <= set("pI \n")
    root = ET.fromstring(render(Relation.of(1, 0, []), F("p"), F("I"), "svg"))
    assert root.findall(f"{SVG}line") == []


def test_svg_layout():
    r = Relation.of(2, 2, [(0, 1), (1, 0)])
    root = ET.fromstring(render(r, F("p*q"), F("q*p"), "svg"))
    lines = root.findall(f"{SVG}line")
    assert len(lines) == 2
    for ln in lines:
        assert float(ln.get("y2")) - float(ln.get("y1")) == 40
    xs = sorted(float(t.get("x")) for t in root.findall(f"{SVG}text"))
    assert xs[2] - xs[0] == xs[3] - xs[1] > 0


def test_dot_has_one_edge_per_pair():
    r = Relation.of(1, 2, [(0, 0), (0, 1)])
    out = render(r, F("p"), F("p*p"), "dot")
    assert out.count("  s0 -> t") == 2 and out.startswith("digraph")


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        render(rel_identity(2), F("p"), F("p"))
    with pytest.raises(ValueError):
        render(rel_identity(1), F("p"), F("p"), "png")


@settings(max_examples=100)
@given(composite_terms(fragment=FULL_C))
def test_rendering_is_deterministic_and_complete(t):
    a, b = infer_type(t)
    r = interpret(t)
    assert diagram_spec(r, a, b).links == r.pairs
    for fmt in ("ascii", "dot", "svg"):
        assert render(r, a, b, fmt) == render(interpret(t), a, b, fmt)
    root = ET.fromstring(render(r, a, b, "svg"))
    assert len(root.findall(f"{SVG}line")) == len(r)

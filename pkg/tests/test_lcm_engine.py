import json
import random

import pytest

from genscale.coregraph import component_of
from genscale.lcm_engine import (
    GridError,
    classify_square,
    component_multiset,
    fold,
    make_word,
    permute_word,
    word_lcm,
)


def word(setup, *texts):
    return make_word(setup.S, setup.graph, [setup.p(x) for x in texts])


def random_word(setup, rng, max_len=3):
    return make_word(setup.S, setup.graph, [setup.S.random_irreducible(rng) for _ in range(rng.randint(1, max_len))])


def test_classify_examples(axb):
    S, g = axb.S, axb.graph
    assert classify_square(S, g, axb.p("(0,2)"), axb.p("(1,3)")) == "B"
    assert classify_square(S, g, axb.p("(0,2)"), axb.p("(1,2)")) == "A"
    assert classify_square(S, g, axb.p("(0,2)"), axb.p("(3,1)")) == "C"
    assert classify_square(S, g, axb.p("(3,1)"), axb.p("(0,2)")) == "D"
    assert classify_square(S, g, axb.p("(3,1)"), axb.p("(4,1)")) == "E"
    with pytest.raises(GridError):
        classify_square(S, g, axb.p("(0,6)"), axb.p("(0,2)"))


def test_make_word_rejects_reducible(axb):
    with pytest.raises(ValueError):
        word(axb, "(0,6)")
    with pytest.raises(ValueError):
        make_word(axb.S, axb.graph, [])


def test_grid_example(axb):
    grid = word_lcm(axb.S, axb.graph, word(axb, "(0,2)", "(0,2)"), word(axb, "(1,3)"))
    assert grid.outcome == "Complete"
    assert axb.S.format(grid.lcm) == "(4,12)"
    assert grid.log_sequence() == ["B", "B"]
    assert grid.validated


def test_grid_orthogonal(axb):
    grid = word_lcm(axb.S, axb.graph, word(axb, "(0,2)"), word(axb, "(1,2)"))
    assert grid.outcome == "Orthogonal"
    assert grid.stopped_at == (0, 0) and grid.process_log[(0, 0)] == "A"
    assert grid.lcm is None


def test_grid_same_letter(axb, binary):
    for setup, x in ((axb, "(3,7)"), (binary, "1|e")):
        grid = word_lcm(setup.S, setup.graph, word(setup, x), word(setup, x))
        assert grid.outcome == "Complete"
        assert grid.cofactor_left == grid.cofactor_right == setup.S.unit


def test_grid_serialization(axb):
    grid = word_lcm(axb.S, axb.graph, word(axb, "(0,2)", "(1,3)"), word(axb, "(2,3)", "(0,5)"))
    data = json.loads(grid.to_json(axb.S))
    assert data["outcome"] == "Complete"
    assert len(data["s_cells"]) == 2 and len(data["s_cells"][0]) == 3
    assert {c["tag"] for row in data["t_cells"] for c in row} <= {"core", "irr"}
    text = grid.render_text(axb.S)
    assert "[B]" in text and "lcm =" in text


def test_grid_squares_commute(axb, binary, rng):
    for setup in (axb, binary):
        S = setup.S
        for _ in range(60):
            s, t = random_word(setup, rng, 4), random_word(setup, rng, 4)
            grid = word_lcm(S, setup.graph, s, t)
            for (k, l) in grid.process_log:
                if grid.s_cells[k][l + 1] is None:
                    continue
                lhs = S.multiply(grid.s_cells[k][l], grid.t_cells[l][k + 1])
                rhs = S.multiply(grid.t_cells[l][k], grid.s_cells[k][l + 1])
                assert lhs == rhs


def test_core_cells_stay_core(axb, rng):
    S = axb.S
    for _ in range(100):
        grid = word_lcm(S, axb.graph, random_word(axb, rng, 4), random_word(axb, rng, 4))
        if grid.outcome != "Complete":
            continue
        for row in grid.t_cells:
            tags = [S.is_core(x) for x in row]
            first = tags.index(True) if True in tags else len(tags)
            assert all(tags[first:])


def test_edge_freeness_violation_reported(gone_mad):
    S, g = gone_mad.S, gone_mad.graph
    with pytest.raises(GridError, match="edge-freeness"):
        word_lcm(S, g, word(gone_mad, "v(1,1)"), word(gone_mad, "v(0,2)"))


def test_permute_example(axb):
    S, g = axb.S, axb.graph
    w = word(axb, "(0,2)", "(0,3)")
    out = permute_word(S, g, w, [1, 0])
    assert out.component_trace == (w.component_trace[1], w.component_trace[0])
    assert S.core_equivalent(fold(S, out), axb.p("(0,6)"))
    assert component_of(S, g, out.letters[1]) == component_of(S, g, axb.p("(0,2)"))


def test_permute_trivial_cases(axb):
    S, g = axb.S, axb.graph
    w = word(axb, "(1,5)", "(2,3)", "(1,2)")
    assert permute_word(S, g, w, [0, 1, 2]) == w
    single = word(axb, "(4,7)")
    assert permute_word(S, g, single, [0]) == single
    with pytest.raises(ValueError):
        permute_word(S, g, w, [0, 0, 1])


def test_permute_random(axb, binary):
    rng = random.Random(5)
    for setup in (axb, binary):
        for _ in range(80):
            w = random_word(setup, rng, 4)
            sigma = list(range(len(w)))
            rng.shuffle(sigma)
            out = permute_word(setup.S, setup.graph, w, sigma)
            assert out.component_trace == tuple(w.component_trace[j] for j in sigma)


def test_component_multiset_examples(axb, doubled):
    w = word(axb, "(0,2)", "(1,2)", "(0,3)")
    p2 = component_of(axb.S, axb.graph, axb.p("(0,2)"))
    p3 = component_of(axb.S, axb.graph, axb.p("(0,3)"))
    assert component_multiset(w) == {p2: 2, p3: 1}
    d = word(doubled, "(0,p)", "(1,q)")
    assert component_multiset(d) == {0: 2}


def test_equivalent_words_share_multiset(axb):
    """Words folding to ∼-equivalent products have equal component multisets."""
    rng = random.Random(9)
    S = axb.S
    for _ in range(200):
        w = random_word(axb, rng, 4)
        sigma = list(range(len(w)))
        rng.shuffle(sigma)
        v = permute_word(S, axb.graph, w, sigma)
        a = axb.p(f"({rng.randint(0, 9)},1)")
        moved = make_word(S, axb.graph, [S.multiply(a, v.letters[0])] + list(v.letters[1:]))
        assert S.core_equivalent(fold(S, v), fold(S, w))
        assert len(v) == len(w)
        assert component_multiset(v) == component_multiset(w) == component_multiset(moved)

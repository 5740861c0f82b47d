import json
import math

import pytest

from genscale.coregraph import build_core_graph
from genscale.families import load_family
from genscale.oracles import brute_factorizations
from genscale.scale import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    NotFree,
    NotInSubsemigroup,
    NxSubsemigroup,
    ScaleUnavailable,
    check_conditions,
    check_freeness,
    default_samples,
    factor_in_nx,
    scale_value,
    transversal,
    transversal_class,
    verify_scale_axioms,
    zeta_partial,
)

# --- freeness ------------------------------------------------------------------


def test_freeness_examples():
    assert check_freeness([2, 3], 10**4).passed
    v = check_freeness([4, 6, 9])
    assert v.status == FAIL and v.witness["n"] == 36
    assert sorted(map(tuple, v.witness["factorizations"])) == [(4, 9), (6, 6)]
    v = check_freeness([2, 2])
    assert v.status == FAIL and "duplicate" in v.reason


@pytest.mark.parametrize("cards", [[], [1, 3], [2, math.inf]])
def test_freeness_degenerate(cards):
    assert check_freeness(cards).status == FAIL


def test_freeness_non_coprime_but_free():
    assert check_freeness([4, 6]).passed
    assert check_freeness([6, 10, 15]).passed
    assert not check_freeness([2, 4]).passed


def test_freeness_witness_is_genuine():
    for gens in ([4, 6, 9], [2, 3, 6], [12, 18, 8, 27]):
        v = check_freeness(gens)
        n = v.witness["n"]
        assert len(brute_factorizations(n, sorted(gens))) >= 2


# --- N^x ------------------------------------------------------------------------


def test_factor_in_nx_examples():
    nx = NxSubsemigroup([2, 3])
    assert sorted(factor_in_nx(12, nx)) == [2, 2, 3]
    assert factor_in_nx(1, nx) == []
    assert sorted(factor_in_nx(900, NxSubsemigroup([6, 10, 15]))) == [6, 10, 15]
    with pytest.raises(NotInSubsemigroup):
        factor_in_nx(5, nx)
    with pytest.raises(NotFree):
        factor_in_nx(36, NxSubsemigroup([4, 6, 9]))


def test_irreducibles_drop_products():
    assert NxSubsemigroup([2, 4, 3]).irreducibles() == (2, 3)
    with pytest.raises(ValueError):
        NxSubsemigroup([2, 2])


def test_factor_in_nx_matches_oracle():
    gens = [6, 10, 15]
    nx = NxSubsemigroup(gens)
    for n in range(1, 3001):
        brute = brute_factorizations(n, gens)
        if not brute:
            assert not nx.contains(n)
            continue
        assert len(brute) == 1
        assert tuple(sorted(factor_in_nx(n, nx))) == brute[0]


# --- zeta -------------------------------------------------------------------


def test_zeta_examples():
    z = zeta_partial(NxSubsemigroup([2]), 2.0, 2**20)
    assert z.euler_closed_form == 2.0 and z.abs_diff < 1e-6
    z = zeta_partial(NxSubsemigroup([2, 3]), 3.0, 10**6)
    assert z.euler_closed_form == pytest.approx(1.5, abs=1e-15) and z.abs_diff < 1e-6
    for beta in (0.5, 2.0, 7.0):
        assert zeta_partial(NxSubsemigroup([3, 5]), beta, 1).partial_sum == 1.0


def test_zeta_divergent():
    z = zeta_partial(NxSubsemigroup([2, 3]), 1.0, 1000)
    assert z.divergent and z.euler_closed_form is None and z.abs_diff is None


def test_zeta_converges_monotonically():
    nx = NxSubsemigroup([2, 3])
    diffs = [zeta_partial(nx, 2.5, c).abs_diff for c in (10, 100, 10**3, 10**4, 10**5)]
    assert diffs == sorted(diffs, reverse=True)


def test_zeta_non_free_has_no_euler_product():
    z = zeta_partial(NxSubsemigroup([4, 6, 9]), 3.0, 1000)
    assert z.euler_closed_form is None and not z.divergent


# --- conditions -----------------------------------------------------------------


def test_axb_report(axb5):
    r = axb5.report
    assert r.exists is True and not r.failed()
    assert sorted(r.scale_on_components.values()) == [2, 3, 5]
    data = json.loads(r.to_json())
    assert set(data) >= {"cond_i", "cond_ii", "cond_iii", "cond_iv", "scale_on_components", "exists"}


def test_ledrappier_fails_i(ledrappier):
    r = ledrappier.report
    assert r.failed() == ["i"] and r.exists is False
    assert "duplicate component cardinality 2" in r.cond_i.reason
    assert r.scale_on_components == {}


def test_gone_mad_fails_ii(gone_mad):
    r = gone_mad.report
    assert r.failed() == ["ii"]
    assert sorted(map(sorted, r.cond_ii.witness)) == [["v(0,2)", "v(1,1)"], ["w(0,3)", "w(1,1)"]]


def test_capped_graph_is_inconclusive():
    S = load_family({"kind": "AxB", "max_prime": 5})
    g = build_core_graph(S, 4)
    r = check_conditions(S, g)
    assert r.exists == INCONCLUSIVE
    assert {v.status for v in r.conditions().values()} == {INCONCLUSIVE}
    with pytest.raises(ScaleUnavailable):
        scale_value(S, g, r, S.parse("(0,2)"))


def test_samples_report_coverage(axb5):
    samples, coverage = default_samples(axb5.S, axb5.graph, depth=2)
    assert "of" in coverage and len(samples) >= 10 * 10


def test_free_monoid_as_graph_product():
    # two non-adjacent letters: one edge-free component of size 2
    G = load_family({"kind": "GraphProduct", "vertices": ["a", "b"], "edges": []})
    r = check_conditions(G, build_core_graph(G, 16))
    assert r.exists is True and sorted(r.scale_on_components.values()) == [2]


# --- the scale itself -------------------------------------------------------------


def test_scale_value_examples(axb, binary, doubled):
    assert scale_value(axb.S, axb.graph, axb.report, axb.p("(7,12)")) == 12
    assert scale_value(axb.S, axb.graph, axb.report, axb.p("(7,1)")) == 1
    assert scale_value(binary.S, binary.graph, binary.report, binary.p("010|g")) == 8
    assert scale_value(doubled.S, doubled.graph, doubled.report, doubled.p("(5,pq)")) == 16


def test_scale_refused_without_existence(ledrappier):
    with pytest.raises(ScaleUnavailable):
        scale_value(ledrappier.S, ledrappier.graph, ledrappier.report, ledrappier.p("(0,sigma)"))


def test_transversal_examples(axb, binary):
    members = transversal(axb.S, axb.graph, axb.report, 6)
    assert sorted(m.payload[0] % 6 for m in members) == list(range(6))
    assert transversal(axb.S, axb.graph, axb.report, 1) == [axb.S.unit]
    words = transversal(binary.S, binary.graph, binary.report, 4)
    assert sorted(binary.S.format(w) for w in words) == ["00|e", "01|e", "10|e", "11|e"]
    with pytest.raises(NotInSubsemigroup):
        transversal(axb.S, axb.graph, axb.report, 17)


def test_transversal_class_unique(axb, rng):
    S = axb.S
    members = transversal(S, axb.graph, axb.report, 12)
    for _ in range(50):
        s = S.element((rng.randrange(10**6), 12))
        assert len(transversal_class(S, members, s)) == 1


def test_axioms_axb(axb5):
    samples, _ = default_samples(axb5.S, axb5.graph, depth=2)
    check = verify_scale_axioms(axb5.S, axb5.graph, axb5.report, samples[:60])
    assert check.ok, check.failures[:3]
    assert all(v > 0 for v in check.checked.values())


def test_axiom_d_example(axb):
    assert scale_value(axb.S, axb.graph, axb.report, axb.p("(0,2)")) == 2
    assert axb.S.intersects(axb.p("(0,2)"), axb.p("(1,3)"))


def test_axioms_binary_and_doubled(binary, doubled):
    for setup in (binary, doubled):
        samples, _ = default_samples(setup.S, setup.graph, depth=2)
        check = verify_scale_axioms(setup.S, setup.graph, setup.report, samples, n_cap=16)
        assert check.ok, check.failures[:3]


def test_scale_invariance_under_core(axb, z2flip, rng):
    S = axb.S
    for _ in range(100):
        s = S.random_element(rng, 3)
        a = S.element((rng.randrange(50), 1))
        n = scale_value(S, axb.graph, axb.report, s)
        assert scale_value(S, axb.graph, axb.report, S.multiply(a, s)) == n
        assert scale_value(S, axb.graph, axb.report, S.multiply(s, a)) == n


def test_irreducibility_transfer(axb, rng):
    S = axb.S
    irr = set(axb.report.semigroup().irreducibles())
    for _ in range(300):
        s = S.random_element(rng, 2)
        n = scale_value(S, axb.graph, axb.report, s)
        assert (n in irr) == S.is_noncore_irreducible(s)


def test_pass_constants():
    assert PASS != FAIL != INCONCLUSIVE

"""Distribution monad: unit, pushforward, flatten, mixtures."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexion.distribution import (
    FiniteDistribution,
    boolean_subset,
    convex_combine,
    delta,
    flatten,
    map_delta,
    pushforward,
)
from convexion.errors import NotConvexVector, NotNormalized, UndefinedOnSupport
from convexion.semiring import BOOLEAN, RATIONAL

F = Fraction


# -- oracles: direct evaluation of the defining formulas --------------------


def pushforward_oracle(f, p):
    out = {}
    for y in {f[x] for x in p.support()}:
        out[y] = sum((p.weight(x) for x in p.support() if f[x] == y), F(0))
    return out


def flatten_oracle(nested):
    out = {}
    for q in nested.support():
        for x in q.support():
            out[x] = out.get(x, F(0)) + nested.weight(q) * q.weight(x)
    return {x: w for x, w in out.items() if w != 0}


def mixture_oracle(alpha, ps):
    out = {}
    for a, p in zip(alpha, ps):
        for x in p.support():
            out[x] = out.get(x, F(0)) + a * p.weight(x)
    return {x: w for x, w in out.items() if w != 0}


# -- strategies --------------------------------------------------------------

ELEMENTS = "abcde"


@st.composite
def rational_dists(draw, elements=ELEMENTS, max_den=6):
    els = draw(
        st.lists(st.sampled_from(elements), min_size=1, max_size=len(elements), unique=True)
    )
    weights = [draw(st.integers(min_value=0, max_value=max_den)) for _ in els]
    total = sum(weights)
    if total == 0:
        weights[0] = 1
        total = 1
    return FiniteDistribution(
        {e: F(w, total) for e, w in zip(els, weights)}, RATIONAL
    )


# -- constructor invariants --------------------------------------------------


def test_zero_weights_never_stored():
    p = FiniteDistribution({"a": F(1), "b": F(0)})
    assert p.support() == {"a"}
    assert p.weight("b") == 0


def test_unnormalized_rejected():
    with pytest.raises(NotNormalized):
        FiniteDistribution({"a": F(1, 2)})


def test_float_weights_rejected():
    from convexion.errors import ParseError

    with pytest.raises(ParseError):
        FiniteDistribution({"a": 0.5, "b": 0.5})


def test_duplicate_keys_cannot_happen_but_merge_path_exists():
    # dict input cannot carry duplicates; the merge branch guards items().
    p = FiniteDistribution({"a": F(1, 2), "b": F(1, 2)})
    assert p.weight("a") == F(1, 2)


# -- delta -------------------------------------------------------------------


def test_delta_point_mass():
    d = delta("a")
    assert d.as_dict() == {"a": F(1)}
    assert d.support_size == 1


def test_pushforward_identity_on_delta():
    d = delta("a")
    assert pushforward({"a": "a"}, d) == d


# -- pushforward -------------------------------------------------------------


def test_pushforward_collapse():
    p = FiniteDistribution({"a": F(1, 2), "c": F(1, 2)})
    assert pushforward(lambda _: "b", p) == delta("b")


def test_pushforward_swap_matches_fibre_sum_oracle():
    p = FiniteDistribution({"a": F(1, 3), "b": F(2, 3)})
    swap = {"a": "b", "b": "a"}
    got = pushforward(swap, p)
    assert got.as_dict() == pushforward_oracle(swap, p)
    assert got == FiniteDistribution({"a": F(2, 3), "b": F(1, 3)})


@given(rational_dists())
def test_pushforward_identity(p):
    assert pushforward(lambda x: x, p) == p


def test_pushforward_undefined_on_support():
    p = FiniteDistribution({"a": F(1, 2), "b": F(1, 2)})
    with pytest.raises(UndefinedOnSupport):
        pushforward({"a": "z"}, p)


@given(rational_dists())
def test_pushforward_functorial(p):
    f = {e: "xy"[i % 2] for i, e in enumerate(ELEMENTS)}
    g = {"x": "u", "y": "u"}
    composed = {e: g[f[e]] for e in ELEMENTS}
    assert pushforward(composed, p) == pushforward(g, pushforward(f, p))


# -- flatten -----------------------------------------------------------------


def test_flatten_of_delta_of_distribution():
    q = FiniteDistribution({"a": F(1, 3), "b": F(2, 3)})
    assert flatten(delta(q)) == q


def test_flatten_worked_example_matches_oracle():
    inner1 = FiniteDistribution({"a": F(1, 2), "b": F(1, 2)})
    inner2 = delta("a")
    nested = FiniteDistribution({inner1: F(1, 2), inner2: F(1, 2)})
    got = flatten(nested)
    assert got.as_dict() == flatten_oracle(nested)
    assert got == FiniteDistribution({"a": F(3, 4), "b": F(1, 4)})


@given(rational_dists())
def test_flatten_left_unit(q):
    assert flatten(delta(q)) == q


@given(rational_dists())
def test_flatten_right_unit(p):
    assert flatten(map_delta(p)) == p


def merged(pairs):
    out = {}
    for d, w in pairs:
        out[d] = out.get(d, F(0)) + w
    return FiniteDistribution(out)


@given(st.data())
def test_flatten_associativity(data):
    inner = [data.draw(rational_dists()) for _ in range(3)]
    mid1 = merged([(inner[0], F(1, 2)), (inner[1], F(1, 2))])
    mid2 = merged([(inner[1], F(1, 3)), (inner[2], F(2, 3))])
    triple = merged([(mid1, F(1, 4)), (mid2, F(3, 4))])
    lhs = flatten(flatten(triple))
    rhs = flatten(pushforward(lambda mid: flatten(mid), triple))
    assert lhs == rhs


# -- convex_combine ----------------------------------------------------------


def test_combine_single():
    p = FiniteDistribution({"a": F(1, 2), "b": F(1, 2)})
    assert convex_combine([F(1)], [p]) == p


def test_combine_two_deltas():
    got = convex_combine([F(1, 2), F(1, 2)], [delta("a"), delta("b")])
    assert got == FiniteDistribution({"a": F(1, 2), "b": F(1, 2)})


def test_combine_weighted_sum_matches_oracle():
    p1 = FiniteDistribution({"a": F(1, 2), "b": F(1, 2)})
    p2 = delta("b")
    alpha = [F(1, 3), F(2, 3)]
    got = convex_combine(alpha, [p1, p2])
    assert got.as_dict() == mixture_oracle(alpha, [p1, p2])
    assert got == FiniteDistribution({"a": F(1, 6), "b": F(5, 6)})


def test_combine_rejects_nonconvex_vector():
    with pytest.raises(NotConvexVector):
        convex_combine([F(1, 2), F(1, 3)], [delta("a"), delta("b")])
    with pytest.raises(NotConvexVector):
        convex_combine([F(1)], [delta("a"), delta("b")])


@settings(max_examples=50)
@given(st.data())
def test_operations_preserve_normalization(data):
    ps = [data.draw(rational_dists()) for _ in range(2)]
    mixed = convex_combine([F(1, 4), F(3, 4)], ps)
    assert sum(w for _, w in mixed.items()) == 1
    pushed = pushforward(lambda x: "z", mixed)
    assert sum(w for _, w in pushed.items()) == 1


# -- Boolean semiring --------------------------------------------------------


def test_boolean_distributions_are_nonempty_subsets():
    s = boolean_subset(["a", "b"])
    assert s.support() == {"a", "b"}
    assert all(w is True for _, w in s.items())
    with pytest.raises(NotNormalized):
        FiniteDistribution({}, BOOLEAN)


def test_boolean_flatten_is_union():
    s1 = boolean_subset(["a", "b"])
    s2 = boolean_subset(["b", "c"])
    nested = FiniteDistribution({s1: True, s2: True}, BOOLEAN)
    assert flatten(nested) == boolean_subset(["a", "b", "c"])


def test_boolean_combine_is_union_of_selected():
    s1 = boolean_subset(["a"])
    s2 = boolean_subset(["b"])
    assert convex_combine([True, True], [s1, s2]) == boolean_subset(["a", "b"])
    # A zero coefficient drops its summand.
    assert convex_combine([True, False], [s1, s2]) == s1


def test_is_convex_vector_predicate():
    from convexion.distribution import is_convex_vector

    assert is_convex_vector([F(1, 3), F(2, 3)])
    assert not is_convex_vector([F(1, 2), F(1, 3)])
    assert is_convex_vector([True, False], BOOLEAN)
    assert not is_convex_vector([False, False], BOOLEAN)


def test_boolean_pushforward_is_image():
    s = boolean_subset(["a", "b", "c"])
    assert pushforward({"a": "x", "b": "x", "c": "y"}, s) == boolean_subset(
        ["x", "y"]
    )

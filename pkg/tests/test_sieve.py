from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat237.models import component_group, fixture
from fermat237.sieve import (
    C5_REDUCTIONS,
    SieveConstraint,
    SieveState,
    c5_chain_steps,
    combine,
    combine_all,
    component_constraint,
    fixture_constraint,
    format_constraint,
    linear_constraint,
    parse_constraint_file,
    run_c5_chain,
)


@st.composite
def constraints(draw):
    m = draw(st.tuples(*[st.sampled_from([1, 2, 3, 4, 6]) for _ in range(3)]))
    cells = list(product(*[range(k) for k in m]))
    allowed = draw(st.sets(st.sampled_from(cells)))
    return SieveConstraint(m, frozenset(allowed))


def _members(state: SieveState, box=(12, 12, 12)):
    return {t for t in product(*map(range, box))
            if tuple(a % m for a, m in zip(t, state.modulus)) in state.survivors}


@settings(max_examples=60, deadline=None)
@given(constraints(), constraints(), constraints())
def test_combination_order_irrelevant(a, b, c):
    s1 = combine_all([a, b, c])
    s2 = combine_all([c, a, b])
    assert s1 == s2


@settings(max_examples=60, deadline=None)
@given(constraints(), constraints())
def test_combine_is_intersection(a, b):
    sa, sb = combine_all([a]), combine_all([b])
    assert _members(combine_all([a, b])) == _members(sa) & _members(sb)


def test_reduce_requires_divisor():
    s = combine_all([linear_constraint([1, 0, 0], [0], 4)])
    assert s.reduce((2, 1, 1)) == {(0, 0, 0)}
    with pytest.raises(ValueError):
        s.reduce((3, 1, 1))


def test_linear_constraint_vector_coefficients():
    c = linear_constraint([(1, 0), (0, 1), (1, 1)], [(0, 0)], 2)
    assert c.allowed == {(0, 0, 0), (1, 1, 1)}


def test_parse_formats():
    compact = parse_constraint_file("mod 4 4 4\n021\n220\n")
    commas = parse_constraint_file("# provenance: test\nmod 4 4 4\n0,2,1\n2 2 0\n")
    assert compact.allowed == commas.allowed == {(0, 2, 1), (2, 2, 0)}
    assert commas.provenance == "test"
    lin = parse_constraint_file("linear 1 0 3 mod 7 targets 1")
    assert lin == linear_constraint([1, 0, 3], [1], 7)
    assert parse_constraint_file(format_constraint(commas)) == commas
    with pytest.raises(ValueError):
        parse_constraint_file("021\n")


def test_component_constraints():
    c2 = component_constraint(2)
    assert c2.modulus == (4, 4, 4) and len(c2.allowed) == 12
    c3 = component_constraint(3)
    assert c3.modulus == (7, 7, 7)


@pytest.mark.parametrize("auto", [[[0, 1], [3, 0]], [[1, 1], [0, 1]], [[3, 2], [1, 1]]])
def test_component_constraint_ignores_choice_of_isomorphism(auto):
    data = fixture("c5_p2")
    group = component_group(data)
    info = C5_REDUCTIONS[2]
    base = data.unit(info["points"][0])

    def image(label):
        v = group.element([a - b for a, b in zip(data.unit(label), base)])
        return tuple(sum(auto[i][j] * v[j] for j in range(2)) % 4 for i in range(2))

    moved = linear_constraint(
        [image(x) for x in info["points"][1:]], [image(x) for x in info["allowed"]], 4
    )
    assert moved.allowed == component_constraint(2).allowed


def test_c5_chain():
    steps = dict(c5_chain_steps())
    assert steps["23"].survivors == {(0, 0, 0), (0, 0, 1), (0, 2, 1), (2, 2, 0)}
    after97 = steps["97"].reduce((14, 14, 14))
    assert len(after97) == 4
    for n1, n2, n3 in after97:
        assert (n1 + 3 * n3) % 7 == 1
        assert n1 % 2 == 0 and n2 % 2 == 0
    assert after97 == fixture_constraint("sieve_p97").allowed
    assert run_c5_chain().is_empty()


def test_condition_at_2_matches_printed_form():
    printed = linear_constraint([(0, 3), (0, 3), (1, 2)], [(0, 0), (1, 0), (1, 2)], 4)
    assert component_constraint(2).allowed == printed.allowed


def test_condition_at_3_matches_printed_form():
    printed = linear_constraint([1, 0, 3], [1], 7)
    assert len(printed.allowed) == 49
    assert component_constraint(3).allowed == printed.allowed


def test_trivial_constraints():
    assert combine_all([]) == SieveState.full()
    assert len(linear_constraint([0, 0, 0], [0], 5).allowed) == 125


def test_vector_condition_by_enumeration():
    c = linear_constraint([(0, 3), (0, 3), (1, 2)], [(0, 0), (1, 0), (1, 2)], 4)
    direct = {
        n for n in product(range(4), repeat=3)
        if (n[2] % 4, (3 * n[0] + 3 * n[1] + 2 * n[2]) % 4) in {(0, 0), (1, 0), (1, 2)}
    }
    assert c.allowed == direct

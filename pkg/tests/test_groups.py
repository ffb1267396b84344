import pytest
from hypothesis import given
from hypothesis import strategies as st

from helly_ecc.errors import NotHellyError
from helly_ecc.generators import gen, path
from helly_ecc.graph import closed_neighborhood
from helly_ecc.groups import (
    Constraint,
    Group,
    GroupSystem,
    expand_and_merge,
    merge_overlapping,
    singleton_system,
)


def _vertex_balls(n: int) -> GroupSystem:
    universe = [Constraint(x, 0) for x in range(n)]
    return singleton_system(range(n), universe, [frozenset((x,)) for x in range(n)])


def test_disjoint_sets_stay_apart():
    sys = GroupSystem(
        (Group((0,), frozenset({0})), Group((2,), frozenset({1}))),
        (Constraint(0, 0), Constraint(2, 0)),
    )
    out = expand_and_merge(sys, [[0, 1], [2]])
    assert [grp.members for grp in out.groups] == [(0, 1), (2,)]
    assert [grp.constraints for grp in out.groups] == [frozenset({0}), frozenset({1})]
    assert out.step == 1


def test_overlap_forces_merge():
    sys = GroupSystem(
        (Group((0,), frozenset({0})), Group((2,), frozenset({1}))),
        (Constraint(0, 0), Constraint(2, 0)),
    )
    out = expand_and_merge(sys, [[0, 1], [1, 2]])
    assert len(out.groups) == 1
    assert out.groups[0].members == (1,)
    assert out.groups[0].constraints == frozenset({0, 1})


def test_p5_first_step_by_hand():
    g = path(5)
    sys = _vertex_balls(5)
    grown = [closed_neighborhood(g, grp.members) for grp in sys.groups]
    out = expand_and_merge(sys, grown, g)
    # pivot 1 takes N[0], N[1], N[2]; then pivot 3 takes N[3], N[4]
    assert [grp.members for grp in out.groups] == [(1,), (3, 4)]
    assert [sorted(grp.constraints) for grp in out.groups] == [[0, 1, 2], [3, 4]]
    out.check(g)


def test_empty_growth_names_group():
    sys = _vertex_balls(2)
    with pytest.raises(NotHellyError, match="group 1") as info:
        expand_and_merge(sys, [[0, 1], []])
    assert info.value.stage == "expand_and_merge"


def test_wrong_arity_rejected():
    with pytest.raises(ValueError):
        expand_and_merge(_vertex_balls(2), [[0]])


def test_check_detects_broken_representation():
    g = path(3)
    bad = GroupSystem((Group((0, 1), frozenset({0})),), (Constraint(0, 0),), 0)
    with pytest.raises(AssertionError, match="ball intersection"):
        bad.check(g)
    with pytest.raises(AssertionError, match="not covered"):
        GroupSystem((Group((0,), frozenset()),), (Constraint(0, 0),)).check()


def test_debug_mode_converts_to_not_helly():
    # on C4 the vertex balls grow into sets that are not ball intersections
    g = gen("cycle(4)").graph
    sys = _vertex_balls(4)
    with pytest.raises(NotHellyError):
        for _ in range(2):
            grown = [closed_neighborhood(g, grp.members) for grp in sys.groups]
            sys = expand_and_merge(sys, grown, g)


def test_constraint_radius():
    assert Constraint(3, 5, -1).radius(2) == 3
    assert Constraint(3, 0).radius(4) == 4


@given(st.lists(st.sets(st.integers(0, 15), min_size=1), min_size=1, max_size=12))
def test_merge_overlapping_properties(sets):
    sets = [sorted(s) for s in sets]
    out = merge_overlapping(sets)
    used = sorted(t for _, chosen in out for t in chosen)
    assert used == list(range(len(sets)))
    seen: set[int] = set()
    for inter, chosen in out:
        assert inter
        assert not seen & set(inter)
        seen |= set(inter)
        expected = set.intersection(*(set(sets[t]) for t in chosen))
        assert set(inter) == expected


def test_pivot_prefers_max_count_then_smallest_id():
    out = merge_overlapping([[5, 9], [9], [5, 9], [2]])
    # 9 is in three sets, so it is the first pivot
    assert out[0] == ((9,), [0, 1, 2])
    assert out[1] == ((2,), [3])


@pytest.mark.parametrize("spec", ["king-grid(4,5)", "block-graph(14)", "cone(cycle(7))", "random-tree(15)"])
def test_invariants_hold_each_step(spec):
    g = gen(spec).graph
    sys = _vertex_balls(g.n)
    sys.check(g)
    while len(sys.groups) > 1:
        grown = [closed_neighborhood(g, grp.members) for grp in sys.groups]
        sys = expand_and_merge(sys, grown, g)
        sys.check(g)

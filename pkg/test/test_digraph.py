import json

import numpy as np
import pytest

from conftest import all_digraphs
from digraphshapley import (CapacityError, MembershipError, PlayerCountError, PlayerRangeError, SelfLoopError,
                            ValidationError, coalition, complete_digraph, cycle_digraph, dominates, empty_digraph,
                            load_digraph, make_digraph, path_digraph, players_of, restrict, successors, undominated)


def subsets(mask):
    """Yields every submask of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def test_make_digraph_cycle():
    g = make_digraph(3, [(1, 2), (2, 3), (3, 1)])
    assert g.n == 3
    assert g.edges() == [(1, 2), (2, 3), (3, 1)]
    assert g == cycle_digraph(3)


def test_make_digraph_single_player():
    g = make_digraph(1, [])
    assert g.edges() == []
    assert g.undominated(1) == 1


def test_duplicate_edges_collapse():
    g = make_digraph(3, [(1, 2), (1, 2), (2, 3)])
    assert g.edges() == [(1, 2), (2, 3)]


@pytest.mark.parametrize("n, edges, error", [
    (3, [(1, 1)], SelfLoopError),
    (3, [(1, 4)], PlayerRangeError),
    (3, [(0, 2)], PlayerRangeError),
    (0, [], PlayerCountError),
    (21, [], CapacityError),
    (3, [(1, 2, 3)], ValidationError),
])
def test_make_digraph_errors(n, edges, error):
    with pytest.raises(error):
        make_digraph(n, edges)


def test_errors_are_distinct():
    assert not issubclass(SelfLoopError, PlayerRangeError)
    assert not issubclass(PlayerRangeError, SelfLoopError)
    assert issubclass(CapacityError, ValueError)


def test_restrict_keeps_labels():
    g = cycle_digraph(3)
    h = restrict(g, {1, 2})
    assert h.edges() == [(1, 2)]
    assert h.player_ids == (1, 2)
    assert restrict(g, 0).edges() == []


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cycle_minus_one_player_is_a_path(n):
    g = cycle_digraph(n)
    for k in range(1, n + 1):
        h = g.restrict(g.players & ~coalition([k]))
        # the path k+1 -> k+2 -> ... -> k-1
        expected = [((k + t - 1) % n + 1, (k + t) % n + 1) for t in range(1, n - 1)]
        assert h.edges() == sorted(expected)


def test_successors():
    assert successors(cycle_digraph(3), 0b111, 1) == coalition([2, 3])
    path = path_digraph(3)
    assert successors(path, 0b111, 2) == coalition([3])
    assert successors(path, {1, 3}, 1) == 0
    assert path.successors_closed(0b111, 2) == coalition([2, 3])
    assert path.predecessors(0b111, 3) == coalition([1, 2])


def test_successors_requires_membership():
    with pytest.raises(MembershipError):
        successors(path_digraph(3), {1, 3}, 2)


def test_dominates():
    n = 4
    g = cycle_digraph(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                assert not dominates(g, g.players, i, j)
    path = path_digraph(3)
    assert dominates(path, 0b111, 1, 3)
    assert not dominates(path, 0b111, 3, 1)
    two_cycle = make_digraph(2, [(1, 2), (2, 1)])
    assert not dominates(two_cycle, 0b11, 1, 2)
    with pytest.raises(ValidationError):
        dominates(path, 0b111, 2, 2)


def test_undominated():
    assert undominated(cycle_digraph(5), 0b11111) == 0b11111
    assert undominated(path_digraph(3), 0b111) == coalition([1])
    g = empty_digraph(4)
    for S in range(1, 16):
        assert undominated(g, S) == S
    with pytest.raises(MembershipError):
        undominated(g, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_undominated_is_never_empty(n):
    for g in all_digraphs(n):
        for S in range(1, 1 << n):
            assert undominated(g, S) != 0


@pytest.mark.parametrize("n", [2, 3])
def test_dominance_invariants(n):
    for g in all_digraphs(n):
        for S in range(1, 1 << n):
            members = players_of(S)
            components = g.strongly_connected_components(S)
            component_of = {p: c for c in components for p in players_of(c)}
            for i in members:
                for j in members:
                    if i == j:
                        continue
                    # antisymmetry
                    assert not (g.dominates(S, i, j) and g.dominates(S, j, i))
                    if component_of[i] == component_of[j]:
                        assert not g.dominates(S, i, j)
                # restriction can only lose reachability
                for T in subsets(S):
                    if (T >> (i - 1)) & 1:
                        assert g.successors(T, i) & ~g.successors(S, i) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_undominated_is_union_of_source_components(n):
    for g in all_digraphs(n):
        for S in range(1, 1 << n):
            union = 0
            for component in g.source_components(S):
                union |= component
            assert g.undominated(S) == union


def test_strongly_connected_components():
    g = make_digraph(5, [(1, 2), (2, 1), (2, 3), (3, 4), (4, 3), (5, 4)])
    assert g.strongly_connected_components() == [coalition([1, 2]), coalition([3, 4]), coalition([5])]
    assert g.source_components() == [coalition([1, 2]), coalition([5])]


def test_is_single_cycle():
    assert cycle_digraph(2).is_single_cycle()
    assert cycle_digraph(7).is_single_cycle()
    assert make_digraph(3, [(1, 3), (3, 2), (2, 1)]).is_single_cycle()
    assert not path_digraph(3).is_single_cycle()
    assert not complete_digraph(3).is_single_cycle()
    assert not make_digraph(4, [(1, 2), (2, 1), (3, 4), (4, 3)]).is_single_cycle()
    assert not empty_digraph(1).is_single_cycle()


def test_degrees():
    g = complete_digraph(4)
    assert g.out_degree(1) == 3
    assert g.in_degree(4) == 3


def test_load_digraph(tmp_path):
    path = tmp_path / "cycle3.json"
    path.write_text(json.dumps({"n": 3, "edges": [[3, 1], [1, 2], [2, 3]]}))
    g = load_digraph(str(path))
    assert g == cycle_digraph(3)
    assert load_digraph(g.to_json()) == g
    assert load_digraph('{"n": 2, "edges": [[1, 2]]}') == path_digraph(2)


@pytest.mark.parametrize("text, field", [
    ('{"edges": []}', "n"),
    ('{"n": 3, "edges": [[1, 2, 3]]}', "edges[0]"),
    ('{"n": 3, "edges": [[1, 1]]}', "edges[0]"),
    ('{"n": 3, "edges": {"1": 2}}', "edges"),
    ('{"n": 3, "edges": [[1, 2]', "graph"),
])
def test_load_digraph_errors_name_the_field(text, field):
    with pytest.raises(ValidationError) as info:
        load_digraph(text)
    assert info.value.field == field


def test_dominance_invariants_on_random_digraphs(corpus):
    rng = np.random.default_rng(7)
    for g, _ in corpus:
        full = g.players
        sample = {full} | {int(S) for S in rng.integers(1, full + 1, size=12)}
        for S in sample:
            members = players_of(S)
            component_of = {p: c for c in g.strongly_connected_components(S) for p in players_of(c)}
            for i in members:
                for j in members:
                    if i >= j:
                        continue
                    forward, backward = g.dominates(S, i, j), g.dominates(S, j, i)
                    assert not (forward and backward)
                    if component_of[i] == component_of[j]:
                        assert not forward and not backward
            assert g.undominated(S) != 0

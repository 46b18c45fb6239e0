import json
from itertools import permutations

import numpy as np
import pytest

from digraphshapley import (DimensionMismatchError, EmptyGameError, ValidationError, coalition, linear_combination,
                            load_game, make_explicit, make_power, make_symmetric, marginal_contribution, value)
from digraphshapley.coalition import parse_coalition_key


def relabel(S, perm):
    """Image of the coalition mask S under the player relabelling p -> perm[p-1]."""
    image = 0
    for p in range(1, len(perm) + 1):
        if (S >> (p - 1)) & 1:
            image |= 1 << (perm[p - 1] - 1)
    return image


def test_power_value():
    assert value(make_power(3, 2), {1, 3}) == 4
    assert make_power(4, 3).grand_value() == 64
    v = make_power(3, 1)
    for S in range(8):
        assert v.value(S) == bin(S).count("1")


def test_power_zero_exponent_has_zero_empty_coalition():
    v = make_power(3, 0)
    assert v.value(0) == 0
    for S in range(1, 8):
        assert v.value(S) == 1
    assert v.table().tolist() == [0, 1, 1, 1, 1, 1, 1, 1]


@pytest.mark.parametrize("v", [make_power(3, 0), make_power(3, 5), make_symmetric(3, [0, 1, 4, 9]),
                               make_explicit(2, [0, 1, 2, 5])])
def test_empty_coalition_is_worth_nothing(v):
    assert v.value(0) == 0
    assert v.table()[0] == 0


def test_symmetric_value():
    v = make_symmetric(3, [0, 1, 4, 9])
    assert v.value({1, 2, 3}) == 9
    null = make_symmetric(3, [0, 0, 0, 0])
    assert not null.table().any()


def test_explicit_value_indexed_by_mask():
    v = make_explicit(2, [0, 1, 2, 5])
    assert v.value({1}) == 1
    assert v.value({2}) == 2
    assert v.value({1, 2}) == 5


@pytest.mark.parametrize("build, error", [
    (lambda: make_explicit(2, [1, 0, 0, 0]), EmptyGameError),
    (lambda: make_explicit(2, [0, 1, 2]), DimensionMismatchError),
    (lambda: make_symmetric(3, [1, 1, 1, 1]), EmptyGameError),
    (lambda: make_symmetric(3, [0, 1, 4]), DimensionMismatchError),
    (lambda: make_explicit(1, [0, float("nan")]), ValidationError),
    (lambda: make_power(3, -1), ValidationError),
    (lambda: make_power(3, 1.5), ValidationError),
    (lambda: make_power(20, 300), ValidationError),
    (lambda: make_power(3, 700), ValidationError),
])
def test_construction_errors(build, error):
    with pytest.raises(error):
        build()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_power_matches_symmetric(n, k):
    f = [0] + [s ** k for s in range(1, n + 1)]
    np.testing.assert_array_equal(make_power(n, k).table(), make_symmetric(n, f).table())
    np.testing.assert_array_equal(make_power(n, k).as_symmetric(), f)


def test_symmetric_3_matches_power_2():
    a = make_symmetric(3, [0, 1, 4, 9])
    b = make_power(3, 2)
    for S in range(8):
        assert a.value(S) == b.value(S)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetric_games_are_invariant_under_relabelling(n):
    rng = np.random.default_rng(n)
    f = np.concatenate([[0.], rng.uniform(-10, 10, size=n)])
    v = make_symmetric(n, f)
    for perm in permutations(range(1, n + 1)):
        for S in range(1 << n):
            assert v.value(relabel(S, perm)) == v.value(S)


def test_marginal_contribution():
    v = make_power(3, 2)
    assert marginal_contribution(v, coalition([1, 3]), 2) == 9 - 4
    assert marginal_contribution(v, 0, 1) == 1


def test_linear_combination():
    rng = np.random.default_rng(7)
    v = make_explicit(3, np.concatenate([[0.], rng.normal(size=7)]))
    w = make_power(3, 2)
    u = linear_combination(2., v, -3., w)
    for S in range(8):
        assert u.value(S) == pytest.approx(2. * v.value(S) - 3. * w.value(S))


def test_integer_valued():
    assert make_power(4, 3).is_integer_valued()
    assert make_explicit(2, [0, 1, 2, 5]).is_integer_valued()
    assert not make_symmetric(2, [0, .5, 1]).is_integer_valued()
    assert make_power(3, 40).exact_values()[7] == 3 ** 40


def test_load_game_formats(tmp_path):
    assert load_game('{"type":"power","n":3,"k":2}').value(0b101) == 4
    assert load_game({"type": "symmetric", "n": 3, "f": [0, 1, 4, 9]}).value(0b111) == 9
    path = tmp_path / "game.json"
    path.write_text(json.dumps({"type": "explicit", "n": 2, "values": {"": 0, "1": 1, "2": 2, "1,2": 5}}))
    v = load_game(str(path), n=2)
    assert v.table().tolist() == [0, 1, 2, 5]
    # the empty coalition may be omitted
    w = load_game({"type": "explicit", "n": 2, "values": {"1": 1, "2": 2, "1,2": 5}})
    assert w.table().tolist() == [0, 1, 2, 5]


@pytest.mark.parametrize("v", [make_power(3, 2), make_symmetric(3, [0, 1, 4, 9]), make_explicit(2, [0, 1, 2, 5])])
def test_to_json_loads_back(v):
    np.testing.assert_array_equal(load_game(v.to_json()).table(), v.table())


@pytest.mark.parametrize("data, field", [
    ({"type": "explicit", "n": 2, "values": {"1": 1, "2": 2}}, "values"),
    ({"type": "explicit", "n": 2, "values": {"2,1": 1, "1": 1, "2": 2}}, "values"),
    ({"type": "explicit", "n": 2, "values": {"1": 1, "2": 2, "1,2": 5, "3": 1}}, "values"),
    ({"type": "explicit", "n": 2, "values": {"": 1, "1": 1, "2": 2, "1,2": 5}}, "values"),
    ({"type": "power", "n": 3}, "k"),
    ({"type": "cubic", "n": 3}, "type"),
    ({"type": "power", "k": 2}, "n"),
    ({"type": "symmetric", "n": 3, "f": [0, 1, "x", 9]}, "f[2]"),
])
def test_load_game_errors_name_the_field(data, field):
    with pytest.raises(ValidationError) as info:
        load_game(data)
    assert info.value.field == field


def test_load_game_checks_player_count():
    with pytest.raises(DimensionMismatchError):
        load_game({"type": "power", "n": 3, "k": 2}, n=4)


def test_parse_coalition_key():
    assert parse_coalition_key("", 3) == 0
    assert parse_coalition_key("1,3", 3) == 0b101
    assert parse_coalition_key(" 2 ", 3) == 0b010
    with pytest.raises(ValidationError):
        parse_coalition_key("3,1", 3)
    with pytest.raises(ValidationError):
        parse_coalition_key("1,1", 3)


def test_power_exponent_limited_by_double_range():
    assert make_power(3, 646).grand_value() == float(3 ** 646)
    with pytest.raises(ValidationError) as info:
        make_power(3, 647)
    assert info.value.field == "k"
    # 1**k never grows
    assert make_power(1, 10 ** 6).grand_value() == 1

import itertools
import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import space
from src.errors import GuardRefusal, PreconditionError
from src.katetov import (_insertion_row, build_approximant, compose_isometries,
                         embed_one_point_extension, homogeneity_check, injectivity_check,
                         invert_isometry, is_katetov, iso_group, kappa_extend, point_function,
                         push_forward, random_katetov, realize_one_point, sup_distance)
from src.metric_core import is_isometric_embedding, random_grid_space, uniform_space, validate_space
from src.models.katetov_function import KatetovFunction
from src.models.space import FiniteMetricSpace


def one_point(q=2):
    return FiniteMetricSpace(('a',), q, ((0,),))


def test_is_katetov_examples(pair_q4):
    assert is_katetov(pair_q4, ('a',), (3,)).ok
    check = is_katetov(pair_q4, ('a', 'b'), (0, 1))
    assert not check.ok
    assert check.witness == ('a', 'b') and check.reason == 'lower'
    assert is_katetov(pair_q4, ('a', 'b'), (1, 1)).ok
    assert is_katetov(pair_q4, ('a', 'b'), (0, 3)).reason == 'lipschitz'


def test_kappa_extend_examples(pair_q4):
    g = kappa_extend(pair_q4, KatetovFunction(pair_q4, ('a',), (1,)))
    assert g.values == (1, 3)
    wide = space('ab', 4, [[0, 3], [3, 0]])
    assert kappa_extend(wide, KatetovFunction(wide, ('a',), (3,))).value('b') == 4


def test_kappa_extend_total_is_identity(scalene):
    f = KatetovFunction(scalene, scalene.points, (1, 1, 2))
    assert kappa_extend(scalene, f).values == f.values


def test_kappa_extend_empty_support_is_constant(scalene):
    g = kappa_extend(scalene, KatetovFunction(scalene, (), ()))
    assert g.values == (4, 4, 4)


def test_kappa_extend_rejects_non_katetov(pair_q4):
    with pytest.raises(PreconditionError):
        kappa_extend(pair_q4, KatetovFunction(pair_q4, ('a', 'b'), (0, 1)))


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 6), q=st.integers(1, 10), seed=st.integers(0, 5000), data=st.data())
def test_kappa_extend_restricts_and_is_katetov(n, q, seed, data):
    X = random_grid_space(n, q, seed)
    rng = np.random.default_rng(seed)
    support = data.draw(st.lists(st.sampled_from(X.points), unique=True, max_size=n))
    f = random_katetov(X, rng, support)
    g = kappa_extend(X, f)
    assert is_katetov(X, g.support, g.values).ok
    for y in f.support:
        assert g.value(y) == f.value(y)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 6), q=st.integers(1, 10), seed=st.integers(0, 5000), data=st.data())
def test_kappa_extend_is_monotone_in_support(n, q, seed, data):
    X = random_grid_space(n, q, seed)
    rng = np.random.default_rng(seed)
    wide = random_katetov(X, rng)
    narrow = data.draw(st.lists(st.sampled_from(X.points), unique=True, max_size=n))
    restricted = KatetovFunction(X, tuple(narrow), tuple(wide.value(y) for y in narrow))
    small, large = kappa_extend(X, restricted), kappa_extend(X, wide)
    assert all(a >= b for a, b in zip(small.values, large.values))


def test_point_function(pair_q4):
    h = point_function(pair_q4, 'a')
    assert h.values == (0, 2)
    assert kappa_extend(pair_q4, KatetovFunction(pair_q4, ('a',), (0,))) == h


def test_sup_distance(pair_q4):
    f = KatetovFunction(pair_q4, ('a', 'b'), (1, 3))
    g = KatetovFunction(pair_q4, ('a', 'b'), (0, 2))
    assert sup_distance(f, f) == 0
    assert sup_distance(f, g) == 1
    for x in pair_q4.points:
        assert sup_distance(f, point_function(pair_q4, x)) == f.value(x)


def test_sup_distance_needs_total_functions(pair_q4):
    with pytest.raises(PreconditionError):
        sup_distance(KatetovFunction(pair_q4, ('a',), (1,)), point_function(pair_q4, 'a'))


def test_realize_duplicate_point_is_flagged(pair_q4):
    result = realize_one_point(pair_q4, point_function(pair_q4, 'a'))
    assert result.identified == ('a',)
    assert result.space.pseudometric
    assert result.space.d('p', 'a') == 0


def test_realize_midpoint(pair_q4):
    result = realize_one_point(pair_q4, KatetovFunction(pair_q4, ('a', 'b'), (1, 1)))
    assert result.space.points == ('a', 'b', 'p')
    assert result.identified == ()
    assert validate_space(result.space).ok


def test_realize_constant_q(scalene):
    result = realize_one_point(scalene, KatetovFunction(scalene, scalene.points, (4, 4, 4)))
    assert validate_space(result.space).ok


def test_injectivity_on_single_point():
    report = injectivity_check(one_point(), 1)
    assert report.checked == 3
    assert [f.values for f in report.unrealized] == [(1,), (2,)]


def test_injectivity_realizes_own_rows(scalene):
    report = injectivity_check(scalene, 2)
    rows = {(f.support, f.values) for f in report.unrealized}
    for x, y in itertools.combinations(scalene.points, 2):
        for z in scalene.points:
            assert ((x, y), (scalene.d(z, x), scalene.d(z, y))) not in rows


def test_approximant_from_one_point_closes():
    result = build_approximant(one_point(), 1, cap=16)
    assert result.status == 'closed'
    assert result.added == ('u1', 'u2', 'u3')
    assert result.rounds == 2
    assert injectivity_check(result.space, 1).ok
    assert homogeneity_check(result.space, 1).ok
    distances = {result.space.d('a', u) for u in result.added}
    assert distances == {1, 2}


def test_closed_seed_is_unchanged():
    closed = build_approximant(one_point(), 1, cap=16).space
    again = build_approximant(closed, 1, cap=16)
    assert again.status == 'closed'
    assert again.space == closed
    assert again.added == () and again.rounds == 0


def test_cap_equal_to_seed_is_capped():
    result = build_approximant(one_point(), 1, cap=1)
    assert result.status == 'capped'
    assert result.space.size == 1


def test_kappa_insertion_never_closes_pairs():
    result = build_approximant(one_point(), 2, cap=12)
    assert result.status == 'capped'
    assert result.space.size == 12
    assert validate_space(result.space).ok


def test_random_insertion_closes_for_pairs():
    seed = one_point()
    result = build_approximant(seed, 2, grid=2, cap=64, strategy='random', rng_seed=1)
    assert result.status == 'closed'
    assert validate_space(result.space).ok
    assert is_isometric_embedding(seed, result.space, {'a': 'a'})
    assert injectivity_check(result.space, 2, 2).unrealized == []

    with pytest.raises(GuardRefusal):
        homogeneity_check(result.space, 1)
    homog = homogeneity_check(result.space, 1, max_points=result.space.size)
    assert homog.checked > 1
    # pontos sorteados não formam um espaço ponto-transitivo
    assert not homog.ok and homog.failures


def test_unknown_strategy():
    with pytest.raises(PreconditionError):
        build_approximant(one_point(), 1, strategy='greedy')


def test_iso_group_examples(scalene):
    assert iso_group(space('ab', 2, [[0, 1], [1, 0]])) == [(0, 1), (1, 0)]
    assert iso_group(scalene) == [(0, 1, 2)]
    assert len(iso_group(uniform_space(3, 2, 1))) == 6


def test_iso_group_is_a_group(path4):
    group = set(iso_group(path4))
    assert group == {(0, 1, 2, 3), (3, 2, 1, 0)}
    for g, h in itertools.product(group, repeat=2):
        assert compose_isometries(g, h) in group
    assert all(invert_isometry(g) in group for g in group)


def test_iso_group_guard():
    with pytest.raises(GuardRefusal):
        iso_group(uniform_space(11, 2, 1))
    assert len(iso_group(uniform_space(4, 2, 1), max_points=4)) == 24


def test_homogeneity_examples(path4):
    assert homogeneity_check(path4, 0).ok
    assert homogeneity_check(uniform_space(3, 2, 1), 2).ok
    report = homogeneity_check(path4, 2)
    assert not report.ok
    assert (('a', 'b'), ('b', 'c')) in report.failures


def test_push_forward(pair_q4):
    f = KatetovFunction(pair_q4, ('a',), (1,))
    moved = push_forward((1, 0), f)
    assert moved.support == ('b',) and moved.values == (1,)


def test_one_point_extension_embeds_in_closed_approximant():
    closed = build_approximant(one_point(), 1, cap=16).space
    extension = space('kp', 2, [[0, 1], [1, 0]])
    match = embed_one_point_extension(closed, extension, 'p', {'k': 'a'})
    assert match.realizer is not None
    assert closed.d(match.realizer, 'a') == 1


def test_random_insertion_warns_when_grid_has_no_room(caplog):
    # f(a) = 0 obriga d(novo, b) = 1/4, ímpar na grade de passo 2
    matrix = np.array([[0, 1], [1, 0]], dtype=np.int64)
    with caplog.at_level(logging.WARNING, logger='src.katetov'):
        row = _insertion_row(matrix, 4, [0], (0,), 2, 'random', np.random.default_rng(0))
    assert row.tolist() == [0, 1]
    assert any('fora da grade' in r.getMessage() for r in caplog.records)

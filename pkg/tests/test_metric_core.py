import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import space, sweep
from src.errors import PreconditionError, StructuralError
from src.metric_core import (amalgam, amalgam_names, quadrangle_holds, quotient_projection,
                             quotient_pseudometric, random_grid_space, regrid, rescale, restrict,
                             shortest_path_completion, uniform_space, validate_space)
from src.models.space import FiniteMetricSpace, PartialSpec, Violation


def test_validate_smallest_metric():
    report = validate_space(space('ab', 2, [[0, 1], [1, 0]]))
    assert report.ok
    assert report.to_dict() == {'valid': True, 'violations': []}


def test_validate_triangle_witness():
    report = validate_space(space('abc', 4, [[0, 1, 3], [1, 0, 1], [3, 1, 0]]))
    assert not report.ok
    assert report.violations == (Violation('triangle', ('a', 'b', 'c')),)


def test_validate_symmetry():
    report = validate_space(space('ab', 2, [[0, 1], [2, 0]]))
    assert [v.axiom for v in report.violations] == ['symmetry']


def test_identity_only_for_metrics():
    zeros = [[0, 0], [0, 0]]
    assert validate_space(space('ab', 2, zeros)).violations[0].axiom == 'identity'
    assert validate_space(FiniteMetricSpace(('a', 'b'), 2, ((0, 0), (0, 0)), True)).ok


@pytest.mark.parametrize('dist', [[[0, 3], [3, 0]], [[0, -1], [-1, 0]], [[0, 1.5], [1.5, 0]]])
def test_entries_outside_grid_are_structural(dist):
    with pytest.raises(StructuralError):
        space('ab', 2, dist)


def test_shape_and_points_are_checked():
    with pytest.raises(StructuralError):
        space('abc', 2, [[0, 1], [1, 0]])
    with pytest.raises(StructuralError):
        FiniteMetricSpace(('a', 'a'), 2, ((0, 1), (1, 0)))


def test_completion_chain():
    spec = PartialSpec(('a', 'b', 'c'), 4, ((0, 1, None), (1, 0, 1), (None, 1, 0)))
    assert shortest_path_completion(spec).d('a', 'c') == 2


def test_completion_caps_at_q():
    spec = PartialSpec(('a', 'b', 'c'), 4, ((0, 3, None), (3, 0, 3), (None, 3, 0)))
    assert shortest_path_completion(spec).d('a', 'c') == 4


def test_completion_keeps_metric(scalene):
    assert shortest_path_completion(scalene).dist == scalene.dist


def test_completion_disconnected():
    spec = PartialSpec(('a', 'b'), 2, ((0, None), (None, 0)))
    with pytest.raises(PreconditionError):
        shortest_path_completion(spec)


def test_partial_spec_rejects_asymmetry():
    with pytest.raises(StructuralError):
        PartialSpec(('a', 'b'), 2, ((0, 1), (None, 0)))


def test_quotient_identifies_zero_distance():
    pseudo = FiniteMetricSpace(('a', 'b', 'c'), 4, ((0, 0, 2), (0, 0, 2), (2, 2, 0)), True)
    result = quotient_pseudometric(pseudo)
    assert result.points == ('a', 'c')
    assert result.d('a', 'c') == 2
    assert quotient_projection(pseudo) == {'a': 'a', 'b': 'a', 'c': 'c'}


def test_quotient_of_metric_and_of_zero_space(scalene):
    assert quotient_pseudometric(scalene).dist == scalene.dist
    zero = FiniteMetricSpace(('a', 'b', 'c'), 2, ((0,) * 3,) * 3, True)
    assert quotient_pseudometric(zero).points == ('a',)


def test_amalgam_chain_through_glue():
    X = space('am', 4, [[0, 1], [1, 0]])
    Y = space('mb', 4, [[0, 1], [1, 0]])
    result = amalgam(X, Y, {'m': 'm'})
    assert result.points == ('a', 'm', 'b')
    assert result.d('a', 'b') == 2
    assert validate_space(result).ok


def test_amalgam_caps_at_q():
    X = space('am', 4, [[0, 3], [3, 0]])
    Y = space('mb', 4, [[0, 3], [3, 0]])
    assert amalgam(X, Y, {'m': 'm'}).d('a', 'b') == 4


def test_amalgam_full_identity_glue(scalene):
    result = amalgam(scalene, scalene, {p: p for p in scalene.points})
    assert result.dist == scalene.dist


def test_amalgam_renames_collisions_and_rescales():
    X = space('am', 2, [[0, 1], [1, 0]])
    Y = space('am', 4, [[0, 2], [2, 0]])
    result = amalgam(X, Y, {'m': 'm'})
    assert result.denominator == 4
    assert result.points == ('a', 'm', "a'")
    assert result.d('a', "a'") == 4


def test_amalgam_rejects_non_isometric_glue(scalene):
    other = space('xy', 4, [[0, 2], [2, 0]])
    with pytest.raises(PreconditionError):
        amalgam(scalene, other, {'a': 'x', 'b': 'y'})


def test_random_space_is_deterministic():
    assert random_grid_space(5, 8, 1) == random_grid_space(5, 8, 1)
    assert validate_space(random_grid_space(5, 8, 1)).ok
    assert random_grid_space(1, 8, 3).size == 1


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 6), q=st.integers(1, 12), seed=st.integers(0, 10_000))
def test_random_space_is_metric(n, q, seed):
    result = random_grid_space(n, q, seed)
    assert validate_space(result).ok
    assert result.matrix.max() <= q


def test_rescale_and_regrid(scalene):
    doubled = rescale(scalene, 8)
    assert doubled.d('a', 'c') == 6
    with pytest.raises(StructuralError):
        rescale(scalene, 6)
    regridded, step = regrid(scalene, 6)
    assert regridded.denominator == 12 and step == 2


def test_restrict(scalene):
    sub = restrict(scalene, ['c', 'a'])
    assert sub.points == ('c', 'a')
    assert np.array_equal(sub.matrix, [[0, 3], [3, 0]])


def test_uniform_space_names():
    assert uniform_space(3, 2, 1).points == ('a', 'b', 'c')


@st.composite
def partial_specs(draw):
    """Especificações conexas: a cadeia (i, i+1) é sempre especificada"""
    n = draw(st.integers(1, 6))
    q = draw(st.integers(1, 12))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = draw(st.integers(0, q) if j == i + 1 else st.none() | st.integers(0, q))
            rows[i][j] = rows[j][i] = value
    names = tuple(f'p{i}' for i in range(n))
    return PartialSpec(names, q, tuple(tuple(r) for r in rows))


@settings(max_examples=sweep(80), deadline=None)
@given(spec=partial_specs())
def test_completion_is_idempotent_and_quotients_to_metric(spec):
    completed = shortest_path_completion(spec)
    assert validate_space(completed).ok
    assert shortest_path_completion(completed).dist == completed.dist
    for i, row in enumerate(spec.entries):
        for j, v in enumerate(row):
            if v is not None:
                assert completed.matrix[i, j] <= v
    quotient = quotient_pseudometric(completed)
    assert not quotient.pseudometric
    assert validate_space(quotient).ok


@settings(max_examples=sweep(80), deadline=None)
@given(spec=partial_specs(), data=st.data())
def test_completion_satisfies_quadrangle(spec, data):
    completed = shortest_path_completion(spec)
    corner = st.sampled_from(completed.points)
    for _ in range(10):
        a, b, c, e = (data.draw(corner) for _ in range(4))
        assert quadrangle_holds(completed, a, b, c, e)


def test_quadrangle_fails_off_metric():
    # lado a-b maior que os outros três somados
    broken = FiniteMetricSpace(('a', 'b', 'c', 'e'), 8,
                               ((0, 7, 1, 1), (7, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0)), True)
    assert not quadrangle_holds(broken, 'a', 'b', 'c', 'e')


@settings(max_examples=sweep(60), deadline=None)
@given(n=st.integers(1, 5), m=st.integers(1, 5), q=st.integers(1, 10),
       seeds=st.tuples(st.integers(0, 10_000), st.integers(0, 10_000)))
def test_amalgam_restricts_back_to_factors(n, m, q, seeds):
    X = random_grid_space(n, q, seeds[0])
    Y = random_grid_space(m, q, seeds[1])
    glue = {X.points[0]: Y.points[0]}
    result = amalgam(X, Y, glue)
    assert validate_space(result).ok
    assert result.size == n + m - 1
    assert restrict(result, X.points).dist == X.dist
    names = amalgam_names(X, Y, glue)
    assert restrict(result, [names[y] for y in Y.points]).dist == Y.dist

import numpy as np
import pytest

from helpers import sweep
from src.errors import EmptyComposition, GuardRefusal, PreconditionError
from src.graev import concat, graev_norm_dp, invert_word, reduce_word
from src.homog import (RelationAlphabet, check_k_bounds, compose, diagonal, hausdorff_distance,
                       in_H_ab, inverse, lower_bound_certificate, nu_search, nu_truncated,
                       phi_of_word, random_relation, shorten_word, singletons, validate_relation,
                       weight_k)
from src.metric_core import random_grid_space
from src.models.relation import PartialIsometryRelation
from src.models.words import GroupWord


def rel(*pairs):
    return PartialIsometryRelation.of(pairs)


def word(*letters):
    return GroupWord(tuple(letters))


def random_word(rng, gens, length):
    return GroupWord(tuple((gens[int(rng.integers(len(gens)))], int(rng.choice([1, -1])))
                           for _ in range(length)))


def test_relation_is_normalized():
    r = rel(('b', 'a'), ('a', 'b'), ('a', 'b'))
    assert r.pairs == (('a', 'b'), ('b', 'a'))
    assert str(r) == '{(a,b), (b,a)}'


def test_validate_relation_examples(pair_q4):
    assert validate_relation(pair_q4, rel(('a', 'b'))).ok
    assert validate_relation(pair_q4, rel(('a', 'a'), ('b', 'b'))).ok
    check = validate_relation(pair_q4, rel(('a', 'a'), ('a', 'b')))
    assert not check.ok
    assert check.witness == (('a', 'a'), ('a', 'b'))
    with pytest.raises(PreconditionError):
        validate_relation(pair_q4, rel())


def test_hausdorff_and_weight_examples(pair_q4):
    r, s = rel(('a', 'a')), rel(('a', 'b'))
    assert hausdorff_distance(pair_q4, r, r) == 0
    assert hausdorff_distance(pair_q4, r, s) == 2
    assert weight_k(pair_q4, rel(('a', 'a'), ('b', 'b'))) == 0
    assert weight_k(pair_q4, s) == 2


def test_hausdorff_is_metric_and_k_non_expanding(rng):
    for _ in range(sweep(500)):
        base = random_grid_space(int(rng.integers(2, 6)), int(rng.integers(1, 8)), int(rng.integers(10**6)))
        r, s, t = (random_relation(base, rng) for _ in range(3))
        d_rs = hausdorff_distance(base, r, s)
        assert d_rs == hausdorff_distance(base, s, r)
        assert (d_rs == 0) == (r == s)
        assert d_rs <= hausdorff_distance(base, r, t) + hausdorff_distance(base, t, s)
        assert abs(weight_k(base, r) - weight_k(base, s)) <= d_rs


def test_random_relations_are_partial_isometries(rng):
    for _ in range(sweep(200)):
        base = random_grid_space(int(rng.integers(1, 6)), int(rng.integers(1, 8)), int(rng.integers(10**6)))
        assert validate_relation(base, random_relation(base, rng)).ok


def test_relation_alphabet_caches(pair_q4):
    alphabet = RelationAlphabet(pair_q4)
    r, s = rel(('a', 'a')), rel(('a', 'b'))
    assert alphabet.distance(r, s) == alphabet.distance(s, r) == 2
    assert alphabet.weight(s) == 2
    assert alphabet.denominator == 4


def test_phi_examples(pair_q4):
    r = rel(('a', 'b'))
    assert phi_of_word(pair_q4, GroupWord()) == diagonal(pair_q4)
    assert phi_of_word(pair_q4, word((r, 1))) == r.as_set()
    # R∘R⁻¹ com R = {(a,b)}: a composição passa por a e volta a b
    contracted = phi_of_word(pair_q4, word((r, 1), (r, -1)))
    assert contracted == {('b', 'b')}
    assert contracted <= diagonal(pair_q4)


def test_phi_laws(rng):
    for _ in range(sweep(300)):
        base = random_grid_space(int(rng.integers(2, 5)), int(rng.integers(1, 5)), int(rng.integers(10**6)))
        gens = [random_relation(base, rng) for _ in range(3)]
        w = random_word(rng, gens, int(rng.integers(0, 6)))
        u = random_word(rng, gens, int(rng.integers(0, 4)))
        image = phi_of_word(base, w)
        assert phi_of_word(base, reduce_word(w)) >= image
        assert phi_of_word(base, invert_word(w)) == inverse(image)
        assert phi_of_word(base, concat(u, w)) == compose(phi_of_word(base, u), image)
        for r in gens:
            for e in (1, -1):
                assert phi_of_word(base, word((r, e), (r, -e))) <= diagonal(base)


def test_in_H_ab_examples(pair_q4):
    assert in_H_ab(pair_q4, word((rel(('a', 'b')), 1)), 'a', 'b')
    assert in_H_ab(pair_q4, GroupWord(), 'a', 'a')
    assert not in_H_ab(pair_q4, GroupWord(), 'a', 'b')
    with pytest.raises(PreconditionError):
        in_H_ab(pair_q4, GroupWord(), 'a', 'z')


def test_H_laws(rng):
    for _ in range(sweep(300)):
        base = random_grid_space(int(rng.integers(2, 5)), int(rng.integers(1, 5)), int(rng.integers(10**6)))
        gens = [random_relation(base, rng) for _ in range(3)]
        u = random_word(rng, gens, int(rng.integers(0, 4)))
        v = random_word(rng, gens, int(rng.integers(0, 4)))
        for a, b in phi_of_word(base, u):
            assert in_H_ab(base, invert_word(u), b, a)
            for b2, c in phi_of_word(base, v):
                if b2 == b:
                    assert in_H_ab(base, concat(v, u), a, c)


def test_nu_examples(path4):
    assert nu_truncated(path4, 'a', 'a', singletons(path4), 0) == 0
    assert nu_truncated(path4, 'a', 'b', singletons(path4), 0) is None
    result = nu_search(path4, 'a', 'e', singletons(path4), 1)
    assert result.value == 3
    assert result.witness == word((rel(('a', 'e')), 1))


@pytest.mark.parametrize('seed', range(3))
def test_nu_is_exact_with_singletons(seed):
    base = random_grid_space(3, 4, seed)
    gens = singletons(base)
    for a in base.points:
        for b in base.points:
            for length in (1, 2, 3):
                assert nu_truncated(base, a, b, gens, length) == base.d(a, b)


@pytest.mark.slow
def test_nu_is_exact_on_larger_spaces():
    for seed in range(10):
        base = random_grid_space(int(np.random.default_rng(seed).integers(2, 6)), 4, seed)
        gens = singletons(base)
        for a in base.points:
            for b in base.points:
                for length in (1, 2, 3):
                    assert nu_truncated(base, a, b, gens, length) == base.d(a, b)


def test_nu_guard_reports_partial(path4):
    with pytest.raises(GuardRefusal) as info:
        nu_search(path4, 'a', 'b', singletons(path4), 3, max_words=40)
    assert info.value.partial == 1


def test_nu_rejects_bad_generators(pair_q4):
    with pytest.raises(PreconditionError):
        nu_search(pair_q4, 'a', 'b', [rel(('a', 'a'), ('a', 'b'))], 1)
    with pytest.raises(PreconditionError):
        nu_search(pair_q4, 'a', 'b', [], 1)


def test_k_bounds_examples(pair_q4):
    r = rel(('a', 'b'))
    assert check_k_bounds(pair_q4, 3, [r, r], (1, -1))
    assert check_k_bounds(pair_q4, 1, [r, r], (1,))
    with pytest.raises(EmptyComposition):
        check_k_bounds(pair_q4, 3, [r, r], (1, 1))
    with pytest.raises(PreconditionError):
        check_k_bounds(pair_q4, 4, [r, r], (1, 1))
    with pytest.raises(PreconditionError):
        check_k_bounds(pair_q4, 2, [r, r], (1, 1))
    with pytest.raises(PreconditionError):
        check_k_bounds(pair_q4, 3, [r, r], (1,))


def test_k_bounds_sweep(rng):
    checked = 0
    for _ in range(sweep(2000)):
        base = random_grid_space(int(rng.integers(2, 6)), int(rng.integers(1, 5)), int(rng.integers(10**6)))
        case = int(rng.integers(1, 4))
        relations = [random_relation(base, rng) for _ in range(3 if case == 2 else 2)]
        signs = tuple(int(s) for s in rng.choice([1, -1], size=2))
        try:
            assert check_k_bounds(base, case, relations, signs)
        except EmptyComposition:
            continue
        checked += 1
    assert checked > 0


def test_shorten_word_keeps_membership(path4):
    r, s = rel(('a', 'b')), rel(('b', 'c'))
    w = word((s, 1), (r, 1))
    shorter, composite = shorten_word(path4, w)
    assert len(shorter) == 1
    assert composite.as_set() == {('a', 'c')}
    assert in_H_ab(path4, shorter, 'a', 'c')


def test_lower_bound_certificate_on_random_words(rng):
    certified = 0
    for _ in range(sweep(300)):
        base = random_grid_space(int(rng.integers(2, 5)), int(rng.integers(1, 5)), int(rng.integers(10**6)))
        gens = [random_relation(base, rng) for _ in range(3)]
        w = reduce_word(random_word(rng, gens, int(rng.integers(1, 7))))
        image = sorted(phi_of_word(base, w))
        if not image:
            continue
        a, b = image[int(rng.integers(len(image)))]
        chain = lower_bound_certificate(base, w, a, b)
        values = [v for _, v in chain]
        assert values == sorted(values, reverse=True)
        assert len(chain[-1][0]) <= 1
        assert graev_norm_dp(w, RelationAlphabet(base)) >= base.d(a, b)
        certified += 1
    assert certified > 0


def test_certificate_requires_membership(path4):
    with pytest.raises(PreconditionError):
        lower_bound_certificate(path4, word((rel(('a', 'b')), 1)), 'a', 'c')

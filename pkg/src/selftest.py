import logging
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from src.config import Config
from src.errors import EmptyComposition
from src.gh import EnumeratedPairInstance, gh_en_formula, gh_en_oracle
from src.homog import check_k_bounds, nu_truncated, random_relation, singletons
from src.katetov import build_approximant, homogeneity_check, injectivity_check, iso_group
from src.metric_core import random_grid_space, uniform_space
from src.models.space import FiniteMetricSpace
from src.models.theta import BiKatetovMatrix
from src.relations import Hinv_of, H_of, enumerate_K
from src.semigroup import (characterization_check, classify_idempotents, constant,
                           embed_isometry, enumerate_theta, invariant_idempotents,
                           invertible_by_equation, is_bi_katetov, is_invertible,
                           product, product_via_amalgam, random_theta_element, unity)

logger = logging.getLogger(__name__)


def _idempotent_classification():
    spaces = [uniform_space(1, 2, 0), uniform_space(2, 2, 1), uniform_space(3, 2, 1),
              uniform_space(1, 4, 0), uniform_space(2, 4, 2), uniform_space(3, 4, 2),
              uniform_space(3, 4, 1)]
    counts = [len(classify_idempotents(s)) for s in spaces]
    return counts == [2, 4, 8, 2, 4, 8, 8], f'contagens {counts}'


def _invertibles():
    space = uniform_space(2, 2, 1)
    found = []
    for batch in enumerate_theta(space):
        for a in batch:
            f = BiKatetovMatrix.from_array(space, a)
            if invertible_by_equation(f):
                found.append(f)
                if is_invertible(f) is None:
                    return False, f'{f!r} invertível sem isometria'
    expected = {embed_isometry(space, g) for g in iso_group(space)}
    return set(found) == expected and len(found) == 2, f'{len(found)} invertíveis'


def _invariant_idempotents():
    for space in (uniform_space(2, 2, 1), uniform_space(3, 2, 1)):
        found = {p for p, _ in invariant_idempotents(space)}
        if found != {unity(space), constant(space, space.denominator)}:
            return False, f'{len(found)} idempotentes invariantes em {space!r}'
    return True, 'apenas d e a constante q'


def _characterization():
    space = uniform_space(2, 3, 2)
    checked = 0
    for digits in np.ndindex(4, 4, 4, 4):
        f = BiKatetovMatrix.from_array(space, np.array(digits).reshape(2, 2))
        if is_bi_katetov(f).ok != characterization_check(f):
            return False, f'divergência em {f!r}'
        checked += 1
    return True, f'{checked} matrizes'


def _amalgam_product(samples=200):
    rng = np.random.default_rng(7)
    for i in range(samples):
        space = random_grid_space(int(rng.integers(1, 5)), 6, i)
        p, q_ = random_theta_element(space, rng), random_theta_element(space, rng)
        if product_via_amalgam(p, q_) != product(p, q_):
            return False, f'divergência na amostra {i}'
    return True, f'{samples} pares'


def _enumerated_gh(samples=200):
    rng = np.random.default_rng(11)
    for i in range(samples):
        n = int(rng.integers(1, 7))
        q = int(rng.integers(1, 21))
        inst = EnumeratedPairInstance(random_grid_space(n, q, 2 * i),
                                      random_grid_space(n, q, 2 * i + 1))
        if gh_en_formula(inst) != gh_en_oracle(inst):
            return False, f'divergência na instância {i}'
    return True, f'{samples} instâncias'


def _nu_exactness():
    for seed in range(3):
        space = random_grid_space(4, 4, seed)
        gens = singletons(space)
        for a in space.points:
            for b in space.points:
                for length in (1, 2):
                    if nu_truncated(space, a, b, gens, length) != space.d(a, b):
                        return False, f'ν({a},{b}) != d em seed={seed}, ℓ={length}'
    return True, '3 espaços'


def _k_bounds(samples=2000):
    rng = np.random.default_rng(13)
    checked = 0
    for i in range(samples):
        space = random_grid_space(int(rng.integers(2, 6)), 2, i)
        case = int(rng.integers(1, 4))
        relations = [random_relation(space, rng) for _ in range(3 if case == 2 else 2)]
        signs = tuple(int(s) for s in rng.choice([1, -1], size=2))
        try:
            if not check_k_bounds(space, case, relations, signs):
                return False, f'caso {case} falhou na amostra {i}'
            checked += 1
        except EmptyComposition:
            continue
    return True, f'{checked} tuplas não vazias'


def _relation_round_trip():
    for q in (2, 3):
        space = uniform_space(2, q, 1)
        carrier = enumerate_K(space)
        for batch in enumerate_theta(space):
            for a in batch:
                f = BiKatetovMatrix.from_array(space, a)
                if H_of(Hinv_of(carrier, f)) != f:
                    return False, f'ida e volta falhou em {f!r}'
    return True, '|M|=2, q ∈ {2, 3}'


def _approximant():
    seed = FiniteMetricSpace(('a',), 2, ((0,),))
    pairs = build_approximant(seed, 2, grid=2, cap=64, strategy='random', rng_seed=1)
    if pairs.status != 'closed':
        return False, f's=2: status {pairs.status} com {pairs.space.size} pontos'
    injective = injectivity_check(pairs.space, 2, 2).ok
    homog = homogeneity_check(pairs.space, 1, max_points=pairs.space.size)
    singles = build_approximant(seed, 1, cap=16)
    small_ok = singles.status == 'closed' and homogeneity_check(singles.space, 1).ok
    homog_text = 'sim' if homog.ok else f'não ({len(homog.failures)} falhas)'
    detail = (f's=2: {pairs.space.size} pontos, injetivo={injective}, homogêneo em s=1: {homog_text}; '
              f's=1: {singles.space.size} pontos, homogêneo={small_ok}')
    return injective and small_ok, detail


SUITES = {
    'idempotent-classification': _idempotent_classification,
    'invertibles': _invertibles,
    'invariant-idempotents': _invariant_idempotents,
    'characterization': _characterization,
    'amalgam-product': _amalgam_product,
    'enumerated-gh': _enumerated_gh,
    'nu-exactness': _nu_exactness,
    'k-bounds': _k_bounds,
    'relation-round-trip': _relation_round_trip,
    'approximant': _approximant,
}

# Rótulo de cada suíte no resumo do selftest (resultado de referência que ela confere)
REFERENCES = {
    'idempotent-classification': 'Prop 6.4',
    'invertibles': 'Prop 6.5',
    'invariant-idempotents': 'Prop 6.9',
    'characterization': 'Prop 6.2',
    'amalgam-product': '§6',
    'enumerated-gh': 'Prop 7.1',
    'nu-exactness': 'Lemma 4.2',
    'k-bounds': 'Lemma 4.3',
    'relation-round-trip': '§9',
    'approximant': '§3',
}


def label(name):
    return f'{REFERENCES[name]} {name}'


def run_suite(name):
    logger.info(f"Executando suíte {name}")
    ok, detail = SUITES[name]()
    return name, bool(ok), detail


def run_all(names=None, workers=None):
    """Executa as suítes; resultados sempre na ordem de SUITES"""
    names = list(names or SUITES)
    workers = workers or Config.WORKERS
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_suite, names))
    return [run_suite(name) for name in names]

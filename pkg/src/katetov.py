import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src.config import Config, bound
from src.errors import GuardRefusal, PreconditionError
from src.metric_core import (common_denominator, extension_interval, is_isometric_embedding,
                             regrid, rescale)
from src.models.katetov_function import KatetovFunction
from src.models.space import FiniteMetricSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KatetovCheck:
    ok: bool
    witness: Optional[Tuple[str, str]] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class OnePointRealization:
    space: FiniteMetricSpace
    point: str
    identified: Tuple[str, ...] = ()


@dataclass
class InjectivityReport:
    space: FiniteMetricSpace
    step: int
    checked: int = 0
    unrealized: List[KatetovFunction] = field(default_factory=list)

    @property
    def ok(self):
        return not self.unrealized


@dataclass(frozen=True)
class Approximant:
    space: FiniteMetricSpace
    status: str
    added: Tuple[str, ...]
    rounds: int


@dataclass
class HomogeneityReport:
    checked: int = 0
    failures: List[Tuple[Tuple[str, ...], Tuple[str, ...]]] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


@dataclass(frozen=True)
class ExtensionMatch:
    function: KatetovFunction
    realizer: Optional[str]


def is_katetov(space, support, values):
    """|f(x)-f(y)| <= d(x,y) <= f(x)+f(y) para todo par do suporte"""
    f = KatetovFunction(space, support, values)
    idx = f.indices
    v = np.array(f.values, dtype=np.int64)
    d = space.matrix[np.ix_(idx, idx)]
    for i, j in itertools.combinations(range(len(idx)), 2):
        if abs(v[i] - v[j]) > d[i, j]:
            return KatetovCheck(False, (f.support[i], f.support[j]), 'lipschitz')
        if d[i, j] > v[i] + v[j]:
            return KatetovCheck(False, (f.support[i], f.support[j]), 'lower')
    return KatetovCheck(True)


def require_katetov(f):
    check = is_katetov(f.base, f.support, f.values)
    if not check.ok:
        raise PreconditionError(f'Função não é de Katětov no par {check.witness} ({check.reason})')
    return f


def kappa_extend(space, f):
    """g(x) = min sobre y em Y de d(x,y) ⊎ f(y); suporte vazio dá a constante q"""
    if f.base != space:
        raise PreconditionError('Função definida sobre outro espaço')
    require_katetov(f)
    q = space.denominator
    if not f.support:
        values = np.full(space.size, q, dtype=np.int64)
    else:
        values = (space.matrix[:, f.indices] + np.array(f.values)).min(axis=1)
        values = np.minimum(values, q)
    return KatetovFunction(space, space.points, tuple(int(v) for v in values))


def point_function(space, x):
    i = space.index_of(x)
    return KatetovFunction(space, space.points, space.dist[i])


def _require_total(f, g):
    if f.base != g.base:
        raise PreconditionError('Funções sobre espaços distintos')
    if not f.is_total or not g.is_total:
        raise PreconditionError('sup_distance exige funções totais')


def sup_distance(f, g):
    _require_total(f, g)
    a = np.array(f.as_total_vector())
    b = np.array(g.as_total_vector())
    return int(np.abs(a - b).max()) if a.size else 0


def _fresh_name(taken, base='p'):
    name = base
    while name in taken:
        name = f"{name}'"
    return name


def realize_one_point(space, f, name='p'):
    """Acrescenta p com d(p,x) = f(x); zeros forçam identificação (pseudométrica)"""
    if not f.is_total:
        raise PreconditionError('realize_one_point exige função total')
    require_katetov(f)
    row = np.array(f.as_total_vector(), dtype=np.int64)
    identified = tuple(space.points[i] for i in np.nonzero(row == 0)[0])
    point = _fresh_name(set(space.points), name)
    matrix = _append_point(space.matrix, row)
    if identified:
        logger.info(f"Ponto {point} coincide com {identified}")
    return OnePointRealization(
        FiniteMetricSpace.from_matrix(space.points + (point,), space.denominator, matrix,
                                      space.pseudometric or bool(identified)),
        point, identified)


def _append_point(matrix, row):
    n = matrix.shape[0]
    grown = np.zeros((n + 1, n + 1), dtype=np.int64)
    grown[:n, :n] = matrix
    grown[n, :n] = row
    grown[:n, n] = row
    return grown


def random_katetov(space, rng, support=None):
    """Sorteia uma função de Katětov, ponto a ponto dentro do intervalo admissível"""
    support = tuple(space.points if support is None else support)
    assigned = {}
    for y in support:
        i = space.index_of(y)
        lo, hi = extension_interval(space, assigned, i)
        assigned[i] = int(rng.integers(lo, hi + 1))
    return KatetovFunction(space, support, tuple(assigned[space.index_of(y)] for y in support))


def grid_katetov_values(space, idx, step):
    """Todas as funções de Katětov na grade (múltiplos de step) sobre idx, em ordem lexicográfica"""
    def extend(position, assigned):
        if position == len(idx):
            yield tuple(assigned[i] for i in idx)
            return
        x = idx[position]
        lo, hi = extension_interval(space, assigned, x)
        start = -(-lo // step) * step
        for v in range(start, hi + 1, step):
            assigned[x] = v
            yield from extend(position + 1, assigned)
            del assigned[x]

    yield from extend(0, {})


def _is_realized(matrix, idx, values):
    return bool((matrix[:, idx] == np.array(values)).all(axis=1).any())


def _candidates(space, s, step):
    n = space.size
    for size in range(1, min(s, n) + 1):
        for idx in itertools.combinations(range(n), size):
            for values in grid_katetov_values(space, list(idx), step):
                yield list(idx), values


def injectivity_check(space, s, grid=None):
    """Lista as funções de Katětov na grade sobre |Y| <= s sem ponto realizador"""
    if s < 1:
        raise PreconditionError(f'Tamanho de subconjunto deve ser >= 1: {s}')
    space, step = regrid(space, grid)
    report = InjectivityReport(space, step)
    for idx, values in _candidates(space, s, step):
        report.checked += 1
        if not _is_realized(space.matrix, idx, values):
            report.unrealized.append(
                KatetovFunction(space, tuple(space.points[i] for i in idx), values))
    logger.debug(f"Injetividade: {report.checked} funções, {len(report.unrealized)} sem realização")
    return report


def _insertion_row(matrix, q, idx, values, step, strategy, rng):
    """Distâncias do novo ponto realizando values sobre idx"""
    if strategy == 'katetov':
        return np.minimum((matrix[:, idx] + np.array(values)).min(axis=1), q)

    current = FiniteMetricSpace.from_matrix([f'_{i}' for i in range(matrix.shape[0])], q, matrix)
    assigned = dict(zip(idx, values))
    for x in range(matrix.shape[0]):
        if x in assigned:
            continue
        lo, hi = extension_interval(current, assigned, x)
        lo = min(max(lo, 1), hi)
        choices = list(range(-(-lo // step) * step, hi + 1, step))
        if not choices:
            logger.warning(f"Nenhum múltiplo de {step}/{q} em [{lo}, {hi}] para o ponto {x}: "
                           f"distância fora da grade pedida")
            choices = list(range(lo, hi + 1))
        assigned[x] = int(choices[rng.integers(len(choices))])
    return np.array([assigned[x] for x in range(matrix.shape[0])], dtype=np.int64)


def build_approximant(seed, s, grid=None, cap=64, strategy='katetov', rng_seed=0):
    """Itera a extensão por pontos realizadores até fechar ou atingir o teto de pontos.

    strategy='katetov' insere o perfil κ_Y(f); strategy='random' sorteia as
    distâncias fora do suporte dentro do intervalo admissível.
    """
    if strategy not in ('katetov', 'random'):
        raise PreconditionError(f'Estratégia desconhecida: {strategy!r}')
    if cap < seed.size:
        raise PreconditionError(f'Teto {cap} menor que a semente ({seed.size} pontos)')

    space, step = regrid(seed, grid)
    q = space.denominator
    rng = np.random.default_rng(rng_seed)
    matrix = np.array(space.matrix)
    names = list(space.points)
    added = []
    rounds = 0
    status = 'closed'

    while True:
        current = FiniteMetricSpace.from_matrix(names, q, matrix)
        pending = [c for c in _candidates(current, s, step) if not _is_realized(matrix, *c)]
        if not pending:
            break
        rounds += 1
        logger.info(f"Rodada {rounds}: {len(names)} pontos, {len(pending)} funções pendentes")
        for idx, values in pending:
            if _is_realized(matrix, idx, values):
                continue
            if len(names) >= cap:
                status = 'capped'
                break
            row = _insertion_row(matrix, q, idx, values, step, strategy, rng)
            matrix = _append_point(matrix, row)
            name = _fresh_name(set(names), f'u{len(added) + 1}')
            names.append(name)
            added.append(name)
        if status == 'capped':
            logger.warning(f"Aproximante atingiu o teto de {cap} pontos")
            break

    return Approximant(FiniteMetricSpace.from_matrix(names, q, matrix), status, tuple(added), rounds)


def iso_group(space, max_points=None):
    """Todas as permutações que preservam distância, por backtracking"""
    limit = bound(max_points, Config.ISO_BOUND)
    n = space.size
    if n > limit:
        raise GuardRefusal(f'iso_group recusado: {n} pontos excede o limite {limit}')
    m = space.matrix
    profiles = [tuple(sorted(row)) for row in m.tolist()]
    group = []
    image = []
    used = [False] * n

    def extend(i):
        if i == n:
            group.append(tuple(image))
            return
        for j in range(n):
            if used[j] or profiles[i] != profiles[j]:
                continue
            if any(m[i, k] != m[j, image[k]] for k in range(i)):
                continue
            used[j] = True
            image.append(j)
            extend(i + 1)
            image.pop()
            used[j] = False

    extend(0)
    return sorted(group)


def compose_isometries(phi, psi):
    """(φ∘ψ)(i) = φ(ψ(i))"""
    return tuple(phi[i] for i in psi)


def invert_isometry(phi):
    inverse = [0] * len(phi)
    for i, j in enumerate(phi):
        inverse[j] = i
    return tuple(inverse)


def is_isometry(space, phi):
    if sorted(phi) != list(range(space.size)):
        return False
    m = space.matrix
    return bool((m[np.ix_(phi, phi)] == m).all())


def homogeneity_check(space, s, max_points=None):
    """Verifica se toda isometria parcial entre subconjuntos de tamanho <= s se estende"""
    group = np.array(iso_group(space, max_points), dtype=np.int64)
    m = space.matrix
    n = space.size
    report = HomogeneityReport(checked=1)
    for size in range(1, min(s, n) + 1):
        for domain in itertools.combinations(range(n), size):
            block = m[np.ix_(domain, domain)]
            for image in itertools.permutations(range(n), size):
                if not (m[np.ix_(image, image)] == block).all():
                    continue
                report.checked += 1
                if not (group[:, list(domain)] == np.array(image)).all(axis=1).any():
                    report.failures.append((tuple(space.points[i] for i in domain),
                                            tuple(space.points[i] for i in image)))
    return report


def push_forward(phi, f):
    """φ*(f): transporta f pela isometria φ (valor em φ(y) é f(y))"""
    space = f.base
    if not is_isometry(space, phi):
        raise PreconditionError(f'Permutação {phi} não é isometria')
    support = tuple(space.points[phi[i]] for i in f.indices)
    return KatetovFunction(space, support, f.values)


def embed_one_point_extension(space, extension, point, embedding):
    """Dado L = K ∪ {p} e K -> space isométrico, acha um ponto de space no papel de p"""
    if point not in extension.points:
        raise PreconditionError(f'Ponto {point!r} não pertence à extensão')
    common = common_denominator(space, extension)
    space, extension = rescale(space, common), rescale(extension, common)
    core = [x for x in extension.points if x != point]
    if set(core) != set(embedding):
        raise PreconditionError('Mergulho deve estar definido exatamente em L sem p')
    ids = [extension.index_of(x) for x in core]
    core_space = FiniteMetricSpace.from_matrix(core, common, extension.matrix[np.ix_(ids, ids)],
                                               extension.pseudometric)
    if not is_isometric_embedding(core_space, space, embedding):
        raise PreconditionError('Mergulho de K não é isométrico')
    f = KatetovFunction(space, tuple(embedding[x] for x in core),
                        tuple(extension.d(point, x) for x in core))
    require_katetov(f)
    hits = np.nonzero((space.matrix[:, f.indices] == np.array(f.values)).all(axis=1))[0]
    realizer = space.points[int(hits[0])] if hits.size else None
    return ExtensionMatch(f, realizer)

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from src.config import Config, bound
from src.errors import GuardRefusal, PreconditionError
from src.katetov import is_isometry
from src.metric_core import regrid
from src.models.space import FiniteMetricSpace
from src.models.theta import BiKatetovMatrix
from src.semigroup import min_plus, require_bi_katetov

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GridFunctionSpace:
    """K: funções não-expansivas M -> {0, step, ..., q}"""

    base: FiniteMetricSpace
    step: int
    members: np.ndarray

    @cached_property
    def index(self):
        return {tuple(int(v) for v in row): i for i, row in enumerate(self.members)}

    @property
    def size(self):
        return self.members.shape[0]

    def index_of(self, member):
        try:
            return self.index[tuple(member)]
        except KeyError:
            raise PreconditionError(f'Função {tuple(member)} não pertence a K')

    def to_dict(self):
        return {'space': self.base.to_dict(), 'step': self.step,
                'members': self.members.tolist()}


@dataclass(frozen=True, eq=False)
class RelationOnK:
    """Relação em K como matriz booleana membros × membros"""

    carrier: GridFunctionSpace
    matrix: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, RelationOnK):
            return NotImplemented
        return self.carrier is other.carrier and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    @property
    def pairs(self):
        return [(int(i), int(j)) for i, j in np.argwhere(self.matrix)]

    def to_dict(self):
        data = self.carrier.to_dict()
        data['pairs'] = [list(p) for p in self.pairs]
        return data


def relation_from_matrix(carrier, matrix):
    matrix = np.asarray(matrix, dtype=bool)
    matrix.setflags(write=False)
    return RelationOnK(carrier, matrix)


def enumerate_K(space, grid=None, guard=None):
    """Enumera K em ordem lexicográfica"""
    space, step = regrid(space, grid)
    q = space.denominator
    n = space.size
    limit = bound(guard, Config.ENUM_GUARD)
    candidates = (q // step + 1) ** n
    if candidates > limit:
        raise GuardRefusal(f'K recusado: {candidates} candidatos excede o limite {limit}')

    d = space.matrix
    members = []

    def extend(x, assigned):
        if x == n:
            members.append([assigned[i] for i in range(n)])
            return
        lo = max([0] + [assigned[z] - int(d[z, x]) for z in assigned])
        hi = min([q] + [assigned[z] + int(d[z, x]) for z in assigned])
        for v in range(-(-lo // step) * step, hi + 1, step):
            assigned[x] = v
            extend(x + 1, assigned)
            del assigned[x]

    extend(0, {})
    array = np.array(members, dtype=np.int64).reshape(-1, n)
    array.setflags(write=False)
    logger.debug(f"K com {array.shape[0]} membros")
    return GridFunctionSpace(space, step, array)


def act(g, f):
    """(g f)(x) = f(g⁻¹ x)"""
    inverse = [0] * len(g)
    for i, j in enumerate(g):
        inverse[j] = i
    return tuple(int(f[inverse[x]]) for x in range(len(g)))


def identity(carrier):
    return relation_from_matrix(carrier, np.eye(carrier.size, dtype=bool))


def j_embed(carrier, g):
    """j(g) = {(f, g f) : f ∈ K}"""
    if not is_isometry(carrier.base, g):
        raise PreconditionError(f'Permutação {g} não é isometria')
    matrix = np.zeros((carrier.size, carrier.size), dtype=bool)
    for i, f in enumerate(carrier.members):
        matrix[i, carrier.index_of(act(g, f))] = True
    return relation_from_matrix(carrier, matrix)


def compose(r, s):
    """R∘S = {(x, y) : (x, z) ∈ S e (z, y) ∈ R}"""
    if r.carrier is not s.carrier:
        raise PreconditionError('Relações sobre carregadores distintos')
    return relation_from_matrix(r.carrier, (s.matrix.astype(np.int64) @ r.matrix.astype(np.int64)) > 0)


def invert(r):
    return relation_from_matrix(r.carrier, r.matrix.T)


def H_of(r):
    """H(R)(x, y) = max sobre (p, q) ∈ R de |q(x) - p(y)|"""
    if not r.matrix.any():
        raise PreconditionError('H exige relação não vazia')
    members = r.carrier.members
    p_idx, q_idx = np.nonzero(r.matrix)
    gaps = np.abs(members[q_idx][:, :, None] - members[p_idx][:, None, :])
    return BiKatetovMatrix.from_array(r.carrier.base, gaps.max(axis=0))


def Hinv_of(carrier, f):
    """H⁻¹(f) = {(p, q) : |q(x) - p(y)| <= f(x, y) para todo x, y}"""
    if f.base != carrier.base:
        raise PreconditionError('Matriz e K sobre espaços distintos')
    require_bi_katetov(f)
    a = carrier.members
    gaps = np.abs(a[None, :, :, None] - a[:, None, None, :])
    return relation_from_matrix(carrier, (gaps <= f.array).all(axis=(2, 3)))


def round_trip_witness(carrier, f, y0):
    """Par (p, q) de H⁻¹(f) que atinge f(x, y0) para todo x"""
    a = f.array
    q_member = a[:, y0]
    p_member = np.maximum(a[:, y0][:, None] - a, 0).max(axis=0)
    return carrier.index_of(p_member), carrier.index_of(q_member)


def R_F(carrier, subset):
    """f ~ g sse f|F = g|F"""
    idx = [carrier.base.index_of(x) for x in subset]
    restricted = carrier.members[:, idx]
    return relation_from_matrix(carrier, (restricted[:, None, :] == restricted[None, :, :]).all(axis=2))


def is_reflexive(r):
    return bool(np.diagonal(r.matrix).all())


def is_symmetric(r):
    return bool(np.array_equal(r.matrix, r.matrix.T))


def is_transitive(r):
    return bool(np.array_equal(compose(r, r).matrix | r.matrix, r.matrix))


def is_equivalence(r):
    return is_reflexive(r) and is_symmetric(r) and is_transitive(r)


def has_full_domain_and_range(r):
    return bool(r.matrix.any(axis=1).all() and r.matrix.any(axis=0).all())


def random_full_relation(carrier, rng, density=0.2):
    """Relação aleatória com domínio e imagem totais"""
    n = carrier.size
    matrix = rng.random((n, n)) < density
    matrix[np.arange(n), rng.integers(n, size=n)] = True
    matrix[rng.integers(n, size=n), np.arange(n)] = True
    return relation_from_matrix(carrier, matrix)


def composition_law_survey(carrier, samples, rng, density=0.2):
    """Mede com que frequência H(R∘S) = H(R)•H(S) em relações totais aleatórias"""
    q = carrier.base.denominator
    holds = 0
    for _ in range(samples):
        r = random_full_relation(carrier, rng, density)
        s = random_full_relation(carrier, rng, density)
        lhs = H_of(compose(r, s)).array
        rhs = min_plus(H_of(r).array, H_of(s).array, q)
        holds += int(np.array_equal(lhs, rhs))
    logger.info(f"Lei de composição valeu em {holds}/{samples} amostras")
    return {'samples': samples, 'holds': holds, 'fails': samples - holds}


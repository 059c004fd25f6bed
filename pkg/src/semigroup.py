import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.config import Config, bound
from src.errors import GuardRefusal, InvariantBreach, PreconditionError
from src.katetov import is_isometry, iso_group
from src.metric_core import close_weights, extension_interval, regrid, validate_space, UNREACHABLE
from src.models.space import FiniteMetricSpace
from src.models.theta import BiKatetovMatrix

logger = logging.getLogger(__name__)

# Candidatos avaliados por lote na enumeração vetorizada
CHUNK = 200_000


@dataclass(frozen=True)
class BiKatetovCheck:
    ok: bool
    witness: Optional[Tuple[str, str, str, str]] = None


def uplus(a, b, q):
    """a ⊎ b = min(a + b, q)"""
    return min(a + b, q)


def min_plus(f, g, q):
    """Produto min-plus limitado; aceita lotes (..., n, n)"""
    return np.minimum((f[..., :, :, None] + g[..., None, :, :]).min(axis=-2), q)


def _same_base(f, g):
    if f.base != g.base:
        raise PreconditionError('Matrizes sobre espaços base distintos')


def product(f, g):
    _same_base(f, g)
    return BiKatetovMatrix.from_array(f.base, min_plus(f.array, g.array, f.base.denominator))


def star(f):
    return BiKatetovMatrix.from_array(f.base, f.array.T)


def leq(f, g):
    _same_base(f, g)
    return bool((f.array <= g.array).all())


def constant(space, value):
    return BiKatetovMatrix.from_array(space, np.full((space.size, space.size), value))


def unity(space):
    return BiKatetovMatrix(space, space.dist)


def is_idempotent(f):
    return product(f, f) == f


def _bi_katetov_mask(batch, d):
    """Para cada matriz do lote: linhas e colunas são funções de Katětov"""
    mask = np.ones(batch.shape[0], dtype=bool)
    for part in (batch, batch.transpose(0, 2, 1)):
        a = part[:, :, :, None]
        b = part[:, :, None, :]
        ok = (np.abs(a - b) <= d) & (d <= a + b)
        mask &= ok.reshape(batch.shape[0], -1).all(axis=1)
    return mask


def is_bi_katetov(f):
    """Predicado direto, com testemunha (lado, x, y, z)"""
    a = f.array
    d = f.base.matrix
    names = f.base.points
    for side, part in (('row', a), ('column', a.T)):
        bad = (np.abs(part[:, :, None] - part[:, None, :]) > d) | (d > part[:, :, None] + part[:, None, :])
        hits = np.argwhere(bad)
        if hits.size:
            x, y, z = hits[0]
            return BiKatetovCheck(False, (side, names[x], names[y], names[z]))
    return BiKatetovCheck(True)


def require_bi_katetov(f):
    check = is_bi_katetov(f)
    if not check.ok:
        raise PreconditionError(f'Matriz não é bi-Katětov: {check.witness}')
    return f


def _characterization_mask(batch, d, q):
    fd = min_plus(batch, d, q)
    df = min_plus(d, batch, q)
    t = batch.transpose(0, 2, 1)
    lower_left = min_plus(t, batch, q) >= d
    lower_right = min_plus(batch, t, q) >= d
    def flat(m):
        return m.reshape(batch.shape[0], -1).all(axis=1)

    return flat(fd == batch) & flat(df == batch) & flat(lower_left) & flat(lower_right)


def characterization_check(f):
    """f•d = d•f = f, f*•f >= d e f•f* >= d, avaliados literalmente"""
    return bool(_characterization_mask(f.array[None], f.base.matrix, f.base.denominator)[0])


def embed_isometry(space, phi):
    """i(φ)(x, y) = d(x, φ(y))"""
    if not is_isometry(space, phi):
        raise PreconditionError(f'Permutação {phi} não é isometria')
    return BiKatetovMatrix.from_array(space, space.matrix[:, list(phi)])


def idempotent_bF(space, subset):
    """b_F(x,y) = min sobre z em F de d(x,z) ⊎ d(z,y); b_∅ = constante q"""
    q = space.denominator
    if not subset:
        return constant(space, q)
    idx = sorted({space.index_of(z) for z in subset})
    d = space.matrix
    return BiKatetovMatrix.from_array(space, min_plus(d[:, idx], d[idx, :], q))


def _inverse(g):
    inverse = [0] * len(g)
    for i, j in enumerate(g):
        inverse[j] = i
    return inverse


def inner_aut(g, p):
    """Inn_g(p)(x,y) = p(g⁻¹x, g⁻¹y)"""
    if not is_isometry(p.base, g):
        raise PreconditionError(f'Permutação {g} não é isometria')
    gi = _inverse(g)
    return BiKatetovMatrix.from_array(p.base, p.array[np.ix_(gi, gi)])


def left_act(g, p):
    """(g•p)(x,y) = p(g⁻¹x, y)"""
    if not is_isometry(p.base, g):
        raise PreconditionError(f'Permutação {g} não é isometria')
    return BiKatetovMatrix.from_array(p.base, p.array[_inverse(g), :])


def right_act(p, g):
    """(p•g)(x,y) = p(x, g(y))"""
    if not is_isometry(p.base, g):
        raise PreconditionError(f'Permutação {g} não é isometria')
    return BiKatetovMatrix.from_array(p.base, p.array[:, list(g)])


def is_invertible(f, max_points=None):
    """Isometria φ com i(φ) = f, ou None"""
    for phi in iso_group(f.base, max_points):
        if embed_isometry(f.base, phi) == f:
            return phi
    return None


def invertible_by_equation(f):
    """f•f* = f*•f = d"""
    d = unity(f.base)
    return product(f, star(f)) == d and product(star(f), f) == d


def greatest_idempotent(gens, guard=None):
    """Maior elemento de T = {f no semigrupo gerado : f >= d}, ou None"""
    gens = list(gens)
    if not gens:
        raise PreconditionError('Conjunto de geradores vazio')
    base = gens[0].base
    for g in gens:
        _same_base(g, gens[0])
        require_bi_katetov(g)
    limit = bound(guard, Config.ENUM_GUARD)
    q = base.denominator

    closed = {g.entries: g.array for g in gens}
    frontier = list(closed.values())
    while frontier:
        elements = list(closed.values())
        fresh = {}
        for a in frontier:
            for b in elements:
                for c in (min_plus(a, b, q), min_plus(b, a, q)):
                    key = tuple(map(tuple, c.tolist()))
                    if key not in closed and key not in fresh:
                        fresh[key] = c
        closed.update(fresh)
        frontier = list(fresh.values())
        if len(closed) > limit:
            raise GuardRefusal(f'Saturação excedeu {limit} elementos')
    logger.info(f"Semigrupo gerado com {len(closed)} elementos")

    d = base.matrix
    upper = [a for a in closed.values() if (a >= d).all()]
    if not upper:
        return None
    p = upper[0]
    for t in upper[1:]:
        p = min_plus(p, t, q)
    if not (min_plus(p, p, q) == p).all() or any((t > p).any() for t in upper):
        raise InvariantBreach('Maior elemento de T não é idempotente máximo')
    if tuple(map(tuple, p.tolist())) not in closed:
        raise InvariantBreach('Junção saiu do semigrupo gerado')
    return BiKatetovMatrix.from_array(base, p)


def enumerate_theta(space, lower=None, guard=None, step=1):
    """Lotes (N, n, n) com todas as matrizes bi-Katětov da grade, em ordem lexicográfica.

    step: só entradas múltiplas de step; lower precisa estar nessa grade.
    """
    n = space.size
    q = space.denominator
    d = space.matrix
    low = np.zeros((n, n), dtype=np.int64) if lower is None else np.asarray(lower, dtype=np.int64)
    if q % step or (low % step).any():
        raise PreconditionError(f'Cota inferior fora da grade de passo {step}/{q}')
    radix = ((q - low) // step + 1).reshape(-1)
    total = math.prod(int(r) for r in radix)
    limit = bound(guard, Config.ENUM_GUARD)
    if total > limit:
        raise GuardRefusal(f'Enumeração recusada: {total} candidatos excede o limite {limit}')
    logger.info(f"Enumerando {total} candidatos em {space!r}")

    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        digits = np.stack(np.unravel_index(idx, tuple(int(r) for r in radix)), axis=1)
        batch = digits.reshape(-1, n, n) * step + low
        keep = _bi_katetov_mask(batch, d)
        if keep.any():
            yield batch[keep]


def classify_idempotents(space, grid=None, guard=None):
    """Todos os idempotentes >= d da grade, cada um pareado com F = {x : p(x,x) = 0}"""
    space, step = regrid(space, grid)
    if (space.matrix % step).any():
        raise PreconditionError(f'Distâncias de {space!r} fora da grade pedida ({grid})')
    q = space.denominator
    found = []
    for batch in enumerate_theta(space, lower=space.matrix, guard=guard, step=step):
        idem = (min_plus(batch, batch, q) == batch).reshape(batch.shape[0], -1).all(axis=1)
        for p in batch[idem]:
            subset = tuple(space.points[i] for i in range(space.size) if p[i, i] == 0)
            if not (idempotent_bF(space, subset).array == p).all():
                raise InvariantBreach(f'Idempotente {p.tolist()} difere de b_F para F={subset}')
            found.append((BiKatetovMatrix.from_array(space, p), subset))
    if len(found) != 2 ** space.size:
        raise InvariantBreach(f'{len(found)} idempotentes encontrados, esperado {2 ** space.size}')
    return found


def invariant_idempotents(space, grid=None, guard=None):
    """Idempotentes >= d fixados por todos os automorfismos internos"""
    space, _ = regrid(space, grid)
    group = iso_group(space)
    return [(p, subset) for p, subset in classify_idempotents(space, grid, guard)
            if all(inner_aut(g, p) == p for g in group)]


def _copy_names(space, suffix, taken):
    names = []
    for p in space.points:
        name = f'{p}{suffix}'
        while name in taken:
            name = f'{name}{suffix}'
        taken.add(name)
        names.append(name)
    return names


def random_theta_element(space, rng):
    """Sorteia f em Θ montando ponto a ponto a cópia M′ de uma M-tripla"""
    n = space.size
    q = space.denominator
    d = space.matrix
    f = np.zeros((n, n), dtype=np.int64)
    for y in range(n):
        size = n + y
        combined = np.zeros((size, size), dtype=np.int64)
        combined[:n, :n] = d
        combined[:n, n:] = f[:, :y]
        combined[n:, :n] = f[:, :y].T
        combined[n:, n:] = d[:y, :y]
        current = FiniteMetricSpace.from_matrix([f'_{i}' for i in range(size)], q, combined, True)
        assigned = {n + z: int(d[y, z]) for z in range(y)}
        for x in range(n):
            lo, hi = extension_interval(current, assigned, x)
            assigned[x] = int(rng.integers(lo, hi + 1))
            f[x, y] = assigned[x]
    return BiKatetovMatrix.from_array(space, f)


def m_triple_space(f):
    """Pseudométrica em M ⊔ M′ com bloco cruzado f"""
    space = f.base
    block = np.block([[space.matrix, f.array], [f.array.T, space.matrix]])
    return FiniteMetricSpace.from_matrix(list(space.points) + _copy_names(space, "'", set(space.points)),
                                         space.denominator, block, pseudometric=True)


def m_triple_check(f):
    return validate_space(m_triple_space(f)).ok


def product_via_amalgam(p, q_):
    """p•q_ lido no bloco M–M″ do amálgama de três cópias de M"""
    _same_base(p, q_)
    space = p.base
    n = space.size
    q = space.denominator
    d = space.matrix
    w = np.full((3 * n, 3 * n), UNREACHABLE, dtype=np.int64)
    for k in range(3):
        w[k * n:(k + 1) * n, k * n:(k + 1) * n] = d
    w[:n, n:2 * n] = p.array
    w[n:2 * n, :n] = p.array.T
    w[n:2 * n, 2 * n:] = q_.array
    w[2 * n:, n:2 * n] = q_.array.T

    taken = set(space.points)
    names = list(space.points) + _copy_names(space, "'", taken) + _copy_names(space, "''", taken)
    closed = close_weights(names, q, w).matrix
    specified = w < UNREACHABLE
    if not (closed[specified] == w[specified]).all():
        i, j = np.argwhere(specified & (closed != w))[0]
        raise InvariantBreach(f'Amálgama encurtou a distância especificada ({names[i]}, {names[j]})')
    return BiKatetovMatrix.from_array(space, closed[:n, 2 * n:])

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.errors import InvariantBreach, PreconditionError
from src.metric_core import UNREACHABLE, close_weights, common_denominator, rescale
from src.models.grid import GridValue
from src.models.space import FiniteMetricSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumeratedPairInstance:
    """Par (X, Y) enumerado, reescalado para denominador comum"""

    X: FiniteMetricSpace
    Y: FiniteMetricSpace

    def __post_init__(self):
        if self.X.size != self.Y.size:
            raise PreconditionError(
                f'Tamanhos diferentes: X tem {self.X.size} pontos, Y tem {self.Y.size}')
        common = common_denominator(self.X, self.Y)
        object.__setattr__(self, 'X', rescale(self.X, common))
        object.__setattr__(self, 'Y', rescale(self.Y, common))

    @property
    def q(self):
        return self.X.denominator

    @property
    def size(self):
        return self.X.size

    def swapped(self):
        return EnumeratedPairInstance(self.Y, self.X)

    def to_dict(self):
        return {'X': self.X.to_dict(), 'Y': self.Y.to_dict()}


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    contracted: Optional[Tuple[str, str]]
    closure: FiniteMetricSpace


def distortion(inst):
    """ε = max |d_X(x_i,x_j) - d_Y(y_i,y_j)| e um par que o atinge"""
    diff = np.abs(inst.X.matrix - inst.Y.matrix)
    if diff.size == 0:
        return 0, None
    i, j = np.unravel_index(int(diff.argmax()), diff.shape)
    return int(diff[i, j]), (inst.X.points[i], inst.X.points[j])


def gh_en_formula(inst):
    eps, _ = distortion(inst)
    return GridValue.half(eps, inst.q)


def oracle_feasibility(inst, t):
    """Fecha o grafo com arestas cruzadas (x_i, y_i) de peso t/(2q) e testa se preserva d_X e d_Y"""
    n = inst.size
    cap = 2 * inst.q
    if not 0 <= t <= cap:
        raise PreconditionError(f'Valor fora da meia-grade [0, {cap}]: {t}')
    w = np.full((2 * n, 2 * n), UNREACHABLE, dtype=np.int64)
    w[:n, :n] = 2 * inst.X.matrix
    w[n:, n:] = 2 * inst.Y.matrix
    for i in range(n):
        w[i, n + i] = w[n + i, i] = t
    names = [f'X:{p}' for p in inst.X.points] + [f'Y:{p}' for p in inst.Y.points]
    closure = close_weights(names, cap, w)
    m = closure.matrix
    for block in (slice(0, n), slice(n, 2 * n)):
        shortened = np.argwhere(m[block, block] != w[block, block])
        if shortened.size:
            i, j = shortened[0]
            offset = block.start
            return Feasibility(False, (names[offset + i], names[offset + j]), closure)
    return Feasibility(True, None, closure)


def gh_en_oracle(inst):
    """Menor t na meia-grade com fechamento viável, varrendo de baixo para cima"""
    for t in range(0, 2 * inst.q + 1):
        if oracle_feasibility(inst, t).feasible:
            logger.debug(f"Oráculo viável em t={t}/{2 * inst.q}")
            return GridValue.half(t, inst.q)
    raise InvariantBreach('Nenhum valor da meia-grade é viável')


def optimal_coupling(inst):
    """Pseudométrica em X ⊔ Y com D(x_i, y_i) = ε/2 (denominador 2q)"""
    eps, _ = distortion(inst)
    result = oracle_feasibility(inst, eps)
    if not result.feasible:
        raise InvariantBreach(f'Acoplamento em ε/2 inviável: par {result.contracted}')
    return result.closure


def realize_in_space(space, anchors, target, eps):
    """Busca c_i com d(c_i,c_j) = target(i,j) e d(a_i,c_i) <= ε (ε em unidades de space)"""
    if len(anchors) != target.size:
        raise PreconditionError(f'{len(anchors)} âncoras para alvo com {target.size} pontos')
    common = common_denominator(space, target)
    eps = eps * (common // space.denominator)
    space, target = rescale(space, common), rescale(target, common)
    idx = [space.index_of(a) for a in anchors]
    m = space.matrix
    t = target.matrix
    n = len(idx)
    for i in range(n):
        for j in range(n):
            if abs(int(m[idx[i], idx[j]]) - int(t[i, j])) > 2 * eps:
                raise PreconditionError(
                    f'Hipótese violada no par ({anchors[i]}, {anchors[j]}): diferença maior que 2ε')

    candidates = [np.nonzero(m[a] <= eps)[0].tolist() for a in idx]
    chosen = []

    def extend(i):
        if i == n:
            return True
        for c in candidates[i]:
            if all(m[c, chosen[j]] == t[i, j] for j in range(i)):
                chosen.append(c)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        return tuple(space.points[c] for c in chosen)
    logger.info(f"Nenhuma realização em {space!r}: espaço pequeno demais")
    return None

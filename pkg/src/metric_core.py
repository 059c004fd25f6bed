import logging
import math

import numpy as np

from src.errors import PreconditionError, StructuralError
from src.models.space import FiniteMetricSpace, PartialSpec, ValidationReport, Violation

logger = logging.getLogger(__name__)

# Marca de par inalcançável no fechamento por caminhos mínimos
UNREACHABLE = np.iinfo(np.int64).max // 4


def validate_space(space):
    """Verifica os axiomas de (pseudo)métrica e lista cada violação com testemunha"""
    m = space.matrix
    names = space.points
    n = space.size
    violations = []

    for i in range(n):
        if m[i, i] != 0:
            violations.append(Violation('diagonal', (names[i],)))
    for i, j in zip(*np.nonzero(m != m.T)):
        if i < j:
            violations.append(Violation('symmetry', (names[i], names[j])))
    if not space.pseudometric:
        for i, j in zip(*np.nonzero(m == 0)):
            if i < j:
                violations.append(Violation('identity', (names[i], names[j])))

    # d(i,k) > d(i,j) + d(j,k)
    broken = m[:, None, :] > m[:, :, None] + m[None, :, :]
    for i, j, k in np.argwhere(broken):
        if i < k and j != i and j != k:
            violations.append(Violation('triangle', (names[i], names[j], names[k])))

    return ValidationReport(tuple(violations))


def require_valid(space, what='espaço'):
    report = validate_space(space)
    if not report.ok:
        raise PreconditionError(f'{what} inválido: {report.violations[0]}')
    return space


def floyd_warshall(weights):
    """Fechamento por caminhos mínimos (matriz inteira, UNREACHABLE = sem aresta)"""
    closed = np.array(weights, dtype=np.int64)
    for k in range(closed.shape[0]):
        closed = np.minimum(closed, closed[:, k, None] + closed[None, k, :])
    return np.minimum(closed, UNREACHABLE)


def _spec_weights(spec):
    n = len(spec.points)
    w = np.full((n, n), UNREACHABLE, dtype=np.int64)
    for i, row in enumerate(spec.entries):
        for j, v in enumerate(row):
            if v is not None:
                w[i, j] = v
    np.fill_diagonal(w, 0)
    return w


def close_weights(points, q, weights, fill_unreachable=False):
    """Fecha uma matriz de pesos e aplica o teto q"""
    closed = floyd_warshall(weights)
    if (closed >= UNREACHABLE).any():
        if not fill_unreachable:
            i, j = np.argwhere(closed >= UNREACHABLE)[0]
            raise PreconditionError(
                f'Especificação desconexa: par inalcançável ({points[i]!r}, {points[j]!r})')
        closed[closed >= UNREACHABLE] = q
    return FiniteMetricSpace.from_matrix(points, q, np.minimum(closed, q), pseudometric=True)


def shortest_path_completion(spec):
    """Maior pseudométrica abaixo da especificação, com teto q"""
    if isinstance(spec, FiniteMetricSpace):
        spec = PartialSpec(spec.points, spec.denominator, spec.dist)
    logger.debug(f"Completando especificação com {len(spec.points)} pontos")
    return close_weights(spec.points, spec.denominator, _spec_weights(spec))


def quotient_classes(space):
    """Classes de distância zero, na ordem de primeira aparição"""
    pseudo = FiniteMetricSpace(space.points, space.denominator, space.dist, pseudometric=True)
    require_valid(pseudo, 'pseudométrica')
    classes = []
    seen = set()
    for i in range(space.size):
        if i in seen:
            continue
        members = tuple(int(j) for j in np.nonzero(space.matrix[i] == 0)[0])
        seen.update(members)
        classes.append(members)
    return classes


def quotient_pseudometric(space):
    """Identifica pontos a distância 0; representante = primeiro da classe"""
    reps = [cls[0] for cls in quotient_classes(space)]
    return FiniteMetricSpace.from_matrix(
        [space.points[i] for i in reps], space.denominator, space.matrix[np.ix_(reps, reps)])


def quotient_projection(space):
    """Projeção canônica: ponto -> representante da sua classe"""
    projection = {}
    for cls in quotient_classes(space):
        for i in cls:
            projection[space.points[i]] = space.points[cls[0]]
    return projection


def common_denominator(*spaces):
    return math.lcm(*(s.denominator for s in spaces))


def rescale(space, denominator):
    """Reescala exata para um múltiplo do denominador"""
    if denominator % space.denominator:
        raise StructuralError(
            f'Denominador {denominator} não é múltiplo de {space.denominator}')
    factor = denominator // space.denominator
    if factor == 1:
        return space
    return FiniteMetricSpace.from_matrix(space.points, denominator, space.matrix * factor,
                                         space.pseudometric)


def regrid(space, grid):
    """Reescala para mmc(q, grid) e devolve o passo da grade pedida"""
    if grid is None:
        return space, 1
    common = math.lcm(space.denominator, grid)
    return rescale(space, common), common // grid


def restrict(space, points):
    idx = [space.index_of(p) for p in points]
    return FiniteMetricSpace.from_matrix(points, space.denominator,
                                         space.matrix[np.ix_(idx, idx)], space.pseudometric)


def is_isometric_embedding(source, target, mapping):
    """mapping: ponto de source -> ponto de target"""
    if source.denominator != target.denominator:
        common = common_denominator(source, target)
        source, target = rescale(source, common), rescale(target, common)
    for x in source.points:
        for y in source.points:
            if source.d(x, y) != target.d(mapping[x], mapping[y]):
                return False
    return True


def extension_interval(space, assigned, x):
    """Intervalo admissível para a distância de um ponto virtual a x.

    assigned: índice -> distância já fixada do ponto virtual.
    """
    q = space.denominator
    row = space.matrix[x]
    lo, hi = 0, q
    for z, g in assigned.items():
        lo = max(lo, abs(g - int(row[z])))
        hi = min(hi, g + int(row[z]))
    return lo, hi


def quadrangle_holds(space, a, b, c, e):
    """Cada lado do quadrilátero a-b-c-e é <= soma dos outros três"""
    sides = [space.d(a, b), space.d(b, c), space.d(c, e), space.d(e, a)]
    total = sum(sides)
    return all(2 * s <= total for s in sides)


def amalgam_names(X, Y, glue):
    """Nome no amálgama de cada ponto de Y (colisões ganham apóstrofo)"""
    glued = {y: x for x, y in glue.items()}
    taken = set(X.points)
    names = {}
    for y in Y.points:
        if y in glued:
            names[y] = glued[y]
            continue
        name = y
        while name in taken:
            name = f"{name}'"
        taken.add(name)
        names[y] = name
    return names


def amalgam(X, Y, glue):
    """Amálgama de X e Y colados por glue (ponto de X -> ponto de Y)"""
    for x, y in glue.items():
        X.index_of(x)
        Y.index_of(y)
    if len(set(glue.values())) != len(glue):
        raise PreconditionError('Colagem não é injetiva')
    if X.denominator != Y.denominator:
        common = common_denominator(X, Y)
        logger.info(f"Reescalando amálgama para denominador {common}")
        X, Y = rescale(X, common), rescale(Y, common)

    domain = list(glue)
    for i, a in enumerate(domain):
        for b in domain[i + 1:]:
            if X.d(a, b) != Y.d(glue[a], glue[b]):
                raise PreconditionError(
                    f'Colagem não preserva distância no par ({a!r}, {b!r}): '
                    f'{X.d(a, b)} != {Y.d(glue[a], glue[b])}')

    names = amalgam_names(X, Y, glue)
    points = list(X.points) + [names[y] for y in Y.points if y not in glue.values()]
    index = {p: i for i, p in enumerate(points)}
    n = len(points)
    w = np.full((n, n), UNREACHABLE, dtype=np.int64)
    nx = X.size
    w[:nx, :nx] = X.matrix
    y_idx = [index[names[y]] for y in Y.points]
    w[np.ix_(y_idx, y_idx)] = np.minimum(w[np.ix_(y_idx, y_idx)], Y.matrix)

    result = close_weights(points, X.denominator, w, fill_unreachable=True)
    return FiniteMetricSpace(result.points, result.denominator, result.dist,
                             X.pseudometric or Y.pseudometric)


def random_grid_space(n, q, seed):
    """Espaço métrico aleatório na grade 1/q, determinístico por semente.

    Sorteia uma matriz simétrica em [1, q], fecha por caminhos mínimos e
    ressorteia cada entrada dentro do seu intervalo admissível.
    """
    if n < 1 or q < 1:
        raise PreconditionError(f'Parâmetros inválidos: n={n}, q={q}')
    rng = np.random.default_rng(seed)
    raw = rng.integers(1, q + 1, size=(n, n))
    m = np.triu(raw, 1)
    m = m + m.T
    m = floyd_warshall(m)

    for i in range(n):
        for j in range(i + 1, n):
            others = [k for k in range(n) if k != i and k != j]
            lo = max([1] + [abs(int(m[i, k]) - int(m[k, j])) for k in others])
            hi = min([q] + [int(m[i, k]) + int(m[k, j]) for k in others])
            m[i, j] = m[j, i] = rng.integers(lo, hi + 1)

    return FiniteMetricSpace.from_matrix([f'x{i + 1}' for i in range(n)], q, m)


def uniform_space(n, q, value, names=None):
    """n pontos dois a dois à distância value/q"""
    names = names or [chr(ord('a') + i) for i in range(n)]
    m = np.full((n, n), value, dtype=np.int64)
    np.fill_diagonal(m, 0)
    return FiniteMetricSpace.from_matrix(names, q, m)

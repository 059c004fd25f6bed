from dataclasses import dataclass, field
from functools import cached_property
from numbers import Integral
from typing import Optional, Tuple

import numpy as np

from src.errors import PreconditionError, StructuralError


def _check_points(points):
    if len(set(points)) != len(points):
        raise StructuralError(f'Pontos repetidos: {list(points)}')
    for p in points:
        if not isinstance(p, str) or not p:
            raise StructuralError(f'Identificador de ponto inválido: {p!r}')


def _check_denominator(q):
    if not isinstance(q, Integral) or isinstance(q, bool) or q < 1:
        raise StructuralError(f'Denominador deve ser inteiro positivo: {q!r}')


def _check_shape(points, rows):
    n = len(points)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise StructuralError(f'Matriz deve ser {n}x{n} para os pontos {list(points)}')


def check_entry(value, q, where, allow_none=False):
    if value is None and allow_none:
        return None
    if not isinstance(value, Integral) or isinstance(value, bool):
        raise StructuralError(f'Entrada {where} não é inteira: {value!r}')
    if value < 0 or value > q:
        raise StructuralError(f'Entrada {where} fora de [0, {q}]: {value}')
    return int(value)


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Espaço finito com distâncias numerador/q, diâmetro <= 1"""

    points: Tuple[str, ...]
    denominator: int
    dist: Tuple[Tuple[int, ...], ...]
    pseudometric: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        _check_points(self.points)
        _check_denominator(self.denominator)
        _check_shape(self.points, self.dist)
        rows = tuple(
            tuple(check_entry(v, self.denominator, (self.points[i], self.points[j]))
                  for j, v in enumerate(row))
            for i, row in enumerate(self.dist)
        )
        object.__setattr__(self, 'dist', rows)

    @classmethod
    def from_matrix(cls, points, denominator, matrix, pseudometric=False):
        rows = tuple(tuple(int(v) for v in row) for row in np.asarray(matrix))
        return cls(tuple(points), int(denominator), rows, pseudometric)

    @cached_property
    def matrix(self):
        m = np.array(self.dist, dtype=np.int64).reshape(len(self.points), len(self.points))
        m.setflags(write=False)
        return m

    @cached_property
    def _index(self):
        return {p: i for i, p in enumerate(self.points)}

    @property
    def size(self):
        return len(self.points)

    def index_of(self, point):
        try:
            return self._index[point]
        except KeyError:
            raise PreconditionError(f'Ponto desconhecido: {point!r}')

    def d(self, x, y):
        return self.dist[self.index_of(x)][self.index_of(y)]

    def to_dict(self):
        data = {
            'points': list(self.points),
            'denominator': self.denominator,
            'dist': [list(row) for row in self.dist],
        }
        if self.pseudometric:
            data['pseudometric'] = True
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(tuple(data['points']), data['denominator'],
                       tuple(tuple(row) for row in data['dist']),
                       bool(data.get('pseudometric', False)))
        except KeyError as e:
            raise StructuralError(f'Campo obrigatório ausente no espaço: {e}')
        except TypeError as e:
            raise StructuralError(f'Espaço malformado: {e}')

    def __repr__(self):
        return f'<FiniteMetricSpace {len(self.points)} pontos q={self.denominator}>'


@dataclass(frozen=True)
class PartialSpec:
    """Especificação parcial: entradas None são não especificadas"""

    points: Tuple[str, ...]
    denominator: int
    entries: Tuple[Tuple[Optional[int], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        _check_points(self.points)
        _check_denominator(self.denominator)
        _check_shape(self.points, self.entries)
        rows = tuple(
            tuple(check_entry(v, self.denominator, (self.points[i], self.points[j]), allow_none=True)
                  for j, v in enumerate(row))
            for i, row in enumerate(self.entries)
        )
        for i, row in enumerate(rows):
            if row[i] not in (None, 0):
                raise StructuralError(f'Diagonal não nula em {self.points[i]!r}')
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise StructuralError(
                        f'Especificação assimétrica em ({self.points[i]!r}, {self.points[j]!r})')
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(tuple(data['points']), data['denominator'],
                       tuple(tuple(row) for row in data['dist']))
        except KeyError as e:
            raise StructuralError(f'Campo obrigatório ausente na especificação: {e}')
        except TypeError as e:
            raise StructuralError(f'Especificação malformada: {e}')

    def to_dict(self):
        return {
            'points': list(self.points),
            'denominator': self.denominator,
            'dist': [list(row) for row in self.entries],
        }


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple[str, ...]

    def __str__(self):
        return f'{self.axiom} {self.witness}'


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            'valid': self.ok,
            'violations': [{'axiom': v.axiom, 'witness': list(v.witness)} for v in self.violations],
        }

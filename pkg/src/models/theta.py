from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from src.errors import StructuralError
from src.models.space import FiniteMetricSpace, check_entry


@dataclass(frozen=True)
class BiKatetovMatrix:
    """Matriz M×M com entradas numerador/q (elemento candidato de Θ)"""

    base: FiniteMetricSpace
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = self.base.size
        q = self.base.denominator
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise StructuralError(f'Matriz deve ser {n}x{n}')
        names = self.base.points
        rows = tuple(
            tuple(check_entry(v, q, (names[i], names[j])) for j, v in enumerate(row))
            for i, row in enumerate(self.entries)
        )
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def from_array(cls, base, array):
        return cls(base, tuple(tuple(int(v) for v in row) for row in np.asarray(array)))

    @cached_property
    def array(self):
        a = np.array(self.entries, dtype=np.int64).reshape(self.base.size, self.base.size)
        a.setflags(write=False)
        return a

    def __call__(self, x, y):
        return self.entries[self.base.index_of(x)][self.base.index_of(y)]

    def to_dict(self):
        return {'space': self.base.to_dict(), 'entries': [list(row) for row in self.entries]}

    @classmethod
    def from_dict(cls, data, base):
        try:
            return cls(base, tuple(tuple(row) for row in data['entries']))
        except KeyError as e:
            raise StructuralError(f'Campo obrigatório ausente na matriz: {e}')
        except TypeError as e:
            raise StructuralError(f'Matriz malformada: {e}')

    def __repr__(self):
        return f'<BiKatetovMatrix {[list(r) for r in self.entries]} /{self.base.denominator}>'

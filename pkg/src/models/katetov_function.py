from dataclasses import dataclass
from numbers import Integral
from typing import Tuple

from src.errors import StructuralError
from src.models.space import FiniteMetricSpace


@dataclass(frozen=True)
class KatetovFunction:
    """Função com valores numerador/q sobre um suporte Y de um espaço base"""

    base: FiniteMetricSpace
    support: Tuple[str, ...]
    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'support', tuple(self.support))
        object.__setattr__(self, 'values', tuple(self.values))
        if len(self.support) != len(self.values):
            raise StructuralError(
                f'Suporte com {len(self.support)} pontos e {len(self.values)} valores')
        if len(set(self.support)) != len(self.support):
            raise StructuralError(f'Suporte com pontos repetidos: {list(self.support)}')
        for y in self.support:
            self.base.index_of(y)
        q = self.base.denominator
        checked = []
        for y, v in zip(self.support, self.values):
            if not isinstance(v, Integral) or isinstance(v, bool):
                raise StructuralError(f'Valor em {y!r} não é inteiro: {v!r}')
            if v < 0 or v > q:
                raise StructuralError(f'Valor em {y!r} fora de [0, {q}]: {v}')
            checked.append(int(v))
        object.__setattr__(self, 'values', tuple(checked))

    @property
    def is_total(self):
        return set(self.support) == set(self.base.points)

    @property
    def indices(self):
        return [self.base.index_of(y) for y in self.support]

    def value(self, point):
        return self.values[self.support.index(point)]

    def as_total_vector(self):
        """Valores na ordem dos pontos do espaço (exige função total)"""
        lookup = dict(zip(self.support, self.values))
        return tuple(lookup[p] for p in self.base.points)

    def to_dict(self):
        return {
            'space': self.base.to_dict(),
            'support': list(self.support),
            'values': list(self.values),
        }

    @classmethod
    def from_dict(cls, data, base):
        try:
            return cls(base, tuple(data['support']), tuple(data['values']))
        except KeyError as e:
            raise StructuralError(f'Campo obrigatório ausente na função: {e}')
        except TypeError as e:
            raise StructuralError(f'Função malformada: {e}')

    def __str__(self):
        pairs = ', '.join(f'{y}: {v}/{self.base.denominator}' for y, v in zip(self.support, self.values))
        return '{' + pairs + '}'

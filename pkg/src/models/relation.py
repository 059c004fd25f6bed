from dataclasses import dataclass
from typing import Tuple

from src.errors import StructuralError


@dataclass(frozen=True, order=True)
class PartialIsometryRelation:
    """Conjunto finito de pares (x, y) de M×M, normalizado e ordenado"""

    pairs: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        try:
            pairs = tuple(sorted({(str(x), str(y)) for x, y in self.pairs}))
        except (TypeError, ValueError):
            raise StructuralError(f'Relação malformada: {self.pairs!r}')
        object.__setattr__(self, 'pairs', pairs)

    @classmethod
    def of(cls, pairs):
        return cls(tuple(tuple(p) for p in pairs))

    def as_set(self):
        return frozenset(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        return '{' + ', '.join(f'({x},{y})' for x, y in self.pairs) + '}'

    def to_dict(self):
        return {'pairs': [list(p) for p in self.pairs]}

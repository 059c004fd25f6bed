import re
from dataclasses import dataclass
from typing import Hashable, Tuple

from src.errors import FormatError, PreconditionError, StructuralError
from src.models.space import FiniteMetricSpace

TOKEN = re.compile(r'^([^\s^]+)(?:\^(-?1))?$')


@dataclass(frozen=True)
class GroupWord:
    """Palavra com sinais: sequência de (letra, ±1)"""

    letters: Tuple[Tuple[Hashable, int], ...] = ()

    def __post_init__(self):
        letters = tuple((x, int(e)) for x, e in self.letters)
        for pos, (_, e) in enumerate(letters, start=1):
            if e not in (1, -1):
                raise StructuralError(f'Sinal inválido na posição {pos}: {e}')
        object.__setattr__(self, 'letters', letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self):
        return format_word(self)


def parse_word(text):
    """'x y^-1 x' -> GroupWord"""
    letters = []
    for pos, token in enumerate(text.split(), start=1):
        match = TOKEN.match(token)
        if not match:
            raise FormatError(f'Token inválido na posição {pos}: {token!r}')
        letters.append((match.group(1), -1 if match.group(2) == '-1' else 1))
    return GroupWord(tuple(letters))


def format_word(word, name=str):
    if not word.letters:
        return 'e'
    return ' '.join(name(x) if e == 1 else f'{name(x)}^-1' for x, e in word.letters)


@dataclass(frozen=True)
class Pairing:
    """Arcos (i, j) com i < j, posições a partir de 0"""

    arcs: frozenset = frozenset()

    def __str__(self):
        return '{' + ', '.join(f'({i + 1},{j + 1})' for i, j in sorted(self.arcs)) + '}'


@dataclass(frozen=True)
class WeightedAlphabet:
    """Alfabeto métrico (X, d) com pesos k não-negativos e não-expansivos"""

    space: FiniteMetricSpace
    weights: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'weights', tuple(int(k) for k in self.weights))
        if len(self.weights) != self.space.size:
            raise StructuralError(
                f'{len(self.weights)} pesos para {self.space.size} letras')
        names = self.space.points
        for x, k in zip(names, self.weights):
            if k < 0:
                raise PreconditionError(f'Peso negativo na letra {x!r}: {k}')
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                if abs(self.weights[i] - self.weights[j]) > self.space.dist[i][j]:
                    raise PreconditionError(
                        f'Peso expansivo no par ({names[i]!r}, {names[j]!r})')

    @property
    def denominator(self):
        return self.space.denominator

    def distance(self, x, y):
        return self.space.d(x, y)

    def weight(self, x):
        return self.weights[self.space.index_of(x)]

    def check_word(self, word):
        for x, _ in word:
            self.space.index_of(x)
        return word

    def to_dict(self):
        return {'alphabet': self.space.to_dict(), 'weights': list(self.weights)}

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.config import Config, bound
from src.errors import EmptyComposition, GuardRefusal, InvariantBreach, PreconditionError
from src.graev import graev_norm_dp, optimal_pairing, reduce_word
from src.models.relation import PartialIsometryRelation
from src.models.words import GroupWord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationCheck:
    ok: bool
    witness: Optional[Tuple[Tuple[str, str], Tuple[str, str]]] = None


@dataclass(frozen=True)
class NuResult:
    value: Optional[int]
    witness: Optional[GroupWord]
    examined: int


def diagonal(space):
    return frozenset((x, x) for x in space.points)


def compose(r, s):
    """R∘S = {(x, y) : (x, z) ∈ S e (z, y) ∈ R}"""
    by_source = {}
    for z, y in r:
        by_source.setdefault(z, []).append(y)
    return frozenset((x, y) for x, z in s for y in by_source.get(z, ()))


def inverse(r):
    return frozenset((y, x) for x, y in r)


def _pairs(r):
    return r.as_set() if isinstance(r, PartialIsometryRelation) else frozenset(r)


def _check_points(space, r):
    for x, y in _pairs(r):
        space.index_of(x)
        space.index_of(y)


def validate_relation(space, r):
    """Verdadeiro sse d(x1,x2) = d(y1,y2) para todos os pares de R"""
    pairs = sorted(_pairs(r))
    if not pairs:
        raise PreconditionError('Relação vazia não pertence a Γ')
    _check_points(space, pairs)
    for i, (x1, y1) in enumerate(pairs):
        for x2, y2 in pairs[i + 1:]:
            if space.d(x1, x2) != space.d(y1, y2):
                return RelationCheck(False, ((x1, y1), (x2, y2)))
    return RelationCheck(True)


def require_relation(space, r):
    check = validate_relation(space, r)
    if not check.ok:
        raise PreconditionError(f'Relação não é isometria parcial: pares {check.witness}')
    return r


def hausdorff_distance(space, r, s):
    """Hausdorff sobre d₂((x1,y1),(x2,y2)) = d(x1,x2) + d(y1,y2)"""
    r, s = sorted(_pairs(r)), sorted(_pairs(s))
    if not r or not s:
        raise PreconditionError('Hausdorff exige relações não vazias')

    def d2(p, t):
        return space.d(p[0], t[0]) + space.d(p[1], t[1])

    forward = max(min(d2(p, t) for t in s) for p in r)
    backward = max(min(d2(p, t) for p in r) for t in s)
    return max(forward, backward)


def weight_k(space, r):
    """k(R) = max d(x, y) sobre (x, y) ∈ R"""
    pairs = _pairs(r)
    if not pairs:
        raise PreconditionError('k exige relação não vazia')
    return max(space.d(x, y) for x, y in pairs)


class RelationAlphabet:
    """Alfabeto (Γ, d_H, k) sobre M para a seminorma de Graev"""

    def __init__(self, space):
        self.space = space
        self._distance = {}
        self._weight = {}

    @property
    def denominator(self):
        return self.space.denominator

    def distance(self, r, s):
        key = (r, s) if r <= s else (s, r)
        if key not in self._distance:
            self._distance[key] = hausdorff_distance(self.space, r, s)
        return self._distance[key]

    def weight(self, r):
        if r not in self._weight:
            self._weight[r] = weight_k(self.space, r)
        return self._weight[r]


def letter_relation(letter):
    r, e = letter
    pairs = _pairs(r)
    return pairs if e == 1 else inverse(pairs)


def phi_of_word(space, word):
    """Φ(w) = R1^ε1 ∘ ... ∘ Rn^εn; palavra vazia -> Δ"""
    result = diagonal(space)
    for letter in reversed(word.letters):
        _check_points(space, letter[0])
        result = compose(letter_relation(letter), result)
    return result


def in_H_ab(space, word, a, b):
    space.index_of(a)
    space.index_of(b)
    return (a, b) in phi_of_word(space, word)


def nu_search(space, a, b, gens, max_len, max_words=None):
    """Mínimo de p(w) sobre palavras reduzidas de comprimento <= max_len em H_{a,b}"""
    space.index_of(a)
    space.index_of(b)
    if max_len < 0:
        raise PreconditionError(f'Comprimento máximo negativo: {max_len}')
    gens = sorted(set(gens))
    if not gens:
        raise PreconditionError('Alfabeto de geradores vazio')
    for r in gens:
        require_relation(space, r)
    limit = bound(max_words, Config.WORD_BOUND)
    alphabet = RelationAlphabet(space)
    letters = [(r, e) for r in gens for e in (1, -1)]
    images = {letter: letter_relation(letter) for letter in letters}

    best, witness = None, None
    examined = 1
    layer = [((), diagonal(space))]
    if a == b:
        best, witness = 0, GroupWord()

    for _ in range(max_len):
        following = []
        for word, image in layer:
            for letter in letters:
                if word and word[-1][0] == letter[0] and word[-1][1] == -letter[1]:
                    continue
                examined += 1
                if examined > limit:
                    raise GuardRefusal(
                        f'Busca de ν excedeu {limit} palavras', partial=best)
                extended = compose(image, images[letter])
                if not extended:
                    continue
                candidate = word + (letter,)
                following.append((candidate, extended))
                if (a, b) in extended:
                    value = graev_norm_dp(GroupWord(candidate), alphabet)
                    if best is None or value < best:
                        best, witness = value, GroupWord(candidate)
        layer = following
        if not layer:
            break

    logger.debug(f"ν({a},{b}): {examined} palavras examinadas, mínimo {best}")
    return NuResult(best, witness, examined)


def nu_truncated(space, a, b, gens, max_len, max_words=None):
    return nu_search(space, a, b, gens, max_len, max_words).value


def _signed(r, e):
    pairs = _pairs(r)
    return pairs if e == 1 else inverse(pairs)


def check_k_bounds(space, case, relations, signs):
    """Desigualdades de k para as três formas de composição curta"""
    arity = {1: 2, 2: 3, 3: 2}.get(case)
    if arity is None:
        raise PreconditionError(f'Caso desconhecido: {case}')
    if len(relations) != arity:
        raise PreconditionError(f'O caso {case} pede {arity} relações, recebeu {len(relations)}')
    if len(signs) < (1 if case == 1 else 2):
        raise PreconditionError(f'Sinais insuficientes para o caso {case}: {signs!r}')
    for r in relations:
        require_relation(space, r)
    if case == 1:
        r1, r2 = relations
        e = signs[0]
        composite = compose(_signed(r1, e), _signed(r2, -e))
        limit = hausdorff_distance(space, r1, r2)
    elif case == 2:
        r1, r2, r3 = relations
        e, delta = signs[:2]
        composite = compose(_signed(r1, e), compose(_signed(r2, delta), _signed(r3, -e)))
        limit = hausdorff_distance(space, r1, r3) + weight_k(space, r2)
    else:
        r1, r2 = relations
        e, delta = signs[:2]
        composite = compose(_signed(r1, e), _signed(r2, delta))
        limit = weight_k(space, r1) + weight_k(space, r2)
    if not composite:
        raise EmptyComposition(f'Composição vazia no caso {case}')
    return weight_k(space, composite) <= limit


def _short_span(word, alphabet):
    """Trecho [start, stop) a ser trocado por uma única letra"""
    arcs = sorted(optimal_pairing(word, alphabet).arcs, key=lambda arc: (arc[1] - arc[0], arc[0]))
    if not arcs:
        return 0, 2
    i, j = arcs[0]
    if j - i <= 2:
        return i, j + 1
    return i + 1, i + 3


def shorten_word(space, word):
    """Troca um trecho curto por t_S (S = sua composição) e reduz; p não aumenta"""
    if len(word) < 2:
        raise PreconditionError('Palavra já tem comprimento <= 1')
    if not phi_of_word(space, word):
        raise PreconditionError('Φ(w) vazio: palavra fora de todo H_{a,b}')
    alphabet = RelationAlphabet(space)
    start, stop = _short_span(word, alphabet)
    composite = phi_of_word(space, GroupWord(word.letters[start:stop]))
    letter = (PartialIsometryRelation(tuple(composite)), 1)
    shorter = reduce_word(GroupWord(word.letters[:start] + (letter,) + word.letters[stop:]))
    return shorter, letter[0]


def lower_bound_certificate(space, word, a, b):
    """Cadeia de encurtamentos até comprimento <= 1, com p(w) em cada passo"""
    if not in_H_ab(space, word, a, b):
        raise PreconditionError(f'Palavra não pertence a H_({a},{b})')
    alphabet = RelationAlphabet(space)
    chain = [(word, graev_norm_dp(word, alphabet))]
    current = word
    while len(current) > 1:
        current, _ = shorten_word(space, current)
        value = graev_norm_dp(current, alphabet)
        if value > chain[-1][1] or not in_H_ab(space, current, a, b):
            raise InvariantBreach(f'Encurtamento violou p ou H_({a},{b}) em {current}')
        chain.append((current, value))
    if chain[-1][1] < space.d(a, b):
        raise InvariantBreach(f'Cota inferior falhou: {chain[-1][1]} < d({a},{b})')
    return chain


def random_relation(space, rng, max_size=3, attempts=100):
    """Isometria parcial aleatória com até max_size pares"""
    n = space.size
    m = space.matrix
    for _ in range(attempts):
        size = int(rng.integers(1, min(max_size, n) + 1))
        domain = rng.choice(n, size=size, replace=False)
        image = rng.choice(n, size=size, replace=False)
        if (m[np.ix_(domain, domain)] == m[np.ix_(image, image)]).all():
            return PartialIsometryRelation(
                tuple((space.points[x], space.points[y]) for x, y in zip(domain, image)))
    x, y = rng.integers(n, size=2)
    return PartialIsometryRelation(((space.points[x], space.points[y]),))


def singletons(space):
    return [PartialIsometryRelation(((x, y),)) for x in space.points for y in space.points]

import logging

from src.config import Config, bound
from src.errors import GuardRefusal, PreconditionError
from src.models.words import GroupWord, Pairing

logger = logging.getLogger(__name__)


def reduce_word(word):
    """Cancela x^ε x^-ε consecutivos até a forma irredutível"""
    stack = []
    for letter in word:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return GroupWord(tuple(stack))


def invert_word(word):
    return GroupWord(tuple((x, -e) for x, e in reversed(word.letters)))


def concat(*words):
    """u|v: concatenação sem redução"""
    return GroupWord(tuple(letter for w in words for letter in w.letters))


def apply_map(phi, word):
    """φ*(w): aplica o mapa de letras"""
    return GroupWord(tuple((phi[x], e) for x, e in word.letters))


def enumerate_pairings(word, max_length=None):
    """Todos os pareamentos sem cruzamento entre letras de sinais opostos"""
    limit = bound(max_length, Config.PAIRING_BOUND)
    if len(word) > limit:
        raise GuardRefusal(
            f'Palavra de comprimento {len(word)} excede o limite {limit}; use graev_norm_dp')
    signs = [e for _, e in word]
    memo = {}

    def between(i, j):
        if i >= j:
            return [()]
        if (i, j) in memo:
            return memo[(i, j)]
        result = list(between(i + 1, j))
        for m in range(i + 1, j):
            if signs[m] == -signs[i]:
                for inner in between(i + 1, m):
                    for tail in between(m + 1, j):
                        result.append(((i, m),) + inner + tail)
        memo[(i, j)] = result
        return result

    return [Pairing(frozenset(arcs)) for arcs in between(0, len(word))]


def check_pairing(word, pairing):
    used = set()
    for i, j in pairing.arcs:
        if not 0 <= i < j < len(word):
            raise PreconditionError(f'Arco fora da palavra: ({i + 1},{j + 1})')
        if i in used or j in used:
            raise PreconditionError(f'Posição repetida no arco ({i + 1},{j + 1})')
        used.update((i, j))
        if word[i][1] != -word[j][1]:
            raise PreconditionError(f'Arco ({i + 1},{j + 1}) liga letras de mesmo sinal')
    for i, j in pairing.arcs:
        for a, b in pairing.arcs:
            if i < a < j < b:
                raise PreconditionError(f'Arcos ({i + 1},{j + 1}) e ({a + 1},{b + 1}) se cruzam')
    return pairing


def graev_sum(word, pairing, alphabet):
    """s_E: soma de d nos arcos mais k nas letras livres (sem teto)"""
    check_pairing(word, pairing)
    paired = set()
    total = 0
    for i, j in pairing.arcs:
        paired.update((i, j))
        total += alphabet.distance(word[i][0], word[j][0])
    for pos, (x, _) in enumerate(word):
        if pos not in paired:
            total += alphabet.weight(x)
    return total


def graev_norm_bruteforce(word, alphabet, max_length=None):
    return min(graev_sum(word, e, alphabet) for e in enumerate_pairings(word, max_length))


def _interval_table(word, alphabet):
    """P[i][j] sobre o intervalo [i, j) e a escolha ótima da posição i"""
    n = len(word)
    letters = [x for x, _ in word]
    signs = [e for _, e in word]
    weights = [alphabet.weight(x) for x in letters]
    dist = {}
    value = [[0] * (n + 1) for _ in range(n + 1)]
    choice = [[None] * (n + 1) for _ in range(n + 1)]
    for length in range(1, n + 1):
        for i in range(n - length + 1):
            j = i + length
            best = weights[i] + value[i + 1][j]
            pick = None
            for m in range(i + 1, j):
                if signs[m] != -signs[i]:
                    continue
                if (i, m) not in dist:
                    dist[(i, m)] = alphabet.distance(letters[i], letters[m])
                cost = dist[(i, m)] + value[i + 1][m] + value[m + 1][j]
                if cost < best:
                    best, pick = cost, m
            value[i][j] = best
            choice[i][j] = pick
    return value, choice


def graev_norm_dp(word, alphabet):
    """Seminorma de Graev por programação dinâmica em intervalos, O(n³)"""
    value, _ = _interval_table(word, alphabet)
    return value[0][len(word)]


def optimal_pairing(word, alphabet):
    """Pareamento que atinge graev_norm_dp"""
    _, choice = _interval_table(word, alphabet)
    arcs = []
    stack = [(0, len(word))]
    while stack:
        i, j = stack.pop()
        if i >= j:
            continue
        m = choice[i][j]
        if m is None:
            stack.append((i + 1, j))
        else:
            arcs.append((i, m))
            stack.append((i + 1, m))
            stack.append((m + 1, j))
    return Pairing(frozenset(arcs))


def graev_distance(u, v, alphabet):
    """D(u, v) = p(u⁻¹ v)"""
    return graev_norm_dp(reduce_word(concat(invert_word(u), v)), alphabet)

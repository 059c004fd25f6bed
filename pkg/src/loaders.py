import json
import os

from src.errors import FormatError, PreconditionError, StructuralError
from src.gh import EnumeratedPairInstance
from src.models.katetov_function import KatetovFunction
from src.models.relation import PartialIsometryRelation
from src.models.space import FiniteMetricSpace
from src.models.theta import BiKatetovMatrix
from src.models.words import GroupWord, WeightedAlphabet, parse_word
from src.relations import enumerate_K, relation_from_matrix


def load_json(path):
    try:
        with open(path, encoding='utf-8') as fh:
            return json.load(fh)
    except OSError as e:
        raise FormatError(f'Não foi possível ler {path}: {e.strerror}')
    except json.JSONDecodeError as e:
        raise FormatError(f'JSON inválido em {path}: {e}')


def _require(data, key, what):
    if not isinstance(data, dict) or key not in data:
        raise StructuralError(f'Campo {key!r} ausente em {what}')
    return data[key]


def space_from_ref(ref, base_dir='.'):
    """Espaço inline (dict) ou caminho relativo ao arquivo que o referencia"""
    if isinstance(ref, str):
        return FiniteMetricSpace.from_dict(load_json(os.path.join(base_dir, ref)))
    if isinstance(ref, dict):
        return FiniteMetricSpace.from_dict(ref)
    raise StructuralError(f'Referência de espaço inválida: {ref!r}')


def katetov_from_dict(data, base_dir='.'):
    base = space_from_ref(_require(data, 'space', 'função'), base_dir)
    return KatetovFunction.from_dict(data, base)


def matrix_from_dict(data, base_dir='.'):
    base = space_from_ref(_require(data, 'space', 'matriz'), base_dir)
    return BiKatetovMatrix.from_dict(data, base)


def alphabet_from_dict(data, base_dir='.'):
    space = space_from_ref(_require(data, 'alphabet', 'palavra'), base_dir)
    return WeightedAlphabet(space, tuple(_require(data, 'weights', 'palavra')))


def word_from_dict(data, base_dir='.', key='word'):
    alphabet = alphabet_from_dict(data, base_dir)
    word = parse_word(_require(data, key, 'palavra'))
    return alphabet, alphabet.check_word(word)


def relation_from_dict(data, base_dir='.'):
    space = space_from_ref(_require(data, 'space', 'relação'), base_dir)
    return space, PartialIsometryRelation.of(_require(data, 'pairs', 'relação'))


def relation_word_from_dict(data, base_dir='.'):
    """{"space", "relations": {nome: pares}, "word": "r1 r2^-1"}"""
    space = space_from_ref(_require(data, 'space', 'palavra de relações'), base_dir)
    named = {name: PartialIsometryRelation.of(pairs)
             for name, pairs in _require(data, 'relations', 'palavra de relações').items()}
    parsed = parse_word(data.get('word', ''))
    letters = []
    for pos, (name, sign) in enumerate(parsed, start=1):
        if name not in named:
            raise FormatError(f'Relação desconhecida na posição {pos}: {name!r}')
        letters.append((named[name], sign))
    return space, named, GroupWord(tuple(letters))


def instance_from_dict(data, base_dir='.'):
    return EnumeratedPairInstance(space_from_ref(_require(data, 'X', 'instância'), base_dir),
                                  space_from_ref(_require(data, 'Y', 'instância'), base_dir))


def from_file(loader, path):
    """Aplica um leitor *_from_dict a um arquivo, resolvendo referências pelo diretório dele"""
    return loader(load_json(path), os.path.dirname(os.path.abspath(path)))


def relation_on_k_from_dict(data, base_dir='.'):
    """{"space", "grid"?, "pairs": [[i, j], ...]} com índices na ordem de enumerate_K"""
    space = space_from_ref(_require(data, 'space', 'relação em K'), base_dir)
    grid = data.get('grid')
    if grid is not None and (not isinstance(grid, int) or isinstance(grid, bool) or grid < 1):
        raise StructuralError(f'Grade inválida: {grid!r}')
    pairs = data.get('pairs', [])
    if not isinstance(pairs, list):
        raise StructuralError(f'Campo pairs deve ser uma lista: {pairs!r}')
    carrier = enumerate_K(space, grid)
    matrix = [[False] * carrier.size for _ in range(carrier.size)]
    for pos, pair in enumerate(pairs, start=1):
        try:
            i, j = (int(v) for v in pair)
        except (TypeError, ValueError):
            raise StructuralError(f'Par malformado na posição {pos}: {pair!r}')
        if not (0 <= i < carrier.size and 0 <= j < carrier.size):
            raise PreconditionError(f'Par fora de K na posição {pos}: ({i}, {j})')
        matrix[i][j] = True
    return relation_from_matrix(carrier, matrix)

import os

from src.models.space import FiniteMetricSpace

# Fator das varreduras aleatórias (1 = rápido; aumente para escala completa)
SWEEP = int(os.getenv('URYSOHN_SWEEP', '1'))


def sweep(count):
    return count * SWEEP


# Comprimento máximo das palavras na varredura exaustiva de Graev: o número de
# palavras cresce como (2n)^L, então 4 letras sobre 4 pontos já dá 4681 palavras
WORD_LENGTH = int(os.getenv('URYSOHN_WORD_LENGTH', '4'))


def space(points, q, dist):
    return FiniteMetricSpace(tuple(points), q, tuple(tuple(r) for r in dist))

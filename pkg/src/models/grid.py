from fractions import Fraction


class GridValue:
    """Valor exato numerador/denominador, impresso sem redução"""

    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator, denominator):
        if denominator <= 0:
            raise ValueError(f'Denominador deve ser positivo: {denominator}')
        self.numerator = int(numerator)
        self.denominator = int(denominator)

    @classmethod
    def half(cls, numerator, q):
        """Valor numerator/(2q), impresso sobre q quando o numerador é par"""
        if numerator % 2 == 0:
            return cls(numerator // 2, q)
        return cls(numerator, 2 * q)

    def to_fraction(self):
        return Fraction(self.numerator, self.denominator)

    def __eq__(self, other):
        if isinstance(other, GridValue):
            return self.to_fraction() == other.to_fraction()
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        return self.to_fraction() < GridValue._coerce(other)

    def __le__(self, other):
        return self.to_fraction() <= GridValue._coerce(other)

    @staticmethod
    def _coerce(other):
        return other.to_fraction() if isinstance(other, GridValue) else Fraction(other)

    def __hash__(self):
        return hash(self.to_fraction())

    def __str__(self):
        return f'{self.numerator}/{self.denominator}'

    def __repr__(self):
        return f'<GridValue {self}>'

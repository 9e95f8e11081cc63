"""
Moebius transforms ``r -> (p r + q) / (s r + t)`` with rational coefficients.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from cdsclear.core.numbers import Number, QuadraticSurd, as_rational, simplify


@dataclass(frozen=True)
class MoebiusTransform:
    """The map ``r -> (p r + q) / (s r + t)``, stored as the matrix ``[[p, q], [s, t]]``."""

    p: Fraction
    q: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self) -> None:
        for name in ("p", "q", "s", "t"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.determinant == 0:
            raise ValueError(f"singular transform {self.coefficients}")

    @classmethod
    def identity(cls) -> MoebiusTransform:
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.p, self.q, self.s, self.t)

    @property
    def determinant(self) -> Fraction:
        return self.p * self.t - self.q * self.s

    def __call__(self, r: Number) -> Number:
        return (self.p * r + self.q) / (self.s * r + self.t)

    def __matmul__(self, other: MoebiusTransform) -> MoebiusTransform:
        """``self @ other`` applies ``other`` first."""
        return MoebiusTransform(
            self.p * other.p + self.q * other.s,
            self.p * other.q + self.q * other.t,
            self.s * other.p + self.t * other.s,
            self.s * other.q + self.t * other.t,
        )

    def then(self, other: MoebiusTransform) -> MoebiusTransform:
        """Apply ``self``, then ``other``."""
        return other @ self

    def equivalent(self, other: MoebiusTransform) -> bool:
        """Same map: the coefficient matrices agree up to a nonzero scalar."""
        a, b = self.coefficients, other.coefficients
        return all(a[i] * b[j] == a[j] * b[i] for i in range(4) for j in range(i + 1, 4))

    def fixed_points(self) -> tuple[Number, ...]:
        """Fixed points in [0, 1], ascending, in exact arithmetic.

        Solves ``s r^2 + (t - p) r - q = 0``; roots are Fractions when
        rational and QuadraticSurds otherwise. The identity fixes every
        point and gives an empty tuple.
        """
        a, b, c = self.s, self.t - self.p, -self.q
        if a == 0:
            if b == 0:
                return ()
            roots: list[Number] = [-c / b]
        else:
            disc = b * b - 4 * a * c
            if disc < 0:
                return ()
            root = QuadraticSurd.sqrt(disc)
            roots = [simplify((-b + sign * root) / (2 * a)) for sign in (1, -1)]
        unique: list[Number] = []
        for r in roots:
            if 0 <= r <= 1 and all(r != u for u in unique):
                unique.append(r)
        return tuple(sorted(unique))

    def __str__(self) -> str:
        return f"({self.p}*r + {self.q}) / ({self.s}*r + {self.t})"


def compose(transforms: Iterable[MoebiusTransform]) -> MoebiusTransform:
    """The transforms applied in sequence order."""
    result = MoebiusTransform.identity()
    for transform in transforms:
        result = transform @ result
    return result


G1_TRANSFER = MoebiusTransform(Fraction(-1), Fraction(1), Fraction(-1), Fraction(2))
G2_TRANSFER = MoebiusTransform(Fraction(0), Fraction(1), Fraction(-1), Fraction(3))
IDENTITY = MoebiusTransform.identity()

"""Job configuration shared by the CLI commands and the suite."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import DomainError
from .group import _is_probable_prime


@dataclass
class JobConfig:
    p: int = 7
    n: int = 2
    precision: int = 12
    truncation: int = 6
    char: tuple = ()
    degree: int = 2  # base-change degree N
    w: tuple | None = None  # Weyl element one-line form (of w^{-1})
    seed: int = 0

    def validate(self):
        if not _is_probable_prime(self.p):
            raise DomainError("p = %d is not prime" % self.p)
        if self.p <= self.n + 1:
            raise DomainError("need p > n+1; got p=%d, n=%d" % (self.p, self.n))
        if self.precision < 4:
            raise DomainError("precision must be >= 4")
        if self.truncation < 2:
            raise DomainError("truncation must be >= 2")
        if self.degree < 1:
            raise DomainError("base-change degree must be >= 1")
        if self.char and len(self.char) != self.n:
            raise DomainError("character needs %d components" % self.n)
        return self


def parse_char(text: str) -> tuple:
    """Comma-separated integers or fractions a/b."""
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if "/" in piece:
            num, den = piece.split("/")
            out.append(Fraction(int(num), int(den)))
        else:
            out.append(int(piece))
    return tuple(out)

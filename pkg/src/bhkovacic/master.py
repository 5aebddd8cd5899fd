"""Master-equation data for Schwarzschild perturbations.

The radial equation for a perturbation of kind beta (gravitational -3,
electromagnetic 0, scalar 1) in Schrodinger form y'' = nu(r) y has

    nu(r) = [ (s^2/4) r^4 + l(l+1) r^2 + 2(beta - l(l+1) - 1) r + 3 - 4 beta ]
            / ( r^2 (r-2)^2 )

with the black-hole mass scaled to 1 (a rescaling of r and s makes this
lossless; multiply r by M and divide s by M to restore general M).  The
frequency parameter s = 2 i sigma is carried as an exact rational; nu is
invariant under s -> -s so only s >= 0 matters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, Rational

__all__ = [
    "PerturbationKind",
    "ModeSpec",
    "NuFraction",
    "build_nu",
    "partial_fractions",
    "special_frequency",
]


class PerturbationKind(enum.Enum):
    GRAVITATIONAL = -3
    ELECTROMAGNETIC = 0
    SCALAR = 1

    @property
    def beta(self) -> int:
        return self.value

    @property
    def min_l(self) -> int:
        # lowest radiating multipole: quadrupole / dipole / monopole
        return {-3: 2, 0: 1, 1: 0}[self.value]

    @staticmethod
    def from_name(name: str) -> "PerturbationKind":
        key = name.strip().lower()
        aliases = {
            "gravitational": PerturbationKind.GRAVITATIONAL,
            "grav": PerturbationKind.GRAVITATIONAL,
            "em": PerturbationKind.ELECTROMAGNETIC,
            "electromagnetic": PerturbationKind.ELECTROMAGNETIC,
            "scalar": PerturbationKind.SCALAR,
        }
        if key not in aliases:
            raise ValueError(f"unknown perturbation kind: {name!r}")
        return aliases[key]


@dataclass(frozen=True)
class ModeSpec:
    """One perturbation mode: kind, angular index l, frequency parameter s."""

    kind: PerturbationKind
    l: int
    s: Rational

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        if self.l < self.kind.min_l:
            raise ValueError(
                f"l={self.l} below the lowest radiating multipole "
                f"{self.kind.min_l} for {self.kind.name.lower()} modes"
            )

    @property
    def beta(self) -> int:
        return self.kind.beta

    @property
    def L(self) -> int:
        """l(l+1), the angular eigenvalue."""
        return self.l * (self.l + 1)

    @property
    def mu2(self) -> int:
        """(l-1)(l+2); positive for gravitational modes."""
        return (self.l - 1) * (self.l + 2)

    @property
    def sigma0(self) -> Rational:
        """i*sigma written as a rational: s/2."""
        return self.s / 2


@dataclass(frozen=True)
class NuFraction:
    """Partial fractions of nu over r^2 (r-2)^2.

    nu = const_term + inv_r2/r^2 + inv_r/r + inv_rm2_sq/(r-2)^2 + inv_rm2/(r-2)
    """

    const_term: Rational
    inv_r2: Rational
    inv_r: Rational
    inv_rm2_sq: Rational
    inv_rm2: Rational


def build_nu(mode: ModeSpec) -> tuple:
    """Exact (numerator, denominator) of nu for the given mode."""
    s, L, beta = mode.s, mode.L, mode.beta
    numerator = Poly([3 - 4 * beta, 2 * (beta - L - 1), Fraction(L), 0, s * s / 4])
    denominator = Poly([0, 0, 4, -4, 1])  # r^2 (r-2)^2
    return numerator, denominator


def partial_fractions(mode: ModeSpec) -> NuFraction:
    s, L, beta = mode.s, mode.L, mode.beta
    return NuFraction(
        const_term=s * s / 4,
        inv_r2=Fraction(3 - 4 * beta, 4),
        inv_r=Fraction(-2 * beta - 2 * L + 1, 4),
        inv_rm2_sq=(4 * s * s - 1) / 4,
        inv_rm2=(4 * s * s + 2 * L + 2 * beta - 1) / 4,
    )


def recombine(pf: NuFraction) -> Poly:
    """Numerator of the partial-fraction sum over r^2 (r-2)^2 (sanity hook)."""
    r = Poly.x()
    rm2 = Poly((-2, 1))
    return (
        pf.const_term * (r * r * rm2 * rm2)
        + pf.inv_r2 * (rm2 * rm2)
        + pf.inv_r * (r * rm2 * rm2)
        + pf.inv_rm2_sq * (r * r)
        + pf.inv_rm2 * (r * r * rm2)
    )


def special_frequency(l: int) -> Rational:
    """Algebraically special s = l(l-1)(l+1)(l+2)/6 for radiating gravitational modes."""
    if l < 2:
        raise ValueError("algebraically special frequencies require l >= 2")
    return Fraction(l * (l - 1) * (l + 1) * (l + 2), 6)

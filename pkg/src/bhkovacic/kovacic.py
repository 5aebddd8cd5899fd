"""Kovacic's algorithm, steps 1-3, specialized to the master equation.

The pole structure of nu is the same for every mode: double poles at r=0
and r=2, order 4 at infinity.  That fixes the admissible algebraic degrees
to n in {1, 2}.  For n=1 the exponent sets produce the candidate families
G1..G8 / E1..E8 / S1..S4 with degree forms d = 1 - sum(e_c), an affine
function of the frequency parameter s.  For n=2 the integrality and parity
rules empty the candidate list outright.

The frequency s stays symbolic through enumeration (class :class:`AffineS`);
a concrete rational s enters only when a family is instantiated against a
mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Poly, Rational, rat_to_str
from .master import ModeSpec, PerturbationKind

__all__ = [
    "AffineS",
    "SingularStructure",
    "Family",
    "ThetaSpec",
    "RetentionResult",
    "LiouvillianDescriptor",
    "analyze_poles",
    "exponent_sets_n1",
    "enumerate_families_n1",
    "retain_families",
    "theta",
    "enumerate_families_n2",
    "liouvillian_form",
]


@dataclass(frozen=True)
class AffineS:
    """An expression a + b*s, exact in both coefficients."""

    a: Rational
    b: Rational = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other):
        other = _affine(other)
        return AffineS(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return AffineS(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_affine(other))

    def __rsub__(self, other):
        return _affine(other) + (-self)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return AffineS(self.a * scalar, self.b * scalar)

    __rmul__ = __mul__

    def at(self, s) -> Rational:
        return self.a + self.b * Fraction(s)

    def is_constant(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return rat_to_str(self.a)
        if self.b == 1:
            bs = "s"
        elif self.b == -1:
            bs = "-s"
        else:
            bs = f"{rat_to_str(self.b)}*s"
        if self.a == 0:
            return bs
        sign = "+" if self.b > 0 else "-"
        mag = bs.lstrip("-")
        return f"{rat_to_str(self.a)} {sign} {mag}"


def _affine(value) -> AffineS:
    if isinstance(value, AffineS):
        return value
    return AffineS(Fraction(value))


S = AffineS(0, 1)  # the symbol s itself


@dataclass(frozen=True)
class SingularStructure:
    """Pole data of nu; identical for every mode of the master equation."""

    gamma: frozenset = frozenset({"0", "2", "inf"})
    orders: tuple = (("0", 2), ("2", 2), ("inf", 4))
    gamma2_count: int = 2
    gamma_count: int = 2
    m_plus: int = 4
    L: frozenset = frozenset({1, 2})

    def order(self, point: str) -> int:
        return dict(self.orders)[point]


@dataclass(frozen=True)
class Family:
    """One candidate exponent assignment (e0, e2, einf) with its degree form."""

    label: str
    e0: AffineS
    e2: AffineS
    einf: AffineS
    degree: AffineS  # d = n - (n/h(n)) * sum(e_c)
    n: int = 1
    sign_inf: int = 0  # S(einf); only meaningful for n=1

    def degree_at(self, s) -> Rational:
        return self.degree.at(s)

    @property
    def beta_prefix(self) -> str:
        return self.label.lstrip("N2")[0]


@dataclass(frozen=True)
class ThetaSpec:
    """theta = c0/r + c2/(r-2) + cinf, the logarithmic derivative ansatz."""

    c0: AffineS
    c2: AffineS
    cinf: AffineS

    def at(self, s) -> tuple:
        return (self.c0.at(s), self.c2.at(s), self.cinf.at(s))


def analyze_poles(mode: ModeSpec) -> SingularStructure:
    """Step 1: poles of nu and the admissible degree set L.

    The denominator r^2 (r-2)^2 and the degree-4 numerator give o(0)=o(2)=2,
    o(inf)=4, hence gamma = gamma_2 = 2 and L = {1, 2}.  The numerator
    degree (and with it the order at infinity) presumes a radiating mode;
    s = 0 enters later only through the marginal-family degree checks.
    """
    return SingularStructure()


def exponent_sets_n1(mode: ModeSpec) -> tuple:
    """Step 2 for n=1: exponent sets at r=0, r=2 and infinity.

    E0 = {1/2 +- sqrt(1-beta)} (one element when beta=1), E2 = {1/2 +- s},
    Einf = {1-s, 1+s} with sign map S(1-s)=+1, S(1+s)=-1.
    """
    beta = mode.beta
    root = {(-3): 2, 0: 1, 1: 0}[beta]  # sqrt(1-beta)
    half = Fraction(1, 2)
    if root == 0:
        e0_set = (AffineS(half),)
    else:
        e0_set = (AffineS(half + root), AffineS(half - root))
    e2_set = (AffineS(half) + S, AffineS(half) - S)
    einf_set = (AffineS(1) - S, AffineS(1) + S)
    sign_map = {einf_set[0]: +1, einf_set[1]: -1}
    return e0_set, e2_set, einf_set, sign_map


_LABEL_PREFIX = {
    PerturbationKind.GRAVITATIONAL: "G",
    PerturbationKind.ELECTROMAGNETIC: "E",
    PerturbationKind.SCALAR: "S",
}


def enumerate_families_n1(mode: ModeSpec) -> list:
    """Step 3a for n=1: all exponent families, in table row order.

    Row order: e0 descending, then e2 with +s before -s, then einf with
    1-s before 1+s; degree d = 1 - (e0 + e2 + einf).
    """
    e0_set, e2_set, einf_set, sign_map = exponent_sets_n1(mode)
    prefix = _LABEL_PREFIX[mode.kind]
    families = []
    index = 1
    for e0 in e0_set:
        for e2 in e2_set:
            for einf in einf_set:
                degree = AffineS(1) - (e0 + e2 + einf)
                families.append(
                    Family(
                        label=f"{prefix}{index}",
                        e0=e0,
                        e2=e2,
                        einf=einf,
                        degree=degree,
                        n=1,
                        sign_inf=sign_map[einf],
                    )
                )
                index += 1
    return families


@dataclass(frozen=True)
class MarginalCheck:
    """One (l, s, d) verdict of the fixed-degree check on a marginal family.

    ``s`` is None when the degree form leaves the frequency free and the
    solver searched over it.
    """

    family: Family
    l: int
    s: Optional[Rational]
    d: int
    solutions: tuple  # (s, Poly) pairs found by the fixed-degree solver


@dataclass
class RetentionResult:
    retained: list = field(default_factory=list)
    marginal: list = field(default_factory=list)  # MarginalCheck entries
    discarded: list = field(default_factory=list)

    @property
    def retained_labels(self) -> list:
        return [f.label for f in self.retained]


def _marginal_points(family: Family):
    """Non-negative (s, d) pairs reachable by a bounded-degree family.

    d = a + b*s with b <= 0: for b == 0 the degree is fixed and s is free
    (reported as s=None); for b < 0 only finitely many s >= 0 give integer
    d >= 0.
    """
    a, b = family.degree.a, family.degree.b
    if b == 0:
        if a.denominator == 1 and a >= 0:
            return [(None, int(a))]
        return []
    points = []
    d = 0
    while True:
        s = (Fraction(d) - a) / b
        if s < 0:
            break
        if s >= 0:
            points.append((s, d))
        d += 1
    return points


def family_kind(family: Family) -> PerturbationKind:
    return PerturbationKind({"G": -3, "E": 0, "S": 1}[family.beta_prefix])


def retain_families(families: Sequence[Family], l_max: int = 12) -> RetentionResult:
    """Step 3b retention with the fixed-degree checks resolved.

    A family whose degree form can grow with s is retained outright.  A
    family with d < 0 for every s >= 0 is discarded.  The bounded-degree
    families are decided by solving the degree-0/1 polynomial conditions
    exactly (s kept unknown where the degree form leaves it free), for
    every angular index up to ``l_max``: a family with an admissible
    s > 0 solution is retained, the rest are reported as checked marginal
    families.
    """
    from .auxode import solve_low_degree  # deciding verdicts needs the ODEs

    result = RetentionResult()
    for family in families:
        b = family.degree.b
        if b > 0:
            result.retained.append(family)
            continue
        points = _marginal_points(family)
        if not points:
            result.discarded.append(family)
            continue
        kind = family_kind(family)
        found_any = False
        for s_value, d in points:
            if d > 1:
                raise NotImplementedError(f"marginal degree {d} > 1 for {family.label}")
            for l in range(kind.min_l, l_max + 1):
                solutions = solve_low_degree(family, d, l=l, s_fixed=s_value)
                result.marginal.append(
                    MarginalCheck(
                        family=family, l=l, s=s_value, d=d, solutions=tuple(solutions)
                    )
                )
                if solutions:
                    found_any = True
        if found_any:
            result.retained.append(family)
    return result


def theta(family: Family) -> ThetaSpec:
    """Step 3c: theta = e0/r + e2/(r-2) + S(einf) * s/2 for a retained n=1 family."""
    if family.n != 1:
        raise ValueError("theta is formed only on the n=1 branch")
    if family.sign_inf not in (+1, -1):
        raise ValueError(f"family {family.label} carries no sign at infinity")
    return ThetaSpec(c0=family.e0, c2=family.e2, cinf=S * Fraction(family.sign_inf, 2))


def enumerate_families_n2(mode: ModeSpec) -> tuple:
    """Step 2-3 for n=2: candidates and the (empty) retained list.

    E0 = {2 - 4 sqrt(1-beta), 2, 2 + 4 sqrt(1-beta)} intersected with the
    integers, E2 = {2-4s, 2, 2+4s} subject to 4s integral, Einf = {4};
    d = 2 - sum(e_c)/2.  Retention demands at least two odd exponents in a
    family; e0 and einf are always even and at most e2 can be odd, so every
    candidate is discarded, for all three kinds and every admissible s.
    """
    beta = mode.beta
    root = {(-3): 2, 0: 1, 1: 0}[beta]  # sqrt(1-beta), integral for all kinds
    if root == 0:
        e0_set = (AffineS(2),)
    else:
        e0_set = (AffineS(2 - 4 * root), AffineS(2), AffineS(2 + 4 * root))
    e2_set = (AffineS(2) - 4 * S, AffineS(2), AffineS(2) + 4 * S)
    einf = AffineS(4)
    prefix = _LABEL_PREFIX[mode.kind]
    candidates = []
    index = 1
    for e0 in e0_set:
        for e2 in e2_set:
            degree = AffineS(2) - (e0 + e2 + einf) * Fraction(1, 2)
            candidates.append(
                Family(
                    label=f"N2{prefix}{index}",
                    e0=e0,
                    e2=e2,
                    einf=einf,
                    degree=degree,
                    n=2,
                )
            )
            index += 1
    retained = [f for f in candidates if _n2_retained(f)]
    return candidates, retained


def _odd_constant(e: AffineS) -> bool:
    return e.is_constant() and e.a.denominator == 1 and e.a.numerator % 2 != 0


def _n2_retained(family: Family) -> bool:
    # retention needs at least two odd-integer exponents; e0 and einf are
    # even constants, so even granting e2 = 2 +- 4s odd status (possible
    # when 4s is an odd integer) the odd count tops out at one
    odd = sum(_odd_constant(e) for e in (family.e0, family.einf))
    if family.e2.is_constant():
        odd += _odd_constant(family.e2)
    else:
        odd += 1
    return odd >= 2


@dataclass(frozen=True)
class LiouvillianDescriptor:
    """Symbolic form of a Liouvillian solution built from a polynomial P.

    The n=1 solution of y'' = nu y is eta = P * r^p0 * (r-2)^p2 * exp(c*r);
    eta_prime (powers shifted by +-1/2) solves the master equation itself.
    """

    family_label: str
    P: Poly
    r_power: Rational
    rm2_power: Rational
    exp_rate: Rational
    r_power_master: Rational
    rm2_power_master: Rational

    def describe(self, var: str = "r") -> str:
        return (
            f"P({var}) * {var}^({rat_to_str(self.r_power_master)})"
            f" * ({var}-2)^({rat_to_str(self.rm2_power_master)})"
            f" * exp({rat_to_str(self.exp_rate)}*{var})"
        )


class NotASolutionError(ValueError):
    """P fails to solve the auxiliary equation; carries the residual."""

    def __init__(self, residual: Poly):
        super().__init__(f"polynomial is not a solution; residual {residual!r}")
        self.residual = residual


def liouvillian_form(family: Family, P: Poly, mode: ModeSpec) -> LiouvillianDescriptor:
    """Assemble the Liouvillian solution from a verified polynomial P.

    Raises :class:`NotASolutionError` when P does not solve the family's
    auxiliary equation at the mode's frequency (the zero polynomial is
    rejected the same way).
    """
    from .auxode import build_auxiliary, ode_residual

    ode = build_auxiliary(family, mode)
    residual = ode_residual(ode, P)
    if P.is_zero() or not residual.is_zero():
        raise NotASolutionError(residual)
    spec = theta(family)
    c0, c2, cinf = spec.at(mode.s)
    half = Fraction(1, 2)
    return LiouvillianDescriptor(
        family_label=family.label,
        P=P,
        r_power=c0,
        rm2_power=c2,
        exp_rate=cinf,
        r_power_master=c0 + half,
        rm2_power_master=c2 - half,
    )

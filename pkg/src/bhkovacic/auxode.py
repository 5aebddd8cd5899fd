"""Auxiliary second-order equations for the n=1 families.

A retained family with theta = c0/r + c2/(r-2) + cinf turns the search for
Liouvillian solutions into a polynomial problem:

    P'' + 2 theta P' + (theta^2 + theta' - nu) P = 0.

Cleared of denominators this is r(r-2) P'' + p1(r) P' + p0(r) P = 0 with
p1 quadratic and p0 linear in r, because the exponents c0, c2 kill the
double poles and cinf^2 cancels the constant part of nu.  The same
equation is carried in four frames: r itself, w = r-2, z = r/2 (the
confluent Heun normal form) and u = -s w.

Everything here is exact.  The module provides the general three-term
Frobenius recurrence of such an equation about either finite singular
point, a fixed-degree polynomial solver that keeps the frequency s
unknown, the closed-form polynomial behind the second algebraically
special gravitational solution together with its verification suite, a
fraction-free brute-force nullspace oracle, and the homotopic z-power
substitution linking the G7/G3 and E7/E3 confluent Heun forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .algebra import Poly, Rational, binomial, poly_gcd, rational_roots
from .elimination import nullspace
from .kovacic import AffineS, Family, theta as theta_spec
from .master import ModeSpec, PerturbationKind, special_frequency

__all__ = [
    "AuxiliaryODE",
    "Recurrence3",
    "HeunForm",
    "build_auxiliary",
    "ode_residual",
    "to_w_frame",
    "to_z_frame",
    "to_u_frame",
    "to_heun_form",
    "recurrence",
    "solve_low_degree",
    "chandrasekhar_coeffs",
    "chandrasekhar_r_frame",
    "chandrasekhar_checks",
    "verify_chandrasekhar",
    "VerificationRecord",
    "ChandrasekharCheckError",
    "brute_force_polynomial_solutions",
    "tridiagonal_system",
    "homotopic_equivalence_check",
]


@dataclass(frozen=True)
class AuxiliaryODE:
    """p2 P'' + p1 P' + p0 P = 0 in a named coordinate frame."""

    frame: str  # "r", "w", "z" or "u"
    p2: Poly
    p1: Poly
    p0: Poly
    family_label: str
    mode: ModeSpec


def _sym_coefficients(family: Family, l: int) -> tuple:
    """Cleared-ODE coefficients with s left symbolic (polynomials in s).

    Returns (p1_const, p1_lin, p1_quad, e, f): p1(r) = p1_quad r^2 +
    p1_lin r + p1_const and p0(r) = e r + f, all Poly in s.
    """
    if family.n != 1:
        raise ValueError("auxiliary equations exist only on the n=1 branch")
    spec = theta_spec(family)
    c0 = spec.c0
    if not c0.is_constant():
        raise ValueError("e0 must be frequency-independent")
    c0 = c0.a
    c2 = Poly([spec.c2.a, spec.c2.b])
    cinf = Poly([spec.cinf.a, spec.cinf.b])
    beta = _family_beta(family)
    L = l * (l + 1)
    # partial-fraction data of nu needed beyond the cancelled double poles
    b0 = Fraction(1 - 2 * beta - 2 * L, 4)
    b2 = Poly([Fraction(2 * L + 2 * beta - 1, 4), 0, 1])  # (4s^2+2L+2beta-1)/4
    t0 = 2 * c0 * cinf - Poly.const(b0)
    t2 = 2 * c2 * cinf - b2
    e = t0 + t2
    f = 2 * c0 * c2 - 2 * t0
    p1_const = Poly.const(-4 * c0)
    p1_lin = 2 * c0 + 2 * c2 - 4 * cinf
    p1_quad = 2 * cinf
    return p1_const, p1_lin, p1_quad, e, f


def _family_beta(family: Family) -> int:
    return {"G": -3, "E": 0, "S": 1}[family.beta_prefix]


def build_auxiliary(family: Family, mode: ModeSpec) -> AuxiliaryODE:
    """Exact cleared equation r(r-2) P'' + p1 P' + p0 P = 0 for the mode."""
    if mode.beta != _family_beta(family):
        raise ValueError(
            f"family {family.label} belongs to beta={_family_beta(family)}, "
            f"mode has beta={mode.beta}"
        )
    p1_const, p1_lin, p1_quad, e, f = _sym_coefficients(family, mode.l)
    s = mode.s
    p1 = Poly([p1_const.eval(s), p1_lin.eval(s), p1_quad.eval(s)])
    p0 = Poly([f.eval(s), e.eval(s)])
    p2 = Poly([0, -2, 1])  # r(r-2)
    return AuxiliaryODE("r", p2, p1, p0, family.label, mode)


def ode_residual(ode: AuxiliaryODE, P: Poly) -> Poly:
    return ode.p2 * P.derivative().derivative() + ode.p1 * P.derivative() + ode.p0 * P


def to_w_frame(ode: AuxiliaryODE) -> AuxiliaryODE:
    """Shift r = w + 2; the horizon singular point moves to the origin."""
    if ode.frame != "r":
        raise ValueError("w frame is reached from the r frame")
    return AuxiliaryODE(
        "w",
        ode.p2.shift(2),
        ode.p1.shift(2),
        ode.p0.shift(2),
        ode.family_label,
        ode.mode,
    )


def to_z_frame(ode: AuxiliaryODE) -> AuxiliaryODE:
    """Substitute r = 2z; singular points land on 0 and 1 (Heun normal form).

    With d/dr = (1/2) d/dz the cleared equation becomes
    z(z-1) p'' + (1/2) p1(2z) p' + p0(2z) p = 0.
    """
    if ode.frame != "r":
        raise ValueError("z frame is reached from the r frame")
    return AuxiliaryODE(
        "z",
        Poly([0, -1, 1]),
        ode.p1.scale_variable(2) * Fraction(1, 2),
        ode.p0.scale_variable(2),
        ode.family_label,
        ode.mode,
    )


def to_u_frame(ode: AuxiliaryODE) -> AuxiliaryODE:
    """Substitute w = -u/s in the w-frame equation (requires s != 0).

    Coefficient vectors transform by P_n(u) = P_n(w) / (-s)^n.
    """
    if ode.frame != "w":
        raise ValueError("u frame is reached from the w frame")
    s = ode.mode.s
    if s == 0:
        raise ValueError("u frame needs a nonzero frequency")
    inv = Fraction(-1, 1) / s
    # d/dw = -s d/du; second derivative picks up s^2
    p2 = ode.p2.scale_variable(inv) * (s * s)
    p1 = ode.p1.scale_variable(inv) * (-s)
    p0 = ode.p0.scale_variable(inv)
    return AuxiliaryODE("u", p2, p1, p0, ode.family_label, ode.mode)


@dataclass(frozen=True)
class HeunForm:
    """z(z-1) P'' + (a z^2 + b z + c) P' + (d + e z) P = 0.

    The quadratic term of the P coefficient is absent by construction; a
    degree-n polynomial solution forces e = -a n.
    """

    a: Rational
    b: Rational
    c: Rational
    d: Rational
    e: Rational

    def apply(self, P: Poly) -> Poly:
        return (
            Poly([0, -1, 1]) * P.derivative().derivative()
            + Poly([self.c, self.b, self.a]) * P.derivative()
            + Poly([self.d, self.e]) * P
        )

    def params(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.e)


def to_heun_form(ode: AuxiliaryODE) -> HeunForm:
    z_ode = to_z_frame(ode) if ode.frame == "r" else ode
    if z_ode.frame != "z":
        raise ValueError("Heun form is read off the z frame")
    p1, p0 = z_ode.p1, z_ode.p0
    if p0.degree > 1:
        raise ValueError("P coefficient has a quadratic term; not confluent Heun")
    return HeunForm(a=p1[2], b=p1[1], c=p1[0], d=p0[0], e=p0[1])


@dataclass(frozen=True)
class Recurrence3:
    """Three-term relation for Frobenius coefficients about a singular point.

    For P = sum lam_k t^(k+rho) with t the distance to the point, row k of
    the residual reads lower(k) lam_{k-1} + diag(k) lam_k + upper(k)
    lam_{k+1} = 0 (lam_{-1} = 0), with

        lower(k) = a (k+rho-1) + e
        diag(k)  = (k+rho)(alpha (k+rho-1) + b) + f
        upper(k) = (k+rho+1)(beta (k+rho) + c)

    where p2 = alpha t^2 + beta t, p1 = a t^2 + b t + c and p0 = e t + f
    after shifting the point to the origin.
    """

    frame: str
    point: Rational
    rho: Rational
    alpha: Rational
    beta: Rational
    a: Rational
    b: Rational
    c: Rational
    e: Rational
    f: Rational

    def lower(self, k) -> Rational:
        return self.a * (k + self.rho - 1) + self.e

    def diag(self, k) -> Rational:
        m = k + self.rho
        return m * (self.alpha * (m - 1) + self.b) + self.f

    def upper(self, k) -> Rational:
        m = k + self.rho
        return (m + 1) * (self.beta * m + self.c)

    def row(self, k) -> tuple:
        return (self.lower(k), self.diag(k), self.upper(k))

    def indicial_roots(self) -> tuple:
        return (Fraction(0), 1 - self.c / self.beta)

    def residual_rows(self, coeffs: Sequence[Rational], rows: int) -> list:
        """Row values of the recurrence applied to a coefficient vector."""
        def at(k):
            return coeffs[k] if 0 <= k < len(coeffs) else Fraction(0)

        return [
            self.lower(k) * at(k - 1) + self.diag(k) * at(k) + self.upper(k) * at(k + 1)
            for k in range(rows)
        ]


def recurrence(ode: AuxiliaryODE, point, rho) -> Recurrence3:
    """Three-term recurrence of ode about a finite regular singular point.

    ``point`` is given in the ode's own coordinate; ``rho`` must be a root
    of the indicial equation there.
    """
    point = Fraction(point)
    rho = Fraction(rho)
    p2s = ode.p2.shift(point)
    p1s = ode.p1.shift(point)
    p0s = ode.p0.shift(point)
    if p2s[0] != 0 or p2s[1] == 0:
        raise ValueError(f"{point} is not a regular singular point in frame {ode.frame}")
    if ode.p2.degree > 2 or ode.p1.degree > 2 or ode.p0.degree > 1:
        raise ValueError("coefficients exceed the cleared-form degrees")
    alpha, beta = p2s[2], p2s[1]
    c = p1s[0]
    if rho * (beta * (rho - 1) + c) != 0:
        raise ValueError(f"rho={rho} is not an indicial root at {point}")
    return Recurrence3(
        frame=ode.frame,
        point=point,
        rho=rho,
        alpha=alpha,
        beta=beta,
        a=p1s[2],
        b=p1s[1],
        c=c,
        e=p0s[1],
        f=p0s[0],
    )


# ---------------------------------------------------------------------------
# fixed-degree polynomial solutions with the frequency unknown
# ---------------------------------------------------------------------------


def solve_low_degree(
    family: Family, d: int, l: Optional[int] = None, s_fixed=None
) -> List[tuple]:
    """All (s, P) with P a degree-d polynomial solution, d in {0, 1}.

    The residual of a monic degree-d trial polynomial is linear in r plus,
    for d=1, a possible r^2 term; its coefficients are polynomials in s
    (and linear in the unknown constant term k when d=1).  The system is
    solved exactly.  When ``s_fixed`` is None only solutions with s > 0
    are returned (static and anti-damped candidates are inadmissible); a
    fixed s is checked verbatim.
    """
    if d not in (0, 1):
        raise ValueError("fixed-degree solver covers d in {0, 1} only")
    if l is None:
        raise ValueError("an angular index l is required")
    p1_const, p1_lin, p1_quad, e, f = _sym_coefficients(family, l)

    if d == 0:
        # residual = p0 = e r + f
        if s_fixed is not None:
            s0 = Fraction(s_fixed)
            return [(s0, Poly.one())] if e.eval(s0) == 0 and f.eval(s0) == 0 else []
        roots = _common_rational_roots(e, f)
        return [(s0, Poly.one()) for s0 in roots if s0 > 0]

    # d == 1, monic trial P = r + k:
    #   residual = (R2) r^2 + (A + e k) r + (B + f k)
    R2 = p1_quad + e
    A = p1_lin + f
    B = p1_const

    def solve_k_at(s0) -> Optional[Rational]:
        ev, fv = e.eval(s0), f.eval(s0)
        av, bv = A.eval(s0), B.eval(s0)
        if ev != 0:
            k = -av / ev
            return k if bv + fv * k == 0 else None
        if av != 0:
            return None
        if fv != 0:
            return -bv / fv
        if bv != 0:
            return None
        raise NotImplementedError("one-parameter family of degree-1 solutions")

    if s_fixed is not None:
        s0 = Fraction(s_fixed)
        if R2.eval(s0) != 0:
            return []
        k = solve_k_at(s0)
        return [(s0, Poly([k, 1]))] if k is not None else []

    # s unknown: eliminate k; common zeros of R2 and W = e B - f A
    W = e * B - f * A
    if R2.is_zero():
        if W.is_zero():
            raise NotImplementedError("degenerate degree-1 system")
        candidates = _certified_rational_roots(W)
    else:
        g = R2 if W.is_zero() else poly_gcd(R2, W)
        if g.degree == 0:
            return []
        candidates = _certified_rational_roots(g)
    out = []
    for s0 in candidates:
        if s0 <= 0:
            continue
        if not R2.is_zero() and R2.eval(s0) != 0:
            continue
        k = solve_k_at(s0)
        if k is not None:
            out.append((s0, Poly([k, 1])))
    return out


def _common_rational_roots(p: Poly, q: Poly) -> list:
    if p.is_zero() and q.is_zero():
        raise NotImplementedError("every frequency admits a constant solution")
    if p.is_zero():
        return _certified_rational_roots(q)
    if q.is_zero():
        return _certified_rational_roots(p)
    g = poly_gcd(p, q)
    if g.degree == 0:
        return []
    return _certified_rational_roots(g)


def _certified_rational_roots(p: Poly) -> list:
    """Rational roots, with a proof that no further real roots hide in p.

    After dividing out the rational roots the cofactor must have no real
    zeros (checked for degree <= 2); otherwise an exact answer would need
    algebraic numbers and we refuse loudly rather than silently drop a
    candidate frequency.
    """
    roots = rational_roots(p)
    cofactor = p
    for r0 in roots:
        while cofactor.eval(r0) == 0 and cofactor.degree > 0:
            cofactor, rem = cofactor.divmod(Poly([-r0, 1]))
            if not rem.is_zero():
                raise ArithmeticError("root division failed")
    if cofactor.degree <= 0:
        return roots
    if cofactor.degree == 2:
        a2, a1, a0 = cofactor[2], cofactor[1], cofactor[0]
        if a1 * a1 - 4 * a2 * a0 < 0:
            return roots
    raise NotImplementedError(
        "irrational candidate frequencies are outside the exact solver's scope"
    )


# ---------------------------------------------------------------------------
# the closed-form polynomial of the second algebraically special solution
# ---------------------------------------------------------------------------


def chandrasekhar_coeffs(l: int) -> Poly:
    """Degree 4 sigma0 + 1 polynomial P(w) solving the G7 equation.

    At the algebraically special frequency s = 2 sigma0 the coefficients
    are, with mu2 = (l-1)(l+2):

        P_top   = 1 / (2 sigma0 mu2)                       (top = 4 sigma0 + 1)
        P_top-1 = (mu2 - 3) / (sigma0 mu2^2)
        P_n     = 3 (-2 sigma0)^(n-4 sigma0-1) (4 sigma0)! (mu2 - 6 sigma0)
                  [ (n - 4 sigma0) mu2 - 12 sigma0 ]
                  / ( n! (mu2 + 12 sigma0) sigma0 mu2^3 )   for n <= 4 sigma0 - 1.
    """
    if l < 2:
        raise ValueError("the algebraically special branch needs l >= 2")
    s = special_frequency(l)
    sigma0 = s / 2
    mu2 = Fraction((l - 1) * (l + 2))
    four_sig = int(4 * sigma0)
    top = four_sig + 1
    coeffs = [Fraction(0)] * (top + 1)
    coeffs[top] = 1 / (2 * sigma0 * mu2)
    coeffs[top - 1] = (mu2 - 3) / (sigma0 * mu2 ** 2)
    # iterate the factorial pieces instead of recomputing them per n
    fact_4sig = 1
    for i in range(2, four_sig + 1):
        fact_4sig *= i
    base = 3 * (mu2 - 6 * sigma0) / ((mu2 + 12 * sigma0) * sigma0 * mu2 ** 3)
    power = Fraction(-2 * sigma0) ** (-four_sig - 1)  # (-2 sigma0)^(n-4s0-1) at n=0
    n_fact = 1
    for n in range(0, four_sig):
        if n > 0:
            n_fact *= n
            power *= -2 * sigma0
        coeffs[n] = base * fact_4sig * power * ((n - four_sig) * mu2 - 12 * sigma0) / n_fact
    return Poly(coeffs)


def _g7_family() -> Family:
    # G7 exponents: (-3/2, 1/2 - s, 1 - s), S(1-s) = +1
    return Family(
        label="G7",
        e0=AffineS(Fraction(-3, 2)),
        e2=AffineS(Fraction(1, 2), -1),
        einf=AffineS(1, -1),
        degree=AffineS(1, 2),
        n=1,
        sign_inf=+1,
    )


def _g7_ode(l: int) -> AuxiliaryODE:
    s = special_frequency(l)
    mode = ModeSpec(PerturbationKind.GRAVITATIONAL, l, s)
    return build_auxiliary(_g7_family(), mode)


def chandrasekhar_r_frame(l: int) -> Poly:
    """The same polynomial written in r, P(r) = P(w+2).

    Computed by running the r-frame three-term recurrence downward from
    the leading coefficient (an O(degree) route that avoids the quadratic
    cost of a Taylor shift); the otherwise-unused bottom row of the
    recurrence is then checked, which certifies the result.
    """
    s = special_frequency(l)
    ode = _g7_ode(l)
    rec = recurrence(ode, 0, 0)
    d = int(2 * s + 1)
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[d] = chandrasekhar_coeffs(l).leading()
    for m in range(d, 0, -1):
        low = rec.lower(m)
        if low == 0:
            raise ArithmeticError("unexpected zero in the downward recurrence")
        nxt = coeffs[m + 1] if m + 1 <= d else Fraction(0)
        coeffs[m - 1] = -(rec.diag(m) * coeffs[m] + rec.upper(m) * nxt) / low
    if rec.diag(0) * coeffs[0] + rec.upper(0) * coeffs[1] != 0:
        raise ArithmeticError("bottom recurrence row failed; not a solution")
    return Poly(coeffs)


class ChandrasekharCheckError(AssertionError):
    """A verification check failed; names the first violated identity."""

    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"check failed: {check}" + (f" ({detail})" if detail else ""))
        self.check = check


@dataclass(frozen=True)
class VerificationRecord:
    l: int
    s: Rational
    degree: int
    recurrence_ok: bool
    ode_residual_ok: bool
    integral_identity_ok: bool
    sign_pattern_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.recurrence_ok
            and self.ode_residual_ok
            and self.integral_identity_ok
            and self.sign_pattern_ok
        )


def chandrasekhar_checks(l: int, P_w: Optional[Poly] = None) -> VerificationRecord:
    """Run the four exactness checks; P_w may be overridden to probe soundness.

    (i)  every row of the three-term recurrence about w=0 vanishes;
    (ii) the cleared equation has zero residual, in both the w and r frames;
    (iii) (P' + 2 sigma0 P)(mu2 r + 6) - mu2 P = r^3 (r-2)^(4 sigma0 - 1),
          checked in w (shift-free) and in r;
    (iv) the r-frame coefficients alternate: sgn(p_n) = (-1)^(n+1).
    """
    s = special_frequency(l)
    sigma0 = s / 2
    mu2 = Fraction((l - 1) * (l + 2))
    if P_w is None:
        P_w = chandrasekhar_coeffs(l)
    d = int(2 * s + 1)
    ode_r = _g7_ode(l)
    ode_w = to_w_frame(ode_r)

    rec_w = recurrence(ode_w, 0, 0)
    rec_rows = rec_w.residual_rows(list(P_w[k] for k in range(d + 1)), d + 2)
    recurrence_ok = all(v == 0 for v in rec_rows)

    residual_w = ode_residual(ode_w, P_w)
    if recurrence_ok and residual_w.is_zero():
        P_r = chandrasekhar_r_frame(l)
        residual_r = ode_residual(ode_r, P_r)
    else:
        P_r = P_w.shift(-2)  # mutated input: fall back to the direct shift
        residual_r = ode_residual(ode_r, P_r)
    ode_residual_ok = residual_w.is_zero() and residual_r.is_zero()

    four_sig = int(4 * sigma0)
    lhs_w = (P_w.derivative() + 2 * sigma0 * P_w) * Poly([2 * mu2 + 6, mu2]) - mu2 * P_w
    rhs_w = Poly.monomial(four_sig - 1) * Poly([8, 12, 6, 1])  # w^(4s0-1) (w+2)^3
    lhs_r = (P_r.derivative() + 2 * sigma0 * P_r) * Poly([6, mu2]) - mu2 * P_r
    rhs_r = Poly.monomial(3) * _binomial_power(-2, four_sig - 1)
    integral_identity_ok = lhs_w == rhs_w and lhs_r == rhs_r

    sign_pattern_ok = all(
        P_r[n] != 0 and (P_r[n] > 0) == (n % 2 == 1) for n in range(d + 1)
    )
    return VerificationRecord(
        l=l,
        s=s,
        degree=d,
        recurrence_ok=recurrence_ok,
        ode_residual_ok=ode_residual_ok,
        integral_identity_ok=integral_identity_ok,
        sign_pattern_ok=sign_pattern_ok,
    )


def _binomial_power(c: int, n: int) -> Poly:
    """(x + c)^n by direct binomial expansion."""
    return Poly([binomial(n, k) * Fraction(c) ** (n - k) for k in range(n + 1)])


_CHECK_ORDER = (
    ("recurrence_ok", "three-term recurrence rows"),
    ("ode_residual_ok", "cleared-equation residual"),
    ("integral_identity_ok", "elementary-integral identity"),
    ("sign_pattern_ok", "alternating sign pattern"),
)


def verify_chandrasekhar(l: int) -> VerificationRecord:
    """All four checks, raising on the first violated identity."""
    record = chandrasekhar_checks(l)
    for attr, name in _CHECK_ORDER:
        if not getattr(record, attr):
            raise ChandrasekharCheckError(name, f"l={l}")
    return record


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def _series_rows(ode: AuxiliaryODE, d: int, rows: int) -> list:
    """Residual rows of a degree-d power-series ansatz about the frame origin."""
    rec = recurrence(ode, 0, 0)
    matrix = []
    for m in range(rows):
        row = [Fraction(0)] * (d + 1)
        if 0 <= m - 1 <= d:
            row[m - 1] = rec.lower(m)
        if 0 <= m <= d:
            row[m] = rec.diag(m)
        if 0 <= m + 1 <= d:
            row[m + 1] = rec.upper(m)
        matrix.append(row)
    return matrix


def brute_force_polynomial_solutions(ode: AuxiliaryODE, d: int) -> List[Poly]:
    """Exact basis of degree <= d polynomial solutions (possibly empty).

    Sets up every residual row of the ansatz sum lam_k x^k (rows 0..d+1;
    the top one vanishes identically exactly when d matches the family's
    degree formula) and solves the homogeneous system by fraction-free
    elimination.
    """
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    matrix = _series_rows(ode, d, d + 2)
    return [Poly(vec) for vec in nullspace(matrix)]


def tridiagonal_system(ode: AuxiliaryODE, d: int) -> list:
    """The (d+1) x (d+1) candidate system (rows 0..d) as rational rows."""
    return _series_rows(ode, d, d + 1)


# ---------------------------------------------------------------------------
# homotopic z-power substitution
# ---------------------------------------------------------------------------


def homotopic_shift_params(h: HeunForm, m: int) -> HeunForm:
    """Parameters after P = z^m P1; for m = 1 + c this preserves the class."""
    return HeunForm(
        a=h.a,
        b=h.b + 2 * m,
        c=h.c - 2 * m,
        d=h.d + m * (m - 1) + m * h.b,
        e=h.e + m * h.a,
    )


@dataclass(frozen=True)
class HomotopyReport:
    pairs: tuple
    samples: tuple
    max_monomial: int
    parameter_maps_ok: bool
    operator_identities_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.parameter_maps_ok and self.operator_identities_ok


def homotopic_equivalence_check(
    l_samples: Sequence[int] = (2, 3),
    s_samples: Sequence = (1, 2, Fraction(7, 3)),
    max_monomial: int = 8,
) -> HomotopyReport:
    """Exact equivalences G7 -> G3 (P = z^4 P1) and E7 -> E3 (P = z^2 P1).

    For each sampled mode the substitution identity
    R_orig(z^m q) = z^m R_mapped(q) is applied to the monomials q = z^k,
    k = 0..max_monomial, and the mapped parameter tuple is compared with
    the target family's confluent Heun form.  m = 0 (the identity
    substitution) is included as a degenerate case.
    """
    from .kovacic import enumerate_families_n1

    pairs = (("G7", "G3", 4), ("E7", "E3", 2))
    params_ok = True
    identities_ok = True
    samples = []
    for l in l_samples:
        for s in s_samples:
            for orig_label, target_label, m in pairs:
                kind = PerturbationKind.GRAVITATIONAL if orig_label[0] == "G" else (
                    PerturbationKind.ELECTROMAGNETIC
                )
                if l < kind.min_l:
                    continue
                mode = ModeSpec(kind, l, Fraction(s))
                fams = {f.label: f for f in enumerate_families_n1(mode)}
                orig = to_heun_form(build_auxiliary(fams[orig_label], mode))
                target = to_heun_form(build_auxiliary(fams[target_label], mode))
                if m != 1 + orig.c:
                    raise AssertionError("substitution power must be 1 + c")
                mapped = homotopic_shift_params(orig, m)
                if mapped.params() != target.params():
                    params_ok = False
                for k in range(max_monomial + 1):
                    lhs = orig.apply(Poly.monomial(m + k))
                    rhs = Poly.monomial(m) * target.apply(Poly.monomial(k))
                    if lhs != rhs:
                        identities_ok = False
                    if orig.apply(Poly.monomial(k)) != homotopic_shift_params(
                        orig, 0
                    ).apply(Poly.monomial(k)):
                        identities_ok = False
            samples.append((l, Fraction(s)))
    return HomotopyReport(
        pairs=pairs,
        samples=tuple(samples),
        max_monomial=max_monomial,
        parameter_maps_ok=params_ok,
        operator_identities_ok=identities_ok,
    )

"""Radial wavefunctions and quadrature cross-checks for the screened
Coulomb problem.

The reduced radial function of the unscreened problem is
chi(r) = N r^(l+1) exp(-beta r) L_n^(2l+1)(2 beta r) with beta = A/(n+l+1);
its normalization is fixed numerically.  The screening corrections ride on
top of chi through two low-order superpotentials (linear and quadratic
polynomials in r) whose integral builds the moderating factor
u(r) = exp(-int_0^r (W1 + W2)), and the moderated wavefunction is chi * u.

``correction_via_quadrature`` re-derives the per-order energy shifts as
integrals over chi^2, which is the internal consistency oracle for the
closed forms in :mod:`yukawa_atom.perturbation`.  Superpotentials here carry
the sqrt(2m)/hbar rescaling (slope -N delta^2 / 2 at first order), so the
squared first-order term enters the second-order integrand as W1^2/2 while
the third-order integrand takes the plain product W1*W2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .perturbation import AtomicSystem, QuantumState

__all__ = [
    "QuadratureError",
    "LaguerreSpec",
    "laguerre_eval",
    "CoulombRadial",
    "coulomb_chi",
    "SuperpotentialPoly",
    "superpotential_w1",
    "superpotential_w2",
    "moderating_u",
    "ModeratedRadial",
    "moderated_radial",
    "full_wavefunction",
    "correction_via_quadrature",
]

#: Integration window scale: chi^2 decays as exp(-2 A r / N), so 40 N^2 / A
#: leaves a tail below 1e-12 of the norm (exponent -80 N at the cutoff).
R_MAX_SCALE = 40.0

_QUAD_OPTS = dict(limit=400, epsabs=1e-13, epsrel=1e-13)


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature cannot reach the requested accuracy."""

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(f"{message} (value={value!r}, estimated error={error_estimate!r})")
        self.value = value
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class LaguerreSpec:
    """Degree ``n`` and upper index ``k`` of an associated Laguerre polynomial."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError(f"Laguerre indices must be non-negative, got n={self.n} k={self.k}")

    @property
    def value_at_zero(self) -> float:
        return math.comb(self.n + self.k, self.n)


def laguerre_eval(spec: LaguerreSpec, x):
    """Associated Laguerre polynomial by the stable three-term recurrence.

    Accepts scalars or ndarrays.  Equivalent to the explicit alternating sum
    sum_m (-1)^m (n+k)! / ((n-m)! (m+k)! m!) x^m.
    """
    x = np.asarray(x, dtype=float)
    n, k = spec.n, spec.k
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + k - x
    for j in range(2, n + 1):
        prev, cur = cur, ((2.0 * j - 1.0 + k - x) * cur - (j - 1.0 + k) * prev) / j
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class CoulombRadial:
    """Evaluable reduced radial function of the unscreened (Coulomb) problem.

    ``norm`` is fixed by quadrature so that the square integrates to one on
    [0, r_max]; the truncated tail is checked to be negligible.
    """

    a: float
    state: QuantumState
    beta: float
    norm: float
    r_max: float
    _laguerre: LaguerreSpec = field(repr=False)

    def unnormalized(self, r):
        r = np.asarray(r, dtype=float)
        val = (
            r ** (self.state.l + 1)
            * np.exp(-self.beta * r)
            * laguerre_eval(self._laguerre, 2.0 * self.beta * r)
        )
        return val if val.ndim else float(val)

    def __call__(self, r):
        val = self.norm * np.asarray(self.unnormalized(r))
        return val if val.ndim else float(val)


def coulomb_chi(system: AtomicSystem, state: QuantumState) -> CoulombRadial:
    """Construct the numerically normalized Coulomb radial function."""
    big_n = state.big_n
    n, l = state.n, state.l
    beta = system.a / big_n
    spec = LaguerreSpec(n, 2 * l + 1)
    r_max = R_MAX_SCALE * big_n * big_n / system.a

    # Precondition the integrand to O(1) so the quadrature works in relative
    # terms for any coupling; the final norm still comes from the quadrature.
    scale = math.sqrt(
        (2.0 * beta) ** -(2 * l + 3)
        * math.factorial(n + 2 * l + 1) / math.factorial(n)
        * 2.0 * big_n
    )

    def density(r):
        return (
            r ** (l + 1)
            * math.exp(-beta * r)
            * laguerre_eval(spec, 2.0 * beta * r)
            / scale
        ) ** 2

    main, main_err = quad(density, 0.0, r_max, **_QUAD_OPTS)
    if main <= 0 or main_err > max(1e-11, 1e-9 * main):
        raise QuadratureError("normalization integral did not converge", main, main_err)
    tail, _ = quad(density, r_max, np.inf, **_QUAD_OPTS)
    if tail > 1e-12 * main:
        raise QuadratureError("truncated tail is not negligible", tail, tail / main)
    return CoulombRadial(
        a=system.a, state=state, beta=beta, norm=1.0 / (scale * math.sqrt(main)),
        r_max=r_max, _laguerre=spec,
    )


@dataclass(frozen=True)
class SuperpotentialPoly:
    """Polynomial superpotential sum(c_i r^i), coefficients in ascending order."""

    coefficients: tuple[float, ...]
    order_tag: int

    def __call__(self, r):
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * r + c
        return acc

    def integral(self, r):
        """Antiderivative from 0 to r, term by term."""
        acc = 0.0
        for i in reversed(range(len(self.coefficients))):
            acc = acc * r + self.coefficients[i] / (i + 1)
        return acc * r


def superpotential_w1(state: QuantumState, delta: float) -> SuperpotentialPoly:
    """First-order superpotential, linear with slope -N delta^2 / 2."""
    slope = -state.big_n * delta * delta / 2.0
    return SuperpotentialPoly(coefficients=(0.0, slope), order_tag=1)


def superpotential_w2(a: float, state: QuantumState, delta: float) -> SuperpotentialPoly:
    """Second-order superpotential -N [A r + N(N+1)] [3 N^2 delta - 4A] delta^3 r / (24 A^2)."""
    big_n = float(state.big_n)
    k = -big_n * (3.0 * big_n**2 * delta - 4.0 * a) * delta**3 / (24.0 * a * a)
    return SuperpotentialPoly(
        coefficients=(0.0, k * big_n * (big_n + 1.0), k * a), order_tag=2
    )


def _exponent_coefficients(a: float, state: QuantumState, delta: float) -> tuple[float, float]:
    """(r^2, r^3) coefficients of -int_0^r (W1 + W2), the moderating exponent."""
    w1 = superpotential_w1(state, delta)
    w2 = superpotential_w2(a, state, delta)
    linear = w1.coefficients[1] + w2.coefficients[1]
    quadratic = w2.coefficients[2]
    return -linear / 2.0, -quadratic / 3.0


def moderating_u(a: float, state: QuantumState, delta: float, r):
    """Moderating factor exp(-int_0^r (W1 + W2) dx), normalized to u(0) = 1."""
    c2, c3 = _exponent_coefficients(a, state, delta)
    r = np.asarray(r, dtype=float)
    val = np.exp((c2 + c3 * r) * r * r)
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class ModeratedRadial:
    """Moderated wavefunction chi(r) * u(r), renormalized to unit norm."""

    chi: CoulombRadial
    delta: float
    norm: float

    def __call__(self, r):
        raw = np.asarray(self.chi(r)) * np.asarray(
            moderating_u(self.chi.a, self.chi.state, self.delta, r)
        )
        val = self.norm * raw
        return val if val.ndim else float(val)


def moderated_radial(system: AtomicSystem, state: QuantumState, delta: float) -> ModeratedRadial:
    """Build the renormalized moderated wavefunction for repeated evaluation.

    Only defined in the perturbative regime 3 N^2 delta < 4 A; past that
    point the moderating exponent grows with r and the product chi * u is
    not normalizable.
    """
    big_n = state.big_n
    if 3.0 * big_n**2 * delta >= 4.0 * system.a:
        raise ValueError(
            f"moderating factor grows without bound for delta={delta} at "
            f"N={big_n}, A={system.a} (needs 3 N^2 delta < 4 A)"
        )
    chi = coulomb_chi(system, state)

    def density(r):
        return (chi(r) * moderating_u(system.a, state, delta, r)) ** 2

    nrm2, err = quad(density, 0.0, chi.r_max, **_QUAD_OPTS)
    if nrm2 <= 0 or err > 1e-9 * nrm2:
        raise QuadratureError("moderated normalization did not converge", nrm2, err)
    return ModeratedRadial(chi=chi, delta=delta, norm=1.0 / math.sqrt(nrm2))


def full_wavefunction(system: AtomicSystem, state: QuantumState, delta: float, r) -> float:
    """Moderated wavefunction value at ``r`` (see :func:`moderated_radial`)."""
    return moderated_radial(system, state, delta)(r)


def correction_via_quadrature(system: AtomicSystem, state: QuantumState,
                              delta: float, order: int) -> float:
    """Energy correction of the given order as an integral over chi^2.

    order 1: <-A d^2 r / 2>
    order 2: <A d^3 r^2 / 6 - W1^2 / 2>
    order 3: <-A d^4 r^3 / 24 - W1 W2>

    The factor conventions follow the rescaled superpotentials stored here;
    they make order 1..3 reproduce the closed forms exactly for nodeless
    (n = 0) states.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order}")
    chi = coulomb_chi(system, state)
    a, d = system.a, delta

    if order == 1:
        def integrand(r):
            return chi(r) ** 2 * (-a * d * d * r / 2.0)
    elif order == 2:
        w1 = superpotential_w1(state, delta)

        def integrand(r):
            return chi(r) ** 2 * (a * d**3 * r * r / 6.0 - 0.5 * w1(r) ** 2)
    else:
        w1 = superpotential_w1(state, delta)
        w2 = superpotential_w2(a, state, delta)

        def integrand(r):
            return chi(r) ** 2 * (-a * d**4 * r**3 / 24.0 - w1(r) * w2(r))

    value, err = quad(integrand, 0.0, chi.r_max, **_QUAD_OPTS)
    if err > max(1e-12, 1e-9 * abs(value)):
        raise QuadratureError(f"order-{order} correction did not converge", value, err)
    return value

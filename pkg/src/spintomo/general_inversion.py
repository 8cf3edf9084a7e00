"""Integral reconstruction of a spin-j density matrix from its tomograms.

For arbitrary spin j the state is recovered from the probabilities
w(m1, theta, phi) of outcome m1 along the rotated quantization axis by a
triple sum over an auxiliary index j3 = 0..2j, its projections m3, and the
outcomes m1, with Wigner 3j couplings and an angular integral of w against
rotation-matrix elements D^(j3)_{0, m3}.  This module provides the 3j
symbols, the rotation matrix elements, a quadrature rule that makes the
angular integrals exact for band-limited integrands, and the
reconstruction itself.

Conventions, fixed once and verified by round trips at machine precision:

* Rotation matrix elements factor as D^j_{m', m}(phi, theta, psi)
  = exp(i m' psi) d^j_{m', m}(theta) exp(i m phi), with
  d^{1/2} = [[cos(theta/2), sin(theta/2)], [-sin(theta/2), cos(theta/2)]].
  This is the transpose of the more common d convention, i.e.
  d^j_{m', m}(theta) here equals the common d^j_{m, m'}(theta).

* Because D^(j3)_{0, m3} carries exp(i * 0 * psi) = 1, the integral over
  the third Euler angle contributes exactly the constant 1.  The
  quadrature grid still exposes psi nodes so the normalized Haar measure
  d(phi) sin(theta) d(theta) d(psi) / (8 pi^2) stays explicit.

* The reconstruction kernel contains two sign factors raised to the
  projection quantum numbers.  They must be combined into the single
  integer power (-1)^(m2' - m1), which is well defined for every spin
  because projections of one multiplet differ by integers.  Evaluating the
  two factors independently as exp(i pi m) is only consistent for integer
  spin; for half-integer spin it flips the overall sign and returns minus
  the density matrix.  ``reconstruct_density_j`` defaults to the combined
  reading and keeps the literal one available for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .errors import NonPhysicalStateError
from .spin_core import TOL, ValidationReport
from .tomography import EulerAngles

_TWO_PI = 2.0 * math.pi


class HalfInteger:
    """Exact half-integer, stored as twice its value in an int."""

    __slots__ = ("twice",)

    def __init__(self, value):
        if isinstance(value, HalfInteger):
            self.twice = value.twice
            return
        doubled = 2 * value
        nearest = round(doubled)
        if abs(doubled - nearest) > 1e-9:
            raise ValueError(f"{value!r} is not a multiple of 1/2")
        self.twice = int(nearest)

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInteger":
        obj = cls.__new__(cls)
        obj.twice = int(twice)
        return obj

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2.0

    def __neg__(self) -> "HalfInteger":
        return HalfInteger.from_twice(-self.twice)

    def __eq__(self, other) -> bool:
        if isinstance(other, HalfInteger):
            return self.twice == other.twice
        try:
            return self.twice / 2.0 == float(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.twice / 2.0)

    def __repr__(self) -> str:
        if self.twice % 2 == 0:
            return f"HalfInteger({self.twice // 2})"
        return f"HalfInteger({self.twice}/2)"


def _twice(x) -> int:
    """Twice the value of a half-integer argument, as an exact int."""
    if isinstance(x, HalfInteger):
        return x.twice
    doubled = 2 * x
    nearest = round(doubled)
    if abs(doubled - nearest) > 1e-9:
        raise ValueError(f"{x!r} is not a multiple of 1/2")
    return int(nearest)


def _twice_spin(j) -> int:
    tj = _twice(j)
    if tj < 0:
        raise ValueError(f"spin must be non-negative, got {j!r}")
    return tj


def m_values(j):
    """Projection quantum numbers of spin ``j`` in descending order, as floats."""
    tj = _twice_spin(j)
    return tuple((tj - 2 * i) / 2.0 for i in range(tj + 1))


def spin_of_dimension(dim: int) -> HalfInteger:
    """Spin whose multiplet has ``dim`` states: j = (dim - 1)/2."""
    if dim < 1:
        raise ValueError(f"dimension must be at least 1, got {dim}")
    return HalfInteger.from_twice(dim - 1)


def _half_factorial(t: int) -> int:
    # factorial of t/2 for an even doubled value
    return factorial(t // 2)


@lru_cache(maxsize=None)
def _w3j_twice(tj1, tj2, tj3, tm1, tm2, tm3) -> float:
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if abs(tm) > tj or (tj + tm) % 2 != 0:
            return 0.0
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if tj3 > tj1 + tj2 or tj3 < abs(tj1 - tj2):
        return 0.0
    f = _half_factorial
    tkmin = max(0, tj2 - tj3 - tm1, tj1 - tj3 + tm2)
    tkmax = min(tj1 + tj2 - tj3, tj1 - tm1, tj2 + tm2)
    if tkmin > tkmax:
        return 0.0
    total = Fraction(0)
    for tk in range(tkmin, tkmax + 1, 2):
        denom = (
            f(tk)
            * f(tj1 + tj2 - tj3 - tk)
            * f(tj1 - tm1 - tk)
            * f(tj2 + tm2 - tk)
            * f(tj3 - tj2 + tm1 + tk)
            * f(tj3 - tj1 - tm2 + tk)
        )
        total += Fraction((-1) ** (tk // 2), denom)
    if total == 0:
        return 0.0
    prefactor = Fraction(
        f(tj1 + tj2 - tj3) * f(tj1 - tj2 + tj3) * f(-tj1 + tj2 + tj3),
        f(tj1 + tj2 + tj3 + 2),
    )
    prefactor *= (
        f(tj1 + tm1)
        * f(tj1 - tm1)
        * f(tj2 + tm2)
        * f(tj2 - tm2)
        * f(tj3 + tm3)
        * f(tj3 - tm3)
    )
    # The sum is exact, so square it, keep everything rational, and take a
    # single square root at the end.
    magnitude = math.sqrt(float(prefactor * total * total))
    sign = (-1) ** (((tj1 - tj2 - tm3) // 2) % 2)
    return sign * magnitude if total > 0 else -sign * magnitude


def wigner_3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3j symbol (j1 j2 j3; m1 m2 m3).

    Arguments may be ints, floats or :class:`HalfInteger`; non-half-integer
    values raise ``ValueError``.  Selection-rule violations return 0.0.
    Evaluated with exact rational arithmetic and one final square root.
    """
    return _w3j_twice(
        _twice_spin(j1),
        _twice_spin(j2),
        _twice_spin(j3),
        _twice(m1),
        _twice(m2),
        _twice(m3),
    )


@lru_cache(maxsize=None)
def _d_terms(tj, tmp, tm):
    # Coefficients of d^j_{mp, m}(theta) = sum_k coeff * cos(theta/2)^cpow
    # * sin(theta/2)^spow, in the transposed convention of this module.
    f = _half_factorial
    root = math.sqrt(float(f(tj + tm) * f(tj - tm) * f(tj + tmp) * f(tj - tmp)))
    tkmin = max(0, tmp - tm)
    tkmax = min(tj + tmp, tj - tm)
    terms = []
    for tk in range(tkmin, tkmax + 1, 2):
        denom = f(tj + tmp - tk) * f(tk) * f(tj - tk - tm) * f(tk - tmp + tm)
        sign = (-1) ** (((tk - tmp + tm) // 2) % 2)
        cpow = (2 * tj - 2 * tk + tmp - tm) // 2
        spow = (2 * tk - tmp + tm) // 2
        terms.append((sign * root / denom, cpow, spow))
    return tuple(terms)


def _d_value(tj: int, tmp: int, tm: int, theta: float) -> float:
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    return float(
        sum(coeff * c**cpow * s**spow for coeff, cpow, spow in _d_terms(tj, tmp, tm))
    )


def _check_projection(tj, tm, name):
    if abs(tm) > tj or (tj + tm) % 2 != 0:
        raise ValueError(
            f"projection {name}={tm / 2.0} is not in the multiplet of spin {tj / 2.0}"
        )


def wigner_small_d(j, mp, m, theta: float) -> float:
    """Rotation matrix element d^j_{mp, m}(theta) in this module's convention.

    Out-of-multiplet projections raise ``ValueError``.  For j = 1/2 the
    matrix over (mp, m) in descending order is
    [[cos(theta/2), sin(theta/2)], [-sin(theta/2), cos(theta/2)]].
    """
    tj = _twice_spin(j)
    tmp = _twice(mp)
    tm = _twice(m)
    _check_projection(tj, tmp, "mp")
    _check_projection(tj, tm, "m")
    return _d_value(tj, tmp, tm, theta)


def wigner_D(j, mp, m, u: EulerAngles) -> complex:
    """Full rotation matrix element exp(i mp psi) d^j_{mp, m}(theta) exp(i m phi)."""
    d = wigner_small_d(j, mp, m, u.theta)
    phase = (_twice(mp) / 2.0) * u.psi + (_twice(m) / 2.0) * u.phi
    return complex(d * np.exp(1j * phase))


@lru_cache(maxsize=None)
def _small_d_matrix(tj: int, theta: float) -> np.ndarray:
    dim = tj + 1
    out = np.empty((dim, dim))
    for row in range(dim):
        for col in range(dim):
            out[row, col] = _d_value(tj, tj - 2 * row, tj - 2 * col, theta)
    out.flags.writeable = False
    return out


def rotation_matrix_j(j, u: EulerAngles) -> np.ndarray:
    """(2j+1)-dimensional unitary of the Euler rotation, rows and columns in
    descending projection order.  Coincides with the 2x2 tomography rotation
    at j = 1/2."""
    tj = _twice_spin(j)
    d = _small_d_matrix(tj, float(u.theta))
    ms = np.array(m_values(HalfInteger.from_twice(tj)))
    return np.exp(1j * ms * u.psi)[:, None] * d * np.exp(1j * ms * u.phi)[None, :]


def validate_density_j(matrix, tol: float = TOL) -> ValidationReport:
    """Validation report for a square density matrix of any dimension."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    herm_dev = float(np.abs(m - m.conj().T).max())
    trace_dev = float(abs(np.trace(m) - 1.0))
    h = 0.5 * (m + m.conj().T)
    min_eig = float(np.linalg.eigvalsh(h)[0])
    return ValidationReport(herm_dev, trace_dev, min_eig, tol)


def require_density_j(matrix, tol: float = TOL) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    report = validate_density_j(m, tol)
    if not report.passed:
        raise NonPhysicalStateError(
            f"not a physical density matrix ({report.summary()})", report=report
        )
    return m


def w_value_j(rho, u: EulerAngles, tol: float = TOL) -> np.ndarray:
    """Outcome probabilities along the rotated axis, in descending m order.

    The k-th entry is the probability of projection m = j - k, given by the
    corresponding diagonal element of D rho D^dagger.
    """
    m = require_density_j(rho, tol)
    j = spin_of_dimension(m.shape[0])
    d = rotation_matrix_j(j, u)
    return np.real(np.diag(d @ m @ d.conj().T)).copy()


def w_callable_from_density(rho, tol: float = TOL):
    """Wrap a density matrix as a tomogram family w(m1, theta, phi).

    The returned callable evaluates the probability of outcome ``m1`` along
    the direction (theta, phi); rotated diagonals are cached per node so
    repeated grid evaluations stay cheap.
    """
    m = require_density_j(rho, tol)
    dim = m.shape[0]
    tj = dim - 1
    index = {(tj - 2 * i) / 2.0: i for i in range(dim)}

    @lru_cache(maxsize=None)
    def diag(theta: float, phi: float):
        u = EulerAngles(phi=phi, theta=theta, psi=0.0)
        d = rotation_matrix_j(HalfInteger.from_twice(tj), u)
        return tuple(np.real(np.diag(d @ m @ d.conj().T)))

    def family(m1, theta, phi):
        return diag(float(theta), float(phi))[index[float(m1)]]

    return family


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Nodes and weights for the normalized Euler-angle measure.

    ``theta`` uses Gauss-Legendre nodes in cos(theta) with weights summing
    to 1 (the sin(theta)/2 measure); ``phi`` and ``psi`` use uniform nodes
    on [0, 2pi) with equal weights.  Both rules integrate the band-limited
    reconstruction integrands exactly up to the spin the grid was built for.
    """

    theta_nodes: np.ndarray
    theta_weights: np.ndarray
    phi_nodes: np.ndarray
    phi_weights: np.ndarray
    psi_nodes: np.ndarray
    psi_weights: np.ndarray

    @property
    def n_theta(self) -> int:
        return len(self.theta_nodes)

    @property
    def n_phi(self) -> int:
        return len(self.phi_nodes)

    @property
    def n_psi(self) -> int:
        return len(self.psi_nodes)


def build_quadrature(j, oversample: int = 2) -> QuadratureGrid:
    """Quadrature grid sized for reconstructing a spin-``j`` state.

    Azimuthal node counts grow like 4j + 2 so all phases exp(i m3 phi) with
    |m3| <= 2j are integrated exactly; ``oversample`` scales every count and
    is the knob used to confirm convergence by refinement.
    """
    tj = _twice_spin(j)
    if oversample < 1:
        raise ValueError(f"oversample must be at least 1, got {oversample}")
    n_theta = max(8, tj + 2) * oversample
    n_azimuth = max(8, 2 * tj + 2) * oversample
    x, a = np.polynomial.legendre.leggauss(n_theta)
    theta_nodes = np.arccos(x)[::-1].copy()
    theta_weights = (0.5 * a)[::-1].copy()
    phi_nodes = np.arange(n_azimuth) * (_TWO_PI / n_azimuth)
    phi_weights = np.full(n_azimuth, 1.0 / n_azimuth)
    for arr in (theta_nodes, theta_weights, phi_nodes, phi_weights):
        arr.flags.writeable = False
    return QuadratureGrid(
        theta_nodes=theta_nodes,
        theta_weights=theta_weights,
        phi_nodes=phi_nodes,
        phi_weights=phi_weights,
        psi_nodes=phi_nodes,
        psi_weights=phi_weights,
    )


def _sample_w(w, ms, grid: QuadratureGrid, tol: float) -> np.ndarray:
    values = np.empty((len(ms), grid.n_theta, grid.n_phi))
    for i, m1 in enumerate(ms):
        for it, theta in enumerate(grid.theta_nodes):
            for ip, phi in enumerate(grid.phi_nodes):
                values[i, it, ip] = w(m1, theta, phi)
    low = float(values.min())
    high = float(values.max())
    norm_dev = float(np.abs(values.sum(axis=0) - 1.0).max())
    if low < -tol or high > 1.0 + tol or norm_dev > tol:
        raise NonPhysicalStateError(
            "tomogram samples are not a normalized probability family on the "
            f"grid (min={low:.3e}, max={high:.3e}, normalization deviation="
            f"{norm_dev:.3e}, tol={tol:.1e})"
        )
    return values


def reconstruct_density_j(
    w,
    j,
    grid: QuadratureGrid | None = None,
    tol: float = TOL,
    phase_convention: str = "combined",
) -> np.ndarray:
    """Recover a spin-``j`` density matrix from a tomogram family.

    Args:
        w: callable ``w(m1, theta, phi)`` returning the probability of
            outcome ``m1`` (passed as a float) along direction
            ``(theta, phi)``.
        j: spin of the multiplet; the result is a (2j+1) x (2j+1) matrix
            with rows and columns in descending projection order.
        grid: quadrature grid; ``build_quadrature(j)`` when omitted.
        tol: bound on how far the sampled family may violate positivity or
            normalization before reconstruction is refused.
        phase_convention: ``"combined"`` (default) evaluates the kernel sign
            as the integer power (-1)^(m2' - m1); ``"literal"`` evaluates
            the two printed factors independently as (-1)^(m2' + m1), which
            flips the sign of the result for half-integer spin.

    Returns:
        The reconstructed matrix, unvalidated: quadrature noise or
        inconsistent samples show up directly in the output, so callers
        decide which deviations to accept.
    """
    if phase_convention not in ("combined", "literal"):
        raise ValueError(
            f"phase_convention must be 'combined' or 'literal', got {phase_convention!r}"
        )
    tj = _twice_spin(j)
    dim = tj + 1
    if grid is None:
        grid = build_quadrature(HalfInteger.from_twice(tj))
    tms = [tj - 2 * i for i in range(dim)]
    ms = [tm / 2.0 for tm in tms]
    values = _sample_w(w, ms, grid, tol)
    # The psi integral of D^(j3)_{0, m3} is the constant 1; keep the weight
    # sum explicit rather than assuming it.
    psi_factor = float(np.sum(grid.psi_weights))

    def sign_m1(tm1: int) -> float:
        exponent = (tj - tm1) // 2 if phase_convention == "combined" else (tj + tm1) // 2
        return -1.0 if exponent % 2 else 1.0

    def sign_mp2(tmp2: int) -> float:
        return -1.0 if ((tmp2 - tj) // 2) % 2 else 1.0

    # First pass: angular integrals of w against D^(j3)_{0, m3}, already
    # summed over the outcome label m1 with its 3j weight and sign.
    summed = {}
    for tj3 in range(0, 2 * tj + 1, 2):
        for tm3 in range(-tj3, tj3 + 1, 2):
            d_nodes = np.array(
                [_d_value(tj3, 0, tm3, t) for t in grid.theta_nodes]
            )
            kern_theta = grid.theta_weights * d_nodes
            kern_phi = grid.phi_weights * np.exp(1j * (tm3 / 2.0) * grid.phi_nodes)
            acc = 0.0 + 0.0j
            for i1, tm1 in enumerate(tms):
                coupling = _w3j_twice(tj, tj, tj3, tm1, -tm1, 0)
                if coupling == 0.0:
                    continue
                integral = np.einsum("t,p,tp->", kern_theta, kern_phi, values[i1])
                acc += sign_m1(tm1) * coupling * integral
            summed[(tj3, tm3)] = acc * psi_factor

    # Second pass: couple the integrals into matrix elements.  Only
    # m3 = m2' - m1' survives the second 3j symbol.
    rho = np.empty((dim, dim), dtype=complex)
    for i1, tmp1 in enumerate(tms):
        for i2, tmp2 in enumerate(tms):
            tm3 = tmp2 - tmp1
            entry = 0.0 + 0.0j
            for tj3 in range(0, 2 * tj + 1, 2):
                if abs(tm3) > tj3:
                    continue
                coupling = _w3j_twice(tj, tj, tj3, tmp1, -tmp2, tm3)
                if coupling == 0.0:
                    continue
                entry += (tj3 + 1.0) ** 2 * coupling * summed[(tj3, tm3)]
            rho[i1, i2] = sign_mp2(tmp2) * entry
    return rho

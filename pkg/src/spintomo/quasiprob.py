"""The eight-vertex complex quasiprobability table for a spin-1/2 state.

A state is encoded by eight complex numbers p(c, b, a) indexed by sign
triples (c, b, a) in {+1, -1}^3, where c, b, a label eigenvalues of the
spin projections along x, y and z.  The entries sum to 1, their one-axis
marginals are the six real measurement probabilities, and two entries
already determine the density matrix; the remaining six are redundancy
that an admissibility check can exploit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Tuple

import numpy as np

from .errors import AdmissibilityError
from .spin_core import TOL, ValidationReport, eigenket, overlap, require_density, validate_density

Vertex = Tuple[int, int, int]

# Row order used everywhere a table is listed or serialized: z-sign slowest,
# then y, with the x-sign alternating fastest.
VERTEX_ORDER: Tuple[Vertex, ...] = (
    (1, 1, 1),
    (-1, 1, 1),
    (1, -1, 1),
    (-1, -1, 1),
    (1, 1, -1),
    (-1, 1, -1),
    (1, -1, -1),
    (-1, -1, -1),
)

_AXIS_SLOT = {"x": 0, "y": 1, "z": 2}


class QuasiProbTable:
    """Immutable container for the eight complex entries p(c, b, a)."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Vertex, complex]):
        missing = [v for v in VERTEX_ORDER if v not in entries]
        extra = [k for k in entries if k not in VERTEX_ORDER]
        if missing or extra:
            raise ValueError(
                f"table must have exactly the 8 sign-triple keys; "
                f"missing {missing}, unexpected {extra}"
            )
        object.__setattr__(
            self, "_entries", {v: complex(entries[v]) for v in VERTEX_ORDER}
        )

    def __setattr__(self, name, value):
        raise AttributeError("QuasiProbTable is immutable")

    def __getitem__(self, vertex: Vertex) -> complex:
        return self._entries[vertex]

    def __iter__(self) -> Iterator[Vertex]:
        return iter(VERTEX_ORDER)

    def items(self):
        return ((v, self._entries[v]) for v in VERTEX_ORDER)

    def to_array(self) -> np.ndarray:
        """Entries as a complex vector in ``VERTEX_ORDER``."""
        return np.array([self._entries[v] for v in VERTEX_ORDER], dtype=complex)

    @classmethod
    def from_array(cls, values) -> "QuasiProbTable":
        arr = np.asarray(values, dtype=complex)
        if arr.shape != (8,):
            raise ValueError(f"expected 8 entries, got shape {arr.shape}")
        return cls(dict(zip(VERTEX_ORDER, arr)))

    def total(self) -> complex:
        """Sum of all eight entries; 1 for any table of a physical state."""
        return complex(sum(self._entries[v] for v in VERTEX_ORDER))

    def __repr__(self) -> str:
        rows = ", ".join(f"{v}: {self._entries[v]:.4g}" for v in VERTEX_ORDER)
        return f"QuasiProbTable({rows})"


def _table_from_matrix(m: np.ndarray) -> QuasiProbTable:
    rho_pp, rho_pm = m[0, 0], m[0, 1]
    rho_mp, rho_mm = m[1, 0], m[1, 1]
    plus = 0.25 * (1.0 + 1.0j)
    minus = 0.25 * (1.0 - 1.0j)
    return QuasiProbTable(
        {
            (1, 1, 1): plus * (rho_pp + rho_pm),
            (-1, 1, 1): minus * (rho_pp - rho_pm),
            (1, -1, 1): minus * (rho_pp + rho_pm),
            (-1, -1, 1): plus * (rho_pp - rho_pm),
            (1, 1, -1): minus * (rho_mm + rho_mp),
            (-1, 1, -1): plus * (rho_mm - rho_mp),
            (1, -1, -1): plus * (rho_mm + rho_mp),
            (-1, -1, -1): minus * (rho_mm - rho_mp),
        }
    )


def p_from_density(rho, tol: float = TOL) -> QuasiProbTable:
    """Quasiprobability table of a density matrix, via the closed-form entries.

    Each entry is a fixed complex multiple of a sum or difference of two
    density-matrix elements; see :func:`p_oracle` for the equivalent
    eigenket-overlap construction.
    """
    return _table_from_matrix(require_density(rho, tol))


def p_oracle(rho, tol: float = TOL) -> QuasiProbTable:
    """Quasiprobability table built directly from eigenket overlaps.

    p(c, b, a) = <c;x|b;y><b;y|a;z><a;z|rho|c;x>.  Numerically equivalent to
    :func:`p_from_density`; kept as an independent construction.
    """
    m = require_density(rho, tol)
    entries = {}
    for c, b, a in VERTEX_ORDER:
        ket_c = eigenket("x", c)
        ket_a = eigenket("z", a)
        entries[(c, b, a)] = (
            overlap("x", c, "y", b)
            * overlap("y", b, "z", a)
            * complex(np.vdot(ket_a, m @ ket_c))
        )
    return QuasiProbTable(entries)


def _matrix_from_table(table: QuasiProbTable) -> np.ndarray:
    # Only the two entries with (b, a) = (+1, +1) are needed; hermiticity and
    # unit trace fix the rest of the matrix.
    p_ppp = table[1, 1, 1]
    p_mpp = table[-1, 1, 1]
    rho_pp = (1.0 - 1.0j) * p_ppp + (1.0 + 1.0j) * p_mpp
    rho_pm = (1.0 - 1.0j) * p_ppp - (1.0 + 1.0j) * p_mpp
    return np.array(
        [[rho_pp, rho_pm], [np.conj(rho_pm), 1.0 - rho_pp]], dtype=complex
    )


def density_from_p(table: QuasiProbTable, tol: float = TOL) -> np.ndarray:
    """Recover the density matrix from a table, or raise if none exists.

    Inverts the two defining entries p(1, 1, 1) and p(-1, 1, 1); the result
    is validated and an :class:`AdmissibilityError` carrying the report is
    raised when the table does not come from a physical state.
    """
    m = _matrix_from_table(table)
    report = validate_density(m, tol)
    if not report.passed:
        raise AdmissibilityError(
            f"table does not describe a physical state ({report.summary()})",
            report=report,
        )
    return m


def marginal(table: QuasiProbTable, axis: str, sign: int) -> complex:
    """Sum of the four entries whose ``axis`` label equals ``sign``.

    For a physical table this is the (real) probability of outcome ``sign``
    when measuring the spin projection along ``axis``.
    """
    if axis not in _AXIS_SLOT:
        raise ValueError(f"axis must be one of ('x', 'y', 'z'), got {axis!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    slot = _AXIS_SLOT[axis]
    return complex(sum(table[v] for v in VERTEX_ORDER if v[slot] == sign))


@dataclass(frozen=True)
class MarginalCheck:
    """One-axis marginal with its deviations from a genuine probability."""

    axis: str
    sign: int
    value: complex
    imag_magnitude: float
    range_violation: float


@dataclass(frozen=True)
class AdmissibilityReport:
    """Full diagnosis of whether a table describes a physical state.

    Collects the total-sum deviation from 1, the six marginal checks
    (imaginary parts and real parts outside [0, 1]), the validation report
    of the reconstructed density matrix, and the redundancy deviation: the
    largest mismatch between the given entries and the table regenerated
    from the reconstructed matrix.
    """

    total: complex
    total_deviation: float
    marginals: Tuple[MarginalCheck, ...]
    density_report: ValidationReport
    redundancy_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        marginals_ok = all(
            m.imag_magnitude <= self.tol and m.range_violation <= self.tol
            for m in self.marginals
        )
        return (
            self.total_deviation <= self.tol
            and marginals_ok
            and self.density_report.passed
            and self.redundancy_deviation <= self.tol
        )


def check_admissibility(table: QuasiProbTable, tol: float = TOL) -> AdmissibilityReport:
    """Report every physicality condition on a table without raising."""
    total = table.total()
    checks = []
    for axis in ("x", "y", "z"):
        for sign in (1, -1):
            value = marginal(table, axis, sign)
            real = value.real
            violation = max(0.0, -real, real - 1.0)
            checks.append(
                MarginalCheck(axis, sign, value, abs(value.imag), violation)
            )
    m = _matrix_from_table(table)
    density_report = validate_density(m, tol)
    regenerated = _table_from_matrix(m)
    redundancy = float(
        max(abs(table[v] - regenerated[v]) for v in VERTEX_ORDER)
    )
    return AdmissibilityReport(
        total=total,
        total_deviation=float(abs(total - 1.0)),
        marginals=tuple(checks),
        density_report=density_report,
        redundancy_deviation=redundancy,
        tol=tol,
    )

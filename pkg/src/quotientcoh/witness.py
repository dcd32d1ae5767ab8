"""Bump families that witness the failure of smooth local lifts near zero.

The profile is the classical bump phi(x) = exp(-1/(x(1-x))) on (0, 1),
extended by zero.  For each level k >= 1 a copy is squeezed into the
dyadic interval I_k = (2^-k, 2^-k + 2^-2k) and damped:

    f_k(t) = exp(-k^2) * phi(2^(2k) * (t - 2^-k)).

The chain rule turns every derivative sup into an identity,

    sup |f_k^(m)| = C_m * exp(-k^2) * 2^(2km),   C_m = sup |phi^(m)|,

and the rescaled family 2^k f_k obeys the same bound with an extra 2^k.
verify_bounds samples both families on a shared unit grid, so measured
sups and certified bounds agree to rounding, and it also records how
the sups move level to level.  A fact of this construction worth
stating up front: the sups tend to zero in k for every fixed m, but
they are not monotone, because the ratio between consecutive levels
is exp(-(2k+1)) * 2^(2m), which exceeds 1 for m = 4 at k = 2.  The
report records exactly such monotonicity breaks.

This is the only module that computes with floats; everything it
certifies is either an interval statement checked with Fractions or a
bound with an explicit relative slack.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp

import numpy as np
import sympy

from .errors import BoundViolated
from .exterior import enumerate_basis

RELATIVE_SLACK = 1e-9


def interval(k: int) -> tuple[Fraction, Fraction]:
    """The open support interval I_k = (2^-k, 2^-k + 2^-2k), exactly."""
    if k < 1:
        raise ValueError("levels start at k = 1")
    left = Fraction(1, 2 ** k)
    return left, left + Fraction(1, 4 ** k)


def intervals_are_disjoint(k_max: int) -> bool:
    """Exact check that I_{k+1} sits strictly below I_k for k < k_max."""
    for k in range(1, k_max):
        sup_next = interval(k + 1)[1]
        inf_here = interval(k)[0]
        if not sup_next < inf_here:
            return False
    return True


def _phi_derivative_functions(max_order: int):
    x = sympy.symbols("x")
    phi = sympy.exp(-1 / (x * (1 - x)))
    exprs = [phi]
    for _ in range(max_order):
        exprs.append(sympy.diff(exprs[-1], x))
    return tuple(
        sympy.lambdify(x, expr, modules="numpy") for expr in exprs
    )


@dataclass(frozen=True)
class BumpFamily:
    """The bumps f_k for k in k_range with derivative data up to max_order.

    samples_per_interval interior points are shared between the
    reference constants C_m and every level, so measured ratios carry
    no gridding bias.
    """

    k_range: tuple[int, ...]
    max_derivative_order: int
    samples_per_interval: int
    _phi_funcs: tuple

    def s_grid(self) -> np.ndarray:
        """Interior sample points of the unit interval."""
        n = self.samples_per_interval
        return np.arange(1, n + 1, dtype=float) / (n + 1)

    def phi_derivative(self, order: int, s: np.ndarray) -> np.ndarray:
        if not 0 <= order <= self.max_derivative_order:
            raise ValueError("derivative order %d out of range" % order)
        return np.asarray(self._phi_funcs[order](s), dtype=float)

    def profile_constants(self) -> tuple[float, ...]:
        """C_m = max |phi^(m)| over the shared grid, for each order."""
        s = self.s_grid()
        return tuple(
            float(np.max(np.abs(self.phi_derivative(m, s))))
            for m in range(self.max_derivative_order + 1)
        )

    def level_arguments(self, k: int) -> np.ndarray:
        """The unit-interval preimages of the level-k sample points.

        t = 2^-k + 2^-2k * s rounds once; t - 2^-k is then exact
        (the two floats are within a factor of two), so mapping back
        multiplies by a power of two and loses nothing further.
        """
        left = 2.0 ** (-k)
        width = 2.0 ** (-2 * k)
        t = left + width * self.s_grid()
        return (t - left) * 2.0 ** (2 * k)

    def bump_values(self, k: int, order: int = 0) -> np.ndarray:
        """Samples of f_k^(order) on the level-k grid."""
        s_back = self.level_arguments(k)
        scale = exp(-float(k * k)) * 2.0 ** (2 * k * order)
        return scale * self.phi_derivative(order, s_back)


def build_bumps(
    k_range,
    max_derivative_order: int = 4,
    samples_per_interval: int = 10001,
) -> BumpFamily:
    """Construct the family, validating levels and exact disjointness."""
    ks = tuple(sorted(set(int(k) for k in k_range)))
    if not ks:
        raise ValueError("k_range must be nonempty")
    if ks[0] < 1:
        raise ValueError("levels start at k = 1")
    if max_derivative_order < 0:
        raise ValueError("max_derivative_order must be nonnegative")
    if samples_per_interval < 3:
        raise ValueError("need at least 3 samples per interval")
    if not intervals_are_disjoint(ks[-1]):
        raise ValueError("support intervals overlap; construction broken")
    return BumpFamily(
        ks,
        max_derivative_order,
        samples_per_interval,
        _phi_derivative_functions(max_derivative_order),
    )


@dataclass(frozen=True)
class SupRecord:
    """Measured derivative sup against its certified bound."""

    level: int
    order: int
    family: str
    measured: float
    bound: float


@dataclass(frozen=True)
class MonotoneViolation:
    """Consecutive levels where a derivative sup grew instead of shrinking."""

    family: str
    order: int
    level_from: int
    level_to: int
    ratio: float


@dataclass(frozen=True)
class WitnessReport:
    """Everything verify_bounds measured, plus the lift obstruction."""

    k_range: tuple[int, ...]
    max_derivative_order: int
    samples_per_interval: int
    profile_constants: tuple[float, ...]
    sup_records: tuple[SupRecord, ...]
    monotone_violations: tuple[MonotoneViolation, ...]
    forced_levels: tuple[tuple[int, int], ...]
    lift_obstruction: bool
    relative_slack: float = RELATIVE_SLACK


def _sup_tables(b: BumpFamily) -> dict[str, dict[tuple[int, int], tuple[float, float]]]:
    """measured and bound for both families at every (k, m)."""
    constants = b.profile_constants()
    out: dict[str, dict[tuple[int, int], tuple[float, float]]] = {
        "f": {}, "scaled": {}
    }
    for k in b.k_range:
        for m in range(b.max_derivative_order + 1):
            measured = float(np.max(np.abs(b.bump_values(k, m))))
            bound = constants[m] * exp(-float(k * k)) * 2.0 ** (2 * k * m)
            out["f"][(k, m)] = (measured, bound)
            # the rescaled family 2^k f_k; the factor is exact in floats
            out["scaled"][(k, m)] = (2.0 ** k * measured, 2.0 ** k * bound)
    return out


def forced_levels(b: BumpFamily) -> tuple[tuple[int, int], ...]:
    """On each I_k, read the level off the ratio of the two families.

    With alpha = f_k and beta = 2^k f_k, beta/alpha is the constant 2^k
    wherever alpha > 0, exactly in floating point since the scale is a
    power of two.  The returned pairs are (k, recovered level).
    """
    out = []
    for k in b.k_range:
        a = b.bump_values(k, 0)
        beta = 2.0 ** k * a
        positive = a > 0.0
        if not positive.any():
            raise ValueError(
                "no positive samples at level %d; grid too coarse" % k
            )
        ratios = beta[positive] / a[positive]
        if not (ratios == 2.0 ** k).all():
            raise ValueError(
                "the two families fail to have exact ratio 2^%d" % k
            )
        out.append((k, k))
    return tuple(out)


def lift_obstruction(b: BumpFamily) -> bool:
    """True iff the forced levels cannot be locally constant near zero.

    Needs at least two levels; with the supports marching down to zero
    and a different level forced on each, no neighbourhood of zero
    admits a single choice, which is the obstruction.
    """
    if len(b.k_range) < 2:
        raise ValueError(
            "need at least two levels to witness non-constancy near zero"
        )
    levels = [lvl for _, lvl in forced_levels(b)]
    return len(set(levels)) >= 2


def verify_bounds(b: BumpFamily) -> WitnessReport:
    """Measure every derivative sup, check it against its bound, and
    record how the sups move in k.

    A measured sup exceeding its bound beyond the relative slack raises
    BoundViolated: the bounds are identities of the construction, so
    that can only mean an implementation bug.  Monotonicity breaks are
    not errors; they are facts of the family and land in the report.
    """
    tables = _sup_tables(b)
    records = []
    violations = []
    for family in ("f", "scaled"):
        table = tables[family]
        for k in b.k_range:
            for m in range(b.max_derivative_order + 1):
                measured, bound = table[(k, m)]
                if measured > bound * (1.0 + RELATIVE_SLACK):
                    raise BoundViolated(k, m, measured, bound)
                records.append(SupRecord(k, m, family, measured, bound))
        for m in range(b.max_derivative_order + 1):
            for k_prev, k_next in zip(b.k_range, b.k_range[1:]):
                prev = table[(k_prev, m)][0]
                here = table[(k_next, m)][0]
                if prev > 0.0 and here >= prev:
                    violations.append(
                        MonotoneViolation(family, m, k_prev, k_next, here / prev)
                    )
    forced = forced_levels(b)
    obstruction = lift_obstruction(b) if len(b.k_range) >= 2 else False
    return WitnessReport(
        k_range=b.k_range,
        max_derivative_order=b.max_derivative_order,
        samples_per_interval=b.samples_per_interval,
        profile_constants=b.profile_constants(),
        sup_records=tuple(records),
        monotone_violations=tuple(violations),
        forced_levels=forced,
        lift_obstruction=obstruction,
    )


@dataclass(frozen=True)
class DegreeOneCertificate:
    """Dimension bookkeeping for the degree-one pullback obstruction.

    The quotient in question is a point, so it has no one-forms at all,
    while the invariant constant-coefficient complex upstairs keeps the
    span of dx.  The pullback therefore cannot be surjective in degree
    one.
    """

    quotient_degree1_dim: int
    invariant_basic_degree1_dim: int
    invariant_witness: str
    pullback_surjective_degree1: bool
    conclusion: str


def degree_one_obstruction() -> DegreeOneCertificate:
    """Static certificate that the point quotient misses the form dx.

    Dimensions are read off the monomial bases: one-forms on a
    0-dimensional space versus constant-coefficient one-forms on a
    line.  A surjection onto a bigger space from a smaller one is
    impossible, which is the whole argument.
    """
    quotient_dim = len(enumerate_basis(0, 1))
    upstairs_dim = len(enumerate_basis(1, 1))
    surjective = quotient_dim >= upstairs_dim
    return DegreeOneCertificate(
        quotient_degree1_dim=quotient_dim,
        invariant_basic_degree1_dim=upstairs_dim,
        invariant_witness="dx",
        pullback_surjective_degree1=surjective,
        conclusion=(
            "pullback-not-surjective" if not surjective else "no-obstruction"
        ),
    )

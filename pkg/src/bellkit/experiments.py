"""Joint-outcome distributions for the entangled-pair, Hardy, GHZ and
two-electron singlet experiments, each computed by rotating the shared state
into the analyzer bases (never by substituting a closed-form answer).

Angles are radians.  Outcomes carry +1 for pass / spin-up and -1 otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import spin, tensor
from .tensor import MatrixOperator, StateVector, apply, kron, kron_op, normalized

PHOTON_OUTCOMES = ("pass", "stop")
ELECTRON_OUTCOMES = ("↑", "↓")

# Joint analyzer settings at which each named scenario is quoted (radians).
HARDY_CASES = {
    "A": (0.0, 0.0),
    "B": (math.pi / 4, 0.0),
    "C": (0.0, math.pi / 4),
    "D": (math.pi / 4, math.pi / 4),
}
GHZ_CASES = {
    "A": (0.0, 0.0, 0.0),
    "B": (math.pi / 4, math.pi / 4, 0.0),
    "C": (math.pi / 4, 0.0, math.pi / 4),
    "D": (0.0, math.pi / 4, math.pi / 4),
}

# Analyzer quadruples (theta1, theta1', theta2, theta2') that extremize the
# four-correlation combination for each carrier.
CHSH_PHOTON_SETTINGS = (math.pi / 4, math.pi / 2, 3 * math.pi / 8, math.pi / 8)
CHSH_ELECTRON_SETTINGS = (0.0, math.pi / 2, math.pi / 4, -math.pi / 4)


@dataclass(frozen=True)
class AnalyzerSetting:
    """One party's analyzer orientation (radians, measured in its own frame)."""

    party: int
    angle: float


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities for every joint outcome of one run, in a fixed order."""

    settings: tuple[AnalyzerSetting, ...]
    outcomes: tuple[tuple[tuple[str, ...], float], ...]

    def __post_init__(self):
        total = 0.0
        for labels, p in self.outcomes:
            if p < 0.0:
                raise ValueError(f"negative probability {p!r} for {labels}")
            total += p
        if abs(total - 1.0) > tensor.TOL_NORM:
            raise ValueError(f"probabilities sum to {total!r}")

    def probability_of(self, *labels: str) -> float:
        for row, p in self.outcomes:
            if row == labels:
                return p
        raise KeyError(f"no outcome {labels!r}")

    def agreement(self) -> float:
        """Probability that every party reports the same outcome."""
        return sum(p for row, p in self.outcomes if len(set(row)) == 1)

    def antiparallel(self) -> float:
        """Two-party probability that the outcomes differ."""
        if len(self.settings) != 2:
            raise ValueError("antiparallel() needs a two-party distribution")
        return sum(p for row, p in self.outcomes if row[0] != row[1])

    def correlation(self) -> float:
        """Expected product of the +/-1 outcome values."""
        total = 0.0
        for row, p in self.outcomes:
            sign = 1
            for label in row:
                sign *= 1 if label in (PHOTON_OUTCOMES[0], ELECTRON_OUTCOMES[0]) else -1
            total += sign * p
        return total


def linear_basis_rotation(theta: float) -> MatrixOperator:
    """Amplitude re-expression into a linear basis rotated through theta."""
    c, s = math.cos(theta), math.sin(theta)
    return MatrixOperator([[c, s], [-s, c]])


def _distribution(state, settings, plus_indices, outcome_labels) -> OutcomeDistribution:
    """Read joint probabilities off a rotated state.

    plus_indices[p] is the local basis index (0 or 1) that party p reports as
    the +1 outcome; the other index is the -1 outcome.
    """
    n = len(plus_indices)
    rows = []
    for choice in itertools.product((0, 1), repeat=n):
        index = 0
        for p, c in enumerate(choice):
            local = plus_indices[p] if c == 0 else 1 - plus_indices[p]
            index = 2 * index + local
        labels = tuple(outcome_labels[c] for c in choice)
        rows.append((labels, tensor.probability(state, index)))
    return OutcomeDistribution(tuple(settings), tuple(rows))


def _photon_basis() -> tuple[StateVector, StateVector]:
    bx = tensor.basis_state(("x", "y"), 0)
    by = tensor.basis_state(("x", "y"), 1)
    return bx, by


def entangled_pair_state() -> StateVector:
    """(|x>|y> + |y>|x>)/sqrt2, the rotation-invariant two-photon state."""
    bx, by = _photon_basis()
    return normalized(kron(bx, by).amps + kron(by, bx).amps, kron(bx, by).labels)


def entangled_pair_distribution(theta1: float, theta2: float) -> OutcomeDistribution:
    """Joint pass/stop probabilities for the two-photon pair.

    The two analyzers sit in frames facing each other: party 2's angle runs in
    the opposite sense in the shared coordinates and its pass axis is the
    rotated y axis (a y-polarized photon reaches detector 2 at theta2 = 0).
    """
    state = entangled_pair_state()
    rot = kron_op(linear_basis_rotation(theta1), linear_basis_rotation(-theta2))
    rotated = apply(rot, state)
    settings = (AnalyzerSetting(1, theta1), AnalyzerSetting(2, theta2))
    return _distribution(rotated, settings, (0, 1), PHOTON_OUTCOMES)


def pair_correlation(theta1: float, theta2: float) -> float:
    """Expected product of the two +/-1 photon outcomes."""
    return entangled_pair_distribution(theta1, theta2).correlation()


def hardy_state() -> StateVector:
    """(|xx> - |xy> - |yx> - 3|yy>)/sqrt12."""
    bx, by = _photon_basis()
    amps = (
        kron(bx, bx).amps - kron(bx, by).amps - kron(by, bx).amps - 3 * kron(by, by).amps
    )
    return normalized(amps, kron(bx, bx).labels)


def _check_hardy_angle(theta: float) -> None:
    if min(abs(theta), abs(theta - math.pi / 4)) > tensor.TOL_NORM:
        raise ValueError(
            "hardy analyzers are quoted at 0 or pi/4; pass allow_general=True for other angles"
        )


def hardy_distribution(
    theta1: float, theta2: float, allow_general: bool = False
) -> OutcomeDistribution:
    """Joint pass/stop probabilities for the Hardy pair; both analyzers pass
    along their rotated x axes (same rotation sense for both parties)."""
    if not allow_general:
        _check_hardy_angle(theta1)
        _check_hardy_angle(theta2)
    rot = kron_op(linear_basis_rotation(theta1), linear_basis_rotation(theta2))
    rotated = apply(rot, hardy_state())
    settings = (AnalyzerSetting(1, theta1), AnalyzerSetting(2, theta2))
    return _distribution(rotated, settings, (0, 0), PHOTON_OUTCOMES)


def ghz_state() -> StateVector:
    """(|yyy> - |yxx> - |xyx> - |xxy>)/2."""
    bx, by = _photon_basis()

    def triple(a, b, c):
        return kron(kron(a, b), c)

    amps = (
        triple(by, by, by).amps
        - triple(by, bx, bx).amps
        - triple(bx, by, bx).amps
        - triple(bx, bx, by).amps
    )
    return normalized(amps, triple(bx, bx, bx).labels)


@dataclass(frozen=True)
class GhzParity:
    """Three-photon distribution plus the even/odd split of the detect count."""

    distribution: OutcomeDistribution
    p_even: float
    p_odd: float

    @property
    def certain_parity(self) -> str | None:
        if self.p_even >= 1.0 - tensor.TOL_NORM:
            return "even"
        if self.p_odd >= 1.0 - tensor.TOL_NORM:
            return "odd"
        return None


def ghz_parity_distribution(case: str) -> GhzParity:
    """Distribution for one of the quoted three-analyzer settings A-D, with the
    probability that an even/odd number of detectors fire."""
    if case not in GHZ_CASES:
        raise ValueError(f"case must be one of {sorted(GHZ_CASES)}; got {case!r}")
    angles = GHZ_CASES[case]
    rot = kron_op(
        kron_op(linear_basis_rotation(angles[0]), linear_basis_rotation(angles[1])),
        linear_basis_rotation(angles[2]),
    )
    rotated = apply(rot, ghz_state())
    settings = tuple(AnalyzerSetting(p + 1, a) for p, a in enumerate(angles))
    dist = _distribution(rotated, settings, (0, 0, 0), PHOTON_OUTCOMES)
    p_even = sum(p for row, p in dist.outcomes if row.count("pass") % 2 == 0)
    p_odd = sum(p for row, p in dist.outcomes if row.count("pass") % 2 == 1)
    return GhzParity(dist, p_even, p_odd)


def electron_singlet_state() -> StateVector:
    """(|ud> - |du>)/sqrt2 for two spin-1/2 particles."""
    up = tensor.basis_state(spin.SPIN_HALF_LABELS, 0)
    dn = tensor.basis_state(spin.SPIN_HALF_LABELS, 1)
    return normalized(kron(up, dn).amps - kron(dn, up).amps, kron(up, dn).labels)


def electron_singlet_distribution(theta1: float, theta2: float) -> OutcomeDistribution:
    """Joint up/down probabilities with each Stern-Gerlach axis tilted in the
    zx-plane through its own angle (both parties in the same sense)."""
    u1 = spin.euler_rotation_su2(spin.EulerAngles(theta1, 0.0, 0.0))
    u2 = spin.euler_rotation_su2(spin.EulerAngles(theta2, 0.0, 0.0))
    rotated = apply(kron_op(u1, u2), electron_singlet_state())
    settings = (AnalyzerSetting(1, theta1), AnalyzerSetting(2, theta2))
    return _distribution(rotated, settings, (0, 0), ELECTRON_OUTCOMES)


def electron_correlation(theta1: float, theta2: float) -> float:
    return electron_singlet_distribution(theta1, theta2).correlation()


def chsh_correlations(
    theta1: float, theta1p: float, theta2: float, theta2p: float, system: str = "photon"
) -> tuple[float, float, float, float]:
    """The four expected products (E11, E11', E1'1, E1'1') for either carrier."""
    corr = {"photon": pair_correlation, "electron": electron_correlation}
    if system not in corr:
        raise ValueError(f"system must be 'photon' or 'electron'; got {system!r}")
    e = corr[system]
    return (
        e(theta1, theta2),
        e(theta1, theta2p),
        e(theta1p, theta2),
        e(theta1p, theta2p),
    )


def chsh_quantum(
    theta1: float, theta1p: float, theta2: float, theta2p: float, system: str = "photon"
) -> float:
    """E(1,2) + E(1,2') + E(1',2) - E(1',2')."""
    e11, e12, e21, e22 = chsh_correlations(theta1, theta1p, theta2, theta2p, system)
    return e11 + e12 + e21 - e22

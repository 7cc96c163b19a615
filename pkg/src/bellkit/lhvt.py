"""Exhaustive enumeration of deterministic instruction-set (local hidden
variable) strategies for the scenarios simulated in experiments.py, with exact
rational bounds and an optional Monte-Carlo mixture sampler.

Setting angles in this module are plain degree labels on instruction cards, so
grid arithmetic (the 90-degree flip rule, 120-degree spacings) stays exact;
they are converted to radians only when a quantum distribution is consulted.
Outcomes are +1 (pass / spin-up) and -1 (stop / spin-down).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import experiments

PASS, STOP = 1, -1

# Hard ceiling on exhaustive enumeration; every scenario here is far smaller.
MAX_STRATEGIES = 2**24

# A quantum probability at or below this is treated as an exact zero constraint.
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class ScenarioSpec:
    """A finite-settings scenario: who measures what, and which joint runs count.

    settings[p] lists party p's allowed card angles (degrees); runs holds the
    joint settings that the figure of merit averages over.  identical shares one
    card among all parties, opposite gives party 2 the arrow-flipped card of
    party 1, and flip_90 links each angle to its partner 90 degrees away with
    the opposite outcome.
    """

    name: str
    parties: int
    settings: tuple[tuple[float, ...], ...]
    runs: tuple[tuple[float, ...], ...]
    identical: bool = False
    opposite: bool = False
    flip_90: bool = False

    def __post_init__(self):
        if self.parties < 1 or len(self.settings) != self.parties:
            raise ValueError("settings must list one angle tuple per party")
        if self.identical and self.opposite:
            raise ValueError("identical and opposite are mutually exclusive")
        if (self.identical or self.opposite) and len(set(self.settings)) != 1:
            raise ValueError("shared-card scenarios need identical setting lists")
        if self.opposite and self.parties != 2:
            raise ValueError("opposite cards are defined for two parties")
        for run in self.runs:
            if len(run) != self.parties:
                raise ValueError(f"run {run} does not name one angle per party")
            for p, angle in enumerate(run):
                if angle not in self.settings[p]:
                    raise ValueError(f"run angle {angle} not among party {p + 1} settings")

    def setting_index(self, party: int, angle: float) -> int:
        return self.settings[party].index(angle)


@dataclass(frozen=True)
class StrategyTable:
    """One deterministic instruction card per party: outcomes[p][k] is party
    p's +/-1 answer at its k-th setting."""

    outcomes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for row in self.outcomes:
            for value in row:
                if value not in (PASS, STOP):
                    raise ValueError(f"outcome {value!r} is not +1 or -1")

    def outcome(self, party: int, setting_index: int) -> int:
        return self.outcomes[party][setting_index]


@dataclass(frozen=True)
class ClassicalBound:
    """Extremal value of a figure of merit over the deterministic strategies.

    Mixtures cannot beat it: the figure of merit is an average of per-run
    scores, so it is affine in the mixing weights and extremized at a vertex.
    """

    value: Fraction
    direction: str
    optimizers: tuple[StrategyTable, ...]

    def __post_init__(self):
        if self.direction not in ("max", "min"):
            raise ValueError(f"direction must be 'max' or 'min'; got {self.direction!r}")


def _flip_plan(angles: tuple[float, ...]):
    """Map each angle to (free slot, sign) under the 90-degree flip rule."""
    plan, reps = [], {}
    for angle in angles:
        rep = angle % 90.0
        if rep in reps:
            base_angle, slot = reps[rep]
            steps = round((angle - base_angle) / 90.0)
            plan.append((slot, -1 if steps % 2 else 1))
        else:
            slot = len(reps)
            reps[rep] = (angle, slot)
            plan.append((slot, 1))
    return plan, len(reps)


def enumerate_strategies(spec: ScenarioSpec) -> list[StrategyTable]:
    """All strategies consistent with the scenario's constraints, in a fixed
    lexicographic order (party-major, setting-minor, +1 before -1)."""
    plans, free_counts = [], []
    for p in range(spec.parties):
        if spec.flip_90:
            plan, nfree = _flip_plan(spec.settings[p])
        else:
            plan, nfree = [(k, 1) for k in range(len(spec.settings[p]))], len(spec.settings[p])
        plans.append(plan)
        free_counts.append(nfree)

    shared = spec.identical or spec.opposite
    free_parties = 1 if shared else spec.parties
    total_free = sum(free_counts[:free_parties])
    if 2**total_free > MAX_STRATEGIES:
        raise ValueError(f"2^{total_free} strategies exceed the enumeration ceiling")

    tables = []
    for bits in itertools.product((PASS, STOP), repeat=total_free):
        free_rows, offset = [], 0
        for p in range(free_parties):
            free_rows.append(bits[offset : offset + free_counts[p]])
            offset += free_counts[p]
        rows = []
        for p in range(spec.parties):
            src = free_rows[0] if shared else free_rows[p]
            flip = -1 if (spec.opposite and p > 0) else 1
            rows.append(tuple(flip * sign * src[slot] for slot, sign in plans[p]))
        tables.append(StrategyTable(tuple(rows)))
    return tables


def run_outcomes(spec: ScenarioSpec, table: StrategyTable, run) -> tuple[int, ...]:
    """Each party's card answer for one joint setting."""
    return tuple(
        table.outcome(p, spec.setting_index(p, angle)) for p, angle in enumerate(run)
    )


def agreement_fraction(spec: ScenarioSpec, table: StrategyTable) -> Fraction:
    """Fraction of the scenario's runs on which all parties answer alike."""
    hits = sum(1 for run in spec.runs if len(set(run_outcomes(spec, table, run))) == 1)
    return Fraction(hits, len(spec.runs))


def antiparallel_fraction(spec: ScenarioSpec, table: StrategyTable) -> Fraction:
    """Two-party fraction of runs with opposite answers."""
    return 1 - agreement_fraction(spec, table)


# --- canonical scenarios ----------------------------------------------------


def grid30_scenario() -> ScenarioSpec:
    """Shared cards on the 12-point 30-degree grid, second analyzer always 30
    degrees past the first, with the 90-degree flip rule."""
    angles = tuple(float(30 * k) for k in range(12))
    runs = tuple((angles[k], angles[(k + 1) % 12]) for k in range(12))
    return ScenarioSpec("grid30", 2, (angles, angles), runs, identical=True, flip_90=True)


def grid120_scenario() -> ScenarioSpec:
    """Shared cards on {0, 120, 240}; every run sets the analyzers 120 degrees apart."""
    angles = (0.0, 120.0, 240.0)
    runs = tuple((a, b) for a in angles for b in angles if a != b)
    return ScenarioSpec("grid120", 2, (angles, angles), runs, identical=True)


def electron_scenario() -> ScenarioSpec:
    """Singlet electrons with opposite cards on {0, 120, 240}; runs with
    distinct settings (equal settings give antiparallel spins trivially)."""
    angles = (0.0, 120.0, 240.0)
    runs = tuple((a, b) for a in angles for b in angles if a != b)
    return ScenarioSpec("electron", 2, (angles, angles), runs, opposite=True)


def hardy_scenario() -> ScenarioSpec:
    """Independent cards at {0, 45} degrees for the Hardy pair, one run per
    quoted case (0,0), (45,0), (0,45), (45,45)."""
    angles = (0.0, 45.0)
    runs = ((0.0, 0.0), (45.0, 0.0), (0.0, 45.0), (45.0, 45.0))
    return ScenarioSpec("hardy", 2, (angles, angles), runs)


def ghz_scenario() -> ScenarioSpec:
    """Independent cards at {0, 45} degrees for three photons, one run per
    quoted case A-D."""
    angles = (0.0, 45.0)
    runs = ((0.0, 0.0, 0.0), (45.0, 45.0, 0.0), (45.0, 0.0, 45.0), (0.0, 45.0, 45.0))
    return ScenarioSpec("ghz", 3, (angles, angles, angles), runs)


def chsh_scenario(
    theta1_deg: float, theta1p_deg: float, theta2_deg: float, theta2p_deg: float
) -> ScenarioSpec:
    """Two settings per party; the four runs feeding the correlation combination."""
    s1, s2 = (theta1_deg, theta1p_deg), (theta2_deg, theta2p_deg)
    runs = (
        (s1[0], s2[0]),
        (s1[0], s2[1]),
        (s1[1], s2[0]),
        (s1[1], s2[1]),
    )
    return ScenarioSpec("chsh", 2, (s1, s2), runs)


# --- exact bounds -----------------------------------------------------------


def _extremize(spec, score, direction) -> ClassicalBound:
    tables = enumerate_strategies(spec)
    scores = [score(t) for t in tables]
    best = max(scores) if direction == "max" else min(scores)
    optimizers = tuple(t for t, s in zip(tables, scores) if s == best)
    return ClassicalBound(best, direction, optimizers)


def max_agreement_30grid() -> ClassicalBound:
    """Largest average agreement any shared 30-degree-grid card can reach."""
    spec = grid30_scenario()
    return _extremize(spec, lambda t: agreement_fraction(spec, t), "max")


def min_agreement_120grid() -> ClassicalBound:
    """Smallest average agreement any shared 120-degree-grid card can reach."""
    spec = grid120_scenario()
    return _extremize(spec, lambda t: agreement_fraction(spec, t), "min")


def min_antiparallel_electron() -> ClassicalBound:
    """Smallest fraction of antiparallel outcomes over the unequal-setting runs."""
    spec = electron_scenario()
    return _extremize(spec, lambda t: antiparallel_fraction(spec, t), "min")


def _signs(labels) -> tuple[int, ...]:
    plus = (experiments.PHOTON_OUTCOMES[0], experiments.ELECTRON_OUTCOMES[0])
    return tuple(PASS if label in plus else STOP for label in labels)


def hardy_constraints() -> list[tuple[tuple[float, float], tuple[int, ...], str]]:
    """Joint outcomes the quantum Hardy distribution forbids, as (run, outcome
    signs, case letter); read off the computed distributions, not transcribed."""
    spec = hardy_scenario()
    letters = "ABCD"
    found = []
    for run, letter in zip(spec.runs, letters):
        dist = experiments.hardy_distribution(*(math.radians(a) for a in run))
        for labels, p in dist.outcomes:
            if p <= ZERO_TOL:
                found.append((run, _signs(labels), letter))
    return found


def hardy_elimination() -> dict[tuple[tuple[int, ...], tuple[int, ...]], frozenset[str]]:
    """For every pair of cards, the set of case letters whose forbidden outcome
    that strategy would produce (empty set = strategy survives)."""
    spec = hardy_scenario()
    constraints = hardy_constraints()
    table = {}
    for t in enumerate_strategies(spec):
        violated = frozenset(
            letter
            for run, signs, letter in constraints
            if run_outcomes(spec, t, run) == signs
        )
        table[(t.outcomes[0], t.outcomes[1])] = violated
    return table


def hardy_feasible_set() -> list[StrategyTable]:
    """Card pairs consistent with every zero of the quantum Hardy distribution."""
    spec = hardy_scenario()
    constraints = hardy_constraints()
    return [
        t
        for t in enumerate_strategies(spec)
        if all(run_outcomes(spec, t, run) != signs for run, signs, _ in constraints)
    ]


def hardy_passpass_bound() -> ClassicalBound:
    """Ceiling on pass/pass at the (0,0) setting over the feasible cards; the
    quantum value there is strictly positive."""
    spec = hardy_scenario()
    feasible = tuple(hardy_feasible_set())
    run = spec.runs[0]
    scores = [
        Fraction(1 if run_outcomes(spec, t, run) == (PASS, PASS) else 0) for t in feasible
    ]
    best = max(scores)
    return ClassicalBound(best, "max", tuple(t for t, s in zip(feasible, scores) if s == best))


@dataclass(frozen=True)
class GhzStages:
    """Strategy counts as the parity constraints are applied one case at a time."""

    all_strategies: tuple[StrategyTable, ...]
    after_case_a: tuple[StrategyTable, ...]
    feasible: tuple[StrategyTable, ...]


def _parity_ok(spec, table, run, parity) -> bool:
    passes = sum(1 for o in run_outcomes(spec, table, run) if o == PASS)
    return passes % 2 == (0 if parity == "even" else 1)


def ghz_elimination_stages() -> GhzStages:
    """Filter the 64 card triples by the parity each quoted case makes certain."""
    spec = ghz_scenario()
    parities = []
    for run, letter in zip(spec.runs, "ABCD"):
        parity = experiments.ghz_parity_distribution(letter).certain_parity
        if parity is None:
            raise RuntimeError(f"case {letter} has no certain parity; nothing to filter on")
        parities.append((run, parity))
    everything = tuple(enumerate_strategies(spec))
    run_a, parity_a = parities[0]
    after_a = tuple(t for t in everything if _parity_ok(spec, t, run_a, parity_a))
    feasible = tuple(
        t for t in after_a if all(_parity_ok(spec, t, run, par) for run, par in parities[1:])
    )
    return GhzStages(everything, after_a, feasible)


def ghz_feasible_set() -> list[StrategyTable]:
    """Card triples consistent with all four certain parities (there are none)."""
    return list(ghz_elimination_stages().feasible)


@dataclass(frozen=True)
class ChshClassical:
    """The correlation combination for every deterministic strategy."""

    scenario: ScenarioSpec
    gammas: tuple[int, ...]
    max_bound: ClassicalBound
    min_bound: ClassicalBound


def chsh_gamma(spec: ScenarioSpec, table: StrategyTable) -> int:
    """E(1,2) + E(1,2') + E(1',2) - E(1',2') for one deterministic strategy."""
    products = [
        run_outcomes(spec, table, run)[0] * run_outcomes(spec, table, run)[1]
        for run in spec.runs
    ]
    return products[0] + products[1] + products[2] - products[3]


def chsh_classical(
    theta1_deg: float, theta1p_deg: float, theta2_deg: float, theta2p_deg: float
) -> ChshClassical:
    """Enumerate the 16 strategies; every combination value is +2 or -2."""
    spec = chsh_scenario(theta1_deg, theta1p_deg, theta2_deg, theta2p_deg)
    tables = enumerate_strategies(spec)
    gammas = tuple(chsh_gamma(spec, t) for t in tables)
    for g in gammas:
        if g not in (2, -2):
            raise RuntimeError(f"deterministic combination {g} escaped +/-2")
    maxers = tuple(t for t, g in zip(tables, gammas) if g == 2)
    miners = tuple(t for t, g in zip(tables, gammas) if g == -2)
    return ChshClassical(
        spec,
        gammas,
        ClassicalBound(Fraction(2), "max", maxers),
        ClassicalBound(Fraction(-2), "min", miners),
    )


# --- mixtures ---------------------------------------------------------------


def exact_mixture_correlations(spec: ScenarioSpec, weights) -> np.ndarray:
    """Per-run expected outcome product under a mixture of strategies."""
    tables = enumerate_strategies(spec)
    w = _checked_weights(weights, len(tables))
    products = _product_matrix(spec, tables)
    return w @ products


def exact_marginal_mean(spec: ScenarioSpec, weights, party: int, angle: float) -> float:
    """One party's expected outcome at one setting under a mixture."""
    tables = enumerate_strategies(spec)
    w = _checked_weights(weights, len(tables))
    k = spec.setting_index(party, angle)
    return float(sum(wi * t.outcome(party, k) for wi, t in zip(w, tables)))


def _checked_weights(weights, n: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.shape != (n,):
        raise ValueError(f"expected {n} weights, got shape {w.shape}")
    if np.any(w < 0):
        raise ValueError("mixture weights must be non-negative")
    total = float(w.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"mixture weights sum to {total!r}, expected 1")
    return w / total


def _product_matrix(spec, tables) -> np.ndarray:
    rows = []
    for t in tables:
        rows.append([math.prod(run_outcomes(spec, t, run)) for run in spec.runs])
    return np.array(rows, dtype=float)


@dataclass(frozen=True)
class MixtureEstimate:
    """Sampled per-run outcome products against their exact mixture values."""

    runs: tuple[tuple[float, ...], ...]
    counts: tuple[int, ...]
    means: tuple[float, ...]
    std_errors: tuple[float, ...]
    exact: tuple[float, ...]

    def chsh_combination(self) -> tuple[float, float]:
        """(estimate, standard error) of E1 + E2 + E3 - E4 over four runs."""
        if len(self.runs) != 4:
            raise ValueError("the combination needs exactly four runs")
        m = self.means
        se = math.sqrt(sum(s**2 for s in self.std_errors))
        return m[0] + m[1] + m[2] - m[3], se


def monte_carlo_mixture(
    spec: ScenarioSpec, weights, trials: int, rng_seed: int
) -> MixtureEstimate:
    """Simulate runs of a weighted strategy mixture with uniformly random
    setting choices; exact enumeration stays the source of truth, this is the
    finite-statistics view of it."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    tables = enumerate_strategies(spec)
    w = _checked_weights(weights, len(tables))
    products = _product_matrix(spec, tables)

    rng = np.random.default_rng(rng_seed)
    strat = rng.choice(len(tables), size=trials, p=w)
    run_idx = rng.integers(0, len(spec.runs), size=trials)
    values = products[strat, run_idx]

    counts, means, errors = [], [], []
    for r in range(len(spec.runs)):
        sel = values[run_idx == r]
        n = int(sel.size)
        counts.append(n)
        if n == 0:
            means.append(math.nan)
            errors.append(math.nan)
        else:
            means.append(float(sel.mean()))
            errors.append(float(sel.std(ddof=1) / math.sqrt(n)) if n > 1 else math.nan)
    exact = w @ products
    return MixtureEstimate(
        spec.runs, tuple(counts), tuple(means), tuple(errors), tuple(float(x) for x in exact)
    )

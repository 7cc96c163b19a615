"""Command-line front end.

Angles cross this boundary in degrees and are converted to radians before any
library call.  Tables round to six decimals; JSON keeps full float precision
and serializes deterministically (sorted keys), so identical invocations are
byte-identical.  Exit codes: 0 success, 1 usage/input error, 2 internal check
failure.  BELLKIT_SEED overrides the Monte-Carlo seed when --seed is absent.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import experiments, lhvt, polarization, spin, tensor

# Margin used when turning a quantum-vs-bound comparison into a verdict.
VERDICT_MARGIN = 1e-9

VIOLATION = "violation"
CONSISTENT = "consistent"


class UsageError(Exception):
    pass


class InternalCheckError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags by default; this package reserves 2 for
    internal check failures, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.6f}{z.imag:+.6f}i"


def _fmt_matrix(entries) -> str:
    return "\n".join("  ".join(_fmt_complex(z) for z in row) for row in entries)


def card_string(table: lhvt.StrategyTable) -> str:
    """Compact rendering of a strategy: one +/- run per party."""
    return " ".join("".join("+" if v > 0 else "-" for v in row) for row in table.outcomes)


# --- pair -------------------------------------------------------------------


def cmd_pair(args) -> int:
    if args.sweep:
        print("delta_deg,correlation")
        for d in range(181):
            e = experiments.pair_correlation(math.radians(d), 0.0)
            print(f"{d},{e!r}")
        return 0
    dist = experiments.entangled_pair_distribution(
        math.radians(args.theta1), math.radians(args.theta2)
    )
    print(f"two-photon pair  theta1={_fmt(args.theta1)}deg  theta2={_fmt(args.theta2)}deg")
    for labels, p in dist.outcomes:
        print(f"  {labels[0]:<5} {labels[1]:<5} {_fmt(p)}")
    print(f"agreement   {_fmt(dist.agreement())}")
    print(f"correlation {_fmt(dist.correlation())}")
    return 0


# --- poincare ---------------------------------------------------------------


def cmd_poincare(args) -> int:
    ax, ay = args.alpha_x, args.alpha_y
    if ax < 0 or ay < 0:
        raise UsageError("amplitude moduli must be non-negative")
    n2 = ax * ax + ay * ay
    if n2 == 0.0:
        raise UsageError("both amplitudes are zero; nothing to normalize")
    if abs(n2 - 1.0) > 1e-6:
        raise UsageError(f"alpha_x^2 + alpha_y^2 = {n2!r}; expected 1 within 1e-6")
    if abs(n2 - 1.0) > tensor.TOL_NORM:
        print(f"warning: renormalizing input (|amps|^2 = {n2!r})", file=sys.stderr)
        scale = math.sqrt(n2)
        ax, ay = ax / scale, ay / scale
    state = polarization.PhotonState(ax, math.radians(args.phi_x), ay, math.radians(args.phi_y))

    s = polarization.stokes_from_state(state)
    ellipse = polarization.stokes_to_ellipse(s)
    circ = polarization.to_circular(state)
    bloch = polarization.bloch_coords(circ)

    print(f"stokes      s0={_fmt(s.s0)} s1={_fmt(s.s1)} s2={_fmt(s.s2)} s3={_fmt(s.s3)}")
    print(
        f"ellipse     2rho={_fmt(math.degrees(2 * ellipse.rho))}deg"
        f"  2eta={_fmt(math.degrees(2 * ellipse.eta))}deg"
    )
    print(
        f"bloch       theta0={_fmt(math.degrees(bloch.theta0))}deg"
        f"  phi0={_fmt(math.degrees(bloch.phi0))}deg"
    )
    print(f"circular    rcp={_fmt_complex(circ.beta_rcp)}  lcp={_fmt_complex(circ.beta_lcp)}")
    return 0


# --- rotate -----------------------------------------------------------------


def _parse_state(values, dim: int) -> tensor.StateVector:
    if len(values) != 2 * dim:
        raise UsageError(f"--state needs {2 * dim} numbers (re im pairs), got {len(values)}")
    amps = [complex(values[2 * k], values[2 * k + 1]) for k in range(dim)]
    labels = spin.SPIN_HALF_LABELS if dim == 2 else spin.SPIN_ONE_LABELS
    norm = sum(abs(a) ** 2 for a in amps)
    if norm == 0.0:
        raise UsageError("state vector is zero")
    if abs(norm - 1.0) > tensor.TOL_NORM:
        print(f"warning: renormalizing input state (|amps|^2 = {norm!r})", file=sys.stderr)
    return tensor.normalized(amps, labels)


def cmd_rotate(args) -> int:
    euler = spin.EulerAngles(*(math.radians(a) for a in args.euler))
    if args.spin == "half":
        u = spin.euler_rotation_su2(euler)
    else:
        u = spin.euler_rotation_spin1(euler)
    print(f"rotation matrix (spin {args.spin}), euler deg "
          f"theta={_fmt(args.euler[0])} phi={_fmt(args.euler[1])} chi={_fmt(args.euler[2])}")
    print(_fmt_matrix(u.entries))

    if args.state is not None:
        state = _parse_state(args.state, u.dim)
        out = tensor.apply(u, state)
        print("rotated state")
        for label, amp in zip(out.labels, out.amps):
            print(f"  {label}  {_fmt_complex(amp)}")

    if args.check:
        failures = []
        eye = np.eye(u.dim)
        udev = float(
            max(
                np.max(np.abs(u.entries @ u.entries.conj().T - eye)),
                np.max(np.abs(u.entries.conj().T @ u.entries - eye)),
            )
        )
        print(f"check unitarity deviation: {udev:.3e}")
        if udev > tensor.TOL_UNITARY:
            failures.append("unitarity")
        for axis in "xyz":
            g = spin.generator_from_rotation(axis, args.spin)
            print(f"check generator {axis}: deviation {g.deviation:.3e}")
            if g.deviation > spin.GENERATOR_TOL:
                failures.append(f"generator {axis}")
        if args.spin == "one":
            pair = spin.spin1_from_pair(euler)
            pdev = float(abs(pair.entries - u.entries).max())
            print(f"check pair construction: deviation {pdev:.3e}")
            if pdev > tensor.TOL_UNITARY:
                failures.append("pair construction")
        if failures:
            raise InternalCheckError("failed checks: " + ", ".join(failures))
    return 0


# --- lhvt -------------------------------------------------------------------


def _bound_line(name: str, bound: lhvt.ClassicalBound) -> str:
    return (
        f"classical {name} {bound.direction} = {bound.value} "
        f"({_fmt(float(bound.value))}), {len(bound.optimizers)} optimal cards"
    )


def _verdict(quantum: float, bound: lhvt.ClassicalBound) -> str:
    if bound.direction == "max":
        return VIOLATION if quantum > float(bound.value) + VERDICT_MARGIN else CONSISTENT
    return VIOLATION if quantum < float(bound.value) - VERDICT_MARGIN else CONSISTENT


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("BELLKIT_SEED", "0"))


def cmd_lhvt(args) -> int:
    name = args.scenario
    if name == "grid30":
        spec = lhvt.grid30_scenario()
        bound = lhvt.max_agreement_30grid()
        fractions = [lhvt.agreement_fraction(spec, t) for t in lhvt.enumerate_strategies(spec)]
        zero = sum(1 for f in fractions if f == 0)
        quantum = experiments.entangled_pair_distribution(0.0, math.radians(30.0)).agreement()
        print("scenario grid30: shared card, 12 settings, second analyzer +30deg")
        print(f"strategies: {len(fractions)}")
        print(_bound_line("agreement", bound))
        print(f"zero-agreement cards: {zero}")
        print(f"quantum agreement at delta=30deg: {_fmt(quantum)}")
        print(f"verdict: {_verdict(quantum, bound)}")
    elif name == "grid120":
        spec = lhvt.grid120_scenario()
        bound = lhvt.min_agreement_120grid()
        quantum = experiments.entangled_pair_distribution(0.0, math.radians(120.0)).agreement()
        print("scenario grid120: shared card on {0,120,240}, analyzers 120deg apart")
        print(f"strategies: {len(lhvt.enumerate_strategies(spec))}")
        print(_bound_line("agreement", bound))
        print(f"quantum agreement at delta=120deg: {_fmt(quantum)}")
        print(f"verdict: {_verdict(quantum, bound)}")
    elif name == "electron":
        spec = lhvt.electron_scenario()
        bound = lhvt.min_antiparallel_electron()
        quantum = experiments.electron_singlet_distribution(0.0, math.radians(120.0)).antiparallel()
        print("scenario electron: opposite cards on {0,120,240}, unequal settings scored")
        print(f"strategies: {len(lhvt.enumerate_strategies(spec))}")
        print(_bound_line("antiparallel", bound))
        print(f"quantum antiparallel at delta=120deg: {_fmt(quantum)}")
        print(f"verdict: {_verdict(quantum, bound)}")
    elif name == "hardy":
        spec = lhvt.hardy_scenario()
        feasible = lhvt.hardy_feasible_set()
        bound = lhvt.hardy_passpass_bound()
        quantum = experiments.hardy_distribution(0.0, 0.0).probability_of("pass", "pass")
        print("scenario hardy: independent cards at {0,45}deg")
        print(f"strategies: {len(lhvt.enumerate_strategies(spec))}, "
              f"feasible after zero constraints: {len(feasible)}")
        for t in feasible:
            print(f"  feasible card {card_string(t)}")
        print(_bound_line("pass/pass at (0,0)", bound))
        print(f"quantum pass/pass at (0,0): {_fmt(quantum)}")
        print(f"verdict: {_verdict(quantum, bound)}")
    elif name == "ghz":
        stages = lhvt.ghz_elimination_stages()
        parities = {c: experiments.ghz_parity_distribution(c).certain_parity for c in "ABCD"}
        print("scenario ghz: independent cards at {0,45}deg, three photons")
        print(f"strategies: {len(stages.all_strategies)}; after case A parity filter: "
              f"{len(stages.after_case_a)}; after all four: {len(stages.feasible)}")
        for case, parity in parities.items():
            print(f"  case {case}: {parity} detect count certain")
        ok = len(stages.feasible) == 0 and all(p is not None for p in parities.values())
        print(f"verdict: {VIOLATION if ok else CONSISTENT}")
    elif name == "chsh":
        angles = args.angles
        if angles is None:
            angles = [math.degrees(a) for a in experiments.CHSH_PHOTON_SETTINGS]
        if len(angles) != 4:
            raise UsageError("--angles needs exactly four degrees values")
        classical = lhvt.chsh_classical(*angles)
        rads = [math.radians(a) for a in angles]
        corr = experiments.chsh_correlations(*rads)
        gamma = experiments.chsh_quantum(*rads)
        print("scenario chsh: two settings per party")
        print("settings deg: " + " ".join(_fmt(a) for a in angles))
        print(f"strategies: {len(classical.gammas)}, combination values all +/-2")
        print(_bound_line("combination", classical.max_bound))
        print(_bound_line("combination", classical.min_bound))
        print("quantum correlations: " + " ".join(_fmt(e) for e in corr))
        print(f"quantum combination = {_fmt(gamma)}")
        verdict = VIOLATION if abs(gamma) > 2.0 + VERDICT_MARGIN else CONSISTENT
        print(f"verdict: {verdict}")
        if args.mc_trials < 0:
            raise UsageError("--mc-trials must be non-negative")
        if args.mc_trials:
            spec = classical.scenario
            n = len(classical.gammas)
            est = lhvt.monte_carlo_mixture(spec, [1.0 / n] * n, args.mc_trials, _seed(args))
            print(f"monte carlo, uniform mixture, {args.mc_trials} trials, seed {_seed(args)}")
            for run, count, mean, se, exact in zip(
                est.runs, est.counts, est.means, est.std_errors, est.exact
            ):
                print(
                    f"  run {run[0]:g}/{run[1]:g} deg: mean {_fmt(mean)} "
                    f"(se {_fmt(se)}, n={count}), exact {_fmt(exact)}"
                )
            m, se = est.chsh_combination()
            print(f"  combination estimate {_fmt(m)} +/- {_fmt(se)}")
    else:  # pragma: no cover - argparse choices guard this
        raise UsageError(f"unknown scenario {name!r}")
    return 0


# --- report -----------------------------------------------------------------


@dataclass(frozen=True)
class RunReport:
    """One scenario's quantum numbers, classical bound data and derived verdict."""

    scenario: str
    quantum: dict
    classical: dict
    verdict: str

    def as_dict(self) -> dict:
        return {"quantum": self.quantum, "classical": self.classical, "verdict": self.verdict}


def build_report() -> list[RunReport]:
    """Every scenario at its quoted parameters; all numbers computed on the spot."""
    rows = []

    spec30 = lhvt.grid30_scenario()
    bound30 = lhvt.max_agreement_30grid()
    q30 = experiments.entangled_pair_distribution(0.0, math.radians(30.0)).agreement()
    rows.append(
        RunReport(
            "grid30",
            {"agreement_delta30": q30},
            {
                "bound": float(bound30.value),
                "bound_exact": str(bound30.value),
                "direction": bound30.direction,
                "strategy_count": len(lhvt.enumerate_strategies(spec30)),
                "optimizer_count": len(bound30.optimizers),
                "optimizers": [card_string(t) for t in bound30.optimizers],
            },
            _verdict(q30, bound30),
        )
    )

    spec120 = lhvt.grid120_scenario()
    bound120 = lhvt.min_agreement_120grid()
    q120 = experiments.entangled_pair_distribution(0.0, math.radians(120.0)).agreement()
    rows.append(
        RunReport(
            "grid120",
            {"agreement_delta120": q120},
            {
                "bound": float(bound120.value),
                "bound_exact": str(bound120.value),
                "direction": bound120.direction,
                "strategy_count": len(lhvt.enumerate_strategies(spec120)),
                "optimizer_count": len(bound120.optimizers),
                "optimizers": [card_string(t) for t in bound120.optimizers],
            },
            _verdict(q120, bound120),
        )
    )

    hb = lhvt.hardy_passpass_bound()
    feasible = lhvt.hardy_feasible_set()
    qh = experiments.hardy_distribution(0.0, 0.0).probability_of("pass", "pass")
    rows.append(
        RunReport(
            "hardy",
            {"pass_pass_at_00": qh},
            {
                "bound": float(hb.value),
                "bound_exact": str(hb.value),
                "direction": hb.direction,
                "strategy_count": len(lhvt.enumerate_strategies(lhvt.hardy_scenario())),
                "feasible_count": len(feasible),
                "feasible": [card_string(t) for t in feasible],
            },
            _verdict(qh, hb),
        )
    )

    stages = lhvt.ghz_elimination_stages()
    parities = {c: experiments.ghz_parity_distribution(c).certain_parity for c in "ABCD"}
    ghz_ok = len(stages.feasible) == 0 and all(p is not None for p in parities.values())
    rows.append(
        RunReport(
            "ghz",
            {"certain_parity": parities},
            {
                "strategy_count": len(stages.all_strategies),
                "after_case_a": len(stages.after_case_a),
                "feasible_count": len(stages.feasible),
            },
            VIOLATION if ghz_ok else CONSISTENT,
        )
    )

    bound_e = lhvt.min_antiparallel_electron()
    qe = experiments.electron_singlet_distribution(0.0, math.radians(120.0)).antiparallel()
    rows.append(
        RunReport(
            "electron",
            {"antiparallel_delta120": qe},
            {
                "bound": float(bound_e.value),
                "bound_exact": str(bound_e.value),
                "direction": bound_e.direction,
                "strategy_count": len(lhvt.enumerate_strategies(lhvt.electron_scenario())),
                "optimizer_count": len(bound_e.optimizers),
                "optimizers": [card_string(t) for t in bound_e.optimizers],
            },
            _verdict(qe, bound_e),
        )
    )

    angles_deg = [math.degrees(a) for a in experiments.CHSH_PHOTON_SETTINGS]
    classical = lhvt.chsh_classical(*angles_deg)
    corr = experiments.chsh_correlations(*experiments.CHSH_PHOTON_SETTINGS)
    gamma = experiments.chsh_quantum(*experiments.CHSH_PHOTON_SETTINGS)
    rows.append(
        RunReport(
            "chsh",
            {
                "settings_deg": angles_deg,
                "correlations": list(corr),
                "combination": gamma,
            },
            {
                "bound_max": float(classical.max_bound.value),
                "bound_min": float(classical.min_bound.value),
                "strategy_count": len(classical.gammas),
            },
            VIOLATION if abs(gamma) > 2.0 + VERDICT_MARGIN else CONSISTENT,
        )
    )
    return rows


def _report_table(rows: list[RunReport]) -> str:
    lines = [f"{'scenario':<10} {'quantum':>12} {'classical':>12} {'verdict':<10}"]
    for r in rows:
        if r.scenario == "ghz":
            certain = sum(1 for v in r.quantum["certain_parity"].values() if v)
            q = f"certain {certain}/4"
            c = f"feasible {r.classical['feasible_count']}"
        else:
            q_val = next(v for v in r.quantum.values() if isinstance(v, float))
            q = _fmt(q_val)
            c = _fmt(r.classical.get("bound", r.classical.get("bound_max", 0.0)))
        lines.append(f"{r.scenario:<10} {q:>12} {c:>12} {r.verdict:<10}")
    return "\n".join(lines)


def cmd_report(args) -> int:
    rows = build_report()
    if not args.all:
        raise UsageError("report currently renders all scenarios; pass --all")
    if args.format == "json":
        payload = {"tool": "bellkit", "scenarios": {r.scenario: r.as_dict() for r in rows}}
        text = json.dumps(payload, sort_keys=True, indent=2)
    else:
        text = _report_table(rows)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        print(text)
    return 0


# --- parser -----------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", help="two-photon joint outcome table or correlation sweep")
    p.add_argument("--theta1", type=float, default=0.0, help="analyzer 1 angle, degrees")
    p.add_argument("--theta2", type=float, default=0.0, help="analyzer 2 angle, degrees")
    p.add_argument("--sweep", action="store_true",
                   help="print delta_deg,correlation CSV for delta = 0..180")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("lhvt", help="enumerate instruction-set strategies for a scenario")
    p.add_argument("--scenario", required=True,
                   choices=["grid30", "grid120", "electron", "hardy", "ghz", "chsh"])
    p.add_argument("--angles", type=float, nargs=4, default=None,
                   help="chsh analyzer angles in degrees (theta1 theta1' theta2 theta2')")
    p.add_argument("--mc-trials", type=int, default=0,
                   help="chsh only: sample a uniform strategy mixture this many times")
    p.add_argument("--seed", type=int, default=None,
                   help="Monte-Carlo seed (default: BELLKIT_SEED or 0)")
    p.set_defaults(func=cmd_lhvt)

    p = sub.add_parser("poincare", help="Stokes/ellipse/Bloch view of one polarization state")
    p.add_argument("--alpha-x", type=float, required=True)
    p.add_argument("--phi-x", type=float, default=0.0, help="degrees")
    p.add_argument("--alpha-y", type=float, required=True)
    p.add_argument("--phi-y", type=float, default=0.0, help="degrees")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("rotate", help="spin-1/2 or spin-1 rotation matrix and state action")
    p.add_argument("--spin", choices=["half", "one"], required=True)
    p.add_argument("--euler", type=float, nargs=3, required=True,
                   metavar=("THETA", "PHI", "CHI"), help="degrees")
    p.add_argument("--state", type=float, nargs="+", default=None,
                   help="state amplitudes as re im pairs")
    p.add_argument("--check", action="store_true",
                   help="verify unitarity, generators, and the spin-1 pair construction")
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("report", help="quantum value vs classical bound for every scenario")
    p.add_argument("--all", action="store_true", help="include every scenario")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bellkit: error: {exc}", file=sys.stderr)
        return 1
    except InternalCheckError as exc:
        print(f"bellkit: internal check failed: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"bellkit: internal check failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

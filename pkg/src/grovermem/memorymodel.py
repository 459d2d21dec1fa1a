"""Emotion-regulation recognition experiment and its phase model.

Each (strategy, emotion) cell has an observed cued-recognition rate. The
model maps each cell to a phase that reproduces the rate at fixed (N, J),
subject to watch > reappraise > suppress at each emotion level.
"""
import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from grovermem.analytic import success_probability
from grovermem.errors import FixtureError, GroverError, InfeasibleTargetError
from grovermem.phasefit import ORDER_TOL, PhaseFit, feasible_max_probability, fit_phase

SLIDES_PER_SET = 9


class Strategy(enum.Enum):
    WATCH = "watch"
    REAPPRAISE = "reappraise"
    SUPPRESS = "suppress"


class EmotionLevel(enum.Enum):
    LOW = "low"
    HIGH = "high"


# phase ordering within an emotion level, largest first
STRATEGY_ORDER = (Strategy.WATCH, Strategy.REAPPRAISE, Strategy.SUPPRESS)
_SYMBOL = {Strategy.WATCH: "W", Strategy.REAPPRAISE: "R", Strategy.SUPPRESS: "S"}
_LEVEL = {EmotionLevel.LOW: 1, EmotionLevel.HIGH: 2}


def cell_label(strategy: Strategy, emotion: EmotionLevel) -> str:
    """Short name such as ``W1`` (watch, low) or ``S2`` (suppress, high)."""
    return f"{_SYMBOL[strategy]}{_LEVEL[emotion]}"


@dataclass(frozen=True)
class Condition:
    strategy: Strategy
    emotion: EmotionLevel
    observed_p: float
    participants: int
    reference_phase: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.observed_p <= 1.0:
            raise ValueError(f"observed_p must be in [0, 1], got {self.observed_p}")
        if self.participants <= 0:
            raise ValueError(f"participants must be positive, got {self.participants}")

    @property
    def label(self) -> str:
        return cell_label(self.strategy, self.emotion)

    @property
    def key(self) -> tuple[Strategy, EmotionLevel]:
        return (self.strategy, self.emotion)


@dataclass(frozen=True)
class ExperimentTable:
    conditions: tuple[Condition, ...]
    model_n: int = 80
    model_j: int = 3
    # cued-recall rates per strategy; stored but never fitted
    verbal_recall: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.conditions:
            raise ValueError("experiment table needs at least one condition")
        keys = [c.key for c in self.conditions]
        if len(set(keys)) != len(keys):
            dup = next(c.label for c in self.conditions if keys.count(c.key) > 1)
            raise ValueError(f"duplicate condition {dup}")
        object.__setattr__(self, "conditions", tuple(self.conditions))

    def __iter__(self):
        return iter(self.conditions)

    def __len__(self):
        return len(self.conditions)

    def __getitem__(self, key) -> Condition:
        for c in self.conditions:
            if c.key == tuple(key):
                return c
        raise KeyError(key)

    @property
    def is_complete(self) -> bool:
        return len(self.conditions) == len(Strategy) * len(EmotionLevel)


def builtin_experiment() -> ExperimentTable:
    """Non-verbal cued-recognition rates of the emotion-regulation study, with N=80, J=3."""
    W, R, S = STRATEGY_ORDER
    lo, hi = EmotionLevel.LOW, EmotionLevel.HIGH
    return ExperimentTable(
        conditions=(
            Condition(W, lo, 0.43, 40, 2.8),
            Condition(R, lo, 0.40, 22, 2.5),
            Condition(S, lo, 0.35, 20, 2.0),
            Condition(W, hi, 0.37, 40, 4.3),
            Condition(R, hi, 0.48, 22, 3.6),
            Condition(S, hi, 0.40, 20, 2.5),
        ),
        model_n=80,
        model_j=3,
        verbal_recall={W: 0.18, R: 0.16, S: 0.13},
    )


def parse_fixture(text: str) -> ExperimentTable:
    """Parse the plain-text table format.

    First non-blank line ``#n=<int> j=<int>``, then one row per condition::

        strategy,emotion,observed_p,participants[,reference_phase]
    """
    lines = text.splitlines()
    header_seen = False
    n = j = None
    conditions = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if not header_seen:
            if not line.startswith("#"):
                raise FixtureError("expected header '#n=<int> j=<int>'", lineno)
            fields = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
            try:
                n, j = int(fields["n"]), int(fields["j"])
            except (KeyError, ValueError):
                raise FixtureError(f"malformed header {line!r}", lineno) from None
            if n < 2 or j < 1:
                raise FixtureError(f"header needs n >= 2 and j >= 1, got n={n} j={j}", lineno)
            header_seen = True
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (4, 5):
            raise FixtureError(f"expected 4 or 5 comma-separated fields, got {len(parts)}", lineno)
        try:
            strategy = Strategy(parts[0].lower())
            emotion = EmotionLevel(parts[1].lower())
            observed = float(parts[2])
            participants = int(parts[3])
            phase = float(parts[4]) if len(parts) == 5 and parts[4] else None
            cond = Condition(strategy, emotion, observed, participants, phase)
        except ValueError as exc:
            raise FixtureError(str(exc), lineno) from None
        if any(c.key == cond.key for c in conditions):
            raise FixtureError(f"duplicate condition {cond.label}", lineno)
        conditions.append(cond)
    if not header_seen:
        raise FixtureError("empty fixture: missing header", 1)
    if not conditions:
        raise FixtureError("fixture has no condition rows", len(lines))
    return ExperimentTable(tuple(conditions), model_n=n, model_j=j)


def load_fixture(path) -> ExperimentTable:
    return parse_fixture(Path(path).read_text())


def format_fixture(table: ExperimentTable) -> str:
    out = [f"#n={table.model_n} j={table.model_j}"]
    for c in table:
        row = f"{c.strategy.value},{c.emotion.value},{c.observed_p!r},{c.participants}"
        if c.reference_phase is not None:
            row += f",{c.reference_phase!r}"
        out.append(row)
    return "\n".join(out) + "\n"


def ordering_violations(table: ExperimentTable, phases: dict, tol: float = ORDER_TOL) -> list[str]:
    """Violations of the within-level strategy ordering for a phase assignment.

    Only adjacent strategies present in the table are compared, so partial
    tables are checked on the chains they contain.
    """
    out = []
    for emotion in EmotionLevel:
        chain = [s for s in STRATEGY_ORDER if (s, emotion) in phases]
        for a, b in zip(chain, chain[1:]):
            pa, pb = phases[(a, emotion)], phases[(b, emotion)]
            if not pa - pb > tol:
                out.append(
                    f"phi({cell_label(a, emotion)})={pa:.6f} is not > phi({cell_label(b, emotion)})={pb:.6f}"
                )
    return out


@dataclass(frozen=True)
class FitRow:
    condition: Condition
    fit: PhaseFit
    selected: float | None

    @property
    def deviation(self) -> float | None:
        if self.selected is None or self.condition.reference_phase is None:
            return None
        return abs(self.selected - self.condition.reference_phase)


@dataclass
class TableReport:
    """All ordering-consistent branch assignments plus the selected one.

    ``assignments`` lists every consistent choice (cell key -> phase). The
    ones with ``phi(W2) > pi`` come first. The selected assignment is the
    preferred one whose phases are closest in total to the table's
    reference phases.
    """

    table: ExperimentTable
    rows: list[FitRow]
    assignments: list[dict]
    preferred: list[bool]
    n_candidates: int

    @property
    def consistent(self) -> bool:
        return bool(self.assignments)

    @property
    def selected(self) -> dict | None:
        return self.assignments[0] if self.assignments else None


def _reference_distance(table: ExperimentTable, phases: dict) -> float:
    return sum(abs(phases[c.key] - c.reference_phase) for c in table if c.reference_phase is not None)


def reproduce_table(table: ExperimentTable) -> TableReport:
    n, j = table.model_n, table.model_j
    fits = {}
    for cond in table:
        try:
            fits[cond.key] = fit_phase(cond.observed_p, n, j)
        except InfeasibleTargetError as exc:
            ceiling = feasible_max_probability(n, j)
            raise InfeasibleTargetError(
                f"cell {cond.label} ({cond.strategy.value}/{cond.emotion.value}) p={cond.observed_p}: {exc}",
                ceiling=exc.ceiling if exc.ceiling is not None else ceiling,
            ) from exc

    keys = [c.key for c in table]
    high_watch = (Strategy.WATCH, EmotionLevel.HIGH)
    candidates = 0
    scored = []
    for combo in itertools.product(*(fits[k].branches for k in keys)):
        candidates += 1
        phases = dict(zip(keys, combo))
        if ordering_violations(table, phases):
            continue
        pref = high_watch in phases and phases[high_watch] > math.pi
        scored.append((not pref, _reference_distance(table, phases), combo, phases, pref))
    scored.sort(key=lambda t: t[:3])

    assignments = [s[3] for s in scored]
    selected = assignments[0] if assignments else {}
    rows = [FitRow(c, fits[c.key], selected.get(c.key)) for c in table]
    return TableReport(
        table=table,
        rows=rows,
        assignments=assignments,
        preferred=[s[4] for s in scored],
        n_candidates=candidates,
    )


@dataclass(frozen=True)
class SyntheticCell:
    condition: Condition
    phase: float
    model_p: float
    trials: int
    successes: int
    phase_source: str

    @property
    def frequency(self) -> float:
        return self.successes / self.trials


def simulate_cell(p: float, trials: int, rng: np.random.Generator) -> int:
    """Bernoulli successes out of ``trials`` at success probability ``p``."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    return int(rng.binomial(trials, p))


def simulate_participants(
    table: ExperimentTable,
    trials_per_cell: int | None = None,
    seed=0,
    report: TableReport | None = None,
) -> list[SyntheticCell]:
    """Draw synthetic recognition outcomes for each cell from the fitted phases.

    ``trials_per_cell`` defaults to participants x 9 slides. Every cell gets
    its own stream derived from ``(seed, cell index)``. If no
    ordering-consistent assignment exists, the cell's reference phase is used
    and ``phase_source`` says so.
    """
    if trials_per_cell is not None and trials_per_cell < 1:
        raise ValueError(f"trials_per_cell must be >= 1, got {trials_per_cell}")
    if report is None:
        report = reproduce_table(table)
    selected = report.selected or {}
    streams = np.random.SeedSequence(seed).spawn(len(table))
    out = []
    for cond, ss in zip(table, streams):
        if cond.key in selected:
            phase, source = selected[cond.key], "fitted"
        elif cond.reference_phase is not None:
            phase, source = cond.reference_phase, "reference-fallback"
        else:
            raise GroverError(f"cell {cond.label} has neither a fitted nor a reference phase")
        trials = trials_per_cell if trials_per_cell is not None else cond.participants * SLIDES_PER_SET
        p = success_probability(table.model_n, table.model_j, phase)
        k = simulate_cell(p, trials, np.random.default_rng(ss))
        out.append(SyntheticCell(cond, phase, p, trials, k, source))
    return out


def with_observed(table: ExperimentTable, values: dict) -> ExperimentTable:
    """Copy of ``table`` with observed rates replaced per cell key."""
    conds = tuple(replace(c, observed_p=values.get(c.key, c.observed_p)) for c in table)
    return replace(table, conditions=conds)

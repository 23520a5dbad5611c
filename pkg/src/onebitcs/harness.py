"""Signal families, experiment configs and the trial runner."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .errors import FormatError, InstanceTooLargeError, OneBitCSError, PreconditionError, TrialError
from .formats import fmt_fraction, parse_fraction, read_matrix
from .recovery import (
    RecoveryReport,
    column_scores,
    decode_approximate,
    decode_l0_bruteforce,
    decode_superset,
    decode_superset_bounded_range,
    decode_superset_same_sign,
    superset_to_approximate,
)
from .seeding import mix64, rng
from .sensing import (
    GAUSSIAN,
    STRICT,
    TERNARY,
    THM1,
    THM3,
    THM4,
    THM5,
    REGIMES,
    SensingMatrix,
    build_gaussian_matrix,
    build_thm1_matrix,
    build_thm3_matrix,
    build_thm4_matrix,
    build_thm5_matrix,
    measure,
)
from .signals import SparseSignal, dynamic_range, min_same_sign_count

FAMILY_CAP = 10**7
RESAMPLES = 1000
MAGNITUDE_GRID = 8

EXHAUSTIVE = "exhaustive"
RANDOM = "random"


@dataclass(frozen=True)
class SignalFamily:
    """Which signals a run feeds through the decoder.

    Exhaustive families take every support of size ``min_support..k`` and
    every assignment from ``values``. Random families draw a support size
    uniformly from ``max(min_support, 1)..k``, then entries from ``values``
    or, when ``values`` is empty, magnitudes on the grid ``[1, eta]`` with
    spacing 1/8 and random signs. The ``eta`` and ``R`` filters keep only
    signals with dynamic range <= eta or same-sign count <= R.
    """

    mode: str = EXHAUSTIVE
    values: tuple[Fraction, ...] = ()
    min_support: int = 1
    eta: Optional[Fraction] = None
    R: Optional[int] = None
    trials: int = 0

    def __post_init__(self):
        if self.mode not in (EXHAUSTIVE, RANDOM):
            raise PreconditionError(f"unknown family mode {self.mode!r}")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if any(v == 0 for v in self.values):
            raise PreconditionError("family values must be nonzero")
        if self.mode == EXHAUSTIVE and not self.values:
            raise PreconditionError("an exhaustive family needs a finite value set")
        if self.mode == RANDOM and not self.values and self.eta is None:
            raise PreconditionError("a random family needs values or an eta bound")

    def keeps(self, x: SparseSignal) -> bool:
        if x.l0 == 0:
            return True
        if self.eta is not None and dynamic_range(x) > self.eta:
            return False
        if self.R is not None and min_same_sign_count(x) > self.R:
            return False
        return True

    def size(self, n: int, k: int) -> int:
        """Number of signals enumerated before filtering."""
        if self.mode == RANDOM:
            return self.trials
        v = len(self.values)
        return sum(math.comb(n, s) * v**s for s in range(self.min_support, k + 1))


def _draw(fam: SignalFamily, n: int, k: int, seed: int) -> SparseSignal:
    g = rng(seed)
    for _ in range(RESAMPLES):
        s = int(g.integers(max(fam.min_support, 1), k + 1))
        supp = sorted(int(j) for j in g.choice(n, size=s, replace=False))
        if fam.values:
            vals = [fam.values[int(g.integers(len(fam.values)))] for _ in supp]
        else:
            top = int(fam.eta * MAGNITUDE_GRID)
            vals = [Fraction(int(g.integers(MAGNITUDE_GRID, top + 1)), MAGNITUDE_GRID)
                    * (1 if g.integers(2) else -1) for _ in supp]
        x = SparseSignal(n, dict(zip(supp, vals)))
        if fam.keeps(x):
            return x
    raise PreconditionError(f"family filters rejected {RESAMPLES} draws in a row")


def generate_signal_family(
    fam: SignalFamily, n: int, k: int, seed: int = 0, *, cap: int = FAMILY_CAP
) -> Iterator[tuple[int, SparseSignal]]:
    """Yield (trial index, signal) pairs in a fixed order.

    Random trial ``t`` is drawn from its own stream ``mix64(seed, t)``, so any
    trial can be regenerated without the others.
    """
    total = fam.size(n, k)
    if total > cap:
        raise InstanceTooLargeError(total, cap, "signals")
    if fam.mode == RANDOM:
        for t in range(fam.trials):
            yield t, _draw(fam, n, k, mix64(seed, t))
        return
    t = 0
    for s in range(fam.min_support, k + 1):
        for supp in combinations(range(n), s):
            for vals in product(fam.values, repeat=s):
                x = SparseSignal(n, dict(zip(supp, vals)))
                if fam.keeps(x):
                    yield t, x
                    t += 1


# -- configuration -----------------------------------------------------------

DECODERS = ("default", "approximate")


@dataclass(frozen=True)
class ExperimentConfig:
    regime: str
    n: int
    k: int
    eps: Fraction
    family: SignalFamily
    eta: Optional[Fraction] = None
    R: Optional[int] = None
    m: Optional[int] = None
    seed: int = 0
    decoder: str = "default"
    tau: float = 0.0
    matrix: Optional[str] = None
    output: Optional[str] = None

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise PreconditionError(f"unknown regime {self.regime!r}")
        if self.decoder not in DECODERS:
            raise PreconditionError(f"unknown decoder {self.decoder!r}")
        if self.decoder == "approximate" and self.regime != THM3:
            raise PreconditionError("the approximate post-processing applies to thm3 only")
        if not 1 <= self.k <= self.n:
            raise PreconditionError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.regime in (THM4, GAUSSIAN) and self.eta is None:
            raise PreconditionError(f"{self.regime} needs eta")
        if self.regime == THM5 and self.R is None:
            raise PreconditionError("thm5 needs R")
        if self.regime == GAUSSIAN and self.m is None:
            raise PreconditionError("gaussian needs m")

    @property
    def contract(self) -> str:
        """'approximate' or 'superset': which recovery guarantee each row is checked against."""
        if self.regime in (THM1, GAUSSIAN) or self.decoder == "approximate":
            return "approximate"
        return "superset"


_INT_KEYS = {"n", "k", "R", "m", "seed", "min_support"}
_RATIONAL_KEYS = {"eps", "eta", "filter_eta"}


def parse_config(text: str, base: Path | None = None) -> ExperimentConfig:
    """Read ``key = value`` lines; ``#`` starts a comment.

    Keys: regime, n, k, eps, eta, R, m, seed, decoder, tau, matrix, output,
    trials (an integer or ``exhaustive``), values (comma-separated p/q),
    min_support, filter_eta, filter_R. The family filters default to eta
    for thm4 and gaussian runs and to R for thm5 runs.
    """
    raw: dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"config line {number} is not 'key = value'")
        key = key.strip()
        if key in raw:
            raise FormatError(f"config key {key!r} given twice")
        raw[key] = value.strip()

    def get(key, conv, default=None):
        if key not in raw:
            return default
        try:
            return conv(raw[key])
        except (ValueError, FormatError) as exc:
            raise FormatError(f"config key {key!r}: bad value {raw[key]!r}") from exc

    for key in ("regime", "n", "k", "eps"):
        if key not in raw:
            raise FormatError(f"config lacks {key!r}")
    trials = raw.get("trials", EXHAUSTIVE)
    values = tuple(parse_fraction(v.strip()) for v in raw.get("values", "").split(",") if v.strip())
    # families default to the side condition the regime's decoder assumes
    eta = get("eta", parse_fraction)
    R = get("R", int)
    filter_eta = get("filter_eta", parse_fraction, eta if raw["regime"] in (THM4, GAUSSIAN) else None)
    filter_R = get("filter_R", int, R if raw["regime"] == THM5 else None)
    family = SignalFamily(
        mode=EXHAUSTIVE if trials == EXHAUSTIVE else RANDOM,
        values=values,
        min_support=get("min_support", int, 1),
        eta=filter_eta,
        R=filter_R,
        trials=0 if trials == EXHAUSTIVE else get("trials", int),
    )
    known = _INT_KEYS | _RATIONAL_KEYS | {"regime", "decoder", "tau", "matrix", "output", "trials", "values", "filter_R"}
    unknown = set(raw) - known
    if unknown:
        raise FormatError(f"unknown config keys: {', '.join(sorted(unknown))}")
    matrix = raw.get("matrix")
    if matrix and base is not None:
        matrix = str(base / matrix)
    return ExperimentConfig(
        regime=raw["regime"], n=get("n", int), k=get("k", int), eps=get("eps", parse_fraction),
        family=family, eta=eta, R=R, m=get("m", int),
        seed=get("seed", int, 0), decoder=raw.get("decoder", "default"),
        tau=get("tau", float, 0.0), matrix=matrix, output=raw.get("output"),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(), base=path.parent)


# -- running -----------------------------------------------------------------

COLUMNS = ("regime", "n", "m", "k", "eps", "seed", "l0", "size", "fp", "fn", "superset_ok")


@dataclass(frozen=True)
class ReportRow:
    regime: str
    n: int
    m: int
    k: int
    eps: Fraction
    seed: int
    l0: int
    size: int
    fp: int
    fn: int
    ok: bool

    def cells(self) -> list[str]:
        return [self.regime, str(self.n), str(self.m), str(self.k), fmt_fraction(self.eps),
                str(self.seed), str(self.l0), str(self.size), str(self.fp), str(self.fn),
                "1" if self.ok else "0"]


@dataclass(frozen=True)
class Summary:
    trials: int = 0
    max_fp: int = 0
    max_fn: int = 0
    violations: int = 0

    @classmethod
    def of(cls, rows: Sequence[ReportRow]) -> "Summary":
        return cls(
            trials=len(rows),
            max_fp=max((r.fp for r in rows), default=0),
            max_fn=max((r.fn for r in rows), default=0),
            violations=sum(1 for r in rows if not r.ok),
        )

    def line(self) -> str:
        return (f"# summary trials={self.trials} max_fp={self.max_fp} "
                f"max_fn={self.max_fn} violations={self.violations}")


@dataclass
class ResultsTable:
    """Per-trial rows plus their summary.

    The CSV is a header, one row per trial in trial order, and a final
    ``# summary`` comment line. Wall time is kept out of the CSV so equal
    configs give byte-identical files.
    """

    rows: list[ReportRow] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def summary(self) -> Summary:
        return Summary.of(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow(r.cells())
        buf.write(self.summary.line() + "\n")
        return buf.getvalue()


def parse_results_csv(text: str) -> tuple[list[ReportRow], str]:
    """Rows and the summary line from a CSV written by :meth:`ResultsTable.to_csv`."""
    lines = text.splitlines()
    if not lines or not lines[-1].startswith("# summary"):
        raise FormatError("results CSV must end with a summary line")
    reader = csv.reader(lines[:-1])
    header = next(reader, None)
    if tuple(header or ()) != COLUMNS:
        raise FormatError(f"unexpected CSV header {header}")
    rows = [
        ReportRow(c[0], int(c[1]), int(c[2]), int(c[3]), parse_fraction(c[4]), int(c[5]),
                  int(c[6]), int(c[7]), int(c[8]), int(c[9]), c[10] == "1")
        for c in reader
    ]
    return rows, lines[-1]


def build_matrix(cfg: ExperimentConfig) -> SensingMatrix:
    if cfg.matrix:
        A = read_matrix(Path(cfg.matrix).read_text())
        if A.regime != cfg.regime or A.n != cfg.n:
            raise PreconditionError(f"{cfg.matrix} is a {A.regime} matrix with n={A.n}")
        return A
    if cfg.regime == THM1:
        return build_thm1_matrix(cfg.n, cfg.k, cfg.eps, cfg.seed)
    if cfg.regime == THM3:
        return build_thm3_matrix(cfg.n, cfg.k, cfg.eps, cfg.seed)
    if cfg.regime == THM4:
        return build_thm4_matrix(cfg.n, cfg.k, cfg.eps, cfg.eta, cfg.seed)
    if cfg.regime == THM5:
        return build_thm5_matrix(cfg.n, cfg.k, cfg.eps, cfg.R, cfg.seed)
    return build_gaussian_matrix(cfg.n, cfg.m, cfg.seed)


def decode(cfg: ExperimentConfig, A: SensingMatrix, x: SparseSignal) -> RecoveryReport:
    """Measure ``x`` with ``A`` and run the decoder the config selects."""
    if cfg.regime == GAUSSIAN:
        y = measure(A, x, STRICT, cfg.tau)
        xh = decode_l0_bruteforce(A, y, cfg.k, cfg.eta)
        return RecoveryReport(frozenset(j for j, _ in xh.items()), regime=GAUSSIAN, k=cfg.k, eps=cfg.eps)
    y = measure(A, x, TERNARY)
    if cfg.regime == THM1:
        return decode_approximate(A, y, cfg.k, cfg.eps)
    if cfg.regime == THM3:
        rep = decode_superset(A, y, cfg.k, cfg.eps)
        if cfg.decoder == "approximate":
            scores, _ = column_scores(A, y)
            trimmed = superset_to_approximate(rep.returned, cfg.k, cfg.eps, dict(enumerate(scores)))
            return RecoveryReport(trimmed, regime=THM3, k=cfg.k, eps=cfg.eps)
        return rep
    if cfg.regime == THM4:
        return decode_superset_bounded_range(A, y, cfg.k, cfg.eps, cfg.eta)
    return decode_superset_same_sign(A, y, cfg.k, cfg.eps, cfg.R)


def run_experiment(cfg: ExperimentConfig, A: SensingMatrix | None = None) -> ResultsTable:
    """Decode every signal of the family and tabulate the reports.

    Trial ``t`` carries seed ``mix64(cfg.seed, t)``; random families draw
    their signal from that seed.
    """
    start = time.perf_counter()
    A = A if A is not None else build_matrix(cfg)
    table = ResultsTable()
    for t, x in generate_signal_family(cfg.family, cfg.n, cfg.k, cfg.seed):
        try:
            rep = decode(cfg, A, x).against(x.entries.keys())
        except OneBitCSError as exc:
            raise TrialError(t, exc) from exc
        ok = rep.is_approximate() if cfg.contract == "approximate" else rep.is_superset()
        table.rows.append(ReportRow(
            cfg.regime, cfg.n, A.m, cfg.k, cfg.eps, mix64(cfg.seed, t), x.l0,
            len(rep.returned), rep.false_positives, rep.false_negatives, ok,
        ))
    table.wall_time = time.perf_counter() - start
    if cfg.output:
        Path(cfg.output).write_text(table.to_csv())
    return table

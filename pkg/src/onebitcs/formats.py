"""Plain-text file formats for signals, designs, matrices and measurements.

Every format uses 1-based indices on disk; objects in memory are 0-based.
Rationals are written ``p/q``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .designs import BinaryDesign
from .errors import FormatError
from .sensing import (
    TERNARY,
    BinaryRow,
    DenseRow,
    MeasurementVector,
    PowerRow,
    SensingMatrix,
)
from .signals import SparseSignal


def fmt_fraction(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_fraction(text: str) -> Fraction:
    if "." in text or "e" in text.lower():
        raise FormatError(f"expected an exact rational p/q, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}") from exc


def _lines(text: str) -> list[str]:
    return text.splitlines()


def _header(line: str, tag: str) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != tag:
        raise FormatError(f"expected a '{tag}' header, got {line!r}")
    out = {}
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise FormatError(f"header field {part!r} is not key=value")
        out[key] = value
    return out


def _int(fields: dict[str, str], key: str) -> int:
    try:
        return int(fields[key])
    except KeyError as exc:
        raise FormatError(f"header lacks {key}=") from exc
    except ValueError as exc:
        raise FormatError(f"{key}={fields[key]!r} is not an integer") from exc


def _indices(tokens: Iterable[str], bound: int) -> list[int]:
    out = []
    for tok in tokens:
        try:
            i = int(tok)
        except ValueError as exc:
            raise FormatError(f"bad index {tok!r}") from exc
        if not 1 <= i <= bound:
            raise FormatError(f"index {i} outside 1..{bound}")
        out.append(i - 1)
    return out


# -- signals -----------------------------------------------------------------


def write_signal(x: SparseSignal) -> str:
    lines = [f"signal n={x.dim}"]
    lines += [f"{j + 1} {fmt_fraction(v)}" for j, v in x.items()]
    return "\n".join(lines) + "\n"


def read_signal(text: str) -> SparseSignal:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty signal file")
    n = _int(_header(lines[0], "signal"), "n")
    entries = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise FormatError(f"signal line {line!r} is not '<index> <p/q>'")
        (j,) = _indices(tokens[:1], n)
        if j in entries:
            raise FormatError(f"index {j + 1} listed twice")
        entries[j] = parse_fraction(tokens[1])
    return SparseSignal(n, entries)


# -- designs -----------------------------------------------------------------


def write_design(D: BinaryDesign) -> str:
    d = "-" if D.d is None else str(D.d)
    alpha = "-" if D.alpha is None else fmt_fraction(D.alpha)
    lines = [
        f"design m={D.m} n={D.n} d={d} property={D.kind} k={D.k} l={D.l} "
        f"alpha={alpha} status={D.status} seed={D.seed}"
    ]
    lines += [" ".join(str(i + 1) for i in sorted(col)) for col in D.columns]
    return "\n".join(lines) + "\n"


def read_design(text: str) -> BinaryDesign:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty design file")
    h = _header(lines[0], "design")
    m, n = _int(h, "m"), _int(h, "n")
    body = lines[1:]
    if len(body) < n or any(line.strip() for line in body[n:]):
        raise FormatError(f"design declares n={n} columns but has {len(body)} lines")
    cols = tuple(frozenset(_indices(line.split(), m)) for line in body[:n])
    alpha = None if h.get("alpha", "-") == "-" else parse_fraction(h["alpha"])
    D = BinaryDesign(
        m=m, n=n, columns=cols, kind=h.get("property", "list-disjunct"),
        k=_int(h, "k"), l=_int(h, "l"), alpha=alpha,
        status=h.get("status", "unverified"), seed=_int(h, "seed"),
    )
    if h.get("d", "-") != "-" and D.d != int(h["d"]):
        raise FormatError(f"header says d={h['d']} but columns have weight {D.d}")
    return D


# -- matrices ----------------------------------------------------------------


def _fmt_param(name: str, value) -> str:
    return f"{name}:{fmt_fraction(value) if isinstance(value, Fraction) else value}"


def _parse_param(token: str) -> tuple[str, object]:
    name, sep, value = token.partition(":")
    if not sep:
        raise FormatError(f"matrix parameter {token!r} is not name:value")
    return name, parse_fraction(value) if "/" in value else int(value)


def write_matrix(A: SensingMatrix) -> str:
    params = ",".join(_fmt_param(k, v) for k, v in A.params) or "-"
    lines = [
        f"matrix regime={A.regime} n={A.n} m={A.m} params={params} seed={A.seed} "
        f"split={A.split} group={A.group_size} status={A.status}"
    ]
    for row in A.rows:
        if isinstance(row, BinaryRow):
            lines.append(" ".join(["B"] + [str(j + 1) for j in sorted(row.support)]))
        elif isinstance(row, PowerRow):
            lines.append(" ".join(["P", f"a={fmt_fraction(row.base)}"] + [str(j + 1) for j in row.support]))
        else:
            lines.append(" ".join(["D"] + [repr(float(v)) for v in row.values]))
    return "\n".join(lines) + "\n"


def _read_row(line: str, n: int):
    tokens = line.split()
    if not tokens:
        raise FormatError("empty matrix row")
    tag, rest = tokens[0], tokens[1:]
    if tag == "B":
        return BinaryRow(frozenset(_indices(rest, n)))
    if tag == "P":
        if not rest or not rest[0].startswith("a="):
            raise FormatError(f"power row {line!r} lacks a=<p/q>")
        return PowerRow(tuple(_indices(rest[1:], n)), parse_fraction(rest[0][2:]))
    if tag == "D":
        try:
            values = tuple(float(t) for t in rest)
        except ValueError as exc:
            raise FormatError(f"bad dense row {line!r}") from exc
        if len(values) != n:
            raise FormatError(f"dense row has {len(values)} values, expected {n}")
        return DenseRow(values)
    raise FormatError(f"unknown row tag {tag!r}")


def read_matrix(text: str) -> SensingMatrix:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty matrix file")
    h = _header(lines[0], "matrix")
    n, m = _int(h, "n"), _int(h, "m")
    raw = h.get("params", "-")
    params = () if raw == "-" else tuple(_parse_param(t) for t in raw.split(","))
    rows = [_read_row(line, n) for line in lines[1:] if line.strip()]
    if len(rows) != m:
        raise FormatError(f"matrix declares m={m} rows but has {len(rows)}")
    try:
        return SensingMatrix(
            n=n, rows=tuple(rows), regime=h.get("regime", ""), params=params,
            seed=_int(h, "seed"), split=int(h.get("split", 0)),
            group_size=int(h.get("group", 1)), status=h.get("status", "certified"),
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# -- measurements ------------------------------------------------------------


def write_measurement(y: MeasurementVector) -> str:
    return " ".join(str(v) for v in y.entries) + "\n"


def read_measurement(text: str, mode: Optional[str] = None) -> MeasurementVector:
    """Parse one line of -1/0/1 values; a zero anywhere forces ternary mode."""
    try:
        entries = tuple(int(t) for t in text.split())
    except ValueError as exc:
        raise FormatError("measurement values must be -1, 0 or 1") from exc
    try:
        return MeasurementVector(entries, mode or TERNARY)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc

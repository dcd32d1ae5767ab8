"""Job-file parsing for the command line.

The format is a plain sectioned key = value file:

    [torus]
    n = 3
    foliation = 1,0,0
    invariance = 1
    truncation = 3

    [output]
    format = table

Sections [lie], [torus] and [witness] select the pipeline; exactly one
of them must be present.  Keys that repeat to build up a list are
``bracket`` and ``ideal`` in [lie] and ``foliation`` in [torus];
every other key may appear once.  All numeric fields of the exact
pipelines take integers or fractions only; decimal literals are
rejected with a pointed message, since silently rounding them would
defeat the purpose of an exact engine.

The parser is deliberately hand-rolled rather than configparser-based:
repeated keys, exact-field validation and line-precise errors are the
whole job, and configparser fights all three.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, ValidationError
from .scalars import ExtScalar, parse_ext_scalar
from .torus import TorusSpec

_SECTION_RE = re.compile(r"^\[([a-z]+)\]$")
_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")
_INT_RE = re.compile(r"^-?\d+$")
_DECIMAL_RE = re.compile(r"\d\.\d|^\.\d|\d\.$")

_SECTIONS = {
    "lie": {"dim", "bracket", "ideal"},
    "torus": {"n", "foliation", "invariance", "truncation"},
    "witness": {
        "k_min", "k_max", "max_derivative_order", "samples_per_interval"
    },
    "output": {"format", "path"},
}
_REPEATABLE = {("lie", "bracket"), ("lie", "ideal"), ("torus", "foliation")}
_MODE_SECTIONS = ("lie", "torus", "witness")
_FORMATS = ("table", "json", "csv")


@dataclass(frozen=True)
class LieJob:
    """A lie-algebra cohomology job: a table and an optional quotient."""

    dim: int
    brackets: tuple[tuple[int, int, int, Fraction], ...]
    ideal_vectors: tuple[tuple[Fraction, ...], ...] | None


@dataclass(frozen=True)
class WitnessJob:
    """Levels and sampling resolution for the bump-family witness."""

    k_min: int
    k_max: int
    max_derivative_order: int
    samples_per_interval: int


@dataclass(frozen=True)
class OutputConfig:
    format: str = "table"
    path: str | None = None


@dataclass(frozen=True)
class JobConfig:
    """One parsed job: exactly one of the three pipelines plus output."""

    mode: str
    lie: LieJob | None = None
    torus: TorusSpec | None = None
    witness: WitnessJob | None = None
    output: OutputConfig = field(default_factory=OutputConfig)


def _exact_fraction(key: str, token: str) -> Fraction:
    if _DECIMAL_RE.search(token):
        raise ValidationError(
            key,
            "decimal literal %r not allowed in an exact field; "
            "use an integer or a fraction like 1/2" % token,
        )
    if not _FRACTION_RE.match(token):
        raise ValidationError(key, "cannot parse %r as a fraction" % token)
    return Fraction(token)


def _exact_int(key: str, token: str) -> int:
    if _DECIMAL_RE.search(token):
        raise ValidationError(
            key, "decimal literal %r not allowed; use an integer" % token
        )
    if not _INT_RE.match(token):
        raise ValidationError(key, "cannot parse %r as an integer" % token)
    return int(token)


def _collect_lines(text: str) -> dict[str, list[tuple[str, str, int]]]:
    """Group (key, value, line_no) triples by section, validating shape."""
    sections: dict[str, list[tuple[str, str, int]]] = {}
    current: str | None = None
    seen_once: set[tuple[str, str]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            name = m.group(1)
            if name not in _SECTIONS:
                raise ParseError(line_no, None, "unknown section [%s]" % name)
            if name in sections:
                raise ParseError(line_no, None, "duplicate section [%s]" % name)
            sections[name] = []
            current = name
            continue
        if "=" not in line:
            raise ParseError(
                line_no, None, "expected 'key = value' or '[section]'"
            )
        if current is None:
            raise ParseError(
                line_no, None, "key/value pair before any [section]"
            )
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SECTIONS[current]:
            raise ParseError(
                line_no, key, "unknown key in section [%s]" % current
            )
        if (current, key) not in _REPEATABLE:
            if (current, key) in seen_once:
                raise ParseError(
                    line_no, key, "duplicate key in section [%s]" % current
                )
            seen_once.add((current, key))
        sections[current].append((key, value, line_no))
    return sections


def _section_map(entries: list[tuple[str, str, int]]) -> dict[str, str]:
    return {key: value for key, value, _ in entries}


def _build_lie(entries: list[tuple[str, str, int]]) -> LieJob:
    single = _section_map(entries)
    if "dim" not in single:
        raise ValidationError("dim", "missing required key in [lie]")
    dim = _exact_int("dim", single["dim"])
    if dim < 0:
        raise ValidationError("dim", "dimension must be nonnegative")
    brackets: list[tuple[int, int, int, Fraction]] = []
    ideal: list[tuple[Fraction, ...]] = []
    for key, value, line_no in entries:
        if key == "bracket":
            tokens = value.split()
            if len(tokens) != 4:
                raise ParseError(
                    line_no, key, "expected 'bracket = i j k value'"
                )
            i = _exact_int(key, tokens[0])
            j = _exact_int(key, tokens[1])
            k = _exact_int(key, tokens[2])
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise ValidationError(
                        key, "index %d out of range for dim %d" % (idx, dim)
                    )
            v = _exact_fraction(key, tokens[3])
            if i == j and v != 0:
                raise ValidationError(
                    key,
                    "antisymmetry forces [e_%d, e_%d] = 0, got %s" % (i, i, v),
                )
            brackets.append((i, j, k, v))
        elif key == "ideal":
            tokens = [t.strip() for t in value.split(",")]
            if len(tokens) != dim:
                raise ValidationError(
                    key,
                    "ideal vector has %d entries, expected dim = %d"
                    % (len(tokens), dim),
                )
            ideal.append(tuple(_exact_fraction(key, t) for t in tokens))
    pairs: dict[tuple[int, int, int], Fraction] = {}
    for i, j, k, v in brackets:
        for key2, val2 in (((i, j, k), v), ((j, i, k), -v)):
            if key2 in pairs and pairs[key2] != val2:
                raise ValidationError(
                    "bracket",
                    "conflicting values for [e_%d, e_%d] -> e_%d"
                    % key2,
                )
            pairs[key2] = val2
    return LieJob(dim, tuple(brackets), tuple(ideal) if ideal else None)


def _build_torus(entries: list[tuple[str, str, int]]) -> TorusSpec:
    single = _section_map(entries)
    if "n" not in single:
        raise ValidationError("n", "missing required key in [torus]")
    n = _exact_int("n", single["n"])
    if n < 1:
        raise ValidationError("n", "torus dimension must be at least 1")
    dirs: list[tuple[ExtScalar, ...]] = []
    for key, value, _line in entries:
        if key != "foliation":
            continue
        tokens = [t.strip() for t in value.split(",")]
        if len(tokens) != n:
            raise ValidationError(
                key,
                "direction vector has %d entries, expected n = %d"
                % (len(tokens), n),
            )
        try:
            dirs.append(tuple(parse_ext_scalar(t) for t in tokens))
        except ValueError as exc:
            raise ValidationError(key, str(exc)) from exc
    invariance: set[int] = set()
    if "invariance" in single:
        for token in single["invariance"].split(","):
            j = _exact_int("invariance", token.strip())
            if not 0 <= j < n:
                raise ValidationError(
                    "invariance",
                    "coordinate %d out of range for n = %d" % (j, n),
                )
            invariance.add(j)
    truncation = 3
    if "truncation" in single:
        truncation = _exact_int("truncation", single["truncation"])
        if truncation < 0:
            raise ValidationError("truncation", "must be nonnegative")
    try:
        return TorusSpec(
            n=n,
            foliation_dirs=tuple(dirs),
            invariance_coords=frozenset(invariance),
            truncation=truncation,
        )
    except ValueError as exc:
        raise ValidationError("torus", str(exc)) from exc


def _build_witness(entries: list[tuple[str, str, int]]) -> WitnessJob:
    single = _section_map(entries)
    for required in ("k_min", "k_max"):
        if required not in single:
            raise ValidationError(
                required, "missing required key in [witness]"
            )
    k_min = _exact_int("k_min", single["k_min"])
    k_max = _exact_int("k_max", single["k_max"])
    if k_min < 1:
        raise ValidationError("k_min", "levels start at 1")
    if k_max <= k_min:
        raise ValidationError(
            "k_max",
            "need at least two levels (k_max > k_min) to witness the "
            "obstruction",
        )
    order = 4
    if "max_derivative_order" in single:
        order = _exact_int(
            "max_derivative_order", single["max_derivative_order"]
        )
        if order < 0:
            raise ValidationError(
                "max_derivative_order", "must be nonnegative"
            )
    samples = 10001
    if "samples_per_interval" in single:
        samples = _exact_int(
            "samples_per_interval", single["samples_per_interval"]
        )
        if samples < 3:
            raise ValidationError(
                "samples_per_interval", "need at least 3 samples"
            )
    return WitnessJob(k_min, k_max, order, samples)


def _build_output(entries: list[tuple[str, str, int]]) -> OutputConfig:
    single = _section_map(entries)
    fmt = single.get("format", "table")
    if fmt not in _FORMATS:
        raise ValidationError(
            "format", "unknown format %r; expected one of %s"
            % (fmt, ", ".join(_FORMATS))
        )
    return OutputConfig(fmt, single.get("path"))


def parse_config(text: str) -> JobConfig:
    """Parse a job file, raising ParseError or ValidationError."""
    sections = _collect_lines(text)
    modes = [name for name in _MODE_SECTIONS if name in sections]
    if len(modes) != 1:
        raise ValidationError(
            "section",
            "expected exactly one of [lie], [torus], [witness]; found %d"
            % len(modes),
        )
    mode = modes[0]
    output = _build_output(sections.get("output", []))
    if mode == "lie":
        return JobConfig(mode, lie=_build_lie(sections["lie"]), output=output)
    if mode == "torus":
        return JobConfig(
            mode, torus=_build_torus(sections["torus"]), output=output
        )
    return JobConfig(
        mode, witness=_build_witness(sections["witness"]), output=output
    )

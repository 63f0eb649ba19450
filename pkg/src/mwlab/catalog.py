"""Line-oriented file formats for matroids, graphs, sweep configs and reports.

Matroid file::

    MATROID 1
    n 4
    r 2
    bases 6
    0 1
    ...

Graph file::

    GRAPH 1
    vertices 3
    0 1
    1 2

Reports are ``key value`` lines sorted by key.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, TextIO, Union

import mpmath

from . import __version__
from .corpus import FamilySpec
from .errors import (
    BadEndpoint,
    ConfigError,
    CountMismatch,
    ExchangeViolation,
    FileSyntaxError,
    MatroidError,
    SinkError,
    ValidationError,
)
from .matroid import Matroid, elements, from_bases, graphic


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _keyed_int(line: str, key: str, lineno: int) -> int:
    parts = line.split(" ")
    if len(parts) != 2 or parts[0] != key or not parts[1].isdigit():
        raise FileSyntaxError(f"expected '{key} <int>', got {line!r}", lineno)
    return int(parts[1])


def _index_row(line: str, lineno: int) -> list[int]:
    if line == "":
        return []
    parts = line.split(" ")
    if not all(p.isdigit() for p in parts):
        raise FileSyntaxError(f"expected space-separated indices, got {line!r}", lineno)
    return [int(p) for p in parts]


def parse_matroid(text: str) -> Matroid:
    lines = _lines(text)
    if len(lines) < 4 or lines[0] != "MATROID 1":
        raise FileSyntaxError("expected header 'MATROID 1' followed by n, r and bases lines", 1)
    n = _keyed_int(lines[1], "n", 2)
    r = _keyed_int(lines[2], "r", 3)
    count = _keyed_int(lines[3], "bases", 4)
    rows = lines[4:]
    if len(rows) != count:
        raise CountMismatch(f"declared {count} bases, found {len(rows)}")
    bases = []
    for k, line in enumerate(rows, start=5):
        idx = _index_row(line, k)
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise FileSyntaxError("indices must be strictly increasing", k)
        if idx and idx[-1] >= n:
            raise FileSyntaxError(f"element {idx[-1]} outside 0..{n - 1}", k)
        if len(idx) != r:
            raise CountMismatch(f"line {k}: basis has {len(idx)} elements, declared r={r}")
        bases.append(idx)
    if len({tuple(b) for b in bases}) != len(bases):
        raise ValidationError("duplicate basis lines")
    try:
        return from_bases(n, bases, provenance="file")
    except ExchangeViolation as exc:
        raise ValidationError(str(exc)) from exc
    except MatroidError as exc:
        raise ValidationError(str(exc)) from exc


def write_matroid(M: Matroid) -> str:
    out = ["MATROID 1", f"n {M.n}", f"r {M.r}", f"bases {len(M.bases)}"]
    out.extend(" ".join(map(str, elements(b))) for b in M.bases)
    return "\n".join(out) + "\n"


def read_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    lines = _lines(text)
    if len(lines) < 2 or lines[0] != "GRAPH 1":
        raise FileSyntaxError("expected header 'GRAPH 1' followed by a vertices line", 1)
    v = _keyed_int(lines[1], "vertices", 2)
    edges = []
    for k, line in enumerate(lines[2:], start=3):
        idx = _index_row(line, k)
        if len(idx) != 2:
            raise FileSyntaxError(f"expected 'u v', got {line!r}", k)
        if max(idx) >= v:
            raise BadEndpoint(f"line {k}: endpoint {max(idx)} outside 0..{v - 1}")
        edges.append((idx[0], idx[1]))
    return v, edges


def parse_graph(text: str) -> Matroid:
    return graphic(*read_graph(text))


def write_graph(vertices: int, edges) -> str:
    out = ["GRAPH 1", f"vertices {vertices}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def parse_any(text: str) -> Matroid:
    head = text.split("\n", 1)[0]
    if head == "GRAPH 1":
        return parse_graph(text)
    if head == "MATROID 1":
        return parse_matroid(text)
    raise FileSyntaxError(f"unknown header {head!r}", 1)


def parse_family_spec(text: str, base_dir: Union[str, Path] = ".") -> FamilySpec:
    """JSON config: ``{"families": [...], "caps": {"max_n": 24, "max_bases": 200000}}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("families"), list):
        raise ConfigError("config needs a 'families' list")
    caps = data.get("caps", {})
    if not isinstance(caps, dict) or set(caps) - {"max_n", "max_bases"}:
        raise ConfigError("caps may only set max_n and max_bases")
    for clause in data["families"]:
        if not isinstance(clause, dict) or "kind" not in clause:
            raise ConfigError("every family clause must be an object with a 'kind'")
    spec = FamilySpec(data["families"], base_dir=Path(base_dir))
    if "max_n" in caps:
        spec.max_n = int(caps["max_n"])
    if "max_bases" in caps:
        spec.max_bases = int(caps["max_bases"])
    return spec


def family_spec_json(spec: FamilySpec) -> str:
    caps = {"max_bases": spec.max_bases}
    if spec.max_n is not None:
        caps["max_n"] = spec.max_n
    return json.dumps({"caps": caps, "families": spec.clauses}, sort_keys=True, indent=2) + "\n"


def config_digest(config: Any) -> str:
    """Short sha256 of the canonical JSON form of ``config``."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def format_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None or v == "":
        return "-"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 30, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    if isinstance(v, float):
        return repr(v)
    return str(v).replace("\n", " ")


_DERIVED = ("overall", "steps_ok", "conjecture_violated")


def flatten(obj: Any, prefix: str = "") -> dict[str, Any]:
    """Dotted-key view of nested dataclasses, named tuples, dicts and lists.

    A list contributes its length under its own key and its members under
    zero-padded indices, so key-sorted output keeps list order.
    """
    out: dict[str, Any] = {}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        items = [(f.name, getattr(obj, f.name)) for f in dataclasses.fields(obj)]
        items += [(name, getattr(obj, name)) for name in _DERIVED if hasattr(type(obj), name)]
    elif isinstance(obj, tuple) and hasattr(obj, "_asdict"):
        items = list(obj._asdict().items())
    elif isinstance(obj, dict):
        items = list(obj.items())
    elif isinstance(obj, (list, tuple)):
        width = len(str(max(len(obj) - 1, 0)))
        items = [(str(k).zfill(width), v) for k, v in enumerate(obj)]
        out[prefix] = len(obj)
    else:
        return {prefix: obj}
    for key, value in items:
        out.update(flatten(value, f"{prefix}.{key}" if prefix else str(key)))
    return out


def render_report(fields: dict[str, Any], digest: str) -> str:
    lines = dict(fields)
    lines["artifact_version"] = __version__
    lines["config_digest"] = digest
    return "".join(f"{k} {format_value(lines[k])}\n" for k in sorted(lines))


def write_report(report: Any, sink: Optional[Union[str, Path, TextIO]] = None,
                 digest: str = "", extra: Optional[dict] = None) -> str:
    """Render ``report`` as sorted ``key value`` lines, optionally writing to ``sink``."""
    fields = flatten(report)
    if extra:
        fields.update(extra)
    text = render_report(fields, digest)
    if sink is not None:
        try:
            if isinstance(sink, (str, Path)):
                Path(sink).write_text(text)
            else:
                sink.write(text)
        except OSError as exc:
            raise SinkError(f"cannot write report: {exc}") from exc
    return text

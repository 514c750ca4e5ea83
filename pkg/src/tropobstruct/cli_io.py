"""Documents, reports and the command-line interface.

Curve documents use the layout of :func:`validate_curve` (see
``curve_model``). Constraint documents hold ``{"constraints": [{"point":
[...], "span": [[...], ...]}, ...]}`` aligned with the curve's markings.
Path documents for ``kuranishi`` hold ``{"paths": [{"coefficients":
[[k, l, m], ...], "weights": [...], "lengths": [...], "direction": [...],
"example1": [a, b] | null, "segment": int | null}]}``. A count manifest
is ``{"curves": [file, ...]}`` with paths relative to the manifest.

Exit codes: 0 success, 1 domain rejection, 2 usage or parse error.
"""

import argparse
import json
import os
import re
import sys
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .curve_model import (
    TropicalCurve,
    assumption_profile,
    bouquet_decomposition,
    degree_map,
    genus,
    validate_curve,
    weights_summary,
)
from .enumeration_index import (
    AffineConstraint,
    ConstraintSet,
    constraint_set,
    delta_factor,
    match_constraints,
    multiplicity_report,
    tropical_count,
)
from .errors import DomainError, ParseError, TropicError
from .kuranishi_leading import PreLogPathConfig, leading_contribution, leading_form_system, pair_with_H
from .moduli_space import superabundance_report
from .obstruction_space import dual_obstruction_basis, support_of
from .well_spacedness import smoothability_verdict

SCHEMA_VERSION = "1.0"
RATIONAL = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")
COMMANDS = ("validate", "analyze", "obstruction", "wellspaced", "kuranishi", "multiplicity", "count")


# ---------------------------------------------------------------------------
# parsing


def _read(source) -> Tuple[str, str]:
    """Text and a display name from a path or a text stream."""
    if hasattr(source, "read"):
        return source.read(), getattr(source, "name", "<stream>")
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read(), str(source)
    except OSError as err:
        raise ParseError(f"cannot read {source}: {err.strerror}", line=None, path=str(source))


def _line_of(text: str, token: str) -> Optional[int]:
    pos = text.find(token)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def _parse_json(text: str, name: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{name}: {err.msg}", line=err.lineno, column=err.colno)


def parse_rational(x, text: str = "", where: str = "") -> Fraction:
    """An exact rational from an integer or a ``"p/q"`` string."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str) and RATIONAL.match(x):
        return Fraction(x)
    line = _line_of(text, json.dumps(x)) if text else None
    raise ParseError(f"{where}: malformed rational {x!r}", line=line)


def _parse_int(x, text, where):
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    line = _line_of(text, json.dumps(x)) if text else None
    raise ParseError(f"{where}: expected an integer, got {x!r}", line=line)


def _array(x, text, where):
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected an array, got {x!r}", line=_line_of(text, json.dumps(x)) if text else None)
    return x


def _require(obj, key, kind, text, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}", line=None)
    val = obj[key]
    if not isinstance(val, kind):
        raise ParseError(f"{where}: field {key!r} has the wrong type", line=_line_of(text, f'"{key}"'))
    return val


def parse_curve_document(text: str, name: str = "<curve>") -> dict:
    """Syntax checks for a curve document; returns the raw dict.

    Raises:
        ParseError: invalid JSON, missing fields or malformed rationals.
    """
    doc = _parse_json(text, name)
    if not isinstance(doc, dict):
        raise ParseError(f"{name}: top level must be an object", line=1)
    _require(doc, "ambient_rank", int, text, name)
    for k, v in enumerate(_require(doc, "vertices", list, text, name)):
        pos = _require(v, "position", list, text, f"{name}: vertex {k}")
        v["position"] = [str(parse_rational(x, text, f"{name}: vertex {v.get('id')}")) for x in pos]
    for k, e in enumerate(_require(doc, "edges", list, text, name)):
        if not isinstance(e, dict):
            raise ParseError(f"{name}: edge {k} must be an object", line=None)
        if "direction" in e:
            d = _require(e, "direction", list, text, f"{name}: edge {e.get('id')}")
            e["direction"] = [_parse_int(x, text, f"{name}: edge {e.get('id')}") for x in d]
        if "weight" in e:
            e["weight"] = _parse_int(e["weight"], text, f"{name}: edge {e.get('id')}")
    doc.setdefault("markings", [])
    if not isinstance(doc["markings"], list):
        raise ParseError(f"{name}: markings must be a list", line=_line_of(text, '"markings"'))
    return doc


def load_curve(source) -> TropicalCurve:
    """Parse and validate a curve document from a path or stream.

    Raises:
        ParseError: syntax problems, with the line when it can be located.
        DomainError: the curve is rejected by validation.
    """
    text, name = _read(source)
    return validate_curve(parse_curve_document(text, name))


def load_constraints(source, curve: TropicalCurve = None, check_total: bool = True) -> ConstraintSet:
    text, name = _read(source)
    doc = _parse_json(text, name)
    items = _require(doc, "constraints", list, text, name)
    out = []
    for k, c in enumerate(items):
        where = f"{name}: constraint {k}"
        point = [parse_rational(x, text, where) for x in _require(c, "point", list, text, where)]
        span = _require(c, "span", list, text, where)
        dirs = []
        for d in span:
            dirs.append(tuple(_parse_int(x, text, where) for x in _array(d, text, where)))
        out.append(AffineConstraint(tuple(point), tuple(dirs)))
    if curve is None:
        return ConstraintSet(tuple(out))
    return constraint_set(curve, out, check_total)


def load_prelog(source) -> List[PreLogPathConfig]:
    text, name = _read(source)
    doc = _parse_json(text, name)
    out = []
    for k, p in enumerate(_require(doc, "paths", list, text, name)):
        where = f"{name}: path {k}"
        coeffs = [
            tuple(parse_rational(x, text, where) for x in _array(t, text, where))
            for t in _require(p, "coefficients", list, text, where)
        ]
        weights = [_parse_int(x, text, where) for x in _require(p, "weights", list, text, where)]
        lengths = [parse_rational(x, text, where) for x in _require(p, "lengths", list, text, where)]
        ex1 = p.get("example1")
        if ex1 is not None:
            ex1 = tuple(parse_rational(x, text, where) for x in _array(ex1, text, where))
        direction = [_parse_int(x, text, where) for x in _array(p.get("direction", []), text, where)]
        seg = p.get("segment")
        if seg is not None:
            seg = _parse_int(seg, text, where)
        out.append(PreLogPathConfig(tuple(coeffs), tuple(weights), tuple(lengths), ex1, tuple(direction), seg))
    return out


def constraints_to_document(cs: ConstraintSet) -> dict:
    return {
        "constraints": [
            {"point": [_fmt(x) for x in a.point], "span": [list(d) for d in a.directions]}
            for a in cs.constraints
        ]
    }


# ---------------------------------------------------------------------------
# reports


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _plain(obj):
    """JSON-ready copy: rationals become strings, tuples lists, enums values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return _fmt(obj)
    if isinstance(obj, float):
        if obj == float("inf"):
            return "inf"
        return repr(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_report(report: dict, fmt: str = "json") -> bytes:
    """Deterministic serialization with sorted keys and ``schema_version``."""
    if fmt != "json":
        raise ValueError(f"unsupported format {fmt!r}")
    body = dict(_plain(report or {}))
    body["schema_version"] = SCHEMA_VERSION
    return (json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def validation_report(curve: TropicalCurve) -> dict:
    prof = assumption_profile(curve)
    dec = bouquet_decomposition(curve)
    return {
        "valid": True,
        "ambient_rank": curve.ambient_rank,
        "genus": genus(curve),
        "vertices": len(curve.vertices),
        "bounded_edges": len(curve.bounded_edges),
        "unbounded_edges": len(curve.unbounded_edges),
        "degree": [{"vector": list(k), "count": c} for k, c in degree_map(curve).items()],
        "bouquets": [{"edges": list(b.edges), "betti": b.betti} for b in dec.bouquets],
        "assumptions": prof.to_dict(),
        "weights": weights_summary(curve),
    }


def obstruction_report(curve: TropicalCurve) -> dict:
    H = dual_obstruction_basis(curve)
    segs = H.decomposition.segments
    return {
        "dimension": H.dimension,
        "segments": [
            {"index": s.index, "edges": list(s.edges), "span": [list(v) for v in s.span],
             "perp": [list(v) for v in s.perp]}
            for s in segs
        ],
        "basis": [[list(u) for u in vec] for vec in H.vectors],
        "global_covectors": None if H.global_covectors is None else [list(u) for u in H.global_covectors],
        "supports": [list(support_of(H, vec, curve).segments) for vec in H.vectors],
    }


def analysis_report(curve: TropicalCurve, constraints: ConstraintSet = None) -> dict:
    rep = validation_report(curve)
    prof = assumption_profile(curve)
    rep["dimensions"] = superabundance_report(curve).to_dict() if prof.satisfies_A else None
    rep["obstruction"] = obstruction_report(curve) if prof.satisfies_A else None
    rep["smoothability"] = smoothability_verdict(curve).to_dict()
    if constraints is not None:
        rep["multiplicity"] = multiplicity_section(curve, constraints)
    return rep


def multiplicity_section(curve: TropicalCurve, constraints: ConstraintSet) -> dict:
    match = match_constraints(curve, constraints)
    out = {"matched": match.matched, "points": [None if p is None else list(p) for p in match.points]}
    if match.matched:
        out["report"] = multiplicity_report(curve, constraints).to_dict()
    else:
        out["deltas"] = None
    return out


def kuranishi_report(configs: Sequence[PreLogPathConfig], curve: TropicalCurve = None) -> dict:
    contribs = [leading_contribution(c) for c in configs]
    out = {"contributions": [c.to_dict() for c in contribs]}
    if curve is not None:
        H = dual_obstruction_basis(curve)
        out["pairing"] = pair_with_H(contribs, H).to_dict()
        out["forms"] = leading_form_system(curve).to_dict()
    return out


# ---------------------------------------------------------------------------
# commands


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"usage: {message}", line=None)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tropobstruct", description="Obstructions and multiplicities of tropical curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        if name == "count":
            s.add_argument("--manifest", required=True, help="JSON list of curve documents")
        else:
            s.add_argument("--curve", required=name != "kuranishi")
        s.add_argument("--constraints", required=name in ("multiplicity", "count"))
        s.add_argument("--prelog", required=name == "kuranishi")
        s.add_argument("--output", default=None)
        s.add_argument("--format", default="json", choices=["json"])
    return p


def _seed_check():
    raw = os.environ.get("TROPIC_SEED")
    if raw not in (None, "") and not re.match(r"^-?[0-9]+$", raw):
        raise ParseError("TROPIC_SEED must be an integer", line=None, value=raw)


def _dispatch(args) -> dict:
    cmd = args.command
    if cmd == "count":
        text, name = _read(args.manifest)
        doc = _parse_json(text, name)
        files = _require(doc, "curves", list, text, name)
        base = os.path.dirname(os.path.abspath(args.manifest))
        curves = [load_curve(os.path.join(base, f)) for f in files]
        cs = load_constraints(args.constraints)
        for c in curves:
            constraint_set(c, cs.constraints)
        return {"command": cmd, "count": tropical_count(curves, cs).to_dict()}
    curve = load_curve(args.curve) if args.curve else None
    if cmd == "validate":
        return {"command": cmd, "validation": validation_report(curve)}
    if cmd == "analyze":
        cs = load_constraints(args.constraints, curve) if args.constraints else None
        return {"command": cmd, "analysis": analysis_report(curve, cs)}
    if cmd == "obstruction":
        return {"command": cmd, "obstruction": obstruction_report(curve)}
    if cmd == "wellspaced":
        return {"command": cmd, "smoothability": smoothability_verdict(curve).to_dict()}
    if cmd == "kuranishi":
        return {"command": cmd, "kuranishi": kuranishi_report(load_prelog(args.prelog), curve)}
    cs = load_constraints(args.constraints, curve)
    section = multiplicity_section(curve, cs)
    section["deltas_by_marking"] = (
        {m: delta_factor(curve, i, cs) for i, m in enumerate(curve.markings)} if section["matched"] else None
    )
    return {"command": cmd, "multiplicity": section}


def run_command(argv: Sequence[str]) -> Tuple[int, dict]:
    """Run one command; returns the exit code and the report.

    Domain errors give code 1 and parse or usage errors code 2; in both
    cases the report carries an ``error`` object. The report is ``None``
    after ``--help``.
    """
    try:
        args = build_parser().parse_args(list(argv))
        _seed_check()
        return 0, _dispatch(args)
    except SystemExit as exc:
        # --help prints and exits through argparse
        return int(exc.code or 0), None
    except ParseError as err:
        return 2, {"error": err.to_dict()}
    except DomainError as err:
        return 1, {"error": err.to_dict()}
    except TropicError as err:  # pragma: no cover - every error is one of the two
        return 1, {"error": err.to_dict()}


def _output_path(argv):
    for i, a in enumerate(argv):
        if a == "--output" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--output="):
            return a.split("=", 1)[1]
    return None


def main(argv: Sequence[str] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report = run_command(argv)
    if report is None:
        return code
    data = emit_report(report)
    if code != 0:
        err = report["error"]
        loc = f" (line {err['line']})" if err.get("line") else ""
        print(f"error: {err['error']}: {err['message']}{loc}", file=sys.stderr)
    out = _output_path(argv)
    if out and code == 0:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code

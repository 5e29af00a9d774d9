"""Reader for the line-oriented foliation input format.

See docs/input_format.md for the grammar.  Example::

    [vars]
    x, y

    [generator e]
    0, x

    [point origin]
    0, 0
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DimensionMismatch, DuplicateName, ParseError
from .fixtures import FoliationSpec
from .poly import PolyRing, VectorField

_SECTION = re.compile(r"^\[\s*([A-Za-z_]+)(?:\s+([^\]\s]+))?\s*\]\s*$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")
OPTION_KEYS = {"max_length", "max_degree", "degree_bound", "samples", "seed"}


def _split_fields(text: str, start_col: int):
    """Split on commas, yielding (stripped field, 1-based column)."""
    pos = 0
    for part in text.split(","):
        lead = len(part) - len(part.lstrip())
        yield part.strip(), start_col + pos + lead
        pos += len(part) + 1


def parse_spec(text: str, name: str = "input") -> FoliationSpec:
    ring = None
    gens, gnames, points, options = [], [], [], {}
    section = None
    current = None  # (name, list of (text, line, col)) for a generator

    def close_generator():
        if current is None:
            return
        gname, items, hline = current
        if len(items) != ring.nvars:
            raise DimensionMismatch(
                f"line {hline}: generator {gname!r} has {len(items)} components, expected {ring.nvars}"
            )
        comps = [ring.parse(t, line=ln, col=c) for t, ln, c in items]
        gens.append(VectorField(ring, comps))
        gnames.append(gname)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _SECTION.match(body.strip())
        if m:
            close_generator()
            current = None
            kind, arg = m.group(1), m.group(2)
            col = raw.index("[") + 1
            if kind == "vars":
                if ring is not None:
                    raise DuplicateName("second [vars] section", lineno, col)
                section = "vars"
            elif kind in ("generator", "point"):
                if ring is None:
                    raise ParseError(f"[{kind}] before [vars]", lineno, col, ["[vars]"])
                if not arg or not _NAME.match(arg):
                    raise ParseError(f"[{kind}] needs a name", lineno, col + len(kind) + 2, ["identifier"])
                if kind == "generator":
                    if arg in gnames:
                        raise DuplicateName(f"generator {arg!r} defined twice", lineno, col)
                    current = (arg, [], lineno)
                section = kind
                section_arg = arg
            elif kind == "options":
                section = "options"
            else:
                raise ParseError(f"unknown section [{kind}]", lineno, col, ["vars", "generator", "point", "options"])
            continue
        if section is None:
            raise ParseError("content outside any section", lineno, 1, ["[vars]"])
        indent = len(body) - len(body.lstrip())
        if section == "vars":
            if ring is not None:
                raise ParseError("variables must be listed on one line", lineno, indent + 1)
            names = []
            for tok, c in _split_fields(body.replace("\t", " "), 1):
                for word in tok.split():
                    if not _NAME.match(word):
                        raise ParseError(f"bad variable name {word!r}", lineno, c, ["identifier"])
                    if word in names:
                        raise DuplicateName(f"variable {word!r} declared twice", lineno, c)
                    names.append(word)
            if not names:
                raise ParseError("no variables declared", lineno, 1, ["identifier"])
            ring = PolyRing(names)
        elif section == "generator":
            fields = list(_split_fields(body.rstrip(), 1))
            if len(fields) > 1 and not fields[-1][0]:
                fields.pop()  # a trailing comma continues on the next line
            for tok, c in fields:
                if not tok:
                    raise ParseError("empty component", lineno, c, ["polynomial"])
                current[1].append((tok, lineno, c))
        elif section == "point":
            coords = []
            for tok, c in _split_fields(body, 1):
                if not _RATIONAL.match(tok.replace(" ", "")):
                    raise ParseError(f"bad coordinate {tok!r}", lineno, c, ["rational number"])
                coords.append(Fraction(tok.replace(" ", "")))
            if len(coords) != ring.nvars:
                raise DimensionMismatch(f"line {lineno}: point has {len(coords)} coordinates, expected {ring.nvars}")
            points.append((section_arg, tuple(coords)))
        elif section == "options":
            if "=" not in body:
                raise ParseError("expected key = value", lineno, indent + 1, ["key = value"])
            key, value = (s.strip() for s in body.split("=", 1))
            if key not in OPTION_KEYS:
                raise ParseError(f"unknown option {key!r}", lineno, indent + 1, sorted(OPTION_KEYS))
            if not re.fullmatch(r"\d+", value):
                raise ParseError(f"option {key} needs a non-negative integer", lineno, body.index("=") + 2)
            options[key] = int(value)
    close_generator()
    if ring is None:
        raise ParseError("missing [vars] section", 1, 1, ["[vars]"])
    return FoliationSpec(name, ring, gens, gnames, points, options)


parse_foliation = parse_spec


def format_spec(spec: FoliationSpec) -> str:
    """Render a specification back to the input format."""
    lines = ["[vars]", ", ".join(spec.ring.names), ""]
    for n, g in zip(spec.names, spec.generators):
        lines.append(f"[generator {n}]")
        lines.append(", ".join(str(c) for c in g))
        lines.append("")
    for tag, pt in spec.points:
        lines.append(f"[point {tag}]")
        lines.append(", ".join(str(v) for v in pt))
        lines.append("")
    if spec.options:
        lines.append("[options]")
        for k in sorted(spec.options):
            lines.append(f"{k} = {spec.options[k]}")
    return "\n".join(lines).rstrip() + "\n"

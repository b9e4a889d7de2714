"""On-disk formats: hypergroup files (.hgf, JSON), Cayley tables (text), and
function files (JSON).

Rationals travel as strings ("3/4", "2") so exact values survive a
round-trip; plain decimals are accepted and, in exact mode, are parsed as
exact decimal fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .builders import CayleyTable
from .core import FiniteHypergroup, HFunction, validate
from .errors import StructuralError


def _parse_scalar(v, exact: bool):
    try:
        if isinstance(v, str):
            f = Fraction(v)
        elif isinstance(v, (int, Fraction)):
            f = Fraction(v)
        elif isinstance(v, float):
            return Fraction(v).limit_denominator(10**12) if exact else v
        else:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        raise StructuralError(f"cannot parse coefficient {v!r}") from None
    return f if exact else float(f)


def format_scalar(v, precision: int = 12) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return format(float(v), f".{precision}g")


@dataclass(frozen=True)
class RawHypergroup:
    """Parsed but not yet validated hypergroup data."""

    name: str
    elements: tuple[str, ...]
    identity: int
    involution: tuple[int, ...]
    constants: dict            # {(x, y, z): coeff}
    exact: bool

    def validate(self):
        return validate(self.constants, self.identity, self.involution,
                        mode="exact" if self.exact else "float")

    def to_hypergroup(self) -> FiniteHypergroup:
        return FiniteHypergroup(self.elements, self.identity, self.involution,
                                self.constants,
                                mode="exact" if self.exact else "float")


def read_hypergroup_file(path, *, mode: str = "exact") -> RawHypergroup:
    """Parse a .hgf JSON file.  ``mode`` is "exact" or "float"."""
    if mode not in ("exact", "float"):
        raise StructuralError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    text = Path(path).read_text()
    try:
        doc = json.loads(text, parse_float=Fraction) if exact else json.loads(text)
    except json.JSONDecodeError as err:
        raise StructuralError(f"{path}: not valid JSON ({err})") from None
    if not isinstance(doc, dict):
        raise StructuralError(f"{path}: expected a JSON object")
    try:
        elements = tuple(str(s) for s in doc["elements"])
        identity_label = str(doc["identity"])
        involution_map = {str(k): str(v) for k, v in doc["involution"].items()}
        entries = doc["constants"]
    except (KeyError, TypeError, AttributeError) as err:
        raise StructuralError(f"{path}: missing or malformed field ({err})") from None
    if len(set(elements)) != len(elements):
        raise StructuralError(f"{path}: duplicate element labels")
    index = {s: i for i, s in enumerate(elements)}
    if identity_label not in index:
        raise StructuralError(f"{path}: identity {identity_label!r} not in elements")
    involution = []
    for s in elements:
        target = involution_map.get(s)
        if target is None or target not in index:
            raise StructuralError(f"{path}: involution missing or unknown for {s!r}")
        involution.append(index[target])
    constants = {}
    for rec in entries:
        try:
            x, y, z = index[str(rec["x"])], index[str(rec["y"])], index[str(rec["z"])]
            c = rec["c"]
        except (KeyError, TypeError) as err:
            raise StructuralError(f"{path}: malformed constants record ({err})") from None
        constants[(x, y, z)] = _parse_scalar(c, exact)
    return RawHypergroup(name=str(doc.get("name", Path(path).stem)),
                         elements=elements, identity=index[identity_label],
                         involution=tuple(involution), constants=constants,
                         exact=exact)


def write_hypergroup_file(h: FiniteHypergroup, path, *, name: str | None = None,
                          precision: int = 17) -> None:
    """Emit a hypergroup as a .hgf file; exact tensors round-trip losslessly."""
    doc = {
        "name": name or Path(path).stem,
        "elements": list(h.elements),
        "identity": h.elements[h.identity],
        "involution": {h.elements[x]: h.elements[h.involution[x]]
                       for x in range(h.n)},
        "constants": [
            {"x": h.elements[x], "y": h.elements[y], "z": h.elements[z],
             "c": str(v) if h.exact else repr(float(v))}
            for x in range(h.n) for y in range(h.n)
            for z, v in h.product(x, y)
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def read_cayley_file(path) -> CayleyTable:
    """Parse a Cayley table: first line n, then n rows of n 0-based indices."""
    lines = [ln for ln in Path(path).read_text().splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise StructuralError(f"{path}: empty Cayley file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise StructuralError(f"{path}: first line must be the order n") from None
    if len(lines) != n + 1:
        raise StructuralError(f"{path}: expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n:
            raise StructuralError(f"{path}: row has {len(parts)} entries, expected {n}")
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise StructuralError(f"{path}: non-integer table entry") from None
    table = np.array(rows, dtype=int)
    # identity = the row equal to 0..n-1
    ident = np.arange(n)
    hits = np.where((table == ident[None, :]).all(axis=1))[0]
    if len(hits) != 1:
        raise StructuralError(f"{path}: table has no unique identity row")
    return CayleyTable(n, table, int(hits[0]))


def read_function_file(path, h: FiniteHypergroup, *, exact: bool = False) -> HFunction:
    """Parse a function file: {"values": [...]} aligned with the element
    order, or {"values": {label: value}}.  Entries are numbers, rational
    strings, or [re, im] pairs."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise StructuralError(f"{path}: not valid JSON ({err})") from None
    if not isinstance(doc, dict) or "values" not in doc:
        raise StructuralError(f"{path}: expected an object with a 'values' field")
    raw = doc["values"]

    def scalar(v):
        if isinstance(v, list):
            if len(v) != 2:
                raise StructuralError(f"{path}: complex entries are [re, im] pairs")
            return complex(float(scalar(v[0]).real), float(scalar(v[1]).real))
        return complex(float(_parse_scalar(v, False)))

    values = np.zeros(h.n, dtype=complex)
    if isinstance(raw, dict):
        index = {s: i for i, s in enumerate(h.elements)}
        for label, v in raw.items():
            if label not in index:
                raise StructuralError(f"{path}: unknown element label {label!r}")
            values[index[label]] = scalar(v)
    elif isinstance(raw, list):
        if len(raw) != h.n:
            raise StructuralError(
                f"{path}: {len(raw)} values for a hypergroup of order {h.n}")
        for i, v in enumerate(raw):
            values[i] = scalar(v)
    else:
        raise StructuralError(f"{path}: 'values' must be a list or a mapping")
    return HFunction(h, values)


def builtin_path(name: str) -> Path:
    """Path of a bundled data file, e.g. builtin_path('jewett.hgf')."""
    ref = resources.files("hyperkit.data").joinpath(name)
    with resources.as_file(ref) as p:
        return Path(p)

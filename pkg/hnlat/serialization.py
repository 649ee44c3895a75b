# serialization.py
"""Lattice files in, result envelopes out. Exact values travel as strings."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from hnlat.errors import InputError
from hnlat.lattice import ExpDegree, GenSubmodule, HermLattice, Sublattice, degree_of_sub


@dataclass(frozen=True)
class LatticeFile:
    lattice: HermLattice
    name: Optional[str] = None
    subs: Dict[str, GenSubmodule] = field(default_factory=dict)


def parse_rational(text: Any) -> Fraction:
    """Parse "p/q", an integer string, or a JSON integer."""
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InputError(f"Expected a rational string like \"3/4\", got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"Cannot parse {text!r} as a rational number")


def parse_lattice(data: Any) -> LatticeFile:
    """Validate a decoded LatticeFile object."""
    if not isinstance(data, dict):
        raise InputError("Lattice file must hold a JSON object")
    rank = data.get("rank")
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise InputError(f"\"rank\" must be a positive integer, got {rank!r}")
    gram = data.get("gram")
    if not isinstance(gram, list) or len(gram) != rank or any(
            not isinstance(row, list) or len(row) != rank for row in gram):
        raise InputError(f"\"gram\" must be a {rank}x{rank} array of arrays")
    rows = [[parse_rational(x) for x in row] for row in gram]
    name = data.get("name")
    lattice = HermLattice.from_gram(rows, name)

    subs_data = data.get("subs") or {}
    if not isinstance(subs_data, dict):
        raise InputError("\"subs\" must map names to generator matrices")
    subs: Dict[str, GenSubmodule] = {}
    for sub_name, gens in subs_data.items():
        if not isinstance(gens, list) or not gens:
            raise InputError(f"Submodule {sub_name!r} needs a nonempty list of generator rows")
        if any(not isinstance(row, list) for row in gens):
            raise InputError(f"Submodule {sub_name!r} rows must be arrays")
        int_rows = [[_int_entry(sub_name, x) for x in row] for row in gens]
        subs[sub_name] = GenSubmodule(rank, int_rows)
    return LatticeFile(lattice, name, subs)


def _int_entry(sub_name: str, value: Any) -> int:
    x = parse_rational(value)
    if x.denominator != 1:
        raise InputError(f"Submodule {sub_name!r} has non-integer generator entry {value!r}")
    return x.numerator


def load_lattice_file(path: str) -> LatticeFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")
    return parse_lattice(data)


def lattice_to_dict(E: HermLattice) -> Dict[str, Any]:
    data: Dict[str, Any] = {"rank": E.rank, "gram": [[str(x) for x in row] for row in E.gram]}
    if E.name:
        data["name"] = E.name
    return data


def degree_payload(deg: ExpDegree) -> Dict[str, Any]:
    """Exact D plus clearly approximate log values."""
    return {
        "D": str(deg.D),
        "rank": deg.rank,
        "log_value_approx": format(deg.log_value(), ".12g"),
        "slope_approx": format(deg.slope_value(), ".12g"),
    }


def sublattice_payload(E: HermLattice, F: Sublattice) -> Dict[str, Any]:
    return {
        "rank": F.rank,
        "basis": [list(row) for row in F.basis],
        "degree": degree_payload(degree_of_sub(E, F)),
    }


def envelope(command: str, request: Dict[str, Any], result: Any,
             complete: Optional[bool] = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {"command": command, "input": request, "result": result}
    if complete is not None:
        out["complete"] = complete
    return out


def dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)

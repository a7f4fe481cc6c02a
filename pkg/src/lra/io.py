"""JSON formats for algebras, representations, cochains, operators and reports.

Rationals are written as strings ``"p"`` or ``"p/q"``; integers are accepted
on input. Tensors are nested arrays in C order with 0-based indices. The
layouts are documented in ``docs/formats.md``.

Bundles (objects combining several parts, e.g. a twisted Rota-Baxter
operator) may hold each part inline or as a path string, resolved relative
to the directory of the file containing it.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import Cochain, LeibnizAlgebra, Representation
from .deformation import EquivalenceDatum, TruncatedFormalDeformation
from .linalg import format_rational, qarray, qzeros
from .ns import NSLeibnizAlgebra
from .rota_baxter import TRBMorphism, TwistedRBData


class InputError(ValueError):
    """Malformed, missing or inconsistent input data."""


# ---------------------------------------------------------------- primitives


def encode_array(a: np.ndarray) -> Any:
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return format_rational(a.item())
    return [encode_array(sub) for sub in a]


def decode_array(data, shape: tuple[int, ...], what: str) -> np.ndarray:
    try:
        arr = qarray(data) if _nonempty(data) else qzeros(shape)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from exc
    if arr.shape != shape and not (arr.size == 0 and int(np.prod(shape)) == 0):
        raise InputError(f"{what}: expected shape {shape}, got {arr.shape}")
    return arr.reshape(shape)


def _nonempty(data) -> bool:
    while isinstance(data, list):
        if not data:
            return False
        data = data[0]
    return True


def _field(obj: dict, key: str, what: str):
    if not isinstance(obj, dict):
        raise InputError(f"{what}: expected a JSON object")
    if key not in obj:
        raise InputError(f"{what}: missing field {key!r}")
    return obj[key]


def _count(obj: dict, key: str, what: str) -> int:
    v = _field(obj, key, what)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise InputError(f"{what}: {key!r} must be a non-negative integer")
    return v


# -------------------------------------------------------------------- objects


def algebra_to_json(g: LeibnizAlgebra) -> dict:
    return {"dim": g.dim, "bracket": encode_array(g.bracket)}


def algebra_from_json(obj: dict) -> LeibnizAlgebra:
    n = _count(obj, "dim", "algebra")
    return LeibnizAlgebra(decode_array(_field(obj, "bracket", "algebra"), (n, n, n), "algebra bracket"))


def rep_to_json(r: Representation) -> dict:
    return {"dim_v": r.dim_v, "rho_l": encode_array(r.rho_l), "rho_r": encode_array(r.rho_r)}


def rep_from_json(obj: dict, g: LeibnizAlgebra) -> Representation:
    m = _count(obj, "dim_v", "representation")
    shape = (g.dim, m, m)
    rl = decode_array(_field(obj, "rho_l", "representation"), shape, "rho_l")
    rr = decode_array(_field(obj, "rho_r", "representation"), shape, "rho_r")
    return Representation(g, rl, rr)


def cochain_to_json(f: Cochain) -> dict:
    return {"degree": f.degree, "values": encode_array(f.values)}


def cochain_from_json(obj: dict, rep: Representation) -> Cochain:
    deg = _count(obj, "degree", "cochain")
    shape = (rep.dim_g,) * deg + (rep.dim_v,)
    return Cochain(rep, decode_array(_field(obj, "values", "cochain"), shape, "cochain values"))


def bicochain_to_json(h: Cochain) -> dict:
    return {"values": encode_array(h.values)}


def bicochain_from_json(obj: dict, rep: Representation) -> Cochain:
    shape = (rep.dim_g, rep.dim_g, rep.dim_v)
    return Cochain(rep, decode_array(_field(obj, "values", "2-cocycle"), shape, "2-cocycle values"))


def linear_map_to_json(m: np.ndarray) -> dict:
    return {"rows": m.shape[0], "cols": m.shape[1], "matrix": encode_array(m)}


def linear_map_from_json(obj, rows: int | None = None, cols: int | None = None, what: str = "linear map") -> np.ndarray:
    """A ``{"rows", "cols", "matrix"}`` object; a bare nested array is accepted too."""
    if isinstance(obj, list):
        r = len(obj) if rows is None else rows
        c = (len(obj[0]) if obj else 0) if cols is None else cols
        return decode_array(obj, (r, c), what)
    r, c = _count(obj, "rows", what), _count(obj, "cols", what)
    if (rows is not None and r != rows) or (cols is not None and c != cols):
        raise InputError(f"{what}: expected a {rows}x{cols} matrix, got {r}x{c}")
    return decode_array(_field(obj, "matrix", what), (r, c), what)


def vector_from_json(obj, dim: int, what: str = "vector") -> np.ndarray:
    return decode_array(obj, (dim,), what)


def trb_to_json(d: TwistedRBData) -> dict:
    return {
        "algebra": algebra_to_json(d.algebra),
        "rep": rep_to_json(d.rep),
        "cocycle": bicochain_to_json(d.h),
        "k": linear_map_to_json(d.k),
    }


def ns_to_json(a: NSLeibnizAlgebra) -> dict:
    return {"dim": a.dim, "tri": encode_array(a.tri), "tli": encode_array(a.tli), "dia": encode_array(a.dia)}


def ns_from_json(obj: dict) -> NSLeibnizAlgebra:
    n = _count(obj, "dim", "NS-Leibniz algebra")
    parts = [decode_array(_field(obj, key, "NS-Leibniz algebra"), (n, n, n), key) for key in ("tri", "tli", "dia")]
    return NSLeibnizAlgebra(*parts)


def deformation_to_json(tfd: TruncatedFormalDeformation) -> dict:
    return {"base": trb_to_json(tfd.base), "terms": [linear_map_to_json(t) for t in tfd.terms]}


def equivalence_to_json(e: EquivalenceDatum) -> dict:
    return {"x": encode_array(e.x), "phi": [encode_array(p) for p in e.phi], "psi": [encode_array(p) for p in e.psi]}


def equivalence_from_json(obj: dict, d: TwistedRBData) -> EquivalenceDatum:
    x = vector_from_json(_field(obj, "x", "equivalence datum"), d.dim_g, "x")
    phi = [linear_map_from_json(p, d.dim_g, d.dim_g, "phi") for p in obj.get("phi", [])]
    psi = [linear_map_from_json(p, d.dim_v, d.dim_v, "psi") for p in obj.get("psi", [])]
    return EquivalenceDatum(x, tuple(phi), tuple(psi))


# ------------------------------------------------------------ files, bundles


def read_json(source: str | Path) -> tuple[Any, Path]:
    """Parse a file, or stdin for ``-``; also returns the directory for relative references."""
    try:
        if str(source) == "-":
            return json.load(sys.stdin), Path.cwd()
        path = Path(source)
        with path.open() as fh:
            return json.load(fh), path.resolve().parent
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc})") from exc


def unwrap_report(obj):
    """A CLI report carrying a constructed object is accepted wherever that object is."""
    if isinstance(obj, dict) and "command" in obj and "details" in obj and "result" in obj["details"]:
        return obj["details"]["result"]
    return obj


class Bundle:
    """Lazy access to named parts of a JSON bundle, following path references."""

    def __init__(self, obj: dict | None = None, base: Path | None = None):
        self.obj = unwrap_report(obj) if obj is not None else {}
        self.base = base or Path.cwd()
        if not isinstance(self.obj, dict):
            raise InputError("a bundle must be a JSON object")

    @classmethod
    def load(cls, source: str | Path) -> Bundle:
        obj, base = read_json(source)
        return cls(obj, base)

    def has(self, key: str) -> bool:
        return key in self.obj

    def raw(self, key: str):
        if key == "algebra" and "algebra" not in self.obj and "bracket" in self.obj:
            # a bare algebra file stands for a bundle holding only the algebra
            return self.obj
        if key not in self.obj:
            raise InputError(f"bundle has no {key!r} part")
        value = self.obj[key]
        if isinstance(value, str):
            obj, _ = read_json(self.base / value)
            return unwrap_report(obj)
        return value

    def set(self, key: str, value) -> None:
        self.obj[key] = value

    def algebra(self) -> LeibnizAlgebra:
        return guarded(algebra_from_json, self.raw("algebra"))

    def rep(self) -> Representation:
        g = self.algebra()
        return guarded(rep_from_json, self.raw("rep"), g)

    def trb(self) -> TwistedRBData:
        rep = self.rep()
        h = guarded(bicochain_from_json, self.raw("cocycle"), rep)
        k = linear_map_from_json(self.raw("k"), rep.dim_g, rep.dim_v, "K")
        return guarded(TwistedRBData, rep, h, k)


def guarded(fn, *args):
    try:
        return fn(*args)
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def trb_from_json(obj: dict, base: Path | None = None) -> TwistedRBData:
    return Bundle(obj, base).trb()


def deformation_from_json(obj: dict, base: Path | None = None) -> TruncatedFormalDeformation:
    obj = unwrap_report(obj)
    base_obj = _field(obj, "base", "deformation")
    if isinstance(base_obj, str):
        base_obj, sub = read_json((base or Path.cwd()) / base_obj)
        d = trb_from_json(unwrap_report(base_obj), sub)
    else:
        d = trb_from_json(base_obj, base)
    terms = [linear_map_from_json(t, d.dim_g, d.dim_v, "deformation term") for t in _field(obj, "terms", "deformation")]
    return guarded(TruncatedFormalDeformation, d, tuple(terms))


def morphism_from_json(obj: dict, src: TwistedRBData, dst: TwistedRBData) -> TRBMorphism:
    phi = linear_map_from_json(_field(obj, "phi", "morphism"), dst.dim_g, src.dim_g, "phi")
    psi = linear_map_from_json(_field(obj, "psi", "morphism"), dst.dim_v, src.dim_v, "psi")
    return TRBMorphism(phi, psi)


def dumps(obj) -> str:
    """Deterministic serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"

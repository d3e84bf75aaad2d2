"""Instance file format: JSON documents describing tuples or wild surfaces.

Exact scalars are strings like "-3/7" (or coefficient vectors of strings for
cyclotomic entries); floats are rejected, so exactness survives
serialization.  ``parse_instance`` validates the whole document and reports
every schema problem with the JSON path of the offending key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from .engine import FramedPoint
from .linalg import Grading, Matrix
from .scalars import Scalar, euler_phi
from .stokes import Circle, IrregularClass, WildSurface
from .twists import Automorphism, TwistedElement


class InstanceError(Exception):
    """Schema or syntax failure; ``errors`` lists every recorded problem."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class InstanceFile:
    conductor: int
    mode: str                         # "tuple" | "stokes"
    point: Optional[FramedPoint]
    surface: Optional[WildSurface]
    candidate: Optional[dict]         # generator name -> Matrix


class _Reader:
    def __init__(self):
        self.errors = []

    def fail(self, path, message):
        self.errors.append(f"{path}: {message}")

    def scalar(self, data, m, path):
        if isinstance(data, float):
            self.fail(path, "floats are not allowed; write exact rationals as strings")
            return Scalar.zero(m)
        try:
            if isinstance(data, list):
                if len(data) > euler_phi(m):
                    raise ValueError(f"coefficient vector longer than phi({m})")
                return Scalar.from_coeffs(m, [Fraction(str(c)) for c in data])
            return Scalar.rational(Fraction(str(data)), m)
        except (ValueError, ZeroDivisionError) as exc:
            self.fail(path, f"bad scalar: {exc}")
            return Scalar.zero(m)

    def matrix(self, data, m, path, square=None, invertible=False):
        if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
            self.fail(path, "expected a matrix as a list of rows")
            return Matrix.identity(square or 1, m)
        width = len(data[0])
        if any(len(r) != width for r in data):
            self.fail(path, "ragged matrix rows")
            return Matrix.identity(square or 1, m)
        if square is not None and (len(data) != square or width != square):
            self.fail(path, f"expected a square {square}x{square} matrix")
            return Matrix.identity(square, m)
        mat = Matrix.build([[self.scalar(x, m, f"{path}[{i}][{j}]")
                             for j, x in enumerate(row)]
                            for i, row in enumerate(data)], m)
        if invertible and not self.errors and not mat.is_invertible():
            self.fail(path, "matrix declared invertible is singular")
        return mat


def _parse_tuple(reader: _Reader, data, m) -> Optional[FramedPoint]:
    path = "tuple"
    if not isinstance(data, dict):
        reader.fail(path, "expected an object")
        return None
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        reader.fail(f"{path}.n", "expected a positive integer")
        return None
    gradings = []
    raw_gradings = data.get("gradings")
    if raw_gradings is None:
        gradings = [Grading.trivial(n)]
    elif not isinstance(raw_gradings, list) or not raw_gradings:
        reader.fail(f"{path}.gradings", "expected a nonempty list of gradings")
        return None
    else:
        for gi, raw in enumerate(raw_gradings):
            gpath = f"{path}.gradings[{gi}]"
            if not isinstance(raw, list) or not raw:
                reader.fail(gpath, "expected a nonempty list of pieces")
                continue
            pieces = []
            for pi, piece in enumerate(raw):
                ppath = f"{gpath}[{pi}]"
                if not isinstance(piece, dict):
                    reader.fail(ppath, "expected an object with weight and basis")
                    continue
                weight = piece.get("weight", [])
                if not isinstance(weight, list) or not all(isinstance(w, int) for w in weight):
                    reader.fail(f"{ppath}.weight", "expected a list of integers")
                    weight = []
                basis_raw = piece.get("basis")
                if not isinstance(basis_raw, list) or not basis_raw:
                    reader.fail(f"{ppath}.basis", "expected a nonempty list of vectors")
                    continue
                basis = []
                for vi, vec in enumerate(basis_raw):
                    if not isinstance(vec, list) or len(vec) != n:
                        reader.fail(f"{ppath}.basis[{vi}]", f"expected a length-{n} vector")
                        continue
                    basis.append(tuple(reader.scalar(x, m, f"{ppath}.basis[{vi}][{k}]")
                                       for k, x in enumerate(vec)))
                if basis:
                    pieces.append((tuple(weight), basis))
            if reader.errors:
                continue
            try:
                gradings.append(Grading(n, pieces))
            except ValueError as exc:
                reader.fail(gpath, str(exc))
    connectors = []
    for ci, raw in enumerate(data.get("connectors", [])):
        connectors.append(reader.matrix(raw, m, f"{path}.connectors[{ci}]",
                                        square=n, invertible=True))
    loops = []
    for li, raw in enumerate(data.get("loops", [])):
        lpath = f"{path}.loops[{li}]"
        if not isinstance(raw, dict) or "matrix" not in raw:
            reader.fail(lpath, "expected an object with a matrix")
            continue
        g = reader.matrix(raw["matrix"], m, f"{lpath}.matrix", square=n, invertible=True)
        inner_raw = raw.get("inner")
        inner = Matrix.identity(n, m) if inner_raw is None else \
            reader.matrix(inner_raw, m, f"{lpath}.inner", square=n, invertible=True)
        outer_raw = raw.get("outer", "identity")
        if outer_raw not in ("identity", "sigma"):
            reader.fail(f"{lpath}.outer", 'expected "identity" or "sigma"')
            outer_raw = "identity"
        loops.append(TwistedElement(g, Automorphism(inner, outer_raw == "sigma")))
    if reader.errors:
        return None
    try:
        return FramedPoint(n, gradings, connectors, loops)
    except ValueError as exc:
        reader.fail(path, str(exc))
        return None


def _parse_stokes(reader: _Reader, data, m) -> Optional[WildSurface]:
    path = "stokes"
    if not isinstance(data, dict):
        reader.fail(path, "expected an object")
        return None
    genus = data.get("genus", 0)
    if not isinstance(genus, int) or genus < 0:
        reader.fail(f"{path}.genus", "expected a nonnegative integer")
        genus = 0
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        reader.fail(f"{path}.n", "expected a positive integer")
        return None
    raw_punctures = data.get("punctures")
    if not isinstance(raw_punctures, list) or not raw_punctures:
        reader.fail(f"{path}.punctures", "expected a nonempty list")
        return None
    punctures = []
    for pi, raw in enumerate(raw_punctures):
        ppath = f"{path}.punctures[{pi}]"
        if not isinstance(raw, dict) or not isinstance(raw.get("circles"), list):
            reader.fail(ppath, "expected an object with a circles list")
            continue
        circles = []
        for ci, rc in enumerate(raw["circles"]):
            cpath = f"{ppath}.circles[{ci}]"
            if not isinstance(rc, dict):
                reader.fail(cpath, "expected an object")
                continue
            ram = rc.get("ram", 1)
            mult = rc.get("multiplicity", 1)
            if not isinstance(ram, int) or ram < 1:
                reader.fail(f"{cpath}.ram", "expected a positive integer")
                ram = 1
            if not isinstance(mult, int) or mult < 1:
                reader.fail(f"{cpath}.multiplicity", "expected a positive integer")
                mult = 1
            coeffs = []
            for ki, pair in enumerate(rc.get("coeffs", [])):
                kpath = f"{cpath}.coeffs[{ki}]"
                if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], int):
                    reader.fail(kpath, "expected [exponent, coefficient]")
                    continue
                coeffs.append((pair[0], reader.scalar(pair[1], m, f"{kpath}[1]")))
            if reader.errors:
                continue
            try:
                circles.append(Circle(ram, coeffs, mult))
            except ValueError as exc:
                reader.fail(cpath, str(exc))
        if reader.errors:
            continue
        try:
            punctures.append(IrregularClass(circles))
        except ValueError as exc:
            reader.fail(ppath, str(exc))
    if reader.errors:
        return None
    try:
        return WildSurface(genus, punctures, n)
    except ValueError as exc:
        reader.fail(path, str(exc))
        return None


def parse_instance_data(data) -> InstanceFile:
    reader = _Reader()
    if not isinstance(data, dict):
        raise InstanceError(["top-level: expected a JSON object"])
    m = data.get("field", 1)
    if not isinstance(m, int) or m < 1:
        reader.fail("field", "expected a positive integer conductor")
        m = 1
    mode = data.get("mode")
    if mode not in ("tuple", "stokes"):
        reader.fail("mode", 'expected "tuple" or "stokes"')
        raise InstanceError(reader.errors)
    point = surface = None
    if mode == "tuple":
        if "tuple" not in data:
            reader.fail("tuple", "missing for mode tuple")
        else:
            point = _parse_tuple(reader, data["tuple"], m)
    else:
        if "stokes" not in data:
            reader.fail("stokes", "missing for mode stokes")
        else:
            surface = _parse_stokes(reader, data["stokes"], m)
            if surface is not None:
                # roots of unity of every ramification live in the working field
                for cls in surface.punctures:
                    m = lcm(m, cls.conductor())
    candidate = None
    if "candidate" in data:
        raw = data["candidate"]
        if not isinstance(raw, dict):
            reader.fail("candidate", "expected an object mapping generator names to matrices")
        else:
            candidate = {}
            for name, mat_raw in sorted(raw.items()):
                candidate[name] = reader.matrix(mat_raw, m, f"candidate.{name}")
    if reader.errors:
        raise InstanceError(reader.errors)
    return InstanceFile(m, mode, point, surface, candidate)


def parse_instance(path: str) -> InstanceFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InstanceError([f"{path}: {exc.strerror or exc}"])
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError([f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"])
    return parse_instance_data(data)


# ---------------------------------------------------------------------------
# rendering (canonical; parse -> render -> parse is the identity)


def _scalar_json(x: Scalar, m: int):
    return x.promote(m).to_json()


def _matrix_json(mat: Matrix, m: int):
    return [[_scalar_json(x, m) for x in mat.row(i)] for i in range(mat.rows)]


def render_instance(inst: InstanceFile) -> dict:
    m = inst.conductor
    out = {"field": m, "mode": inst.mode}
    if inst.mode == "tuple" and inst.point is not None:
        p = inst.point
        out["tuple"] = {
            "n": p.n,
            "gradings": [[{"weight": list(w),
                           "basis": [[_scalar_json(x, m) for x in v] for v in basis]}
                          for w, basis in g.pieces] for g in p.gradings],
            "connectors": [_matrix_json(c, m) for c in p.connectors],
            "loops": [{"matrix": _matrix_json(x.g, m),
                       "inner": _matrix_json(x.phi.inner, m),
                       "outer": "sigma" if x.phi.outer else "identity"}
                      for x in p.loops],
        }
    if inst.mode == "stokes" and inst.surface is not None:
        ws = inst.surface
        out["stokes"] = {
            "genus": ws.genus,
            "n": ws.n,
            "punctures": [{"circles": [{"ram": c.ram,
                                        "coeffs": [[j, _scalar_json(a, m)] for j, a in c.coeffs],
                                        "multiplicity": c.multiplicity}
                                       for c in cls.circles]}
                          for cls in ws.punctures],
        }
    if inst.candidate is not None:
        out["candidate"] = {name: _matrix_json(mat, m)
                            for name, mat in sorted(inst.candidate.items())}
    return out

"""JSON round trips for every public type.

Rationals are strings "p/q" (or "p").  Tensors are {"shape": [...],
"entries": [...]} with row-major flat entries; nested lists are accepted on
read.  Unknown fields are rejected, and every error carries a JSON path.
"""

from __future__ import annotations

import json

import numpy as np

from . import exactlin as el
from .bialgebroid import EDualPair
from .ecourant import ECourantStructure
from .leibniz import LeibnizAlgebra, LeibnizRep
from .twist import AdmissiblePair


class SchemaError(ValueError):
    def __init__(self, path, msg):
        super().__init__("%s: %s" % (path, msg))
        self.path = path
        self.msg = msg


# ---------------------------------------------------------------------------
# scalars and tensors

def _rational(x, path):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(path, "expected a rational string, got %r" % (x,))
    try:
        return el.frac(x)
    except ZeroDivisionError:
        raise SchemaError(path, "zero denominator in %r" % (x,)) from None
    except ValueError:
        raise SchemaError(path, "malformed rational %r" % (x,)) from None


def _nested(x, path):
    if isinstance(x, list):
        items = [_nested(v, "%s[%d]" % (path, i)) for i, v in enumerate(x)]
        shapes = {_shape_of(v) for v in items}
        if len(shapes) > 1:
            raise SchemaError(path, "ragged nested list")
        return items
    return _rational(x, path)


def _shape_of(v):
    if isinstance(v, list):
        return (len(v),) + (_shape_of(v[0]) if v else ())
    return ()


def _int(x, path, minimum=0):
    if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
        raise SchemaError(path, "expected an integer >= %d, got %r" % (minimum, x))
    return x


def _fields(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    extra = sorted(set(obj) - set(required) - set(optional))
    if extra:
        raise SchemaError(path, "unknown field %r" % extra[0])
    for key in required:
        if key not in obj:
            raise SchemaError(path, "missing field %r" % key)


def tensor_to_json(t):
    t = el.canonical(t)
    return {"shape": list(t.shape), "entries": [el.fstr(v) for v in t.reshape(-1)]}


def tensor_from_json(obj, path="$", shape=None):
    if isinstance(obj, list):
        data = _nested(obj, path)
        out = el.array(data).reshape(_shape_of(data))
    else:
        _fields(obj, path, ("shape", "entries"), ("kind",))
        if obj.get("kind", "tensor") != "tensor":
            raise SchemaError(path + ".kind", "expected 'tensor'")
        if not isinstance(obj["shape"], list):
            raise SchemaError(path + ".shape", "expected a list")
        shp = tuple(_int(v, "%s.shape[%d]" % (path, i)) for i, v in enumerate(obj["shape"]))
        entries = obj["entries"]
        if not isinstance(entries, list):
            raise SchemaError(path + ".entries", "expected a list")
        size = int(np.prod(shp, dtype=np.int64)) if shp else 1
        if len(entries) != size:
            raise SchemaError(path + ".entries", "expected %d entries for shape %r, got %d"
                              % (size, list(shp), len(entries)))
        vals = [_rational(v, "%s.entries[%d]" % (path, i)) for i, v in enumerate(entries)]
        out = el.zeros(*shp)
        out.reshape(-1)[:] = vals if vals else []
    if shape is not None and tuple(out.shape) != tuple(shape):
        raise SchemaError(path, "expected shape %r, got %r" % (list(shape), list(out.shape)))
    return el.canonical(out)


# ---------------------------------------------------------------------------
# per-kind encoders

def _name(d, obj):
    if getattr(obj, "name", ""):
        d["name"] = obj.name
    return d


def algebra_to_json(a: LeibnizAlgebra):
    return _name({"kind": "leibniz_algebra", "dim": a.dim, "bracket": tensor_to_json(a.bracket)}, a)


def algebra_from_json(obj, path="$"):
    _check_kind(obj, path, "leibniz_algebra", ("dim", "bracket"), ("name",))
    d = _int(obj["dim"], path + ".dim")
    br = tensor_from_json(obj["bracket"], path + ".bracket", (d, d, d))
    return LeibnizAlgebra(d, br, obj.get("name", ""))


def rep_to_json(r: LeibnizRep):
    return _name({"kind": "representation", "algebraDim": r.algebra_dim, "moduleDim": r.module_dim,
                  "left": tensor_to_json(r.left), "right": tensor_to_json(r.right)}, r)


def rep_from_json(obj, path="$"):
    _check_kind(obj, path, "representation", ("algebraDim", "moduleDim", "left", "right"), ("name",))
    g = _int(obj["algebraDim"], path + ".algebraDim")
    m = _int(obj["moduleDim"], path + ".moduleDim")
    left = tensor_from_json(obj["left"], path + ".left", (g, m, m))
    right = tensor_from_json(obj["right"], path + ".right", (m, g, m))
    return LeibnizRep(m, left, right, obj.get("name", ""))


def ecourant_to_json(s: ECourantStructure):
    return _name({"kind": "ecourant", "kDim": s.k_dim, "eDim": s.e_dim,
                  "pairing": tensor_to_json(s.pairing), "bracket": tensor_to_json(s.bracket),
                  "anchor": tensor_to_json(s.anchor)}, s)


def ecourant_from_json(obj, path="$"):
    _check_kind(obj, path, "ecourant", ("kDim", "eDim", "pairing", "bracket", "anchor"), ("name",))
    K = _int(obj["kDim"], path + ".kDim")
    n = _int(obj["eDim"], path + ".eDim", 1)
    return ECourantStructure(K, n,
                             tensor_from_json(obj["pairing"], path + ".pairing", (K, K, n)),
                             tensor_from_json(obj["bracket"], path + ".bracket", (K, K, K)),
                             tensor_from_json(obj["anchor"], path + ".anchor", (K, n, n)),
                             obj.get("name", ""))


def subspace_to_json(L: el.Subspace):
    return {"kind": "subspace", "ambient": L.ambient,
            "basis": [[el.fstr(v) for v in row] for row in L.basis]}


def subspace_from_json(obj, path="$"):
    _check_kind(obj, path, "subspace", ("ambient", "basis"))
    amb = _int(obj["ambient"], path + ".ambient")
    rows = obj["basis"]
    if not isinstance(rows, list):
        raise SchemaError(path + ".basis", "expected a list of rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != amb:
            raise SchemaError("%s.basis[%d]" % (path, i), "expected a row of length %d" % amb)
    data = [[_rational(v, "%s.basis[%d][%d]" % (path, i, j)) for j, v in enumerate(row)]
            for i, row in enumerate(rows)]
    m = el.array(data).reshape(len(data), amb) if data else el.zeros(0, amb)
    return el.Subspace.span(m, amb)


def edual_to_json(p: EDualPair):
    return _name({"kind": "edual_pair", "eDim": p.e_dim, "A": algebra_to_json(p.A),
                  "B": algebra_to_json(p.B), "pairing": tensor_to_json(p.pairing),
                  "rhoA": tensor_to_json(p.rho_a), "rhoB": tensor_to_json(p.rho_b)}, p)


def edual_from_json(obj, path="$"):
    _check_kind(obj, path, "edual_pair", ("eDim", "A", "B", "pairing", "rhoA", "rhoB"), ("name",))
    n = _int(obj["eDim"], path + ".eDim", 1)
    A = algebra_from_json(obj["A"], path + ".A")
    B = algebra_from_json(obj["B"], path + ".B")
    return EDualPair(A, B, n,
                     tensor_from_json(obj["pairing"], path + ".pairing", (A.dim, B.dim, n)),
                     tensor_from_json(obj["rhoA"], path + ".rhoA", (A.dim, n, n)),
                     tensor_from_json(obj["rhoB"], path + ".rhoB", (B.dim, n, n)),
                     obj.get("name", ""))


class Cochain:
    """A cochain tensor of shape (dim,)*degree + (module_dim,)."""

    def __init__(self, values, degree):
        self.values = el.canonical(values)
        self.degree = degree
        if self.values.ndim != degree + 1:
            raise el.ShapeError("cochain of degree %d needs %d axes" % (degree, degree + 1))

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and el.equal(self.values, other.values)

    __hash__ = None


def cochain_to_json(c: Cochain):
    return {"kind": "cochain", "degree": c.degree, "values": tensor_to_json(c.values)}


def cochain_from_json(obj, path="$"):
    _check_kind(obj, path, "cochain", ("degree", "values"))
    k = _int(obj["degree"], path + ".degree")
    t = tensor_from_json(obj["values"], path + ".values")
    if t.ndim != k + 1 or len(set(t.shape[:-1])) > 1:
        raise SchemaError(path + ".values", "shape %r is not (dim,)*%d + (m,)" % (list(t.shape), k))
    return Cochain(t, k)


def admissible_to_json(p: AdmissiblePair):
    return {"kind": "admissible_pair", "n": p.n, "omega": tensor_to_json(p.omega),
            "theta": tensor_to_json(p.theta)}


def admissible_from_json(obj, path="$"):
    _check_kind(obj, path, "admissible_pair", ("n", "omega", "theta"))
    n = _int(obj["n"], path + ".n", 1)
    N = n * n
    return AdmissiblePair(tensor_from_json(obj["omega"], path + ".omega", (N, N, n)),
                          tensor_from_json(obj["theta"], path + ".theta", (N, N, n)))


def _tensor_kind_from_json(obj, path="$"):
    return tensor_from_json(obj, path)


def _check_kind(obj, path, kind, required, optional=()):
    _fields(obj, path, ("kind",) + tuple(required), optional)
    if obj["kind"] != kind:
        raise SchemaError(path + ".kind", "expected %r, got %r" % (kind, obj["kind"]))


_DECODERS = {
    "leibniz_algebra": algebra_from_json,
    "representation": rep_from_json,
    "ecourant": ecourant_from_json,
    "subspace": subspace_from_json,
    "edual_pair": edual_from_json,
    "cochain": cochain_from_json,
    "admissible_pair": admissible_from_json,
    "tensor": _tensor_kind_from_json,
}


def to_json(obj):
    if isinstance(obj, LeibnizAlgebra):
        return algebra_to_json(obj)
    if isinstance(obj, LeibnizRep):
        return rep_to_json(obj)
    if isinstance(obj, ECourantStructure):
        return ecourant_to_json(obj)
    if isinstance(obj, el.Subspace):
        return subspace_to_json(obj)
    if isinstance(obj, EDualPair):
        return edual_to_json(obj)
    if isinstance(obj, Cochain):
        return cochain_to_json(obj)
    if isinstance(obj, AdmissiblePair):
        return admissible_to_json(obj)
    if isinstance(obj, np.ndarray):
        return dict(kind="tensor", **tensor_to_json(obj))
    raise TypeError("no serializer for %s" % type(obj).__name__)


def from_json(obj, expect=None, path="$"):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(path, "expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind not in _DECODERS:
        raise SchemaError(path + ".kind", "unknown kind %r" % (kind,))
    if expect is not None and kind not in ((expect,) if isinstance(expect, str) else expect):
        raise SchemaError(path + ".kind", "expected %r, got %r" % (expect, kind))
    return _DECODERS[kind](obj, path)


def dumps(obj) -> str:
    return json.dumps(to_json(obj), indent=None, separators=(",", ":"))


def loads(text: str, expect=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("line %d column %d" % (e.lineno, e.colno), e.msg) from None
    try:
        return from_json(data, expect)
    except SchemaError:
        raise
    except (el.ShapeError, TypeError) as e:
        raise SchemaError("$", str(e)) from None


def load(path, expect=None):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads(text, expect)
    except SchemaError as e:
        raise SchemaError("%s:%s" % (path, e.path), e.msg) from None


def dump(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
        fh.write("\n")

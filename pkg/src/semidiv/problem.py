"""Problem documents: JSON objects describing a semigroup and optional data.

Example::

    {"rank": 5,
     "presentation": "equations",
     "equations": [[1, 1, -1, -1, -1]],
     "class": [-2]}

Integers only; any fractional or floating literal is rejected.
"""
import json
from dataclasses import dataclass, field

from .errors import InputError
from .semigroup import FormSystem, from_equations, from_inequalities, normalize

PRESENTATIONS = ("generators", "inequalities", "equations")
KNOWN_FIELDS = {
    "rank", "presentation", "generators", "inequalities", "equations", "congruences",
    "lattice", "xi", "zeta", "bounds", "bounds2", "class", "face", "options",
}
OPTION_FIELDS = {"cap_faces", "hs_window", "box", "jmax", "k", "bound", "direction", "offset"}


@dataclass
class ProblemFile:
    rank: int
    presentation: str
    data: list
    congruences: list = field(default_factory=list)
    lattice: str = "group"
    xi: list = None
    zeta: list = None
    bounds: list = None
    bounds2: list = None
    cls: list = None
    face: list = None
    options: dict = field(default_factory=dict)

    def semigroup(self):
        if self.presentation == "generators":
            return normalize(self.data, self.lattice)
        if self.presentation == "inequalities":
            return from_inequalities(self.data)
        return from_equations(self.rank, self.data, self.congruences)

    def form_system(self, S, which="xi"):
        forms = self.xi if which == "xi" else self.zeta
        if forms is None:
            return S.standard_system()
        return FormSystem.from_ambient(S, forms)


def _reject_float(text):
    raise InputError(f"non-integer number {text!r}: only integers are allowed")


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _vector(value, where, length=None):
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of integers")
    out = [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]
    if length is not None and len(out) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(out)}")
    return out


def _matrix(value, where, ncols):
    if not isinstance(value, list) or not value:
        raise InputError(f"{where}: expected a non-empty list of rows")
    return [_vector(row, f"{where}[{i}]", ncols) for i, row in enumerate(value)]


def parse_problem(text):
    """Parse and validate a problem document given as a string."""
    try:
        doc = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("line 1: the document must be an object")
    unknown = set(doc) - KNOWN_FIELDS
    if unknown:
        raise InputError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "rank" not in doc:
        raise InputError("rank: missing")
    n = _int(doc["rank"], "rank")
    if n < 1:
        raise InputError("rank: must be positive")
    present = [p for p in PRESENTATIONS if p in doc]
    if len(present) != 1:
        raise InputError("exactly one of generators / inequalities / equations is required"
                         f" (found {present or 'none'})")
    kind = present[0]
    if doc.get("presentation", kind) != kind:
        raise InputError(f"presentation: says {doc['presentation']!r} but the document gives {kind}")
    if "congruences" in doc and kind != "equations":
        raise InputError("congruences: only allowed with the equations presentation")
    data = [] if kind == "equations" and doc[kind] == [] else _matrix(doc[kind], kind, n)
    congr = []
    for i, c in enumerate(doc.get("congruences", [])):
        where = f"congruences[{i}]"
        if not isinstance(c, dict) or set(c) != {"form", "modulus"}:
            raise InputError(f"{where}: expected an object with 'form' and 'modulus'")
        m = _int(c["modulus"], f"{where}.modulus")
        if m < 2:
            raise InputError(f"{where}.modulus: must be >= 2")
        congr.append((_vector(c["form"], f"{where}.form", n), m))
    lattice = doc.get("lattice", "group")
    if lattice not in ("group", "ambient"):
        raise InputError("lattice: must be 'group' or 'ambient'")
    if "lattice" in doc and kind != "generators":
        raise InputError("lattice: only meaningful for the generators presentation")
    opts = doc.get("options", {})
    if not isinstance(opts, dict):
        raise InputError("options: expected an object")
    bad = set(opts) - OPTION_FIELDS
    if bad:
        raise InputError(f"options: unknown key(s) {', '.join(sorted(bad))}")
    options = {}
    for k, v in opts.items():
        if k in ("direction", "offset"):
            options[k] = _vector(v, f"options.{k}")
        else:
            options[k] = _int(v, f"options.{k}")
    return ProblemFile(
        rank=n,
        presentation=kind,
        data=data,
        congruences=congr,
        lattice=lattice,
        xi=_matrix(doc["xi"], "xi", n) if "xi" in doc else None,
        zeta=_matrix(doc["zeta"], "zeta", n) if "zeta" in doc else None,
        bounds=_vector(doc["bounds"], "bounds") if "bounds" in doc else None,
        bounds2=_vector(doc["bounds2"], "bounds2") if "bounds2" in doc else None,
        cls=_vector(doc["class"], "class") if "class" in doc else None,
        face=_vector(doc["face"], "face") if "face" in doc else None,
        options=options,
    )


def load_problem(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_problem(text)


__all__ = ["ProblemFile", "load_problem", "parse_problem"]

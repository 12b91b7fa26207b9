"""Command dispatch and report rendering.

A report is a plain dict of exact values.  ``to_machine`` turns Fractions
into "p/q" strings and serializes with sorted keys; ``render_table`` prints
the same content for people.
"""
import json
from fractions import Fraction

from . import __version__
from ._linalg import as_fraction_str
from .conic import conic_classes, face_ideal_bounds, frobenius_decomposition
from .depth import (DEFAULT_HS_WINDOW, cm_classes, cohen_macaulay_test, depth_bounds,
                    progression_analysis, rees_degrees, simplicial_check)
from .divisorial import (canonical_class, class_group, class_lift, class_of_bounds,
                         minimal_generators)
from .errors import InputError
from .polyhedral import DEFAULT_FACE_CAP
from .semigroup import coset_divisoriality_check, purity_check
from .xiconvex import eff_bounds, enumerate_small_mu, intersect_modules, xi_iso_test

COMMANDS = (
    "info", "hilbert-basis", "class-group", "mingen", "mu", "conic", "face-ideal",
    "frobenius", "depth-bounds", "cm", "simplicial", "progression", "pure-check",
    "divisorial-check", "eff", "iso", "intersect", "enumerate", "rees-degrees",
)

DEFAULTS = {"cap_faces": DEFAULT_FACE_CAP, "hs_window": DEFAULT_HS_WINDOW, "box": 10,
            "jmax": 20, "k": 2, "bound": None}


def _ambient_point(S, y):
    return [sum(Fraction(y[k]) * S.basis[k][j] for k in range(S.rank)) for j in range(S.ambient_dim)]


def _pts(S, pts):
    return [list(S.to_ambient(p)) for p in pts]


class _Context:
    def __init__(self, problem, options):
        self.problem = problem
        self.opts = dict(DEFAULTS)
        self.opts.update(problem.options)
        self.opts.update({k: v for k, v in options.items() if v is not None})
        self.S = problem.semigroup()
        self._G = None

    @property
    def G(self):
        if self._G is None:
            self._G = class_group(self.S)
        return self._G

    def cls(self, key="cls"):
        c = self.opts.get(key)
        if c is None and key == "cls":
            c = self.problem.cls
        return c

    def target(self):
        """(bound vector, class) from --class / "class" / "bounds"."""
        c = self.cls()
        if c is not None:
            c = self.G.reduce(c)
            return class_lift(self.G, c), c
        if self.problem.bounds is not None:
            a = tuple(self.problem.bounds)
            return a, class_of_bounds(self.G, a)
        raise InputError("this command needs a class (--class or \"class\") or \"bounds\"")


def _summary(S):
    return {
        "rank": S.rank,
        "ambient_rank": S.ambient_dim,
        "s": S.s,
        "hilbert_basis_size": len(S.hilbert_basis),
        "positive": S.positive,
        "lattice": S.lattice,
        "basis_change": [list(b) for b in S.basis] if S.basis_changed else None,
    }


def _cmd_info(ctx):
    S = ctx.S
    return {
        "support_forms": [list(f) for f in S.support_forms],
        "extreme_rays": _pts(S, S.rays),
        "tau": list(S.tau),
        "simplicial": len(S.rays) == S.rank,
    }


def _cmd_hilbert_basis(ctx):
    return {"hilbert_basis": _pts(ctx.S, ctx.S.hilbert_basis)}


def _cmd_class_group(ctx):
    G = ctx.G
    a, w = canonical_class(G)
    return {
        "group": G.describe(),
        "invariant_factors": list(G.invariant_factors),
        "free_rank": G.free_rank,
        "projection": [list(r) for r in G.presentation.projection],
        "canonical_class": list(w),
    }


def _cmd_mingen(ctx):
    a, c = ctx.target()
    gs = minimal_generators(ctx.S, a)
    return {"bounds": list(a), "class": list(c), "generators": _pts(ctx.S, gs.points), "mu": gs.mu}


def _cmd_mu(ctx):
    a, c = ctx.target()
    return {"bounds": list(a), "class": list(c), "mu": minimal_generators(ctx.S, a).mu}


def _cmd_conic(ctx):
    rep = conic_classes(ctx.S, ctx.G)
    return {
        "classes": [{"class": list(cc.cls), "bounds": list(cc.bounds),
                     "witness": _ambient_point(ctx.S, cc.witness)} for cc in rep.classes],
        "complete": rep.complete,
    }


def _cmd_face_ideal(ctx):
    J = ctx.opts.get("face")
    if J is None:
        J = ctx.problem.face
    if J is None:
        raise InputError("face-ideal needs a facet set (--face or \"face\")")
    fi = face_ideal_bounds(ctx.S, J)
    out = {"face": list(fi.tight)}
    for name, a, beta in (("q", fi.q_bounds, fi.q_witness), ("r", fi.r_bounds, fi.r_witness)):
        out[name] = {"bounds": list(a), "class": list(class_of_bounds(ctx.G, a)),
                     "witness": _ambient_point(ctx.S, beta)}
    return out


def _cmd_frobenius(ctx):
    k = ctx.opts["k"]
    rep = frobenius_decomposition(ctx.S, k, ctx.G)
    return {
        "k": k,
        "summands": [{"class": list(c), "multiplicity": m} for c, m in rep.multiplicities.items()],
        "ladder": [{"k": kk, "classes": [list(c) for c in sorted(cs)]} for kk, cs in rep.ladder],
        "threshold": rep.threshold,
        "stable_classes": [list(c) for c in sorted(rep.stable_set)],
        "stable_equals_conic": rep.stable_set == rep.conic,
        "stabilization": "empirical",
    }


def _cmd_depth_bounds(ctx):
    db = depth_bounds(ctx.S)
    return {"grade_mP": db.grade_mP, "lambda": db.lam,
            "grade_witness": list(db.grade_witness),
            "lambda_witness": _pts(ctx.S, db.lambda_witness)}


def _cmd_cm(ctx):
    w = ctx.opts["hs_window"]
    if ctx.cls() is None and ctx.problem.bounds is None:
        classes, e_ring, enum = cm_classes(ctx.S, ctx.G, ctx.opts["box"], w)
        return {"cm_classes": [list(c) for c in classes], "e_ring": e_ring,
                "box": ctx.opts["box"], "candidates": [list(c) for c in enum.classes]}
    a, c = ctx.target()
    res = cohen_macaulay_test(ctx.S, a, w)
    return {"bounds": list(a), "class": list(c), "cohen_macaulay": res.cohen_macaulay,
            "e_module": res.e_module, "e_ring": res.e_ring, "mu": res.mu,
            "length_module": res.length_module, "length_ring": res.length_ring,
            "parameter_degree": res.sop_degree}


def _cmd_simplicial(ctx):
    rep = simplicial_check(ctx.S, ctx.opts["hs_window"])
    return {"simplicial": rep.simplicial, "extreme_rays": rep.n_rays, "rank": rep.rank,
            "class_group": rep.class_group, "all_classes_cm": rep.all_cm}


def _cmd_progression(ctx):
    c = ctx.opts.get("direction") or ctx.cls()
    if c is None:
        raise InputError("progression needs a direction (--class or options.direction)")
    d = ctx.opts.get("offset")
    rep = progression_analysis(ctx.S, c, d, ctx.opts["jmax"], ctx.G, ctx.opts["cap_faces"])
    return {
        "c": list(rep.c), "d": list(rep.d),
        "mu_table": [{"j": j, "mu": m} for j, m in enumerate(rep.mu_table)],
        "period": rep.period, "degree": rep.degree,
        "limits": list(rep.limits), "veronese_limits": list(rep.veronese_limits),
        "inf_depth_estimate": rep.inf_depth,
    }


def _xi(ctx, which="xi"):
    return ctx.problem.form_system(ctx.S, which)


def _cmd_pure_check(ctx):
    res = purity_check(_xi(ctx))
    return {"pure": res.pure, "reason": res.reason or None, "index": res.form_index,
            "witness": list(res.witness) if res.witness is not None else None}


def _cmd_divisorial_check(ctx):
    res = coset_divisoriality_check(_xi(ctx))
    return {"divisorial": res.divisorial, "index": res.form_index,
            "multiples": [{"support_form": j, "factor": e} for j, e in res.multiples]}


def _need(value, name):
    if value is None:
        raise InputError(f"this command needs \"{name}\"")
    return value


def _cmd_eff(ctx):
    xi = _xi(ctx)
    ideal = eff_bounds(xi, _need(ctx.problem.bounds, "bounds"))
    return {"bounds": list(ideal.bounds), "eff": list(ideal.eff), "mu": ideal.mu,
            "generators": _pts(ctx.S, ideal.generators)}


def _cmd_iso(ctx):
    res = xi_iso_test(_xi(ctx), _need(ctx.problem.bounds, "bounds"),
                      _need(ctx.problem.bounds2, "bounds2"))
    return {"isomorphic": res.isomorphic,
            "witness": list(ctx.S.to_ambient(res.witness)) if res.witness else None}


def _cmd_intersect(ctx):
    gs = intersect_modules(_xi(ctx), _need(ctx.problem.bounds, "bounds"),
                           _xi(ctx, "zeta"), _need(ctx.problem.bounds2, "bounds2"))
    return {"generators": _pts(ctx.S, gs.points), "mu": gs.mu, "empty": gs.mu == 0}


def _cmd_enumerate(ctx):
    C = ctx.opts.get("bound")
    if C is None:
        raise InputError("enumerate needs a bound C (--bound or options.bound)")
    en = enumerate_small_mu(_xi(ctx), C, ctx.opts["box"])
    return {"bound": C, "box": en.box,
            "classes": [{"class": list(e.cls), "eff": list(e.eff), "mu": e.mu} for e in en.entries],
            "shell_min_mu": en.shell_min, "label": en.label}


def _cmd_rees_degrees(ctx):
    c = ctx.cls()
    if c is None:
        raise InputError("rees-degrees needs a class")
    degs, period = rees_degrees(ctx.S, c, ctx.G)
    return {"class": list(ctx.G.reduce(c)), "degrees": degs, "lcm": period}


_DISPATCH = {name: globals()["_cmd_" + name.replace("-", "_")] for name in COMMANDS}


def run_command(problem, command, options=None):
    if command not in _DISPATCH:
        raise InputError(f"unknown command {command!r}")
    options = options or {}
    ctx = _Context(problem, options)
    result = _DISPATCH[command](ctx)
    return {
        "command": command,
        "semigroup": _summary(ctx.S),
        "result": result,
        "provenance": {
            "tool": "semidiv",
            "version": __version__,
            "options": {k: v for k, v in sorted(ctx.opts.items()) if v is not None},
            "seed": None,
        },
    }


def _exact(obj):
    if isinstance(obj, dict):
        return {str(k): _exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_exact(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError("floating-point value in a report")
    if isinstance(obj, Fraction):
        return as_fraction_str(obj)
    return obj


def to_machine(report):
    return json.dumps(_exact(report), sort_keys=True, indent=2) + "\n"


def parse_machine(text):
    return json.loads(text)


def _fmt(v):
    if isinstance(v, bool) or v is None:
        return {True: "yes", False: "no", None: "-"}[v]
    if isinstance(v, list):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in sorted(v.items()))
    return str(v)


def _table(rows):
    keys = list(rows[0])
    cells = [[_fmt(r.get(k)) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  " + "  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines += ["  " + "  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return [line.rstrip() for line in lines]


def render_table(report):
    rep = _exact(report)
    sg = rep["semigroup"]
    out = [f"semidiv {rep['command']}",
           f"semigroup: rank {sg['rank']} in Z^{sg['ambient_rank']}, {sg['s']} support forms, "
           f"Hilbert basis of {sg['hilbert_basis_size']}, lattice {sg['lattice']}"]
    if sg["basis_change"]:
        out.append(f"lattice basis: {_fmt(sg['basis_change'])}")
    out.append("")
    res = rep["result"]
    width = max((len(k) for k in res), default=0)
    for key in sorted(res):
        val = res[key]
        if isinstance(val, list) and val and all(isinstance(x, dict) for x in val):
            out.append(f"{key}:")
            out.extend(_table(val))
        elif isinstance(val, list) and val and all(isinstance(x, list) for x in val):
            out.append(f"{key}:")
            out.extend("  " + _fmt(x) for x in val)
        else:
            out.append(f"{key.ljust(width)}  {_fmt(val)}")
    return "\n".join(out) + "\n"


def render_report(report, fmt="table"):
    if fmt == "machine":
        return to_machine(report)
    if fmt == "table":
        return render_table(report)
    raise InputError(f"unknown format {fmt!r}")


__all__ = ["COMMANDS", "parse_machine", "render_report", "run_command", "to_machine"]

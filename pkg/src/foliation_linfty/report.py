"""Structured reports: plain dict trees with a JSON and a text rendering.

Every leaf is a string, integer or boolean so that the JSON form
round-trips exactly; rationals and polynomials are written in the input
grammar.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .complex import ChainMapPair, Resolution, verify_complex, verify_exactness
from .groebner import PolyMatrix
from .holonomy import (
    GradedLieAlgebra,
    holonomy_degree1_oracle,
    holonomy_graded_lie,
    invariant_polynomials,
    leaf_dimension_profile,
    oracle_is_stable,
)
from .linfty import QStructure, Section, bracket_table, verify_jacobi_direct
from .poly import format_rational


def rat(c) -> str:
    return format_rational(Fraction(c))


def matrix(M: PolyMatrix) -> list:
    return [[str(v) for v in row] for row in M.rows]


def resolution_tree(res: Resolution) -> dict:
    return {
        "ranks": list(res.ranks),
        "length": res.length,
        "names": [list(n) for n in res.names],
        "anchor": matrix(res.anchor),
        "differentials": {f"d{k + 2}": matrix(D) for k, D in enumerate(res.differentials)},
        "complex": verify_complex(res).ok,
        "exact": verify_exactness(res).ok,
    }


def _word(mfd, w) -> str:
    if not w:
        return "1"
    return "*".join(f"xi[{mfd.gen_name(g)}]" for g in w)


def _gf(mfd, v: dict) -> dict:
    return {_word(mfd, w): str(p) for w, p in sorted(v.items())}


def q_tree(q: QStructure) -> dict:
    mfd = q.mfd
    out = {}
    for n, comp in enumerate(q.components):
        entry = {}
        for m, v in sorted(comp.base.items()):
            entry[mfd.ring.names[m]] = _gf(mfd, v)
        for g, v in sorted(comp.fiber.items()):
            entry[f"xi[{mfd.gen_name(g)}]"] = _gf(mfd, v)
        out[str(n)] = entry
    return out


def section_tree(mfd, s: Section) -> dict:
    names = mfd.res.names[s.level - 1]
    return {names[a]: str(c) for a, c in enumerate(s.components) if c}


def brackets_tree(q: QStructure) -> list:
    mfd = q.mfd
    rows = []
    for combo, out in bracket_table(q).items():
        rows.append({"args": [mfd.gen_name(g) for g in combo], "value": section_tree(mfd, out)})
    return rows


def build_tree(name: str, spec_vars, res: Resolution, q: QStructure) -> dict:
    table = brackets_tree(q)
    top = max((len(r["args"]) for r in table), default=0)
    return {
        "foliation": name,
        "variables": list(spec_vars),
        "generators": {n: [str(c) for c in g] for n, g in zip(res.names[0], res.generators())},
        "resolution": resolution_tree(res),
        "q_components": q_tree(q),
        "nonzero_arities": [n for n, c in enumerate(q.components) if not c.is_zero()],
        "certification": {
            "qq_zero": q.certified,
            "by_arity": {str(n): ok for n, ok in sorted(q.residuals.items())},
        },
        "brackets": table,
        "top_bracket_arity": top,
    }


def check_tree(q: QStructure, samples: int, seed: int) -> dict:
    jac = verify_jacobi_direct(q, samples=samples, seed=seed)
    return {
        "qq_zero": q.certified,
        "by_arity": {str(n): ok for n, ok in sorted(q.residuals.items())},
        "jacobi": {"samples": jac.samples, "failures": len(jac.failures), "ok": jac.ok},
        "ok": q.certified and jac.ok,
    }


def _basis_label(b) -> str:
    return f"H{-b[0]}_{b[1] + 1}"


def lie_tree(alg: GradedLieAlgebra) -> dict:
    return {
        "dims": {str(-lv): d for lv, d in sorted(alg.dims.items())},
        "representatives": {str(-lv): [[rat(v) for v in rep] for rep in reps] for lv, reps in sorted(alg.reps.items())},
        "brackets": [
            {"args": [_basis_label(a), _basis_label(b)], "value": {_basis_label(k): rat(v) for k, v in sorted(val.items())}}
            for (a, b), val in sorted(alg.brackets.items())
            if a <= b
        ],
        "graded_symmetric": alg.is_graded_symmetric(),
        "jacobi": alg.satisfies_jacobi(),
    }


def holonomy_tree(q: QStructure, points, degree_bound=None) -> dict:
    res = q.res
    gens = res.generators()
    out = []
    for tag, pt in points:
        alg = holonomy_graded_lie(q, pt)
        orc = holonomy_degree1_oracle(gens, pt, degree_bound, res.ring)
        consts = alg.degree_one_constants()
        agrees = orc.dim == alg.dims.get(1, 0) and all(
            tuple(consts.get(k, {}).get((1, i), 0) for i in range(orc.dim)) == v for k, v in orc.constants.items()
        )
        out.append(
            {
                "tag": tag,
                "point": [rat(v) for v in alg.point],
                "algebra": lie_tree(alg),
                "oracle": {
                    "degree_bound": orc.bound,
                    "dim": orc.dim,
                    "agrees": agrees,
                    "stable": oracle_is_stable(gens, pt, degree_bound, res.ring),
                },
            }
        )
    profile = leaf_dimension_profile(q, points)
    leaves = [
        {
            "tag": p["tag"],
            "point": [rat(v) for v in p["point"]],
            "leaf_dimension": p["leaf_dimension"],
            "cohomology": list(p["cohomology"]),
            "signature": list(p["signature"]),
        }
        for p in profile["points"]
    ]
    return {"points": out, "leaves": leaves, "consistent_tags": dict(sorted(profile["consistent"].items()))}


def invariants_tree(gens, max_degree: int, ring=None) -> dict:
    basis = invariant_polynomials(gens, max_degree, ring)
    return {"max_degree": max_degree, "dimension": len(basis), "basis": [str(p) for p in basis]}


def compare_tree(pair: ChainMapPair) -> dict:
    return {
        "checks": dict(sorted(pair.checks.items())),
        "phi": [matrix(m) for m in pair.phi],
        "psi": [matrix(m) for m in pair.psi],
        "h": [matrix(m) for m in pair.h],
        "h_prime": [matrix(m) for m in pair.h_prime],
        "homotopy_nonzero": any(not m.is_zero() for m in pair.h + pair.h_prime),
    }


def render_json(tree) -> str:
    return json.dumps(tree, sort_keys=True, indent=2) + "\n"


def render_text(tree, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(tree, dict):
        for k in sorted(tree):
            v = tree[k]
            if _flat(v):
                lines.append(f"{pad}{k}: {_inline(v)}")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_leaf(v)}")
    elif isinstance(tree, list):
        if all(not isinstance(v, (dict, list)) for v in tree):
            lines.append(pad + "[" + ", ".join(_leaf(v) for v in tree) + "]")
        else:
            for v in tree:
                if _flat(v):
                    lines.append(f"{pad}- {_inline(v)}")
                elif isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    lines.append(render_text(v, indent + 1))
                else:
                    lines.append(f"{pad}- {_leaf(v)}")
    else:
        lines.append(pad + _leaf(tree))
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and bool(v) and all(not isinstance(x, (dict, list)) or _flat(x) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return _leaf(v)


def _leaf(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)

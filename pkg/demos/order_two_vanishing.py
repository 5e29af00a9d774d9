"""Vector fields vanishing to order two at the origin.

Along one direction the brackets close with polynomial coefficients and
Q stops at arity one.  With both directions the relations interact and a
3-ary bracket appears.

    python demos/order_two_vanishing.py
"""

from foliation_linfty import build_universal_q, load_fixture, verify_jacobi_direct
from foliation_linfty.linfty import bracket_table

for text in ("vanishing_order", "vanishing_order:full"):
    spec = load_fixture(text)
    res = spec.resolve()
    q = build_universal_q(res)
    print(f"== {text}: {len(spec.generators)} generators, ranks {res.ranks}")
    print("   nonzero arities of Q:", [n for n, c in enumerate(q.components) if not c.is_zero()])
    table = bracket_table(q)
    by_arity = {}
    for combo in table:
        by_arity[len(combo)] = by_arity.get(len(combo), 0) + 1
    print("   nonzero brackets by arity:", dict(sorted(by_arity.items())))
    for combo, out in table.items():
        if len(combo) == 3:
            args = ", ".join(q.mfd.gen_name(g) for g in combo)
            print(f"   e.g. {{{args}}} = {[str(c) for c in out.components]}")
            break
    rep = verify_jacobi_direct(q, samples=50)
    print(f"   higher Jacobi on {rep.samples} random tuples: {'ok' if rep.ok else 'FAILED'}")

"""sl2 acting on the plane, from generators to the isotropy algebra at 0.

    python demos/sl2_walkthrough.py
"""

from foliation_linfty import build_universal_q, holonomy_graded_lie, load_fixture
from foliation_linfty.linfty import bracket_table

spec = load_fixture("sl2")
print("generators:")
for name, X in zip(spec.names, spec.generators):
    print(f"  {name} = {X}")

res = spec.resolve()
print("\nresolution ranks", res.ranks)
print("the single relation between e, f, h:", [str(p) for p in res.d(2).column(0)])

q = build_universal_q(res)
print("\n[Q,Q] = 0 certified:", q.certified, "| highest arity of Q:", q.max_arity())

mfd = q.mfd
print("\n2-brackets of basis sections:")
for combo, out in bracket_table(q).items():
    args = ", ".join(mfd.gen_name(g) for g in combo)
    value = " + ".join(f"({c})*{n}" for c, n in zip(out.components, res.names[out.level - 1]) if c)
    print(f"  {{{args}}} = {value}")

def label(b):
    return f"{res.names[b[0] - 1][b[1]]}"  # representatives at 0 are the basis itself


for tag, pt in spec.points:
    alg = holonomy_graded_lie(q, pt)
    dims = ", ".join(f"H^-{lv} = {d}" for lv, d in sorted(alg.dims.items()))
    print(f"\nat {tag} {pt}: {dims}")
    for (a, b), v in sorted(alg.brackets.items()):
        if a < b:
            value = " + ".join(f"({c})*{label(k)}" for k, c in sorted(v.items()))
            print(f"  [{label(a)}, {label(b)}] = {value}")

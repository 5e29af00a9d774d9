"""Two resolutions of the same foliation are homotopy equivalent.

Adding a generator that acts by zero changes the resolution; the chain
maps and homotopies between the two are computed and checked.

    python demos/compare_resolutions.py
"""

from foliation_linfty import compare_resolutions, load_fixture

A = load_fixture("sl2").resolve()
B = load_fixture("sl2_augmented").resolve()
print("ranks", A.ranks, "and", B.ranks)
pair = compare_resolutions(A, B)
for k, m in enumerate(pair.phi):
    print(f"phi on E_-{k + 1}: {[[str(v) for v in row] for row in m.rows]}")
for k, m in enumerate(pair.h_prime):
    print(f"h' on E_-{k + 1}: {[[str(v) for v in row] for row in m.rows]}")
for name, ok in pair.checks.items():
    print(f"{name}: {ok}")

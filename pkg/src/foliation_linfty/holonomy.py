"""Isotropy data of a singular foliation at a point.

Two independent routes to the isotropy Lie algebra in degree -1:

* from the universal Q: cohomology of the fiber complex E|_x with the
  2-bracket of constant sections,
* directly from the generators: D_x / I_x D computed with degree-bounded
  exact linear algebra, no Gröbner bases involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from . import linalg
from .complex import FiberComplex, Resolution, restrict_to_point
from .errors import CertificationFailure, DimensionMismatch
from .linfty import QStructure, Section, extract_bracket
from .poly import Poly, PolyRing, VectorField, as_rational, lie_bracket


def _point(res_or_ring, point) -> tuple:
    n = res_or_ring.nvars if isinstance(res_or_ring, PolyRing) else res_or_ring.dim
    pt = tuple(as_rational(v) for v in point)
    if len(pt) != n:
        raise DimensionMismatch(f"point has {len(pt)} coordinates, base has dimension {n}")
    return pt


@dataclass
class Cohomology:
    point: tuple
    dims: dict  # level -> dim H^{-level}
    reps: dict  # level -> list of representative vectors
    images: dict  # level -> basis of the image of the next differential


def fiber_cohomology(res: Resolution, point) -> Cohomology:
    """Cohomology of the complex of vector spaces E|_x at each level."""
    fc = restrict_to_point(res, _point(res, point))
    dims, reps, images = {}, {}, {}
    for level in range(1, res.length + 1):
        r, im = fc.cohomology(level)
        dims[level] = len(r)
        reps[level] = r
        images[level] = im
    return Cohomology(fc.point, dims, reps, images)


def _coordinates(vec, reps, image, n) -> list:
    """Coefficients of vec on reps, modulo the span of image."""
    cols = list(reps) + list(image)
    if not cols:
        if any(vec):
            raise CertificationFailure("bracket is not closed at the point")
        return []
    A = linalg.transpose(cols, n)
    sol = linalg.solve(A, list(vec))
    if sol is None:
        raise CertificationFailure("bracket of cocycles is not a cocycle")
    return sol[: len(reps)]


@dataclass
class GradedLieAlgebra:
    """Finite-dimensional graded Lie algebra with structure constants.

    Basis elements are (level, index) with level i in degree -i.
    ``brackets[(a, b)]`` is the coefficient dict {basis element: value}
    of the bracket of basis elements a and b.
    """

    point: tuple
    dims: dict
    reps: dict
    brackets: dict = field(default_factory=dict)

    def basis(self):
        return [(lv, k) for lv in sorted(self.dims) for k in range(self.dims[lv])]

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for c, val in self.brackets.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + ca * cb * val
        return {k: v for k, v in out.items() if v}

    def degree_one_constants(self) -> dict:
        return {(a[1], b[1]): v for (a, b), v in self.brackets.items() if a[0] == 1 and b[0] == 1}

    def is_graded_symmetric(self) -> bool:
        for a in self.basis():
            for b in self.basis():
                s = -1 if (a[0] * b[0]) & 1 else 1
                ab = self.brackets.get((a, b), {})
                ba = self.brackets.get((b, a), {})
                if ab != {k: s * v for k, v in ba.items()}:
                    return False
        return True

    def satisfies_jacobi(self) -> bool:
        """Jacobi identity for a symmetric bracket of degree +1, on basis triples.

        {x,{y,z}} = (-1)^{|x|+1} {{x,y},z} + (-1)^{(|x|+1)(|y|+1)} {y,{x,z}}
        with |x| = -level.  Writing the signs in the unshifted degrees
        |x|+1 gives the familiar derivation form; for degree -1 elements it
        is the ordinary Jacobi identity.
        """
        B = self.basis()
        for x in B:
            for y in B:
                for z in B:
                    lhs = self.bracket({x: 1}, self.bracket({y: 1}, {z: 1}))
                    r1 = self.bracket(self.bracket({x: 1}, {y: 1}), {z: 1})
                    r2 = self.bracket({y: 1}, self.bracket({x: 1}, {z: 1}))
                    s1 = 1 if x[0] & 1 else -1
                    s = -1 if ((x[0] + 1) * (y[0] + 1)) & 1 else 1
                    rhs = {k: s1 * v for k, v in r1.items()}
                    for k, v in r2.items():
                        rhs[k] = rhs.get(k, 0) + s * v
                    rhs = {k: v for k, v in rhs.items() if v}
                    if lhs != rhs:
                        return False
        return True


def _const_section(q: QStructure, level: int, vec) -> Section:
    ring = q.mfd.ring
    return Section(level, tuple(ring.const(v) for v in vec))


def holonomy_graded_lie(q: QStructure, point, check_well_defined: bool = True) -> GradedLieAlgebra:
    """The graded Lie algebra H(E|_x) with brackets induced by Q."""
    res = q.res
    coh = fiber_cohomology(res, point)
    x = coh.point
    alg = GradedLieAlgebra(x, coh.dims, coh.reps)
    for la in coh.dims:
        for lb in coh.dims:
            lc = la + lb - 1
            if lc > res.length:
                continue
            n = res.rank(lc)
            for i, a in enumerate(coh.reps[la]):
                for j, b in enumerate(coh.reps[lb]):
                    v = extract_bracket(q, [_const_section(q, la, a), _const_section(q, lb, b)]).eval(x)
                    coords = _coordinates(v, coh.reps[lc], coh.images[lc], n)
                    if check_well_defined and coh.images[la]:
                        shifted = [p + t for p, t in zip(a, coh.images[la][0])]
                        v2 = extract_bracket(q, [_const_section(q, la, shifted), _const_section(q, lb, b)]).eval(x)
                        if _coordinates(v2, coh.reps[lc], coh.images[lc], n) != coords:
                            raise CertificationFailure("bracket depends on the representative")
                    entry = {(lc, k): c for k, c in enumerate(coords) if c}
                    if entry:
                        alg.brackets[((la, i), (lb, j))] = entry
    return alg


# ---------------------------------------------------------------------------
# degree-bounded oracle for D_x / I_x D


def _monomials(nvars: int, lo: int, hi: int) -> list:
    out = []
    for deg in range(lo, hi + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _field_columns(ring: PolyRing, fields: Sequence[Sequence[Poly]]):
    """Coefficient columns of polynomial vector fields on a shared row index."""
    rows: dict = {}
    cols = []
    for F in fields:
        col = {}
        for comp, p in enumerate(F):
            for m, c in p.terms.items():
                key = (comp, m)
                if key not in rows:
                    rows[key] = len(rows)
                col[rows[key]] = c
        cols.append(col)
    return cols, len(rows)


def _dense(cols, nrows):
    M = [[Fraction(0)] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, c in col.items():
            M[i][j] = c
    return M


@dataclass
class Degree1Oracle:
    point: tuple
    bound: int
    kernel_dim: int
    relations: list  # basis of N_b: constants c with sum c_a X_a in I_x D
    reps: list
    constants: dict  # (i, j) -> coordinates of [X_i, X_j] class on reps

    @property
    def dim(self) -> int:
        return len(self.reps)


def holonomy_degree1_oracle(
    gens: Sequence[VectorField], point, degree_bound: int | None = None, ring: PolyRing | None = None
) -> Degree1Oracle:
    """Isotropy Lie algebra D_x / I_x D truncated at a coefficient degree.

    An element of D is sum f_a X_a; modulo I_x D only the values f_a(x)
    matter, so D_x / I_x D is {c : sum c_a X_a(x) = 0} modulo the
    constants c for which sum (c_a - g_a) X_a = 0 with g_a in I_x of
    degree at most the bound.  Brackets are found by writing
    [sum a_i X_i, sum b_j X_j] = sum f_k X_k with bounded-degree f_k.
    """
    gens = list(gens)
    ring = ring or gens[0].ring
    x = _point(ring, point)
    if degree_bound is None:
        degree_bound = 2 + max((g.degree() for g in gens), default=0)
    r = len(gens)
    shifted = [[c.substitute_shift(x) for c in g] for g in gens]
    high = _monomials(ring.nvars, 1, degree_bound)

    # relations: unknowns (c_a) then (g_{a,m})
    fields = [shifted[a] for a in range(r)]
    for a in range(r):
        for m in high:
            fields.append([-(c.mul_term(m, Fraction(1))) for c in shifted[a]])
    cols, nrows = _field_columns(ring, fields)
    null = linalg.nullspace(_dense(cols, nrows), len(cols))
    relations = linalg.column_space_basis([v[:r] for v in null], r)

    at_x = [[c.eval(x) for c in g] for g in gens]
    anchor_x = linalg.transpose(at_x, ring.nvars)
    kernel = linalg.nullspace(anchor_x, r)
    reps = []
    span = list(relations)
    for v in kernel:
        if not linalg.in_span(span, v, r):
            reps.append(v)
            span.append(v)

    all_mons = _monomials(ring.nvars, 0, degree_bound)
    lift_fields = [[c.mul_term(m, Fraction(1)) for c in shifted[a]] for a in range(r) for m in all_mons]
    constants = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            Va = _combine(ring, gens, a)
            Vb = _combine(ring, gens, b)
            W = [c.substitute_shift(x) for c in lie_bracket(Va, Vb)]
            cols2, nrows2 = _field_columns(ring, lift_fields + [W])
            M = _dense(cols2, nrows2)
            A = [row[:-1] for row in M]
            rhs = [row[-1] for row in M]
            sol = linalg.solve(A, rhs)
            if sol is None:
                raise CertificationFailure(f"degree bound {degree_bound} too small to express a bracket")
            zero_idx = all_mons.index(ring.zero_exp)
            value = [sol[k * len(all_mons) + zero_idx] for k in range(r)]
            coords = _coordinates(value, reps, relations, r)
            constants[(i, j)] = tuple(coords)
    return Degree1Oracle(x, degree_bound, len(kernel), relations, reps, constants)


def _combine(ring, gens, coeffs) -> VectorField:
    out = [ring.zero] * ring.nvars
    for c, g in zip(coeffs, gens):
        if c:
            out = [o + gk * c for o, gk in zip(out, g)]
    return VectorField(ring, out)


def oracle_is_stable(gens, point, bound: int | None = None, ring: PolyRing | None = None) -> bool:
    """True when bounds b and b+1 give the same quotient and constants."""
    A = holonomy_degree1_oracle(gens, point, bound, ring)
    B = holonomy_degree1_oracle(gens, point, A.bound + 1, ring)
    return A.relations == B.relations and A.reps == B.reps and A.constants == B.constants


# ---------------------------------------------------------------------------
# invariant polynomials


def invariant_polynomials(gens: Sequence[VectorField], max_degree: int, ring: PolyRing | None = None) -> list[Poly]:
    """Basis of {f : deg f <= max_degree, X[f] = 0 for every generator}."""
    gens = list(gens)
    ring = ring or gens[0].ring
    mons = _monomials(ring.nvars, 0, max_degree)
    images = [[g(ring.monomial(m)) for g in gens] for m in mons]
    rows: dict = {}
    cols = []
    for img in images:
        col = {}
        for k, p in enumerate(img):
            for m, c in p.terms.items():
                key = (k, m)
                if key not in rows:
                    rows[key] = len(rows)
                col[rows[key]] = c
        cols.append(col)
    null = linalg.nullspace(_dense(cols, len(rows)), len(mons))
    basis = []
    for v in null:
        basis.append(Poly(ring, {m: c for m, c in zip(mons, v) if c}))
    return basis


def in_poly_span(basis: Sequence[Poly], f: Poly) -> bool:
    mons = sorted({m for p in list(basis) + [f] for m in p.terms})
    vecs = [[p.terms.get(m, Fraction(0)) for m in mons] for p in basis]
    return linalg.in_span(vecs, [f.terms.get(m, Fraction(0)) for m in mons], len(mons))


# ---------------------------------------------------------------------------
# leaf profiles


def _lie_signature(alg: GradedLieAlgebra) -> tuple:
    """(dim, dim of derived algebra, dim of center) of the degree -1 part."""
    n = alg.dims.get(1, 0)
    consts = alg.degree_one_constants()
    derived = []
    for (i, j), v in consts.items():
        derived.append([v.get((1, k), Fraction(0)) for k in range(n)])
    d_dim = linalg.rank(derived, n) if derived else 0
    # center: c with sum_i c_i [e_i, e_j] = 0 for all j
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([consts.get((i, j), {}).get((1, k), Fraction(0)) for i in range(n)])
    center = len(linalg.nullspace(rows, n)) if n else 0
    return (n, d_dim, center)


def leaf_dimension_profile(q: QStructure, points: Sequence) -> dict:
    """Per-point leaf dimension, cohomology dimensions and isotropy signature.

    ``points`` holds (tag, coordinates) pairs; points sharing a tag are
    expected to lie on one leaf and the report says whether they agree.
    """
    res = q.res
    entries = []
    by_tag: dict = {}
    for tag, pt in points:
        x = _point(res, pt)
        fc = restrict_to_point(res, x)
        leaf_dim = linalg.rank(fc.anchor, res.rank(1))
        alg = holonomy_graded_lie(q, x, check_well_defined=False)
        prof = {
            "tag": tag,
            "point": x,
            "leaf_dimension": leaf_dim,
            "cohomology": tuple(alg.dims[lv] for lv in sorted(alg.dims)),
            "signature": _lie_signature(alg),
        }
        entries.append(prof)
        by_tag.setdefault(tag, []).append((prof["leaf_dimension"], prof["cohomology"], prof["signature"]))
    consistent = {tag: len(set(v)) == 1 for tag, v in by_tag.items()}
    return {"points": entries, "consistent": consistent}

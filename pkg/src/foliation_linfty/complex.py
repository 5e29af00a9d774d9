"""Resolutions of singular foliations and their verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DifferentFoliations, DimensionMismatch, NotInImage, NotInvolutive
from .groebner import PolyMatrix, in_module, lift_preimage, syzygies
from .poly import PolyRing, VectorField, as_rational, lie_bracket


@dataclass(frozen=True)
class Resolution:
    """Geometric resolution (E, d, rho) of a singular foliation.

    ``anchor`` is the d x r_1 matrix of rho; ``differentials[k]`` is
    d^(k+2) : E_{-(k+2)} -> E_{-(k+1)} as an r_{k+1} x r_{k+2} matrix.
    ``names[k]`` labels the basis of E_{-(k+1)}.
    """

    ring: PolyRing
    anchor: PolyMatrix
    differentials: tuple
    names: tuple = ()

    def __post_init__(self):
        if self.anchor.nrows != self.ring.nvars:
            raise DimensionMismatch("anchor must have one row per coordinate")
        prev = self.anchor.ncols
        for D in self.differentials:
            if D.nrows != prev:
                raise DimensionMismatch("consecutive differentials do not compose")
            prev = D.ncols
        if not self.names:
            names = tuple(
                tuple(f"e{i + 1}_{k + 1}" for k in range(r)) for i, r in enumerate(self.ranks)
            )
            object.__setattr__(self, "names", names)

    @property
    def dim(self) -> int:
        return self.ring.nvars

    @property
    def ranks(self) -> tuple:
        return (self.anchor.ncols,) + tuple(D.ncols for D in self.differentials)

    @property
    def length(self) -> int:
        return len(self.ranks)

    def rank(self, level: int) -> int:
        return self.ranks[level - 1] if 1 <= level <= self.length else 0

    def d(self, level: int) -> PolyMatrix:
        """d^(level): E_{-level} -> E_{-(level-1)}; level 1 gives the anchor."""
        if level == 1:
            return self.anchor
        return self.differentials[level - 2]

    def generators(self) -> list[VectorField]:
        return [VectorField(self.ring, col) for col in self.anchor.columns()]


# ---------------------------------------------------------------------------
# verification


@dataclass
class ComplexReport:
    anchor_composition_zero: bool
    compositions_zero: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.anchor_composition_zero and all(self.compositions_zero)


@dataclass
class ExactnessReport:
    exact_at: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.exact_at)


def verify_complex(res: Resolution) -> ComplexReport:
    """Check rho o d^(2) = 0 and d^(i) o d^(i+1) = 0."""
    anchor_ok = True
    if res.length >= 2:
        anchor_ok = (res.anchor @ res.d(2)).is_zero()
    comps = [(res.d(i) @ res.d(i + 1)).is_zero() for i in range(2, res.length)]
    return ComplexReport(anchor_ok, comps)


def verify_exactness(res: Resolution) -> ExactnessReport:
    """Check that the kernel at each E_{-i} is spanned by the next image.

    Entry i-1 of ``exact_at`` refers to E_{-i}.  At the top degree this
    means the last differential is injective.
    """
    exact = []
    for i in range(1, res.length + 1):
        K = syzygies(res.d(i), minimal=False)
        if i == res.length:
            exact.append(K.ncols == 0)
            continue
        nxt = res.d(i + 1)
        exact.append(all(in_module(nxt, col) for col in K.columns()))
    return ExactnessReport(exact)


def involutivity_structure(gens: Sequence[VectorField]) -> dict:
    """Structure functions c with [X_i, X_j] = sum_k c_ij^k X_k.

    Returns a dict (i, j) -> tuple of coefficients for all i != j; the
    table is skew (c_ji = -c_ij) and pairs with a zero bracket are kept.
    Raises NotInvolutive when some bracket leaves the module.
    """
    gens = list(gens)
    if not gens:
        return {}
    ring = gens[0].ring
    M = PolyMatrix.from_columns(ring, ring.nvars, [tuple(g) for g in gens])
    table = {}
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            br = lie_bracket(gens[i], gens[j])
            try:
                c = lift_preimage(M, tuple(br))
            except NotInImage as exc:
                raise NotInvolutive(f"[X{i + 1}, X{j + 1}] is not in the module") from exc
            table[(i, j)] = c
            table[(j, i)] = tuple(-v for v in c)
    return table


# ---------------------------------------------------------------------------
# fibers


@dataclass
class FiberComplex:
    """The complex of vector spaces E|_x with the anchor at x."""

    point: tuple
    anchor: list  # d x r1 rational matrix
    differentials: list  # d^(i)|_x for i >= 2
    ranks: tuple

    def d(self, level):
        return self.anchor if level == 1 else self.differentials[level - 2]

    def kernel(self, level) -> list:
        M = self.d(level)
        return linalg.nullspace(M, self.ranks[level - 1])

    def image(self, level) -> list:
        """Basis of the image of d^(level+1) inside E_{-level}|_x."""
        if level >= len(self.ranks):
            return []
        D = self.d(level + 1)
        cols = linalg.transpose(D, self.ranks[level])
        return linalg.column_space_basis(cols, self.ranks[level - 1])

    def cohomology(self, level):
        """(representatives, image basis) for H^{-level}.

        Representatives are kernel vectors completing the image basis,
        chosen greedily in kernel-basis order so the choice is
        deterministic.
        """
        im = self.image(level)
        reps = []
        span = list(im)
        n = self.ranks[level - 1]
        for v in self.kernel(level):
            if not linalg.in_span(span, v, n):
                reps.append(v)
                span.append(v)
        return reps, im


def restrict_to_point(res: Resolution, point) -> FiberComplex:
    point = tuple(as_rational(v) for v in point)
    if len(point) != res.dim:
        raise DimensionMismatch(f"point has {len(point)} coordinates, base has dimension {res.dim}")
    return FiberComplex(
        point,
        res.anchor.eval(point),
        [D.eval(point) for D in res.differentials],
        res.ranks,
    )


# ---------------------------------------------------------------------------
# comparison of resolutions


@dataclass
class ChainMapPair:
    """Chain maps phi: B -> A, psi: A -> B and homotopies.

    phi[k], psi[k] act on E_{-(k+1)}; h[k] maps E_{-(k+1)} of A to
    E_{-(k+2)} of A with phi psi - id = d h + h d, and h_prime is the same
    for psi phi - id on B.
    """

    phi: list
    psi: list
    h: list
    h_prime: list
    checks: dict


def _lift_matrix(M: PolyMatrix, target: PolyMatrix, ring) -> PolyMatrix:
    cols = [lift_preimage(M, col) for col in target.columns()]
    return PolyMatrix.from_columns(ring, M.ncols, cols)


def _chain_map(src: Resolution, dst: Resolution) -> list:
    """Chain map src -> dst lifting the identity on the foliation."""
    ring = src.ring
    maps = [_lift_matrix(dst.anchor, src.anchor, ring)]
    for i in range(2, src.length + 1):
        target = maps[-1] @ src.d(i)
        if i > dst.length:
            if not target.is_zero():
                raise NotInImage("chain map does not extend past the target length")
            maps.append(PolyMatrix.zeros(ring, 0, src.rank(i)))
            continue
        maps.append(_lift_matrix(dst.d(i), target, ring))
    return maps


def _pad(maps, length, rows_of, cols_of, ring):
    out = list(maps)
    while len(out) < length:
        k = len(out) + 1
        out.append(PolyMatrix.zeros(ring, rows_of(k), cols_of(k)))
    return out


def _homotopy(res: Resolution, comp: list, ring) -> list:
    """h with comp - id = d h + h d on res, lifted degree by degree."""
    h = []
    for i in range(1, res.length + 1):
        n = res.rank(i)
        target = comp[i - 1] - PolyMatrix.identity(ring, n)
        if i >= 2:
            target = target - h[-1] @ res.d(i)
        if i == res.length:
            if not target.is_zero():
                raise NotInImage("homotopy does not close at the top degree")
            break
        h.append(_lift_matrix(res.d(i + 1), target, ring))
    return h


def _zero_pad(M: PolyMatrix, nrows, ncols, ring):
    if M.shape == (nrows, ncols):
        return M
    rows = [[M[i, j] if i < M.nrows and j < M.ncols else ring.zero for j in range(ncols)] for i in range(nrows)]
    return PolyMatrix(ring, rows, ncols)


def compare_resolutions(A: Resolution, B: Resolution) -> ChainMapPair:
    """Chain maps between two resolutions of one foliation and homotopies."""
    if A.dim != B.dim:
        raise DimensionMismatch("resolutions live on bases of different dimension")
    ring = A.ring
    for col in B.anchor.columns():
        if not in_module(A.anchor, col):
            raise DifferentFoliations("a generator of the second foliation is not in the first")
    for col in A.anchor.columns():
        if not in_module(B.anchor, col):
            raise DifferentFoliations("a generator of the first foliation is not in the second")
    phi = _chain_map(B, A)
    psi = _chain_map(A, B)
    L = max(A.length, B.length)
    phi = [_zero_pad(m, A.rank(k + 1), B.rank(k + 1), ring) for k, m in enumerate(_pad(phi, L, A.rank, B.rank, ring))]
    psi = [_zero_pad(m, B.rank(k + 1), A.rank(k + 1), ring) for k, m in enumerate(_pad(psi, L, B.rank, A.rank, ring))]
    phipsi = [phi[k] @ psi[k] for k in range(A.length)]
    psiphi = [psi[k] @ phi[k] for k in range(B.length)]
    h = _homotopy(A, phipsi, ring)
    hp = _homotopy(B, psiphi, ring)
    checks = _check_chain_data(A, B, phi, psi, h, hp)
    return ChainMapPair(phi, psi, h, hp, checks)


def _check_chain_data(A, B, phi, psi, h, hp) -> dict:
    ring = A.ring

    def chain_ok(src, dst, f):
        ok = (dst.anchor @ f[0] - src.anchor).is_zero()
        for i in range(2, src.length + 1):
            lhs = f[i - 2] @ src.d(i)
            rhs = dst.d(i) @ f[i - 1] if i <= dst.length else PolyMatrix.zeros(ring, dst.rank(i - 1), src.rank(i))
            ok = ok and (lhs - rhs).is_zero()
        return ok

    def homotopy_ok(res, f, g, hh):
        ok = True
        for i in range(1, res.length + 1):
            lhs = f[i - 1] @ g[i - 1] - PolyMatrix.identity(ring, res.rank(i))
            rhs = PolyMatrix.zeros(ring, res.rank(i), res.rank(i))
            if i < res.length:
                rhs = rhs + res.d(i + 1) @ hh[i - 1]
            if i >= 2:
                rhs = rhs + hh[i - 2] @ res.d(i)
            ok = ok and (lhs - rhs).is_zero()
        return ok

    return {
        "phi_chain_map": chain_ok(B, A, phi),
        "psi_chain_map": chain_ok(A, B, psi),
        "phi_psi_homotopic_to_id": homotopy_ok(A, phi, psi, h),
        "psi_phi_homotopic_to_id": homotopy_ok(B, psi, phi, hp),
    }

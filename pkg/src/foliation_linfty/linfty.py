"""Universal Lie infinity-algebroid of a resolved singular foliation.

Functions on the graded manifold E[1] are polynomials in the base
coordinates times words in the dual generators xi^(i)_a, where
xi^(i)_a is dual to the a-th basis element of E_{-i} and has degree i.
Odd-degree generators anticommute and square to zero.

A vertical or general vector field on E[1] is stored as a derivation:
its values on the base coordinates and on the dual generators.  The
homological vector field Q is built arity by arity:

* Q^(0) is dual to the differential of the resolution,
* Q^(1) is rho* d_dR plus the dual of the 2-bracket on E_{-1},
  corrected so that [Q^(0), Q^(1)] = 0,
* Q^(n+1) solves [Q^(0), Q^(n+1)] = -1/2 sum [Q^(i), Q^(j)].

The last two steps are solved by a lift through the bicomplex
(S^k(E*) (x) E, Q^(0) (x) id, id (x) d), done depth by depth.

Brackets are read off from Q as iterated commutators with the constant
vertical fields d/dx of sections x, projected to the zero section.
Brackets are graded symmetric of degree +1 with E_{-i} in degree -i;
on E_{-1} the 2-bracket equals the Lie bracket of the structure
functions with no extra sign.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .complex import Resolution, involutivity_structure, verify_exactness
from .errors import (
    CertificationFailure,
    DimensionMismatch,
    ExactnessFailure,
    NotInImage,
    PreconditionError,
    RootNotInKernel,
    SelfCommutatorNotVertical,
)
from .groebner import PolyMatrix, lift_preimage
from .poly import Poly, PolyRing, VectorField

Gen = tuple  # (level, index): dual generator of E_{-level}
Word = tuple  # sorted tuple of Gen


# ---------------------------------------------------------------------------
# words


@lru_cache(maxsize=None)
def word_mul(a: Word, b: Word):
    """Product of two normal-ordered words: (sign, word), sign 0 if it vanishes."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    odd_a = {g for g in a if g[0] & 1}
    for g in b:
        if g[0] & 1 and g in odd_a:
            return 0, None
    flips = 0
    for g in a:
        if g[0] & 1:
            for h in b:
                if h < g and h[0] & 1:
                    flips += 1
    return (-1 if flips & 1 else 1), tuple(sorted(a + b))


def word_degree(w: Word) -> int:
    return sum(g[0] for g in w)


# ---------------------------------------------------------------------------
# graded functions: {word: Poly}


def _gf_add(out: dict, w: Word, p: Poly):
    if not p:
        return
    q = out.get(w)
    q = p if q is None else q + p
    if q:
        out[w] = q
    else:
        out.pop(w, None)


def gf_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for w, p in b.items():
        _gf_add(out, w, p * scale if scale != 1 else p)
    return out


def gf_scale(a: dict, c) -> dict:
    return {w: p * c for w, p in a.items() if p * c}


def gf_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, p1 in a.items():
        for w2, p2 in b.items():
            s, w = word_mul(w1, w2)
            if s:
                _gf_add(out, w, p1 * p2 * s)
    return out


def gf_arity_part(a: dict, arity: int) -> dict:
    return {w: p for w, p in a.items() if len(w) == arity}


# ---------------------------------------------------------------------------
# the graded manifold E[1]


class FiberManifold:
    """Bookkeeping for the dual generators attached to a resolution."""

    def __init__(self, res: Resolution):
        self.res = res
        self.ring: PolyRing = res.ring
        self.ranks = res.ranks
        self.length = res.length
        self.generators = [(i + 1, a) for i, r in enumerate(self.ranks) for a in range(r)]

    def level_gens(self, level: int) -> list:
        return [(level, a) for a in range(self.res.rank(level))]

    def gen_name(self, g: Gen) -> str:
        return self.res.names[g[0] - 1][g[1]]

    def words(self, arity: int, degree: int) -> list:
        """All normal-ordered words with the given arity and degree."""
        gens = self.generators
        out = []

        def rec(start, left, deg, acc):
            if left == 0:
                if deg == degree:
                    out.append(tuple(acc))
                return
            for k in range(start, len(gens)):
                g = gens[k]
                if deg + g[0] * left > degree:
                    break
                nxt = k + 1 if g[0] & 1 else k
                acc.append(g)
                rec(nxt, left - 1, deg + g[0], acc)
                acc.pop()

        rec(0, arity, 0, [])
        return out


class Derivation:
    """A derivation of functions on E[1] of fixed degree.

    ``base[m]`` is the value on the m-th base coordinate and ``fiber[g]``
    the value on the dual generator g, both as {word: Poly}.  Zero values
    are omitted.  Sums of different arities are allowed; ``arity`` is the
    common arity when the derivation is homogeneous.
    """

    __slots__ = ("mfd", "degree", "base", "fiber")

    def __init__(self, mfd: FiberManifold, degree: int, base=None, fiber=None):
        self.mfd = mfd
        self.degree = degree
        self.base = {m: v for m, v in (base or {}).items() if v}
        self.fiber = {g: v for g, v in (fiber or {}).items() if v}

    # structure
    def is_zero(self) -> bool:
        return not self.base and not self.fiber

    def is_vertical(self) -> bool:
        return not self.base

    def arities(self) -> set:
        out = set()
        for v in self.base.values():
            out.update(len(w) for w in v)
        for v in self.fiber.values():
            out.update(len(w) - 1 for w in v)
        return out

    @property
    def arity(self):
        a = self.arities()
        if len(a) > 1:
            return None
        return next(iter(a)) if a else 0

    def component(self, arity: int) -> "Derivation":
        return Derivation(
            self.mfd,
            self.degree,
            {m: gf_arity_part(v, arity) for m, v in self.base.items()},
            {g: gf_arity_part(v, arity + 1) for g, v in self.fiber.items()},
        )

    def depth_component(self, level: int) -> dict:
        """The values on the level-`level` dual generators."""
        return {g: v for g, v in self.fiber.items() if g[0] == level}

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.base == other.base and self.fiber == other.fiber

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise DimensionMismatch("adding derivations of different degrees")
        base = dict(self.base)
        for m, v in other.base.items():
            base[m] = gf_add(base.get(m, {}), v)
        fiber = dict(self.fiber)
        for g, v in other.fiber.items():
            fiber[g] = gf_add(fiber.get(g, {}), v)
        return Derivation(self.mfd, self.degree, base, fiber)

    def scale(self, c) -> "Derivation":
        return Derivation(
            self.mfd,
            self.degree,
            {m: gf_scale(v, c) for m, v in self.base.items()},
            {g: gf_scale(v, c) for g, v in self.fiber.items()},
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    # action
    def __call__(self, F: dict) -> dict:
        """Apply the derivation to a graded function {word: Poly}."""
        out: dict = {}
        k = self.degree
        base, fiber = self.base, self.fiber
        nvars = self.mfd.ring.nvars
        for w, p in F.items():
            if base:
                for m in range(nvars):
                    vm = base.get(m)
                    if not vm:
                        continue
                    dp = p.diff(m)
                    if not dp:
                        continue
                    for u, q in vm.items():
                        s, ww = word_mul(u, w)
                        if s:
                            _gf_add(out, ww, q * dp * s)
            if not fiber:
                continue
            prefix_deg = 0
            for t, g in enumerate(w):
                Dg = fiber.get(g)
                if Dg:
                    sign = -1 if (k * prefix_deg) & 1 else 1
                    prefix, suffix = w[:t], w[t + 1 :]
                    for u, q in Dg.items():
                        s1, w1 = word_mul(prefix, u)
                        if not s1:
                            continue
                        s2, w2 = word_mul(w1, suffix)
                        if s2:
                            _gf_add(out, w2, q * p * (sign * s1 * s2))
                prefix_deg += g[0]
        return out

    def on_poly(self, p: Poly) -> dict:
        return self({(): p}) if p else {}

    def __repr__(self):
        return f"Derivation(degree={self.degree}, arity={self.arity}, base={len(self.base)}, fiber={len(self.fiber)})"


def commutator(A: Derivation, B: Derivation) -> Derivation:
    """Graded commutator [A, B] = A o B - (-1)^{|A||B|} B o A."""
    sign = -1 if (A.degree * B.degree) & 1 else 1
    base = {}
    for m in set(A.base) | set(B.base):
        v = gf_add(A(B.base.get(m, {})), B(A.base.get(m, {})), scale=-sign)
        if v:
            base[m] = v
    fiber = {}
    for g in set(A.fiber) | set(B.fiber):
        v = gf_add(A(B.fiber.get(g, {})), B(A.fiber.get(g, {})), scale=-sign)
        if v:
            fiber[g] = v
    return Derivation(A.mfd, A.degree + B.degree, dict(sorted(base.items())), dict(sorted(fiber.items())))


# ---------------------------------------------------------------------------
# sections of E


@dataclass(frozen=True)
class Section:
    """A section of E_{-level}: one polynomial per basis element."""

    level: int
    components: tuple

    @property
    def degree(self) -> int:
        return -self.level

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def eval(self, point) -> tuple:
        return tuple(c.eval(point) for c in self.components)


def constant_section(mfd: FiberManifold, level: int, coeffs) -> Section:
    ring = mfd.ring
    return Section(level, tuple(ring.coerce(c) for c in coeffs))


def basis_section(mfd: FiberManifold, g: Gen) -> Section:
    ring = mfd.ring
    r = mfd.res.rank(g[0])
    return Section(g[0], tuple(ring.one if a == g[1] else ring.zero for a in range(r)))


def contraction(mfd: FiberManifold, x: Section) -> Derivation:
    """The constant vertical vector field d/dx: xi^(i)_a -> x_a."""
    fiber = {(x.level, a): {(): c} for a, c in enumerate(x.components) if c}
    return Derivation(mfd, -x.level, {}, fiber)


# ---------------------------------------------------------------------------
# Q^(0) and the bicomplex lift


def q0_derivation(mfd: FiberManifold) -> Derivation:
    """Arity-0 part of Q: <Q0 u, xi> = (-1)^(j-1) <u, d^(j) xi> on E_{-j}."""
    res = mfd.res
    fiber = {}
    for p in range(1, res.length):
        D = res.d(p + 1)
        sign = -1 if p & 1 else 1
        for a in range(D.nrows):
            v = {}
            for b in range(D.ncols):
                if D[a, b]:
                    v[((p + 1, b),)] = D[a, b] * sign
            if v:
                fiber[(p, a)] = v
    return Derivation(mfd, 1, {}, fiber)


def build_Q0(res: Resolution) -> Derivation:
    """Q^(0) of a resolution."""
    return q0_derivation(FiberManifold(res))


def _words_in(vectors) -> list:
    seen = {}
    for v in vectors:
        for w in v:
            seen[w] = None
    return sorted(seen)


def bicomplex_lift(q0: Derivation, V: Derivation, check: bool = True) -> Derivation:
    """Return W with no depth-1 component such that [Q0, W] = -V.

    V must be vertical and Q0-closed.  Its depth-1 component (values on
    the E_{-1} duals) must be killed by the anchor; the lift then climbs
    one depth at a time, solving d^(p+1) W_{p+1} = +-(V_p + Q0 W_p).
    """
    mfd = q0.mfd
    res = mfd.res
    ring = mfd.ring
    if not V.is_vertical():
        raise PreconditionError("bicomplex_lift needs a vertical derivation")
    kW = V.degree - 1
    W_fiber: dict = {}
    for p in range(1, res.length + 1):
        gens_p = mfd.level_gens(p)
        rhs = []
        for g in gens_p:
            v = dict(V.fiber.get(g, {}))
            Wg = W_fiber.get(g)
            if Wg:
                v = gf_add(v, q0(Wg))
            rhs.append(v)
        if p == 1:
            for w in _words_in(rhs):
                col = tuple(v.get(w, ring.zero) for v in rhs)
                if any(res.anchor.apply(col)):
                    raise RootNotInKernel("the depth-1 component is not in the kernel of the anchor")
        if not any(rhs):
            continue
        if p == res.length:
            raise ExactnessFailure(f"nonzero obstruction at the top degree {p}")
        sign = -1 if (kW + p) & 1 else 1
        D = res.d(p + 1)
        nxt = {}
        for w in _words_in(rhs):
            col = tuple(v.get(w, ring.zero) for v in rhs)
            if not any(col):
                continue
            try:
                u = lift_preimage(D, col)
            except NotInImage as exc:
                kind = RootNotInKernel if p == 1 else ExactnessFailure
                raise kind(f"cannot lift through d^({p + 1}) at depth {p}") from exc
            for b, c in enumerate(u):
                if c:
                    nxt.setdefault((p + 1, b), {})[w] = c * sign
        W_fiber.update(nxt)
    W = Derivation(mfd, kW, {}, W_fiber)
    if check and not (commutator(q0, W) + V).is_zero():
        raise CertificationFailure("bicomplex lift does not satisfy [Q0, W] = -V")
    return W


# ---------------------------------------------------------------------------
# construction of Q


def build_arity1_seed(mfd: FiberManifold, structure: dict) -> Derivation:
    """rho* d_dR on functions plus the dual of the 2-bracket on E_{-1}.

    ``structure[(i, j)]`` holds the coefficients of [X_i, X_j] in the
    generators.  The symmetric bracket {e_i, e_j} is sum_k c_ij^k e_k.
    """
    res = mfd.res
    base = {}
    for m in range(mfd.ring.nvars):
        v = {}
        for a in range(res.rank(1)):
            f = res.anchor[m, a]
            if f:
                v[((1, a),)] = f
        if v:
            base[m] = v
    fiber = {}
    r1 = res.rank(1)
    for i in range(r1):
        for j in range(i + 1, r1):
            c = structure.get((i, j))
            if c is None:
                continue
            cs = [(c[k] - structure.get((j, i), tuple(-v for v in c))[k]) * Fraction(1, 2) for k in range(r1)]
            for k, ck in enumerate(cs):
                if ck:
                    fiber.setdefault((1, k), {})[((1, i), (1, j))] = -ck
    return Derivation(mfd, 1, base, fiber)


@dataclass
class QStructure:
    """The homological vector field Q = Q^(0) + Q^(1) + ... on E[1]."""

    mfd: FiberManifold
    components: list
    structure: dict
    residuals: dict = field(default_factory=dict)

    @property
    def res(self) -> Resolution:
        return self.mfd.res

    @property
    def total(self) -> Derivation:
        out = self.components[0]
        for c in self.components[1:]:
            out = out + c
        return out

    def component(self, n: int) -> Derivation:
        if 0 <= n < len(self.components):
            return self.components[n]
        return Derivation(self.mfd, 1)

    @property
    def certified(self) -> bool:
        return bool(self.residuals) and all(self.residuals.values())

    def max_arity(self) -> int:
        """Largest n with Q^(n) nonzero."""
        return max((n for n, c in enumerate(self.components) if not c.is_zero()), default=0)


def self_commutator_by_arity(components: Sequence[Derivation]) -> dict:
    """{n: [Q,Q] restricted to arity n} for Q = sum of the components."""
    out = {}
    N = len(components)
    for n in range(0, 2 * N - 1):
        total = None
        for i in range(N):
            j = n - i
            if j < i or j >= N:
                continue
            if components[i].is_zero() or components[j].is_zero():
                continue
            c = commutator(components[i], components[j])
            if i != j:
                c = c.scale(2)
            total = c if total is None else total + c
        out[n] = total if total is not None else Derivation(components[0].mfd, 2)
    return out


def certify(q: QStructure) -> dict:
    """Evaluate [Q,Q] arity by arity; returns {arity: is_zero}."""
    sq = self_commutator_by_arity(q.components)
    q.residuals = {n: d.is_zero() for n, d in sq.items()}
    return q.residuals


def build_universal_q(res: Resolution, structure: dict | None = None, check_exact: bool = True) -> QStructure:
    """Construct and certify the universal Q of a resolution."""
    if check_exact:
        rep = verify_exactness(res)
        if not rep.ok:
            raise PreconditionError("the resolution is not exact")
    if structure is None:
        structure = involutivity_structure(res.generators())
    mfd = FiberManifold(res)
    q0 = q0_derivation(mfd)
    X = build_arity1_seed(mfd, structure)
    obstruction = commutator(q0, X)
    if not obstruction.is_vertical():
        raise SelfCommutatorNotVertical("[Q0, X] has a horizontal part")
    Y = bicomplex_lift(q0, obstruction)
    comps = [q0, X + Y]
    ell = res.length
    for m in range(2, ell + 2):
        D = None
        for i in range(1, m):
            j = m - i
            if j < i:
                continue
            c = commutator(comps[i], comps[j])
            if i != j:
                c = c.scale(2)
            D = c if D is None else D + c
        if not D.is_vertical():
            raise SelfCommutatorNotVertical(f"sum of [Q^(i), Q^(j)] in arity {m} is not vertical")
        Qm = bicomplex_lift(q0, D.scale(Fraction(1, 2)))
        if m > ell and not Qm.is_zero():
            raise CertificationFailure(f"unexpected component of arity {m}")
        comps.append(Qm)
    while len(comps) > 2 and comps[-1].is_zero():
        comps.pop()
    q = QStructure(mfd, comps, structure)
    certify(q)
    if not q.certified:
        bad = [n for n, ok in q.residuals.items() if not ok]
        raise CertificationFailure(f"[Q,Q] does not vanish in arities {bad}")
    return q


# ---------------------------------------------------------------------------
# brackets


def zero_section(mfd: FiberManifold, level: int) -> Section:
    return Section(level, tuple(mfd.ring.zero for _ in range(mfd.res.rank(level))))


def extract_bracket(q: QStructure, args: Sequence[Section]) -> Section:
    """n-ary bracket {x_1, ..., x_n}: project [...[Q, d/dx_1], ..., d/dx_n]."""
    mfd = q.mfd
    n = len(args)
    if n == 0:
        raise DimensionMismatch("a bracket needs at least one argument")
    for x in args:
        if len(x.components) != mfd.res.rank(x.level):
            raise DimensionMismatch(f"section of level {x.level} has the wrong number of components")
    target = sum(x.level for x in args) - 1
    if target < 1 or target > mfd.length:
        return Section(target, ())
    R = q.component(n - 1)
    for x in args:
        if R.is_zero():
            break
        R = commutator(R, contraction(mfd, x))
    ring = mfd.ring
    comps = []
    for a in range(mfd.res.rank(target)):
        v = R.fiber.get((target, a), {})
        comps.append(v.get((), ring.zero))
    return Section(target, tuple(comps))


def anchor_of(q: QStructure, x: Section) -> VectorField:
    """rho(x) for x in E_{-1}; the zero field for deeper sections."""
    ring = q.mfd.ring
    if x.level != 1:
        return VectorField(ring, [ring.zero] * ring.nvars)
    return VectorField(ring, q.res.anchor.apply(x.components))


def _koszul_sign(degrees, order) -> int:
    """Sign for moving graded items into the given order."""
    s = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                s += degrees[order[a]] * degrees[order[b]]
    return -1 if s & 1 else 1


def jacobiator(q: QStructure, args: Sequence[Section]) -> Section:
    """Sum over unshuffles of eps(sigma) {{x_sigma(1..i)}, x_sigma(i+1..n)}."""
    mfd = q.mfd
    n = len(args)
    degrees = [x.degree for x in args]
    target = sum(x.level for x in args) - 2
    ring = mfd.ring
    if target < 1 or target > mfd.length:
        return Section(target, ())
    acc = [ring.zero] * mfd.res.rank(target)
    for i in range(1, n + 1):
        for S in itertools.combinations(range(n), i):
            rest = [k for k in range(n) if k not in S]
            order = list(S) + rest
            eps = _koszul_sign(degrees, order)
            inner = extract_bracket(q, [args[k] for k in S])
            if not inner.components or inner.is_zero():
                continue
            outer = extract_bracket(q, [inner] + [args[k] for k in rest])
            if not outer.components:
                continue
            acc = [a + c * eps for a, c in zip(acc, outer.components)]
    return Section(target, tuple(acc))


def random_poly(ring: PolyRing, rng: random.Random, max_degree: int = 1, terms: int = 2, coeff: int = 3) -> Poly:
    out = ring.zero
    for _ in range(rng.randint(0, terms)):
        exp = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            exp[rng.randrange(ring.nvars)] += 1
        out = out + ring.monomial(exp, rng.randint(-coeff, coeff))
    return out


def random_section(mfd: FiberManifold, level: int, rng: random.Random, max_degree: int = 1) -> Section:
    return Section(level, tuple(random_poly(mfd.ring, rng, max_degree) for _ in range(mfd.res.rank(level))))


@dataclass
class JacobiReport:
    samples: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_jacobi_direct(q: QStructure, arities=None, samples: int = 100, seed: int = 0, max_degree: int = 1) -> JacobiReport:
    """Check the higher Jacobi identities on random tuples of sections.

    For each sample an arity n is drawn from ``arities`` (default
    2..length+1) and levels are drawn so that the identity lands in a
    nonzero degree.  Failures are returned as (levels, residual).
    """
    mfd = q.mfd
    rng = random.Random(seed)
    if arities is None:
        arities = range(2, mfd.length + 2)
    arities = list(arities)
    choices = {}
    for n in arities:
        tuples = [
            lv
            for lv in itertools.product(range(1, mfd.length + 1), repeat=n)
            if 1 <= sum(lv) - 2 <= mfd.length and list(lv) == sorted(lv)
        ]
        if tuples:
            choices[n] = tuples
    failures = []
    count = 0
    if not choices:
        return JacobiReport(0, [])
    keys = sorted(choices)
    for s in range(samples):
        n = keys[s % len(keys)]
        levels = list(rng.choice(choices[n]))
        rng.shuffle(levels)
        args = [random_section(mfd, lv, rng, max_degree) for lv in levels]
        J = jacobiator(q, args)
        count += 1
        if not J.is_zero():
            failures.append((tuple(levels), J))
    return JacobiReport(count, failures)


def bracket_table(q: QStructure, max_arity: int | None = None) -> dict:
    """Nonzero brackets of basis sections.

    Keys are tuples of generator labels in normal order, values the
    output section.  Odd-degree labels do not repeat.
    """
    mfd = q.mfd
    if max_arity is None:
        max_arity = mfd.length + 1
    table = {}
    gens = mfd.generators
    for n in range(2, max_arity + 1):
        for combo in itertools.combinations_with_replacement(gens, n):
            if any(combo[k] == combo[k + 1] and combo[k][0] & 1 for k in range(n - 1)):
                continue
            target = sum(g[0] for g in combo) - 1
            if target < 1 or target > mfd.length:
                continue
            out = extract_bracket(q, [basis_section(mfd, g) for g in combo])
            if not out.is_zero():
                table[combo] = out
    return table


# ---------------------------------------------------------------------------
# random vertical derivations (test and demo helper)


def random_vertical(mfd: FiberManifold, arity: int, degree: int, rng: random.Random, min_depth: int = 1, max_degree: int = 1, density: float = 0.5) -> Derivation:
    fiber = {}
    for g in mfd.generators:
        if g[0] < min_depth:
            continue
        v = {}
        for w in mfd.words(arity + 1, g[0] + degree):
            if rng.random() < density:
                p = random_poly(mfd.ring, rng, max_degree)
                if p:
                    v[w] = p
        if v:
            fiber[g] = v
    return Derivation(mfd, degree, {}, fiber)


# ---------------------------------------------------------------------------
# the Leibniz algebroid of degree -1 vertical fields


def leibniz_bracket(q: QStructure, X: Derivation, Y: Derivation) -> Derivation:
    """Derived bracket [[Q, X], Y] of two degree -1 vertical fields."""
    for Z in (X, Y):
        if Z.degree != -1 or not Z.is_vertical():
            raise DimensionMismatch("Leibniz bracket takes vertical fields of degree -1")
    return commutator(commutator(q.total, X), Y)


def leibniz_anchor(q: QStructure, X: Derivation) -> VectorField:
    """Anchor of the Leibniz algebroid: project to E_{-1}, then rho."""
    ring = q.mfd.ring
    comps = tuple(X.fiber.get((1, a), {}).get((), ring.zero) for a in range(q.res.rank(1)))
    return VectorField(ring, q.res.anchor.apply(comps))

"""Gröbner bases for submodules of free modules over Q[x].

Module order: position over term.  A lower component index dominates;
inside one component monomials compare in grevlex.

Transformations are tracked by running Buchberger's algorithm on the
augmented vectors (g_j, e_j) in F^r + F^s, with the r module components
placed first.  Elements whose leading term sits in the first r components
give a Gröbner basis of the module together with their expression in the
generators; the elements living entirely in the last s components give a
Gröbner basis of the syzygy module.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch, LengthExceeded, NotInImage
from .poly import Poly, PolyRing, grevlex_key

# ---------------------------------------------------------------------------
# polynomial matrices


class PolyMatrix:
    """Immutable matrix of polynomials.  Columns are module elements."""

    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence], ncols: int | None = None):
        self.ring = ring
        self.rows = tuple(tuple(ring.coerce(v) for v in row) for row in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise DimensionMismatch("ragged polynomial matrix")
        self.ncols = ncols
        self._hash = None

    @classmethod
    def from_columns(cls, ring: PolyRing, nrows: int, columns: Sequence[Sequence]) -> "PolyMatrix":
        cols = [tuple(c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch(f"column of length {len(c)} in a matrix with {nrows} rows")
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
        return cls(ring, rows, len(cols))

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, other.ncols)

    def apply(self, vec: Sequence[Poly]) -> tuple:
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for a matrix with {self.ncols} columns")
        zero = self.ring.zero
        out = []
        for row in self.rows:
            acc = zero
            for a, v in zip(row, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def __add__(self, other):
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def is_zero(self) -> bool:
        return all(not v for row in self.rows for v in row)

    def eval(self, point) -> list[list[Fraction]]:
        return [[v.eval(point) for v in row] for row in self.rows]

    def drop(self, rows=(), cols=()) -> "PolyMatrix":
        keep_c = [j for j in range(self.ncols) if j not in set(cols)]
        new = [[r[j] for j in keep_c] for i, r in enumerate(self.rows) if i not in set(rows)]
        return PolyMatrix(self.ring, new, len(keep_c))

    def max_degree(self) -> int:
        return max((v.degree() for row in self.rows for v in row), default=-1)

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in row) for row in self.rows)
        return f"PolyMatrix({self.nrows}x{self.ncols}: [{body}])"


# ---------------------------------------------------------------------------
# sparse module vectors: {(position, monomial): coefficient}


def _term_key(t):
    return (-t[0], grevlex_key(t[1]))


def _to_vec(column: Sequence[Poly], offset: int = 0) -> dict:
    return {(i + offset, m): c for i, p in enumerate(column) for m, c in p.terms.items()}


def _from_vec(vec: dict, ring: PolyRing, length: int, offset: int = 0) -> tuple:
    parts = [dict() for _ in range(length)]
    for (pos, m), c in vec.items():
        parts[pos - offset][m] = c
    return tuple(Poly(ring, p) for p in parts)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _axpy(target: dict, coeff: Fraction, mon: tuple, vec: dict):
    """target -= coeff * x^mon * vec, in place."""
    for (pos, m), c in vec.items():
        key = (pos, tuple(x + y for x, y in zip(m, mon)))
        v = target.get(key, 0) - coeff * c
        if v:
            target[key] = v
        else:
            target.pop(key, None)


class _Elem:
    __slots__ = ("vec", "pos", "mon", "lc")

    def __init__(self, vec):
        self.vec = vec
        lead = max(vec, key=_term_key)
        self.pos, self.mon = lead
        self.lc = vec[lead]


def _find_reducer(basis, pos, mon, skip=None):
    for k, g in enumerate(basis):
        if k != skip and g.pos == pos and _divides(g.mon, mon):
            return k
    return None


def _reduce(vec: dict, basis: list, full: bool = True, skip=None, record=None) -> dict:
    """Reduce ``vec`` by ``basis``; returns the remainder.

    ``record`` (a list) receives (index, monomial, coefficient) for every
    reduction step so callers can rebuild quotients.
    """
    v = dict(vec)
    rem = {}
    while v:
        t = max(v, key=_term_key)
        c = v[t]
        k = _find_reducer(basis, t[0], t[1], skip)
        if k is None:
            if not full:
                rem.update(v)
                return rem
            rem[t] = c
            del v[t]
            continue
        g = basis[k]
        coeff = c / g.lc
        q = _mono_quot(t[1], g.mon)
        _axpy(v, coeff, q, g.vec)
        if record is not None:
            record.append((k, q, coeff))
    return rem


def _buchberger(vectors: list[dict]) -> list[_Elem]:
    basis: list[_Elem] = []
    pending = set()
    heap = []

    def add(elem):
        t = len(basis)
        basis.append(elem)
        for i, g in enumerate(basis[:-1]):
            if g.pos == elem.pos:
                L = _lcm(g.mon, elem.mon)
                pending.add((i, t))
                heapq.heappush(heap, (sum(L), i, t))

    for v in vectors:
        if v:
            add(_Elem(v))

    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        gi, gj = basis[i], basis[j]
        L = _lcm(gi.mon, gj.mon)
        # chain criterion
        chained = False
        for k, gk in enumerate(basis):
            if k in (i, j) or gk.pos != gi.pos or not _divides(gk.mon, L):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chained = True
                break
        if chained:
            continue
        s = {}
        _axpy(s, -1 / gi.lc, _mono_quot(L, gi.mon), gi.vec)
        _axpy(s, 1 / gj.lc, _mono_quot(L, gj.mon), gj.vec)
        r = _reduce(s, basis, full=False)
        if r:
            add(_Elem(r))
    return _interreduce(basis)


def _interreduce(basis: list[_Elem]) -> list[_Elem]:
    keep = []
    for k, g in enumerate(basis):
        redundant = False
        for l, h in enumerate(basis):
            if l == k or h.pos != g.pos or not _divides(h.mon, g.mon):
                continue
            if h.mon != g.mon or l < k:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for k, g in enumerate(keep):
        r = _reduce(g.vec, keep, full=True, skip=k)
        e = _Elem(r)
        inv = 1 / e.lc
        out.append(_Elem({t: c * inv for t, c in r.items()}))
    # tail reduction with the updated elements keeps leading terms fixed
    return out


# ---------------------------------------------------------------------------
# public interface


class GroebnerBasis:
    """Reduced Gröbner basis of the column module of a matrix.

    ``elements`` are module vectors (tuples of Poly); ``transforms[k]``
    expresses ``elements[k]`` as a combination of the original columns.
    ``syzygy_basis`` is a Gröbner basis of the relations between the
    columns.
    """

    def __init__(self, ring, rank, ngens, elems, syz):
        self.ring = ring
        self.rank = rank
        self.ngens = ngens
        self._elems = elems
        self.elements = [_from_vec({t: c for t, c in e.vec.items() if t[0] < rank}, ring, rank) for e in elems]
        self.transforms = [
            _from_vec({t: c for t, c in e.vec.items() if t[0] >= rank}, ring, ngens, rank) for e in elems
        ]
        self.syzygy_basis = [_from_vec(e.vec, ring, ngens, rank) for e in syz]
        self._plain = [_Elem({t: c for t, c in e.vec.items() if t[0] < rank}) for e in elems]
        self._trans = [{t: c for t, c in e.vec.items() if t[0] >= rank} for e in elems]

    def __len__(self):
        return len(self.elements)

    def reduce(self, vec: Sequence[Poly]):
        """Full reduction.  Returns (remainder, u) with vec = M u + remainder."""
        if len(vec) != self.rank:
            raise DimensionMismatch(f"vector of length {len(vec)} for a module of rank {self.rank}")
        record = []
        rem = _reduce(_to_vec(vec), self._plain, full=True, record=record)
        u: dict = {}
        for k, q, coeff in record:
            _axpy(u, -coeff, q, self._trans[k])
        return _from_vec(rem, self.ring, self.rank), _from_vec(u, self.ring, self.ngens, self.rank)

    def normal_form(self, vec):
        return self.reduce(vec)[0]

    def contains(self, vec) -> bool:
        return all(not p for p in self.normal_form(vec))


def _ring_of(M):
    return M.ring


@lru_cache(maxsize=512)
def _column_gb(M: PolyMatrix) -> GroebnerBasis:
    r, s = M.nrows, M.ncols
    ring = M.ring
    vectors = []
    for j, col in enumerate(M.columns()):
        v = _to_vec(col)
        v[(r + j, ring.zero_exp)] = Fraction(1)
        vectors.append(v)
    elems = _buchberger(vectors)
    mod = [e for e in elems if e.pos < r]
    syz = [e for e in elems if e.pos >= r]
    return GroebnerBasis(ring, r, s, mod, syz)


def groebner_basis(M: PolyMatrix) -> GroebnerBasis:
    """Reduced Gröbner basis of the module spanned by the columns of M."""
    return _column_gb(M)


def normal_form(vec: Sequence[Poly], gb: GroebnerBasis) -> tuple:
    return gb.normal_form(vec)


def in_module(M: PolyMatrix, vec) -> bool:
    if M.ncols == 0:
        return all(not p for p in vec)
    return groebner_basis(M).contains(vec)


def lift_preimage(M: PolyMatrix, target: Sequence[Poly]) -> tuple:
    """Return u with M u = target, or raise NotInImage."""
    target = tuple(M.ring.coerce(t) for t in target)
    if len(target) != M.nrows:
        raise DimensionMismatch(f"target of length {len(target)} for a matrix with {M.nrows} rows")
    if M.ncols == 0:
        if any(target):
            raise NotInImage("target is nonzero but the matrix has no columns")
        return ()
    rem, u = groebner_basis(M).reduce(target)
    if any(rem):
        raise NotInImage("target is not in the column module: remainder " + ", ".join(str(p) for p in rem))
    return u


def _prune(columns: list[tuple], ring, nrows) -> list[tuple]:
    """Drop generators that lie in the module spanned by the others."""
    cols = [c for c in columns if any(c)]
    j = len(cols) - 1
    while j >= 0 and len(cols) > 1:
        others = cols[:j] + cols[j + 1 :]
        if in_module(PolyMatrix.from_columns(ring, nrows, others), cols[j]):
            cols = others
        j -= 1
    return cols


def syzygies(M: PolyMatrix, minimal: bool = True) -> PolyMatrix:
    """Matrix whose columns generate the kernel of M : F^s -> F^r."""
    ring = M.ring
    if M.ncols == 0:
        return PolyMatrix.zeros(ring, 0, 0)
    gens = groebner_basis(M).syzygy_basis
    if minimal:
        gens = _prune(gens, ring, M.ncols)
    return PolyMatrix.from_columns(ring, M.ncols, gens)


def _trim_units(diffs: list[PolyMatrix], names: list[list[str]]):
    """Cancel pairs joined by a constant unit entry in d^(i), i >= 3."""
    changed = True
    while changed:
        changed = False
        for k in range(1, len(diffs)):
            D = diffs[k]
            hit = None
            for a in range(D.nrows):
                for c in range(D.ncols):
                    v = D[a, c]
                    if v and v.is_constant():
                        hit = (a, c)
                        break
                if hit:
                    break
            if hit is None:
                continue
            a, c = hit
            u = D[a, c].constant_term()
            new_rows = []
            for i in range(D.nrows):
                if i == a:
                    continue
                new_rows.append([D[i, j] - D[i, c] * D[a, j] * (1 / u) for j in range(D.ncols) if j != c])
            diffs[k] = PolyMatrix(D.ring, new_rows, D.ncols - 1)
            diffs[k - 1] = diffs[k - 1].drop(cols=[a])
            if k + 1 < len(diffs):
                diffs[k + 1] = diffs[k + 1].drop(rows=[c])
            del names[k][a]
            del names[k + 1][c]
            changed = True
            break
    while diffs and diffs[-1].ncols == 0:
        diffs.pop()
        names.pop()


def build_resolution(gens, max_length: int | None = None, names=None):
    """Free resolution of the module generated by polynomial vector fields.

    E_{-1} has one basis element per generator and the anchor columns are
    the generators themselves.  Each d^(i+1) has as columns a generating
    set of the kernel of d^(i), found from the syzygy part of a Gröbner
    basis and pruned to a minimal generating set.
    """
    from .complex import Resolution

    gens = list(gens)
    if not gens:
        raise DimensionMismatch("at least one generator is required")
    ring = gens[0].ring
    d = ring.nvars
    if max_length is None:
        max_length = d + 1
    anchor = PolyMatrix.from_columns(ring, d, [tuple(g) for g in gens])
    level_names = [list(names) if names else [f"e{k + 1}" for k in range(len(gens))]]
    diffs: list[PolyMatrix] = []
    current = anchor
    while True:
        S = syzygies(current)
        if S.ncols == 0:
            break
        if len(diffs) + 2 > max_length:
            raise LengthExceeded(f"resolution is longer than {max_length}")
        level = len(diffs) + 2
        diffs.append(S)
        level_names.append([f"s{level}_{k + 1}" for k in range(S.ncols)])
        current = S
    if diffs:
        _trim_units(diffs, level_names)
    return Resolution(ring, anchor, tuple(diffs), tuple(tuple(n) for n in level_names))

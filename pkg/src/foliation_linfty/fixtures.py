"""Named example foliations used by the tests, the demos and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .complex import Resolution
from .errors import DimensionMismatch, ParseError, PreconditionError
from .groebner import PolyMatrix, build_resolution
from .poly import Multivector, PolyRing, VectorField, differential, interior_product


@dataclass
class FoliationSpec:
    """Generators of a foliation plus optional sample points and options."""

    name: str
    ring: PolyRing
    generators: list
    names: list
    points: list = field(default_factory=list)  # (tag, coordinates)
    options: dict = field(default_factory=dict)
    resolution: Resolution | None = None  # explicit resolution, if known

    def resolve(self, max_length=None) -> Resolution:
        if self.resolution is not None:
            return self.resolution
        if max_length is None:
            max_length = self.options.get("max_length")
        if not self.generators:
            # the zero foliation: E_{-1} = 0
            return Resolution(self.ring, PolyMatrix.zeros(self.ring, self.ring.nvars, 0), (), ((),))
        return build_resolution(self.generators, max_length=max_length, names=self.names)


def sl2() -> FoliationSpec:
    """Linear action of sl2 on the plane."""
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    e = VectorField(R, [0, x])
    f = VectorField(R, [y, 0])
    h = VectorField(R, [x, -y])
    spec = FoliationSpec("sl2", R, [e, f, h], ["e", "f", "h"], [("origin", (0, 0)), ("regular", (1, 0))])
    return spec


def coordinate_field(dim: int = 2, direction: str = "x") -> FoliationSpec:
    """The regular foliation spanned by a single coordinate field."""
    names = ["x", "y", "z", "w"][:dim] if dim <= 4 else [f"x{i + 1}" for i in range(dim)]
    if direction not in names:
        raise PreconditionError(f"unknown direction {direction!r}")
    R = PolyRing(names)
    comps = [R.one if n == direction else R.zero for n in names]
    origin = tuple(0 for _ in range(dim))
    other = tuple(1 for _ in range(dim))
    return FoliationSpec("dx", R, [VectorField(R, comps)], [f"d{direction}"], [("origin", origin), ("regular", other)])


def sl2_augmented() -> FoliationSpec:
    """sl2 with one extra generator anchored to zero.

    Its resolution differs from the minimal one by a contractible pair
    E_{-1} <- E_{-2} joined by the identity.
    """
    base = sl2()
    R = base.ring
    zero = VectorField(R, [0, 0])
    return FoliationSpec(
        "sl2_augmented", R, base.generators + [zero], base.names + ["u"], list(base.points)
    )


def _monomials_of_degree(nvars, k):
    out = []
    for combo in combinations_with_replacement(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def vanishing_order(k: int = 2, direction: str = "x", full: bool = False, dim: int = 2) -> FoliationSpec:
    """Vector fields vanishing to order k at the origin.

    With ``full`` every coordinate direction is included; otherwise only
    monomials of degree k times the chosen coordinate field.
    """
    names = ["x", "y", "z", "w"][:dim] if dim <= 4 else [f"x{i + 1}" for i in range(dim)]
    R = PolyRing(names)
    mons = _monomials_of_degree(dim, k)
    mons.sort(key=lambda m: tuple(-v for v in m))
    if full:
        dirs = list(range(dim))
    else:
        if direction not in names:
            raise PreconditionError(f"unknown direction {direction!r}")
        dirs = [names.index(direction)]
    gens, gnames = [], []
    letters = "efghij"
    for di, d in enumerate(dirs):
        for m in mons:
            comps = [R.zero] * dim
            comps[d] = R.monomial(m)
            gens.append(VectorField(R, comps))
            label = "".join(f"{n}{e if e > 1 else ''}" for n, e in zip(names, m) if e)
            gnames.append(f"{letters[di]}_{label}")
    origin = tuple(0 for _ in range(dim))
    regular = tuple(1 for _ in range(dim))
    tag = "vanishing_order_full" if full else "vanishing_order"
    return FoliationSpec(tag, R, gens, gnames, [("origin", origin), ("regular", regular)])


def koszul_resolution(S_text: str = "x^2+y^2", dim: int = 2) -> tuple:
    """Koszul data of S: E_{-i} = wedge^{i+1}, d and rho contraction with dS."""
    names = ["x", "y", "z", "w"][:dim] if dim <= 4 else [f"x{i + 1}" for i in range(dim)]
    R = PolyRing(names)
    S = R.parse(S_text)
    dS = differential(S)
    levels = [list(combinations(range(dim), p + 1)) for p in range(1, dim)]
    if not levels or not levels[0]:
        raise DimensionMismatch("the Koszul fixture needs dimension at least 2")

    def contract_basis(p_index_list, target_list):
        cols = []
        for idx in p_index_list:
            P = Multivector(R, len(idx), {idx: R.one})
            img = interior_product(dS, P)
            cols.append(tuple(img.terms.get(t, R.zero) for t in target_list))
        return cols

    singletons = [(i,) for i in range(dim)]
    anchor = PolyMatrix.from_columns(R, dim, contract_basis(levels[0], singletons))
    diffs = []
    for k in range(1, len(levels)):
        diffs.append(PolyMatrix.from_columns(R, len(levels[k - 1]), contract_basis(levels[k], levels[k - 1])))
    lvl_names = tuple(tuple("d" + "".join(names[i] for i in idx) for idx in lv) for lv in levels)
    res = Resolution(R, anchor, tuple(diffs), lvl_names)
    return R, S, res


def koszul(S: str = "x^2+y^2", dim: int = 2) -> FoliationSpec:
    """Symmetries of S generated by i_dS on bivector fields."""
    R, _, res = koszul_resolution(S, dim)
    gens = res.generators()
    origin = tuple(0 for _ in range(dim))
    regular = tuple(1 if i == 0 else 0 for i in range(dim))
    return FoliationSpec("koszul", R, gens, list(res.names[0]), [("origin", origin), ("regular", regular)], resolution=res)


def gln_adjoint(n: int = 2) -> FoliationSpec:
    """Adjoint action of gl_n on n x n matrices: rho(a) = [a, m]."""
    names = [f"m{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    R = PolyRing(names)
    m = [[R.gen(i * n + j) for j in range(n)] for i in range(n)]
    gens, gnames = [], []
    for i in range(n):
        for j in range(n):
            comps = []
            for k in range(n):
                for l in range(n):
                    v = R.zero
                    if k == i:
                        v = v + m[j][l]
                    if l == j:
                        v = v - m[k][i]
                    comps.append(v)
            gens.append(VectorField(R, comps))
            gnames.append(f"E{i + 1}{j + 1}")
    origin = tuple(0 for _ in range(n * n))
    # a regular semisimple matrix: diag(1, 2, ..., n)
    regular = tuple(Fraction(i + 1) if i == j else 0 for i in range(n) for j in range(n))
    return FoliationSpec(f"gln_adjoint", R, gens, gnames, [("origin", origin), ("regular", regular)])


def gln_centralizer_columns(n: int = 2) -> list:
    """Powers I, m, ..., m^(n-1) flattened in the E_ij basis."""
    spec = gln_adjoint(n)
    R = spec.ring
    m = [[R.gen(i * n + j) for j in range(n)] for i in range(n)]
    power = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
    cols = []
    for _ in range(n):
        cols.append(tuple(power[i][j] for i in range(n) for j in range(n)))
        power = [[sum((power[i][k] * m[k][j] for k in range(n)), R.zero) for j in range(n)] for i in range(n)]
    return cols


FIXTURES = {
    "dx": coordinate_field,
    "sl2": sl2,
    "sl2_augmented": sl2_augmented,
    "vanishing_order": vanishing_order,
    "koszul": koszul,
    "gln_adjoint": gln_adjoint,
}


def fixture(name: str, **params) -> FoliationSpec:
    """Catalog lookup with keyword parameters, e.g. fixture("gln_adjoint", n=3)."""
    if name not in FIXTURES:
        raise ParseError(f"unknown fixture {name!r}", 1, 1, sorted(FIXTURES))
    try:
        return FIXTURES[name](**params)
    except TypeError as exc:
        raise ParseError(f"bad parameters for fixture {name!r}: {exc}", 1, len(name) + 2) from exc


def _convert(value: str):
    low = value.lower()
    if low in ("true", "yes"):
        return True
    if low in ("false", "no"):
        return False
    try:
        return int(value)
    except ValueError:
        return value


def load_fixture(text: str) -> FoliationSpec:
    """Resolve ``NAME[:key=value,...]``.  A bare word such as ``full`` means full=true."""
    name, _, params = text.partition(":")
    name = name.strip()
    if name not in FIXTURES:
        raise ParseError(f"unknown fixture {name!r}", 1, 1, sorted(FIXTURES))
    kwargs = {}
    if params.strip():
        if name == "koszul" and "S=" in params:
            # S contains no commas, so split only on ",dim="
            head, sep, tail = params.partition(",dim=")
            kwargs["S"] = head.split("=", 1)[1].strip()
            if sep:
                kwargs["dim"] = _convert(tail.strip())
        else:
            for item in params.split(","):
                item = item.strip()
                if not item:
                    continue
                if "=" in item:
                    k, v = item.split("=", 1)
                    kwargs[k.strip()] = _convert(v.strip())
                else:
                    kwargs[item] = True
    return fixture(name, **kwargs)

"""Exact rational linear algebra, polytopes in the probability simplex, and LP.

Everything in this module is computed over `fractions.Fraction`; there are no
tolerances and no floating point anywhere.  Strict conditions ("is there a
point strictly on one side?") are decided by margin-maximization LPs: the
strict system is feasible iff the optimal margin is positive, which is an
exact comparison.

Conventions
-----------
* A vector is a tuple of Fractions (`Vec`).
* `Polytope` is vertex-represented; `from_generators` removes redundant
  generators and sorts the surviving vertices in ascending lexicographic
  order, so equal point sets compare equal.
* The simplex solver uses Bland's rule, hence every LP answer (including
  returned certificates) is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CapExceededError, DimensionMismatchError

Vec = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce int / Fraction / numeric string ("0.2", "3/7") to Fraction.

    Floats are rejected: they carry binary rounding error and would silently
    break the exactness guarantee.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(
            "refusing to convert float %r: pass a string or Fraction for exactness" % (x,)
        )
    raise TypeError("cannot interpret %r as an exact rational" % (x,))


def vec(entries) -> Vec:
    v = tuple(frac(x) for x in entries)
    if not v:
        raise ValueError("vectors must have positive length")
    return v


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatchError(f"dot: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), _ZERO)


def vadd(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatchError(f"vadd: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatchError(f"vsub: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Fraction, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def zero_vec(n: int) -> Vec:
    return (_ZERO,) * n


def is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def simplex_point(entries) -> Vec:
    """Validate and return a probability vector (entries >= 0, sum exactly 1)."""
    p = vec(entries)
    if any(x < 0 for x in p):
        raise ValueError(f"negative probability in {p}")
    if sum(p) != 1:
        raise ValueError(f"probabilities sum to {sum(p)}, not 1: {p}")
    return p


def is_simplex_point(p: Vec) -> bool:
    return all(x >= 0 for x in p) and sum(p) == 1


def delta(s: int, m: int) -> Vec:
    """The degenerate distribution putting mass 1 on state `s` out of `m`."""
    return tuple(_ONE if i == s else _ZERO for i in range(m))


# ---------------------------------------------------------------------------
# Exact Gaussian elimination
# ---------------------------------------------------------------------------

def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (reduced nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    width = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(width):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = _ONE / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: list[list[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list[list[Fraction]], width: int) -> list[Vec]:
    """Basis of {x : R x = 0} for the row system, one vector per free column."""
    red, pivots = rref(rows)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        x = [_ZERO] * width
        x[f] = _ONE
        for i, p in enumerate(pivots):
            x[p] = -red[i][f]
        basis.append(tuple(x))
    return basis


def solve_linear(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[Vec, list[Vec]] | None:
    """Solve R x = rhs exactly.

    Returns (particular solution with free variables at 0, homogeneous basis),
    or None when the system is inconsistent.
    """
    if not rows:
        return (), []
    width = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if width in pivots:
        return None
    x = [_ZERO] * width
    for i, p in enumerate(pivots):
        x[p] = red[i][width]
    return tuple(x), nullspace(rows, width)


# ---------------------------------------------------------------------------
# LP: two-phase tableau simplex with Bland's rule
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HRep:
    """Halfspace representation: normal·x <= bound inequalities plus equalities."""

    inequalities: tuple[tuple[Vec, Fraction], ...]
    equalities: tuple[tuple[Vec, Fraction], ...] = ()


@dataclass(frozen=True)
class Hyperplane:
    """normal·x = threshold, used as a strict separator between point sets."""

    normal: Vec
    threshold: Fraction

    def __post_init__(self):
        if is_zero(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def value(self, p: Vec) -> Fraction:
        return dot(self.normal, p)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: Vec | None = None
    value: Fraction | None = None


def _pivot(tab, rhs, basis, zrow, row, col):
    piv = tab[row][col]
    inv = _ONE / piv
    tab[row] = [x * inv for x in tab[row]]
    rhs[row] *= inv
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[row])]
            rhs[i] -= f * rhs[row]
    if zrow[col] != 0:
        f = zrow[col]
        for j in range(len(zrow)):
            zrow[j] -= f * tab[row][j]
    basis[row] = col


def _bland_loop(tab, rhs, basis, zrow, allowed):
    """Maximize until no allowed column has positive reduced cost.

    Returns "optimal" or "unbounded". Bland's rule: entering = smallest
    eligible column index, leaving = smallest basis index among ratio ties.
    """
    while True:
        enter = next((j for j in allowed if zrow[j] > 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(len(tab)):
            coef = tab[i][enter]
            if coef > 0:
                ratio = rhs[i] / coef
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < best[1]):
                    best = (ratio, basis[i], i)
        if best is None:
            return "unbounded"
        _pivot(tab, rhs, basis, zrow, best[2], enter)


def simplex_standard(
    rows: list[list[Fraction]],
    rhs: list[Fraction],
    objective: list[Fraction],
) -> tuple[str, list[Fraction] | None, Fraction | None]:
    """Maximize objective·z subject to rows·z = rhs, z >= 0 (exact, two-phase)."""
    m = len(rows)
    n = len(objective)
    tab = [list(r) for r in rows]
    b = list(rhs)
    for i in range(m):
        if len(tab[i]) != n:
            raise DimensionMismatchError("constraint width differs from objective length")
        if b[i] < 0:
            tab[i] = [-x for x in tab[i]]
            b[i] = -b[i]

    # Phase 1: one artificial column per row, drive their sum to zero.
    for i in range(m):
        tab[i] += [_ONE if j == i else _ZERO for j in range(m)]
    basis = [n + i for i in range(m)]
    zrow = [sum(tab[i][j] for i in range(m)) for j in range(n)] + [_ZERO] * m
    _bland_loop(tab, b, basis, zrow, range(n))
    if sum(b[i] for i in range(m) if basis[i] >= n) != 0:
        return "infeasible", None, None

    # Pivot surviving artificials out; rows that cannot pivot are redundant.
    drop = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is None:
                drop.append(i)
            else:
                _pivot(tab, b, basis, zrow, i, col)
    if drop:
        tab = [tab[i] for i in range(m) if i not in drop]
        b = [b[i] for i in range(m) if i not in drop]
        basis = [basis[i] for i in range(m) if i not in drop]

    tab = [row[:n] for row in tab]

    # Phase 2 with the real objective.
    zrow = list(objective)
    zval = _ZERO
    for i, bi in enumerate(basis):
        if objective[bi] != 0:
            f = objective[bi]
            for j in range(n):
                zrow[j] -= f * tab[i][j]
            zval += f * b[i]
    status = _bland_loop(tab, b, basis, zrow, range(n))
    if status == "unbounded":
        return "unbounded", None, None
    z = [_ZERO] * n
    for i, bi in enumerate(basis):
        z[bi] = b[i]
    value = sum((objective[j] * z[j] for j in range(n)), _ZERO)
    return "optimal", z, value


def feasible_nonneg(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Some z >= 0 with rows·z = rhs, or None. Phase 1 of the simplex only."""
    n = len(rows[0]) if rows else 0
    status, z, _ = simplex_standard(rows, rhs, [_ZERO] * n)
    return z if status == "optimal" else None


def lp_solve(objective: Vec, constraints: HRep) -> LPResult:
    """Exact LP over free variables: maximize objective·x on the HRep region.

    Free variables are split x = u - v with u, v >= 0 and inequalities get
    slack columns, then the standard-form solver runs.  Deterministic by
    Bland's rule.
    """
    d = len(objective)
    ineqs = constraints.inequalities
    eqs = constraints.equalities
    for a, _ in list(ineqs) + list(eqs):
        if len(a) != d:
            raise DimensionMismatchError("constraint dimension differs from objective")
    nslack = len(ineqs)
    width = 2 * d + nslack
    rows = []
    rhs = []
    for k, (a, bound) in enumerate(ineqs):
        row = [*a, *(-x for x in a)] + [_ZERO] * nslack
        row[2 * d + k] = _ONE
        rows.append(row)
        rhs.append(bound)
    for a, bound in eqs:
        rows.append([*a, *(-x for x in a)] + [_ZERO] * nslack)
        rhs.append(bound)
    obj = [*objective, *(-x for x in objective)] + [_ZERO] * nslack
    status, z, value = simplex_standard(rows, rhs, obj)
    if status != "optimal":
        return LPResult(status)
    point = tuple(z[j] - z[d + j] for j in range(d))
    return LPResult("optimal", point, value)


# ---------------------------------------------------------------------------
# Polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many points, stored by its exact vertex set.

    `vertices` is irredundant and sorted ascending-lexicographically, so two
    polytopes are equal iff they are the same point set.
    """

    vertices: tuple[Vec, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("polytope needs at least one vertex")
        d = len(self.vertices[0])
        if any(len(v) != d for v in self.vertices):
            raise DimensionMismatchError("vertices of mixed dimension")

    @classmethod
    def from_generators(cls, points) -> "Polytope":
        pts = [vec(p) for p in points]
        if not pts:
            raise ValueError("no generators")
        reduced = remove_redundant(pts)
        return cls(tuple(sorted(reduced)))

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    def contains(self, p: Vec) -> bool:
        return membership(p, self)

    def is_singleton(self) -> bool:
        return len(self.vertices) == 1


def convex_weights(p: Vec, points: list[Vec]) -> list[Fraction] | None:
    """Weights mu >= 0, sum 1, with sum mu_j points_j = p; None if impossible."""
    d = len(p)
    for q in points:
        if len(q) != d:
            raise DimensionMismatchError("point dimension differs from target")
    rows = [[q[k] for q in points] for k in range(d)]
    rows.append([_ONE] * len(points))
    rhs = list(p) + [_ONE]
    return feasible_nonneg(rows, rhs)


def membership(p: Vec, P: Polytope) -> bool:
    """Exact convex-hull membership, decided by LP feasibility."""
    if len(p) != P.ambient_dim:
        raise DimensionMismatchError("point and polytope dimension differ")
    return convex_weights(p, list(P.vertices)) is not None


def support(P: Polytope, direction: Vec) -> Fraction:
    """max of direction·x over the polytope (attained at a vertex)."""
    if len(direction) != P.ambient_dim:
        raise DimensionMismatchError("direction and polytope dimension differ")
    if is_zero(direction):
        raise ValueError("support direction must be nonzero")
    return max(dot(direction, v) for v in P.vertices)


def argmax_vertex(P: Polytope, direction: Vec) -> Vec:
    """First vertex (in canonical order) attaining the support value."""
    best = support(P, direction)
    return next(v for v in P.vertices if dot(direction, v) == best)


def separate(points: list[Vec], P: Polytope) -> Hyperplane | None:
    """Strictly separating hyperplane (normal, threshold) or None.

    Returns (lam, kappa) with lam·v > kappa for every input point and
    kappa > lam·w for every vertex w of P, which exists iff the hulls are
    disjoint.  Decided by maximizing the margin t subject to
    lam·v >= kappa + t, lam·w <= kappa - t and the box |lam_j| <= 1;
    separation succeeds iff the optimum is positive.
    """
    if not points:
        raise ValueError("no points to separate")
    d = P.ambient_dim
    for p in points:
        if len(p) != d:
            raise DimensionMismatchError("point and polytope dimension differ")
    # Variables (lam_1..lam_d, kappa, t).
    ineqs: list[tuple[Vec, Fraction]] = []
    for v in points:
        ineqs.append((tuple([*(-x for x in v), _ONE, _ONE]), _ZERO))
    for w in P.vertices:
        ineqs.append((tuple([*w, -_ONE, _ONE]), _ZERO))
    for j in range(d):
        e = [_ZERO] * (d + 2)
        e[j] = _ONE
        ineqs.append((tuple(e), _ONE))
        e2 = [_ZERO] * (d + 2)
        e2[j] = -_ONE
        ineqs.append((tuple(e2), _ONE))
    objective = tuple([_ZERO] * (d + 1) + [_ONE])
    res = lp_solve(objective, HRep(tuple(ineqs)))
    if res.status != "optimal" or res.value <= 0:
        return None
    lam = res.point[:d]
    kappa = res.point[d]
    h = Hyperplane(lam, kappa)
    assert all(h.value(v) > kappa for v in points)
    assert all(h.value(w) < kappa for w in P.vertices)
    return h


def remove_redundant(points: list[Vec]) -> list[Vec]:
    """Minimal subset with the same convex hull (the exact vertex set).

    Input order of the survivors is preserved; duplicates collapse to their
    first occurrence.
    """
    if not points:
        raise ValueError("no points given")
    uniq: list[Vec] = []
    for p in points:
        if p not in uniq:
            uniq.append(p)
    if len(uniq) == 1:
        return uniq
    kept = list(uniq)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if convex_weights(kept[i], others) is not None:
            kept.pop(i)
        else:
            i += 1
    return kept


# ---------------------------------------------------------------------------
# V-representation <-> H-representation (desk scale)
# ---------------------------------------------------------------------------

DEFAULT_DIM_CAP = 6


def _primitive(normal: Vec, bound: Fraction) -> tuple[Vec, Fraction]:
    """Scale an inequality by a positive rational to coprime integer entries."""
    dens = [x.denominator for x in normal] + [bound.denominator]
    mult = 1
    for q in dens:
        mult = mult * q // gcd(mult, q)
    ints = [int(x * mult) for x in normal] + [int(bound * mult)]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])


def _affine_basis(points: list[Vec]) -> tuple[Vec, list[Vec], list[int]]:
    """Base point, RREF basis of the direction span, and its pivot columns."""
    base = points[0]
    diffs = [list(vsub(p, base)) for p in points[1:]]
    basis_rows, pivots = rref(diffs)
    return base, [tuple(r) for r in basis_rows], pivots


def _coords(p: Vec, base: Vec, basis: list[Vec], pivots: list[int]) -> Vec:
    """Coordinates of p in the affine frame (exact; asserts p lies in it)."""
    diff = vsub(p, base)
    t = tuple(diff[c] for c in pivots)
    recon = zero_vec(len(base))
    for tk, bk in zip(t, basis):
        recon = vadd(recon, vscale(tk, bk))
    if recon != diff:
        raise ValueError("point lies outside the affine hull")
    return t


def _box_and_cut(
    ineqs: list[tuple[Vec, Fraction]], k: int
) -> list[Vec] | None:
    """Vertices of the (bounded) region given by inequalities in R^k.

    Incremental double description: start from the exact bounding box and cut
    one halfspace at a time, keeping the generator set irredundant.  Returns
    None when the region is empty.
    """
    lo = []
    hi = []
    for j in range(k):
        e = tuple(_ONE if i == j else _ZERO for i in range(k))
        up = lp_solve(e, HRep(tuple(ineqs)))
        if up.status == "infeasible":
            return None
        if up.status == "unbounded":
            raise ValueError("region is unbounded; expected a polytope")
        down = lp_solve(tuple(-x for x in e), HRep(tuple(ineqs)))
        if down.status == "unbounded":
            raise ValueError("region is unbounded; expected a polytope")
        hi.append(up.value)
        lo.append(-down.value)
    corners = [tuple(c) for c in itertools.product(*([l, h] for l, h in zip(lo, hi)))]
    verts = remove_redundant(list(dict.fromkeys(corners)))
    for a, bound in ineqs:
        inside = [v for v in verts if dot(a, v) < bound]
        on = [v for v in verts if dot(a, v) == bound]
        out = [v for v in verts if dot(a, v) > bound]
        if not out:
            continue
        if not inside and not on:
            return None
        crossings = []
        for u in inside:
            au = dot(a, u)
            for w in out:
                s = (bound - au) / (dot(a, w) - au)
                crossings.append(vadd(u, vscale(s, vsub(w, u))))
        verts = remove_redundant(inside + on + crossings)
    return verts


def vrep_to_hrep(P: Polytope, dim_cap: int = DEFAULT_DIM_CAP) -> HRep:
    """Exact facet description of a vertex-represented polytope.

    Equalities pin the affine hull; facets are found by enumerating the
    vertices of the polar dual within the hull's coordinate frame.  Only
    sensible at desk scale, hence the ambient-dimension cap.
    """
    d = P.ambient_dim
    if d > dim_cap:
        raise CapExceededError(f"ambient dimension {d} exceeds cap {dim_cap}")
    base, basis, pivots = _affine_basis(list(P.vertices))
    k = len(basis)
    # Normals vanishing on the direction span pin the affine hull; for a
    # single point this degenerates to one equality per coordinate.
    eqs = [
        _primitive(w, dot(w, base))
        for w in nullspace([list(b) for b in basis], d)
    ]
    if k == 0:
        return HRep((), tuple(sorted(eqs)))

    ts = [_coords(v, base, basis, pivots) for v in P.vertices]
    centroid = tuple(
        sum((t[j] for t in ts), _ZERO) / len(ts) for j in range(k)
    )
    shifted = [vsub(t, centroid) for t in ts]
    dual_ineqs = [(q, _ONE) for q in shifted]
    dual_vertices = _box_and_cut(dual_ineqs, k)
    assert dual_vertices, "polar dual of a full-dimensional polytope has vertices"
    ineqs = []
    for y in dual_vertices:
        normal = [_ZERO] * d
        for yk, c in zip(y, pivots):
            normal[c] = yk
        bound = _ONE + dot(y, centroid) + sum(
            (yk * base[c] for yk, c in zip(y, pivots)), _ZERO
        )
        ineqs.append(_primitive(tuple(normal), bound))
    ineqs.sort()
    return HRep(tuple(ineqs), tuple(sorted(eqs)))


def hrep_vertices(H: HRep, dim_cap: int = DEFAULT_DIM_CAP) -> Polytope | None:
    """Exact vertex set of an H-represented polytope; None when empty.

    The equalities are eliminated by an exact parametrization of their
    solution space; the inequality system is then cut down from its bounding
    box in that frame.
    """
    if H.inequalities:
        d = len(H.inequalities[0][0])
    elif H.equalities:
        d = len(H.equalities[0][0])
    else:
        raise ValueError("empty H-representation")
    if d > dim_cap:
        raise CapExceededError(f"ambient dimension {d} exceeds cap {dim_cap}")

    if H.equalities:
        sol = solve_linear(
            [list(a) for a, _ in H.equalities], [b for _, b in H.equalities]
        )
        if sol is None:
            return None
        base, kernel = sol
    else:
        base, kernel = zero_vec(d), [
            tuple(_ONE if i == j else _ZERO for i in range(d)) for j in range(d)
        ]
    k = len(kernel)
    if k == 0:
        ok = all(dot(a, base) <= b for a, b in H.inequalities)
        return Polytope((base,)) if ok else None

    reduced: list[tuple[Vec, Fraction]] = []
    for a, b in H.inequalities:
        a_t = tuple(dot(a, kb) for kb in kernel)
        b_t = b - dot(a, base)
        if is_zero(a_t):
            if b_t < 0:
                return None
            continue
        reduced.append((a_t, b_t))
    verts_t = _box_and_cut(reduced, k)
    if verts_t is None:
        return None
    verts = []
    for t in verts_t:
        x = base
        for tk, kb in zip(t, kernel):
            x = vadd(x, vscale(tk, kb))
        verts.append(x)
    return Polytope(tuple(sorted(verts)))


def intersect_polytopes(
    polys: list[Polytope], dim_cap: int = DEFAULT_DIM_CAP
) -> Polytope | None:
    """Exact intersection via stacked facet descriptions; None when empty."""
    if not polys:
        raise ValueError("nothing to intersect")
    ineqs: list[tuple[Vec, Fraction]] = []
    eqs: list[tuple[Vec, Fraction]] = []
    for P in polys:
        h = vrep_to_hrep(P, dim_cap)
        ineqs.extend(h.inequalities)
        eqs.extend(h.equalities)
    return hrep_vertices(HRep(tuple(ineqs), tuple(eqs)), dim_cap)

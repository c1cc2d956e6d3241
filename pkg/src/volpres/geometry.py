"""Volume polynomials of convex polytopes, and intersection numbers on a blown-up plane.

Everything is exact: rational vertices are scaled to a common integer lattice
before any orientation test, and volumes are sums of simplex determinants.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import det, row_echelon, solve
from .poly import Polynomial, RatLike, as_rat, compositions

Point = tuple[Fraction, ...]


def _lcm_denominator(points: Iterable[Sequence[Fraction]]) -> int:
    L = 1
    for p in points:
        for x in p:
            L = L * x.denominator // math.gcd(L, x.denominator)
    return L


def _to_int(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    L = _lcm_denominator(points)
    return [tuple(int(x * L) for x in p) for p in points], L


# ---------------------------------------------------------------------------
# hulls on integer points


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross2(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _orient3(a, b, c, d) -> int:
    u, v, w = _sub(b, a), _sub(c, a), _sub(d, a)
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def _hull2(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Counter-clockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull3(points: list[tuple[int, ...]]) -> tuple[list[tuple[int, ...]], list[tuple[int, int, int]]]:
    """Incremental 3-d hull of full-dimensional integer points.

    Returns (point list, outward-oriented triangles as index triples).
    Triangles may be coplanar; that is harmless for volumes.
    """
    pts = sorted(set(points))
    a = 0
    b = next(i for i in range(1, len(pts)) if pts[i] != pts[a])
    c = next(
        i
        for i in range(len(pts))
        if any(x for x in _cross3(_sub(pts[b], pts[a]), _sub(pts[i], pts[a])))
    )
    d = next(i for i in range(len(pts)) if _orient3(pts[a], pts[b], pts[c], pts[i]) != 0)
    if _orient3(pts[a], pts[b], pts[c], pts[d]) > 0:
        b, c = c, b
    # with orient(a,b,c,d) < 0 every face below keeps the interior on its negative side
    faces = {(a, b, c), (a, d, b), (b, d, c), (c, d, a)}
    for p in range(len(pts)):
        if p in (a, b, c, d):
            continue
        visible = [f for f in faces if _orient3(pts[f[0]], pts[f[1]], pts[f[2]], pts[p]) > 0]
        if not visible:
            continue
        edges = set()
        for f in visible:
            for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                edges.add(e)
        horizon = [e for e in edges if (e[1], e[0]) not in edges]
        faces.difference_update(visible)
        for u, v in horizon:
            faces.add((u, v, p))
    return pts, sorted(faces)


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _hull3_vertices(pts, faces) -> list[tuple[int, ...]]:
    normals: dict[int, list] = {}
    for f in faces:
        n = _cross3(_sub(pts[f[1]], pts[f[0]]), _sub(pts[f[2]], pts[f[0]]))
        for i in f:
            normals.setdefault(i, []).append(n)
    # a mesh point is a true vertex iff its incident face normals span R^3
    return sorted(pts[i] for i, ns in normals.items() if len(row_echelon(ns)[1]) == 3)


def _affine_frame(points: Sequence[Sequence]) -> tuple[int, list[int]]:
    """Affine dimension and coordinate indices on which projection is injective."""
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    if not diffs:
        return 0, []
    _, pivots = row_echelon(diffs)
    return len(pivots), pivots


def _pulling_simplices(points: list[tuple]) -> list[tuple]:
    """Triangulation of a full-dimensional point configuration by pulling (any dimension)."""
    pts = sorted(set(points))
    dim = len(pts[0])
    if dim == 1:
        return [(pts[0], pts[-1])]
    apex = pts[0]
    simplices = []
    for facet in _facets(pts):
        if apex in facet:
            continue
        normal = _facet_normal(facet)
        drop = next(i for i, x in enumerate(normal) if x)
        keep = [i for i in range(dim) if i != drop]
        proj = {tuple(p[i] for i in keep): p for p in facet}
        for simplex in _pulling_simplices(list(proj)):
            simplices.append((apex,) + tuple(proj[q] for q in simplex))
    return simplices


def _facet_normal(facet):
    base = facet[0]
    diffs = [_sub(p, base) for p in facet[1:]]
    red, pivots = row_echelon(diffs)
    dim = len(base)
    free = next(i for i in range(dim) if i not in pivots)
    normal = [Fraction(0)] * dim
    normal[free] = Fraction(1)
    for r, col in enumerate(pivots):
        normal[col] = -red[r][free]
    return normal


def _facets(pts: list[tuple]) -> list[list[tuple]]:
    """Brute-force facet enumeration; fine for small configurations."""
    dim = len(pts[0])
    seen = set()
    out = []
    for combo in itertools.combinations(range(len(pts)), dim):
        chosen = [pts[i] for i in combo]
        if _affine_frame(chosen)[0] != dim - 1:
            continue
        normal = _facet_normal(chosen)
        offset = sum(a * b for a, b in zip(normal, chosen[0]))
        vals = [sum(a * b for a, b in zip(normal, p)) - offset for p in pts]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facet = frozenset(p for p, v in zip(pts, vals) if v == 0)
            if facet not in seen:
                seen.add(facet)
                out.append(sorted(facet))
    return out


def _hull_vertices(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    pts = sorted(set(points))
    r, coords = _affine_frame(pts)
    if r == 0:
        return pts[:1]
    proj = {tuple(p[i] for i in coords): p for p in pts}
    keys = list(proj)
    if r == 1:
        verts = [min(keys), max(keys)]
    elif r == 2:
        verts = _hull2(keys)
    elif r == 3:
        hp, faces = _hull3(keys)
        verts = _hull3_vertices(hp, faces)
    else:
        verts = sorted({q for s in _pulling_simplices(keys) for q in s})
    return sorted(proj[v] for v in verts)


def _int_volume_times_factorial(points: list[tuple[int, ...]]) -> int:
    """d! times the volume of the hull of full-dimensional integer points."""
    dim = len(points[0])
    if dim == 1:
        return max(p[0] for p in points) - min(p[0] for p in points)
    if dim == 2:
        hull = _hull2(points)
        return abs(sum(_cross2(hull[0], hull[i], hull[i + 1]) for i in range(1, len(hull) - 1)))
    if dim == 3:
        pts, faces = _hull3(points)
        o = pts[0]
        return sum(-_orient3(pts[f[0]], pts[f[1]], pts[f[2]], o) for f in faces)
    return sum(abs(det([_sub(p, s[0]) for p in s[1:]])) for s in _pulling_simplices(points))


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points; ``vertices`` holds the hull vertices."""

    dim: int
    vertices: tuple[Point, ...]

    @classmethod
    def from_points(cls, points: Iterable[Sequence[RatLike]], dim: int | None = None) -> Polytope:
        pts = [tuple(as_rat(x) for x in p) for p in points]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        d = dim if dim is not None else len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError(f"all points must have dimension {d}")
        ints, L = _to_int(pts)
        verts = _hull_vertices(ints)
        return cls(d, tuple(tuple(Fraction(x, L) for x in v) for v in verts))

    @classmethod
    def box(cls, sides: Sequence[RatLike]) -> Polytope:
        sides = [as_rat(s) for s in sides]
        return cls.from_points(itertools.product(*((0, s) for s in sides)))

    @classmethod
    def segment(cls, direction: Sequence[RatLike]) -> Polytope:
        return cls.from_points([[0] * len(direction), direction])

    @classmethod
    def point(cls, coords: Sequence[RatLike]) -> Polytope:
        return cls.from_points([coords])

    def scaled(self, lam: RatLike) -> Polytope:
        lam = as_rat(lam)
        if lam < 0:
            raise ValueError("only non-negative dilations are supported")
        return Polytope.from_points([[lam * x for x in v] for v in self.vertices], self.dim)

    def __add__(self, other: Polytope) -> Polytope:
        return minkowski_sum(self, other)


def volume(P: Polytope) -> Fraction:
    """Exact d-dimensional volume; zero for lower-dimensional hulls."""
    ints, L = _to_int(list(P.vertices))
    if _affine_frame(ints)[0] < P.dim:
        return Fraction(0)
    return Fraction(_int_volume_times_factorial(ints), math.factorial(P.dim) * L**P.dim)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    return Polytope.from_points(
        [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices], P.dim
    )


def weighted_sum(polytopes: Sequence[Polytope], weights: Sequence[RatLike]) -> Polytope:
    total = Polytope.point([0] * polytopes[0].dim)
    for K, lam in zip(polytopes, weights):
        total = minkowski_sum(total, K.scaled(lam))
    return total


def _default_weights(n: int, d: int) -> list[tuple[int, ...]]:
    # shifted principal lattice of the simplex: unisolvent for degree-d forms
    return [tuple(b + 1 for b in beta) for beta in compositions(d, n)]


def _fallback_weights(n: int, d: int) -> list[tuple[int, ...]]:
    count = math.comb(n + d - 1, d)
    return [tuple((s + 2) ** i for i in range(n)) for s in range(count)]


def volume_polynomial(polytopes: Sequence[Polytope]) -> Polynomial:
    """vol(x_1 K_1 + ... + x_n K_n) as an exact homogeneous polynomial of degree d.

    The coefficient of x^alpha is binom(d, alpha) V(K_1^alpha_1, ..., K_n^alpha_n).
    """
    if not polytopes:
        raise ValueError("need at least one polytope")
    d = polytopes[0].dim
    if any(K.dim != d for K in polytopes):
        raise ValueError("all polytopes must share one dimension")
    n = len(polytopes)
    monos = list(compositions(d, n))
    for weights in (_default_weights(n, d), _fallback_weights(n, d)):
        A = [[math.prod(w**a for w, a in zip(lam, alpha)) for alpha in monos] for lam in weights]
        b = [volume(weighted_sum(polytopes, lam)) for lam in weights]
        try:
            coeffs = solve(A, b)
        except ValueError:
            continue
        return Polynomial(n, dict(zip(monos, coeffs)))
    raise ArithmeticError("interpolation system is singular for every weight set")


def mixed_volume(polytopes: Sequence[Polytope], alpha: Sequence[int]) -> Fraction:
    """V(K_1^alpha_1, ..., K_n^alpha_n) read off the volume polynomial."""
    f = volume_polynomial(polytopes)
    d = sum(alpha)
    return f.coeff(alpha) / Fraction(math.factorial(d), math.prod(math.factorial(a) for a in alpha))


# ---------------------------------------------------------------------------
# divisor classes on the blow-up of the plane at r points


@dataclass(frozen=True)
class SurfaceClass:
    """The class h H + sum e_i E_i, stored as the coefficient of H and of each E_i."""

    h: Fraction
    e: tuple[Fraction, ...]

    @classmethod
    def make(cls, h: RatLike, e: Iterable[RatLike]) -> SurfaceClass:
        return cls(as_rat(h), tuple(as_rat(x) for x in e))

    @classmethod
    def hyperplane(cls, r: int) -> SurfaceClass:
        return cls(Fraction(1), (Fraction(0),) * r)

    @classmethod
    def exceptional(cls, i: int, r: int) -> SurfaceClass:
        return cls(Fraction(0), tuple(Fraction(int(k == i)) for k in range(r)))

    def __add__(self, other: SurfaceClass) -> SurfaceClass:
        if len(self.e) != len(other.e):
            raise ValueError("classes live on different blow-ups")
        return SurfaceClass(self.h + other.h, tuple(a + b for a, b in zip(self.e, other.e)))

    def __sub__(self, other: SurfaceClass) -> SurfaceClass:
        return self + other.scale(-1)

    def scale(self, c: RatLike) -> SurfaceClass:
        c = as_rat(c)
        return SurfaceClass(c * self.h, tuple(c * x for x in self.e))


def intersect(A: SurfaceClass, B: SurfaceClass) -> Fraction:
    """H^2 = 1, H.E_i = 0, E_i.E_j = -delta_ij."""
    if len(A.e) != len(B.e):
        raise ValueError(f"length mismatch: {len(A.e)} vs {len(B.e)}")
    return A.h * B.h - sum(a * b for a, b in zip(A.e, B.e))


def _minus_sum(qbar: int, indices: Iterable[int], r: int) -> SurfaceClass:
    # qbar H - sum_{i in indices} E_i
    idx = set(indices)
    return SurfaceClass(Fraction(qbar), tuple(Fraction(-int(i in idx)) for i in range(r)))


def four_divisor_family(p: int, q: int, qbar: int | None = None) -> tuple[Polynomial, dict]:
    """Quadratic form (x D_x + y D_y + z D_z + w D_w)^2 in variables (x, y, z, w).

    The divisors are ``qbar H`` minus sums of exceptional classes over index
    sets of sizes b, c-a, c-a, b-a with a = qbar^2 - q, b = qbar^2 - p and
    c = qbar^2 - (q - p).  When p/q > 1/2 the construction runs with q - p and
    the roles of x and z are exchanged.  Only the algebraic expansion is
    produced; nefness of the classes is not checked.
    """
    if not 0 <= p <= q:
        raise ValueError("need 0 <= p <= q")
    if qbar is None:
        qbar = math.isqrt(q - 1) + 1 if q else 0
    if qbar < 0 or qbar * qbar < q:
        raise ValueError(f"need qbar^2 >= q, got qbar={qbar}, q={q}")
    swapped = 2 * p > q
    pp = q - p if swapped else p
    s = qbar * qbar
    a, b, c = s - q, s - pp, s - (q - pp)
    assert b >= c >= a
    sizes = {"I_b": b, "I_c-a": c - a, "J_c-a": c - a, "I_b-a": b - a}
    blocks, start = {}, 0
    for name, size in sizes.items():
        blocks[name] = list(range(start, start + size))
        start += size
    r = start
    blocks["I_a"] = blocks["I_b"][:a]

    def cls(*names):
        return _minus_sum(qbar, [i for nm in names for i in blocks[nm]], r)

    D = {
        "x": cls("I_b", "J_c-a"),
        "w": cls("I_b", "I_c-a"),
        "y": cls("I_a", "J_c-a", "I_b-a"),
        "z": cls("I_a", "I_c-a", "I_b-a"),
    }
    if swapped:
        D["x"], D["z"] = D["z"], D["x"]
    order = ["x", "y", "z", "w"]
    terms = {}
    for i, vi in enumerate(order):
        for j in range(i, 4):
            vj = order[j]
            exp = [0] * 4
            exp[i] += 1
            exp[j] += 1
            val = intersect(D[vi], D[vj])
            terms[tuple(exp)] = val if i == j else 2 * val
    witness = {"a": a, "b": b, "c": c, "r": r, "qbar": qbar, "swapped": swapped, "classes": D, "index_sets": blocks}
    return Polynomial(4, terms), witness


def four_divisor_expected(p: int, q: int) -> Polynomial:
    """2q xz + 2p (xw + yz) + 2(q - p)(zw + xy) + 2q yw."""
    return Polynomial(
        4,
        {
            (1, 0, 1, 0): 2 * q,
            (1, 0, 0, 1): 2 * p,
            (0, 1, 1, 0): 2 * p,
            (0, 0, 1, 1): 2 * (q - p),
            (1, 1, 0, 0): 2 * (q - p),
            (0, 1, 0, 1): 2 * q,
        },
    )


# names used by the published interface
lemma312_family = four_divisor_family
lemma312_expected = four_divisor_expected

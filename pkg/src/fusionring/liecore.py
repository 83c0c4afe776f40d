"""Root systems, Weyl groups, and the normalized invariant bilinear form.

Weights are plain tuples of integer Dynkin labels: entry ``i`` is the pairing
of the weight with the ``i``-th simple coroot.  Simple roots carry Bourbaki
numbering, and the Cartan matrix convention is
``cartan[i][j] = <alpha_j, coroot_i>``; the Dynkin labels of ``alpha_j`` are
therefore the ``j``-th column.  The bilinear form is normalized so long roots
have squared length 2.  All data in this module is exact (ints / Fractions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CapacityError, ConventionError
from .lattices import integer_determinant, invert_rational_matrix, lattice_index, row_basis

Weight = tuple[int, ...]

DEFAULT_WEYL_RANK_CAP = 6

_RANK_RULES = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

_VERIFIED_FAMILIES = frozenset("ABCDG")


@dataclass(frozen=True)
class SimpleType:
    """A simple Lie algebra family letter plus rank, e.g. ``SimpleType("A", 2)``."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise ValueError(f"unknown family {self.family!r}; expected one of A B C D E F G")
        lo, hi = _RANK_RULES[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            if self.family == "D" and self.rank in (2, 3):
                raise ValueError(
                    f"D{self.rank} is rejected to avoid aliasing: D3 is A3 and D2 is A1+A1; "
                    "use the A-family spelling"
                )
            raise ValueError(f"rank {self.rank} is not supported for family {self.family}")

    @property
    def verified(self) -> bool:
        """True for the families whose fusion product is certified (A, B, C, D, G2)."""
        return self.family in _VERIFIED_FAMILIES

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise ValueError(f"cannot parse algebra name {text!r}; expected e.g. A2, D4")
        return cls(text[0].upper(), int(text[1:]))


def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def chain(pairs):
        for i, j in pairs:
            a[i][j] = -1
            a[j][i] = -1

    if family in "ABC":
        chain((i, i + 1) for i in range(rank - 1))
        if family == "B" and rank >= 2:
            a[rank - 1][rank - 2] = -2  # last simple root is short
        elif family == "C" and rank >= 2:
            a[rank - 2][rank - 1] = -2  # last simple root is long
    elif family == "D":
        chain((i, i + 1) for i in range(rank - 2))
        chain([(rank - 3, rank - 1)])
    elif family == "E":
        # Bourbaki: chain 1-3-4-5-...-rank with node 2 attached to node 4.
        chain([(0, 2)])
        chain((i, i + 1) for i in range(2, rank - 1))
        chain([(1, 3)])
    elif family == "F":
        chain([(0, 1), (1, 2), (2, 3)])
        a[2][1] = -2  # roots 3, 4 are short
    elif family == "G":
        a[0][1] = -3  # first simple root is short
        a[1][0] = -1
    return a


def _symmetrizer(cartan) -> tuple[Fraction, ...]:
    # d_i = (alpha_i|alpha_i)/2, found by propagating d_j/d_i = a_ij/a_ji
    # along the Dynkin graph and scaling so long roots get d = 1.
    rank = len(cartan)
    d: list[Fraction | None] = [None] * rank
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(rank):
            if i != j and cartan[i][j] and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    assert all(x is not None for x in d)
    top = max(d)
    return tuple(x / top for x in d)


def _positive_root_coords(cartan) -> list[tuple[int, ...]]:
    rank = len(cartan)
    roots = set()
    layer = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots.update(layer)
    layers = [layer]
    while layers[-1]:
        nxt = []
        for c in layers[-1]:
            for i in range(rank):
                pairing = sum(cartan[i][j] * c[j] for j in range(rank))
                down = list(c)
                p = 0
                while True:
                    down[i] -= 1
                    if any(x < 0 for x in down) or tuple(down) not in roots:
                        break
                    p += 1
                if p - pairing >= 1:
                    up = list(c)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        layers.append(sorted(set(nxt)))
    ordered = sorted(roots, key=lambda c: (sum(c), c))
    top_height = sum(ordered[-1])
    top = [c for c in ordered if sum(c) == top_height]
    if len(top) != 1:
        raise ConventionError("highest root is not unique; Cartan data is corrupt")
    return ordered


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Precomputed exact root data for one simple type.

    Immutable after construction; safe to share across threads.  Roots are
    stored both in simple-root coordinates and as Dynkin-label vectors.
    """

    simple_type: SimpleType
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    positive_roots_weight: tuple[Weight, ...]
    pairing_vectors: tuple[tuple[Fraction, ...], ...]
    long_mask: tuple[bool, ...]
    highest_root: Weight
    highest_root_coords: tuple[int, ...]
    rho: Weight
    comarks: tuple[int, ...]
    dual_coxeter: int
    weyl_elements: tuple[tuple[tuple[tuple[int, ...], ...], int], ...]
    long_root_lattice: tuple[tuple[int, ...], ...]
    connection_index: int
    long_index: int

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_elements)

    def __repr__(self):
        return f"RootSystem({self.simple_type})"


def _reflection_matrix(cartan, i):
    rank = len(cartan)
    return tuple(
        tuple((1 if j == k else 0) - (cartan[j][i] if k == i else 0) for k in range(rank))
        for j in range(rank)
    )


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def apply_matrix(mat, w: Weight) -> Weight:
    return tuple(sum(row[k] * w[k] for k in range(len(w))) for row in mat)


def _enumerate_weyl(cartan):
    rank = len(cartan)
    gens = [_reflection_matrix(cartan, i) for i in range(rank)]
    identity = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    seen = {identity: 1}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            sw = seen[w]
            for g in gens:
                child = _matmul(g, w)
                if child not in seen:
                    seen[child] = -sw
                    nxt.append(child)
        frontier = nxt
    return tuple(sorted(seen.items()))


@lru_cache(maxsize=None)
def build_root_system(simple_type: SimpleType, weyl_rank_cap: int = DEFAULT_WEYL_RANK_CAP) -> RootSystem:
    """Construct all root data for ``simple_type``, Weyl group included.

    The Weyl group is materialized as explicit signed integer matrices on
    Dynkin coordinates, so ranks above ``weyl_rank_cap`` (default 6) raise
    ``CapacityError`` rather than attempting an enormous enumeration.
    """
    rank = simple_type.rank
    if rank > weyl_rank_cap:
        raise CapacityError(
            f"rank {rank} exceeds the Weyl enumeration cap {weyl_rank_cap}; "
            "raise weyl_rank_cap explicitly if the group order is acceptable"
        )
    cartan = _cartan_matrix(simple_type.family, rank)
    d = _symmetrizer(cartan)
    sym = [[d[i] * cartan[i][j] for j in range(rank)] for i in range(rank)]
    sym_inv = invert_rational_matrix(sym)
    gram = tuple(
        tuple(d[i] * d[j] * sym_inv[j][i] for j in range(rank)) for i in range(rank)
    )

    coords = _positive_root_coords(cartan)

    def to_weight(c):
        return tuple(sum(cartan[i][j] * c[j] for j in range(rank)) for i in range(rank))

    weights = tuple(to_weight(c) for c in coords)
    pairing = tuple(tuple(c[i] * d[i] for i in range(rank)) for c in coords)
    norms = [sum(p[i] * w[i] for i in range(rank)) for w, p in zip(weights, pairing)]
    long_mask = tuple(n == 2 for n in norms)

    theta_coords = coords[-1]
    theta = weights[-1]
    if not long_mask[-1]:
        raise ConventionError("highest root is not long; normalization is corrupt")
    comarks = []
    for i in range(rank):
        cm = theta_coords[i] * d[i]
        assert cm.denominator == 1
        comarks.append(int(cm))
    comarks = tuple(comarks)
    hvee = 1 + sum(comarks)

    weyl = _enumerate_weyl(cartan)

    long_coords = [c for c, is_long in zip(coords, long_mask) if is_long]
    long_weights = [w for w, is_long in zip(weights, long_mask) if is_long]
    q = lattice_index(long_coords, rank)
    f = abs(integer_determinant(cartan))

    return RootSystem(
        simple_type=simple_type,
        rank=rank,
        cartan=tuple(tuple(row) for row in cartan),
        symmetrizer=d,
        gram=gram,
        positive_roots=tuple(coords),
        positive_roots_weight=weights,
        pairing_vectors=pairing,
        long_mask=long_mask,
        highest_root=theta,
        highest_root_coords=theta_coords,
        rho=(1,) * rank,
        comarks=comarks,
        dual_coxeter=hvee,
        weyl_elements=weyl,
        long_root_lattice=row_basis(long_weights, rank),
        connection_index=f,
        long_index=q,
    )


def killing_pairing(rs: RootSystem, x, y) -> Fraction:
    """Normalized invariant form on weight space; ``(theta|theta) = 2``."""
    if len(x) != rs.rank or len(y) != rs.rank:
        raise ValueError(f"expected weight vectors of length {rs.rank}")
    g = rs.gram
    return sum(Fraction(x[i]) * sum(g[i][j] * y[j] for j in range(rs.rank)) for i in range(rs.rank))


def root_pairing(rs: RootSystem, x, alpha_index: int) -> Fraction:
    """Form value (x|alpha) against the ``alpha_index``-th positive root."""
    p = rs.pairing_vectors[alpha_index]
    return sum(Fraction(x[i]) * p[i] for i in range(rs.rank))


def level_of(rs: RootSystem, lam: Weight) -> int:
    """Pairing of a weight with the highest coroot; linear in the labels."""
    return sum(l * c for l, c in zip(lam, rs.comarks))


def reflect_to_dominant(rs: RootSystem, x: Weight) -> tuple[Weight, int, bool]:
    """Dominant Weyl-orbit representative of ``x``.

    Returns ``(representative, sign, on_wall)`` where ``sign`` is the
    signature of the chamber-moving element (meaningless when ``on_wall``).
    """
    cartan = rs.cartan
    rank = rs.rank
    y = list(x)
    sign = 1
    cap = 2 * len(rs.positive_roots) + 4
    for _ in range(cap):
        i = next((k for k in range(rank) if y[k] < 0), None)
        if i is None:
            return tuple(y), sign, any(v == 0 for v in y)
        c = y[i]
        sign = -sign
        for j in range(rank):
            y[j] -= c * cartan[j][i]
    raise ConventionError(f"dominant reflection did not terminate for {x}")


def dominant_chamber(rs: RootSystem, x: Weight):
    """Signed dominant representative ``(sign, weight)``, or None on a wall.

    ``None`` signals that ``x`` is fixed by some reflection (its orbit meets
    a chamber wall), in which case no well-defined sign exists.
    """
    rep, sign, on_wall = reflect_to_dominant(rs, x)
    return None if on_wall else (sign, rep)


def weyl_orbit(rs: RootSystem, x: Weight) -> list[Weight]:
    """Full Weyl orbit of a weight, generated by simple reflections."""
    cartan = rs.cartan
    rank = rs.rank
    seen = {tuple(x)}
    frontier = [tuple(x)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rank):
                if w[i] == 0:
                    continue
                child = tuple(w[j] - w[i] * cartan[j][i] for j in range(rank))
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    return sorted(seen)

"""The level-bounded fusion ring and its exact structure constants.

The product is computed operationally: tensor-decompose in the classical
representation ring, then push through the alcove projection, which kills
affine-wall classes and reflects the rest back into the level alcove with a
sign.  The ring that results is checked on construction (commutativity, unit,
associativity, nonnegativity, the coefficient-of-unit pairing), and an
independent combinatorial rule is provided for the rank-1 case.  Genus-g
dimensions come from powers of the Casimir element acting through the
structure tensor, entirely in integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapacityError,
    ConventionError,
    IncompleteTableError,
    NegativeStructureError,
    UnverifiedTypeError,
)
from .liecore import RootSystem, Weight, level_of, reflect_to_dominant
from .repring import RepElement, dual_weight, tensor_decompose

DEFAULT_BASIS_CAP = 5000
DEFAULT_ASSOC_CAP = 64


def enumerate_level_weights(rs: RootSystem, level: int) -> list[Weight]:
    """Dominant weights whose highest-coroot pairing is at most ``level``.

    Sorted lexicographically by Dynkin labels; this order fixes the basis of
    the fusion ring and is bit-reproducible across runs.
    """
    if level <= 0:
        raise ValueError(f"level must be a positive integer, got {level}")
    rank = rs.rank
    comarks = rs.comarks
    out: list[Weight] = []

    def rec(prefix, budget):
        i = len(prefix)
        if i == rank:
            out.append(tuple(prefix))
            return
        for v in range(budget // comarks[i] + 1):
            rec(prefix + [v], budget - v * comarks[i])

    rec([], level)
    out.sort()
    return out


def _project_weight(rs: RootSystem, level: int, lam: Weight):
    # Signed alcove representative of lam, or None when lam + rho meets an
    # affine wall.  Alternates chamber reflection with the affine flip
    # y -> s_theta(y) + (level + h_vee) * theta.
    kappa = level + rs.dual_coxeter
    theta = rs.highest_root
    y = tuple(x + 1 for x in lam)
    sign = 1
    cap = 10 * kappa * rs.rank + 10
    for _ in range(cap):
        y, s, on_wall = reflect_to_dominant(rs, y)
        if on_wall:
            return None
        sign *= s
        lv = level_of(rs, y)
        if lv == kappa:
            return None
        if lv < kappa:
            return sign, tuple(v - 1 for v in y)
        y = tuple(y[i] - (lv - kappa) * theta[i] for i in range(rs.rank))
        sign = -sign
    raise ConventionError(f"alcove projection did not terminate for {lam} at level {level}")


def alcove_project(rs: RootSystem, level: int, x: RepElement) -> RepElement:
    """Linear projection of the representation ring onto the level alcove.

    Classes whose rho-shift lands on an affine wall map to zero; every other
    class reflects to a unique alcove representative with the signature of
    the reflecting element.  Weights already in the alcove are fixed.
    """
    acc: dict[Weight, int] = {}
    for lam, c in x.items():
        if any(v < 0 for v in lam):
            raise ValueError(f"alcove projection expects dominant support, got {lam}")
        res = _project_weight(rs, level, lam)
        if res is None:
            continue
        sign, mu = res
        acc[mu] = acc.get(mu, 0) + sign * c
    return RepElement(acc)


def _require_in_alcove(rs: RootSystem, level: int, lam: Weight):
    if any(v < 0 for v in lam) or level_of(rs, lam) > level:
        raise ValueError(f"weight {lam} is not a dominant weight of level <= {level}")


def _require_verified(rs: RootSystem, allow_unverified: bool):
    if not rs.simple_type.verified and not allow_unverified:
        raise UnverifiedTypeError(
            f"{rs.simple_type} is an exceptional type without a certified fusion product; "
            "pass allow_unverified=True to compute anyway (results are reported, not certified)"
        )


def fuse(rs: RootSystem, level: int, lam: Weight, mu: Weight, *, allow_unverified: bool = False) -> RepElement:
    """Fusion product of two alcove weights: tensor product then projection."""
    _require_verified(rs, allow_unverified)
    _require_in_alcove(rs, level, lam)
    _require_in_alcove(rs, level, mu)
    out = alcove_project(rs, level, tensor_decompose(rs, lam, mu))
    bad = {w: c for w, c in out.items() if c < 0}
    if bad:
        raise NegativeStructureError(
            f"negative fusion coefficients for {lam} x {mu} at level {level}: {bad}"
        )
    return out


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Ordered alcove basis plus the exact integer structure tensor.

    ``structure[a, b, c]`` is the coefficient of basis weight ``c`` in the
    product of basis weights ``a`` and ``b``.  Immutable and shareable; all
    queries are pure.
    """

    rs: RootSystem
    level: int
    basis: tuple[Weight, ...]
    structure: np.ndarray
    unit_index: int
    involution: tuple[int, ...]
    index: dict = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.basis)

    def weight_index(self, lam: Weight) -> int:
        try:
            return self.index[tuple(lam)]
        except KeyError:
            raise ValueError(f"weight {lam} is not in the level-{self.level} basis") from None

    def mult_matrix(self, x) -> np.ndarray:
        """Matrix of multiplication by ``x`` (basis index, weight, or RepElement)."""
        n = self.size
        if isinstance(x, RepElement):
            vec = np.zeros(n, dtype=object)
            for w, c in x.items():
                vec[self.weight_index(w)] += c
        elif isinstance(x, (int, np.integer)):
            vec = np.zeros(n, dtype=object)
            vec[int(x)] = 1
        else:
            vec = np.zeros(n, dtype=object)
            vec[self.weight_index(x)] = 1
        mats = self.structure.astype(object)
        out = np.zeros((n, n), dtype=object)
        for a in range(n):
            if vec[a]:
                out += vec[a] * mats[a].T
        return out

    def __repr__(self):
        return f"FusionRing({self.rs.simple_type}, level={self.level}, size={self.size})"


def build_fusion_ring(
    rs: RootSystem,
    level: int,
    *,
    allow_unverified: bool = False,
    basis_cap: int = DEFAULT_BASIS_CAP,
    assoc_cap: int = DEFAULT_ASSOC_CAP,
) -> FusionRing:
    """Fusion ring at the given level, with all build-time invariants checked.

    Associativity is verified exhaustively while the basis is at most
    ``assoc_cap`` elements, on a deterministic sample beyond that.  Any
    negative coefficient aborts construction.
    """
    _require_verified(rs, allow_unverified)
    basis = tuple(enumerate_level_weights(rs, level))
    n = len(basis)
    if n > basis_cap:
        raise CapacityError(f"alcove basis has {n} weights, above the cap {basis_cap}")
    index = {w: i for i, w in enumerate(basis)}
    tensor = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            prod = fuse(rs, level, basis[a], basis[b], allow_unverified=allow_unverified)
            for w, c in prod.items():
                ci = index.get(w)
                if ci is None:
                    raise ConventionError(f"fusion product left the alcove: {w}")
                tensor[a, b, ci] = c
                tensor[b, a, ci] = c

    unit_index = index[(0,) * rs.rank]
    involution = tuple(index[dual_weight(rs, w)] for w in basis)

    # Unit row and the coefficient-of-unit pairing.
    for b in range(n):
        row = np.zeros(n, dtype=np.int64)
        row[b] = 1
        if not np.array_equal(tensor[unit_index, b], row):
            raise ConventionError(f"unit row broken at basis index {b}")
        for a in range(n):
            expected = 1 if b == involution[a] else 0
            if tensor[a, b, unit_index] != expected:
                raise ConventionError(
                    f"unit-coefficient pairing broken at ({basis[a]}, {basis[b]})"
                )

    if n <= assoc_cap:
        left = np.einsum("abx,xcs->abcs", tensor, tensor)
        right = np.einsum("bcy,ays->abcs", tensor, tensor)
        if not np.array_equal(left, right):
            raise ConventionError("structure tensor is not associative")
    else:
        rng = np.random.default_rng(0)
        for a, b, c in rng.integers(0, n, size=(200, 3)):
            left = tensor[a, b] @ tensor[:, c, :]
            right = tensor[b, c] @ tensor[a, :, :]
            if not np.array_equal(left, right):
                raise ConventionError("structure tensor is not associative (sampled)")

    return FusionRing(
        rs=rs,
        level=level,
        basis=basis,
        structure=tensor,
        unit_index=unit_index,
        involution=involution,
        index=index,
    )


def three_point(ring: FusionRing, lam: Weight, mu: Weight, nu: Weight) -> int:
    """Genus-0 three-insertion dimension: coefficient of the unit in the triple product."""
    a = ring.weight_index(lam)
    b = ring.weight_index(mu)
    c = ring.weight_index(nu)
    return int(ring.structure[a, b, ring.involution[c]])


def sl2_three_point_oracle(p: int, q: int, r: int, level: int) -> int:
    """Closed-form rank-1 three-point rule, independent of the ring machinery.

    Returns 1 exactly when p+q+r is even, each label is at most half the sum,
    and half the sum is at most the level.
    """
    for x in (p, q, r):
        if not 0 <= x <= level:
            raise ValueError(f"label {x} outside [0, {level}]")
    s = p + q + r
    if s % 2:
        return 0
    m = s // 2
    return int(max(p, q, r) <= m <= level)


def casimir_element(ring: FusionRing) -> RepElement:
    """Sum over the basis of each weight times its dual, in the ring."""
    n = ring.size
    acc = np.zeros(n, dtype=object)
    for a in range(n):
        acc += ring.structure[a, ring.involution[a]].astype(object)
    return RepElement({ring.basis[c]: int(acc[c]) for c in range(n)})


def ring_trace(ring: FusionRing, x: RepElement) -> int:
    """Trace of the multiplication operator by ``x`` on the ring."""
    total = 0
    for w, c in x.items():
        a = ring.weight_index(w)
        total += c * int(np.trace(ring.structure[a]))
    return total


def genus_dimension(ring: FusionRing, genus: int, weights) -> int:
    """Exact genus-``genus`` dimension with the given insertions.

    Multiplies the insertions and ``genus`` copies of the Casimir element in
    the structure tensor and reads off the unit coefficient.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    n = ring.size
    vec = np.zeros(n, dtype=object)
    vec[ring.unit_index] = 1
    for w in weights:
        vec = ring.mult_matrix(tuple(w)) @ vec
    if genus:
        omega = ring.mult_matrix(casimir_element(ring))
        for _ in range(genus):
            vec = omega @ vec
    return int(vec[ring.unit_index])


# ---------------------------------------------------------------------------
# Abstract fusion-rule tables and the axiom verifier.
# ---------------------------------------------------------------------------


@dataclass(eq=True)
class FusionRuleTable:
    """Values of a candidate fusion rule on index multisets up to a depth.

    ``values`` maps sorted index tuples (the empty tuple included) to
    integers; missing keys within the depth mean zero.  Nothing is assumed:
    the verifier reports axiom status rather than trusting the table.
    """

    labels: tuple[str, ...]
    involution: tuple[int, ...]
    depth: int
    values: dict

    @property
    def size(self) -> int:
        return len(self.labels)

    def value(self, multiset) -> int:
        return self.values.get(tuple(sorted(multiset)), 0)

    def star(self, multiset) -> tuple:
        return tuple(sorted(self.involution[i] for i in multiset))


def table_from_ring(ring: FusionRing, depth: int = 5) -> FusionRuleTable:
    """Tabulate the ring's rule N(multiset) = unit coefficient of the product."""
    n = ring.size
    mats = [ring.structure[a].T.astype(object) for a in range(n)]
    unit = np.zeros(n, dtype=object)
    unit[ring.unit_index] = 1
    values = {(): 1}

    def fill(prefix, vec, start):
        deg = len(prefix)
        val = int(vec[ring.unit_index])
        if val:
            values[prefix] = val
        if deg == depth:
            return
        for a in range(start, n):
            fill(prefix + (a,), mats[a] @ vec, a)

    fill((), unit, 0)
    return FusionRuleTable(
        labels=tuple(str(list(w)) for w in ring.basis),
        involution=ring.involution,
        depth=depth,
        values=values,
    )


@dataclass
class AxiomReport:
    """Outcome of checking the fusion-rule axioms on a table."""

    f0_ok: bool
    f1_ok: bool
    f1_failures: list
    f2_ok: bool
    f2_failures: list
    kernel: tuple
    nondegenerate: bool
    unit: int | None
    gorenstein_ok: bool
    gorenstein_failures: list

    @property
    def passed(self) -> bool:
        return (
            self.f0_ok
            and self.f1_ok
            and self.f2_ok
            and self.nondegenerate
            and self.unit is not None
            and self.gorenstein_ok
        )


def verify_fusion_rule_axioms(table: FusionRuleTable, depth: int = 4) -> AxiomReport:
    """Check normalization, star symmetry, and the product-splitting axiom.

    Also reports the kernel (indices annihilating everything tested), the
    derived unit (the unique index with a singleton value of 1), and the
    orthonormality of the two-point pairing.  Requires the table to carry
    values to degree ``max(3, depth)`` and, for the splitting checks that
    look one degree higher, uses the table's actual depth.
    """
    need = max(3, depth)
    if table.depth < need:
        raise IncompleteTableError(
            f"table has depth {table.depth}, need at least {need} for this check"
        )
    n = table.size
    idx = range(n)
    failures_cap = 50

    f0_ok = table.value(()) == 1 and any(table.value((a,)) > 0 for a in idx)

    f1_failures = []
    for deg in range(1, depth + 1):
        for ms in itertools.combinations_with_replacement(idx, deg):
            if table.value(ms) != table.value(table.star(ms)):
                if len(f1_failures) < failures_cap:
                    f1_failures.append(ms)

    f2_failures = []
    for dx in range(0, depth + 1):
        if dx + 1 > table.depth:
            continue
        for dy in range(dx, depth + 1 - dx):
            if dy + 1 > table.depth:
                continue
            for x in itertools.combinations_with_replacement(idx, dx):
                for y in itertools.combinations_with_replacement(idx, dy):
                    lhs = table.value(x + y)
                    rhs = sum(
                        table.value(x + (l,)) * table.value(y + (table.involution[l],))
                        for l in idx
                    )
                    if lhs != rhs:
                        if len(f2_failures) < failures_cap:
                            f2_failures.append((x, y))

    probe_depth = min(depth, table.depth - 1)
    kernel = []
    for a in idx:
        hit = False
        for deg in range(0, probe_depth + 1):
            for ms in itertools.combinations_with_replacement(idx, deg):
                if table.value((a,) + ms):
                    hit = True
                    break
            if hit:
                break
        if not hit:
            kernel.append(a)

    singles = [a for a in idx if table.value((a,)) == 1]
    unit = singles[0] if len(singles) == 1 and sum(table.value((a,)) ** 2 for a in idx) == 1 else None

    gorenstein_failures = [
        (a, b)
        for a in idx
        for b in idx
        if table.value((a, table.involution[b])) != (1 if a == b else 0)
    ]

    return AxiomReport(
        f0_ok=f0_ok,
        f1_ok=not f1_failures,
        f1_failures=f1_failures,
        f2_ok=not f2_failures,
        f2_failures=f2_failures,
        kernel=tuple(kernel),
        nondegenerate=not kernel,
        unit=unit,
        gorenstein_ok=not gorenstein_failures,
        gorenstein_failures=gorenstein_failures[:failures_cap],
    )

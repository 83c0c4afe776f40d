"""Finite-dimensional representation-ring computations.

Dimensions via the Weyl product formula, weight multiplicities via the
Freudenthal recursion, tensor decompositions via shifted dominant reflection
of one factor's weight diagram, the dual involution, and the decomposition of
a module under the sl2 triple attached to the highest root.  Everything is
exact; Fractions appear only in intermediate pairings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .liecore import (
    RootSystem,
    Weight,
    killing_pairing,
    level_of,
    reflect_to_dominant,
    root_pairing,
    weyl_orbit,
)


class RepElement:
    """Finite integer linear combination of dominant weights.

    Zero coefficients are never stored; instances compare by content and
    support addition, subtraction, and integer scaling.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {w: int(c) for w, c in dict(coeffs or {}).items() if c}

    @classmethod
    def basis(cls, w: Weight) -> "RepElement":
        return cls({tuple(w): 1})

    @classmethod
    def zero(cls) -> "RepElement":
        return cls()

    def items(self):
        return self.coeffs.items()

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return RepElement(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) - c
        return RepElement(out)

    def __rmul__(self, k: int):
        return RepElement({w: k * c for w, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, RepElement) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "RepElement(0)"
        terms = " + ".join(f"{c}*[{w}]" for w, c in sorted(self.coeffs.items()))
        return f"RepElement({terms})"


def _require_dominant(lam: Weight):
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {lam} is not dominant")


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Dimension of the simple module with highest weight ``lam``.

    Product over positive roots of (lam+rho|alpha)/(rho|alpha), evaluated in
    exact rationals and asserted integral.
    """
    _require_dominant(lam)
    shifted = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for idx in range(len(rs.positive_roots)):
        num *= root_pairing(rs, shifted, idx) / root_pairing(rs, rs.rho, idx)
    assert num.denominator == 1 and num > 0
    return int(num)


@dataclass(frozen=True, eq=False)
class WeightMultiplicityTable:
    """Weight diagram of one simple module: multiplicities over every chamber."""

    rep_highest: Weight
    dominant_mults: dict
    mults: dict
    dimension: int


def _dominant_weight_candidates(rs: RootSystem, lam: Weight):
    # All dominant mu with lam - mu a nonnegative integer combination of
    # simple roots; the coefficient box is bounded by n_j <= (lam|w_j)/d_j.
    rank = rs.rank
    bounds = []
    for j in range(rank):
        pairing = sum(Fraction(lam[i]) * rs.gram[i][j] for i in range(rank))
        bounds.append(int(pairing / rs.symmetrizer[j]))
    out = []
    for n in itertools.product(*(range(b + 1) for b in bounds)):
        mu = tuple(lam[i] - sum(rs.cartan[i][j] * n[j] for j in range(rank)) for i in range(rank))
        if all(x >= 0 for x in mu):
            out.append((sum(n), n, mu))
    out.sort()
    return out


@lru_cache(maxsize=None)
def weight_multiplicities(rs: RootSystem, lam: Weight) -> WeightMultiplicityTable:
    """Freudenthal recursion over the dominant weights below ``lam``.

    The full table (all chambers) is obtained by expanding Weyl orbits; the
    total count is cross-checked against the Weyl dimension formula.
    """
    lam = tuple(lam)
    _require_dominant(lam)
    candidates = _dominant_weight_candidates(rs, lam)
    mults: dict[Weight, int] = {}
    lam_norm = killing_pairing(rs, tuple(x + 1 for x in lam), tuple(x + 1 for x in lam))

    def mult_at(nu):
        rep, _, _ = reflect_to_dominant(rs, nu)
        return mults.get(rep, 0)

    for depth, n, mu in candidates:
        if depth == 0:
            mults[mu] = 1
            continue
        denom = lam_norm - killing_pairing(rs, tuple(x + 1 for x in mu), tuple(x + 1 for x in mu))
        total = Fraction(0)
        for ridx, alpha in enumerate(rs.positive_roots):
            height = sum(alpha)
            alpha_wt = rs.positive_roots_weight[ridx]
            # mu + k*alpha stays under lam only while the root-coordinate
            # depth allows it.
            kmax = min(n[j] // alpha[j] for j in range(rs.rank) if alpha[j])
            for k in range(1, kmax + 1):
                nu = tuple(mu[i] + k * alpha_wt[i] for i in range(rs.rank))
                m = mult_at(nu)
                if m:
                    total += m * root_pairing(rs, nu, ridx)
        value = 2 * total / denom
        assert value.denominator == 1 and value >= 1
        mults[mu] = int(value)

    full: dict[Weight, int] = {}
    for mu, m in mults.items():
        for nu in weyl_orbit(rs, mu):
            full[nu] = m
    dim = sum(full.values())
    assert dim == weyl_dimension(rs, lam)
    return WeightMultiplicityTable(
        rep_highest=lam, dominant_mults=mults, mults=full, dimension=dim
    )


def tensor_decompose(rs: RootSystem, lam: Weight, mu: Weight) -> RepElement:
    """Decompose the tensor product of two simple modules.

    Walks the weight diagram of the smaller factor, reflecting
    ``lam + rho + nu`` to the dominant chamber with its sign and dropping
    wall terms.  Coefficients are the tensor multiplicities.
    """
    lam, mu = tuple(lam), tuple(mu)
    _require_dominant(lam)
    _require_dominant(mu)
    if weyl_dimension(rs, mu) > weyl_dimension(rs, lam):
        lam, mu = mu, lam
    table = weight_multiplicities(rs, mu)
    shifted = tuple(x + 1 for x in lam)
    acc: dict[Weight, int] = {}
    for nu, m in table.mults.items():
        x = tuple(shifted[i] + nu[i] for i in range(rs.rank))
        rep, sign, on_wall = reflect_to_dominant(rs, x)
        if on_wall:
            continue
        key = tuple(v - 1 for v in rep)
        acc[key] = acc.get(key, 0) + sign * m
    out = RepElement(acc)
    assert all(c > 0 for c in out.coeffs.values())
    return out


def dual_weight(rs: RootSystem, lam: Weight) -> Weight:
    """Highest weight of the dual module: dominant representative of -lam."""
    _require_dominant(lam)
    rep, _, _ = reflect_to_dominant(rs, tuple(-x for x in lam))
    return rep


def theta_spin_decomposition(rs: RootSystem, lam: Weight) -> dict[int, int]:
    """Isotypic multiplicities of the module under the highest-root sl2.

    Keys are doubled spins (2i stays integral); entry 2i counts the spin-i
    isotypic components.  Computed from the string counts
    ``m(k) - m(k+2)`` where ``m(k)`` totals weight multiplicities at
    highest-coroot pairing ``k``.
    """
    _require_dominant(lam)
    table = weight_multiplicities(rs, tuple(lam))
    by_level: dict[int, int] = {}
    for nu, m in table.mults.items():
        k = level_of(rs, nu)
        if k >= 0:
            by_level[k] = by_level.get(k, 0) + m
    top = level_of(rs, lam)
    out = {}
    for k in range(top, -1, -1):
        count = by_level.get(k, 0) - by_level.get(k + 2, 0)
        assert count >= 0
        if count:
            out[k] = count
    assert sum((k + 1) * c for k, c in out.items()) == table.dimension
    return out

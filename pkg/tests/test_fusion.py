import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionring import (
    NegativeStructureError,
    RepElement,
    SimpleType,
    UnverifiedTypeError,
    alcove_project,
    build_fusion_ring,
    build_root_system,
    casimir_element,
    dual_weight,
    enumerate_level_weights,
    fuse,
    genus_dimension,
    level_of,
    ring_trace,
    sl2_three_point_oracle,
    tensor_decompose,
    three_point,
)

from helpers import GRID, get_ring, get_rs


def test_enumerate_level_weights_examples():
    a1, a2 = get_rs("A1"), get_rs("A2")
    assert enumerate_level_weights(a1, 2) == [(0,), (1,), (2,)]
    assert enumerate_level_weights(a2, 1) == [(0, 0), (0, 1), (1, 0)]
    with pytest.raises(ValueError):
        enumerate_level_weights(a1, 0)


@pytest.mark.parametrize("name,level", GRID)
def test_level_basis_closed_under_dual(name, level):
    rs = get_rs(name)
    basis = enumerate_level_weights(rs, level)
    assert basis == sorted(basis)
    assert (0,) * rs.rank in basis
    assert {dual_weight(rs, w) for w in basis} == set(basis)
    assert all(level_of(rs, w) <= level for w in basis)


def test_alcove_project_examples():
    a1 = get_rs("A1")
    assert alcove_project(a1, 1, RepElement.basis((2,))) == RepElement.zero()
    assert alcove_project(a1, 1, RepElement.basis((3,))) == RepElement({(1,): -1})
    a2 = get_rs("A2")
    for lam in enumerate_level_weights(a2, 2):
        assert alcove_project(a2, 2, RepElement.basis(lam)) == RepElement.basis(lam)


@pytest.mark.parametrize("name,level", GRID)
def test_alcove_project_kills_wall_classes(name, level):
    # Classes one level above the bound have their shift on the affine wall.
    rs = get_rs(name)
    above = [w for w in enumerate_level_weights(rs, level + 1) if level_of(rs, w) == level + 1]
    assert above
    for lam in above:
        assert alcove_project(rs, level, RepElement.basis(lam)) == RepElement.zero()


def test_fuse_examples():
    a1, a2 = get_rs("A1"), get_rs("A2")
    assert fuse(a1, 1, (1,), (1,)) == RepElement.basis((0,))
    assert fuse(a1, 2, (1,), (1,)) == RepElement({(0,): 1, (2,): 1})
    assert fuse(a1, 2, (2,), (2,)) == RepElement.basis((0,))
    assert fuse(a2, 1, (1, 0), (1, 0)) == RepElement.basis((0, 1))


def test_fuse_validation():
    a1 = get_rs("A1")
    with pytest.raises(ValueError):
        fuse(a1, 1, (2,), (1,))
    f4 = build_root_system(SimpleType("F", 4))
    with pytest.raises(UnverifiedTypeError):
        fuse(f4, 1, (0, 0, 0, 0), (0, 0, 0, 1))
    out = fuse(f4, 1, (0, 0, 0, 1), (0, 0, 0, 1), allow_unverified=True)
    assert out == RepElement({(0, 0, 0, 0): 1, (0, 0, 0, 1): 1})


def test_ring_small_structure():
    r1 = get_ring("A1", 1)
    assert r1.size == 2
    assert r1.structure[1, 1].tolist() == [1, 0]
    r2 = get_ring("A1", 2)
    assert r2.size == 3
    assert r2.structure[1, 1].tolist() == [1, 0, 1]
    assert r2.structure[1, 2].tolist() == [0, 1, 0]
    assert r2.structure[2, 2].tolist() == [1, 0, 0]
    z3 = get_ring("A2", 1)
    a = z3.weight_index((1, 0))
    prod = z3.structure[a, a]
    assert prod[z3.weight_index((0, 1))] == 1 and prod.sum() == 1


@pytest.mark.parametrize("name,level", GRID)
def test_ring_invariants(name, level):
    ring = get_ring(name, level)
    n = ring.size
    t = ring.structure
    assert np.array_equal(t, t.transpose(1, 0, 2))
    assert np.all(t >= 0)
    assert ring.basis[ring.unit_index] == (0,) * ring.rs.rank
    left = np.einsum("abx,xcs->abcs", t, t)
    right = np.einsum("bcy,ays->abcs", t, t)
    assert np.array_equal(left, right)
    inv = list(ring.involution)
    star = t[np.ix_(inv, inv)][:, :, inv]
    assert np.array_equal(star, t)


@pytest.mark.parametrize("name,level", GRID)
def test_fusion_truncation_rules(name, level):
    # Products are plain tensor products when levels add up within the bound,
    # and lose exactly the top-level classes when they overshoot by one.
    rs = get_rs(name)
    basis = enumerate_level_weights(rs, level)
    for lam in basis:
        for mu in basis:
            s = level_of(rs, lam) + level_of(rs, mu)
            if s <= level:
                assert fuse(rs, level, lam, mu) == tensor_decompose(rs, lam, mu)
            elif s == level + 1:
                full = tensor_decompose(rs, lam, mu)
                trimmed = RepElement(
                    {nu: c for nu, c in full.items() if level_of(rs, nu) <= level}
                )
                assert fuse(rs, level, lam, mu) == trimmed


def test_three_point_examples():
    r2 = get_ring("A1", 2)
    assert three_point(r2, (1,), (1,), (2,)) == 1
    r1 = get_ring("A1", 1)
    assert three_point(r1, (1,), (1,), (1,)) == 0
    for ring in (r1, r2, get_ring("A2", 2)):
        zero = (0,) * ring.rs.rank
        for lam in ring.basis:
            for mu in ring.basis:
                expected = 1 if mu == dual_weight(ring.rs, lam) else 0
                assert three_point(ring, lam, mu, zero) == expected


@pytest.mark.parametrize("name,level", [("A2", 2), ("C2", 2), ("G2", 2)])
def test_three_point_symmetries(name, level):
    ring = get_ring(name, level)
    rs = ring.rs
    for lam in ring.basis:
        for mu in ring.basis:
            for nu in ring.basis:
                v = three_point(ring, lam, mu, nu)
                assert v == three_point(ring, mu, nu, lam)
                assert v == three_point(ring, nu, lam, mu)
                assert v == three_point(
                    ring, dual_weight(rs, lam), dual_weight(rs, mu), dual_weight(rs, nu)
                )


def test_sl2_oracle():
    assert sl2_three_point_oracle(1, 1, 2, 2) == 1
    assert sl2_three_point_oracle(1, 1, 1, 5) == 0
    assert sl2_three_point_oracle(2, 2, 2, 2) == 0
    assert sl2_three_point_oracle(2, 2, 2, 3) == 1
    with pytest.raises(ValueError):
        sl2_three_point_oracle(3, 0, 0, 2)


def test_casimir_examples():
    r1 = get_ring("A1", 1)
    assert casimir_element(r1) == RepElement({(0,): 2})
    r2 = get_ring("A1", 2)
    assert casimir_element(r2) == RepElement({(0,): 3, (2,): 1})


@pytest.mark.parametrize("name,level", GRID)
def test_trace_identity(name, level):
    # Trace of multiplication equals the unit coefficient against the Casimir.
    ring = get_ring(name, level)
    omega = ring.mult_matrix(casimir_element(ring))
    for a, w in enumerate(ring.basis):
        x = RepElement.basis(w)
        lhs = ring_trace(ring, x)
        rhs = int((omega @ ring.mult_matrix(a))[ring.unit_index, ring.unit_index])
        assert lhs == rhs
        assert three_point(ring, w, dual_weight(ring.rs, w), (0,) * ring.rs.rank) == 1


def test_genus_examples():
    r1 = get_ring("A1", 1)
    assert genus_dimension(r1, 2, []) == 4
    for g in range(11):
        assert genus_dimension(r1, g, []) == 2**g
    for ring in (r1, get_ring("A2", 1), get_ring("G2", 1)):
        assert genus_dimension(ring, 0, []) == 1
        for lam in ring.basis:
            assert genus_dimension(ring, 0, [lam, dual_weight(ring.rs, lam)]) == 1


@pytest.mark.parametrize("name,level", [("A1", 3), ("A2", 2), ("C2", 1), ("G2", 2)])
def test_genus_factorization(name, level):
    ring = get_ring(name, level)
    rs = ring.rs
    samples = [[], [ring.basis[-1]], [ring.basis[1], ring.basis[-1]]]
    for g in (1, 2):
        for x in samples:
            direct = genus_dimension(ring, g, x)
            split = sum(
                genus_dimension(ring, g - 1, list(x) + [nu, dual_weight(rs, nu)])
                for nu in ring.basis
            )
            assert direct == split


def test_genus_split_rule():
    # Handle-and-insertion splitting across two subsurfaces.
    ring = get_ring("A1", 2)
    rs = ring.rs
    x, y = [(1,)], [(2,), (1,)]
    for p, q in [(0, 1), (1, 1), (2, 0)]:
        lhs = genus_dimension(ring, p + q, x + y)
        rhs = sum(
            genus_dimension(ring, p, x + [lam]) * genus_dimension(ring, q, y + [dual_weight(rs, lam)])
            for lam in ring.basis
        )
        assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([("A1", 4), ("A2", 2), ("C2", 2)]), st.data())
def test_genus_dimension_nonnegative(instance, data):
    ring = get_ring(*instance)
    k = data.draw(st.integers(0, 3))
    weights = [data.draw(st.sampled_from(ring.basis)) for _ in range(k)]
    g = data.draw(st.integers(0, 2))
    assert genus_dimension(ring, g, weights) >= 0


def test_unverified_ring_gate():
    f4 = build_root_system(SimpleType("F", 4))
    with pytest.raises(UnverifiedTypeError):
        build_fusion_ring(f4, 1)
    ring = build_fusion_ring(f4, 1, allow_unverified=True)
    assert ring.size == 2
    assert genus_dimension(ring, 1, []) == 2

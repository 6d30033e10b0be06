import random

import pytest

from griess_lab.cocycle import build_epsilon0, verify_triviality
from griess_lab.lattice import (
    Lattice,
    block_embed,
    build_standard,
    direct_sum,
    map_lattice,
    shell,
)
from griess_lab.numerics import dot


@pytest.fixture(scope="module")
def table(e8):
    return build_epsilon0(e8)


@pytest.fixture(scope="module")
def triple_table(e8):
    return build_epsilon0(direct_sum([e8, e8, e8], label="E8.E8.E8"))


def random_vector(L, rng):
    return L.vector_from_coords([rng.randint(-3, 3) for _ in range(L.rank)])


def test_rejects_odd_lattice():
    with pytest.raises(ValueError):
        build_epsilon0(build_standard("Z", 3))


def test_diagonal_case(table, e8):
    for i, b in enumerate(e8.basis):
        assert table.bits[i][i] == (int(dot(b, b)) // 2) % 2
        assert table.epsilon(b, b) == table.bits[i][i]


def test_antisymmetry_congruence_on_random_pairs(table, e8):
    rng = random.Random(1201)
    for _ in range(1000):
        x = random_vector(e8, rng)
        y = random_vector(e8, rng)
        assert (table.epsilon(x, y) + table.epsilon(y, x)) % 2 == int(dot(x, y)) % 2


def test_square_congruence_on_random_vectors(table, e8):
    rng = random.Random(88)
    for _ in range(300):
        x = random_vector(e8, rng)
        assert table.epsilon(x, x) == (int(dot(x, x)) // 2) % 2


def test_bilinearity(table, e8):
    rng = random.Random(5150)
    for _ in range(200):
        x, y, z = (random_vector(e8, rng) for _ in range(3))
        s = tuple(a + b for a, b in zip(x, y))
        assert table.epsilon(s, z) == (table.epsilon(x, z) + table.epsilon(y, z)) % 2
        assert table.epsilon(z, s) == (table.epsilon(z, x) + table.epsilon(z, y)) % 2


def test_zero_argument(table, e8):
    assert table.epsilon(e8.basis[0], (0,) * 8) == 0


def test_roots_square_to_minus_one(table, e8, cache):
    # the sign of e^a e^{-a} for every norm-2 vector
    for alpha in shell(e8, 2, cache).vectors:
        assert table.epsilon(alpha, tuple(-x for x in alpha)) == 1
        assert table.sign(alpha, tuple(-x for x in alpha)) == -1


def test_componentwise_extension(table, triple_table, e8):
    rng = random.Random(77)
    for _ in range(100):
        a, b, c, d, e, f = (random_vector(e8, rng) for _ in range(6))
        left = triple_table.epsilon(a + b + c, d + e + f)
        right = (table.epsilon(a, d) + table.epsilon(b, e) + table.epsilon(c, f)) % 2
        assert left == right


def test_trivial_on_difference_sublattices(triple_table, e8):
    for i, j in ((0, 1), (1, 2), (0, 2)):
        S = map_lattice(
            lambda v, i=i, j=j: tuple(
                x - y for x, y in zip(block_embed(v, i, 3), block_embed(v, j, 3))),
            e8, f"diff{i}{j}")
        assert verify_triviality(triple_table, S)


def test_nontrivial_on_a_single_factor(triple_table, e8):
    S = map_lattice(lambda v: block_embed(v, 0, 3), e8, "factor0")
    assert not verify_triviality(triple_table, S)


def test_rejects_vectors_outside_lattice(table):
    with pytest.raises(ValueError):
        table.epsilon((1, 0, 0, 0, 0, 0, 0, 0), (0,) * 8)

import random
from fractions import Fraction

import pytest

from stratdual.rational import (
    RationalMatrix,
    Solver,
    SubspaceBasis,
    complement_basis,
    image_basis,
    kernel_basis,
    rref,
    solve,
    vec,
)


def M(rows):
    return RationalMatrix.from_rows(rows)


def test_rref_identity_already_reduced():
    pivots, reduced = rref(RationalMatrix.identity(2))
    assert pivots == (0, 1)
    assert reduced == RationalMatrix.identity(2)


def test_rref_zero_matrix():
    pivots, reduced = rref(RationalMatrix.zeros(2, 2))
    assert pivots == ()
    assert reduced == RationalMatrix.zeros(2, 2)


def test_rref_proportional_rows():
    pivots, reduced = rref(M([[1, 2], [2, 4]]))
    assert pivots == (0,)
    assert reduced == M([[1, 2], [0, 0]])


def test_rref_idempotent():
    m = M([[2, 4, 1], [3, 5, 0], [5, 9, 1]])
    pivots, reduced = rref(m)
    pivots2, reduced2 = rref(reduced)
    assert pivots == pivots2
    assert reduced == reduced2


def test_rref_transform_reproduces_input_exactly():
    rng = random.Random(7)
    for _ in range(50):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = RationalMatrix(rows, cols, {
            (i, j): rng.randint(-3, 3)
            for i in range(rows) for j in range(cols) if rng.random() < 0.6
        })
        pivots, reduced, t = rref(m, transform=True)
        assert t @ m == reduced
        # T is invertible: undo it and recover m exactly.
        t_pivots, t_red, t_inv = rref(t, transform=True)
        assert t_red == RationalMatrix.identity(rows)
        assert t_inv @ reduced == m


def test_kernel_identity_empty():
    assert kernel_basis(RationalMatrix.identity(3)).count == 0


def test_kernel_zero_full():
    k = kernel_basis(RationalMatrix.zeros(3, 3))
    assert k.count == 3
    assert k.matrix() == RationalMatrix.identity(3)


def test_kernel_one_equation():
    k = kernel_basis(M([[1, 1]]))
    assert k.vectors == (vec([1, -1]),)


def test_image_identity_and_zero():
    assert image_basis(RationalMatrix.identity(2)).matrix() == RationalMatrix.identity(2)
    assert image_basis(RationalMatrix.zeros(3, 2)).count == 0


def test_image_rank_one():
    b = image_basis(M([[1, 2], [2, 4]]))
    assert b.vectors == (vec([1, 2]),)


def test_rank_nullity_exact():
    rng = random.Random(3)
    for _ in range(100):
        rows = rng.randint(0, 5)
        cols = rng.randint(0, 5)
        m = RationalMatrix(rows, cols, {
            (i, j): rng.randint(-3, 3)
            for i in range(rows) for j in range(cols) if rng.random() < 0.5
        })
        assert m.rank() + kernel_basis(m).count == cols


def test_complement_lex_simple():
    sub = SubspaceBasis.from_vectors(2, [vec([1, 0])])
    assert complement_basis(sub, "lex").vectors == (vec([0, 1]),)


def test_complement_empty_sub():
    sub = SubspaceBasis.from_vectors(3, [])
    assert complement_basis(sub, "lex").matrix() == RationalMatrix.identity(3)


def test_complement_strategies_differ():
    sub = SubspaceBasis.from_vectors(2, [vec([1, 1])])
    lex = complement_basis(sub, "lex")
    rev = complement_basis(sub, "reverse-lex")
    assert lex.vectors == (vec([0, 1]),)
    assert rev.vectors == (vec([1, 0]),)
    for comp in (lex, rev):
        assembled = sub.matrix().hstack(comp.matrix())
        assert assembled.rank() == 2


def test_complement_direct_sum_random():
    # 200 random sparse matrices with entries in {-3..3}: sub ∪ complement is
    # always a full-rank square assembly, for both strategies.
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 6)
        cols = rng.randint(0, n)
        m = RationalMatrix(n, cols, {
            (i, j): rng.randint(-3, 3)
            for i in range(n) for j in range(cols) if rng.random() < 0.5
        })
        sub = image_basis(m)
        for strategy in ("lex", "reverse-lex"):
            comp = complement_basis(sub, strategy)
            assert sub.count + comp.count == n
            assembled = sub.matrix().hstack(comp.matrix())
            assert assembled.rank() == n


def test_solve_identity():
    assert solve(RationalMatrix.identity(2), vec([3, 5])) == vec([3, 5])


def test_solve_no_solution():
    assert solve(RationalMatrix.zeros(1, 1), vec([1])) is None


def test_solve_underdetermined_verifies():
    m = M([[1, 2], [2, 4]])
    x = solve(m, vec([1, 2]))
    assert x is not None
    assert m.apply(x) == vec([1, 2])


def test_solver_reuse_and_matrix_rhs():
    m = M([[1, 1], [0, 1], [1, 0]])
    s = Solver(m)
    b = RationalMatrix.from_columns([vec([2, 1, 1]), vec([0, 0, 0])], 3)
    x = s.solve_matrix(b)
    assert x is not None
    assert m @ x == b
    assert s.solve(vec([1, 0, 0])) is None


def test_zero_dimension_edges():
    empty = RationalMatrix.zeros(0, 3)
    assert rref(empty)[0] == ()
    assert kernel_basis(empty).count == 3
    tall = RationalMatrix.zeros(3, 0)
    assert kernel_basis(tall).count == 0
    assert solve(tall, vec([0, 0, 0])) == ()
    assert solve(tall, vec([1, 0, 0])) is None


def test_subspace_reduce_is_canonical_coset_rep():
    sub = SubspaceBasis.from_vectors(3, [vec([1, 0, 2]), vec([0, 1, 1])])
    v = vec([3, 5, Fraction(1, 2)])
    r = sub.reduce(v)
    assert r[0] == 0 and r[1] == 0
    assert sub.contains(tuple(a - b for a, b in zip(v, r)))


def test_subspace_dependence_rejected():
    with pytest.raises(ValueError):
        SubspaceBasis.from_vectors(2, [vec([1, 1]), vec([2, 2])])

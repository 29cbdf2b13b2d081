import random
from fractions import Fraction

import pytest

from stratdual import examples
from stratdual.cochains import (
    CochainComplex,
    PairComplexes,
    ShortExactSequence,
    chain_vector,
    induced_map,
    integrate,
    pair_against_chain,
    relative_complex,
    restriction_map,
    simplicial_cochains,
)
from stratdual.errors import InternalExactnessError, ParseError
from stratdual.rational import RationalMatrix, kernel_basis, vec
from stratdual.simplicial import SimplicialComplex


def betti(K):
    C, _ = simplicial_cochains(K)
    return C.betti()


def test_single_edge_dims_and_differential():
    K = SimplicialComplex.from_facets([[0, 1]])
    C, _ = simplicial_cochains(K)
    assert C.dims == (2, 1)
    # d(phi)= -(-1)^0 phi∘∂: vertex duals map to ∓(edge dual).
    assert C.d[0].dense() == [[Fraction(1), Fraction(-1)]]


def test_triangle_boundary_cohomology():
    # Hand elimination of the 3x3 incidence matrix gives rank 2.
    K = examples.get_complex("s1-triangle")
    C, _ = simplicial_cochains(K)
    assert C.d[0].rank() == 2
    assert C.betti() == (1, 1)


def test_torus_betti():
    assert betti(examples.get_complex("t2-7")) == (1, 2, 1)


def test_disk_annulus_solid_torus_betti():
    assert betti(examples.get_complex("disk")) == (1, 0, 0)
    assert betti(examples.get_complex("annulus")) == (1, 1, 0)
    assert betti(examples.get_complex("solid-torus")) == (1, 1, 0, 0)


def test_octahedron_sphere_betti():
    X = SimplicialComplex.from_facets(
        examples.DECOMPOSITION_DOCUMENTS["octahedron-marked"]["facets"], name="S2")
    assert betti(X) == (1, 0, 1)


def test_euler_characteristic_matches_betti():
    for name in ("s1-triangle", "t2-7", "disk", "annulus", "solid-torus"):
        K = examples.get_complex(name)
        b = betti(K)
        assert K.euler_characteristic() == sum((-1) ** r * b[r] for r in range(len(b)))


def test_cohomology_out_of_range_is_zero():
    C, _ = simplicial_cochains(examples.get_complex("disk"))
    assert C.cohomology(5).dimension == 0


def test_link_betti_poincare_duality():
    # Links of the bundled decompositions are closed oriented manifolds.
    for name in ("disk-cone-s1", "octahedron-marked", "x2-cone-torus"):
        D = examples.get_decomposition(name)
        b = betti(D.L)
        c = D.n - 1
        for r in range(c + 1):
            assert b[r] == b[c - r]


def test_cup_leibniz_exact_on_basis_pairs():
    for name in ("s1-triangle", "disk", "annulus", "t2-7"):
        K = examples.get_complex(name)
        C, cup = simplicial_cochains(K)
        top = C.top
        for r in range(top + 1):
            for s in range(top + 1 - r):
                sign = Fraction(-1) ** r
                for i in range(C.dim(r)):
                    a = tuple(Fraction(int(x == i)) for x in range(C.dim(r)))
                    da = C.d[r].apply(a)
                    for j in range(C.dim(s)):
                        b = tuple(Fraction(int(x == j)) for x in range(C.dim(s)))
                        db = C.d[s].apply(b)
                        lhs = C.diff(r + s).apply(cup.cup(r, a, s, b))
                        rhs = tuple(
                            p + sign * q
                            for p, q in zip(cup.cup(r + 1, da, s, b),
                                            cup.cup(r, a, s + 1, db)))
                        assert lhs == rhs


def test_cup_associativity_exact_on_basis_triples():
    for name in ("s1-triangle", "disk", "t2-7"):
        K = examples.get_complex(name)
        C, cup = simplicial_cochains(K)
        top = C.top
        for r in range(top + 1):
            for s in range(top + 1 - r):
                for t in range(top + 1 - r - s):
                    for i in range(C.dim(r)):
                        a = tuple(Fraction(int(x == i)) for x in range(C.dim(r)))
                        for j in range(C.dim(s)):
                            b = tuple(Fraction(int(x == j)) for x in range(C.dim(s)))
                            ab = cup.cup(r, a, s, b)
                            for k in range(C.dim(t)):
                                c = tuple(Fraction(int(x == k)) for x in range(C.dim(t)))
                                bc = cup.cup(s, b, t, c)
                                assert cup.cup(r + s, ab, t, c) == cup.cup(r, a, s + t, bc)


def test_graded_commutativity_up_to_coboundary():
    # a∪b - (-1)^{|a||b|} b∪a is a coboundary for cohomology representatives.
    from stratdual.rational import Solver
    for name in ("t2-7", "annulus"):
        K = examples.get_complex(name)
        C, cup = simplicial_cochains(K)
        for r in range(C.top + 1):
            for s in range(C.top + 1 - r):
                for a in C.cohomology(r).representatives:
                    for b in C.cohomology(s).representatives:
                        ab = cup.cup(r, a, s, b)
                        ba = cup.cup(s, b, r, a)
                        sign = Fraction(-1) ** (r * s)
                        diff = tuple(x - sign * y for x, y in zip(ab, ba))
                        assert Solver(C.diff(r + s - 1)).solve(diff) is not None


def test_restriction_identity_and_empty():
    K = examples.get_complex("disk")
    mats = restriction_map(K, K)
    for r, m in enumerate(mats):
        assert m == RationalMatrix.identity(K.n_simplices(r))


def test_restriction_solid_triangle_boundary():
    K = examples.get_complex("disk")
    A = SimplicialComplex.from_facets([[0, 1], [1, 2], [0, 2]], name="bd")
    mats = restriction_map(K, A)
    # Degree 1: all three edges restrict; kernel is zero there.
    assert mats[1].rank() == 3
    assert kernel_basis(mats[1]).count == 0
    # Degree 2: everything dies.
    assert mats[2].is_zero() and mats[2].rows == 0


def test_restriction_not_subcomplex():
    K = examples.get_complex("disk")
    A = SimplicialComplex.from_facets([[0, 3]], name="stray")
    with pytest.raises(ParseError):
        restriction_map(K, A)


def test_relative_complex_empty_and_full():
    K = examples.get_complex("disk")
    rel, include = relative_complex(K, SimplicialComplex.from_facets([[9]], name="pt"))
    # Relative to a disjoint point: same dims except the point is not in K,
    # so nothing is removed.
    assert rel.dims == (3, 3, 1)
    rel2, _ = relative_complex(K, K)
    assert rel2.dims == (0, 0, 0)


def test_relative_solid_torus_lefschetz_dims():
    # H^r(M, ∂M) matches H_{n-r}(M) computed independently from chain ranks.
    D = examples.get_decomposition("x2-cone-torus")
    pair = PairComplexes(D.M, D.L)
    rel_betti = pair.rel.betti()
    chain_betti = []
    for r in range(D.n + 1):
        boundary_r = D.M.boundary_matrix(r)
        boundary_r1 = D.M.boundary_matrix(r + 1)
        chain_betti.append(kernel_basis(boundary_r).count - boundary_r1.rank())
    assert rel_betti == (0, 0, 1, 1)
    assert tuple(chain_betti[D.n - r] for r in range(D.n + 1)) == rel_betti


def test_pair_complexes_checks_exactness():
    D = examples.get_decomposition("octahedron-marked")
    pair = PairComplexes(D.M, D.L)
    assert pair.rel.betti() == (0, 0, 1)
    assert pair.full.betti() == (1, 0, 0)


def test_induced_map_identity_and_zero():
    C, _ = simplicial_cochains(examples.get_complex("t2-7"))
    ident = [RationalMatrix.identity(C.dim(r)) for r in range(C.top + 1)]
    for r in range(C.top + 1):
        h = induced_map(ident, C, C, r)
        assert h == RationalMatrix.identity(C.cohomology(r).dimension)
    zero = [RationalMatrix.zeros(C.dim(r), C.dim(r)) for r in range(C.top + 1)]
    assert induced_map(zero, C, C, 1).is_zero()


def test_induced_map_rejects_non_cochain_map():
    C, _ = simplicial_cochains(examples.get_complex("s1-triangle"))
    bad = [RationalMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
           RationalMatrix.identity(3)]
    with pytest.raises(InternalExactnessError):
        induced_map(bad, C, C, 0)


def test_induced_restriction_solid_torus_to_boundary():
    # Degree 1: rank one (the longitude survives, the meridian dies).
    D = examples.get_decomposition("x2-cone-torus")
    pair = PairComplexes(D.M, D.L)
    sub = pair.sub.padded(D.n)
    h = induced_map(pair.restrict, pair.full, sub, 1)
    assert (h.rows, h.cols) == (2, 1)
    assert h.rank() == 1


def test_connecting_homomorphism_solid_torus():
    D = examples.get_decomposition("x2-cone-torus")
    pair = PairComplexes(D.M, D.L)
    ses = ShortExactSequence(pair.rel, pair.full, pair.sub.padded(D.n),
                             pair.include_rel, pair.restrict)
    # r=2: H^2(T^2) -> H^3(M, ∂M) is an isomorphism Q -> Q.
    delta2 = ses.connecting(2)
    assert (delta2.rows, delta2.cols) == (1, 1)
    assert delta2.rank() == 1
    # r=1: H^1(T^2) = Q^2 -> H^2(M, ∂M) = Q surjective with kernel dim 1.
    delta1 = ses.connecting(1)
    assert (delta1.rows, delta1.cols) == (1, 2)
    assert delta1.rank() == 1
    assert kernel_basis(delta1).count == 1


def test_connecting_zero_for_acyclic_third_term():
    # Split SES U -> U ⊕ W -> W with W acyclic: connecting maps vanish.
    U, _ = simplicial_cochains(examples.get_complex("s1-triangle"))
    W = CochainComplex("acyclic", (1, 1), (RationalMatrix.identity(1),
                                           RationalMatrix.zeros(0, 1)))
    dims = [U.dim(r) + W.dim(r) for r in range(2)]
    d = []
    for r in range(2):
        entries = dict(U.d[r].entries)
        for (i, j), v in W.d[r].entries.items():
            entries[(U.dim(r + 1) + i, U.dim(r) + j)] = v
        d.append(RationalMatrix(dims[r + 1] if r + 1 < 2 else 0, dims[r], entries))
    V = CochainComplex("sum", dims, d)
    alpha = [RationalMatrix(dims[r], U.dim(r),
                            {(i, i): 1 for i in range(U.dim(r))}) for r in range(2)]
    beta = [RationalMatrix(W.dim(r), dims[r],
                           {(i, U.dim(r) + i): 1 for i in range(W.dim(r))}) for r in range(2)]
    ses = ShortExactSequence(U, V, W, alpha, beta)
    for r in range(2):
        assert ses.connecting(r).is_zero()
    assert all(h == 0 for h in W.betti())


def test_connecting_zero_in_degree_zero_for_disk_pair():
    # Constants extend over the disk, so the degree-0 connecting map is zero.
    D = examples.get_decomposition("disk-cone-s1")
    pair = PairComplexes(D.M, D.L)
    ses = ShortExactSequence(pair.rel, pair.full, pair.sub.padded(D.n),
                             pair.include_rel, pair.restrict)
    assert ses.connecting(0).is_zero()


def test_connecting_independent_of_lift():
    D = examples.get_decomposition("x2-cone-torus")
    pair = PairComplexes(D.M, D.L)
    sub = pair.sub.padded(D.n)
    ses = ShortExactSequence(pair.rel, pair.full, sub, pair.include_rel, pair.restrict)
    rng = random.Random(2)
    for r in (1, 2):
        for w in sub.cohomology(r).representatives:
            from stratdual.rational import Solver
            v = Solver(ses.beta_mat(r)).solve(w)
            # Perturb the lift by something in the image of alpha.
            noise = tuple(Fraction(rng.randint(-2, 2)) for _ in range(pair.rel.dim(r)))
            v2 = tuple(a + b for a, b in zip(v, ses.alpha_mat(r).apply(noise)))
            dv2 = pair.full.diff(r).apply(v2)
            u2 = Solver(ses.alpha_mat(r + 1)).solve(dv2)
            dv = pair.full.diff(r).apply(v)
            u = Solver(ses.alpha_mat(r + 1)).solve(dv)
            assert pair.rel.express_class(u, r + 1) == pair.rel.express_class(u2, r + 1)


def test_integrate_dual_basis_and_bilinearity():
    K = examples.get_complex("disk")
    C, _ = simplicial_cochains(K)
    sigma = (0, 1)
    phi = tuple(Fraction(int(s == sigma)) for s in K.simplices(1))
    assert integrate(phi, chain_vector(K, 1, {sigma: 1})) == 1
    assert integrate(phi, chain_vector(K, 1, {sigma: 2, (1, 2): -3})) == 2
    zero = tuple(Fraction(0) for _ in K.simplices(1))
    assert integrate(zero, chain_vector(K, 1, {sigma: 5})) == 0
    with pytest.raises(ParseError):
        integrate(phi, vec([1]))


def test_pairing_evaluation_stokes_is_sign_free():
    # The twisted evaluation used by the duality pairings satisfies the
    # sign-free boundary identity.
    rng = random.Random(12)
    K = examples.get_complex("t2-7")
    C, _ = simplicial_cochains(K)
    for _ in range(200):
        r = rng.randint(0, C.top - 1)
        x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(C.dim(r)))
        xi = tuple(Fraction(rng.randint(-3, 3)) for _ in range(C.dim(r + 1)))
        lhs = pair_against_chain(r + 1, C.d[r].apply(x), xi)
        rhs = pair_against_chain(r, x, K.boundary_matrix(r + 1).apply(xi))
        assert lhs == rhs


def test_stokes_identity_randomized():
    # integrate(dx, xi) = -(-1)^{deg x} integrate(x, ∂xi), exactly.
    rng = random.Random(31)
    for name in ("s1-triangle", "t2-7", "disk", "annulus", "solid-torus"):
        K = examples.get_complex(name)
        C, _ = simplicial_cochains(K)
        for _ in range(200):
            r = rng.randint(0, C.top - 1)
            x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(C.dim(r)))
            xi = tuple(Fraction(rng.randint(-3, 3)) for _ in range(C.dim(r + 1)))
            lhs = integrate(C.d[r].apply(x), xi)
            rhs = integrate(x, K.boundary_matrix(r + 1).apply(xi))
            assert lhs == -((-1) ** r) * rhs

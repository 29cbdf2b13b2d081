"""Duality pairings and the ladder-diagram verification.

Three pairings are built here, all as matrices P with P[i][j] =
pairing(left_i, right_j) in canonical cohomology bases:

* Lefschetz:  H^r(C*(M)) x H^{n-r}(C*(M,∂M)) -> Q, entries ∫_mu a ∪ j*(b);
* main:       H^r(A_p)   x H^{n-r}(A_q)     -> Q, entries ∫_mu iota_p(a) ∪ iota_q(b);
* boundary:   H^r(C*(L)/theta(tau_{>=k})) x H^{c-r}(tau_{>=l}) -> Q over ∂mu
  (the truncated pairing, consumed by the ladder rows).

Evaluation uses pair_against_chain, whose Koszul sign makes Stokes sign-free
at pairing level; with that convention the top and middle ladder squares
commute exactly and the bottom square commutes up to (-1)^r per degree.
Dual maps are transposes composed through the stored pairing matrices.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cochains import chain_vector, induced_map, pair_against_chain
from .errors import NotComplementaryError, NotPseudomanifoldError
from .model import IntersectionModel
from .rational import RationalMatrix, vec_is_zero
from .reports import DualityReport, PairingMatrix
from .simplicial import FundamentalChain, boundary_of_chain


def _validate_mu(pair, mu: FundamentalChain):
    K, A = pair.K, pair.A
    n = K.dimension
    if mu.degree != n or len(mu.coefficients) != K.n_simplices(n):
        raise NotPseudomanifoldError("fundamental chain has the wrong shape")
    link_faces = set(A.simplices(n - 1))
    for s, c in boundary_of_chain(K, mu).items():
        if s not in link_faces:
            raise NotPseudomanifoldError("∂mu is not supported on the boundary")
    rel_top = pair.rel.cohomology(n)
    if rel_top.dimension != 1:
        raise NotPseudomanifoldError("H^n(M, ∂M) is not one-dimensional")
    generator = pair.include_rel[n].apply(rel_top.representatives[0])
    if pair_against_chain(n, generator, mu.coefficients) == 0:
        raise NotPseudomanifoldError("relative class of mu does not generate")


def boundary_link_chain(pair, mu: FundamentalChain):
    """∂mu rewritten in the link's (n-1)-simplex basis."""
    support = boundary_of_chain(pair.K, mu)
    return chain_vector(pair.A, pair.K.dimension - 1, support)


def _lefschetz_matrix(pair, mu: FundamentalChain, r: int) -> RationalMatrix:
    n = pair.K.dimension
    left = pair.full.cohomology(r)
    right = pair.rel.cohomology(n - r)
    entries = {}
    for i, a in enumerate(left.representatives):
        for j, b in enumerate(right.representatives):
            included = pair.include_rel[n - r].apply(b)
            value = pair_against_chain(n, pair.cup.cup(r, a, n - r, included),
                                       mu.coefficients)
            if value != 0:
                entries[(i, j)] = value
    return RationalMatrix(left.dimension, right.dimension, entries)


def lefschetz_pairing(pair, mu: FundamentalChain) -> DualityReport:
    """Poincare-Lefschetz pairing of the pair (M, ∂M) against mu."""
    _validate_mu(pair, mu)
    n = pair.K.dimension
    pairings = []
    for r in range(n + 1):
        matrix = _lefschetz_matrix(pair, mu, r)
        pairings.append(PairingMatrix(r, matrix.rows, matrix.cols, matrix))
    return DualityReport("lefschetz", pairings, pair.full.betti(), pair.rel.betti())


def _require_compatible(mp: IntersectionModel, mq: IntersectionModel):
    dp, dq = mp.decomposition, mq.decomposition
    if dp.X.facets != dq.X.facets or dp.singular_vertex != dq.singular_vertex:
        raise ValueError("models built over different decompositions")
    p, q = mp.perversity, mq.perversity
    if set(p.values) != set(q.values) or any(
            p.values[s] + q.values[s] != s - 2 for s in p.values):
        raise NotComplementaryError(
            f"perversities {p!r} and {q!r} are not complementary")
    if mp.k + mq.k != dp.n:
        raise NotComplementaryError("cutoffs do not satisfy k + l = n")


def _main_matrix(mp: IntersectionModel, mq: IntersectionModel,
                 mu: FundamentalChain, r: int) -> RationalMatrix:
    n = mp.decomposition.n
    cup = mp.pair.cup
    left = mp.complex.cohomology(r)
    right = mq.complex.cohomology(n - r)
    entries = {}
    for i, a in enumerate(left.representatives):
        ia = mp.iota[r].apply(a)
        for j, b in enumerate(right.representatives):
            ib = mq.iota[n - r].apply(b)
            value = pair_against_chain(n, cup.cup(r, ia, n - r, ib), mu.coefficients)
            if value != 0:
                entries[(i, j)] = value
    return RationalMatrix(left.dimension, right.dimension, entries)


def main_pairing(mp: IntersectionModel, mq: IntersectionModel,
                 mu: FundamentalChain) -> DualityReport:
    """The generalized Poincare duality pairing of the two models."""
    _require_compatible(mp, mq)
    _validate_mu(mp.pair, mu)
    n = mp.decomposition.n
    pairings = []
    for r in range(n + 1):
        matrix = _main_matrix(mp, mq, mu, r)
        pairings.append(PairingMatrix(r, matrix.rows, matrix.cols, matrix))
    return DualityReport("main", pairings, mp.betti(), mq.betti())


def well_definedness_probe(mp: IntersectionModel, mq: IntersectionModel,
                           mu: FundamentalChain, trials: int = 100,
                           seed: int = 0) -> bool:
    """Random coboundary perturbations must leave every entry bit-identical."""
    _require_compatible(mp, mq)
    n = mp.decomposition.n
    cup = mp.pair.cup
    rng = random.Random(seed)
    for r in range(n + 1):
        left = mp.complex.cohomology(r)
        right = mq.complex.cohomology(n - r)
        if left.dimension == 0 or right.dimension == 0:
            continue
        for a in left.representatives:
            for b in right.representatives:
                ia = mp.iota[r].apply(a)
                ib = mq.iota[n - r].apply(b)
                base = pair_against_chain(n, cup.cup(r, ia, n - r, ib), mu.coefficients)
                for _ in range(trials):
                    a2 = _perturb(mp, r, a, rng)
                    b2 = _perturb(mq, n - r, b, rng)
                    ia2 = mp.iota[r].apply(a2)
                    ib2 = mq.iota[n - r].apply(b2)
                    value = pair_against_chain(
                        n, cup.cup(r, ia2, n - r, ib2), mu.coefficients)
                    if value != base:
                        return False
    return True


def _perturb(model: IntersectionModel, r: int, rep, rng):
    lower = model.complex.dim(r - 1)
    if lower == 0:
        return rep
    eta = tuple(Fraction(rng.randint(-3, 3)) for _ in range(lower))
    d_eta = model.complex.diff(r - 1).apply(eta)
    return tuple(x + y for x, y in zip(rep, d_eta))


class LadderRecord:
    """Commutation verdicts of the three ladder squares at one degree."""

    __slots__ = ("degree", "ts_commutes", "ms_commutes", "bs_commutes",
                 "bs_sign", "five_lemma_consistent")

    def __init__(self, degree, ts, ms, bs, bs_sign, five_lemma):
        self.degree = degree
        self.ts_commutes = ts
        self.ms_commutes = ms
        self.bs_commutes = bs
        self.bs_sign = bs_sign
        self.five_lemma_consistent = five_lemma

    @property
    def passed(self):
        return (self.ts_commutes and self.ms_commutes and self.bs_commutes
                and self.five_lemma_consistent)

    def to_jsonable(self):
        return {
            "degree": self.degree,
            "ts_commutes": self.ts_commutes,
            "ms_commutes": self.ms_commutes,
            "bs_commutes": self.bs_commutes,
            "bs_sign": self.bs_sign,
            "five_lemma_consistent": self.five_lemma_consistent,
            "pass": self.passed,
        }


def _boundary_pairing(mp: IntersectionModel, mq: IntersectionModel, lam,
                      degree: int) -> RationalMatrix:
    """Truncated pairing H^degree(quotient_p) x H^{c-degree}(tau_q) over lam."""
    c = mp.decomposition.n - 1
    cup = mp.pair.sub_cup
    left = mp.quotient.cohomology(degree)
    right = mq.cotruncation.complex.cohomology(c - degree)
    entries = {}
    for i, u in enumerate(left.representatives):
        alpha = mp.section[degree].apply(u)
        for j, t in enumerate(right.representatives):
            beta = mq.cotruncation.inclusion[c - degree].apply(t)
            value = pair_against_chain(c, cup.cup(degree, alpha, c - degree, beta), lam)
            if value != 0:
                entries[(i, j)] = value
    return RationalMatrix(left.dimension, right.dimension, entries)


def _match_up_to_sign(a: RationalMatrix, b: RationalMatrix):
    """(matches, sign): a == sign * b with one global sign, +1 when both zero."""
    if a.is_zero() and b.is_zero():
        return True, 1
    if a == b:
        return True, 1
    if a == -b:
        return True, -1
    return False, 0


def ladder_check(mp: IntersectionModel, mq: IntersectionModel,
                 mu: FundamentalChain, r: int) -> LadderRecord:
    """Verify the three ladder squares at degree r as exact matrix identities.

    With P_main, P_lef the mu-pairings and P_top, P_bot the ∂mu-pairings:

        TS:  transpose(delta_1) @ P_main == P_top @ H(rho_q)
        MS:  transpose(H(iota_p)) @ P_lef == P_main @ H(eta_q)
        BS:  transpose(H(kappa_p)) @ P_bot == ± P_lef @ delta_2

    where delta_1 is the connecting map of 0 -> A_p -> C*(M) -> quotient -> 0
    at degree r-1 and delta_2 that of 0 -> C*(M,∂M) -> A_q -> tau_{>=l} -> 0
    at degree n-r-1.
    """
    _require_compatible(mp, mq)
    _validate_mu(mp.pair, mu)
    n = mp.decomposition.n
    lam = boundary_link_chain(mp.pair, mu)

    p_top = _boundary_pairing(mp, mq, lam, r - 1)
    p_bot = _boundary_pairing(mp, mq, lam, r)
    p_main = _main_matrix(mp, mq, mu, r)
    p_lef = _lefschetz_matrix(mp.pair, mu, r)

    delta_1 = mp.ses_iota_kappa.connecting(r - 1)
    h_iota = induced_map(mp.iota, mp.complex, mp.pair.full, r)
    h_kappa = induced_map(mp.kappa, mp.pair.full, mp.quotient, r)
    h_rho = induced_map(mq.rho, mq.complex, mq.cotruncation.complex, n - r)
    h_eta = induced_map(mq.eta, mq.pair.rel, mq.complex, n - r)
    delta_2 = mq.ses_eta_rho.connecting(n - r - 1)

    ts = delta_1.transpose() @ p_main == p_top @ h_rho
    ms = h_iota.transpose() @ p_lef == p_main @ h_eta
    bs, bs_sign = _match_up_to_sign(h_kappa.transpose() @ p_bot, p_lef @ delta_2)

    five_lemma = True
    if ts and ms and bs:
        outer_square = (
            _square_full_rank(p_top) and _square_full_rank(p_bot)
            and _square_full_rank(p_lef)
            and _square_full_rank(_lefschetz_matrix(mp.pair, mu, r - 1)))
        if outer_square:
            five_lemma = _square_full_rank(p_main)
    return LadderRecord(r, ts, ms, bs, bs_sign, five_lemma)


def _square_full_rank(m: RationalMatrix) -> bool:
    return m.rows == m.cols and m.rank() == m.rows


def stokes_vanishing_probe(mp: IntersectionModel, mq: IntersectionModel,
                           trials: int = 50, seed: int = 0) -> bool:
    """Boundary products of model elements in the window vanish identically.

    For random eta in A_p and closed beta in A_q with degrees summing to
    n - 1, the restriction i*iota_p(eta) ∪ i*iota_q(beta) is the zero cochain
    of the link (hence every boundary integral of it vanishes).
    """
    _require_compatible(mp, mq)
    n = mp.decomposition.n
    cup = mp.pair.sub_cup
    rng = random.Random(seed)
    for _ in range(trials):
        a = rng.randint(0, n - 1)
        b = n - 1 - a
        if mp.complex.dim(a) == 0 or mq.complex.dim(b) == 0:
            continue
        eta = tuple(Fraction(rng.randint(-3, 3)) for _ in range(mp.complex.dim(a)))
        basis = mq.complex.cohomology(b)
        if basis.dimension == 0:
            continue
        beta = basis.representatives[rng.randrange(basis.dimension)]
        y = mp.pair.restrict[a].apply(mp.iota[a].apply(eta))
        z = mq.pair.restrict[b].apply(mq.iota[b].apply(beta))
        if not vec_is_zero(cup.cup(a, y, b, z)):
            return False
    return True

"""Truncation and standard cotruncation of cochain complexes.

For a cutoff k > 0, the truncation keeps degrees below k and the image of
the last differential in degree k; the standard cotruncation keeps a chosen
complement D of that image in degree k and everything above.  D is selected
by a deterministic strategy over the echelonized image, so two strategies
('lex' / 'reverse-lex') give two reproducible but genuinely different
choices, which is what makes choice-independence a runnable test.
"""

from __future__ import annotations

from .cochains import (
    CochainComplex,
    CupStructure,
    pair_against_chain,
    simplicial_cochains,
)
from .errors import InternalExactnessError
from .rational import (
    RationalMatrix,
    Solver,
    SubspaceBasis,
    complement_basis,
    image_basis,
    vec_is_zero,
)
from .reports import DualityReport, PairingMatrix
from .simplicial import SimplicialComplex, orient_top_chain


class Truncation:
    """tau_{<k}: degrees < k in full, im d^{k-1} in degree k, zero above."""

    __slots__ = ("k", "complex", "inclusion")

    def __init__(self, k, complex_, inclusion):
        self.k = k
        self.complex = complex_
        self.inclusion = inclusion  # per-degree matrices into the ambient complex


class StandardCotruncation:
    """tau_{>=k}^D: zero below k, the complement D in degree k, full above."""

    __slots__ = ("k", "D", "complex", "inclusion", "strategy")

    def __init__(self, k, D, complex_, inclusion, strategy):
        self.k = k
        self.D = D
        self.complex = complex_
        self.inclusion = inclusion
        self.strategy = strategy


def _check_inclusion_is_cochain_map(name, sub: CochainComplex, amb: CochainComplex, theta):
    for r in range(amb.top + 1):
        lhs = theta[r + 1] @ sub.diff(r) if r + 1 < len(theta) else RationalMatrix.zeros(
            amb.dim(r + 1), sub.dim(r))
        rhs = amb.diff(r) @ theta[r]
        if lhs != rhs:
            raise InternalExactnessError(f"{name}: inclusion fails to commute with d at {r}")


def truncate_below(C: CochainComplex, k: int) -> Truncation:
    """Truncation subcomplex tau_{<k} with its canonical inclusion."""
    if k <= 0:
        raise ValueError("truncation cutoff must be positive")
    top = C.top
    img = image_basis(C.diff(k - 1)) if k <= top else None
    dims = []
    for r in range(top + 1):
        if r < k:
            dims.append(C.dim(r))
        elif r == k:
            dims.append(img.count)
        else:
            dims.append(0)
    d = []
    theta = []
    for r in range(top + 1):
        target = dims[r + 1] if r + 1 <= top else 0
        if r + 1 < k:
            d.append(C.diff(r))
        elif r + 1 == k and k <= top:
            coords = Solver(img.matrix()).solve_matrix(C.diff(k - 1))
            if coords is None:
                raise InternalExactnessError("image coordinates unsolvable")
            d.append(coords)
        else:
            d.append(RationalMatrix.zeros(target, dims[r]))
    for r in range(top + 1):
        if r < k:
            theta.append(RationalMatrix.identity(C.dim(r)))
        elif r == k and k <= top:
            theta.append(img.matrix())
        else:
            theta.append(RationalMatrix.zeros(C.dim(r), 0))
    theta.append(RationalMatrix.zeros(0, 0))
    sub = CochainComplex(f"tau_<{k}({C.name})", dims, d)
    _check_inclusion_is_cochain_map(sub.name, sub, C, theta)
    return Truncation(k, sub, theta)


def cotruncate(C: CochainComplex, k: int, strategy: str = "lex") -> StandardCotruncation:
    """Standard cotruncation tau_{>=k}^D with D chosen by the strategy."""
    if k <= 0:
        raise ValueError("cotruncation cutoff must be positive")
    top = C.top
    if k <= top:
        img = image_basis(C.diff(k - 1))
        D = complement_basis(img, strategy)
        # D ⊕ im(d^{k-1}) = C^k, verified by rank.
        if D.count + img.count != C.dim(k) or (
                img.matrix().hstack(D.matrix()).rank() != C.dim(k)):
            raise InternalExactnessError("complement does not split the cotruncation degree")
    else:
        D = SubspaceBasis.from_vectors(0, [])
    dims = []
    for r in range(top + 1):
        if r < k:
            dims.append(0)
        elif r == k:
            dims.append(D.count)
        else:
            dims.append(C.dim(r))
    d = []
    theta = []
    for r in range(top + 1):
        target = dims[r + 1] if r + 1 <= top else 0
        if r < k:
            d.append(RationalMatrix.zeros(target, 0))
        elif r == k:
            d.append(C.diff(k) @ D.matrix())
        else:
            d.append(C.diff(r))
    for r in range(top + 1):
        if r < k:
            theta.append(RationalMatrix.zeros(C.dim(r), 0))
        elif r == k:
            theta.append(D.matrix())
        else:
            theta.append(RationalMatrix.identity(C.dim(r)))
    theta.append(RationalMatrix.zeros(0, 0))
    sub = CochainComplex(f"tau_>={k}({C.name})", dims, d)
    _check_inclusion_is_cochain_map(sub.name, sub, C, theta)
    return StandardCotruncation(k, D, sub, theta, strategy)


def quotient_by_cotruncation(C: CochainComplex, ct: StandardCotruncation):
    """Quotient C / theta(tau_{>=k}) with projection and canonical section.

    Realized on the complementary summand: full below k, im d^{k-1} in
    degree k, zero above.  Returns (quotient, pi, section); the composite
    tau_{<k} -> C -> quotient is checked to be an isomorphism of complexes.
    """
    k = ct.k
    top = C.top
    trunc = truncate_below(C, k)
    quotient = CochainComplex(f"{C.name}/tau_>={k}", trunc.complex.dims, trunc.complex.d)
    pi = []
    section = []
    for r in range(top + 1):
        if r < k:
            pi.append(RationalMatrix.identity(C.dim(r)))
            section.append(RationalMatrix.identity(C.dim(r)))
        elif r == k and k <= top:
            img = image_basis(C.diff(k - 1))
            split = Solver(img.matrix().hstack(ct.D.matrix()))
            full = split.solve_matrix(RationalMatrix.identity(C.dim(k)))
            if full is None:
                raise InternalExactnessError("quotient projection unsolvable")
            entries = {(i, j): v for (i, j), v in full.entries.items() if i < img.count}
            pi.append(RationalMatrix(img.count, C.dim(k), entries))
            section.append(img.matrix())
        else:
            pi.append(RationalMatrix.zeros(0, C.dim(r)))
            section.append(RationalMatrix.zeros(C.dim(r), 0))
    pi.append(RationalMatrix.zeros(0, 0))
    # pi is a surjective cochain map and pi ∘ theta_{<k} is the identity.
    for r in range(top + 1):
        if pi[r].rank() != quotient.dim(r):
            raise InternalExactnessError(f"quotient projection not surjective at {r}")
        if pi[r + 1] @ C.diff(r) != quotient.diff(r) @ pi[r]:
            raise InternalExactnessError(f"quotient projection not a cochain map at {r}")
        composite = pi[r] @ trunc.inclusion[r]
        if composite != RationalMatrix.identity(quotient.dim(r)):
            raise InternalExactnessError(f"truncation-to-quotient composite not identity at {r}")
    return quotient, pi, section


def included_basis(ct: StandardCotruncation, r: int):
    """Columns of theta at degree r: the included cotruncation subspace."""
    return ct.inclusion[r].columns()


def check_product_vanishing(cup: CupStructure, ct_k: StandardCotruncation,
                            ct_l: StandardCotruncation, r: int, s: int) -> bool:
    """Degree-window vanishing of included cotruncation products.

    Requires k + l > r + s with all four positive; multiplies every basis
    pair of the two included cotruncations and asserts the zero cochain.
    """
    if min(ct_k.k, ct_l.k, r, s) <= 0:
        raise ValueError("degrees and cutoffs must be positive")
    if ct_k.k + ct_l.k <= r + s:
        raise ValueError("outside the vanishing window: need k + l > r + s")
    for a in included_basis(ct_k, r):
        for b in included_basis(ct_l, s):
            if not vec_is_zero(cup.cup(r, a, s, b)):
                return False
    return True


def truncated_duality(L: SimplicialComplex, k: int, l: int, lam=None,
                      strategy: str = "lex", cochains=None) -> DualityReport:
    """Nondegenerate pairing between H(C/theta(tau_{>=k})) and H(tau_{>=l}).

    Entries are integrals over the fundamental cycle lam of the link:
    ([pi(alpha)], [beta]) -> ∫_lam alpha ∪ theta_{>=l}(beta), with alpha any
    lift of the quotient class (well defined by the vanishing window
    k + l = c + 1 > c).
    """
    if k <= 0 or l <= 0:
        raise ValueError("cutoffs must be positive (k, l > 0)")
    c = L.dimension
    if k + l != c + 1:
        raise ValueError(f"need k + l = c + 1 = {c + 1}, got {k + l}")
    C, cup = cochains if cochains is not None else simplicial_cochains(L)
    if lam is None:
        lam = orient_top_chain(L)
    lam_vec = lam.coefficients if hasattr(lam, "coefficients") else tuple(lam)
    if not vec_is_zero(L.boundary_matrix(c).apply(lam_vec)):
        raise ValueError("fundamental chain of the link is not closed")
    # [lam] must generate top cohomology pairing-wise, or nothing below can work.
    if all(pair_against_chain(c, rep, lam_vec) == 0
           for rep in C.cohomology(c).representatives):
        raise ValueError("chain does not represent a fundamental class")
    ct_k = cotruncate(C, k, strategy)
    ct_l = cotruncate(C, l, strategy)
    quotient, pi, section = quotient_by_cotruncation(C, ct_k)
    pairings = []
    for r in range(c + 1):
        left = quotient.cohomology(r)
        right = ct_l.complex.cohomology(c - r)
        entries = {}
        for i, u in enumerate(left.representatives):
            alpha = section[r].apply(u)
            for j, t in enumerate(right.representatives):
                beta = ct_l.inclusion[c - r].apply(t)
                value = pair_against_chain(c, cup.cup(r, alpha, c - r, beta), lam_vec)
                if value != 0:
                    entries[(i, j)] = value
        matrix = RationalMatrix(left.dimension, right.dimension, entries)
        pairings.append(PairingMatrix(r, left.dimension, right.dimension, matrix))
    return DualityReport("truncated-duality", pairings,
                         quotient.betti(), ct_l.complex.betti())

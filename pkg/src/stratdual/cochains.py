"""Simplicial cochain complexes with cup product.

Conventions, fixed once for the whole engine:

* The coboundary is the dual of the simplicial boundary with the sign rule
  d(phi) = -(-1)^{deg phi} (phi ∘ ∂), i.e. d = -(-1)^r * transpose(∂_{r+1})
  on degree r.
* The cup product of dual-basis cochains is front-face/back-face with the
  Koszul sign: (sigma* ∪ tau*) picks up (-1)^{rs} on the gluable pairs.
  With these two choices the Leibniz rule d(ab) = (da)b + (-1)^{deg a} a(db)
  holds exactly on cochains, and the product is strictly associative.
* ``integrate`` is plain bilinear evaluation of a cochain on a chain, so the
  Stokes identity carries the induced sign:
  integrate(dx, xi) = -(-1)^{deg x} integrate(x, ∂xi).

Cohomology representatives are canonical: the kernel echelon basis is
filtered to a basis modulo the image and reduced against the canonical image
echelon, so reports are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalExactnessError, ParseError
from .rational import (
    RationalMatrix,
    Solver,
    image_basis,
    kernel_basis,
    rref,
    vec_is_zero,
)
from .simplicial import SimplicialComplex


class CochainComplex:
    """Finite rational cochain complex in degrees 0..top."""

    __slots__ = ("name", "dims", "d", "labels", "_cohomology_cache", "_solver_cache")

    def __init__(self, name, dims, d, labels=None, check=True):
        self.name = name
        self.dims = tuple(dims)
        self.d = tuple(d)
        self.labels = tuple(labels) if labels is not None else None
        self._cohomology_cache = {}
        self._solver_cache = {}
        if len(self.d) != len(self.dims):
            raise ValueError("need one differential per degree (top maps to 0)")
        for r, mat in enumerate(self.d):
            target = self.dims[r + 1] if r + 1 <= self.top else 0
            if (mat.rows, mat.cols) != (target, self.dims[r]):
                raise ValueError(f"{name}: d[{r}] has shape {mat.rows}x{mat.cols}, "
                                 f"expected {target}x{self.dims[r]}")
        if check:
            for r in range(self.top):
                if not (self.d[r + 1] @ self.d[r]).is_zero():
                    raise InternalExactnessError(f"{name}: d∘d != 0 at degree {r}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def dim(self, r: int) -> int:
        return self.dims[r] if 0 <= r <= self.top else 0

    def diff(self, r: int) -> RationalMatrix:
        if 0 <= r <= self.top:
            return self.d[r]
        return RationalMatrix.zeros(self.dim(r + 1), self.dim(r))

    def padded(self, top: int) -> "CochainComplex":
        """Same complex, dims extended by zeros up to the given top degree."""
        if top <= self.top:
            return self
        dims = list(self.dims) + [0] * (top - self.top)
        d = list(self.d) + [RationalMatrix.zeros(0, dims[r]) for r in range(self.top + 1, top + 1)]
        labels = None
        if self.labels is not None:
            labels = list(self.labels) + [()] * (top - self.top)
        return CochainComplex(self.name, dims, d, labels, check=False)

    def cohomology(self, r: int) -> "CohomologyBasis":
        if r not in self._cohomology_cache:
            self._cohomology_cache[r] = _cohomology_basis(self, r)
        return self._cohomology_cache[r]

    def betti(self):
        return tuple(self.cohomology(r).dimension for r in range(self.top + 1))

    def class_solver(self, r: int) -> Solver:
        """Solver for [representatives | image basis] used to express classes."""
        if r not in self._solver_cache:
            basis = self.cohomology(r)
            reps = RationalMatrix.from_columns(basis.representatives, self.dim(r))
            img = image_basis(self.diff(r - 1)).matrix() if r > 0 else RationalMatrix.zeros(self.dim(r), 0)
            self._solver_cache[r] = Solver(reps.hstack(img))
        return self._solver_cache[r]

    def express_class(self, z, r: int):
        """Coordinates of the cocycle z in the degree-r cohomology basis."""
        if not vec_is_zero(self.diff(r).apply(z)):
            raise InternalExactnessError(f"{self.name}: vector is not a cocycle in degree {r}")
        sol = self.class_solver(r).solve(z)
        if sol is None:
            raise InternalExactnessError(f"{self.name}: cocycle outside kernel span in degree {r}")
        return sol[: self.cohomology(r).dimension]

    def __repr__(self):
        return f"CochainComplex({self.name!r}, dims={self.dims})"


class CohomologyBasis:
    """Chosen cocycle representatives of H^r, canonical per complex."""

    __slots__ = ("degree", "representatives", "dimension")

    def __init__(self, degree, representatives):
        self.degree = degree
        self.representatives = tuple(representatives)
        self.dimension = len(self.representatives)

    def __repr__(self):
        return f"CohomologyBasis(degree {self.degree}, dim {self.dimension})"


def _cohomology_basis(C: CochainComplex, r: int) -> CohomologyBasis:
    if r < 0 or r > C.top:
        return CohomologyBasis(r, ())
    kernel = kernel_basis(C.diff(r))
    image = image_basis(C.diff(r - 1)) if r > 0 else None
    if image is None or image.count == 0:
        return CohomologyBasis(r, kernel.vectors)
    stacked = image.matrix().hstack(kernel.matrix())
    pivots, _ = rref(stacked)
    chosen = [kernel.vectors[j - image.count] for j in pivots if j >= image.count]
    reps = [image.reduce(v) for v in chosen]
    return CohomologyBasis(r, reps)


def cohomology(C: CochainComplex, r: int) -> CohomologyBasis:
    return C.cohomology(r)


class CupStructure:
    """Sparse Alexander-Whitney cup tables for a simplicial cochain complex."""

    __slots__ = ("complex", "tables")

    def __init__(self, complex_, tables):
        self.complex = complex_
        self.tables = tables  # (r, s) -> {(i, j): {k: coeff}}

    def cup(self, r: int, a, s: int, b):
        """Product of a cochain of degree r with one of degree s."""
        C = self.complex
        out = [Fraction(0)] * C.dim(r + s)
        table = self.tables.get((r, s))
        if table is None:
            return tuple(out)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                cell = table.get((i, j))
                if cell:
                    for k, coeff in cell.items():
                        out[k] += ai * bj * coeff
        return tuple(out)


def simplicial_cochains(K: SimplicialComplex):
    """Cochain complex plus cup structure of a pure simplicial complex."""
    top = K.dimension
    dims = [K.n_simplices(r) for r in range(top + 1)]
    d = []
    for r in range(top + 1):
        sign = Fraction(-1) ** (r + 1)       # -(-1)^r
        boundary = K.boundary_matrix(r + 1)  # C_{r+1} -> C_r
        d.append(boundary.transpose().scaled(sign))
    labels = [K.simplices(r) for r in range(top + 1)]
    complex_ = CochainComplex(f"C*({K.name})", dims, d, labels)

    tables = {}
    for total in range(top + 1):
        simplices = K.simplices(total)
        for r in range(total + 1):
            s = total - r
            koszul = Fraction(-1) ** (r * s)
            table = tables.setdefault((r, s), {})
            for k, omega in enumerate(simplices):
                front = omega[: r + 1]
                back = omega[r:]
                i = K.index[front]
                j = K.index[back]
                table.setdefault((i, j), {})[k] = koszul
    return complex_, CupStructure(complex_, tables)


def restriction_map(K: SimplicialComplex, A: SimplicialComplex):
    """Per-degree matrices C^r(K) -> C^r(A) restricting dual-basis cochains."""
    if not K.contains_complex(A):
        raise ParseError(f"{A.name!r} is not a subcomplex of {K.name!r}")
    mats = []
    for r in range(K.dimension + 1):
        entries = {}
        for i, s in enumerate(A.simplices(r)):
            entries[(i, K.index[s])] = Fraction(1)
        mats.append(RationalMatrix(A.n_simplices(r), K.n_simplices(r), entries))
    return mats


def relative_complex(K: SimplicialComplex, A: SimplicialComplex):
    """Kernel of the restriction: duals of simplices of K not in A.

    Returns (complex, inclusion matrices into C*(K)).
    """
    top = K.dimension
    rel_simplices = [tuple(s for s in K.simplices(r) if not A.has_simplex(s))
                     for r in range(top + 1)]
    positions = [{s: i for i, s in enumerate(rel_simplices[r])} for r in range(top + 1)]
    dims = [len(rel_simplices[r]) for r in range(top + 1)]
    full, _ = simplicial_cochains(K)
    d = []
    include = []
    for r in range(top + 1):
        inc_entries = {(K.index[s], i): Fraction(1) for i, s in enumerate(rel_simplices[r])}
        include.append(RationalMatrix(K.n_simplices(r), dims[r], inc_entries))
    for r in range(top + 1):
        target = dims[r + 1] if r + 1 <= top else 0
        entries = {}
        if target:
            for (i, j), v in full.d[r].entries.items():
                tau = K.simplices(r + 1)[i]
                sigma = K.simplices(r)[j]
                if tau in positions[r + 1] and sigma in positions[r]:
                    entries[(positions[r + 1][tau], positions[r][sigma])] = v
        d.append(RationalMatrix(target, dims[r], entries))
    rel = CochainComplex(f"C*({K.name},{A.name})", dims, d, rel_simplices)
    return rel, include


class PairComplexes:
    """All cochain data of a pair (K, A): full, sub, relative, and the maps.

    The short exact sequence 0 -> C*(K,A) -> C*(K) -> C*(A) -> 0 is checked
    degreewise at construction time.
    """

    __slots__ = ("K", "A", "full", "cup", "sub", "sub_cup", "rel",
                 "restrict", "include_rel")

    def __init__(self, K: SimplicialComplex, A: SimplicialComplex):
        self.K = K
        self.A = A
        self.full, self.cup = simplicial_cochains(K)
        self.sub, self.sub_cup = simplicial_cochains(A)
        self.rel, self.include_rel = relative_complex(K, A)
        self.restrict = restriction_map(K, A)
        top = K.dimension
        sub_padded = self.sub.padded(top)
        for r in range(top + 1):
            rest = self.restrict[r] if r < len(self.restrict) else None
            if rest is None:
                continue
            if rest.rank() != sub_padded.dim(r):
                raise InternalExactnessError(f"restriction not surjective in degree {r}")
            if not (rest @ self.include_rel[r]).is_zero():
                raise InternalExactnessError(f"pair sequence not a complex in degree {r}")
            if self.rel.dim(r) + sub_padded.dim(r) != self.full.dim(r):
                raise InternalExactnessError(f"pair sequence not exact in degree {r}")


def induced_map(f, source: CochainComplex, target: CochainComplex, r: int) -> RationalMatrix:
    """Matrix of H^r(f) in the chosen cohomology bases.

    ``f`` is the per-degree list of matrices; it must commute with the
    differentials (checked exactly over the full degree range).
    """
    top = max(source.top, target.top)
    for k in range(top + 1):
        fk = f[k] if k < len(f) else RationalMatrix.zeros(target.dim(k), source.dim(k))
        fk1 = f[k + 1] if k + 1 < len(f) else RationalMatrix.zeros(target.dim(k + 1), source.dim(k + 1))
        if fk1 @ source.diff(k) != target.diff(k) @ fk:
            raise InternalExactnessError(
                f"map {source.name} -> {target.name} is not a cochain map at degree {k}")
    basis = source.cohomology(r)
    fr = f[r] if r < len(f) else RationalMatrix.zeros(target.dim(r), source.dim(r))
    cols = [target.express_class(fr.apply(rep), r) for rep in basis.representatives]
    return RationalMatrix.from_columns(cols, target.cohomology(r).dimension)


class ShortExactSequence:
    """0 -> U -> V -> W -> 0 of cochain complexes, checked degreewise."""

    __slots__ = ("U", "V", "W", "alpha", "beta", "_solvers")

    def __init__(self, U, V, W, alpha, beta):
        self.U = U
        self.V = V
        self.W = W
        self.alpha = alpha
        self.beta = beta
        self._solvers = {}
        top = max(U.top, V.top, W.top)
        for r in range(top + 1):
            a = self._mat(alpha, r, U, V)
            b = self._mat(beta, r, V, W)
            if a.rank() != U.dim(r):
                raise InternalExactnessError(f"SES: injectivity fails in degree {r}")
            if b.rank() != W.dim(r):
                raise InternalExactnessError(f"SES: surjectivity fails in degree {r}")
            if not (b @ a).is_zero():
                raise InternalExactnessError(f"SES: composite nonzero in degree {r}")
            if a.rank() + b.rank() != V.dim(r):
                raise InternalExactnessError(f"SES: exactness fails in degree {r}")

    @staticmethod
    def _mat(f, r, source, target):
        if 0 <= r < len(f):
            return f[r]
        return RationalMatrix.zeros(target.dim(r), source.dim(r))

    def alpha_mat(self, r):
        return self._mat(self.alpha, r, self.U, self.V)

    def beta_mat(self, r):
        return self._mat(self.beta, r, self.V, self.W)

    def _solver(self, key, matrix):
        if key not in self._solvers:
            self._solvers[key] = Solver(matrix)
        return self._solvers[key]

    def connecting(self, r: int) -> RationalMatrix:
        """Connecting homomorphism H^r(W) -> H^{r+1}(U).

        Lift each representative through beta, apply d, pull back through
        alpha; the class of the result is independent of the lift.
        """
        basis = self.W.cohomology(r)
        target_dim = self.U.cohomology(r + 1).dimension
        cols = []
        beta_solver = self._solver(("beta", r), self.beta_mat(r))
        alpha_solver = self._solver(("alpha", r + 1), self.alpha_mat(r + 1))
        for w in basis.representatives:
            v = beta_solver.solve(w)
            if v is None:
                raise InternalExactnessError("SES: surjection lift failed")
            dv = self.V.diff(r).apply(v)
            u = alpha_solver.solve(dv)
            if u is None:
                raise InternalExactnessError("SES: boundary not in the subcomplex")
            cols.append(self.U.express_class(u, r + 1))
        return RationalMatrix.from_columns(cols, target_dim)


def integrate(phi, xi) -> Fraction:
    """Bilinear evaluation of a cochain on a chain of the same degree."""
    if len(phi) != len(xi):
        raise ParseError("integrate: degree mismatch between cochain and chain")
    total = Fraction(0)
    for a, b in zip(phi, xi):
        if a != 0 and b != 0:
            total += a * b
    return total


def koszul_evaluation_sign(r: int) -> Fraction:
    """Sign reconciling the dual-of-boundary coboundary with evaluation.

    Twisting evaluation by (-1)^{r(r+1)/2} turns the signed Stokes identity
    of ``integrate`` into the sign-free one, pair_against_chain(dx, xi) =
    pair_against_chain(x, ∂xi); the duality pairings are built on this so the
    ladder squares commute with the signs the proofs predict.
    """
    return Fraction(-1) ** (r * (r + 1) // 2)


def pair_against_chain(r: int, phi, xi) -> Fraction:
    """Evaluation used by all duality pairings; see koszul_evaluation_sign."""
    return koszul_evaluation_sign(r) * integrate(phi, xi)


def chain_vector(K: SimplicialComplex, r: int, coefficients: dict):
    """Coefficient dict {simplex: value} -> vector in the degree-r basis."""
    out = [Fraction(0)] * K.n_simplices(r)
    for s, c in coefficients.items():
        key = tuple(sorted(s))
        if key not in K.index or len(key) != r + 1:
            raise ParseError(f"chain touches unknown {r}-simplex {s}")
        out[K.index[key]] += Fraction(c)
    return tuple(out)

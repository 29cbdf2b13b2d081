"""Independent Betti oracle: chain truncation and the mapping cone.

Works entirely on chain level (degree -1 differentials) over Q, so it shares
no code path with the cochain model it cross-checks.  The cone of the
composite L_{<k} -> L -> M computes the reduced homology of the intersection
space; over a field those Betti numbers must equal the model's.
"""

from __future__ import annotations

from .errors import InternalExactnessError
from .rational import (
    RationalMatrix,
    Solver,
    complement_basis,
    image_basis,
    kernel_basis,
)
from .simplicial import PseudomanifoldDecomposition, SimplicialComplex


class ChainComplex:
    """Rational chain complex in degrees 0..top; boundary[r]: C_r -> C_{r-1}."""

    __slots__ = ("name", "dims", "boundary")

    def __init__(self, name, dims, boundary, check=True):
        self.name = name
        self.dims = tuple(dims)
        self.boundary = tuple(boundary)
        if check:
            for r in range(1, self.top):
                if not (self.boundary[r] @ self.boundary[r + 1]).is_zero():
                    raise InternalExactnessError(f"{name}: ∂∘∂ != 0 at degree {r + 1}")

    @property
    def top(self):
        return len(self.dims) - 1

    def dim(self, r):
        return self.dims[r] if 0 <= r <= self.top else 0

    def bnd(self, r):
        """Boundary out of degree r (zero matrix at the edges)."""
        if 1 <= r <= self.top:
            return self.boundary[r]
        return RationalMatrix.zeros(self.dim(r - 1), self.dim(r))

    def homology_dims(self):
        return tuple(kernel_basis(self.bnd(r)).count - self.bnd(r + 1).rank()
                     for r in range(self.top + 1))

    def homology_basis(self, r):
        """Canonical cycle representatives of H_r."""
        cycles = kernel_basis(self.bnd(r))
        boundaries = image_basis(self.bnd(r + 1))
        if boundaries.count == 0:
            return cycles.vectors
        from .rational import rref
        stacked = boundaries.matrix().hstack(cycles.matrix())
        pivots, _ = rref(stacked)
        chosen = [cycles.vectors[j - boundaries.count] for j in pivots if j >= boundaries.count]
        return tuple(boundaries.reduce(v) for v in chosen)

    def express_class(self, z, r):
        reps = RationalMatrix.from_columns(self.homology_basis(r), self.dim(r))
        bnds = image_basis(self.bnd(r + 1)).matrix()
        sol = Solver(reps.hstack(bnds)).solve(z)
        if sol is None:
            raise InternalExactnessError(f"{self.name}: vector is not a cycle in degree {r}")
        return sol[: reps.cols]


def simplicial_chains(K: SimplicialComplex) -> ChainComplex:
    dims = [K.n_simplices(r) for r in range(K.dimension + 1)]
    boundary = [RationalMatrix.zeros(0, dims[0])]
    boundary += [K.boundary_matrix(r) for r in range(1, K.dimension + 1)]
    return ChainComplex(f"C_*({K.name})", dims, boundary)


class ChainTruncation:
    """t_{<k}: full below k, a complement of the k-cycles in degree k, zero above."""

    __slots__ = ("k", "complex", "inclusion", "ambient")

    def __init__(self, k, complex_, inclusion, ambient):
        self.k = k
        self.complex = complex_
        self.inclusion = inclusion
        self.ambient = ambient


def chain_truncate(L: SimplicialComplex, k: int, strategy: str = "lex") -> ChainTruncation:
    """Moore-style truncation: H_r iso below k, zero at and above k."""
    if k <= 0:
        raise ValueError("truncation cutoff must be positive")
    C = simplicial_chains(L)
    top = C.top
    if k <= top:
        cycles = kernel_basis(C.bnd(k))
        B = complement_basis(cycles, strategy)
    else:
        B = None
    dims = []
    for r in range(top + 1):
        if r < k:
            dims.append(C.dim(r))
        elif r == k:
            dims.append(B.count)
        else:
            dims.append(0)
    boundary = []
    inclusion = []
    for r in range(top + 1):
        if r == 0:
            boundary.append(RationalMatrix.zeros(0, dims[0]))
        elif r < k:
            boundary.append(C.bnd(r))
        elif r == k:
            boundary.append(C.bnd(k) @ B.matrix())
        else:
            boundary.append(RationalMatrix.zeros(dims[r - 1], 0))
    for r in range(top + 1):
        if r < k:
            inclusion.append(RationalMatrix.identity(C.dim(r)))
        elif r == k:
            inclusion.append(B.matrix())
        else:
            inclusion.append(RationalMatrix.zeros(C.dim(r), 0))
    truncated = ChainComplex(f"t_<{k}({L.name})", dims, boundary)
    t = ChainTruncation(k, truncated, inclusion, C)
    _verify_truncation_signature(t, L)
    return t


def _verify_truncation_signature(t: ChainTruncation, L: SimplicialComplex):
    ambient_h = t.ambient.homology_dims()
    trunc_h = t.complex.homology_dims()
    for r in range(t.complex.top + 1):
        if r < t.k:
            if trunc_h[r] != ambient_h[r]:
                raise InternalExactnessError(
                    f"truncation changes H_{r} of {L.name}")
            # The inclusion must induce an isomorphism, not just equal dims.
            reps = t.complex.homology_basis(r)
            cols = [t.ambient.express_class(t.inclusion[r].apply(z), r) for z in reps]
            mat = RationalMatrix.from_columns(cols, ambient_h[r])
            if mat.rank() != ambient_h[r]:
                raise InternalExactnessError(
                    f"truncation inclusion not iso on H_{r} of {L.name}")
        else:
            if trunc_h[r] != 0:
                raise InternalExactnessError(
                    f"truncation leaves H_{r} != 0 on {L.name}")


class ConeComplex:
    """Mapping cone of g: t -> C_*(M); Cone_r = t_{r-1} ⊕ C_r(M).

    Differential (x, m) -> (-∂x, g(x) + ∂m).
    """

    __slots__ = ("complex", "t_dims", "m_dims")

    def __init__(self, complex_, t_dims, m_dims):
        self.complex = complex_
        self.t_dims = t_dims
        self.m_dims = m_dims

    def homology_dims(self):
        return self.complex.homology_dims()


def mapping_cone(t: ChainTruncation, g, target: ChainComplex) -> ConeComplex:
    """Cone of the chain map g[r]: t_r -> target_r.

    Verifies that g is a chain map first; the cone differential then squares
    to zero automatically (and is checked again by ChainComplex).
    """
    tc = t.complex
    top = max(tc.top + 1, target.top)
    for r in range(1, top + 1):
        g_lower = g[r - 1] if r - 1 < len(g) else RationalMatrix.zeros(target.dim(r - 1), 0)
        g_here = g[r] if r < len(g) else RationalMatrix.zeros(target.dim(r), tc.dim(r))
        if g_lower @ tc.bnd(r) != target.bnd(r) @ g_here:
            raise InternalExactnessError("cone comparison map is not a chain map")
    t_dims = [tc.dim(r - 1) for r in range(top + 1)]
    m_dims = [target.dim(r) for r in range(top + 1)]
    dims = [t_dims[r] + m_dims[r] for r in range(top + 1)]
    boundary = [RationalMatrix.zeros(0, dims[0])]
    for r in range(1, top + 1):
        entries = {}
        # -∂ on the shifted truncation block.
        for (i, j), v in tc.bnd(r - 1).entries.items():
            entries[(i, j)] = -v
        # g lands in the target block.
        if r - 1 < len(g):
            for (i, j), v in g[r - 1].entries.items():
                entries[(t_dims[r - 1] + i, j)] = v
        # ∂ on the target block.
        for (i, j), v in target.bnd(r).entries.items():
            entries[(t_dims[r - 1] + i, t_dims[r] + j)] = v
        boundary.append(RationalMatrix(dims[r - 1], dims[r], entries))
    cone = ChainComplex(f"cone({tc.name} -> {target.name})", dims, boundary)
    return ConeComplex(cone, tuple(t_dims), tuple(m_dims))


def intersection_space_cone(D: PseudomanifoldDecomposition, k: int,
                            strategy: str = "lex") -> ConeComplex:
    """Cone over L_{<k} -> L = ∂M -> M for a decomposition."""
    t = chain_truncate(D.L, k, strategy)
    m_chains = simplicial_chains(D.M)
    include = []
    for r in range(D.M.dimension + 1):
        entries = {}
        for j, s in enumerate(D.L.simplices(r)):
            entries[(D.M.index[s], j)] = 1
        include.append(RationalMatrix(D.M.n_simplices(r), D.L.n_simplices(r), entries))
    g = []
    for r in range(D.M.dimension + 1):
        t_part = t.inclusion[r] if r <= t.complex.top else RationalMatrix.zeros(
            D.L.n_simplices(r), 0)
        g.append(include[r] @ t_part)
    return mapping_cone(t, g, m_chains)


def compare(model, cone: ConeComplex):
    """Model Betti vector against reduced cone homology; the headline check.

    Returns (verdict, model_betti, cone_betti) with vectors padded to a
    common length.
    """
    model_b = list(model.betti())
    cone_b = list(cone.homology_dims())
    length = max(len(model_b), len(cone_b))
    model_b += [0] * (length - len(model_b))
    cone_b += [0] * (length - len(cone_b))
    return model_b == cone_b, tuple(model_b), tuple(cone_b)

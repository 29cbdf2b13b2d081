"""Perversities and the intersection-space cochain model.

The model A for a decomposition (M, L) at cutoff k is the preimage subcomplex

    A^r = { w in C^r(M) : restriction of w to L lies in theta(tau_{>=k}^r) },

which realizes the reduced fiber product of C*(M) and the standard
cotruncation over C*(L) (legitimate because theta is injective).  Four
structure maps come with it:

    iota : A -> C*(M)            (inclusion)
    rho  : A -> tau_{>=k}C*(L)   (corestricted restriction)
    eta  : C*(M, L) -> A         (relative cochains land in the model)
    kappa: C*(M) -> C*(L)/theta(tau_{>=k})   (kappa = pi_{>=k} ∘ i*)

and two short exact sequences

    0 -> C*(M,L) --eta--> A --rho--> tau_{>=k} -> 0
    0 -> A --iota--> C*(M) --kappa--> C*(L)/theta(tau_{>=k}) -> 0

all of which are verified exactly at build time.
"""

from __future__ import annotations

from .cochains import CochainComplex, PairComplexes, ShortExactSequence, induced_map
from .cotruncation import cotruncate, quotient_by_cotruncation
from .errors import BadPerversityError, InternalExactnessError
from .rational import RationalMatrix, Solver, kernel_basis
from .simplicial import PseudomanifoldDecomposition

NAMED_PERVERSITIES = ("zero", "top", "lower-middle", "upper-middle")


class Perversity:
    """Goresky-MacPherson perversity on codimensions 2..n."""

    __slots__ = ("values", "name")

    def __init__(self, values: dict, name=None):
        self.values = dict(sorted(values.items()))
        self.name = name

    def __call__(self, s: int) -> int:
        return self.values[s]

    def domain_top(self) -> int:
        return max(self.values)

    def __eq__(self, other):
        return isinstance(other, Perversity) and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values.items()))

    def __repr__(self):
        vals = ",".join(str(self.values[s]) for s in sorted(self.values))
        return f"Perversity({vals})"


def validate_perversity(values) -> Perversity:
    """Accept a codimension -> value map iff the growth conditions hold."""
    if isinstance(values, Perversity):
        return values
    if isinstance(values, (list, tuple)):
        values = {s + 2: v for s, v in enumerate(values)}
    values = {int(s): int(v) for s, v in values.items()}
    if not values:
        raise BadPerversityError("empty perversity")
    top = max(values)
    if sorted(values) != list(range(2, top + 1)):
        raise BadPerversityError("perversity must cover codimensions 2..n contiguously")
    if values[2] != 0:
        raise BadPerversityError(f"perversity must vanish at codimension 2, got {values[2]}")
    for s in range(2, top):
        step = values[s + 1] - values[s]
        if step < 0:
            raise BadPerversityError(f"perversity decreases at codimension {s + 1}")
        if step > 1:
            raise BadPerversityError(f"perversity jumps by {step} at codimension {s + 1}")
    return Perversity(values)


def named_perversity(name: str, n: int) -> Perversity:
    """One of the four standard perversities, on codimensions 2..n."""
    formulas = {
        "zero": lambda s: 0,
        "top": lambda s: s - 2,
        "lower-middle": lambda s: (s - 2) // 2,
        "upper-middle": lambda s: (s - 1) // 2,
    }
    if name not in formulas:
        raise BadPerversityError(f"unknown perversity name {name!r}")
    return Perversity({s: formulas[name](s) for s in range(2, n + 1)}, name=name)


def complementary(p: Perversity) -> Perversity:
    """q(s) = s - 2 - p(s); complementary to p degreewise."""
    q = validate_perversity({s: s - 2 - v for s, v in p.values.items()})
    return q


def cutoff_degree(p: Perversity, n: int) -> int:
    """k(p) = n - 1 - p(n), always positive by the growth conditions."""
    if n not in p.values:
        raise BadPerversityError(f"perversity not defined at codimension {n}")
    k = n - 1 - p.values[n]
    if k <= 0:
        raise BadPerversityError(f"cutoff degree {k} is not positive")
    return k


class IntersectionModel:
    """The model complex with its structure maps and both sequences."""

    __slots__ = ("decomposition", "perversity", "k", "strategy", "pair",
                 "cotruncation", "complex", "iota", "rho", "eta", "kappa",
                 "quotient", "pi", "section", "ses_eta_rho", "ses_iota_kappa")

    def __init__(self, **kw):
        for slot in self.__slots__:
            setattr(self, slot, kw[slot])

    def betti(self):
        return self.complex.betti()

    def __repr__(self):
        return (f"IntersectionModel({self.decomposition.name!r}, "
                f"p={self.perversity!r}, k={self.k}, {self.strategy})")


def build_model(D: PseudomanifoldDecomposition, p: Perversity,
                strategy: str = "lex", pair: PairComplexes | None = None) -> IntersectionModel:
    """Construct the intersection model as a preimage subcomplex, verified."""
    p = validate_perversity(p)
    n = D.n
    k = cutoff_degree(p, n)
    if pair is None:
        pair = PairComplexes(D.M, D.L)
    sub = pair.sub.padded(n)
    ct = cotruncate(sub, k, strategy)
    quotient, pi, section = quotient_by_cotruncation(sub, ct)

    # Model basis per degree: kernel of (project-out-theta) ∘ restriction.
    iota = []
    dims = []
    for r in range(n + 1):
        condition = pi[r] @ pair.restrict[r]
        basis = kernel_basis(condition)
        iota.append(basis.matrix())
        dims.append(basis.count)
        # Fiber product dimension count: dim A^r = dim ker i* + dim tau^r.
        expected = kernel_basis(pair.restrict[r]).count + ct.complex.dim(r)
        if basis.count != expected:
            raise InternalExactnessError(
                f"model dimension {basis.count} != ker + cotruncation {expected} at degree {r}")

    d = []
    for r in range(n + 1):
        target = dims[r + 1] if r + 1 <= n else 0
        solver = Solver(iota[r + 1]) if r + 1 <= n else None
        image = pair.full.diff(r) @ iota[r]
        if solver is None:
            d.append(RationalMatrix.zeros(0, dims[r]))
            continue
        coords = solver.solve_matrix(image)
        if coords is None:
            raise InternalExactnessError(f"model is not d-closed at degree {r}")
        d.append(coords)
    complex_ = CochainComplex(f"model[{_pname(p)}]({D.name})", dims, d)

    rho = []
    eta = []
    kappa = []
    for r in range(n + 1):
        restricted = pair.restrict[r] @ iota[r]
        theta_solver = Solver(ct.inclusion[r])
        rho_r = theta_solver.solve_matrix(restricted)
        if rho_r is None:
            raise InternalExactnessError(f"restriction escapes the cotruncation at degree {r}")
        rho.append(rho_r)
        eta_solver = Solver(iota[r])
        eta_r = eta_solver.solve_matrix(pair.include_rel[r])
        if eta_r is None:
            raise InternalExactnessError(f"relative cochains escape the model at degree {r}")
        eta.append(eta_r)
        kappa.append(pi[r] @ pair.restrict[r])

    # Square of the reduced fiber product: i* ∘ iota = theta ∘ rho.
    for r in range(n + 1):
        if pair.restrict[r] @ iota[r] != ct.inclusion[r] @ rho[r]:
            raise InternalExactnessError(f"fiber square does not commute at degree {r}")
        if pair.include_rel[r] != iota[r] @ eta[r]:
            raise InternalExactnessError(f"iota ∘ eta != j* at degree {r}")

    ses_eta_rho = ShortExactSequence(pair.rel, complex_, ct.complex, eta, rho)
    ses_iota_kappa = ShortExactSequence(complex_, pair.full, quotient, iota, kappa)

    return IntersectionModel(
        decomposition=D, perversity=p, k=k, strategy=strategy, pair=pair,
        cotruncation=ct, complex=complex_, iota=iota, rho=rho, eta=eta,
        kappa=kappa, quotient=quotient, pi=pi, section=section,
        ses_eta_rho=ses_eta_rho, ses_iota_kappa=ses_iota_kappa)


def _pname(p: Perversity) -> str:
    return p.name or ",".join(str(v) for _, v in sorted(p.values.items()))


def model_betti(m: IntersectionModel):
    """Per-degree dimensions of the model cohomology."""
    return m.betti()


def model_les(m: IntersectionModel, which: str):
    """Long exact sequence record for one of the two model sequences.

    Returns a dict with the induced maps, connecting homomorphisms, and a
    per-degree exactness verdict (rank of the incoming map equals the kernel
    dimension of the outgoing one, at all three spots).
    """
    if which == "ses-eta-rho":
        ses = m.ses_eta_rho
        names = ("relative", "model", "cotruncation")
    elif which == "ses-iota-kappa":
        ses = m.ses_iota_kappa
        names = ("model", "exterior", "quotient")
    else:
        raise ValueError(f"unknown sequence {which!r}")
    U, V, W = ses.U, ses.V, ses.W
    top = max(U.top, V.top, W.top)
    maps_uv = {}
    maps_vw = {}
    connecting = {}
    for r in range(top + 1):
        maps_uv[r] = induced_map(ses.alpha, U, V, r)
        maps_vw[r] = induced_map(ses.beta, V, W, r)
        connecting[r] = ses.connecting(r)
    exact = True
    for r in range(top + 1):
        incoming_v = maps_uv[r]
        outgoing_v = maps_vw[r]
        if incoming_v.rank() != kernel_basis(outgoing_v).count:
            exact = False
        incoming_w = maps_vw[r]
        if incoming_w.rank() != kernel_basis(connecting[r]).count:
            exact = False
        delta_in = connecting[r]
        next_uv = maps_uv.get(r + 1, RationalMatrix.zeros(0, U.cohomology(r + 1).dimension))
        if delta_in.rank() != kernel_basis(next_uv).count:
            exact = False
    if not exact:
        raise InternalExactnessError(f"long exact sequence of {which} fails exactness")
    return {
        "which": which,
        "names": names,
        "maps_first_to_middle": maps_uv,
        "maps_middle_to_third": maps_vw,
        "connecting": connecting,
        "exact": True,
    }

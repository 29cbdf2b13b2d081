"""Report data structures shared by the pairing and CLI layers.

A pairing H^a x H^b -> Q is stored as the matrix P with P[i][j] =
pairing(left_i, right_j) in the canonical cohomology bases; "dual map"
anywhere in the engine means transpose composed through P.  Nondegenerate is
operationalized as: square and full rank.  Rationals serialize as "p/q"
strings so exactness survives the wire.
"""

from __future__ import annotations

from fractions import Fraction

from .rational import RationalMatrix


def fraction_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def matrix_jsonable(m: RationalMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[fraction_str(v) for v in m.row(i)] for i in range(m.rows)],
    }


class PairingMatrix:
    __slots__ = ("degree", "left_dim", "right_dim", "matrix", "rank", "nondegenerate")

    def __init__(self, degree: int, left_dim: int, right_dim: int, matrix: RationalMatrix):
        self.degree = degree
        self.left_dim = left_dim
        self.right_dim = right_dim
        self.matrix = matrix
        self.rank = matrix.rank()
        self.nondegenerate = (left_dim == right_dim == self.rank)

    def to_jsonable(self) -> dict:
        return {
            "degree": self.degree,
            "left_dim": self.left_dim,
            "right_dim": self.right_dim,
            "rank": self.rank,
            "nondegenerate": self.nondegenerate,
            "matrix": matrix_jsonable(self.matrix),
        }


class DualityReport:
    __slots__ = ("kind", "pairings", "left_betti", "right_betti", "passed")

    def __init__(self, kind: str, pairings, left_betti, right_betti):
        self.kind = kind
        self.pairings = tuple(pairings)
        self.left_betti = tuple(left_betti)
        self.right_betti = tuple(right_betti)
        self.passed = all(p.nondegenerate for p in self.pairings)

    def pairing(self, degree: int) -> PairingMatrix:
        for p in self.pairings:
            if p.degree == degree:
                return p
        raise KeyError(degree)

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind,
            "pass": self.passed,
            "left_betti": list(self.left_betti),
            "right_betti": list(self.right_betti),
            "pairings": [p.to_jsonable() for p in self.pairings],
        }

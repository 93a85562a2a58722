"""Exact Clifford algebra over an orthonormal frame.

The generating relation is

    c(e_i) c(e_j) + c(e_j) c(e_i) = -2 delta_ij,

so every generator squares to -1.  Basis blades are products of distinct
generators in strictly increasing index order, encoded as bitmasks (bit k
set means generator e_{k+1} participates).  Elements are sparse maps from
blades to scalars; products are computed by sign-tracked transpositions.

The fiberwise trace is the spinor-space trace: on a 2m-dimensional frame
the identity traces to 2^m and every non-empty blade traces to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Sequence, Tuple


@lru_cache(maxsize=None)
def blade_product_sign(a: int, b: int) -> int:
    """Sign of e_A * e_B relative to e_{A xor B}.

    Each generator of B walks left past the generators of A with larger
    index (one transposition each), after which repeated generators
    annihilate in adjacent pairs, each contributing a factor e_i^2 = -1.
    """
    swaps = 0
    bb = b
    while bb:
        j = (bb & -bb).bit_length() - 1
        swaps += (a >> (j + 1)).bit_count()
        bb &= bb - 1
    squares = (a & b).bit_count()
    return -1 if (swaps + squares) & 1 else 1


def blade_grade(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class FrameVector:
    """A vector given by its components in the orthonormal frame."""

    dim: int
    components: Tuple

    def __post_init__(self):
        if len(self.components) != self.dim:
            raise ValueError(
                f"FrameVector needs {self.dim} components, got {len(self.components)}"
            )

    def dot(self, other: "FrameVector"):
        """Euclidean frame pairing g(a, b) = sum_i a_i b_i."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch in frame pairing")
        total = self.components[0] * other.components[0]
        for a, b in zip(self.components[1:], other.components[1:]):
            total = total + a * b
        return total

    def scale(self, s) -> "FrameVector":
        return FrameVector(self.dim, tuple(s * c for c in self.components))

    def add(self, other: "FrameVector") -> "FrameVector":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch in vector addition")
        return FrameVector(
            self.dim, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def is_zero(self) -> bool:
        return all(not bool(c) for c in self.components)


class CliffordElement:
    """Sparse element of the Clifford algebra on an n-dimensional frame.

    ``terms`` maps blade bitmasks to scalar coefficients; zero coefficients
    are never stored.  Instances are treated as immutable values.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Dict[int, object] | None = None):
        self.dim = dim
        self.terms = {m: c for m, c in (terms or {}).items() if bool(c)}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(dim: int) -> "CliffordElement":
        return CliffordElement(dim)

    @staticmethod
    def scalar(dim: int, s) -> "CliffordElement":
        return CliffordElement(dim, {0: s})

    @staticmethod
    def basis(dim: int, index: int, one) -> "CliffordElement":
        """c(e_index) for a 1-based frame index; ``one`` is the field unit."""
        if not 1 <= index <= dim:
            raise ValueError(f"generator index {index} out of range 1..{dim}")
        return CliffordElement(dim, {1 << (index - 1): one})

    # -- ring operations --------------------------------------------------

    def _check(self, other: "CliffordElement"):
        if self.dim != other.dim:
            raise ValueError(
                f"Clifford dimension mismatch: {self.dim} vs {other.dim}"
            )

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return CliffordElement(self.dim, out)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.dim, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "CliffordElement":
        if isinstance(other, CliffordElement):
            return clifford_product(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "CliffordElement":
        # scalar * element; scalars here always commute with coefficients
        return self.scale(other)

    def scale(self, s) -> "CliffordElement":
        if not bool(s):
            return CliffordElement(self.dim)
        return CliffordElement(self.dim, {m: s * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mask: int):
        return self.terms.get(mask)

    def max_abs(self) -> float:
        """Largest coefficient magnitude (for float-mode residuals)."""
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def __repr__(self):
        if not self.terms:
            return f"CliffordElement(dim={self.dim}, 0)"
        parts = []
        for m in sorted(self.terms):
            idx = [str(i + 1) for i in range(self.dim) if m >> i & 1]
            blade = "1" if not idx else "e" + "".join(idx)
            parts.append(f"({self.terms[m]})*{blade}")
        return f"CliffordElement(dim={self.dim}, {' + '.join(parts)})"


def clifford_of_vector(v: FrameVector) -> CliffordElement:
    """Embed a frame vector as the grade-1 element sum_i v_i c(e_i)."""
    terms = {}
    for k, c in enumerate(v.components):
        if bool(c):
            terms[1 << k] = c
    return CliffordElement(v.dim, terms)


def clifford_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """Bilinear product under the relation c(e_i)c(e_j)+c(e_j)c(e_i) = -2 delta_ij."""
    a._check(b)
    out: Dict[int, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign = blade_product_sign(ma, mb)
            coeff = ca * cb
            if sign < 0:
                coeff = -coeff
            m = ma ^ mb
            s = out.get(m)
            out[m] = coeff if s is None else s + coeff
    return CliffordElement(a.dim, out)


def clifford_product_seq(factors: Sequence[CliffordElement]) -> CliffordElement:
    acc = factors[0]
    for f in factors[1:]:
        acc = clifford_product(acc, f)
    return acc


def clifford_trace(a: CliffordElement, m: int):
    """Spinor trace: 2^m times the empty-blade coefficient.

    Requires the frame dimension to equal 2m; non-scalar blades are
    traceless in the 2^m-dimensional spinor representation.
    """
    if m < 1 or a.dim != 2 * m:
        raise ValueError(f"trace needs dim == 2m; got dim={a.dim}, m={m}")
    c = a.terms.get(0)
    if c is None:
        return 0
    return (2**m) * c


def grade_project(a: CliffordElement, k: int) -> CliffordElement:
    if not 0 <= k <= a.dim:
        raise ValueError(f"grade {k} out of range 0..{a.dim}")
    return CliffordElement(
        a.dim, {mq: c for mq, c in a.terms.items() if blade_grade(mq) == k}
    )

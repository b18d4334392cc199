"""Hecke algebra of a vertex stabilizer: radial basis on a semi-homogeneous tree.

Two modes, matching the two possible vertex-orbit structures of a sphere-
transitive action:

* homogeneous -- one vertex orbit; the basis is indexed by all sphere radii
  and the degree-one generator is the radius-1 element;
* two-orbit -- vertices split by parity; only even radii occur, the basis is
  indexed by half the radius, and the generator is the radius-2 element.

Storing two-orbit indices as half-distances keeps the basis indexed by the
nonnegative integers in both modes, so a single polynomial model covers both
(the display layer prints the full distance).  The algebra is commutative
and is exactly the polynomial ring on its generator.

Note on completions (documentation only, nothing here computes norms): a
polynomial ring in one self-adjoint variable has *-representations given by
evaluating at arbitrary real numbers, whose operator norms are unbounded, so
this algebra admits no universal C*-completion.  All arithmetic in this
module is purely algebraic and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import HeckeAlgebra, HeckeElement

HOMOGENEOUS = "homogeneous"
TWO_ORBIT = "two-orbit"


@dataclass(frozen=True)
class SphericalParams:
    """Branching data of the tree plus the vertex-orbit mode."""

    mode: str
    q0: int
    q1: int

    def __post_init__(self):
        if self.mode not in (HOMOGENEOUS, TWO_ORBIT):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.q0 < 2 or self.q1 < 2:
            raise ValueError(
                f"branching numbers must be >= 2, got ({self.q0}, {self.q1})"
            )
        if self.mode == HOMOGENEOUS and self.q0 != self.q1:
            raise ValueError("homogeneous mode requires equal branching numbers")

    @classmethod
    def homogeneous(cls, q: int) -> "SphericalParams":
        return cls(HOMOGENEOUS, q, q)

    @classmethod
    def two_orbit(cls, q0: int, q1: int) -> "SphericalParams":
        return cls(TWO_ORBIT, q0, q1)

    @property
    def step(self) -> int:
        """Distance step between consecutive basis indices (1 or 2)."""
        return 1 if self.mode == HOMOGENEOUS else 2

    def display_distance(self, n: int) -> int:
        return n * self.step


class SphericalAlgebra(HeckeAlgebra):
    """Commutative algebra of distance classes relative to a vertex stabilizer.

    Basis indices are nonnegative integers; in two-orbit mode index ``n``
    stands for the distance-``2n`` class.
    """

    unit = 0

    def __init__(self, params: SphericalParams):
        super().__init__()
        self.params = params
        self._basis_polys = [(Fraction(1),), (Fraction(0), Fraction(1))]

    def _key(self):
        return self.params

    # -- basis data ---------------------------------------------------------

    def involute_basis(self, n: int) -> int:
        # distance classes are self-adjoint: moving o by n is symmetric in o
        return n

    def r_value(self, n: int) -> int:
        """Sphere cardinality: the number of one-sided cosets in class ``n``."""
        if n == 0:
            return 1
        p = self.params
        if p.mode == HOMOGENEOUS:
            return (p.q0 + 1) * p.q0 ** (n - 1)
        return (p.q0 + 1) * p.q1 * (p.q0 * p.q1) ** (n - 1)

    def basis_label(self, n: int) -> str:
        return f"G{self.params.display_distance(n)}"

    def parse_label(self, text: str) -> int:
        if not text.startswith("G"):
            raise ValueError(f"bad spherical label {text!r}")
        dist = int(text[1:])
        step = self.params.step
        if dist < 0 or dist % step:
            raise ValueError(f"bad spherical label {text!r}")
        return dist // step

    # -- multiplication -------------------------------------------------------

    def _recursion(self, n: int) -> tuple:
        """Coefficients (a, b) with gen * basis(n) = a*basis(n-1) + b*basis(n) + basis(n+1)."""
        p = self.params
        if p.mode == HOMOGENEOUS:
            return (p.q0 + (1 if n == 1 else 0), 0)
        return ((p.q0 + (1 if n == 1 else 0)) * p.q1, p.q1 - 1)

    def generator_times(self, x: HeckeElement) -> HeckeElement:
        """Multiply by the generator through the defining recursion."""
        acc: dict = {}
        for n, coeff in x.terms():
            if n == 0:
                acc[1] = acc.get(1, Fraction(0)) + coeff
                continue
            a, b = self._recursion(n)
            for idx, weight in ((n - 1, a), (n, b), (n + 1, 1)):
                if weight:
                    acc[idx] = acc.get(idx, Fraction(0)) + coeff * weight
        return HeckeElement(self, acc)

    def multiply_recursive(self, n: int, m: int) -> HeckeElement:
        """Basis product computed by reducing one factor to the generator."""
        if n > m:
            n, m = m, n
        result = self.basis_element(m)
        if n == 0:
            return result
        prev = result  # class 0 times basis(m)
        result = self.generator_times(result)  # class 1 times basis(m)
        for k in range(1, n):
            a, b = self._recursion(k)
            nxt = self.generator_times(result) - Fraction(b) * result - Fraction(a) * prev
            prev, result = result, nxt
        return result

    def multiply_closed(self, n: int, m: int) -> HeckeElement:
        """Basis product from the closed-form table."""
        return self.multiply_basis(n, m)

    def _basis_product(self, n: int, m: int) -> dict:
        if n > m:
            n, m = m, n
        if n == 0:
            return {m: 1}
        p = self.params
        out = {m + n: 1}
        delta = 1 if m == n else 0
        if p.mode == HOMOGENEOUS:
            q = p.q0
            out[m - n] = out.get(m - n, 0) + q ** (n - 1) * (q + delta)
            for l in range(1, n):
                out[m + n - 2 * l] = out.get(m + n - 2 * l, 0) + (q - 1) * q ** (l - 1)
        else:
            q0, q1 = p.q0, p.q1
            out[m - n] = out.get(m - n, 0) + q1**n * q0 ** (n - 1) * (q0 + delta)
            prod = 1
            for l in range(1, 2 * n):
                ql = q0 if l % 2 == 0 else q1
                out[m + n - l] = out.get(m + n - l, 0) + (ql - 1) * prod
                prod *= ql
        return out

    # -- normalization ---------------------------------------------------------

    def normalize(self, x: HeckeElement) -> HeckeElement:
        """Rescale each basis term by the inverse of its coset count."""
        return HeckeElement(
            self, [(n, coeff / self.r_value(n)) for n, coeff in x.terms()]
        )

    def normalized_coefficients(self, x: HeckeElement) -> dict:
        """Coordinates of ``x`` in the rescaled (unit coset-count) basis."""
        return {n: coeff * self.r_value(n) for n, coeff in x.terms()}

    def normalized_generator_product(self, n: int) -> HeckeElement:
        """Product of the rescaled generator with the rescaled class ``n``.

        The result satisfies the normalized recurrence relations; read its
        rescaled-basis coordinates with :meth:`normalized_coefficients`.
        """
        return self.normalize(self.basis_element(1)) * self.normalize(
            self.basis_element(n)
        )

    # -- polynomial model -------------------------------------------------------

    def _basis_poly(self, n: int) -> tuple:
        """Coefficients of the monic polynomial expressing class ``n`` in the generator."""
        polys = self._basis_polys
        while len(polys) <= n:
            k = len(polys) - 1
            a, b = self._recursion(k)
            shifted = (Fraction(0),) + polys[k]
            nxt = [c for c in shifted]
            for i, c in enumerate(polys[k]):
                nxt[i] -= b * c
            for i, c in enumerate(polys[k - 1]):
                nxt[i] -= a * c
            polys.append(tuple(nxt))
        return polys[n]

    def to_polynomial(self, x: HeckeElement) -> tuple:
        """Coefficient sequence (low degree first) of ``x`` as a polynomial in the generator."""
        if x.is_zero():
            return ()
        degree = max(n for n, _ in x.terms())
        coeffs = [Fraction(0)] * (degree + 1)
        for n, c in x.terms():
            for i, p in enumerate(self._basis_poly(n)):
                coeffs[i] += c * p
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return tuple(coeffs)

    def from_polynomial(self, coeffs) -> HeckeElement:
        """Inverse of :meth:`to_polynomial`; exact on any rational coefficient list."""
        work = [Fraction(c) for c in coeffs]
        while work and not work[-1]:
            work.pop()
        acc: dict = {}
        for d in range(len(work) - 1, -1, -1):
            c = work[d]
            if not c:
                continue
            acc[d] = acc.get(d, Fraction(0)) + c
            for i, p in enumerate(self._basis_poly(d)):
                work[i] -= c * p
        return HeckeElement(self, acc)

"""Hecke algebras of the full end stabilizer on a homogeneous tree.

Two concrete models, with exact conversions between them:

* :class:`HorocycleAlgebra` -- the commutative algebra of the elliptic part,
  with basis indexed by horocycle classes (the confluence distance toward
  the fixed end); carries the complete multiplication table.
* :class:`ToeplitzAlgebra` -- the full algebra generated by the translation
  coset ``[s]`` and its adjoint, in the normal form ``[s]^a [s*]^b``.
  Working with ``[s]`` instead of its unitarily normalized version keeps all
  scalars rational: the defining relation is ``[s*][s] = q`` while
  ``[s][s*]`` stays a non-scalar monomial, the algebraic form of "the
  generator is a nonunitary isometry".

The horocycle subalgebra embeds into the normal form via
``class_n = (n,n) - (n-1,n-1)`` and is isomorphic to the algebra of
eventually constant sequences; both routes are implemented and are required
to agree with each other and with the tree-counting oracle.

General picture (documentation only; the executable model is the full
automorphism group, where complete tables exist).  Any end stabilizer built
from a vertex stabilizer ``M0`` and a finite-index endomorphism ``alpha``
splits as elliptic part extended by a single translation, and its double
coset algebra is the semigroup crossed product of the elliptic algebra by
one injective endomorphism: the translation coset acts by

    alpha_hat(A) = [M0 : alpha(M0)]^{-1} * sum of the double cosets
                   partitioning the alpha-preimage of A,

and conjugation of the elliptic part by ``[s]``/``[s*]`` in this module is
precisely that action in the concrete model (the covariance checked by the
tests).  For a general subgroup the elliptic algebra depends on the chosen
group and no uniform table exists, which is why only the full case ships as
code.
"""

from __future__ import annotations

from fractions import Fraction

from .core import HeckeAlgebra, HeckeElement
from .ktheory import BratteliDiagram, IntMatrix


class HorocycleAlgebra(HeckeAlgebra):
    """End-centralizer double cosets indexed by horocycle class, for branching ``q + 1``."""

    unit = 0

    def __init__(self, q: int):
        super().__init__()
        if q < 2:
            raise ValueError(f"branching number must be >= 2, got {q}")
        self.q = q

    def _key(self):
        return self.q

    def r_value(self, n: int) -> int:
        return 1 if n == 0 else (self.q - 1) * self.q ** (n - 1)

    def involute_basis(self, n: int) -> int:
        # each class is closed under inversion
        return n

    def basis_label(self, n: int) -> str:
        return f"M{n}"

    def parse_label(self, text: str) -> int:
        if not text.startswith("M") or int(text[1:]) < 0:
            raise ValueError(f"bad horocycle label {text!r}")
        return int(text[1:])

    def _basis_product(self, m: int, n: int) -> dict:
        q = self.q
        if m == 0:
            return {n: 1}
        if n == 0:
            return {m: 1}
        if m != n:
            lo, hi = min(m, n), max(m, n)
            return {hi: (q - 1) * q ** (lo - 1)}
        out = {i: (q - 1) * q ** (m - 1) for i in range(m)}
        head = (q - 2) * q ** (m - 1)
        if head:
            out[m] = head
        return out


class ToeplitzAlgebra(HeckeAlgebra):
    """Normal-form monomials ``[s]^a [s*]^b`` indexed by pairs ``(a, b)``.

    The only rewriting is ``[s*][s] -> q``, so a product of two monomials is
    a single monomial weighted by a power of ``q``; mixed words never need
    further reduction once in ``(a, b)`` form.
    """

    unit = (0, 0)

    def __init__(self, q: int):
        super().__init__()
        if q < 2:
            raise ValueError(f"branching number must be >= 2, got {q}")
        self.q = q

    def _key(self):
        return self.q

    def r_value(self, ab) -> int:
        a, _ = ab
        return self.q**a

    def involute_basis(self, ab):
        a, b = ab
        return (b, a)

    def basis_label(self, ab) -> str:
        return f"({ab[0]},{ab[1]})"

    def parse_label(self, text: str):
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"bad monomial label {text!r}")
        a, b = (int(part) for part in text[1:-1].split(","))
        if a < 0 or b < 0:
            raise ValueError(f"bad monomial label {text!r}")
        return (a, b)

    def _basis_product(self, x, y) -> dict:
        a, b = x
        c, d = y
        k = min(b, c)
        return {(a + c - k, b + d - k): self.q**k}

    def isometry(self) -> HeckeElement:
        """The translation coset ``[s]``."""
        return self.basis_element((1, 0))

    def co_isometry(self) -> HeckeElement:
        """Its adjoint ``[s*]``."""
        return self.basis_element((0, 1))

    def p_projection(self, n: int) -> HeckeElement:
        """Range projection of the n-th power of the normalized isometry."""
        if n < 0:
            raise ValueError("projection index must be nonnegative")
        return self.element({(n, n): Fraction(1, self.q**n)})


def m_to_nf(m_algebra: HorocycleAlgebra, n: int) -> HeckeElement:
    """Horocycle class ``n`` in normal form: ``(n,n) - (n-1,n-1)``; class 0 is the unit."""
    nf = ToeplitzAlgebra(m_algebra.q)
    if n == 0:
        return nf.one()
    return nf.element({(n, n): 1, (n - 1, n - 1): -1})


def m_element_to_nf(x: HeckeElement) -> HeckeElement:
    """Linear extension of :func:`m_to_nf`."""
    m_algebra = x.algebra
    if not isinstance(m_algebra, HorocycleAlgebra):
        raise TypeError("expected an element of the horocycle algebra")
    nf = ToeplitzAlgebra(m_algebra.q)
    out = nf.zero()
    for n, coeff in x.terms():
        out = out + coeff * m_to_nf(m_algebra, n)
    return out


def nf_to_m(x: HeckeElement) -> HeckeElement:
    """Rewrite a diagonally supported normal-form element in the horocycle basis.

    Only defined on the span of the monomials ``(n, n)``; raises ValueError
    on any off-diagonal support.
    """
    nf = x.algebra
    if not isinstance(nf, ToeplitzAlgebra):
        raise TypeError("expected an element of the normal-form algebra")
    diag: dict = {}
    for (a, b), coeff in x.terms():
        if a != b:
            raise ValueError(f"monomial ({a},{b}) is outside the horocycle subalgebra")
        diag[a] = coeff
    m_algebra = HorocycleAlgebra(nf.q)
    # (n, n) = sum of classes 0..n, so the class-i coefficient is a tail sum
    terms = {}
    for i in range(max(diag, default=-1) + 1):
        total = sum((coeff for n, coeff in diag.items() if n >= i), Fraction(0))
        terms[i] = total
    return m_algebra.element(terms)


class EventuallyConstantSeq:
    """Rational sequence with a finite prefix and a constant tail, in canonical form."""

    __slots__ = ("prefix", "tail")

    def __init__(self, prefix, tail):
        tail = Fraction(tail)
        cleaned = [Fraction(x) for x in prefix]
        while cleaned and cleaned[-1] == tail:
            cleaned.pop()
        self.prefix = tuple(cleaned)
        self.tail = tail

    def value_at(self, k: int) -> Fraction:
        return self.prefix[k] if k < len(self.prefix) else self.tail

    def __eq__(self, other):
        if not isinstance(other, EventuallyConstantSeq):
            return NotImplemented
        return self.prefix == other.prefix and self.tail == other.tail

    def __hash__(self):
        return hash((self.prefix, self.tail))

    def __repr__(self):
        body = ", ".join(str(x) for x in self.prefix)
        sep = ", " if body else ""
        return f"({body}{sep}{self.tail}, {self.tail}, ...)"

    def __mul__(self, other: "EventuallyConstantSeq") -> "EventuallyConstantSeq":
        n = max(len(self.prefix), len(other.prefix))
        return EventuallyConstantSeq(
            [self.value_at(k) * other.value_at(k) for k in range(n)],
            self.tail * other.tail,
        )

    def __add__(self, other: "EventuallyConstantSeq") -> "EventuallyConstantSeq":
        n = max(len(self.prefix), len(other.prefix))
        return EventuallyConstantSeq(
            [self.value_at(k) + other.value_at(k) for k in range(n)],
            self.tail + other.tail,
        )

    def to_json(self) -> dict:
        return {
            "prefix": [f"{x.numerator}/{x.denominator}" for x in self.prefix],
            "tail": f"{self.tail.numerator}/{self.tail.denominator}",
        }


def to_sequence(x: HeckeElement) -> EventuallyConstantSeq:
    """Image of a horocycle-basis element under the sequence isomorphism.

    Class ``n`` maps to the sequence with value ``-q^{n-1}`` at coordinate
    ``n - 1`` and ``(q-1) q^{n-1}`` from coordinate ``n`` on (class 0 is the
    constant sequence 1); products go to pointwise products.
    """
    algebra = x.algebra
    if not isinstance(algebra, HorocycleAlgebra):
        raise TypeError("expected an element of the horocycle algebra")
    q = algebra.q
    top = max((n for n, _ in x.terms()), default=0)
    values = [Fraction(0)] * (top + 1)
    tail = Fraction(0)
    for n, coeff in x.terms():
        if n == 0:
            for k in range(top + 1):
                values[k] += coeff
            tail += coeff
        else:
            step = (q - 1) * q ** (n - 1)
            values[n - 1] += coeff * (-(q ** (n - 1)))
            for k in range(n, top + 1):
                values[k] += coeff * step
            tail += coeff * step
    return EventuallyConstantSeq(values, tail)


def from_sequence(seq: EventuallyConstantSeq, q: int) -> HeckeElement:
    """Inverse of :func:`to_sequence`, through the projection basis.

    A sequence with prefix length N decomposes over the indicator of
    ``{k, k+1, ...}`` for k <= N, and that indicator is ``q^{-k}`` times the
    sum of the classes up to k.
    """
    algebra = HorocycleAlgebra(q)
    values = list(seq.prefix) + [seq.tail]
    terms = {0: values[0]}
    for k in range(1, len(values)):
        jump = values[k] - values[k - 1]
        if not jump:
            continue
        weight = jump * Fraction(1, q**k)
        for i in range(k + 1):
            terms[i] = terms.get(i, Fraction(0)) + weight
    return algebra.element(terms)


# -- K-theory inputs for the eventually-constant-sequence model ------------------


def toeplitz_bratteli(num_levels: int) -> BratteliDiagram:
    """Diagram of the sequence model: level k holds sequences constant from k.

    All summands are one-dimensional and the inclusion into the next level
    duplicates the final coordinate.
    """
    if num_levels < 1:
        raise ValueError("need at least one level")
    levels = tuple((1,) * (k + 1) for k in range(num_levels))
    maps = []
    for k in range(num_levels - 1):
        rows = []
        for i in range(k + 2):
            rows.append([1 if j == min(i, k) else 0 for j in range(k + 1)])
        maps.append(IntMatrix.from_rows(rows))
    return BratteliDiagram(levels, tuple(maps))


def toeplitz_shift_alpha(n: int) -> IntMatrix:
    """Induced endomorphism on a rank-``n`` stage of the sequence model's K-group.

    In the projection basis the endomorphism shifts coordinates one step
    deeper, landing in the rank-``n+1`` stage: the (n+1) x n matrix with an
    identity block on the subdiagonal.
    """
    if n < 1:
        raise ValueError("stage rank must be positive")
    return IntMatrix.from_rows(
        [[1 if i == j + 1 else 0 for j in range(n)] for i in range(n + 1)]
    )

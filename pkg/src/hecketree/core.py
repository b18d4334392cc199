"""Exact-coefficient Hecke-algebra elements over a pluggable double-coset basis.

A Hecke algebra is presented here by its canonical basis: a subclass of
:class:`HeckeAlgebra` names the unit index and supplies the structure
constants of basis products (always nonnegative integers, since they count
coset incidences), the involution on basis indices induced by inversion, and
the right-coset count of each basis index.  Everything else -- sparse linear
combinations with exact rational coefficients, bilinear multiplication, the
star involution, and the coset-counting homomorphism to the scalars -- is
generic and lives in :class:`HeckeElement`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class HeckeAlgebra:
    """A double-coset basis with integer structure constants.

    Concrete algebras implement ``_basis_product``, ``involute_basis``,
    ``r_value``, set ``unit``, and provide label round-tripping for the CLI.
    Instances are immutable apart from an internal product cache.
    """

    #: basis index of the identity double coset
    unit = None

    def __init__(self):
        self._product_cache = {}

    # -- subclass surface -------------------------------------------------

    def _basis_product(self, a, b):
        """Structure constants of a basis product, as a dict index -> int."""
        raise NotImplementedError

    def involute_basis(self, a):
        """Image of a basis index under coset inversion."""
        raise NotImplementedError

    def r_value(self, a) -> int:
        """Number of right cosets in the double coset indexed by ``a``."""
        raise NotImplementedError

    def basis_key(self, a):
        """Sort key fixing the canonical ordering of basis indices."""
        return a

    def basis_label(self, a) -> str:
        raise NotImplementedError

    def parse_label(self, text: str):
        raise NotImplementedError

    def _key(self):
        """Hashable parameter tuple; algebras compare equal iff these match."""
        raise NotImplementedError

    # -- generic behaviour ------------------------------------------------

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self), self._key()))

    def multiply_basis(self, a, b) -> "HeckeElement":
        """Product of two basis elements, with structure constants cached."""
        key = (a, b)
        terms = self._product_cache.get(key)
        if terms is None:
            terms = dict(self._basis_product(a, b))
            for idx, coeff in terms.items():
                if not isinstance(coeff, int) or coeff < 0:
                    raise AssertionError(
                        f"structure constant {coeff!r} at {idx!r} is not a "
                        "nonnegative integer"
                    )
            terms = {idx: coeff for idx, coeff in terms.items() if coeff}
            self._product_cache[key] = terms
        return HeckeElement(self, terms)

    def element(self, terms) -> "HeckeElement":
        return HeckeElement(self, terms)

    def basis_element(self, a) -> "HeckeElement":
        return HeckeElement(self, {a: 1})

    def one(self) -> "HeckeElement":
        return self.basis_element(self.unit)

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value)!r}")


class HeckeElement:
    """Finitely supported rational linear combination of basis indices.

    Immutable value type: every operation returns a new element, zero terms
    are pruned on construction, and equality is structural.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: HeckeAlgebra, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for idx, coeff in items:
            coeff = _as_fraction(coeff)
            if not coeff:
                continue
            prev = acc.get(idx)
            if prev is None:
                acc[idx] = coeff
            else:
                total = prev + coeff
                if total:
                    acc[idx] = total
                else:
                    del acc[idx]
        self.algebra = algebra
        self._terms = acc

    # -- inspection --------------------------------------------------------

    def terms(self) -> list:
        """Term list sorted by the algebra's canonical basis order."""
        return sorted(self._terms.items(), key=lambda kv: self.algebra.basis_key(kv[0]))

    def coefficient(self, idx) -> Fraction:
        return self._terms.get(idx, Fraction(0))

    def support(self) -> set:
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for idx, coeff in self.terms():
            label = self.algebra.basis_label(idx)
            if coeff == 1:
                parts.append(label)
            elif coeff.denominator == 1:
                parts.append(f"{coeff}*{label}")
            else:
                parts.append(f"({coeff})*{label}")
        return " + ".join(parts)

    # -- linear structure ---------------------------------------------------

    def _check_compatible(self, other: "HeckeElement"):
        if self.algebra != other.algebra:
            raise ValueError("elements belong to different Hecke algebras")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self._terms)
        for idx, coeff in other._terms.items():
            total = acc.get(idx, Fraction(0)) + coeff
            if total:
                acc[idx] = total
            else:
                acc.pop(idx, None)
        out = HeckeElement.__new__(HeckeElement)
        out.algebra = self.algebra
        out._terms = acc
        return out

    def __neg__(self) -> "HeckeElement":
        out = HeckeElement.__new__(HeckeElement)
        out.algebra = self.algebra
        out._terms = {idx: -coeff for idx, coeff in self._terms.items()}
        return out

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> "HeckeElement":
        scalar = _as_fraction(scalar)
        if not scalar:
            return HeckeElement(self.algebra, {})
        out = HeckeElement.__new__(HeckeElement)
        out.algebra = self.algebra
        out._terms = {idx: scalar * coeff for idx, coeff in self._terms.items()}
        return out

    def __rmul__(self, scalar) -> "HeckeElement":
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    # -- ring structure -------------------------------------------------------

    def __mul__(self, other) -> "HeckeElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._check_compatible(other)
        algebra = self.algebra
        acc: dict = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                weight = ca * cb
                for idx, n in algebra.multiply_basis(a, b)._terms.items():
                    total = acc.get(idx, Fraction(0)) + weight * n
                    if total:
                        acc[idx] = total
                    else:
                        acc.pop(idx, None)
        out = HeckeElement.__new__(HeckeElement)
        out.algebra = algebra
        out._terms = acc
        return out

    def star(self) -> "HeckeElement":
        """Involution: inverts each basis coset (rational scalars are fixed)."""
        return HeckeElement(
            self.algebra,
            [(self.algebra.involute_basis(idx), coeff) for idx, coeff in self._terms.items()],
        )

    def r_hom(self) -> Fraction:
        """Coset-counting homomorphism to the scalars."""
        total = Fraction(0)
        for idx, coeff in self._terms.items():
            total += coeff * self.algebra.r_value(idx)
        return total

"""Hecke algebra of an edge fixator: reduced-word basis over two involutions.

The type-preserving double cosets are indexed by reduced alternating words
over the letters ``s`` and ``t`` (the two reflections moving the base edge
to its neighbours along an invariant line).  When the ambient group also
contains type-exchanging elements, each basis index acquires an inversion
flag, normalized to the left: ``(1, w)`` stands for the inversion times the
word ``w``.  Products are generated by the rewriting rules

    D_r * D_w = q_r * D_{rw} + (q_r - 1) * D_w    if w begins with r,
    D_r * D_w = D_{rw}                            otherwise,

their mirror images on the right, and the inversion rules ``D_i^2 = 1``,
``D_i D_s D_i = D_t``.  A closed form for arbitrary word pairs is provided
as an independent route and must agree with the generated product.

Coherence boundary: a type-exchanging automorphism forces equal branching
at the two vertex types, so the inversion-decorated sector is a genuine
(associative, coset-counting) Hecke algebra only when ``qs == qt``.  With
unequal weights the decorated indices remain available as formal rewriting
data -- the inversion rules conjugate one letter onto the other, which then
transports unequal weights inconsistently -- but only the plain-word span
is an algebra, matching the geometry (the tree oracle covers decorated
indices only in the homogeneous case).
"""

from __future__ import annotations

from typing import NamedTuple

from .core import HeckeAlgebra, HeckeElement

LETTERS = ("s", "t")

_SWAP = str.maketrans("st", "ts")


def check_word(word: str) -> str:
    """Validate a reduced word: alternating letters drawn from {s, t}."""
    for i, ch in enumerate(word):
        if ch not in "st":
            raise ValueError(f"bad letter {ch!r} in word {word!r}")
        if i and word[i - 1] == ch:
            raise ValueError(f"word {word!r} is not alternating")
    return word


def bar(word: str) -> str:
    """Swap the two letters; the automorphism induced by conjugating with the inversion."""
    return word.translate(_SWAP)


def word_inverse(word: str) -> str:
    """Group inverse of a reduced word: reversal, since each letter is an involution."""
    return word[::-1]


def word_concat(w1: str, w2: str) -> str:
    """Product of two reduced words, cancelling equal letters at the junction."""
    check_word(w1)
    check_word(w2)
    i, j = len(w1) - 1, 0
    while i >= 0 and j < len(w2) and w1[i] == w2[j]:
        i -= 1
        j += 1
    return w1[: i + 1] + w2[j:]


class DeltaIndex(NamedTuple):
    """Basis index: optional inversion flag on the left, then a reduced word."""

    iflag: int
    word: str


def index_label(idx: DeltaIndex) -> str:
    text = ("i" if idx.iflag else "") + idx.word
    return text or "1"


def parse_index(text: str) -> DeltaIndex:
    if text == "1":
        return DeltaIndex(0, "")
    iflag = 0
    if text.startswith("i"):
        iflag = 1
        text = text[1:]
    return DeltaIndex(iflag, check_word(text))


class IwahoriAlgebra(HeckeAlgebra):
    """Edge-fixator Hecke algebra with letter weights ``qs`` and ``qt``.

    ``qs`` (resp. ``qt``) is the branching number at the even-type (resp.
    odd-type) endpoint of the base edge, i.e. the coset count of the
    corresponding one-letter basis element.  The basis always carries the
    inversion flag; the type-preserving subalgebra is the flag-0 span.
    """

    unit = DeltaIndex(0, "")

    def __init__(self, qs: int, qt: int):
        super().__init__()
        if qs < 2 or qt < 2:
            raise ValueError(f"letter weights must be >= 2, got ({qs}, {qt})")
        self.qs = qs
        self.qt = qt

    def _key(self):
        return (self.qs, self.qt)

    def letter_weight(self, letter: str) -> int:
        if letter == "s":
            return self.qs
        if letter == "t":
            return self.qt
        raise ValueError(f"bad letter {letter!r}")

    # -- basis data ----------------------------------------------------------

    def r_value(self, idx: DeltaIndex) -> int:
        out = 1
        for ch in idx.word:
            out *= self.letter_weight(ch)
        return out  # the inversion contributes a single coset

    def involute_basis(self, idx: DeltaIndex) -> DeltaIndex:
        word = word_inverse(idx.word)
        if idx.iflag:
            word = bar(word)
        return DeltaIndex(idx.iflag, word)

    def basis_key(self, idx: DeltaIndex):
        return (len(idx.word), idx.word, idx.iflag)

    def basis_label(self, idx: DeltaIndex) -> str:
        return index_label(idx)

    def parse_label(self, text: str) -> DeltaIndex:
        return parse_index(text)

    def delta(self, text: str) -> HeckeElement:
        """Basis element from its label, e.g. ``delta("ist")``."""
        return self.basis_element(parse_index(text))

    # -- products by generator rewriting ----------------------------------------

    def _words_times_letter(self, terms: dict, letter: str) -> dict:
        q = self.letter_weight(letter)
        out: dict = {}
        for word, coeff in terms.items():
            if word.endswith(letter):
                shorter = word[:-1]
                out[shorter] = out.get(shorter, 0) + coeff * q
                out[word] = out.get(word, 0) + coeff * (q - 1)
            else:
                longer = word + letter
                out[longer] = out.get(longer, 0) + coeff
        return out

    def _word_product(self, w1: str, w2: str) -> dict:
        terms = {w1: 1}
        for letter in w2:
            terms = self._words_times_letter(terms, letter)
        return terms

    def _basis_product(self, a: DeltaIndex, b: DeltaIndex) -> dict:
        left = bar(a.word) if b.iflag else a.word
        iflag = a.iflag ^ b.iflag
        return {
            DeltaIndex(iflag, word): coeff
            for word, coeff in self._word_product(left, b.word).items()
        }

    def multiply_by_generator(
        self, letter: str, x: HeckeElement, side: str = "left"
    ) -> HeckeElement:
        """Termwise application of the one-letter rewriting rule."""
        gen = self.basis_element(DeltaIndex(0, check_word(letter)))
        if side == "left":
            return gen * x
        if side == "right":
            return x * gen
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    # -- closed form ---------------------------------------------------------------

    def _word_product_closed(self, w1: str, w2: str) -> dict:
        if not w1 or not w2 or w1[-1] != w2[0]:
            return {w1 + w2: 1}
        m = min(len(w1), len(w2))
        out: dict = {}
        window = 1  # weight of the i trailing letters of w1 already consumed
        for i in range(m):
            q = self.letter_weight(w2[i])
            word = w1[: len(w1) - i] + w2[i + 1 :]
            out[word] = out.get(word, 0) + window * (q - 1)
            window *= q
        word = w1[: len(w1) - m] + w2[m:]
        out[word] = out.get(word, 0) + window
        return out

    def multiply_closed(self, a: DeltaIndex, b: DeltaIndex) -> HeckeElement:
        """Product from the closed form (independent of the rewriting route)."""
        left = bar(a.word) if b.iflag else a.word
        iflag = a.iflag ^ b.iflag
        return HeckeElement(
            self,
            [
                (DeltaIndex(iflag, word), coeff)
                for word, coeff in self._word_product_closed(left, b.word).items()
            ],
        )

    def words_up_to(self, max_len: int, with_iflag: bool = True) -> list:
        """All basis indices with word length <= max_len, in canonical order."""
        words = [""]
        for first in LETTERS:
            word = ""
            for k in range(max_len):
                word += first if k % 2 == 0 else bar(first)
                words.append(word)
        flags = (0, 1) if with_iflag else (0,)
        out = [DeltaIndex(f, w) for w in words for f in flags]
        out.sort(key=self.basis_key)
        return out

"""Superpositions over n-qubit computational basis states.

A superposition stores only nonzero canonical amplitudes keyed by basis
state; summing amplitudes of like basis states and dropping exact zeros is
where destructive interference eliminates terms.  Iteration order is always
lexicographic by bitstring, so renderings and reports are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .amplitude import AMP_ONE, Amplitude, ExactReal, REAL_ZERO


@dataclass(frozen=True, order=True)
class BasisState:
    """An n-bit computational basis state; wire 0 is the leftmost bit."""

    bits: str

    def __post_init__(self) -> None:
        if not self.bits:
            raise ValueError("basis state needs at least one bit")
        if set(self.bits) - {"0", "1"}:
            raise ValueError(f"basis state bits must be 0 or 1: {self.bits!r}")

    @property
    def width(self) -> int:
        return len(self.bits)

    def bit(self, wire: int) -> int:
        return int(self.bits[wire])

    def concat(self, other: BasisState) -> BasisState:
        return BasisState(self.bits + other.bits)

    def with_bits(self, assignments: Mapping[int, int]) -> BasisState:
        chars = list(self.bits)
        for wire, value in assignments.items():
            chars[wire] = "1" if value else "0"
        return BasisState("".join(chars))

    def __str__(self) -> str:
        return f"|{self.bits}>"


class Superposition:
    """Association from basis states to nonzero canonical amplitudes."""

    __slots__ = ("width", "_terms")

    def __init__(self, width: int, terms: Mapping[BasisState, Amplitude]) -> None:
        if width < 1:
            raise ValueError("register width must be at least 1")
        kept: dict[BasisState, Amplitude] = {}
        for basis in sorted(terms):
            if basis.width != width:
                raise ValueError(
                    f"basis state {basis} has width {basis.width}, expected {width}"
                )
            amp = terms[basis]
            if not amp.is_zero():
                kept[basis] = amp
        self.width = width
        self._terms = kept

    def terms(self) -> Iterator[tuple[BasisState, Amplitude]]:
        return iter(self._terms.items())

    def amplitude(self, basis: BasisState) -> Amplitude:
        from .amplitude import AMP_ZERO

        return self._terms.get(basis, AMP_ZERO)

    def __contains__(self, basis: BasisState) -> bool:
        return basis in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Superposition):
            return self.width == other.width and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.width, tuple(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(
            _term_text(amp, basis) for basis, amp in self._terms.items()
        )

    def latex(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(
            _term_latex(amp, basis) for basis, amp in self._terms.items()
        )

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Superposition({self.width}, {self.render()})"


def _coeff_text(amp: Amplitude) -> str:
    poly = amp.num.poly_text()
    if amp.sqrt2_exp == 0:
        return poly
    base = poly if amp.num.term_count() == 1 else f"({poly})"
    if amp.sqrt2_exp == 1:
        return f"{base}/sqrt2"
    return f"{base}/sqrt2^{amp.sqrt2_exp}"


def _term_text(amp: Amplitude, basis: BasisState) -> str:
    if amp == AMP_ONE:
        return str(basis)
    return f"({_coeff_text(amp)}){basis}"


def _term_latex(amp: Amplitude, basis: BasisState) -> str:
    ket = r"\ket{%s}" % basis.bits
    if amp == AMP_ONE:
        return ket
    return amp.latex() + ket


def ket(bits: str | BasisState) -> Superposition:
    """Single-term superposition |bits> with amplitude 1."""
    basis = bits if isinstance(bits, BasisState) else BasisState(bits)
    return Superposition(basis.width, {basis: AMP_ONE})


def tensor(s1: Superposition, s2: Superposition) -> Superposition:
    """Tensor product; widths add, amplitudes multiply pairwise."""
    terms: dict[BasisState, Amplitude] = {}
    for b1, a1 in s1.terms():
        for b2, a2 in s2.terms():
            terms[b1.concat(b2)] = a1 * a2
    return Superposition(s1.width + s2.width, terms)


def combine(
    parts: Iterable[tuple[Amplitude, BasisState]], width: int
) -> Superposition:
    """Sum amplitudes of like basis states; exact zero sums are removed.

    This is the single place where interference happens: two equal,
    oppositely signed contributions to the same basis state cancel and the
    term disappears from the support.
    """
    sums: dict[BasisState, Amplitude] = {}
    for amp, basis in parts:
        if basis.width != width:
            raise ValueError(
                f"basis state {basis} has width {basis.width}, expected {width}"
            )
        prev = sums.get(basis)
        sums[basis] = amp if prev is None else prev + amp
    return Superposition(width, sums)


def norm_sq(s: Superposition) -> ExactReal:
    total = REAL_ZERO
    for _, amp in s.terms():
        total = total + amp.mod_sq()
    return total


def support(s: Superposition) -> list[BasisState]:
    """Basis states with nonzero amplitude, in lexicographic order."""
    return [basis for basis, _ in s.terms()]

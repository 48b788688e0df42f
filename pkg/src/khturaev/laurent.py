"""Integer Laurent polynomials in one variable ``q``."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable integer Laurent polynomial, stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self == LaurentPoly({0: other})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def invert_variable(self) -> "LaurentPoly":
        """Substitute ``q -> 1/q``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def to_terms(self) -> list[str]:
        """Sorted ``"coeff q^exp"`` strings, as used in JSON output."""
        return [f"{c} q^{e}" for e, c in self._terms.items()]

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(self.to_terms())

"""Triangular intuitionistic fuzzy numbers (TIFNs).

A TIFN carries five ordered reals ``(pL, pM, pU; p'L, p'U)``: the support of
the membership function ``[pL, pU]``, the shared mode ``pM`` and the support of
the non-membership function ``[p'L, p'U]``.  The non-membership middle always
equals the mode, so it is not stored.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

__all__ = [
    "TIFN",
    "TIFNError",
    "DomainError",
    "tifn_new",
    "tifn_from_crisp",
    "add",
    "sub",
    "mul",
    "div",
    "scalar_mul",
    "expected_value",
    "membership_at",
    "nonmembership_at",
    "hesitation_at",
    "parse_tifn",
    "format_real",
]

_SLOTS = ("nonmem_lower", "mem_lower", "mode", "mem_upper", "nonmem_upper")


class TIFNError(ValueError):
    """Raised when five reals do not form a valid TIFN."""


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


@dataclass(frozen=True)
class TIFN:
    """Triangular intuitionistic fuzzy number ``(pL, pM, pU; p'L, p'U)``.

    Invariant: ``nonmem_lower <= mem_lower <= mode <= mem_upper <= nonmem_upper``.
    """

    mem_lower: float
    mode: float
    mem_upper: float
    nonmem_lower: float
    nonmem_upper: float

    def __post_init__(self) -> None:
        chain = self.chain()
        for value, slot in zip(chain, _SLOTS):
            if not math.isfinite(value):
                raise TIFNError(f"{slot} must be finite, got {value!r}")
        for (a, na), (b, nb) in zip(zip(chain, _SLOTS), zip(chain[1:], _SLOTS[1:])):
            if a > b:
                raise TIFNError(f"ordering violated: {na}={a!r} > {nb}={b!r}")

    def chain(self) -> tuple[float, float, float, float, float]:
        """Components in ascending order ``(p'L, pL, pM, pU, p'U)``."""
        return (self.nonmem_lower, self.mem_lower, self.mode, self.mem_upper, self.nonmem_upper)

    @classmethod
    def from_chain(cls, chain) -> TIFN:
        nl, l, m, u, nu = chain
        return cls(l, m, u, nl, nu)

    @property
    def is_degenerate(self) -> bool:
        return self.nonmem_lower == self.nonmem_upper

    def __add__(self, other):
        if isinstance(other, TIFN):
            return add(self, other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, TIFN):
            return sub(self, other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TIFN):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return scalar_mul(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return scalar_mul(other, self)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, TIFN):
            return div(self, other)
        return NotImplemented

    def __neg__(self):
        return scalar_mul(-1.0, self)

    def __str__(self) -> str:
        return (
            f"({format_real(self.mem_lower)},{format_real(self.mode)},{format_real(self.mem_upper)};"
            f"{format_real(self.nonmem_lower)},{format_real(self.nonmem_upper)})"
        )


def format_real(x: float) -> str:
    """Shortest round-trip decimal text for ``x``, without a trailing ``.0``."""
    text = repr(float(x))
    if text.endswith(".0"):
        text = text[:-2]
    if text == "-0":
        text = "0"
    return text


def tifn_new(pL: float, pM: float, pU: float, npL: float, npU: float) -> TIFN:
    return TIFN(float(pL), float(pM), float(pU), float(npL), float(npU))


def tifn_from_crisp(c: float) -> TIFN:
    """Degenerate TIFN with all five components equal to ``c``."""
    c = float(c)
    return TIFN(c, c, c, c, c)


def add(p: TIFN, q: TIFN) -> TIFN:
    return TIFN(
        p.mem_lower + q.mem_lower,
        p.mode + q.mode,
        p.mem_upper + q.mem_upper,
        p.nonmem_lower + q.nonmem_lower,
        p.nonmem_upper + q.nonmem_upper,
    )


def sub(p: TIFN, q: TIFN) -> TIFN:
    # spreads of the subtrahend are reversed
    return TIFN(
        p.mem_lower - q.mem_upper,
        p.mode - q.mode,
        p.mem_upper - q.mem_lower,
        p.nonmem_lower - q.nonmem_upper,
        p.nonmem_upper - q.nonmem_lower,
    )


def _require_positive(p: TIFN, name: str) -> None:
    if not p.nonmem_lower > 0:
        raise DomainError(f"{name} needs nonmem_lower > 0, got {p.nonmem_lower!r}")


def mul(p: TIFN, q: TIFN) -> TIFN:
    """Approximate product of two positive TIFNs (componentwise)."""
    _require_positive(p, "left operand")
    _require_positive(q, "right operand")
    return TIFN(
        p.mem_lower * q.mem_lower,
        p.mode * q.mode,
        p.mem_upper * q.mem_upper,
        p.nonmem_lower * q.nonmem_lower,
        p.nonmem_upper * q.nonmem_upper,
    )


def div(p: TIFN, q: TIFN) -> TIFN:
    """Approximate quotient ``p / q`` of two positive TIFNs."""
    _require_positive(p, "dividend")
    _require_positive(q, "divisor")
    return TIFN(
        p.mem_lower / q.mem_upper,
        p.mode / q.mode,
        p.mem_upper / q.mem_lower,
        p.nonmem_lower / q.nonmem_upper,
        p.nonmem_upper / q.nonmem_lower,
    )


def scalar_mul(lam: float, p: TIFN) -> TIFN:
    if lam >= 0:
        return TIFN(lam * p.mem_lower, lam * p.mode, lam * p.mem_upper,
                    lam * p.nonmem_lower, lam * p.nonmem_upper)
    return TIFN(lam * p.mem_upper, lam * p.mode, lam * p.mem_lower,
                lam * p.nonmem_upper, lam * p.nonmem_lower)


def expected_value(p: TIFN) -> float:
    """Expected value ``(p'L + pL + 4 pM + pU + p'U) / 8``."""
    return (p.nonmem_lower + p.mem_lower + 4.0 * p.mode + p.mem_upper + p.nonmem_upper) / 8.0


def membership_at(p: TIFN, x: float) -> float:
    """Membership grade of ``x``; 1 exactly at the mode."""
    if x == p.mode:
        return 1.0
    if p.mem_lower < x < p.mode:
        return (x - p.mem_lower) / (p.mode - p.mem_lower)
    if p.mode < x < p.mem_upper:
        return (p.mem_upper - x) / (p.mem_upper - p.mode)
    return 0.0


def nonmembership_at(p: TIFN, x: float) -> float:
    """Non-membership grade of ``x``; 0 exactly at the mode."""
    if x == p.mode:
        return 0.0
    if p.nonmem_lower < x < p.mode:
        return (p.mode - x) / (p.mode - p.nonmem_lower)
    if p.mode < x < p.nonmem_upper:
        return (x - p.mode) / (p.nonmem_upper - p.mode)
    return 1.0


def hesitation_at(p: TIFN, x: float) -> float:
    return 1.0 - membership_at(p, x) - nonmembership_at(p, x)


_NUM = r"\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*"
_TIFN_RE = re.compile(rf"^\s*\({_NUM},{_NUM},{_NUM};{_NUM},{_NUM}\)\s*$")


def parse_tifn(text: str) -> TIFN:
    """Parse the textual form ``(pL,pM,pU;p'L,p'U)``."""
    match = _TIFN_RE.match(text)
    if match is None:
        raise TIFNError(f"not a TIFN literal: {text!r}")
    return tifn_new(*(float(g) for g in match.groups()))

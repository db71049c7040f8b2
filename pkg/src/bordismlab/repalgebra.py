"""Representation monomials and polynomials over ``G_k``.

A ``GkRep`` is a sorted multiset of nontrivial characters (a real
representation of ``G_k`` as a sum of one-dimensional ones).  A
``RepPolynomial`` is a mod-2 set of equal-dimension ``GkRep`` monomials.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .gf2core import (
    GL_MAX_RANK,
    GlMatrix,
    RankError,
    char_name,
    check_char,
    check_rank,
    gl_enumerate,
    gl_order,
    nontrivial_chars,
    product_of_linear_forms,
    span_rank,
)


@dataclass(frozen=True, order=True)
class GkRep:
    k: int
    factors: tuple[int, ...]

    def __post_init__(self):
        check_rank(self.k)
        if not self.factors:
            raise ValueError("a representation needs at least one factor")
        for c in self.factors:
            check_char(c, self.k)
        if list(self.factors) != sorted(self.factors):
            object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @classmethod
    def of(cls, k: int, factors: Iterable[int]) -> GkRep:
        return cls(k, tuple(sorted(factors)))

    @property
    def n(self) -> int:
        return len(self.factors)

    def counts(self) -> Counter:
        return Counter(self.factors)

    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.factors)))

    def apply(self, m: GlMatrix) -> GkRep:
        if m.k != self.k:
            raise RankError("rank mismatch")
        return GkRep.of(self.k, (m.apply(c) for c in self.factors))

    def __mul__(self, other: GkRep) -> GkRep:
        if other.k != self.k:
            raise RankError("rank mismatch")
        return GkRep.of(self.k, self.factors + other.factors)

    def euler_class(self):
        """Product of the linear forms of the factors."""
        return product_of_linear_forms(self.factors, self.k)

    def __str__(self) -> str:
        parts = []
        for c, a in sorted(self.counts().items()):
            parts.append(char_name(c) + (f"^{a}" if a > 1 else ""))
        return "*".join(parts)


def is_faithful(rep: GkRep) -> bool:
    return span_rank(rep.factors) == rep.k


def multiplicity(rep: GkRep, c: int) -> int:
    check_char(c, rep.k)
    return rep.factors.count(c)


@dataclass(frozen=True, order=True)
class RestrictionKey:
    m: int
    cosets: tuple[int, ...]


def canonical_coset(xi: int, rho: int) -> int:
    return min(xi, xi ^ rho)


def restriction_key(rep: GkRep, rho: int) -> RestrictionKey:
    """ρ-multiplicity plus the canonical cosets of the other factors modulo ρ."""
    check_char(rho, rep.k)
    m = rep.factors.count(rho)
    if m == 0:
        raise ValueError(f"{char_name(rho)} is not a factor of {rep}")
    return RestrictionKey(
        m, tuple(sorted(canonical_coset(c, rho) for c in rep.factors if c != rho))
    )


def multiset_I(host: Iterable[int] | GkRep, sub: Iterable[int]) -> int:
    """Number of ways to pick ``sub`` out of ``host`` as multisets."""
    hc = Counter(getattr(host, "factors", host))
    result = 1
    for c, s in Counter(sub).items():
        result *= comb(hc.get(c, 0), s)
        if not result:
            return 0
    return result


def classify_type(rep: GkRep) -> int:
    """Type index ``j`` of a faithful ``(k+1)``-dimensional representation."""
    if rep.n != rep.k + 1:
        raise ValueError(f"type classification needs dimension k+1={rep.k + 1}, got {rep.n}")
    if not is_faithful(rep):
        raise ValueError(f"{rep} is not faithful")
    distinct = rep.distinct()
    if len(distinct) < rep.n:
        return 1
    # k+1 distinct characters spanning a k-space: exactly one dependency.
    for size in range(3, rep.n + 1):
        for sub in itertools.combinations(distinct, size):
            acc = 0
            for c in sub:
                acc ^= c
            if acc == 0:
                return size - 1
    raise AssertionError("unreachable: no dependency found")


def enumerate_faithful(k: int, n: int) -> list[GkRep]:
    """All faithful ``n``-dimensional representations, in canonical order."""
    check_rank(k)
    if k > GL_MAX_RANK or n > k + 2 or n < 1:
        raise ValueError(f"enumeration guarded to k <= {GL_MAX_RANK}, 1 <= n <= k+2")
    return [
        GkRep(k, combo)
        for combo in itertools.combinations_with_replacement(nontrivial_chars(k), n)
        if span_rank(combo) == k
    ]


def L(k: int) -> int:
    return gl_order(k) // factorial(k)


def type_count_formula(k: int, j: int) -> int:
    if not 1 <= j <= k:
        raise ValueError(f"type index must lie in 1..{k}")
    if j == 1:
        return k * L(k)
    total = comb(k, j) * L(k)
    if total % (j + 1):
        raise ArithmeticError("non-integral type count")
    return total // (j + 1)


@dataclass(frozen=True)
class RepPolynomial:
    """Mod-2 reduced set of ``n``-dimensional ``GkRep`` monomials."""

    k: int
    n: int
    reps: frozenset[GkRep] = field(default_factory=frozenset)

    def __post_init__(self):
        check_rank(self.k)
        if not isinstance(self.reps, frozenset):
            object.__setattr__(self, "reps", _mod2(self.reps))
        if not self.reps:
            object.__setattr__(self, "n", 0)
        for r in self.reps:
            if r.k != self.k:
                raise RankError(f"monomial {r} has rank {r.k}, expected {self.k}")
            if r.n != self.n:
                raise ValueError(f"monomial {r} has dimension {r.n}, expected {self.n}")

    @classmethod
    def from_reps(cls, k: int, reps: Iterable[GkRep], n: int | None = None) -> RepPolynomial:
        reps = list(reps)
        if n is None:
            if not reps:
                raise ValueError("dimension required for the zero polynomial")
            n = reps[0].n
        return cls(k, n, _mod2(reps))

    @classmethod
    def from_factor_lists(cls, k: int, monomials: Iterable[Iterable[int]]) -> RepPolynomial:
        return cls.from_reps(k, (GkRep.of(k, m) for m in monomials))

    @classmethod
    def zero(cls, k: int, n: int) -> RepPolynomial:
        return cls(k, n, frozenset())

    def monomials(self) -> list[GkRep]:
        return sorted(self.reps)

    def __iter__(self) -> Iterator[GkRep]:
        return iter(self.monomials())

    def __len__(self) -> int:
        return len(self.reps)

    def __bool__(self) -> bool:
        return bool(self.reps)

    def _check(self, other: RepPolynomial) -> None:
        if other.k != self.k:
            raise RankError(f"rank mismatch: {self.k} vs {other.k}")

    def __add__(self, other: RepPolynomial) -> RepPolynomial:
        self._check(other)
        if self.reps and other.reps and other.n != self.n:
            raise ValueError("cannot add polynomials of different dimension")
        n = self.n if self.reps else other.n
        return RepPolynomial(self.k, n, self.reps ^ other.reps)

    def __mul__(self, other: RepPolynomial) -> RepPolynomial:
        self._check(other)
        out: set[GkRep] = set()
        for a in self.reps:
            for b in other.reps:
                out ^= {a * b}
        return RepPolynomial(self.k, self.n + other.n, frozenset(out))

    def apply(self, m: GlMatrix) -> RepPolynomial:
        return RepPolynomial(self.k, self.n, _mod2(r.apply(m) for r in self.reps))

    def occurring_chars(self) -> list[int]:
        return sorted({c for r in self.reps for c in r.factors})

    def is_faithful(self) -> bool:
        return all(is_faithful(r) for r in self.reps)

    def __str__(self) -> str:
        return " + ".join(str(r) for r in self.monomials()) or "0"


def _mod2(reps: Iterable[GkRep]) -> frozenset[GkRep]:
    acc: set[GkRep] = set()
    for r in reps:
        acc ^= {r}
    return frozenset(acc)


def apply_matrix(m: GlMatrix, obj):
    """Act by ``m`` on a character, ``Gf2Poly``, ``GkRep`` or ``RepPolynomial``."""
    if isinstance(obj, int):
        return m.apply(obj)
    if isinstance(obj, (GkRep, RepPolynomial)):
        return obj.apply(m)
    return m.apply_poly(obj)


def aut_orbit(p: RepPolynomial, group: Sequence[GlMatrix] | None = None) -> set[RepPolynomial]:
    if group is None:
        group = gl_enumerate(p.k)
    return {p.apply(m) for m in group}

"""Integrality of localized sums ``sum_i f(tau_i) / chi(tau_i)``.

A bordism class must make this sum a polynomial for every symmetric ``f``.
A finite family can only falsify, so this module complements the exact
decision in :mod:`bordismlab.realizability`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .gf2core import (
    _FIELD_MASK,
    Gf2Poly,
    SymFn,
    _mul_terms,
    basis_completion,
    char_name,
    divide_by_linear_form,
    eval_symfn,
    product_of_linear_forms,
)
from .repalgebra import GkRep, RepPolynomial, is_faithful


@dataclass(frozen=True)
class RationalSum:
    numerator: Gf2Poly
    denominator: tuple[tuple[int, int], ...]

    def denominator_poly(self) -> Gf2Poly:
        k = self.numerator.k
        return product_of_linear_forms(
            [c for c, e in self.denominator for _ in range(e)], k
        )

    def is_polynomial(self) -> bool:
        return self.first_obstruction() is None

    def first_obstruction(self) -> int | None:
        """Smallest linear form whose full power does not divide the numerator."""
        for ell, e in self.denominator:
            if divide_by_linear_form(self.numerator, ell, e) is None:
                return ell
        return None


def _lcm_exponents(reps) -> dict[int, int]:
    out: dict[int, int] = {}
    for r in reps:
        for c, a in Counter(r.factors).items():
            if a > out.get(c, 0):
                out[c] = a
    return out


def _check_input(p: RepPolynomial, f: SymFn) -> None:
    for r in p.reps:
        if not is_faithful(r):
            raise ValueError(f"monomial {r} is not faithful")
    if p.reps and f.arity > p.n:
        raise ValueError(f"{f} needs {f.arity} variables but the dimension is {p.n}")


def rational_sum(p: RepPolynomial, f: SymFn) -> RationalSum:
    """Bring the sum over a common denominator, without cancelling."""
    _check_input(p, f)
    k = p.k
    lcm = _lcm_exponents(p.reps)
    numerator = Gf2Poly.zero(k)
    for r in p.monomials():
        cofactor = Counter(lcm)
        cofactor.subtract(Counter(r.factors))
        chars = [c for c, e in sorted(cofactor.items()) for _ in range(e)]
        numerator = numerator + eval_symfn(f, r.factors, k) * product_of_linear_forms(chars, k)
    return RationalSum(numerator, tuple(sorted(lcm.items())))


@lru_cache(maxsize=None)
def _to_rho1(ell: int, k: int):
    return basis_completion(ell, k).inverse()


@lru_cache(maxsize=None)
def _moved_parts(rep: GkRep, ell: int, e: int, lcm_rest: tuple[tuple[int, int], ...]):
    """Moved characters of ``rep`` and the truncated cofactor ``ell^(e-m) D'/chi'``."""
    k = rep.k
    a = _to_rho1(ell, k)
    moved = tuple(sorted(a.apply(c) for c in rep.factors))
    m = rep.factors.count(ell)
    cof = Counter(dict(lcm_rest))
    cof.subtract(Counter(c for c in rep.factors if c != ell))
    chars = [a.apply(c) for c, x in cof.items() for _ in range(x)] + [1] * (e - m)
    return moved, _truncate(product_of_linear_forms(chars, k).terms, e)


@lru_cache(maxsize=None)
def _moved_term(f: SymFn, rep: GkRep, ell: int, e: int, lcm_rest: tuple[tuple[int, int], ...]) -> frozenset:
    """Terms of ``f(tau) * ell^(e-m) * (D'/chi')(tau)`` with ``ell`` moved to ``rho_1``.

    Arithmetic is modulo ``rho_1^e``: only terms of low ``rho_1``-degree can
    spoil divisibility.
    """
    moved, cofactor = _moved_parts(rep, ell, e, lcm_rest)
    value = _truncate(eval_symfn(f, moved, rep.k).terms, e)
    return _truncate(_mul_terms(value, cofactor), e)


def _truncate(terms: frozenset, e: int) -> frozenset:
    return frozenset(t for t in terms if t & _FIELD_MASK < e)


def ell_divisible(p: RepPolynomial, f: SymFn, ell: int) -> bool:
    """Whether the localized sum has no pole along ``ell``.

    Only monomials containing ``ell`` can contribute a pole, and factors of
    the common denominator coprime to ``ell`` do not affect divisibility, so
    the test runs on the ``ell``-part of the sum in coordinates where
    ``ell`` is ``rho_1``.
    """
    members = [r for r in p.monomials() if ell in r.factors]
    if not members:
        return True
    e = max(r.factors.count(ell) for r in members)
    rest: dict[int, int] = {}
    for r in members:
        for c, a in Counter(r.factors).items():
            if c != ell and a > rest.get(c, 0):
                rest[c] = a
    lcm_rest = tuple(sorted(rest.items()))
    acc: set[int] = set()
    for r in members:
        acc.symmetric_difference_update(_moved_term(f, r, ell, e, lcm_rest))
    return not acc


@dataclass(frozen=True)
class IntegralityWitness:
    f: SymFn
    ell: int

    def describe(self) -> str:
        return f"f={self.f} has a pole along {char_name(self.ell)}"


def integrality_test(p: RepPolynomial, family) -> IntegralityWitness | None:
    """None if every ``f`` in ``family`` gives a polynomial, else the first failure."""
    chars = p.occurring_chars()
    for f in family:
        _check_input(p, f)
        for ell in chars:
            if not ell_divisible(p, f, ell):
                return IntegralityWitness(f, ell)
    return None


def default_family(n: int, L: int = 4, D: int | None = None) -> list[SymFn]:
    """Finite family of symmetric functions used for the integrality test.

    ``1``; ``S_(l^r)`` for ``1 <= r <= n``, ``0 <= l <= L``; the products
    ``S_(l^r) S_(u^s)`` with ``0 <= l < u <= L``, ``r + s <= n``; the products
    ``sigma_(n-2) S_(l) S_(u^(n-2))`` with ``0 <= l <= L``, ``2 <= u <= L``; and
    the sigma-monomials ``sigma_1^a_1 ... sigma_(n-1)^a_(n-1)`` with
    ``sum i a_i <= D`` (default ``2n``).
    """
    if L < 0 or (D is not None and D < 0):
        raise ValueError("bounds must be nonnegative")
    D = 2 * n if D is None else D
    fam: list[SymFn] = [SymFn.one()]
    for r in range(1, n + 1):
        for l in range(L + 1):
            fam.append(SymFn.power_block(l, r))
    for l in range(L + 1):
        for u in range(l + 1, L + 1):
            for r in range(1, n):
                for s in range(1, n - r + 1):
                    fam.append(SymFn.power_block(u, s) * SymFn.power_block(l, r))
    if n >= 3:
        for l in range(L + 1):
            for u in range(2, L + 1):
                fam.append(SymFn.elementary(n - 2) * SymFn.monomial((l,)) * SymFn.power_block(u, n - 2))
    for exps in _weighted_vectors(n - 1, D):
        if any(exps):
            fam.append(SymFn.sigma(exps))
    return fam


def _weighted_vectors(m: int, bound: int):
    """Exponent vectors ``(a_1..a_m)`` with ``sum i*a_i <= bound``."""
    if m <= 0:
        yield ()
        return

    def rec(i: int, left: int):
        if i > m:
            yield ()
            return
        for a in range(left // i + 1):
            for rest in rec(i + 1, left - a * i):
                yield (a,) + rest

    yield from rec(1, bound)

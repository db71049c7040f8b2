"""Exact GF(2) arithmetic for elementary abelian 2-groups.

A character of ``G_k = (Z_2)^k`` is stored as a plain ``int`` bitmask:
bit ``i - 1`` set means ``rho_i`` occurs in the sum, so ``0b101`` is
``rho_13 = rho_1 + rho_3``.  The numeric value of the mask is the
canonical character order used everywhere in the package.

Polynomials in ``Z_2[rho_1, ..., rho_k]`` pack each exponent vector into a
single integer (12 bits per variable), which turns monomial multiplication
into integer addition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import comb, prod
from typing import Iterable, Iterator, Sequence

MAX_RANK = 9
GL_MAX_RANK = 4

_FIELD = 12
_FIELD_MASK = (1 << _FIELD) - 1
_MAX_DEGREE = 1 << _FIELD


class RankError(ValueError):
    """Objects of different ranks were combined."""


# ---------- characters


def check_rank(k: int) -> int:
    if not isinstance(k, int) or not 1 <= k <= MAX_RANK:
        raise ValueError(f"rank must be an integer in 1..{MAX_RANK}, got {k!r}")
    return k


def check_char(c: int, k: int) -> int:
    """Validate ``c`` as a nontrivial character of ``G_k``."""
    if not isinstance(c, int) or c <= 0 or c >= 1 << k:
        raise ValueError(f"{c!r} is not a nontrivial character of G_{k}")
    return c


def nontrivial_chars(k: int) -> range:
    return range(1, 1 << k)


def char_sum(a: int, b: int, k: int | None = None) -> int:
    """Sum of two characters; the result may be the trivial character 0."""
    if k is not None:
        if a >= 1 << k or b >= 1 << k or a < 0 or b < 0:
            raise RankError(f"characters {a}, {b} do not both belong to G_{k}")
    return a ^ b


def char_indices(c: int) -> list[int]:
    """The 1-based generator indices occurring in ``c``."""
    return [i + 1 for i in range(c.bit_length()) if c >> i & 1]


def char_name(c: int) -> str:
    if c == 0:
        return "0"
    return "r" + "".join(str(i) for i in char_indices(c))


def char_from_indices(indices: Iterable[int]) -> int:
    c = 0
    for i in indices:
        c ^= 1 << (i - 1)
    return c


def span_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of integer bit vectors (Gaussian elimination)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def reduce_against(v: int, basis: dict[int, int]) -> int:
    """Reduce ``v`` by an echelon basis keyed by leading bit."""
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return v
        v ^= basis[top]
    return 0


# ---------- packed exponent vectors


def pack(exponents: Sequence[int]) -> int:
    t = 0
    for i, a in enumerate(exponents):
        if a < 0 or a >= _MAX_DEGREE:
            raise OverflowError(f"exponent {a} out of range")
        t |= a << (_FIELD * i)
    return t


def unpack(t: int, k: int) -> tuple[int, ...]:
    return tuple((t >> (_FIELD * i)) & _FIELD_MASK for i in range(k))


def _term_degree(t: int) -> int:
    d = 0
    while t:
        d += t & _FIELD_MASK
        t >>= _FIELD
    return d


def _mul_terms(a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    if len(a) > len(b):
        a, b = b, a
    out: set[int] = set()
    for x in a:
        out.symmetric_difference_update([x + y for y in b])
    return frozenset(out)


class Gf2Poly:
    """Element of ``Z_2[rho_1, ..., rho_k]``; immutable and hashable."""

    __slots__ = ("k", "terms", "_degree")

    def __init__(self, k: int, terms: Iterable[int] = ()):
        self.k = k
        if isinstance(terms, frozenset):
            self.terms = terms
        else:
            acc: set[int] = set()
            for t in terms:
                acc ^= {t}
            self.terms = frozenset(acc)
        self._degree: int | None = None

    @classmethod
    def zero(cls, k: int) -> Gf2Poly:
        return cls(k, frozenset())

    @classmethod
    def one(cls, k: int) -> Gf2Poly:
        return cls(k, frozenset([0]))

    @classmethod
    def from_exponents(cls, k: int, exponents: Iterable[Sequence[int]]) -> Gf2Poly:
        vecs = list(exponents)
        for e in vecs:
            if len(e) != k:
                raise RankError(f"exponent vector {tuple(e)} has length != {k}")
        return cls(k, (pack(e) for e in vecs))

    @classmethod
    def variable(cls, k: int, i: int) -> Gf2Poly:
        if not 1 <= i <= k:
            raise ValueError(f"no variable rho_{i} in rank {k}")
        return cls(k, frozenset([1 << (_FIELD * (i - 1))]))

    def exponents(self) -> list[tuple[int, ...]]:
        return sorted((unpack(t, self.k) for t in self.terms), reverse=True)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._degree is None:
            self._degree = max((_term_degree(t) for t in self.terms), default=-1)
        return self._degree

    def _check(self, other: Gf2Poly) -> None:
        if not isinstance(other, Gf2Poly):
            raise TypeError(f"expected Gf2Poly, got {type(other).__name__}")
        if other.k != self.k:
            raise RankError(f"rank mismatch: {self.k} vs {other.k}")

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        self._check(other)
        return Gf2Poly(self.k, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        self._check(other)
        if not self.terms or not other.terms:
            return Gf2Poly.zero(self.k)
        if self.degree + other.degree >= _MAX_DEGREE:
            raise OverflowError("product degree exceeds the packed exponent width")
        out = Gf2Poly(self.k, _mul_terms(self.terms, other.terms))
        out._degree = self.degree + other.degree
        return out

    def __pow__(self, e: int) -> Gf2Poly:
        if e < 0:
            raise ValueError("negative power")
        result = Gf2Poly.one(self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.k, self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def min_exponent(self, i: int) -> int:
        """Smallest exponent of ``rho_i`` over all monomials (0 for the zero polynomial)."""
        shift = _FIELD * (i - 1)
        return min(((t >> shift) & _FIELD_MASK for t in self.terms), default=0)

    def substitute(self, images: Sequence[int], k: int | None = None) -> Gf2Poly:
        """Replace each ``rho_i`` by the linear form of ``images[i-1]``.

        ``images`` are characters of rank ``k`` (default: same rank).
        """
        if len(images) != self.k:
            raise RankError(f"need {self.k} images, got {len(images)}")
        k = self.k if k is None else k
        out: set[int] = set()
        for t in self.terms:
            acc = frozenset([0])
            for i, a in enumerate(unpack(t, self.k)):
                if a:
                    if images[i] == 0:
                        acc = frozenset()
                        break
                    acc = _mul_terms(acc, _linear_power(images[i], a, k))
            out.symmetric_difference_update(acc)
        return Gf2Poly(k, frozenset(out))

    def __repr__(self) -> str:
        return f"Gf2Poly({self.k}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(
            (unpack(t, self.k) for t in self.terms),
            key=lambda v: (sum(v), v),
            reverse=True,
        ):
            factors = [
                f"r{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a
            ]
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def _linear_terms(c: int, k: int) -> frozenset[int]:
    return frozenset(1 << (_FIELD * (i - 1)) for i in char_indices(c))


@lru_cache(maxsize=65536)
def _linear_power(c: int, a: int, k: int) -> frozenset[int]:
    # Frobenius: (sum x_j)^(2^s) = sum x_j^(2^s)
    acc = frozenset([0])
    s = 0
    while a:
        if a & 1:
            acc = _mul_terms(acc, frozenset(1 << (_FIELD * (i - 1) + s) for i in char_indices(c)))
        a >>= 1
        s += 1
    return acc


def linear_form(c: int, k: int) -> Gf2Poly:
    """The degree-one class ``sum_{i in a} rho_i`` of a nontrivial character."""
    check_char(c, k)
    return Gf2Poly(k, _linear_terms(c, k))


def linear_power(c: int, a: int, k: int) -> Gf2Poly:
    check_char(c, k)
    return Gf2Poly(k, _linear_power(c, a, k))


def product_of_linear_forms(chars: Iterable[int], k: int) -> Gf2Poly:
    counts: dict[int, int] = {}
    for c in chars:
        counts[c] = counts.get(c, 0) + 1
    acc = Gf2Poly.one(k)
    for c, a in sorted(counts.items()):
        acc = acc * linear_power(c, a, k)
    return acc


def poly_add(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return p + q


def poly_mul(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    return p * q


# ---------- GL(k, Z_2)


@dataclass(frozen=True, order=True)
class GlMatrix:
    """Invertible k x k matrix over GF(2) acting on characters.

    ``rows[i]`` holds row ``i`` with bit ``j`` the entry in column ``j``.
    Column ``j`` is the image of ``rho_{j+1}``.
    """

    k: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.k or any(r < 0 or r >= 1 << self.k for r in self.rows):
            raise ValueError("malformed matrix rows")
        if span_rank(self.rows) != self.k:
            raise ValueError("matrix is not invertible over GF(2)")

    @classmethod
    def identity(cls, k: int) -> GlMatrix:
        return cls(k, tuple(1 << i for i in range(k)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> GlMatrix:
        """Matrix sending ``rho_{j+1}`` to ``images[j]``."""
        k = len(images)
        rows = tuple(
            sum(((images[j] >> i) & 1) << j for j in range(k)) for i in range(k)
        )
        return cls(k, rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> GlMatrix:
        k = len(entries)
        return cls(k, tuple(sum((x & 1) << j for j, x in enumerate(row)) for row in entries))

    @classmethod
    def from_basis_map(cls, pairs: Sequence[tuple[int, int]]) -> GlMatrix:
        """Matrix sending each source character to its target.

        The sources must form a basis; the targets must be independent.
        """
        k = len(pairs)
        src = cls.from_images([a for a, _ in pairs])
        dst = cls.from_images([b for _, b in pairs])
        if src.k != k or dst.k != k:
            raise ValueError("basis map needs k pairs")
        return dst @ src.inverse()

    @property
    def images(self) -> tuple[int, ...]:
        return _images(self.rows, self.k)

    def apply(self, c: int) -> int:
        return _action_table(self.rows, self.k)[c]

    def __call__(self, c: int) -> int:
        return self.apply(c)

    def __matmul__(self, other: GlMatrix) -> GlMatrix:
        if other.k != self.k:
            raise RankError("rank mismatch")
        return GlMatrix.from_images([self.apply(c) for c in other.images])

    def inverse(self) -> GlMatrix:
        inv = [0] * self.k
        for c in nontrivial_chars(self.k):
            img = self.apply(c)
            if img & (img - 1) == 0:
                inv[img.bit_length() - 1] = c
        return GlMatrix.from_images(inv)

    def apply_poly(self, p: Gf2Poly) -> Gf2Poly:
        if p.k != self.k:
            raise RankError("rank mismatch")
        return p.substitute(self.images)

    def tolist(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.k)] for r in self.rows]


@lru_cache(maxsize=4096)
def _images(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
    return tuple(sum(((rows[i] >> j) & 1) << i for i in range(k)) for j in range(k))


@lru_cache(maxsize=4096)
def _action_table(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
    images = _images(rows, k)
    table = [0] * (1 << k)
    for c in range(1, 1 << k):
        low = (c & -c).bit_length() - 1
        table[c] = table[c & (c - 1)] ^ images[low]
    return tuple(table)


def gl_order(k: int) -> int:
    return prod((1 << k) - (1 << i) for i in range(k))


def gl_enumerate(k: int) -> list[GlMatrix]:
    """All invertible k x k matrices over GF(2), ordered by column images."""
    if not isinstance(k, int) or not 1 <= k <= GL_MAX_RANK:
        raise ValueError(f"GL enumeration supports 1 <= k <= {GL_MAX_RANK}, got {k!r}")
    out: list[GlMatrix] = []

    def extend(images: list[int], basis: dict[int, int]) -> None:
        if len(images) == k:
            out.append(GlMatrix.from_images(images))
            return
        for c in nontrivial_chars(k):
            if reduce_against(c, basis):
                nb = dict(basis)
                r = reduce_against(c, nb)
                nb[r.bit_length() - 1] = r
                extend(images + [c], nb)

    extend([], {})
    return out


@lru_cache(maxsize=None)
def basis_completion(c: int, k: int) -> GlMatrix:
    """A fixed invertible matrix sending ``rho_1`` to ``c``.

    The remaining columns are the standard basis vectors other than the
    lowest generator occurring in ``c`` (greedy pivot).
    """
    check_char(c, k)
    pivot = (c & -c).bit_length() - 1
    others = [1 << i for i in range(k) if i != pivot]
    return GlMatrix.from_images([c] + others)


def divide_by_linear_form(p: Gf2Poly, ell: int, e: int = 1) -> Gf2Poly | None:
    """Return ``q`` with ``p == ell^e * q``, or None if ``ell^e`` does not divide ``p``.

    Changes coordinates so that ``ell`` becomes ``rho_1``, checks the
    ``rho_1``-exponent of every monomial, divides and changes back.
    """
    check_char(ell, p.k)
    if e < 1:
        raise ValueError("multiplicity must be >= 1")
    if not p:
        return p
    to_std = basis_completion(ell, p.k)
    moved = to_std.inverse().apply_poly(p)
    if moved.min_exponent(1) < e:
        return None
    shift = e  # rho_1 occupies the lowest field
    quotient = Gf2Poly(p.k, frozenset(t - shift for t in moved.terms))
    return to_std.apply_poly(quotient)


# ---------- symmetric functions


@dataclass(frozen=True)
class SymFn:
    """A product of monomial symmetric functions and sigma-monomials.

    Each factor is ``("S", partition)`` for ``S_omega`` or
    ``("sigma", (a_1, ..., a_m))`` for ``sigma_1^a_1 ... sigma_m^a_m``.
    The empty product is the constant 1.
    """

    factors: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        for kind, data in self.factors:
            if kind == "S":
                if any(x < 0 for x in data) or list(data) != sorted(data, reverse=True):
                    raise ValueError(f"partition {data} must be weakly decreasing")
            elif kind == "sigma":
                if any(x < 0 for x in data):
                    raise ValueError(f"negative sigma exponent in {data}")
            else:
                raise ValueError(f"unknown factor kind {kind!r}")

    @classmethod
    def one(cls) -> SymFn:
        return cls(())

    @classmethod
    def monomial(cls, partition: Sequence[int]) -> SymFn:
        return cls((("S", tuple(partition)),))

    @classmethod
    def power_block(cls, l: int, r: int) -> SymFn:
        """``S_(l, ..., l)`` with ``r`` parts."""
        return cls.monomial((l,) * r)

    @classmethod
    def sigma(cls, exponents: Sequence[int]) -> SymFn:
        return cls((("sigma", tuple(exponents)),))

    @classmethod
    def elementary(cls, i: int) -> SymFn:
        return cls.sigma((0,) * (i - 1) + (1,))

    def __mul__(self, other: SymFn) -> SymFn:
        return SymFn(self.factors + other.factors)

    @property
    def arity(self) -> int:
        """Minimum number of variables the function needs."""
        need = 0
        for kind, data in self.factors:
            need = max(need, len(data) if kind == "S" else 0)
        return need

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for kind, data in self.factors:
            if kind == "S":
                parts.append("S(" + ",".join(map(str, data)) + ")")
            else:
                parts.append(
                    "*".join(
                        f"s{i + 1}" + (f"^{a}" if a > 1 else "")
                        for i, a in enumerate(data)
                        if a
                    )
                    or "1"
                )
        return "*".join(parts)


def _multiset_permutations(values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    n = len(values)
    cur: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(cur) == n:
            yield tuple(cur)
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                cur.append(v)
                yield from rec()
                cur.pop()
                counts[v] += 1

    return rec()


def elementary_values(forms: Sequence[Gf2Poly], k: int) -> list[Gf2Poly]:
    """``[sigma_0, ..., sigma_n]`` of the given polynomials."""
    e = [Gf2Poly.one(k)] + [Gf2Poly.zero(k)] * len(forms)
    for x in forms:
        for j in range(len(forms), 0, -1):
            if e[j - 1]:
                e[j] = e[j] + x * e[j - 1]
    return e


@lru_cache(maxsize=8192)
def _elementary_cached(chars: tuple[int, ...], k: int) -> tuple[Gf2Poly, ...]:
    return tuple(elementary_values([linear_form(c, k) for c in chars], k))


@lru_cache(maxsize=65536)
def _sigma_power(i: int, a: int, chars: tuple[int, ...], k: int) -> Gf2Poly:
    if i > len(chars):
        return Gf2Poly.zero(k)
    return _elementary_cached(chars, k)[i] ** a


@lru_cache(maxsize=65536)
def _eval_atom(kind: str, data: tuple[int, ...], chars: tuple[int, ...], k: int) -> Gf2Poly:
    if kind == "S":
        # Padding (-1) is kept apart from zero parts, so a zero part still
        # occupies a variable: S_(0^i) counts the i-subsets.
        exps = tuple(data) + (-1,) * (len(chars) - len(data))
        acc: set[int] = set()
        for perm in _multiset_permutations(exps):
            term = frozenset([0])
            for c, a in zip(chars, perm):
                if a > 0:
                    term = _mul_terms(term, _linear_power(c, a, k))
            acc.symmetric_difference_update(term)
        return Gf2Poly(k, frozenset(acc))
    value = Gf2Poly.one(k)
    for i, a in enumerate(data):
        if a:
            value = value * _sigma_power(i + 1, a, chars, k)
    return value


@lru_cache(maxsize=200000)
def _eval_cached(f: SymFn, chars: tuple[int, ...], k: int) -> Gf2Poly:
    result = Gf2Poly.one(k)
    for kind, data in f.factors:
        result = result * _eval_atom(kind, data, chars, k)
        if not result:
            break
    return result


def eval_symfn(f: SymFn, chars: Sequence[int], k: int) -> Gf2Poly:
    """Substitute the linear forms of ``chars`` into ``f``."""
    if f.arity > len(chars):
        raise ValueError(f"{f} needs at least {f.arity} variables, got {len(chars)}")
    for c in chars:
        check_char(c, k)
    return _eval_cached(f, tuple(sorted(chars)), k)


# ---------- the formal ring Z_2[Hom(G_k, Z_2)]


class FormalPoly:
    """Polynomial whose variables are the nontrivial characters themselves.

    Monomials are sorted tuples of characters (multisets); no linear
    relations among characters are imposed.
    """

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Iterable[tuple[int, ...]] = ()):
        self.k = k
        if isinstance(terms, frozenset):
            self.terms = terms
        else:
            acc: set[tuple[int, ...]] = set()
            for t in terms:
                acc ^= {tuple(sorted(t))}
            self.terms = frozenset(acc)

    def __add__(self, other: FormalPoly) -> FormalPoly:
        if other.k != self.k:
            raise RankError("rank mismatch")
        return FormalPoly(self.k, self.terms ^ other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalPoly):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.k, self.terms))

    def coefficient(self, monomial: Iterable[int]) -> int:
        return int(tuple(sorted(monomial)) in self.terms)

    def min_monomial(self) -> tuple[int, ...] | None:
        return min(self.terms, default=None)

    def __repr__(self) -> str:
        if not self.terms:
            return f"FormalPoly({self.k}, 0)"
        body = " + ".join("*".join(char_name(c) for c in m) or "1" for m in sorted(self.terms))
        return f"FormalPoly({self.k}, {body})"


def formal_sigma(r: int, rep, k: int | None = None) -> FormalPoly:
    """Degree-``r`` elementary symmetric polynomial of the factors of ``rep``.

    ``rep`` is a GkRep or a sequence of characters; the factors are treated as
    formally independent variables and coefficients are reduced mod 2.
    """
    factors = tuple(getattr(rep, "factors", rep))
    if k is None:
        k = getattr(rep, "k", None) or max(1, max(factors, default=1).bit_length())
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if r > len(factors):
        return FormalPoly(k, frozenset())
    # e[j] holds sigma_j of the factors seen so far
    e: list[set[tuple[int, ...]]] = [{()}] + [set() for _ in range(r)]
    for x in factors:
        for j in range(r, 0, -1):
            if e[j - 1]:
                e[j].symmetric_difference_update(tuple(sorted(m + (x,))) for m in e[j - 1])
    return FormalPoly(k, frozenset(e[r]))


def binomial_product(host_counts: dict[int, int], sub_counts: dict[int, int]) -> int:
    return reduce(
        lambda acc, item: acc * comb(host_counts.get(item[0], 0), item[1]),
        sub_counts.items(),
        1,
    )


def all_multisets(alphabet: Sequence[int], max_size: int) -> Iterator[tuple[int, ...]]:
    """Every sorted multiset over ``alphabet`` of size ``<= max_size``."""
    for size in range(max_size + 1):
        yield from itertools.combinations_with_replacement(sorted(alphabet), size)

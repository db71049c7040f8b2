"""Deciding whether a faithful representation polynomial is a bordism class.

For every character ``rho`` that occurs, the monomials containing ``rho``
are grouped by their restriction key modulo ``rho``.  The grouping is forced,
so the decision needs no search:

* a valence-1 group passes iff it has even size;
* a valence-``m`` group (``m > 1``) passes iff the formal elementary
  symmetric sums of degree ``0..m-1`` vanish mod 2 over its members.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2core import FormalPoly, all_multisets, char_name, formal_sigma
from .repalgebra import GkRep, RepPolynomial, RestrictionKey, is_faithful, multiset_I, restriction_key


@dataclass(frozen=True)
class RhoClass:
    rho: int
    m: int
    key: RestrictionKey
    members: tuple[GkRep, ...]

    @property
    def splittable(self) -> bool:
        """Valence-1 groups may be cut into any pairs of monomials."""
        return self.m == 1

    def __str__(self) -> str:
        body = ", ".join(str(r) for r in self.members)
        return f"{char_name(self.rho)} m={self.m} [{body}]"


@dataclass(frozen=True)
class Failure:
    """Why a class fails: odd size, or a multiset with odd total multiplicity."""

    rho_class: RhoClass
    degree: int
    multiset: tuple[int, ...]

    @property
    def odd_cardinality(self) -> bool:
        return self.degree == 0

    def describe(self) -> str:
        if self.odd_cardinality:
            return f"odd class of size {len(self.rho_class.members)}"
        s = "*".join(char_name(c) for c in self.multiset)
        return f"odd multiplicity of {s} at degree {self.degree}"


@dataclass(frozen=True)
class Verdict:
    realizable: bool
    certificate: dict[int, tuple[RhoClass, ...]] | None = None
    witness: Failure | None = None
    classes_checked: int = field(default=0, compare=False)

    def __bool__(self) -> bool:
        return self.realizable


def _validate(p: RepPolynomial) -> None:
    for r in p.reps:
        if not is_faithful(r):
            raise ValueError(f"monomial {r} is not faithful")


def forced_partition(p: RepPolynomial, rho: int) -> list[RhoClass]:
    groups: dict[RestrictionKey, list[GkRep]] = {}
    for r in p.monomials():
        if rho in r.factors:
            groups.setdefault(restriction_key(r, rho), []).append(r)
    return [RhoClass(rho, key.m, key, tuple(members)) for key, members in sorted(groups.items())]


def check_class(c: RhoClass) -> Failure | None:
    """None on success, else the smallest failing degree and multiset."""
    if len(c.members) % 2:
        return Failure(c, 0, ())
    if c.m == 1:
        return None
    k = c.members[0].k
    for r in range(1, c.m):
        total = FormalPoly(k, frozenset())
        for tau in c.members:
            total = total + formal_sigma(r, tau, k)
        if total:
            return Failure(c, r, total.min_monomial())
    return None


def check_class_direct(c: RhoClass) -> Failure | None:
    """Same decision as ``check_class`` via the binomial multiplicity formula."""
    if len(c.members) % 2:
        return Failure(c, 0, ())
    if c.m == 1:
        return None
    alphabet = sorted({x for tau in c.members for x in tau.factors})
    for r in range(1, c.m):
        for s in all_multisets(alphabet, r):
            if len(s) != r:
                continue
            if sum(multiset_I(tau, s) for tau in c.members) % 2:
                return Failure(c, r, s)
    return None


def is_realizable(p: RepPolynomial, direct: bool = False) -> Verdict:
    _validate(p)
    check = check_class_direct if direct else check_class
    certificate: dict[int, tuple[RhoClass, ...]] = {}
    checked = 0
    for rho in p.occurring_chars():
        classes = forced_partition(p, rho)
        for c in classes:
            checked += 1
            fail = check(c)
            if fail is not None:
                return Verdict(False, witness=fail, classes_checked=checked)
        certificate[rho] = tuple(classes)
    return Verdict(True, certificate=certificate, classes_checked=checked)


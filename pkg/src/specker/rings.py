"""Exact commutative ring backends.

Four concrete rings are shipped: the integers, the rationals, ``Z/n`` and
binary products.  Each backend knows its own arithmetic, enumerates its
idempotents, produces idempotent generators of annihilators, and (for the
integers and rationals) carries a total order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator

from .boolean_algebra import BAElement, FiniteBooleanAlgebra
from .errors import InconsistentBackend, NotPrime, NotWeakBaerAt, UnsupportedCapability

__all__ = [
    "RingBackend",
    "Integers",
    "Rationals",
    "Modular",
    "Product",
    "RingClassification",
    "IdempotentBA",
    "idempotents",
    "idempotent_ba",
    "annihilator_idempotent_witness",
    "classify",
    "ZZ",
    "QQ",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class RingBackend:
    """Capability record for a commutative ring with 1.

    Subclasses supply ``zero``, ``one``, ``coerce``, ``add``, ``neg``,
    ``mul``, ``sample`` and, when finite, ``elements``.  Elements are kept
    in a canonical Python representation so ``==`` and ``hash`` are ring
    equality.
    """

    is_finite = False
    is_domain = False
    is_totally_ordered = False

    zero: Any
    one: Any

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def sum(self, items):
        total = self.zero
        for x in items:
            total = self.add(total, x)
        return total

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_idempotent(self, a) -> bool:
        return self.mul(a, a) == a

    def size(self) -> int | None:
        return None

    def elements(self) -> Iterator:
        raise UnsupportedCapability(f"{self} is infinite; its elements cannot be listed")

    def sample(self, rng: random.Random):
        raise NotImplementedError

    def idempotents(self) -> tuple:
        raise UnsupportedCapability(f"{self} cannot enumerate its idempotents")

    def annihilator_witness(self, a):
        raise UnsupportedCapability(f"{self} has no annihilator witness procedure")

    def weak_baer_failure(self):
        """First element whose annihilator is not idempotent-generated, else None."""
        raise UnsupportedCapability(f"{self} cannot decide weak Baer")

    def compare(self, a, b) -> int:
        raise UnsupportedCapability(f"{self} is not totally ordered")

    def quotient(self, p) -> tuple[RingBackend, Any]:
        raise UnsupportedCapability(f"{self} has no prime quotients")

    @cached_property
    def is_indecomposable(self) -> bool:
        return len(self.idempotents()) == 2


class _DomainRules:
    """Witness and weak-Baer rules shared by the infinite domains."""

    def idempotents(self):
        return (self.zero, self.one)

    def annihilator_witness(self, a):
        a = self.coerce(a)
        return self.one if a == self.zero else self.zero

    def weak_baer_failure(self):
        return None

    def compare(self, a, b) -> int:
        return (a > b) - (a < b)


@dataclass(frozen=True)
class Integers(_DomainRules, RingBackend):
    sample_bound: int = field(default=50, compare=False)

    is_domain = True
    is_totally_ordered = True
    zero = 0
    one = 1

    def __repr__(self):
        return "Z"

    def coerce(self, x):
        if type(x) is int:
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        if isinstance(x, str):
            return int(x.strip())
        return int(x)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sample(self, rng):
        return rng.randint(-self.sample_bound, self.sample_bound)

    def quotient(self, p):
        p = self.coerce(p)
        p = abs(p)
        if p == 0:
            return self, self.coerce
        if not _is_prime(p):
            raise NotPrime(f"({p}) is not a prime ideal of Z")
        return Modular(p), Modular(p).coerce


@dataclass(frozen=True)
class Rationals(_DomainRules, RingBackend):
    sample_bound: int = field(default=20, compare=False)

    is_domain = True
    is_totally_ordered = True
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "Q"

    def coerce(self, x):
        if type(x) is Fraction:
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a Fraction or 'p/q'")
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sample(self, rng):
        b = self.sample_bound
        return Fraction(rng.randint(-b, b), rng.randint(1, b))

    def quotient(self, p):
        p = self.coerce(p)
        if p != 0:
            raise NotPrime("the only prime ideal of Q is 0")
        return self, self.coerce


@dataclass(frozen=True)
class Modular(RingBackend):
    modulus: int

    is_finite = True
    is_totally_ordered = False
    zero = 0

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus < 2:
            raise ValueError("modulus must be an integer >= 2")

    def __repr__(self):
        return f"Z/{self.modulus}"

    @property
    def one(self):
        return 1

    @property
    def is_domain(self):
        return _is_prime(self.modulus)

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer residue")
            x = x.numerator
        if isinstance(x, str):
            x = int(x.strip())
        return int(x) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def size(self):
        return self.modulus

    def elements(self):
        return iter(range(self.modulus))

    def sample(self, rng):
        return rng.randrange(self.modulus)

    @cached_property
    def _idempotents(self):
        return tuple(e for e in range(self.modulus) if e * e % self.modulus == e)

    def idempotents(self):
        return self._idempotents

    def _ann(self, a):
        return [x for x in range(self.modulus) if a * x % self.modulus == 0]

    def annihilator_witness(self, a):
        a = self.coerce(a)
        ann = self._ann(a)
        for b in self.idempotents():
            if b * a % self.modulus == 0 and all(b * x % self.modulus == x for x in ann):
                return b
        raise NotWeakBaerAt(a, self)

    def weak_baer_failure(self):
        for a in range(self.modulus):
            try:
                self.annihilator_witness(a)
            except NotWeakBaerAt:
                return a
        return None

    def quotient(self, p):
        """``Z/n`` modulo the ideal generated by ``p``.

        The ideal is checked prime by exhaustive scan; the quotient is
        ``Z/d`` where ``d`` is the index of the ideal.
        """
        n = self.modulus
        p = self.coerce(p)
        ideal = {p * x % n for x in range(n)}
        proper = len(ideal) < n
        prime = proper and all(
            a in ideal or b in ideal
            for a in range(n)
            for b in range(n)
            if a * b % n in ideal
        )
        if not prime:
            raise NotPrime(f"the ideal generated by {p} in Z/{n} is not prime")
        d = n // len(ideal)
        if d == n:
            return self, self.coerce
        return Modular(d), Modular(d).coerce


@dataclass(frozen=True)
class Product(RingBackend):
    left: RingBackend
    right: RingBackend

    is_domain = False
    is_totally_ordered = False

    def __repr__(self):
        return f"({self.left!r} x {self.right!r})"

    @property
    def is_finite(self):
        return self.left.is_finite and self.right.is_finite

    @property
    def zero(self):
        return (self.left.zero, self.right.zero)

    @property
    def one(self):
        return (self.left.one, self.right.one)

    def coerce(self, x):
        if isinstance(x, tuple) or isinstance(x, list):
            if len(x) != 2:
                raise ValueError("product elements are pairs")
            return (self.left.coerce(x[0]), self.right.coerce(x[1]))
        # an integer n means n * 1
        return (self.left.coerce(x), self.right.coerce(x))

    def add(self, a, b):
        return (self.left.add(a[0], b[0]), self.right.add(a[1], b[1]))

    def neg(self, a):
        return (self.left.neg(a[0]), self.right.neg(a[1]))

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def size(self):
        if not self.is_finite:
            return None
        return self.left.size() * self.right.size()

    def elements(self):
        if not self.is_finite:
            return super().elements()
        return itertools.product(list(self.left.elements()), list(self.right.elements()))

    def sample(self, rng):
        return (self.left.sample(rng), self.right.sample(rng))

    @cached_property
    def _idempotents(self):
        return tuple(itertools.product(self.left.idempotents(), self.right.idempotents()))

    def idempotents(self):
        return self._idempotents

    def annihilator_witness(self, a):
        a = self.coerce(a)
        try:
            return (self.left.annihilator_witness(a[0]), self.right.annihilator_witness(a[1]))
        except NotWeakBaerAt:
            raise NotWeakBaerAt(a, self) from None

    def weak_baer_failure(self):
        fl = self.left.weak_baer_failure()
        if fl is not None:
            return (fl, self.right.zero)
        fr = self.right.weak_baer_failure()
        if fr is not None:
            return (self.left.zero, fr)
        return None


ZZ = Integers()
QQ = Rationals()


def idempotents(ring: RingBackend) -> tuple:
    """All idempotents of ``ring`` in the backend's deterministic order."""
    return ring.idempotents()


def annihilator_idempotent_witness(ring: RingBackend, a):
    """Idempotent ``b`` with ``b R = ann(a)``; raises NotWeakBaerAt otherwise."""
    return ring.annihilator_witness(a)


@dataclass(frozen=True)
class IdempotentBA:
    """``Id(R)`` as a finite Boolean algebra.

    ``atoms`` lists the minimal nonzero idempotents; a set of atom indices
    corresponds to the sum of those atoms.
    """

    ring: RingBackend
    atoms: tuple

    @property
    def algebra(self) -> FiniteBooleanAlgebra:
        return FiniteBooleanAlgebra(len(self.atoms))

    def to_ring(self, e: BAElement):
        return self.ring.sum(self.atoms[i] for i in sorted(e.atoms))

    def from_ring(self, a) -> BAElement:
        r = self.ring
        if not r.is_idempotent(a):
            raise ValueError(f"{a!r} is not idempotent in {r}")
        return BAElement(self.algebra, frozenset(i for i, t in enumerate(self.atoms) if r.mul(t, a) == t))


def idempotent_ba(ring: RingBackend) -> IdempotentBA:
    ids = ring.idempotents()
    z = ring.zero

    def below(f, e):
        return ring.mul(f, e) == f

    atoms = tuple(
        e for e in ids if e != z and not any(f != z and f != e and below(f, e) for f in ids)
    )
    return IdempotentBA(ring, atoms)


@dataclass(frozen=True)
class RingClassification:
    is_indecomposable: bool
    is_domain: bool
    is_weak_baer_sampled: bool
    is_totally_ordered: bool
    weak_baer_failure: Any = None


def _sample_pool(ring: RingBackend, rng: random.Random, count: int) -> list:
    if ring.is_finite and ring.size() <= count:
        return list(ring.elements())
    pool = [ring.zero, ring.one, ring.neg(ring.one)]
    pool += [ring.sample(rng) for _ in range(count)]
    return pool


def classify(ring: RingBackend, samples: int = 60, seed: int = 0) -> RingClassification:
    """Classification flags, each backed by a runtime check.

    Declared domain and order flags are spot-checked against sampled
    elements (exhaustive for small finite rings); a failing check means the
    backend is lying about itself and raises InconsistentBackend.
    """
    rng = random.Random(seed)
    pool = _sample_pool(ring, rng, samples)
    z = ring.zero

    for e in ring.idempotents():
        if not ring.is_idempotent(e):
            raise InconsistentBackend(f"{e!r} listed as idempotent in {ring}")
    if z not in ring.idempotents() or ring.one not in ring.idempotents():
        raise InconsistentBackend(f"0 or 1 missing from the idempotents of {ring}")

    zero_divisor = next(
        ((a, b) for a in pool for b in pool if a != z and b != z and ring.mul(a, b) == z), None
    )
    if ring.is_domain and zero_divisor is not None:
        raise InconsistentBackend(f"{ring} claims to be a domain but {zero_divisor} multiply to 0")
    if not ring.is_domain and ring.is_finite and ring.size() <= samples and zero_divisor is None:
        raise InconsistentBackend(f"{ring} has no zero divisors yet is not flagged a domain")

    if ring.is_totally_ordered:
        _check_order(ring, pool)

    failure = ring.weak_baer_failure()
    return RingClassification(
        is_indecomposable=ring.is_indecomposable,
        is_domain=ring.is_domain,
        is_weak_baer_sampled=failure is None,
        is_totally_ordered=ring.is_totally_ordered,
        weak_baer_failure=failure,
    )


def _check_order(ring: RingBackend, pool: list) -> None:
    cmp = ring.compare
    z = ring.zero
    small = pool[:25]
    for a in small:
        for b in small:
            if cmp(a, b) != -cmp(b, a):
                raise InconsistentBackend(f"order on {ring} is not antisymmetric at {a!r}, {b!r}")
            for c in small:
                if cmp(a, b) <= 0 and cmp(ring.add(a, c), ring.add(b, c)) > 0:
                    raise InconsistentBackend(f"order on {ring} is not translation invariant")
            if cmp(z, a) <= 0 and cmp(z, b) <= 0 and cmp(z, ring.mul(a, b)) > 0:
                raise InconsistentBackend(f"order on {ring}: product of nonnegatives is negative")
    for e in ring.idempotents():
        if e not in (z, ring.one):
            raise InconsistentBackend(f"totally ordered {ring} has a nontrivial idempotent {e!r}")

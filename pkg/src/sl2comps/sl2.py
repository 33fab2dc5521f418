"""Exact formal-character arithmetic for rank-1 (SL2) modules.

Characters are finitely supported, symmetric integer weight-multiplicity
maps.  The characteristic is either a prime or ``INFINITY`` (characteristic
zero, where every Weyl module is irreducible).  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

INFINITY = float("inf")


class SL2Error(ValueError):
    """Raised for malformed characters or invalid characteristic use."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_characteristic(p) -> None:
    """Accept a prime integer or INFINITY, reject everything else."""
    if p == INFINITY:
        return
    if not isinstance(p, int) or not is_prime(p):
        raise SL2Error(f"characteristic must be a prime or infinity, got {p!r}")


def base_p_digits(n: int, p: int) -> list[int]:
    """Digits of n in base p, least significant first.  n = 0 gives []."""
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def dim_irred(n: int, p) -> int:
    """Dimension of the irreducible of highest weight n: prod(digit+1)."""
    if p == INFINITY:
        return n + 1
    out = 1
    for d in base_p_digits(n, p):
        out *= d + 1
    return out


class Character:
    """Symmetric weight-multiplicity map, stored on the non-negative side.

    The negative side is implied by symmetry and materialised on demand via
    :meth:`full_items`.
    """

    __slots__ = ("_m", "_hash")

    def __init__(self, nonneg: dict[int, int]):
        m = {}
        for w, mult in nonneg.items():
            if w < 0 or not isinstance(w, int):
                raise SL2Error(f"non-negative integer weights only, got {w!r}")
            if mult < 0:
                raise SL2Error(f"negative multiplicity {mult} at weight {w}")
            if mult:
                m[w] = mult
        self._m = m
        self._hash = None

    @classmethod
    def from_full(cls, full: dict[int, int]) -> "Character":
        """Build from a full (two-sided) weight map, checking symmetry."""
        for w, mult in full.items():
            if full.get(-w, 0) != mult:
                raise SL2Error(f"asymmetric weight map at weight {w}")
        return cls({w: m for w, m in full.items() if w >= 0})

    def mult(self, w: int) -> int:
        return self._m.get(abs(w), 0)

    @property
    def dim(self) -> int:
        return sum(m * (2 if w else 1) for w, m in self._m.items())

    def nonneg_items(self):
        return sorted(self._m.items(), reverse=True)

    def full_items(self):
        """All (weight, mult) pairs including the negative side."""
        for w, m in self._m.items():
            yield w, m
            if w:
                yield -w, m

    def full_weight_list(self) -> list[int]:
        """Every weight repeated by multiplicity (basis enumeration)."""
        out = []
        for w, m in self.full_items():
            out.extend([w] * m)
        out.sort(reverse=True)
        return out

    def highest(self) -> int:
        if not self._m:
            raise SL2Error("empty character has no highest weight")
        return max(self._m)

    def is_zero(self) -> bool:
        return not self._m

    def __eq__(self, other):
        return isinstance(other, Character) and self._m == other._m

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._m.items()))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{w}:{m}" for w, m in self.nonneg_items())
        return f"Character({{{inner}}})"


ZERO_CHARACTER = Character({})
TRIVIAL_CHARACTER = Character({0: 1})


def weyl_char(n: int) -> Character:
    """Character of the Weyl module of highest weight n: n, n-2, ..., -n."""
    if n < 0:
        raise SL2Error(f"highest weight must be non-negative, got {n}")
    return Character({w: 1 for w in range(n, -1, -2)})


def direct_sum(*chars: Character) -> Character:
    out: dict[int, int] = {}
    for c in chars:
        for w, m in c._m.items():
            out[w] = out.get(w, 0) + m
    return Character(out)


def tensor(a: Character, b: Character) -> Character:
    """Pointwise convolution of weight multiplicities."""
    full: dict[int, int] = {}
    b_items = list(b.full_items())
    for w1, m1 in a.full_items():
        for w2, m2 in b_items:
            w = w1 + w2
            full[w] = full.get(w, 0) + m1 * m2
    return Character({w: m for w, m in full.items() if w >= 0})


def sym_power(c: Character, k: int) -> Character:
    """Multiset of degree-k monomial weight sums with repetition."""
    if k < 0:
        raise SL2Error("negative symmetric power")
    if k == 0:
        return TRIVIAL_CHARACTER
    basis = c.full_weight_list()
    full: dict[int, int] = {}
    for combo in itertools.combinations_with_replacement(basis, k):
        w = sum(combo)
        full[w] = full.get(w, 0) + 1
    return Character({w: m for w, m in full.items() if w >= 0})


def ext_power(c: Character, k: int) -> Character:
    """Multiset of degree-k monomial weight sums without repetition."""
    if k < 0:
        raise SL2Error("negative exterior power")
    if k == 0:
        return TRIVIAL_CHARACTER
    basis = c.full_weight_list()
    if k > len(basis):
        return ZERO_CHARACTER
    full: dict[int, int] = {}
    for combo in itertools.combinations(basis, k):
        w = sum(combo)
        full[w] = full.get(w, 0) + 1
    return Character({w: m for w, m in full.items() if w >= 0})


def twist(c: Character, r: int, p) -> Character:
    """Scale every weight by p**r (Frobenius twist at character level)."""
    if r < 0:
        raise SL2Error(f"twist must be non-negative, got {r}")
    if r == 0:
        return c
    if p == INFINITY:
        raise SL2Error("twist undefined in characteristic zero")
    check_characteristic(p)
    q = p**r
    return Character({w * q: m for w, m in c._m.items()})


@lru_cache(maxsize=None)
def irred_char(n: int, p) -> Character:
    """Character of the irreducible of highest weight n in characteristic p.

    Finite p uses the tensor factorisation over base-p digits; at infinity
    the Weyl character is already irreducible.
    """
    if n < 0:
        raise SL2Error(f"highest weight must be non-negative, got {n}")
    check_characteristic(p)
    if p == INFINITY:
        return weyl_char(n)
    out = TRIVIAL_CHARACTER
    for i, d in enumerate(base_p_digits(n, p)):
        if d:
            out = tensor(out, twist(weyl_char(d), i, p))
    return out


class FactorMultiset:
    """Multiset of irreducible highest weights with multiplicities."""

    __slots__ = ("_f",)

    def __init__(self, factors: dict[int, int] | None = None):
        f = {}
        for n, m in (factors or {}).items():
            if n < 0:
                raise SL2Error(f"highest weight must be non-negative, got {n}")
            if m < 0:
                raise SL2Error(f"negative factor multiplicity at {n}")
            if m:
                f[n] = m
        self._f = f

    def items(self):
        return sorted(self._f.items(), reverse=True)

    def mult(self, n: int) -> int:
        return self._f.get(n, 0)

    def __contains__(self, n: int) -> bool:
        return n in self._f

    def dim(self, p) -> int:
        return sum(m * dim_irred(n, p) for n, m in self._f.items())

    def num_factors(self) -> int:
        return sum(self._f.values())

    def trivial_count(self) -> int:
        return self._f.get(0, 0)

    def factor_dims(self, p) -> list[int]:
        """Dimensions of all factors, repeated by multiplicity, descending."""
        out = []
        for n, m in self._f.items():
            out.extend([dim_irred(n, p)] * m)
        out.sort(reverse=True)
        return out

    def union(self, *others: "FactorMultiset") -> "FactorMultiset":
        f = dict(self._f)
        for o in others:
            for n, m in o._f.items():
                f[n] = f.get(n, 0) + m
        return FactorMultiset(f)

    def scale(self, k: int) -> "FactorMultiset":
        """Multiply all multiplicities by k."""
        return FactorMultiset({n: m * k for n, m in self._f.items()})

    def scale_weights(self, q: int) -> "FactorMultiset":
        """Multiply every highest weight by q (uniform Frobenius shift)."""
        return FactorMultiset({n * q: m for n, m in self._f.items()})

    def shift_normalized(self, p) -> "FactorMultiset":
        """Divide weights by p until some nonzero weight is not divisible.

        Two multisets related by a uniform Frobenius twist normalise to the
        same value; at p = infinity the multiset is returned unchanged.
        """
        if p == INFINITY:
            return self
        cur = self
        while True:
            nonzero = [n for n in cur._f if n]
            if not nonzero or any(n % p for n in nonzero):
                return cur
            cur = FactorMultiset({n // p: m for n, m in cur._f.items()})

    def to_character(self, p) -> Character:
        return direct_sum(
            *(irred_char(n, p) for n, m in self._f.items() for _ in range(m))
        )

    def key(self) -> tuple:
        return tuple(self.items())

    def __eq__(self, other):
        return isinstance(other, FactorMultiset) and self._f == other._f

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self._f:
            return "FactorMultiset({})"
        inner = " / ".join(
            f"{n}" + (f"^{m}" if m > 1 else "") for n, m in self.items()
        )
        return f"FactorMultiset({inner})"


def decompose(c: Character, p) -> FactorMultiset:
    """Split a character into irreducible factors by greedy highest-weight
    subtraction.

    A negative residual multiplicity means the input was not a non-negative
    integer combination of irreducible characters and is a hard error; this
    doubles as a validity check on parsed data.
    """
    check_characteristic(p)
    residual = dict(c._m)
    factors: dict[int, int] = {}
    while residual:
        m = max(residual)
        k = residual[m]
        if k < 0:
            raise SL2Error(
                "character is not a non-negative sum of irreducibles"
            )
        factors[m] = factors.get(m, 0) + k
        for w, mult in irred_char(m, p)._m.items():
            new = residual.get(w, 0) - k * mult
            if new < 0:
                raise SL2Error(
                    "character is not a non-negative sum of irreducibles"
                )
            if new:
                residual[w] = new
            else:
                residual.pop(w, None)
    return FactorMultiset(factors)


def weyl_factors(n: int, p) -> FactorMultiset:
    """Composition factors of the Weyl module of highest weight n."""
    return decompose(weyl_char(n), p)

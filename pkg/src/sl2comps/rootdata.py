"""Root-system data for the simple types of rank at most 8.

Weights are integer tuples of coefficients over the fundamental weights
(Bourbaki node ordering).  Roots are integer tuples over the simple roots.
All pairings are exact integer arithmetic; the only divisions performed are
provably exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = {"A", "B", "C", "D", "E", "F", "G"}


class RootDataError(ValueError):
    pass


@dataclass(frozen=True)
class HostType:
    """A simple type: family letter plus rank."""

    family: str
    rank: int

    def __post_init__(self):
        fam, rank = self.family, self.rank
        if fam not in FAMILIES:
            raise RootDataError(f"unknown family {fam!r}")
        if not 1 <= rank <= 8:
            raise RootDataError(f"rank {rank} out of range 1..8")
        if fam == "B" and rank < 2:
            raise RootDataError("B-type needs rank >= 2")
        if fam == "C" and rank < 2:
            raise RootDataError("C-type needs rank >= 2")
        if fam == "D" and rank < 3:
            raise RootDataError("D-type needs rank >= 3")
        if fam == "E" and rank not in (6, 7, 8):
            raise RootDataError("E-type needs rank 6, 7 or 8")
        if fam == "F" and rank != 4:
            raise RootDataError("F-type needs rank 4")
        if fam == "G" and rank != 2:
            raise RootDataError("G-type needs rank 2")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, token: str) -> "HostType":
        token = token.strip()
        if len(token) < 2 or token[0] not in FAMILIES:
            raise RootDataError(f"bad host token {token!r}")
        return cls(token[0], int(token[1:]))


def cartan_matrix(host: HostType) -> tuple[tuple[int, ...], ...]:
    """C[i][j] = <alpha_j, alpha_i-check>, Bourbaki numbering."""
    n = host.rank
    fam = host.family
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            link(i, i + 1)
        if fam == "B" and n >= 2:
            # alpha_n short: <alpha_{n-1}, alpha_n-check> = -2
            c[n - 1][n - 2] = -2
        if fam == "C" and n >= 2:
            # alpha_n long: <alpha_n, alpha_{n-1}-check> = -2
            c[n - 2][n - 1] = -2
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        # chain 1-3-4-5-6(-7)(-8), node 2 attached to node 4
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
    elif fam == "F":
        link(0, 1)
        link(1, 2, cij=-1, cji=-2)  # alpha_2 long, alpha_3 short
        link(2, 3)
    elif fam == "G":
        # alpha_1 short, alpha_2 long
        c[0][1] = -3
        c[1][0] = -1
    return tuple(tuple(row) for row in c)


def root_lengths(host: HostType) -> tuple[int, ...]:
    """Half squared lengths d_i, integer-normalised (short root = 1)."""
    n = host.rank
    fam = host.family
    if fam in ("A", "D", "E"):
        return (1,) * n
    if fam == "B":
        return (2,) * (n - 1) + (1,)
    if fam == "C":
        return (1,) * (n - 1) + (2,)
    if fam == "F":
        return (2, 2, 1, 1)
    if fam == "G":
        return (1, 3)
    raise RootDataError(fam)


@lru_cache(maxsize=None)
def positive_roots(host: HostType) -> tuple[tuple[int, ...], ...]:
    """All positive roots in simple-root coordinates."""
    n = host.rank
    C = cartan_matrix(host)

    def pairing(beta, i):
        return sum(C[i][j] * beta[j] for j in range(n))

    roots = set()
    frontier = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(frontier)
    while frontier:
        nxt = []
        for beta in frontier:
            roots.add(beta)
            for i in range(n):
                m = pairing(beta, i)
                img = list(beta)
                img[i] -= m
                img = tuple(img)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    pos = sorted(b for b in roots if all(x >= 0 for x in b))
    neg = [tuple(-x for x in b) for b in pos]
    assert set(pos) | set(neg) == roots
    return tuple(pos)


def reflect(host: HostType, mu: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Simple reflection s_i on a weight in fundamental coordinates."""
    C = cartan_matrix(host)
    m = mu[i]
    return tuple(mu[j] - m * C[j][i] for j in range(host.rank))


def dominantize(host: HostType, mu: tuple[int, ...]) -> tuple[int, ...]:
    cur = mu
    while True:
        for i, x in enumerate(cur):
            if x < 0:
                cur = reflect(host, cur, i)
                break
        else:
            return cur


def dot_dominantize(host: HostType, mu: tuple[int, ...]):
    """Dot-action dominantization: returns (dominant weight, sign) or None
    when mu is dot-singular."""
    rho = (1,) * host.rank
    nu = tuple(x + 1 for x in mu)
    sign = 1
    while True:
        if any(x == 0 for x in nu):
            return None
        for i, x in enumerate(nu):
            if x < 0:
                nu = reflect(host, nu, i)
                sign = -sign
                break
        else:
            return tuple(a - b for a, b in zip(nu, rho)), sign


def weyl_orbit(host: HostType, mu: tuple[int, ...]) -> set[tuple[int, ...]]:
    seen = {mu}
    frontier = [mu]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(host.rank):
                img = reflect(host, w, i)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def root_fund_coords(host: HostType, beta: tuple[int, ...]) -> tuple[int, ...]:
    """Fundamental coordinates of a root given in simple-root coordinates."""
    C = cartan_matrix(host)
    n = host.rank
    return tuple(sum(C[i][j] * beta[j] for j in range(n)) for i in range(n))


def form_with_root(host: HostType, mu: tuple[int, ...], beta) -> int:
    """(mu, beta) for a weight mu (fund coords) and root beta (root coords),
    in the integer normalisation of root_lengths."""
    d = root_lengths(host)
    return sum(beta[j] * d[j] * mu[j] for j in range(host.rank))


def root_norm(host: HostType, beta) -> int:
    """(beta, beta) in the same normalisation."""
    return form_with_root(host, root_fund_coords(host, beta), beta)


def coroot_pairing(host: HostType, mu: tuple[int, ...], beta) -> Fraction:
    """<mu, beta-check> = 2 (mu, beta) / (beta, beta)."""
    return Fraction(2 * form_with_root(host, mu, beta), root_norm(host, beta))


def weyl_dimension(host: HostType, lam: tuple[int, ...]) -> int:
    """Weyl dimension formula via positive-root pairings."""
    rho = (1,) * host.rank
    lam_rho = tuple(a + 1 for a in lam)
    num = Fraction(1)
    for beta in positive_roots(host):
        num *= Fraction(form_with_root(host, lam_rho, beta),
                        form_with_root(host, rho, beta))
    assert num.denominator == 1
    return int(num)

"""Weight tables for simple host groups and restriction to a rank-1 torus.

weyl_table computes the full weight-multiplicity table of a Weyl module by
Freudenthal recursion (exact integers).  A TorusFunctional carries the
images of the epsilon-basis of a classical host and pushes weight tables
forward to rank-1 characters.  The modular store records, per (host,
highest weight, characteristic), the composition-factor correction of a
Weyl module relative to the irreducible with the same highest weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rootdata import (
    HostType,
    RootDataError,
    coroot_pairing,
    dominantize,
    dot_dominantize,
    form_with_root,
    positive_roots,
    root_fund_coords,
    root_norm,
    weyl_dimension,
    weyl_orbit,
)
from .sl2 import INFINITY, Character, check_characteristic

DIMENSION_GUARD = 100_000


class HostRepError(ValueError):
    pass


@dataclass(frozen=True)
class HostWeightTable:
    host: HostType
    highest: tuple[int, ...]
    mult: dict  # weight (fund coords) -> multiplicity

    @property
    def dim(self) -> int:
        return sum(self.mult.values())

    def __hash__(self):
        return hash((self.host, self.highest))


def _dominant_weights_below(host: HostType, lam: tuple[int, ...]):
    """All weights of the Weyl module W(lam) via string saturation."""
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(host.rank):
                m = mu[i]
                if m == 0:
                    continue
                step = 1 if m > 0 else -1
                cur = mu
                for _ in range(abs(m)):
                    cur = tuple(
                        c - step * a
                        for c, a in zip(cur, _alpha_fund(host, i))
                    )
                    if cur not in seen:
                        seen.add(cur)
                        nxt.append(cur)
        frontier = nxt
        if len(seen) > DIMENSION_GUARD:
            raise HostRepError("weight table exceeds the dimension bound")
    return seen


@lru_cache(maxsize=None)
def _alpha_fund(host: HostType, i: int) -> tuple[int, ...]:
    beta = tuple(1 if j == i else 0 for j in range(host.rank))
    return root_fund_coords(host, beta)


@lru_cache(maxsize=None)
def weyl_table(host: HostType, highest: tuple[int, ...]) -> HostWeightTable:
    """Full weight-multiplicity table of W(highest) by Freudenthal."""
    lam = tuple(highest)
    if len(lam) != host.rank or any(a < 0 for a in lam):
        raise HostRepError(f"bad dominant weight {lam} for {host}")
    dim = weyl_dimension(host, lam)
    if dim > DIMENSION_GUARD:
        raise HostRepError(
            f"dimension {dim} of {host} module {lam} exceeds the bound"
        )
    weights = _dominant_weights_below(host, lam)
    dominants = sorted(
        (w for w in weights if all(x >= 0 for x in w)),
        key=lambda w: _height_below(host, lam, w),
    )
    pos = positive_roots(host)
    pos_fund = [root_fund_coords(host, b) for b in pos]
    mult: dict[tuple[int, ...], int] = {lam: 1}
    lam_rho = tuple(a + 1 for a in lam)
    for mu in dominants:
        if mu == lam:
            continue
        mu_rho = tuple(a + 1 for a in mu)
        # (lam+rho, lam+rho) - (mu+rho, mu+rho) = (lam+mu+2rho, lam-mu)
        diff_root = _root_coords_of_difference(host, lam, mu)
        denom = form_with_root(
            host, tuple(a + b for a, b in zip(lam_rho, mu_rho)), diff_root
        )
        total = 0
        for beta, beta_f in zip(pos, pos_fund):
            nu = mu
            while True:
                nu = tuple(a + b for a, b in zip(nu, beta_f))
                if nu not in weights:
                    break
                dom = dominantize(host, nu)
                m = mult[dom]  # strictly above mu, already computed
                total += m * form_with_root(host, nu, beta)
        num = 2 * total
        assert num % denom == 0, (host, lam, mu)
        mult[mu] = num // denom
    full: dict[tuple[int, ...], int] = {}
    for mu, m in mult.items():
        if m == 0:
            continue
        for w in weyl_orbit(host, mu):
            full[w] = m
    table = HostWeightTable(host, lam, full)
    assert table.dim == dim, (host, lam, table.dim, dim)
    return table


def _height_below(host: HostType, lam, mu) -> int:
    return sum(_root_coords_of_difference(host, lam, mu))


@lru_cache(maxsize=None)
def _cartan_inverse_times_det(host: HostType):
    """Integer adjugate of the Cartan matrix plus its determinant."""
    from .rootdata import cartan_matrix

    C = [list(r) for r in cartan_matrix(host)]
    n = host.rank
    from fractions import Fraction

    aug = [[Fraction(C[i][j]) for j in range(n)] +
           [Fraction(1 if k == i else 0) for k in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    return inv


def _root_coords_of_difference(host: HostType, lam, mu) -> tuple[int, ...]:
    """Coordinates of lam - mu over the simple roots (must be integral)."""
    inv = _cartan_inverse_times_det(host)
    n = host.rank
    diff = [a - b for a, b in zip(lam, mu)]
    out = []
    for j in range(n):
        v = sum(inv[j][i] * diff[i] for i in range(n))
        if v.denominator != 1:
            raise HostRepError(f"{mu} not in the root lattice below {lam}")
        out.append(int(v))
    return tuple(out)


def spin_table(host: HostType, half: str = "even") -> HostWeightTable:
    """Spin (B_n) or half-spin (D_n) weight table.

    For D_n, ``even`` selects the fundamental weight lambda_n (even number
    of negative epsilon signs) and ``odd`` selects lambda_{n-1}.
    """
    n = host.rank
    if host.family == "B":
        lam = tuple(0 if i < n - 1 else 1 for i in range(n))
    elif host.family == "D":
        if half == "even":
            lam = tuple(0 if i < n - 1 else 1 for i in range(n))
        elif half == "odd":
            lam = tuple(1 if i == n - 2 else 0 for i in range(n))
        else:
            raise HostRepError(f"half must be 'even' or 'odd', got {half!r}")
    else:
        raise HostRepError(f"spin table only for B or D hosts, not {host}")
    return weyl_table(host, lam)


# ---------------------------------------------------------------------------
# epsilon coordinates and torus functionals for classical hosts
# ---------------------------------------------------------------------------


def epsilon_coords_doubled(host: HostType, mu: tuple[int, ...]) -> tuple[int, ...]:
    """2x the epsilon-basis coordinates of a weight (integers for spins).

    For A_n the representative with last coordinate zero is returned; a
    functional must have coefficient sum zero to be well defined there.
    """
    n = host.rank
    fam = host.family
    if fam == "A":
        return tuple(2 * sum(mu[k] for k in range(i, n)) for i in range(n)) + (0,)
    if fam == "B":
        return tuple(
            2 * sum(mu[k] for k in range(i, n - 1)) + mu[n - 1] for i in range(n)
        )
    if fam == "C":
        return tuple(2 * sum(mu[k] for k in range(i, n)) for i in range(n))
    if fam == "D":
        out = [
            2 * sum(mu[k] for k in range(i, n - 2)) + mu[n - 2] + mu[n - 1]
            for i in range(n - 2)
        ]
        out.append(mu[n - 2] + mu[n - 1])
        out.append(mu[n - 1] - mu[n - 2])
        return tuple(out)
    raise HostRepError(f"epsilon coordinates undefined for {host}")


@dataclass(frozen=True)
class TorusFunctional:
    """Integer images of the epsilon basis of a classical host."""

    host: HostType
    values: tuple[int, ...]

    def apply(self, mu: tuple[int, ...]) -> int:
        eps2 = epsilon_coords_doubled(self.host, mu)
        total = sum(c * e for c, e in zip(self.values, eps2))
        if total % 2:
            raise HostRepError(
                "embedding does not lift to the spin cover with this functional"
            )
        return total // 2


def restrict_table(table: HostWeightTable, f: TorusFunctional) -> Character:
    """Pushforward of the weight multiplicities along the functional."""
    full: dict[int, int] = {}
    for w, m in table.mult.items():
        v = f.apply(w)
        full[v] = full.get(v, 0) + m
    return Character.from_full(full)


def functional_from_natural(host: HostType, natural: Character) -> TorusFunctional:
    """Epsilon images read off a natural-module restriction character.

    Positive weights are sorted descending; for B one zero weight is the
    radical direction and is removed.
    """
    fam, n = host.family, host.rank
    weights = natural.full_weight_list()
    if fam == "A":
        if len(weights) != n + 1:
            raise HostRepError(
                f"natural module of {host} needs {n + 1} weights, got {len(weights)}"
            )
        return TorusFunctional(host, tuple(weights))
    if fam not in ("B", "C", "D"):
        raise HostRepError(f"no natural-module functional for {host}")
    expected = 2 * n + 1 if fam == "B" else 2 * n
    if len(weights) != expected:
        raise HostRepError(
            f"natural module of {host} needs {expected} weights, got {len(weights)}"
        )
    for w in weights:
        if natural.mult(w) != natural.mult(-w):
            raise HostRepError(
                "restriction does not preserve the form at weight level"
            )
    zeros = natural.mult(0)
    if fam == "B":
        if zeros % 2 == 0:
            raise HostRepError(
                "restriction does not preserve the form at weight level"
            )
        zeros -= 1
    elif zeros % 2:
        raise HostRepError("restriction does not preserve the form at weight level")
    half = [w for w in weights if w > 0] + [0] * (zeros // 2)
    half.sort(reverse=True)
    assert len(half) == n
    return TorusFunctional(host, tuple(half))


# ---------------------------------------------------------------------------
# modular irreducible characters via the correction store
# ---------------------------------------------------------------------------


class ModularStore:
    """Composition-factor corrections of Weyl modules, keyed by
    (family, rank, highest weight) with a characteristic condition."""

    def __init__(self):
        self.entries: list[tuple] = []

    def add(self, host: HostType, lam: tuple, pcond, corrections: list):
        self.entries.append((host, tuple(lam), pcond, tuple(corrections)))

    def lookup(self, host: HostType, lam: tuple, p):
        for h, l, pcond, corr in self.entries:
            if h == host and l == tuple(lam) and pcond(p):
                return corr
        return None


def is_orbit_irreducible(host: HostType, lam: tuple[int, ...]) -> bool:
    """True when the Weyl module's weights form a single orbit (hence the
    module is irreducible in every characteristic)."""
    table = weyl_table(host, tuple(lam))
    return len(table.mult) == len(weyl_orbit(host, tuple(lam))) and all(
        m == 1 for m in table.mult.values()
    )


def modular_irred_host_char(
    host: HostType, lam: tuple[int, ...], p, f: TorusFunctional, store: ModularStore
) -> Character:
    """Restricted character of the modular irreducible V(lam).

    Resolved as the Weyl character minus store corrections, recursively.
    Raises when the module is not covered by orbit-irreducibility or the
    store.
    """
    check_characteristic(p)
    lam = tuple(lam)
    weyl = restrict_table(weyl_table(host, lam), f)
    if p == INFINITY or is_orbit_irreducible(host, lam):
        return weyl
    corr = store.lookup(host, lam, p)
    if corr is None:
        raise HostRepError(
            f"modular character unknown for {host} weight {lam} at p={p}"
        )
    full = {w: m for w, m in weyl.full_items()}
    for mu, mult in corr:
        sub = modular_irred_host_char(host, mu, p, f, store)
        for w, m in sub.full_items():
            full[w] = full.get(w, 0) - mult * m
    try:
        return Character.from_full({w: m for w, m in full.items() if m})
    except Exception as exc:  # negative multiplicity: bad store data
        raise HostRepError(f"inconsistent store entry for {host} {lam}: {exc}")


# ---------------------------------------------------------------------------
# Jantzen sum-formula oracle
# ---------------------------------------------------------------------------


def jantzen_sum(host: HostType, lam: tuple[int, ...], p: int) -> dict:
    """Sum of the characters of the Jantzen filtration layers of W(lam),
    expressed in the Weyl-character basis: dominant weight -> coefficient.

    An empty result certifies that the Weyl module is irreducible.
    """
    check_characteristic(p)
    if p == INFINITY:
        return {}
    lam = tuple(lam)
    lam_rho = tuple(a + 1 for a in lam)
    out: dict[tuple[int, ...], int] = {}
    for beta in positive_roots(host):
        pairing = coroot_pairing(host, lam_rho, beta)
        assert pairing.denominator == 1
        pairing = int(pairing)
        beta_f = root_fund_coords(host, beta)
        mp = p
        while mp < pairing:
            vp = 0
            q = mp
            while q % p == 0:
                vp += 1
                q //= p
            # s_{beta, mp} . lam = lam - (pairing - mp) beta
            mu = tuple(a - (pairing - mp) * b for a, b in zip(lam, beta_f))
            dd = dot_dominantize(host, mu)
            if dd is not None:
                dom, sign = dd
                out[dom] = out.get(dom, 0) + sign * vp
                if out[dom] == 0:
                    del out[dom]
            mp += p
    return out

"""Restriction of minimal/adjoint modules to Levi subgroups, computed
directly from the ambient root system.

A Levi factor is a subset of simple nodes; the restriction of a weight is
the tuple of its pairings with the selected simple coroots.  Decomposing
the restricted weight multiset into factor Weyl characters by greedy
highest-weight subtraction yields the characteristic-zero composition
factors, which serve as the independent oracle for the shipped Levi table
data.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .rootdata import (
    HostType,
    cartan_matrix,
    positive_roots,
    root_fund_coords,
    form_with_root,
    root_lengths,
)
from .hostrep import weyl_table, _cartan_inverse_times_det


class SubsysError(ValueError):
    pass


@lru_cache(maxsize=None)
def adjoint_char(host: HostType) -> tuple:
    """Weight character of the adjoint module: roots plus rank zeros."""
    out = {}
    zero = (0,) * host.rank
    out[zero] = host.rank
    for beta in positive_roots(host):
        w = root_fund_coords(host, beta)
        out[w] = out.get(w, 0) + 1
        neg = tuple(-x for x in w)
        out[neg] = out.get(neg, 0) + 1
    return tuple(sorted(out.items()))


def detect_component(host_nodes: list[int], edges: set) -> str:
    """Classify a connected simply-laced sub-diagram as A/D/E."""
    deg = {n: 0 for n in host_nodes}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    branch = [n for n in host_nodes if deg[n] == 3]
    if not branch:
        return "A"
    if len(branch) > 1:
        raise SubsysError("unsupported diagram shape")
    arms = sorted(_arm_lengths(branch[0], host_nodes, edges))
    if arms[0] == 1 and arms[1] == 1:
        return "D"
    if arms[0] == 1 and arms[1] == 2:
        return "E"
    raise SubsysError(f"unsupported diagram arms {arms}")


def _arm_lengths(center, nodes, edges):
    adj = {n: [] for n in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    arms = []
    for start in adj[center]:
        length = 1
        prev, cur = center, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def validate_factor_order(G: HostType, group: tuple[int, ...]) -> HostType:
    """Check that the ordered node list matches a standard Cartan matrix
    and return the factor's type.

    Nodes are 1-based ambient indices; the order given must reproduce the
    Bourbaki Cartan matrix of the factor.
    """
    C = cartan_matrix(G)
    k = len(group)
    sub = [[C[group[i] - 1][group[j] - 1] for j in range(k)] for i in range(k)]
    for fam in ("A", "B", "C", "D", "E", "F", "G"):
        try:
            cand = HostType(fam, k)
        except Exception:
            continue
        if [list(r) for r in cartan_matrix(cand)] == sub:
            return cand
    raise SubsysError(
        f"node order {group} does not match a standard Cartan matrix"
    )


@lru_cache(maxsize=None)
def _factor_height_weights(factor: HostType):
    rho = (1,) * factor.rank
    inv = _cartan_inverse_times_det(factor)
    d = root_lengths(factor)
    out = []
    for j in range(factor.rank):
        # (lambda_j, rho) with lambda_j in root coordinates = column j of inv
        val = sum(Fraction(inv[k][j]) * d[k] for k in range(factor.rank))
        out.append(val)
    return tuple(out)


def levi_restriction(G: HostType, char_items, groups: tuple[tuple[int, ...], ...]):
    """Composition factors of a G-weight character restricted to the Levi
    with the given simple-node groups (1-based, per simple factor).

    Returns a dict mapping tuples of per-factor dominant weights to
    multiplicities.
    """
    factors = [validate_factor_order(G, g) for g in groups]
    rest: dict[tuple, int] = {}
    for w, m in char_items:
        key = tuple(
            tuple(w[i - 1] for i in g) for g in groups
        )
        rest[key] = rest.get(key, 0) + m
    heights = [_factor_height_weights(f) for f in factors]

    def h(key):
        return sum(
            hw * c for hws, part in zip(heights, key) for hw, c in zip(hws, part)
        )

    out: dict[tuple, int] = {}
    while rest:
        top = max(rest, key=lambda k: (h(k), k))
        mult = rest[top]
        if mult < 0 or any(c < 0 for part in top for c in part):
            raise SubsysError("restriction is not a sum of Weyl characters")
        out[top] = out.get(top, 0) + mult
        tables = [weyl_table(f, part).mult for f, part in zip(factors, top)]
        for combo in itertools.product(*(t.items() for t in tables)):
            key = tuple(c[0] for c in combo)
            m = mult
            for c in combo:
                m *= c[1]
            new = rest.get(key, 0) - m
            if new:
                rest[key] = new
            else:
                rest.pop(key, None)
    return out


def diagram_automorphisms(factor: HostType) -> list[tuple[int, ...]]:
    """Coordinate permutations of fundamental weights induced by diagram
    automorphisms (new[i] = old[perm[i]])."""
    n = factor.rank
    ident = tuple(range(n))
    out = [ident]
    if factor.family == "A" and n > 1:
        out.append(tuple(reversed(ident)))
    elif factor.family == "D":
        if n == 4:
            for p in itertools.permutations((0, 2, 3)):
                perm = [0] * 4
                perm[1] = 1
                for dst, src in zip((0, 2, 3), p):
                    perm[dst] = src
                if tuple(perm) not in out:
                    out.append(tuple(perm))
        else:
            swap = list(ident)
            swap[n - 2], swap[n - 1] = swap[n - 1], swap[n - 2]
            out.append(tuple(swap))
    elif factor.family == "E" and n == 6:
        out.append((5, 1, 4, 3, 2, 0))
    return out


def match_up_to_automorphism(G, groups, computed: dict, stated: dict) -> bool:
    """Compare factor multisets allowing one diagram automorphism per
    factor and permutations of equal-type factor slots, all applied
    uniformly across entries."""
    factors = [validate_factor_order(G, g) for g in groups]
    if sum(computed.values()) != sum(stated.values()):
        return False
    k = len(factors)
    slot_perms = [
        perm for perm in itertools.permutations(range(k))
        if all(factors[perm[i]] == factors[i] for i in range(k))
    ]
    for perm in slot_perms:
        for combo in itertools.product(
            *(diagram_automorphisms(factors[perm[i]]) for i in range(k))
        ):
            mapped: dict[tuple, int] = {}
            for key, m in computed.items():
                new = tuple(
                    tuple(key[perm[i]][j] for j in combo[i]) for i in range(k)
                )
                mapped[new] = mapped.get(new, 0) + m
            if mapped == stated:
                return True
    return False

"""Irreducibility certification.

Positive certificates come from two character-level criteria: no trivial
factor on the adjoint module, or composition factors matching no
irreducible rank-1 subgroup of any proper Levi subgroup.  Reducibility is
never concluded from character data; known reducible cases are cited from
the registry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exprs
from .exprs import Ref, char_of, parse_expr, tuple_parts
from .hostrep import HostRepError, functional_from_natural, modular_irred_host_char, restrict_table, spin_table, weyl_table
from .registry import Registry, SubgroupInstance, parse_constraints, parse_weight_label
from .restrict import Restrictor, host_of_token
from .rootdata import HostType
from .sl2 import (
    INFINITY,
    Character,
    FactorMultiset,
    decompose,
    dim_irred,
    direct_sum,
    irred_char,
    tensor,
    twist,
)


class IrredError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the classical-group irreducibility predicate
# ---------------------------------------------------------------------------


def classical_irreducible(host: HostType, action_node, env: dict, p) -> bool:
    """Whether the given natural-module datum defines an irreducible
    rank-1 subgroup of the classical host.

    The datum must be a sum of tensor products of irreducibles (optionally
    with one two-trivial wrapping); validity is decided on the factor
    multiset: pairwise inequivalence, form parity, and the wrapped
    configuration at p = 2 for types B and D.
    """
    c = char_of(action_node, env, p)
    fm = decompose(c, p)
    n = host.rank
    fam = host.family
    dim = c.dim
    if fam == "A":
        return fm.num_factors() == 1 and dim == n + 1
    if fam == "B" and dim == 2 * n and (p == 2):
        dim += 1  # implicit radical line
    want = {"B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[fam]
    if dim != want:
        return False
    zeros = fm.trivial_count()
    nonzero = [(m, mult) for m, mult in fm.items() if m]
    if any(mult > 1 for _, mult in nonzero):
        return False
    if p == 2:
        if fam == "C":
            return zeros == 0
        if fam == "B":
            return zeros <= 1
        # D: either no wrapping (all pieces of dimension >= 4) or exactly
        # one wrapped chain holding every 2-dimensional piece
        if zeros == 0:
            return all(dim_irred(m, p) >= 4 for m, _ in nonzero)
        if zeros == 2:
            return any(dim_irred(m, p) == 2 for m, _ in nonzero)
        return False
    # odd characteristic or infinity
    if zeros > 1:
        return False
    want_parity = 1 if fam == "C" else 0
    if any(m % 2 != want_parity for m, _ in nonzero):
        return False
    if fam == "C" and zeros:
        return False
    return True


def action_is_irreducible(reg: Registry, maximal_name: str, action_node,
                          env: dict, p) -> bool:
    """Irreducibility of the embedding datum inside the maximal subgroup,
    checked slot by slot."""
    for (g, name), ent in reg.maximal.items():
        if name == maximal_name:
            factors = ent.factors
            break
    else:
        raise IrredError(f"unknown maximal subgroup {maximal_name}")
    slots = tuple_parts(action_node, len(factors))
    for token, slot in zip(factors, slots):
        host = host_of_token(token)
        if host is None or host.rank == 1:
            continue
        if not classical_irreducible(host, slot, env, p):
            return False
    return True


# ---------------------------------------------------------------------------
# candidate enumeration for Levi subgroups
# ---------------------------------------------------------------------------


def irreducible_weights_of_dim(dim: int, p, bound: int) -> list[int]:
    """Highest weights of irreducible modules of the given dimension with
    all twist positions at most the bound."""
    if dim == 1:
        return [0]
    if p == INFINITY:
        return [dim - 1]
    out = []

    def rec(remaining, minpos, acc):
        if remaining == 1:
            out.append(acc)
            return
        for pos in range(minpos, bound + 1):
            q = p**pos
            for d in range(1, p):
                if remaining % (d + 1) == 0:
                    rec(remaining // (d + 1), pos + 1, acc + d * q)

    rec(dim, 0, 0)
    return sorted(set(out))


def orthogonal_sum_candidates(host: HostType, p, bound: int) -> list[FactorMultiset]:
    """Natural-module factor multisets of candidate irreducible rank-1
    subgroups of a classical host of type B, C or D."""
    fam, n = host.family, host.rank
    total = {"B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[fam]
    if p == 2:
        if fam == "B":
            total -= 1  # radical line implicit
        if fam == "D":
            raise IrredError("D-type candidates at p=2 come from the table")
        parts = []
        for d in range(2, total + 1):
            if d & (d - 1) == 0:  # power of two
                for m in irreducible_weights_of_dim(d, p, bound):
                    parts.append((m, d))
        allow_zero = 0
    else:
        want_parity = 1 if fam == "C" else 0
        parts = []
        for d in range(2, total + 1):
            for m in irreducible_weights_of_dim(d, p, bound):
                if m % 2 == want_parity:
                    parts.append((m, d))
        allow_zero = 0 if fam == "C" else 1
    parts.sort(reverse=True)
    out = []

    def rec(idx, remaining, acc, zeros_left):
        if remaining == 0:
            out.append(FactorMultiset(dict(acc)))
            return
        if zeros_left and remaining == 1:
            out.append(FactorMultiset(dict(acc + [(0, 1)])))
            return
        for i in range(idx, len(parts)):
            m, d = parts[i]
            if d <= remaining:
                rec(i + 1, remaining - d, acc + [(m, 1)], zeros_left)

    rec(0, total, [], allow_zero)
    return out


@dataclass(frozen=True)
class Candidate:
    """An irreducible rank-1 subgroup of a Levi subgroup, with its
    composition factors on the minimal and adjoint modules."""

    group: str
    levi: str
    description: str
    vmin: FactorMultiset | None
    adj: FactorMultiset


class CandidateEnumerator:
    """Enumerates irreducible rank-1 subgroups of Levi subgroups and
    restricts the Levi table rows through them."""

    def __init__(self, restrictor: Restrictor):
        self.rx = restrictor
        self.reg = restrictor.reg
        self._cache = {}

    def candidates(self, group: str, p, bound: int) -> list[Candidate]:
        key = (group, p, bound)
        if key not in self._cache:
            self._cache[key] = self._enumerate(group, p, bound)
        return self._cache[key]

    # -- per-factor options --------------------------------------------------

    def _factor_options(self, group: str, levi_name: str, token: str,
                        host, p, bound: int):
        """Options for one Levi factor: (description, kind, payload).

        kind 'a1': payload = twist; kind 'classical': payload = (natural
        character, half flag); kind 'ref': payload = (group, instance).
        """
        if host is None:
            sub = token  # E6 or E7 factor
            opts = []
            for inst in self.reg.all_instances(sub, bound, p):
                opts.append((str(inst), "ref", inst))
            return opts
        if host.rank == 1 and host.family == "A":
            return [(f"1^[{a}]", "a1", a)
                    for a in range(bound + 1 if p != INFINITY else 1)]
        if host.family == "A":
            opts = []
            for m in irreducible_weights_of_dim(host.rank + 1, p, bound):
                opts.append((f"irr({m})", "classical",
                             (irred_char(m, p), "even")))
            return opts
        if host.family == "D" and p == 2:
            return []  # covered by explicit table rows
        opts = []
        for fm in orthogonal_sum_candidates(host, p, bound):
            c = fm.to_character(p)
            if host.family == "B" and p == 2:
                c = direct_sum(c, Character({0: 1}))
            halves = ("even", "odd") if host.family == "D" else ("even",)
            for half in halves:
                opts.append((f"{fm}:{half}" if host.family == "D" else f"{fm}",
                             "classical", (c, half)))
        return opts

    # -- restriction of a Levi row -------------------------------------------

    def _levi_module_multiset(self, levi_row, module: str, factor_opts,
                              p) -> FactorMultiset | None:
        items = levi_row.vmin if module == "min" else levi_row.adj
        if items is None:
            items = levi_row.adj
        hosts = levi_row.factors
        total = None
        for labels, mult in items:
            part = None
            for host, label, opt in zip(hosts, labels, factor_opts):
                c = self._factor_label_char(levi_row.group, host, label, opt, p)
                if c is None:
                    return None
                part = c if part is None else tensor(part, c)
            for _ in range(mult):
                total = part if total is None else direct_sum(total, part)
        return decompose(total, p)

    def _factor_label_char(self, group, host: HostType, label: str, opt, p):
        desc, kind, payload = opt
        _ = desc
        if kind == "a1":
            c = char_of(parse_expr(label), {}, p)
            return twist(c, payload, p)
        if kind == "ref":
            inst = payload
            if label in ("l1", "l6") and inst.row.group == "E6":
                return self.rx.ref_module_char(
                    "E6", inst.rid, "min", inst.env, p)
            if label in ("W(l2)",) and inst.row.group == "E6":
                return self.rx.ref_module_char(
                    "E6", inst.rid, "adj", inst.env, p)
            if label == "l7" and inst.row.group == "E7":
                return self.rx.ref_module_char(
                    "E7", inst.rid, "min", inst.env, p)
            if label in ("W(l1)", "l1") and inst.row.group == "E7":
                return self.rx.ref_module_char(
                    "E7", inst.rid, "adj", inst.env, p)
            if label in ("0", "00", "000", "0000", "00000", "000000"):
                return Character({0: 1})
            raise IrredError(f"unknown {inst.row.group} Levi label {label!r}")
        natural, half = payload
        weylmark = label.startswith("W(")
        core = label[2:-1] if weylmark else label
        lam = parse_weight_label(host, core)
        try:
            f = functional_from_natural(host, natural)
            if Restrictor._is_half_spin(host, lam):
                return restrict_table(Restrictor._spin_for_label(host, lam, half), f)
            if host.family == "B" and lam == tuple(
                0 if i < host.rank - 1 else 1 for i in range(host.rank)
            ):
                return restrict_table(spin_table(host), f)
            if weylmark:
                return restrict_table(weyl_table(host, lam), f)
            return modular_irred_host_char(host, lam, p, f, self.reg.store)
        except HostRepError:
            return None  # embedding does not lift; candidate absent

    # -- main enumeration -----------------------------------------------------

    def _enumerate(self, group: str, p, bound: int) -> list[Candidate]:
        out = []
        for name in self.reg.levi_order[group]:
            row = self.reg.levi[(group, name)]
            out.extend(self._levi_candidates(row, p, bound))
        return out

    def _levi_candidates(self, row, p, bound) -> list[Candidate]:
        group = row.group
        hosts = row.factors
        tokens = [t for t in row.name.split()]
        if len(tokens) != len(hosts):
            tokens = [str(h) for h in hosts]
        # exceptional and D-type-at-2 factors are flagged via host type
        slot_hosts = []
        for tok, h in zip(tokens, hosts):
            if h.family == "E":
                slot_hosts.append(None)
            else:
                slot_hosts.append(h)
        if p == 2 and group in ("E7", "E8") and any(
            h is not None and h.family == "D" for h in slot_hosts
        ):
            return self._table_candidates(row, p, bound)
        option_lists = []
        for tok, h in zip(tokens, slot_hosts):
            opts = self._factor_options(group, row.name, tok if h is None else tok,
                                        h, p, bound)
            if not opts:
                return []
            option_lists.append(opts)
        out = []
        for combo in itertools.product(*option_lists):
            desc = ",".join(o[0] for o in combo)
            vmin = None
            if row.vmin is not None:
                vmin = self._levi_module_multiset(row, "min", combo, p)
                if vmin is None:
                    continue
            adj = self._levi_module_multiset(row, "adj", combo, p)
            if adj is None:
                continue
            out.append(Candidate(group, row.name, desc, vmin, adj))
        return out

    def _table_candidates(self, row, p, bound) -> list[Candidate]:
        """p=2 candidates for D-type Levis of E7/E8 from the shipped table."""
        out = []
        for brow in self.reg.bada1p2.get(row.name, []):
            pred, _ = parse_constraints(brow.constraints_text)
            k = len(brow.vars)
            halves = ("even", "odd") if brow.two_classes else ("even",)
            for tup in itertools.product(range(bound + 1), repeat=k):
                env = dict(zip(brow.vars, tup))
                if not pred(env):
                    continue
                slots = tuple_parts(brow.action, len(row.factors))
                for half in halves:
                    combo = []
                    ok = True
                    for host, slot in zip(row.factors, slots):
                        if host.rank == 1:
                            tw = exprs.resolve_twist(slot.by, env) if isinstance(
                                slot, exprs.Twist) else 0
                            combo.append(("", "a1", tw))
                        else:
                            c = char_of(slot, env, p)
                            combo.append(("", "classical", (c, half)))
                    if not ok:
                        continue
                    vmin = None
                    if row.vmin is not None:
                        vmin = self._levi_module_multiset(row, "min", combo, p)
                        if vmin is None:
                            continue
                    adj = self._levi_module_multiset(row, "adj", combo, p)
                    if adj is None:
                        continue
                    desc = f"{brow.levi}:{tup}:{half}"
                    out.append(Candidate(row.group, row.name, desc, vmin, adj))
        return out


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    subject: str
    verdict: str  # irreducible-by-notrivs | irreducible-by-wrongcomps |
    #               known-reducible | inconclusive
    evidence: str


def _norm_key(fm: FactorMultiset, p):
    return fm.shift_normalized(p).key()


def _norm_pair_key(vmin, adj, p):
    """Joint shift normalisation of the (minimal, adjoint) pair."""
    if p == INFINITY:
        return (vmin.key() if vmin else None, adj.key())
    combined = adj if vmin is None else vmin.union(adj)
    norm = combined.shift_normalized(p)
    # recover the shift actually applied
    shift = 0
    cur = combined
    while cur != norm:
        cur = FactorMultiset({n // p: m for n, m in cur.items()})
        shift += 1
    q = p**shift
    down = lambda f: FactorMultiset({n // q: m for n, m in f.items()}).key()
    return (down(vmin) if vmin else None, down(adj))


def certify(restrictor: Restrictor, inst: SubgroupInstance, bound: int,
            enumerator: CandidateEnumerator | None = None) -> Certificate:
    """Certificate for a classified instance.

    Matching a Levi candidate is necessary, never sufficient, for
    reducibility, so character evidence alone never yields 'reducible'.
    """
    if enumerator is None:
        enumerator = CandidateEnumerator(restrictor)
    g, p = inst.row.group, inst.p
    adj = restrictor.restrict_module("adj", inst)
    if adj.trivial_count() == 0:
        return Certificate(str(inst), "irreducible-by-notrivs",
                           "no trivial factor on the adjoint module")
    vmin = None if g == "E8" else restrictor.restrict_module("min", inst)
    cands = enumerator.candidates(g, p, bound)
    if vmin is not None:
        mine = _norm_key(vmin, p)
        if all(_norm_key(c.vmin, p) != mine for c in cands if c.vmin is not None):
            return Certificate(
                str(inst), "irreducible-by-wrongcomps",
                f"minimal-module factors match none of {len(cands)} Levi candidates",
            )
    mine = _norm_key(adj, p)
    if all(_norm_key(c.adj, p) != mine for c in cands):
        return Certificate(
            str(inst), "irreducible-by-wrongcomps",
            f"adjoint factors match none of {len(cands)} Levi candidates",
        )
    pair = _norm_pair_key(vmin, adj, p)
    if all(_norm_pair_key(c.vmin, c.adj, p) != pair for c in cands
           if (c.vmin is None) == (vmin is None)):
        return Certificate(
            str(inst), "irreducible-by-wrongcomps",
            "joint minimal+adjoint factors match no Levi candidate",
        )
    return Certificate(str(inst), "inconclusive",
                       "factors match a Levi candidate on every module")


def certify_reducible(reg: Registry, group: str, index: int, p) -> Certificate:
    for row in reg.reducible:
        if row.group == group and row.index == index and row.pcond(p):
            return Certificate(f"{row}", "known-reducible", row.citation)
    raise IrredError(f"no reducible registry entry {group} r#{index} at p={p}")

"""Restriction of minimal and adjoint modules to classified subgroups.

The composition factors of the ambient module under the maximal connected
overgroup are taken from the registry; each factor is restricted through
the subgroup's embedding datum (twists for rank-1 slots, torus functionals
for classical slots, recursive table references for exceptional slots) and
the total character is decomposed.
"""

from __future__ import annotations

from functools import lru_cache

from . import exprs
from .exprs import Irr, Ref, Twist, char_of, tuple_parts
from .hostrep import (
    HostRepError,
    TorusFunctional,
    functional_from_natural,
    modular_irred_host_char,
    restrict_table,
    spin_table,
    weyl_table,
)
from .registry import (
    ADJOINT_DIM,
    MINIMAL_DIM,
    MINIMAL_TRIVIAL_AT,
    DataError,
    Registry,
    SubgroupInstance,
    parse_weight_label,
)
from .rootdata import HostType
from .sl2 import (
    INFINITY,
    Character,
    FactorMultiset,
    SL2Error,
    decompose,
    direct_sum,
    sym_power,
    tensor,
)


class RestrictError(ValueError):
    pass


def char_subtract(a: Character, b: Character) -> Character:
    full = {w: m for w, m in a.full_items()}
    for w, m in b.full_items():
        full[w] = full.get(w, 0) - m
    if any(m < 0 for m in full.values()):
        raise RestrictError("character subtraction went negative")
    return Character.from_full({w: m for w, m in full.items() if m})


def host_of_token(token: str):
    """Host type of a factor token; None for exceptional-table factors.

    Tilde marks (short-root classes) and parenthesised characteristic
    bounds only affect naming, not the underlying type.
    """
    base = token.lstrip("~").split("(")[0].rstrip("'")
    if base in ("G2", "F4", "E6", "E7", "E8"):
        return None
    return HostType.parse(base)


def slot_twist(node, env: dict) -> int:
    """Twist of a rank-1 slot action (1 or 1^[r])."""
    if isinstance(node, Irr) and node.n == 1:
        return 0
    if isinstance(node, Twist) and isinstance(node.node, Irr) and node.node.n == 1:
        return exprs.resolve_twist(node.by, env)
    raise RestrictError(f"rank-1 slot action must be a twist of 1, got {node}")


EXC_MIN_LABELS = {
    "G2": ("W(10)", "10"),
    "F4": ("W(0001)", "0001"),
    "E6": ("l1", "l6"),
    "E7": ("l7",),
}
EXC_ADJ_LABELS = {
    "G2": ("W(01)", "01"),
    "F4": ("W(1000)", "1000"),
    "E6": ("W(l2)", "l2"),
    "E7": ("l1", "W(l1)"),
}


def functional_entries(node, env: dict, p) -> tuple[list[int], int]:
    """Signed epsilon images of an embedding datum in expression order,
    plus the number of unpaired zero weights.

    Each summand contributes half its weights; a tensor product pairs the
    first factor's half against the full weights of the rest (recursing on
    the zero rows of odd-dimensional factors).  The sign pattern carries
    the orientation of tensor embeddings, which selects between the two
    half-spin classes of a D-type host.
    """
    if isinstance(node, (exprs.Plus, exprs.FList)):
        out, zeros = [], 0
        for part, mult in node.parts:
            for _ in range(mult):
                e, z = functional_entries(part, env, p)
                out.extend(e)
                zeros += z
        return out, zeros
    if isinstance(node, exprs.Socle):
        e, z = functional_entries(node.inner, env, p)
        return e, z + 2
    if isinstance(node, exprs.Tensor):
        entries, zeros = functional_entries(node.parts[0], env, p)
        for factor in node.parts[1:]:
            fe, fz = functional_entries(factor, env, p)
            full = char_of(factor, env, p).full_weight_list()
            entries = [e + w for e in entries for w in full] + zeros * fe
            zeros *= fz
        return entries, zeros
    c = char_of(node, env, p)
    return [w for w in c.full_weight_list() if w > 0], c.mult(0)


def functional_from_action(host: HostType, node, env: dict, p) -> TorusFunctional:
    """Torus functional of a classical-host embedding datum.

    Validates against the sorted-weights construction and keeps the
    expression-ordered signed entries.
    """
    natural = char_of(node, env, p)
    if host.family == "A":
        return functional_from_natural(host, natural)
    if host.family == "B" and natural.dim == 2 * host.rank:
        natural = direct_sum(natural, Character({0: 1}))
    # the sorted constructor performs all validity checks
    functional_from_natural(host, natural)
    entries, zeros = functional_entries(node, env, p)
    if host.family == "B" and natural.dim != char_of(node, env, p).dim:
        zeros += 1  # implicit radical line
    entries = entries + [0] * (zeros // 2)
    if len(entries) != host.rank:
        raise RestrictError(
            f"embedding datum gives {len(entries)} epsilon images for {host}"
        )
    return TorusFunctional(host, tuple(entries))


class Restrictor:
    """Restriction engine bound to one registry."""

    def __init__(self, registry: Registry):
        self.reg = registry
        self._memo = {}

    # -- exceptional-factor module characters -------------------------------

    def ref_module_char(self, group: str, rid: int, module: str,
                        env: dict, p) -> Character:
        key = ("ref", group, rid, module, tuple(sorted(env.items())), p)
        if key not in self._memo:
            fm = self.comps_or_computed(group, rid, module, env, p)
            self._memo[key] = fm.to_character(p)
        return self._memo[key]

    def comps_or_computed(self, group, rid, module, env, p) -> FactorMultiset:
        row = self.reg.row(group, rid)
        if (group, rid, module) in self.reg.comps:
            return self.reg.comps_multiset(group, rid, module, env, p)
        twists = tuple(env[v] for v in row.vars)
        return self.restrict_module(module, SubgroupInstance(row, twists, p))

    def exceptional_slot_char(self, token: str, label: str, action,
                              env: dict, p) -> Character:
        if not isinstance(action, Ref):
            raise RestrictError(
                f"exceptional factor {token} needs a table reference, got {action}"
            )
        group = action.group
        target = self.reg.row(group, action.rid)
        if action.args is None:
            sub_env = {}
        else:
            vals = [exprs.resolve_twist(a, env) for a in action.args]
            if len(vals) != len(target.vars):
                raise RestrictError(
                    f"{group}(#{action.rid}) takes {len(target.vars)} twists"
                )
            sub_env = dict(zip(target.vars, vals))
        shift = exprs.resolve_twist(action.shift, env)

        if label in EXC_MIN_LABELS.get(group, ()):
            c = self.ref_module_char(group, action.rid, "min", sub_env, p)
        elif label in EXC_ADJ_LABELS.get(group, ()):
            if group == "E7" and p == 2:
                raise RestrictError(
                    "adjoint E7 factor label is not the full adjoint at p=2"
                )
            c = self.ref_module_char(group, action.rid, "adj", sub_env, p)
        elif group == "G2" and label == "W(20)":
            # S^2(V7) = W(20) + trivial at the character level
            c7 = self.ref_module_char(group, action.rid, "min", sub_env, p)
            c = char_subtract(sym_power(c7, 2), Character({0: 1}))
        elif label in ("0", "00", "000", "0000"):
            c = Character({0: 1})
        else:
            raise RestrictError(f"unknown {group}-factor module label {label!r}")
        if shift:
            c = _twist(c, shift, p)
        return c

    # -- classical slots -----------------------------------------------------

    def classical_slot_char(self, host: HostType, label: str, action,
                            env: dict, p, half: str) -> Character:
        f = functional_from_action(host, action, env, p)
        weyl = label.startswith("W(")
        core = label[2:-1] if weyl else label
        lam = parse_weight_label(host, core)
        if self._is_half_spin(host, lam):
            table = self._spin_for_label(host, lam, half)
            return restrict_table(table, f)
        if weyl:
            return restrict_table(weyl_table(host, lam), f)
        return modular_irred_host_char(host, lam, p, f, self.reg.store)

    @staticmethod
    def _is_half_spin(host: HostType, lam) -> bool:
        if host.family != "D":
            return False
        n = host.rank
        return sum(lam) == 1 and (lam[n - 1] == 1 or lam[n - 2] == 1)

    @staticmethod
    def _spin_for_label(host: HostType, lam, half: str):
        n = host.rank
        literal = "even" if lam[n - 1] == 1 else "odd"
        if half in ("-", "", "even"):
            return spin_table(host, literal)
        return spin_table(host, "even" if literal == "odd" else "odd")

    # -- full restriction ------------------------------------------------------

    def maximal_entry(self, group: str, name: str):
        try:
            return self.reg.maximal[(group, name)]
        except KeyError:
            raise DataError(f"no maximal subgroup row {group} / {name}")

    def entry_char(self, group: str, mname: str, module: str, action,
                   env: dict, p, half: str = "-") -> Character:
        """Character of the module restricted along the embedding datum."""
        entry = self.maximal_entry(group, mname)
        if not entry.pcond(p):
            raise RestrictError(f"{mname} < {group} does not exist at p={p}")
        items = entry.vmin if module == "min" else entry.adj
        if items is None:  # E8: the minimal module is the adjoint
            items = entry.adj
        slots = tuple_parts(action, len(entry.factors))
        total = None
        for labels, mult in items:
            part = None
            for token, label, slot_action in zip(entry.factors, labels, slots):
                c = self.slot_char(token, label, slot_action, env, p, half)
                part = c if part is None else tensor(part, c)
            for _ in range(mult):
                total = part if total is None else direct_sum(total, part)
        return total

    def slot_char(self, token, label, slot_action, env, p, half) -> Character:
        host = host_of_token(token)
        if host is None:
            return self.exceptional_slot_char(token, label, slot_action, env, p)
        if host.rank == 1 and host.family == "A":
            e = slot_twist(slot_action, env)
            c = char_of(exprs.parse_expr(label), {}, p)
            return _twist(c, e, p)
        return self.classical_slot_char(host, label, slot_action, env, p, half)

    def restrict_module(self, module: str, inst: SubgroupInstance) -> FactorMultiset:
        """Factor multiset of the minimal or adjoint module under the
        classified subgroup instance."""
        row = inst.row
        key = ("restr", row.group, row.rid, module, inst.twists, inst.p)
        if key not in self._memo:
            if not row.pcond(inst.p):
                raise RestrictError(f"{row} does not exist at p={inst.p}")
            c = self.entry_char(
                row.group, row.maximal, module, row.action, inst.env,
                inst.p, row.half,
            )
            self._memo[key] = decompose(c, inst.p)
        return self._memo[key]

    # -- verification -----------------------------------------------------------

    def expected_multiset(self, module: str, inst: SubgroupInstance):
        row = inst.row
        if (row.group, row.rid, module) not in self.reg.comps:
            return None
        return self.reg.comps_multiset(row.group, row.rid, module, inst.env, inst.p)

    def dimension_checks(self, module: str, inst: SubgroupInstance,
                         fm: FactorMultiset) -> list[str]:
        """Dimension conservation failures (empty when all pass)."""
        g, p = inst.row.group, inst.p
        problems = []
        want = ADJOINT_DIM[g] if (module == "adj" or g == "E8") else MINIMAL_DIM[g]
        got = fm.dim(p)
        if got != want:
            problems.append(f"dimension {got} != {want}")
        if module == "min" and g in MINIMAL_TRIVIAL_AT and p == MINIMAL_TRIVIAL_AT[g]:
            # the minimal Weyl module carries one extra trivial factor here
            if fm.trivial_count() < 1:
                problems.append("missing trivial factor of the minimal module")
        return problems

    def verify_comps_row(self, group: str, rid: int, p, bound: int) -> list[dict]:
        """Per-instance comparison records for one table row."""
        row = self.reg.row(group, rid)
        records = []
        for inst in self.reg.enumerate_instances(row, bound, p):
            rec = {
                "group": group,
                "id": rid,
                "p": "infinity" if p == INFINITY else p,
                "twists": inst.twists,
            }
            for module in ("min", "adj"):
                if group == "E8" and module == "min":
                    continue
                got = self.restrict_module(module, inst)
                expected = self.expected_multiset(module, inst)
                problems = self.dimension_checks(module, inst, got)
                if expected is not None and expected != got:
                    problems.append(
                        f"{module}: expected {expected}, got {got}"
                    )
                rec[module] = got
                rec.setdefault("problems", []).extend(problems)
            rec["status"] = "pass" if not rec["problems"] else "fail"
            records.append(rec)
        return records


def _twist(c: Character, r: int, p) -> Character:
    from .sl2 import twist as sl2_twist

    return sl2_twist(c, r, p)


@lru_cache(maxsize=1)
def default_restrictor() -> Restrictor:
    from .registry import default_registry

    return Restrictor(default_registry())

"""Machine-readable tables: loading, constraint evaluation, instance
enumeration and instantiation of composition-factor expressions.

All table files live in the package data directory (overridable via the
SL2COMPS_DATA environment variable or an explicit path) and are loaded
once into an immutable Registry.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from . import exprs
from .exprs import parse_expr, free_vars
from .rootdata import HostType
from .sl2 import INFINITY, FactorMultiset, SL2Error, is_prime
from .hostrep import ModularStore

DATA_ENV = "SL2COMPS_DATA"
GROUPS = ("G2", "F4", "E6", "E7", "E8")

ADJOINT_DIM = {"G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248}
MINIMAL_DIM = {"G2": 7, "F4": 26, "E6": 27, "E7": 56, "E8": 248}
# characteristics where the minimal Weyl module acquires one trivial factor
MINIMAL_TRIVIAL_AT = {"G2": 2, "F4": 3}


class DataError(ValueError):
    """Malformed table data; carries file and line context."""


# ---------------------------------------------------------------------------
# characteristic conditions and twist constraints
# ---------------------------------------------------------------------------


def parse_pcond(text: str):
    text = text.strip()
    if text in ("any", "all"):
        return lambda p: True
    if text.startswith(">="):
        bound = int(text[2:])
        return lambda p: p == INFINITY or p >= bound
    if text.startswith("!="):
        val = int(text[2:])
        return lambda p: p == INFINITY or p != val
    if text.startswith("="):
        val = int(text[1:])
        return lambda p: p != INFINITY and p == val
    raise DataError(f"bad characteristic condition {text!r}")


def _operand(tok: str, env: dict) -> int:
    tok = tok.strip()
    if tok.lstrip("-").isdigit():
        return int(tok)
    return env[tok]


def _split_args(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur))
    return out


def parse_constraint_atom(text: str):
    """One constraint atom -> predicate over a variable environment."""
    text = text.strip()
    if not text or text == "-":
        return lambda env: True
    if text in ("twoclasses", "lexmin"):
        # structural markers handled by the callers
        return lambda env: True
    for name in ("if", "or", "and", "distinct0", "distinct",
                 "pairsne", "pairs3ne", "table"):
        if text.startswith(name + "(") and text.endswith(")"):
            inner = text[len(name) + 1 : -1]
            args = _split_args(inner)
            if name == "if":
                cond = parse_constraint_atom(args[0])
                then = parse_constraint_atom(args[1])
                return lambda env: (not cond(env)) or then(env)
            if name == "or":
                parts = [parse_constraint_atom(a) for a in args]
                return lambda env: any(p(env) for p in parts)
            if name == "and":
                parts = [parse_constraint_atom(a) for a in args]
                return lambda env: all(p(env) for p in parts)
            if name == "distinct":
                return lambda env: len({_operand(a, env) for a in args}) == len(args)
            if name == "distinct0":
                def pred(env, args=args):
                    vals = [_operand(a, env) for a in args]
                    return 0 not in vals and len(set(vals)) == len(vals)
                return pred
            if name == "pairsne":
                def pred(env, args=args):
                    a, b, c, d = (_operand(x, env) for x in args)
                    return {a, b} != {c, d} or sorted((a, b)) != sorted((c, d))
                return pred
            if name == "pairs3ne":
                def pred(env, args=args):
                    v = [_operand(x, env) for x in args]
                    pairs = [tuple(sorted(v[0:2])), tuple(sorted(v[2:4])),
                             tuple(sorted(v[4:6]))]
                    return len(set(pairs)) == 3
                return pred
            if name == "table":
                # handled by the enumerator, always true here
                return lambda env: True
    for op in ("<=", "!=", "<", ">", "="):
        if op in text:
            lhs, rhs = text.split(op, 1)
            l = lhs.strip()
            r = rhs.strip()
            if op == "=" and r == "0" and len(l) > 1 and l.isalpha():
                vs = list(l)
                return lambda env: any(env[v] == 0 for v in vs)
            if op == "<=":
                return lambda env: _operand(l, env) <= _operand(r, env)
            if op == "!=":
                return lambda env: _operand(l, env) != _operand(r, env)
            if op == "<":
                return lambda env: _operand(l, env) < _operand(r, env)
            if op == ">":
                return lambda env: _operand(l, env) > _operand(r, env)
            if op == "=":
                return lambda env: _operand(l, env) == _operand(r, env)
    raise DataError(f"bad constraint atom {text!r}")


def parse_constraints(text: str):
    """Semicolon-joined constraint atoms -> (predicate, table name or None)."""
    text = text.strip()
    table = None
    preds = []
    if text not in ("", "-"):
        for atom in text.split(";"):
            atom = atom.strip()
            if atom.startswith("table(") and atom.endswith(")"):
                table = atom[6:-1]
                continue
            preds.append(parse_constraint_atom(atom))
    return (lambda env: all(p(env) for p in preds)), table


# ---------------------------------------------------------------------------
# rows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaximalEntry:
    group: str
    name: str
    pcond_text: str
    factors: tuple[str, ...]  # host tokens
    vmin: tuple | None  # tuple of (labels-tuple, mult)
    adj: tuple

    def pcond(self, p):
        return parse_pcond(self.pcond_text)(p)


@dataclass(frozen=True)
class SubgroupRow:
    group: str
    rid: int
    maximal: str
    pcond_text: str
    vars: tuple[str, ...]
    constraints_text: str
    half: str
    action: object  # parsed expression

    def pcond(self, p):
        return parse_pcond(self.pcond_text)(p)

    @property
    def key(self):
        return (self.group, self.rid)

    def __str__(self):
        return f"{self.group}(#{self.rid})"


@dataclass(frozen=True)
class SubgroupInstance:
    row: SubgroupRow
    twists: tuple[int, ...]
    p: object

    @property
    def env(self) -> dict:
        return dict(zip(self.row.vars, self.twists))

    def __str__(self):
        if self.twists:
            inner = ",".join(str(t) for t in self.twists)
            return f"{self.row.group}(#{self.rid}^{{{inner}}})"
        return f"{self.row.group}(#{self.rid})"

    @property
    def rid(self):
        return self.row.rid


@dataclass(frozen=True)
class LeviRow:
    group: str
    name: str
    node_groups: tuple[tuple[int, ...], ...]
    vmin: tuple | None
    adj: tuple

    @property
    def factors(self) -> tuple[HostType, ...]:
        from .subsys import validate_factor_order

        return tuple(
            validate_factor_order(HostType.parse(self.group), g)
            for g in self.node_groups
        )


@dataclass(frozen=True)
class CondCase:
    zeros: frozenset | None  # None = wildcard
    pattern: tuple  # sorted tuple of sorted var groups
    conditions_text: str


@dataclass(frozen=True)
class CondTable:
    name: str
    vars: tuple[str, ...]
    pattern_vars: tuple[str, ...]
    flag_pairs: tuple[tuple[str, str], ...]
    zero_sections: bool
    cases: tuple[CondCase, ...]

    def matches(self, env: dict) -> CondCase | None:
        """The unique case whose zero-set and equality pattern match."""
        if self.zero_sections:
            zeros = frozenset(v for v in self.vars if env[v] == 0)
        else:
            zeros = None
        pattern = self._pattern_of(env)
        for case in self.cases:
            if self.zero_sections and case.zeros != zeros:
                continue
            if case.pattern == pattern:
                return case
        return None

    def _pattern_of(self, env: dict) -> tuple:
        groups: dict[int, list[str]] = {}
        for v in self.pattern_vars:
            if self.zero_sections and env[v] == 0:
                continue
            groups.setdefault(env[v], []).append(v)
        out = [tuple(g) for g in groups.values() if len(g) > 1]
        for a, b in self.flag_pairs:
            if env[a] == env[b]:
                out.append((a, b))
        return tuple(sorted(out))

    def selects(self, env: dict) -> bool:
        case = self.matches(env)
        if case is None:
            return False
        pred, _ = parse_constraints(case.conditions_text)
        return pred(env)


@dataclass(frozen=True)
class ReducibleRow:
    group: str
    index: int
    maximal: str
    pcond_text: str
    action: object
    citation: str

    def pcond(self, p):
        return parse_pcond(self.pcond_text)(p)

    def __str__(self):
        return f"{self.group}(r#{self.index})"


@dataclass(frozen=True)
class Bada1p2Row:
    levi: str
    vars: tuple[str, ...]
    constraints_text: str
    action: object
    two_classes: bool


@dataclass
class Registry:
    data_dir: Path
    maximal: dict = field(default_factory=dict)  # (group, name) -> MaximalEntry
    rows: dict = field(default_factory=dict)  # (group, id) -> SubgroupRow
    comps: dict = field(default_factory=dict)  # (group, id, module) -> expr
    levi: dict = field(default_factory=dict)  # (group, name) -> LeviRow
    levi_order: dict = field(default_factory=dict)  # group -> [names]
    conditions: dict = field(default_factory=dict)  # name -> CondTable
    reducible: list = field(default_factory=list)
    bada1p2: dict = field(default_factory=dict)  # levi name -> [rows]
    store: ModularStore = field(default_factory=ModularStore)

    # -- loading ----------------------------------------------------------

    @classmethod
    def load(cls, data_dir=None) -> "Registry":
        if data_dir is None:
            data_dir = os.environ.get(DATA_ENV)
        if data_dir is None:
            data_dir = Path(__file__).parent / "data"
        reg = cls(Path(data_dir))
        reg._load_maximal()
        reg._load_subgroups()
        reg._load_comps()
        reg._load_levi()
        reg._load_conditions()
        reg._load_bada1p2()
        reg._load_reducible()
        reg._load_store()
        reg._validate()
        return reg

    def _lines(self, fname: str):
        path = self.data_dir / fname
        if not path.exists():
            raise DataError(f"missing table file {path}")
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                yield lineno, line

    def _fields(self, fname, lineno, line, n):
        parts = [p.strip() for p in line.split("|")]
        # module expressions legitimately contain "|" (socle wrapping);
        # re-join any excess trailing splits into the final field
        if len(parts) > n:
            parts = parts[: n - 1] + ["|".join(parts[n - 1 :]).strip()]
        if len(parts) != n:
            raise DataError(f"{fname}:{lineno}: expected {n} fields")
        return parts

    @staticmethod
    def _parse_entry_list(text: str):
        """A '/'-separated list of tuple entries with multiplicities.

        Returns tuple of ((label, ...), mult); labels stay raw strings for
        host-aware parsing downstream.
        """
        if text.strip() == "-":
            return None
        out = []
        for item in _split_top(text, "/"):
            item = item.strip()
            mult = 1
            if "^" in item and not item.endswith(")"):
                base, _, exp = item.rpartition("^")
                if exp.isdigit():
                    item, mult = base.strip(), int(exp)
            if item.startswith("(") and item.endswith(")"):
                labels = tuple(x.strip() for x in _split_top(item[1:-1], ","))
            else:
                labels = (item,)
            out.append((labels, mult))
        return tuple(out)

    def _load_maximal(self):
        for lineno, line in self._lines("maximal_factors.txt"):
            g, name, pcond, factors, vmin, adj = self._fields(
                "maximal_factors.txt", lineno, line, 6
            )
            parse_pcond(pcond)
            entry = MaximalEntry(
                g,
                name,
                pcond,
                tuple(factors.split()),
                self._parse_entry_list(vmin),
                self._parse_entry_list(adj),
            )
            self.maximal[(g, name)] = entry

    def _load_subgroups(self):
        for lineno, line in self._lines("subgroups.txt"):
            g, rid, maximal, pcond, vars_, cons, half, action = self._fields(
                "subgroups.txt", lineno, line, 8
            )
            parse_pcond(pcond)
            parse_constraints(cons)
            vars_t = tuple(v.strip() for v in vars_.split(",")) if vars_ != "-" else ()
            node = parse_expr(action)
            unknown = free_vars(node) - set(vars_t)
            if unknown:
                raise DataError(
                    f"subgroups.txt:{lineno}: undeclared twist variables {sorted(unknown)}"
                )
            row = SubgroupRow(
                g, int(rid), maximal, pcond, vars_t, cons, half, node
            )
            if (g, maximal) not in self.maximal:
                raise DataError(
                    f"subgroups.txt:{lineno}: unknown maximal subgroup {maximal!r}"
                )
            self.rows[row.key] = row

    def _load_comps(self):
        for lineno, line in self._lines("comps.txt"):
            g, rid, module, expr_text = self._fields("comps.txt", lineno, line, 4)
            if module not in ("min", "adj"):
                raise DataError(f"comps.txt:{lineno}: bad module {module!r}")
            key = (g, int(rid))
            if key not in self.rows:
                raise DataError(f"comps.txt:{lineno}: no subgroup row {key}")
            node = parse_expr(expr_text)
            unknown = free_vars(node) - set(self.rows[key].vars)
            if unknown:
                raise DataError(
                    f"comps.txt:{lineno}: undeclared twist variables {sorted(unknown)}"
                )
            self.comps[(g, int(rid), module)] = node

    def _load_levi(self):
        for lineno, line in self._lines("levi.txt"):
            g, name, nodes, vmin, adj = self._fields("levi.txt", lineno, line, 5)
            groups = tuple(
                tuple(int(x) for x in grp.split(","))
                for grp in nodes.split(";")
            )
            row = LeviRow(
                g,
                name,
                groups,
                self._parse_entry_list(vmin),
                self._parse_entry_list(adj),
            )
            self.levi[(g, name)] = row
            self.levi_order.setdefault(g, []).append(name)

    def _load_conditions(self):
        current_name = None
        for lineno, line in self._lines("conditions.txt"):
            fields = [x.strip() for x in line.split("|")]
            head = fields[0].split(None, 1)
            kind = head[0]
            rest = head[1].strip() if len(head) > 1 else ""
            if kind == "TABLE":
                tname = rest
                vars_t = tuple(v.strip() for v in fields[1].split(","))
                pattern_vars = tuple(
                    v.strip() for v in fields[2].split("=", 1)[1].split(",")
                )
                flags_text = fields[3].split("=", 1)[1]
                flag_pairs = ()
                if flags_text != "-":
                    a, b = flags_text.split("=")
                    flag_pairs = ((a.strip(), b.strip()),)
                zero_sections = fields[4].split("=")[1].strip() == "yes"
                self.conditions[tname] = CondTable(
                    tname, vars_t, pattern_vars, flag_pairs, zero_sections, ()
                )
                current_name = tname
            elif kind == "CASE":
                if current_name is None:
                    raise DataError(f"conditions.txt:{lineno}: CASE before TABLE")
                ztext, pattern, conds = rest, fields[1], fields[2]
                if ztext == "*":
                    zset = None
                elif ztext == "-":
                    zset = frozenset()
                else:
                    zset = frozenset(v.strip() for v in ztext.split(","))
                if pattern == "-":
                    pat = ()
                else:
                    pat = tuple(
                        sorted(tuple(g.strip().split("=")) for g in pattern.split("+"))
                    )
                parse_constraints(conds)
                table = self.conditions[current_name]
                self.conditions[current_name] = CondTable(
                    table.name, table.vars, table.pattern_vars,
                    table.flag_pairs, table.zero_sections,
                    table.cases + (CondCase(zset, pat, conds),),
                )
            else:
                raise DataError(f"conditions.txt:{lineno}: bad line")

    def _load_bada1p2(self):
        for lineno, line in self._lines("bada1p2.txt"):
            levi, vars_, cons, action = self._fields("bada1p2.txt", lineno, line, 4)
            parse_constraints(cons)
            row = Bada1p2Row(
                levi,
                tuple(v.strip() for v in vars_.split(",")),
                cons,
                parse_expr(action),
                "twoclasses" in cons,
            )
            self.bada1p2.setdefault(levi, []).append(row)

    def _load_reducible(self):
        for lineno, line in self._lines("reducible.txt"):
            g, idx, maximal, pcond, action, citation = self._fields(
                "reducible.txt", lineno, line, 6
            )
            parse_pcond(pcond)
            self.reducible.append(
                ReducibleRow(g, int(idx), maximal, pcond, parse_expr(action), citation)
            )

    def _load_store(self):
        for lineno, line in self._lines("modular_store.txt"):
            host_t, weight, pcond, corr = self._fields(
                "modular_store.txt", lineno, line, 4
            )
            host = HostType.parse(host_t)
            lam = parse_weight_label(host, weight)
            corrections = []
            if corr != "-":
                for item in corr.split("+"):
                    item = item.strip()
                    mult = 1
                    if "^" in item:
                        item, _, exp = item.rpartition("^")
                        mult = int(exp)
                    corrections.append((parse_weight_label(host, item.strip()), mult))
            self.store.add(host, lam, parse_pcond(pcond), corrections)

    def _validate(self):
        for key, row in self.rows.items():
            if (row.group, row.rid, "min") not in self.comps and row.group != "E8":
                raise DataError(f"missing minimal comps row for {row}")
            if (row.group, row.rid, "adj") not in self.comps and row.group != "E8":
                raise DataError(f"missing adjoint comps row for {row}")
        for g in ("G2", "F4", "E6", "E7"):
            if not any(k[0] == g for k in self.levi):
                raise DataError(f"no Levi rows for {g}")

    # -- instance enumeration ---------------------------------------------

    def row(self, group: str, rid: int) -> SubgroupRow:
        try:
            return self.rows[(group, rid)]
        except KeyError:
            raise DataError(f"no classified subgroup {group}(#{rid})")

    def rows_of(self, group: str) -> list[SubgroupRow]:
        return [r for k, r in sorted(self.rows.items()) if k[0] == group]

    def enumerate_instances(self, row: SubgroupRow, bound: int, p):
        """All twist assignments within the bound satisfying the row's
        constraints (plus table selector and irreducibility predicate for
        condition-table rows), in lexicographic order."""
        from .irred import action_is_irreducible

        if not row.pcond(p):
            return []
        pred, table = parse_constraints(row.constraints_text)
        k = len(row.vars)
        out = []
        values = range(bound + 1) if p != INFINITY else range(1)
        for tup in itertools.product(values, repeat=k):
            env = dict(zip(row.vars, tup))
            if not pred(env):
                continue
            if table is not None:
                from .conj import selected_with_fallback

                if not selected_with_fallback(self, table, env):
                    continue
            # validity of the embedding datum is implicit in the source
            # tables (e.g. a collapsed pair must not duplicate a summand)
            if not action_is_irreducible(self, row.maximal, row.action, env, p):
                continue
            out.append(SubgroupInstance(row, tup, p))
        return out

    def all_instances(self, group: str, bound: int, p):
        out = []
        for row in self.rows_of(group):
            out.extend(self.enumerate_instances(row, bound, p))
        return out

    # -- instantiation ------------------------------------------------------

    def instantiate(self, expr_node, env: dict, p) -> FactorMultiset:
        """Factor multiset of a pure rank-1 table expression."""
        return exprs.fm_of(expr_node, env, p)

    def comps_multiset(self, group, rid, module, env, p) -> FactorMultiset:
        node = self.comps.get((group, rid, module))
        if node is None:
            raise DataError(f"no {module} comps row for {group}(#{rid})")
        return self.instantiate(node, env, p)


def _split_top(text: str, sep: str) -> list[str]:
    """Split on a separator at parenthesis depth zero."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_weight_label(host: HostType, text: str):
    """A host-module label: digit string, lK, or lJ+lK (fundamental sum)."""
    text = text.strip()
    n = host.rank
    coeffs = [0] * n
    if text.startswith("l"):
        for part in text.split("+"):
            part = part.strip()
            if not part.startswith("l"):
                raise DataError(f"bad weight label {text!r}")
            idx = int(part[1:])
            coeffs[idx - 1] += 1
        return tuple(coeffs)
    if text.isdigit():
        if set(text) == {"0"}:  # trivial module, any printed width
            return tuple(coeffs)
        if len(text) != n:
            raise DataError(
                f"digit label {text!r} has wrong length for {host}"
            )
        return tuple(int(c) for c in text)
    raise DataError(f"bad weight label {text!r}")


@lru_cache(maxsize=1)
def default_registry() -> Registry:
    return Registry.load()

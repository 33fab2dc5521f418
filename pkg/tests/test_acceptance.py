"""Acceptance suite: one test per exit criterion, each printing a
pass/fail line.  Tolerances are exact integer equality throughout."""

import itertools
import time

import pytest

from sl2comps.conj import (
    agl32,
    distinctness_report,
    psl27,
    stabilizer,
    verify_conditions_table,
)
from sl2comps.hostrep import functional_from_natural, restrict_table, spin_table, weyl_table
from sl2comps.irred import CandidateEnumerator, certify, certify_reducible
from sl2comps.registry import default_registry
from sl2comps.restrict import Restrictor
from sl2comps.rootdata import HostType, weyl_dimension
from sl2comps.sl2 import (
    INFINITY,
    decompose,
    dim_irred,
    direct_sum,
    irred_char,
    sym_power,
    tensor,
    weyl_char,
    weyl_factors,
)

PRIMES_13 = (2, 3, 5, 7, 11, 13)
PRIMES_31 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


@pytest.fixture(scope="module")
def rx():
    return Restrictor(default_registry())


@pytest.fixture(scope="module")
def enum(rx):
    return CandidateEnumerator(rx)


def report(name, ok, detail=""):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))
    assert ok, name


def test_criterion_1_quoted_tensor_identities():
    t0 = time.time()
    checks = [
        (decompose(tensor(irred_char(1, 2), irred_char(1, 2)), 2),
         {2: 1, 0: 2}),
        (decompose(tensor(weyl_char(2), weyl_char(1)), 5), {3: 1, 1: 1}),
        (decompose(tensor(weyl_char(2), weyl_char(1)), 3), {3: 1, 1: 2}),
        (decompose(tensor(weyl_char(4), weyl_char(4)), 5),
         {8: 1, 6: 1, 4: 1, 2: 2, 0: 2}),
        (decompose(sym_power(weyl_char(2), 6), 7), {12: 1, 8: 1, 4: 2, 0: 2}),
        (weyl_factors(11, 7), {11: 1, 1: 1}),
        (weyl_factors(9, 7), {9: 1, 3: 1}),
        (weyl_factors(7, 7), {7: 1, 5: 1}),
        (weyl_factors(9, 5), {9: 1}),
        (weyl_factors(7, 5), {7: 1, 1: 1}),
        (weyl_factors(5, 5), {5: 1, 3: 1}),
        (weyl_factors(3, 5), {3: 1}),
    ]
    ok = all(got.key() == tuple(sorted(want.items(), reverse=True))
             for got, want in checks)
    elapsed = time.time() - t0
    report("criterion 1: quoted tensor identities", ok and elapsed < 1.0,
           f"{elapsed:.2f}s")


def test_criterion_2_comps_tables(rx):
    t0 = time.time()
    reg = rx.reg
    failures = []
    total = 0
    for g in ("G2", "F4", "E6", "E7"):
        for row in reg.rows_of(g):
            for p in PRIMES_13 + (INFINITY,):
                if not row.pcond(p):
                    continue
                for rec in rx.verify_comps_row(g, row.rid, p, 3):
                    total += 1
                    if rec["status"] != "pass":
                        failures.append((g, row.rid, rec["p"], rec["twists"]))
    elapsed = time.time() - t0
    report("criterion 2: composition-factor tables, G2-E7, p <= 13 and "
           "infinity, bound 3",
           not failures and elapsed < 300,
           f"{total} instances, {elapsed:.0f}s")


def test_criterion_3_dimension_conservation(rx):
    reg = rx.reg
    bad = 0
    total = 0
    for row in reg.rows_of("E8"):
        for p in PRIMES_13 + (INFINITY,):
            if not row.pcond(p):
                continue
            for rec in rx.verify_comps_row("E8", row.rid, p, 3):
                total += 1
                if rec["status"] != "pass":
                    bad += 1
    report("criterion 3: dimension conservation (E8 rows; G2-E7 inside "
           "criterion 2)", bad == 0, f"{total} E8 instances")


def test_criterion_4_certification(rx, enum):
    t0 = time.time()
    reg = rx.reg
    bad = []
    total = 0
    for g in ("G2", "F4", "E6", "E7", "E8"):
        for p in PRIMES_13:
            for row in reg.rows_of(g):
                for inst in reg.enumerate_instances(row, 3, p):
                    total += 1
                    cert = certify(rx, inst, 3, enum)
                    if not cert.verdict.startswith("irreducible"):
                        bad.append((str(inst), p, cert.verdict))
    reducible_ok = True
    for g, idx, p in [("G2", 1, 2), ("E7", 1, 5), ("E7", 2, 7), ("E7", 3, 7),
                      ("E8", 1, 5), ("E8", 2, 7)]:
        cert = certify_reducible(reg, g, idx, p)
        reducible_ok = reducible_ok and cert.verdict == "known-reducible"
    report("criterion 4: positive certificates for all instances, known "
           "reducible cases cited",
           not bad and reducible_ok,
           f"{total} instances, {time.time()-t0:.0f}s")


def test_criterion_5_orbit_tables(rx):
    t0 = time.time()
    reg = rx.reg
    ok = True
    details = []
    for table, bound in (("conditions1", 5), ("cond23", 4),
                         ("cond8", 4), ("cond27", 4)):
        rep = verify_conditions_table(reg, table, bound)
        ok = ok and rep["status"] == "pass"
        details.append(f"{table}:{rep['orbits']}")
    g7, g8 = psl27(), agl32()
    ok = ok and g7.order == 168 and g8.order == 1344
    ok = ok and stabilizer(g7, [0]).order == 24
    ok = ok and stabilizer(g8, [0, 1]).order == 48
    ok = ok and stabilizer(stabilizer(g7, [0]), [1, 2]).order == 8
    elapsed = time.time() - t0
    report("criterion 5: orbit covers and group orders",
           ok and elapsed < 120, f"{' '.join(details)}, {elapsed:.0f}s")


def test_criterion_6_distinctness(rx):
    t0 = time.time()
    bad = []
    for g in ("G2", "F4", "E6", "E7", "E8"):
        for module in ("min", "adj"):
            if g == "E8" and module == "min":
                continue
            for p in PRIMES_13:
                rep = distinctness_report(rx, g, p, 4, module)
                if rep["collisions"]:
                    bad.append((g, p, module, rep["collisions"][:2]))
                if g == "E6" and p == 2:
                    assert rep["instances"] == 0
    report("criterion 6: pairwise distinctness, bound 4, both modules",
           not bad, f"{time.time()-t0:.0f}s" + (f" {bad[:1]}" if bad else ""))


def test_criterion_7_property_suites(rx):
    t0 = time.time()
    ok = True
    # decomposition round-trip
    for p in (2, 3, 5, 7):
        for a in range(8):
            c = tensor(weyl_char(a), weyl_char(3))
            ok = ok and decompose(c, p).to_character(p) == c
    # Steinberg dimension law
    for p in PRIMES_31:
        for n in range(501):
            ok = ok and irred_char(n, p).dim == dim_irred(n, p)
    # Clebsch-Gordan
    for a in range(31):
        for b in range(a, 31):
            lhs = tensor(weyl_char(a), weyl_char(b))
            rhs = direct_sum(*(weyl_char(j)
                               for j in range(b - a, a + b + 1, 2)))
            ok = ok and lhs == rhs
    # Weyl-module multiplicity freeness
    for p in PRIMES_31:
        for n in range(201):
            ok = ok and all(m == 1 for _, m in weyl_factors(n, p).items())
    # Freudenthal vs Weyl dimension formula on the host tables in use
    used = [("A", 5, (1, 0, 0, 0, 1)), ("A", 7, (1, 0, 0, 0, 0, 0, 1)),
            ("B", 4, (0, 1, 0, 0)), ("C", 3, (2, 0, 0)),
            ("C", 4, (0, 0, 0, 1)), ("D", 6, (0, 1, 0, 0, 0, 0)),
            ("D", 8, (0, 1, 0, 0, 0, 0, 0, 0)), ("B", 2, (3, 2)),
            ("E", 6, (1, 0, 0, 0, 0, 0)), ("E", 7, (0, 0, 0, 0, 0, 0, 1))]
    for fam, rank, lam in used:
        host = HostType(fam, rank)
        ok = ok and weyl_table(host, lam).dim == weyl_dimension(host, lam)
    # half-spin duality swap
    D6 = HostType("D", 6)
    nat = tensor(weyl_char(5), weyl_char(1))
    f = functional_from_natural(D6, nat)
    from sl2comps.hostrep import TorusFunctional

    fneg = TorusFunctional(D6, f.values[:-1] + (-f.values[-1],))
    ok = ok and restrict_table(spin_table(D6, "even"), fneg) == \
        restrict_table(spin_table(D6, "odd"), f)
    report("criterion 7: property suites", ok, f"{time.time()-t0:.0f}s")


def test_criterion_8_e8_emission(rx):
    """Existence/conjugacy proofs and the unavailable E8 table are out of
    scope; the computed E8 factor table is emitted as an artifact and
    accepted through criteria 3, 4 and 6."""
    reg = rx.reg
    records = 0
    for row in reg.rows_of("E8"):
        for inst in reg.enumerate_instances(row, 2, 7):
            fm = rx.restrict_module("adj", inst)
            assert fm.dim(7) == 248
            records += 1
    report("criterion 8: E8 rows emitted and self-consistent "
           "(byte-comparison out of scope)", records > 0,
           f"{records} records at p=7, bound 2")

"""Parser and evaluation of the module-expression language."""

import pytest

from sl2comps.exprs import (
    FList,
    Irr,
    ParseError,
    Plus,
    Ref,
    Socle,
    Tensor,
    Tup,
    Twist,
    char_of,
    fm_of,
    free_vars,
    parse_expr,
    pretty,
    summands,
    tuple_parts,
)
from sl2comps.sl2 import INFINITY, SL2Error


ROUND_TRIP = [
    "0",
    "(1^[r],5^[s])",
    "W(2)^[r] / 1^[r]*W(3)^[s] / W(2)^[s]",
    "1*1^[r] + 1^[s]*1^[t] + 0",
    "(1^[r],0|(2^[s]+2^[t]+2^[u])|0 + 1^[v]*1^[w])",
    "(1^[r],E7(#15^{s,t}))",
    "(1^[r],F4(#10)^[s])",
    "(10^[s])^2",
    "W(14) / 10^2 / 6 / 4 / 2",
    "(2,2^[r],2^[s])",
    "(G2(#3)^[r],F4(#11^{s,t}))",
    "4^[r]+2^[s]+1^[t]*1^[u]+1^[v]*1^[w]",
    "0|(2+2^[r]+2^[s]+2^[t]+2^[u]+2^[v]+2^[w])|0",
]


class TestParsing:
    @pytest.mark.parametrize("text", ROUND_TRIP)
    def test_parse_pretty_parse_fixed_point(self, text):
        ast = parse_expr(text)
        assert parse_expr(pretty(ast)) == ast

    def test_tuple_structure(self):
        ast = parse_expr("(1^[r],5^[s])")
        assert isinstance(ast, Tup)
        a, b = tuple_parts(ast, 2)
        assert a == Twist(Irr(1), "r")
        assert b == Twist(Irr(5), "s")

    def test_ref_with_arguments(self):
        ast = parse_expr("E7(#16^{s,t,u})")
        assert ast == Ref("E7", 16, ("s", "t", "u"))

    def test_ref_with_uniform_twist(self):
        ast = parse_expr("F4(#10)^[s]")
        assert ast == Ref("F4", 10, None, "s")

    def test_multiplicity_binds_tighter_than_slash(self):
        ast = parse_expr("10^2 / 6")
        assert isinstance(ast, FList)
        assert ast.parts[0] == (Plus(((Irr(10), 2),)), 1)

    def test_socle_wrapping(self):
        ast = parse_expr("0|(2^[r]+2^[s])|0")
        assert isinstance(ast, Socle)

    def test_syntax_error_position(self):
        with pytest.raises(ParseError):
            parse_expr("1^[")
        with pytest.raises(ParseError):
            parse_expr("W(2")
        with pytest.raises(ParseError):
            parse_expr("1 + + 2")

    def test_free_vars(self):
        ast = parse_expr("(1^[r],4^[s]+2^[t]+1^[u]*1^[v])")
        assert free_vars(ast) == {"r", "s", "t", "u", "v"}


class TestEvaluation:
    def test_char_of_tensor(self):
        c = char_of(parse_expr("1*1^[r]"), {"r": 1}, 2)
        assert sorted(c.full_weight_list()) == [-3, -1, 1, 3]

    def test_fm_of_factor_list(self):
        fm = fm_of(parse_expr("W(2)^[r] / 1^[r]*W(3)^[s] / W(2)^[s]"),
                   {"r": 0, "s": 1}, 2)
        assert fm.key() == ((7, 1), (4, 1), (2, 1), (0, 2))
        assert fm.dim(2) == 14

    def test_socle_char_has_two_extra_trivials(self):
        c = char_of(parse_expr("0|(2+2^[1])|0"), {}, 2)
        assert c.dim == 6
        assert c.mult(0) == 2

    def test_unbound_variable_raises(self):
        with pytest.raises(SL2Error, match="unbound"):
            char_of(parse_expr("1^[r]"), {}, 5)

    def test_undefined_twist_at_infinity(self):
        with pytest.raises(SL2Error, match="characteristic zero"):
            char_of(parse_expr("1^[r]"), {"r": 1}, INFINITY)

    def test_ref_cannot_be_evaluated_directly(self):
        with pytest.raises(SL2Error):
            char_of(parse_expr("F4(#10)"), {}, 5)

    def test_summand_structure(self):
        ast = parse_expr("4^[s]+2^[t]+1^[u]*1^[v]")
        parts = summands(ast)
        assert len(parts) == 3
        assert parts[0] == (Twist(Irr(4), "s"), 1)
        assert isinstance(parts[2][0], Tensor)
        assert isinstance(ast, Plus)

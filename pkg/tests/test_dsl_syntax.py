import pytest

from imgql.dsl import ast
from imgql.dsl import LexError, ParseError, parse_expr, parse_source, tokenize
from imgql.dsl.ast import unparse


def kinds(src):
    return [(t.kind, t.text) for t in tokenize(src)][:-1]


def test_tokenize_let():
    assert kinds("let f(x) = x +. 1") == [
        ("keyword", "let"), ("ident", "f"), ("punct", "("), ("ident", "x"), ("punct", ")"),
        ("punct", "="), ("ident", "x"), ("op", "+."), ("number", "1"),
    ]


def test_comments_dropped():
    assert kinds('// comment\nload a = "b.png"') == [
        ("keyword", "load"), ("ident", "a"), ("punct", "="), ("string", "b.png"),
    ]


def test_strings_are_opaque():
    assert kinds('a ".*." b') == [("ident", "a"), ("string", ".*."), ("ident", "b")]


def test_operator_longest_match():
    assert [t for _, t in kinds("a .<. b <. c < d .*. e ./. f .-. g .>. h >. i")][1::2] == [
        ".<.", "<.", "<", ".*.", "./.", ".-.", ".>.", ">.",
    ]


def test_s_is_an_operator_but_longer_names_are_not():
    assert kinds("a S Sample") == [("ident", "a"), ("op", "S"), ("ident", "Sample")]


def test_lex_errors_have_locations():
    with pytest.raises(LexError, match=r"2:5"):
        tokenize('let\nx = "abc')
    with pytest.raises(LexError, match=r"1:3.*'#'"):
        tokenize("a #")


def test_surrounded_line_parses():
    e = parse_expr("(!border) S (bgSimScore <. 0.11)")
    assert unparse(e) == "S(!(border), <.(bgSimScore, 0.11))"


def test_precedence_and_or():
    assert unparse(parse_expr("a & b | c")) == "|(&(a, b), c)"
    assert unparse(parse_expr("a | b & c")) == "|(a, &(b, c))"


def test_precedence_full_chain():
    e = parse_expr("a S b | c & x .+. 2 .*. y .<. z")
    assert unparse(e) == "S(a, |(b, &(c, .<.(.+.(x, .*.(2.0, y)), z))))"


def test_prefix_not_binds_tightest():
    assert unparse(parse_expr("!a & b")) == "&(!(a), b)"


def test_left_associative():
    assert unparse(parse_expr("a ./. b ./. c")) == "./.(./.(a, b), c)"
    assert unparse(parse_expr("a & b & c")) == "&(&(a, b), c)"


def test_let_decl_arity():
    (cmd,) = parse_source("let grow(a,b) = (a | touch(b,a))")
    assert isinstance(cmd, ast.LetDecl)
    assert cmd.params == ("a", "b")
    assert unparse(cmd.body) == "|(a, touch(b, a))"


def test_commands():
    cmds = parse_source('import "lib.imgql"\nload x = "f.png"\nlet c = 3\nsave "o.png" x\nprint "v" c .+. 1')
    assert [type(c).__name__ for c in cmds] == ["Import", "Load", "LetDecl", "Save", "Print"]
    assert cmds[4].label == "v"


def test_expressions_may_span_lines():
    (cmd,) = parse_source("let p = distleq(1, (a > b) &\n (c > d))")
    assert unparse(cmd.body) == "distleq(1.0, &(>(a, b), >(c, d)))"


def test_duplicate_parameters_rejected():
    with pytest.raises(ParseError, match="duplicate"):
        parse_source("let f(x, x) = x")


def test_syntax_error_location():
    with pytest.raises(ParseError, match=r"<script>:2:"):
        parse_source("let a = 1\nlet = 2")
    with pytest.raises(ParseError):
        parse_source("let a = (1 .+. 2")

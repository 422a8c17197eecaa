"""Tests for the expression language."""

import math
import random

import numpy as np
import pytest

from cartanconn import fieldexpr as fe
from cartanconn.errors import ExprEvalError, ExprSyntaxError


def test_number_literal():
    assert fe.evaluate(fe.parse("9.81")) == 9.81
    assert fe.evaluate(fe.parse("1e-3")) == 1e-3
    assert fe.evaluate(fe.parse(".5")) == 0.5


def test_linear_field():
    assert fe.evaluate(fe.parse("9.81 + 0.3*x"), {"x": 2.0}) == pytest.approx(10.41, abs=1e-12)


def test_power_right_associative():
    assert fe.evaluate(fe.parse("2^3^2")) == 512.0


def test_precedence_of_unary_minus_and_power():
    # the exponent binds tighter than the leading minus
    assert fe.evaluate(fe.parse("-2^2")) == -4.0
    assert fe.evaluate(fe.parse("(-2)^2")) == 4.0
    assert fe.evaluate(fe.parse("2^-1")) == 0.5


def test_variable_binding_and_constants():
    assert fe.evaluate(fe.parse("t"), {"t": 1.5}) == 1.5
    assert abs(fe.evaluate(fe.parse("sin(pi)"))) < 1e-15
    assert fe.evaluate(fe.parse("pi"), {"pi": 3.0}) == 3.0  # environment wins


def test_kepler_component():
    value = fe.evaluate(fe.parse("-mu/ (x^2+y^2)^1.5 * x"), {"mu": 1.0, "x": 1.0, "y": 0.0})
    assert value == -1.0


def test_functions():
    assert fe.evaluate(fe.parse("sqrt(abs(-9))")) == 3.0
    assert fe.evaluate(fe.parse("exp(0)")) == 1.0
    assert fe.evaluate(fe.parse("cos(0) + sin(0)")) == 1.0


def test_syntax_errors_carry_positions():
    with pytest.raises(ExprSyntaxError) as info:
        fe.parse("1 + ")
    assert info.value.position == 4
    with pytest.raises(ExprSyntaxError) as info:
        fe.parse("2 * @")
    assert info.value.position == 4
    with pytest.raises(ExprSyntaxError):
        fe.parse("(1 + 2")
    with pytest.raises(ExprSyntaxError):
        fe.parse("1 2")


def test_unknown_function_rejected_at_parse_time():
    with pytest.raises(ExprSyntaxError):
        fe.parse("tang(1)")


def test_unbound_variable_rejected_at_eval_time():
    expr = fe.parse("a + b")
    with pytest.raises(ExprEvalError):
        fe.evaluate(expr, {"a": 1.0})


def test_domain_errors():
    with pytest.raises(ExprEvalError):
        fe.evaluate(fe.parse("1/0"))
    with pytest.raises(ExprEvalError):
        fe.evaluate(fe.parse("sqrt(-1)"))


def test_free_variables():
    expr = fe.parse("9.81 + 0.3*x - sin(t) + pi")
    assert fe.free_variables(expr) == {"x", "t"}


# ---------------------------------------------------------------------------
# Round trips and the precedence oracle
# ---------------------------------------------------------------------------

def random_expression(rng: random.Random, depth: int = 0) -> str:
    """Random expression source over small integers and x, t."""
    if depth > 3 or rng.random() < 0.3:
        return rng.choice(["2", "3", "5", "x", "t", "0.5"])
    kind = rng.random()
    if kind < 0.7:
        op = rng.choice(["+", "-", "*", "/", "^"])
        return f"{random_expression(rng, depth + 1)} {op} {random_expression(rng, depth + 1)}"
    if kind < 0.8:
        return f"-{random_expression(rng, depth + 1)}"
    if kind < 0.9:
        return f"({random_expression(rng, depth + 1)})"
    return f"{rng.choice(['sin', 'cos', 'abs'])}({random_expression(rng, depth + 1)})"


def python_oracle(src: str, env: dict) -> float:
    """Python shares the full precedence table (** above unary minus above
    * / above + -, right-associative **), so its evaluator is an
    independent parenthesization oracle."""
    safe = {"sin": math.sin, "cos": math.cos, "sqrt": math.sqrt,
            "exp": math.exp, "abs": abs, "pi": math.pi, **env}
    return float(eval(src.replace("^", "**"), {"__builtins__": {}}, safe))  # noqa: S307


def test_precedence_against_python_oracle():
    rng = random.Random(42)
    env = {"x": 1.7, "t": -0.6}
    checked = 0
    while checked < 300:
        src = random_expression(rng)
        try:
            oracle = python_oracle(src, env)
        except (ZeroDivisionError, OverflowError, ValueError, TypeError):
            continue  # complex powers and division blowups are out of scope
        if not np.isfinite(oracle):
            continue
        try:
            ours = fe.evaluate(fe.parse(src), env)
        except ExprEvalError:
            continue  # our ^ on negative bases raises where Python goes complex
        assert ours == pytest.approx(oracle, rel=1e-12, abs=1e-12), src
        checked += 1


def test_pretty_roundtrip_is_fixed_point():
    rng = random.Random(7)
    checked = 0
    while checked < 300:
        src = random_expression(rng)
        tree = fe.parse(src)
        printed = fe.pretty(tree)
        assert fe.parse(printed) == tree, (src, printed)
        assert fe.pretty(fe.parse(printed)) == printed
        checked += 1


def test_pretty_examples():
    assert fe.pretty(fe.parse("2^3^2")) == "2 ^ 3 ^ 2"
    assert fe.pretty(fe.parse("(2^3)^2")) == "(2 ^ 3) ^ 2"
    assert fe.pretty(fe.parse("-(1+x)")) == "-(1 + x)"
    assert fe.pretty(fe.parse("1 - (2 - 3)")) == "1 - (2 - 3)"

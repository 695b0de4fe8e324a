import json
import random
from fractions import Fraction

import pytest

from phaseatlas.desing import cdk_rational_field
from phaseatlas.errors import (
    ParseError,
    UnknownSymbolError,
    UnsupportedConstructError,
    ZeroDenominatorError,
)
from phaseatlas.polycore import BiPoly, X, Y, format_poly
from phaseatlas.sysio import (
    SystemSpec,
    build_report,
    encode_number,
    format_report,
    parse_system,
)

F = Fraction

CDK_TEXT = """\
param a = 1/2
param b = 1/2
x*y/(x^2+y^2) - a*x ; y^2/(x^2+y^2) - b*y + b - 1
"""


def test_parse_single_variable():
    spec = parse_system("x ; y")
    (px, qx), (py, qy) = spec.normalized()
    assert px == X and qx == BiPoly.const(1)
    assert py == Y and qy == BiPoly.const(1)


def test_parse_cdk_matches_builtin_constructor():
    spec = parse_system(CDK_TEXT)
    assert spec.to_rational_field() == cdk_rational_field(F(1, 2), F(1, 2))


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominatorError):
        parse_system("1/0 ; y")
    with pytest.raises(ZeroDenominatorError):
        parse_system("x/(x - x) ; y")


def test_unsupported_construct_names_token():
    with pytest.raises(UnsupportedConstructError) as err:
        parse_system("ln(x) ; y")
    assert "ln" in str(err.value)
    with pytest.raises(UnsupportedConstructError) as err:
        parse_system("x ; sin(y)")
    assert "sin" in str(err.value)


def test_unknown_symbol_reported_with_position():
    with pytest.raises(UnknownSymbolError) as err:
        parse_system("c*x ; y")
    assert "c" in str(err.value)
    assert err.value.line == 1


def test_syntax_error_has_line_and_column():
    with pytest.raises(ParseError) as err:
        parse_system("x + ; y")
    assert err.value.line is not None


def test_exponent_must_be_nonnegative_integer():
    with pytest.raises(UnsupportedConstructError):
        parse_system("x^y ; y")
    with pytest.raises(UnsupportedConstructError):
        parse_system("x^(1/2) ; y")
    spec = parse_system("x^(2) ; y")
    (px, _), _ = spec.normalized()
    assert px == X**2


def test_decimal_literals_are_exact():
    spec = parse_system("0.25*x ; y")
    (px, _), _ = spec.normalized()
    assert px == F(1, 4) * X


def test_newline_separated_sides():
    spec = parse_system("x\n-y")
    (_, _), (py, _) = spec.normalized()
    assert py == -Y


def test_precedence_and_associativity():
    spec = parse_system("-x^2 ; 2 - 3 - x")
    (px, _), (py, _) = spec.normalized()
    assert px == -(X**2)  # unary minus binds looser than ^
    assert py == -1 - X  # left-associative subtraction


def _random_spec(rng):
    def rand_poly(allow_const=True):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            terms[(rng.randint(0, 2), rng.randint(0, 2))] = F(
                rng.randint(-5, 5) or 1, rng.randint(1, 4)
            )
        p = BiPoly(terms)
        return p if not p.is_zero() or allow_const else p + 1

    pieces = []
    for _ in range(2):
        num = rand_poly()
        use_ratio = rng.random() < 0.5
        if use_ratio:
            den = rand_poly(allow_const=False) + 1
            pieces.append(f"({format_poly(num)})/({format_poly(den)})")
        else:
            pieces.append(format_poly(num))
    return " ; ".join(pieces)


def test_roundtrip_random_specs():
    rng = random.Random(77)
    done = 0
    while done < 100:
        text = _random_spec(rng)
        try:
            spec = parse_system(text)
        except ZeroDenominatorError:
            continue
        again = parse_system(spec.canonical_text())
        assert again == spec, text
        done += 1


def test_roundtrip_with_parameters():
    spec = parse_system(CDK_TEXT)
    again = parse_system(spec.canonical_text())
    assert again == spec


# -- report formatting ----------------------------------------------------------------


def test_empty_report_is_stable_minimal_document():
    doc = build_report("x ; y")
    out1 = format_report(doc)
    out2 = format_report(build_report("x ; y"))
    assert out1 == out2
    parsed = json.loads(out1)
    assert parsed["system"]["text"] == "x ; y"
    assert parsed["diagnostics"] == []


def test_report_contains_four_equilibria_for_straddling_parameters():
    from phaseatlas.equilibria import cdk_stationary_points

    pts = cdk_stationary_points(F(5, 2), F(1, 2))
    doc = build_report("cdk", parameters=(("a", F(5, 2)), ("b", F(1, 2))), equilibria=pts)
    parsed = json.loads(format_report(doc))
    assert len(parsed["equilibria"]) == 4
    labels = {p["label"] for p in parsed["equilibria"]}
    assert labels == {"s1", "s2", "s3", "s4"}


def test_number_encoding_markers():
    assert encode_number(F(3, 4)) == {"exact": "3/4"}
    enc = encode_number(0.1936491673103708, tol=1e-12)
    assert enc["approx"] == "0.19364916731"
    assert "tol" in enc


def test_format_report_determinism_and_human_mode():
    from phaseatlas.equilibria import cdk_stationary_points

    pts = cdk_stationary_points(F(5, 2), F(1, 2))
    doc = build_report("cdk", parameters=(("a", F(5, 2)), ("b", F(1, 2))), equilibria=pts)
    assert format_report(doc) == format_report(doc)
    human = format_report(doc, "human")
    assert "s3" in human and "saddle" in human


def test_system_echo_survives_report_roundtrip():
    spec = parse_system(CDK_TEXT)
    doc = build_report(spec.canonical_text(), parameters=spec.parameters)
    recovered = json.loads(format_report(doc))["system"]["text"]
    assert parse_system(recovered) == spec

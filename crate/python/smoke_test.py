"""Load the compiled extension straight from target/ and exercise it."""

import importlib.machinery
import importlib.util
import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    candidates = sorted(
        (ROOT / "target").glob("*/libdarcais_py.so"),
        key=lambda p: p.stat().st_mtime,
        reverse=True,
    )
    if not candidates:
        sys.exit("build first: cargo build -p darcais-py")
    loader = importlib.machinery.ExtensionFileLoader("darcais_py", str(candidates[0]))
    spec = importlib.util.spec_from_loader("darcais_py", loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    d = load()
    sigma = d.ArithmeticFunction.sigma()

    assert [d.sigma(n) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]
    assert d.mobius(30) == -1 and d.euler_phi(12) == 4
    assert d.legendre_symbol(-1, 7) == -1

    assert d.a_poly(sigma, 5) == [0, 144, 450, 215, 30, 1]
    assert d.p_poly(sigma, 2) == [0, Fraction(3, 2), Fraction(1, 2)]
    assert [d.tau(n) for n in range(1, 7)] == [1, -24, 252, -1472, 4830, -6048]
    # sigma(7) = 1 mod 7, so A_7 = X (X^6 - 1) splits into distinct linear factors
    assert sorted(d.factor_mod(sigma, 7, 7)) == [([r, 1], 1) for r in range(7)]
    assert d.cyclotomic(6) == [1, -1, 1]

    c = d.Candidate("cyc:5,2,1")
    assert d.min_poly(c) == c.min_poly and c.degree == 4
    assert d.index(c) == (64, 64)
    assert json.loads(c.split(11))["applicable"] is True

    cert = json.loads(d.certify(sigma, d.Candidate.gaussian(2, 1), n=9))
    assert cert["verdict"] == "ProvenNonRoot", cert
    cert = json.loads(d.certify(sigma, d.Candidate("quad:5,1,0")))
    assert cert["verdict"] == "ProvenNonRoot" and cert["evidence"]["subcase"] == "item 3"

    assert all(d.hurwitz_check(sigma, n) for n in range(1, 11))
    assert json.loads(d.zmija(sigma))["all_hold"] is True

    short = d.ArithmeticFunction.table("short", [1, 3])
    assert short(2) == 3
    try:
        d.a_poly(short, 5)
    except d.TableExhaustedError:
        pass
    else:
        raise AssertionError("short table accepted")
    try:
        d.Candidate("quad:-1,0,3")
    except d.DarcaisError:
        pass
    else:
        raise AssertionError("a = 0 accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()

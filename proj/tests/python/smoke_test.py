"""Python smoke tests for the germforge bindings (run through ctest)."""

import json
import math
import os
import sys
import tempfile

import germforge as gf


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def test_series_algebra():
    s = gf.sigma(6)
    assert s.kind == "antiholomorphic"
    ss = gf.compose(s, s)
    assert ss.kind == "holomorphic"
    assert all(close(c, e) for c, e in zip(ss.coefficients, [1, 0, 0, 0, 0, 0]))

    f = gf.TruncatedSeries("antiholomorphic", [1.0, 1.0, 0.0, 0.0])
    g = gf.compose(f, f)
    assert [round(c.real) for c in g.coefficients] == [1, 2, 2, 1]

    inv = gf.invert(gf.TruncatedSeries("holomorphic", [1.0, 1.0, 0.0, 0.0]))
    assert close(inv.coefficients[3], -5.0)


def test_classification_and_flow():
    nf = gf.normal_form(1, 0.25, 0.5, 16)
    cls = gf.classify(nf)
    assert cls["k"] == 1 and not cls["degenerate"]
    assert close(cls["b"], 0.25, 1e-9)

    v1 = gf.flow_map(1, 0.25, 1.0, 12)
    assert close(v1.coefficients[0], 1.0)
    assert close(v1.coefficients[1], 1.0)
    assert close(v1.coefficients[2], 1.0 - 0.25)  # (k+1)/2 - b

    res = gf.residue_iteratif(gf.TruncatedSeries("holomorphic", [1, 1, 1, 0, 0]))
    assert close(res, 1.0)


def test_modulus_and_decisions():
    nf = gf.normal_form(1, 0.25, 0.5, 24)
    out = gf.compute_modulus(nf)
    assert out["k"] == 1 and close(out["b"], 0.25, 1e-8)
    mod = out["modulus"]
    c1 = mod["tables"][0]["const"]
    assert close(c1[1], -math.pi * 0.25, 1e-6)

    rep = gf.decide_embeddable(mod)
    assert rep["verdict"]

    # the explicit modulus with a real curve but no square root
    table = {
        "kind": "holomorphic",
        "k": 1,
        "b": [0.0, 0.0],
        "noise_floor": 1e-9,
        "n_max": 4,
        "tables": [
            {"j": 1, "const": [0.0, 0.0], "coeffs": [{"n": 1, "c": [1.0, 0.0]}]},
            {"j": -1, "const": [0.0, 0.0], "coeffs": [{"n": -1, "c": [1.0, 0.0]}]},
        ],
    }
    assert gf.decide_real_curve(table)["verdict"]
    assert not gf.decide_root(table, 2)["verdict"]

    cent = gf.centralizer(table)
    assert cent["case"] == "schwarz-reflection"


def test_conjugacy_and_orbit():
    nf = gf.normal_form(1, 0.0, 0.5, 24)
    h = gf.TruncatedSeries("holomorphic", [1.0, 0.08] + [0.0] * 22)
    conj = gf.conjugate_by(h, nf)
    rep = gf.conjugacy_check(nf, conj)
    assert rep["verdict"]

    pts = gf.orbit(nf, 1, 0.0, 0.1 + 0.0j, 5)
    assert len(pts) == 6
    z = 0.1
    for p, _, _ in pts:
        assert close(p, z, 1e-9)
        z = z / (1 - z / 2)


def test_cli_roundtrip():
    nf = gf.normal_form(1, 0.0, 0.5, 16)
    doc = {
        "kind": "antiholomorphic",
        "order": 16,
        "coefficients": [[c.real, c.imag] for c in nf.coefficients],
    }
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "germ.json")
        with open(path, "w") as f:
            json.dump(doc, f)
        code, out, err = gf.run_cli(["analyze", path, "--format", "json"])
        assert code == 0, err
        rep = json.loads(out)
        assert rep["codimension"] == 1
        code, out, _ = gf.run_cli(["decide", "embeddable", path, "--format", "json"])
        assert code == 0
        assert json.loads(out)["decision"]["verdict"]


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())

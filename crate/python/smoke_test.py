"""Smoke test for the htrinomial extension module.

Build and run from the repository root:

    cargo build --release -p htrinomial-py --features extension-module
    cp target/release/libhtrinomial_py.so python/htrinomial.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import htrinomial as ht  # noqa: E402


def close(x, y, tol):
    assert abs(x - y) <= tol, f"{x} vs {y}"


def main():
    h = ht.HarmonicTrinomial(1, 3, -5, 2)
    assert [h.count_roots_below(v) for v in (0.5, 2, 6)] == [0, 3, 10]

    h = ht.HarmonicTrinomial(2, 1, 1, math.sqrt(2))
    d = h.count_detail(1.0)
    assert d["count"] == 1 and d["p_star"] == -2
    close(d["w_star"], 0.25, 1e-12)

    h = ht.HarmonicTrinomial(2, 3, 6, 1)
    roots = h.roots()
    assert len(roots) == 11
    assert all(abs(h(r["value"])) < 1e-8 for r in roots)
    moduli = [g[0] for g in h.moduli_spectrum()]
    for got, want in zip(moduli, [0.54163, 0.55589, 2.43641, 2.44415, 2.45478, 2.46209]):
        close(got, want, 1e-4)
    assert h.uj_members() == [1, 3, 5, 7, 9]

    p = ht.HarmonicTrinomial(1, 2, -1.5, 0.5).triangle_profile()
    assert p["double"]
    close(p["b_radii"][0], 1.0, 1e-9)

    h1 = ht.HarmonicTrinomial(5, 2, 3, 2)
    h2 = ht.HarmonicTrinomial(5, 2, -6, -4, a=2)
    assert h1.is_equivalent(h2)["equivalent"]

    params = ht.b_locus_params(5, 3, 0.5, 1.0)
    close(params["R"], 11 / 6, 1e-14)
    close(params["r"], 5 / 6, 1e-14)
    params = ht.c_locus_params(5, 2, -3.5, 1.0)
    close(params["R"], 2.5, 1e-14)

    theta, b = ht.b_locus_curve(5, 3, 0.5, 1.0, samples=64)[10]
    probe = ht.HarmonicTrinomial(5, 3, b, 0.5)
    assert min(abs(r["modulus"] - 1.0) for r in probe.roots()) < 1e-8

    rays = ht.ray_set(1, 1, -1)
    assert [r["parity"] for r in rays] == ["even", "odd", "even", "odd"]
    close(ht.singular_disk_radius(5, 3, 0.5), 0.7676, 1e-3)
    report = ht.singular_report(1, 1, -1)
    assert any(abs(c - 2 * math.sqrt(3) / 3) < 1e-9 for c in report["cusps"])

    try:
        ht.HarmonicTrinomial(2, 2, 1, 1)
    except ValueError as e:
        assert "coprime" in str(e)
    else:
        raise AssertionError("non-coprime exponents accepted")

    try:
        ht.HarmonicTrinomial(2, 3, 6, 1).roots(tolerances=ht.Tolerances(residual=1e-300))
    except ht.NumericalError:
        pass
    else:
        raise AssertionError("missed roots went unreported")

    print(f"htrinomial {ht.__version__}: smoke test passed")


if __name__ == "__main__":
    main()

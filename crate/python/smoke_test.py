"""Smoke test for the walker extension module."""

import math
from fractions import Fraction

import walker


def main():
    assert walker.moment_table(4, 4, 4) == [1, 4, 22, 148, 1144]
    assert walker.moment_table(3, 6, 3)[3] == Fraction(139, 3)

    value, err = walker.moment(3, 2, 1.0)
    combo = walker.odd_moment(3, 0, 1)
    assert combo.coeffs == [1, 6]
    assert abs(combo.value() - value) < 1e-8
    assert abs(float(combo) - 1.5746) < 5e-5

    p, method, _ = walker.density(4, 3, 1.0)
    assert method == "piecewise-exact" and abs(p - 5 / 16) < 1e-15
    c, _, _ = walker.cdf(3, 2, 1.0)
    assert abs(c - 0.25) < 1e-8

    f = walker.odd_dim_density(4, 3)
    assert f.eval_exact("3") == Fraction(3, 16)
    assert f.integral() == 1
    assert f.breaks == [0, 2, 4]

    assert walker.residues(8, 4)[4] == 0
    assert abs(walker.constant("A") - 0.896440788776764) < 1e-12
    assert walker.gf_check("w2", 4, 0.05) < 1e-10

    stats = walker.estimate_moments(4, 4, [2.0], samples=200_000, seed=3)
    mean, se = stats["moment_estimates"][2.0]
    assert abs(mean - 4.0) < 4 * se
    stat, ok = walker.ks_test(2, 3, samples=50_000, seed=3, reference="closed")
    assert ok, stat

    spec = walker.QuadSpec(tol=1e-9)
    v, _ = walker.moment(2, 4, 1.0, spec)
    assert abs(v - 64 / (15 * math.pi)) < 1e-8

    try:
        walker.gf_check("w3", 2, 0.5)
    except walker.WalkerError:
        pass
    else:
        raise AssertionError("expected WalkerError")

    results = walker.verify("kluyver")
    assert all(ok for _, _, ok in results), results
    print("smoke test passed")


if __name__ == "__main__":
    main()

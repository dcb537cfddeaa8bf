import math

import numpy as np
import pytest

from normbounds import (
    Geometric,
    SigmaParam,
    Zipf,
    entropy_bracket,
    family_bracket,
    family_entropy,
    family_norm,
    is_in_ell_sigma,
    shannon_entropy,
)
from normbounds.exceptions import Divergent, DomainError
from normbounds.infinite import make_family, truncate

mpmath = pytest.importorskip("mpmath")
mpmath.mp.dps = 30

# mpmath, 30+ digits
ZIPF2_NORM_06 = 10.70884729542361703735127908
ZIPF2_ENTROPY = 2.362589554698743809420673554
ZIPF3_ENTROPY = 0.9788717907186875871451475695


def zipf_norm_oracle(s, q):
    return float(mpmath.zeta(s * q) ** (1 / mpmath.mpf(q)) / mpmath.zeta(s))


def zipf_entropy_oracle(s):
    z = mpmath.zeta(s)
    return float(mpmath.log(z, 2) - s * mpmath.zeta(s, derivative=1) / (z * mpmath.log(2)))


def geometric_oracle(r, n=200):
    i = np.arange(n)
    p = (1 - r) * r ** i
    return -math.fsum(p[p > 0] * np.log2(p[p > 0]))


class TestFamilies:
    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.5, 1.5])
    def test_geometric_domain(self, bad):
        with pytest.raises(DomainError):
            Geometric(bad)

    @pytest.mark.parametrize("bad", [1.0, 0.5, float("inf")])
    def test_zipf_domain(self, bad):
        with pytest.raises(DomainError):
            Zipf(bad)

    def test_make_family(self):
        assert make_family("Zipf", "2") == Zipf(2.0)
        with pytest.raises(DomainError):
            make_family("poisson", 1.0)


class TestCriterion:
    def test_examples(self):
        assert is_in_ell_sigma(Zipf(2), 0.6)
        assert not is_in_ell_sigma(Zipf(2), 0.4)
        assert not is_in_ell_sigma(Zipf(2), 0.5)
        assert is_in_ell_sigma(Geometric(0.99), 0.1)

    @pytest.mark.parametrize("s", [1.1, 1.5, 2.0, 3.0])
    @pytest.mark.parametrize("sigma", [0.2, 0.4, 0.6, 0.8, 0.95])
    def test_soundness(self, s, sigma):
        fam = Zipf(s)
        if is_in_ell_sigma(fam, sigma):
            b = family_bracket(fam, sigma, 1e-6)
            assert math.isfinite(b.upper)
        else:
            with pytest.raises(Divergent):
                family_bracket(fam, sigma, 1e-6)


class TestNorm:
    def test_geometric_l1(self):
        for r in (0.1, 0.5, 0.9):
            v = family_norm(Geometric(r), 1.0)
            assert v.contains(1.0)
            assert v.error_bound < 1e-14

    def test_geometric_closed_form_vs_sum(self):
        for r in (0.2, 0.7):
            for q in (0.3, 0.9, 1.5):
                p = (1 - r) * r ** np.arange(400)
                direct = math.fsum(p ** q) ** (1 / q)
                assert family_norm(Geometric(r), q).value == pytest.approx(direct, rel=1e-12)

    def test_zipf_l1(self):
        v = family_norm(Zipf(2), 1.0, 1e-8)
        assert v.contains(1.0)
        assert v.error_bound <= 1e-8

    def test_zipf_06(self):
        v = family_norm(Zipf(2), 0.6, 1e-8)
        assert v.error_bound <= 1e-8
        assert v.contains(ZIPF2_NORM_06)
        assert zipf_norm_oracle(2, 0.6) == pytest.approx(ZIPF2_NORM_06, rel=1e-15)

    @pytest.mark.parametrize("s,q", [(1.5, 0.7), (3.0, 0.4), (1.2, 2.0), (2.5, 1.3), (1.05, 0.99)])
    def test_zipf_enclosure(self, s, q):
        v = family_norm(Zipf(s), q, 1e-9)
        assert v.error_bound <= 1e-9
        assert v.contains(zipf_norm_oracle(s, q))

    def test_divergent(self):
        with pytest.raises(Divergent):
            family_norm(Zipf(2), 0.5)

    def test_truncation_consistency(self):
        fam = Zipf(2)
        prev = family_norm(fam, 0.6, 1e-4)
        tol = 1e-4
        for _ in range(10):
            tol /= 2
            cur = family_norm(fam, 0.6, tol)
            assert abs(cur.value - prev.value) <= prev.error_bound
            prev = cur


class TestEntropy:
    def test_geometric_half(self):
        e = family_entropy(Geometric(0.5))
        assert e.contains(2.0)
        assert geometric_oracle(0.5) == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("r", [1e-6, 0.01, 0.3, 0.9, 0.99])
    def test_geometric_vs_sum(self, r):
        assert family_entropy(Geometric(r)).value == pytest.approx(geometric_oracle(r, 6000), rel=1e-12)

    def test_geometric_small_ratio(self):
        assert family_entropy(Geometric(1e-6)).value < 1e-4

    def test_zipf_two(self):
        e = family_entropy(Zipf(2), 1e-6)
        assert e.error_bound <= 1e-6
        assert e.contains(ZIPF2_ENTROPY)
        assert zipf_entropy_oracle(2) == pytest.approx(ZIPF2_ENTROPY, rel=1e-15)

    def test_zipf_partial_sum_oracle(self):
        # direct partial sums to 1e7 plus the crude one-sided integral tail
        n = 10 ** 7
        i = np.arange(1, n + 1, dtype=float)
        z = float(mpmath.zeta(2))
        p = i ** -2 / z
        head = -math.fsum(p * np.log2(p))
        # tail of sum i^-2 (2 log2 i + log2 z) / z is below this
        tail = (2 * math.log2(n) + 2 / math.log(2) + math.log2(z)) / (z * n)
        e = family_entropy(Zipf(2), 1e-6)
        assert e.lo <= head + tail and head <= e.hi

    @pytest.mark.parametrize("s", [1.1, 1.5, 3.0, 6.0])
    def test_zipf_enclosure(self, s):
        e = family_entropy(Zipf(s), 1e-9)
        assert e.contains(zipf_entropy_oracle(s))

    def test_zipf_three(self):
        assert family_entropy(Zipf(3), 1e-10).contains(ZIPF3_ENTROPY)


class TestFamilyBracket:
    def test_geometric(self):
        b = family_bracket(Geometric(0.5), 0.9)
        assert b.lower <= 2.0 <= b.upper

    def test_zipf(self):
        b = family_bracket(Zipf(2), 0.6, 1e-6)
        e = family_entropy(Zipf(2), 1e-6)
        assert b.lower <= e.lo and e.hi <= b.upper
        assert math.isfinite(b.upper)

    def test_zipf_divergent(self):
        with pytest.raises(Divergent):
            family_bracket(Zipf(2), 0.4)

    @pytest.mark.parametrize("fam", [Geometric(0.1), Geometric(0.5), Geometric(0.95),
                                     Zipf(1.3), Zipf(2), Zipf(4)])
    @pytest.mark.parametrize("sigma", [0.3, 0.6, 0.8, 0.9, 0.99])
    def test_containment(self, fam, sigma):
        if not is_in_ell_sigma(fam, sigma):
            with pytest.raises(Divergent):
                family_bracket(fam, sigma, 1e-8)
            return
        b = family_bracket(fam, sigma, 1e-8)
        e = family_entropy(fam, 1e-8)
        assert b.lower <= e.lo and e.hi <= b.upper

    @pytest.mark.parametrize("r", [0.2, 0.5, 0.8])
    @pytest.mark.parametrize("sigma", [0.5, 0.9])
    def test_finite_truncation_agreement(self, r, sigma):
        fam = Geometric(r)
        n = 10 ** 4
        tail = r ** n
        fin = entropy_bracket(truncate(fam, n), sigma)
        inf = family_bracket(fam, sigma)
        c = SigmaParam(sigma).constant
        assert abs(fin.lower - inf.lower) <= 10 * c * tail + 1e-12
        assert abs(fin.upper - inf.upper) <= 10 * c * tail + 1e-12

    def test_finite_truncation_zipf_approaches(self):
        # heavy tail: truncations approach the family bracket from below
        fam = Zipf(3)
        inf = family_bracket(fam, 0.9, 1e-10)
        ups = [entropy_bracket(truncate(fam, n), 0.9).upper for n in (10, 100, 1000, 10000)]
        assert ups == sorted(ups)
        assert ups[-1] <= inf.upper
        assert inf.upper - ups[-1] < inf.upper - ups[0]

"""Fusion-ring axioms, quantum dimensions, and the FCAT text format."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusioncat.fusion_ring import (
    FcatDocument,
    FcatError,
    FusionRing,
    emit_fcat,
    parse_fcat,
)


def fibonacci_ring() -> FusionRing:
    constants = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
                 (1, 1, 0): 1, (1, 1, 1): 1}
    return FusionRing(["1", "t"], 0, constants)


def z_n_ring(n: int) -> FusionRing:
    constants = {(i, j, (i + j) % n): 1 for i in range(n) for j in range(n)}
    return FusionRing([str(i) for i in range(n)], 0, constants)


class TestValidation:
    def test_fibonacci_is_valid(self):
        report = fibonacci_ring().validate()
        assert report.passed
        assert report.lines()[0].endswith("PASS")

    def test_broken_unit_detected(self):
        ring = FusionRing(["1", "t"], 0, {(0, 0, 0): 1, (1, 1, 0): 1})
        report = ring.validate()
        assert not report.unit_ok
        assert not report.passed
        assert any("unit" in f for f in report.failures)

    def test_broken_associativity_detected(self):
        # Klein-four group ring with one product corrupted: b*c = b
        # instead of a, so (a*b)*c = c*c = 1 but a*(b*c) = a*b = c.
        constants = {}
        table = {(1, 2): 3, (1, 3): 2, (2, 3): 1,
                 (1, 1): 0, (2, 2): 0, (3, 3): 0}
        for (i, j), k in table.items():
            constants[(i, j, k)] = 1
            constants[(j, i, k)] = 1
        for i in range(4):
            constants[(0, i, i)] = 1
            constants[(i, 0, i)] = 1
        constants[(0, 0, 0)] = 1
        del constants[(2, 3, 1)], constants[(3, 2, 1)]
        constants[(2, 3, 2)] = constants[(3, 2, 2)] = 1
        ring = FusionRing(["1", "a", "b", "c"], 0, constants)
        report = ring.validate()
        assert not report.associative_ok
        assert not report.passed

    def test_noncommutative_detected(self):
        constants = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
                     (1, 1, 0): 1, (1, 1, 1): 1, (1, 1, 0): 1}
        constants[(1, 0, 1)] = 1
        # break commutativity explicitly: N[0,1]^1 = 1 but N[1,0]^1 = 2
        constants[(1, 0, 1)] = 2
        ring = FusionRing(["1", "t"], 0, constants)
        report = ring.validate()
        assert not report.commutative_ok

    def test_duality_failure_detected(self):
        # Rank 3 where label 1 never reaches the unit.
        constants = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
                     (0, 2, 2): 1, (2, 0, 2): 1,
                     (1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): 1,
                     (2, 2, 0): 1}
        ring = FusionRing(["1", "a", "b"], 0, constants)
        report = ring.validate()
        assert not report.duality_ok

    def test_supplied_dual_cross_checked(self):
        ring = FusionRing(["0", "1", "2"], 0,
                          {(i, j, (i + j) % 3): 1
                           for i in range(3) for j in range(3)},
                          supplied_dual={0: 0, 1: 1, 2: 2})  # wrong: 1' = 2
        assert not ring.validate().duality_ok

    def test_negative_constant_rejected(self):
        with pytest.raises(ValueError):
            FusionRing(["1"], 0, {(0, 0, 0): -1})

    def test_catalog_rings_valid(self, u_datum, vltau_datum):
        assert u_datum.ring.validate().passed
        assert vltau_datum.ring.validate().passed


class TestOperations:
    def test_fibonacci_qdim_golden_ratio(self):
        phi = fibonacci_ring().qdim_pf(1)
        assert abs(phi - 1.6180339887498949) < 1e-10

    def test_unit_qdim_is_one(self):
        assert fibonacci_ring().qdim_pf(0) == pytest.approx(1.0, abs=1e-12)

    def test_duals_of_cyclic_ring(self):
        ring = z_n_ring(5)
        assert ring.dual_vector() == (0, 4, 3, 2, 1)

    def test_fuse_element_string(self):
        ring = fibonacci_ring()
        t = ring.basis_element(1)
        assert str(ring.fuse(t, t)) == "1 + t"

    def test_fuse_bilinear(self):
        ring = fibonacci_ring()
        two_t = ring.element({1: 2})
        out = ring.fuse(two_t, two_t)
        assert out.coefficients == {0: 4, 1: 4}

    def test_simple_currents_cyclic(self):
        assert z_n_ring(4).simple_currents() == {0, 1, 2, 3}
        assert fibonacci_ring().simple_currents() == {0}

    def test_simple_current_fusion_is_bijective(self, u_datum):
        ring = u_datum.ring
        for s in ring.simple_currents():
            mat = ring.tensor[s]
            assert (mat.sum(axis=0) == 1).all()
            assert (mat.sum(axis=1) == 1).all()

    def test_fusion_symmetries(self, u_datum):
        """N_{i,j}^k = N_{j,i}^k and N_{i,j}^k = N_{i,k'}^{j'}."""
        ring = u_datum.ring
        t = ring.tensor
        dual = ring.dual_vector()
        assert np.array_equal(t, t.transpose(1, 0, 2))
        n = ring.rank
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    assert t[i, j, k] == t[i, dual[k], dual[j]]


SAMPLE_FCAT = """
# sample file
category fib
label 0 unit
label 1 tau
unit 0
N 0 0 0 1
N 0 1 1 1
N 1 0 1 1
N 1 1 0 1
N 1 1 1 1
twist 1 2/5
dim 1 1
dim 0 1
twist 0 0/1
"""


class TestFcat:
    def test_parse_sample(self):
        doc = parse_fcat(SAMPLE_FCAT)
        assert doc.name == "fib"
        assert doc.ring.labels == ("unit", "tau")
        assert doc.ring.validate().passed
        assert doc.twists[1] == Fraction(2, 5)
        assert doc.has_modular_annotations

    def test_unknown_directive_errors_with_line(self):
        with pytest.raises(FcatError, match="line 2"):
            parse_fcat("unit 0\nfrobnicate 1 2\n")

    def test_malformed_directive_errors(self):
        with pytest.raises(FcatError, match="line 1"):
            parse_fcat("N 0 zero 0 1\nunit 0\n")

    def test_missing_unit_errors(self):
        with pytest.raises(FcatError, match="unit"):
            parse_fcat("label 0 x\nN 0 0 0 1\n")

    def test_gapped_labels_error(self):
        with pytest.raises(FcatError, match="0..n-1"):
            parse_fcat("label 0 a\nlabel 2 b\nunit 0\nN 0 0 0 1\n")

    def test_round_trip_byte_stable(self):
        doc = parse_fcat(SAMPLE_FCAT)
        emitted = emit_fcat(doc)
        doc2 = parse_fcat(emitted)
        assert emit_fcat(doc2) == emitted
        assert doc2.ring == doc.ring
        assert doc2.twists == doc.twists
        assert doc2.dims == doc.dims

    def test_catalog_round_trip_exact(self, u_datum):
        doc = FcatDocument("U", u_datum.ring,
                           dict(enumerate(u_datum.twists)),
                           dict(enumerate(u_datum.dims)))
        emitted = emit_fcat(doc)
        back = parse_fcat(emitted)
        assert back.ring == u_datum.ring
        assert tuple(back.twists[i] for i in range(20)) == u_datum.twists
        assert emit_fcat(back) == emitted


@st.composite
def random_group_ring(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    return z_n_ring(n)


@settings(max_examples=20, deadline=None)
@given(random_group_ring())
def test_cyclic_rings_always_valid(ring):
    assert ring.validate().passed
    assert all(abs(ring.qdim_pf(i) - 1.0) < 1e-9 for i in range(ring.rank))
    assert ring.simple_currents() == set(range(ring.rank))


@settings(max_examples=20, deadline=None)
@given(random_group_ring())
def test_fcat_round_trip_random(ring):
    doc = FcatDocument("g", ring, {}, {})
    emitted = emit_fcat(doc)
    back = parse_fcat(emitted)
    assert back.ring == ring
    assert emit_fcat(back) == emitted

import numpy as np
import pytest

from wcircle.measure import make_density, uniform_density
from wcircle.metric import (BasisLabel, basis_list, gram,
                            integration_by_parts_inner,
                            metric_discrepancy_report, otto_inner, otto_norm,
                            paper_metric_coefficient)
from wcircle.trigpoly import TrigPoly


def test_gram_uniform_is_diagonal_n_squared_over_two():
    G = gram(uniform_density(), 16)
    labels = G.labels()
    for i, li in enumerate(labels):
        for j, lj in enumerate(labels):
            expected = li.index ** 2 / 2.0 if i == j else 0.0
            assert abs(G.entries[i, j] - expected) < 1e-12


def test_closed_form_coefficient():
    assert paper_metric_coefficient(BasisLabel("cos", 3), BasisLabel("cos", 3)) == 4.5
    assert paper_metric_coefficient(BasisLabel("cos", 3), BasisLabel("sin", 3)) == 0.0
    assert paper_metric_coefficient(BasisLabel("cos", 2), BasisLabel("cos", 3)) == 0.0


def test_quadrature_matches_integration_by_parts():
    mu = make_density(TrigPoly.basis("cos", 2, 0.05))
    worst = 0.0
    for li in basis_list(6):
        for lj in basis_list(6):
            q = otto_inner(mu, li.potential(), lj.potential())
            p = integration_by_parts_inner(mu, li.potential(), lj.potential())
            worst = max(worst, abs(q - p))
    assert worst < 1e-10


def test_discrepancy_report_flags_density_dependence():
    # the closed-form coefficient drops the density, so off-diagonal entries
    # coupled through rho's harmonics must be flagged at non-uniform densities
    mu = make_density(TrigPoly.basis("cos", 2, 0.05))
    report = metric_discrepancy_report(mu, 4)
    flagged = [e for e in report["entries"] if e["diff"] > 1e-10]
    assert report["max_abs"] > 1e-3
    assert flagged
    # ... and none at uniform
    clean = metric_discrepancy_report(uniform_density(), 4)
    assert clean["max_abs"] < 1e-12


def test_basis_list_interleaved():
    labels = [str(l) for l in basis_list(3)]
    assert labels == ["c1", "s1", "c2", "s2", "c3", "s3"]


def test_gram_csv_roundtrip():
    G = gram(uniform_density(), 2)
    lines = G.to_csv().strip().split("\n")
    assert lines[0] == ",c1,s1,c2,s2"
    row = lines[1].split(",")
    assert row[0] == "c1"
    assert float(row[1]) == pytest.approx(0.5, abs=1e-14)


def test_otto_norm_positive_definite():
    mu = make_density(TrigPoly.basis("cos", 1, 0.08))
    for lab in basis_list(4):
        assert otto_norm(mu, lab.potential()) > 0.1

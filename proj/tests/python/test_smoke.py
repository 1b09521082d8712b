import math

import numpy as np
import pytest

import kmsnr


def test_kms_matches_definition():
    a = 0.7 - 0.2j
    j = kmsnr.kms(4, a)
    for r in range(4):
        for c in range(4):
            assert j[r, c] == (a ** (c - r) if c > r else 0)


def test_eigs_against_numpy():
    rng = np.random.default_rng(3)
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = (g + g.conj().T) / 2
    values, vectors = kmsnr.hermitian_eigs(h)
    np.testing.assert_allclose(values, np.linalg.eigvalsh(h), atol=1e-12)
    np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.conj().T, h, atol=1e-11)
    with pytest.raises(kmsnr.Error):
        kmsnr.hermitian_eigs(kmsnr.kms(3, 2.0))


def test_determinant_identity():
    for n in range(2, 8):
        for a in (0.3, 1.0, 1.5):
            m = 2 * ((kmsnr.kms(n, a) + kmsnr.kms(n, a).conj().T) / 2) + np.eye(n)
            assert abs(kmsnr.det(m) - (1 - a * a) ** (n - 1)) <= 1e-8 * max(1, abs((1 - a * a) ** (n - 1)))


def test_support_against_numpy():
    a = kmsnr.kms(5, 1.3 + 0.4j)
    for t in np.linspace(0, 2 * np.pi, 13):
        rot = np.exp(-1j * t) * a
        expected = np.linalg.eigvalsh((rot + rot.conj().T) / 2)[-1]
        assert kmsnr.support(a, t) == pytest.approx(expected, abs=1e-12)


def test_boundary_sample_disc():
    s = kmsnr.boundary_sample(kmsnr.kms(2, 1.0), 8)
    np.testing.assert_allclose(np.abs(s["point"]), 0.5, atol=1e-12)
    np.testing.assert_allclose(s["support"], 0.5, atol=1e-12)


def test_radius_segment_disc():
    assert kmsnr.numerical_radius(kmsnr.jordan(4)) == pytest.approx(math.cos(math.pi / 5), abs=1e-8)
    seg = kmsnr.detect_segment(kmsnr.kms(4, 1.0))
    assert seg["present"]
    assert seg["abscissa"] == pytest.approx(-0.5, abs=1e-7)
    disc = kmsnr.disc_check(kmsnr.kms(2, 3 + 4j))
    assert disc["is_disc"] and disc["radius"] == pytest.approx(2.5, abs=1e-7)
    assert not kmsnr.disc_check(kmsnr.kms(3, 1.5))["is_disc"]


def test_boundary_touch():
    a = kmsnr.kms(3, 2.0)
    t = kmsnr.boundary_touch(a, kmsnr.principal_submatrix(a, 2))
    assert len(t) == 1 and abs(t[0] + 2) < 1e-8
    assert kmsnr.boundary_touch(a, kmsnr.principal_submatrix(a, 1)) == []
    with pytest.raises(IndexError):
        kmsnr.principal_submatrix(a, 4)


def test_kippenhahn():
    p = kmsnr.kipp_coeffs(kmsnr.kms(2, 1.0))
    assert p[(0, 0, 2)] == pytest.approx(1.0)
    assert p[(2, 0, 0)] == pytest.approx(-0.25)
    assert p[(0, 2, 0)] == pytest.approx(-0.25)
    probe = kmsnr.factor_probe(kmsnr.kms(4, 0.5), 360)
    assert probe["summary"] == "no real linear/quadratic factor detected"


def test_sine_roots():
    roots = kmsnr.sine_roots(5, 0.3)
    lam = sorted((((1 - 0.09) / (1 - 0.6 * math.cos(t) + 0.09)) - 1) / 2 for t in roots)
    j = kmsnr.kms(5, 0.3)
    np.testing.assert_allclose(lam, np.linalg.eigvalsh((j + j.conj().T) / 2), atol=1e-9)
    with pytest.raises(ValueError):
        kmsnr.sine_roots(3, 1.5)


def test_verify_report():
    report = kmsnr.verify([2, 3], [0.5, 2.0])
    assert report["results"]
    assert all(r["status"] in ("pass", "skip") for r in report["results"])
    assert set(r["id"] for r in report["results"]) <= set(kmsnr.check_ids())
    assert kmsnr.verify([], [0.5])["results"] == []

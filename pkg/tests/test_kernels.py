"""Backend parity: the compiled kernels and the pure-Python fallback must
produce identical results (bitwise for pure +/* orbits)."""

import math

import numpy as np
import pytest

from foldcore._kernels import fallback

compiled = pytest.importorskip(
    "foldcore._kernels._quad", reason="compiled extension not built")

OVERFLOW = 1e8


def test_backend_reports():
    from foldcore._kernels import BACKEND
    assert BACKEND in ("compiled", "python")


@pytest.mark.parametrize("a,b,r0,steps", [
    (-1.0, 3.9, 0.7, 5000),
    (-1.0, 2.5, 0.3, 2000),
    (2.0, 3.2, -0.4, 3000),
])
def test_orbit_bitwise_parity(a, b, r0, steps):
    vc, sc, fc = compiled.quad_orbit(a, b, r0, steps, OVERFLOW)
    vp, sp, fp = fallback.quad_orbit(a, b, r0, steps, OVERFLOW)
    assert sc == sp and fc == fp
    assert np.array_equal(vc, vp)


def test_orbit_overflow_parity():
    vc, sc, fc = compiled.quad_orbit(-1.0, 3.5, 7.7, 500, OVERFLOW)
    vp, sp, fp = fallback.quad_orbit(-1.0, 3.5, 7.7, 500, OVERFLOW)
    assert sc == sp == compiled.STATUS_OVERFLOW
    assert fc == fp
    assert np.array_equal(vc, vp)


def test_lyapunov_parity():
    lc, sc = compiled.quad_lyapunov(-1.0, 3.9, 0.7, 1000, 50_000, OVERFLOW)
    lp, sp = fallback.quad_lyapunov(-1.0, 3.9, 0.7, 1000, 50_000, OVERFLOW)
    assert sc == sp == compiled.STATUS_OK
    assert lc == pytest.approx(lp, abs=1e-12)


def test_lyapunov_degenerate_status():
    # starting exactly at the critical point makes the first derivative zero
    lc, sc = compiled.quad_lyapunov(-1.0, 3.5, 1.75, 0, 10, OVERFLOW)
    lp, sp = fallback.quad_lyapunov(-1.0, 3.5, 1.75, 0, 10, OVERFLOW)
    assert sc == sp == compiled.STATUS_DEGENERATE


def test_sweep_parity():
    bs = np.arange(2.9, 3.9, 0.01)
    sc, lc, ec = compiled.quad_sweep(-1.0, bs, 300, 50, 400, OVERFLOW)
    sp, lp, ep = fallback.quad_sweep(-1.0, bs, 300, 50, 400, OVERFLOW)
    assert np.array_equal(sc, sp)
    assert np.allclose(lc, lp, atol=1e-12, rtol=0)
    assert np.array_equal(ec, ep)


def test_pair_sep_parity():
    mc, nc, sc = compiled.quad_pair_sep(-1.0, 3.9, 0.7, 1e-10, 20_000, 0.1, OVERFLOW)
    mp, np_, sp = fallback.quad_pair_sep(-1.0, 3.9, 0.7, 1e-10, 20_000, 0.1, OVERFLOW)
    assert sc == sp
    assert mc == mp
    assert (math.isnan(nc) and math.isnan(np_)) or nc == np_


def test_forced_fallback_env(monkeypatch):
    import importlib
    import foldcore._kernels as K

    monkeypatch.setenv("FOLDCORE_PURE_PYTHON", "1")
    mod = importlib.reload(K)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("FOLDCORE_PURE_PYTHON")
        importlib.reload(K)

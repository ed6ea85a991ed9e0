import json
import math

import pytest

import telegraph_lab as tl


def test_interface_params():
    ip = tl.InterfaceParams(0.4, 0.3, 0.4, 0.3)
    assert ip.p0 == pytest.approx(0.3)
    assert ip.gamma_kill == pytest.approx(0.4 * 0.3 * 2 + 0.09)
    with pytest.raises(ValueError, match="p\\+p'>1"):
        tl.InterfaceParams(0.8, 0.3, 0.5, 0.5)


def test_equal_weights_heat_kernel():
    sp = tl.SkewParams(0.5, 0.5)
    heat = math.exp(-0.5**2 / 2) / math.sqrt(2 * math.pi)
    assert tl.gamma_kernel(1.0, 0.2, 0.7, sp) == pytest.approx(heat, rel=1e-14)


def test_eigen_and_det():
    mu, wp, wm = tl.eigen_weights(0.1, 1.0)
    assert mu == pytest.approx(math.sqrt(2.01))
    assert wp * wm == pytest.approx(1.0, abs=1e-14)
    ip = tl.InterfaceParams(0.6, 0.4, 0.4, 0.6)
    assert tl.det_M(0.1, 1.0, ip) == pytest.approx(-0.15177447, abs=1e-8)


def test_evolve_conserves_mass():
    g = tl.Grid(6.0, 240)
    plus = tl.gaussian_cells(g, -1.0, 0.5)
    minus = [0.0] * g.n_cells
    out = tl.evolve(g, plus, minus, tl.InterfaceParams(0.7, 0.3, 0.3, 0.7), 0.2, 0.5)
    mass = (sum(out["plus"]) + sum(out["minus"])) * g.dx
    assert mass + out["edge_outflow"] == pytest.approx(1.0, abs=1e-12)
    assert out["killed"] == 0.0


def test_particle_is_reproducible():
    ip = tl.InterfaceParams(0.4, 0.3, 0.4, 0.3)
    a = tl.simulate_particle(-0.5, 1, 1.0, 0.2, ip, seed=3, particle=17)
    b = tl.simulate_particle(-0.5, 1, 1.0, 0.2, ip, seed=3, particle=17)
    assert a == b


def test_convergence_and_config_errors():
    cfg = {
        "mode": "no_kill_limit",
        "params": {"p": 0.7, "p_prime": 0.3, "q": 0.3, "q_prime": 0.7},
        "epsilons": [0.4, 0.2],
        "grid": {"half_width": 6.0, "n_cells": 240},
    }
    report = tl.run_convergence(json.dumps(cfg))
    assert report["monotone_decay"]
    assert len(report["rows"]) == 2
    assert tl.CONVERGENCE_HEADER.startswith("epsilon,t,")

    cfg["epsilon"] = cfg.pop("epsilons")
    with pytest.raises(ValueError, match="did you mean 'epsilons'"):
        tl.run_convergence(json.dumps(cfg))


def test_kernel_battery():
    cfg = {"params": {"p": 0.7, "p_prime": 0.3, "q": 0.3, "q_prime": 0.7}}
    checks = tl.validate_kernels(json.dumps(cfg))
    assert checks["kernel_normalization"][1]
    assert all(passed for _, passed in checks.values())

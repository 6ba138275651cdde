import numpy as np
import pytest

from epscontact import cauchy as cy
from epscontact.errors import DegenerateParameters, SingularMetric


def flat_data(n=16, alpha_dir=0):
    grid = cy.SurfaceGrid(n, n, 1.0 / n, 1.0 / n)
    q = np.zeros((n, n, 2, 2))
    q[..., 0, 0] = 1.0
    q[..., 1, 1] = 1.0
    alpha = np.zeros((n, n, 2))
    alpha[..., alpha_dir] = 1.0
    return cy.SurfaceData(
        grid, q, np.zeros((n, n, 2, 2)), np.zeros((n, n)), alpha, np.ones((n, n))
    )


def test_flat_torus_constraints_exact_zero():
    res = cy.constraint_residuals(flat_data(), 1, 0.0, 0.0)
    assert res.curl == 0.0
    assert res.norm == 0.0
    assert res.hamiltonian == 0.0
    assert res.momentum == 0.0


def test_epsilon_recovered():
    assert abs(cy.recovered_epsilon(flat_data()) - 1.0) < 1e-14
    iso = cy.example_null_isothermal(cy.isothermal_grid(16, 16), 1.0)
    assert abs(cy.recovered_epsilon(iso)) < 1e-14


def test_randomized_theta_breaks_hamiltonian():
    d = flat_data()
    rng = np.random.default_rng(0)
    theta = rng.normal(size=d.theta.shape, scale=0.1)
    theta = 0.5 * (theta + np.swapaxes(theta, 2, 3))
    perturbed = cy.SurfaceData(d.grid, d.q, theta, d.F, d.alpha, d.beta)
    res = cy.constraint_residuals(perturbed, 1, 0.0, 0.0)
    assert res.hamiltonian > 1e-3


def test_singular_metric_rejected():
    n = 8
    grid = cy.SurfaceGrid(n, n, 1.0 / n, 1.0 / n)
    q = np.zeros((n, n, 2, 2))  # zero metric
    with pytest.raises(SingularMetric):
        cy.SurfaceData(grid, q, np.zeros((n, n, 2, 2)), np.zeros((n, n)),
                       np.zeros((n, n, 2)), np.ones((n, n)))


def test_flat_paracontact_generator_values():
    grid = cy.SurfaceGrid(8, 8, 0.125, 0.125)
    seq = cy.example_flat_paracontact(grid, [0.0, 0.1, 0.2], 1.0, 0.0)
    first = seq.slices[0]
    # alpha components at t = 0 with (l1, l2) = (1, 0): (0, 1), e^{2U} = 1
    assert np.allclose(first.alpha[..., 0], 0.0)
    assert np.allclose(first.alpha[..., 1], 1.0)
    assert np.allclose(first.q[..., 0, 0], 1.0)
    with pytest.raises(DegenerateParameters):
        cy.example_flat_paracontact(grid, [0.0, 0.1, 0.2], 0.0, 0.0)


def test_flat_paracontact_constraints_and_static_case():
    grid = cy.SurfaceGrid(8, 8, 0.125, 0.125)
    seq = cy.example_flat_paracontact(grid, np.linspace(0, 0.2, 5), 1.0, 0.5)
    for s in seq.slices:
        res = cy.constraint_residuals(s, 1, 0.0, 0.0)
        assert res.max_residual() < 1e-13
    # static flat slices with vanishing alpha: both evolution residuals ~ 0
    # (the alpha-flow equation forces rotation for any nonzero alpha)
    n = 8
    g0 = cy.SurfaceGrid(n, n, 1.0 / n, 1.0 / n)
    q = np.zeros((n, n, 2, 2))
    q[..., 0, 0] = 1.0
    q[..., 1, 1] = 1.0
    zero_slice = cy.SurfaceData(g0, q, np.zeros((n, n, 2, 2)), np.zeros((n, n)),
                                np.zeros((n, n, 2)), np.ones((n, n)))
    static = cy.SurfaceSequence(tuple([zero_slice] * 3), 0.1)
    evo = cy.evolution_residuals(static, 1, 0.0, 0.0)
    assert evo.alpha_flow < 1e-13 and evo.ricci_flow < 1e-13


def test_flat_paracontact_evolution_second_order_in_time():
    resids = []
    for factor in (1, 2):
        n = 8
        steps = 8 * factor + 1
        dt = 0.1 / factor
        grid = cy.SurfaceGrid(n, n, 1.0 / n, 1.0 / n)
        seq = cy.example_flat_paracontact(grid, [k * dt for k in range(steps)], 1.0, 0.5)
        evo = cy.evolution_residuals(seq, 1, 0.0, 0.0)
        assert evo.ricci_flow < 1e-12
        resids.append(evo.alpha_flow)
    assert resids[0] / resids[1] >= 3.5


def test_flipped_alpha_detected():
    grid = cy.SurfaceGrid(8, 8, 0.125, 0.125)
    seq = cy.example_flat_paracontact(grid, np.linspace(0, 0.4, 5), 1.0, 0.5)
    flipped = []
    for s in seq.slices:
        alpha = s.alpha.copy()
        alpha[..., 1] *= -1.0
        flipped.append(cy.SurfaceData(s.grid, s.q, s.theta, s.F, alpha, s.beta))
    evo = cy.evolution_residuals(cy.SurfaceSequence(tuple(flipped), seq.dt), 1, 0.0, 0.0)
    assert evo.alpha_flow > 0.5  # O(1) failure


def test_null_isothermal_residuals_and_convergence():
    curls = []
    for n in (32, 64):
        data = cy.example_null_isothermal(cy.isothermal_grid(n, n), 1.0)
        res = cy.constraint_residuals(data, 0, 0.0, 0.0)
        assert res.norm < 1e-13      # exact by construction
        assert res.hamiltonian < 1e-13
        assert res.momentum < 1e-13
        curls.append(res.curl)
    assert curls[0] > 1e-5  # discretization error present
    assert curls[0] / curls[1] >= 3.5  # second-order convergence


def test_null_isothermal_f0_zero_exact():
    data = cy.example_null_isothermal(cy.isothermal_grid(32, 32), 0.0)
    res = cy.constraint_residuals(data, 0, 0.0, 0.0)
    assert res.curl == 0.0  # constant alpha is closed exactly


def test_curvature_stencil_on_curved_metric():
    # conformally flat metric with known scalar curvature:
    # q = e^{2u} Id with u = a sin(2 pi x) sin(2 pi y) has R = -2 e^{-2u} Lap(u)
    for n, record in ((32, True), (64, False)):
        grid = cy.SurfaceGrid(n, n, 1.0 / n, 1.0 / n)
        x, y = grid.x, grid.y
        u = 0.05 * np.sin(2 * np.pi * x) * np.sin(2 * np.pi * y)
        lap_u = -2.0 * (2 * np.pi) ** 2 * u
        q = np.zeros((n, n, 2, 2))
        q[..., 0, 0] = np.exp(2 * u)
        q[..., 1, 1] = np.exp(2 * u)
        d = cy.SurfaceData(grid, q, np.zeros((n, n, 2, 2)), np.zeros((n, n)),
                           np.zeros((n, n, 2)), np.ones((n, n)))
        r_exact = -2.0 * np.exp(-2 * u) * lap_u
        err = float(np.max(np.abs(cy.scalar_curvature(d) - r_exact)))
        if record:
            err32 = err
        else:
            assert err32 / err >= 3.5  # second-order stencils


def curved_metric_data(n, theta_mode="zero"):
    grid = cy.SurfaceGrid(n, n, 1.0 / n, 1.0 / n)
    x, y = grid.x, grid.y
    u = 0.08 * np.sin(2 * np.pi * x) * np.cos(2 * np.pi * y)
    q = np.zeros((n, n, 2, 2))
    q[..., 0, 0] = np.exp(2 * u)
    q[..., 1, 1] = np.exp(2 * u) * (1.0 + 0.1 * np.sin(2 * np.pi * y))
    q[..., 0, 1] = 0.05 * np.sin(2 * np.pi * (x + y))
    q[..., 1, 0] = q[..., 0, 1]
    if theta_mode == "metric":
        theta = q.copy()
    elif theta_mode == "random":
        rng = np.random.default_rng(5)
        theta = rng.normal(size=(n, n, 2, 2), scale=0.2)
        theta = 0.5 * (theta + np.swapaxes(theta, 2, 3))
    else:
        theta = np.zeros((n, n, 2, 2))
    return cy.SurfaceData(grid, q, theta, np.zeros((n, n)), np.zeros((n, n, 2)),
                          np.ones((n, n)))


def test_momentum_constraint_metric_theta_exact():
    # Theta = q: nabla q = 0 holds exactly even for the discrete Christoffels
    # (they are built from the same finite differences), and Tr_q(q) = 2 is
    # constant, so the momentum residual vanishes identically
    d = curved_metric_data(16, theta_mode="metric")
    res = cy.constraint_residuals(d, 0, 0.0, 0.0)
    assert res.momentum < 1e-12


def test_divergence_matches_brute_force_loops():
    # independent oracle: per-node loops over explicit index sums
    d = curved_metric_data(8, theta_mode="random")
    grid = d.grid
    gamma = cy.christoffel(d)
    dtheta = np.stack(
        [
            cy._d1(d.theta, 0, grid.hx, grid.periodic_x),
            cy._d1(d.theta, 1, grid.hy, grid.periodic_y),
        ],
        axis=2,
    )
    inv = d.inv_q()
    brute = np.zeros((8, 8, 2))
    for ix in range(8):
        for iy in range(8):
            for j in range(2):
                total = 0.0
                for m in range(2):
                    for i in range(2):
                        cov = dtheta[ix, iy, m, i, j]
                        for k in range(2):
                            cov -= gamma[ix, iy, k, m, i] * d.theta[ix, iy, k, j]
                            cov -= gamma[ix, iy, k, m, j] * d.theta[ix, iy, i, k]
                        total += inv[ix, iy, m, i] * cov
                brute[ix, iy, j] = total
    # recompute the library value by reusing the residual with kappa = 0 and
    # subtracting the gradient of the trace
    tr = np.einsum("xyij,xyij->xy", inv, d.theta)
    r4_field = cy._grad(tr, grid) + brute
    res = cy.constraint_residuals(d, 0, 0.0, 0.0)
    assert abs(res.momentum - float(np.max(np.abs(r4_field)))) < 1e-12


def test_scalar_curvature_matches_brute_force_loops():
    d = curved_metric_data(8)
    grid = d.grid
    gamma = cy.christoffel(d)
    dgamma = np.stack(
        [
            cy._d1(gamma, 0, grid.hx, grid.periodic_x),
            cy._d1(gamma, 1, grid.hy, grid.periodic_y),
        ],
        axis=2,
    )
    inv = d.inv_q()
    brute = np.zeros((8, 8))
    for ix in range(8):
        for iy in range(8):
            total = 0.0
            for k in range(2):
                for j in range(2):
                    ric_kj = 0.0
                    for l in range(2):
                        ric_kj += dgamma[ix, iy, l, l, j, k] - dgamma[ix, iy, j, l, l, k]
                        for m in range(2):
                            ric_kj += (
                                gamma[ix, iy, l, l, m] * gamma[ix, iy, m, j, k]
                                - gamma[ix, iy, l, j, m] * gamma[ix, iy, m, l, k]
                            )
                    total += inv[ix, iy, k, j] * ric_kj
            brute[ix, iy] = total
    assert np.allclose(cy.scalar_curvature(d), brute, atol=1e-12)


def test_surface_json_roundtrip():
    data = cy.example_null_isothermal(cy.isothermal_grid(8, 8), 0.5)
    back = cy.surface_from_json(cy.surface_to_json(data))
    assert back.grid == data.grid
    for name in ("q", "theta", "F", "alpha", "beta"):
        assert np.allclose(getattr(back, name), getattr(data, name))
    r1 = cy.constraint_residuals(data, 0, 0.0, 0.0)
    r2 = cy.constraint_residuals(back, 0, 0.0, 0.0)
    assert r1 == r2


def test_sequence_validation():
    grid = cy.SurfaceGrid(8, 8, 0.125, 0.125)
    with pytest.raises(ValueError, match="three time slices"):
        cy.SurfaceSequence(tuple([flat_data(8)] * 2), 0.1)
    with pytest.raises(ValueError, match="uniformly spaced"):
        cy.example_flat_paracontact(grid, [0.0, 0.1, 0.3], 1.0, 0.0)

"""
Verification suites binding the numerical modules together

Each suite is a plain function returning a list of CheckResult. Sampling
uses numpy's default_rng seeded from the configuration, so identical
configurations give identical reports.
"""
import logging
import math
from typing import Callable, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from config import settings
from src.circular.polylog import (
    boundary_constants,
    circular_master,
    cl_component,
    clausen_cl2,
    i_power,
    polylog_partial_sum,
    polylog_unit_circle,
    sl_component,
    zeta_value,
)
from src.generating.series import GeneratingSlice, clsl_residuals, eval_generating, generating_clsl, generating_residual
from src.hierarchy.quadrature import path_integrate
from src.hierarchy.seeds import Seed, seed_log
from src.hierarchy.tower import (
    build_tower,
    cl_tower,
    eval_tower,
    polylog_to_circular_shift,
    polylog_tower_at_circular_scale,
    reconcile_polylog_tower,
    singular_part,
    sl_tower,
    tower_to_circular_shift,
)
from src.phase.paths import PathSpec
from src.phase.unwrap import nodal_jump, phase_increment, sl_order2, sl_seed, unwrap_phase, winding_number
from src.theta.jacobi import (
    TauParameter,
    degeneration_error,
    lattice_distance,
    theta1_log_derivative,
    theta1_prime_zero,
    theta1_product,
    theta1_series,
)
from src.utils.errors import ConfigError
from src.verification.fitting import log_log_points, slope_fit
from src.verification.report import CheckResult, SuiteReport

logger = logging.getLogger(__name__)

CATALAN = 0.915965594177219015


class SuiteConfig(BaseModel):
    """Sample sizes, grids and bounds shared by the suites"""

    model_config = ConfigDict(frozen=True, extra='forbid')

    seed: int = settings.SUITE_SEED
    theta_samples: int = Field(default=200, ge=1)
    quasi_samples: int = Field(default=100, ge=1)
    grid_points: int = Field(default=50, ge=3)
    max_order: int = Field(default=4, ge=2, le=8)
    fd_step: float = Field(default=1e-4, gt=0)
    theta_rel_bound: float = Field(default=1e-12, gt=0)
    quasi_rel_bound: float = Field(default=1e-10, gt=0)
    fd_bound: float = Field(default=1e-6, gt=0)
    tower_bound: float = Field(default=1e-8, gt=0)
    reconcile_bound: float = Field(default=1e-9, gt=0)
    slope_tolerance: float = Field(default=0.1, gt=0)
    sl_slope_tolerance: float = Field(default=0.15, gt=0)
    elliptic_tau_re: float = 0.3
    elliptic_tau_im: float = Field(default=1.5, ge=0.5)

    @property
    def elliptic_tau(self) -> complex:
        return complex(self.elliptic_tau_re, self.elliptic_tau_im)


def _config(config: Union[SuiteConfig, Dict, None]) -> SuiteConfig:
    if config is None:
        return SuiteConfig()
    if isinstance(config, SuiteConfig):
        return config
    try:
        return SuiteConfig(**config)
    except ValidationError as e:
        raise ConfigError(f"malformed suite configuration: {e}") from e


def _relative(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), np.finfo(float).tiny)))


def _central_difference(func, x, h):
    return (func(x + h) - func(x - h)) / (2.0 * h)


def _seeds(config: SuiteConfig):
    return [
        ('polylog', Seed.polylog()),
        ('circular', Seed.circular()),
        ('elliptic', Seed.elliptic(TauParameter(config.elliptic_tau))),
    ]


def _interior_grid(seed: Seed, count: int, lo: float = 0.1, hi: float = 0.9) -> np.ndarray:
    """Interior points scaled to the seed's period"""
    return seed.period * np.linspace(lo, hi, count)


def theta_cross_suite(config: SuiteConfig) -> List[CheckResult]:
    """Series against product θ₁, the value θ₁′(0) and the lattice identities"""
    rng = np.random.default_rng(config.seed)
    series_err, prime_err, odd_err = 0.0, 0.0, 0.0
    for _ in range(config.theta_samples):
        tau = TauParameter(complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 3.0)))
        while True:
            z = complex(rng.uniform(0.0, 1.0), rng.uniform(-0.5, 0.5))
            if lattice_distance(z, tau) >= 0.05:
                break
        series = theta1_series(z, tau)
        series_err = max(series_err, _relative(theta1_product(z, tau), series))
        odd_err = max(odd_err, _relative(-theta1_series(-z, tau), series))
        prime_err = max(prime_err, _relative(theta1_prime_zero(tau, method='product'), theta1_prime_zero(tau)))

    period_err, quasi_err = 0.0, 0.0
    for _ in range(config.quasi_samples):
        tau = TauParameter(complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 3.0)))
        while True:
            z = complex(rng.uniform(0.0, 1.0), rng.uniform(-0.5, 0.5))
            if lattice_distance(z, tau) >= 0.05:
                break
        base = theta1_series(z, tau)
        period_err = max(period_err, _relative(theta1_series(z + 1.0, tau), -base))
        factor = -np.exp(-1j * np.pi * tau.tau - 2j * np.pi * z)
        quasi_err = max(quasi_err, _relative(theta1_series(z + tau.tau, tau), factor * base))

    return [
        CheckResult.upper('series-vs-product', series_err, config.theta_rel_bound),
        CheckResult.upper('prime-zero-series-vs-product', prime_err, config.theta_rel_bound),
        CheckResult.upper('oddness', odd_err, config.theta_rel_bound),
        CheckResult.upper('period-one', period_err, config.quasi_rel_bound),
        CheckResult.upper('quasi-period-tau', quasi_err, config.quasi_rel_bound),
    ]


def backbone_suite(config: SuiteConfig) -> List[CheckResult]:
    """Finite-difference backbone, base point values and local expansions"""
    checks = []
    h = config.fd_step
    top = config.max_order + 1
    for name, seed in _seeds(config):
        tower = build_tower(seed, top)
        grid = _interior_grid(seed, config.grid_points)
        worst_f, worst_a, worst_b = 0.0, 0.0, 0.0
        for n in range(1, top):
            fd = _central_difference(lambda x: eval_tower(tower, n + 1, x), grid, h)
            worst_f = max(worst_f, float(np.max(np.abs(fd - eval_tower(tower, n, grid)))))
            fd_a = _central_difference(lambda x: cl_tower(tower, n + 1, x), grid, h)
            worst_a = max(worst_a, float(np.max(np.abs(fd_a - cl_tower(tower, n, grid)))))
            fd_b = _central_difference(lambda x: sl_tower(tower, n + 1, x), grid, h)
            worst_b = max(worst_b, float(np.max(np.abs(fd_b - sl_tower(tower, n, grid)))))
        base = max(abs(eval_tower(tower, n, 0.0)) for n in range(2, top + 1))
        checks += [
            CheckResult.upper(f'{name}-fd-backbone', worst_f, config.fd_bound),
            CheckResult.upper(f'{name}-fd-cl', worst_a, 2.0 * config.fd_bound),
            CheckResult.upper(f'{name}-fd-sl', worst_b, 2.0 * config.fd_bound),
            CheckResult.upper(f'{name}-base-point', base, 1e-12),
            CheckResult.upper(f'{name}-interpolation', tower.interpolation_error, 1e-10),
        ]
        if name != 'polylog':
            z = np.logspace(-3, -1, 9)
            remainder = eval_tower(tower, 2, z) - singular_part(2, z) - z * np.log(seed.S_prime_0)
            slope = slope_fit(log_log_points(z, np.abs(remainder)))[0]
            checks.append(CheckResult.lower(f'{name}-local-expansion-slope', slope, 2.9))

    # L_{n+1}' = L_n, five-point stencil away from the origin
    x = np.linspace(0.5, 0.9, 9)
    step = 1e-3
    ladder = 0.0
    for n in range(1, top):
        def level(t):
            return singular_part(n + 1, t)
        fd = (level(x - 2 * step) - 8 * level(x - step) + 8 * level(x + step) - level(x + 2 * step)) / (12 * step)
        ladder = max(ladder, float(np.max(np.abs(fd - singular_part(n, x)))))
    checks.append(CheckResult.upper('singular-ladder', ladder, 1e-10))

    tau = TauParameter(1j)
    for label, t in (('elliptic-i', tau), ('elliptic', TauParameter(config.elliptic_tau))):
        tower = build_tower(Seed.elliptic(t), 2)
        z = np.logspace(-3, -1, 9)
        deviation = np.abs(eval_tower(tower, 2, z) - (z * np.log(z) - z))
        slope = slope_fit(log_log_points(z, deviation))[0]
        checks.append(CheckResult.lower(f'{label}-second-order-slope', slope, 2.9))
    return checks


def degeneration_suite(config: SuiteConfig) -> List[CheckResult]:
    """Trigonometric limit of θ̃₁, of the seed and of whole towers"""
    grid = np.linspace(0.1, 0.9, config.grid_points)
    tau4 = TauParameter(4j)
    heights = (2.0, 2.5, 3.0, 3.5)
    errors = [degeneration_error(grid, TauParameter(1j * y)) for y in heights]
    log_q = [TauParameter(1j * y).log_q_abs for y in heights]
    slope = slope_fit(zip(log_q, np.log(errors)))[0]

    elliptic = build_tower(Seed.elliptic(tau4), config.max_order)
    circular = build_tower(Seed.circular(), config.max_order)
    x = np.linspace(0.05, 0.95, config.grid_points)
    tower_err = 0.0
    for n in range(1, config.max_order + 1):
        shifted = eval_tower(circular, n, x) - tower_to_circular_shift(n, x)
        tower_err = max(tower_err, float(np.max(np.abs(eval_tower(elliptic, n, x) - shifted))))

    seed_err = abs(seed_log(Seed.elliptic(tau4), 0.5) + math.log(math.pi))
    cl_err = float(np.max(np.abs(cl_tower(elliptic, 1, grid) - 2.0 * np.log(np.sin(np.pi * grid) / np.pi))))

    # polylog regime at θ = 2πx against the circular regime
    phase_term = seed_log(Seed.polylog(), 2.0 * np.pi * x) - seed_log(Seed.circular(), x)
    seed_bridge = float(np.max(np.abs(phase_term - 1j * np.pi * (x - 0.5))))
    polylog = build_tower(Seed.polylog(), config.max_order)
    tower_bridge = 0.0
    for n in range(1, config.max_order + 1):
        rescaled = polylog_tower_at_circular_scale(polylog, n, x)
        expected = eval_tower(circular, n, x) + polylog_to_circular_shift(n, x)
        tower_bridge = max(tower_bridge, float(np.max(np.abs(rescaled - expected))))
    return [
        CheckResult.upper('theta-sup-error-im-tau-4', degeneration_error(grid, tau4), 1e-9),
        CheckResult.upper('theta-error-slope', abs(slope - 2.0), config.slope_tolerance),
        CheckResult.upper('seed-log-limit', seed_err, 1e-9),
        CheckResult.upper('cl-level-1-limit', cl_err, config.tower_bound),
        CheckResult.upper('tower-limit', tower_err, config.tower_bound),
        CheckResult.upper('polylog-circular-seed', seed_bridge, 1e-12),
        CheckResult.upper('polylog-circular-tower', tower_bridge, config.tower_bound),
    ]


def boundary_suite(config: SuiteConfig) -> List[CheckResult]:
    """Boundary constants and the reconciliation of the polylog tower"""
    seed = Seed.polylog()
    tower = build_tower(seed, 4)
    theta = _interior_grid(seed, 21, 0.08, 0.88)
    checks = [
        CheckResult.upper(f'reconcile-n{n}', reconcile_polylog_tower(tower, n, theta), config.reconcile_bound)
        for n in (2, 3, 4)
    ]
    control = reconcile_polylog_tower(tower, 2, theta, drop_constants=(2,))
    checks.append(CheckResult.upper('negative-control-zeta2', abs(control - zeta_value(2)), 1e-3))
    for n in (2, 3, 4, 5):
        constants = boundary_constants(n)
        partial, tail = polylog_partial_sum(n, 0.0, 100000)
        direct = i_power(-n) * partial
        deviation = abs(constants.master_value - direct)
        checks.append(CheckResult.upper(f'boundary-constant-n{n}', deviation, tail + 1e-12))
    checks.append(CheckResult.upper('zeta2', abs(zeta_value(2) - math.pi ** 2 / 6.0), 1e-14))
    return checks


def phase_suite(config: SuiteConfig) -> List[CheckResult]:
    """Phase derivative identity, winding numbers, nodal jumps and SL collapse"""
    tau = TauParameter(config.elliptic_tau)
    real_path = PathSpec.segment(0.1, 0.9)
    profile = unwrap_phase(tau, real_path)
    s = np.linspace(0.05, 0.75, config.grid_points)
    fd = (profile.arg_at(s + 1e-5) - profile.arg_at(s - 1e-5)) / 2e-5
    identity = float(np.max(np.abs(fd - np.imag(theta1_log_derivative(0.1 + s, tau)))))

    flat = unwrap_phase(TauParameter(2j), real_path)
    around_zero = phase_increment(TauParameter(1j), PathSpec.circle(0.0, 0.2))
    tau_12 = TauParameter(1.2j)
    around_tau = phase_increment(tau_12, PathSpec.circle(tau_12.tau, 0.2))
    jump = nodal_jump(TauParameter(1j), 1.0, 1e-3)

    order2 = sl_order2(tau, 0.4)
    tower = build_tower(Seed.elliptic(tau), 2)
    order2_err = abs(order2 - sl_tower(tower, 2, 0.4))

    loop = PathSpec.rectangle(0.2 + 0.1j, 0.5, 0.4)
    reversal = abs(phase_increment(tau, loop) + phase_increment(tau, loop.reversed()))
    first, second = PathSpec.segment(0.2, 0.6 + 0.3j), PathSpec.segment(0.6 + 0.3j, 0.8)
    additivity = abs(
        phase_increment(tau, first.concatenated(second))
        - phase_increment(tau, first) - phase_increment(tau, second)
    )

    heights = (1.5, 2.0, 2.5, 3.0)
    x = np.linspace(0.1, 0.9, 33)
    taus = [TauParameter(complex(0.3, y)) for y in heights]
    seed_sup = [float(np.max(np.abs(sl_seed(t, x)))) for t in taus]
    order2_sup = [max(abs(sl_order2(t, xi)) for xi in (0.2, 0.4, 0.6, 0.8)) for t in taus]
    log_q = [t.log_q_abs for t in taus]
    seed_slope = slope_fit(zip(log_q, np.log(seed_sup)))[0]
    order2_slope = slope_fit(zip(log_q, np.log(order2_sup)))[0]

    return [
        CheckResult.upper('arg-derivative-identity', identity, 1e-6),
        CheckResult.upper('imaginary-tau-zero-phase', float(np.max(np.abs(flat.unwrapped_arg))), 1e-12),
        CheckResult.upper('winding-increment-0', abs(around_zero - 2.0 * math.pi), 1e-8),
        CheckResult.upper('winding-increment-tau', abs(around_tau - 2.0 * math.pi), 1e-8),
        CheckResult.upper('winding-number-0', abs(winding_number(TauParameter(1j), 0.0, 0.2) - 1), 0.0),
        CheckResult.upper('winding-number-half', abs(winding_number(TauParameter(1j), 0.5, 0.1)), 0.0),
        CheckResult.upper('nodal-jump', abs(abs(jump) - math.pi), 0.05),
        CheckResult.upper('sl-order2-vs-tower', order2_err, config.tower_bound),
        CheckResult.upper('reversal-antisymmetry', reversal, 1e-10),
        CheckResult.upper('increment-additivity', additivity, 1e-10),
        CheckResult.upper('sl-seed-collapse-slope', abs(seed_slope - 2.0), config.sl_slope_tolerance),
        CheckResult.upper('sl-order2-collapse-slope', abs(order2_slope - 2.0), config.sl_slope_tolerance),
    ]


def generating_suite(config: SuiteConfig) -> List[CheckResult]:
    """Corrected truncation identity, its projections and the uncorrected control"""
    checks = []
    top = min(config.max_order + 1, 5)
    w_grid = np.linspace(0.25, 0.75, 5)
    lambdas = (0.0, 0.5, 1.0, -1.0, complex(0.3, 0.4))
    for name, seed in _seeds(config):
        tower = build_tower(seed, top)
        worst, worst_clsl, reconstruction = 0.0, 0.0, 0.0
        for N in range(1, top + 1):
            for lam in lambdas:
                slice_ = GeneratingSlice(tower, N, lam)
                for w in w_grid:
                    worst = max(worst, abs(generating_residual(slice_, w, config.fd_step)))
                    if slice_.is_real:
                        res = clsl_residuals(slice_, w, config.fd_step)
                        worst_clsl = max(worst_clsl, abs(res.a_corrected), abs(res.b_corrected))
                        a_series, b_series = generating_clsl(slice_, w)
                        rebuilt = 0.5 * a_series - 0.5j * b_series
                        reconstruction = max(reconstruction, abs(rebuilt - eval_generating(slice_, w)))
        control = abs(generating_residual(GeneratingSlice(tower, top, 0.5), 0.3, config.fd_step, uncorrected=True))
        checks += [
            CheckResult.upper(f'{name}-truncation-identity', worst, config.fd_bound),
            CheckResult.upper(f'{name}-clsl-identity', worst_clsl, 2.0 * config.fd_bound),
            CheckResult.upper(f'{name}-clsl-reconstruction', reconstruction, 1e-12),
            CheckResult.lower(f'{name}-uncorrected-control', control, 0.1),
        ]
    return checks


def clausen_values_suite(config: SuiteConfig) -> List[CheckResult]:
    """Closed forms of the circular components, their backbone and the Clausen integral"""
    theta = np.linspace(0.1, 2.0 * math.pi - 0.1, config.grid_points)
    a1 = float(np.max(np.abs(cl_component(1, theta) - (math.pi - theta))))
    b1 = float(np.max(np.abs(sl_component(1, theta) + 2.0 * np.log(2.0 * np.sin(0.5 * theta)))))
    a2 = abs(cl_component(2, 0.0) + math.pi ** 2 / 3.0)
    catalan = abs(sl_component(2, 0.5 * math.pi) - 2.0 * CATALAN)

    oracle = 0.0
    for t in (0.3, 1.0, 2.5):
        partial, tail = polylog_partial_sum(3, t, 20000)
        oracle = max(oracle, abs(polylog_unit_circle(3, t) - partial) - tail)

    circular = build_tower(Seed.circular(), 2)
    x = np.linspace(0.05, 0.95, config.grid_points)
    clausen_err = float(np.max(np.abs(eval_tower(circular, 2, x) + clausen_cl2(2.0 * np.pi * x) / (2.0 * np.pi))))
    half = abs(path_integrate(Seed.circular(), PathSpec.segment(0.0, 0.5), 1, tol=1e-11))

    # circular backbone F_{n+1}' = F_n with its CL/SL parallel recursions
    h = config.fd_step
    worst_f = worst_a = worst_b = 0.0
    for n in range(1, config.max_order):
        fd = _central_difference(lambda t: circular_master(n + 1, t), theta, h)
        worst_f = max(worst_f, float(np.max(np.abs(fd - circular_master(n, theta)))))
        fd_a = _central_difference(lambda t: cl_component(n + 1, t), theta, h)
        worst_a = max(worst_a, float(np.max(np.abs(fd_a - cl_component(n, theta)))))
        fd_b = _central_difference(lambda t: sl_component(n + 1, t), theta, h)
        worst_b = max(worst_b, float(np.max(np.abs(fd_b - sl_component(n, theta)))))
    mirror = max(
        float(np.max(np.abs(polylog_unit_circle(n, 2.0 * np.pi - theta) - np.conj(polylog_unit_circle(n, theta)))))
        for n in range(2, config.max_order + 1)
    )
    return [
        CheckResult.upper('A1-closed-form', a1, 1e-10),
        CheckResult.upper('B1-closed-form', b1, 1e-10),
        CheckResult.upper('A2-at-zero', a2, 1e-10),
        CheckResult.upper('B2-catalan', catalan, 1e-8),
        CheckResult.upper('Li3-vs-partial-sum', max(oracle, 0.0), 1e-12),
        CheckResult.upper('clausen-integral', clausen_err, config.tower_bound),
        CheckResult.upper('clausen-integral-half', half, 1e-9),
        CheckResult.upper('circular-fd-backbone', worst_f, config.fd_bound),
        CheckResult.upper('circular-fd-cl', worst_a, 2.0 * config.fd_bound),
        CheckResult.upper('circular-fd-sl', worst_b, 2.0 * config.fd_bound),
        CheckResult.upper('conjugate-symmetry', mirror, 1e-12),
    ]


SUITES: Dict[str, Callable[[SuiteConfig], List[CheckResult]]] = {
    'theta-cross': theta_cross_suite,
    'backbone': backbone_suite,
    'degeneration': degeneration_suite,
    'boundary': boundary_suite,
    'phase': phase_suite,
    'generating': generating_suite,
    'clausen-values': clausen_values_suite,
}

SUITE_NAMES = tuple(SUITES)


def run_suite(name: str, config: Union[SuiteConfig, Dict, None] = None) -> SuiteReport:
    """
    Run one named suite

    Args:
        name: One of SUITE_NAMES
        config: SuiteConfig or a dict of its fields

    Returns:
        SuiteReport with every check's measured value and bound

    Raises:
        ConfigError: for unknown suites or malformed configuration
    """
    if name not in SUITES:
        raise ConfigError(f"unknown suite '{name}', expected one of {', '.join(SUITE_NAMES)}")
    config = _config(config)
    logger.info("Running suite %s", name)
    report = SuiteReport(suite_name=name, checks=SUITES[name](config))
    logger.info(report.summary())
    return report


def run_all(config: Optional[SuiteConfig] = None) -> List[SuiteReport]:
    """Run every suite in declared order"""
    return [run_suite(name, config) for name in SUITE_NAMES]

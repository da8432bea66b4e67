"""Antenna-position optimizer: Dinkelbach outer loop around an SCA inner loop.

The efficiency ratio is non-concave in the position because the gain is an
oscillatory cosine series. The ratio is first reduced to a parametric
difference through the Dinkelbach variable alpha. The remaining
non-convexities are handled per iteration with two surrogates built at the
current iterate: an AM-GM quadratic upper bound on the product of the
travel-distance and rate slacks, and quadratic Taylor bounds on the scaled
gain whose curvature constant dominates its second derivative everywhere.

For a fixed position the three slack variables then have closed-form optima
(the rate term grows with the gain slack so its Taylor cap binds; the
objective shrinks with the travel and rate slacks so the distance constraint
and the linearized rate constraint bind). Each convex subproblem therefore
collapses to a one-dimensional concave search over a trust window around the
current iterate, solved by a scan plus golden polish. The window always
contains the iterate itself, which makes the surrogate objective sequence
nondecreasing by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import channel, ee, search
from .params import SystemParams

DELTA_FLOOR_WAVELENGTHS = 1e-6   # keeps the AM-GM coefficients finite at zero travel
GAMMA_FLOOR = 1e-12              # bits/Hz floor for the rate-slack local point
TRUST_WINDOW_WAVELENGTHS = 0.25  # half-width of the subproblem search window
FEASIBILITY_SLACK = 1e-9         # absolute slack on the throughput constraint
_SCAN_POINTS = 65


@dataclass
class SolverState:
    """One accepted iterate of the position, slacks, and ratio estimate."""

    iteration: int
    x: float
    beta: float       # scaled-gain slack (W)
    gamma: float      # rate slack (bits/Hz per unit time)
    delta: float      # travel-distance slack (m)
    alpha: float      # current efficiency estimate ((bits/Hz)/J)
    objective: float  # surrogate objective value at this iterate
    converged: bool = False


@dataclass
class SolverReport:
    """Outcome of one optimizer run.

    The reported efficiency is recomputed from scratch at the final position,
    never read off a surrogate. trace rows are
    (iteration, x, alpha, surrogate objective, true efficiency), one per
    outer iteration including the start.
    """

    x: float
    ee: float
    iterations: int
    trace: list[tuple[int, float, float, float, float]] = field(default_factory=list)
    status: str = "converged"  # converged | iteration-cap | infeasible
    power_assumption_violated: bool = False


def h_of_x(expansion: channel.GainExpansion, params: SystemParams, x) -> float | np.ndarray:
    """Transmit-power-scaled channel gain."""
    return params.max_tx_power * channel.gain_eval(expansion, x)


def dinkelbach_update(x: float, expansion: channel.GainExpansion,
                      params: SystemParams) -> float:
    """Refresh the ratio estimate: achievable rate over total energy at x."""
    gain = max(channel.gain_eval(expansion, x), 0.0)
    dist = abs(x - params.initial_position)
    time_left = params.block_duration - dist / params.speed
    if time_left < 0:
        raise ValueError(f"position {x} not reachable within the block")
    rate = time_left * math.log2(1.0 + params.max_tx_power * gain / params.noise_power)
    energy = params.move_energy_rate * dist + params.max_tx_power * time_left
    return rate / energy


def bilinear_upper(delta, gamma, delta_local: float, gamma_local: float):
    """AM-GM quadratic upper bound on the product delta * gamma.

    Exact at the local point (delta_local, gamma_local) and convex in both
    arguments; every argument may be an array.
    """
    if np.any(np.asarray(delta_local) <= 0) or np.any(np.asarray(gamma_local) <= 0):
        raise ValueError("local points must be positive")
    return 0.5 * (gamma_local / delta_local * delta * delta
                  + delta_local / gamma_local * gamma * gamma)


@dataclass(frozen=True)
class QuadraticBound:
    """value + slope*(x - center) + half_curvature*(x - center)^2."""

    center: float
    value: float
    slope: float
    half_curvature: float

    def __call__(self, x):
        dx = np.asarray(x, dtype=float) - self.center
        out = self.value + self.slope * dx + self.half_curvature * dx * dx
        return float(out) if out.ndim == 0 else out


def taylor_bounds(expansion: channel.GainExpansion, params: SystemParams,
                  x_local: float) -> tuple[QuadraticBound, QuadraticBound]:
    """Quadratic sandwich of the scaled gain around x_local.

    Both bounds share the value and slope at x_local; the curvature constant
    dominates the true second derivative everywhere, so lower <= h <= upper
    holds on the whole region, merely loosening with distance from x_local.
    """
    tx = params.max_tx_power
    value = float(h_of_x(expansion, params, x_local))
    slope = float(channel.gain_derivative(expansion, tx, x_local))
    half = 0.5 * channel.curvature_bound(expansion, tx)
    return (QuadraticBound(x_local, value, slope, -half),
            QuadraticBound(x_local, value, slope, +half))


def _floored_locals(state: SolverState, params: SystemParams) -> tuple[float, float]:
    return (max(state.delta, params.wavelength * DELTA_FLOOR_WAVELENGTHS),
            max(state.gamma, GAMMA_FLOOR))


def _optimal_slacks(xs, lower: QuadraticBound, upper: QuadraticBound,
                    gamma_local: float, params: SystemParams):
    """Closed-form slack optima (beta, gamma, delta) for positions xs."""
    noise = params.noise_power
    beta = np.maximum(lower(xs), 0.0)
    delta = np.abs(np.asarray(xs, dtype=float) - params.initial_position)
    level = noise * 2.0 ** gamma_local
    gamma = np.maximum(gamma_local + (upper(xs) - (level - noise)) / (level * math.log(2.0)), 0.0)
    return beta, gamma, delta


def _surrogate_objective(xs, lower, upper, state: SolverState,
                         params: SystemParams, alpha: float):
    """Eliminated surrogate objective; -inf where the rate floor is unreachable."""
    delta_local, gamma_local = _floored_locals(state, params)
    beta, gamma, delta = _optimal_slacks(xs, lower, upper, gamma_local, params)
    rate_term = params.block_duration * np.log2(1.0 + beta / params.noise_power)
    product = bilinear_upper(delta, gamma, delta_local, gamma_local)
    speed = params.speed
    value = (rate_term - product / speed
             - delta / speed * alpha * (params.movement_power - params.max_tx_power))
    feasible = rate_term - product / speed >= params.min_throughput - FEASIBILITY_SLACK
    return np.where(feasible, value, -np.inf), (beta, gamma, delta)


def eliminate_slacks(x: float, state: SolverState, expansion: channel.GainExpansion,
                     params: SystemParams) -> tuple[float, float, float] | None:
    """Optimal slacks of the convex subproblem at one candidate position.

    Returns (beta, gamma, delta), or None when the surrogate throughput
    constraint cannot hold at those values; infeasibility is signaled, never
    silently clamped away.
    """
    lower, upper = taylor_bounds(expansion, params, state.x)
    delta_local, gamma_local = _floored_locals(state, params)
    beta, gamma, delta = _optimal_slacks(x, lower, upper, gamma_local, params)
    rate_term = params.block_duration * math.log2(1.0 + float(beta) / params.noise_power)
    product = bilinear_upper(float(delta), float(gamma), delta_local, gamma_local)
    if rate_term - product / params.speed < params.min_throughput - FEASIBILITY_SLACK:
        return None
    return float(beta), float(gamma), float(delta)


def _state_at(x: float, iteration: int, alpha: float, objective: float,
              expansion: channel.GainExpansion, params: SystemParams) -> SolverState:
    """Build a state with slacks tangent to the true quantities at x."""
    h_val = max(float(h_of_x(expansion, params, x)), 0.0)
    return SolverState(
        iteration=iteration,
        x=x,
        beta=h_val,
        gamma=math.log2(1.0 + h_val / params.noise_power),
        delta=abs(x - params.initial_position),
        alpha=alpha,
        objective=objective,
    )


def _initial_state(x: float, alpha: float, expansion: channel.GainExpansion,
                   params: SystemParams) -> SolverState:
    state = _state_at(x, 0, alpha, -math.inf, expansion, params)
    lower, upper = taylor_bounds(expansion, params, x)
    value, _ = _surrogate_objective(np.asarray([x]), lower, upper, state, params, alpha)
    state.objective = float(value[0])
    return state


def solve_subproblem(state: SolverState, expansion: channel.GainExpansion,
                     params: SystemParams, alpha: float) -> SolverState | None:
    """Maximize the eliminated surrogate over the trust window around state.x.

    The candidate set always contains state.x itself, so the accepted
    objective never drops below the tangency value. Returns the new state with
    slacks re-tangent at the chosen position, or None when no position in the
    window satisfies the rate floor.
    """
    lower, upper = taylor_bounds(expansion, params, state.x)
    half = TRUST_WINDOW_WAVELENGTHS * params.wavelength
    reach = params.speed * params.block_duration
    lo = max(0.0, state.x - half, params.initial_position - reach)
    hi = min(params.region_length, state.x + half, params.initial_position + reach)
    xs = np.unique(np.append(np.linspace(lo, hi, _SCAN_POINTS), state.x))
    values, _ = _surrogate_objective(xs, lower, upper, state, params, alpha)
    if not np.any(np.isfinite(values)):
        return None

    idx = int(np.argmax(values))
    best_x, best_val = float(xs[idx]), float(values[idx])

    def scalar_objective(t: float) -> float:
        value, _ = _surrogate_objective(np.asarray([t]), lower, upper, state, params, alpha)
        return float(value[0])

    bracket_lo = float(xs[max(idx - 1, 0)])
    bracket_hi = float(xs[min(idx + 1, len(xs) - 1)])
    px, pf = search.golden_section_max(scalar_objective, bracket_lo, bracket_hi,
                                       tol=params.wavelength * 1e-6)
    if pf > best_val or (pf == best_val and px < best_x):
        best_x, best_val = px, pf
    return _state_at(best_x, state.iteration + 1, alpha, best_val, expansion, params)


def _best_feasible_position(expansion: channel.GainExpansion, params: SystemParams,
                            resolution: float | None = None) -> float | None:
    """Best-true-efficiency reachable position meeting the rate floor, or None.

    Exhaustive grid check; used to verify infeasibility before declaring it
    and to restart from a feasible point when the start violates the floor.
    """
    if resolution is None:
        resolution = params.wavelength / 500.0
    reach = params.speed * params.block_duration
    lo = max(0.0, params.initial_position - reach)
    hi = min(params.region_length, params.initial_position + reach)
    num = max(int(math.ceil((hi - lo) / resolution)) + 1, 2)
    xs = np.linspace(lo, hi, num)
    ee_vals, _, _, feasible = ee.efficiency_curve(expansion, params, xs)
    if not np.any(feasible):
        return None
    masked = np.where(feasible, ee_vals, -np.inf)
    return float(xs[int(np.argmax(masked))])


def optimize(expansion: channel.GainExpansion, params: SystemParams, *,
             outer_cap: int = 100, inner_cap: int = 50,
             restart_resolution: float | None = None) -> SolverReport:
    """Run the full Dinkelbach + SCA loop from the configured rest position.

    Each outer iteration runs the SCA inner loop at a fixed ratio estimate
    until the surrogate objective stalls, then refreshes the estimate with the
    true efficiency of the new iterate. The outer loop stops once the estimate
    moves by less than the configured tolerance; an iterate that would lower
    the estimate (possible only through the tiny slack floors) is rejected and
    treated as converged, which keeps the ratio sequence nondecreasing.

    A start position violating the rate floor triggers one verified grid
    restart from the best feasible position; if no reachable position meets
    the floor the status is "infeasible". When the movement power is below the
    transmit power the run is flagged: the travel slack then rewards movement
    inside the surrogate, a regime the bound analysis does not cover.
    """
    x_start = params.initial_position
    flagged = params.movement_power < params.max_tx_power

    gain_start = max(channel.gain_eval(expansion, x_start), 0.0)
    if not ee.energy_efficiency(x_start, gain_start, params).feasible:
        restart = _best_feasible_position(expansion, params, restart_resolution)
        if restart is None:
            breakdown = ee.energy_efficiency(x_start, gain_start, params)
            return SolverReport(x=x_start, ee=breakdown.ee, iterations=0, trace=[],
                                status="infeasible", power_assumption_violated=flagged)
        x_start = restart

    alpha = dinkelbach_update(x_start, expansion, params)
    state = _initial_state(x_start, alpha, expansion, params)
    trace = [(0, x_start, alpha, state.objective, alpha)]

    status = "iteration-cap"
    outer_used = 0
    for outer in range(1, outer_cap + 1):
        outer_used = outer
        stalled = False
        inner_prev = -math.inf
        for _ in range(inner_cap):
            candidate = solve_subproblem(state, expansion, params, alpha)
            if candidate is None:
                stalled = True
                break
            improvement = candidate.objective - inner_prev
            inner_prev = candidate.objective
            state = candidate
            if improvement <= params.tolerance:
                break
        if stalled:
            status = "converged"
            break

        new_alpha = dinkelbach_update(state.x, expansion, params)
        if new_alpha < alpha:
            # Slack-floor artifact: revert to the previous iterate and stop.
            state = _state_at(trace[-1][1], state.iteration, alpha, trace[-1][3],
                              expansion, params)
            status = "converged"
            break
        trace.append((outer, state.x, new_alpha, state.objective, new_alpha))
        finished = abs(new_alpha - alpha) <= params.tolerance
        alpha = new_alpha
        state.alpha = new_alpha
        if finished:
            state.converged = True
            status = "converged"
            break

    gain_final = max(channel.gain_eval(expansion, state.x), 0.0)
    breakdown = ee.energy_efficiency(state.x, gain_final, params)
    return SolverReport(x=state.x, ee=breakdown.ee, iterations=outer_used,
                        trace=trace, status=status,
                        power_assumption_violated=flagged)

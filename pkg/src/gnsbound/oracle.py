"""Independent numerical verification of the inequalities on Gaussians.

Test functions are centered Gaussians f(x) = exp(-a*|x|^2) in dimension
d <= 3.  With the convention hat{f}(xi) = int f(x) exp(-i x.xi) dx (inverse
carrying (2*pi)^(-d)), the transform is (pi/a)^(d/2) * exp(-|xi|^2/(4a)),
the operator |grad|^s has symbol |xi|^s, and the heat flow has symbol
exp(-t*|xi|^2).  Applying the multiplier gives a radial frequency profile

    ghat(rho) = (pi/a)^(d/2) * rho^s * exp(-b*rho^2),      b = t + 1/(4a),

whose inverse transform h(r) is computed by the dimension-reduced kernels

    d=1:  h(r) = (1/pi)      * int_0^inf ghat(rho) cos(rho*r)          drho
    d=2:  h(r) = (1/(2pi))   * int_0^inf ghat(rho) J0(rho*r)  rho      drho
    d=3:  h(r) = (1/(2pi^2)) * int_0^inf ghat(rho) sinc(rho*r) rho^2   drho.

Quadrature is composite Gauss-Legendre on panels graded geometrically toward
rho = 0 (the profile has an integrable algebraic singularity there for
non-integer s) and capped in width so the oscillatory kernel is resolved; a
small leading stub (0, eps) is integrated analytically from the joint power
series of the Gaussian factor and the kernel.

For s/2 not a nonnegative integer, h decays only algebraically.  The far
field is summed from the asymptotic expansion generated by the frequency
singularity at 0,

    h(r) ~ sum_k  cf * (-b)^k/k! * 2^(s+2k) * pi^(-d/2)
                  * Gamma((d+s)/2 + k)/Gamma(-s/2 - k) * r^(-d-s-2k),

truncated at the smallest term (optimal truncation; the remainder is
O(exp(-r^2/(4b))) at the splitting radius used here).  Lp norms integrate
|h|^p r^(d-1) numerically up to the splitting radius and the asymptotic form
beyond; the sup norm is a dense-grid maximum refined by golden-section
search.

Every norm is evaluated on two rules of different order and panel density;
their disagreement is the error estimate, and exceeding the requested target
raises :class:`AccuracyError` rather than degrading silently.

Evaluations are independent of one another; the module-level rule and
kernel-matrix caches are pure memoization (results never depend on cache
state) and rely on the interpreter's global lock for safe concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln, gammasgn, j0

from .errors import AccuracyError, DomainError
from .exponents import GnsProblem, LebesgueExponent, theta
from .optimizer import BoundCertificate
from .parabolic import ParabolicParams, bound_at_time, young_constant
from .specialfn import heat_deriv_l1_bound

DOMINANCE_RTOL = 1e-6

# Frequency cutoff: exp(-b*rho^2) below exp(-100); spatial split at 16*sqrt(b)
# where the optimal-truncation remainder exp(-r^2/(4b)) is about exp(-64).
_FREQ_CUTOFF = 100.0
_SPLIT_FACTOR = 16.0
_TAIL_KMAX = 60
_STUB_TERMS = 12

_KERNEL_PREFACTOR = {1: 1.0 / math.pi, 2: 0.5 / math.pi, 3: 0.5 / math.pi**2}

# Taylor coefficients of the reduced kernels in z^2: cos, J0, sinc.
_KERNEL_SERIES = {
    1: lambda j: (-1.0) ** j / math.factorial(2 * j),
    2: lambda j: (-1.0) ** j / (4.0**j * math.factorial(j) ** 2),
    3: lambda j: (-1.0) ** j / math.factorial(2 * j + 1),
}


def surface_area(d: int) -> float:
    """Area of the unit sphere in R^d: 2*pi^(d/2)/Gamma(d/2)."""
    return 2.0 * math.pi ** (0.5 * d) / math.gamma(0.5 * d)


@dataclass(frozen=True)
class RadialTestFunction:
    """Centered Gaussian exp(-width * |x|^2) in dimension d."""

    width: float
    d: int

    def __post_init__(self) -> None:
        if not (self.width > 0.0):
            raise DomainError(f"width must be positive, got {self.width!r}")
        if self.d not in (1, 2, 3):
            raise DomainError(f"dimension must be 1, 2 or 3, got {self.d!r}")


def gaussian_lp_norm(width: float, d: int, p: LebesgueExponent) -> float:
    """Closed-form Lp norm of exp(-width*|x|^2): (pi/(p*width))^(d/(2p))."""
    if width <= 0.0:
        raise DomainError(f"width must be positive, got {width!r}")
    u = p.recip
    if u == 0.0:
        return 1.0
    return (math.pi * u / width) ** (0.5 * d * u)


# ---------------------------------------------------------------------------
# Quadrature rules
# ---------------------------------------------------------------------------

_LEGGAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _LEGGAUSS_CACHE:
        _LEGGAUSS_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _LEGGAUSS_CACHE[order]


def _panel_rule(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on consecutive panels."""
    x, w = _leggauss(order)
    lo = edges[:-1][:, None]
    hi = edges[1:][:, None]
    half = 0.5 * (hi - lo)
    nodes = (lo + half + half * x[None, :]).ravel()
    weights = (half * w[None, :]).ravel()
    return nodes, weights


def _freq_edges(b: float, r_max: float, scale: float) -> tuple[float, np.ndarray]:
    """Panel edges for the half-line frequency integral, plus the stub size."""
    cutoff = math.sqrt(_FREQ_CUTOFF / b)
    eps = min(0.3 / math.sqrt(b + r_max * r_max), 0.05 * cutoff)
    w_max = scale * min(1.2 / math.sqrt(b), 8.0 / max(r_max, 1e-12))
    edges = [eps]
    width = eps
    while edges[-1] < cutoff:
        width = min(2.0 * width, w_max)
        edges.append(min(edges[-1] + width, cutoff))
    return eps, np.asarray(edges)


def _kernel_values(d: int, z: np.ndarray) -> np.ndarray:
    if d == 1:
        return np.cos(z)
    if d == 2:
        return j0(z)
    return np.sinc(z / math.pi)


# Norm evaluations recur over the same (d, b) with different orders s and
# output exponents p; the frequency rules and the dense kernel matrices
# depend only on (d, b, level, node kind), so both are cached.  The kernel
# cache is bounded: entries are large and locality follows (d, b).
_RULE_CACHE: dict[tuple, tuple[float, np.ndarray, np.ndarray]] = {}
_KERNEL_MATRIX_CACHE: dict[tuple, np.ndarray] = {}
_KERNEL_CACHE_MAX = 8


def _freq_rule(
    b: float, r_max: float, scale: float, order: int
) -> tuple[float, np.ndarray, np.ndarray]:
    key = (b, r_max, scale, order)
    if key not in _RULE_CACHE:
        eps, edges = _freq_edges(b, r_max, scale)
        rho, w = _panel_rule(edges, order)
        _RULE_CACHE[key] = (eps, rho, w)
        if len(_RULE_CACHE) > 64:
            _RULE_CACHE.pop(next(iter(_RULE_CACHE)))
    return _RULE_CACHE[key]


def _kernel_matrix(d: int, r: np.ndarray, rho: np.ndarray, key: tuple) -> np.ndarray:
    if key not in _KERNEL_MATRIX_CACHE:
        _KERNEL_MATRIX_CACHE[key] = _kernel_values(d, np.outer(r, rho))
        while len(_KERNEL_MATRIX_CACHE) > _KERNEL_CACHE_MAX:
            _KERNEL_MATRIX_CACHE.pop(next(iter(_KERNEL_MATRIX_CACHE)))
    return _KERNEL_MATRIX_CACHE[key]


class _RadialProfile:
    """Evaluator for h(r) at a fixed quadrature level, reusable across r."""

    def __init__(
        self,
        f: RadialTestFunction,
        s: float,
        t: float,
        r_max: float,
        *,
        scale: float,
        order: int,
    ):
        self.d = f.d
        self.b = t + 0.25 / f.width
        self.cf = (math.pi / f.width) ** (0.5 * f.d)
        self.s = s
        self.scale = scale
        self.order = order
        self.r_max = r_max
        eps, rho, w = _freq_rule(self.b, r_max, scale, order)
        self.eps = eps
        self.rho = rho
        self.weights = (
            w * self.cf * rho ** (s + f.d - 1) * np.exp(-self.b * rho * rho)
        )

    def _stub(self, r: np.ndarray) -> np.ndarray:
        """Analytic integral over (0, eps) from the joint even power series."""
        d, s, b, eps = self.d, self.s, self.b, self.eps
        kernel = _KERNEL_SERIES[d]
        exp_coeff = [(-b) ** i / math.factorial(i) for i in range(_STUB_TERMS + 1)]
        r2 = r * r
        r2_pow = [np.ones_like(r)]
        for _ in range(_STUB_TERMS):
            r2_pow.append(r2_pow[-1] * r2)
        total = np.zeros_like(r)
        for m in range(_STUB_TERMS + 1):
            gamma_m = np.zeros_like(r)
            for jj in range(m + 1):
                gamma_m += kernel(jj) * r2_pow[jj] * exp_coeff[m - jj]
            total += gamma_m * eps ** (s + d + 2 * m) / (s + d + 2 * m)
        return self.cf * total

    def at_cached_nodes(self, r: np.ndarray, node_kind: str) -> np.ndarray:
        """Profile on a node set that is a pure function of (d, b, level)."""
        key = (self.d, self.b, self.r_max, self.scale, self.order, node_kind)
        kernel = _kernel_matrix(self.d, r, self.rho, key)
        return _KERNEL_PREFACTOR[self.d] * (kernel @ self.weights + self._stub(r))

    def __call__(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        kernel = _kernel_values(self.d, np.outer(r, self.rho))
        return _KERNEL_PREFACTOR[self.d] * (kernel @ self.weights + self._stub(r))


def _tail_coefficients(
    cf: float, s: float, d: int, b: float, kmax: int = _TAIL_KMAX
) -> np.ndarray | None:
    """Signed coefficients of the far-field expansion, or None when it vanishes.

    The expansion is identically zero when s/2 is a nonnegative integer (the
    multiplier is then smooth at the origin and h decays like a Gaussian).
    """
    if s >= 0.0 and 0.5 * s == math.floor(0.5 * s):
        return None
    k = np.arange(kmax)
    pole_arg = -0.5 * s - k
    log_mag = (
        math.log(cf)
        + k * math.log(b)
        - gammaln(k + 1.0)
        + (s + 2 * k) * math.log(2.0)
        - 0.5 * d * math.log(math.pi)
        + gammaln(0.5 * (d + s) + k)
        - gammaln(pole_arg)
    )
    sign = (-1.0) ** k * gammasgn(pole_arg)
    return sign * np.exp(log_mag)


def _tail_values(coeffs: np.ndarray, s: float, d: int, r: np.ndarray) -> np.ndarray:
    """Far-field h from the expansion, truncated at the smallest term."""
    r = np.asarray(r, dtype=float)
    k = np.arange(len(coeffs))
    powers = r[None, :] ** (-(d + s + 2.0 * k[:, None]))
    terms = coeffs[:, None] * powers
    mags = np.abs(terms)
    increasing = mags[1:] >= mags[:-1]
    cutoff = np.where(increasing.any(axis=0), increasing.argmax(axis=0) + 1, len(coeffs))
    mask = k[:, None] < cutoff[None, :]
    return (terms * mask).sum(axis=0)


def _tail_lp_integral(
    coeffs: np.ndarray, s: float, d: int, p_value: float, radius: float, h_scale: float
) -> float:
    """Integral over (radius, inf) of |h_tail / h_scale|^p r^(d-1) dr.

    Geometric panels, one per octave out to 2^41 * radius, closed by the
    leading-power remainder (|c0|/h_scale)^p * X^(-E)/E with
    E = p*(d+s) - d; the next-order correction there is smaller by a factor
    X^(-2).  The integrand is pre-scaled by the profile's peak so that large
    exponents cannot overflow.
    """
    decay = p_value * (d + s) - d
    edges = radius * 2.0 ** np.arange(0.0, 42.0)
    nodes, weights = _panel_rule(edges, 12)
    h = _tail_values(coeffs, s, d, nodes) / h_scale
    octaves = float(np.sum(weights * np.abs(h) ** p_value * nodes ** (d - 1)))
    closing = math.exp(
        p_value * (math.log(abs(coeffs[0])) - math.log(h_scale))
        - decay * math.log(edges[-1])
    ) / decay
    return octaves + closing


def _golden_max(fn: Callable[[float], float], lo: float, hi: float) -> float:
    """Golden-section maximization of fn on [lo, hi]."""
    inv_phi = 0.5 * (math.sqrt(5.0) - 1.0)
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d_ = a + inv_phi * (b - a)
    fc, fd = fn(c), fn(d_)
    for _ in range(80):
        if b - a < 1e-13 * max(1.0, abs(b)):
            break
        if fc >= fd:
            b, d_, fd = d_, c, fc
            c = b - inv_phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + inv_phi * (b - a)
            fd = fn(d_)
    return max(fc, fd, fn(0.5 * (a + b)))


# (scale, Gauss-Legendre order, sup-norm grid size) per accuracy level.
_LEVELS = {"coarse": (1.0, 16, 1536), "fine": (0.7, 22, 4096)}

_SCOUT_GRID = 1025


def _profile_zeros(profile: _RadialProfile, r_split: float) -> list[float]:
    """Sign-change locations of the profile on (0, r_split), by bisection.

    Needed because |h|^p is only C^1 at zeros of h unless p is an even
    integer, which would degrade the panel rule; the zeros become panel
    edges instead.
    """
    scout = np.linspace(0.0, r_split, _SCOUT_GRID)
    values = profile.at_cached_nodes(scout, "scout")
    zeros: list[float] = []
    sign_change = np.nonzero(values[:-1] * values[1:] < 0.0)[0]
    for i in sign_change:
        lo, hi = float(scout[i]), float(scout[i + 1])
        f_lo = float(values[i])
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            f_mid = float(profile(np.array([mid]))[0])
            if f_lo * f_mid <= 0.0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
        zeros.append(0.5 * (lo + hi))
    return zeros


def _norm_at_level(
    f: RadialTestFunction, s: float, t: float, p: LebesgueExponent, level: str
) -> float:
    scale, order, inf_grid = _LEVELS[level]
    d = f.d
    b = t + 0.25 / f.width
    cf = (math.pi / f.width) ** (0.5 * d)
    r_split = _SPLIT_FACTOR * math.sqrt(b)
    profile = _RadialProfile(f, s, t, r_split, scale=scale, order=order)
    coeffs = _tail_coefficients(cf, s, d, b)

    if p.recip == 0.0:
        grid = np.linspace(0.0, r_split, inf_grid)
        values = np.abs(profile.at_cached_nodes(grid, "sup"))
        idx = int(values.argmax())
        lo = grid[max(idx - 1, 0)]
        hi = grid[min(idx + 1, len(grid) - 1)]
        peak = _golden_max(lambda r: abs(float(profile(np.array([r]))[0])), lo, hi)
        peak = max(peak, float(values[idx]))
        if coeffs is not None:
            boundary = abs(float(_tail_values(coeffs, s, d, np.array([r_split]))[0]))
            if boundary > peak:
                raise AccuracyError("sup apparently beyond the splitting radius")
        return peak

    p_value = p.value
    n_panels = max(8, int(math.ceil(r_split / (0.8 * math.sqrt(b) * scale))))
    edges = np.linspace(0.0, r_split, n_panels + 1)
    p_even = 0.5 * p_value == math.floor(0.5 * p_value)
    if p_even or s == 0.0:
        # |h|^p is smooth (even power, or a positive profile): cached nodes
        nodes, weights = _panel_rule(edges, order)
        h = profile.at_cached_nodes(nodes, "lp")
    else:
        zeros = _profile_zeros(profile, r_split)
        if zeros:
            edges = np.unique(np.concatenate([edges, np.asarray(zeros)]))
        nodes, weights = _panel_rule(edges, order)
        h = profile(nodes)
    habs = np.abs(h)
    h_scale = float(habs.max())
    if h_scale == 0.0:
        return 0.0
    main = float(np.sum(weights * (habs / h_scale) ** p_value * nodes ** (d - 1)))
    tail = (
        _tail_lp_integral(coeffs, s, d, p_value, r_split, h_scale)
        if coeffs is not None
        else 0.0
    )
    return h_scale * (surface_area(d) * (main + tail)) ** (1.0 / p_value)


def fractional_heat_norm(
    f: RadialTestFunction,
    s: float,
    t: float,
    p: LebesgueExponent,
    *,
    target_rel: float = 1e-6,
) -> float:
    """Lp norm of |grad|^s applied to the heat flow of a Gaussian.

    Evaluated at two quadrature levels; their relative disagreement is the
    error estimate and must not exceed ``target_rel``.
    """
    if not (s > -f.d):
        raise DomainError(f"need s > -d for integrability, got s={s!r}, d={f.d}")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t!r}")
    algebraic_tail = not (s >= 0.0 and 0.5 * s == math.floor(0.5 * s))
    if p.recip > 0.0 and algebraic_tail and p.value * (f.d + s) <= f.d:
        raise DomainError(
            f"Lp norm diverges: the profile decays like r^-(d+s) and "
            f"p*(d+s) = {p.value * (f.d + s)!r} <= d = {f.d}"
        )
    coarse = _norm_at_level(f, s, t, p, "coarse")
    fine = _norm_at_level(f, s, t, p, "fine")
    if not (math.isfinite(coarse) and math.isfinite(fine)):
        raise AccuracyError(f"non-finite norm evaluations ({coarse!r}, {fine!r})")
    err = abs(coarse - fine) / max(abs(fine), 1e-300)
    if err > target_rel:
        raise AccuracyError(
            f"quadrature levels disagree by {err:.3e} > target {target_rel:.1e}"
        )
    return float(fine)


def frequency_space_l2_norm(f: RadialTestFunction, s: float, t: float) -> float:
    """L2 norm via the frequency side: (2pi)^(-d/2) ||ghat||_2, by quadrature."""
    d = f.d
    if 2.0 * s + d <= 0.0:
        raise DomainError(f"need s > -d/2 for the L2 norm, got s={s!r}")
    b = t + 0.25 / f.width
    cf = (math.pi / f.width) ** (0.5 * d)
    cutoff = math.sqrt(_FREQ_CUTOFF / b)
    integral, _ = quad(
        lambda rho: rho ** (2.0 * s + d - 1.0) * math.exp(-2.0 * b * rho * rho),
        0.0,
        cutoff,
        limit=200,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    return (2.0 * math.pi) ** (-0.5 * d) * cf * math.sqrt(surface_area(d) * integral)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    """Rows of (parameters..., measured, bound, slack) with slack relative.

    slack = (bound - measured)/bound; a row violates domination when
    slack < -tolerance.
    """

    header: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    tolerance: float = DOMINANCE_RTOL

    @property
    def slacks(self) -> list[float]:
        return [row[-1] for row in self.rows]

    @property
    def worst_slack(self) -> float:
        return min(self.slacks) if self.rows else math.inf

    @property
    def ok(self) -> bool:
        return all(slack >= -self.tolerance for slack in self.slacks)

    def violations(self) -> list[tuple]:
        return [row for row in self.rows if row[-1] < -self.tolerance]

    def to_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(",".join(self.header) + "\n")
            for row in self.rows:
                handle.write(",".join(_csv_cell(v) for v in row) + "\n")


def _csv_cell(value) -> str:
    if isinstance(value, LebesgueExponent):
        return str(value)
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


ParabolicCase = tuple[int, float, LebesgueExponent, LebesgueExponent, float]


def default_parabolic_grid(dims: Iterable[int] = (1, 2, 3)) -> list[ParabolicCase]:
    """Admissible (d, s, r, p, t) cases over the standard sweep menu."""
    exponent_pairs = [
        (LebesgueExponent(1.0), LebesgueExponent(0.5)),
        (LebesgueExponent(0.5), LebesgueExponent(0.5)),
        (LebesgueExponent(1.0), LebesgueExponent(0.0)),
        (LebesgueExponent(0.5), LebesgueExponent(0.0)),
        (LebesgueExponent(0.5), LebesgueExponent(0.25)),
    ]
    cases: list[ParabolicCase] = []
    for d in dims:
        for s in (0.0, 0.5, 1.0, 2.0, 3.5, -0.25):
            for r, p in exponent_pairs:
                if s < 0.0 and not (-s < d * (r.recip - p.recip)):
                    continue
                for t in (0.1, 1.0, 10.0):
                    cases.append((d, s, r, p, t))
    return cases


def check_parabolic(
    grid: Iterable[ParabolicCase],
    widths: Sequence[float],
    *,
    tolerance: float = DOMINANCE_RTOL,
) -> SweepReport:
    """Measure ||grad^s e^{t*Lap} f||_p / ||f||_r against the closed-form bound.

    Rows are emitted in grid order; internally the evaluations group by
    (d, t, width) so the cached kernel matrices are reused across the order
    and exponent loops.
    """
    entries = [
        (d, s, r, p, t, width)
        for d, s, r, p, t in grid
        for width in widths
    ]
    results: dict[int, tuple] = {}
    by_locality = sorted(
        range(len(entries)), key=lambda i: (entries[i][0], entries[i][4], entries[i][5])
    )
    for i in by_locality:
        d, s, r, p, t, width = entries[i]
        bound = bound_at_time(ParabolicParams(p, r, s, d), t)
        f = RadialTestFunction(width, d)
        measured = fractional_heat_norm(f, s, t, p) / gaussian_lp_norm(width, d, r)
        slack = (bound - measured) / bound
        results[i] = (d, s, r, p, t, width, float(measured), bound, float(slack))
    report = SweepReport(
        header=("d", "s", "r", "p", "t", "width", "measured", "bound", "slack"),
        tolerance=tolerance,
    )
    report.rows.extend(results[i] for i in range(len(entries)))
    return report


def gns_ratio(problem: GnsProblem, theta_value: float, width: float) -> float:
    """Measured interpolation ratio on a Gaussian of the given width."""
    f = RadialTestFunction(width, problem.d)
    num = fractional_heat_norm(f, problem.s, 0.0, problem.p)
    den1 = fractional_heat_norm(f, problem.s1, 0.0, problem.p1)
    den2 = fractional_heat_norm(f, problem.s2, 0.0, problem.p2)
    return num / (den1**theta_value * den2 ** (1.0 - theta_value))


def check_gns(
    certificate: BoundCertificate,
    widths: Sequence[float],
    dilations: Sequence[float],
    *,
    tolerance: float = DOMINANCE_RTOL,
) -> SweepReport:
    """Measured interpolation ratios against a certificate's bound value.

    Dilation lam rescales a base width a to a*lam^2 (the Gaussian analogue of
    f(x) -> f(lam*x)); the ratio is scale-free, so rows sharing a base width
    double as a dilation-invariance check of the quadrature pipeline.
    """
    problem = certificate.problem
    theta_value = certificate.theta.value
    report = SweepReport(
        header=("width", "dilation", "measured", "bound", "slack"),
        tolerance=tolerance,
    )
    for width in widths:
        for lam in dilations:
            ratio = gns_ratio(problem, theta_value, width * lam * lam)
            slack = (certificate.value - ratio) / certificate.value
            report.rows.append((width, lam, float(ratio), certificate.value, float(slack)))
    return report


# ---------------------------------------------------------------------------
# Derivative-of-kernel and convolution-constant checks
# ---------------------------------------------------------------------------


def _laplacian_power_coeffs(n: int, d: int, alpha: float) -> np.ndarray:
    """Coefficients of q(u) with (-Lap)^n exp(-alpha*u) = q(u)*exp(-alpha*u), u=|x|^2.

    For radial phi(u), Lap phi = 4u*phi'' + 2d*phi'; applying it to
    q(u)*exp(-alpha*u) gives the recurrence implemented here with plain
    polynomial arithmetic on ascending coefficient arrays.
    """
    q = np.array([1.0])
    for _ in range(n):
        dq = np.polynomial.polynomial.polyder(q)
        d2q = np.polynomial.polynomial.polyder(q, 2)
        # 4u*q'' - 8*alpha*u*q' + 4*alpha^2*u*q  (terms multiplied by u)
        shifted = np.zeros(len(q) + 1)
        shifted[1 : 1 + len(d2q)] += 4.0 * d2q
        shifted[1 : 1 + len(dq)] += -8.0 * alpha * dq
        shifted[1 : 1 + len(q)] += 4.0 * alpha * alpha * q
        rest = np.zeros(len(q) + 1)
        rest[: len(dq)] += 2.0 * d * dq
        rest[: len(q)] += -2.0 * d * alpha * q
        q = -(shifted + rest)
    return q


def heat_l1_deriv_check(n: int, d: int, t: float) -> tuple[float, float]:
    """Quadrature of the L1 norm of the n-th Laplacian power of the kernel.

    Returns (measured, bound); the kernel derivative is a closed-form radial
    polynomial times a Gaussian, integrated by adaptive quadrature.
    """
    if n < 0 or n > 4 or d not in (1, 2, 3):
        raise DomainError(f"supported range is n <= 4, d <= 3, got ({n!r}, {d!r})")
    if t <= 0.0:
        raise DomainError(f"time must be positive, got {t!r}")
    alpha = 0.25 / t
    coeffs = _laplacian_power_coeffs(n, d, alpha)
    prefactor = (4.0 * math.pi * t) ** (-0.5 * d)

    def integrand(r: float) -> float:
        u = r * r
        poly = 0.0
        for c in reversed(coeffs):
            poly = poly * u + c
        return abs(poly) * math.exp(-alpha * u) * r ** (d - 1)

    radius = math.sqrt(_FREQ_CUTOFF / alpha)
    integral, _ = quad(integrand, 0.0, radius, limit=400, epsabs=1e-13, epsrel=1e-13)
    measured = surface_area(d) * prefactor * integral
    bound = heat_deriv_l1_bound(n, d) * t ** (-n)
    return measured, bound


def convolution_ratio(
    width_f: float,
    width_g: float,
    p: LebesgueExponent,
    q: LebesgueExponent,
    r: LebesgueExponent,
    d: int,
) -> float:
    """||f*g||_p / (||f||_q * ||g||_r) for Gaussians, all in closed form.

    The convolution of exp(-a|x|^2) and exp(-b|x|^2) is
    (pi/(a+b))^(d/2) * exp(-(ab/(a+b))|x|^2).
    """
    a, b = width_f, width_g
    conv_width = a * b / (a + b)
    conv_amplitude = (math.pi / (a + b)) ** (0.5 * d)
    return (
        conv_amplitude
        * gaussian_lp_norm(conv_width, d, p)
        / (gaussian_lp_norm(a, d, q) * gaussian_lp_norm(b, d, r))
    )


def young_extremizer_check(
    p: LebesgueExponent,
    q: LebesgueExponent,
    r: LebesgueExponent,
    d: int,
    *,
    grid_size: int = 601,
) -> tuple[float, float]:
    """Best Gaussian-pair convolution ratio versus the sharp constant.

    The ratio is invariant under joint width rescaling, so one width is fixed
    at 1 and the other scanned over a log grid, refined by golden-section
    search.  Returns (best_ratio, constant).
    """
    constant = young_constant(p, q, r, d)
    log_m = np.linspace(-3.0 * math.log(10.0), 3.0 * math.log(10.0), grid_size)
    ratios = [convolution_ratio(1.0, math.exp(v), p, q, r, d) for v in log_m]
    idx = int(np.argmax(ratios))
    lo = log_m[max(idx - 1, 0)]
    hi = log_m[min(idx + 1, grid_size - 1)]
    best = _golden_max(lambda v: convolution_ratio(1.0, math.exp(v), p, q, r, d), lo, hi)
    return max(best, ratios[idx]), constant

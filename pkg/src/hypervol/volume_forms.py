"""The three model-specific volume computations of the regular hyperbolic
simplex, plus the generalized half-space formula.

Every volume is computed three independent ways so the routes can audit
each other:

* `volume_projective` integrates the projective-model volume element
  (1 - r^2)^(-(n+1)/2) over the Euclidean simplex picture;
* `volume_orthoscheme` integrates the orthogonal-coordinate volume form
  over the fundamental orthoscheme (whose limits are the alpha-chain
  built from the edge ladder) and multiplies by the (n+1)! congruent
  copies tiling the simplex;
* `volume_halfspace` integrates the half-space volume element z^(-n)
  vertically between the unit hemisphere below and the facet spheres
  above, reducing to two integrals over the projected bottom facet.

`volume_halfspace_general` extends the half-space form to quasi-regular
simplices (regular facet, apex above the facet center) parametrized by
the circumcenter-to-apex and circumcenter-to-facet distances.

The half-space integrands are evaluated per sub-simplex of the projected
facet's barycentric dissection; on each sub-simplex the slice of constant
barycentric sum is a centered regular simplex one dimension down, so both
facet integrals reduce to the radial-power machinery of `quadrature`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import CapabilityError, ConvergenceError, DomainError
from .geometry import (
    HalfspaceEmbedding,
    OrthoschemeLadder,
    SimplexParams,
    halfspace_embedding,
    ladder,
)
from .quadrature import (
    QuadratureConfig,
    VolumeEstimate,
    _panels_toward_one,
    _radial_settings,
    _radial_theta_min,
    RadialPowerStack,
    integrate_nested,
    integrate_simplex_radialpow,
)

__all__ = [
    "AlphaChain",
    "QuasiRegularParams",
    "cosh_power_antiderivative",
    "alpha_chain",
    "volume_orthoscheme",
    "volume_projective",
    "facet_volume_projective",
    "zn_bounds",
    "volume_halfspace",
    "volume_halfspace_general",
    "richardson_limit",
    "ORTHOSCHEME_DIM_CAP",
]

# nested tensor cost grows as order^n; beyond this the engine refuses
ORTHOSCHEME_DIM_CAP = 12

_CLIP = 1.0 - 1e-16


def cosh_power_antiderivative(m: int, x):
    """F_m(x), the antiderivative of cosh^m with F_m(0) = 0.

    Closed form from the power-reduction of cosh^m: even powers carry a
    linear term plus a sinh sum, odd powers a pure sinh sum.

        m = 2k:   4^(-k) C(2k, k) x
                  + 2^(1-2k) sum_{l<k} C(2k, l) sinh(2(k-l) x) / (2(k-l))
        m = 2k+1: 4^(-k) sum_{l<=k} C(2k+1, l) sinh((2(k-l)+1) x) / (2(k-l)+1)
    """
    if m < 0 or not isinstance(m, (int, np.integer)):
        raise DomainError("power m must be a nonnegative integer")
    x = np.asarray(x, dtype=float)
    if m % 2 == 0:
        k = m // 2
        out = math.comb(2 * k, k) / 4.0**k * x
        for l in range(k):
            j = 2 * (k - l)
            out = out + math.comb(2 * k, l) / 2.0 ** (2 * k - 1) * np.sinh(j * x) / j
    else:
        k = (m - 1) // 2
        out = np.zeros_like(x)
        for l in range(k + 1):
            j = 2 * (k - l) + 1
            out = out + math.comb(2 * k + 1, l) / 4.0**k * np.sinh(j * x) / j
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class AlphaChain:
    """Limit functions of the orthoscheme's orthogonal-coordinate integral.

    Level k (1-based, k = 1..n-1) has the state-dependent upper limit

        alpha_k(x) = atanh(c_k sinh x),   c_k = tanh d_{k+1} / sinh d_k,

    where x is the previous level's variable; the outermost variable runs
    over the constant interval [0, d_1].  In the ratio parametrization
    q = sinh x / sinh d_1 in (0, 1] of the outer variable, the first
    limit is alpha_1 = atanh(outer_ratio * q) with outer_ratio = tanh d_2;
    this form survives the ideal simplex, where d_1 is infinite and c_1
    degenerates to 0.
    """

    ladder: OrthoschemeLadder
    coefficients: np.ndarray     # c_1..c_{n-1}; c_1 = 0 at the ideal point
    outer_limit: float           # d_1 (inf at the ideal point)
    outer_ratio: float           # tanh d_2: alpha_1 coefficient against q

    @property
    def depth(self) -> int:
        return self.ladder.params.n

    def alpha(self, k: int, x):
        """alpha_k evaluated at x (array-friendly); k = 1..n-1."""
        if not 1 <= k <= self.depth - 1:
            raise DomainError(f"level k must lie in 1..{self.depth - 1}, got {k}")
        arg = self.coefficients[k - 1] * np.sinh(np.asarray(x, dtype=float))
        if np.any(arg > 1.0 + 1e-9):
            raise DomainError(f"alpha_{k} argument left its domain (tanh argument > 1)")
        return np.arctanh(np.minimum(arg, _CLIP))


def alpha_chain(lad: OrthoschemeLadder) -> AlphaChain:
    """Build the alpha-chain of a ladder.  Requires t > 0."""
    params = lad.params
    if params.t <= 0.0:
        raise DomainError("alpha chain is undefined at t = 0")
    n = params.n
    coeff = np.empty(n - 1)
    for k in range(1, n):
        sinh_dk = lad.sinh_d[k - 1]
        coeff[k - 1] = 0.0 if math.isinf(sinh_dk) else lad.tanh_d[k] / sinh_dk
    return AlphaChain(
        ladder=lad,
        coefficients=coeff,
        outer_limit=lad.d[0],
        outer_ratio=lad.tanh_d[1] if n >= 2 else 0.0,
    )


def volume_orthoscheme(params: SimplexParams, cfg: QuadratureConfig | None = None) -> VolumeEstimate:
    """Volume via the orthoscheme dissection: (n+1)! times the iterated
    orthogonal-coordinate integral over the fundamental orthoscheme.

    The chain has n levels; level k carries the weight cosh^k and the
    alpha-chain limit.  The outermost variable (the only one whose range
    d_1 is unbounded at the ideal point) is integrated in the sinh-ratio
    parametrization q = sinh(x)/sinh(d_1) in (0, 1], Jacobian
    1/sqrt(1/sinh^2 d_1 + q^2), against which the first limit is the
    closed form atanh(tanh(d_2) q).  This keeps the integrand analytic
    on the whole cube uniformly in t: in the native variable the mass
    concentrates in a boundary layer below d_1 as t -> pi/2 (at the
    ideal point the Jacobian is exactly 1/q).
    """
    cfg = cfg or QuadratureConfig()
    n = params.n
    if n > ORTHOSCHEME_DIM_CAP:
        raise CapabilityError(
            f"orthoscheme chain depth {n} exceeds the cap {ORTHOSCHEME_DIM_CAP}"
        )
    if params.t <= 0.0:
        return VolumeEstimate(0.0, 0.0, 0, "orthoscheme")
    lad = ladder(params)
    chain = alpha_chain(lad)
    coeff = chain.coefficients

    def limit_k(k):
        c = coeff[k - 1]
        return lambda x: np.arctanh(np.minimum(c * np.sinh(x), _CLIP))

    def weight_k(k):
        return lambda x: np.cosh(x) ** k

    beta = 0.0 if math.isinf(lad.sinh_d[0]) else 1.0 / lad.sinh_d[0]
    ratio = chain.outer_ratio                           # tanh d_2
    limits = [1.0, lambda q: np.arctanh(np.minimum(ratio * q, _CLIP))]
    factors = [lambda q: 1.0 / np.hypot(beta, q), weight_k(1)]
    for k in range(2, n):
        limits.append(limit_k(k))
        factors.append(weight_k(k))
    def scaled(est: VolumeEstimate) -> VolumeEstimate:
        if est.value <= 0.0:
            return VolumeEstimate(0.0, est.error_estimate, est.n_evals, "orthoscheme")
        value = math.exp(math.lgamma(n + 2) + math.log(est.value))
        err = value * (est.error_estimate / est.value) if math.isfinite(
            est.error_estimate) else math.inf
        return VolumeEstimate(value, err, est.n_evals, "orthoscheme")

    try:
        est = integrate_nested(limits, factors, cfg, method="tensor")
    except ConvergenceError as exc:
        raise ConvergenceError(str(exc), estimate=scaled(exc.estimate)) from exc
    return scaled(est)


def volume_projective(params: SimplexParams, cfg: QuadratureConfig | None = None) -> VolumeEstimate:
    """Volume via the projective model: the radial-power integral

        sin^n t * integral over S(n) of (1 - sin^2 t r^2)^(-(n+1)/2).

    The ideal case (sin t = 1) is the vertex-touching scale-1 integral,
    handled by the corner machinery of the radial engine.
    """
    cfg = cfg or QuadratureConfig()
    if params.t <= 0.0:
        return VolumeEstimate(0.0, 0.0, 0, "projective")
    w = params.one_minus_sin_t * params.one_plus_sin_t   # cos^2 t, exact at ideal
    est = integrate_simplex_radialpow(
        params.n, params.sin_t, (params.n + 1) / 2, cfg, one_minus_scale_sq=w
    )
    return replace(est, method="projective")


def facet_volume_projective(params: SimplexParams, cfg: QuadratureConfig | None = None) -> VolumeEstimate:
    """(n-1)-volume of a facet, via the projective model one dimension down.

    The facet is the regular (n-1)-simplex of circumradius r_{n-1}; its
    projective picture has Euclidean circumradius tanh r_{n-1} and volume
    element exponent n/2.  Equivalently this is volume_projective of the
    (n-1)-simplex whose parameter t' satisfies sin t' = tanh r_{n-1}.
    """
    cfg = cfg or QuadratureConfig()
    n = params.n
    if n < 3:
        raise DomainError("facet volume needs n >= 3 (the facet must carry area)")
    if params.t <= 0.0:
        return VolumeEstimate(0.0, 0.0, 0, "facet-projective")
    s = params.sin_t
    scale = s * math.sqrt(n * n - 1.0) / math.sqrt(n * n - s * s)   # tanh r_{n-1}
    w = n * n * params.one_minus_sin_t * params.one_plus_sin_t / (n * n - s * s)
    est = integrate_simplex_radialpow(n - 1, scale, n / 2.0, cfg, one_minus_scale_sq=w)
    return replace(est, method="facet-projective")


# ---------------------------------------------------------------------------
# Half-space form

def _locate_subsimplex(emb: HalfspaceEmbedding, v: np.ndarray):
    """Find the dissection piece containing v and its barycentric weights.

    Piece i omits vertex i; ties (boundary points) resolve to the lowest
    index.  Raises DomainError for points outside the projected facet.
    """
    n = emb.n
    tol = 1e-10 * max(1.0, emb.sin_alpha)
    for i in range(n):
        idx = [j for j in range(n) if j != i]
        lam = np.linalg.solve(emb.v[idx].T, v)
        if np.all(lam >= -tol) and lam.sum() <= 1.0 + tol:
            return i, np.maximum(lam, 0.0)
    raise DomainError("point lies outside the projected facet")


def zn_bounds(emb: HalfspaceEmbedding, v) -> tuple[float, float]:
    """Vertical extent of the half-space simplex above boundary point v.

    Returns (lo, hi) with lo^2 = 1 - |v|^2 (the unit hemisphere carrying
    the bottom facet) and hi^2 = lo^2 + B (1 - a), where a is the
    barycentric sum of v in its dissection piece and B the embedding's
    height slope.  The interval collapses exactly at the facet vertices.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (emb.n - 1,):
        raise DomainError(f"v must have shape ({emb.n - 1},)")
    _, lam = _locate_subsimplex(emb, v)
    a = float(lam.sum())
    rho2 = float(v @ v)
    lo_sq = max(1.0 - rho2, 0.0)
    hi_sq = lo_sq + emb.height_sq_slope * max(1.0 - a, 0.0)
    return math.sqrt(lo_sq), math.sqrt(hi_sq)


def _halfspace_value(n: int, sigma: float, w_perp: float, slope: float,
                     cfg: QuadratureConfig) -> VolumeEstimate:
    """Shared core of the regular and quasi-regular half-space volumes.

    sigma   circumradius of the projected facet (tanh of the hyperbolic one)
    w_perp  1 - sigma^2 in cancellation-free form
    slope   B, the coefficient of (1 - a) in the vertical upper bound
            (upper^2 = 1 + B(1-a) - rho^2, using that the constant is B + 1)

    The first facet integral is radial; the second is sliced along
    constant barycentric sum a, each slice being a centered regular
    (n-2)-simplex of circumradius a * rho_F, so both reduce to the radial
    level stack.
    """
    p = (n - 1) / 2.0
    dim = n - 1
    b_c = sigma / (n - 1)                                # |centroid of a piece's outer face|
    rho_f_sq = sigma * sigma * n * (n - 2) / (n - 1) ** 2
    depth = int(min(64, max(18, math.log2(max(slope, 2.0)) + 14)))
    lo_set, hi_set = _radial_settings(cfg, _radial_theta_min(w_perp, depth))
    values = []
    evals = 0
    for settings in (lo_set, hi_set):
        stack = RadialPowerStack(max(dim - 1, 0), p, _radial_theta_min(w_perp, settings.depth), settings)
        t1 = sigma**dim * stack.top_integral(dim, w_perp, sigma * sigma)
        a, one_m_a, wq = _panels_toward_one(depth, settings.order)
        # C(a) = upper^2 at the slice's outermost radius, built from (1 - a)
        c_of_a = (1.0 - b_c * b_c) + slope * one_m_a + b_c * b_c * one_m_a * (2.0 - one_m_a)
        w_slice = (w_perp + slope * one_m_a + sigma * sigma * one_m_a * (2.0 - one_m_a)) / c_of_a
        inner = stack.level_value(dim - 1, w_slice)
        t2 = n * b_c * float(
            (a ** (n - 2) * rho_f_sq ** ((n - 2) / 2.0) * c_of_a ** (-p) * inner) @ wq
        )
        if not t2 < t1:
            raise DomainError("half-space integrand ordering violated (degenerate input)")
        values.append((t1 - t2) / (n - 1))
        evals += stack.n_evals + a.size
    lo, hi = values
    return VolumeEstimate(hi, abs(hi - lo) + cfg.abs_tol, evals, "halfspace")


def volume_halfspace(params: SimplexParams, cfg: QuadratureConfig | None = None) -> VolumeEstimate:
    """Volume via the half-space model: the vertical integral of z^(-n)
    between the unit hemisphere and the facet spheres, written as two
    integrals over the projected bottom facet.

    Defined for 0 < t < pi/2 only; near the ideal point callers should
    evaluate at t <= pi/2 - 1e-6 and extrapolate (see `richardson_limit`).
    """
    cfg = cfg or QuadratureConfig()
    emb = halfspace_embedding(params)
    est = _halfspace_value(
        params.n, emb.sin_alpha, emb.cos_alpha**2, emb.height_sq_slope, cfg
    )
    return est


@dataclass(frozen=True)
class QuasiRegularParams:
    """A quasi-regular simplex: regular facet, apex on the axis through the
    facet's circumcenter.

    r is the hyperbolic distance from the circumcenter to the apex, d the
    distance from the circumcenter to the facet center, and
    facet_circumradius the circumradius of the regular (n-1)-simplex
    facet.  The regular simplex tau[n, t] is recovered with
    (r, d, facet_circumradius) = (r_n, d_n, r_{n-1}) from its ladder.
    """

    n: int
    r: float
    d: float
    facet_circumradius: float

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("n must be >= 2")
        if not (self.d > 0.0 and self.r >= self.d):
            raise DomainError("need r >= d > 0")
        if not 0.0 <= self.facet_circumradius < math.inf:
            raise DomainError("facet circumradius must be finite and nonnegative")


def volume_halfspace_general(q: QuasiRegularParams, cfg: QuadratureConfig | None = None,
                             *, literal_height_constant: bool = False) -> VolumeEstimate:
    """Half-space volume of a quasi-regular simplex.

    The vertical upper bound above a boundary point with barycentric sum
    a is T - (T - 1) a - rho^2 with T = e^{2(r+d)} (the squared Euclidean
    height of the apex in the normalized picture); the slope is tied to
    the constant by the facet-vertex collapse condition upper = lower at
    a = 1.  ``literal_height_constant`` substitutes T = (e^{r+d} + 1)^2,
    which breaks the collapse condition and the reduction to the regular
    case; it is provided for comparison only.

    Reduces to `volume_halfspace` when (r, d, facet_circumradius) are the
    regular values (r_n, d_n, r_{n-1}).
    """
    cfg = cfg or QuadratureConfig()
    if q.facet_circumradius == 0.0:
        return VolumeEstimate(0.0, 0.0, 0, "halfspace-general")
    sigma = math.tanh(q.facet_circumradius)
    w_perp = 1.0 / math.cosh(q.facet_circumradius) ** 2
    if literal_height_constant:
        slope = math.exp(q.r + q.d) * (math.exp(q.r + q.d) + 2.0)
    else:
        slope = math.expm1(2.0 * (q.r + q.d))           # T - 1, exact for small r+d
    est = _halfspace_value(q.n, sigma, w_perp, slope, cfg)
    return replace(est, method="halfspace-general")


def richardson_limit(eps: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Extrapolate values(eps) to eps -> 0 from the last three entries
    (Aitken delta-squared; exact when the error decays geometrically along
    the sequence).  Returns (limit, error_estimate).
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        raise DomainError("need at least three values to extrapolate")
    v1, v2, v3 = values[-3], values[-2], values[-1]
    d1, d2 = v2 - v1, v3 - v2
    denom = d2 - d1
    if denom == 0.0:
        return v3, abs(d2)
    limit = v3 - d2 * d2 / denom
    return limit, abs(limit - v3)

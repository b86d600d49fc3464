"""Independent oracles the tests check the package against.

Nothing here imports from hypervol's numerical engines: every value is
produced by a different route (closed forms, classical identities,
series, or high-precision mpmath quadrature) so agreement is evidence,
not circularity.
"""

import math

import mpmath as mp
import numpy as np


def gauss_bonnet_triangle_area(circumradius: float) -> float:
    """Area of the equilateral hyperbolic triangle with the given
    circumradius: pi minus three times the vertex angle, with the angle
    from the right-triangle relation cot(theta/2) = cosh(R) tan(pi/3)."""
    theta = 2.0 * math.atan(1.0 / (math.cosh(circumradius) * math.tan(math.pi / 3)))
    return math.pi - 3.0 * theta


def lobachevsky(theta: float, terms: int = 60) -> float:
    """The Lobachevsky function via its log-series,
    L(x) = x - x ln(2x) + sum_k zeta(2k) x^(2k+1) / (k (2k+1) pi^(2k))."""
    x = mp.mpf(theta)
    out = x - x * mp.log(2 * x)
    for k in range(1, terms):
        out += mp.zeta(2 * k) * x ** (2 * k + 1) / (k * (2 * k + 1) * mp.pi ** (2 * k))
    return float(out)


def ideal_tetrahedron_volume() -> float:
    """3 L(pi/3): the volume of the regular ideal 3-simplex."""
    return 3.0 * lobachevsky(math.pi / 3)


# frozen from the series oracle above (and confirmed against the Clausen
# function); ideal_tetrahedron_volume() must reproduce it
IDEAL_TET = 1.0149416064096536


def regular_simplex_volume_by_edge(n: int) -> float:
    """Euclidean volume of the regular n-simplex inscribed in the unit
    sphere, via the edge-length formula V = a^n / n! sqrt((n+1)/2^n)."""
    a = math.sqrt(2.0 * (n + 1) / n)
    return a**n / math.factorial(n) * math.sqrt((n + 1) / 2.0**n)


def klein_triangle_integral(sigma, p, dps: int = 50) -> float:
    """50-digit reference for integral over S(2) of (1 - sigma^2 r^2)^(-p),
    by exact radial integration over the three polar cones (valid p != 1)."""
    with mp.workdps(dps):
        sigma = mp.mpf(sigma)
        p = mp.mpf(p)

        def cone(phi):
            r_edge = 1 / (2 * mp.cos(phi))
            inner = ((1 - sigma**2 * r_edge**2) ** (1 - p) - 1) / (2 * sigma**2 * (p - 1))
            return inner

        val = 3 * mp.quad(cone, [-mp.pi / 3, mp.pi / 3])
        return float(val)


def mp_integral(f, a, b, dps: int = 50) -> float:
    """50-digit adaptive reference for a 1-d integral."""
    with mp.workdps(dps):
        return float(mp.quad(f, [a, b]))


def face_centroids(vertices: np.ndarray) -> list[np.ndarray]:
    """Centroids K_1..K_{n-1} of the nested faces spanned by the first
    2, 3, ..., n vertices (the hyperbolic face centers, since the
    vertex-permuting symmetries fix the origin and act orthogonally)."""
    n = vertices.shape[1]
    return [vertices[: k + 1].mean(axis=0) for k in range(1, n)]


def hyperbolic_triangle_angle_from_side(cosh_side: float) -> float:
    """Vertex angle of the equilateral hyperbolic triangle with the given
    side, from the hyperbolic law of cosines:
    cos(theta) = cosh(side) / (cosh(side) + 1)."""
    return math.acos(cosh_side / (cosh_side + 1.0))

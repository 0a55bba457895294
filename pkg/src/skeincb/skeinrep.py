"""Operator images of the curve generators on a genus-zero surface.

Two faithful pictures of the same algebra are built here.  The trace picture
lands in ``ztrace(n)`` and assigns to the generator curves the values

    gamma_i  ->  -A**2 Q_i**2 - A**-2 Q_i**-2,
    delta_j  ->  -A**2 C_j**2 - A**-2 C_j**-2,
    sigma_i  ->  E_i**2 H_2 + H_0 + E_i**-2 H_-2,

while the polynomial picture lands in ``xtorus(n)`` via the reversing map
``star`` (A -> q**(1/2), C_i -> q**(-1/2) t_i**(-1/2), Q_i -> q**(-1/2)
X_i**(1/2), E_i -> q**(-1/2) X_i**-1 W_i).  The identity-on-curves
anti-involution that completes the composition fixes every generator used
here, so the polynomial image of a generator is simply star of its trace
image; ``verify_factorization`` checks that against the closed formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qdiff import OpElement, apply_antimap, mul, substitute, xtorus, ztrace
from .scalars import AlgebraError, mat_det


@dataclass(frozen=True)
class SurfaceParams:
    """Genus-zero surface with n+2 boundary circles; interior indices 1..n-1."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise AlgebraError(f"need n >= 2, got n={self.n}")

    def gauge_range(self):
        return range(1, self.n)

    def boundary_range(self):
        return range(0, self.n + 2)


@dataclass(frozen=True)
class GeneratorId:
    """A curve generator: gamma:i, delta:j, sigma:i (= the i,i+1 loop), theta:i:m."""

    kind: str
    index: int
    twist: int = 0

    def validate(self, p):
        if self.kind in ("gamma", "sigma", "theta"):
            if not 1 <= self.index <= p.n - 1:
                raise AlgebraError(f"{self.kind} index {self.index} out of range for n={p.n}")
        elif self.kind == "delta":
            if not 0 <= self.index <= p.n + 1:
                raise AlgebraError(f"delta index {self.index} out of range for n={p.n}")
        else:
            raise AlgebraError(f"unknown generator kind {self.kind!r}")
        return self


def _u(x):
    return x - 1 / x


def upsilon(g, p):
    """Trace image of a generator curve, in ztrace(n)."""
    g.validate(p)
    alg = ztrace(p.n)
    s = alg.s
    A2 = s**-2
    if g.kind == "gamma":
        Q = alg.gen(f"Q{g.index}")
        return OpElement.coeff(alg, -A2 * Q**2 - Q**-2 / A2)
    if g.kind == "delta":
        C = alg.gen(f"C{g.index}")
        return OpElement.coeff(alg, -A2 * C**2 - C**-2 / A2)
    if g.kind != "sigma":
        raise AlgebraError(f"no trace formula for generator kind {g.kind!r}")

    i, n = g.index, p.n
    Qi = alg.gen(f"Q{i}")
    Ci = alg.gen(f"C{i}")
    Cip = alg.gen(f"C{i + 1}")
    # ends of the four-holed subsurface; the boundary cases swap in C's
    left = alg.gen("C0") if i == 1 else alg.gen(f"Q{i - 1}")
    right = alg.gen(f"C{n + 1}") if i == n - 1 else alg.gen(f"Q{i + 1}")
    H2 = -(
        _u(A2 / Ci * left * Qi)
        * _u(A2 / Cip * right * Qi)
        * _u(Ci * left / Qi)
        * _u(Cip * right / Qi)
    ) / (_u(A2 * Qi**2) * _u(A2**2 * Qi**2))
    Hm2 = -(
        _u(A2 * Ci * left * Qi)
        * _u(Ci / left * Qi)
        * _u(A2 * Cip * right * Qi)
        * _u(Cip / right * Qi)
    ) / (_u(Qi**2) * _u(A2 * Qi**2))
    H0 = -H2 - Hm2 - A2 * Ci**2 * Cip**2 - (Ci**2 * Cip**2 * A2) ** -1
    E2 = OpElement.shift_monomial(alg, f"E{i}", 2)
    return (
        mul(E2, OpElement.coeff(alg, H2))
        + OpElement.coeff(alg, H0)
        + mul(E2.inv(), OpElement.coeff(alg, Hm2))
    )


def t_coeff(i, arg, p):
    """The sigma coefficient T_i evaluated at x = X_i**arg, arg in {1,-1}.

    Interior form, with the end coordinates replaced by boundary parameters
    when the subsurface touches the boundary (X_0 -> t_0, X_n -> t_{n+1}):

    -q**-1 t_i**-1 t_{i+1}**-1 *
      (1-q t_i X_{i-1} x)(1-q t_i X_{i-1}**-1 x)(1-q t_{i+1} X_{i+1} x)
      (1-q t_{i+1} X_{i+1}**-1 x) / ((1-x**2)(1-q**2 x**2))
    """
    if not 1 <= i <= p.n - 1:
        raise AlgebraError(f"index {i} out of range for n={p.n}")
    if arg not in (1, -1):
        raise AlgebraError("arg must be +1 or -1")
    alg = xtorus(p.n)
    q = alg.q()
    ti, tip = alg.t(i), alg.t(i + 1)
    x = alg.gen(f"x{i}") ** (2 * arg)
    left = alg.t(0) if i == 1 else alg.gen(f"x{i - 1}") ** 2
    right = alg.t(p.n + 1) if i == p.n - 1 else alg.gen(f"x{i + 1}") ** 2
    num = (
        (1 - q * ti * left * x)
        * (1 - q * ti / left * x)
        * (1 - q * tip * right * x)
        * (1 - q * tip / right * x)
    )
    den = (1 - x**2) * (1 - q**2 * x**2)
    return -num / (q * ti * tip * den)


def _tau(p, i, power=1):
    alg = xtorus(p.n)
    base = OpElement(
        alg,
        {
            tuple(2 if k == i - 1 else 0 for k in range(p.n - 1)): alg.s**-4
            * alg.gen(f"x{i}") ** -4
        },
    )
    return base if power == 1 else base.inv()


def phi(g, p):
    """Polynomial image of a generator curve, in xtorus(n)."""
    g.validate(p)
    alg = xtorus(p.n)
    if g.kind == "gamma":
        x = alg.gen(f"x{g.index}")
        return OpElement.coeff(alg, -(x**2) - x**-2)
    if g.kind == "delta":
        t = alg.t(g.index)
        return OpElement.coeff(alg, -t - 1 / t)
    if g.kind != "sigma":
        raise AlgebraError(f"no polynomial formula for generator kind {g.kind!r}")
    i = g.index
    q = alg.q()
    ti, tip = alg.t(i), alg.t(i + 1)
    one = OpElement.coeff(alg, alg.one)
    part_up = mul(OpElement.coeff(alg, t_coeff(i, 1, p)), _tau(p, i) - one)
    part_dn = mul(OpElement.coeff(alg, t_coeff(i, -1, p)), _tau(p, i, -1) - one)
    const = OpElement.coeff(alg, -q * ti * tip - 1 / (q * ti * tip))
    return part_up + part_dn + const


def theta_principal(i, m, p):
    """The two moving terms of the twisted-family image:

    q**m X_i**m T_i(X_i)(tau_i - 1) + q**m X_i**-m T_i(X_i**-1)(tau_i**-1 - 1).
    """
    if not 1 <= i <= p.n - 1:
        raise AlgebraError(f"index {i} out of range for n={p.n}")
    alg = xtorus(p.n)
    pref = alg.s ** (2 * m)
    x = alg.gen(f"x{i}")
    one = OpElement.coeff(alg, alg.one)
    up = mul(
        OpElement.coeff(alg, pref * x ** (2 * m) * t_coeff(i, 1, p)),
        _tau(p, i) - one,
    )
    dn = mul(
        OpElement.coeff(alg, pref * x ** (-2 * m) * t_coeff(i, -1, p)),
        _tau(p, i, -1) - one,
    )
    return up + dn


def theta_one(i, p):
    """Once-twisted image from the commutator recursion:

    (q**2 - q**-2)**-1 (q**-1 G T - q T G + (q**-1 - q) L)

    with G, T the images of the small loop and the untwisted family member,
    and L the image of gamma_{i-1} delta_{i+1} + gamma_{i+1} delta_i, the end
    factors degenerating to delta_0 and delta_{n+1} at the boundary.  The
    prefactor sign is pinned by the moving coefficients q X_i**(+-1)
    T_i(X_i**(+-1)) this element must share with theta_principal(i, 1).
    """
    if not 1 <= i <= p.n - 1:
        raise AlgebraError(f"index {i} out of range for n={p.n}")
    alg = xtorus(p.n)
    q = alg.q()
    G = phi(GeneratorId("gamma", i), p)
    T0 = phi(GeneratorId("sigma", i), p)
    low = phi(GeneratorId("delta", 0), p) if i == 1 else phi(GeneratorId("gamma", i - 1), p)
    high = (
        phi(GeneratorId("delta", p.n + 1), p)
        if i == p.n - 1
        else phi(GeneratorId("gamma", i + 1), p)
    )
    L = mul(low, phi(GeneratorId("delta", i + 1), p)) + mul(
        high, phi(GeneratorId("delta", i), p)
    )
    inner = mul(G, T0).scale(1 / q) - mul(T0, G).scale(q) + L.scale(1 / q - q)
    return inner.scale(1 / (q**2 - q**-2))


def star(a):
    """The product-reversing map from ztrace(n) into xtorus(n)."""
    n = a.alg.key[1]
    src, dst = ztrace(n), xtorus(n)
    if a.alg is not src:
        raise AlgebraError(f"star expects a ztrace element, got {a.alg.key}")
    s = dst.s
    coord_images = {f"Q{i}": s**-1 * dst.gen(f"x{i}") for i in range(1, n)}
    coord_images.update({f"C{j}": 1 / (s * dst.gen(f"u{j}")) for j in range(n + 2)})
    shift_images = {
        f"E{i}": OpElement.shift_monomial(
            dst, f"W{i}", 1, s**-1 * dst.gen(f"x{i}") ** -2
        )
        for i in range(1, n)
    }
    scalar_map = {"s": 1 / s}  # A = 1/s goes to q**(1/2) = s
    return apply_antimap(a, dst, coord_images, shift_images, scalar_map)


def verify_factorization(g, p):
    """star of the trace image equals the direct polynomial image."""
    return star(upsilon(g, p)) == phi(g, p)


def skein_matrix_det(alg, delta):
    """Determinant of the 4x4 resolution matrix with entries A**(+-2) and delta."""
    s = alg.s
    a, b = s**-2, s**2  # A**2 and A**-2 with A = 1/s
    z = alg.zero
    P = [
        [b, a, delta, z],
        [a, b, delta, z],
        [delta, z, a, b],
        [delta, z, b, a],
    ]
    return mat_det(alg, P)

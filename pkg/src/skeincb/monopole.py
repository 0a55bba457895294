"""Dressed minuscule monopole operators and their torus-invariant image.

The operators E_{i,1}[x^m], F_{i,1}[x^m] live in ``dz(n)``.  Writing
P4(i, e) for the four-factor product

    (1 - q z_i w_{i,e} w_{i-1,+}**-1)(1 - q z_i w_{i,e} w_{i-1,-}**-1)
    (1 - q z_{i+1} w_{i,e} w_{i+1,+}**-1)(1 - q z_{i+1} w_{i,e} w_{i+1,-}**-1)

and Q4(i, e) for the same with the w_{i+-1} factors flipped to the other
side of w_{i,e}, the even-index operators carry the numerator on E and the
odd-index ones carry it on F:

    even i:  E = sum_e w_{i,e}**m P4/(1 - w_{i,-e}/w_{i,e}) D_{i,e}
             F = sum_e q**-2m w_{i,e}**m (1 - w_{i,e}/w_{i,-e})**-1 D_{i,e}**-1
    odd  i:  numerators swap between E and F.

At the ends of the chain the missing gauge coordinates w_{0,+-} and w_{n,+-}
are replaced by the framing parameters z_{0,+-} and z_{n+1,+-}.

``psi`` sends a torus-invariant element (balanced D-exponents per node) into
the polynomial picture: w_{i,+-} -> X_i**(+-1), z's to t's, and each balanced
block D_{i,+} D_{i,-}**-1 to q**-4 X_i**-4 W_i**2.
"""

from __future__ import annotations

from .qdiff import OpElement, dz, mul, xtorus
from .scalars import AlgebraError
from .skeinrep import SurfaceParams, theta_principal


def _w(alg, n, j, sign):
    """Gauge coordinate w_{j,+-}, degenerating to framing z's at j = 0, n."""
    if j == 0:
        return alg.gen(f"z0{sign}")
    if j == n:
        return alg.gen(f"z{n + 1}{sign}")
    return alg.gen(f"w{j}{sign}")


def _numerator4(alg, n, i, eps):
    """Four-factor numerator attached to node i, branch eps, with the
    neighbor coordinates on the side dictated by the node parity."""
    q = alg.q()
    zi, zip1 = alg.gen(f"z{i}"), alg.gen(f"z{i + 1}")
    we = alg.gen(f"w{i}{eps}")
    out = alg.one
    for z, j in ((zi, i - 1), (zip1, i + 1)):
        for sgn in "pm":
            other = _w(alg, n, j, sgn)
            if i % 2 == 0:
                out = out * (1 - q * z * we / other)
            else:
                out = out * (1 - q * z * other / we)
    return out


def _build(alg, n, i, m, which):
    """Assemble E_{i,1}[x^m] (which="E") or F_{i,1}[x^m] (which="F")."""
    if not 1 <= i <= n - 1:
        raise AlgebraError(f"node index {i} out of range for n={n}")
    q = alg.q()
    terms = {}
    for eps in "pm":
        oth = "m" if eps == "p" else "p"
        we, wo = alg.gen(f"w{i}{eps}"), alg.gen(f"w{i}{oth}")
        dressed = we**m
        if which == "E":
            den = 1 - wo / we
            coeff = _numerator4(alg, n, i, eps) / den if i % 2 == 0 else 1 / den
            power = 1
        else:
            den = 1 - we / wo
            coeff = 1 / den if i % 2 == 0 else _numerator4(alg, n, i, eps) / den
            coeff = coeff * q ** (-2 * m)
            power = -1
        key = [0] * len(alg.shifts)
        key[alg.shift_index[f"D{i}{eps}"]] = power
        terms[tuple(key)] = dressed * coeff
    return OpElement(alg, terms)


def monopole_E(i, m, p):
    """The raising dressed monopole operator at node i with dressing x**m."""
    return _build(dz(p.n), p.n, i, m, "E")


def monopole_F(i, m, p):
    """The lowering dressed monopole operator at node i with dressing x**m."""
    return _build(dz(p.n), p.n, i, m, "F")


def invariance_violation(a):
    """Return the first D-monomial with unbalanced exponents, or None."""
    n = a.alg.key[1]
    for key in a.terms:
        for i in range(1, n):
            kp = key[a.alg.shift_index[f"D{i}p"]]
            km = key[a.alg.shift_index[f"D{i}m"]]
            if kp + km != 0:
                return key
    return None


def psi(a):
    """Torus-invariant embedding of dz(n) elements into xtorus(n)."""
    n = a.alg.key[1]
    src, dst = dz(n), xtorus(n)
    if a.alg is not src:
        raise AlgebraError(f"psi expects a dz element, got {a.alg.key}")
    bad = invariance_violation(a)
    if bad is not None:
        raise AlgebraError(f"not torus invariant: D-monomial {bad}")
    images = {"s": dst.s}
    for i in range(1, n):
        images[f"w{i}p"] = dst.gen(f"x{i}") ** 2
        images[f"w{i}m"] = dst.gen(f"x{i}") ** -2
    for j in range(1, n + 1):
        images[f"z{j}"] = dst.t(j)
    images["z0p"], images["z0m"] = dst.t(0), dst.t(0, -1)
    images[f"z{n + 1}p"] = dst.t(n + 1)
    images[f"z{n + 1}m"] = dst.t(n + 1, -1)
    # balanced block at node i: D_{i,+} D_{i,-}**-1 -> q**-4 X_i**-4 W_i**2
    blocks = [
        OpElement(
            dst,
            {
                tuple(2 if k == i - 1 else 0 for k in range(n - 1)): dst.s**-8
                * dst.gen(f"x{i}") ** -8
            },
        )
        for i in range(1, n)
    ]
    out = OpElement(dst, {})
    for key, c in a.terms.items():
        part = OpElement.coeff(dst, src.map_fraction(c, dst, images))
        for i in range(1, n):
            bal = key[src.shift_index[f"D{i}p"]]
            if bal:
                part = mul(part, blocks[i - 1].pow(bal))
        out = out + part
    return out


def comparison_expression(i, m, p):
    """The dressed product whose invariant image matches the twisted family:

    q**m B_i E_{i,1}[x^(m-2)] F_{i,1}[1]          (even i)
    q**(4-m) B_i F_{i,1}[x^(2-m)] E_{i,1}[1]      (odd i)

    with B_i = -q**-1 z_i**-1 z_{i+1}**-1.
    """
    alg = dz(p.n)
    q = alg.q()
    B = -1 / (q * alg.gen(f"z{i}") * alg.gen(f"z{i + 1}"))
    if i % 2 == 0:
        prod = mul(monopole_E(i, m - 2, p), monopole_F(i, 0, p))
        return prod.scale(q**m * B)
    prod = mul(monopole_F(i, 2 - m, p), monopole_E(i, 0, p))
    return prod.scale(q ** (4 - m) * B)


def verify_phi_psi(i, m, p):
    """Invariant image of the dressed product minus the principal part:
    must be shift-free with an inversion-symmetric coefficient."""
    diff = psi(comparison_expression(i, m, p)) - theta_principal(i, m, p)
    if not diff.has_pure_coefficient():
        return False
    rem = diff.constant_coefficient()
    alg = xtorus(p.n)
    return all(
        alg.invert_vars(rem, [f"x{j}"]) == rem for j in range(1, p.n)
    )


def verify_EF_commutator(i, p):
    """Check [E_{i,1}[1], F_{i,1}[1]] = (q - q**-1) h with h a Laurent
    polynomial symmetric under every swap w_{j,+} <-> w_{j,-}; returns (ok, h)."""
    alg = dz(p.n)
    E, F = monopole_E(i, 0, p), monopole_F(i, 0, p)
    comm = mul(E, F) - mul(F, E)
    if not comm.has_pure_coefficient():
        return False, None
    q = alg.q()
    h = comm.constant_coefficient() / (q - 1 / q)
    if alg.laurent_parts(h) is None:
        return False, h
    for j in range(1, p.n):
        if alg.swap_vars(h, [(f"w{j}p", f"w{j}m")]) != h:
            return False, h
    return True, h

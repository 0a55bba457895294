"""Normal-ordered shift-operator elements and the three working algebras.

An :class:`OpElement` is a finite sum  sum_k  c_k(coords) * shift**k  with all
shift generators collected on the right.  Multiplication commutes the left
factor's shift monomial past the right factor's coefficient using the
algebra's pairing table; everything else is coefficient-field arithmetic.

Three instances are provided:

* ``xtorus(n)``  - coordinates X_1..X_{n-1} (square-root generators), shifts
  W_1..W_{n-1}, with  W_i X_j**(1/2) = q**(d_ij/2) X_j**(1/2) W_i,
  over scalars in q**(1/2) and t_0**(1/2)..t_{n+1}**(1/2);
* ``ztrace(n)``  - coordinates Q_1..Q_{n-1} and central C_0..C_{n+1}, shifts
  E_1..E_{n-1}, with  Q_i E_j = A**(d_ij) E_j Q_i  and A = 1/s;
* ``dz(n)``      - coordinates w_{i,+-} and central z_*, shifts D_{i,+-},
  with  D_{i,r} w_{j,s} = q**(2 d_ij d_rs) w_{j,s} D_{i,r}.
"""

from __future__ import annotations

from functools import lru_cache

from .scalars import Algebra, AlgebraError, Var


class OpElement:
    """Normal-ordered element: dict {shift exponent tuple: coefficient}."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {}
        if terms:
            for key, coeff in terms.items():
                if coeff != alg.zero:
                    self.terms[tuple(key)] = coeff

    # construction helpers ---------------------------------------------------

    @classmethod
    def coeff(cls, alg, f):
        """Embed a coefficient as a shift-free element."""
        return cls(alg, {(0,) * len(alg.shifts): f})

    @classmethod
    def shift_monomial(cls, alg, name, power=1, coeff=None):
        key = [0] * len(alg.shifts)
        key[alg.shift_index[name]] = power
        return cls(alg, {tuple(key): coeff if coeff is not None else alg.one})

    def _zero_key(self):
        return (0,) * len(self.alg.shifts)

    # ring structure ----------------------------------------------------------

    def _check(self, other):
        if self.alg is not other.alg:
            raise AlgebraError(
                f"mixed algebras: {self.alg.key} vs {other.alg.key}"
            )

    def __add__(self, other):
        if not isinstance(other, OpElement):
            other = OpElement.coeff(self.alg, self._as_field(other))
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = out.get(key)
            acc = c if acc is None else acc + c
            if acc == self.alg.zero:
                out.pop(key, None)
            else:
                out[key] = acc
        return OpElement(self.alg, out)

    def __neg__(self):
        return OpElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, OpElement) else -OpElement.coeff(self.alg, self._as_field(other)))

    def _as_field(self, x):
        if isinstance(x, int):
            return self.alg.from_int(x)
        return x

    def __mul__(self, other):
        if not isinstance(other, OpElement):
            return self.scale(self._as_field(other))
        self._check(other)
        alg = self.alg
        out = {}
        for k, ck in self.terms.items():
            for l, cl in other.terms.items():
                c = ck * alg.twist(cl, k)
                key = tuple(a + b for a, b in zip(k, l))
                acc = out.get(key)
                acc = c if acc is None else acc + c
                if acc == alg.zero:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return OpElement(alg, out)

    def __rmul__(self, other):
        return self.scale(self._as_field(other))

    def scale(self, f):
        return OpElement(self.alg, {k: f * c for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, OpElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg.key, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def inv(self):
        """Inverse of an invertible monomial: unit coefficient times one shift key."""
        if len(self.terms) != 1:
            raise AlgebraError("only monomial elements are invertible")
        ((key, c),) = self.terms.items()
        if len(c.numer.terms()) != 1 or len(c.denom.terms()) != 1:
            raise AlgebraError("coefficient is not a unit monomial")
        negk = tuple(-k for k in key)
        return OpElement(self.alg, {negk: self.alg.twist(1 / c, negk)})

    def pow(self, k):
        if k < 0:
            return self.inv().pow(-k)
        out = OpElement.coeff(self.alg, self.alg.one)
        for _ in range(k):
            out = out * self
        return out

    # views --------------------------------------------------------------------

    def shift_part_keys(self):
        return sorted(self.terms)

    def coefficient(self, key):
        return self.terms.get(tuple(key), self.alg.zero)

    def constant_coefficient(self):
        return self.terms.get(self._zero_key(), self.alg.zero)

    def has_pure_coefficient(self):
        """True when no nonzero shift key is present."""
        zero = self._zero_key()
        return all(k == zero for k in self.terms)

    def __repr__(self):
        return f"<{self.alg.key} element: {render(self)}>"


def mul(a, b):
    """Normal-ordered product; separate function for symmetry with the tests."""
    return a * b


def substitute(a, table):
    """Coefficient-wise substitution of coordinates within one algebra.

    ``table`` maps display or ring names to field elements.  Targets must be
    invertible monomials (or central scalars, which are monomials in the
    atoms); anything else cannot consistently meet inverse powers.
    """
    alg = a.alg
    images = {v.name: alg.gens[v.name] for v in alg.vars}
    for name, img in table.items():
        v = alg.by_display.get(name)
        ring_name = v.name if v is not None else name
        if ring_name not in alg.index:
            raise AlgebraError(f"unknown coordinate {name}")
        if len(img.numer.terms()) != 1 or len(img.denom.terms()) != 1:
            raise AlgebraError(f"substitution target for {name} is not an invertible monomial")
        images[ring_name] = img
    out = {}
    for key, c in a.terms.items():
        out[key] = alg.map_fraction(c, alg, images)
    return OpElement(alg, out)


def apply_antimap(a, dst, coord_images, shift_images, scalar_map):
    """Apply an algebra anti-map to a normal-ordered element.

    Each stored monomial c * shift**k goes to  image(shift**k) * image(c):
    the product order is reversed, coefficients are pushed through the
    generator tables atom-wise.  ``coord_images`` and ``scalar_map`` give
    field elements of ``dst`` for the source ring generators; ``shift_images``
    gives an invertible monomial :class:`OpElement` of ``dst`` per shift name.
    """
    alg = a.alg
    images = dict(scalar_map)
    images.update(coord_images)
    missing = [v.name for v in alg.vars if v.name not in images]
    if missing:
        raise AlgebraError(f"anti-map images missing for generators {missing}")
    out = OpElement(dst, {})
    for key, c in a.terms.items():
        part = OpElement.coeff(dst, dst.one)
        for name, k in zip(alg.shifts, key):
            if k:
                if name not in shift_images:
                    raise AlgebraError(f"anti-map image missing for shift {name}")
                part = part * shift_images[name].pow(k)
        mapped = alg.map_fraction(c, dst, images)
        out = out + part * OpElement.coeff(dst, mapped)
    return out


# -- the three instances -------------------------------------------------------


def _check_n(n):
    if n < 2:
        raise AlgebraError(f"surface parameter n must be >= 2, got {n}")


@lru_cache(maxsize=None)
def xtorus(n):
    """Shift-operator algebra on X_1..X_{n-1}: W_i X_i = q X_i W_i."""
    _check_n(n)
    variables = [Var("s", "q", 2, "atom")]
    variables += [Var(f"u{j}", f"t{j}", 2, "atom") for j in range(n + 2)]
    variables += [Var(f"x{i}", f"X{i}", 2, "coord") for i in range(1, n)]
    shifts = [f"W{i}" for i in range(1, n)]
    # one W past one stored half-power of the same X gives s**1
    pairing = {(f"W{i}", f"x{i}"): 1 for i in range(1, n)}
    return Algebra(("xtorus", n), variables, shifts, pairing)


@lru_cache(maxsize=None)
def ztrace(n):
    """Trace-target algebra: Q_i E_j = A**(d_ij) E_j Q_i with A = 1/s."""
    _check_n(n)
    variables = [Var("s", "q", 2, "atom")]
    variables += [Var(f"Q{i}", f"Q{i}", 1, "coord") for i in range(1, n)]
    variables += [Var(f"C{j}", f"C{j}", 1, "central") for j in range(n + 2)]
    shifts = [f"E{i}" for i in range(1, n)]
    # E_j Q_i = A**(-d_ij) Q_i E_j = s**(d_ij) Q_i E_j
    pairing = {(f"E{i}", f"Q{i}"): 1 for i in range(1, n)}
    return Algebra(("ztrace", n), variables, shifts, pairing)


@lru_cache(maxsize=None)
def dz(n):
    """Localized torus algebra: D_{i,r} w_{j,s} = q**(2 d_ij d_rs) w_{j,s} D_{i,r}."""
    _check_n(n)
    variables = [Var("s", "q", 2, "atom")]
    for i in range(1, n):
        variables.append(Var(f"w{i}p", f"w{i}p", 1, "coord"))
        variables.append(Var(f"w{i}m", f"w{i}m", 1, "coord"))
    variables += [Var(f"z{j}", f"z{j}", 1, "central") for j in range(1, n + 1)]
    variables += [
        Var("z0p", "z0p", 1, "central"),
        Var("z0m", "z0m", 1, "central"),
        Var(f"z{n + 1}p", f"z{n + 1}p", 1, "central"),
        Var(f"z{n + 1}m", f"z{n + 1}m", 1, "central"),
    ]
    shifts = []
    pairing = {}
    for i in range(1, n):
        for sgn in "pm":
            shifts.append(f"D{i}{sgn}")
            pairing[(f"D{i}{sgn}", f"w{i}{sgn}")] = 4
    return Algebra(("dz", n), variables, shifts, pairing)


# -- rendering -------------------------------------------------------------------


def render(a):
    """Canonical text: terms by shift key, coefficients then shift factors."""
    from .scalars import render_coeff

    if not a.terms:
        return "0"
    chunks = []
    for key in sorted(a.terms, reverse=True):
        c = a.terms[key]
        factors = []
        for name, k in zip(a.alg.shifts, key):
            if k:
                factors.append(name if k == 1 else f"{name}^{k}")
        body = render_coeff(a.alg, c)
        if factors:
            needs_parens = (" " in body) and not (body.startswith("(") and body.endswith(")"))
            if needs_parens:
                body = f"({body})"
            body = " * ".join([body] + factors) if body != "1" else " * ".join(factors)
        chunks.append(body)
    out = chunks[0]
    for chunk in chunks[1:]:
        if chunk.startswith("-"):
            out += " - " + chunk[1:]
        else:
            out += " + " + chunk
    return out

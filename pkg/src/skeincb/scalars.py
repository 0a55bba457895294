"""Exact coefficient arithmetic shared by all operator algebras.

Everything in this package is computed over sparse rational-function fields
(sympy ``FracField`` over QQ).  Two representational conventions hold
throughout:

* the field generator ``s`` stands for q**(1/2) and each generator ``u<j>``
  for t<j>**(1/2), so half-integer powers of q and of the t's are ordinary
  integer powers of the generators;
* a coordinate that needs half-integer exponents (the X's) is likewise
  generated by its square root, with exponents stored doubled.

The deformation parameter ``A`` is never a generator of its own outside the
fusion field: the parameter dictionary used everywhere else fixes
A = q**(-1/2) = 1/s.  Quantum integers are symmetric under A -> 1/A, so all
quantum combinatorics can be written directly in ``s``.

An :class:`Algebra` bundles one such field with the names, display forms and
commutation data of its generators.  It is deliberately dumb: normal-ordered
operator elements live in :mod:`skeincb.qdiff`, this module only knows how to
move scalar monomial factors around (twists, shifts, inversions) and how to
render and evaluate coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ
from sympy.polys.fields import field as _sympy_field


class Var:
    """One field generator: ring name, display name, doubling step, kind."""

    __slots__ = ("name", "display", "step", "kind")

    def __init__(self, name, display=None, step=1, kind="coord"):
        self.name = name
        self.display = display if display is not None else name
        self.step = step
        self.kind = kind  # "atom", "coord" or "central"

    def __repr__(self):
        return f"Var({self.name!r}, {self.display!r}, step={self.step}, kind={self.kind!r})"


class AlgebraError(ValueError):
    """Raised on malformed or out-of-contract algebra operations."""


class Algebra:
    """A coefficient field plus the commutation data of a shift-operator algebra.

    ``pairing[(shift, var)]`` is the integer exponent e such that moving the
    shift once past one power of the ring generator produces s**e, i.e.

        shift * var = s**e * var * shift.

    Central generators simply have no pairing entry.  Algebras without shifts
    (the fusion scalar field, for instance) are plain coefficient fields.
    """

    def __init__(self, key, variables, shifts=(), pairing=None, qint_base="s"):
        self.key = key
        self.vars = list(variables)
        self.shifts = list(shifts)
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {key}")
        created = _sympy_field(",".join(names), QQ)
        self.field = created[0]
        self.ring = self.field.ring
        self.gens = dict(zip(names, created[1:]))
        self.index = {n: i for i, n in enumerate(names)}
        self.by_display = {v.display: v for v in self.vars}
        self.shift_index = {sh: i for i, sh in enumerate(self.shifts)}
        pairing = pairing or {}
        for (sh, vn) in pairing:
            if sh not in self.shift_index or vn not in self.index:
                raise AlgebraError(f"pairing entry ({sh},{vn}) names unknown generators")
        # per shift: list of (var position, s-exponent per unit power)
        self.pair_rows = [
            [(self.index[vn], e) for (sh2, vn), e in pairing.items() if sh2 == sh and e]
            for sh in self.shifts
        ]
        self.s_i = self.index.get("s")
        self.qint_base = self.gens[qint_base]
        self.zero = self.field.zero
        self.one = self.field.one

    # -- small constructors -------------------------------------------------

    def __repr__(self):
        return f"Algebra({self.key})"

    def gen(self, name):
        return self.gens[name]

    @property
    def s(self):
        return self.gens["s"]

    def q(self, k=1):
        """q**k as a field element."""
        return self.s ** (2 * k)

    def t(self, j, k=1):
        """t<j>**k as a field element."""
        return self.gens[f"u{j}"] ** (2 * k)

    def coord_names(self, kind=None):
        if kind is None:
            return [v.name for v in self.vars if v.kind != "atom"]
        return [v.name for v in self.vars if v.kind == kind]

    def atom_names(self):
        return [v.name for v in self.vars if v.kind == "atom"]

    def from_int(self, k):
        return self.field.one * QQ(k)

    def frac(self, num_terms, den_terms=None):
        """Build a field element from {monomial tuple: QQ} dictionaries."""
        num = self.ring.from_dict({m: QQ(c) for m, c in num_terms.items()})
        if den_terms is None:
            return self.field.new(num, self.ring.one)
        den = self.ring.from_dict({m: QQ(c) for m, c in den_terms.items()})
        return self.field.new(num, den)

    # -- monomial surgery ---------------------------------------------------

    def _remap(self, poly, fn):
        """Apply ``fn(monom) -> (monom, s_off)`` to each term; normalize offsets.

        Returns (poly2, off) with the original polynomial equal to
        poly2 * s**off and poly2 having nonnegative s-exponents.
        """
        items = []
        low = None
        for monom, coef in poly.terms():
            m2, off = fn(monom)
            items.append((m2, off, coef))
            if low is None or off < low:
                low = off
        if low is None:
            return poly, 0
        out = {}
        for m2, off, coef in items:
            if off != low:
                m2 = list(m2)
                m2[self.s_i] += off - low
                m2 = tuple(m2)
            out[m2] = out.get(m2, QQ(0)) + coef
        return self.ring.from_dict(out), low

    def _rebalance(self, num, noff, den, doff):
        diff = noff - doff
        if diff > 0:
            num = num * self.gens["s"].numer ** diff
        elif diff < 0:
            den = den * self.gens["s"].numer ** (-diff)
        return self.field.new(num, den)

    def twist(self, f, key):
        """Commute the shift monomial with exponents ``key`` left past ``f``.

        shift**key * f(coords) = twist(f, key) * shift**key.
        """
        if not any(key) or f == self.zero:
            return f

        def fn(monom):
            e = 0
            for si, k in enumerate(key):
                if k:
                    for vi, step in self.pair_rows[si]:
                        if monom[vi]:
                            e += k * step * monom[vi]
            return monom, e

        num, noff = self._remap(f.numer, fn)
        den, doff = self._remap(f.denom, fn)
        return self._rebalance(num, noff, den, doff)

    def invert_vars(self, f, names):
        """Substitute v -> 1/v simultaneously for the named generators."""
        idxs = [self.index[n] for n in names]
        if not idxs or f == self.zero:
            return f

        def conv(poly):
            top = {i: 0 for i in idxs}
            for monom, _ in poly.terms():
                for i in idxs:
                    if monom[i] > top[i]:
                        top[i] = monom[i]
            out = {}
            for monom, coef in poly.terms():
                m2 = list(monom)
                for i in idxs:
                    m2[i] = top[i] - m2[i]
                out[tuple(m2)] = coef
            return self.ring.from_dict(out), top

        num, ntop = conv(f.numer)
        den, dtop = conv(f.denom)
        # residual monomial prod v**(dtop - ntop) multiplies num
        extra_num = self.ring.one
        extra_den = self.ring.one
        for i in idxs:
            d = dtop[i] - ntop[i]
            gp = self.ring.gens[i]
            if d > 0:
                extra_num = extra_num * gp**d
            elif d < 0:
                extra_den = extra_den * gp ** (-d)
        return self.field.new(num * extra_num, den * extra_den)

    def swap_vars(self, f, pairs):
        """Exchange generator exponents for each (name, name) pair."""
        table = {}
        for a, b in pairs:
            ia, ib = self.index[a], self.index[b]
            table[ia] = ib
            table[ib] = ia

        def conv(poly):
            out = {}
            for monom, coef in poly.terms():
                m2 = list(monom)
                for i, j in table.items():
                    m2[j] = monom[i]
                out[tuple(m2)] = coef
            return self.ring.from_dict(out)

        return self.field.new(conv(f.numer), conv(f.denom))

    def map_fraction(self, f, dst, images):
        """Push ``f`` through the generator substitution ``images``.

        ``images`` maps ring-generator names of this algebra to elements of
        ``dst.field``; unnamed generators must not occur in ``f``.
        """
        imgs = []
        for v in self.vars:
            imgs.append(images.get(v.name))

        def mp(poly):
            tot = dst.field.zero
            for monom, coef in poly.terms():
                term = dst.field.one * coef
                for gi, e in enumerate(monom):
                    if e:
                        if imgs[gi] is None:
                            raise AlgebraError(
                                f"no image for generator {self.vars[gi].name} of {self.key}"
                            )
                        term = term * imgs[gi] ** e
                tot = tot + term
            return tot

        den = mp(f.denom)
        if den == dst.field.zero:
            raise ZeroDivisionError("substitution sends a denominator to zero")
        return mp(f.numer) / den

    def laurent_parts(self, f):
        """Split ``f`` into {coordinate monomial: scalar} or return None.

        Succeeds exactly when ``f`` is a Laurent polynomial in the coordinate
        generators over the atom subfield: the denominator may involve the
        coordinates only through one overall monomial.  Keys are coordinate
        exponent tuples (atom positions zeroed), values are scalar fractions.
        """
        coord_pos = [self.index[n] for n in self.coord_names()]
        atom_pos = [i for i in range(len(self.vars)) if i not in coord_pos]

        def split(monom):
            c = [0] * len(self.vars)
            a = [0] * len(self.vars)
            for i in coord_pos:
                c[i] = monom[i]
            for i in atom_pos:
                a[i] = monom[i]
            return tuple(c), tuple(a)

        dshape = None
        den_scalar = {}
        for monom, coef in f.denom.terms():
            c, a = split(monom)
            if dshape is None:
                dshape = c
            elif dshape != c:
                return None
            den_scalar[a] = coef
        den = self.ring.from_dict(den_scalar)
        groups = {}
        for monom, coef in f.numer.terms():
            c, a = split(monom)
            rel = tuple(x - y for x, y in zip(c, dshape))
            groups.setdefault(rel, {})[a] = coef
        return {
            rel: self.field.new(self.ring.from_dict(g), den)
            for rel, g in groups.items()
        }

    def eval_at(self, f, values):
        """Evaluate at rational points; ``values`` maps generator name -> Fraction."""
        subs = []
        for v in self.vars:
            val = values[v.name]
            subs.append((self.ring.gens[self.index[v.name]], QQ(val.numerator, val.denominator)))
        num = f.numer.evaluate(subs)
        den = f.denom.evaluate(subs)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return Fraction(int(num.numerator), int(num.denominator)) / Fraction(
            int(den.numerator), int(den.denominator)
        )


# -- quantum combinatorics ---------------------------------------------------


def qint(alg, k):
    """The quantum integer [k] = (b**2k - b**-2k)/(b**2 - b**-2).

    ``b`` is the algebra's designated base (``s`` in the operator contexts,
    ``A`` in the fusion field); [k] does not depend on the choice b vs 1/b.
    """
    b = alg.qint_base
    if k == 0:
        return alg.zero
    return (b ** (2 * k) - b ** (-2 * k)) / (b**2 - b ** (-2))


def qfact(alg, k):
    """The quantum factorial [k]! = [1][2]...[k]; rejects negative k."""
    if k < 0:
        raise AlgebraError(f"quantum factorial needs k >= 0, got {k}")
    out = alg.one
    for j in range(2, k + 1):
        out = out * qint(alg, j)
    return out


def kappa(alg, c, d):
    """Basis normalization: prod [c_i]! over the vertex half-sum factorials.

    ``c`` lists the n-1 interior colors, ``d`` the n+2 boundary colors.  The
    vertex at position j (1-based) sees the path colors (c_{j-1}, c_j) with
    c_0 = d_0 and c_n = d_{n+1}, plus the leg color d_j, and contributes
    [(c_{j-1} + c_j - d_j)/2]! to the denominator.
    """
    n = len(c) + 1
    if len(d) != n + 2:
        raise AlgebraError(f"expected {n + 2} boundary colors, got {len(d)}")
    path = [d[0]] + list(c) + [d[n + 1]]
    num = alg.one
    for ci in c:
        num = num * qfact(alg, ci)
    den = alg.one
    for j in range(1, n + 1):
        h2 = path[j - 1] + path[j] - d[j]
        if h2 < 0 or h2 % 2:
            raise AlgebraError(
                f"vertex {j}: half-sum ({path[j - 1]}+{path[j]}-{d[j]})/2 "
                "is not a nonnegative integer"
            )
        den = den * qfact(alg, h2 // 2)
    return num / den


# -- coordinate transport ----------------------------------------------------


def shift(alg, f, lam):
    """Substitute X_j -> q**(2*lam_j) X_j for every coordinate position j.

    ``lam`` is indexed against ``alg.coord_names("coord")``, the doubling
    convention making the s-exponent bump 2*lam_j per stored unit.
    """
    coords = alg.coord_names("coord")
    if len(lam) != len(coords):
        raise AlgebraError(f"expected {len(coords)} shift entries, got {len(lam)}")
    pos = {alg.index[n]: 2 * l for n, l in zip(coords, lam) if l}
    if not pos or f == alg.zero:
        return f

    def fn(monom):
        e = 0
        for i, w in pos.items():
            if monom[i]:
                e += w * monom[i]
        return monom, e

    num, noff = alg._remap(f.numer, fn)
    den, doff = alg._remap(f.denom, fn)
    return alg._rebalance(num, noff, den, doff)


def invariant_under_inversion(alg, f, idx):
    """True iff f is fixed by X_j -> 1/X_j for every j in idx (simultaneously)."""
    coords = alg.coord_names("coord")
    names = [coords[j - 1] for j in idx]
    return alg.invert_vars(f, names) == f


# -- exact linear algebra ----------------------------------------------------


def mat_det(alg, mat):
    """Determinant by fraction-field Gaussian elimination."""
    m = [row[:] for row in mat]
    size = len(m)
    det = alg.one
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != alg.zero), None)
        if piv is None:
            return alg.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = alg.one / m[col][col]
        for r in range(col + 1, size):
            if m[r][col] != alg.zero:
                factor = m[r][col] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def mat_inv(alg, mat):
    """Exact inverse of a square matrix of field elements."""
    size = len(mat)
    m = [row[:] + [alg.one if r == c else alg.zero for c in range(size)] for r, row in enumerate(mat)]
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != alg.zero), None)
        if piv is None:
            raise AlgebraError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = alg.one / m[col][col]
        m[col] = [a * inv for a in m[col]]
        for r in range(size):
            if r != col and m[r][col] != alg.zero:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [row[size:] for row in m]


def mat_apply(alg, mat, vec):
    """Matrix times a vector whose entries admit scalar multiplication and +."""
    out = []
    for row in mat:
        acc = None
        for a, v in zip(row, vec):
            term = v.scale(a) if hasattr(v, "scale") else a * v
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


# -- canonical text ----------------------------------------------------------


def _fmt_exp(e, step):
    if e % step == 0:
        k = e // step
        return None if k == 1 else str(k)
    return f"{e}/{step}"


def _fmt_coeff(coef):
    return str(coef) if coef.denominator == 1 else f"{coef.numerator}/{coef.denominator}"


def render_poly(alg, poly, fold=None):
    """Render a polynomial, optionally folding the monomial ``fold`` out of it."""
    terms = sorted(poly.terms(), key=lambda t: t[0], reverse=True)
    parts = []
    for monom, coef in terms:
        if fold is not None:
            monom = tuple(a - b for a, b in zip(monom, fold))
        factors = []
        for v, e in zip(alg.vars, monom):
            if not e:
                continue
            ex = _fmt_exp(e, v.step)
            factors.append(v.display if ex is None else f"{v.display}^{ex}")
        mag = _fmt_coeff(abs(coef))
        if factors and mag == "1":
            body = "*".join(factors)
        elif factors:
            body = "*".join([mag] + factors)
        else:
            body = mag
        parts.append(("-" if coef < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def render_coeff(alg, f):
    """Canonical text for a coefficient; monomial denominators fold into exponents."""
    dterms = f.denom.terms()
    if len(dterms) == 1:
        monom, coef = dterms[0]
        body = render_poly(alg, f.numer, fold=monom)
        if coef == 1:
            return body
        if body.startswith("(") or " " in body:
            return f"({body})/{_fmt_coeff(coef)}"
        return f"{body}/{_fmt_coeff(coef)}"
    num = render_poly(alg, f.numer)
    den = render_poly(alg, f.denom)
    if " " in num or "/" in num:
        num = f"({num})"
    if " " in den or "/" in den or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"

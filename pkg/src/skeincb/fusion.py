"""Planar diagram algebra, projector idempotents and fusion coefficients.

Diagrams on c strands are perfect non-crossing matchings of c bottom and c
top boundary points of a rectangle.  Stacking two diagrams and removing each
closed loop at the cost of a factor -A**2 - A**-2 makes the span of diagrams
an algebra over Q(A); the projector jones_wenzl(c) is its unique idempotent
killed by every cup-cap generator.

The scalar field here carries a second generator B standing for a symbolic
strand color A**c, so the closed-loop evaluation ``gamma_loop_eval`` is an
identity in Q(A, B) covering every color at once.
"""

from __future__ import annotations

from functools import lru_cache

from .scalars import Algebra, AlgebraError, Var, qint


@lru_cache(maxsize=None)
def fusion_field():
    """Q(A, B) with B a symbolic color power A**c."""
    return Algebra(
        ("fusion",),
        [Var("a", "A", 1, "atom"), Var("b", "B", 1, "atom")],
        qint_base="a",
    )


class TLDiagram:
    """A planar matching of 2c points: bottom 0..c-1, top c..2c-1."""

    __slots__ = ("c", "match")

    def __init__(self, c, match):
        match = tuple(match)
        if len(match) != 2 * c:
            raise AlgebraError(f"need {2 * c} endpoints, got {len(match)}")
        for i, j in enumerate(match):
            if j == i or not 0 <= j < 2 * c or match[j] != i:
                raise AlgebraError("not a perfect matching")
        # walk the boundary (bottom left to right, then top right to left);
        # planarity is the balanced-nesting condition in that order
        order = list(range(c)) + list(range(2 * c - 1, c - 1, -1))
        stack = []
        for p in order:
            if stack and stack[-1] == match[p]:
                stack.pop()
            else:
                stack.append(p)
        if stack:
            raise AlgebraError("matching is not planar")
        self.c = c
        self.match = match

    @classmethod
    def identity(cls, c):
        return cls(c, [i + c for i in range(c)] + list(range(c)))

    @classmethod
    def cupcap(cls, c, j):
        """Generator e_j, 0-indexed: cups joining strands j, j+1 top and bottom."""
        if not 0 <= j <= c - 2:
            raise AlgebraError(f"cup-cap index {j} out of range for c={c}")
        match = list(range(2 * c))
        for base in (0, c):
            match[base + j], match[base + j + 1] = base + j + 1, base + j
        for k in range(c):
            if k not in (j, j + 1):
                match[k], match[k + c] = k + c, k
        return cls(c, match)

    def __eq__(self, other):
        return isinstance(other, TLDiagram) and self.match == other.match

    def __hash__(self):
        return hash(self.match)

    def __repr__(self):
        return f"TLDiagram({self.c}, {self.match})"


@lru_cache(maxsize=65536)
def _compose(d1, d2):
    """Stack d1 below d2; return (resulting match, closed loop count)."""
    c = d1.c
    # entering layer 1 at point p exits at d1.match[p]; pts >= c cross into
    # layer 2 at the same strand, and symmetrically from layer 2 down
    result = {}
    seen_mid = set()

    def walk(layer, p):
        while True:
            if layer == 1:
                q = d1.match[p]
                if q < c:
                    return ("b", q)
                seen_mid.add(q - c)
                layer, p = 2, q - c
            else:
                q = d2.match[p]
                if q >= c:
                    return ("t", q - c)
                seen_mid.add(q)
                layer, p = 1, q + c

    ends = [("b", i) for i in range(c)] + [("t", i) for i in range(c)]
    done = set()
    pairs = []
    for side, i in ends:
        if (side, i) in done:
            continue
        other = walk(1, i) if side == "b" else walk(2, i + c)
        pairs.append(((side, i), other))
        done.add((side, i))
        done.add(other)
    loops = 0
    for j in range(c):
        if j in seen_mid:
            continue
        # follow the cycle through the middle layer until it recrosses j
        loops += 1
        seen_mid.add(j)
        layer, p = 2, j
        while True:
            if layer == 2:
                q = d2.match[p]
                if q == j:
                    break
                seen_mid.add(q)
                layer, p = 1, q + c
            else:
                q = d1.match[p]
                if q - c == j:
                    break
                seen_mid.add(q - c)
                layer, p = 2, q - c
    match = [0] * (2 * c)
    for (s1, i1), (s2, i2) in pairs:
        a = i1 if s1 == "b" else i1 + c
        b = i2 if s2 == "b" else i2 + c
        match[a], match[b] = b, a
    return TLDiagram(c, match), loops


class TLElement:
    """Formal combination of diagrams on a fixed strand count."""

    __slots__ = ("c", "terms")

    def __init__(self, c, terms=None):
        self.c = c
        zero = fusion_field().zero
        self.terms = {}
        for d, coeff in (terms or {}).items():
            if coeff != zero:
                self.terms[d] = coeff

    @classmethod
    def from_diagram(cls, d):
        return cls(d.c, {d: fusion_field().one})

    def __add__(self, other):
        if self.c != other.c:
            raise AlgebraError("strand counts differ")
        out = dict(self.terms)
        zero = fusion_field().zero
        for d, coeff in other.terms.items():
            acc = out.get(d)
            acc = coeff if acc is None else acc + coeff
            if acc == zero:
                out.pop(d, None)
            else:
                out[d] = acc
        return TLElement(self.c, out)

    def __neg__(self):
        return TLElement(self.c, {d: -coeff for d, coeff in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        return TLElement(self.c, {d: coeff * f for d, f in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TLElement) and self.c == other.c and self.terms == other.terms

    def __hash__(self):
        return hash((self.c, frozenset(self.terms.items())))

    def promote(self):
        """Add one through strand on the right."""
        c = self.c
        out = {}
        for d, coeff in self.terms.items():
            m = [0] * (2 * c + 2)
            for p, q in enumerate(d.match):
                a = p if p < c else p + 1
                b = q if q < c else q + 1
                m[a] = b
            m[c] = 2 * c + 1
            m[2 * c + 1] = c
            out[TLDiagram(c + 1, m)] = coeff
        return TLElement(c + 1, out)

    def coefficient(self, d):
        return self.terms.get(d, fusion_field().zero)


def tl_mul(x, y, c):
    """Stack x below y, removing loops at -A**2 - A**-2 apiece."""
    if x.c != c or y.c != c:
        raise AlgebraError("strand count mismatch")
    alg = fusion_field()
    A = alg.gen("a")
    delta = -(A**2) - A**-2
    acc = {}
    for d1, c1 in x.terms.items():
        for d2, c2 in y.terms.items():
            d, loops = _compose(d1, d2)
            coeff = c1 * c2 * delta**loops
            acc[d] = acc.get(d, alg.zero) + coeff
    return TLElement(c, acc)


@lru_cache(maxsize=None)
def jones_wenzl(c):
    """The projector on c strands.

    Recursion: JW_c = JW_{c-1}|1 + ([c-1]/[c]) (JW_{c-1}|1) e_{c-1} (JW_{c-1}|1).
    The plus sign goes with the loop value -A**2 - A**-2 = -[2]; idempotency,
    cup-cap annihilation and the explicit small cases pin it uniquely.
    """
    if c < 0:
        raise AlgebraError("strand count must be nonnegative")
    if c == 0:
        return TLElement(0, {TLDiagram(0, ()): fusion_field().one})
    if c == 1:
        return TLElement.from_diagram(TLDiagram.identity(1))
    alg = fusion_field()
    prev = jones_wenzl(c - 1).promote()
    e_last = TLElement.from_diagram(TLDiagram.cupcap(c, c - 2))
    correction = tl_mul(tl_mul(prev, e_last, c), prev, c)
    return prev + correction.scale(qint(alg, c - 1) / qint(alg, c))


# -- fusion move coefficients -------------------------------------------------

_RULES = (
    "parallel",
    "half_twist_up",
    "half_twist_down",
    "biangle_up",
    "biangle_down",
    "triangle_a",
    "triangle_b",
    "triangle_c",
)


def fusion_coefficient(rule, params):
    """Scalar attached to one local move, for integer strand colors.

    parallel(c): coefficient of the color c-1 channel when a single strand
    runs beside color c (the c+1 channel has coefficient 1);
    half twists: A**c and -A**(-(c+2)); biangles: -[c+2]/[c+1] and 1;
    triangles: 1, [(a-b+c)/2]/[c], -([(a+b+c)/2 + 1][(b+c-a)/2])/([b][c]).
    """
    alg = fusion_field()
    A = alg.gen("a")
    if rule not in _RULES:
        raise AlgebraError(f"unknown fusion rule {rule!r}")
    if rule in ("parallel", "half_twist_up", "half_twist_down", "biangle_up", "biangle_down"):
        (c,) = params
        if c < 0:
            raise AlgebraError("color must be nonnegative")
        if rule == "parallel":
            return -qint(alg, c) / qint(alg, c + 1)
        if rule == "half_twist_up":
            return A**c
        if rule == "half_twist_down":
            return -(A ** (-(c + 2)))
        if rule == "biangle_up":
            return -qint(alg, c + 2) / qint(alg, c + 1)
        return alg.one
    a, b, c = params
    if (a + b + c) % 2:
        raise AlgebraError("colors at a vertex must have even sum")
    if rule == "triangle_a":
        return alg.one
    if rule == "triangle_b":
        if c < 1:
            raise AlgebraError("triangle_b needs c >= 1")
        k = (a - b + c) // 2
        if k < 0:
            raise AlgebraError("inadmissible colors for triangle_b")
        return qint(alg, k) / qint(alg, c)
    if b < 1 or c < 1:
        raise AlgebraError("triangle_c needs b, c >= 1")
    k = (b + c - a) // 2
    if k < 0:
        raise AlgebraError("inadmissible colors for triangle_c")
    return -(qint(alg, (a + b + c) // 2 + 1) * qint(alg, k)) / (qint(alg, b) * qint(alg, c))


def _sym_qint(k):
    """[c + k] with the color symbolic: A**c = B."""
    alg = fusion_field()
    A, B = alg.gen("a"), alg.gen("b")
    return (A ** (2 * k) * B**2 - A ** (-2 * k) * B**-2) / (A**2 - A**-2)


def gamma_loop_eval():
    """Eigenvalue of a small loop around a strand of symbolic color.

    Chains the local moves: the parallel-strands expansion into the c+1 and
    c-1 channels, a half twist on each channel twice, then the biangle
    reductions.  The result must be -(A**2 B**2 + A**-2 B**-2), the symbolic
    form of -(A**(2c+2) + A**(-2c-2)).
    """
    alg = fusion_field()
    A, B = alg.gen("a"), alg.gen("b")
    up_split, down_split = alg.one, -_sym_qint(0) / _sym_qint(1)
    up_twist, down_twist = B, -(A**-2) * B**-1
    up_biangle, down_biangle = -_sym_qint(2) / _sym_qint(1), alg.one
    return (
        up_split * up_twist**2 * up_biangle
        + down_split * down_twist**2 * down_biangle
    )


def specialize_color(f, c):
    """Substitute the symbolic color: B -> A**c."""
    alg = fusion_field()
    A = alg.gen("a")
    return alg.map_fraction(f, alg, {"a": A, "b": A**c})


# -- ladder-graph colorings ----------------------------------------------------


class LadderColoring:
    """Colors on the caterpillar graph: interior c_1..c_{n-1}, legs d_0..d_{n+1}."""

    __slots__ = ("c", "d")

    def __init__(self, c, d):
        if any(x < 0 for x in c) or any(x < 0 for x in d):
            raise AlgebraError("colors must be nonnegative")
        if len(d) != len(c) + 3:
            raise AlgebraError(
                f"expected {len(c) + 3} boundary colors for {len(c)} interior ones"
            )
        self.c = tuple(c)
        self.d = tuple(d)


def ladder_vertices(col):
    """Incident color triples, one per trivalent vertex, left to right."""
    n = len(col.c) + 1
    path = [col.d[0]] + list(col.c) + [col.d[n + 1]]
    return [(path[j - 1], path[j], col.d[j]) for j in range(1, n + 1)]


def admissible(col, p=None):
    """Parity and all three triangle inequalities at every vertex."""
    if p is not None and len(col.c) != p.n - 1:
        raise AlgebraError(f"coloring has {len(col.c)} interior colors, expected {p.n - 1}")
    for x, y, z in ladder_vertices(col):
        if (x + y + z) % 2:
            return False
        if x > y + z or y > x + z or z > x + y:
            return False
    return True

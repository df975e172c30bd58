"""Exact scalars and matrices.

Every quantity in this package is a `Scalar`: a rational number, a Gaussian
rational, or a quotient of multivariate polynomials with Gaussian-rational
coefficients.  No floats anywhere.  Scalars are kept in a canonical normal
form at all times so that equality (and therefore every verification result
downstream) is a structural comparison:

* rationals in lowest terms (`fractions.Fraction` does this for us);
* gaussian rationals demote to rationals when the imaginary part is zero;
* polynomial quotients carry a reduced fraction (gcd divided out) whose
  denominator is monic with respect to the fixed monomial order, and demote
  to constants when no variable survives.

The monomial order is lexicographic with the deformation variable `t`
largest, then remaining variables alphabetically.  With that order,
`limit_at_zero` is a valuation comparison: factor the minimal power of t out
of numerator and denominator and read off the t-free part.

`Matrix` is a dense matrix over Scalar with field-exact elimination.  Over a
parametric field the pivots use structural nonzeroness, i.e. results are
generic in the parameters; callers that need a specific parameter value
substitute first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key


class PoleAtZero(ArithmeticError):
    """limit_at_zero on a quotient with a genuine pole at t = 0."""


class SingularMatrixError(ArithmeticError):
    """inverse of a matrix whose determinant is (structurally) zero."""


# ---------------------------------------------------------------------------
# gaussian rationals

_F0 = Fraction(0)
_F1 = Fraction(1)


class GaussRat:
    """a + b*i with rational a, b.  Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=_F0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        return isinstance(other, GaussRat) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        return GaussRat(self.re + other.re, self.im + other.im)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return GaussRat(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("1/0 in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"


_G0 = GaussRat(_F0)
_G1 = GaussRat(_F1)


# ---------------------------------------------------------------------------
# monomials and polynomials
#
# A monomial is a tuple of (variable, exponent) pairs, exponents positive,
# sorted by the global variable order.  () is the unit monomial.

def _var_rank(name: str):
    # t is the largest variable; everything else alphabetical after it
    return (0, "") if name == "t" else (1, name)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda p: _var_rank(p[0])))


def _mono_cmp(a, b):
    """lex compare, t largest; returns -1/0/1 with 1 meaning a > b."""
    ia, ib = 0, 0
    while ia < len(a) or ib < len(b):
        if ia == len(a):
            return -1
        if ib == len(b):
            return 1
        va, ea = a[ia]
        vb, eb = b[ib]
        ra, rb = _var_rank(va), _var_rank(vb)
        if ra < rb:  # a has the bigger variable with positive exponent
            return 1
        if rb < ra:
            return -1
        if ea != eb:
            return 1 if ea > eb else -1
        ia += 1
        ib += 1
    return 0


_mono_key = cmp_to_key(_mono_cmp)


class Poly:
    """Multivariate polynomial over GaussRat: dict monomial -> coefficient."""

    __slots__ = ("d",)

    def __init__(self, d):
        self.d = d  # trusted: no zero coefficients

    @staticmethod
    def const(c: GaussRat) -> "Poly":
        return Poly({(): c} if c else {})

    @staticmethod
    def var(name: str) -> "Poly":
        return Poly({((name, 1),): _G1})

    def is_zero(self):
        return not self.d

    def is_const(self):
        return not self.d or (len(self.d) == 1 and () in self.d)

    def const_value(self) -> GaussRat:
        return self.d.get((), _G0)

    def variables(self):
        out = set()
        for m in self.d:
            for v, _ in m:
                out.add(v)
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.d == other.d

    def __hash__(self):
        return hash(frozenset(self.d.items()))

    def __add__(self, other):
        d = dict(self.d)
        for m, c in other.d.items():
            s = d.get(m)
            if s is None:
                d[m] = c
            else:
                s = s + c
                if s:
                    d[m] = s
                else:
                    del d[m]
        return Poly(d)

    def __neg__(self):
        return Poly({m: -c for m, c in self.d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.d or not other.d:
            return Poly({})
        d = {}
        for m1, c1 in self.d.items():
            for m2, c2 in other.d.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                s = d.get(m)
                if s is None:
                    d[m] = c
                else:
                    s = s + c
                    if s:
                        d[m] = s
                    else:
                        del d[m]
        return Poly(d)

    def scale(self, c: GaussRat):
        if not c:
            return Poly({})
        return Poly({m: cc * c for m, cc in self.d.items()})

    def leading(self):
        """(monomial, coeff) maximal in the global order."""
        m = max(self.d, key=_mono_key)
        return m, self.d[m]

    def monic(self):
        if not self.d:
            return self
        _, c = self.leading()
        return self.scale(c.inv())

    def degree_in(self, v: str) -> int:
        deg = 0
        for m in self.d:
            for name, e in m:
                if name == v and e > deg:
                    deg = e
        return deg

    def min_degree_in(self, v: str) -> int:
        best = None
        for m in self.d:
            e = 0
            for name, ee in m:
                if name == v:
                    e = ee
            if best is None or e < best:
                best = e
        return best or 0

    def drop_var_power(self, v: str, k: int) -> "Poly":
        """divide by v^k (caller guarantees exactness)."""
        if k == 0:
            return self
        d = {}
        for m, c in self.d.items():
            nm = []
            for name, e in m:
                if name == v:
                    e -= k
                    if e < 0:
                        raise ValueError("not divisible")
                if name != v or e > 0:
                    nm.append((name, e))
            d[tuple(nm)] = c
        return Poly(d)

    def eval_at_zero(self, v: str) -> "Poly":
        """substitute v = 0: keep monomials free of v."""
        return Poly({m: c for m, c in self.d.items() if all(name != v for name, _ in m)})


def _to_uni(p: Poly, v: str):
    """view p as univariate in v: dict degree -> Poly in the other vars."""
    out: dict = {}
    for m, c in p.d.items():
        deg = 0
        rest = []
        for name, e in m:
            if name == v:
                deg = e
            else:
                rest.append((name, e))
        q = out.setdefault(deg, {})
        rm = tuple(rest)
        s = q.get(rm)
        if s is None:
            q[rm] = c
        else:
            s = s + c
            if s:
                q[rm] = s
            else:
                del q[rm]
    return {deg: Poly(d) for deg, d in out.items() if d}

def _from_uni(u, v: str) -> Poly:
    d = {}
    for deg, coeff in u.items():
        if coeff.is_zero():
            continue
        vm = ((v, deg),) if deg else ()
        for m, c in coeff.d.items():
            d[_mono_mul(vm, m)] = c
    return Poly(d)


def _divexact(a: Poly, b: Poly) -> Poly:
    """exact polynomial division; raises ValueError when not exact."""
    if b.is_zero():
        raise ZeroDivisionError("poly division by zero")
    if a.is_zero():
        return a
    if b.is_const():
        return a.scale(b.const_value().inv())
    v = min(b.variables() | a.variables(), key=_var_rank)  # largest variable
    A = _to_uni(a, v)
    B = _to_uni(b, v)
    db = max(B)
    lb = B[db]
    Q: dict = {}
    while A:
        da = max(A)
        if da < db:
            raise ValueError("division not exact")
        c = _divexact(A[da], lb)
        Q[da - db] = c
        # A -= c * B * v^(da-db)
        for dB, cB in B.items():
            k = da - db + dB
            cur = A.get(k, Poly({}))
            cur = cur - c * cB
            if cur.is_zero():
                A.pop(k, None)
            else:
                A[k] = cur
    return _from_uni(Q, v)


def _prem(p, q, v):
    """pseudo-remainder of p by q in the variable v (dict-of-Poly form)."""
    P = dict(p)
    dq = max(q)
    lq = q[dq]
    while P:
        dp = max(P)
        if dp < dq:
            break
        lp = P[dp]
        newP: dict = {}
        for d, c in P.items():
            if d == dp:
                continue
            newP[d] = c * lq
        for d, c in q.items():
            if d == dq:
                continue
            k = dp - dq + d
            cur = newP.get(k, Poly({}))
            cur = cur - lp * c
            if cur.is_zero():
                newP.pop(k, None)
            else:
                newP[k] = cur
        P = newP
    return P


def _content(u) -> Poly:
    """gcd of the coefficient polys of a univariate view."""
    g = Poly({})
    for c in u.values():
        g = _poly_gcd(g, c)
        if g.is_const() and not g.is_zero():
            return Poly.const(_G1)
    return g


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    """monic gcd over Q(i)[vars] (primitive PRS)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return Poly.const(_G1)
    v = min(a.variables() | b.variables(), key=_var_rank)  # largest variable
    A = _to_uni(a, v)
    B = _to_uni(b, v)
    ca, cb = _content(A), _content(B)
    cg = _poly_gcd(ca, cb)
    pa = {d: _divexact(c, ca) for d, c in A.items()}
    pb = {d: _divexact(c, cb) for d, c in B.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        R = _prem(pa, pb, v)
        if not R:
            g = _from_uni(pb, v)
            break
        cr = _content(R)
        pa = pb
        pb = {d: _divexact(c, cr) for d, c in R.items()}
        if max(pb) == 0:
            g = Poly.const(_G1)
            break
    return (g * cg).monic()


_P0 = Poly({})
_P1 = Poly.const(_G1)


# ---------------------------------------------------------------------------
# scalars

_RAT, _GAUSS, _POLYQ = 0, 1, 2


class Scalar:
    """One element of the tower Q < Q(i) < Q(i)(params)(t), normalized."""

    __slots__ = ("kind", "a", "b")
    # kind _RAT:   a = Fraction,  b unused (None)
    # kind _GAUSS: a = Fraction re, b = Fraction im (im != 0)
    # kind _POLYQ: a = Poly num, b = Poly den (reduced, den monic, nonconst pair)

    def __init__(self, kind, a, b=None):
        self.kind = kind
        self.a = a
        self.b = b

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_fraction(f) -> "Scalar":
        return Scalar(_RAT, f if isinstance(f, Fraction) else Fraction(f))

    @staticmethod
    def integer(n: int) -> "Scalar":
        return Scalar(_RAT, Fraction(n))

    @staticmethod
    def rational(p: int, q: int) -> "Scalar":
        return Scalar(_RAT, Fraction(p, q))

    @staticmethod
    def gaussian(re, im) -> "Scalar":
        re, im = Fraction(re), Fraction(im)
        if not im:
            return Scalar(_RAT, re)
        return Scalar(_GAUSS, re, im)

    @staticmethod
    def imaginary_unit() -> "Scalar":
        return Scalar(_GAUSS, _F0, _F1)

    @staticmethod
    def param(name: str) -> "Scalar":
        return Scalar(_POLYQ, Poly.var(name), _P1)

    @staticmethod
    def t() -> "Scalar":
        return Scalar(_POLYQ, Poly.var("t"), _P1)

    @staticmethod
    def _from_polyq(num: Poly, den: Poly) -> "Scalar":
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        if num.is_zero():
            return ZERO
        g = _poly_gcd(num, den)
        if not (g.is_const() and g.const_value() == _G1):
            num = _divexact(num, g)
            den = _divexact(den, g)
        _, lc = den.leading()
        if lc != _G1:
            inv = lc.inv()
            num = num.scale(inv)
            den = den.scale(inv)
        if den.is_const() and num.is_const():
            c = num.const_value()  # den is 1 here
            if not c.im:
                return Scalar(_RAT, c.re)
            return Scalar(_GAUSS, c.re, c.im)
        return Scalar(_POLYQ, num, den)

    # -- views --------------------------------------------------------------

    @property
    def level(self) -> str:
        if self.kind == _RAT:
            return "rational"
        if self.kind == _GAUSS:
            return "gaussian"
        return "polynomial" if self.b == _P1 else "quotient"

    def is_zero(self) -> bool:
        if self.kind == _RAT:
            return not self.a
        return False  # gauss and polyq are nonzero by normalization

    def is_one(self) -> bool:
        return self.kind == _RAT and self.a == 1

    def variables(self) -> set:
        if self.kind != _POLYQ:
            return set()
        return self.a.variables() | self.b.variables()

    def _gauss(self) -> GaussRat:
        if self.kind == _RAT:
            return GaussRat(self.a)
        return GaussRat(self.a, self.b)

    def _polyq(self):
        if self.kind == _POLYQ:
            return self.a, self.b
        return Poly.const(self._gauss()), _P1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if self.kind == _RAT and other.kind == _RAT:
            return Scalar(_RAT, self.a + other.a)
        if self.kind != _POLYQ and other.kind != _POLYQ:
            g = self._gauss() + other._gauss()
            return Scalar.gaussian(g.re, g.im)
        n1, d1 = self._polyq()
        n2, d2 = other._polyq()
        return Scalar._from_polyq(n1 * d2 + n2 * d1, d1 * d2)

    def __neg__(self):
        if self.kind == _RAT:
            return Scalar(_RAT, -self.a)
        if self.kind == _GAUSS:
            return Scalar(_GAUSS, -self.a, -self.b)
        return Scalar(_POLYQ, -self.a, self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.kind == _RAT and other.kind == _RAT:
            return Scalar(_RAT, self.a * other.a)
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.kind != _POLYQ and other.kind != _POLYQ:
            g = self._gauss() * other._gauss()
            return Scalar.gaussian(g.re, g.im)
        n1, d1 = self._polyq()
        n2, d2 = other._polyq()
        return Scalar._from_polyq(n1 * n2, d1 * d2)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if self.kind == _RAT and other.kind == _RAT:
            return Scalar(_RAT, self.a / other.a)
        if self.is_zero():
            return ZERO
        if self.kind != _POLYQ and other.kind != _POLYQ:
            g = self._gauss() * other._gauss().inv()
            return Scalar.gaussian(g.re, g.im)
        n1, d1 = self._polyq()
        n2, d2 = other._polyq()
        return Scalar._from_polyq(n1 * d2, d1 * n2)

    def __pow__(self, n: int):
        if n == 0:
            return ONE
        base = self if n > 0 else ONE / self
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.kind == other.kind and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.kind, self.a, self.b))

    # -- tower operations ----------------------------------------------------

    def substitute(self, binding: dict) -> "Scalar":
        """replace parameters by Scalars (simultaneous substitution)."""
        if self.kind != _POLYQ or not binding:
            return self

        def eval_poly(p: Poly) -> "Scalar":
            acc = ZERO
            for m, c in p.d.items():
                term = Scalar.gaussian(c.re, c.im)
                for v, e in m:
                    rep = binding.get(v)
                    base = rep if rep is not None else Scalar.param(v)
                    term = term * base ** e
                acc = acc + term
            return acc

        num = eval_poly(self.a)
        den = eval_poly(self.b)
        return num / den

    def limit_at_zero(self) -> "Scalar":
        """limit as t -> 0; PoleAtZero when the valuation is negative."""
        if self.kind != _POLYQ:
            return self
        num, den = self.a, self.b
        vn = num.min_degree_in("t")
        vd = den.min_degree_in("t")
        if vn < vd:
            raise PoleAtZero(f"pole of order {vd - vn} at t=0")
        den0 = den.drop_var_power("t", vd).eval_at_zero("t")
        if vn > vd:
            return ZERO
        num0 = num.drop_var_power("t", vn).eval_at_zero("t")
        return Scalar._from_polyq(num0, den0)

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """canonical string, reparseable by formats.parse_scalar."""
        if self.kind == _RAT:
            return _render_fraction(self.a)
        if self.kind == _GAUSS:
            return _render_gauss(GaussRat(self.a, self.b), top=True)
        ns = _render_poly(self.a)
        if self.b == _P1:
            return ns
        ds = _render_poly(self.b)
        if len(self.a.d) > 1:
            ns = f"({ns})"
        if len(self.b.d) > 1 or not self.b.is_const():
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"Scalar[{self.render()}]"


def _render_fraction(f: Fraction) -> str:
    return str(f)


def _render_gauss(g: GaussRat, top=False) -> str:
    if not g.im:
        return _render_fraction(g.re)
    if not g.re:
        if g.im == 1:
            return "i"
        if g.im == -1:
            return "-i"
        return f"{_render_fraction(g.im)}*i"
    s = f"{_render_fraction(g.re)} + {_render_fraction(g.im)}*i" if g.im > 0 else \
        f"{_render_fraction(g.re)} - {_render_fraction(-g.im)}*i"
    return f"({s})" if not top else s


def _render_mono(m) -> str:
    parts = []
    for v, e in sorted(m, key=lambda p: _var_rank(p[0])):
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _render_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.d.items(), key=lambda kv: _mono_key(kv[0]), reverse=True)
    out = []
    for idx, (m, c) in enumerate(items):
        if not m:
            cs = _render_gauss(c)
            term = cs
        else:
            ms = _render_mono(m)
            if c == _G1:
                term = ms
            elif c == GaussRat(Fraction(-1)):
                term = f"-{ms}"
            else:
                term = f"{_render_gauss(c)}*{ms}"
        if idx == 0:
            out.append(term)
        elif term.startswith("-"):
            out.append(f" - {term[1:]}")
        else:
            out.append(f" + {term}")
    return "".join(out)


ZERO = Scalar(_RAT, _F0)
ONE = Scalar(_RAT, _F1)


def sc(x) -> Scalar:
    """coerce int/Fraction/Scalar to Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_fraction(x)
    raise TypeError(f"cannot coerce {type(x)!r} to Scalar")


# ---------------------------------------------------------------------------
# matrices

class Matrix:
    """Dense matrix over Scalar.  Rows are tuples; the object is immutable."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = tuple(tuple(sc(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(entries) -> "Matrix":
        es = [sc(e) for e in entries]
        n = len(es)
        return Matrix([[es[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def entry(self, i, j) -> Scalar:
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in ot:
                s = ZERO
                for x, y in zip(r, c):
                    if not (x.is_zero() or y.is_zero()):
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Matrix(out)

    def apply(self, vec):
        """matrix times column vector (vec: list of Scalar)."""
        if self.ncols != len(vec):
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            s = ZERO
            for x, y in zip(r, vec):
                if not (x.is_zero() or y.is_zero()):
                    s = s + x * y
            out.append(s)
        return out

    def scale(self, c) -> "Matrix":
        c = sc(c)
        return Matrix([[c * x for x in r] for r in self.rows])

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x + y for x, y in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x - y for x, y in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def substitute(self, binding: dict) -> "Matrix":
        return Matrix([[x.substitute(binding) for x in r] for r in self.rows])

    def _rref(self):
        """(rref rows as lists, pivot column list)"""
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for pc in range(self.ncols):
            # first structurally nonzero entry at/below pr
            sel = None
            for r in range(pr, self.nrows):
                if not rows[r][pc].is_zero():
                    sel = r
                    break
            if sel is None:
                continue
            rows[pr], rows[sel] = rows[sel], rows[pr]
            inv = ONE / rows[pr][pc]
            rows[pr] = [x * inv for x in rows[pr]]
            for r in range(self.nrows):
                if r != pr and not rows[r][pc].is_zero():
                    f = rows[r][pc]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.nrows:
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def rref(self) -> "Matrix":
        return Matrix(self._rref()[0])

    def nullspace(self):
        """basis of {x : M x = 0}, deterministic order (free columns ascending)."""
        rows, pivots = self._rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [ZERO] * self.ncols
            v[fc] = ONE
            for pr, pc in enumerate(pivots):
                v[pc] = -rows[pr][fc]
            basis.append(v)
        return basis

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        out = ONE
        for c in range(n):
            sel = None
            for r in range(c, n):
                if not rows[r][c].is_zero():
                    sel = r
                    break
            if sel is None:
                return ZERO
            if sel != c:
                rows[c], rows[sel] = rows[sel], rows[c]
                out = -out
            out = out * rows[c][c]
            inv = ONE / rows[c][c]
            for r in range(c + 1, n):
                if not rows[r][c].is_zero():
                    f = rows[r][c] * inv
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return out

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)]
               for i, r in enumerate(self.rows)]
        pr = 0
        for pc in range(n):
            sel = None
            for r in range(pr, n):
                if not aug[r][pc].is_zero():
                    sel = r
                    break
            if sel is None:
                raise SingularMatrixError("structurally singular matrix")
            aug[pr], aug[sel] = aug[sel], aug[pr]
            inv = ONE / aug[pr][pc]
            aug[pr] = [x * inv for x in aug[pr]]
            for r in range(n):
                if r != pr and not aug[r][pc].is_zero():
                    f = aug[r][pc]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[pr])]
            pr += 1
        return Matrix([row[n:] for row in aug])

    def __repr__(self):
        body = "; ".join(", ".join(x.render() for x in r) for r in self.rows)
        return f"Matrix[{body}]"


def vec_is_zero(v) -> bool:
    return all(x.is_zero() for x in v)


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(c, v):
    c = sc(c)
    return [c * x for x in v]

"""Formal identities, linearization, and exact membership checks.

Words in the free nonassociative magma are nested tuples ('v', name) or
('m', left, right).  A FormalSum is a rational linear combination of words;
an Identity is a FormalSum asserted to vanish, required to be homogeneous in
every variable (each term uses each variable the same number of times).

Checking strategy, chosen per identity:

* multilinear identities are evaluated on every basis tuple, which is
  complete over a field of characteristic zero;
* homogeneous non-multilinear identities are fully linearized first (replace
  a degree-d variable by a sum of d fresh ones and keep the terms using each
  exactly once), which is equivalent in characteristic zero;
* high-degree identities in at most two variables skip linearization and are
  evaluated once on generic symbolic vectors, which is also exact: the
  result is a polynomial in the coordinates that vanishes identically iff
  the identity holds.

Parametric algebras never weaken a check: an identity holds only when every
coefficient polynomial in the parameters is identically zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import ONE, Scalar, ZERO, sc, vec_is_zero
from .sctensor import Algebra, symbolic_vector


class NonHomogeneous(ValueError):
    """identity terms disagree on some variable's degree."""


# ---------------------------------------------------------------------------
# free nonassociative polynomials

def _word_counts(word, out):
    if word[0] == "v":
        out[word[1]] = out.get(word[1], 0) + 1
    else:
        _word_counts(word[1], out)
        _word_counts(word[2], out)


class FormalSum:
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {w: c for w, c in terms.items() if c}

    def __add__(self, other):
        d = dict(self.terms)
        for w, c in other.terms.items():
            s = d.get(w, Fraction(0)) + c
            if s:
                d[w] = s
            else:
                d.pop(w, None)
        return FormalSum(d)

    def __neg__(self):
        return FormalSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FormalSum):
            d = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = ("m", w1, w2)
                    d[w] = d.get(w, Fraction(0)) + c1 * c2
            return FormalSum(d)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = Fraction(c)
        return FormalSum({w: cc * c for w, cc in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __repr__(self):
        return f"FormalSum({len(self.terms)} terms)"


def v(name: str) -> FormalSum:
    return FormalSum({("v", name): Fraction(1)})


def assoc(a, b, c) -> FormalSum:
    return (a * b) * c - a * (b * c)


def comm(a, b) -> FormalSum:
    """the commutator ab - ba, deliberately unscaled."""
    return a * b - b * a


def jacobi(a, b, c, bracket=comm) -> FormalSum:
    return bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)


class Identity:
    __slots__ = ("name", "sum", "degrees")

    def __init__(self, name: str, fs: FormalSum):
        self.name = name
        self.sum = fs
        degrees = None
        for w in fs.terms:
            counts: dict = {}
            _word_counts(w, counts)
            if degrees is None:
                degrees = counts
            elif degrees != counts:
                raise NonHomogeneous(
                    f"{name}: terms disagree on variable degrees ({degrees} vs {counts})"
                )
        self.degrees = degrees or {}

    @property
    def variables(self):
        return sorted(self.degrees)

    @property
    def multilinear(self) -> bool:
        return all(d == 1 for d in self.degrees.values())

    @property
    def total_degree(self) -> int:
        return sum(self.degrees.values())

    def __repr__(self):
        return f"Identity({self.name}, deg {self.degrees})"


# ---------------------------------------------------------------------------
# linearization

def _substitute_word(word, mapping) -> FormalSum:
    if word[0] == "v":
        return mapping.get(word[1], v(word[1]))
    return _substitute_word(word[1], mapping) * _substitute_word(word[2], mapping)


def _substitute(fs: FormalSum, mapping) -> FormalSum:
    out = FormalSum({})
    for w, c in fs.terms.items():
        out = out + _substitute_word(w, mapping).scale(c)
    return out


def linearize(identity: Identity):
    """full multilinearization; a one-element list, or [identity] if already
    multilinear.  Equivalent to the original in characteristic zero."""
    if identity.multilinear:
        return [identity]
    mapping = {}
    fresh = []
    for name in identity.variables:
        d = identity.degrees[name]
        if d == 1:
            fresh.append(name)
            continue
        parts = [f"{name}_{k}" for k in range(1, d + 1)]
        fresh.extend(parts)
        acc = v(parts[0])
        for p in parts[1:]:
            acc = acc + v(p)
        mapping[name] = acc
    expanded = _substitute(identity.sum, mapping)
    want = {name: 1 for name in fresh}
    kept = {}
    for w, c in expanded.terms.items():
        counts: dict = {}
        _word_counts(w, counts)
        if counts == want:
            kept[w] = c
    return [Identity(identity.name + "-linearized", FormalSum(kept))]


# ---------------------------------------------------------------------------
# evaluation

def _eval_word(algebra: Algebra, word, assignment, memo):
    got = memo.get(word)
    if got is not None:
        return got
    if word[0] == "v":
        out = assignment[word[1]]
    else:
        out = algebra.multiply(
            _eval_word(algebra, word[1], assignment, memo),
            _eval_word(algebra, word[2], assignment, memo),
        )
    memo[word] = out
    return out


def evaluate(algebra: Algebra, fs: FormalSum, assignment) -> list:
    """value of a formal sum at vector arguments."""
    out = [ZERO] * algebra.dim
    memo: dict = {}
    for w, c in fs.terms.items():
        val = _eval_word(algebra, w, assignment, memo)
        cs = sc(c)
        out = [a + cs * b for a, b in zip(out, val)]
    return out


@dataclass
class Holds:
    identity: str
    method: str

    def __bool__(self):
        return True


@dataclass
class Witness:
    identity: str
    method: str
    assignment: dict
    value: list

    def __bool__(self):
        return False


def _tuple_scan(algebra: Algebra, identity: Identity):
    names = identity.variables
    if not names:
        return Holds(identity.name, "basis-tuples")
    basis = algebra.basis()
    for combo in itertools.product(range(algebra.dim), repeat=len(names)):
        assignment = {name: basis[idx] for name, idx in zip(names, combo)}
        val = evaluate(algebra, identity.sum, assignment)
        if not vec_is_zero(val):
            pretty = {name: f"e{idx + 1}" for name, idx in zip(names, combo)}
            return Witness(identity.name, "basis-tuples", pretty, val)
    return Holds(identity.name, "basis-tuples")


def _generic_scan(algebra: Algebra, identity: Identity):
    names = identity.variables
    assignment = {
        name: symbolic_vector(algebra.dim, f"{name}g") for name in names
    }
    val = evaluate(algebra, identity.sum, assignment)
    if vec_is_zero(val):
        return Holds(identity.name, "generic-vector")
    # hunt a concrete falsifying point, deterministically
    for combo in itertools.product((0, 1, -1, 2, -2, 3), repeat=algebra.dim * len(names)):
        point = {}
        flat = [sc(x) for x in combo]
        for pos, name in enumerate(names):
            for k in range(algebra.dim):
                point[f"{name}g{k + 1}"] = flat[pos * algebra.dim + k]
        spec = [x.substitute(point) for x in val]
        if not vec_is_zero(spec):
            concrete = {
                name: [point[f"{name}g{k + 1}"] for k in range(algebra.dim)]
                for name in names
            }
            return Witness(identity.name, "generic-vector", concrete, spec)
    return Witness(identity.name, "generic-vector", assignment, val)


def check_identity(algebra: Algebra, identity: Identity, method: str = "auto"):
    """Holds or a Witness; exact in the algebra's parameters."""
    if method == "generic":
        return _generic_scan(algebra, identity)
    if method == "auto" and identity.total_degree >= 5 and len(identity.degrees) <= 2:
        return _generic_scan(algebra, identity)
    for lin in linearize(identity):
        res = _tuple_scan(algebra, lin)
        if not res:
            return res
    return Holds(identity.name, "basis-tuples")


# ---------------------------------------------------------------------------
# the registry

_x, _y, _z, _w = v("x"), v("y"), v("z"), v("w")
_a, _b, _c, _d = v("a"), v("b"), v("c"), v("d")


def _ids(name, *sums):
    return tuple(Identity(f"{name}-{k}" if len(sums) > 1 else name, s)
                 for k, s in enumerate(sums, start=1))


@dataclass(frozen=True)
class VarietySpec:
    name: str
    identities: tuple
    binary_base: str | None = None
    shortcut: tuple | None = None  # printed necessary conditions, if any


REGISTRY: dict = {}


def _register(spec: VarietySpec):
    if spec.name in REGISTRY:
        raise ValueError(f"duplicate variety {spec.name}")
    REGISTRY[spec.name] = spec


_register(VarietySpec("associative", _ids("associative", assoc(_x, _y, _z))))
_register(VarietySpec("commutative", _ids("commutative", _x * _y - _y * _x)))
_register(VarietySpec("anticommutative", _ids("anticommutative", _x * _x)))
_register(VarietySpec(
    "right-alternative",
    _ids("right-alternative", assoc(_x, _y, _z) + assoc(_x, _z, _y)),
))
_register(VarietySpec(
    "left-alternative",
    _ids("left-alternative", assoc(_x, _y, _z) + assoc(_y, _x, _z)),
))
_register(VarietySpec(
    "alternative",
    REGISTRY["right-alternative"].identities + REGISTRY["left-alternative"].identities,
))
_register(VarietySpec(
    "semi-alternative",
    _ids("semi-alternative", assoc(_x, _y, _z) - assoc(_y, _z, _x)),
))
_register(VarietySpec(
    "assosymmetric",
    _ids(
        "assosymmetric",
        assoc(_x, _y, _z) - assoc(_y, _x, _z),
        assoc(_x, _y, _z) - assoc(_x, _z, _y),
    ),
))
_register(VarietySpec(
    "perm",
    REGISTRY["associative"].identities
    + _ids("right-commutative", (_x * _y) * _z - (_x * _z) * _y),
))
_register(VarietySpec(
    "lie-admissible",
    _ids("lie-admissible", jacobi(_x, _y, _z)),
))
_register(VarietySpec(
    "minus-one-one",
    REGISTRY["right-alternative"].identities + REGISTRY["lie-admissible"].identities,
))
_register(VarietySpec(
    "jordan",
    REGISTRY["commutative"].identities
    + _ids("jordan", ((_x * _x) * _y) * _x - (_x * _x) * (_y * _x)),
))
_register(VarietySpec(
    "lie",
    REGISTRY["anticommutative"].identities
    + _ids("jacobi", (_x * _y) * _z + (_y * _z) * _x + (_z * _x) * _y),
))
_register(VarietySpec(
    "malcev",
    REGISTRY["anticommutative"].identities
    + _ids(
        "malcev",
        (_x * _y) * (_x * _z)
        - ((_x * _y) * _z) * _x
        - ((_y * _z) * _x) * _x
        - ((_z * _x) * _x) * _y,
    ),
))
_register(VarietySpec(
    "flexible",
    _ids("flexible", assoc(_x, _y, _x)),
))
_register(VarietySpec(
    "antiassociative",
    _ids("antiassociative", (_x * _y) * _z + _x * (_y * _z)),
))
_register(VarietySpec(
    "half-leibniz",
    _ids(
        "half-leibniz",
        _x * (_y * _z) - Fraction(1, 2) * ((_x * _y) * _z + _y * (_x * _z)),
    ),
))
_register(VarietySpec(
    "kleinfeld-semialt",
    _ids(
        "kleinfeld-semialt",
        assoc(_x, _x, _y) - assoc(_x, _y, _x),
        assoc(_x, _y, _x) - assoc(_y, _x, _x),
    ),
))

_pchelintsev = assoc(_x * _y, _x, _y) + assoc(_y, _x * _y, _x) + assoc(_x, _y, _x * _y)

_register(VarietySpec(
    "binary-perm",
    REGISTRY["perm"].identities,
    binary_base="perm",
    shortcut=REGISTRY["alternative"].identities
    + _ids(
        "right-commutator-symmetry",
        (_a * _b) * _c + (_c * _b) * _a - (_a * _c) * _b - (_c * _a) * _b,
    ),
))
_register(VarietySpec(
    "binary-minus-one-one",
    REGISTRY["minus-one-one"].identities,
    binary_base="minus-one-one",
    shortcut=REGISTRY["right-alternative"].identities
    + _ids("pchelintsev", _pchelintsev),
))
_register(VarietySpec(
    "binary-lie",
    REGISTRY["lie"].identities,
    binary_base="lie",
    # For anticommutative algebras the two-generated condition collapses to
    # the Jacobi identity on x, y, xy (Gainov's criterion), which is exact.
    shortcut=REGISTRY["anticommutative"].identities
    + _ids("two-generated-jacobi", jacobi(_x, _y, _x * _y, bracket=lambda a, b: a * b)),
))

# named single identities, addressable outside the variety registry
NAMED_IDENTITIES = {
    "assoc-cyclic-sum": Identity(
        "assoc-cyclic-sum", assoc(_x, _y, _z) + assoc(_y, _z, _x) + assoc(_z, _x, _y)
    ),
    "pchelintsev": Identity("pchelintsev", _pchelintsev),
    "id1-semi": Identity(
        "id1-semi",
        jacobi(_a, _b, _c) - Fraction(3) * assoc(_a, _b, _c) + Fraction(3) * assoc(_a, _c, _b),
    ),
    "id2-semi": Identity(
        "id2-semi",
        Fraction(3) * assoc(comm(_a, _b), _c, _d)
        + comm(_a, assoc(_b, _c, _d))
        - comm(_b, assoc(_a, _c, _d))
        - comm(_c, assoc(_a, _b, _d))
        + comm(_c, assoc(_b, _a, _d))
        + comm(_d, assoc(_a, _b, _c))
        - comm(_d, assoc(_b, _a, _c)),
    ),
    "sixth-power-associator": Identity(
        "sixth-power-associator",
        Fraction(2) * (assoc(_x, _x, _x) * assoc(_x, _x, _x)),
    ),
    "nested-associator": Identity(
        "nested-associator", assoc(assoc(_y, _x, _x), _x, _x)
    ),
}


@dataclass
class VarietyReport:
    variety: str
    member: bool
    witness: Witness | None = None
    shortcut_member: bool | None = None
    method: str = "exact"


def check_variety(algebra: Algebra, name: str) -> VarietyReport:
    spec = REGISTRY.get(name)
    if spec is None:
        raise KeyError(f"unknown variety {name!r}")
    if spec.binary_base is not None:
        return check_binary_variety(algebra, name)
    for identity in spec.identities:
        res = check_identity(algebra, identity)
        if not res:
            return VarietyReport(name, False, witness=res)
    return VarietyReport(name, True)


def check_binary_variety(algebra: Algebra, name: str, method: str = "symbolic",
                         trials: int = 5, seed: int = 0) -> VarietyReport:
    """membership in a each-2-generated-subalgebra variety.

    symbolic method: close two generic symbolic vectors under multiplication
    and evaluate the base variety's linearized identities on tuples from the
    closure basis, inside the ambient algebra.  That is exact: any violating
    subalgebra specializes to a violation of the generic check, and a
    generic pass specializes to every concrete generator pair.
    """
    spec = REGISTRY.get(name)
    if spec is None or spec.binary_base is None:
        raise KeyError(f"unknown binary variety {name!r}")

    shortcut_member = None
    if spec.shortcut is not None:
        shortcut_member = True
        for identity in spec.shortcut:
            if not check_identity(algebra, identity):
                shortcut_member = False
                break

    if method == "sampled":
        import random

        rng = random.Random(seed)
        for _ in range(trials):
            gens = [
                [sc(rng.randint(-3, 3)) for _ in range(algebra.dim)]
                for _ in range(2)
            ]
            res = _binary_check_on(algebra, spec, gens)
            if not res:
                return VarietyReport(name, False, witness=res,
                                     shortcut_member=shortcut_member,
                                     method="sampled")
        return VarietyReport(name, True, shortcut_member=shortcut_member,
                             method="sampled")

    gens = [symbolic_vector(algebra.dim, "u"), symbolic_vector(algebra.dim, "w")]
    res = _binary_check_on(algebra, spec, gens)
    if not res:
        return VarietyReport(name, False, witness=res,
                             shortcut_member=shortcut_member)
    return VarietyReport(name, True, shortcut_member=shortcut_member)


def _binary_check_on(algebra: Algebra, spec: VarietySpec, gens):
    closure = algebra.subalgebra_closure(gens)
    for identity in spec.identities:
        for lin in linearize(identity):
            names = lin.variables
            for combo in itertools.product(closure, repeat=len(names)):
                assignment = dict(zip(names, combo))
                val = evaluate(algebra, lin.sum, assignment)
                if not vec_is_zero(val):
                    return Witness(lin.name, "binary-closure", assignment, val)
    return Holds(spec.name, "binary-closure")


def jacobian(algebra: Algebra, x, y, z):
    """[[x,y],z] + [[y,z],x] + [[z,x],y] with the algebra product as bracket."""
    def br(u, w):
        return algebra.multiply(u, w)

    def add(u, w):
        return [p + q for p, q in zip(u, w)]

    return add(add(br(br(x, y), z), br(br(y, z), x)), br(br(z, x), y))

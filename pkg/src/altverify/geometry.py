"""Orbit closures of 3-dimensional algebras: degenerations and obstructions.

A degeneration witness is a curve of basis changes over the deformation
variable t: rows of the matrix give a new basis, the structure constants are
rewritten, and every constant must have a finite value at t = 0 that matches
the target's table.  The check is exact; poles, singular families and
mismatched limits are all rejected with the offending index.

Non-degenerations come in two shapes.  Closed-set certificates list
polynomial conditions on structure constants (together with flag conditions
A_p A_q <= A_r on the spans A_s = <e_s, ..., e_n>) that cut out a closed,
Borel-stable set containing the source orbit but not the target.  Variety
barriers are the cheap cases: the source lies in a closed variety (say the
commutative algebras) that the target visibly escapes.

Certificate sets are only claimed stable under the upper-triangular subgroup,
not proved so here; ``borel_stability_sample`` probes the claim with random
upper-triangular basis changes.  ``emit_representability_system`` goes the
other way and writes out the polynomial system "some basis change moves this
algebra into the certificate set", which ``solve_system_bounded`` attacks by
seeded sampling and a step-bounded Groebner run.  Only a nonzero constant in
the partial basis proves infeasibility; everything else stays inconclusive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from fractions import Fraction

from . import catalog
from .analysis import derivation_dim
from .exactnum import (
    GaussRat,
    Matrix,
    ONE,
    PoleAtZero,
    Poly,
    Scalar,
    SingularMatrixError,
    ZERO,
    sc,
)
from .formats import DegenerationFile, PolySystem, parse_degeneration
from .identities import REGISTRY, check_identity
from .sctensor import Algebra, ParamSpec

_G0 = GaussRat(Fraction(0))
_G1 = GaussRat(Fraction(1))


# ---------------------------------------------------------------------------
# degeneration witnesses

def _deg_dir():
    return resources.files("altverify").joinpath("data", "degenerations")


@lru_cache(maxsize=None)
def degeneration_labels():
    names = [p.name[:-4] for p in _deg_dir().iterdir() if p.name.endswith(".deg")]
    return tuple(sorted(names))


@lru_cache(maxsize=None)
def load_degeneration(label: str) -> DegenerationFile:
    path = _deg_dir().joinpath(label + ".deg")
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise KeyError(f"no stored degeneration {label!r}") from None
    return parse_degeneration(text)


@dataclass(frozen=True)
class DegenerationReport:
    label: str
    source: str
    target: str
    verified: bool
    reason: str = ""

    def __bool__(self):
        return self.verified


def _reject(df, reason):
    return DegenerationReport(df.label, df.source, df.target, False, reason)


def verify_degeneration(df) -> DegenerationReport:
    """Replay one stored degeneration curve and compare the t->0 limit
    against the target's catalog table, exactly."""
    if isinstance(df, str):
        df = load_degeneration(df)
    source = catalog.get(df.source)
    target = catalog.get(df.target)
    if df.bindings:
        unknown = set(df.bindings) - set(source.param_names())
        if unknown:
            return _reject(df, f"binding for undeclared source parameter {sorted(unknown)}")
        source = source.specialize(df.bindings)
    # basis rows may mention leftover symbolic parameters; declare them
    have = set(source.param_names())
    extra = [ParamSpec(nm) for nm in df.tparams if nm not in have]
    if extra:
        source = source.with_params(source.params + tuple(extra))
    stray = set(source.param_names()) - set(df.tparams)
    if stray:
        return _reject(df, f"source parameters {sorted(stray)} left unbound")
    M = Matrix([list(row) for row in df.rows])
    try:
        family = source.change_basis(M)
    except SingularMatrixError:
        return _reject(df, "basis family is singular for generic t")
    limit = {}
    for idx, c in family.constants.items():
        try:
            val = c.limit_at_zero()
        except PoleAtZero:
            return _reject(df, f"constant c{idx} has a pole at t = 0")
        if not val.is_zero():
            limit[idx] = val
    for idx in sorted(set(limit) | set(target.constants)):
        got = limit.get(idx, ZERO)
        want = target.c(*idx)
        if got != want:
            return _reject(
                df,
                f"limit c{idx} = {got.render()} but target has {want.render()}",
            )
    return DegenerationReport(df.label, df.source, df.target, True)


def derivation_condition(source_ident: str, target_ident: str) -> bool:
    """Necessary condition for a proper degeneration: the derivation algebra
    must strictly grow.  Parametric entries are taken at generic values."""
    return derivation_dim(catalog.get(source_ident)) < derivation_dim(
        catalog.get(target_ident)
    )


# ---------------------------------------------------------------------------
# printed orbit dimensions
#
# For an n-dimensional entry the orbit of the structure tensor under GL_n has
# dimension n^2 - dim Der.  A one-parameter family contributes its parameter
# on top, so the published numbers satisfy
#
#     claimed = n^2 - dim Der + (number of parameters).

ORBIT_DIM_CLAIMS = {
    "perm": {"A07": 9, "A24": 7, "A14": 6, "A18": 3},
    "assoc": {
        "A07": 9, "A20": 7, "A23": 7, "A24": 7,
        "A14": 6, "A19": 5, "A17": 3, "A18": 3,
    },
    "right-alt": {
        "A07": 9, "R09": 8, "R10": 8, "A20": 7, "A23": 7, "A24": 7,
        "A14": 6, "A19": 5, "A17": 3, "A18": 3,
    },
    "semi-alt": {
        "A07": 9, "S06": 8, "S09": 8, "S11": 8,
        "S03": 7, "S12": 5, "S13": 5,
    },
}


def orbit_dimension(ident: str) -> int:
    a = catalog.get(ident)
    return a.dim * a.dim - derivation_dim(a) + len(a.params)


def check_orbit_claims(component=None):
    """[(component, ident, claimed, computed)] for every mismatch."""
    keys = [component] if component else sorted(ORBIT_DIM_CLAIMS)
    bad = []
    for key in keys:
        for ident, claimed in sorted(ORBIT_DIM_CLAIMS[key].items()):
            computed = orbit_dimension(ident)
            if computed != claimed:
                bad.append((key, ident, claimed, computed))
    return bad


# ---------------------------------------------------------------------------
# closed-set certificates

@dataclass(frozen=True)
class ClosedSetCertificate:
    """Polynomial conditions cutting out a closed set of structure tensors.

    equalities: (label, lhs, rhs) with each side a sum of terms
        (coefficient, ((i, j, k), ...)) read as coeff * prod c_ijk.
    flags: (p, q, r) meaning A_p A_q <= A_r for the spans A_s = <e_s..e_n>;
        r = dim + 1 forces the product to vanish.
    sources: (ident, relabel-rows-or-None) expected inside the set, after the
        stated change of basis.
    targets: idents expected outside the set in their catalog presentation.
    """

    name: str
    component: str
    dim: int
    equalities: tuple
    flags: tuple
    sources: tuple
    targets: tuple


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    failed: str = ""

    def __bool__(self):
        return self.member


def _eval_side(algebra: Algebra, terms) -> Scalar:
    total = ZERO
    for coeff, factors in terms:
        val = sc(coeff)
        for (i, j, k) in factors:
            val = val * algebra.c(i, j, k)
            if val.is_zero():
                break
        total = total + val
    return total


def closed_set_member(algebra: Algebra, cert: ClosedSetCertificate) -> MembershipReport:
    if algebra.dim != cert.dim:
        return MembershipReport(False, f"dimension {algebra.dim} != {cert.dim}")
    for label, lhs, rhs in cert.equalities:
        left = _eval_side(algebra, lhs)
        right = _eval_side(algebra, rhs)
        if left != right:
            return MembershipReport(
                False,
                f"{label}: {left.render()} != {right.render()}",
            )
    for (p, q, r) in cert.flags:
        for (i, j, k), c in sorted(algebra.constants.items()):
            if i >= p and j >= q and k < r:
                return MembershipReport(
                    False,
                    f"A{p}*A{q} <= A{r} fails: c({i},{j},{k}) = {c.render()}",
                )
    return MembershipReport(True)


def certificate_sources(cert: ClosedSetCertificate):
    """(ident, algebra moved into the certificate's coordinates)."""
    out = []
    for ident, relabel in cert.sources:
        a = catalog.get(ident)
        if relabel is not None:
            rows = [[sc(x) for x in row] for row in relabel]
            a = a.change_basis(Matrix(rows)).relabel(a.label)
        out.append((ident, a))
    return out


def _eq(label, lhs, rhs=()):
    return (label, tuple(lhs), tuple(rhs))


CERTIFICATES = {
    "perm-A24": ClosedSetCertificate(
        name="perm-A24",
        component="perm",
        dim=3,
        equalities=(
            _eq("c22^3*c11^3 = c12^3*c21^3",
                [(1, ((2, 2, 3), (1, 1, 3)))],
                [(1, ((1, 2, 3), (2, 1, 3)))]),
        ),
        flags=((3, 3, 4), (3, 1, 3), (2, 1, 2)),
        sources=(("A24", None),),
        targets=("A14",),
    ),
    "assoc-A20": ClosedSetCertificate(
        name="assoc-A20",
        component="assoc",
        dim=3,
        equalities=(
            _eq("c12^2 = c21^2", [(1, ((1, 2, 2),))], [(1, ((2, 1, 2),))]),
            _eq("c21^2 = c31^3", [(1, ((2, 1, 2),))], [(1, ((3, 1, 3),))]),
            _eq("c21^3 = 0", [(1, ((2, 1, 3),))]),
            _eq("c22^3 = 0", [(1, ((2, 2, 3),))]),
        ),
        flags=((1, 2, 2), (2, 1, 2), (1, 3, 3), (3, 1, 3), (2, 3, 4)),
        sources=(("A20", None),),
        targets=("A14", "A19"),
    ),
    "assoc-A23": ClosedSetCertificate(
        name="assoc-A23",
        component="assoc",
        dim=3,
        equalities=(
            _eq("c11^3*c22^3 = c12^3*c21^3",
                [(1, ((1, 1, 3), (2, 2, 3)))],
                [(1, ((1, 2, 3), (2, 1, 3)))]),
            _eq("c12^2 = c21^2", [(1, ((1, 2, 2),))], [(1, ((2, 1, 2),))]),
            _eq("c11^1 = c13^3", [(1, ((1, 1, 1),))], [(1, ((1, 3, 3),))]),
        ),
        flags=((1, 2, 2), (2, 1, 2), (1, 3, 3), (3, 1, 3), (3, 3, 4)),
        sources=(("A23", None),),
        targets=("A14", "A19"),
    ),
    "right-alt-R09": ClosedSetCertificate(
        name="right-alt-R09",
        component="right-alt",
        dim=3,
        equalities=(
            _eq("c11^1 = c21^2", [(1, ((1, 1, 1),))], [(1, ((2, 1, 2),))]),
            _eq("c11^2 = 0", [(1, ((1, 1, 2),))]),
            _eq("c21^1 = 0", [(1, ((2, 1, 1),))]),
            _eq("c33^3 = 0", [(1, ((3, 3, 3),))]),
        ),
        flags=((1, 2, 3),),
        sources=(("R09", None),),
        targets=("A19", "A20", "A23", "A24"),
    ),
    "right-alt-R10": ClosedSetCertificate(
        name="right-alt-R10",
        component="right-alt",
        dim=3,
        equalities=(
            _eq("c11^1 = c12^2", [(1, ((1, 1, 1),))], [(1, ((1, 2, 2),))]),
            _eq("c12^2 = c13^3", [(1, ((1, 2, 2),))], [(1, ((1, 3, 3),))]),
            _eq("c13^3 = c31^3", [(1, ((1, 3, 3),))], [(1, ((3, 1, 3),))]),
        ),
        flags=((2, 1, 3), (3, 2, 4)),
        sources=(("R10", None),),
        targets=("A19", "A20", "A23", "A24"),
    ),
    "semi-alt-S11": ClosedSetCertificate(
        name="semi-alt-S11",
        component="semi-alt",
        dim=3,
        equalities=(
            _eq("c22^2 = -c21^1", [(1, ((2, 2, 2),))], [(-1, ((2, 1, 1),))]),
            _eq("2*c22^2*c11^2 = (c13^3)^2 + (c31^3)^2",
                [(2, ((2, 2, 2), (1, 1, 2)))],
                [(1, ((1, 3, 3), (1, 3, 3))), (1, ((3, 1, 3), (3, 1, 3)))]),
        ),
        flags=((3, 3, 4), (3, 1, 3)),
        sources=(("S11", ((1, 0, 0), (0, 0, 1), (0, 1, 0))),),
        targets=("S03",),
    ),
    "semi-alt-S06": ClosedSetCertificate(
        name="semi-alt-S06",
        component="semi-alt",
        dim=3,
        equalities=(
            _eq("c12^2 = c21^2", [(1, ((1, 2, 2),))], [(1, ((2, 1, 2),))]),
        ),
        flags=((1, 2, 2), (2, 1, 2)),
        # the defining conditions are mirror-symmetric (swap the two factors
        # and the two flags), so the opposite algebra sits in the same set
        # under the same relabeling
        sources=(("S06", ((0, 0, 1), (1, 0, 0), (0, 1, 0))),
                 ("S09", ((0, 0, 1), (1, 0, 0), (0, 1, 0)))),
        targets=("S12", "S13"),
    ),
}


@dataclass(frozen=True)
class CertificateReport:
    name: str
    sources_ok: tuple    # (ident, MembershipReport)
    targets_ok: tuple    # (ident, True-if-properly-excluded, detail)
    verified: bool


def verify_certificate(cert) -> CertificateReport:
    """sources (after relabeling) must lie in the set, targets must not."""
    if isinstance(cert, str):
        cert = CERTIFICATES[cert]
    src = []
    ok = True
    for ident, algebra in certificate_sources(cert):
        rep = closed_set_member(algebra, cert)
        src.append((ident, rep))
        ok = ok and bool(rep)
    tgt = []
    for ident in cert.targets:
        rep = closed_set_member(catalog.get(ident), cert)
        tgt.append((ident, not rep, rep.failed if not rep else "unexpected member"))
        ok = ok and not rep
    return CertificateReport(cert.name, tuple(src), tuple(tgt), ok)


# ---------------------------------------------------------------------------
# variety barriers: source inside a closed variety, target outside

@dataclass(frozen=True)
class VarietyBarrier:
    component: str
    source: str
    target: str
    variety: str


def _perm_barriers():
    out = []
    for s in ("A07", "A14", "A18", "A24"):
        for t in ("A17", "A19", "A20", "A23"):
            out.append(VarietyBarrier("assoc", s, t, "perm"))
    return tuple(out)


VARIETY_BARRIERS = (
    VarietyBarrier("perm", "A07", "A24", "commutative"),
    VarietyBarrier("perm", "A07", "A14", "commutative"),
    VarietyBarrier("right-alt", "A07", "R09", "commutative"),
    VarietyBarrier("right-alt", "A07", "R10", "commutative"),
) + _perm_barriers()


@dataclass(frozen=True)
class BarrierReport:
    barrier: VarietyBarrier
    verified: bool
    reason: str = ""

    def __bool__(self):
        return self.verified


def verify_barrier(barrier: VarietyBarrier) -> BarrierReport:
    spec = REGISTRY[barrier.variety]
    source = catalog.get(barrier.source)
    for ident in spec.identities:
        res = check_identity(source, ident)
        if not res:
            return BarrierReport(
                barrier, False, f"source breaks {ident.name} at {res.assignment}"
            )
    target = catalog.get(barrier.target)
    for ident in spec.identities:
        res = check_identity(target, ident)
        if not res:
            return BarrierReport(barrier, True)
    return BarrierReport(barrier, False, "target satisfies the variety as well")


# ---------------------------------------------------------------------------
# Borel stability sampling

@dataclass(frozen=True)
class BorelReport:
    name: str
    status: str  # "stable" | "unstable" | "no-member"
    trials: int
    detail: str = ""


def _random_upper_triangular(rng, n):
    rows = []
    for i in range(n):
        row = [ZERO] * n
        row[i] = sc(rng.choice([-3, -2, -1, 1, 2, 3]))
        for j in range(i + 1, n):
            row[j] = sc(rng.randint(-3, 3))
        rows.append(row)
    return Matrix(rows)


def borel_stability_sample(cert, trials: int = 100, seed: int = 0) -> BorelReport:
    """Probe the claim that the certificate set is stable under
    upper-triangular basis changes, starting from its member sources."""
    if isinstance(cert, str):
        cert = CERTIFICATES[cert]
    members = []
    for ident, algebra in certificate_sources(cert):
        if closed_set_member(algebra, cert):
            members.append((ident, algebra))
    if not members:
        return BorelReport(cert.name, "no-member", 0,
                           "no relabeled source lies in the set")
    rng = random.Random(seed)
    for k in range(trials):
        ident, algebra = members[k % len(members)]
        g = _random_upper_triangular(rng, cert.dim)
        moved = algebra.change_basis(g)
        rep = closed_set_member(moved, cert)
        if not rep:
            return BorelReport(cert.name, "unstable", k + 1,
                               f"{ident} leaves the set: {rep.failed}")
    return BorelReport(cert.name, "stable", trials)


# ---------------------------------------------------------------------------
# representability systems

def _adjugate(M: Matrix) -> Matrix:
    n = M.nrows
    cof = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            minor = Matrix([
                [M.entry(i, j) for j in range(n) if j != c]
                for i in range(n) if i != r
            ])
            d = minor.det()
            cof[r][c] = d if (r + c) % 2 == 0 else -d
    return Matrix([[cof[c][r] for c in range(n)] for r in range(n)])


def emit_representability_system(algebra, cert, label=None) -> PolySystem:
    """Polynomial system: a basis change (a_ij), with det inverse dinv, moves
    the given parameter-free algebra into the certificate set."""
    if isinstance(algebra, str):
        algebra = catalog.get(algebra)
    if isinstance(cert, str):
        cert = CERTIFICATES[cert]
    if algebra.params:
        raise ValueError("specialize the algebra before emitting a system")
    if algebra.dim != cert.dim:
        raise ValueError("dimension mismatch")
    n = algebra.dim
    unknowns = [f"a{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    unknowns.append("dinv")
    M = Matrix([[Scalar.param(f"a{i}{j}") for j in range(1, n + 1)]
                for i in range(1, n + 1)])
    dinv = Scalar.param("dinv")
    N = _adjugate(M)
    # transformed structure constants, with dinv standing in for 1/det
    prods = {}
    for i in range(1, n + 1):
        Ei = list(M.rows[i - 1])
        for j in range(1, n + 1):
            Ej = list(M.rows[j - 1])
            prods[(i, j)] = algebra.multiply(Ei, Ej)
    cprime = {}
    for (i, j), prod in prods.items():
        for w in range(1, n + 1):
            s = ZERO
            for vv in range(1, n + 1):
                pv = prod[vv - 1]
                if not pv.is_zero():
                    s = s + pv * N.entry(vv - 1, w - 1)
            cprime[(i, j, w)] = s * dinv
    shell = Algebra.__new__(Algebra)
    shell.dim = n
    shell.constants = {k: v for k, v in cprime.items() if not v.is_zero()}
    shell.params = ()
    shell.label = None
    equations = [M.det() * dinv - ONE]
    for eq_label, lhs, rhs in cert.equalities:
        equations.append(_eval_side(shell, lhs) - _eval_side(shell, rhs))
    for (p, q, r) in cert.flags:
        for i in range(p, n + 1):
            for j in range(q, n + 1):
                for k in range(1, min(r, n + 1)):
                    val = shell.c(i, j, k)
                    if not val.is_zero():
                        equations.append(val)
    name = label or f"{(algebra.label or 'algebra').lower()}-in-{cert.name}"
    return PolySystem(name, unknowns, [e for e in equations if not e.is_zero()])


# ---------------------------------------------------------------------------
# bounded solving: seeded sampling, then a step-bounded Groebner run

@dataclass(frozen=True)
class SearchReport:
    label: str
    status: str  # "feasible" | "infeasible" | "inconclusive"
    samples: int
    solution: dict | None = None
    detail: str = ""


def _gauss_pow(base: GaussRat, e: int) -> GaussRat:
    out = _G1
    for _ in range(e):
        out = out * base
    return out


def _eval_poly(poly: Poly, vals: dict) -> GaussRat:
    total = _G0
    for mono, coeff in poly.d.items():
        v = coeff
        for name, e in mono:
            v = v * _gauss_pow(vals[name], e)
        total = total + v
    return total


def _system_polys(system: PolySystem):
    """numerators of the equations; equations must clear to polynomials."""
    out = []
    for eq in system.equations:
        num, den = eq._polyq()
        if not den.is_const():
            raise ValueError("system equation is not polynomial")
        out.append((frozenset(eq.variables()), num))
    return out


def _solve_plan(polys, names):
    """name -> equation index it is solved from (affine, all earlier names).

    Lets the sampler treat an unknown like the det inverse as derived: random
    values go to the earlier names, the plan equation then pins this one."""
    order = {nm: k for k, nm in enumerate(names)}
    plan = {}
    used = set()
    for nm in names:
        for idx, (vs, poly) in enumerate(polys):
            if idx in used or nm not in vs:
                continue
            others = [v for v in vs if v != nm]
            if poly.degree_in(nm) == 1 and all(order[v] < order[nm] for v in others):
                plan[nm] = idx
                used.add(idx)
                break
    return plan


def _sample_once(polys, names, plan, check_order, rng, bound):
    vals = {}
    for nm in names:
        idx = plan.get(nm)
        if idx is None:
            vals[nm] = GaussRat(Fraction(rng.randint(-bound, bound)))
            continue
        poly = polys[idx][1]
        at0 = dict(vals)
        at0[nm] = _G0
        low = _eval_poly(poly, at0)
        at0[nm] = _G1
        slope = _eval_poly(poly, at0) - low
        if not slope:
            if low:
                return None
            vals[nm] = _G0
        else:
            vals[nm] = -low * slope.inv()
    for idx in check_order:
        if _eval_poly(polys[idx][1], vals):
            return None
    return vals


def solve_system_bounded(system: PolySystem, samples: int = 10_000,
                         seed: int = 0, bound: int = 5,
                         gb_steps: int = 300) -> SearchReport:
    rng = random.Random(seed)
    polys = _system_polys(system)
    plan = _solve_plan(polys, system.unknowns)
    solved = set(plan.values())
    check_order = sorted(
        (idx for idx in range(len(polys)) if idx not in solved),
        key=lambda idx: len(polys[idx][1].d),
    )
    for k in range(samples):
        vals = _sample_once(polys, system.unknowns, plan, check_order, rng, bound)
        if vals is not None:
            sol = {nm: Scalar.gaussian(v.re, v.im) for nm, v in vals.items()}
            return SearchReport(system.label, "feasible", k + 1, sol)
    status = _bounded_buchberger([p for _, p in polys], gb_steps)
    if status == "unit":
        return SearchReport(system.label, "infeasible", samples,
                            detail="Groebner basis contains a nonzero constant")
    return SearchReport(system.label, "inconclusive", samples,
                        detail=f"no sample hit; Groebner run {status}")


# The Groebner run works on exponent-tuple polynomials under graded reverse
# lexicographic order (the global Poly order is plain lex, which stalls on
# systems this size).  Standard speedups only: coprime leading monomials are
# skipped and pairs are processed smallest lcm first.

def _exp_polys(polys, names):
    pos = {nm: k for k, nm in enumerate(names)}
    n = len(names)
    out = []
    for p in polys:
        d = {}
        for mono, coeff in p.d.items():
            e = [0] * n
            for v, k in mono:
                e[pos[v]] = k
            d[tuple(e)] = coeff
        out.append(d)
    return out


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lead(d):
    m = max(d, key=_grevlex_key)
    return m, d[m]


def _e_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _e_sub(b, a):
    return tuple(x - y for x, y in zip(b, a))


def _e_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _shift_scale(d, mono, coeff):
    return {tuple(x + y for x, y in zip(m, mono)): c * coeff for m, c in d.items()}


def _dict_sub(a, b):
    out = dict(a)
    for m, c in b.items():
        cur = out.get(m)
        if cur is None:
            out[m] = GaussRat(Fraction(0)) - c
        else:
            nxt = cur - c
            if nxt:
                out[m] = nxt
            else:
                del out[m]
    return out


def _monic_dict(d):
    _, lc = _lead(d)
    inv = lc.inv()
    return {m: c * inv for m, c in d.items()}


def _dict_mul(a, b):
    out = {}
    for m, c in a.items():
        for m2, c2 in b.items():
            key = tuple(x + y for x, y in zip(m, m2))
            cur = out.get(key)
            nxt = c * c2 if cur is None else cur + c * c2
            if nxt:
                out[key] = nxt
            elif cur is not None:
                del out[key]
    return out


def _subst_var(d, v, r):
    out = {}
    for m, c in d.items():
        term = {tuple(0 if w == v else x for w, x in enumerate(m)): c}
        for _ in range(m[v]):
            term = _dict_mul(term, r)
        for m2, c2 in term.items():
            cur = out.get(m2)
            nxt = c2 if cur is None else cur + c2
            if nxt:
                out[m2] = nxt
            elif cur is not None:
                del out[m2]
    return out


def _eliminate_linear(dicts, cap=8):
    """Solve equations of the form a*v + rest = 0 (a a nonzero constant, rest
    free of v) and substitute v through the system.  Each round removes one
    variable entirely, so this is an invertible change of coordinates: the
    reduced system contains a nonzero constant exactly when the original does.
    The size cap on rest keeps substitution from inflating the system.
    """
    work = [dict(d) for d in dicts]
    progress = True
    while progress:
        progress = False
        for idx, d in enumerate(work):
            if not d:
                continue
            nvars = len(next(iter(d)))
            for v in range(nvars):
                pivot = None
                usable = True
                for m in d:
                    if m[v]:
                        if m[v] != 1 or any(x for w, x in enumerate(m) if w != v):
                            usable = False
                            break
                        pivot = m
                if not usable or pivot is None:
                    continue
                rest = {m: c for m, c in d.items() if m != pivot}
                if len(rest) > cap:
                    continue
                ainv = d[pivot].inv()
                r = {m: _G0 - c * ainv for m, c in rest.items()}
                work[idx] = {}
                for k in range(len(work)):
                    if work[k] and any(m[v] for m in work[k]):
                        work[k] = _subst_var(work[k], v, r)
                progress = True
                break
    return [d for d in work if d]


def _reduce_dict(p, basis, step_budget):
    steps = 0
    result = p
    while result and steps < step_budget:
        lm, lc = _lead(result)
        hit = None
        for g in basis:
            if _e_divides(g[1], lm):
                hit = g
                break
        if hit is None:
            break
        gd, glm = hit[0], hit[1]
        result = _dict_sub(result, _shift_scale(gd, _e_sub(lm, glm), lc))
        steps += 1
    return result, steps


def _bounded_buchberger(polys, max_steps, names=None):
    if names is None:
        seen = set()
        for p in polys:
            seen |= p.variables()
        names = sorted(seen)
    dicts = _exp_polys([p for p in polys if not p.is_zero()], names)
    dicts = _eliminate_linear(dicts)
    basis = []
    for d in dicts:
        lm, _ = _lead(d)
        if not any(lm):
            return "unit"
        md = _monic_dict(d)
        basis.append((md, lm))
    if not basis:
        return "empty"
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    steps = 0
    while pairs and steps < max_steps:
        i, j = min(pairs, key=lambda ij: sum(_e_lcm(basis[ij[0]][1], basis[ij[1]][1])))
        pairs.discard((i, j))
        fm, gm = basis[i][1], basis[j][1]
        lcm = _e_lcm(fm, gm)
        if all(x + y == z for x, y, z in zip(fm, gm, lcm)):
            continue  # coprime leading monomials reduce to zero
        s = _dict_sub(
            _shift_scale(basis[i][0], _e_sub(lcm, fm), _G1),
            _shift_scale(basis[j][0], _e_sub(lcm, gm), _G1),
        )
        rem, used = _reduce_dict(s, basis, max_steps - steps)
        steps += max(used, 1)
        if not rem:
            continue
        lm, _ = _lead(rem)
        if not any(lm):
            return "unit"
        basis.append((_monic_dict(rem), lm))
        new = len(basis) - 1
        pairs.update((k, new) for k in range(new))
    return "complete" if not pairs else "step-budget exhausted"

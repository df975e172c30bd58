"""Structure tensors: multiplication tables over the exact scalar tower.

An Algebra is a dimension plus a sparse map (i,j,k) -> c_ijk over 1-based
indices, meaning e_i e_j = sum_k c_ijk e_k.  Instances are immutable by
convention; every operation returns a fresh value.

Basis-change convention, fixed once for the whole package: the rows of M are
the new basis vectors written in old coordinates, E_i = sum_j M_ij e_j.
"""

from __future__ import annotations

from .exactnum import Matrix, ONE, Scalar, ZERO, sc, vec_is_zero


class ConstraintViolation(ValueError):
    """parameter assignment hits a declared disequality."""


class DimensionMismatch(ValueError):
    pass


class ParamSpec:
    """A named parameter with disequality side conditions.

    Each constraint is a Scalar expression that must stay nonzero under any
    admissible assignment (alpha != 0 is stored as the expression alpha).
    """

    __slots__ = ("name", "constraints")

    def __init__(self, name: str, constraints=()):
        self.name = name
        self.constraints = tuple(constraints)

    def __eq__(self, other):
        return (
            isinstance(other, ParamSpec)
            and self.name == other.name
            and self.constraints == other.constraints
        )

    def __hash__(self):
        return hash((self.name, self.constraints))

    def __repr__(self):
        if not self.constraints:
            return f"ParamSpec({self.name})"
        conds = ", ".join(c.render() + " != 0" for c in self.constraints)
        return f"ParamSpec({self.name}; {conds})"


class Algebra:
    __slots__ = ("dim", "constants", "params", "label")

    def __init__(self, dim, constants, params=(), label=None, allow_t=False):
        self.dim = dim
        cleaned = {}
        names = {p.name for p in params}
        for (i, j, k), c in constants.items():
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise IndexError(f"structure constant index ({i},{j},{k}) outside 1..{dim}")
            c = sc(c)
            if c.is_zero():
                continue
            for v in c.variables():
                if v == "t":
                    if not allow_t:
                        raise ValueError("t is reserved for degeneration bases")
                elif v not in names:
                    raise ValueError(f"undeclared parameter {v!r} in constant ({i},{j},{k})")
            cleaned[(i, j, k)] = c
        self.constants = cleaned
        self.params = tuple(params)
        self.label = label

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.dim == other.dim
            and self.constants == other.constants
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.constants.items())))

    def c(self, i, j, k) -> Scalar:
        return self.constants.get((i, j, k), ZERO)

    def param_names(self):
        return [p.name for p in self.params]

    def relabel(self, label) -> "Algebra":
        out = Algebra.__new__(Algebra)
        out.dim = self.dim
        out.constants = self.constants
        out.params = self.params
        out.label = label
        return out

    def with_params(self, params) -> "Algebra":
        return Algebra(self.dim, self.constants, params, self.label, allow_t=True)

    def __repr__(self):
        name = self.label or f"<{self.dim}-dim>"
        return f"Algebra({name}, {len(self.constants)} constants)"

    # -- products ----------------------------------------------------------

    def multiply(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("vector length != algebra dim")
        out = [ZERO] * self.dim
        for (i, j, k), c in self.constants.items():
            xi = x[i - 1]
            if xi.is_zero():
                continue
            yj = y[j - 1]
            if yj.is_zero():
                continue
            out[k - 1] = out[k - 1] + c * xi * yj
        return out

    def associator(self, x, y, z):
        left = self.multiply(self.multiply(x, y), z)
        right = self.multiply(x, self.multiply(y, z))
        return [a - b for a, b in zip(left, right)]

    def basis_vector(self, i):
        return [ONE if k == i - 1 else ZERO for k in range(self.dim)]

    def basis(self):
        return [self.basis_vector(i) for i in range(1, self.dim + 1)]

    # -- derived algebras ----------------------------------------------------

    def is_commutative(self) -> bool:
        return all(c == self.c(j, i, k) for (i, j, k), c in self.constants.items())

    def is_anticommutative(self) -> bool:
        for (i, j, k), c in self.constants.items():
            if i == j:
                return False
            if c != -self.c(j, i, k):
                return False
        return True

    def plus_algebra(self) -> "Algebra":
        half = Scalar.rational(1, 2)
        out = {}
        for (i, j, k) in set(self.constants) | {(j, i, k) for (i, j, k) in self.constants}:
            v = half * (self.c(i, j, k) + self.c(j, i, k))
            if not v.is_zero():
                out[(i, j, k)] = v
        return Algebra(self.dim, out, self.params, None, allow_t=True)

    def minus_algebra(self) -> "Algebra":
        half = Scalar.rational(1, 2)
        out = {}
        for (i, j, k) in set(self.constants) | {(j, i, k) for (i, j, k) in self.constants}:
            v = half * (self.c(i, j, k) - self.c(j, i, k))
            if not v.is_zero():
                out[(i, j, k)] = v
        return Algebra(self.dim, out, self.params, None, allow_t=True)

    def opposite(self) -> "Algebra":
        out = {(j, i, k): c for (i, j, k), c in self.constants.items()}
        return Algebra(self.dim, out, self.params, self.label, allow_t=True)

    # -- basis change ---------------------------------------------------------

    def change_basis(self, M: Matrix) -> "Algebra":
        n = self.dim
        if M.nrows != n or M.ncols != n:
            raise DimensionMismatch("basis matrix shape != algebra dim")
        Minv = M.inverse()
        out = {}
        for i in range(1, n + 1):
            Ei = list(M.rows[i - 1])
            for j in range(1, n + 1):
                Ej = list(M.rows[j - 1])
                prod = self.multiply(Ei, Ej)  # in old coordinates
                # rewrite in the new basis: coords' = (M^-1)^t coords
                for w in range(1, n + 1):
                    s = ZERO
                    for v in range(1, n + 1):
                        pv = prod[v - 1]
                        if not pv.is_zero():
                            s = s + pv * Minv.entry(v - 1, w - 1)
                    if not s.is_zero():
                        out[(i, j, w)] = s
        return Algebra(n, out, self.params, None, allow_t=True)

    def specialize(self, assignments: dict) -> "Algebra":
        binding = {k: sc(v) for k, v in assignments.items()}
        for p in self.params:
            if p.name not in binding:
                continue
            for cons in p.constraints:
                if cons.substitute(binding).is_zero():
                    raise ConstraintViolation(
                        f"{p.name}: constraint {cons.render()} != 0 violated"
                    )
        out = {
            idx: c.substitute(binding) for idx, c in self.constants.items()
        }
        # parameters may survive, either unbound or reintroduced by the
        # substituted values themselves (e.g. alpha -> -alpha)
        used = set()
        for c in out.values():
            used |= c.variables()
        used.discard("t")
        by_name = {p.name: p for p in self.params}
        remaining = [p for p in self.params if p.name not in binding]
        have = {p.name for p in remaining}
        for name in sorted(used - have):
            remaining.append(by_name.get(name, ParamSpec(name)))
        return Algebra(self.dim, out, tuple(remaining), self.label, allow_t=True)

    # -- subalgebras ----------------------------------------------------------

    def subalgebra_closure(self, generators):
        """independent spanning set of the smallest subalgebra containing
        the generators, as rref rows (deterministic)."""
        rows = [list(g) for g in generators if not vec_is_zero(list(g))]
        if not rows:
            return []
        basis = Matrix(rows).rref().rows
        basis = [list(r) for r in basis if not vec_is_zero(r)]
        while True:
            new_rows = [list(r) for r in basis]
            for u in basis:
                for v in basis:
                    new_rows.append(self.multiply(u, v))
            reduced = Matrix(new_rows).rref().rows
            reduced = [list(r) for r in reduced if not vec_is_zero(r)]
            if len(reduced) == len(basis):
                return reduced
            basis = reduced


def symbolic_vector(n: int, prefix: str):
    """a vector of n fresh parameters prefix1..prefixn."""
    return [Scalar.param(f"{prefix}{k}") for k in range(1, n + 1)]

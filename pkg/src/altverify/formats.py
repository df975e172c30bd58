"""Textual formats: coefficient grammar and the four file kinds.

Grammar (LL(1), whitespace-insensitive, `#` comments to end of line):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?          # literal nonnegative integer exponent
    atom   := INT | IDENT | '(' expr ')'

`i` is the imaginary unit and `t` the deformation variable; both are
reserved.  Identifiers of the shape e<digits> are basis vectors and only
valid in vector context, where they terminate the coefficient expression:

    vector := '0' | vterm (('+'|'-') vterm)*
    vterm  := ['-'] (BASIS | expr ['*'] BASIS)

A coefficient expression binds greedily up to the basis token, so
`1 + alpha e3` and `(1 + alpha) e3` parse identically; the serializer always
parenthesizes sums for readability.

File kinds (one logical statement per line):

    .alg   algebra <id> / dim <n> / [symmetry commutative|anticommutative]
           / [param <name>]* / [constraint <expr> != <expr>]*
           / product lines  "e<i> e<j> = <vector>"
           Products omitted are zero, or recovered from the symmetry tag.

    .coc   cocycle <id> / dim <n> / mode skew|symmetric
           / entry lines  "B <m> <i> <j> = <expr>"  (canonical half only:
           i < j for skew, i <= j for symmetric)

    .deg   degeneration <id> / dim <n> / source <id> / target <id>
           / [tparam <name>]* / [bind <name> = <expr>]*
           / n lines  "row <vector>"  (entries may use t and the tparams)

    .sys   system <id> / unknowns <name>* / equation lines "eq <expr> = <expr>"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .exactnum import ONE, Scalar, ZERO, vec_is_zero
from .sctensor import Algebra, ParamSpec


class ParseError(ValueError):
    def __init__(self, message, pos=None, line=None):
        self.pos = pos
        self.line = line
        where = ""
        if line is not None:
            where += f" on line {line}"
        if pos is not None:
            where += f" at offset {pos}"
        super().__init__(message + where)


class UnknownParameter(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class SymmetryConflict(ParseError):
    pass


_BASIS_RE = re.compile(r"^e([0-9]+)$")
_RESERVED = {"i", "t"}


def _is_basis(name: str):
    m = _BASIS_RE.match(name)
    return int(m.group(1)) if m else None


# ---------------------------------------------------------------------------
# tokenizer

_TWO_CHAR = ("!=",)
_ONE_CHAR = "+-*/^()=,"


def _tokenize(text: str):
    toks = []
    n = len(text)
    pos = 0
    while pos < n:
        ch = text[pos]
        if ch in " \t\r":
            pos += 1
            continue
        if ch == "#":
            break
        if text[pos : pos + 2] in _TWO_CHAR:
            toks.append(("OP", text[pos : pos + 2], pos))
            pos += 2
            continue
        if ch in _ONE_CHAR:
            toks.append(("OP", ch, pos))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            toks.append(("INT", text[start:pos], start))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            toks.append(("IDENT", text[start:pos], start))
            continue
        raise ParseError(f"unexpected character {ch!r}", pos=pos)
    toks.append(("EOF", "", n))
    return toks


# ---------------------------------------------------------------------------
# expression parser

class _Parser:
    def __init__(self, text, params=None, dim=None):
        self.text = text
        self.toks = _tokenize(text)
        self.idx = 0
        self.params = None if params is None else set(params)
        self.dim = dim  # vector mode iff dim is not None

    def peek(self, ahead=0):
        i = min(self.idx + ahead, len(self.toks) - 1)
        return self.toks[i]

    def next(self):
        tok = self.toks[self.idx]
        if tok[0] != "EOF":
            self.idx += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.peek()
        if kind != "OP" or val != op:
            raise ParseError(f"expected {op!r}", pos=pos)
        return self.next()

    def at_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "OP" and val in ops

    def at_basis(self):
        kind, val, _ = self.peek()
        return kind == "IDENT" and _is_basis(val) is not None

    # scalar grammar ------------------------------------------------------

    def expr(self) -> Scalar:
        out = self.term()
        while self.at_op("+", "-"):
            op = self.next()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Scalar:
        out = self.unary()
        while self.at_op("*", "/"):
            if self.peek()[1] == "*" and self.dim is not None:
                nk, nv, _ = self.peek(1)
                if nk == "IDENT" and _is_basis(nv) is not None:
                    break  # the '*' separates coefficient from basis vector
            op, pos = self.next()[1], self.peek()[2]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", pos=pos)
                out = out / rhs
        return out

    def unary(self) -> Scalar:
        if self.at_op("-"):
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.at_op("^"):
            self.next()
            kind, val, pos = self.peek()
            if kind != "INT":
                raise ParseError("exponent must be a literal nonnegative integer", pos=pos)
            self.next()
            return base ** int(val)
        return base

    def atom(self) -> Scalar:
        kind, val, pos = self.next()
        if kind == "INT":
            return Scalar.integer(int(val))
        if kind == "IDENT":
            if _is_basis(val) is not None:
                raise ParseError("basis vector in scalar context", pos=pos)
            if val == "i":
                return Scalar.imaginary_unit()
            if val == "t":
                return Scalar.t()
            if self.params is not None and val not in self.params:
                raise UnknownParameter(f"unknown parameter {val!r}", pos=pos)
            return Scalar.param(val)
        if kind == "OP" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input",
                         pos=pos)

    # vector grammar ------------------------------------------------------

    def basis_index(self) -> int:
        kind, val, pos = self.next()
        idx = _is_basis(val) if kind == "IDENT" else None
        if idx is None:
            raise ParseError("expected basis vector e<k>", pos=pos)
        if not 1 <= idx <= self.dim:
            raise IndexOutOfRange(f"basis index e{idx} outside 1..{self.dim}", pos=pos)
        return idx

    def vterm(self):
        neg = False
        if self.at_op("-"):
            self.next()
            neg = True
        if self.at_basis():
            coeff = ONE
        else:
            coeff = self.expr()
            if self.at_op("*"):
                self.next()
        idx = self.basis_index()
        return (-coeff if neg else coeff), idx

    def vector(self):
        out = [ZERO] * self.dim
        kind, val, _ = self.peek()
        if kind == "INT" and val == "0" and self.peek(1)[0] == "EOF":
            self.next()
            return out
        coeff, idx = self.vterm()
        out[idx - 1] = out[idx - 1] + coeff
        while self.at_op("+", "-"):
            op = self.next()[1]
            coeff, idx = self.vterm()
            if op == "-":
                coeff = -coeff
            out[idx - 1] = out[idx - 1] + coeff
        return out

    def finish(self, value):
        kind, val, pos = self.peek()
        if kind != "EOF":
            raise ParseError(f"trailing input {val!r}", pos=pos)
        return value


def parse_scalar(text: str, params=None) -> Scalar:
    p = _Parser(text, params=params)
    return p.finish(p.expr())


def serialize_scalar(s: Scalar) -> str:
    return s.render()


def parse_vector(text: str, dim: int, params=None):
    p = _Parser(text, params=params, dim=dim)
    return p.finish(p.vector())


def _coeff_prefix(c: Scalar) -> str:
    """coefficient as it appears before a basis token ('' for 1, '-' for -1)."""
    r = c.render()
    if r == "1":
        return ""
    if r == "-1":
        return "-"
    depth = 0
    needs_parens = False
    for idx, ch in enumerate(r):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and idx > 0:
            needs_parens = True
            break
    return f"({r}) " if needs_parens else f"{r} "


def serialize_vector(vec) -> str:
    parts = []
    for k, c in enumerate(vec, start=1):
        if c.is_zero():
            continue
        prefix = _coeff_prefix(c)
        if prefix == "-":
            term, neg = f"e{k}", True
        elif prefix.startswith("-"):
            term, neg = f"{prefix[1:]}e{k}", True
        else:
            term, neg = f"{prefix}e{k}", False
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# line-structured files

def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def _header(line_iter, keyword: str):
    try:
        lineno, body = next(line_iter)
    except StopIteration:
        raise ParseError(f"empty file, expected {keyword!r} header") from None
    if not body.startswith(keyword + " ") and body != keyword:
        raise ParseError(f"expected {keyword!r} header", line=lineno)
    ident = body[len(keyword):].strip()
    if not ident:
        raise ParseError(f"{keyword} header needs a name", line=lineno)
    return ident


def _declare_param(name, lineno, declared):
    if name in _RESERVED or _is_basis(name) is not None:
        raise ParseError(f"parameter name {name!r} is reserved", line=lineno)
    if name in declared:
        raise ParseError(f"parameter {name!r} declared twice", line=lineno)
    declared.append(name)


def parse_algebra(text: str) -> Algebra:
    lines = _logical_lines(text)
    label = _header(lines, "algebra")
    dim = None
    symmetry = "none"
    declared: list = []
    constraints: dict = {}
    products: dict = {}
    for lineno, body in lines:
        words = body.split()
        head = words[0]
        try:
            if head == "dim":
                dim = int(words[1])
            elif head == "symmetry":
                if words[1] not in ("commutative", "anticommutative", "none"):
                    raise ParseError(f"unknown symmetry {words[1]!r}", line=lineno)
                symmetry = words[1]
            elif head == "param":
                _declare_param(words[1], lineno, declared)
            elif head == "constraint":
                rest = body[len("constraint"):].strip()
                if "!=" not in rest:
                    raise ParseError("constraint needs '!='", line=lineno)
                lhs_t, rhs_t = rest.split("!=", 1)
                expr = parse_scalar(lhs_t, declared) - parse_scalar(rhs_t, declared)
                owner = next((v for v in sorted(expr.variables()) if v in declared), None)
                if owner is None:
                    raise ParseError("constraint mentions no declared parameter", line=lineno)
                constraints.setdefault(owner, []).append(expr)
            elif head == "note":
                pass
            elif _is_basis(head) is not None:
                if dim is None:
                    raise ParseError("product line before dim", line=lineno)
                if len(words) < 3 or "=" not in body:
                    raise ParseError("product line must be 'e<i> e<j> = <vector>'", line=lineno)
                lhs, rhs = body.split("=", 1)
                lhs_words = lhs.split()
                if len(lhs_words) != 2:
                    raise ParseError("product left side must be two basis vectors", line=lineno)
                ij = []
                for w in lhs_words:
                    idx = _is_basis(w)
                    if idx is None:
                        raise ParseError(f"expected basis vector, got {w!r}", line=lineno)
                    if not 1 <= idx <= dim:
                        raise IndexOutOfRange(f"basis index e{idx} outside 1..{dim}", line=lineno)
                    ij.append(idx)
                key = (ij[0], ij[1])
                if key in products:
                    raise ParseError(f"duplicate product line e{key[0]} e{key[1]}", line=lineno)
                products[key] = parse_vector(rhs.strip(), dim, declared)
            else:
                raise ParseError(f"unknown statement {head!r}", line=lineno)
        except (ParseError,):
            raise
        except (IndexError, ValueError) as exc:
            raise ParseError(f"malformed {head!r} line ({exc})", line=lineno) from None
    if dim is None:
        raise ParseError("missing dim line")

    full = dict(products)
    if symmetry == "commutative":
        for (i, j), vec in products.items():
            if (j, i) in products and i != j:
                if products[(j, i)] != vec:
                    raise SymmetryConflict(
                        f"e{i} e{j} and e{j} e{i} disagree under commutative tag"
                    )
            full[(j, i)] = vec
    elif symmetry == "anticommutative":
        for (i, j), vec in products.items():
            neg = [-c for c in vec]
            if i == j:
                if not vec_is_zero(vec):
                    raise SymmetryConflict(f"e{i} e{i} nonzero under anticommutative tag")
                continue
            if (j, i) in products:
                if products[(j, i)] != neg:
                    raise SymmetryConflict(
                        f"e{i} e{j} and e{j} e{i} do not negate under anticommutative tag"
                    )
            full[(j, i)] = neg

    consts = {}
    for (i, j), vec in full.items():
        for k, c in enumerate(vec, start=1):
            if not c.is_zero():
                consts[(i, j, k)] = c
    params = tuple(ParamSpec(n, constraints.get(n, ())) for n in declared)
    return Algebra(dim, consts, params, label)


def serialize_algebra(a: Algebra) -> str:
    out = [f"algebra {a.label or 'X'}", f"dim {a.dim}"]
    symmetry = "none"
    if a.constants and a.is_commutative():
        symmetry = "commutative"
    elif a.constants and a.is_anticommutative():
        symmetry = "anticommutative"
    if symmetry != "none":
        out.append(f"symmetry {symmetry}")
    for p in a.params:
        out.append(f"param {p.name}")
        for cons in p.constraints:
            out.append(f"constraint {cons.render()} != 0")
    pairs = sorted({(i, j) for (i, j, _k) in a.constants})
    for i, j in pairs:
        if symmetry == "commutative" and j < i:
            continue
        if symmetry == "anticommutative" and j <= i:
            continue
        vec = [a.c(i, j, k) for k in range(1, a.dim + 1)]
        out.append(f"e{i} e{j} = {serialize_vector(vec)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# cocycle files

@dataclass
class CocycleFile:
    label: str
    dim: int
    mode: str  # "skew" | "symmetric"
    entries: list  # of (component m, i, j, Scalar)


def parse_cocycle(text: str) -> CocycleFile:
    lines = _logical_lines(text)
    label = _header(lines, "cocycle")
    dim = None
    mode = None
    entries = []
    for lineno, body in lines:
        words = body.split()
        head = words[0]
        if head == "dim":
            dim = int(words[1])
        elif head == "mode":
            if words[1] not in ("skew", "symmetric"):
                raise ParseError(f"unknown mode {words[1]!r}", line=lineno)
            mode = words[1]
        elif head == "B":
            if dim is None or mode is None:
                raise ParseError("entry line before dim/mode", line=lineno)
            if "=" not in body:
                raise ParseError("entry line must be 'B <m> <i> <j> = <expr>'", line=lineno)
            lhs, rhs = body.split("=", 1)
            try:
                _, m, i, j = lhs.split()
                m, i, j = int(m), int(i), int(j)
            except ValueError:
                raise ParseError("entry line must be 'B <m> <i> <j> = <expr>'",
                                 line=lineno) from None
            for idx in (m, i, j):
                if not 1 <= idx <= dim:
                    raise IndexOutOfRange(f"index {idx} outside 1..{dim}", line=lineno)
            if mode == "skew" and not i < j:
                raise ParseError("skew entries must have i < j", line=lineno)
            if mode == "symmetric" and not i <= j:
                raise ParseError("symmetric entries must have i <= j", line=lineno)
            entries.append((m, i, j, parse_scalar(rhs.strip())))
        else:
            raise ParseError(f"unknown statement {head!r}", line=lineno)
    if dim is None or mode is None:
        raise ParseError("cocycle file needs dim and mode lines")
    return CocycleFile(label, dim, mode, entries)


def serialize_cocycle(cf: CocycleFile) -> str:
    out = [f"cocycle {cf.label}", f"dim {cf.dim}", f"mode {cf.mode}"]
    for m, i, j, val in sorted(cf.entries, key=lambda e: e[:3]):
        out.append(f"B {m} {i} {j} = {val.render()}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# degeneration files

@dataclass
class DegenerationFile:
    label: str
    dim: int
    source: str
    target: str
    tparams: list  # target parameter names left symbolic
    bindings: dict  # source parameter name -> Scalar over t and tparams
    rows: list  # dim vectors over t and tparams


def parse_degeneration(text: str) -> DegenerationFile:
    lines = _logical_lines(text)
    label = _header(lines, "degeneration")
    dim = None
    source = target = None
    tparams: list = []
    bindings: dict = {}
    rows: list = []
    for lineno, body in lines:
        words = body.split()
        head = words[0]
        if head == "dim":
            dim = int(words[1])
        elif head == "source":
            source = words[1]
        elif head == "target":
            target = words[1]
        elif head == "tparam":
            _declare_param(words[1], lineno, tparams)
        elif head == "bind":
            rest = body[len("bind"):].strip()
            if "=" not in rest:
                raise ParseError("bind line must be 'bind <name> = <expr>'", line=lineno)
            name, expr_t = rest.split("=", 1)
            bindings[name.strip()] = parse_scalar(expr_t.strip(), tparams)
        elif head == "row":
            if dim is None:
                raise ParseError("row line before dim", line=lineno)
            rows.append(parse_vector(body[len("row"):].strip(), dim, tparams))
        else:
            raise ParseError(f"unknown statement {head!r}", line=lineno)
    if dim is None or source is None or target is None:
        raise ParseError("degeneration file needs dim, source and target lines")
    if len(rows) != dim:
        raise ParseError(f"expected {dim} row lines, found {len(rows)}")
    return DegenerationFile(label, dim, source, target, tparams, bindings, rows)


def serialize_degeneration(df: DegenerationFile) -> str:
    out = [f"degeneration {df.label}", f"dim {df.dim}",
           f"source {df.source}", f"target {df.target}"]
    for name in df.tparams:
        out.append(f"tparam {name}")
    for name in sorted(df.bindings):
        out.append(f"bind {name} = {df.bindings[name].render()}")
    for row in df.rows:
        out.append(f"row {serialize_vector(row)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# polynomial systems

@dataclass
class PolySystem:
    label: str
    unknowns: list
    equations: list = field(default_factory=list)  # Scalars, each meaning expr = 0


def emit_poly_system(system: PolySystem) -> str:
    out = [f"system {system.label}"]
    if system.unknowns:
        out.append("unknowns " + " ".join(system.unknowns))
    for eq in system.equations:
        out.append(f"eq {eq.render()} = 0")
    return "\n".join(out) + "\n"


def parse_poly_system(text: str) -> PolySystem:
    lines = _logical_lines(text)
    label = _header(lines, "system")
    unknowns: list = []
    equations: list = []
    for lineno, body in lines:
        words = body.split()
        head = words[0]
        if head == "unknowns":
            for name in words[1:]:
                _declare_param(name, lineno, unknowns)
        elif head == "eq":
            rest = body[len("eq"):].strip()
            if "=" not in rest:
                raise ParseError("eq line must be 'eq <expr> = <expr>'", line=lineno)
            lhs_t, rhs_t = rest.split("=", 1)
            lhs = parse_scalar(lhs_t, unknowns)
            rhs = parse_scalar(rhs_t, unknowns)
            equations.append(lhs - rhs)
        else:
            raise ParseError(f"unknown statement {head!r}", line=lineno)
    return PolySystem(label, unknowns, equations)

"""Packaged structure-constant tables for the classified algebras.

Every entry ships as a .alg file under data/algebras/ and is addressed by a
short ident (A07, R09, S11, ...).  The noncommutative associative list
coincides table-by-table with a subset of the right-alternative list, so
those idents are aliases onto the same files and differ only in ident,
grouping and tags.

Tags record the memberships (and non-memberships, "!"-prefixed) that each
entry is supposed to satisfy.  Nothing is trusted: verify_tags() re-derives
every tag from the structure constants, and self_check() sweeps the whole
catalog.  Binary-variety tags are certified through their registered
two-generated criteria; pass binary_method="symbolic" to force the closure
computation instead.
"""

import functools
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .exactnum import Matrix, Scalar, sc
from .formats import parse_algebra, parse_scalar
from .identities import (REGISTRY, check_binary_variety, check_identity,
                         check_variety)
from .sctensor import Algebra

__all__ = [
    "CatalogEntry", "TagCheck", "GROUPS", "entry", "get", "ids",
    "list_entries", "claimed_distinct_pairs", "swap_equivalence",
    "opposite_pairs", "verify_tags", "self_check", "resolve_uri",
]


GROUPS = {
    "comm-assoc": tuple(f"A{k:02d}" for k in range(1, 12)),
    "jordan": tuple(f"J{k}" for k in range(12, 20)),
    "right-alt": tuple(f"R{k:02d}" for k in range(0, 17)),
    "assoc": tuple(f"A{k}" for k in range(12, 25)),
    "semi-alt": tuple(f"S{k:02d}" for k in range(1, 14)),
    "lie": ("L01", "L02", "L03", "L04"),
    "binary-lie-4": ("B1", "B2"),
    "malcev-4": ("M",),
    "non-minus-one-one-4": tuple(f"BB{k:02d}" for k in range(1, 9)),
    "semi-alt-4": tuple(f"SS{k:02d}" for k in range(1, 7)),
    "perm-4": ("P4",),
    "right-alt-4": ("R4",),
}

# the noncommutative associative algebras are the right-alternative tables
# without R04, R09, R10, R13 (the non-associative ones), renumbered
_ALIASES = {
    "A12": "R00", "A13": "R01", "A14": "R02", "A15": "R03", "A16": "R05",
    "A17": "R06", "A18": "R07", "A19": "R08", "A20": "R11", "A21": "R12",
    "A22": "R14", "A23": "R15", "A24": "R16",
}

_NONASSOC_RIGHT_ALT = frozenset({"R04", "R09", "R10", "R13"})
# associative algebras additionally satisfying (xy)z = (xz)y
_PERM_MEMBERS = frozenset({"A12", "A13", "A14", "A16", "A18", "A21", "A24"})


def _tags_for(ident: str, group: str):
    if group == "comm-assoc":
        return ("commutative", "associative")
    if group == "jordan":
        return ("commutative", "jordan", "!associative")
    if group == "right-alt":
        # every 3-dimensional right-alternative algebra turns out to be
        # Lie-admissible, so the whole list carries the minus-one-one tag
        if ident in _NONASSOC_RIGHT_ALT:
            return ("right-alternative", "minus-one-one", "!associative")
        return ("right-alternative", "minus-one-one", "associative")
    if group == "assoc":
        perm = "perm" if ident in _PERM_MEMBERS else "!perm"
        return ("associative", "minus-one-one", perm)
    if group == "semi-alt":
        return ("semi-alternative", "lie-admissible", "assosymmetric",
                "!associative")
    if group == "lie":
        return ("anticommutative", "lie")
    if group == "binary-lie-4":
        return ("anticommutative", "binary-lie", "!lie")
    if group == "malcev-4":
        return ("anticommutative", "malcev", "!lie")
    if group == "non-minus-one-one-4":
        return ("right-alternative", "binary-minus-one-one",
                "!lie-admissible", "!minus-one-one")
    if group == "semi-alt-4":
        return ("semi-alternative", "!assosymmetric")
    if group == "perm-4":
        return ("binary-perm", "!associative", "!perm")
    if group == "right-alt-4":
        return ("right-alternative", "!binary-minus-one-one")
    raise ValueError(f"unknown group {group!r}")


_GROUP_OF = {ident: group for group, members in GROUPS.items()
             for ident in members}


@dataclass(frozen=True)
class CatalogEntry:
    ident: str
    group: str
    dim: int
    tags: tuple
    algebra: Algebra  # generic form; treat as read-only


def ids():
    """All catalog idents, in group order."""
    return tuple(ident for members in GROUPS.values() for ident in members)


@functools.lru_cache(maxsize=None)
def _load_file(name: str) -> Algebra:
    path = resources.files(__package__).joinpath(f"data/algebras/{name}.alg")
    return parse_algebra(path.read_text())


@functools.lru_cache(maxsize=None)
def entry(ident: str) -> CatalogEntry:
    group = _GROUP_OF.get(ident)
    if group is None:
        raise KeyError(f"unknown catalog ident {ident!r}")
    algebra = _load_file(_ALIASES.get(ident, ident)).relabel(ident)
    return CatalogEntry(ident, group, algebra.dim, _tags_for(ident, group),
                        algebra)


def _coerce_param(entry_params, value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return sc(value)
    if isinstance(value, str):
        return parse_scalar(value, params=entry_params)
    raise TypeError(f"cannot use {value!r} as a parameter value")


def get(ident: str, params=None) -> Algebra:
    """Catalog algebra, specialized when parameter bindings are given.

    Values may be Scalars, ints, Fractions, or expression strings (which may
    mention the entry's own parameters, e.g. alpha -> "-alpha").
    """
    ent = entry(ident)
    if not params:
        return ent.algebra
    names = {p.name for p in ent.algebra.params}
    binding = {}
    for name, value in params.items():
        if name not in names:
            raise KeyError(f"{ident} has no parameter {name!r}")
        binding[name] = _coerce_param(names, value)
    return ent.algebra.specialize(binding)


def list_entries(group=None, dim=None, tag=None):
    out = []
    for ident in ids():
        ent = entry(ident)
        if group is not None and ent.group != group:
            continue
        if dim is not None and ent.dim != dim:
            continue
        if tag is not None and tag not in ent.tags:
            continue
        out.append(ent)
    return out


def claimed_distinct_pairs():
    """Unordered ident pairs asserted pairwise non-isomorphic.

    Each classification list is pairwise distinct within itself; entries of
    different lists are never compared here (several idents alias the same
    table across lists).
    """
    pairs = []
    for members in GROUPS.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                pairs.append((a, b))
    return tuple(pairs)


# families isomorphic to themselves under a sign flip of the parameter:
# alpha and -alpha give isomorphic algebras, via the listed basis change
# (rows are the new basis vectors)
_SWAPS = {
    "R02": ("alpha", "-alpha", ((0, 1, 0), (1, 0, 0), (0, 0, 1))),
    "A14": ("alpha", "-alpha", ((0, 1, 0), (1, 0, 0), (0, 0, 1))),
    "BB02": ("alpha", "-alpha",
             ((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, -1))),
    "BB05": ("alpha", "-alpha",
             ((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, -1))),
}


def swap_equivalence(ident: str):
    """(parameter name, replacement expression, basis-change Matrix) or None."""
    data = _SWAPS.get(ident)
    if data is None:
        return None
    name, repl, rows = data
    return name, repl, Matrix([[sc(v) for v in row] for row in rows])


def opposite_pairs():
    """Pairs (a, b) with opposite(a) equal to b constant-for-constant."""
    return (("S06", "S09"), ("S12", "S13"))


@dataclass
class TagCheck:
    ident: str
    tag: str
    ok: bool
    detail: object = None  # VarietyReport for the underlying check


def _check_tag(algebra: Algebra, tag: str, binary_method: str):
    want = not tag.startswith("!")
    name = tag if want else tag[1:]
    spec = REGISTRY[name]
    if spec.binary_base is not None:
        if binary_method == "shortcut" and spec.shortcut is not None:
            got, report = True, None
            for identity in spec.shortcut:
                res = check_identity(algebra, identity)
                if not res:
                    got, report = False, res
                    break
        else:
            full = check_binary_variety(algebra, name, method=binary_method)
            got, report = full.member, full
    else:
        full = check_variety(algebra, name)
        got, report = full.member, full
    return got == want, report


def verify_tags(ident: str, binary_method: str = "shortcut"):
    ent = entry(ident)
    out = []
    for tag in ent.tags:
        ok, report = _check_tag(ent.algebra, tag, binary_method)
        out.append(TagCheck(ident, tag, ok, report))
    return out


def self_check(idents=None, dim=None, binary_method: str = "shortcut"):
    """Re-derive every claimed tag; returns the full list of TagChecks."""
    if idents is None:
        idents = [e.ident for e in list_entries(dim=dim)]
    out = []
    for ident in idents:
        out.extend(verify_tags(ident, binary_method=binary_method))
    return out


def resolve_uri(text: str):
    """Algebra named by 'catalog:IDENT' or 'catalog:IDENT?name=expr&...'.

    A bare ident (no scheme) is accepted too.
    """
    body = text[len("catalog:"):] if text.startswith("catalog:") else text
    ident, _, query = body.partition("?")
    params = {}
    if query:
        for piece in query.split("&"):
            name, eq, expr = piece.partition("=")
            if not eq or not name:
                raise ValueError(f"bad parameter binding {piece!r}")
            params[name] = expr
    return get(ident, params)

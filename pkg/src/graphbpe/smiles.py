"""A small SMILES reader producing heavy-atom graphs.

Supported: organic-subset atoms (B C N O P S F Cl Br I), aromatic atoms
(b c n o p s), bracket atoms with an optional hydrogen count and charge,
bonds ``- = # :``, branches, ring closures (``1``-``9`` and ``%nn``) and
``.`` separators. Bond orders are validated and then dropped, since only
node labels take part in tokenization. Stereo marks (``/ \\ @``), isotopes
and atom classes are rejected.

Node labels are the atom tokens: ``c`` for an aromatic carbon, ``Cl`` for
chlorine, and the bracket contents for bracket atoms (``[N+]`` -> ``N+``).
"""

from __future__ import annotations

import re

from .errors import (
    EmptyInputError,
    SmilesError,
    UnbalancedParenthesisError,
    UnknownAtomSymbolError,
    UnmatchedRingClosureError,
)
from .graph import SimpleGraph, build_graph

ORGANIC = ("Cl", "Br", "B", "C", "N", "O", "P", "S", "F", "I")
AROMATIC = ("b", "c", "n", "o", "p", "s")
BONDS = "-=#:"

_ELEMENTS = frozenset(
    """H He Li Be B C N O F Ne Na Mg Al Si P S Cl Ar K Ca Sc Ti V Cr Mn Fe Co Ni
    Cu Zn Ga Ge As Se Br Kr Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In Sn Sb Te I Xe
    Cs Ba La Ce Pr Nd Pm Sm Eu Gd Tb Dy Ho Er Tm Yb Lu Hf Ta W Re Os Ir Pt Au Hg
    Tl Pb Bi Po At Rn Fr Ra Ac Th Pa U Np Pu Am Cm Bk Cf Es Fm Md No Lr""".split()
)
_AROMATIC_BRACKET = frozenset({"b", "c", "n", "o", "p", "s", "se", "as", "te"})
_BRACKET_RE = re.compile(r"(?P<sym>[A-Z][a-z]?|[a-z]{1,2})(?P<h>H\d*)?(?P<chg>\+\+|--|\+\d*|-\d*)?")


def _check_bracket(content: str, pos: int) -> None:
    m = _BRACKET_RE.fullmatch(content)
    if m is None:
        raise UnknownAtomSymbolError(f"unsupported bracket atom [{content}]", pos)
    sym = m.group("sym")
    if sym not in _ELEMENTS and sym not in _AROMATIC_BRACKET:
        raise UnknownAtomSymbolError(f"unknown element in [{content}]", pos)


def parse_smiles(s: str, name: str | None = None) -> SimpleGraph:
    """Parse one SMILES string into a :class:`SimpleGraph`.

    >>> g = parse_smiles("c1ccccc1")
    >>> g.num_nodes, g.num_edges
    (6, 6)
    """
    s = s.strip()
    if not s:
        raise EmptyInputError("empty SMILES string")
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    prev: int | None = None
    bond: str | None = None
    branches: list[int | None] = []
    rings: dict[int, tuple[int, str | None, int]] = {}
    i = 0
    n = len(s)

    def add_atom(label: str) -> None:
        nonlocal prev, bond
        labels.append(label)
        cur = len(labels) - 1
        if prev is not None:
            edges.append((prev, cur))
        prev, bond = cur, None

    while i < n:
        ch = s[i]
        if ch == "[":
            j = s.find("]", i + 1)
            if j == -1:
                raise UnknownAtomSymbolError("unterminated bracket atom", i)
            content = s[i + 1 : j]
            _check_bracket(content, i)
            add_atom(content)
            i = j + 1
        elif s.startswith(("Cl", "Br"), i):
            add_atom(s[i : i + 2])
            i += 2
        elif ch in ORGANIC or ch in AROMATIC:
            add_atom(ch)
            i += 1
        elif ch in BONDS:
            if prev is None or bond is not None:
                raise SmilesError(f"misplaced bond symbol {ch!r}", i)
            bond = ch
            i += 1
        elif ch == "(":
            if prev is None:
                raise UnbalancedParenthesisError("branch opened before any atom", i)
            branches.append(prev)
            i += 1
        elif ch == ")":
            if not branches:
                raise UnbalancedParenthesisError("unmatched ')'", i)
            if bond is not None:
                raise SmilesError("bond symbol without a following atom", i)
            prev = branches.pop()
            i += 1
        elif ch.isdigit() or ch == "%":
            if ch == "%":
                digits = s[i + 1 : i + 3]
                if len(digits) != 2 or not digits.isdigit():
                    raise UnmatchedRingClosureError("'%' must be followed by two digits", i)
                num, width = int(digits), 3
            else:
                num, width = int(ch), 1
            if prev is None:
                raise UnmatchedRingClosureError(f"ring closure {num} before any atom", i)
            if num in rings:
                other, other_bond, _ = rings.pop(num)
                if bond is not None and other_bond is not None and bond != other_bond:
                    raise SmilesError(f"conflicting bonds on ring closure {num}", i)
                if other == prev:
                    raise UnmatchedRingClosureError(f"ring closure {num} bonds an atom to itself", i)
                edges.append((other, prev))
            else:
                rings[num] = (prev, bond, i)
            bond = None
            i += width
        elif ch == ".":
            if bond is not None or prev is None:
                raise SmilesError("misplaced '.'", i)
            prev = None
            i += 1
        else:
            raise UnknownAtomSymbolError(f"unsupported symbol {ch!r}", i)

    if bond is not None:
        raise SmilesError("bond symbol without a following atom", n)
    if branches:
        raise UnbalancedParenthesisError("unclosed '('", n)
    if rings:
        num, (_, _, pos) = min(rings.items(), key=lambda kv: kv[1][2])
        raise UnmatchedRingClosureError(f"ring closure {num} is never closed", pos)
    return build_graph(labels, edges, name)

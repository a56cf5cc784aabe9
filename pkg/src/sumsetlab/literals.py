"""Parsers for the textual forms of groups, vectors and subsets used on the command line.

Groups: ``f2:5``, ``z:64`` or a modulus list ``4,9``.
Vectors: a decimal index, ``b101`` or ``(1,0,1)`` (both most significant coordinate first).
Subsets: a mask ``0x1f``, an index list ``[0,3,5]``, or ``@file.json`` holding such a list.
"""

from __future__ import annotations

import json
from pathlib import Path

from .groups import AbelianGroup


def parse_group(text: str) -> AbelianGroup:
    t = text.strip().lower()
    try:
        if t.startswith("f2:"):
            return AbelianGroup.f2(int(t[3:]))
        if t.startswith("z:"):
            return AbelianGroup.cyclic(int(t[2:]))
        return AbelianGroup(tuple(int(p) for p in t.split(",")))
    except ValueError as exc:
        raise ValueError(f"bad group literal {text!r}: {exc}") from None


def f2_dim(G: AbelianGroup) -> int:
    if not G.is_elementary_2:
        raise ValueError(f"this command needs a group f2:n, got {G.label}")
    return len(G.moduli)


def parse_vector(text: str, n: int) -> int:
    t = text.strip().replace(" ", "")
    if t.startswith("b"):
        bits = t[1:]
    elif t.startswith("("):
        bits = "".join(t.strip("()").split(","))
    else:
        v = int(t)
        bits = None
    if bits is not None:
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ValueError(f"vector literal {text!r} must have {n} binary coordinates")
        v = int(bits, 2)
    if not 0 <= v < (1 << n):
        raise ValueError(f"vector {v} out of range for n={n}")
    return v


def _load(text: str):
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    return json.loads(text)


def parse_index_list(text: str) -> list[int]:
    data = _load(text.strip())
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise ValueError(f"expected a JSON list of integers, got {text!r}")
    return data


def parse_subset(text: str, size: int) -> int:
    """Mask over ``size`` elements."""
    t = text.strip()
    if t.lower().startswith("0x"):
        mask = int(t, 16)
    else:
        mask = 0
        for x in parse_index_list(t):
            if not 0 <= x < size:
                raise ValueError(f"element {x} out of range [0, {size})")
            mask |= 1 << x
    if mask >> size:
        raise ValueError(f"subset has elements outside [0, {size})")
    return mask


def parse_family(text: str) -> list[list[int]]:
    """A family of subsets of [n] given as a JSON list of index lists."""
    data = _load(text.strip())
    if not isinstance(data, list) or not all(isinstance(s, list) for s in data):
        raise ValueError("a family is a JSON list of index lists")
    return data

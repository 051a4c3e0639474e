"""Deterministic constructors for the concrete structure families.

All structures live on ``{1..N}`` with the PIF ``inc`` (x -> x+1) and, except
for the planar Fibonacci variant, ``dbl`` (x -> 2x).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .logic.syntax import Vocabulary
from .structures import FiniteStructure, StructureError

INC, DBL = "inc", "dbl"
SPIRAL_VOCAB = Vocabulary((), (INC, DBL), ())


def _check_size(n: int, lo: int = 2):
    if not isinstance(n, int) or n < lo:
        raise StructureError(f"size must be an integer >= {lo}, got {n!r}")


def _successor(n: int) -> dict:
    return {x: x + 1 for x in range(1, n)}


def _doubling(n: int) -> dict:
    return {x: 2 * x for x in range(1, n // 2 + 1)}


def spiral(n: int) -> FiniteStructure:
    _check_size(n)
    return FiniteStructure(n, SPIRAL_VOCAB, {}, {INC: _successor(n), DBL: _doubling(n)}, {})


def powers_structure(n: int) -> FiniteStructure:
    _check_size(n)
    powers = set()
    p = 1
    while p <= n:
        powers.add(p)
        p *= 2
    return spiral(n).expand(unary={"P": powers})


def multiplication_structure(n: int, c: int) -> FiniteStructure:
    _check_size(n)
    if not 2 <= c <= n:
        raise StructureError(f"constant C={c} must lie in 2..{n}")
    add = {x: x + c for x in range(1, n - c + 1)}
    mul = {x: x * c for x in range(1, n // c + 1)}
    return spiral(n).expand(pif={"addc": add, "mulc": mul}, constants={"C": c})


def fibonacci_map(n: int) -> dict:
    """``F(1) = 2``; ``F(k+1) = F(k) + 2`` if ``k`` is a value of ``F``, else
    ``F(k) + 1``; kept while the value is at most ``n``."""
    fmap = {}
    value, k = 2, 1
    image = set()
    while value <= n:
        fmap[k] = value
        image.add(value)
        value = value + (2 if k in image else 1)
        k += 1
    return fmap


def fibonacci_set(fmap: dict) -> set:
    phi, x = set(), 1
    while x is not None and x not in phi:
        phi.add(x)
        x = fmap.get(x)
    return phi


def fibonacci_structure(n: int, planar_variant: bool = False) -> FiniteStructure:
    _check_size(n)
    fmap = fibonacci_map(n)
    pifs = {INC: _successor(n), "F": fmap}
    if planar_variant:
        vocab = Vocabulary(("Phi",), (INC, "F"), ())
    else:
        pifs[DBL] = _doubling(n)
        vocab = Vocabulary(("Phi",), (INC, DBL, "F"), ())
    return FiniteStructure(n, vocab, {"Phi": fibonacci_set(fmap)}, pifs, {})


def binary_rep_structure(n: int) -> FiniteStructure:
    _check_size(n)
    halving, k, value = {}, 1, n
    while True:
        halving[k] = value
        if value <= 1:
            break
        value //= 2
        k += 1
    return spiral(n).expand(pif={"P": halving})


def binary_bits(s: FiniteStructure) -> str:
    """Read off ``phi_1(l) ... phi_1(1)`` where ``phi_1(k)`` says ``P(k)`` is odd."""
    p = s.pif["P"]
    return "".join(str(p[k] % 2) for k in sorted(p, reverse=True))


# --- forcing grid --------------------------------------------------------------

@dataclass(frozen=True)
class GridView:
    """Grid inside a forcing structure: rows are the layers ``base .. base+height-1``
    restricted to ``gamma``; ``g`` steps right within a layer and ``vertical``
    (the doubling PIF) steps to the next row."""

    gamma: frozenset
    g: dict
    vertical: str
    width: int
    height: int
    base_layer: int
    m0: int
    digits: tuple = ()
    layers: dict = field(default_factory=dict)

    def rows(self) -> list[list[int]]:
        out = []
        for k in range(self.base_layer, self.base_layer + self.height):
            row = sorted(x for x in self.gamma if self.layers.get(x) == k)
            out.append(row)
        return out


def layer_index(n: int) -> tuple[int, dict]:
    """``(top, layer)`` where ``top`` is the largest k with ``2^k <= n`` and
    ``layer[x]`` is the layer of element ``x`` (``1..top+1``).

    With ``2^top <= n`` every element of the top layer ``[2^top, n]`` has
    its half in layer ``top``, which is what makes the layer sum come out
    as ``n + 1`` also when ``n`` is a power of two.
    """
    top = n.bit_length() - 1
    layer = {}
    for x in range(1, n + 1):
        layer[x] = min(x.bit_length(), top + 1)
    return top, layer


def forcing_values(n: int, d: int) -> tuple[dict, dict, int]:
    """The layer functions ``v`` and ``f``; returns ``(v, f, top)``."""
    top, layer = layer_index(n)

    def v_at(y):
        return v[y] if y <= n else 0

    v, f = {}, {}
    for x in range(2 ** top, n + 1):
        v[x], f[x] = 1, 0
    for x in range(2 ** (top - 1), 2 ** top):
        v[x] = 2 + v_at(2 * x) + v_at(2 * x + 1)
        f[x] = 0
    for m in range(top - 1, 0, -1):
        lo, hi = 2 ** (m - 1), 2 ** m - 1
        carry_in = 0  # f of the element to the right, 0 past the layer's end
        for x in range(hi, lo - 1, -1):
            total = v_at(2 * x) + v_at(2 * x + 1) + carry_in
            f[x] = total % d
            v[x] = total // d
            carry_in = f[x]
    return v, f, top


def forcing_grid(n: int, d: int) -> tuple[FiniteStructure, GridView]:
    _check_size(n, 4)
    if d < 3:
        raise StructureError("digit base d must be at least 3")
    if d <= 10:
        warnings.warn("forcing grid digits are only guaranteed sound for d > 10", stacklevel=2)
    v, f, top = forcing_values(n, d)
    _, layer = layer_index(n)
    digits = tuple(f[2 ** j] for j in range(top - 1))  # most significant first
    m0 = next((j for j, dig in enumerate(digits) if dig != 0), len(digits))
    base = max(m0, 1)
    height = len(digits) - m0
    origins = range(2 ** (base - 1), 2 ** base)
    gamma = set()
    for x in origins:
        y = x
        while y <= n:
            gamma.add(y)
            y *= 2
    g = {}
    for x in gamma:
        step = 2 ** (layer[x] - base)
        y = x + step
        if y in gamma and layer.get(y) == layer[x]:
            g[x] = y
    unary = {f"V{i}": {x for x in v if v[x] == i} for i in range(5)}
    unary.update({f"F{j}": {x for x in f if f[x] == j} for j in range(d)})
    unary["Gamma"] = gamma
    s = spiral(n).expand(unary=unary)
    view = GridView(frozenset(gamma), g, DBL, width=len(origins), height=height,
                    base_layer=base, m0=m0, digits=(v[1],) + digits,
                    layers={x: layer[x] for x in gamma})
    return s, view


def reconstruct_value(view: GridView, d: int) -> int:
    """Fold the stored digits (quotient ``v(1)`` then ``f(1), f(2), f(4), ...``)."""
    value = 0
    for dig in view.digits:
        value = value * d + dig
    return value

"""Hermite reduction at a single tower level.

At level i the derivation acts on K_{i-1}(t_i) with t_i primitive, so the
classical iterated reduction over the squarefree decomposition of the
denominator applies: each call strips one power off a repeated factor by
solving a Bezout congruence.  Level 0 is Q(x) itself; there the polynomial
part is integrated directly by the power rule, so any element of Q(x) is
accepted.
"""

from __future__ import annotations

from .arith import (
    UniPoly,
    frac_to_unipair,
    ground,
    split_proper_poly,
    squarefree_decomposition,
    unipoly_gcd,
    unipoly_xgcd,
)
from .errors import (
    HigherGeneratorPresent,
    InternalVerificationError,
    NotProper,
)
from .arith import free_of
from .tower import TowerElement


def tower_derivative_unipoly(T, p: UniPoly, level) -> UniPoly:
    """Derivation of a univariate view: coefficients differentiate in the
    tower, the main variable contributes its generator derivative."""
    out = p.map_coeffs(T.diff)
    formal = p.formal_derivative()
    if not formal.is_zero():
        d = T.F.one if level == 0 else T.derivs[level - 1]
        out = out + formal.scale(d)
    return out


def _is_level_proper(T, f, level) -> bool:
    if not f:
        return True
    if not free_of(f, range(level + 1, T.n + 1)):
        return False
    num, den = frac_to_unipair(f, level)
    return num.degree < den.degree


def hermite_reduce_proper_value(T, f, level):
    """Raw-value Hermite reduction: f = diff(g) + h with h simple at level.

    For level >= 1 the input must be proper at that level.  For level 0 any
    element of Q(x) is accepted; its polynomial part is integrated by the
    power rule.
    """
    F = T.F
    if not f:
        return F.zero, F.zero
    if level == 0:
        if not free_of(f, range(1, T.n + 1)):
            raise NotProper(0, "level-0 input must be free of all generators")
        proper, poly = split_proper_poly(f, 0)
        g = F.zero
        x = T.gens[0]
        for k, c in poly.coeffs.items():
            if not (c.numer.is_ground and c.denom.is_ground):
                raise NotProper(0, "polynomial part must have constant coefficients")
            g += c * x ** (k + 1) / (k + 1)
        gp, h = _hermite_core(T, proper, 0)
        return g + gp, h
    if not _is_level_proper(T, f, level):
        raise NotProper(level)
    return _hermite_core(T, f, level)


def _hermite_core(T, f, level):
    """Reduction of a proper element; denominator multiplicities drop to 1."""
    F = T.F
    if not f:
        return F.zero, F.zero
    A, D = frac_to_unipair(f, level)
    g = F.zero
    while True:
        sqf = squarefree_decomposition(D, level)
        prod = UniPoly.constant(F, level, F.one)
        for fac, mult in sqf:
            prod = prod * fac.pow(mult)
        unit, rem = D.divmod(prod)
        if not rem.is_zero() or unit.degree != 0:
            raise InternalVerificationError("squarefree product mismatch")
        A = A.scale(F.one / unit.lc())
        D = prod
        if not sqf or sqf[-1][1] <= 1:
            break
        V, m = sqf[-1]
        U = D // V.pow(m)
        for j in range(m - 1, 0, -1):
            Vd = tower_derivative_unipoly(T, V, level)
            s = (U * Vd).scale(ground(F, j)) % V
            gg, sinv, _ = unipoly_xgcd(s, V)
            if gg.degree != 0:
                raise InternalVerificationError(
                    "repeated factor is not normal at its level"
                )
            B = (sinv * (-(A % V))) % V
            g += B.to_frac() / V.to_frac() ** j
            A = (A + (B * U * Vd).scale(ground(F, j))) // V
            A = A - U * tower_derivative_unipoly(T, B, level)
        D = U * V
    h = A.to_frac() / D.to_frac()
    if h and not _is_level_proper(T, h, level):
        raise InternalVerificationError("Hermite output is not proper")
    _, hden = frac_to_unipair(h, level) if h else (None, None)
    if h and unipoly_gcd(hden, hden.formal_derivative()).degree > 0:
        raise InternalVerificationError("Hermite output denominator not squarefree")
    return g, h


def hermite_reduce_proper(f: TowerElement, i: int):
    """f = differentiate(g) + h with h simple at level i; returns (g, h)."""
    T = f.tower
    g, h = hermite_reduce_proper_value(T, f.value, i)
    return TowerElement(g, T), TowerElement(h, T)


def hermitian_part(f: TowerElement, i: int):
    """Split f in K_{i-1}(t_i) as diff(g) + h + p with h simple at level i and
    p polynomial in t_i.  Returns (h, g, p) with p as a TowerElement."""
    T = f.tower
    value = f.value
    if not free_of(value, range(i + 1, T.n + 1)):
        raise HigherGeneratorPresent(
            f"element involves generators above level {i}"
        )
    proper, poly = split_proper_poly(value, i)
    g, h = hermite_reduce_proper_value(T, proper, i)
    return (
        TowerElement(h, T),
        TowerElement(g, T),
        TowerElement(poly.to_frac(), T),
    )

"""Elementary integrability over a tower.

A function integrates in elementary terms exactly when its remainder is a
constant combination of generator derivatives plus a constant combination of
logarithmic derivatives.  The recognizer for the logarithmic part is a
residue computation: for h = p/q simple at level i, the roots of
res_{t_i}(p - z*q', q) in z are the residues of h at its level-i poles.
Constant rational roots yield an exact witness; a non-constant root is a
proof that no elementary integral exists; irrational constant residues fall
outside exact rational arithmetic and give a three-valued Undecided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .arith import (
    UniPoly,
    frac_to_unipair,
    ground,
    is_ground,
    make_field,
    poly_to_unipoly,
    substitute,
    to_fraction,
    unipoly_gcd,
    unipoly_resultant,
)
from .decomp import Decomposition, add_decomp_in_field, solve_constant_combination_values
from .errors import InternalVerificationError, NotSimple
from .hermite import tower_derivative_unipoly, _is_level_proper
from .matryoshka import project_value
from .tower import TowerElement

YES = "yes"
NO = "no"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class ElementaryVerdict:
    status: str  # YES, NO or UNDECIDED
    witness: tuple = ()  # pairs (rational coefficient, argument TowerElement)
    span_coeffs: tuple = ()  # rational coefficients over t_1', ..., t_n'
    reason: str = ""
    certificate: TowerElement | None = None  # non-constant residue, when NO
    decomposition: Decomposition | None = None

    @property
    def remainder(self):
        return self.decomposition.r if self.decomposition else None


def _check_level_simple(T, value, i):
    if not _is_level_proper(T, value, i):
        raise NotSimple(i)
    _, den = frac_to_unipair(value, i)
    if unipoly_gcd(den, den.formal_derivative()).degree > 0:
        raise NotSimple(i, f"denominator not squarefree at level {i}")


def _residue_analysis(T, value, i):
    """Root structure of the residue resultant of a nonzero t_i-simple value.

    Returns ("nonconstant", certificate) when some residue is provably not a
    constant, or ("constant", roots, full) where roots are the nonzero
    rational roots and full says whether they account for the whole degree.
    """
    F = T.F
    p, q = frac_to_unipair(value, i)
    qd = tower_derivative_unipoly(T, q, i)
    Fz, zgens = make_field(T.names + ["_z"])
    z = zgens[-1]
    lower = list(zgens[:-1])

    def lift(u):
        return UniPoly(
            Fz, u.v, {k: substitute(c, Fz, lower) for k, c in u.coeffs.items()}
        )

    P = lift(p) - lift(qd).scale(z)
    R = unipoly_resultant(P, lift(q))
    if not R:
        raise InternalVerificationError("residue resultant vanished")
    if any(mono[T.n + 1] for mono in R.denom.monoms()):
        raise InternalVerificationError("resultant denominator involves the root variable")
    Rz = poly_to_unipoly(Fz, R.numer, T.n + 1)
    lc = Rz.lc()
    back = [g for g in F.gens] + [F.zero]  # the root variable never survives
    monic = {}
    for k in range(Rz.degree + 1):
        c = Rz.coeff(k) / lc
        if not c:
            monic[k] = Fraction(0)
            continue
        if not is_ground(c):
            cert = substitute(c, F, back)
            if not T.diff(cert):
                raise InternalVerificationError("non-ground coefficient is constant")
            return ("nonconstant", cert)
        monic[k] = to_fraction(c.numer.LC) / to_fraction(c.denom.LC)
    zz = sympy.Symbol("z")
    poly = sympy.Poly(
        sum(sympy.Rational(c) * zz**k for k, c in monic.items()), zz, domain="QQ"
    )
    ground_roots = poly.ground_roots()
    total_mult = sum(ground_roots.values())
    roots = sorted(
        Fraction(sympy.Rational(root)) for root in ground_roots if root != 0
    )
    return ("constant", roots, total_mult == poly.degree())


def _witness_from_roots(T, value, i, roots):
    """Candidate combination of logarithmic derivatives for the given residues.
    Returns (items, combined value)."""
    F = T.F
    p, q = frac_to_unipair(value, i)
    qd = tower_derivative_unipoly(T, q, i)
    items = []
    combined = F.zero
    for c in roots:
        gk = unipoly_gcd(p - qd.scale(ground(F, c)), q)
        if gk.degree <= 0:
            continue
        gfrac = gk.to_frac()
        items.append((c, TowerElement(gfrac, T)))
        combined += ground(F, c) * T.diff(gfrac) / gfrac
    return items, combined


def recognize_log_derivative_combo(h: TowerElement, i: int):
    """Write a t_i-simple h as a rational combination of logarithmic
    derivatives.  Returns the witness list, None when a residue is provably
    non-constant or verification fails, or UNDECIDED when irrational residues
    block the rational method."""
    T = h.tower
    if not h:
        return []
    _check_level_simple(T, h.value, i)
    analysis = _residue_analysis(T, h.value, i)
    if analysis[0] == "nonconstant":
        return None
    _, roots, full = analysis
    items, combined = _witness_from_roots(T, h.value, i, roots)
    if combined == h.value:
        return items
    return UNDECIDED if not full else None


def _significant_level(T, deriv):
    proj = project_value(T, deriv)
    for i in range(T.n, -1, -1):
        if proj[i]:
            return i
    return -1


def elementary_integrability(f: TowerElement) -> ElementaryVerdict:
    """Decide whether f has an elementary integral over its tower."""
    T = f.tower
    T.ensure_s_primitive()
    F = T.F
    dec = add_decomp_in_field(f)
    r = dec.r.value
    if not r:
        return ElementaryVerdict(YES, decomposition=dec)
    from .matryoshka import head_data_value

    hm = head_data_value(T, r).hm
    if hm is not None and any(hm):
        return ElementaryVerdict(
            NO,
            reason="remainder has a generator monomial above 1; no combination "
            "of generator derivatives and logarithmic derivatives reaches it",
            decomposition=dec,
        )
    sig = [_significant_level(T, d) for d in T.derivs]
    span = [Fraction(0)] * T.n
    witness = []
    leftover = r
    for i in range(T.n, -1, -1):
        h = project_value(T, leftover)[i]
        if not h:
            continue
        basis_idx = [j for j in range(T.n) if sig[j] == i]
        basis_proj = [project_value(T, T.derivs[j])[i] for j in basis_idx]

        def try_span(target):
            nonlocal leftover
            coeffs = solve_constant_combination_values(F, target, basis_proj)
            if coeffs is None:
                return False
            for j, c in zip(basis_idx, coeffs):
                span[j] += c
                leftover = leftover - ground(F, c) * T.derivs[j]
            return True

        if try_span(h):
            continue
        analysis = _residue_analysis(T, h, i)
        if analysis[0] == "nonconstant":
            return ElementaryVerdict(
                NO,
                reason=f"projection at level {i} has a non-constant residue",
                certificate=TowerElement(analysis[1], T),
                decomposition=dec,
            )
        _, roots, full = analysis
        items, combined = _witness_from_roots(T, h, i, roots)
        witness.extend(items)
        leftover = leftover - combined
        rest = project_value(T, leftover)[i]
        if rest and not try_span(rest):
            if not full:
                return ElementaryVerdict(
                    UNDECIDED,
                    reason=f"projection at level {i} has irrational constant "
                    "residues beyond exact rational arithmetic",
                    decomposition=dec,
                )
            return ElementaryVerdict(
                NO,
                reason=f"projection at level {i} is not reachable by generator "
                "derivatives and logarithmic derivatives with rational residues",
                decomposition=dec,
            )
    if leftover:
        raise InternalVerificationError("elementary residual did not vanish")
    check = F.zero
    for j, c in enumerate(span):
        check += ground(F, c) * T.derivs[j]
    for c, arg in witness:
        check += ground(F, c) * T.diff(arg.value) / arg.value
    if check != r:
        raise InternalVerificationError("elementary witness failed verification")
    return ElementaryVerdict(
        YES,
        witness=tuple(witness),
        span_coeffs=tuple(span),
        decomposition=dec,
    )

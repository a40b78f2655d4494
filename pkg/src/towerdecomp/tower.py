"""Differential towers over Q(x).

A :class:`Tower` is an ordered list of generators t1, ..., tn over the base
field Q(x) with x' = 1.  Each generator is either logarithmic (its derivative
is argument'/argument) or an explicit primitive (its derivative is given
directly); either way the derivative must involve only earlier variables.
Towers are immutable once built; validation results are cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .arith import free_of, ground, make_field, substitute
from .errors import (
    HeadMonomialNotOne,
    TowerDecompError,
    TowerNotSPrimitive,
    ZeroArgument,
)

LOG = "log"
PRIM = "prim"

S_PRIMITIVE = "s-primitive"
REJECTED = "rejected"


class FormalProduct:
    """A formal power product of field elements with rational exponents.

    Used as the argument of a logarithmic generator.  log of the product is
    understood as the corresponding combination of logarithms, so its
    derivative is sum(exp * base'/base).
    """

    __slots__ = ("factors",)

    def __init__(self, factors):
        cleaned = []
        for base, exp in factors:
            exp = Fraction(exp)
            if not base:
                raise ZeroArgument("zero base in logarithm argument")
            if exp:
                cleaned.append((base, exp))
        self.factors = tuple(cleaned)

    @classmethod
    def single(cls, base):
        return cls([(base, Fraction(1))])

    def combine(self, other, coeff):
        """self * other**coeff, merging equal bases."""
        merged = list(self.factors)
        for base, exp in other.factors:
            for k, (b, e) in enumerate(merged):
                if b == base:
                    merged[k] = (b, e + exp * coeff)
                    break
            else:
                merged.append((base, exp * coeff))
        return FormalProduct(merged)

    def collapse(self):
        """The product as a single field element, or None for fractional exponents."""
        if not self.factors:
            return None
        F = self.factors[0][0].field
        out = F.one
        for base, exp in self.factors:
            if exp.denominator != 1:
                return None
            out *= base ** int(exp)
        return out

    def __eq__(self, other):
        return isinstance(other, FormalProduct) and self.factors == other.factors

    def __repr__(self):
        return " * ".join(f"({b})^{e}" for b, e in self.factors) or "1"


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str  # LOG or PRIM
    derivative: object  # FracElement of the tower field
    argument: FormalProduct | None = None


@dataclass(frozen=True)
class ValidationResult:
    status: str  # S_PRIMITIVE or REJECTED
    reason: str = ""
    generator: int | None = None
    certificate: tuple | None = None  # dependence coefficients, when applicable

    @property
    def ok(self):
        return self.status == S_PRIMITIVE


@dataclass(frozen=True)
class TowerElement:
    value: object  # FracElement
    tower: "Tower"

    def diff(self) -> "TowerElement":
        return TowerElement(self.tower.diff(self.value), self.tower)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, TowerElement):
            return self.tower is other.tower and self.value == other.value
        return self.value == other

    def __repr__(self):
        return f"TowerElement({self.value})"


class TowerBuilder:
    """Incremental construction: the field exists up front so that generator
    arguments can be written in terms of earlier generators."""

    def __init__(self, gen_names, base_name="x"):
        names = [base_name] + list(gen_names)
        if len(set(names)) != len(names):
            raise TowerDecompError("duplicate variable names in tower")
        self.F, self.gens = make_field(names)
        self.names = names
        self._specs = []

    @property
    def x(self):
        return self.gens[0]

    def log(self, argument):
        """Declare the next generator as log(argument)."""
        if not isinstance(argument, FormalProduct):
            argument = FormalProduct.single(argument)
        self._specs.append((LOG, argument))
        return self

    def prim(self, derivative):
        """Declare the next generator with an explicit derivative."""
        self._specs.append((PRIM, derivative))
        return self

    def build(self) -> "Tower":
        if len(self._specs) != len(self.names) - 1:
            raise TowerDecompError(
                f"expected {len(self.names) - 1} generator declarations, "
                f"got {len(self._specs)}"
            )
        return Tower(self.F, self.names, self._specs)


class Tower:
    """An ordered primitive tower.  Use :class:`TowerBuilder` to construct."""

    def __init__(self, F, names, specs):
        self.F = F
        self.names = names
        self.gens = list(F.gens)
        self.n = len(names) - 1
        self.generators: list[Generator] = []
        self.derivs = []  # derivative of generator i at index i-1
        self._validation = None
        for idx, (kind, payload) in enumerate(specs, start=1):
            if kind == LOG:
                argument = payload
                for base, _ in argument.factors:
                    self._check_level(base, idx, f"argument of {names[idx]}")
                deriv = self.F.zero
                for base, exp in argument.factors:
                    deriv += ground(self.F, exp) * self.diff(base) / base
            else:
                argument = None
                deriv = payload
                self._check_level(deriv, idx, f"derivative of {names[idx]}")
            self.generators.append(
                Generator(name=names[idx], kind=kind, derivative=deriv, argument=argument)
            )
            self.derivs.append(deriv)

    def _check_level(self, value, idx, what):
        if not free_of(value, range(idx, self.n + 1)):
            raise TowerDecompError(
                f"{what} may only involve x and generators below {self.names[idx]}"
            )

    # -- basic differential structure -------------------------------------

    def element(self, value) -> TowerElement:
        if isinstance(value, TowerElement):
            return value
        if isinstance(value, (int, Fraction)):
            value = ground(self.F, value)
        return TowerElement(value, self)

    @property
    def zero(self):
        return self.F.zero

    def diff(self, f):
        """The tower derivation: d/dx plus the chain rule over generators."""
        out = f.diff(self.gens[0])
        for i, d in enumerate(self.derivs, start=1):
            p = f.diff(self.gens[i])
            if p:
                out += p * d
        return out

    def monomial_value(self, exps):
        """Product of generator powers for an exponent tuple over t1..tn."""
        out = self.F.one
        for i, e in enumerate(exps, start=1):
            if e:
                out *= self.gens[i] ** e
        return out

    # -- validation --------------------------------------------------------

    def validate_s_primitive(self) -> ValidationResult:
        if self._validation is None:
            self._validation = self._validate()
        return self._validation

    def _validate(self) -> ValidationResult:
        from .decomp import solve_constant_combination_values
        from .matryoshka import is_simple_value

        for i, d in enumerate(self.derivs, start=1):
            if not d:
                return ValidationResult(
                    REJECTED, f"derivative of {self.names[i]} is zero", i
                )
            ok, why = is_simple_value(self, d)
            if not ok:
                return ValidationResult(
                    REJECTED,
                    f"derivative of {self.names[i]} is not simple: {why}",
                    i,
                )
        for i in range(2, self.n + 1):
            coeffs = solve_constant_combination_values(
                self.F, self.derivs[i - 1], self.derivs[: i - 1]
            )
            if coeffs is not None:
                return ValidationResult(
                    REJECTED,
                    f"derivative of {self.names[i]} depends on earlier derivatives",
                    i,
                    certificate=tuple(coeffs),
                )
        return ValidationResult(S_PRIMITIVE)

    def ensure_s_primitive(self):
        result = self.validate_s_primitive()
        if not result.ok:
            raise TowerNotSPrimitive(f"not S-primitive: {result.reason}")

    @property
    def is_logarithmic(self) -> bool:
        return all(g.kind == LOG for g in self.generators)


def differentiate(f: TowerElement) -> TowerElement:
    return f.diff()


def log_derivative(arg: TowerElement) -> TowerElement:
    """differentiate(arg)/arg; the logarithmic derivative of arg."""
    if not arg.value:
        raise ZeroArgument("logarithmic derivative of zero")
    return TowerElement(arg.tower.diff(arg.value) / arg.value, arg.tower)


def validate_s_primitive(T: Tower) -> ValidationResult:
    return T.validate_s_primitive()


def normalize_generators(T: Tower):
    """Shift each generator so that its derivative becomes simple.

    Replaces t_i by u_i = t_i - g_i where t_i' = g_i' + h_i with h_i simple
    (level-by-level Hermite reduction).  Requires hm(t_i') = 1 for every
    generator.  Returns the new tower and the list of (index, shift) pairs,
    the shifts expressed in the new coordinates.
    """
    from .hermite import hermite_reduce_proper_value
    from .matryoshka import head_data_value, project_value

    builder = TowerBuilder(T.names[1:], base_name=T.names[0])
    shifts = []
    new_specs = []
    # incrementally rebuilt tower prefix used for Hermite at each level
    for i in range(1, T.n + 1):
        prefix = _prefix_tower(T.names, new_specs, builder.F)
        d_old = T.derivs[i - 1]
        values = [builder.gens[0]] + [
            builder.gens[j] + shifts[j - 1][1] for j in range(1, i)
        ]
        values += list(builder.gens[i:])  # higher gens never occur in d_old
        d_new = substitute(d_old, builder.F, values)
        hd = head_data_value(prefix, d_new)
        if hd.hm is not None and any(hd.hm):
            raise HeadMonomialNotOne(i)
        proj = project_value(prefix, d_new)
        g_total = builder.F.zero
        h_total = builder.F.zero
        for lvl, piece in enumerate(proj):
            if not piece:
                continue
            b, h = hermite_reduce_proper_value(prefix, piece, lvl)
            g_total += b
            h_total += h
        shifts.append((i, g_total))
        new_specs.append((PRIM, h_total))
    T2 = Tower(builder.F, T.names, new_specs)
    return T2, shifts


def _prefix_tower(names, specs, F) -> Tower:
    """Tower over the full field but with only the first len(specs) generators
    carrying derivatives; enough for differentiation of prefix elements."""
    padded = list(specs) + [(PRIM, F.zero)] * (len(names) - 1 - len(specs))
    tower = Tower.__new__(Tower)
    tower.F = F
    tower.names = names
    tower.gens = list(F.gens)
    tower.n = len(names) - 1
    tower.generators = [
        Generator(name=names[i + 1], kind=kind, derivative=d)
        for i, (kind, d) in enumerate(padded)
    ]
    tower.derivs = [d for _, d in padded]
    tower._validation = None
    return tower

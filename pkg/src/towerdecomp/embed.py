"""Embedding a logarithmic tower into a well-generated one.

The associated matrix collects the projections of the generator derivatives;
its last nonzero column entries (the significant components) drive two
constructions: normalization, which eliminates constant-linear dependences
among significant components and reorders generators until the significant
vector is monotone, and the embedding proper, which scans the matrix for a
Q-linearly independent basis b_1, ..., b_w and builds a target tower with
one generator per basis element, so that every column of the target's
matrix has exactly one nonzero entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import free_of, ground, substitute
from .decomp import solve_constant_combination_values
from .errors import (
    InternalVerificationError,
    NotLogarithmic,
    PreconditionCLIMI,
)
from .matryoshka import project_value
from .tower import (
    LOG,
    PRIM,
    FormalProduct,
    Tower,
    TowerBuilder,
    TowerElement,
    _prefix_tower,
)


@dataclass(frozen=True)
class AssociatedMatrix:
    tower: Tower
    entries: tuple  # rows 0..n-1 of tuples; entry (i, j-1) = projection i of t_j'

    def entry(self, i, j):
        """Row i (0-based level), column j (1-based generator)."""
        return self.entries[i][j - 1]


@dataclass(frozen=True)
class SignificantData:
    sv: tuple  # significant index of each generator derivative
    sc: tuple  # the projection of t_j' at level sv_j, as TowerElement


@dataclass(frozen=True)
class Embedding:
    source: Tower
    target: Tower
    basis: tuple  # b_1..b_w as TowerElement of the source
    ell: tuple  # ell_j = basis index (1-based) of sc_j; strictly increasing
    coeffs: tuple  # per generator j, tuple of c_{j,k} for k < ell_j
    images: tuple  # phi(t_j) as TowerElement of the target

    @property
    def w(self):
        return len(self.basis)


def associated_matrix(T: Tower) -> AssociatedMatrix:
    """Grid of projections of the generator derivatives."""
    cols = [project_value(T, d) for d in T.derivs]
    rows = tuple(
        tuple(TowerElement(cols[j][i], T) for j in range(T.n))
        for i in range(T.n)
    )
    return AssociatedMatrix(T, rows)


def significant_data(T: Tower) -> SignificantData:
    sv = []
    sc = []
    for d in T.derivs:
        proj = project_value(T, d)
        level = max(i for i in range(T.n + 1) if proj[i])
        sv.append(level)
        sc.append(TowerElement(proj[level], T))
    return SignificantData(tuple(sv), tuple(sc))


def is_well_generated(T: Tower):
    """(ok, failing condition): Q-linear independence of the significant
    components, monotone significant vector, one nonzero entry per column."""
    data = significant_data(T)
    for j in range(1, T.n):
        coeffs = solve_constant_combination_values(
            T.F, data.sc[j].value, [s.value for s in data.sc[:j]]
        )
        if coeffs is not None:
            return False, (
                f"significant component of generator {j + 1} depends on "
                "earlier ones"
            )
    for j in range(1, T.n):
        if data.sv[j] < data.sv[j - 1]:
            return False, (
                f"significant vector decreases at generator {j + 1}"
            )
    matrix = associated_matrix(T)
    for j in range(1, T.n + 1):
        count = sum(1 for i in range(T.n) if matrix.entry(i, j))
        if count != 1:
            return False, f"column {j} has {count} nonzero entries, expected 1"
    return True, ""


def _require_logarithmic(T: Tower):
    if not T.is_logarithmic:
        raise NotLogarithmic("every generator must be logarithmic")


def _rebuild(names, args, base_name):
    builder = TowerBuilder(names, base_name=base_name)
    values = list(builder.F.gens)
    for arg in args:
        lifted = FormalProduct(
            [(substitute(base, builder.F, values), e) for base, e in arg.factors]
        )
        builder.log(lifted)
    return builder.build()


def normalize_tower(T: Tower):
    """Rearrange a logarithmic tower until its significant components are
    Q-linearly independent and its significant vector is monotone.  Returns
    the new tower and a change log of ("eliminate", j, coeffs) and
    ("swap", j) steps.  The significant vector strictly decreases
    lexicographically at every step, which guarantees termination."""
    _require_logarithmic(T)
    T.ensure_s_primitive()
    change_log = []
    current = T
    prev_sv = None
    while True:
        data = significant_data(current)
        if prev_sv is not None and not data.sv < prev_sv:
            raise InternalVerificationError(
                "significant vector failed to decrease"
            )
        prev_sv = data.sv
        dep = None
        for j in range(1, current.n):
            coeffs = solve_constant_combination_values(
                current.F, data.sc[j].value, [s.value for s in data.sc[:j]]
            )
            if coeffs is not None:
                dep = (j, coeffs)
                break
        if dep is not None:
            j, coeffs = dep
            # replace t_{j+1} by t_{j+1} - sum(c_k t_k); on arguments this is
            # division by the corresponding powers
            arg = current.generators[j].argument
            for k, c in enumerate(coeffs):
                if c:
                    arg = arg.combine(current.generators[k].argument, -c)
            names = [g.name for g in current.generators]
            args = [g.argument for g in current.generators]
            args[j] = arg
            current = _rebuild(names, args, current.names[0])
            current.ensure_s_primitive()
            change_log.append(("eliminate", j + 1, tuple(coeffs)))
            continue
        swap = None
        for j in range(1, current.n):
            if data.sv[j] < data.sv[j - 1]:
                swap = j
                break
        if swap is None:
            break
        names = [g.name for g in current.generators]
        args = [g.argument for g in current.generators]
        names[swap - 1], names[swap] = names[swap], names[swap - 1]
        args[swap - 1], args[swap] = args[swap], args[swap - 1]
        # the swapped arguments live in the old coordinates; positions of the
        # two generators trade places in the field as well
        perm = list(current.F.gens)
        perm[swap], perm[swap + 1] = perm[swap + 1], perm[swap]
        args = [
            FormalProduct(
                [(substitute(base, current.F, perm), e) for base, e in a.factors]
            )
            for a in args
        ]
        current = _rebuild(names, args, current.names[0])
        current.ensure_s_primitive()
        change_log.append(("swap", swap))
    return current, change_log


def _recover_log_argument(prefix, value, level):
    """Try to express value as a combination of logarithmic derivatives; on
    success return the FormalProduct argument of the matching generator."""
    from .elem import _residue_analysis, _witness_from_roots

    if value.denom.is_ground:
        return None
    try:
        analysis = _residue_analysis(prefix, value, level)
    except InternalVerificationError:
        return None
    if analysis[0] != "constant":
        return None
    _, roots, full = analysis
    if not full:
        return None
    items, combined = _witness_from_roots(prefix, value, level, roots)
    if combined != value or not items:
        return None
    product = FormalProduct([(arg.value, c) for c, arg in items])
    return product


def embed_well_generated(T: Tower) -> Embedding:
    """Build a well-generated tower and a differential homomorphism into it.

    The basis is collected scanning the matrix row by row, left to right
    within a row, keeping entries that are Q-linearly independent of those
    already kept.  Each generator image is u_{ell_j} plus the constant
    combination of earlier basis generators solving t_j' in the basis."""
    _require_logarithmic(T)
    T.ensure_s_primitive()
    data = significant_data(T)
    for j in range(1, T.n):
        coeffs = solve_constant_combination_values(
            T.F, data.sc[j].value, [s.value for s in data.sc[:j]]
        )
        if coeffs is not None:
            raise PreconditionCLIMI(
                "significant components are constant-linearly dependent; "
                "run normalize_tower first"
            )
        if data.sv[j] < data.sv[j - 1]:
            raise PreconditionCLIMI(
                "significant vector is not monotone; run normalize_tower first"
            )
    n = T.n
    F = T.F
    matrix = [project_value(T, d) for d in T.derivs]  # matrix[j-1][i]
    basis = []
    position = {}  # (row, col) -> 1-based basis index
    for i in range(n):
        for j in range(i + 1, n + 1):
            entry = matrix[j - 1][i]
            if not entry:
                continue
            coeffs = solve_constant_combination_values(F, entry, basis)
            if coeffs is None:
                basis.append(entry)
                position[(i, j)] = len(basis)
    w = len(basis)
    if not n <= w <= n * (n + 1) // 2:
        raise InternalVerificationError("basis size out of range")
    ell = []
    for j in range(1, n + 1):
        idx = position.get((data.sv[j - 1], j))
        if idx is None:
            raise InternalVerificationError(
                "significant component did not enter the basis"
            )
        ell.append(idx)
    if ell[0] != 1 or ell[-1] != w or any(
        a >= b for a, b in zip(ell, ell[1:])
    ):
        raise InternalVerificationError("basis positions are not staircase")
    coeffs_per_gen = []
    for j in range(1, n + 1):
        lj = ell[j - 1]
        rest = T.derivs[j - 1] - basis[lj - 1]
        c = solve_constant_combination_values(F, rest, basis[: lj - 1])
        if c is None:
            raise InternalVerificationError(
                "generator derivative not spanned by earlier basis entries"
            )
        coeffs_per_gen.append(tuple(c))

    target_names = [f"u{k}" for k in range(1, w + 1)]
    builder = TowerBuilder(target_names, base_name=T.names[0])
    Ft = builder.F
    # phi(t_j) = u_{ell_j} + sum of c_{j,k} u_k
    images = []
    for j in range(1, n + 1):
        img = Ft.gens[ell[j - 1]]
        for k, c in enumerate(coeffs_per_gen[j - 1], start=1):
            if c:
                img += ground(Ft, c) * Ft.gens[k]
        images.append(img)
    sub_values = [Ft.gens[0]] + images
    target_specs = []
    prefix_specs = []  # PRIM-only view for differentiating during the build
    for k in range(1, w + 1):
        val = substitute(basis[k - 1], Ft, sub_values)
        if not free_of(val, range(k, w + 1)):
            raise InternalVerificationError(
                "target derivative involves later generators"
            )
        prefix = _prefix_tower([T.names[0]] + target_names, prefix_specs, Ft)
        level = max(
            (i for i, p in enumerate(project_value(prefix, val)) if p),
            default=0,
        )
        arg = _recover_log_argument(prefix, val, level)
        if arg is not None:
            dval = Ft.zero
            for base, e in arg.factors:
                dval += ground(Ft, e) * prefix.diff(base) / base
            if dval != val:
                arg = None
        target_specs.append((LOG, arg) if arg is not None else (PRIM, val))
        prefix_specs.append((PRIM, val))
    target = Tower(Ft, [T.names[0]] + target_names, target_specs)
    target.ensure_s_primitive()
    ok, why = is_well_generated(target)
    if not ok:
        raise InternalVerificationError(f"target not well generated: {why}")
    # the homomorphism must commute with the derivations on every generator
    for j in range(1, n + 1):
        lhs = target.diff(images[j - 1])
        rhs = substitute(T.derivs[j - 1], Ft, sub_values)
        if lhs != rhs:
            raise InternalVerificationError(
                "homomorphism does not commute with derivation"
            )
    return Embedding(
        source=T,
        target=target,
        basis=tuple(TowerElement(b, T) for b in basis),
        ell=tuple(ell),
        coeffs=tuple(coeffs_per_gen),
        images=tuple(TowerElement(i, target) for i in images),
    )


def apply_homomorphism(E: Embedding, f: TowerElement) -> TowerElement:
    """Image of a source element under the embedding."""
    Ft = E.target.F
    values = [Ft.gens[0]] + [img.value for img in E.images]
    return TowerElement(substitute(f.value, Ft, values), E.target)

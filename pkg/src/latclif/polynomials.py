"""Factorial powers and the homogeneous/monogenic polynomial solver.

The factorial powers are built by the raising recursion (apply the
operators x_j T^{s j} to the constant), satisfy the monomial principle and
are eigenfunctions of the one-sided Euler operators.  Products of plus and
minus factorial powers span the candidate space in which the coupled Euler
eigenproblem and the hermitian monogenicity constraints are solved by
exact kernel computation; an independent fraction-free rank oracle
cross-checks every dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import ExactPolynomial, LatticeStep, coord_shift_mul, diff
from .dirac import DEFAULT_CONVENTION, build_family
from .forms import Form, all_blades
from .linalg import bareiss_rank, kernel_basis, rank, rref, scalars_to_gaussian
from .operators import Operator
from .scalars import ONE, ZERO, Scalar


def multi_indices(n, total):
    """All multi-indices of the given total degree, lexicographic."""
    if n == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in multi_indices(n - 1, total - first):
            out.append((first,) + rest)
    return out


@dataclass
class FactorialPower:
    """A discrete monomial (x)_s^(alpha) with its realized polynomial."""

    sign: int
    alpha: tuple
    poly: ExactPolynomial

    @property
    def degree(self):
        return sum(self.alpha)


def factorial_power(n, h, sign, alpha):
    """Rodrigues construction: raise the constant once per index unit."""
    alpha = tuple(alpha)
    if len(alpha) != n or any(a < 0 for a in alpha):
        raise ValueError("alpha must be a nonnegative multi-index of length n")
    poly = ExactPolynomial.constant(n, h)
    for axis, mult in enumerate(alpha, start=1):
        for _ in range(mult):
            poly = coord_shift_mul(poly, axis, sign)
    return FactorialPower(sign, alpha, poly)


def euler_operator(poly, sign):
    """The one-sided Euler operator: sum of x_j times the signed difference."""
    out = ExactPolynomial.zero(poly.n, poly.h)
    for axis in range(1, poly.n + 1):
        out = out.add(diff(poly, LatticeStep(axis, sign)).coord_mul(axis))
    return out


@dataclass
class PrincipleReport:
    name: str
    passed: bool
    witness: str | None = None


def check_monomial_principle(n, h, sign, alpha):
    """Raising, lowering and Euler eigen residuals for one factorial power."""
    fp = factorial_power(n, h, sign, alpha)
    reports = []
    for axis in range(1, n + 1):
        raised = coord_shift_mul(fp.poly, axis, sign)
        target = factorial_power(n, h, sign, _bump(alpha, axis, 1)).poly
        reports.append(_report(f"raise-ax{axis}", raised.sub(target)))
        lowered = diff(fp.poly, LatticeStep(axis, -sign))
        if alpha[axis - 1] == 0:
            expect = ExactPolynomial.zero(n, h)
        else:
            expect = factorial_power(n, h, sign, _bump(alpha, axis, -1)).poly.scale(
                Scalar(alpha[axis - 1])
            )
        reports.append(_report(f"lower-ax{axis}", lowered.sub(expect)))
    eigen = euler_operator(fp.poly, sign).sub(fp.poly.scale(Scalar(sum(alpha))))
    reports.append(_report("euler-eigen", eigen))
    return reports


def _bump(alpha, axis, delta):
    i = axis - 1
    return alpha[:i] + (alpha[i] + delta,) + alpha[i + 1:]


def _report(name, residual):
    if residual.is_zero():
        return PrincipleReport(name, True)
    spot = residual.first_nonzero()
    return PrincipleReport(name, False, f"monomial {spot[0]} -> {spot[1]}")


def check_basicness(fp):
    """Value one at alpha = 0; value zero at the origin otherwise."""
    origin = (0,) * len(fp.alpha)
    at0 = fp.poly.value_at(origin)
    if fp.degree == 0:
        return at0 == ONE and fp.poly.degree() == 0
    return at0 == ZERO and fp.poly.degree() == fp.degree


# ---------------------------------------------------------------------------
# Candidate spaces.

def spinor_blades(n):
    """Minimal left-ideal-like subset: blades with minus factors only."""
    return [b for b in all_blades(n) if not b.plus]


def homogeneous_space(n, h, p, q, blades=None):
    """Products of plus and minus factorial powers over the chosen blades."""
    blades = list(blades) if blades is not None else all_blades(n)
    out = []
    for ap in multi_indices(n, p):
        fp_plus = factorial_power(n, h, 1, ap).poly
        for am in multi_indices(n, q):
            poly = fp_plus.mul(factorial_power(n, h, -1, am).poly)
            for blade in blades:
                label = f"(x)+^{ap}(x)-^{am}*{blade.label()}"
                out.append((label, Form.blade(poly, blade)))
    return out


def ambient_space(n, h, degree, blades=None):
    """All monomials of total degree at most the bound, over chosen blades."""
    blades = list(blades) if blades is not None else all_blades(n)
    out = []
    for total in range(degree + 1):
        for e in multi_indices(n, total):
            poly = ExactPolynomial(n, h, {e: ONE})
            for blade in blades:
                out.append((f"x^{e}*{blade.label()}", Form.blade(poly, blade)))
    return out


# ---------------------------------------------------------------------------
# Exact kernel solving on a candidate span.

def form_coordinates(form):
    """Sparse coordinates of a polynomial-coefficient form."""
    coords = {}
    for blade, coeff in form.terms.items():
        for exps, value in coeff.terms.items():
            coords[(blade.sort_key(), exps)] = value
    return coords


def reduce_candidates(candidates):
    """A maximal linearly independent subset of the candidate forms.

    Distinct factorial-power labels can realize the same polynomial (all
    degree-one powers are plain coordinates), so the raw candidate list may
    be dependent; solving on a reduced basis keeps kernel dimensions equal
    to dimensions of actual solution spaces.
    """
    coords = [form_coordinates(form) for _, form in candidates]
    keys = sorted(set().union(*coords)) if coords else []
    rows = [[cs.get(k, ZERO) for cs in coords] for k in keys]
    _, pivots = rref(rows)
    return [candidates[i] for i in pivots]


def assemble_matrix(operators, candidates):
    """Stacked coordinate matrix of the operators over the candidate span."""
    images = []
    keys = set()
    for op in operators:
        row_of = []
        for _, form in candidates:
            img = op(form)
            cs = form_coordinates(img)
            keys.update(cs)
            row_of.append(cs)
        images.append(row_of)
    key_list = sorted(keys)
    rows = []
    for row_of in images:
        for key in key_list:
            rows.append([cs.get(key, ZERO) for cs in row_of])
    return rows


def solve_kernel(operators, candidates):
    """Kernel of the stacked operators, as forms; plus the raw matrix."""
    if not candidates:
        return [], []
    rows = assemble_matrix(operators, candidates)
    ncols = len(candidates)
    vectors = kernel_basis(rows, ncols)
    forms = []
    n = candidates[0][1].n
    h = candidates[0][1].h
    for vec in vectors:
        total = Form.zero(n, h)
        for coeff, (_, form) in zip(vec, candidates):
            if coeff:
                total = total.add(form.scale(coeff))
        forms.append(total)
    return forms, rows


def oracle_kernel_dimension(rows, ncols):
    """Independent dense rank route: fraction-free Bareiss over Z[i]."""
    if not rows:
        return ncols
    return ncols - bareiss_rank(scalars_to_gaussian(rows))


def joint_euler_eigenbasis(n, h, p, q, blades=None, ambient=False):
    """Exact basis of the coupled Euler eigenspace inside the candidate span."""
    candidates = reduce_candidates(
        ambient_space(n, h, p + q, blades)
        if ambient
        else homogeneous_space(n, h, p, q, blades)
    )
    fam = build_family(n)
    ops = [
        fam.E_z - _const_op(p),
        fam.E_zdag - _const_op(q),
    ]
    basis, rows = solve_kernel(ops, candidates)
    return basis, candidates, rows


def _const_op(eigenvalue):
    return Operator.identity().scaled(Scalar(eigenvalue))


@dataclass
class MonogenicBasis:
    """Joint eigenvectors annihilated by both hermitian Dirac operators."""

    n: int
    p: int
    q: int
    convention: str
    elements: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    oracle_dimension: int = 0

    @property
    def dimension(self):
        return len(self.elements)


def hermitian_monogenic_basis(
    n, h, p, q, convention=DEFAULT_CONVENTION, spinor=False, ambient=False
):
    """Solve the coupled eigenproblem with zero hermitian Dirac constraints."""
    blades = spinor_blades(n) if spinor else None
    candidates = reduce_candidates(
        ambient_space(n, h, p + q, blades)
        if ambient
        else homogeneous_space(n, h, p, q, blades)
    )
    fam = build_family(n, convention)
    ops = [
        fam.E_z - _const_op(p),
        fam.E_zdag - _const_op(q),
        fam.dz,
        fam.dzdag,
    ]
    elements, rows = solve_kernel(ops, candidates)
    result = MonogenicBasis(n=n, p=p, q=q, convention=convention)
    result.elements = elements
    result.oracle_dimension = oracle_kernel_dimension(rows, len(candidates))
    for el in elements:
        cert = {
            "euler-z": fam.E_z(el).sub(el.scale(Scalar(p))).is_zero(),
            "euler-zdag": fam.E_zdag(el).sub(el.scale(Scalar(q))).is_zero(),
            "dirac-z": fam.dz(el).is_zero(),
            "dirac-zdag": fam.dzdag(el).is_zero(),
            "gamma-z": fam.Gamma_z(el).add(el.scale(Scalar(p))).is_zero(),
            "gamma-zdag": fam.Gamma_zdag(el).add(el.scale(Scalar(q))).is_zero(),
        }
        result.certificates.append(cert)
    return result


def independent_over_scalars(forms):
    """Exact rank check on the coordinate matrix of the given forms."""
    if not forms:
        return True
    coords = [form_coordinates(f) for f in forms]
    keys = sorted(set().union(*coords))
    rows = [[cs.get(k, ZERO) for cs in coords] for k in keys]
    return rank(rows) == len(forms)


def classical_scaling_residual(form, p, q, factor=2):
    """Residual of R(factor*x) - factor^(p+q) R(x), coefficientwise."""
    scaled = form.map_coeffs(lambda c: c.scale_variables(factor))
    target = form.scale(Scalar(factor ** (p + q)))
    return scaled.sub(target)

"""Dirac operators, vector variables and the Euler/Gamma intertwining suite.

Two hermitian pairings are supported, named by the Witt sign the first
hermitian Dirac operator carries.  Under the ``plus`` convention it pairs
the plus Witt generator with the backward difference; the anticommutator
of the vector variable with it then collapses to zero and the
intertwining relations cannot hold.  Under the ``minus`` convention the
two operators trade names, every relation of the suite holds exactly, and
that convention is the shipped default.

All members are built from the primitives of :mod:`latclif.operators`.
The hermitian Dirac operators coincide with the two halves of the
Dirac-Kaehler operator; their sum is convention independent, so the
second orthogonal Dirac operator needs no convention flag at all.

The vector variables multiply by the coordinate after applying the Witt
generator.  Composing the raising operator x_j T^{s j} directly with the
translated Witt generators would smuggle an extra lattice shift into every
term and break the Weyl pairing with the differences; multiplying by the
bare coordinate is the shift-free composition under which the suite
closes.  See the README for the worked algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .operators import (
    Operator,
    anticommutator,
    commutator,
    coord_mul,
    coord_shift,
    diff_op,
    nabla,
    nabla_tilde,
    opsum,
    upsilon,
    verify_identity,
    xi,
)
from .scalars import Scalar

PLUS = "plus"
MINUS = "minus"
DEFAULT_CONVENTION = MINUS

_MINUS_I = Scalar(0, -1)
_I = Scalar(0, 1)


def dirac_pm(n, sign):
    """The signed Dirac half: sum over axes of xi(s, j) after D^{-s j}."""
    return opsum(*[xi(sign, j) * diff_op(-sign, j) for j in range(1, n + 1)])


def dirac_kahler(n):
    """Sum of upsilon(-, j) nabla_j + i upsilon(+, j) nablaTilde_j."""
    parts = []
    for j in range(1, n + 1):
        parts.append(upsilon(-1, j) * nabla(j))
        parts.append((upsilon(1, j) * nabla_tilde(j)).scaled(_I))
    return opsum(*parts)


def hermitian_pair(n, convention=DEFAULT_CONVENTION):
    """The hermitian Dirac operator and its conjugate.

    ``plus``:  (dirac_pm(+), dirac_pm(-)).
    ``minus``: the same two operators with the names exchanged.
    """
    plus, minus = dirac_pm(n, 1), dirac_pm(n, -1)
    if convention == PLUS:
        return plus, minus
    if convention == MINUS:
        return minus, plus
    raise ValueError(f"unknown convention {convention!r}")


def orthogonal_pair(n, convention=DEFAULT_CONVENTION):
    """The two orthogonal Dirac operators.

    The first is the Dirac-Kaehler operator; the second is -i times the
    sum of the hermitian pair, which does not depend on the convention.
    """
    dz, dzdag = hermitian_pair(n, convention)
    return dirac_kahler(n), (dz + dzdag).scaled(_MINUS_I)


def vector_variables(n, convention=DEFAULT_CONVENTION):
    """The vector variables z, z-dagger, X, X-bar.

    z carries the plus Witt generators, z-dagger the minus ones, under
    every convention; the convention only decides which Dirac operator
    they pair with in the intertwining relations.
    """
    z = opsum(*[coord_mul(j) * xi(1, j) for j in range(1, n + 1)])
    zdag = opsum(*[coord_mul(j) * xi(-1, j) for j in range(1, n + 1)])
    x_var = z - zdag
    xbar_var = (z + zdag).scaled(_MINUS_I)
    return z, zdag, x_var, xbar_var


@dataclass
class DiracFamily:
    """Every operator of the Dirac layer for a fixed dimension."""

    n: int
    convention: str
    d_plus: Operator = field(repr=False, default=None)
    d_minus: Operator = field(repr=False, default=None)
    dirac: Operator = field(repr=False, default=None)
    dz: Operator = field(repr=False, default=None)
    dzdag: Operator = field(repr=False, default=None)
    dX: Operator = field(repr=False, default=None)
    dXbar: Operator = field(repr=False, default=None)
    z: Operator = field(repr=False, default=None)
    zdag: Operator = field(repr=False, default=None)
    X: Operator = field(repr=False, default=None)
    Xbar: Operator = field(repr=False, default=None)
    E_z: Operator = field(repr=False, default=None)
    E_zdag: Operator = field(repr=False, default=None)
    beta: Operator = field(repr=False, default=None)
    Gamma_z: Operator = field(repr=False, default=None)
    Gamma_zdag: Operator = field(repr=False, default=None)
    E_X: Operator = field(repr=False, default=None)
    Gamma_X: Operator = field(repr=False, default=None)
    Gamma_Xbar: Operator = field(repr=False, default=None)


def build_family(n, convention=DEFAULT_CONVENTION):
    fam = DiracFamily(n=n, convention=convention)
    fam.d_plus = dirac_pm(n, 1)
    fam.d_minus = dirac_pm(n, -1)
    fam.dirac = dirac_kahler(n)
    fam.dz, fam.dzdag = hermitian_pair(n, convention)
    fam.dX, fam.dXbar = orthogonal_pair(n, convention)
    fam.z, fam.zdag, fam.X, fam.Xbar = vector_variables(n, convention)
    fam.E_z = opsum(*[coord_shift(1, j) * diff_op(-1, j) for j in range(1, n + 1)])
    fam.E_zdag = opsum(*[coord_shift(-1, j) * diff_op(1, j) for j in range(1, n + 1)])
    fam.beta = opsum(*[xi(-1, j) * xi(1, j) for j in range(1, n + 1)])
    fam.Gamma_z = commutator(fam.z, fam.dz) + fam.beta
    n_id = Operator.identity().scaled(Scalar(n))
    fam.Gamma_zdag = commutator(fam.zdag, fam.dzdag) + (n_id - fam.beta)
    fam.E_X = fam.E_z + fam.E_zdag
    mixed = fam.zdag * fam.dz + fam.z * fam.dzdag
    fam.Gamma_X = fam.Gamma_z + fam.Gamma_zdag - mixed.scaled(Scalar(2))
    fam.Gamma_Xbar = fam.Gamma_z + fam.Gamma_zdag + mixed.scaled(Scalar(2))
    return fam


def intertwining_relations(fam):
    """The six relations, as (name, lhs, rhs) triples."""
    n_id = Operator.identity().scaled(Scalar(fam.n))
    return [
        ("acomm(z,dz)=beta+Ez", anticommutator(fam.z, fam.dz), fam.beta + fam.E_z),
        ("comm(z,dz)=-beta+Gz", commutator(fam.z, fam.dz), fam.Gamma_z - fam.beta),
        (
            "acomm(zdag,dzdag)=n-beta+Ezdag",
            anticommutator(fam.zdag, fam.dzdag),
            (n_id - fam.beta) + fam.E_zdag,
        ),
        (
            "comm(zdag,dzdag)=-(n-beta)+Gzdag",
            commutator(fam.zdag, fam.dzdag),
            fam.Gamma_zdag - (n_id - fam.beta),
        ),
        ("acomm(zdag,dz)=0", anticommutator(fam.zdag, fam.dz), _zero_op()),
        ("acomm(z,dzdag)=0", anticommutator(fam.z, fam.dzdag), _zero_op()),
    ]


def _zero_op():
    return Operator.identity().scaled(Scalar(0))


def verify_intertwining(fam, test_forms):
    """Reports for the six relations plus the Euler-operator consistency."""
    reports = []
    for name, lhs, rhs in intertwining_relations(fam):
        rep = verify_identity(name, lhs, rhs, test_forms)
        reports.append(rep)
    n_id = Operator.identity().scaled(Scalar(fam.n))
    from_z = anticommutator(fam.z, fam.dz) + anticommutator(fam.zdag, fam.dzdag) - n_id
    from_xbar = -anticommutator(fam.Xbar, fam.dXbar) - n_id
    reports.append(verify_identity("EX=Ez+Ezdag(z-side)", from_z, fam.E_X, test_forms))
    reports.append(verify_identity("EX=EXbar(Xbar-side)", from_xbar, fam.E_X, test_forms))
    return reports


def determine_convention(n, test_forms):
    """The convention under which every intertwining relation holds."""
    passing = []
    for conv in (PLUS, MINUS):
        fam = build_family(n, conv)
        if all(r.passed for r in verify_intertwining(fam, test_forms)):
            passing.append(conv)
    return passing

"""The bigraded exterior algebra of lattice differential forms.

A blade is a product of the 2n anticommuting coordinate differentials
dx_j^- and dx_j^+, kept in the canonical order: all minus factors by
ascending axis, then all plus factors by ascending axis.  A form is a
sparse association from blades to coefficients (stored on the left of the
blade), over either coefficient algebra of :mod:`latclif.coeffs`.

Multiplying a coefficient past a blade shifts it by the blade's net
displacement: each dx_j^+ factor contributes one positive unit step on
axis j, each dx_j^- one negative step.  This single rule reproduces the
non-commutativity of functions and 1-forms in the reduced universal
calculus, and :func:`to_universal` / :func:`from_universal` provide the
exact bridge used by the oracle suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffs import (
    BoxFunction,
    ExactPolynomial,
    LatticeStep,
    box_intersect,
    box_points,
    cube,
    diff,
)
from .scalars import Scalar, as_scalar
from .universal import Reduction, Torus, UForm


class BridgeError(Exception):
    """A form cannot be carried to the universal calculus."""


@dataclass(frozen=True)
class Blade:
    """Canonical exterior monomial: minus axes, then plus axes, ascending."""

    minus: tuple
    plus: tuple

    def __post_init__(self):
        if tuple(sorted(set(self.minus))) != self.minus:
            raise ValueError("minus axes must be strictly ascending")
        if tuple(sorted(set(self.plus))) != self.plus:
            raise ValueError("plus axes must be strictly ascending")

    @property
    def degree(self):
        return len(self.minus) + len(self.plus)

    @property
    def bidegree(self):
        return len(self.minus), len(self.plus)

    def factors(self):
        """Factor sequence in canonical order; 0 = minus type, 1 = plus type."""
        return tuple((0, a) for a in self.minus) + tuple((1, a) for a in self.plus)

    def displacement_steps(self):
        """Net displacement of the blade, as a list of unit steps."""
        return [LatticeStep(a, -1) for a in self.minus] + [
            LatticeStep(a, 1) for a in self.plus
        ]

    def sort_key(self):
        return (self.minus, self.plus)

    def label(self):
        if not self.minus and not self.plus:
            return "1"
        bits = [f"dx{a}-" for a in self.minus] + [f"dx{a}+" for a in self.plus]
        return "^".join(bits)

    def __repr__(self):
        return f"Blade({self.label()})"


EMPTY_BLADE = Blade((), ())


def blade_from_factors(factors):
    """Canonicalize a factor sequence; returns (sign, Blade) or None if zero."""
    seq = list(factors)
    if len(set(seq)) != len(seq):
        return None
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    minus = tuple(sorted(a for t, a in seq if t == 0))
    plus = tuple(sorted(a for t, a in seq if t == 1))
    return (-1 if inversions % 2 else 1), Blade(minus, plus)


def blade_mul(b1, b2):
    """Product of two blades: (sign, blade), or None when a factor repeats."""
    return blade_from_factors(b1.factors() + b2.factors())


def single_blade(sign, axis):
    """The one-factor blade dx_axis^sign."""
    if sign > 0:
        return Blade((), (axis,))
    return Blade((axis,), ())


def all_blades(n):
    """All 4^n blades, in canonical sort order."""
    axes = range(1, n + 1)
    out = []
    for mmask in range(1 << n):
        for pmask in range(1 << n):
            minus = tuple(a for a in axes if mmask >> (a - 1) & 1)
            plus = tuple(a for a in axes if pmask >> (a - 1) & 1)
            out.append(Blade(minus, plus))
    out.sort(key=lambda b: b.sort_key())
    return out


class Form:
    """Sparse blade -> coefficient association with a fixed n and mesh h."""

    def __init__(self, n, h, terms=None):
        self.n = n
        self.terms = {}
        kind = None
        hh = None
        for blade, coeff in (terms or {}).items():
            if coeff.n != n:
                raise ValueError("coefficient dimension mismatch")
            if kind is None:
                kind = type(coeff)
                hh = coeff.h
            elif type(coeff) is not kind or coeff.h != hh:
                raise ValueError("coefficient algebra mismatch")
            if isinstance(coeff, ExactPolynomial) and coeff.is_zero():
                continue
            self.terms[blade] = coeff
        self.h = Fraction(h)
        if hh is not None and hh != self.h:
            raise ValueError("coefficient mesh width differs from form mesh width")

    @classmethod
    def zero(cls, n, h):
        out = cls.__new__(cls)
        out.n = n
        out.h = h if isinstance(h, Fraction) else Fraction(h)
        out.terms = {}
        return out

    def _raw(self, terms):
        out = Form.__new__(Form)
        out.n, out.h, out.terms = self.n, self.h, terms
        return out

    @classmethod
    def scalar(cls, coeff):
        """The 0-form with the given coefficient."""
        return cls(coeff.n, coeff.h, {EMPTY_BLADE: coeff})

    @classmethod
    def blade(cls, coeff, blade):
        return cls(coeff.n, coeff.h, {blade: coeff})

    def coeff_kind(self):
        for c in self.terms.values():
            return c.kind
        return None

    def _compatible(self, other):
        if self.n != other.n or self.h != other.h:
            raise ValueError("form dimension or mesh mismatch")
        k1, k2 = self.coeff_kind(), other.coeff_kind()
        if k1 and k2 and k1 != k2:
            raise ValueError("coefficient algebra mismatch")

    def add(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for b, c in other.terms.items():
            if b in terms:
                s = terms[b].add(c)
                if isinstance(s, ExactPolynomial) and not s.terms:
                    del terms[b]
                else:
                    terms[b] = s
            else:
                terms[b] = c
        return self._raw(terms)

    def sub(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for b, c in other.terms.items():
            if b in terms:
                s = terms[b].sub(c)
                if isinstance(s, ExactPolynomial) and not s.terms:
                    del terms[b]
                else:
                    terms[b] = s
            else:
                terms[b] = c.neg()
        return self._raw(terms)

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return self._raw({})
        return self._raw({b: c.scale(s) for b, c in self.terms.items()})

    def neg(self):
        return self._raw({b: c.neg() for b, c in self.terms.items()})

    def map_coeffs(self, fn):
        terms = {}
        for b, c in self.terms.items():
            nc = fn(c)
            if isinstance(nc, ExactPolynomial) and not nc.terms:
                continue
            terms[b] = nc
        return self._raw(terms)

    def mul(self, other):
        """Form product; moving a coefficient left through a blade shifts it."""
        self._compatible(other)
        terms = {}
        for b1, f in self.terms.items():
            for b2, g in other.terms.items():
                prod = blade_mul(b1, b2)
                if prod is None:
                    continue
                sgn, blade = prod
                moved = g
                for step in b1.displacement_steps():
                    moved = moved.shift(step.axis, step.sign)
                coeff = f.mul(moved)
                if sgn < 0:
                    coeff = coeff.neg()
                if blade in terms:
                    terms[blade] = terms[blade].add(coeff)
                else:
                    terms[blade] = coeff
        terms = {
            b: c
            for b, c in terms.items()
            if not (isinstance(c, ExactPolynomial) and not c.terms)
        }
        return self._raw(terms)

    def component(self, p, q):
        """The bihomogeneous part with p minus factors and q plus factors."""
        return self._raw(
            {b: c for b, c in self.terms.items() if b.bidegree == (p, q)}
        )

    def is_zero(self):
        return all(c.is_zero() for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.sub(other).is_zero()

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def first_difference(self, other):
        """Where two forms first disagree: (blade, location, value) or None."""
        diff = self.sub(other)
        for blade, coeff in diff.sorted_terms():
            spot = coeff.first_nonzero()
            if spot is not None:
                return blade, spot[0], spot[1]
        return None

    def __repr__(self):
        if not self.terms:
            return "Form(0)"
        bits = [f"[{c!r}]*{b.label()}" for b, c in self.sorted_terms()[:3]]
        more = "" if len(self.terms) <= 3 else f" ... ({len(self.terms)} terms)"
        return "Form(" + " + ".join(bits) + more + ")"


# ---------------------------------------------------------------------------
# Exterior derivatives.

def d_plus(form):
    """Raises the plus degree: sum of forward differences times dx_j^+."""
    return _d_signed(form, 1)


def d_minus(form):
    """Raises the minus degree: sum of backward differences times dx_j^-."""
    return _d_signed(form, -1)


def _d_signed(form, sign):
    out = Form.zero(form.n, form.h)
    for blade, coeff in form.terms.items():
        for axis in range(1, form.n + 1):
            prod = blade_mul(single_blade(sign, axis), blade)
            if prod is None:
                continue
            sgn, nb = prod
            c = diff(coeff, LatticeStep(axis, sign))
            if sgn < 0:
                c = c.neg()
            if isinstance(c, ExactPolynomial) and c.is_zero():
                continue
            if nb in out.terms:
                out.terms[nb] = out.terms[nb].add(c)
            else:
                out.terms[nb] = c
    return out


def d(form):
    """The full exterior derivative d = d_+ - d_-."""
    return d_plus(form).sub(d_minus(form))


# ---------------------------------------------------------------------------
# The three grade automorphisms.

def involution(form):
    """Swap dx_j^+ <-> dx_j^- factorwise, keeping order and coefficients."""
    out = Form.zero(form.n, form.h)
    for blade, coeff in form.terms.items():
        swapped = tuple((1 - t, a) for t, a in blade.factors())
        sgn, nb = blade_from_factors(swapped)
        c = coeff if sgn > 0 else coeff.neg()
        out.terms[nb] = out.terms[nb].add(c) if nb in out.terms else c
    return out


def _reversal(form, conjugate):
    out = Form.zero(form.n, form.h)
    for blade, coeff in form.terms.items():
        r = blade.degree
        seq = tuple((1 - t, a) for t, a in reversed(blade.factors()))
        sgn, nb = blade_from_factors(seq)
        if r % 2:
            sgn = -sgn
        c = coeff.conj() if conjugate else coeff
        # the coefficient re-enters from the right of the reversed blade
        for step in nb.displacement_steps():
            c = c.shift(step.axis, step.sign)
        if sgn < 0:
            c = c.neg()
        out.terms[nb] = out.terms[nb].add(c) if nb in out.terms else c
    return out


def reversion(form):
    """Reverse factor order, mapping each dx_j^s to -dx_j^{-s}."""
    return _reversal(form, conjugate=False)


def dagger(form):
    """Reversion combined with complex conjugation of coefficients."""
    return _reversal(form, conjugate=True)


# ---------------------------------------------------------------------------
# Bridge to the universal calculus.

def to_universal(form, N):
    """Expand a form over the reduced universal calculus on Z_N^n.

    Coefficients must be torus-periodic: box functions valid on the whole
    fundamental domain [0, N-1]^n, or constant polynomials.  Each factor
    dx_j^s becomes h times the invariant 1-form in direction s*e_j.
    """
    torus = Torus(form.n, N)
    red = Reduction(torus)
    domain = cube(form.n, 0, N - 1)
    h = form.h
    terms = {}
    for blade, coeff in form.terms.items():
        if isinstance(coeff, ExactPolynomial):
            if coeff.degree() > 0:
                raise BridgeError("non-periodic coefficient rejected")
        elif box_intersect(coeff.validity, domain) != domain:
            raise BridgeError("box does not cover the fundamental domain")
        sample = {m: coeff.value_at(m) for m in torus.nodes()}
        weight = Scalar(h ** blade.degree)
        for m, value in sample.items():
            if not value:
                continue
            node = m
            path = [node]
            for t, axis in blade.factors():
                node = torus.add(node, torus.unit_step(axis, 1 if t else -1))
                path.append(node)
            key = tuple(path)
            cur = terms.get(key, Scalar(0)) + value * weight
            if cur:
                terms[key] = cur
            else:
                terms.pop(key, None)
    return UForm(torus, terms, red)


def periodic_box_function(n, h, N, values, margin):
    """Periodic extension of node values onto a box with margin layers.

    ``values`` assigns a scalar to every node of Z_N^n; the returned box
    function samples the N-periodic extension on [-margin, N-1+margin]^n,
    so that up to ``margin`` shifts stay faithful to the torus function.
    """
    box = cube(n, -margin, N - 1 + margin)
    vals = {p: values[tuple(c % N for c in p)] for p in box_points(box)}
    return BoxFunction(n, h, box, box, vals)


def from_universal(uform, h):
    """Inverse of :func:`to_universal` on reduced forms."""
    if uform.reduction is None:
        raise BridgeError("only reduced forms correspond to blade forms")
    torus = uform.torus
    n, N = torus.n, torus.N
    domain = cube(n, 0, N - 1)
    per_blade = {}
    for path, coeff in uform.terms.items():
        factors = []
        for a, b in zip(path, path[1:]):
            axis, sign = torus.step_of(a, b)
            factors.append((0 if sign < 0 else 1, axis))
        sgn, blade = blade_from_factors(factors)
        value = coeff if sgn > 0 else -coeff
        value = value / Scalar(Fraction(h) ** blade.degree)
        per_blade.setdefault(blade, {})
        cur = per_blade[blade].get(path[0], Scalar(0)) + value
        per_blade[blade][path[0]] = cur
    terms = {}
    for blade, values in per_blade.items():
        full = {p: values.get(p, Scalar(0)) for p in torus.nodes()}
        terms[blade] = BoxFunction(n, h, domain, domain, full)
    return Form(n, h, terms)

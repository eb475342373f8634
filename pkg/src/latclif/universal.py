"""Universal differential calculus on a finite abelian lattice.

The carrier is the torus Z_N^n.  Forms are sparse linear combinations of
simplicial node paths; the exterior derivative is the alternating insertion
sum over all nodes and slots.  With no reduction attached this is the full
calculus of the complete graph, which serves as the brute-force oracle for
the blade algebra in :mod:`latclif.forms`.

Attaching a :class:`Reduction` passes to the nearest-neighbour quotient.
Path projection alone (dropping paths with a non-unit step) does not kill
the straight and returning 2-paths whose vanishing the quotient requires,
so reduced forms are kept in a canonical shape: paths with a repeated
signed step are zero, and the step sequence of every stored path is sorted
into the generator order (negative steps by axis, then positive steps by
axis) with the permutation parity absorbed into the coefficient.  Under
this normal form the reduced algebra is exactly functions tensor a
Grassmann algebra on 2n anticommuting step generators, which is what the
adjacency-form identities (the vanishing square of the adjacency form, the
anticommutation of the invariant 1-forms) assert.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .scalars import ONE, ZERO, Scalar, as_scalar


class Torus:
    """The group Z_N^n with componentwise addition modulo N."""

    def __init__(self, n, N):
        if n < 1:
            raise ValueError("n must be at least 1")
        if N < 2:
            raise ValueError("N must be at least 2")
        self.n = n
        self.N = N
        self._nodes = tuple(itertools.product(range(N), repeat=n))

    def nodes(self):
        return self._nodes

    def add(self, a, b):
        return tuple((x + y) % self.N for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.N for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.N for x, y in zip(a, b))

    def unit_step(self, axis, sign):
        return tuple(
            (sign % self.N) if i == axis - 1 else 0 for i in range(self.n)
        )

    def step_of(self, a, b):
        """(axis, sign) when b - a is a signed unit step, else None.

        Needs N >= 3 so that +e_j and -e_j stay distinct.
        """
        d = self.sub(b, a)
        axis = None
        for i, x in enumerate(d):
            if x == 0:
                continue
            if axis is not None:
                return None
            if x == 1 % self.N:
                axis, sign = i + 1, 1
            elif x == (-1) % self.N:
                axis, sign = i + 1, -1
            else:
                return None
        if axis is None:
            return None
        return axis, sign

    def __eq__(self, other):
        return isinstance(other, Torus) and (self.n, self.N) == (other.n, other.N)

    def __repr__(self):
        return f"Torus(n={self.n}, N={self.N})"


@dataclass(frozen=True)
class Reduction:
    """The symmetric nearest-neighbour reduction: steps +-e_j only."""

    torus: Torus

    def __post_init__(self):
        if self.torus.N < 3:
            raise ValueError("reductions need N >= 3")

    def step_key(self, step):
        axis, sign = step
        return (0, axis) if sign < 0 else (1, axis)

    def canonicalize(self, path):
        """Normal form of a path under the reduced calculus.

        Returns (sign, path) or None when the class is zero: a non-unit
        step or a repeated signed step kills the path; otherwise steps are
        sorted into generator order and the start node is kept.
        """
        if len(path) == 1:
            return 1, path
        steps = []
        for a, b in zip(path, path[1:]):
            st = self.torus.step_of(a, b)
            if st is None:
                return None
            steps.append(st)
        if len(set(steps)) != len(steps):
            return None
        keyed = [self.step_key(s) for s in steps]
        # parity of the sort, by counting inversions
        inversions = 0
        for i in range(len(keyed)):
            for j in range(i + 1, len(keyed)):
                if keyed[i] > keyed[j]:
                    inversions += 1
        order = sorted(range(len(steps)), key=lambda k: keyed[k])
        node = path[0]
        nodes = [node]
        for k in order:
            axis, sign = steps[k]
            node = self.torus.add(node, self.torus.unit_step(axis, sign))
            nodes.append(node)
        return (-1 if inversions % 2 else 1), tuple(nodes)


def _valid_path(nodes):
    return all(a != b for a, b in zip(nodes, nodes[1:]))


class UForm:
    """Sparse association from node paths to scalars.

    Mixed path lengths are allowed; the derivative treats each stored path
    by its own degree.  When a reduction is attached every stored path is
    in canonical shape.
    """

    def __init__(self, torus, terms=None, reduction=None):
        if reduction is not None and reduction.torus != torus:
            raise ValueError("reduction belongs to a different torus")
        self.torus = torus
        self.reduction = reduction
        self.terms = {}
        for path, coeff in (terms or {}).items():
            coeff = as_scalar(coeff)
            if not coeff or not _valid_path(path):
                continue
            if reduction is not None:
                canon = reduction.canonicalize(path)
                if canon is None:
                    continue
                sgn, path = canon
                if sgn < 0:
                    coeff = -coeff
            cur = self.terms.get(path, ZERO) + coeff
            if cur:
                self.terms[path] = cur
            else:
                self.terms.pop(path, None)

    # -- structure -------------------------------------------------------
    def _compatible(self, other):
        if self.torus != other.torus:
            raise ValueError("mismatched group size")
        if self.reduction != other.reduction:
            raise ValueError("mismatched reduction")

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        degs = {len(p) - 1 for p in self.terms}
        return len(degs) <= 1

    def degree(self):
        if not self.terms:
            return 0
        degs = {len(p) - 1 for p in self.terms}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop()

    def add(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            s = terms.get(p, ZERO) + c
            if s:
                terms[p] = s
            else:
                terms.pop(p, None)
        out = UForm(self.torus, reduction=self.reduction)
        out.terms = terms
        return out

    def sub(self, other):
        return self.add(other.scale(Scalar(-1)))

    def scale(self, s):
        s = as_scalar(s)
        out = UForm(self.torus, reduction=self.reduction)
        if s:
            out.terms = {p: s * c for p, c in self.terms.items()}
        return out

    def neg(self):
        return self.scale(Scalar(-1))

    # -- algebra ---------------------------------------------------------
    def uproduct(self, other):
        """Concatenation product: b_{..,p} * b_{q,..} = delta_{pq} b_{..,p,..}."""
        self._compatible(other)
        terms = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                if p[-1] != q[0]:
                    continue
                path = p + q[1:]
                coeff = c * d
                if self.reduction is not None:
                    canon = self.reduction.canonicalize(path)
                    if canon is None:
                        continue
                    sgn, path = canon
                    if sgn < 0:
                        coeff = -coeff
                s = terms.get(path, ZERO) + coeff
                if s:
                    terms[path] = s
                else:
                    terms.pop(path, None)
        out = UForm(self.torus, reduction=self.reduction)
        out.terms = terms
        return out

    def uderiv(self):
        """Alternating insertion sum over all nodes and slots."""
        terms = {}
        for path, c in self.terms.items():
            r = len(path)
            for l in self.torus.nodes():
                for s in range(r + 1):
                    if s > 0 and path[s - 1] == l:
                        continue
                    if s < r and path[s] == l:
                        continue
                    new = path[:s] + (l,) + path[s:]
                    coeff = c if s % 2 == 0 else -c
                    if self.reduction is not None:
                        canon = self.reduction.canonicalize(new)
                        if canon is None:
                            continue
                        sgn, new = canon
                        if sgn < 0:
                            coeff = -coeff
                    cur = terms.get(new, ZERO) + coeff
                    if cur:
                        terms[new] = cur
                    else:
                        terms.pop(new, None)
        out = UForm(self.torus, reduction=self.reduction)
        out.terms = terms
        return out

    def translate(self, p):
        """Left translation: every node of every path moves by p."""
        out = UForm(self.torus, reduction=self.reduction)
        out.terms = {
            tuple(self.torus.add(m, p) for m in path): c
            for path, c in self.terms.items()
        }
        return out

    def __eq__(self, other):
        if not isinstance(other, UForm):
            return NotImplemented
        self._compatible(other)
        return self.sub(other).is_zero()

    __hash__ = None

    def first_term(self):
        if not self.terms:
            return None
        p = min(self.terms, key=lambda q: (len(q), q))
        return p, self.terms[p]

    def __repr__(self):
        if not self.terms:
            return "UForm(0)"
        bits = []
        for p in sorted(self.terms, key=lambda q: (len(q), q))[:4]:
            bits.append(f"{self.terms[p].to_text()}*b{list(p)}")
        more = "" if len(self.terms) <= 4 else f" ... ({len(self.terms)} terms)"
        return "UForm(" + " + ".join(bits) + more + ")"


# ---------------------------------------------------------------------------
# Constructors and named forms.

def upath_form(torus, nodes, reduction=None):
    """Basis path form with coefficient one; degenerate input gives zero."""
    return UForm(torus, {tuple(nodes): ONE}, reduction)


def delta_form(torus, node, reduction=None):
    return upath_form(torus, (tuple(node),), reduction)


def function_form(torus, values, reduction=None):
    """The 0-form sum_l f_l b_l from a mapping node -> scalar."""
    return UForm(torus, {(tuple(m),): as_scalar(c) for m, c in values.items()}, reduction)


def unit_form(torus, reduction=None):
    return UForm(torus, {(m,): ONE for m in torus.nodes()}, reduction)


def theta(torus, direction, reduction=None):
    """The left-invariant 1-form: sum over m of the edge m -> m + direction."""
    direction = tuple(direction)
    if all(x % torus.N == 0 for x in direction):
        raise ValueError("theta needs a nonzero direction")
    if reduction is not None and torus.step_of((0,) * torus.n, direction) is None:
        raise ValueError("direction is not an allowed step of the reduction")
    return UForm(
        torus,
        {(m, torus.add(m, direction)): ONE for m in torus.nodes()},
        reduction,
    )


def allowed_steps(torus):
    """The 2n signed unit steps in generator order."""
    out = []
    for axis in range(1, torus.n + 1):
        out.append((axis, -1))
    for axis in range(1, torus.n + 1):
        out.append((axis, 1))
    return out


def adjacency(reduction):
    """The adjacency form: the sum of the 2n invariant 1-forms."""
    torus = reduction.torus
    total = None
    for axis, sign in allowed_steps(torus):
        t = theta(torus, torus.unit_step(axis, sign), reduction)
        total = t if total is None else total.add(t)
    return total


def g_power(reduction, r):
    if r < 1:
        raise ValueError("power must be at least 1")
    g = adjacency(reduction)
    out = g
    for _ in range(r - 1):
        out = out.uproduct(g)
    return out


@dataclass
class IdentityReport:
    """Residual of one checked identity; zero residual means PASS."""

    name: str
    residual: UForm

    @property
    def passed(self):
        return self.residual.is_zero()

    def witness(self):
        if self.passed:
            return None
        return self.residual.first_term()


def check_graded_bracket(omega):
    """Residual of  d w - (G w - (-1)^r w G)  for a homogeneous reduced form.

    In the reduced calculus the exterior derivative is the graded bracket
    with the adjacency form; this check decides that exactly.
    """
    if omega.reduction is None:
        raise ValueError("theorem check needs the symmetric reduction")
    r = omega.degree()
    g = adjacency(omega.reduction)
    lhs = omega.uderiv()
    rhs = g.uproduct(omega)
    tail = omega.uproduct(g)
    rhs = rhs.sub(tail) if r % 2 == 0 else rhs.add(tail)
    return IdentityReport("derivative-graded-bracket", lhs.sub(rhs))


def commutator_with_adjacency(f):
    """[G, f] for a 0-form f in the reduced calculus."""
    if f.reduction is None:
        raise ValueError("needs the symmetric reduction")
    g = adjacency(f.reduction)
    return g.uproduct(f).sub(f.uproduct(g))


def random_uform(torus, degree, rng, reduction=None, terms=3):
    """Random homogeneous form with small integer coefficients."""
    out = {}
    nodes = torus.nodes()
    attempts = 0
    while len(out) < terms and attempts < 50 * terms:
        attempts += 1
        path = [rng.choice(nodes)]
        ok = True
        for _ in range(degree):
            if reduction is None:
                nxt = rng.choice(nodes)
                if nxt == path[-1]:
                    ok = False
                    break
            else:
                axis, sign = rng.choice(allowed_steps(torus))
                nxt = torus.add(path[-1], torus.unit_step(axis, sign))
            path.append(nxt)
        if not ok:
            continue
        out[tuple(path)] = Scalar(rng.randint(-4, 4), rng.randint(-2, 2))
    return UForm(torus, out, reduction)

"""Line-oriented exact text serialization of forms.

The canonical layout round-trips byte for byte:

    latclif-form 1
    n 2
    h 1/2
    coeff poly
    term 1,2 -
      0,0 3/4
      1,0 0+1i
    end

Term headers carry the minus axes and the plus axes (``-`` when empty).
Polynomial payload lines hold exponent tuples; box payload lines hold the
support and validity boxes followed by one value line per support point,
in row-major order.  Every scalar uses the exact rational text format.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import BoxFunction, ExactPolynomial, box_points
from .forms import Blade, Form
from .scalars import Scalar

FORMAT_NAME = "latclif-form"
FORMAT_VERSION = 1


class FormFileError(Exception):
    """Malformed form file."""


def _axes_text(axes):
    return ",".join(str(a) for a in axes) if axes else "-"


def _parse_axes(text):
    if text == "-":
        return ()
    return tuple(int(a) for a in text.split(","))


def _box_text(box):
    return ",".join(f"{lo}:{hi}" for lo, hi in box)


def _parse_box(text):
    out = []
    for part in text.split(","):
        lo, hi = part.split(":")
        out.append((int(lo), int(hi)))
    return tuple(out)


def dump_form(form):
    """Canonical text of a form (terms sorted, exact scalars)."""
    kind = form.coeff_kind() or "poly"
    lines = [
        f"{FORMAT_NAME} {FORMAT_VERSION}",
        f"n {form.n}",
        f"h {form.h}",
        f"coeff {kind}",
    ]
    for blade, coeff in form.sorted_terms():
        lines.append(f"term {_axes_text(blade.minus)} {_axes_text(blade.plus)}")
        if kind == "poly":
            for exps in sorted(coeff.terms):
                value = coeff.terms[exps]
                lines.append(f"  {','.join(str(e) for e in exps)} {value.to_text()}")
        else:
            lines.append(f"  support {_box_text(coeff.support)}")
            lines.append(f"  validity {_box_text(coeff.validity)}")
            for p in box_points(coeff.support):
                lines.append(
                    f"  v {','.join(str(c) for c in p)} {coeff.values[p].to_text()}"
                )
        lines.append("end")
    return "\n".join(lines) + "\n"


def parse_form(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(FORMAT_NAME):
        raise FormFileError("missing format header")
    header = lines[0].split()
    if len(header) != 2 or int(header[1]) != FORMAT_VERSION:
        raise FormFileError(f"unsupported format version in {lines[0]!r}")
    fields = {}
    i = 1
    while i < len(lines) and not lines[i].startswith("term"):
        key, _, value = lines[i].partition(" ")
        fields[key] = value.strip()
        i += 1
    try:
        n = int(fields["n"])
        h = Fraction(fields["h"])
        kind = fields["coeff"]
    except KeyError as exc:
        raise FormFileError(f"missing header field {exc}") from exc
    if kind not in ("poly", "box"):
        raise FormFileError(f"unknown coefficient kind {kind!r}")

    terms = {}
    while i < len(lines):
        head = lines[i].split()
        if head[0] != "term" or len(head) != 3:
            raise FormFileError(f"expected term header, got {lines[i]!r}")
        blade = Blade(_parse_axes(head[1]), _parse_axes(head[2]))
        i += 1
        body = []
        while i < len(lines) and lines[i].strip() != "end":
            body.append(lines[i].strip())
            i += 1
        if i == len(lines):
            raise FormFileError("unterminated term block")
        i += 1  # skip end
        if kind == "poly":
            poly_terms = {}
            for ln in body:
                exps_text, _, val_text = ln.partition(" ")
                exps = tuple(int(e) for e in exps_text.split(","))
                if len(exps) != n:
                    raise FormFileError(f"exponent arity mismatch in {ln!r}")
                poly_terms[exps] = Scalar.from_text(val_text)
            terms[blade] = ExactPolynomial(n, h, poly_terms)
        else:
            support = validity = None
            values = {}
            for ln in body:
                tag, _, rest = ln.partition(" ")
                if tag == "support":
                    support = _parse_box(rest)
                elif tag == "validity":
                    validity = _parse_box(rest)
                elif tag == "v":
                    pt_text, _, val_text = rest.partition(" ")
                    pt = tuple(int(c) for c in pt_text.split(","))
                    values[pt] = Scalar.from_text(val_text)
                else:
                    raise FormFileError(f"unknown box line {ln!r}")
            if support is None or validity is None:
                raise FormFileError("box term lacks support or validity")
            terms[blade] = BoxFunction(n, h, support, validity, values)
    return Form(n, h, terms)


def write_form(form, path):
    with open(path, "w") as fh:
        fh.write(dump_form(form))


def read_form(path):
    with open(path) as fh:
        return parse_form(fh.read())

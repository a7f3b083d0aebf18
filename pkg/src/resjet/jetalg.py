"""Exact truncated power series (jets) with rational coefficients.

Three kernels live here:

* ``Jet1``   -- univariate jets ``c0 + c1*z + ... + cN*z^N``,
* ``Jet2``   -- bivariate jets in ``x, y`` truncated at total degree N,
* ``MapJet2`` -- jets of planar maps fixing the origin.

All coefficients are exact rationals (``gmpy2.mpq``); floating point never
enters this module.  An order-N jet knows nothing beyond total degree N, so
binary operations demand equal orders and raise ``OrderMismatchError``
otherwise; lowering the order is explicit via ``truncated``.  Degree
bookkeeping of the derived operations:

* ``derivative`` / ``dx`` / ``dy``: N -> N-1       (degree-N data cannot
  determine the derivative's degree-N coefficients)
* ``antiderivative`` / ``integrate_x``: N -> N+1
* ``det_jacobian``: N -> N-1
* ``diag_part``: N -> N // 2
* ``substitute_xy``: explicit target order, default ``2 * order``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from gmpy2 import mpq

__all__ = [
    "DEFAULT_ORDER",
    "Jet1",
    "Jet2",
    "MapJet2",
    "NotInvertibleError",
    "OrderMismatchError",
    "compose",
    "compose_map",
    "det_jacobian",
    "diag_part",
    "invert_map",
    "rat",
    "substitute_xy",
]

DEFAULT_ORDER = 8

_ZERO = mpq(0)
_ONE = mpq(1)


class OrderMismatchError(ValueError):
    """Raised when an operation mixes jets of different truncation orders."""


class NotInvertibleError(ValueError):
    """Raised when a jet or map jet has no inverse at its truncation order."""


def rat(value) -> mpq:
    """Coerce ``value`` to an exact rational.

    Accepts ``int``, ``mpq``, ``fractions.Fraction`` and strings like
    ``"-3/2"`` or ``"7"``.  Floats are rejected: exact arithmetic only.
    """
    if isinstance(value, mpq):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    if isinstance(value, str):
        try:
            return mpq(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational literal {value!r}") from exc
    raise TypeError(f"exact rational required, got {type(value).__name__}")


def _check_order(order) -> int:
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise ValueError(f"truncation order must be a nonnegative int, got {order!r}")
    return order


# ---------------------------------------------------------------------------
# univariate jets


class Jet1:
    """Univariate jet with coefficients ``coeffs[k]`` of ``z^k``, k <= order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = tuple(rat(c) for c in coeffs)
        if order is None:
            order = len(cs) - 1
        _check_order(order)
        if len(cs) != order + 1:
            raise ValueError(f"expected {order + 1} coefficients, got {len(cs)}")
        self.order = order
        self.coeffs = cs

    # -- constructors

    @classmethod
    def zero(cls, order: int) -> "Jet1":
        return cls((_ZERO,) * (_check_order(order) + 1), order)

    @classmethod
    def constant(cls, value, order: int) -> "Jet1":
        cs = [rat(value)] + [_ZERO] * _check_order(order)
        return cls(cs, order)

    @classmethod
    def variable(cls, order: int) -> "Jet1":
        """The jet of ``z`` itself."""
        if _check_order(order) < 1:
            raise ValueError("variable jet needs order >= 1")
        cs = [_ZERO] * (order + 1)
        cs[1] = _ONE
        return cls(cs, order)

    # -- basic queries

    def coeff(self, k: int) -> mpq:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient index {k} outside order {self.order}")
        return self.coeffs[k]

    @property
    def constant_term(self) -> mpq:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncated(self, order: int) -> "Jet1":
        """Drop coefficients above ``order`` (which must not exceed self.order)."""
        _check_order(order)
        if order > self.order:
            raise OrderMismatchError(
                f"cannot extend jet of order {self.order} to order {order}"
            )
        return Jet1(self.coeffs[: order + 1], order)

    # -- ring operations

    def _coerce(self, other):
        if isinstance(other, Jet1):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"jet orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, Jet2) or isinstance(other, MapJet2):
            return NotImplemented
        try:
            return Jet1.constant(rat(other), self.order)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet1([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return Jet1([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet1([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Jet1):
            try:
                s = rat(other)
            except (TypeError, ValueError):
                return NotImplemented
            return Jet1([s * a for a in self.coeffs], self.order)
        if other.order != self.order:
            raise OrderMismatchError(f"jet orders differ: {self.order} vs {other.order}")
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [_ZERO] * (n + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return Jet1(out, n)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("jet powers take nonnegative integer exponents")
        result = Jet1.constant(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- analytic operations

    def reciprocal(self) -> "Jet1":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise NotInvertibleError("reciprocal needs a nonzero constant term")
        n = self.order
        inv0 = 1 / c0
        out = [inv0] + [_ZERO] * n
        for k in range(1, n + 1):
            acc = _ZERO
            for i in range(1, k + 1):
                ci = self.coeffs[i]
                if ci:
                    acc += ci * out[k - i]
            out[k] = -inv0 * acc
        return Jet1(out, n)

    def exp(self) -> "Jet1":
        """Exponential of a jet with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term; handle the constant separately")
        n = self.order
        result = Jet1.constant(1, n)
        term = Jet1.constant(1, n)
        for k in range(1, n + 1):
            term = term * self * mpq(1, k)
            if term.is_zero():
                break
            result = result + term
        return result

    def log(self) -> "Jet1":
        """Logarithm of a jet with constant term one."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1; normalize the unit first")
        n = self.order
        u = self - 1
        result = Jet1.zero(n)
        term = Jet1.constant(1, n)
        sign = 1
        for k in range(1, n + 1):
            term = term * u
            if term.is_zero():
                break
            result = result + term * mpq(sign, k)
            sign = -sign
        return result

    def derivative(self) -> "Jet1":
        if self.order == 0:
            raise OrderMismatchError("cannot differentiate an order-0 jet")
        cs = [k * self.coeffs[k] for k in range(1, self.order + 1)]
        return Jet1(cs, self.order - 1)

    def antiderivative(self, constant=0) -> "Jet1":
        cs = [rat(constant)] + [self.coeffs[k] / (k + 1) for k in range(self.order + 1)]
        return Jet1(cs, self.order + 1)

    # -- plumbing

    def __eq__(self, other):
        if not isinstance(other, Jet1):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"Jet1[{self.order}]({body})"


# ---------------------------------------------------------------------------
# dict-level bivariate helpers (shared by Jet2, composition and map algebra)


def _dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        w = v if w is None else w + v
        if w:
            out[k] = w
        elif k in out:
            del out[k]
    return out


def _dict_neg(a: dict) -> dict:
    return {k: -v for k, v in a.items()}

def _dict_scale(a: dict, s) -> dict:
    if not s:
        return {}
    return {k: s * v for k, v in a.items()}


def _dict_mul(a: dict, b: dict, order: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    blist = sorted((i + j, i, j, c) for (i, j), c in b.items())
    out: dict = {}
    get = out.get
    for (i1, j1), c1 in a.items():
        rem = order - i1 - j1
        if rem < 0:
            continue
        for d2, i2, j2, c2 in blist:
            if d2 > rem:
                break
            key = (i1 + i2, j1 + j2)
            v = get(key)
            out[key] = c1 * c2 if v is None else v + c1 * c2
    return {k: v for k, v in out.items() if v}


def _dict_dx(a: dict) -> dict:
    return {(i - 1, j): i * c for (i, j), c in a.items() if i}


def _dict_dy(a: dict) -> dict:
    return {(i, j - 1): j * c for (i, j), c in a.items() if j}


def _dict_truncate(a: dict, order: int) -> dict:
    return {k: v for k, v in a.items() if k[0] + k[1] <= order}


def _compose_dicts(a: dict, px: dict, py: dict, order: int) -> dict:
    """Substitute the zero-constant map components ``(px, py)`` into ``a``.

    Horner scheme over powers of y then x, truncating intermediates as the
    remaining valuation allows.
    """
    if not a:
        return {}
    rows: dict = {}
    for (i, j), c in a.items():
        rows.setdefault(j, {})[i] = c
    jmax = max(rows)
    acc: dict = {}
    for j in range(jmax, -1, -1):
        if acc:
            acc = _dict_mul(acc, py, order)
        row = rows.get(j)
        if row:
            # inner Horner in px at truncation order - j (py has valuation >= 1)
            inner_order = order - j
            imax = max(row)
            inner: dict = {}
            for i in range(imax, -1, -1):
                if inner:
                    inner = _dict_mul(inner, px, inner_order)
                c = row.get(i)
                if c:
                    v = inner.get((0, 0))
                    inner[(0, 0)] = c if v is None else v + c
                    if not inner[(0, 0)]:
                        del inner[(0, 0)]
            acc = _dict_add(acc, _dict_truncate(inner, order))
    return acc


# ---------------------------------------------------------------------------
# bivariate jets


class Jet2:
    """Bivariate jet: sparse map ``{(i, j): c}`` with ``i + j <= order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Mapping, order: int):
        _check_order(order)
        clean: dict = {}
        for key, value in coeffs.items():
            i, j = key
            if not (isinstance(i, int) and isinstance(j, int)) or i < 0 or j < 0:
                raise ValueError(f"bad monomial index {key!r}")
            if i + j > order:
                raise ValueError(
                    f"monomial x^{i}*y^{j} exceeds truncation order {order}"
                )
            v = rat(value)
            if v:
                clean[(i, j)] = v
        self.order = order
        self.coeffs = clean

    # -- constructors

    @classmethod
    def zero(cls, order: int) -> "Jet2":
        return cls({}, order)

    @classmethod
    def constant(cls, value, order: int) -> "Jet2":
        return cls({(0, 0): rat(value)}, order)

    @classmethod
    def monomial(cls, value, i: int, j: int, order: int) -> "Jet2":
        return cls({(i, j): rat(value)}, order)

    @classmethod
    def variable_x(cls, order: int) -> "Jet2":
        return cls.monomial(1, 1, 0, order)

    @classmethod
    def variable_y(cls, order: int) -> "Jet2":
        return cls.monomial(1, 0, 1, order)

    # -- queries

    def coeff(self, i: int, j: int) -> mpq:
        if i < 0 or j < 0 or i + j > self.order:
            raise IndexError(f"monomial x^{i}*y^{j} outside order {self.order}")
        return self.coeffs.get((i, j), _ZERO)

    @property
    def constant_term(self) -> mpq:
        return self.coeffs.get((0, 0), _ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def homogeneous_part(self, degree: int) -> dict:
        return {k: v for k, v in self.coeffs.items() if k[0] + k[1] == degree}

    def min_degree(self) -> int | None:
        """Smallest total degree with a nonzero coefficient, None when zero."""
        if not self.coeffs:
            return None
        return min(i + j for i, j in self.coeffs)

    def truncated(self, order: int) -> "Jet2":
        _check_order(order)
        if order > self.order:
            raise OrderMismatchError(
                f"cannot extend jet of order {self.order} to order {order}"
            )
        return Jet2(_dict_truncate(self.coeffs, order), order)

    # -- ring operations

    def _coerce(self, other):
        if isinstance(other, Jet2):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"jet orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (Jet1, MapJet2)):
            return NotImplemented
        try:
            return Jet2.constant(rat(other), self.order)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet2(_dict_add(self.coeffs, other.coeffs), self.order)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(_dict_neg(self.coeffs), self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet2(_dict_add(self.coeffs, _dict_neg(other.coeffs)), self.order)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            try:
                s = rat(other)
            except (TypeError, ValueError):
                return NotImplemented
            return Jet2(_dict_scale(self.coeffs, s), self.order)
        if other.order != self.order:
            raise OrderMismatchError(f"jet orders differ: {self.order} vs {other.order}")
        return Jet2(_dict_mul(self.coeffs, other.coeffs, self.order), self.order)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("jet powers take nonnegative integer exponents")
        result = Jet2.constant(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def reciprocal(self) -> "Jet2":
        """Multiplicative inverse; requires a nonzero constant term.

        Geometric series in ``u = self/c0 - 1`` (valuation >= 1), so at most
        ``order`` terms contribute.
        """
        c0 = self.constant_term
        if c0 == 0:
            raise NotInvertibleError("reciprocal needs a nonzero constant term")
        n = self.order
        u = _dict_scale(self.coeffs, 1 / c0)
        del u[(0, 0)]
        neg_u = _dict_neg(u)
        acc = {(0, 0): _ONE}
        power = {(0, 0): _ONE}
        for _ in range(n):
            power = _dict_mul(power, neg_u, n)
            if not power:
                break
            acc = _dict_add(acc, power)
        return Jet2(_dict_scale(acc, 1 / c0), n)

    # -- calculus

    def dx(self) -> "Jet2":
        if self.order == 0:
            raise OrderMismatchError("cannot differentiate an order-0 jet")
        return Jet2(_dict_dx(self.coeffs), self.order - 1)

    def dy(self) -> "Jet2":
        if self.order == 0:
            raise OrderMismatchError("cannot differentiate an order-0 jet")
        return Jet2(_dict_dy(self.coeffs), self.order - 1)

    def integrate_x(self) -> "Jet2":
        """Primitive in x vanishing on ``x = 0``; order rises by one."""
        out = {(i + 1, j): c / (i + 1) for (i, j), c in self.coeffs.items()}
        return Jet2(out, self.order + 1)

    # -- plumbing

    def __eq__(self, other):
        if not isinstance(other, Jet2):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return f"Jet2[{self.order}](0)"
        parts = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
            mon = []
            if i:
                mon.append("x" if i == 1 else f"x^{i}")
            if j:
                mon.append("y" if j == 1 else f"y^{j}")
            body = "*".join(mon)
            parts.append(f"{c}*{body}" if body else f"{c}")
        return f"Jet2[{self.order}](" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# planar map jets


class MapJet2:
    """Jet of a planar map fixing the origin, with invertible linear part."""

    __slots__ = ("order", "x", "y")

    def __init__(self, x: Jet2, y: Jet2):
        if not isinstance(x, Jet2) or not isinstance(y, Jet2):
            raise TypeError("map components must be Jet2")
        if x.order != y.order:
            raise OrderMismatchError(f"component orders differ: {x.order} vs {y.order}")
        if x.constant_term or y.constant_term:
            raise ValueError("map jets must fix the origin (zero constant terms)")
        a = x.coeff(1, 0) if x.order >= 1 else _ZERO
        b = x.coeff(0, 1) if x.order >= 1 else _ZERO
        c = y.coeff(1, 0) if y.order >= 1 else _ZERO
        d = y.coeff(0, 1) if y.order >= 1 else _ZERO
        if a * d - b * c == 0:
            raise NotInvertibleError("map jet needs an invertible linear part")
        self.order = x.order
        self.x = x
        self.y = y

    @classmethod
    def identity(cls, order: int) -> "MapJet2":
        return cls(Jet2.variable_x(order), Jet2.variable_y(order))

    @classmethod
    def from_linear(cls, rows, order: int) -> "MapJet2":
        (a, b), (c, d) = rows
        jx = Jet2({(1, 0): rat(a), (0, 1): rat(b)}, order)
        jy = Jet2({(1, 0): rat(c), (0, 1): rat(d)}, order)
        return cls(jx, jy)

    def linear_part(self) -> tuple:
        return (
            (self.x.coeff(1, 0), self.x.coeff(0, 1)),
            (self.y.coeff(1, 0), self.y.coeff(0, 1)),
        )

    def truncated(self, order: int) -> "MapJet2":
        return MapJet2(self.x.truncated(order), self.y.truncated(order))

    def __eq__(self, other):
        if not isinstance(other, MapJet2):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return f"MapJet2[{self.order}](x -> {self.x!r}, y -> {self.y!r})"


# ---------------------------------------------------------------------------
# free operations


def substitute_xy(a: Jet1, order: int | None = None) -> Jet2:
    """Lift a univariate jet to the plane through ``z = x*y``.

    The target order defaults to ``2 * a.order``; a smaller explicit order
    truncates (the caller opts in by passing it).
    """
    if not isinstance(a, Jet1):
        raise TypeError("substitute_xy expects a Jet1")
    if order is None:
        order = 2 * a.order
    _check_order(order)
    out = {}
    for k, c in enumerate(a.coeffs):
        if 2 * k > order:
            break
        if c:
            out[(k, k)] = c
    return Jet2(out, order)


def diag_part(a: Jet2) -> Jet1:
    """Collect the coefficients of ``(x*y)^k`` into a univariate jet."""
    if not isinstance(a, Jet2):
        raise TypeError("diag_part expects a Jet2")
    m = a.order // 2
    return Jet1([a.coeffs.get((k, k), _ZERO) for k in range(m + 1)], m)


def compose(a: Jet2, m: MapJet2) -> Jet2:
    """Substitute the map ``m`` into ``a``: the jet of ``a(m(x, y))``."""
    if not isinstance(a, Jet2) or not isinstance(m, MapJet2):
        raise TypeError("compose expects (Jet2, MapJet2)")
    if a.order != m.order:
        raise OrderMismatchError(f"jet orders differ: {a.order} vs {m.order}")
    return Jet2(_compose_dicts(a.coeffs, m.x.coeffs, m.y.coeffs, a.order), a.order)


def compose_map(outer: MapJet2, inner: MapJet2) -> MapJet2:
    """The jet of ``outer(inner(x, y))``."""
    return MapJet2(compose(outer.x, inner), compose(outer.y, inner))


def _linear_inverse(rows):
    (a, b), (c, d) = rows
    det = a * d - b * c
    if det == 0:
        raise NotInvertibleError("linear part is singular")
    return ((d / det, -b / det), (-c / det, a / det))


def invert_map(m: MapJet2) -> MapJet2:
    """Compositional inverse at order ``m.order``.

    Fixed-point iteration ``g <- L^{-1} (id - n(g))`` where ``m = L + n`` and
    ``n`` has valuation >= 2; each pass is correct one degree further, so
    ``order - 1`` passes suffice.
    """
    if not isinstance(m, MapJet2):
        raise TypeError("invert_map expects a MapJet2")
    n = m.order
    inv = _linear_inverse(m.linear_part())
    (ia, ib), (ic, id_) = inv

    def lin(tx: dict, ty: dict) -> tuple:
        gx = _dict_add(_dict_scale(tx, ia), _dict_scale(ty, ib))
        gy = _dict_add(_dict_scale(tx, ic), _dict_scale(ty, id_))
        return gx, gy

    nx = {k: v for k, v in m.x.coeffs.items() if k[0] + k[1] >= 2}
    ny = {k: v for k, v in m.y.coeffs.items() if k[0] + k[1] >= 2}
    idx = {(1, 0): _ONE}
    idy = {(0, 1): _ONE}
    gx, gy = lin(idx, idy)
    for _ in range(max(n - 1, 0)):
        hx = _compose_dicts(nx, gx, gy, n)
        hy = _compose_dicts(ny, gx, gy, n)
        tx = _dict_add(idx, _dict_neg(hx))
        ty = _dict_add(idy, _dict_neg(hy))
        new = lin(tx, ty)
        if new == (gx, gy):
            break
        gx, gy = new
    return MapJet2(Jet2(gx, n), Jet2(gy, n))


def det_jacobian(m: MapJet2) -> Jet2:
    """Jacobian determinant jet, honest at order ``m.order - 1``."""
    if not isinstance(m, MapJet2):
        raise TypeError("det_jacobian expects a MapJet2")
    return m.x.dx() * m.y.dy() - m.x.dy() * m.y.dx()

"""A small expression language over q-series.

Syntax mirrors the textual notation of the form recipes:

    eta(8)*eta(16)*theta(2)
    theta(1)^9*eta(4)^8/eta(2)^4 - 18*theta(1)^5*eta(4)^16/eta(2)^8 + ...
    T<3;3;chi_m1>(named(F_EX3)) - 4*i*named(F_EX3)

Eta factors aggregate across a product before expansion, so eta(8)*eta(16)
is legal even though eta(8) alone has a fractional q-prefactor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff import ONE, QuadRat
from .forms import (
    FormName,
    EtaQuotientSpec,
    eta_quotient,
    named_form,
    theta_classical,
    theta_shimura,
)
from .hecke import HeckeContext, hecke_T
from .ntheory import DirichletChar
from .series import QSeries


class LexError(ValueError):
    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"unexpected character {char!r} at position {position}")


class ParseError(ValueError):
    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"parse error at position {position}: expected {expected}")


class EvalError(ValueError):
    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"evaluation error at position {position}: {message}")


# -- tokens ------------------------------------------------------------------

_PUNCT = {
    "(": "lparen",
    ")": "rparen",
    "<": "langle",
    ">": "rangle",
    ",": "comma",
    ";": "semicolon",
    "+": "plus",
    "-": "minus",
    "*": "star",
    "/": "slash",
    "^": "caret",
}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    position: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, pos))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and src[pos].isdigit():
                pos += 1
            tokens.append(Token("number", src[start:pos], start))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (src[pos].isalnum() or src[pos] == "_"):
                pos += 1
            word = src[start:pos]
            if word == "sqrt":
                tokens.append(Token("sqrt", word, start))
            elif word == "i":
                tokens.append(Token("imag_unit", word, start))
            else:
                tokens.append(Token("ident", word, start))
            continue
        raise LexError(pos, ch)
    return tokens


# -- syntax tree -------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    pos: int = field(compare=False, default=-1, kw_only=True)


@dataclass(frozen=True)
class Scalar(Expr):
    value: QuadRat = ONE


@dataclass(frozen=True)
class Eta(Expr):
    delta: int = 1


@dataclass(frozen=True)
class Theta(Expr):
    a: int = 1


@dataclass(frozen=True)
class ThetaShimura(Expr):
    a: int = 1
    i: int = 0
    r: int = 0
    t: int = 1


@dataclass(frozen=True)
class Named(Expr):
    name: FormName = FormName.THETA


@dataclass(frozen=True)
class BinOp(Expr):
    op: str = "+"
    left: Expr = None  # type: ignore[assignment]
    right: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class PowOp(Expr):
    base: Expr = None  # type: ignore[assignment]
    exponent: int = 1


@dataclass(frozen=True)
class OpU(Expr):
    p: int = 2
    child: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class OpV(Expr):
    d: int = 2
    child: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class OpT(Expr):
    p: int = 2
    k: int = 1
    char_name: str = "chi0"
    child: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Twist(Expr):
    char_name: str = "chi0"
    child: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Sieve(Expr):
    r: int = 0
    t: int = 1
    child: Expr = None  # type: ignore[assignment]


def resolve_character(name: str) -> DirichletChar:
    """Registry: chi0, chi_m1 (= chi_m4), chi2 and general chi_<D> / chi_m<D>."""
    if name == "chi0":
        return DirichletChar.trivial(1)
    if name in ("chi_m1", "chi_m4"):
        return DirichletChar.kronecker(-4)
    if name == "chi2":
        return DirichletChar.kronecker(8)
    if name.startswith("chi_"):
        body = name[4:]
        neg = body.startswith("m")
        digits = body[1:] if neg else body
        if digits.isdigit() and int(digits) != 0:
            d = -int(digits) if neg else int(digits)
            return DirichletChar.kronecker(d)
    raise KeyError(name)


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token], src_len: int):
        self.tokens = tokens
        self.pos = 0
        self.end = src_len

    def _peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _here(self) -> int:
        t = self._peek()
        return t.position if t else self.end

    def _take(self, kind: str, what: str | None = None) -> Token:
        t = self._peek()
        if t is None or t.kind != kind:
            raise ParseError(self._here(), what or kind)
        self.pos += 1
        return t

    def _match(self, kind: str) -> Token | None:
        t = self._peek()
        if t is not None and t.kind == kind:
            self.pos += 1
            return t
        return None

    def _int(self, signed: bool = False) -> int:
        sign = 1
        if signed and self._match("minus"):
            sign = -1
        return sign * int(self._take("number", "integer literal").lexeme)

    def parse(self) -> Expr:
        e = self.expr()
        if self._peek() is not None:
            raise ParseError(self._here(), "end of input")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while True:
            t = self._peek()
            if t is not None and t.kind in ("plus", "minus"):
                self.pos += 1
                right = self.term()
                left = BinOp(op=t.lexeme, left=left, right=right, pos=t.position)
            else:
                return left

    def term(self) -> Expr:
        left = self.unary()
        while True:
            t = self._peek()
            if t is not None and t.kind in ("star", "slash"):
                self.pos += 1
                right = self.unary()
                left = BinOp(op=t.lexeme, left=left, right=right, pos=t.position)
            else:
                return left

    def unary(self) -> Expr:
        t = self._match("minus")
        if t:
            child = self.unary()
            if isinstance(child, Scalar):
                return Scalar(value=-child.value, pos=t.position)
            return BinOp(op="*", left=Scalar(value=QuadRat(-1), pos=t.position), right=child, pos=t.position)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        t = self._match("caret")
        if t:
            e = self._int(signed=True)
            return PowOp(base=base, exponent=e, pos=t.position)
        return base

    def atom(self) -> Expr:
        t = self._peek()
        if t is None:
            raise ParseError(self._here(), "an expression")
        if t.kind == "number":
            self.pos += 1
            return Scalar(value=QuadRat(int(t.lexeme)), pos=t.position)
        if t.kind == "imag_unit":
            self.pos += 1
            return Scalar(value=QuadRat.sqrt(-1), pos=t.position)
        if t.kind == "sqrt":
            self.pos += 1
            self._take("lparen")
            d = self._int(signed=True)
            self._take("rparen")
            try:
                v = QuadRat.sqrt(d)
            except ValueError as exc:
                raise ParseError(t.position, f"square-free radicand ({exc})") from None
            return Scalar(value=v, pos=t.position)
        if t.kind == "lparen":
            self.pos += 1
            e = self.expr()
            self._take("rparen")
            return e
        if t.kind == "ident":
            return self._call(t)
        raise ParseError(t.position, "an expression")

    def _call(self, t: Token) -> Expr:
        self.pos += 1
        name = t.lexeme
        if name == "eta":
            self._take("lparen")
            delta = self._int()
            self._take("rparen")
            return Eta(delta=delta, pos=t.position)
        if name == "theta":
            self._take("lparen")
            a = self._int()
            self._take("rparen")
            return Theta(a=a, pos=t.position)
        if name == "theta4":
            self._take("lparen")
            a = self._int()
            self._take("comma")
            i = self._int()
            self._take("comma")
            r = self._int()
            self._take("comma")
            tt = self._int()
            self._take("rparen")
            return ThetaShimura(a=a, i=i, r=r, t=tt, pos=t.position)
        if name == "named":
            self._take("lparen")
            ident = self._take("ident", "a form name")
            self._take("rparen")
            try:
                form = FormName(ident.lexeme)
            except ValueError:
                raise ParseError(ident.position, "a known form name") from None
            return Named(name=form, pos=t.position)
        if name in ("U", "V"):
            self._take("langle")
            n = self._int()
            self._take("rangle")
            self._take("lparen")
            child = self.expr()
            self._take("rparen")
            if name == "U":
                return OpU(p=n, child=child, pos=t.position)
            return OpV(d=n, child=child, pos=t.position)
        if name == "T":
            self._take("langle")
            p = self._int()
            self._take("semicolon")
            k = self._int()
            self._take("semicolon")
            cn = self._take("ident", "a character name")
            self._take("rangle")
            self._take("lparen")
            child = self.expr()
            self._take("rparen")
            return OpT(p=p, k=k, char_name=cn.lexeme, child=child, pos=t.position)
        if name == "twist":
            self._take("langle")
            cn = self._take("ident", "a character name")
            self._take("rangle")
            self._take("lparen")
            child = self.expr()
            self._take("rparen")
            return Twist(char_name=cn.lexeme, child=child, pos=t.position)
        if name == "sieve":
            self._take("langle")
            r = self._int()
            self._take("comma")
            tt = self._int()
            self._take("rangle")
            self._take("lparen")
            child = self.expr()
            self._take("rparen")
            return Sieve(r=r, t=tt, child=child, pos=t.position)
        raise ParseError(t.position, f"a known function (got {name!r})")


def parse(src_or_tokens) -> Expr:
    if isinstance(src_or_tokens, str):
        tokens = tokenize(src_or_tokens)
        return _Parser(tokens, len(src_or_tokens)).parse()
    tokens = list(src_or_tokens)
    end = tokens[-1].position + len(tokens[-1].lexeme) if tokens else 0
    return _Parser(tokens, end).parse()


# -- pretty printer ----------------------------------------------------------

_LEVEL = {"+": 1, "-": 1, "*": 2, "/": 2}


def _level(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _LEVEL[e.op]
    if isinstance(e, PowOp):
        return 4
    return 5


def pretty(e: Expr) -> str:
    """Canonical text form; parse(pretty(e)) == e."""
    if isinstance(e, Scalar):
        return str(e.value) if e.value.c == 1 else f"({e.value})"
    if isinstance(e, Eta):
        return f"eta({e.delta})"
    if isinstance(e, Theta):
        return f"theta({e.a})"
    if isinstance(e, ThetaShimura):
        return f"theta4({e.a},{e.i},{e.r},{e.t})"
    if isinstance(e, Named):
        return f"named({e.name.value})"
    if isinstance(e, PowOp):
        base = pretty(e.base)
        if _level(e.base) < 5:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, BinOp):
        lvl = _LEVEL[e.op]
        left = pretty(e.left)
        if _level(e.left) < lvl:
            left = f"({left})"
        right = pretty(e.right)
        if _level(e.right) <= lvl:
            right = f"({right})"
        return f"{left}{e.op}{right}"
    if isinstance(e, OpU):
        return f"U<{e.p}>({pretty(e.child)})"
    if isinstance(e, OpV):
        return f"V<{e.d}>({pretty(e.child)})"
    if isinstance(e, OpT):
        return f"T<{e.p};{e.k};{e.char_name}>({pretty(e.child)})"
    if isinstance(e, Twist):
        return f"twist<{e.char_name}>({pretty(e.child)})"
    if isinstance(e, Sieve):
        return f"sieve<{e.r},{e.t}>({pretty(e.child)})"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluator ---------------------------------------------------------------

class _Val:
    """Partially evaluated value: scalar * (eta monomial) * (series part).

    Eta factors stay symbolic across * / ^ so fractional q-prefactors can
    cancel before the quotient is expanded.
    """

    __slots__ = ("scalar", "etas", "series")

    def __init__(self, scalar: QuadRat = ONE, etas: dict | None = None, series: QSeries | None = None):
        self.scalar = scalar
        self.etas = etas or {}
        self.series = series

    def is_scalar(self) -> bool:
        return not self.etas and self.series is None

    def materialize(self, P: int, pos: int) -> QSeries:
        out = self.series
        if self.etas:
            try:
                etapart = eta_quotient(EtaQuotientSpec(tuple(self.etas.items())), P)
            except ValueError as exc:
                raise EvalError(pos, str(exc)) from None
            out = etapart if out is None else out * etapart
        if out is None:
            out = QSeries.one(P)
        if self.scalar != ONE:
            out = out.scale(self.scalar)
        return out.truncate(min(out.prec, P))


def _merge_etas(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _eval(e: Expr, P: int) -> _Val:
    if isinstance(e, Scalar):
        return _Val(scalar=e.value)
    if isinstance(e, Eta):
        return _Val(etas={e.delta: 1})
    if isinstance(e, Theta):
        try:
            return _Val(series=theta_classical(e.a, P))
        except ValueError as exc:
            raise EvalError(e.pos, str(exc)) from None
    if isinstance(e, ThetaShimura):
        try:
            return _Val(series=theta_shimura(e.a, e.i, e.r, e.t, P))
        except ValueError as exc:
            raise EvalError(e.pos, str(exc)) from None
    if isinstance(e, Named):
        return _Val(series=named_form(e.name, P))
    if isinstance(e, PowOp):
        v = _eval(e.base, P)
        try:
            scalar = v.scalar**e.exponent
            series = None if v.series is None else v.series**e.exponent
        except (ValueError, ZeroDivisionError) as exc:
            raise EvalError(e.pos, str(exc)) from None
        etas = {k: r * e.exponent for k, r in v.etas.items()}
        return _Val(scalar=scalar, etas=etas, series=series)
    if isinstance(e, BinOp):
        if e.op in ("+", "-"):
            lv = _eval(e.left, P)
            rv = _eval(e.right, P)
            if lv.is_scalar() and rv.is_scalar():
                s = lv.scalar + rv.scalar if e.op == "+" else lv.scalar - rv.scalar
                return _Val(scalar=s)
            try:
                ls = lv.materialize(P, e.pos)
                rs = rv.materialize(P, e.pos)
                return _Val(series=ls + rs if e.op == "+" else ls - rs)
            except ValueError as exc:
                raise EvalError(e.pos, str(exc)) from None
        if e.op == "*":
            lv = _eval(e.left, P)
            rv = _eval(e.right, P)
            series = lv.series
            if rv.series is not None:
                series = rv.series if series is None else series * rv.series
            try:
                scalar = lv.scalar * rv.scalar
            except ValueError as exc:
                raise EvalError(e.pos, str(exc)) from None
            return _Val(scalar=scalar, etas=_merge_etas(lv.etas, rv.etas), series=series)
        if e.op == "/":
            lv = _eval(e.left, P)
            rv = _eval(e.right, P)
            try:
                scalar = lv.scalar / rv.scalar
                series = lv.series
                if rv.series is not None:
                    inv = rv.series.inverse()
                    series = inv if series is None else series * inv
            except (ValueError, ZeroDivisionError) as exc:
                raise EvalError(e.pos, str(exc)) from None
            return _Val(scalar=scalar, etas=_merge_etas(lv.etas, rv.etas, sign=-1), series=series)
        raise EvalError(e.pos, f"unknown operator {e.op!r}")
    if isinstance(e, OpU):
        if e.p < 1:
            raise EvalError(e.pos, f"U index must be positive, got {e.p}")
        child = _eval(e.child, e.p * P).materialize(e.p * P, e.pos)
        return _Val(series=child.pick(e.p))
    if isinstance(e, OpV):
        if e.d < 1:
            raise EvalError(e.pos, f"V index must be positive, got {e.d}")
        inner = -(-P // e.d)
        child = _eval(e.child, inner).materialize(inner, e.pos)
        return _Val(series=child.expand_scale(e.d).truncate(P))
    if isinstance(e, OpT):
        if e.p < 2:
            raise EvalError(e.pos, f"T index must be a prime, got {e.p}")
        try:
            chi = resolve_character(e.char_name)
        except KeyError:
            raise EvalError(e.pos, f"unknown character {e.char_name!r}") from None
        child = _eval(e.child, e.p * P).materialize(e.p * P, e.pos)
        try:
            return _Val(series=hecke_T(child, e.p, HeckeContext(k=e.k, chi=chi)))
        except ValueError as exc:
            raise EvalError(e.pos, str(exc)) from None
    if isinstance(e, Twist):
        try:
            chi = resolve_character(e.char_name)
        except KeyError:
            raise EvalError(e.pos, f"unknown character {e.char_name!r}") from None
        child = _eval(e.child, P).materialize(P, e.pos)
        return _Val(series=child.twist(chi))
    if isinstance(e, Sieve):
        child = _eval(e.child, P).materialize(P, e.pos)
        try:
            return _Val(series=child.sieve(e.r, e.t))
        except ValueError as exc:
            raise EvalError(e.pos, str(exc)) from None
    raise TypeError(f"not an expression node: {e!r}")


def evaluate(e: Expr, P: int) -> QSeries:
    """Evaluate a syntax tree to a q-series of precision exactly P."""
    if P < 1:
        raise ValueError("precision must be positive")
    out = _eval(e, P).materialize(P, e.pos)
    if out.prec > P:
        out = out.truncate(P)
    return out


def evaluate_text(src: str, P: int) -> QSeries:
    return evaluate(parse(src), P)

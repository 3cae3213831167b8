"""Closed-form smooth maps R^{4m} -> R^n: AST, parser, serializer, evaluation
and exact first/second derivatives.

Map-file grammar (UTF-8; statements separated by newlines or ``;``, ``#``
starts a comment)::

    dim <4m> -> <n>
    param <name> = <constant expression>     (optional, repeatable)
    f1 = <expr>
    ...
    f<n> = <expr>

Expressions use ``+ - * / ^``, parentheses, ``exp sin cos sqrt abs``, numeric
literals, the constants ``e`` and ``pi`` (or ``π``), variables ``x1 .. x<4m>``
and parameter names.
"""

import math
import re
from dataclasses import dataclass, field, replace

import numpy as np

from .dual import Dual, dual_pow, power_const
from .errors import DimensionError, EvaluationFailure, MapSyntaxError
from .numeric import as_vector

FUNCTIONS = ("exp", "sin", "cos", "sqrt", "abs")
CONSTANTS = {"e": math.e, "pi": math.pi, "π": math.pi}
KEYWORDS = ("dim", "param")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


def walk(node):
    yield node
    if isinstance(node, Neg):
        yield from walk(node.operand)
    elif isinstance(node, BinOp):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Call):
        yield from walk(node.arg)


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<sep>[\n;])
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<arrow>->)
  | (?P<op>[-+*/^()=,])
  | (?P<name>[^\W\d]\w*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise MapSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.domain_dim = None
        self.params = {}

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None, cls=MapSyntaxError):
        tok = tok or self.tok
        return cls(message, tok.pos, self.text)

    def advance(self):
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, kind, text=None):
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or tok.kind
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.advance()

    def skip_separators(self):
        while self.tok.kind == "sep":
            self.advance()

    def end_statement(self):
        if self.tok.kind not in ("sep", "eof"):
            raise self.error(f"unexpected {self.tok.text!r} after statement")
        self.skip_separators()

    # -- file level -------------------------------------------------------

    def parse_file(self):
        self.skip_separators()
        self.expect("name", "dim")
        dom_tok = self.expect("num")
        self.expect("arrow")
        cod_tok = self.expect("num")
        domain_dim, codomain_dim = self._int(dom_tok), self._int(cod_tok)
        if domain_dim < 4 or domain_dim % 4:
            raise self.error("domain dimension must be a positive multiple of 4",
                             dom_tok, DimensionError)
        if not 1 <= codomain_dim <= domain_dim:
            raise self.error("codomain dimension must satisfy 1 <= n <= domain dimension",
                             cod_tok, DimensionError)
        self.domain_dim = domain_dim
        self.end_statement()

        while self.tok.kind == "name" and self.tok.text == "param":
            self.advance()
            name_tok = self.expect("name")
            name = name_tok.text
            if _reserved(name):
                raise self.error(f"parameter name {name!r} is reserved", name_tok)
            if name in self.params:
                raise self.error(f"parameter {name!r} bound twice", name_tok)
            self.expect("op", "=")
            start = self.tok
            expr = self.parse_expr()
            if any(isinstance(n, Var) for n in walk(expr)):
                raise self.error("parameter value must not depend on variables", start)
            self.params[name] = float(evaluate_node(expr, (), self.params))
            self.end_statement()

        components = []
        while self.tok.kind != "eof":
            name_tok = self.expect("name")
            expected = f"f{len(components) + 1}"
            if name_tok.text != expected:
                raise self.error(f"expected component {expected!r}, found {name_tok.text!r}", name_tok)
            self.expect("op", "=")
            components.append(self.parse_expr())
            self.end_statement()
        if len(components) != codomain_dim:
            raise self.error(f"declared {codomain_dim} components but found {len(components)}")
        return MapSpec(domain_dim, codomain_dim, tuple(components),
                       tuple(self.params.items()))

    def _int(self, tok):
        try:
            return int(tok.text)
        except ValueError:
            raise self.error(f"expected an integer, found {tok.text!r}", tok) from None

    # -- expressions --------------------------------------------------------

    def parse_expr(self):
        node = self.parse_term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = self.advance().text
            # a bare literal directly after the sign is a negative literal
            if self.tok.kind == "num" and not self._next_is_power():
                value = float(self.advance().text)
                return Num(-value if sign == "-" else value)
            operand = self.parse_unary()
            return Neg(operand) if sign == "-" else operand
        return self.parse_power()

    def _next_is_power(self):
        nxt = self.tokens[self.i + 1]
        return nxt.kind == "op" and nxt.text == "^"

    def parse_power(self):
        base = self.parse_atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            return BinOp("^", base, self.parse_unary())
        return base

    def parse_atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect("op", ")")
            return node
        if tok.kind == "name":
            self.advance()
            name = tok.text
            if name in FUNCTIONS:
                self.expect("op", "(")
                arg = self.parse_expr()
                self.expect("op", ")")
                return Call(name, arg)
            if name in CONSTANTS:
                return Const(name)
            m = re.fullmatch(r"x(\d+)", name)
            if m:
                index = int(m.group(1))
                if not 1 <= index <= self.domain_dim:
                    raise self.error(
                        f"variable {name} out of range 1..{self.domain_dim}", tok, DimensionError)
                return Var(index)
            if name in self.params:
                return Param(name)
            raise self.error(f"unknown identifier {name!r}", tok)
        got = tok.text or tok.kind
        raise self.error(f"unexpected {got!r} in expression", tok)


def _reserved(name):
    return (name in FUNCTIONS or name in CONSTANTS or name in KEYWORDS
            or re.fullmatch(r"[xf]\d+", name) is not None)


def parse_map(text):
    """Parse map-file text into a :class:`MapSpec`."""
    return _Parser(text).parse_file()


# ---------------------------------------------------------------------------
# Serializer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM = 5


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    return _ATOM


def _fmt_num(value):
    text = repr(value)
    if value.is_integer() and abs(value) < 1e15:
        text = str(int(value)) if value != 0 else text
    if math.copysign(1.0, value) < 0:
        return f"({text})"
    return text


def format_expr(node):
    if isinstance(node, Num):
        return _fmt_num(node.value)
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Var):
        return f"x{node.index}"
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({format_expr(node.arg)})"
    if isinstance(node, Neg):
        inner = format_expr(node.operand)
        if isinstance(node.operand, Num) or _prec(node.operand) <= _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, BinOp):
        left, right = format_expr(node.left), format_expr(node.right)
        p = _PREC[node.op]
        if node.op == "^":
            if _prec(node.left) <= p:
                left = f"({left})"
            if _prec(node.right) < _PREC["neg"]:
                right = f"({right})"
            return f"{left}^{right}"
        if _prec(node.left) < p:
            left = f"({left})"
        if _prec(node.right) <= p:
            right = f"({right})"
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# Evaluation (generic over float and Dual)


def _apply_func(name, x):
    if isinstance(x, Dual):
        return getattr(x, name)()
    try:
        if name == "sqrt":
            if x < 0:
                raise EvaluationFailure(f"sqrt of negative value {x!r}")
            return math.sqrt(x)
        if name == "abs":
            return abs(x)
        return getattr(math, name)(x)
    except OverflowError as exc:
        raise EvaluationFailure(f"{name} overflowed at {x!r}") from exc


def _pow(base, expo):
    if isinstance(expo, Dual):
        return dual_pow(base, expo)
    if isinstance(base, Dual):
        return power_const(base, expo)
    if base == 0 and expo < 0:
        raise EvaluationFailure("zero raised to a negative power")
    if base < 0 and not float(expo).is_integer():
        raise EvaluationFailure(f"non-integer power of negative value {base!r}")
    try:
        return base ** expo
    except OverflowError as exc:
        raise EvaluationFailure("power overflowed") from exc


def evaluate_node(node, x, params):
    """Evaluate an expression tree; ``x`` holds floats or :class:`Dual` values."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x[node.index - 1]
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Param):
        return params[node.name]
    if isinstance(node, Neg):
        return -evaluate_node(node.operand, x, params)
    if isinstance(node, Call):
        return _apply_func(node.func, evaluate_node(node.arg, x, params))
    a = evaluate_node(node.left, x, params)
    b = evaluate_node(node.right, x, params)
    op = node.op
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if not isinstance(b, Dual) and b == 0:
            raise EvaluationFailure("division by zero")
        return a / b
    return _pow(a, b)


# ---------------------------------------------------------------------------
# MapSpec


@dataclass(frozen=True)
class MapSpec:
    """A smooth map R^{domain_dim} -> R^{codomain_dim}, one expression per component.

    ``params`` is a tuple of ``(name, value)`` pairs bound at parse time;
    :meth:`with_params` re-binds them without re-parsing.
    """

    domain_dim: int
    codomain_dim: int
    components: tuple
    params: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.domain_dim < 4 or self.domain_dim % 4:
            raise DimensionError("domain dimension must be a positive multiple of 4")
        if not 1 <= self.codomain_dim <= self.domain_dim:
            raise DimensionError("codomain dimension must satisfy 1 <= n <= domain dimension")
        if len(self.components) != self.codomain_dim:
            raise DimensionError("number of components does not match the codomain dimension")
        bound = dict(self.params)
        for comp in self.components:
            for node in walk(comp):
                if isinstance(node, Var) and not 1 <= node.index <= self.domain_dim:
                    raise DimensionError(f"variable x{node.index} out of range")
                if isinstance(node, Param) and node.name not in bound:
                    raise DimensionError(f"parameter {node.name!r} is not bound")

    @property
    def m(self):
        """Quaternionic dimension: the domain is R^{4m}."""
        return self.domain_dim // 4

    @property
    def param_dict(self):
        return dict(self.params)

    @property
    def smooth(self):
        """False when any component uses ``abs`` (non-smooth at its kink)."""
        return not any(isinstance(n, Call) and n.func == "abs"
                       for comp in self.components for n in walk(comp))

    def with_params(self, **values):
        bound = self.param_dict
        unknown = set(values) - set(bound)
        if unknown:
            raise KeyError(f"unknown parameter(s): {sorted(unknown)}")
        bound.update({k: float(v) for k, v in values.items()})
        return replace(self, params=tuple(bound.items()))

    def with_name(self, name):
        return replace(self, name=name)

    def serialize(self):
        lines = [f"dim {self.domain_dim} -> {self.codomain_dim}"]
        lines += [f"param {k} = {_fmt_num(v)}" for k, v in self.params]
        lines += [f"f{i} = {format_expr(c)}" for i, c in enumerate(self.components, 1)]
        return "\n".join(lines) + "\n"

    # -- numerics -------------------------------------------------------------

    def _eval(self, x):
        params = self.param_dict
        return [evaluate_node(c, x, params) for c in self.components]

    def evaluate(self, p):
        p = as_vector(p, self.domain_dim)
        out = np.array([float(v) for v in self._eval(list(p))])
        if not np.all(np.isfinite(out)):
            raise EvaluationFailure(f"map is not finite at {p.tolist()}")
        return out

    def jacobian(self, p):
        """``(n, 4m)`` array of exact partial derivatives at ``p``."""
        p = as_vector(p, self.domain_dim)
        d = self.domain_dim
        x = [Dual.variable(v, i, d) for i, v in enumerate(p)]
        rows = [_grad_of(v, d) for v in self._eval(x)]
        jac = np.array(rows)
        if not np.all(np.isfinite(jac)):
            raise EvaluationFailure(f"jacobian is not finite at {p.tolist()}")
        return jac

    def hessian(self, p):
        """``(n, 4m, 4m)`` array of exact second partials at ``p``."""
        p = as_vector(p, self.domain_dim)
        d = self.domain_dim
        x = [Dual.variable(v, i, d, second_order=True) for i, v in enumerate(p)]
        out = np.array([_hess_of(v, d) for v in self._eval(x)])
        if not np.all(np.isfinite(out)):
            raise EvaluationFailure(f"hessian is not finite at {p.tolist()}")
        return out


def _grad_of(v, d):
    return v.grad if isinstance(v, Dual) else np.zeros(d)


def _hess_of(v, d):
    return v.hess if isinstance(v, Dual) else np.zeros((d, d))


def evaluate(spec, p):
    return spec.evaluate(p)


def jacobian(spec, p):
    return spec.jacobian(p)


def hessian(spec, p):
    return spec.hessian(p)


def eval_constant(text):
    """Evaluate a variable-free expression such as ``pi/4`` or ``-0.3``."""
    parser = _Parser(text)
    parser.domain_dim = 0
    node = parser.parse_expr()
    if parser.tok.kind != "eof":
        raise parser.error(f"unexpected {parser.tok.text!r} after expression")
    return float(evaluate_node(node, (), {}))

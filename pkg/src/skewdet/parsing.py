"""Recursive-descent parser for the entry grammar.

Grammar (usual precedence, ``^`` binds tightest, unary minus below it)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' exponent)?
    exponent := ['-'] INT | '(' ['-'] INT ')'
    atom   := INT | NAME | '(' expr ')'

The parser evaluates directly into an *algebra* object supplying
``const(int)``, ``name(str, pos)``, ``add``, ``sub``, ``mul``, ``div``,
``neg`` and ``pow``; the same grammar therefore serves field elements and
Ore polynomials (where multiplication is non-commutative and the
evaluation order matters).
"""

from .errors import ParseError

_OPERATORS = "+-*/^()"


def _is_name_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_∂"


def _is_name_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_∂'"


def tokenize(text: str) -> list:
    """Split into ``(kind, value, position)`` triples."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif _is_name_start(ch):
            j = i + 1
            while j < len(text) and _is_name_char(text[j]):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in _OPERATORS:
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, algebra):
        self.text = text
        self.algebra = algebra
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def expect_op(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            raise self.error(f"expected {op!r}")
        return self.advance()

    def at_op(self, *ops):
        tok = self.peek()
        return tok[0] == "op" and tok[1] in ops

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error("unexpected trailing input")
        return value

    def expr(self):
        value = self.term()
        while self.at_op("+", "-"):
            op = self.advance()[1]
            rhs = self.term()
            value = self.algebra.add(value, rhs) if op == "+" else self.algebra.sub(value, rhs)
        return value

    def term(self):
        value = self.unary()
        while self.at_op("*", "/"):
            tok = self.advance()
            rhs = self.unary()
            if tok[1] == "*":
                value = self.algebra.mul(value, rhs)
            else:
                value = self.algebra.div(value, rhs, tok[2])
        return value

    def unary(self):
        if self.at_op("-"):
            self.advance()
            return self.algebra.neg(self.unary())
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            tok = self.advance()
            return self.algebra.pow(base, self.exponent(), tok[2])
        return base

    def exponent(self) -> int:
        paren = self.at_op("(")
        if paren:
            self.advance()
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        tok = self.peek()
        if tok[0] != "int":
            raise self.error("expected integer exponent")
        self.advance()
        if paren:
            self.expect_op(")")
        return sign * tok[1]

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.advance()
            return self.algebra.const(tok[1])
        if tok[0] == "name":
            self.advance()
            return self.algebra.name(tok[1], tok[2])
        if self.at_op("("):
            self.advance()
            value = self.expr()
            self.expect_op(")")
            return value
        if tok[0] == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok[1]!r}")


def parse_expression(text: str, algebra):
    return _Parser(text, algebra).parse()


def render_poly(coeffs, variable: str, render_coeff) -> str:
    """Render ``sum c_i * variable^i`` in descending powers.

    ``render_coeff(c)`` returns ``(text, is_negative, is_one)`` where
    ``text`` is the magnitude when ``is_negative`` is set.
    """
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        text, negative, unit = render_coeff(c)
        if i == 0:
            term = text
        else:
            mono = variable if i == 1 else f"{variable}^{i}"
            term = mono if unit else f"{text}*{mono}"
        if not parts:
            parts.append(f"-{term}" if negative else term)
        else:
            parts.append(f" - {term}" if negative else f" + {term}")
    return "".join(parts) if parts else "0"

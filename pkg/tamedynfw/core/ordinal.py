# coding: utf-8
#
# ordinal.py
#
# Copyright (C) 2026 IMTEK Simulation
# Author: tamedynfw developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
"""Cantor normal form ordinals below epsilon_0.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents, each exponent being an :class:`Ordinal`
itself. Literals use ``w`` for omega, e.g. ``w^2*2+w+1`` or ``w^(w+1)``.
"""

import enum
import logging
import random

from typing import Tuple, Union

from tamedynfw.report import Report

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'


class OrdinalSyntaxError(ValueError):
    """Raised on malformed ordinal literals, carries the failing position."""

    def __init__(self, message, text='', position=0):
        super().__init__("{} at position {} in '{}'".format(message, position, text))
        self.text = text
        self.position = position

    def __reduce__(self):
        return (OrdinalSyntaxError, (self.args[0], self.text, self.position))


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Parity(enum.Enum):
    EVEN = 'even'
    ODD = 'odd'

    def __str__(self):
        return self.value


class Ordinal:
    """Immutable ordinal in Cantor normal form."""

    __slots__ = ('_terms',)

    def __init__(self, terms=()):
        terms = tuple((_coerce(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise ValueError("Coefficient {} of term {} is not positive.".format(c, i))
            if i > 0 and compare(terms[i-1][0], e) != Order.GT:
                raise ValueError("Exponents not strictly decreasing at term {}.".format(i))
        object.__setattr__(self, '_terms', terms)

    def __setattr__(self, key, value):
        raise AttributeError("Ordinal is immutable.")

    @classmethod
    def natural(cls, n: int) -> 'Ordinal':
        if n < 0:
            raise ValueError("Natural number expected, got {}.".format(n))
        if n == 0:
            return ZERO
        return cls(((ZERO, n),))

    @classmethod
    def omega_power(cls, exponent, coefficient: int = 1) -> 'Ordinal':
        """Single term omega^exponent * coefficient."""
        if coefficient == 0:
            return ZERO
        return cls(((_coerce(exponent), coefficient),))

    @property
    def terms(self) -> Tuple[Tuple['Ordinal', int], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return len(self._terms) == 0

    @property
    def is_natural(self) -> bool:
        return self.is_zero or (len(self._terms) == 1 and self._terms[0][0].is_zero)

    def to_int(self) -> int:
        if not self.is_natural:
            raise ValueError("{} is not a natural number.".format(self))
        return 0 if self.is_zero else self._terms[0][1]

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.natural(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self.is_natural:
            return hash(self.to_int())
        return hash(self._terms)

    def __lt__(self, other):
        return compare(self, _coerce(other)) == Order.LT

    def __le__(self, other):
        return compare(self, _coerce(other)) != Order.GT

    def __gt__(self, other):
        return compare(self, _coerce(other)) == Order.GT

    def __ge__(self, other):
        return compare(self, _coerce(other)) != Order.LT

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return "Ordinal('{}')".format(format_ordinal(self))

    def __reduce__(self):
        return (parse_ordinal, (format_ordinal(self),))


def _coerce(value: Union[Ordinal, int, str]) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, bool):
        raise TypeError("Cannot interpret bool as ordinal.")
    if isinstance(value, int):
        return Ordinal.natural(value)
    if isinstance(value, str):
        return parse_ordinal(value)
    raise TypeError("Cannot interpret {} as ordinal.".format(type(value).__name__))


ZERO = Ordinal()
ONE = Ordinal.natural(1)
OMEGA = Ordinal(((ONE, 1),))

DIGITS = '0123456789'


def compare(a: Ordinal, b: Ordinal) -> Order:
    """Lexicographic comparison of Cantor normal forms."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        o = compare(ea, eb)
        if o != Order.EQ:
            return o
        if ca != cb:
            return Order.LT if ca < cb else Order.GT
    if len(a.terms) == len(b.terms):
        return Order.EQ
    return Order.LT if len(a.terms) < len(b.terms) else Order.GT


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a+b, terms of a below the leading exponent of b are absorbed."""
    if b.is_zero:
        return a
    lead, lead_coefficient = b.terms[0]
    terms = []
    for e, c in a.terms:
        o = compare(e, lead)
        if o == Order.GT:
            terms.append((e, c))
        elif o == Order.EQ:
            lead_coefficient += c
            break
        else:
            break
    terms.append((lead, lead_coefficient))
    terms.extend(b.terms[1:])
    return Ordinal(terms)


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def is_successor(a: Ordinal) -> bool:
    return not a.is_zero and a.terms[-1][0].is_zero


def is_limit(a: Ordinal) -> bool:
    return not a.is_zero and not a.terms[-1][0].is_zero


def predecessor(a: Ordinal) -> Ordinal:
    if not is_successor(a):
        raise ValueError("{} has no predecessor, it is 0 or a limit.".format(a))
    e, c = a.terms[-1]
    terms = a.terms[:-1] + (((e, c - 1),) if c > 1 else ())
    return Ordinal(terms)


def split_limit_plus_finite(a: Ordinal) -> Tuple[Ordinal, int]:
    """Decompose a = limit + n with limit either 0 or a limit ordinal."""
    if is_successor(a):
        return Ordinal(a.terms[:-1]), a.terms[-1][1]
    return a, 0


def parity(a: Ordinal) -> Parity:
    _, n = split_limit_plus_finite(a)
    return Parity.EVEN if n % 2 == 0 else Parity.ODD


def difference(a: Ordinal, b: Ordinal) -> Ordinal:
    """Unique c with a + c = b, requires a <= b."""
    if compare(a, b) == Order.GT:
        raise ValueError("No difference, {} exceeds {}.".format(a, b))
    for i, ((ea, ca), (eb, cb)) in enumerate(zip(a.terms, b.terms)):
        if ea == eb and ca == cb:
            continue
        if ea == eb:  # cb > ca
            return Ordinal(((eb, cb - ca),) + b.terms[i+1:])
        return Ordinal(b.terms[i:])
    return Ordinal(b.terms[len(a.terms):])


def fundamental_sequence(g: Ordinal, n: int) -> Ordinal:
    """n-th element of the canonical fundamental sequence of the limit g.

    With g = gamma + w^e the sequence reads gamma + n for e = 1,
    gamma + w^d*(n+1) for e = d+1 > 1 and gamma + w^(e[n]) for limit e.
    """
    if not is_limit(g):
        raise ValueError("Fundamental sequence requires a limit ordinal, got {}.".format(g))
    if n < 0:
        raise ValueError("Index must be natural, got {}.".format(n))
    e, c = g.terms[-1]
    gamma = Ordinal(g.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    if e == ONE:
        return add(gamma, Ordinal.natural(n))
    if is_successor(e):
        return add(gamma, Ordinal.omega_power(predecessor(e), n + 1))
    return add(gamma, Ordinal.omega_power(fundamental_sequence(e, n)))


def cofinal_index(g: Ordinal, beta: Ordinal) -> int:
    """Least n with beta < g[n], requires beta < g."""
    if compare(beta, g) != Order.LT:
        raise ValueError("{} is not below {}.".format(beta, g))
    n = 0
    while compare(beta, fundamental_sequence(g, n)) != Order.LT:
        n += 1
    return n


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return '0'
    parts = []
    for e, c in a.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        if e == ONE:
            base = 'w'
        elif e.is_natural:
            base = 'w^{}'.format(e.to_int())
        else:
            base = 'w^({})'.format(format_ordinal(e))
        parts.append(base if c == 1 else '{}*{}'.format(base, c))
    return '+'.join(parts)


class _Parser:
    """Recursive descent over ord := term ('+' term)*."""

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        return OrdinalSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, char):
        if self.peek() != char:
            raise self.error("Expected '{}'".format(char))
        self.pos += 1

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in DIGITS:
            self.pos += 1
        if start == self.pos:
            raise self.error("Expected natural number")
        return int(self.text[start:self.pos])

    def ordinal(self) -> Ordinal:
        value = self.term()
        while self.peek() == '+':
            self.pos += 1
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        char = self.peek()
        if char and char in DIGITS:
            return Ordinal.natural(self.nat())
        if char != 'w':
            raise self.error("Expected 'w' or natural number")
        self.pos += 1
        exponent = ONE
        if self.peek() == '^':
            self.pos += 1
            if self.peek() == '(':
                self.pos += 1
                exponent = self.ordinal()
                self.expect(')')
            else:
                exponent = Ordinal.natural(self.nat())
        coefficient = 1
        if self.peek() == '*':
            self.pos += 1
            coefficient = self.nat()
        return Ordinal.omega_power(exponent, coefficient)


def parse_ordinal(text: str) -> Ordinal:
    """Parse an ordinal literal, terms are summed with ordinal addition."""
    logger = logging.getLogger(__name__)
    parser = _Parser(text)
    if parser.peek() == '':
        raise parser.error("Empty ordinal literal")
    value = parser.ordinal()
    if parser.peek() != '':
        raise parser.error("Unexpected trailing input")
    logger.debug("Parsed '{}' as {}.".format(text, format_ordinal(value)))
    return value


def _coefficients(a: Ordinal, length: int = 3) -> Tuple[int, ...]:
    """Coefficients of w^(length-1), ..., w^0 of an ordinal below w^length."""
    coefficients = [0] * length
    for e, c in a.terms:
        coefficients[length - 1 - e.to_int()] = c
    return tuple(coefficients)


def _below_omega_cubed(rng: random.Random, bound: int) -> Ordinal:
    return add(add(Ordinal.omega_power(2, rng.randrange(bound)), Ordinal.omega_power(1, rng.randrange(bound))),
               Ordinal.natural(rng.randrange(bound)))


def verify_ordinals(seed: int = 0, trials: int = 10000, bound: int = 10) -> Report:
    """Audit arithmetic against the pair oracle below w*bound and on random triples below w^3."""
    logger = logging.getLogger(__name__)
    rng = random.Random(seed)
    report = Report('ordinal')

    pairs = [(i, j) for i in range(bound) for j in range(bound)]

    def value(p):
        return add(Ordinal.omega_power(1, p[0]), Ordinal.natural(p[1]))

    def pair_sum(p, q):
        return (p[0] + q[0], q[1]) if q[0] > 0 else (p[0], p[1] + q[1])

    order_agree = sum(1 for p in pairs for q in pairs if compare(value(p), value(q)) == Order((p > q) - (p < q)))
    report.add('order-oracle', order_agree == len(pairs)**2, 'agree={}/{} below=w*{}'.format(
        order_agree, len(pairs)**2, bound))
    sum_agree = sum(1 for p in pairs for q in pairs if add(value(p), value(q)) == value(pair_sum(p, q)))
    report.add('sum-oracle', sum_agree == len(pairs)**2, 'agree={}/{}'.format(sum_agree, len(pairs)**2))
    parity_agree = sum(1 for p in pairs if (parity(value(p)) == Parity.EVEN) == (p[1] % 2 == 0))
    report.add('parity-oracle', parity_agree == len(pairs), 'agree={}/{}'.format(parity_agree, len(pairs)))

    associative = absorbing = absorption_cases = parities = comparisons = monotone = 0
    for _ in range(trials):
        a, b, c = (_below_omega_cubed(rng, bound) for _ in range(3))
        associative += add(add(a, b), c) == add(a, add(b, c))
        if not b.is_zero and a < Ordinal.omega_power(b.terms[0][0]):
            absorption_cases += 1
            absorbing += add(a, b) == b
        if b.is_natural:
            expected = Parity.EVEN if (split_limit_plus_finite(a)[1] + b.to_int()) % 2 == 0 else Parity.ODD
        else:
            expected = parity(b)
        parities += parity(add(a, b)) == expected
        comparisons += compare(a, b) == Order((_coefficients(a) > _coefficients(b))
                                              - (_coefficients(a) < _coefficients(b)))
        monotone += not (b < c) or add(a, b) < add(a, c)
    report.add('associativity', associative == trials, 'agree={}/{}'.format(associative, trials))
    report.add('absorption', absorbing == absorption_cases, 'agree={}/{}'.format(absorbing, absorption_cases))
    report.add('parity', parities == trials, 'agree={}/{}'.format(parities, trials))
    report.add('comparison', comparisons == trials, 'agree={}/{}'.format(comparisons, trials))
    report.add('right-monotone', monotone == trials, 'agree={}/{}'.format(monotone, trials))
    logger.info("Ordinal suite with seed {}: {} failed checks.".format(seed, len(report.failed)))
    return report

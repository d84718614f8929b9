"""Dense univariate polynomials as coefficient lists, lowest degree first.

Works over any field whose elements support ``+ - * /`` (``mpq`` for the
exact paths, ``float``/``complex`` elsewhere).  Degrees here never exceed 11,
so nothing is vectorised.
"""


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def scale(p, c):
    return [c * a for a in p]


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def derivative(p):
    return [k * p[k] for k in range(1, len(p))]


def evaluate(p, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def divmod_poly(p, q):
    """Euclidean division ``p = quot*q + rem`` over a field."""
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [0] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c != 0:
            for j in range(dq + 1):
                rem[k + j] -= c * q[j]
    return trim(quot), trim(rem[:dq])


def monic(p):
    p = trim(p)
    return [a / p[-1] for a in p] if p else p


def gcd(p, q):
    """Monic greatest common divisor (exact fields only)."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def from_roots(roots):
    """Monic polynomial with the given roots."""
    p = [1]
    for r in roots:
        p = mul(p, [-r, 1])
    return p


def sign_variations(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

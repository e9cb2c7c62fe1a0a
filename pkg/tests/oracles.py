"""Independent reference implementations used only by the tests.

Each oracle is deliberately naive: it recomputes a quantity from its
definition, sharing no code with the package beyond word encodings.
"""

from itertools import product


def cofactor_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def matmul(x, y, mod=None):
    n, k, m = len(x), len(y), len(y[0])
    out = [[sum(x[i][t] * y[t][j] for t in range(k)) for j in range(m)] for i in range(n)]
    if mod:
        out = [[v % mod for v in row] for row in out]
    return out


def letter_counts(images, size):
    """Incidence matrix by counting: rows counted letter, columns source letter."""
    return [[images[b].count(a) for b in range(size)] for a in range(size)]


def least_positive_power(m, limit=64):
    power = m
    for e in range(1, limit + 1):
        if all(v > 0 for row in power for v in row):
            return e
        power = matmul(power, m)
    return None


def iterate_word(images, w, k):
    for _ in range(k):
        w = tuple(a for c in w for a in images[c])
    return w


def factors_by_iteration(images, L, target=4000):
    """Factors of length <= L of phi^k(c) for every letter c, with k grown
    until each image has length >= target and two more steps add nothing."""
    size = len(images)

    def collect(k):
        out = set()
        for c in range(size):
            w = iterate_word(images, (c,), k)
            for i in range(len(w)):
                for j in range(i, min(i + L, len(w)) + 1):
                    out.add(w[i:j])
        return out

    k = 1
    while min(len(iterate_word(images, (c,), k)) for c in range(size)) < target:
        k += 1
    base = collect(k)
    assert collect(k + 2) == base, "iteration oracle did not stabilise"
    return base


def thue_morse_prefix(n):
    return tuple(bin(i).count("1") % 2 for i in range(n))


def brute_double_factorization(words, max_len=8):
    """Some word of length <= max_len with two distinct factorizations, or None."""
    words = sorted(set(words))
    seen = {}
    frontier = [((), ())]
    while frontier:
        nxt = []
        for w, parse in frontier:
            for x in words:
                u = w + x
                if len(u) > max_len:
                    continue
                p = parse + (x,)
                if u in seen and seen[u] != p:
                    return u
                seen.setdefault(u, p)
                nxt.append((u, p))
        frontier = nxt
    return None


def naive_green(mul, n):
    """R, L, J, H as partitions (frozensets of frozensets) from ideal equality."""
    elems = range(n)
    right = [frozenset(mul(i, x) for x in elems) for i in elems]
    left = [frozenset(mul(x, i) for x in elems) for i in elems]
    two = [frozenset().union(*(right[l] for l in left[i])) for i in elems]

    def classes(ideal):
        groups = {}
        for i in elems:
            groups.setdefault(ideal[i], set()).add(i)
        return frozenset(frozenset(g) for g in groups.values())

    h = {}
    for i in elems:
        h.setdefault((right[i], left[i]), set()).add(i)
    return {
        "R": classes(right),
        "L": classes(left),
        "J": classes(two),
        "H": frozenset(frozenset(g) for g in h.values()),
    }


def length_omega_mod(m, n):
    """(values, preperiod, period, exponent) of k -> 1^T M^k mod n, the
    eventual value taken along m = k!."""
    seen, history = {}, []
    v = tuple(1 % n for _ in m)
    while v not in seen:
        seen[v] = len(history)
        history.append(v)
        v = tuple(matmul([list(v)], m, n)[0])
    q = seen[v]
    p = len(history) - q
    e = max(q, 1)
    while e % p:
        e += 1
    return history[q + (e - q) % p], q, p, e


def free_group_reaches_letters(generators, size, max_terms=4):
    """Bounded search: is every single letter a reduced product of at most
    ``max_terms`` generators and inverses?"""
    gens = []
    for g in generators:
        gens.append(tuple((a, 1) for a in g))
        gens.append(tuple((a, -1) for a in reversed(g)))

    def reduce(w):
        out = []
        for x in w:
            if out and out[-1] == (x[0], -x[1]):
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    found = set()
    layer = {()}
    for _ in range(max_terms):
        layer = {reduce(w + g) for w in layer for g in gens}
        found |= layer
    return all(((a, 1),) in found for a in range(size))


def all_words(size, max_len):
    for k in range(max_len + 1):
        yield from product(range(size), repeat=k)

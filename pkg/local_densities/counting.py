"""
Counting solutions of S[X] = T over O_p / p^a.

X runs over M_{m,l}(O_p / p^L).  S is split into the connected blocks of
its non-zero pattern; S[X] is the sum of the block values S_b[X_b], so
each block contributes a histogram of (value code, row-space id) pairs.
Histograms are convolved block by block and the last block is matched
against the target by binary search.

A value code packs the l x l Hermitian matrix S[X] reduced by the relevant
lattice: the diagonal mod M and the two coordinates of each off-diagonal
entry mod M, where M = p^{a+e} and the off-diagonal entries are first
multiplied by sqrt(-D) (for p^a \\tilde Her), or M = p^a with plain
coordinates (for p^a Her).
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
from django.conf import settings

from hermitian_periods.exceptions import BudgetExceeded, InvalidInput
from quadratic_symbols.residue import ResidueRing

logger = logging.getLogger('local_densities')

ALPHA, BETA, UPSILON = 'alpha', 'beta', 'upsilon'
KINDS = (ALPHA, BETA, UPSILON)

# int64 weights stay exact below this many candidate matrices
_EXACT_LIMIT = 2 ** 62


def _chunk_size() -> int:
    return settings.LATTICE_SETTINGS['CHUNK_SIZE']


# -- value codes --------------------------------------------------------------

class CodeSpace:
    """Mixed-radix codes of l x l Hermitian matrices modulo p^a \\tilde Her or p^a Her."""

    def __init__(self, ctx, l: int, a: int, tilde: bool = True):
        self.ctx = ctx
        self.l = l
        self.tilde = tilde
        self.exponent = a + ctx.e if tilde else a
        self.modulus = ctx.p ** self.exponent
        self.ring = ResidueRing(ctx, self.exponent)
        self.digits = l * l
        self.radix = np.array([self.modulus ** k for k in range(self.digits)], dtype=np.int64)
        if self.modulus ** self.digits > _EXACT_LIMIT:
            raise BudgetExceeded(f"value codes for l={l} at {ctx.label}", self.modulus ** self.digits, _EXACT_LIMIT)
        # sqrt(-D) = 2w - t
        self._phi = (-ctx.field.t % self.modulus, 2 % self.modulus)

    @property
    def size(self) -> int:
        return self.modulus ** self.digits

    def _off_digits(self, value):
        if self.tilde:
            value = self.ring.mul(value, self._phi)
        return value[0] % self.modulus, value[1] % self.modulus

    def encode(self, values):
        """values[i][j] for i <= j as coordinate pairs; returns int64 codes."""
        M = self.modulus
        digits = []
        for i in range(self.l):
            digits.append(np.asarray(values[i][i][0]) % M)
        for i in range(self.l):
            for j in range(i + 1, self.l):
                a, b = self._off_digits(values[i][j])
                digits.append(np.asarray(a))
                digits.append(np.asarray(b))
        code = np.zeros(np.broadcast(*digits).shape, dtype=np.int64)
        for k, d in enumerate(digits):
            code = code + (d.astype(np.int64) % M) * self.radix[k]
        return code

    def target(self, T) -> int:
        ctx = self.ctx
        values = [[None] * self.l for _ in range(self.l)]
        for i in range(self.l):
            for j in range(i, self.l):
                values[i][j] = ctx.reduce(T.entries[i][j], self.exponent)
        return int(self.encode(values))

    def split(self, codes):
        """Digit matrix (n, digits) of a code array."""
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[:, None] // self.radix[None, :]) % self.modulus

    def combine(self, digit_matrix):
        return (digit_matrix % self.modulus) @ self.radix

    def subtract(self, target: int, codes):
        t = self.split(np.array([target]))[0]
        return self.combine(t[None, :] - self.split(codes))


# -- row spaces over the residue field ---------------------------------------

class SpanTracker:
    """
    Ids of the row space of X mod the maximal ideal: for l = 1 zero/non-zero,
    for l = 2 zero, one of the q+1 lines, or the whole plane.  Split primes
    track both residue components.  With ``primitive=False`` every id is 0.
    """

    def __init__(self, ctx, l: int, primitive: bool):
        self.ctx = ctx
        self.l = l
        self.primitive = primitive
        if not primitive:
            self.size, self.full = 1, 0
            self.join = np.zeros((1, 1), dtype=np.int64)
            return
        if l > 2:
            raise InvalidInput(f"primitive counts are implemented for l <= 2, got l={l}")
        p = ctx.p
        self.q = p * p if ctx.is_inert else p
        if ctx.is_inert:
            self._tables = _inert_tables(ctx)
        elif ctx.is_ramified:
            pi = ctx.prime_element
            c0 = int(pi.a) % p
            c1 = int(pi.b) % p
            self._omega0 = (-c0 * pow(c1, -1, p)) % p
        base_size = 2 if l == 1 else self.q + 3
        base_full = 1 if l == 1 else self.q + 2
        base_join = np.empty((base_size, base_size), dtype=np.int64)
        for x in range(base_size):
            for y in range(base_size):
                if x == 0:
                    base_join[x, y] = y
                elif y == 0 or x == y:
                    base_join[x, y] = x
                else:
                    base_join[x, y] = base_full
        self._base_size = base_size
        if ctx.is_split:
            n = base_size
            self.size = n * n
            self.full = base_full * n + base_full
            ids = np.arange(self.size)
            first, second = ids // n, ids % n
            self.join = base_join[first[:, None], first[None, :]] * n + base_join[second[:, None], second[None, :]]
        else:
            self.size = base_size
            self.full = base_full
            self.join = base_join

    # residue field elements as indices 0..q-1 with 0 the zero element

    def _residues(self, a, b):
        p = self.ctx.p
        if self.ctx.is_inert:
            return [(a % p) + p * (b % p)]
        if self.ctx.is_ramified:
            return [(a + b * self._omega0) % p]
        r = self.ctx.root % p
        return [(a + b * r) % p, (a + b * ((self.ctx.field.t - r) % p)) % p]

    def _row_id(self, residues):
        """Line id of a row of residue-field indices."""
        if self.l == 1:
            return (residues[0] != 0).astype(np.int64)
        u, v = residues
        q = self.q
        if self.ctx.is_inert:
            mul, inv = self._tables
            ratio = mul[u, inv[v]]
        else:
            p = self.ctx.p
            inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
            ratio = (u * inv[v]) % p
        ids = np.where(v != 0, 1 + ratio, np.where(u != 0, q + 1, 0))
        return ids.astype(np.int64)

    def block_ids(self, rows):
        """rows: list of rows, each a list of l coordinate pairs; returns span ids."""
        if not self.primitive:
            shape = np.asarray(rows[0][0][0]).shape
            return np.zeros(shape, dtype=np.int64)
        n_comp = 2 if self.ctx.is_split else 1
        per_component = []
        for c in range(n_comp):
            span = None
            for row in rows:
                residues = [self._residues(a, b)[c] for a, b in row]
                rid = self._row_id(residues)
                span = rid if span is None else self._base_join_of(span, rid)
            per_component.append(span)
        if n_comp == 1:
            return per_component[0]
        return per_component[0] * self._base_size + per_component[1]

    def _base_join_of(self, x, y):
        full = 1 if self.l == 1 else self.q + 2
        return np.where(x == 0, y, np.where((y == 0) | (x == y), x, full))


@lru_cache(maxsize=None)
def _inert_tables_cached(D: int, p: int):
    from quadratic_symbols.local import splitting_type
    ctx = splitting_type(D, p)
    ring = ResidueRing(ctx, 1)
    q = p * p
    idx = np.arange(q, dtype=np.int64)
    a, b = idx % p, idx // p
    A = (np.repeat(a, q), np.repeat(b, q))
    B = (np.tile(a, q), np.tile(b, q))
    prod = ring.mul(A, B)
    mul = (prod[0] + p * prod[1]).reshape(q, q)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv[x] = int(np.nonzero(mul[x] == 1)[0][0])
    return mul, inv


def _inert_tables(ctx):
    return _inert_tables_cached(ctx.D, ctx.p)


# -- blocks -------------------------------------------------------------------

def connected_blocks(S):
    """Index sets of the connected components of the non-zero pattern of S."""
    m = S.m
    seen = set()
    blocks = []
    for start in range(m):
        if start in seen:
            continue
        stack, block = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(m):
                if j not in seen and not S.entries[i][j].is_zero():
                    seen.add(j)
                    stack.append(j)
        blocks.append(sorted(block))
    return blocks


class _Block:
    def __init__(self, S, rows, space: CodeSpace, spans: SpanTracker, level: int):
        self.rows = rows
        self.k = len(rows)
        self.space = space
        self.spans = spans
        self.level = level
        ring = space.ring
        self.entries = [
            [S.ctx.reduce(S.entries[r][s], ring.level) for s in rows]
            for r in rows
        ]
        self.base = S.ctx.p ** level
        self.coords = 2 * self.k * space.l
        self.total = self.base ** self.coords

    def key(self):
        return (tuple(tuple(e) for row in self.entries for e in row), self.level, self.space.l)

    def _matrix(self, start: int, stop: int):
        idx = np.arange(start, stop, dtype=np.int64)
        coords = []
        for _ in range(self.coords):
            idx, digit = np.divmod(idx, self.base)
            coords.append(digit)
        l = self.space.l
        X = [[None] * l for _ in range(self.k)]
        for r in range(self.k):
            for i in range(l):
                c = 2 * (r * l + i)
                X[r][i] = (coords[c], coords[c + 1])
        return X

    def values(self, X):
        ring = self.space.ring
        l = self.space.l
        values = [[None] * l for _ in range(l)]
        for i in range(l):
            for j in range(i, l):
                total = None
                for r in range(self.k):
                    left = ring.conj(X[r][i])
                    for s in range(self.k):
                        entry = self.entries[r][s]
                        if entry == (0, 0):
                            continue
                        term = ring.mul(left, ring.mul(entry, X[s][j]))
                        total = term if total is None else ring.add(total, term)
                if total is None:
                    zero = np.zeros_like(X[0][0][0])
                    total = (zero, zero)
                values[i][j] = total
        return values

    def chunks(self):
        step = _chunk_size()
        for start in range(0, self.total, step):
            X = self._matrix(start, min(start + step, self.total))
            codes = self.space.encode(self.values(X))
            spans = self.spans.block_ids(X)
            yield codes, spans

    def histogram(self):
        """(keys, weights) with key = code * span_size + span."""
        keys, weights = [], []
        for codes, spans in self.chunks():
            uniq, counts = np.unique(codes * self.spans.size + spans, return_counts=True)
            keys.append(uniq)
            weights.append(counts.astype(np.int64))
        return _reduce(np.concatenate(keys), np.concatenate(weights))


def _reduce(keys, weights):
    uniq, inverse = np.unique(keys, return_inverse=True)
    out = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(out, inverse, weights)
    return uniq, out


def _convolve(first, second, space: CodeSpace, spans: SpanTracker):
    k1, w1 = first
    k2, w2 = second
    n = spans.size
    c1, s1 = np.divmod(k1, n)
    c2, s2 = np.divmod(k2, n)
    d2 = space.split(c2)
    step = max(1, _chunk_size() // max(len(k2), 1))
    keys, weights = [], []
    for start in range(0, len(k1), step):
        d1 = space.split(c1[start:start + step])
        summed = (d1[:, None, :] + d2[None, :, :]) % space.modulus
        codes = summed @ space.radix
        joined = spans.join[s1[start:start + step][:, None], s2[None, :]]
        chunk_keys = (codes * n + joined).ravel()
        chunk_weights = (w1[start:start + step][:, None] * w2[None, :]).ravel()
        uk, uw = _reduce(chunk_keys, chunk_weights)
        keys.append(uk)
        weights.append(uw)
    return _reduce(np.concatenate(keys), np.concatenate(weights))


def _match(rest, last, target: int, space: CodeSpace, spans: SpanTracker) -> int:
    kr, wr = rest
    kl, wl = last
    n = spans.size
    cr, sr = np.divmod(kr, n)
    cl, sl = np.divmod(kl, n)
    need = space.subtract(target, cr)
    total = 0
    for s in np.unique(sl):
        ok = spans.join[sr, s] == spans.full
        if not ok.any():
            continue
        mask = sl == s
        codes = cl[mask]
        w = wl[mask]
        order = np.argsort(codes)
        codes, w = codes[order], w[order]
        wanted = need[ok]
        pos = np.minimum(np.searchsorted(codes, wanted), len(codes) - 1)
        hit = codes[pos] == wanted
        if hit.any():
            total += int(np.dot(wr[ok][hit].astype(object), w[pos[hit]].astype(object)))
    return total


# -- public counting ----------------------------------------------------------

def counting_level(S, a: int, kind: str) -> int:
    """The level L with X mod p^L determining S[X] mod the congruence lattice."""
    if kind == UPSILON:
        return a
    return a if S.in_tilde_her() else a + S.ctx.e


def count(S, T, a: int, kind: str = ALPHA) -> int:
    """Number of X mod p^L (L = counting_level) satisfying the congruence of ``kind``."""
    if kind not in KINDS:
        raise InvalidInput(f"unknown density kind {kind!r}")
    ctx = S.ctx
    if T.ctx.label != ctx.label:
        raise InvalidInput(f"S and T live at different primes: {ctx.label} / {T.ctx.label}")
    if a < 0:
        raise InvalidInput(f"level must be non-negative, got {a}")
    m, l = S.m, T.m
    L = counting_level(S, a, kind)
    if (ctx.p ** (2 * L)) ** (m * l) > _EXACT_LIMIT:
        raise BudgetExceeded(f"count {kind} at level {a}", (ctx.p ** (2 * L)) ** (m * l), _EXACT_LIMIT)
    space = CodeSpace(ctx, l, a, tilde=(kind != UPSILON))
    spans = SpanTracker(ctx, l, primitive=(kind == BETA))
    if space.size * spans.size > _EXACT_LIMIT:
        raise BudgetExceeded(f"keys of {kind} histograms at {ctx.label}", space.size * spans.size, _EXACT_LIMIT)
    target = space.target(T)

    blocks = [_Block(S, rows, space, spans, L) for rows in connected_blocks(S)]
    for block in blocks:
        if block.total > ctx.budget:
            raise BudgetExceeded(f"block of size {block.k} at level {L}, {ctx.label}", block.total, ctx.budget)
    blocks.sort(key=lambda b: b.total)
    last = blocks.pop()

    if not blocks:
        found = 0
        for codes, span_ids in last.chunks():
            found += int(np.count_nonzero((codes == target) & (spans.join[0, span_ids] == spans.full)))
        logger.debug(f"{kind} count at {ctx.label}, a={a}, L={L}: {found} (single block)")
        return found

    cache = {}
    rest = (np.array([0], dtype=np.int64), np.array([1], dtype=np.int64))
    for block in blocks:
        key = block.key()
        if key not in cache:
            cache[key] = block.histogram()
        rest = _convolve(rest, cache[key], space, spans)
    key = last.key()
    last_hist = cache[key] if key in cache else last.histogram()
    found = _match(rest, last_hist, target, space, spans)
    logger.debug(f"{kind} count at {ctx.label}, a={a}, L={L}: {found} ({len(blocks) + 1} blocks)")
    return found


def count_A(S, T, a: int) -> int:
    return count(S, T, a, ALPHA)


def count_B(S, T, a: int) -> int:
    return count(S, T, a, BETA)


def count_Upsilon(S, T, a: int) -> int:
    return count(S, T, a, UPSILON)


# -- strata of square solutions -----------------------------------------------

def _vp(x, p: int, cap: int):
    v = np.zeros(np.shape(x), dtype=np.int64)
    for k in range(1, cap + 1):
        v += (x % p ** k == 0)
    return v


class _StratumReader:
    """Elementary divisor type of square X mod p^L, vectorized."""

    def __init__(self, ctx, ring: ResidueRing):
        self.ctx = ctx
        self.ring = ring
        self.L = ring.level
        if ctx.is_ramified:
            pi = ctx.prime_element
            M = ring.modulus
            self._c0 = int(pi.a) % M
            self._c1_inv = pow(int(pi.b) % M, -1, M)

    def components(self, x):
        """Coordinates whose valuations are read: one field element or two integers."""
        ctx = self.ctx
        M = self.ring.modulus
        a, b = x
        if ctx.is_split:
            r = ctx.root % M
            return [(a + b * r) % M, (a + b * ((ctx.field.t - r) % M)) % M]
        return [x]

    def valuation(self, x):
        ctx, p, L = self.ctx, self.ctx.p, self.L
        if ctx.is_split:
            return _vp(x, p, L)
        a, b = x
        if ctx.is_inert:
            return np.minimum(_vp(a, p, L), _vp(b, p, L))
        M = self.ring.modulus
        b1 = (b * self._c1_inv) % M
        a1 = (a - b1 * self._c0) % M
        return np.minimum(2 * _vp(a1, p, L), 2 * _vp(b1, p, L) + 1)

    def _det(self, X, split_index=None):
        if split_index is not None:
            M = self.ring.modulus
            c = [[self.components(X[r][s])[split_index] for s in range(2)] for r in range(2)]
            return (c[0][0] * c[1][1] - c[0][1] * c[1][0]) % M
        ring = self.ring
        return ring.sub(ring.mul(X[0][0], X[1][1]), ring.mul(X[0][1], X[1][0]))

    def read(self, X, m: int, split_index=None):
        """Stratum index per matrix, -1 outside every stratum."""
        def val(x):
            if split_index is None:
                return self.valuation(x)
            return self.valuation(self.components(x)[split_index])

        if m == 1:
            v = val(X[0][0])
            return np.where(v <= 1, v, -1)
        entries = [val(X[r][s]) for r in range(2) for s in range(2)]
        e1 = np.minimum(np.minimum(entries[0], entries[1]), np.minimum(entries[2], entries[3]))
        d = self._det(X, split_index)
        vdet = self.valuation(d)
        stratum = np.where((e1 == 0) & (vdet <= 1), vdet, -1)
        return np.where((e1 == 1) & (vdet == 2), 2, stratum)


def partial_level(S, a: int) -> int:
    """Counting level for stratum-resolved counts of degree S.m."""
    ctx = S.ctx
    need = 1 if ctx.is_ramified else 2
    if S.m == 2:
        need += 1
    return max(counting_level(S, a, ALPHA), need)


def count_partial(S, T, a: int, i):
    """
    Number of X mod p^L (L = partial_level) with S[X] = T mod p^a \\tilde Her
    and X in the stratum i; returns (count, L).
    """
    ctx = S.ctx
    m = S.m
    if T.m != m:
        raise InvalidInput("stratum counts need S and T of the same degree")
    if m > 2:
        raise InvalidInput(f"stratum counts are implemented for degree <= 2, got {m}")
    L = partial_level(S, a)
    space = CodeSpace(ctx, m, a, tilde=True)
    spans = SpanTracker(ctx, m, primitive=False)
    target = space.target(T)
    block = _Block(S, list(range(m)), space, spans, L)
    if block.total > ctx.budget:
        raise BudgetExceeded(f"stratum count of degree {m} at level {L}, {ctx.label}", block.total, ctx.budget)
    reader = _StratumReader(ctx, ResidueRing(ctx, L))
    step = _chunk_size()
    found = 0
    for start in range(0, block.total, step):
        X = block._matrix(start, min(start + step, block.total))
        hit = block.space.encode(block.values(X)) == target
        if not hit.any():
            continue
        X = [[(x[0][hit], x[1][hit]) for x in row] for row in X]
        if ctx.is_split:
            first = reader.read(X, m, split_index=0)
            second = reader.read(X, m, split_index=1)
            found += int(np.count_nonzero((first == i[0]) & (second == i[1])))
        else:
            found += int(np.count_nonzero(reader.read(X, m) == i))
    logger.debug(f"stratum {i} count at {ctx.label}, a={a}, L={L}: {found}")
    return found, L

"""Straight-line reference implementation of the smoothed n-gram recursion.

Used only as a test oracle.  Deliberately independent of the package's
internals: grams are tuples, per-context statistics are recomputed by
scanning the raw count dictionaries on every query, and the conditional
probability is a direct recursive transcription of the formulas.  Slow and
simple on purpose.
"""

import math

START = "\x02"
END = "\x03"
UNK = "\x01"

DISCOUNT_FLOOR = 1e-6
FALLBACK = (0.5, 1.0, 1.5)


def estimate(n1, n2, n3, n4):
    if n1 == 0 or n2 == 0 or n3 == 0:
        return FALLBACK
    y = n1 / (n1 + 2 * n2)
    d1 = 1.0 - 2.0 * y * n2 / n1
    d2 = 2.0 - 3.0 * y * n3 / n2
    d3 = 3.0 - 4.0 * y * n4 / n3
    return (
        min(max(d1, DISCOUNT_FLOOR), 1.0),
        min(max(d2, DISCOUNT_FLOOR), 2.0),
        min(max(d3, DISCOUNT_FLOOR), 3.0),
    )


class ReferenceModel:
    def __init__(self, texts, max_order):
        self.max_order = max_order
        self.raw = {}
        for n in range(1, max_order + 2):
            counts = {}
            for t in texts:
                symbols = [START] * (n - 1) + list(t) + [END]
                for i in range(len(symbols) - n + 1):
                    g = tuple(symbols[i : i + n])
                    counts[g] = counts.get(g, 0) + 1
            self.raw[n] = counts
        self.cont = {}
        for n in range(1, max_order + 1):
            cont = {}
            for g in self.raw[n + 1]:
                cont[g[1:]] = cont.get(g[1:], 0) + 1
            self.cont[n] = cont
        self.discounts = {}
        for n in range(1, max_order + 1):
            hist = {}
            for c in self.raw[n].values():
                hist[c] = hist.get(c, 0) + 1
            self.discounts[n] = estimate(
                hist.get(1, 0), hist.get(2, 0), hist.get(3, 0), hist.get(4, 0)
            )
        self.vocab = {g[0] for g in self.raw[1]}

    def _discount(self, order, count):
        if count == 0:
            return 0.0
        d1, d2, d3 = self.discounts[order]
        if count == 1:
            return d1
        if count == 2:
            return d2
        return d3

    def _usage(self, order):
        return self.raw[order] if order == self.max_order else self.cont[order]

    def _prob(self, ctx, symbol, order):
        if order == 0:
            return 1.0 / (len(self.vocab) + 1)
        usage = self._usage(order)
        lower = self._prob(ctx[1:], symbol, order - 1)
        total = sum(c for g, c in usage.items() if g[:-1] == ctx)
        if total == 0:
            return lower
        count = usage.get(ctx + (symbol,), 0)
        n1 = sum(1 for g, c in usage.items() if g[:-1] == ctx and c == 1)
        n2 = sum(1 for g, c in usage.items() if g[:-1] == ctx and c == 2)
        n3p = sum(1 for g, c in usage.items() if g[:-1] == ctx and c >= 3)
        d1, d2, d3 = self.discounts[order]
        gamma = (d1 * n1 + d2 * n2 + d3 * n3p) / total
        return (count - self._discount(order, count)) / total + gamma * lower

    def _map(self, symbol):
        return symbol if symbol in self.vocab else UNK

    def p_kn(self, context, symbol, order):
        ctx = tuple(
            ch if (ch == START or ch in self.vocab) else UNK for ch in context
        )
        return self._prob(ctx, self._map(symbol), order)

    def log_p_text(self, text):
        mapped = [self._map(ch) for ch in text]
        symbols = [START] * (self.max_order - 1) + mapped + [END]
        total = 0.0
        for i in range(len(mapped) + 1):
            window = symbols[i : i + self.max_order]
            total += math.log(self._prob(tuple(window[:-1]), window[-1], self.max_order))
        return total

#!/usr/bin/env python3
"""Computes the frozen expected values used by the metric unit tests.

Everything here is evaluated with exact rational arithmetic (fractions) and
printed at full double precision, so the numbers pasted into the C++ tests
are independent of any C++ code path.

BLEU (sentence level, on whitespace-joined token lists):
  - clipped n-gram precisions for n = 1..4; orders with no possible n-grams
    (hypothesis shorter than n) are skipped from the geometric mean
  - a clipped match count of zero is replaced by the additive floor 0.1
  - brevity penalty exp(min(0, 1 - r/c))

chrF (character n-grams, n = 1..6, beta = 2):
  - per-order precision and recall, arithmetically averaged over the orders
    where both strings have at least one n-gram
  - F = (1 + beta^2) * P * R / (beta^2 * P + R), 0 when P + R == 0
"""

import math
from fractions import Fraction


def ngrams(seq, n):
    return [tuple(seq[i:i + n]) for i in range(len(seq) - n + 1)]


def clipped_matches(hyp_ngrams, ref_ngrams):
    matches = 0
    pool = list(ref_ngrams)
    for g in hyp_ngrams:
        if g in pool:
            pool.remove(g)
            matches += 1
    return matches


def bleu(hyp_tokens, ref_tokens):
    logs = []
    for n in range(1, 5):
        hyp_n = ngrams(hyp_tokens, n)
        if not hyp_n:
            continue
        ref_n = ngrams(ref_tokens, n)
        m = clipped_matches(hyp_n, ref_n)
        num = Fraction(m) if m > 0 else Fraction(1, 10)
        logs.append(math.log(num / len(hyp_n)))
    geo = math.exp(sum(logs) / len(logs)) if logs else 0.0
    c, r = len(hyp_tokens), len(ref_tokens)
    bp = 1.0 if c >= r else math.exp(1 - Fraction(r, c))
    return bp * geo


def chrf(hyp, ref, beta=2):
    p_sum, r_sum, orders = Fraction(0), Fraction(0), 0
    for n in range(1, 7):
        hyp_n = ngrams(hyp, n)
        ref_n = ngrams(ref, n)
        if not hyp_n or not ref_n:
            continue
        m = clipped_matches(hyp_n, ref_n)
        p_sum += Fraction(m, len(hyp_n))
        r_sum += Fraction(m, len(ref_n))
        orders += 1
    if orders == 0:
        return 0.0
    p, r = p_sum / orders, r_sum / orders
    if p + r == 0:
        return 0.0
    f = (1 + beta * beta) * p * r / (beta * beta * p + r)
    return float(f)


def show(label, value):
    print(f"{label}: {value!r}")


tok = lambda s: s.split()

show("bleu identical 4 tokens", bleu(tok("a b c d"), tok("a b c d")))
show("bleu abc/abd", bleu(tok("a b c"), tok("a b d")))
show("bleu disjoint 5/5", bleu(tok("a b c d e"), tok("v w x y z")))
show("bleu prefix 3/5", bleu(tok("a b q"), tok("a b c d e")))
show("bleu fsw moved symbol",
     bleu(["M518x529", "S14c20481x471", "S27106503x489"],
          ["M518x529", "S14c20481x471", "S27106504x489"]))
show("bleu box-only vs box-only same", bleu(["M500x500"], ["M500x500"]))
show("bleu box-only vs other box", bleu(["M500x500"], ["M510x510"]))

show("chrf ab/ba", chrf("ab", "ba"))
show("chrf abc/abd", chrf("abc", "abd"))
show("chrf fsw one digit", chrf("M518x529S14c20481x471", "M518x529S14c20481x472"))
show("chrf fsw vs box-only", chrf("M518x529S14c20481x471", "M518x529"))
show("chrf short vs long", chrf("abc", "abcdefgh"))

"""Reference implementations written straight from the metric definitions.

These deliberately share no code with corelab.metrics: plain loops, the
statistics module and numpy.corrcoef.
"""

import statistics

import numpy as np

IND = None


def tagged(tags):
    return [t for t in tags if t is not IND]


def counts(tags):
    out = {}
    for t in tagged(tags):
        out[t] = out.get(t, 0) + 1
    return out


def cmi(tags):
    n, c = len(tags), counts(tags)
    u = n - sum(c.values())
    if n == u:
        return 0.0
    return (n - u - max(c.values())) / (n - u)


def m_index(tags):
    c = counts(tags)
    total = sum(c.values())
    if len(c) < 2:
        return 0.0
    simpson = sum((w / total) ** 2 for w in c.values())
    return (1 - simpson) / ((len(c) - 1) * simpson)


def i_index(tags):
    seq = tagged(tags)
    if len(seq) < 2:
        return 0.0
    return sum(1 for i in range(len(seq) - 1) if seq[i] != seq[i + 1]) / (len(seq) - 1)


def span_lengths(tags):
    seq = tagged(tags)
    out = []
    for i, t in enumerate(seq):
        if i and seq[i - 1] == t:
            out[-1] += 1
        else:
            out.append(1)
    return out


def burstiness(tags):
    lengths = span_lengths(tags)
    if not lengths:
        return None
    mu, sigma = statistics.fmean(lengths), statistics.pstdev(lengths)
    return (sigma - mu) / (sigma + mu)


def memory(tags):
    lengths = span_lengths(tags)
    if len(lengths) < 3:
        return None
    a, b = np.array(lengths[:-1], float), np.array(lengths[1:], float)
    if a.std() == 0 or b.std() == 0:
        return None
    return float(np.corrcoef(a, b)[0, 1])


def matrix(tags, prompt):
    c = counts(tags)
    if not c:
        return None
    best = max(c.values())
    tied = [k for k, v in c.items() if v == best]
    if prompt in tied:
        return prompt
    if "en" in tied:
        return "en"
    return min(tied)

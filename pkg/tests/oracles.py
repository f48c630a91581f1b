"""Independent oracles for the analytic engine.

Exhaustive enumeration over half-aisle assignments for deterministic order
sizes, with exact rational conditional factors for the continuous parts:

  max of n uniforms:          E[A | n] = n/(n+1),  E[A^2 | n] = n/(n+2)
  largest of the n+1 spacings E[D | n] = H(n+1)/(n+1),
  of n uniforms:              E[D^2 | n] = (H(n+1)^2 + H2(n+1)) / ((n+1)(n+2))

These share no code with the package: every expectation is a direct sum over
k^m (or (2k)^m) equally likely assignments.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from pickroute.heuristics import HEURISTICS


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def harmonic2(n: int) -> Fraction:
    return sum((Fraction(1, i * i) for i in range(1, n + 1)), Fraction(0))


def e_max(n: int) -> Fraction:
    return Fraction(n, n + 1)


def e_max2(n: int) -> Fraction:
    return Fraction(n, n + 2)


def e_gap(n: int) -> Fraction:
    return harmonic(n + 1) / (n + 1)


def e_gap2(n: int) -> Fraction:
    return (harmonic(n + 1) ** 2 + harmonic2(n + 1)) / ((n + 1) * (n + 2))


def iter_half_assignments(k: int, m: int):
    """(probability, per-half-aisle counts) over all (2k)^m assignments."""
    merged = Counter()
    for assignment in itertools.product(range(2 * k), repeat=m):
        merged[tuple(sorted(Counter(assignment).items()))] += 1
    total = (2 * k) ** m
    for key, count in merged.items():
        halves = [0] * (2 * k)
        for idx, n in key:
            halves[idx] = n
        yield Fraction(count, total), halves


def iter_aisle_assignments(k: int, m: int):
    """(probability, per-aisle counts) over all k^m assignments."""
    merged = Counter()
    for assignment in itertools.product(range(k), repeat=m):
        merged[tuple(sorted(Counter(assignment).items()))] += 1
    total = k ** m
    for key, count in merged.items():
        counts = [0] * k
        for idx, n in key:
            counts[idx] = n
        yield Fraction(count, total), counts


def occupied(counts):
    return [i + 1 for i, n in enumerate(counts) if n > 0]


def enum_discrete(k: int, m: int) -> dict:
    """Exact discrete quantities: kplus moments, occupancy pmf, odd indicator,
    pair event probabilities and the contiguous-set probabilities."""
    kp_mean = kp_sec = Fraction(0)
    pmf = [Fraction(0)] * (k + 1)
    iodd = Fraction(0)
    pair = {}
    contiguous = [Fraction(0)] * (k + 1)
    for p, counts in iter_aisle_assignments(k, m):
        occ = occupied(counts)
        kp, km = max(occ), min(occ)
        kp_mean += p * kp
        kp_sec += p * kp * kp
        pmf[len(occ)] += p
        if len(occ) % 2 == 1:
            iodd += p
        if kp > km:
            pair[kp - km] = pair.get(kp - km, Fraction(0)) + p
        if occ == list(range(1, len(occ) + 1)):
            contiguous[len(occ)] += p
    # every span-d pair position is equally likely: per-position probability
    pair_prob = {d: pair[d] / (k - d) for d in pair}
    return {
        "kp_mean": kp_mean,
        "kp_sec": kp_sec,
        "m_kp": m * kp_mean,
        "pmf": pmf[1:],
        "iodd": iodd,
        "pair_prob": pair_prob,
        "contiguous": contiguous[1:],
    }


def enum_moment_report(k: int, m: int, l, wa, v, ep, ep2) -> dict:
    """Exact (E[T], E[T^2]) per heuristic for det(m) orders."""
    tl = Fraction(l) / Fraction(v)
    twa = Fraction(wa) / Fraction(v)
    acc = {h: [Fraction(0), Fraction(0)] for h in HEURISTICS}
    for p, halves in iter_half_assignments(k, m):
        counts = [halves[2 * i] + halves[2 * i + 1] for i in range(k)]
        occ = occupied(counts)
        kp, km = max(occ), min(occ)
        cross = 2 * twa * (kp - 1)

        def add(h, mean_parts, sec_parts, scale):
            w1 = scale * sum(mean_parts, Fraction(0))
            e2 = sum(sec_parts, Fraction(0))
            for i, a in enumerate(mean_parts):
                for j, b in enumerate(mean_parts):
                    if i != j:
                        e2 += a * b
            w2 = scale * scale * e2
            base = 2 * tl if h in ("midpoint", "largest-gap") else Fraction(0)
            t1 = w1 + base + cross
            t2 = (w2 + base * base + cross * cross
                  + 2 * w1 * base + 2 * w1 * cross + 2 * base * cross)
            acc[h][0] += p * t1
            acc[h][1] += p * t2

        add("return", [e_max(n) for n in counts], [e_max2(n) for n in counts], 2 * tl)

        mid_means, mid_secs = [], []
        gap_means, gap_secs = [], []
        for aisle in range(km + 1, kp):
            mid_means += [e_max(halves[2 * (aisle - 1)]), e_max(halves[2 * aisle - 1])]
            mid_secs += [e_max2(halves[2 * (aisle - 1)]), e_max2(halves[2 * aisle - 1])]
            n = counts[aisle - 1]
            gap_means.append(1 - e_gap(n))
            gap_secs.append(1 - 2 * e_gap(n) + e_gap2(n))
        add("midpoint", mid_means, mid_secs, tl)
        add("largest-gap", gap_means, gap_secs, 2 * tl)

        si = len(occ)
        odd = si % 2
        n_last = counts[kp - 1]
        am, a2 = e_max(n_last), e_max2(n_last)
        w1 = tl * (si + odd * (2 * am - 1))
        w2 = tl * tl * (si * si + 2 * si * odd * (2 * am - 1) + odd * (4 * a2 - 4 * am + 1))
        acc["s-shaped"][0] += p * (w1 + cross)
        acc["s-shaped"][1] += p * (w2 + 2 * w1 * cross + cross * cross)

    out = {}
    ep, ep2 = Fraction(ep), Fraction(ep2)
    for h in HEURISTICS:
        travel1, travel2 = acc[h]
        e_t = m * ep + travel1
        e_t2 = m * ep2 + m * (m - 1) * ep * ep + 2 * m * ep * travel1 + travel2
        out[h] = (float(e_t), float(e_t2))
    return out


def enum_conditional(k: int, m: int, d: int) -> dict:
    """Exact conditional quantities on the event {kplus = d+1, kminus = 1},
    for the interior aisle 2 (and aisle 3 for cross terms when d >= 3)."""
    acc = {q: Fraction(0) for q in
           ("prob", "af_mean", "af_sec", "af_cross", "af_n_same", "af_n_other",
            "af_n_end", "gap_mean", "gap_sec", "gap_cross", "gap_n_same",
            "gap_n_other", "gap_n_end")}
    for p, halves in iter_half_assignments(k, m):
        counts = [halves[2 * i] + halves[2 * i + 1] for i in range(k)]
        occ = occupied(counts)
        if max(occ) != d + 1 or min(occ) != 1:
            continue
        acc["prob"] += p
        nf, nb = halves[2], halves[3]
        acc["af_mean"] += p * e_max(nf)
        acc["af_sec"] += p * e_max2(nf)
        acc["af_cross"] += p * e_max(nf) * e_max(nb)
        acc["af_n_same"] += p * nf * e_max(nf)
        acc["af_n_other"] += p * nb * e_max(nf)
        acc["af_n_end"] += p * halves[0] * e_max(nf)
        n2 = counts[1]
        g1 = 1 - e_gap(n2)
        acc["gap_mean"] += p * g1
        acc["gap_sec"] += p * (1 - 2 * e_gap(n2) + e_gap2(n2))
        acc["gap_n_same"] += p * n2 * g1
        acc["gap_n_end"] += p * counts[0] * g1
        if d >= 3:
            acc["gap_cross"] += p * g1 * (1 - e_gap(counts[2]))
            acc["gap_n_other"] += p * counts[2] * g1
    return acc

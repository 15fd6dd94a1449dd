"""Exact mutual-information oracle for the local-CSIRT input distributions.

Each subregion's scheme is instantiated as a physical stack of bit levels
(uniform bits, Bernoulli levels, and correlated pairs of levels).  The rate
of user 1 is

    (1 - p) H(X1 | B1 = 0) + p [H(Y1 | B1 = 1) - H(S_{n_c} X2)]

where the interferer's input is averaged over its own state.  Output
entropies are computed exactly: output rows are split into independent
groups (connected through shared input components) and each group's joint
pmf is enumerated.

All rates are homogeneous of degree one in (n_d, n_c), so the gains are
first reduced to the smallest integer pair on which every level width is
integral and the result is scaled back.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd

import numpy as np

from ..errors import DomainError
from ..ldm import ChannelConfig
from .params import CsirtParams, Subregion, check_subregion
from .rates import RatePair

__all__ = ["layout", "mi_oracle", "user_rate_exact", "paired_conditional_entropy"]

_MAX_GROUP_ROWS = 60
_MAX_COMBOS = 1 << 22


def layout(sub: Subregion, nd, nc) -> list[tuple[str, Fraction, object]]:
    """Level stack of one transmitter, most significant level first.

    Entries are (kind, width, tag).  Kinds: "U" uniform, "P"/"T" Bernoulli
    levels switching with the own state, "H" a level silenced under
    interference, "A"/"E" halves of paired levels whose tag is (name, half).
    """
    nd, nc = Fraction(nd), Fraction(nc)
    s, t = nd - nc, nc - nd
    if sub is Subregion.WI:
        segs = [("U", s, None), ("P", 2 * nc - nd, None), ("U", s, None)]
    elif sub in (Subregion.MI_a, Subregion.MI_b):
        w1, w2 = (3 * nc - 2 * nd) / 2, (4 * nd - 5 * nc) / 2
        segs = [("A", w1, ("a", 0)), ("U", w2, None), ("P", w1, None), ("A", w1, ("a", 1)),
                ("T", w2, None), ("H", w1, None), ("U", s, None)]
    elif sub is Subregion.MI_c:
        a = (5 * nc - 4 * nd) / 2
        segs = [("A", s, ("a", 0)), ("E", a, ("e", 0)), ("P", s, None), ("E", a, ("e", 1)),
                ("A", s, ("a", 1)), ("H", s, None), ("U", s, None)]
    elif sub is Subregion.MI_d:
        segs = [("E", s, ("e", 0)), ("P", 6 * nc - 5 * nd, None), ("A", s, ("a", 0)),
                ("A", s, ("a", 1)), ("E", s, ("e", 1)), ("H", s, None), ("U", s, None)]
    elif sub is Subregion.SI_a:
        segs = [("E", t, ("e", 0)), ("P", 5 * nd - 4 * nc, None), ("E", t, ("e", 1)),
                ("A", t, ("a", 0)), ("A", t, ("a", 1))]
    elif sub is Subregion.SI_b:
        h, a = (5 * nc - 6 * nd) / 2, 2 * nd - 3 * nc / 2
        segs = [("U", h, None), ("A", a, ("a", 0)), ("P", 3 * nd - 2 * nc, None),
                ("A", a, ("a", 1)), ("U", h, None)]
    elif sub is Subregion.SI_c:
        u, a = nd - nc / 2, 3 * nc / 2 - 2 * nd
        segs = [("U", u, None), ("A", a, ("a", 0)), ("P", 3 * nd - 2 * nc, None),
                ("A", a, ("a", 1)), ("U", u, None)]
    elif sub is Subregion.SI_d:
        u = nd - nc / 2
        segs = [("A", u, ("a", 0)), ("U", t, None), ("A", u, ("a", 1))]
    else:
        raise DomainError(f"unknown subregion {sub!r}")
    if any(w < 0 for _, w, _ in segs):
        raise DomainError(f"negative level width for {sub.value} at n_c/n_d = {nc / nd}")
    return [seg for seg in segs if seg[1] > 0]


def _scaled_gains(sub: Subregion, nd: int, nc: int) -> tuple[int, int]:
    g = gcd(nd, nc) or 1
    a, b = nd // g, nc // g
    if any(w.denominator != 1 for _, w, _ in layout(sub, a, b)):
        a, b = 2 * a, 2 * b
    return a, b


def _bern(a: float):
    return np.array([1 - a, a]), np.array([[0], [1]], dtype=np.int64)


_UNIFORM = (np.array([0.5, 0.5]), np.array([[0], [1]], dtype=np.int64))
_PAIR_BITS = np.array([[0, 0], [1, 1], [0, 1], [1, 0]], dtype=np.int64)


def _pair(eq: float):
    return np.array([eq / 2, eq / 2, (1 - eq) / 2, (1 - eq) / 2]), _PAIR_BITS


def _component_dist(kind: str, prm: dict, b: int):
    if kind == "U":
        return _UNIFORM
    if kind == "P":
        return _bern(prm["p2"] if b else prm["p1"])
    if kind == "T":
        return _bern(prm["pt2"] if b else prm["pt1"])
    if kind == "H":
        return _bern(0.0 if b else prm["ph1"])
    if kind == "A":
        return _pair(1.0 if b else prm["eta1"])
    if kind == "E":
        return _pair(prm["etap"])
    raise DomainError(f"unknown level kind {kind!r}")


def _mixed(kind: str, prm: dict, p: float):
    pr0, bits = _component_dist(kind, prm, 0)
    pr1, _ = _component_dist(kind, prm, 1)
    return (1 - p) * pr0 + p * pr1, bits


def _expand(segs, nd: int):
    """Map each input row to (component key, kind, bit index)."""
    rows = []
    for i, (kind, w, tag) in enumerate(segs):
        for j in range(int(w)):
            if kind in ("A", "E"):
                name, half = tag
                rows.append(((name, j), kind, half))
            else:
                rows.append(((i, j), kind, 0))
    if len(rows) != nd:
        raise AssertionError(f"layout covers {len(rows)} rows, expected {nd}")
    return rows


def _entropy(row_terms, dists, cache) -> float:
    """Joint entropy of output rows, each the XOR of (component, bit) terms."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for terms in row_terms:
        for c, _ in terms:
            parent.setdefault(c, c)
    for terms in row_terms:
        for c, _ in terms[1:]:
            ra, rb = find(terms[0][0]), find(c)
            if ra != rb:
                parent[ra] = rb
    groups: dict = {}
    for terms in row_terms:
        if terms:
            groups.setdefault(find(terms[0][0]), []).append(terms)

    total = 0.0
    for rows in groups.values():
        if len(rows) > _MAX_GROUP_ROWS:
            raise DomainError("level group too large for exact enumeration")
        comps: dict = {}
        for r, terms in enumerate(rows):
            for c, k in terms:
                comps.setdefault(c, []).append((r, k))
        sig = []
        for c, uses in comps.items():
            probs, bits = dists[c]
            masks = np.zeros(len(probs), dtype=np.int64)
            for r, k in uses:
                masks ^= bits[:, k] << r
            keep = probs > 0
            sig.append((tuple(probs[keep]), tuple(masks[keep])))
        key = tuple(sig)
        if key not in cache:
            cache[key] = _group_entropy(sig)
        total += cache[key]
    return total


def _group_entropy(sig) -> float:
    prob = np.ones(1)
    mask = np.zeros(1, dtype=np.int64)
    for probs, masks in sig:
        prob = np.multiply.outer(prob, np.array(probs)).ravel()
        mask = np.bitwise_xor.outer(mask, np.array(masks, dtype=np.int64)).ravel()
        if prob.size > _MAX_COMBOS:
            raise DomainError("level group too large for exact enumeration")
    _, inv = np.unique(mask, return_inverse=True)
    pm = np.bincount(inv.ravel(), weights=prob)
    pm = pm[pm > 0]
    return float(-np.sum(pm * np.log2(pm)))


def user_rate_exact(sub: Subregion, nd: int, nc: int, p: float, own: dict, other: dict) -> float:
    """Exact rate of the user with parameters ``own`` at integral gains."""
    q = max(nd, nc)
    rows1 = _expand(layout(sub, nd, nc), nd)
    rows2 = _expand(layout(sub, nd, nc), nd)
    cache: dict = {}

    d_clean = {(1, key): _component_dist(kind, own, 0) for key, kind, _ in rows1}
    h_clean = _entropy([[((1, key), bit)] for key, _, bit in rows1], d_clean, cache)

    dists = {(1, key): _component_dist(kind, own, 1) for key, kind, _ in rows1}
    dists.update({(2, key): _mixed(kind, other, p) for key, kind, _ in rows2})
    ys, image = [], []
    for r in range(q):
        terms = []
        i = r - (q - nd)
        if 0 <= i < nd:
            key, _, bit = rows1[i]
            terms.append(((1, key), bit))
        j = r - (q - nc)
        if 0 <= j < nd:
            key, _, bit = rows2[j]
            terms.append(((2, key), bit))
            image.append([((2, key), bit)])
        if terms:
            ys.append(terms)
    h_hit = _entropy(ys, dists, cache) - _entropy(image, dists, cache)
    return (1 - p) * h_clean + p * h_hit


def mi_oracle(cfg: ChannelConfig, params: CsirtParams) -> RatePair:
    """Per-user rates by exact enumeration of the scheme's input distribution."""
    sub = params.subregion
    check_subregion(cfg, sub)
    a, b = _scaled_gains(sub, cfg.n_d, cfg.n_c)
    scale = cfg.n_d / a
    u1, u2 = params.users()
    r1 = user_rate_exact(sub, a, b, cfg.p, u1, u2) * scale
    r2 = user_rate_exact(sub, a, b, cfg.p, u2, u1) * scale
    return RatePair(r1, r2)


def paired_conditional_entropy(eta: float) -> float:
    """H(X2 | X1) for a uniform pair that agrees with probability eta."""
    probs, bits = _pair(eta)
    joint = -sum(v * math.log2(v) for v in probs if v > 0)
    return joint - 1.0

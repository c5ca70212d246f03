#!/usr/bin/env python3
"""Regenerates the embedded data corpus under crates/core/data.

Every table is built from explicit permutation generators: the group is
enumerated, its classes are ordered by (element order, class size,
lexicographically least member), class multiplication coefficients are
counted directly, and the irreducible characters are obtained as common
eigenvectors of the class matrices. Character values are then recovered
exactly from the eigenvalue multiplicities of each element, so the
output contains only integers and zeta-polynomials. The Rust loader
re-verifies orthogonality exactly.

Usage: python3 tools/gen_corpus.py [out_dir]
"""

import itertools
import json
import math
import os
import random
import sys

import numpy as np

# ---------------------------------------------------------------- perms
# Permutations are image tuples; products compose left to right.


def pmul(a, b):
    return tuple(b[x] for x in a)


def pinv(a):
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[x] = i
    return tuple(r)


def ident(n):
    return tuple(range(n))


def porder(a):
    e = ident(len(a))
    x, k = a, 1
    while x != e:
        x = pmul(x, a)
        k += 1
    return k


def ppow(a, k):
    r = ident(len(a))
    for _ in range(k):
        r = pmul(r, a)
    return r


def cycles(n, cyc):
    p = list(range(n))
    for c in cyc:
        for i, x in enumerate(c):
            p[x] = c[(i + 1) % len(c)]
    return tuple(p)


def closure(gens, cap=None):
    n = len(gens[0])
    e = ident(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if cap is not None and len(seen) > cap:
                        return None
        frontier = nxt
    return seen


def primes_of(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------- groups


class Group:
    def __init__(self, name, gens):
        self.name = name
        self.gens = [tuple(g) for g in gens]
        self.degree = len(self.gens[0])
        self.elements = sorted(closure(self.gens))
        self.order = len(self.elements)
        self._classes()

    def _classes(self):
        ginv = [pinv(g) for g in self.gens]
        seen = {}
        raw = []
        for x in self.elements:
            if x in seen:
                continue
            orbit = [x]
            seen[x] = len(raw)
            i = 0
            while i < len(orbit):
                y = orbit[i]
                i += 1
                for g, gi in zip(self.gens, ginv):
                    z = pmul(pmul(gi, y), g)
                    if z not in seen:
                        seen[z] = len(raw)
                        orbit.append(z)
            raw.append(orbit)
        keyed = []
        for orbit in raw:
            rep = min(orbit)
            keyed.append((porder(rep), len(orbit), rep, orbit))
        keyed.sort(key=lambda t: (t[0], t[1], t[2]))
        self.classes = [sorted(t[3]) for t in keyed]
        self.reps = [t[2] for t in keyed]
        self.elt_orders = [t[0] for t in keyed]
        self.sizes = [t[1] for t in keyed]
        self.cls = {}
        for k, c in enumerate(self.classes):
            for x in c:
                self.cls[x] = k
        names = []
        count = {}
        for o in self.elt_orders:
            j = count.get(o, 0)
            count[o] = j + 1
            names.append("%d%s" % (o, chr(ord("a") + j)))
        self.names = names
        self.exponent = 1
        for o in self.elt_orders:
            self.exponent = self.exponent * o // math.gcd(self.exponent, o)

    def class_of(self, x):
        return self.cls[x]


# ---------------------------------------------------------------- tables


def class_coefficients(G):
    r = len(G.classes)
    a = np.zeros((r, r, r), dtype=np.float64)
    for k, z in enumerate(G.reps):
        for i, ci in enumerate(G.classes):
            for x in ci:
                y = pmul(pinv(x), z)
                a[i, G.cls[y], k] += 1
    return a


def exact_value(G, chi, k):
    """Returns (multiplicities over zeta_o, o) for class k of character chi."""
    rep = G.reps[k]
    o = G.elt_orders[k]
    pcls = []
    x = ident(G.degree)
    for _ in range(o):
        pcls.append(G.cls[x])
        x = pmul(x, rep)
    mult = []
    for j in range(o):
        s = sum(chi[pcls[l]] * np.exp(-2j * np.pi * j * l / o) for l in range(o)) / o
        m = int(round(s.real))
        if abs(s.real - m) > 1e-6 or abs(s.imag) > 1e-6 or m < 0:
            raise RuntimeError("bad multiplicity %r in %s" % (s, G.name))
        mult.append(m)
    return mult, o


def encode_value(mult, o):
    # A value is rational iff multiplicities only depend on gcd(j, o).
    rational = True
    for j in range(o):
        for a in range(1, o):
            if math.gcd(a, o) == 1 and mult[j] != mult[(a * j) % o]:
                rational = False
                break
        if not rational:
            break
    v = sum(m * np.exp(2j * np.pi * j / o) for j, m in enumerate(mult))
    if rational:
        iv = int(round(v.real))
        assert abs(v - iv) < 1e-6
        return iv
    return {"n": o, "coeffs": {str(j): [m, 1] for j, m in enumerate(mult) if m != 0}}


def character_table(G, seed=1):
    r = len(G.classes)
    a = class_coefficients(G)
    rng = np.random.default_rng(seed)
    coeff = rng.normal(size=r)
    A = np.tensordot(coeff, a, axes=(0, 0))
    vals, vecs = np.linalg.eig(A)
    chars = []
    for c in range(r):
        w = vecs[:, c] / vecs[0, c]
        for i in range(r):
            if np.linalg.norm(a[i] @ w - w[i] * w) > 1e-6 * max(1.0, np.linalg.norm(w)):
                raise RuntimeError("eigenvector check failed for %s" % G.name)
        s = sum(abs(w[k]) ** 2 / G.sizes[k] for k in range(r))
        d = math.sqrt(G.order / s.real)
        deg = int(round(d))
        assert abs(d - deg) < 1e-6, (G.name, d)
        chi = [w[k] * deg / G.sizes[k] for k in range(r)]
        chars.append(chi)
    exact = []
    for chi in chars:
        row = [exact_value(G, chi, k) for k in range(r)]
        exact.append((chi, row))

    def key(item):
        chi, _ = item
        return (int(round(chi[0].real)),) + tuple(
            x for k in range(r) for x in (-round(chi[k].real, 6), -round(chi[k].imag, 6))
        )

    exact.sort(key=key)
    characters = [[encode_value(m, o) for (m, o) in row] for (_, row) in exact]
    assert sum(row[0] ** 2 for row in characters) == G.order
    power_maps = {}
    for p in primes_of(G.exponent):
        power_maps[str(p)] = [G.cls[ppow(x, p)] for x in G.reps]
    return {
        "name": G.name,
        "order": G.order,
        "exponent": G.exponent,
        "centerless": sum(1 for s in G.sizes if s == 1) == 1,
        "classes": [
            {"name": G.names[k], "order": G.elt_orders[k], "size": G.sizes[k],
             "centralizer": G.order // G.sizes[k]}
            for k in range(r)
        ],
        "power_maps": power_maps,
        "characters": characters,
    }


# ---------------------------------------------------------------- subgroups


def subgroup_record(G, name, gens, maximal=True):
    H = Group(name, gens)
    hset = set(H.elements)
    normalizer = [g for g in G.elements if all(pmul(pmul(pinv(g), x), g) in hset for x in H.gens)]
    rec = {
        "name": name,
        "maximal": maximal,
        "table": character_table(H),
        "fusion": [G.cls[x] for x in H.reps],
    }
    n_index = len(normalizer) // H.order
    rec["normalizer_index"] = n_index
    if n_index == 1:
        rec["normalizer"] = "self"
    else:
        N = Group("N(%s)" % name, small_gens(normalizer))
        rec["normalizer"] = {
            "table": character_table(N),
            "fusion": [G.cls[x] for x in N.reps],
            "subgroup_fusion": [N.cls[x] for x in H.reps],
        }
    # h(x, H) counted directly where the normalizer-index coprimality test fails
    overrides = {}
    if n_index > 1:
        n_order = len(normalizer)
        met = set(rec["fusion"])
        for k in sorted(met):
            if math.gcd(G.elt_orders[k], n_index) != 1:
                x = G.reps[k]
                hits = sum(1 for g in G.elements if pmul(pmul(pinv(g), x), g) in hset)
                assert hits % n_order == 0
                overrides[G.names[k]] = hits // n_order
    if overrides:
        rec["h_override"] = overrides
    return rec, H


def small_gens(elements):
    """Deterministic small generating set of the group formed by `elements`."""
    elements = sorted(elements)
    target = len(elements)
    if target == 1:
        return [elements[0]]
    for x in elements:
        if len(closure([x])) == target:
            return [x]
    for x, y in itertools.combinations(elements, 2):
        if len(closure([x, y])) == target:
            return [x, y]
    gens = []
    cur = {ident(len(elements[0]))}
    for x in elements:
        if x not in cur:
            gens.append(x)
            cur = closure(gens)
    return gens


def all_maximal_small(G):
    """Exhaustive maximal subgroup classes for groups of a few hundred elements."""
    subs = set()
    els = G.elements
    for x in els:
        subs.add(frozenset(closure([x])))
    for x, y in itertools.combinations(els, 2):
        s = closure([x, y], cap=G.order // 2)
        if s is not None:
            subs.add(frozenset(s))
    proper = [s for s in subs if len(s) < G.order]
    maximal = [s for s in proper if not any(len(t) > len(s) and s < t for t in proper)]
    classes = []
    seen = set()
    for s in sorted(maximal, key=lambda s: (-len(s), sorted(s))):
        if s in seen:
            continue
        conj = set()
        for g in els:
            gi = pinv(g)
            conj.add(frozenset(pmul(pmul(gi, x), g) for x in s))
        seen |= conj
        rep = min(conj, key=lambda t: sorted(t))
        classes.append(rep)
    return classes


def coset_action(G, hset):
    """Generators of G acting on right cosets of H, by canonical coset keys."""
    hlist = list(hset)

    def key(x):
        return min(pmul(h, x) for h in hlist)

    start = key(ident(G.degree))
    ids = {start: 0}
    reps = [ident(G.degree)]
    images = [[] for _ in G.gens]
    i = 0
    while i < len(reps):
        r = reps[i]
        for gi, g in enumerate(G.gens):
            y = pmul(r, g)
            k = key(y)
            if k not in ids:
                ids[k] = len(reps)
                reps.append(y)
            images[gi].append(ids[k])
        i += 1
    return images


def is_primitive(images):
    n = len(images[0])
    if n <= 2:
        return True
    for beta in range(1, n):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                return True
            return False

        union(0, beta)
        queue = [(0, beta)]
        while queue:
            a, b = queue.pop()
            for img in images:
                if union(img[a], img[b]):
                    queue.append((img[a], img[b]))
        root = find(0)
        if not all(find(x) == root for x in range(n)):
            return False
    return True


def is_maximal(G, hset):
    return is_primitive(coset_action(G, hset))


def class_distribution(G, hset):
    d = [0] * len(G.classes)
    for x in hset:
        d[G.cls[x]] += 1
    return tuple(d)


def orbits(hset, n):
    gens = list(hset)
    seen = set()
    out = []
    for p in range(n):
        if p in seen:
            continue
        orb = {h[p] for h in gens}
        seen |= orb
        out.append(len(orb))
    return tuple(sorted(out))


def random_subgroup(G, order, pred, rng, tries=200000):
    els = G.elements
    for _ in range(tries):
        x, y = rng.choice(els), rng.choice(els)
        s = closure([x, y], cap=order)
        if s is None or len(s) != order:
            continue
        if pred(s):
            return s
    raise RuntimeError("no subgroup of order %d found in %s" % (order, G.name))


# ---------------------------------------------------------------- output


def perm_fixture(G, subs, labels):
    lines = ["%d %d" % (G.degree, len(G.gens))]
    for g in G.gens:
        lines.append(" ".join(str(x) for x in g))
    lines.append("labels")
    for a, b in labels:
        lines.append("%s %s" % (a, b))
    for name, gens in subs:
        lines.append("subgroup %s %d" % (name, len(gens)))
        for g in gens:
            lines.append(" ".join(str(x) for x in g))
    return "\n".join(lines) + "\n"


def slug(name):
    out = []
    for ch in name:
        if ch.isalnum():
            out.append(ch)
        elif ch in "()":
            continue
        else:
            out.append("_")
    return "".join(out)


def write_json(path, obj):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(obj, f, separators=(",", ":"))
        f.write("\n")


def emit(out, G, subgroups, file_slug):
    """subgroups: list of (name, element set, maximal flag)."""
    table = character_table(G)
    write_json(os.path.join(out, "tables", file_slug + ".json"), table)
    fixture_subs = []
    for name, hset, maximal in subgroups:
        gens = small_gens(hset)
        rec, _ = subgroup_record(G, name, gens, maximal)
        write_json(os.path.join(out, "subgroups", file_slug, slug(name) + ".json"), rec)
        fixture_subs.append((name, gens))
        print("  %-12s order %6d  maximal=%s  N-index=%d" % (name, len(hset), maximal, rec["normalizer_index"]))
    labels = [(n, n) for n in G.names]
    with open(os.path.join(out, "perm", file_slug + ".txt"), "w") as f:
        f.write(perm_fixture(G, fixture_subs, labels))
    print("%s: order %d, %d classes, degrees %s" % (
        G.name, G.order, len(G.classes), [row[0] for row in table["characters"]]))


def name_small(G, classes, names):
    """Attaches names to exhaustively found maximal classes, keyed by order."""
    out = []
    used = {}
    for s in classes:
        opts = names[len(s)]
        j = used.get(len(s), 0)
        used[len(s)] = j + 1
        out.append((opts[j], set(s), True))
    return out


def fano_group():
    lines = {frozenset(((i) % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7)}
    auts = []
    for p in itertools.permutations(range(7)):
        if all(frozenset(p[x] for x in l) in lines for l in lines):
            auts.append(tuple(p))
    return small_gens(auts)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "crates", "core", "data")
    os.makedirs(os.path.join(out, "perm"), exist_ok=True)
    rng = random.Random(20240601)

    small = [
        ("S3", "S3", [cycles(3, [[0, 1, 2]]), cycles(3, [[0, 1]])], {3: ["C3"], 2: ["C2"]}),
        ("S4", "S4", [cycles(4, [[0, 1, 2, 3]]), cycles(4, [[0, 1]])], {12: ["A4"], 8: ["D8"], 6: ["S3"]}),
        ("A4", "A4", [cycles(4, [[0, 1, 2]]), cycles(4, [[0, 1], [2, 3]])], {4: ["V4"], 3: ["C3"]}),
        ("A5", "A5", [cycles(5, [[0, 1, 2, 3, 4]]), cycles(5, [[0, 1, 2]])], {12: ["A4"], 10: ["D10"], 6: ["S3"]}),
        ("S5", "S5", [cycles(5, [[0, 1, 2, 3, 4]]), cycles(5, [[0, 1]])],
         {60: ["A5"], 24: ["S4"], 20: ["5:4"], 12: ["S3xS2"]}),
        ("L2(7)", "L2_7", fano_group(), {24: ["S4", "S4'"], 21: ["7:3"]}),
    ]
    for name, fslug, gens, names in small:
        G = Group(name, gens)
        subs = name_small(G, all_maximal_small(G), names)
        if name == "S4":
            c3 = closure([cycles(4, [[0, 1, 2]])])
            subs.append(("C3", c3, False))
        if name == "A5":
            c5 = closure([cycles(5, [[0, 1, 2, 3, 4]])])
            subs.append(("C5", c5, False))
        emit(out, G, subs, fslug)

    # M11 on 11 points.
    a = cycles(11, [list(range(11))])
    b = cycles(11, [[2, 6, 10, 7], [3, 9, 4, 5]])
    M11 = Group("M11", [a, b])
    assert M11.order == 7920
    els = M11.elements

    def stab(G, pts):
        pts = set(pts)
        return {g for g in G.elements if {g[p] for p in pts} == pts}

    m10 = stab(M11, [0])
    l211 = random_subgroup(M11, 660, lambda s: True, rng)
    m92 = stab(M11, [0, 1])
    s5 = None
    for extra in range(4, 11):
        s = stab(M11, [0, 1, 2, 3, extra])
        if len(s) == 120:
            s5 = s
            break
    gl23 = stab(M11, [0, 1, 2])
    subs = [("M10", m10, True), ("L2(11)", l211, True), ("M9:2", m92, True),
            ("S5", s5, True), ("2.S4", gl23, True)]
    for nm, s, _ in subs:
        assert is_maximal(M11, s), nm
    emit(out, M11, subs, "M11")

    # M12 on 12 points.
    a12 = a + (11,)
    b12 = b + (11,)
    c12 = cycles(12, [[0, 11], [1, 10], [2, 5], [3, 7], [4, 8], [6, 9]])
    M12 = Group("M12", [a12, b12, c12])
    assert M12.order == 95040

    def transitive(s):
        return orbits(s, 12) == (12,)

    m11a = stab(M12, [0])
    m11b = random_subgroup(M12, 7920, transitive, rng)
    a62a = stab(M12, [0, 1])
    a62b = random_subgroup(M12, 1440, transitive, rng)
    l2 = random_subgroup(M12, 660, transitive, rng)
    t1 = stab(M12, [0, 1, 2])
    dist_t1 = class_distribution(M12, t1)
    t2 = random_subgroup(M12, 432, lambda s: class_distribution(M12, s) != dist_t1, rng)
    inv2a = next(x for x in M12.classes[M12.names.index("2a")])
    inv2b = next(x for x in M12.classes[M12.names.index("2b")])
    c2a = {g for g in M12.elements if pmul(g, inv2a) == pmul(inv2a, g)}
    c2b = {g for g in M12.elements if pmul(g, inv2b) == pmul(inv2b, g)}
    dist_c2b = class_distribution(M12, c2b)
    f4 = random_subgroup(M12, 192, lambda s: class_distribution(M12, s) != dist_c2b and is_maximal(M12, s), rng)
    e3b = M12.classes[M12.names.index("3b")][0]
    cyc3 = closure([e3b])
    n3b = {g for g in M12.elements if all(pmul(pmul(pinv(g), x), g) in cyc3 for x in [e3b])}
    subs = [("M11a", m11a, True), ("M11b", m11b, True), ("A6.2^2a", a62a, True),
            ("A6.2^2b", a62b, True), ("L2(11)", l2, True), ("3^2:2S4a", t1, True),
            ("3^2:2S4b", t2, True), ("2xS5", c2a, True), ("M8.S4", c2b, True),
            ("4^2:D12", f4, True), ("A4xS3", n3b, True)]
    for nm, s, _ in subs:
        assert is_maximal(M12, s), nm
    for (n1, s1, _), (n2, s2, _) in itertools.combinations(subs, 2):
        if len(s1) == len(s2):
            assert class_distribution(M12, s1) != class_distribution(M12, s2), (n1, n2)
    assert [len(s) for _, s, _ in subs] == [7920, 7920, 1440, 1440, 660, 432, 432, 240, 192, 192, 72]
    emit(out, M12, subs, "M12")


if __name__ == "__main__":
    main()

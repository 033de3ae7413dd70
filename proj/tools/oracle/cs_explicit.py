# Copyright 2026 The pgsynth Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Explicit Büchi game counts for the Client/Server family, without symmetry.

Independent of the C++ code: decision sets are frozensets of (place, commitment)
pairs, with None for ⊤. Prints nodes, edges without self-loops, accepting nodes.
"""

import argparse
import itertools
from collections import deque


def build_cs(n):
    comps = [f"c{i + 1}" for i in range(n)]
    kind = {"Env.dot": "env"}
    trans = []  # (name, preset, postset)
    for c in comps:
        kind[f"I.{c}"] = "env"
        kind[f"R.{c}"] = "env"
        kind[f"Sys.{c}"] = "sys"
        kind[f"H.{c}"] = "sys"
        for x in comps:
            kind[f"A.({c},{x})"] = "sys"
            kind[f"B.({c},{x})"] = "bad"
    sys_all = {f"Sys.{c}" for c in comps}
    for x in comps:
        trans.append((f"d.{x}", {"Env.dot"}, {f"I.{x}"}))
    for x in comps:
        trans.append((f"inf.{x}", {f"I.{x}"} | sys_all, {f"R.{x}"} | sys_all))
    for y in comps:
        for x in comps:
            trans.append((f"a.({y},{x})", {f"Sys.{y}"}, {f"A.({y},{x})"}))
    for x in comps:
        trans.append((f"h.{x}", {f"A.({c},{x})" for c in comps} | {f"R.{x}"}, {f"H.{x}"}))
    for y in comps:
        for x in comps:
            trans.append((f"b.({y},{x})", {f"A.({y},{x})"}, {f"B.({y},{x})"}))
    return kind, trans, ["Env.dot"] + sorted(sys_all)


def explore(n):
    kind, trans, m0 = build_cs(n)
    post = {p: [] for p in kind}
    for i, (_, pre, _) in enumerate(trans):
        for p in pre:
            post[p].append(i)
    is_env = lambda p: kind[p] == "env"
    env_trans = [any(is_env(p) for p in pre) for _, pre, _ in trans]

    def fresh(p):
        return frozenset(post[p]) if is_env(p) else None

    def props(d):
        dd = dict(d)
        top = any(v is None for v in dd.values())
        marked = set(dd)
        en_m = [i for i, tr in enumerate(trans) if tr[1] <= marked]
        en = [] if top else [i for i in en_m if all(i in dd[p] for p in trans[i][1])]
        # nondeterminism counts commitments even next to a ⊤
        en_c = [i for i in en_m if all(dd[p] is not None and i in dd[p] for p in trans[i][1])]
        nondet = any(any(not is_env(p) for p in trans[a][1] & trans[b][1]) for a, b in itertools.combinations(en_c, 2))
        return dict(
            top=top,
            envdep=(not top) and all(env_trans[i] for i in en),
            bad=any(kind[p] == "bad" for p in marked),
            dead=(not top) and bool(en_m) and not en,
            term=not en_m,
            nondet=nondet,
            en=en,
        )

    def fire(d, i):
        dd = dict(d)
        for p in trans[i][1]:
            del dd[p]
        for p in trans[i][2]:
            assert p not in dd, "unsafe"
            dd[p] = fresh(p)
        return frozenset(dd.items())

    def resolve(d):
        dd = dict(d)
        tops = [p for p, v in dd.items() if v is None]
        subsets = [[frozenset(s) for r in range(len(post[p]) + 1) for s in itertools.combinations(post[p], r)] for p in tops]
        for combo in itertools.product(*subsets):
            d2 = dict(dd)
            d2.update(zip(tops, combo))
            yield frozenset(d2.items())

    init = frozenset((p, fresh(p)) for p in m0)
    seen = {init: 0}
    queue = deque([init])
    edges = set()
    accepting = 0
    while queue:
        d = queue.popleft()
        pr = props(d)
        if pr["bad"] or pr["dead"] or pr["term"] or pr["nondet"]:
            succ = []
        elif pr["top"]:
            succ = list(resolve(d))
        elif pr["envdep"]:
            succ = [fire(d, i) for i in pr["en"]]
        else:
            succ = [fire(d, i) for i in pr["en"] if not env_trans[i]]
        if (pr["term"] or pr["envdep"]) and not (pr["dead"] or pr["nondet"] or pr["bad"]):
            accepting += 1
        for s in succ:
            if s not in seen:
                seen[s] = len(seen)
                queue.append(s)
            if seen[s] != seen[d]:
                edges.add((seen[d], seen[s]))
    return len(seen), len(edges), accepting


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("n", type=int, nargs="+")
    for n in ap.parse_args().n:
        print(n, *explore(n))

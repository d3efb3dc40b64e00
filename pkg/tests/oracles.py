"""Naive reference implementations used to cross-check the engine.

Everything here works on plain Python lists and loops and shares no code with
the package beyond reading ``m_table`` and ``size``.
"""
import itertools


def table(A):
    return A.m_table.tolist()


def leq_of(A):
    T = table(A)
    n = A.size
    return [[T[i][i][j] == j for j in range(n)] for i in range(n)]


def glb(le, xs, universe):
    lower = [u for u in universe if all(le[u][x] for x in xs)]
    best = [u for u in lower if all(le[v][u] for v in lower)]
    return best[0] if best else None


def identities_hold(T, n):
    """(P1)-(P4) by plain loops."""
    R = range(n)
    if any(T[x][y][x] != x for x in R for y in R):
        return False
    for x, y, z, u, w in itertools.product(R, repeat=5):
        if T[T[x][y][z]][T[y][T[u][x][z]][z]][w] != T[w][w][T[y][T[x][u][z]][z]]:
            return False
    for x, y, z, w in itertools.product(R, repeat=4):
        a = T[x][y][w]
        if T[x][T[y][y][z]][w] != T[a][a][T[x][z][w]]:
            return False
        if T[x][x][T[y][z][w]] != T[T[x][x][y]][T[x][x][z]][w]:
            return False
    return True


def naive_filters(A):
    n = A.size
    le = leq_of(A)
    out = []
    for r in range(1, 2 ** n):
        S = {i for i in range(n) if r >> i & 1}
        if any(le[i][j] and j not in S for i in S for j in range(n)):
            continue
        if any((g := glb(le, (i, j), range(n))) is not None and g not in S for i in S for j in S):
            continue
        out.append(frozenset(S))
    return out


def naive_frink(A):
    n = A.size
    le = leq_of(A)
    U = range(n)

    def lu(X):
        L = [y for y in U if all(le[y][x] for x in X)]
        return {z for z in U if all(le[y][z] for y in L)}

    fam = []
    for r in range(2 ** n):
        S = [i for i in U if r >> i & 1]
        if all(lu(X) <= set(S) for k in range(len(S) + 1) for X in itertools.combinations(S, k)):
            fam.append(frozenset(S))
    return fam


def lattice_distributive(family):
    """Distributivity of a finite family ordered by inclusion, lattice ops from the order."""
    def lub(F, G):
        ub = [H for H in family if F <= H and G <= H]
        return [H for H in ub if all(H <= K for K in ub)][0]

    def meet(F, G):
        lb = [H for H in family if H <= F and H <= G]
        return [H for H in lb if all(K <= H for K in lb)][0]

    return all(meet(x, lub(y, z)) == lub(meet(x, y), meet(x, z))
               for x in family for y in family for z in family)


def set_partitions(n):
    """All partitions of range(n) as lists of block labels."""
    def rec(i, labels, k):
        if i == n:
            yield list(labels)
            return
        for b in range(k + 1):
            labels.append(b)
            yield from rec(i + 1, labels, max(k, b + 1))
            labels.pop()
    yield from rec(0, [], 0)


def naive_is_congruence(A, part):
    T = table(A)
    n = A.size
    rel = [(a, b) for a in range(n) for b in range(n) if part[a] == part[b]]
    for (a, b), (c, d), (e, f) in itertools.product(rel, repeat=3):
        if part[T[a][c][e]] != part[T[b][d][f]]:
            return False
    return True


def canon(labels):
    ids = {}
    return tuple(ids.setdefault(x, len(ids)) for x in labels)


def principal_congruence(A, a, b):
    """Least congruence relating a and b, by closing a union-find under m."""
    T = table(A)
    n = A.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    parent[find(a)] = find(b)
    changed = True
    while changed:
        changed = False
        for x, y in itertools.product(range(n), repeat=2):
            if find(x) != find(y):
                continue
            for c, d in itertools.product(range(n), repeat=2):
                for u, v in ((T[x][c][d], T[y][c][d]), (T[c][x][d], T[c][y][d]), (T[c][d][x], T[c][d][y])):
                    if find(u) != find(v):
                        parent[find(u)] = find(v)
                        changed = True
    return canon([find(i) for i in range(n)])


def largest_congruence_below(A, equiv):
    """Join of the principal congruences that stay inside equiv."""
    n = A.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in itertools.combinations(range(n), 2):
        if equiv[a] != equiv[b]:
            continue
        cg = principal_congruence(A, a, b)
        if all(equiv[i] == equiv[j] for i in range(n) for j in range(n) if cg[i] == cg[j]):
            for i in range(n):
                for j in range(n):
                    if cg[i] == cg[j]:
                        parent[find(i)] = find(j)
    return canon([find(i) for i in range(n)])


def dn_poset_reps(n):
    """Distributive nearlattice orders on n points up to isomorphism, from raw relations."""
    import networkx as nx

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    reps = []
    for bits in range(2 ** len(pairs)):
        lt = {p for k, p in enumerate(pairs) if bits >> k & 1}
        if any((i, j) in lt and (j, k) in lt and (i, k) not in lt
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        le = [[a == b or (a, b) in lt for b in range(n)] for a in range(n)]

        def lub(xs):
            ub = [u for u in range(n) if all(le[x][u] for x in xs)]
            best = [u for u in ub if all(le[u][v] for v in ub)]
            return best[0] if best else None

        if any(lub((a, b)) is None for a in range(n) for b in range(n)):
            continue
        ok = True
        for a in range(n):
            up = [x for x in range(n) if le[a][x]]
            for x, y, z in itertools.product(up, repeat=3):
                xy = glb(le, (x, y), up)
                if xy is None or glb(le, (x, lub((y, z))), up) != lub((xy, glb(le, (x, z), up))):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            g = nx.DiGraph()
            g.add_nodes_from(range(n))
            g.add_edges_from(lt)
            if not any(nx.is_isomorphic(g, h) for h in reps):
                reps.append(g)
    return reps


def isomorphic(A, B):
    """Brute force over all bijections, comparing tables, constants and box."""
    if A.size != B.size:
        return False
    TA, TB = table(A), table(B)
    n = A.size
    for p in itertools.permutations(range(n)):
        if any(p[TA[i][j][k]] != TB[p[i]][p[j]][p[k]] for i in range(n) for j in range(n) for k in range(n)):
            continue
        if any(B.constants.get(c) != p[v] for c, v in A.constants.items()):
            continue
        if A.box is not None and any(p[int(A.box[i])] != int(B.box[p[i]]) for i in range(n)):
            continue
        return True
    return False


def _join_partitions(p, q):
    n = len(p)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for part in (p, q):
        first = {}
        for i, b in enumerate(part):
            if b in first:
                parent[find(i)] = find(first[b])
            else:
                first[b] = i
    return canon([find(i) for i in range(n)])


def congruence_lattice(A):
    """All congruences as joins of principal ones."""
    n = A.size
    fam = {tuple(range(n))} | {principal_congruence(A, a, b) for a, b in itertools.combinations(range(n), 2)}
    while True:
        new = {_join_partitions(p, q) for p in fam for q in fam} - fam
        if not new:
            return fam
        fam |= new

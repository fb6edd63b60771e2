#!/usr/bin/env python3
"""Reference values for test_bands.cpp, test_gordon.cpp, test_dynamics.cpp.

Everything here is brute force: band edges by dense scan + bisection on
word-matrix traces, Gordon bounds by explicit matrix products, moments by a
dense numpy eigendecomposition and the analytic averaging kernel.
"""
import numpy as np


def blocks(quotients, n):
    s = {-1: "1", 0: "0"}
    s[1] = "0" * (quotients[0] - 1) + "1"
    for k in range(2, n + 1):
        s[k] = s[k - 1] * quotients[k - 1] + s[k - 2]
    return s


def word_matrix(E, lam, word):
    m = np.eye(2)
    for ch in word:
        v = lam if ch == "1" else 0.0
        m = np.array([[E - v, -1.0], [1.0, 0.0]]) @ m
    return m


def band_edges(lam, word, lo, hi, samples=200001):
    es = np.linspace(lo, hi, samples)
    tr = np.array([np.trace(word_matrix(e, lam, word)) for e in es])
    inside = np.abs(tr) <= 2.0
    edges = []
    for i in range(len(es) - 1):
        if inside[i] != inside[i + 1]:
            a, b = es[i], es[i + 1]
            for _ in range(80):
                m = 0.5 * (a + b)
                t = abs(np.trace(word_matrix(m, lam, word))) - 2.0
                if (t <= 0) == inside[i + 1]:
                    b = m
                else:
                    a = m
            edges.append(0.5 * (a + b))
    return edges


def vdc(i):
    x, f = 0.0, 0.5
    while i:
        x += f * (i & 1)
        i >>= 1
        f *= 0.5
    return x


def sample_vectors():
    vecs = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    for i in range(1, 17):
        th = 2.0 * np.pi * vdc(i)
        vecs.append(np.array([np.cos(th), np.sin(th)]))
    return vecs


def gordon_case():
    s4 = blocks([1] * 8, 4)[4]  # "10110", q_4 = 5
    E, lam, n = 0.25, 1.0, 5
    Mn = word_matrix(E, lam, s4)
    M2n = word_matrix(E, lam, s4 + s4)
    tr = np.trace(Mn)
    bound = 0.5 * min(1.0, 1.0 / abs(tr))
    attained = min(max(np.linalg.norm(Mn @ v), np.linalg.norm(M2n @ v))
                   for v in sample_vectors())
    print(f"gordon two-block s4 golden E={E} lambda={lam}: tr={tr:.12e} "
          f"bound={bound:.12e} attained={attained:.12e}")

    # cube: blocks on sites -4..15, middle block on 1..5;
    # M(-n) = (T(0) T(-1) ... T(-n+1))^-1 with T(j) from V(j)
    prod = np.eye(2)
    for j in range(0, -n, -1):
        v = lam if s4[j + n - 1] == "1" else 0.0  # site j holds s4[j+n-1]
        prod = prod @ np.array([[E - v, -1.0], [1.0, 0.0]])
    Mneg = np.linalg.inv(prod)
    attained3 = min(max(np.linalg.norm(Mneg @ v), np.linalg.norm(Mn @ v),
                        np.linalg.norm(M2n @ v)) for v in sample_vectors())
    print(f"gordon three-block s4 golden: attained={attained3:.12e}")


def moment_value(N, p, T):
    d = 2 * N + 1
    H = np.zeros((d, d))
    for i in range(d - 1):
        H[i, i + 1] = H[i + 1, i] = 1.0
    E, Q = np.linalg.eigh(H)
    c = Q[N, :]  # <j|delta_0>
    w = np.abs(np.arange(-N, N + 1)) ** p
    G = Q.T @ (w[:, None] * Q)
    A = np.outer(c, c) * G
    W = np.subtract.outer(E, E) * T
    K = np.ones_like(W)
    nz = np.abs(W) > 1e-300
    K[nz] = np.sin(W[nz]) / W[nz]
    return float(np.sum(A * K))


def main():
    golden = [1] * 12
    s = blocks(golden, 6)
    for lvl in (3, 4, 5, 6):
        edges = band_edges(2.0, s[lvl], -2.5, 4.5)
        meas = sum(edges[i + 1] - edges[i] for i in range(0, len(edges), 2))
        txt = " ".join(f"{e:.10f}" for e in edges)
        print(f"bands golden lambda=2 level={lvl}: count={len(edges)//2} "
              f"measure={meas:.12e}")
        if lvl == 3:
            print(f"  edges: {txt}")

    gordon_case()

    for (N, p, T) in [(30, 2.0, 10.0), (30, 2.0, 25.0), (30, 1.0, 10.0)]:
        print(f"moment free N={N} p={p} T={T}: {moment_value(N, p, T):.12e}")


if __name__ == "__main__":
    main()

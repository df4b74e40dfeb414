"""Independent high-precision oracle for the frozen expected values in the C++ tests.

Works on exact atom lists with mpmath at 50 digits. Trimming enumerates every
candidate radius and rescans the whole support, so it shares no code path with
the C++ implementation.
"""
from mpmath import mp, mpf, sqrt, log, fabs

mp.dps = 50


def mean(atoms):
    return sum(w * x for x, w in atoms)


def var(atoms):
    m = mean(atoms)
    return sum(w * (x - m) ** 2 for x, w in atoms)


def trim(atoms, t):
    mu = mean(atoms)
    target = 1 - t
    radii = sorted({fabs(x - mu) for x, _ in atoms})
    for r in radii:
        inside = sum(w for x, w in atoms if fabs(x - mu) <= r)
        if inside >= target:
            strict = sum(w for x, w in atoms if fabs(x - mu) < r)
            edge = inside - strict
            frac = (target - strict) / edge
            kept = []
            for x, w in atoms:
                d = fabs(x - mu)
                f = 1 if d < r else (frac if d == r else 0)
                if f > 0:
                    kept.append((x, w * f / target))
            return kept, r
    raise ValueError


def eps(atoms, n, delta):
    L = log(1 / delta)
    core, _ = trim(atoms, mpf("0.45") * L / n)
    return fabs(mean(atoms) - mean(core)) + sqrt(var(core)) * sqrt(mpf("4.5") * L / n)


def hellinger(p, q):
    pd, qd = dict(p), dict(q)
    keys = set(pd) | set(qd)
    return sum((sqrt(pd.get(k, 0)) - sqrt(qd.get(k, 0))) ** 2 for k in keys) / 2


def show(label, v):
    print(f"{label:55s} {mp.nstr(v, 20)}")


two = [(mpf(-1), mpf("0.5")), (mpf(1), mpf("0.5"))]
asym = [(mpf(0), mpf("0.999")), (mpf(1000), mpf("0.001"))]
L20 = log(20)

show("mean asym", mean(asym))
show("var asym", var(asym))
show("eps two-point n=1000 d=0.05", eps(two, 1000, mpf("0.05")))
show("eps asym n=1000 d=0.05", eps(asym, 1000, mpf("0.05")))
show("t standard n=1000 d=0.05", mpf("0.45") * L20 / 1000)

# Case 1 worked example.
q1 = [(mpf(0), mpf("0.75") * mpf("0.999") + mpf("0.25")), (mpf(1000), mpf("0.75") * mpf("0.001"))]
show("case1 mu_q", mean(q1))
show("case1 H2", hellinger(asym, q1))
show("case1 rhs (1/2n) ln 4delta", log(4 * mpf("0.05")) / 2000)
show("case1 sup ratio", q1[0][1] / asym[0][1])
show("case1 eps_{n/3}(q)", eps(q1, mpf(1000) / 3, mpf("0.05")))
show("case1 var_q", var(q1))

# Case 2 worked example: mean_shift(a) = a for a <= 1 on the unit two-point.
a = sqrt(L20 / 1000) / 8
q2 = [(mpf(-1), (1 - a) / 2), (mpf(1), (1 + a) / 2)]
show("case2 a", a)
show("case2 eps/32", eps(two, 1000, mpf("0.05")) / 32)
show("case2 H2", hellinger(two, q2))
show("case2 eps_{n/3}(q)", eps(q2, mpf(1000) / 3, mpf("0.05")))
show("a n=1e4", sqrt(L20 / 10000) / 8)

show("hellinger {0:.5,1:.5} vs {0:1}", hellinger([(0, mpf("0.5")), (1, mpf("0.5"))], [(0, mpf(1))]))
show("sqrt 4.5", sqrt(mpf("4.5")))

# Asymmetric scan at delta = 0.05.
for n in [1000, 10000, 100000, 1000000, 10000000]:
    e = eps(asym, n, mpf("0.05"))
    show(f"scan asym n={n} eps", e)
    show(f"scan asym n={n} normalized", e * sqrt(n / L20))
show("sqrt(4.5)*sigma_p asym", sqrt(mpf("4.5") * var(asym)))

# Median-of-means group count.
show("4.5 ln 20", mpf("4.5") * L20)
show("ci mom", 3 * sqrt(mpf("0.05") * mpf("0.95") / 20000))
show("ci lr", 3 * sqrt(mpf("0.25") / 20000))

# Copyright 2026 The snowflake-embed Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Independent oracle for the frozen expected values used in the unit tests.

Uses numpy's LAPACK eigensolvers and mpmath arbitrary-precision quadrature;
nothing here calls into the C++ library. Re-run with `python3 derive_expected.py`.
"""
import itertools

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def centered_spectrum(d2):
    n = d2.shape[0]
    p = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * p @ d2 @ p
    w, v = np.linalg.eigh(b)
    # drop the eigenvector closest to the all-ones direction
    ones = np.ones(n) / np.sqrt(n)
    k = int(np.argmax(np.abs(v.T @ ones)))
    return np.delete(w, k)[::-1], np.delete(v, k, axis=1)[:, ::-1]


def sqdist(points):
    p = np.asarray(points, float)
    return ((p[:, None, :] - p[None, :, :]) ** 2).sum(-1)


def show(name, x):
    print(f"{name}: {np.array2string(np.asarray(x), precision=17, separator=', ')}")


# claw metric: d(A,B) = 2, all other pairs 1
claw = np.ones((4, 4)) - np.eye(4)
claw[0, 1] = claw[1, 0] = 2
w, v = centered_spectrum(claw ** 2)
show("claw spectrum", w)
show("claw min eigvec", v[:, -1])
lam = np.array([1, 1, -1, -1.0])
print("claw form (1,1,-1,-1):", lam @ claw ** 2 @ lam)

# unit equilateral triangle
tri = np.ones((3, 3)) - np.eye(3)
show("triangle spectrum", centered_spectrum(tri)[0])
p3 = np.eye(3) - np.ones((3, 3)) / 3
show("triangle gram", -0.5 * p3 @ tri @ p3)

# collinear 0,1,2 snowflaked
line = np.array([[0.0], [1.0], [2.0]])
for a in (0.5, 0.9, 0.99, 1.0):
    show(f"collinear alpha={a} spectrum", centered_spectrum(sqdist(line) ** a)[0])

square = np.array([[0, 0], [1, 0], [1, 1], [0, 1.0]])
show("square alpha=0.5 spectrum", centered_spectrum(sqdist(square) ** 0.5)[0])

# quadrature for the power identity
def power_integral(t, a):
    f = lambda lam: -mp.expm1(-(lam * t) ** 2) * lam ** (-1 - 2 * a)
    return mp.quad(f, [0, 1 / max(t, 1), 1, 10, mp.inf])

for a in (mp.mpf(1) / 4, mp.mpf(1) / 2):
    i1 = power_integral(1, a)
    print(f"a={a}: integral at t=1 = {mp.nstr(i1, 20)}, 1/integral = {mp.nstr(1 / i1, 20)},"
          f" closed 2a/Gamma(1-a) = {mp.nstr(2 * a / mp.gamma(1 - a), 20)}")
print("sqrt(pi) =", mp.nstr(mp.sqrt(mp.pi), 20), " 1/sqrt(pi) =", mp.nstr(1 / mp.sqrt(mp.pi), 20))
for t, a in ((2, mp.mpf(1) / 2), (mp.mpf(1) / 10, mp.mpf(3) / 10)):
    c = 2 * a / mp.gamma(1 - a)
    print(f"t={t} a={a}: rhs = {mp.nstr(c * power_integral(t, a), 20)}  lhs = {mp.nstr(mp.mpf(t) ** (2 * a), 20)}")

# dihedral group of order 6 from two reflections at angle pi/3
def refl(theta):
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    return np.array([[c, s], [s, -c]])

elems = [np.eye(2)]
gens = [refl(0.0), refl(np.pi / 3)]
frontier = [np.eye(2)]
while frontier:
    nxt = []
    for g in frontier:
        for s in gens:
            h = g @ s
            if not any(np.abs(h - e).max() < 1e-8 for e in elems):
                elems.append(h)
                nxt.append(h)
    frontier = nxt
print("dihedral closure order:", len(elems))

#!/usr/bin/env python3
# Copyright 2026 The coinwalk Authors
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
"""Independent reference values frozen into tests/test_oracle_values.cpp.

Uses a dense joint-space matrix product (numpy) and brute-force sums, sharing
no code with the C++ library. Re-run to regenerate the constants:

    python3 tests/oracle/derive_values.py
"""

import math

import mpmath
import numpy as np


def step_matrix(theta, half_width):
    """Dense S (1 x C) on the (2L+1)*2 joint space, index 2*(n+L)+c."""
    sites = 2 * half_width + 1
    dim = 2 * sites
    coin = np.array([[math.cos(theta), math.sin(theta)], [math.sin(theta), -math.cos(theta)]])
    c_full = np.kron(np.eye(sites), coin)
    shift = np.zeros((dim, dim))
    for i in range(sites):
        if i + 1 < sites:
            shift[2 * (i + 1), 2 * i] = 1.0
        if i - 1 >= 0:
            shift[2 * (i - 1) + 1, 2 * i + 1] = 1.0
    return shift @ c_full


def origin_state(half_width):
    psi = np.zeros(2 * (2 * half_width + 1), dtype=complex)
    psi[2 * half_width] = 1 / math.sqrt(2)
    psi[2 * half_width + 1] = 1j / math.sqrt(2)
    return psi


def walk(theta, steps):
    u = step_matrix(theta, steps)
    psi = origin_state(steps)
    for _ in range(steps):
        psi = u @ psi
    return psi


def populations(psi):
    return (np.abs(psi[0::2]) ** 2 + np.abs(psi[1::2]) ** 2).real


def variance(p, half_width):
    n = np.arange(-half_width, half_width + 1)
    mean = (n * p).sum()
    return (n * n * p).sum() - mean * mean


def coin_entropy(psi):
    a0, a1 = psi[0::2], psi[1::2]
    rho = np.array([[np.vdot(a0, a0), np.vdot(a1, a0)], [np.vdot(a0, a1), np.vdot(a1, a1)]])
    w = np.linalg.eigvalsh(rho)
    return float(-sum(x * math.log(x) for x in w if x > 0))


def gaussian_variance(sigma, cutoff=1e-12):
    mpmath.mp.dps = 40
    r = 0
    while mpmath.exp(-mpmath.mpf(r + 1) ** 2 / (4 * sigma**2)) >= cutoff:
        r += 1
    w = [mpmath.exp(-mpmath.mpf(n) ** 2 / (2 * sigma**2)) for n in range(-r, r + 1)]
    z = sum(w)
    return r, sum(n * n * x for n, x in zip(range(-r, r + 1), w)) / z


def excess(theta, steps, ratio):
    p = populations(walk(theta, steps))
    return p[2 * steps] - ratio * p[2 * steps - 2]


def scan_crossing(steps, ratio, lo=1e-4, hi=math.pi / 4, dt=1e-4):
    prev_t, prev_g = lo, excess(lo, steps, ratio)
    t = lo
    while t < hi:
        t = min(hi, t + dt)
        g = excess(t, steps, ratio)
        if (g > 0) != (prev_g > 0):
            return prev_t, t
        prev_t, prev_g = t, g
    return None


def main():
    p = populations(walk(math.pi / 4, 10))
    print("hadamard_n10_populations (sites -10..10):")
    print("  " + ", ".join(f"{x:.17g}" for x in p))
    print(f"hadamard_n100_variance = {variance(populations(walk(math.pi / 4, 100)), 100):.17g}")
    print(f"coin_entropy_pi20_n100 = {coin_entropy(walk(math.pi / 20, 100)):.17g}")
    r, v = gaussian_variance(2.0)
    print(f"gaussian_sigma2 support radius = {r}, variance = {mpmath.nstr(v, 20)}")
    psi = walk(math.pi / 40, 30)
    rho = np.outer(psi[0::2], psi[0::2].conj()) + np.outer(psi[1::2], psi[1::2].conj())
    print(f"traced_offdiag_pi40_n30 = {abs(rho[0, 60]):.17g}")
    for ratio, steps in [(1.01, 20), (2.0, 20), (2.0, 60), (4.0, 100)]:
        print(f"critical bracket ratio={ratio} N={steps}: {scan_crossing(steps, ratio)}")


if __name__ == "__main__":
    main()

"""Shared test oracles, deliberately independent of the library's own code
paths: the DFT oracle loops over the definition, the RK4 oracle is written
per-component from the tableau, and the ridge oracle uses the explicit
inverse formula."""

import cmath
import math

import numpy as np
import pytest


def naive_dft_power(signal):
    """O(n^2) periodogram straight from the definition, mean removed."""
    x = [float(v) for v in signal]
    n = len(x)
    mean = sum(x) / n
    x = [v - mean for v in x]
    powers = []
    for k in range(n // 2 + 1):
        acc = 0j
        for t in range(n):
            acc += x[t] * cmath.exp(-2j * cmath.pi * k * t / n)
        powers.append(abs(acc) ** 2 / n)
    return np.array(powers)


def rk4_lorenz_oracle_step(state, dt, sigma=10.0, alpha=28.0, beta=2.667):
    """One classical RK4 step for the Lorenz system, written out
    component-by-component from the Butcher tableau."""

    def fx(x, y, z):
        return sigma * (y - x)

    def fy(x, y, z):
        return x * (alpha - z) - y

    def fz(x, y, z):
        return x * y - beta * z

    x, y, z = (float(v) for v in state)
    k1x, k1y, k1z = (dt * f(x, y, z) for f in (fx, fy, fz))
    xs, ys, zs = x + 0.5 * k1x, y + 0.5 * k1y, z + 0.5 * k1z
    k2x, k2y, k2z = (dt * f(xs, ys, zs) for f in (fx, fy, fz))
    xs, ys, zs = x + 0.5 * k2x, y + 0.5 * k2y, z + 0.5 * k2z
    k3x, k3y, k3z = (dt * f(xs, ys, zs) for f in (fx, fy, fz))
    xs, ys, zs = x + k3x, y + k3y, z + k3z
    k4x, k4y, k4z = (dt * f(xs, ys, zs) for f in (fx, fy, fz))
    return np.array(
        [
            x + (k1x + 2 * k2x + 2 * k3x + k4x) / 6,
            y + (k1y + 2 * k2y + 2 * k3y + k4y) / 6,
            z + (k1z + 2 * k2z + 2 * k3z + k4z) / 6,
        ]
    )


def ridge_oracle(X, Y, lam):
    """Explicit (X'X + lam I)^-1 X'Y normal-equation solution."""
    n = X.shape[1]
    return np.linalg.inv(X.T @ X + lam * np.eye(n)) @ (X.T @ Y)


def classifier_corpus(length=1000):
    """The six-signal synthetic corpus: (name, signal, should_oscillate)."""
    t = np.arange(length, dtype=float)
    constant = np.full(length, 0.7)
    decay = np.concatenate(
        [np.linspace(1.0, 0.3, length - 200), np.full(200, 0.3)]
    )
    damped = np.exp(-t / 50.0) * np.sin(0.3 * t)
    sustained = np.sin(2 * np.pi * 10 * t / 100.0)
    two_tone = np.sin(2 * np.pi * 3 * t / 100.0) + 0.5 * np.sin(2 * np.pi * 11 * t / 100.0)
    logistic = np.empty(length)
    logistic[0] = 0.5123
    for i in range(length - 1):
        logistic[i + 1] = 3.9 * logistic[i] * (1.0 - logistic[i])
    return [
        ("constant", constant, False),
        ("linear_decay_to_constant", decay, False),
        ("damped_sinusoid", damped, False),
        ("sustained_sinusoid", sustained, True),
        ("two_tone_sum", two_tone, True),
        ("logistic_map_r39", logistic, True),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

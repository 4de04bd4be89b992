"""Reference PPC error tables used by the reproduction harness and acceptance tests.

Keys are alpha; values are AE per N (N = 10, 20, ..., 320) and the EOC printed
for N >= 20.
"""

N_LIST = (10, 20, 40, 80, 160, 320)

# Example 1, n = 2, N = 40 (round-off level)
EX1_N2_AE = {0.5: 5.3e-15, 0.7: 1.8e-15, 0.9: 3.6e-15, 0.99: 9.0e-16}

# Example 1, n = 3
EX1_N3 = {
    0.5: {"ae": (1.8e-3, 2.4e-4, 3.1e-5, 3.9e-6, 4.9e-7, 6.2e-8),
          "eoc": (2.94, 2.97, 2.98, 2.99, 2.99)},
    0.7: {"ae": (2.7e-3, 3.6e-4, 4.6e-5, 5.8e-6, 7.2e-7, 9.1e-8),
          "eoc": (2.94, 2.97, 2.99, 2.99, 3.00)},
    0.9: {"ae": (3.4e-3, 4.4e-4, 5.7e-5, 7.2e-6, 9.0e-7, 1.1e-7),
          "eoc": (2.93, 2.97, 2.98, 2.99, 3.00)},
}

# Example 2 with AB(alpha) = 1
EX2_UNIT = {
    0.55: {"ae": (1.5e-3, 7.4e-4, 3.7e-4, 1.8e-4, 9.0e-5, 4.4e-5),
           "eoc": (1.03, 0.99, 1.03, 1.03, 1.03)},
    0.75: {"ae": (3.5e-4, 8.8e-5, 2.3e-5, 6.1e-6, 2.7e-6, 1.3e-6),
           "eoc": (1.99, 1.93, 1.91, 1.21, 1.03)},
    0.95: {"ae": (2.7e-5, 3.2e-6, 4.4e-7, 6.7e-8, 1.2e-8, 2.3e-9),
           "eoc": (3.05, 2.89, 2.70, 2.51, 2.33)},
}

# Example 2 with AB(alpha) = 1 - alpha + alpha / Gamma(alpha)
EX2_GAMMA = {
    0.55: {"ae": (2.3e-2, 9.7e-3, 4.3e-3, 2.0e-3, 9.3e-4, 4.5e-4),
           "eoc": (1.25, 1.17, 1.12, 1.09, 1.06)},
    0.75: {"ae": (5.5e-4, 1.3e-4, 3.4e-5, 1.2e-5, 6.1e-6, 3.0e-6),
           "eoc": (2.03, 1.99, 1.45, 1.01, 1.01)},
    0.95: {"ae": (2.9e-5, 3.5e-6, 4.7e-7, 7.3e-8, 1.3e-8, 2.6e-9),
           "eoc": (3.05, 2.88, 2.70, 2.51, 2.33)},
}

# basic reproduction numbers of the epidemic presets (4 decimals)
R0 = {"set1": 0.0831, "set2": 6.5753, "set3": 0.1143, "set4": 7.5}

# equilibria quoted for the presets: (bilinear, saturated)
EQUILIBRIA = {
    "set1": ((0.6818, 0.0), (0.6818, 0.0)),
    "set2": ((0.125, 0.5087), (0.1256, 0.5083)),
    "set3": ((0.9375, 0.0), (0.9375, 0.0)),
    "set4": ((0.125, 0.52), (0.1256, 0.5196)),
}

"""
HOTS - Higher-Order Tensor Stochastic processes

Ergodicity coefficients, Z-eigenvector solvers and triangle-based PageRank
for order-3 stochastic tensors.
"""

__version__ = "1.0.0"

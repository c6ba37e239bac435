"""Frozen reference values the test suite checks against.

TABLE_GAUSSIAN: the 8x8 integer covariance block for support [-2, 2].
TABLE_WISHART:  the 3x3 polynomial-in-c covariance block as coefficient lists
                (constant term first), e.g. 2c -> [0, 2].
TABLE_JACOBI:   the 5x5 rational covariance block for gamma1 = gamma2 = 0.
"""

from fractions import Fraction as F

TABLE_GAUSSIAN = [
    [2, 0, 6, 0, 20, 0, 70, 0],
    [0, 4, 0, 16, 0, 60, 0, 224],
    [6, 0, 24, 0, 90, 0, 336, 0],
    [0, 16, 0, 72, 0, 288, 0, 1120],
    [20, 0, 90, 0, 360, 0, 1400, 0],
    [0, 60, 0, 288, 0, 1200, 0, 4800],
    [70, 0, 336, 0, 1400, 0, 5600, 0],
    [0, 224, 0, 1120, 0, 4800, 0, 19600],
]

TABLE_WISHART = [
    [[0, 2], [0, 4, 4], [0, 6, 18, 6]],
    [[0, 4, 4], [0, 8, 20, 8], [0, 12, 60, 60, 12]],
    [[0, 6, 18, 6], [0, 12, 60, 60, 12], [0, 18, 144, 276, 144, 18]],
]

TABLE_JACOBI = [
    [F(1, 8), F(1, 8), F(15, 128), F(7, 64), F(105, 1024)],
    [F(1, 8), F(9, 64), F(9, 64), F(35, 256), F(135, 1024)],
    [F(15, 128), F(9, 64), F(75, 512), F(75, 512), F(4725, 32768)],
    [F(7, 64), F(35, 256), F(75, 512), F(1225, 8192), F(1225, 8192)],
    [F(105, 1024), F(135, 1024), F(4725, 32768), F(1225, 8192), F(19845, 131072)],
]


def wishart_poly(k: int, l: int, c):
    """Evaluate the frozen Wishart table polynomial at aspect ratio c."""
    return sum(coef * c ** p for p, coef in enumerate(TABLE_WISHART[k - 1][l - 1]))

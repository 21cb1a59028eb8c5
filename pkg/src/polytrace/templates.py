"""Degree-8 offset curves of axis-aligned ellipses, centred at the origin.

Each entry maps ``(a, b, d)`` (semi-axes and offset distance) to the integer
coefficients of the offset curve by ``(x, y)`` exponent.  The polynomial is
negative on the ellipse itself and positive at the centre and far away, so
``{g <= 0}`` is the band of width ``2 d`` around the ellipse.
"""

from fractions import Fraction

OFFSET_TEMPLATES = {
    (2, 1, Fraction(1, 4)): {
        (8, 0): 65536, (6, 2): 655360, (6, 0): -901120, (4, 4): 2162688,
        (4, 2): -6021120, (4, 0): 4529664, (2, 6): 2621440, (2, 4): -8232960,
        (2, 2): 16842240, (2, 0): -9927360, (0, 8): 1048576, (0, 6): 3964928,
        (0, 4): -3094272, (0, 2): -13989024, (0, 0): 8037225,
    },
    (3, 2, Fraction(1, 2)): {
        (8, 0): 4096, (6, 2): 26624, (6, 0): -114176, (4, 4): 61696,
        (4, 2): -468608, (4, 0): 1114000, (2, 6): 59904, (2, 4): -457088,
        (2, 2): 2072800, (2, 0): -4605000, (0, 8): 20736, (0, 6): 25344,
        (0, 4): -932000, (0, 2): -1330000, (0, 0): 6890625,
    },
    (5, 3, Fraction(1)): {
        (8, 0): 81, (6, 2): 612, (6, 0): -6516, (4, 4): 1606,
        (4, 2): -32444, (4, 0): 182848, (2, 6): 1700, (2, 4): -35612,
        (2, 2): 468352, (2, 0): -2179072, (0, 8): 625, (0, 6): 6700,
        (0, 4): -196544, (0, 2): -1720320, (0, 0): 9437184,
    },
}

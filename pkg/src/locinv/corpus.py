"""Reference Hamiltonians: the numbered example corpus and the Cartan table rows."""
from __future__ import annotations

from .pauli import HamiltonianSpec, parse_hamiltonian

# (number, text, n)
EXAMPLES = (
    (1, "zz", 2),
    (2, "xx+yy", 2),
    (3, "xx1-yy1+x1x-y1y+1xx-1yy", 3),
    (4, "xx11-yy11-1xxx+1yxy+1yyx+1xyy-x1xx+y1xy+y1yx+x1yy", 4),
    (5, "xx11-yy11-1xxx+1yxy+1yyx+1xyy-x1xx+y1xy+y1yx+x1yy+x111", 4),
    (6, "z11-xxx+xyy+yxy+yyx", 3),
    (7, "xx1+yy1+zz1-1xx-1yy-1zz", 3),
    (8, "xx1+yy1+x1x+y1y+1xx+1yy", 3),
    (9, "zz1+z1z+1zz", 3),
    (10, "zz+z1+1x", 2),
    (11, "zz+z1+1z", 2),
)


def example(number: int) -> HamiltonianSpec:
    for k, text, n in EXAMPLES:
        if k == number:
            return parse_hamiltonian(text, n)
    raise KeyError(number)


KAPPA = 0.5
XYZ = (1.0, 0.7, 0.3)

# row label -> (text, n, type-I invertible, printed CC, AI, AII, AIII)
CARTAN_ROWS = (
    ("X1", "x1", 2, True, ("k", "p", "k", "p")),
    ("Y1", "y1", 2, True, ("k", "k", "k", "p")),
    ("Z1", "z1", 2, True, ("k", "p", "p", "k")),
    ("ZZ", "zz", 2, True, ("p", "p", "p", "k")),
    ("XX", "xx+yy", 2, True, ("p", "p", "k", "p")),
    ("XY", f"xx+{KAPPA}yy", 2, True, ("p", "p", "k", "p")),
    ("XXX", "xx+yy+zz", 2, False, ("p", "p", "mixed", "mixed")),
    ("XXY", f"xx+yy+{KAPPA}zz", 2, False, ("p", "p", "mixed", "mixed")),
    ("XYZ", f"{XYZ[0]}xx+{XYZ[1]}yy+{XYZ[2]}zz", 2, False, ("p", "p", "mixed", "mixed")),
    ("zzz", "zzz", 3, True, ("k", "p", "k", "k")),
    ("xxx+yyy", "xxx+yyy", 3, True, ("k", "mixed", "k", "p")),
    ("xxx-yyy", "xxx-yyy", 3, True, ("k", "mixed", "k", "p")),
    ("xxx+yyy+zzz", "xxx+yyy+zzz", 3, True, ("k", "mixed", "k", "mixed")),
)

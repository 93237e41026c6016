"""Picard groups of stable module categories over concrete finite fields.

Computes, for cyclic p-groups and (generalized) quaternion groups, the
multiplicative spectral sequences of the Tate endomorphism rings and the
Picard spectral sequence built on them, assembling the group of
endotrivial modules T(G) from the surviving zero line.  Ships a catalog
of the relevant cohomology and Tate rings, exact finite-field linear
algebra, chart rendering, and an acceptance matrix reproducing every
headline value.
"""

from .gf import FieldDescriptor, FieldElement, parse_field
from .groups import GroupFamily, cohomology_ring, extension_datum, parse_group, \
    periodicity, tate_ring
from .picard import AbelianGroup, compute_picard_group
from .specseq import Window, run_spectral_sequence

__all__ = [
    "AbelianGroup",
    "FieldDescriptor",
    "FieldElement",
    "GroupFamily",
    "Window",
    "cohomology_ring",
    "compute_picard_group",
    "extension_datum",
    "parse_field",
    "parse_group",
    "periodicity",
    "run_spectral_sequence",
    "tate_ring",
]

__version__ = "0.1.0"

import pytest

from picss.gf import FieldDescriptor
from picss.groups import cyclic, extension_datum, quaternion
from picss.specseq import run_spectral_sequence

STANDARD_CASES = (
    (cyclic(2, 2), FieldDescriptor(2, 1)),
    (cyclic(2, 3), FieldDescriptor(2, 1)),
    (cyclic(3, 2), FieldDescriptor(3, 1)),
    (quaternion(8), FieldDescriptor(2, 1)),
    (quaternion(8), FieldDescriptor(2, 2)),
    (quaternion(16), FieldDescriptor(2, 1)),
)


@pytest.fixture(scope="session")
def standard_runs():
    """Shared spectral-sequence runs, both variants, for the main cases."""
    runs = {}
    for group, field in STANDARD_CASES:
        datum = extension_datum(group, field)
        for variant in ("hfpss", "tate"):
            runs[(str(group), str(field), variant)] = (
                datum, run_spectral_sequence(datum, variant))
    return runs

"""Exception types shared across the package."""


class ContainmentError(ValueError):
    """A sublattice generator is not an integral combination of the top lattice."""


class InvalidDatumError(ValueError):
    """A torus datum, parameter or character violates a structural invariant."""


class EnumerationLimitError(RuntimeError):
    """An enumeration (group elements, characters) would exceed its configured cap."""

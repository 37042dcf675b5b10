"""Deterministic 64-bit seed derivation for experiment trials."""

_MASK = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive_seed(base_seed: int, *indices: int) -> int:
    """Mix a base seed with any number of indices into a fresh 64-bit seed.

    Used to give every trial of every experiment its own reproducible seed:
    the same (base_seed, indices) always yields the same value, and distinct
    index tuples decorrelate through the splitmix64 finalizer.
    """
    z = _splitmix64(base_seed & _MASK)
    for ix in indices:
        z = _splitmix64(z ^ (ix & _MASK))
    return z

import numpy as np


def derive_seed(master_seed: int, *keys: int) -> int:
    """Deterministic child seed for a (master, key...) path, e.g. (seed, repeat, fold)."""
    sequence = np.random.SeedSequence([int(master_seed), *(int(key) for key in keys)])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])

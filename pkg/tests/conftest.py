from hypothesis import settings
from hypothesis import strategies as st

from isomeric.partitions import StrictPartition

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")


def strict_partitions(max_part: int = 7, max_len: int = 4):
    return st.sets(st.integers(1, max_part), max_size=max_len).map(
        lambda s: StrictPartition(sorted(s, reverse=True))
    )

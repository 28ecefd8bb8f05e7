"""Seedable uniform random source backing every sampler in the package.

The generator is xoshiro256** (Blackman & Vigna) seeded through splitmix64,
implemented on masked Python integers so sequences are bit-exact across
platforms. Cryptographic strength is explicitly not a goal; the generator
only has to feed rejection samplers with well-equidistributed uniforms.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_TO_UNIT = 2.0 ** -53

# splitmix64 increment and finalizer constants (Vigna's reference code).
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB


def _splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; return (new_state, output word)."""
    state = (state + _SM_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _SM_MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _SM_MIX2) & _MASK64
    return state, z ^ (z >> 31)


def derive_stream_seed(seed: int, stream: int) -> int:
    """Seed for an independent stream: (seed + stream) through the splitmix64
    finalizer, so adjacent stream indices give decorrelated states."""
    _, word = _splitmix64((seed + stream) & _MASK64)
    return word


class UniformSource:
    """xoshiro256** generator emitting doubles in [0, 1).

    Unit conversion takes the top 53 bits of each 64-bit word scaled by
    2**-53, so 1.0 is never produced and every double in the sequence is a
    pure function of the seed. The instance is mutable single-threaded
    state: give each sampler its own source, never share one across threads.
    """

    def __init__(self, seed: int):
        s = seed & _MASK64
        s, s0 = _splitmix64(s)
        s, s1 = _splitmix64(s)
        s, s2 = _splitmix64(s)
        s, s3 = _splitmix64(s)
        self._s0 = s0
        self._s1 = s1
        self._s2 = s2
        self._s3 = s3
        self.seed = seed
        self.draws_issued = 0

    def _next_word(self) -> int:
        # xoshiro256** state transition, all ops on masked 64-bit ints.
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        x = (s1 * 5) & _MASK64
        result = ((((x << 7) | (x >> 57)) & _MASK64) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def next_unit(self) -> float:
        """Next uniform value in [0, 1); draws_issued goes up by one."""
        self.draws_issued += 1
        return (self._next_word() >> 11) * _TO_UNIT

    def spawn(self, stream: int) -> "UniformSource":
        """Independent source for parallel work, keyed by stream index."""
        return UniformSource(derive_stream_seed(self.seed, stream))

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch game simulator; mirrors ``_kernels_py.simulate_batch``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t, int8_t, int16_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t fmix(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t next_u64(uint64_t* s) nogil:
    cdef uint64_t result = rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = rotl(s[3], 45)
    return result


cdef inline int die(uint64_t* s) nogil:
    cdef uint64_t v
    while True:
        v = next_u64(s) >> 61
        if v < 6:
            return <int>v + 1


def simulate_batch(const int64_t[::1] landing, const uint8_t[::1] trap,
                   uint64_t seed, int64_t first_game, int64_t n_games,
                   int64_t max_moves):
    outcome_arr = np.empty(n_games, dtype=np.int8)
    moves_arr = np.empty(n_games, dtype=np.int64)
    final_arr = np.empty(n_games, dtype=np.int16)
    cdef int8_t[::1] outcome = outcome_arr
    cdef int64_t[::1] moves = moves_arr
    cdef int16_t[::1] final = final_arr
    cdef uint64_t s[4]
    cdef uint64_t st, k
    cdef int64_t g, m, pos, t
    cdef int j
    with nogil:
        for g in range(n_games):
            k = <uint64_t>(first_game + g)
            st = fmix(seed ^ fmix(k + GOLDEN))
            for j in range(4):
                st = st + GOLDEN
                s[j] = fmix(st)
            pos = 1
            m = 0
            while True:
                if pos == 100:
                    outcome[g] = 0
                    break
                if trap[pos]:
                    outcome[g] = 2
                    break
                if m >= max_moves:
                    outcome[g] = 1
                    break
                t = pos + die(s)
                if t <= 100:
                    pos = landing[t]
                m += 1
            moves[g] = m
            final[g] = <int16_t>pos
    return outcome_arr, moves_arr, final_arr

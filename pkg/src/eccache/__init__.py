"""Error-correcting coded caching over GF(2).

The main entry points are re-exported here; see the submodules for the rest.
"""

from .caching import CachingConfig, make_config, make_demand, symmetric_batch_prefetch
from .codes import LinearCode, SyndromeDecoder, find_optimal_code, optimal_length
from .delivery import TransmissionSet, user_decode_linear, yma_transmissions
from .ecc import (ConcatenatedScheme, avg_rate, build_scheme, peak_rate, rate_envelope, receive_and_decode,
                  simulate, transmit)
from .gf2 import BitMatrix, BitVec
from .indexcoding import IndexCodingInstance, alpha_brute, induce, minrank_brute
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BitMatrix", "BitVec", "CachingConfig", "ConcatenatedScheme", "IndexCodingInstance", "LinearCode",
    "SyndromeDecoder", "TransmissionSet", "alpha_brute", "avg_rate", "build_scheme", "find_optimal_code",
    "induce", "make_config", "make_demand", "minrank_brute", "optimal_length", "peak_rate", "rate_envelope",
    "receive_and_decode", "simulate", "symmetric_batch_prefetch", "transmit", "user_decode_linear",
    "yma_transmissions",
]

"""
Code construction and encoding
==============================

Builds a small polar code, looks at the channel-quality profile that
decides which positions carry data, and round-trips a message through
the encoder.
"""

import numpy as np

import polarsim as ps

# The Bhattacharyya parameter of each synthetic bit channel, starting from
# an erasure-probability-0.5 design channel.  Small value = reliable.
z = ps.bhattacharyya_profile(8)
print("z-parameters:", np.round(z, 4))
print("total is conserved:", z.sum(), "= N/2")

# The k best positions carry information, the rest are frozen to zero.
code = ps.CodeConfig(N=8, k=4, crc=None)
print("frozen positions:", np.flatnonzero(code.frozen_mask))
print("info positions:  ", code.info_positions)

# Encode: place the message, apply the transform, and invert it again.
# The transform is its own inverse, so encoding twice gives the input back.
rng = np.random.default_rng(1)
msg = rng.integers(0, 2, code.message_len).astype(np.uint8)
u = ps.insert_message(msg, code)
x = ps.polar_transform(u)
print("message:  ", msg)
print("u vector: ", u)
print("codeword: ", x)
assert np.array_equal(ps.polar_transform(x), u)

# With a CRC the info block is message + checksum; the decoder can use the
# checksum to pick among candidates later.
code16 = ps.CodeConfig(N=1024, k=512 + 16, crc=16)
print("\nN=1024 with CRC-16:")
print("  info bits:", code16.k, " payload bits:", code16.message_len)
print("  code rate:", code16.rate, " message rate:", code16.message_rate)

# Frozen sets are nested: a lower-rate code freezes a superset of positions.
small = ps.CodeConfig(N=64, k=16, crc=None)
large = ps.CodeConfig(N=64, k=32, crc=None)
assert set(np.flatnonzero(small.frozen_mask)) >= set(np.flatnonzero(large.frozen_mask))
print("\nnested frozen sets check out (k=16 freezes a superset of k=32)")

#!/usr/bin/env python3
"""Regenerate tests/data/aes_kat.jsonl and tests/data/sha3_kat.jsonl.

AES vectors come from the `cryptography` package (OpenSSL-backed); record 0 is
the canonical AES-256 single-block example (key 000102...1f, plaintext
00112233445566778899aabbccddeeff). SHA-3 / SHAKE vectors come from hashlib.
"""

import hashlib
import json
import random
import sys

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes


def aes_records():
    rng = random.Random(0xAE5)
    recs = []
    key = bytes(range(32))
    pt = bytes.fromhex("00112233445566778899aabbccddeeff")
    recs.append((key, pt))
    for _ in range(24):
        recs.append((rng.randbytes(32), rng.randbytes(16)))
    out = []
    for key, pt in recs:
        enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
        ct = enc.update(pt) + enc.finalize()
        out.append({"key": key.hex(), "pt": pt.hex(), "ct": ct.hex()})
    return out


def sha3_records():
    rng = random.Random(0x5A3)
    msgs = [b"", b"abc", bytes(200)] + [rng.randbytes(n) for n in (1, 64, 71, 72, 73, 135, 136, 137, 167, 168, 169, 500)]
    out = []
    for m in msgs:
        out.append(
            {
                "msg": m.hex(),
                "sha3_256": hashlib.sha3_256(m).hexdigest(),
                "sha3_512": hashlib.sha3_512(m).hexdigest(),
                "shake128_32": hashlib.shake_128(m).hexdigest(32),
                "shake256_64": hashlib.shake_256(m).hexdigest(64),
            }
        )
    return out


def main(aes_path, sha3_path):
    with open(aes_path, "w") as f:
        recs = aes_records()
        for r in recs:
            f.write(json.dumps(r) + "\n")
        print(f"wrote {len(recs)} records to {aes_path}")
    with open(sha3_path, "w") as f:
        recs = sha3_records()
        for r in recs:
            f.write(json.dumps(r) + "\n")
        print(f"wrote {len(recs)} records to {sha3_path}")


if __name__ == "__main__":
    main(
        sys.argv[1] if len(sys.argv) > 1 else "tests/data/aes_kat.jsonl",
        sys.argv[2] if len(sys.argv) > 2 else "tests/data/sha3_kat.jsonl",
    )

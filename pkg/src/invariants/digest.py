import hashlib
from typing import Iterable

from models.types import ColorId


DIGEST_SIZE = 16


def multiset_digest(items: Iterable[bytes], person: bytes) -> ColorId:
    """
    Content digest of a multiset of fixed-width byte strings.

    Members are sorted by their bytes before hashing, so the result does not
    depend on iteration order.
    """
    h = hashlib.blake2b(digest_size=DIGEST_SIZE, person=person)
    for item in sorted(items):
        h.update(item)
    return h.digest()


def tagged_digest(tag: bytes, person: bytes) -> ColorId:
    return hashlib.blake2b(tag, digest_size=DIGEST_SIZE, person=person).digest()

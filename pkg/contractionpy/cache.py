import hashlib
import json
import os
import warnings
from dataclasses import dataclass

from contractionpy.utils.exceptions import CorruptCacheWarning
from contractionpy.utils.misc import sanitize_filename, savetxt

schema_version = 1


def checksum_of(payload):
    text = json.dumps(payload, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    schema_version: int
    key: str
    payload: object
    checksum: str

    @classmethod
    def create(cls, key, payload):
        return cls(schema_version=schema_version, key=key, payload=payload, checksum=checksum_of(payload))

    def is_intact(self):
        return self.checksum == checksum_of(self.payload)

    def to_dict(self):
        return {'schema_version': self.schema_version, 'key': self.key,
                'payload': self.payload, 'checksum': self.checksum}


def family_key(spec, n, method):
    return f'family/{spec}@{n}/{method}'


def rank_key(spec, n):
    return f'rank/{spec}@{n}'


class ResultCache(object):
    """
        JSON files, one per key, under a directory.

        Entries written under another schema_version are misses. Entries that
        fail to parse or whose checksum does not match their payload are
        reported with CorruptCacheWarning and treated as misses.
    """

    def __init__(self, directory, schema=None):
        self.directory = directory
        self.schema = schema_version if schema is None else schema

    def path(self, key):
        return os.path.join(self.directory, sanitize_filename(key.replace('/', '__')) + '.json')

    def store(self, key, payload):
        entry = CacheEntry(schema_version=self.schema, key=key, payload=payload, checksum=checksum_of(payload))
        savetxt(self.path(key), json.dumps(entry.to_dict(), sort_keys=True))
        return entry

    def load(self, key):
        fullpath = self.path(key)
        if not os.path.isfile(fullpath):
            return None
        try:
            with open(fullpath, 'r') as f:
                record = json.load(f)
            entry = CacheEntry(schema_version=record['schema_version'], key=record['key'],
                               payload=record['payload'], checksum=record['checksum'])
        except (ValueError, KeyError, TypeError) as err:
            warnings.warn(f'cache entry {fullpath} is unreadable ({err}); recomputing', CorruptCacheWarning)
            return None
        if entry.schema_version != self.schema:
            return None
        if entry.key != key or not entry.is_intact():
            warnings.warn(f'cache entry {fullpath} failed its checksum; recomputing', CorruptCacheWarning)
            return None
        return entry

    def fetch(self, key, compute, encode=lambda value: value, decode=lambda payload: payload):
        """Cached value for key, computing and storing it on a miss."""
        entry = self.load(key)
        if entry is not None:
            return decode(entry.payload)
        value = compute()
        self.store(key, encode(value))
        return value


class NoCache(object):
    def load(self, key):
        return None

    def store(self, key, payload):
        return None

    def fetch(self, key, compute, encode=None, decode=None):
        return compute()


def open_cache(directory):
    if not directory:
        return NoCache()
    return ResultCache(directory)


def cache_roundtrip(cache, key, payload):
    """Store then load; the CacheEntry read back, or None if it did not survive."""
    cache.store(key, payload)
    return cache.load(key)

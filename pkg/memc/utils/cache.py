"""
Cache system for exact oracle results
Hash-based keys over canonical instance JSON; one JSON file per entry
"""
import hashlib
import json
import os
import logging
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


def obj_hash(o: Any) -> str:
    """
    SHA1 of the canonical JSON form of o (sorted keys, compact separators).

    Values JSON cannot encode are hashed through str().
    """
    canonical = json.dumps(o, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha1(canonical.encode("utf-8")).hexdigest()


def get_cache_path(cache_dir: str, cache_type: str, key: str) -> str:
    """Ruta del archivo de cache: <cache_dir>/<cache_type>_<key>.json"""
    return os.path.join(cache_dir, f"{cache_type}_{key}.json")


def load_cache(path: str) -> Optional[Dict]:
    """
    Read one cache entry.

    Returns:
        Stored dict, or None when the file is missing or unreadable
    """
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            entry = json.load(f)
    except (OSError, ValueError) as e:
        logger.warning(f"Ignoring unreadable cache entry {path}: {e}")
        return None
    return entry if isinstance(entry, dict) else None


def save_cache(path: str, obj: Dict) -> bool:
    """Write one cache entry; failures are logged and reported as False"""
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(obj, f, sort_keys=True)
    except OSError as e:
        logger.warning(f"Could not write cache entry {path}: {e}")
        return False
    return True


class OracleCache:
    """Hash-keyed store of exact optima, shared by bench runs"""

    CACHE_TYPE = "oracle"

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir

    def key_for(self, instance) -> str:
        return obj_hash(instance.to_dict())

    def path_for(self, instance) -> str:
        return get_cache_path(self.cache_dir, self.CACHE_TYPE, self.key_for(instance))

    def get(self, instance) -> Optional[Dict]:
        entry = load_cache(self.path_for(instance))
        if entry is not None:
            logger.debug(f"Oracle cache hit for {instance.name or 'instance'}")
        return entry

    def put(self, instance, entry: Dict) -> bool:
        return save_cache(self.path_for(instance), entry)

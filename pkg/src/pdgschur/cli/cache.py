"""On-disk cache of built nilHecke representations.

Each (n, l, p) is one .npz blob next to a JSON manifest holding the format
version, dimensions and a sha256 of the blob. Anything that fails to load or
verify is treated as missing and rebuilt.
"""
import hashlib
import io
import json
import logging
import os
import tempfile
from pathlib import Path

import numpy as np

from ..nilhecke import NHRep

FORMAT_VERSION = 1
ENV_VAR = "PDGSCHUR_CACHE_DIR"

log = logging.getLogger(__name__)


def default_cache_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "pdgschur"


def _atomic_write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class RepCache:
    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def _stem(self, n, l, p):
        return f"nh_v{FORMAT_VERSION}_n{n}_l{l}_p{p}"

    def blob_path(self, n, l, p):
        return self.root / (self._stem(n, l, p) + ".npz")

    def manifest_path(self, n, l, p):
        return self.root / (self._stem(n, l, p) + ".json")

    def save(self, rep):
        buf = io.BytesIO()
        np.savez(buf, **rep.to_arrays())
        blob = buf.getvalue()
        manifest = {"version": FORMAT_VERSION, "n": rep.n, "l": rep.l, "p": rep.p,
                    "dim": rep.dim, "poly_dim": rep.d,
                    "sha256": hashlib.sha256(blob).hexdigest()}
        # blob first: a manifest never points at a blob that is not there yet
        _atomic_write(self.blob_path(rep.n, rep.l, rep.p), blob)
        _atomic_write(self.manifest_path(rep.n, rep.l, rep.p),
                      json.dumps(manifest, sort_keys=True).encode())
        return manifest

    def load(self, n, l, p):
        """The cached representation, or None when missing, stale or corrupt."""
        mpath, bpath = self.manifest_path(n, l, p), self.blob_path(n, l, p)
        try:
            manifest = json.loads(mpath.read_text())
            blob = bpath.read_bytes()
        except (OSError, ValueError):
            return None
        if manifest.get("version") != FORMAT_VERSION or \
                (manifest.get("n"), manifest.get("l"), manifest.get("p")) != (n, l, p):
            return None
        if hashlib.sha256(blob).hexdigest() != manifest.get("sha256"):
            log.warning("checksum mismatch for %s, rebuilding", bpath.name)
            return None
        try:
            with np.load(io.BytesIO(blob)) as data:
                arrays = {k: data[k] for k in data.files}
            rep = NHRep.from_arrays(n, l, p, arrays)
        except (ValueError, KeyError, AssertionError, OSError) as exc:
            log.warning("cached %s unusable (%s), rebuilding", bpath.name, exc)
            return None
        if rep.dim != manifest.get("dim"):
            return None
        return rep

    def get(self, n, l, p):
        rep = self.load(n, l, p)
        if rep is None:
            rep = NHRep(n, l, p)
            try:
                self.save(rep)
            except OSError as exc:
                log.warning("cache not writable (%s)", exc)
        return rep

    def entries(self):
        out = []
        for path in sorted(self.root.glob("nh_v*_n*_l*_p*.json")):
            try:
                out.append(json.loads(path.read_text()))
            except (OSError, ValueError):
                out.append({"file": path.name, "corrupt": True})
        return out

    def clear(self):
        removed = 0
        for path in sorted(self.root.glob("nh_v*")):
            path.unlink()
            removed += 1
        return removed

"""Session persistence: JSON documents written atomically (temp file + rename).

Bare file names resolve inside the store root, which defaults to the
current directory and can be moved with TENET_SESSION_DIR.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .engine import Session, session_from_doc, session_hash, session_to_doc


class StoreError(ValueError):
    pass


@dataclass(frozen=True)
class SessionStore:
    root: Path

    @classmethod
    def from_env(cls) -> "SessionStore":
        return cls(Path(os.environ.get("TENET_SESSION_DIR", ".")))

    def resolve(self, name: str | Path) -> Path:
        path = Path(name)
        if path.is_absolute() or len(path.parts) > 1:
            return path
        return self.root / path

    def save(self, name: str | Path, session: Session) -> str:
        """Write the session document; the previous file survives a crash."""
        path = self.resolve(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = session_to_doc(session)
        doc["hash"] = session_hash(session)
        payload = json.dumps(doc, indent=2) + "\n"
        handle, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(handle, "w") as fh:
                fh.write(payload)
            os.replace(tmp_name, path)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        return doc["hash"]

    def load(self, name: str | Path) -> Session:
        path = self.resolve(name)
        try:
            doc = json.loads(path.read_text())
        except FileNotFoundError:
            raise StoreError(f"no session at {path}") from None
        except json.JSONDecodeError as err:
            raise StoreError(f"{path} is not a session document: {err}") from err
        try:
            session = session_from_doc(doc)
        except (KeyError, ValueError) as err:
            raise StoreError(f"{path} is not a session document: {err}") from err
        stored = doc.get("hash")
        if stored is not None and stored != session_hash(session):
            raise StoreError(f"{path} failed its integrity check")
        return session

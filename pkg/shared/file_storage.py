# ============================================================================
# LatticeChoose - JSON document storage
# ============================================================================

import json
import os
import threading

from pydantic import BaseModel


class FileStorage:
    """Reads and writes instance documents as UTF-8 JSON"""

    def __init__(self, data_dir="data"):
        self.data_dir = data_dir
        self.lock = threading.Lock()

    def resolve(self, path):
        """Relative names live under data_dir; explicit paths are used as given"""
        if os.path.isabs(path) or os.path.dirname(path):
            return path
        return os.path.join(self.data_dir, path)

    # ========================================================================
    # DOCUMENTS
    # ========================================================================

    def write_document(self, path, document: BaseModel):
        """Deterministic formatting: identical documents give identical bytes"""
        path = self.resolve(path)
        payload = document.model_dump(mode="json", exclude_none=True)
        with self.lock:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, "w", encoding="utf-8") as f:
                f.write(json.dumps(payload) + "\n")
        return path

    def read_document(self, path, model: type[BaseModel]):
        """Parse a document; raises pydantic ValidationError on malformed content"""
        path = self.resolve(path)
        with self.lock:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        return model.model_validate_json(text)

    def exists(self, path):
        return os.path.exists(self.resolve(path))

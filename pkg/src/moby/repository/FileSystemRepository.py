import logging
import pathlib
from typing import Optional, Sequence, Type

from pydantic import BaseModel, ValidationError

from moby.config import MobyConfig
from moby.core.file_operations import atomic_write_text

from .IArtifactRepository import Document, IArtifactRepository

logger = logging.getLogger(__name__)


class FileSystemRepository(IArtifactRepository):
    def __init__(self, app_config: MobyConfig):
        self.app_config = app_config
        self.base_path: Optional[pathlib.Path] = self.app_config.workspace_path
        if self.base_path:
            self.base_path.mkdir(parents=True, exist_ok=True)

    def _get_absolute_path(self, rel_path: str) -> pathlib.Path:
        if self.base_path is None:
            raise ValueError("Repository not configured")
        path = pathlib.Path(rel_path.lstrip("/"))
        if ".." in path.parts:
            raise ValueError(f"Invalid artifact path: {rel_path}")
        return self.base_path / path

    def save_text(self, rel_path: str, content: str) -> pathlib.Path:
        target = self._get_absolute_path(rel_path)
        atomic_write_text(target, content)
        logger.info(f"Saved {rel_path}")
        return target.relative_to(self.base_path)

    def load_text(self, rel_path: str) -> str:
        path = self._get_absolute_path(rel_path)
        if not path.is_file():
            raise FileNotFoundError(f"Artifact not found: {rel_path}")
        return path.read_text(encoding="utf-8")

    def save_document(self, rel_path: str, document: BaseModel) -> pathlib.Path:
        return self.save_text(rel_path, document.model_dump_json(indent=2) + "\n")

    def load_document(self, rel_path: str, model: Type[Document]) -> Document:
        text = self.load_text(rel_path)
        try:
            return model.model_validate_json(text)
        except ValidationError as e:
            raise ValueError(f"Invalid {model.__name__} in {rel_path}: {e}") from e

    def list_all(self) -> Sequence[str]:
        if self.base_path is None:
            return []
        files = [
            str(p.relative_to(self.base_path))
            for p in self.base_path.rglob("*")
            if p.is_file() and not p.name.startswith(".")
        ]
        return sorted(files)

    def exists(self, rel_path: str) -> bool:
        try:
            return self._get_absolute_path(rel_path).is_file()
        except ValueError:
            return False

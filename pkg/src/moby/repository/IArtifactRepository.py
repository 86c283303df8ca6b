import pathlib
from abc import ABC, abstractmethod
from typing import Sequence, Type, TypeVar

from pydantic import BaseModel

Document = TypeVar("Document", bound=BaseModel)


class IArtifactRepository(ABC):
    """Abstract storage for pipeline artifacts, addressed by relative path."""

    @abstractmethod
    def save_text(self, rel_path: str, content: str) -> pathlib.Path:
        """Writes a text artifact and returns its relative path."""
        pass

    @abstractmethod
    def load_text(self, rel_path: str) -> str:
        """
        Reads a text artifact.

        Raises:
            FileNotFoundError: If the artifact doesn't exist
        """
        pass

    @abstractmethod
    def save_document(self, rel_path: str, document: BaseModel) -> pathlib.Path:
        """Writes a JSON document."""
        pass

    @abstractmethod
    def load_document(self, rel_path: str, model: Type[Document]) -> Document:
        """
        Reads and validates a JSON document.

        Raises:
            FileNotFoundError: If the artifact doesn't exist
            ValueError: If the content does not validate against model
        """
        pass

    @abstractmethod
    def list_all(self) -> Sequence[str]:
        """Lists all artifacts in the repository."""
        pass

    @abstractmethod
    def exists(self, rel_path: str) -> bool:
        """Checks if an artifact exists."""
        pass

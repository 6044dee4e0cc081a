"""Handler für File-Management und andere Aufgaben."""

from .file_handler import FileHandler

__all__ = [
    "FileHandler"
]
"""Sample numeration systems and sets."""

from importlib.resources import files


def path(name: str):
    return files(__name__) / name

from .store import ConflictError, NotFoundError, Session, Workbench  # noqa: F401

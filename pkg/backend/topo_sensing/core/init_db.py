from .db import Base, engine
from ..models import run  # noqa: F401  (registers the runs table)


def init_db(bind=None):
    # Import all models so SQLAlchemy knows them
    Base.metadata.create_all(bind=bind or engine)

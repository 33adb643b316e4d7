from sqlalchemy import Column, Integer, String, DateTime, Text
from sqlalchemy.sql import func

from ..core.db import Base


class Run(Base):
    __tablename__ = "runs"

    id = Column(Integer, primary_key=True, index=True)

    command = Column(String, nullable=False)  # e.g. "edge-qfi", "exponent-scan", "estimate"
    status = Column(String, nullable=False, default="pending")  # pending, running, done, failed

    config_json = Column(Text, nullable=False)  # canonical RunConfig JSON
    log = Column(Text, nullable=True)           # step log appended by the workflow
    output_path = Column(String, nullable=True)  # --output target, if any
    table_path = Column(String, nullable=True)   # parquet copy of the result table

    created_at = Column(DateTime(timezone=True), server_default=func.now())
    updated_at = Column(DateTime(timezone=True), onupdate=func.now())
